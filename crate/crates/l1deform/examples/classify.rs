//! The two homogeneous branches with unknown coefficients and the final
//! determinant test.

use l1deform::deformation::classify;

fn main() -> l1deform::Result<()> {
    let c = classify(8, 32)?;
    println!("branch A");
    for k in &c.branch_a.constraints {
        println!("  order {} weight {}: {} = 0", k.order, k.weight, k.polynomial);
    }
    for e in &c.branch_a.extensions {
        println!("  x = {}: reaches order {} (complete: {})", e.x, e.reached, e.complete);
    }
    let b = &c.branch_b;
    println!("branch B");
    for k in b.x_constraints.iter().chain(&b.y_constraints) {
        println!("  order {} weight {}: {} = 0", k.order, k.weight, k.polynomial);
    }
    println!("  x = {}, y^2 = {}, reaches order {}", b.x, b.y_squared, b.reached);
    for d in &c.determinants {
        println!("det at (x, y^2) = ({}, {}): {}", d.x, d.y_squared, d.determinant);
    }
    println!("{}", serde_json::to_string_pretty(&c.branch_b).expect("serializable"));
    Ok(())
}
