//! Catalog cochains, the differential and the graded bracket.

use l1deform::cochain::{bracket, ce_differential, delta_kl, differences, dmu, lambda, parse_catalog};

fn main() -> l1deform::Result<()> {
    let d2 = dmu(2)?;
    println!("{}(e2,e5) = {} e5", d2, d2.eval(&[2, 5])?);
    println!("{}(e1,e7) = {}", d2, d2.eval(&[1, 7])?);

    let dd = ce_differential(&d2);
    println!("d{} vanishes on entries <= 12: {}", d2, dd.is_zero_on(12)?);

    let (b, c) = (dmu(3)?, dmu(4)?);
    let bc = bracket(&b, &c)?;
    let cb = bracket(&c, &b)?;
    println!("[b,c] = [c,b] on entries <= 10: {}", differences(&bc, &cb, 10)?.is_empty());
    println!("[b,c] has degree {} and weight {}", bc.degree(), bc.weight());

    let l = lambda(2, 3)?;
    println!("lambda2,3(e2,e3) = {} e0 (outside L1)", l.eval(&[2, 3])?);
    println!("delta2,3(e2,e3,e20) = {}", delta_kl(2, 3)?.eval(&[2, 3, 20])?);

    for name in ["alpha1:3", "beta:1", "delta:5"] {
        let c = parse_catalog(name)?;
        println!("{name}: degree {}, weight {}, value on first args {}", c.degree(), c.weight(), c.eval(&(2..2 + c.degree() as i64).collect::<Vec<_>>())?);
    }
    Ok(())
}
