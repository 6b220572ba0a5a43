//! Cycles of the dual chain complex and their pairing with cochains.

use l1deform::cochain::{alpha1, chain_a2, chain_a3, chain_boundary, pair, parse_chain};

fn main() -> l1deform::Result<()> {
    let a2 = chain_a2();
    let a3 = chain_a3();
    println!("a2 is a cycle: {}", chain_boundary(&a2)?.is_zero());
    println!("a3 is a cycle: {}", chain_boundary(&a3)?.is_zero());
    println!("<alpha1^3, a2> = {}", pair(&alpha1(3)?, &a2)?);

    // e5* (x) e1^e2 is not a cycle
    let z = parse_chain("2;-2;5:1,2")?;
    let bz = chain_boundary(&z)?;
    println!("boundary of e5*(x)e1^e2 has {} terms:", bz.len());
    for (j, t, v) in bz.terms() {
        println!("  {v} e{j}* (x) {t:?}");
    }
    Ok(())
}
