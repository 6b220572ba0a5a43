//! Order-by-order integration of a first-order deformation.
//!
//! `cargo run --release --example integrate -- 0 1 0`

use l1deform::deformation::{integrate, Integration, IntegrationOptions};
use l1deform::exact::Rational;

fn main() -> l1deform::Result<()> {
    let c: Vec<Rational> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let alpha1 = match c.as_slice() {
        [a, b, d] => [a.clone(), b.clone(), d.clone()],
        _ => [Rational::zero(), Rational::one(), Rational::zero()],
    };
    let res = integrate(alpha1, 6, &IntegrationOptions::new(28))?;
    for s in res.steps() {
        println!("alpha_{} weight {} {:?}", s.order, s.weight, s.source);
    }
    match res {
        Integration::Complete { deformation, .. } => println!("extends through order {}", deformation.order()),
        Integration::Obstructed { report, .. } => {
            println!("obstructed at order {}, weight {}: {}", report.order, report.weight, report.certificate.summary());
            println!("certificate re-verifies: {}", report.verify().is_ok());
        }
        Integration::Constraint { constraints, .. } => constraints.iter().for_each(|c| println!("constraint {} = 0", c.polynomial)),
    }
    Ok(())
}
