//! Class certificates: primitives for exact cocycles, cycles for the
//! others, and the cubic Massey product of the weight-3 class.

use l1deform::cochain::{alpha1, beta, dmu};
use l1deform::cohomology::{h2_basis, is_coboundary, massey_cube, ClassCertificate, Outcome};

fn describe(o: &Outcome) -> String {
    match o {
        Outcome::Certified(c) => c.summary(),
        Outcome::Inconclusive(why) => format!("inconclusive: {why}"),
    }
}

fn main() -> l1deform::Result<()> {
    let a = alpha1(1)?;
    let o = is_coboundary(&a, 20, 4)?;
    println!("{}: {}", a, describe(&o));
    if let Some(ClassCertificate::ZeroViaPrimitive { primitive, .. }) = o.certificate() {
        let b = beta(1)?;
        let same = (2..12).all(|i| primitive.eval(&[i]).ok() == b.eval(&[i]).ok());
        println!("  primitive agrees with beta^1 on e2..e11: {same}");
    }

    for cert in h2_basis()? {
        println!("[{}] in weight {}: {}", cert.label, cert.weight, describe(&cert.outcome));
    }

    let m = massey_cube(&dmu(3)?, 28)?;
    println!("primitive of [b,b]: {} (closed form: {})", m.primitive, m.closed_form);
    println!("<b,b,b>: {}", describe(&m.outcome));
    Ok(())
}
