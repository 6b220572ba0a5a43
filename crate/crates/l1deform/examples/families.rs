//! The three one-parameter families: Jacobi identity, embeddings,
//! invariants that tell them apart, and the singularity test.

use l1deform::deformation::{defect_vanishes, deformation_family, distinguish_families, singularity_test, verify_embedding, SingularityVerdict};

fn main() -> l1deform::Result<()> {
    for r in 1..=3u8 {
        let d = deformation_family(r, 6)?;
        let jacobi = (1..=6).map(|k| defect_vanishes(&d, k, 16)).collect::<l1deform::Result<Vec<_>>>()?;
        println!("family {r}: Jacobi through order 6 {}, embedding {}", jacobi.iter().all(|x| *x), verify_embedding(r, 16)?);
    }
    for inv in distinguish_families(24)? {
        println!("family {}: dim L/[L,L] = {}, next quotient {:?}", inv.family, inv.abelianization, inv.derived_abelianization);
    }
    for r in 1..=3u8 {
        let v = singularity_test(&deformation_family(r, 6)?, 6, 20)?;
        let detail = match &v {
            SingularityVerdict::NonSingular { parameter_change, first, .. } => format!("u(t) coefficients {:?}, first class at order {} pairs to {:?}", parameter_change.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(), first.order, first.pairing().map(ToString::to_string)),
            SingularityVerdict::Singular { first, second, .. } => format!("classes at orders {} and {} pair to {:?} and {:?}", first.order, second.order, first.pairing().map(ToString::to_string), second.pairing().map(ToString::to_string)),
            SingularityVerdict::Inconclusive { reason, .. } => reason.clone(),
        };
        println!("family {r}: {} ({detail})", v.label());
    }
    Ok(())
}
