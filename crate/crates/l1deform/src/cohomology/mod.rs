//! Cohomology of `L1` with coefficients in itself, one weight at a time.
//!
//! Dimensions come from the dual chain complex `C_*(L1; L1*)`, filtered by
//! the dual index `j`. A truncation `N` keeps the chains
//! `e_j* (x) e_{i_1} ^ .. ^ e_{i_q}` with `sum i <= N`; the reported number
//! is the rank of `H_q(F_N) -> H_q(F_{N + margin})`, which discards the
//! classes created by cutting the complex off.

mod certificate;
mod complex;
mod reduced;

use serde::Serialize;

pub use certificate::{class_cycles, find_cycles, h2_basis, is_coboundary, lambda_relation_scan, massey_cube, massey_cube_with, solve_truncated, product_classes, ClassCertificate, RelationReport, MasseyReport, NamedCertificate, Outcome, ProductClasses, TruncatedSolve};
pub use complex::{chain_image_dim, chain_naive_dim, cochain_restriction_rank, quotient_model_dim, ChainBasis, CochainBasis, FromInt, IntRow};
pub use reduced::{exterior_homology_dim, retract, ExteriorBlock, Generator, Retract, SmallComplex};

use crate::error::{Error, Result};
use crate::exact::Fp;

/// Default gap between a truncation and its reference truncation.
pub const DEFAULT_MARGIN: i64 = 6;

/// Truncations `2k+4, 2k+6, 2k+8`.
pub fn default_truncations(k: i64) -> Vec<i64> {
    vec![2 * k + 4, 2 * k + 6, 2 * k + 8]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub model: String,
    pub truncation: i64,
    pub dim: usize,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub q: usize,
    pub k: i64,
    pub margin: i64,
    /// `(N, dim)` per truncation.
    pub dims: Vec<(i64, usize)>,
    pub stabilized: bool,
    pub value: Option<usize>,
    pub cross_check: Option<CrossCheck>,
}

impl CohomologyReport {
    pub fn consistent(&self) -> bool {
        self.stabilized && self.cross_check.as_ref().is_none_or(|c| c.agrees)
    }
}

fn check_args(q: usize, k: i64, truncations: &[i64]) -> Result<()> {
    if !(1..=3).contains(&q) {
        return Err(Error::InvalidParameter(format!("degree {q} outside 1..=3")));
    }
    if !(0..=20).contains(&k) {
        return Err(Error::InvalidParameter(format!("weight {k} outside 0..=20")));
    }
    if truncations.is_empty() || truncations.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("truncations must be nonempty and increasing".into()));
    }
    if truncations[0] <= k {
        return Err(Error::Truncation(format!("truncation {} does not exceed the weight {k}", truncations[0])));
    }
    Ok(())
}

/// `dim H^q_(k)(L1; L1)` at each truncation, from the exact reduced
/// model, with the cochain-side restriction rank at the largest
/// truncation as an independent check.
pub fn cohomology_dim(q: usize, k: i64, truncations: &[i64]) -> Result<CohomologyReport> {
    cohomology_dim_with(q, k, truncations, DEFAULT_MARGIN, true)
}

pub fn cohomology_dim_with(q: usize, k: i64, truncations: &[i64], margin: i64, cross_check: bool) -> Result<CohomologyReport> {
    cohomology_dim_using(q, k, truncations, margin, cross_check, |m, n| model_dim(m, q, k, n, margin))
}

/// The two independent computations behind a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Model {
    /// Exact rank of `H_q(F_{N-k}) -> H_q(F_{N-k+margin})` in the reduced
    /// dual chain complex.
    Reduced,
    /// Restriction rank of cochains modulo `2^61 - 1`.
    CochainModP,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Reduced => "reduced dual chains",
            Model::CochainModP => "cochain restriction mod 2^61-1",
        }
    }
}

/// One dimension of one model at truncation `n`.
pub fn model_dim(model: Model, q: usize, k: i64, n: i64, margin: i64) -> Result<usize> {
    check_args(q, k, &[n])?;
    match model {
        Model::Reduced => SmallComplex::new(k).image_dim(q, n - k, n - k + margin),
        Model::CochainModP => cochain_restriction_rank::<Fp>(q, k, n, n + margin),
    }
}

/// Assembles a report from per-truncation dimensions supplied by `dim`,
/// which lets callers cache them.
pub fn cohomology_dim_using(q: usize, k: i64, truncations: &[i64], margin: i64, cross_check: bool, dim: impl Fn(Model, i64) -> Result<usize>) -> Result<CohomologyReport> {
    check_args(q, k, truncations)?;
    if margin < 1 {
        return Err(Error::InvalidParameter(format!("margin {margin}")));
    }
    let dims = truncations.iter().map(|&n| Ok((n, dim(Model::Reduced, n)?))).collect::<Result<Vec<_>>>()?;
    let tail = &dims[dims.len().saturating_sub(3)..];
    let stabilized = dims.len() >= 3 && tail.iter().all(|d| d.1 == tail[0].1);
    let value = stabilized.then(|| tail[0].1);
    let cross_check = if cross_check {
        let n = *truncations.last().expect("nonempty");
        let d = dim(Model::CochainModP, n)?;
        Some(CrossCheck { model: Model::CochainModP.name().into(), truncation: n, dim: d, agrees: d == dims.last().expect("nonempty").1 })
    } else {
        None
    };
    Ok(CohomologyReport { q, k, margin, dims, stabilized, value, cross_check })
}

/// The same truncations through the truncated-algebra model
/// `L1 / L_{N+1}`. Kept as a diagnostic: it carries classes at the
/// truncation top that are not classes of `L1`.
pub fn quotient_model_report(q: usize, k: i64, truncations: &[i64]) -> Result<Vec<(i64, usize)>> {
    check_args(q, k, truncations)?;
    truncations.iter().map(|&n| Ok((n, quotient_model_dim::<Fp>(q, k, n)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        for (q, k, d) in [(2, 3, 1), (2, 5, 0), (3, 9, 1), (1, 0, 1), (1, 4, 0)] {
            let r = cohomology_dim(q, k, &default_truncations(k)).unwrap();
            assert_eq!(r.value, Some(d), "q={q} k={k}");
            assert!(r.consistent());
        }
    }

    #[test]
    fn bad_arguments() {
        assert!(cohomology_dim(4, 1, &[10, 12, 14]).is_err());
        assert!(cohomology_dim(2, 1, &[12, 10]).is_err());
        assert!(cohomology_dim(2, 5, &[4, 6, 8]).is_err());
    }

    #[test]
    fn short_list_is_not_stabilized() {
        let r = cohomology_dim_with(2, 2, &[10, 12], 6, false).unwrap();
        assert!(!r.stabilized);
        assert_eq!(r.value, None);
    }
}
