//! The two homogeneous branches of the classification and the
//! determinant checks that end it.

use std::collections::BTreeSet;

use serde::Serialize;

use super::formal::FormalDeformation;
use super::graded::{Graded, PolyCochain};
use super::integrate::{integrate_from, Constraint, Integration, IntegrationOptions};
use crate::cochain::{dmu, lambda};
use crate::error::{Error, Result};
use crate::exact::{poly_roots_rational, Monomial, Rational, Ring};

#[derive(Clone, Debug, Serialize)]
pub struct RootExtension {
    pub x: Rational,
    /// Highest order reached without obstruction.
    pub reached: usize,
    pub complete: bool,
}

/// `alpha_1 = d mu_2`, `alpha_2 = -1/2 lambda_{2,2} + x d mu_4`.
#[derive(Clone, Debug, Serialize)]
pub struct BranchA {
    pub constraints: Vec<Constraint>,
    pub roots: Vec<Rational>,
    pub extensions: Vec<RootExtension>,
}

/// `alpha_1 = 0`, `alpha_2 = d mu_2`, `alpha_3 = y d mu_3`,
/// `alpha_4 = -1/2 lambda_{2,2} + x d mu_4`.
#[derive(Clone, Debug, Serialize)]
pub struct BranchB {
    pub x_constraints: Vec<Constraint>,
    pub x: Rational,
    pub y_constraints: Vec<Constraint>,
    pub y_squared: Rational,
    pub reached: usize,
    pub complete: bool,
}

/// Determinant of the final elimination system at one solution.
#[derive(Clone, Debug, Serialize)]
pub struct DeterminantCheck {
    pub x: Rational,
    pub y_squared: Rational,
    pub determinant: Rational,
}

impl DeterminantCheck {
    pub fn nonzero(&self) -> bool {
        !self.determinant.is_zero()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub order: usize,
    pub truncation: i64,
    pub branch_a: BranchA,
    pub branch_b: BranchB,
    pub determinants: Vec<DeterminantCheck>,
}

fn quadratic_prefix(ring: &Ring) -> Result<PolyCochain> {
    PolyCochain::constant(ring.clone(), Graded::from_cochain(lambda(2, 2)?).scale(&Rational::frac(-1, 2)))
        .add(&PolyCochain::monomial(ring.clone(), Monomial::X, Graded::from_cochain(dmu(4)?)))
}

fn constraints_of(r: Integration, what: &str) -> Result<(FormalDeformation, Vec<Constraint>)> {
    match r {
        Integration::Constraint { partial, constraints, .. } => Ok((partial, constraints)),
        Integration::Complete { .. } => Err(Error::Truncation(format!("{what}: no constraint appeared"))),
        Integration::Obstructed { report, .. } => Err(Error::Truncation(format!("{what}: unexpected obstruction at order {}, weight {}", report.order, report.weight))),
    }
}

/// Common rational roots of univariate constraints.
fn common_roots(cs: &[Constraint], strip: Option<Monomial>) -> Result<Vec<Rational>> {
    let mut common: Option<BTreeSet<Rational>> = None;
    for c in cs {
        let p = match strip {
            Some(m) => c.polynomial.divide_by(m).ok_or_else(|| Error::InvalidParameter(format!("constraint {} lacks the factor {m}", c.polynomial)))?,
            None => c.polynomial.clone(),
        };
        let r = poly_roots_rational(&p)?;
        let set: BTreeSet<Rational> = r.roots.into_iter().collect();
        common = Some(match common {
            None => set,
            Some(s) => s.intersection(&set).cloned().collect(),
        });
    }
    Ok(common.unwrap_or_default().into_iter().collect())
}

fn extend(d: &FormalDeformation, order: usize, opts: &IntegrationOptions) -> Result<(usize, bool)> {
    let r = integrate_from(d, order, opts)?;
    let complete = matches!(r, Integration::Complete { .. });
    Ok((r.deformation().order(), complete))
}

pub fn branch_a(order: usize, opts: &IntegrationOptions) -> Result<BranchA> {
    let ring = Ring::poly();
    let a1 = PolyCochain::rational(Graded::from_cochain(dmu(2)?));
    let prefix = FormalDeformation::new(ring.clone(), vec![a1, quadratic_prefix(&ring)?])?;
    let (partial, constraints) = constraints_of(integrate_from(&prefix, order, opts)?, "branch A")?;
    let roots = common_roots(&constraints, None)?;
    let mut extensions = Vec::new();
    for x in &roots {
        let d = partial.with_order(2).map_ring(Ring::Q, Some(x))?;
        let (reached, complete) = extend(&d, order, opts)?;
        extensions.push(RootExtension { x: x.clone(), reached, complete });
    }
    Ok(BranchA { constraints, roots, extensions })
}

pub fn branch_b(order: usize, opts: &IntegrationOptions) -> Result<BranchB> {
    let ring = Ring::poly();
    let g = |k| -> Result<Graded> { Ok(Graded::from_cochain(dmu(k)?)) };
    let prefix = FormalDeformation::new(
        ring.clone(),
        vec![PolyCochain::zero(ring.clone(), 2), PolyCochain::rational(g(2)?), PolyCochain::monomial(ring.clone(), Monomial::Y, g(3)?), quadratic_prefix(&ring)?],
    )?;
    let (partial, x_constraints) = constraints_of(integrate_from(&prefix, order, opts)?, "branch B, x")?;
    let xs = common_roots(&x_constraints, Some(Monomial::Y))?;
    let [x] = xs.as_slice() else {
        return Err(Error::InvalidParameter(format!("expected one value of x, found {xs:?}")));
    };
    let d = partial.map_ring(ring.clone(), Some(x))?;
    let (partial, y_constraints) = constraints_of(integrate_from(&d, order, opts)?, "branch B, y")?;
    let mut ys = BTreeSet::new();
    for c in &y_constraints {
        let (_, coeffs) = c.polynomial.univariate()?;
        if coeffs.len() != 3 || !coeffs[1].is_zero() || coeffs[2].is_zero() {
            return Err(Error::InvalidParameter(format!("constraint {} is not of the form a y^2 + b", c.polynomial)));
        }
        ys.insert(-&(&coeffs[0] / &coeffs[2]));
    }
    let ys: Vec<Rational> = ys.into_iter().collect();
    let [y_squared] = ys.as_slice() else {
        return Err(Error::InvalidParameter(format!("expected one value of y^2, found {ys:?}")));
    };
    let d = partial.map_ring(Ring::quadratic(y_squared.clone()), None)?;
    let (reached, complete) = extend(&d, order, opts)?;
    Ok(BranchB { x_constraints, x: x.clone(), y_constraints, y_squared: y_squared.clone(), reached, complete })
}

/// `det [[119/13 - 65x, 65y], [(8*119/13) y, -(30 + 300x)]]`.
pub fn final_determinant(x: &Rational, y_squared: &Rational) -> DeterminantCheck {
    let q = Rational::from_int;
    let a = &Rational::frac(119, 13) - &(&q(65) * x);
    let d = -(&q(30) + &(&q(300) * x));
    let by = &q(65) * &Rational::frac(8 * 119, 13);
    let determinant = &(&a * &d) - &(&by * y_squared);
    DeterminantCheck { x: x.clone(), y_squared: y_squared.clone(), determinant }
}

/// Runs both branches through `order` and checks the determinants at
/// the three solutions.
pub fn classify(order: usize, truncation: i64) -> Result<Classification> {
    if order < 8 {
        return Err(Error::InvalidParameter(format!("order {order} < 8")));
    }
    if truncation < 28 {
        return Err(Error::Truncation(format!("truncation {truncation} < 28")));
    }
    let opts = IntegrationOptions::new(truncation.max(2 * order as i64 + 12));
    let (a, b) = rayon::join(|| branch_a(order, &opts), || branch_b(order, &opts));
    let (branch_a, branch_b) = (a?, b?);
    let mut points: Vec<(Rational, Rational)> = branch_a.roots.iter().map(|x| (x.clone(), Rational::zero())).collect();
    points.push((branch_b.x.clone(), branch_b.y_squared.clone()));
    let determinants = points.iter().map(|(x, y2)| final_determinant(x, y2)).collect();
    Ok(Classification { order, truncation: opts.truncation, branch_a, branch_b, determinants })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PolyScalar;

    #[test]
    fn determinant_values() {
        let d = final_determinant(&Rational::zero(), &Rational::zero());
        assert_eq!(d.determinant, Rational::frac(-3570, 13));
        let d = final_determinant(&Rational::frac(119, 845), &Rational::frac(432, 2197));
        assert!(d.nonzero());
    }

    #[test]
    fn branch_a_roots() {
        let a = branch_a(4, &IntegrationOptions::new(28)).unwrap();
        assert_eq!(a.roots, vec![Rational::frac(-1, 5), Rational::zero()]);
        for c in &a.constraints {
            assert_eq!((c.order, c.weight), (4, 8));
            let x = PolyScalar::x(Ring::poly()).unwrap();
            let f = x.checked_mul(&x.scale(&Rational::from_int(5)).checked_add(&PolyScalar::constant(Ring::poly(), Rational::one())).unwrap()).unwrap();
            let ratio = c.polynomial.coeff(&Monomial { x: 2, y: 0 }) / Rational::from_int(5);
            assert_eq!(c.polynomial, f.scale(&ratio));
        }
    }
}
