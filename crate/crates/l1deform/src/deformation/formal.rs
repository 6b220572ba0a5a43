//! Formal deformations, the deformation equation, parameter changes, and
//! the three families.

use std::collections::BTreeMap;

use serde::Serialize;

use super::graded::{Graded, PolyCochain};
use crate::algebra::{abelianization_dims, bracket as algebra_bracket, AlgebraSpec, Family, Space, Vector};
use crate::cochain::{alpha1, tuples_with_max};
use crate::error::{Error, Result};
use crate::exact::{PolyScalar, Rational, Ring};

/// `[g,h]_t = [g,h] + sum_k alpha_k(g,h) t^k`, truncated at order `K`.
#[derive(Clone, Debug)]
pub struct FormalDeformation {
    ring: Ring,
    alphas: Vec<PolyCochain>,
}

impl FormalDeformation {
    pub fn new(ring: Ring, alphas: Vec<PolyCochain>) -> Result<Self> {
        for a in &alphas {
            if a.degree() != 2 && !a.is_empty() {
                return Err(Error::Arity { expected: 2, found: a.degree() });
            }
        }
        let alphas = alphas.into_iter().map(|a| if a.is_empty() { PolyCochain::zero(ring.clone(), 2) } else { a }).collect();
        Ok(FormalDeformation { ring, alphas })
    }

    pub fn rational(alphas: Vec<Graded>) -> Result<Self> {
        Self::new(Ring::Q, alphas.into_iter().map(PolyCochain::rational).collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.alphas.len()
    }

    /// `alpha_k`, zero beyond the stored order.
    pub fn alpha(&self, k: usize) -> PolyCochain {
        match k.checked_sub(1).and_then(|i| self.alphas.get(i)) {
            Some(a) => a.clone(),
            None => PolyCochain::zero(self.ring.clone(), 2),
        }
    }

    pub fn rational_alpha(&self, k: usize) -> Result<Graded> {
        self.alpha(k).as_rational().ok_or_else(|| Error::RingMismatch("Q".into(), self.ring.to_string()))
    }

    pub fn alphas(&self) -> &[PolyCochain] {
        &self.alphas
    }

    /// Same deformation with orders above `k` dropped or padded with zero.
    pub fn with_order(&self, k: usize) -> Self {
        let alphas = (1..=k).map(|i| self.alpha(i)).collect();
        FormalDeformation { ring: self.ring.clone(), alphas }
    }

    pub fn push(&mut self, alpha: PolyCochain) -> Result<()> {
        if alpha.degree() != 2 && !alpha.is_empty() {
            return Err(Error::Arity { expected: 2, found: alpha.degree() });
        }
        self.alphas.push(alpha);
        Ok(())
    }

    /// Changes the scalar ring, substituting `x = v` when given.
    pub fn map_ring(&self, ring: Ring, x: Option<&Rational>) -> Result<Self> {
        let alphas = self.alphas.iter().map(|a| a.map_ring(ring.clone(), x)).collect::<Result<_>>()?;
        Ok(FormalDeformation { ring, alphas })
    }

    /// `[e_i, e_j]_t` coefficient by coefficient: order to vector.
    pub fn bracket_series(&self, i: i64, j: i64) -> Result<Vec<BTreeMap<i64, PolyScalar>>> {
        let mut out = Vec::with_capacity(self.order() + 1);
        let mut zeroth = BTreeMap::new();
        if let Some((c, k)) = AlgebraSpec::L1.bracket_basis(i, j)? {
            zeroth.insert(k, PolyScalar::constant(self.ring.clone(), Rational::from_int(c)));
        }
        out.push(zeroth);
        for a in &self.alphas {
            out.push(a.value(&[i, j])?);
        }
        Ok(out)
    }
}

/// The family `[ , ]^r_t`, linear in `t`, padded with zeros to order `k`.
pub fn deformation_family(r: u8, order: usize) -> Result<FormalDeformation> {
    Family::new(r)?;
    let mut alphas = vec![Graded::from_cochain(alpha1(r)?)];
    alphas.resize(order.max(1), Graded::zero(2));
    FormalDeformation::rational(alphas)
}

/// `d alpha_k + 1/2 sum_{i+j=k} [alpha_i, alpha_j]`; zero exactly when the
/// Jacobi identity holds at order `k`.
pub fn jacobi_defect(d: &FormalDeformation, k: usize) -> Result<PolyCochain> {
    if k == 0 || k > d.order() {
        return Err(Error::InvalidParameter(format!("order {k} outside 1..={}", d.order())));
    }
    let mut out = d.alpha(k).differential();
    if out.is_empty() {
        out = PolyCochain::zero(d.ring().clone(), 3);
    }
    let half = Rational::frac(1, 2);
    for i in 1..k {
        let (a, b) = (d.alpha(i), d.alpha(k - i));
        if a.is_empty() || b.is_empty() {
            continue;
        }
        out = out.add(&a.bracket(&b)?.scale(&half))?;
    }
    Ok(out)
}

/// The defect vanishes on every triple with entries up to `window`.
pub fn defect_vanishes(d: &FormalDeformation, k: usize, window: i64) -> Result<bool> {
    let defect = jacobi_defect(d, k)?;
    for t in tuples_with_max(3, window) {
        if !defect.value(&t)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A formal parameter change `u(t) = sum u_m t^m`, `u(0) = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParameterChange {
    /// `u_1, u_2, ...`
    coeffs: Vec<Rational>,
}

impl ParameterChange {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        ParameterChange { coeffs }
    }

    pub fn identity() -> Self {
        Self::new(vec![Rational::one()])
    }

    /// `u(t) = t^m`.
    pub fn power(m: usize) -> Self {
        let mut c = vec![Rational::zero(); m.max(1)];
        c[m.max(1) - 1] = Rational::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients `[t^0..t^k]` of `u(t)^j`.
    fn power_series(&self, j: usize, k: usize) -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); k + 1];
        acc[0] = Rational::one();
        for _ in 0..j {
            let mut next = vec![Rational::zero(); k + 1];
            for (a, x) in acc.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (m, u) in self.coeffs.iter().enumerate() {
                    let e = a + m + 1;
                    if e > k {
                        break;
                    }
                    next[e] += &(x * u);
                }
            }
            acc = next;
        }
        acc
    }

    /// `u(v(t))` through order `k`.
    pub fn compose(&self, v: &ParameterChange, k: usize) -> ParameterChange {
        let mut out = vec![Rational::zero(); k + 1];
        for (m, u) in self.coeffs.iter().enumerate() {
            if m + 1 > k || u.is_zero() {
                continue;
            }
            for (e, c) in v.power_series(m + 1, k).into_iter().enumerate() {
                out[e] += &(u * &c);
            }
        }
        ParameterChange::new(out.split_off(1))
    }
}

/// `alpha'_n = sum_j alpha_j [t^n] u(t)^j` for `n <= k`.
pub fn apply_parameter_change(d: &FormalDeformation, u: &ParameterChange, k: usize) -> Result<FormalDeformation> {
    let powers: Vec<Vec<Rational>> = (0..=k).map(|j| u.power_series(j, k)).collect();
    let mut alphas = Vec::with_capacity(k);
    for n in 1..=k {
        let mut a = PolyCochain::zero(d.ring().clone(), 2);
        for (j, pow) in powers.iter().enumerate().take(n + 1).skip(1) {
            let c = &pow[n];
            let aj = d.alpha(j);
            if !c.is_zero() && !aj.is_empty() {
                a = a.add(&aj.scale(c))?;
            }
        }
        alphas.push(a);
    }
    FormalDeformation::new(d.ring().clone(), alphas)
}

fn l0(i: i64) -> Result<Vector> {
    Vector::basis(Space::Algebra(AlgebraSpec::L0), i)
}

fn to_l0(v: &Vector) -> Result<Vector> {
    Vector::from_terms(Space::Algebra(AlgebraSpec::L0), v.terms().map(|(i, c)| (i, c.clone())))
}

/// Checks on `e_1..e_N` that the stated map into `L0` intertwines the
/// deformed bracket with the bracket of `L0`, identically in `t`.
pub fn verify_embedding(r: u8, window: i64) -> Result<bool> {
    let family = Family::new(r)?;
    if window < 10 {
        return Err(Error::WindowTooSmall { window, bound: 10 });
    }
    let shift = |k: i64| -> Result<Vector> {
        match r {
            1 => l0(k - 1),
            2 if k == 1 => l0(0),
            3 if k == 2 => l0(0),
            _ => Ok(Vector::zero(Space::Algebra(AlgebraSpec::L0))),
        }
    };
    let shift_vec = |v: &Vector| -> Result<Vector> {
        let mut out = Vector::zero(Space::Algebra(AlgebraSpec::L0));
        for (k, c) in v.terms() {
            out = out.add(&shift(k)?.scale(c))?;
        }
        Ok(out)
    };
    let br = |a: &Vector, b: &Vector| algebra_bracket(AlgebraSpec::L0, a, b);
    for i in 1..=window {
        for j in (i + 1)..=window {
            let b0 = to_l0(&family.bracket(i, j, &Rational::zero())?)?;
            let b1 = to_l0(&family.bracket(i, j, &Rational::one())?)?.add(&b0.scale(&Rational::from_int(-1)))?;
            let (ei, ej, si, sj) = (l0(i)?, l0(j)?, shift(i)?, shift(j)?);
            let lhs = [b0.clone(), shift_vec(&b0)?.add(&b1)?, shift_vec(&b1)?];
            let rhs = [br(&ei, &ej)?, br(&ei, &sj)?.add(&br(&si, &ej)?)?, br(&si, &sj)?];
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyInvariants {
    pub family: u8,
    /// `dim g/[g,g]` at `t = 1`.
    pub abelianization: usize,
    /// `dim M/[M,M]`, `M = [g,g]`; only computed when the first
    /// invariant does not already separate the family.
    pub derived_abelianization: Option<usize>,
    pub stable: bool,
}

/// The invariants separating the three families at `t = 1`.
pub fn distinguish_families(n: i64) -> Result<Vec<FamilyInvariants>> {
    let reports = (1..=3).map(|r| abelianization_dims(Family::new(r)?, n)).collect::<Result<Vec<_>>>()?;
    let ones = reports.iter().filter(|a| a.g_mod_derived == 1).count();
    Ok(reports
        .into_iter()
        .map(|a| FamilyInvariants {
            family: a.family,
            abelianization: a.g_mod_derived,
            derived_abelianization: (a.g_mod_derived == 1 && ones > 1).then_some(a.derived_mod_second),
            stable: a.stable,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::dmu;

    #[test]
    fn family_values() {
        let d = deformation_family(1, 3).unwrap();
        let s = d.bracket_series(2, 5).unwrap();
        assert_eq!(s[0].get(&7).unwrap().as_rational().unwrap(), Rational::from_int(3));
        assert_eq!(s[1].get(&6).unwrap().as_rational().unwrap(), Rational::from_int(3));
        let s = deformation_family(2, 1).unwrap().bracket_series(1, 4).unwrap();
        assert_eq!(s[1].get(&4).unwrap().as_rational().unwrap(), Rational::from_int(4));
        let s = deformation_family(3, 1).unwrap().bracket_series(1, 4).unwrap();
        assert!(s[1].is_empty());
    }

    #[test]
    fn families_satisfy_jacobi() {
        for r in 1..=3 {
            let d = deformation_family(r, 3).unwrap();
            for k in 1..=3 {
                assert!(defect_vanishes(&d, k, 12).unwrap(), "r={r} k={k}");
            }
        }
    }

    #[test]
    fn lone_alpha1_defect_is_its_differential() {
        let c = crate::cochain::Cochain::table(2, 3, crate::cochain::Window::Unbounded, [(smallvec::smallvec![2, 4], Rational::one())], "c").unwrap();
        let d = FormalDeformation::rational(vec![Graded::from_cochain(c.clone())]).unwrap();
        let defect = jacobi_defect(&d, 1).unwrap().as_rational().unwrap();
        let dc = crate::cochain::ce_differential(&c);
        assert!(!dc.is_zero_on(8).unwrap());
        for t in tuples_with_max(3, 8) {
            assert_eq!(defect.part(3).unwrap().eval(&t).unwrap(), dc.eval(&t).unwrap());
        }
    }

    #[test]
    fn square_of_dmu4_breaks_order_two() {
        let d = FormalDeformation::rational(vec![Graded::from_cochain(dmu(4).unwrap()), Graded::zero(2)]).unwrap();
        assert!(!defect_vanishes(&d, 2, 12).unwrap());
    }

    #[test]
    fn parameter_changes() {
        let d = deformation_family(1, 4).unwrap();
        let same = apply_parameter_change(&d, &ParameterChange::identity(), 4).unwrap();
        for k in 1..=4 {
            assert_eq!(same.alpha(k).weights(), d.alpha(k).weights());
        }
        let sq = apply_parameter_change(&d, &ParameterChange::power(2), 4).unwrap();
        assert!(sq.alpha(1).is_empty() && sq.alpha(3).is_empty());
        assert_eq!(sq.alpha(2).weights(), vec![1]);
        let u = ParameterChange::new(vec![Rational::from_int(1), Rational::from_int(2)]);
        let v = ParameterChange::new(vec![Rational::from_int(3), Rational::zero(), Rational::from_int(1)]);
        let uv = u.compose(&v, 4);
        // u(v(t)) = 3t + t^3 + 2 (3t + t^3)^2
        assert_eq!(uv.coeffs(), &[3, 18, 1, 12].map(Rational::from_int));
    }

    #[test]
    fn embeddings() {
        for r in 1..=3 {
            assert!(verify_embedding(r, 12).unwrap(), "r={r}");
        }
    }

    #[test]
    fn invariants_table() {
        let t = distinguish_families(20).unwrap();
        let got: Vec<_> = t.iter().map(|f| (f.abelianization, f.derived_abelianization)).collect();
        assert_eq!(got, vec![(2, None), (1, Some(3)), (1, Some(2))]);
    }
}
