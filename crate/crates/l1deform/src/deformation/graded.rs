//! Finite sums of weight-homogeneous cochains, and polynomials in the
//! unknowns `x`, `y` with such sums as coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::cochain::{bracket, ce_differential, lin, sort_with_sign, tuples_with_max, Cochain};
use crate::error::{Error, Result};
use crate::exact::{Monomial, PolyScalar, Rational, Ring};

/// A cochain with finitely many weight components.
#[derive(Clone)]
pub struct Graded {
    degree: usize,
    parts: BTreeMap<i64, Cochain>,
}

impl fmt::Debug for Graded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graded(q={}, {:?})", self.degree, self.parts.values().collect::<Vec<_>>())
    }
}

impl Graded {
    pub fn zero(degree: usize) -> Self {
        Graded { degree, parts: BTreeMap::new() }
    }

    pub fn from_cochain(c: Cochain) -> Self {
        let mut g = Self::zero(c.degree());
        if !c.is_trivially_zero() {
            g.parts.insert(c.weight(), c);
        }
        g
    }

    pub fn from_parts(degree: usize, parts: impl IntoIterator<Item = Cochain>) -> Result<Self> {
        let mut g = Self::zero(degree);
        for c in parts {
            if c.degree() != degree {
                return Err(Error::Arity { expected: degree, found: c.degree() });
            }
            g = g.add(&Graded::from_cochain(c))?;
        }
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weights(&self) -> impl Iterator<Item = i64> + '_ {
        self.parts.keys().copied()
    }

    pub fn part(&self, w: i64) -> Option<&Cochain> {
        self.parts.get(&w)
    }

    pub fn parts(&self) -> impl Iterator<Item = &Cochain> {
        self.parts.values()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add(&self, o: &Graded) -> Result<Graded> {
        if o.degree != self.degree {
            return Err(Error::Arity { expected: self.degree, found: o.degree });
        }
        let mut parts = self.parts.clone();
        for (w, c) in &o.parts {
            let merged = match parts.remove(w) {
                Some(a) => lin([(Rational::one(), a.clone()), (Rational::one(), c.clone())], &format!("{} + {}", a.label(), c.label()))?,
                None => c.clone(),
            };
            parts.insert(*w, merged);
        }
        Ok(Graded { degree: self.degree, parts })
    }

    pub fn scale(&self, r: &Rational) -> Graded {
        if r.is_zero() {
            return Self::zero(self.degree);
        }
        if r.is_one() {
            return self.clone();
        }
        let parts = self.parts.iter().map(|(w, c)| (*w, crate::cochain::scale(r.clone(), c))).collect();
        Graded { degree: self.degree, parts }
    }

    pub fn differential(&self) -> Graded {
        let parts = self.parts.iter().map(|(w, c)| (*w, ce_differential(c))).collect();
        Graded { degree: self.degree + 1, parts }
    }

    pub fn bracket(&self, o: &Graded) -> Result<Graded> {
        let mut out = Graded::zero(self.degree + o.degree - 1);
        for a in self.parts.values() {
            for b in o.parts.values() {
                out = out.add(&Graded::from_cochain(bracket(a, b)?))?;
            }
        }
        Ok(out)
    }

    /// Value on `e_{args}` as a vector: index to coefficient.
    pub fn value(&self, args: &[i64]) -> Result<BTreeMap<i64, Rational>> {
        let mut out = BTreeMap::new();
        let (s, t) = sort_with_sign(args);
        if s == 0 {
            return Ok(out);
        }
        let sum: i64 = t.iter().sum();
        for (w, c) in &self.parts {
            let v = c.eval(&t)?;
            if !v.is_zero() {
                out.insert(sum - w, if s < 0 { -v } else { v });
            }
        }
        Ok(out)
    }

    /// True when every component vanishes on tuples with entries up to
    /// `max`.
    pub fn is_zero_on(&self, max: i64) -> Result<bool> {
        for c in self.parts.values() {
            if !c.is_zero_on(max)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First tuple (entries up to `max`) where `self` and `o` differ.
    pub fn first_difference(&self, o: &Graded, max: i64) -> Result<Option<(Vec<i64>, i64)>> {
        let weights: std::collections::BTreeSet<i64> = self.weights().chain(o.weights()).collect();
        for t in tuples_with_max(self.degree, max) {
            for w in &weights {
                let a = self.part(*w).map(|c| c.eval(&t)).transpose()?.unwrap_or_default();
                let b = o.part(*w).map(|c| c.eval(&t)).transpose()?.unwrap_or_default();
                if a != b {
                    return Ok(Some((t.to_vec(), *w)));
                }
            }
        }
        Ok(None)
    }
}

/// A polynomial in `x`, `y` over a scalar ring with graded cochain
/// coefficients.
#[derive(Clone, Debug)]
pub struct PolyCochain {
    ring: Ring,
    degree: usize,
    terms: BTreeMap<Monomial, Graded>,
}

impl PolyCochain {
    pub fn zero(ring: Ring, degree: usize) -> Self {
        PolyCochain { ring, degree, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, g: Graded) -> Self {
        Self::monomial(ring, Monomial::ONE, g)
    }

    pub fn rational(g: Graded) -> Self {
        Self::constant(Ring::Q, g)
    }

    pub fn monomial(ring: Ring, m: Monomial, g: Graded) -> Self {
        let degree = g.degree();
        let mut terms = BTreeMap::new();
        if !g.is_empty() {
            terms.insert(m, g);
        }
        PolyCochain { ring, degree, terms }
    }

    /// `p * c` for a scalar polynomial and a single cochain.
    pub fn scalar_times(p: &PolyScalar, c: Cochain) -> Result<Self> {
        let degree = c.degree();
        let mut out = Self::zero(p.ring().clone(), degree);
        for (m, a) in p.terms() {
            out = out.add(&Self::monomial(p.ring().clone(), *m, Graded::from_cochain(c.clone()).scale(a)))?;
        }
        Ok(out)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Graded)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self.terms.values().flat_map(|g| g.weights()).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// The weight-`w` component, monomial by monomial.
    pub fn component(&self, w: i64) -> Vec<(Monomial, Cochain)> {
        self.terms.iter().filter_map(|(m, g)| g.part(w).map(|c| (*m, c.clone()))).collect()
    }

    /// The coefficient when no unknown occurs.
    pub fn as_rational(&self) -> Option<Graded> {
        match self.terms.len() {
            0 => Some(Graded::zero(self.degree)),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, o: &PolyCochain) -> Result<PolyCochain> {
        let ring = join(&self.ring, &o.ring)?;
        if o.degree != self.degree {
            return Err(Error::Arity { expected: self.degree, found: o.degree });
        }
        let mut terms = self.terms.clone();
        for (m, g) in &o.terms {
            let merged = match terms.remove(m) {
                Some(a) => a.add(g)?,
                None => g.clone(),
            };
            if !merged.is_empty() {
                terms.insert(*m, merged);
            }
        }
        Ok(PolyCochain { ring, degree: self.degree, terms })
    }

    pub fn scale(&self, r: &Rational) -> PolyCochain {
        let terms = if r.is_zero() { BTreeMap::new() } else { self.terms.iter().map(|(m, g)| (*m, g.scale(r))).collect() };
        PolyCochain { ring: self.ring.clone(), degree: self.degree, terms }
    }

    pub fn differential(&self) -> PolyCochain {
        let terms = self.terms.iter().map(|(m, g)| (*m, g.differential())).collect();
        PolyCochain { ring: self.ring.clone(), degree: self.degree + 1, terms }
    }

    pub fn bracket(&self, o: &PolyCochain) -> Result<PolyCochain> {
        let ring = join(&self.ring, &o.ring)?;
        let mut out = PolyCochain::zero(ring.clone(), self.degree + o.degree - 1);
        for (m1, a) in &self.terms {
            for (m2, b) in &o.terms {
                let prod = PolyScalar::monomial(ring.clone(), *m1, Rational::one())?.checked_mul(&PolyScalar::monomial(ring.clone(), *m2, Rational::one())?)?;
                let ab = a.bracket(b)?;
                for (m, c) in prod.terms() {
                    out = out.add(&PolyCochain::monomial(ring.clone(), *m, ab.scale(c)))?;
                }
            }
        }
        Ok(out)
    }

    /// Moves the coefficients into another ring, substituting `x = v`
    /// when given and reducing powers of `y` in a quotient ring.
    pub fn map_ring(&self, ring: Ring, x: Option<&Rational>) -> Result<PolyCochain> {
        let mut out = PolyCochain::zero(ring.clone(), self.degree);
        for (m, g) in &self.terms {
            let (mono, factor) = match x {
                Some(v) => (Monomial { x: 0, y: m.y }, v.pow(m.x)),
                None => (*m, Rational::one()),
            };
            let p = PolyScalar::monomial(ring.clone(), mono, factor)?;
            for (mm, c) in p.terms() {
                out = out.add(&PolyCochain::monomial(ring.clone(), *mm, g.scale(c)))?;
            }
        }
        Ok(out)
    }

    /// Value on `e_{args}`: index to polynomial coefficient.
    pub fn value(&self, args: &[i64]) -> Result<BTreeMap<i64, PolyScalar>> {
        let mut out: BTreeMap<i64, PolyScalar> = BTreeMap::new();
        for (m, g) in &self.terms {
            for (idx, v) in g.value(args)? {
                let p = PolyScalar::monomial(self.ring.clone(), *m, v)?;
                let slot = out.entry(idx).or_insert_with(|| PolyScalar::zero(self.ring.clone()));
                *slot = slot.checked_add(&p)?;
            }
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    pub fn is_zero_on(&self, max: i64) -> Result<bool> {
        for g in self.terms.values() {
            if !g.is_zero_on(max)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn join(a: &Ring, b: &Ring) -> Result<Ring> {
    match (a, b) {
        (a, b) if a == b => Ok(a.clone()),
        (Ring::Q, b) => Ok(b.clone()),
        (a, Ring::Q) => Ok(a.clone()),
        (a, b) => Err(Error::RingMismatch(a.to_string(), b.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{delta_kl, dmu};

    #[test]
    fn graded_bracket_splits_by_weight() {
        let a = Graded::from_parts(2, [dmu(2).unwrap(), dmu(3).unwrap()]).unwrap();
        let b = a.bracket(&a).unwrap();
        assert_eq!(b.weights().collect::<Vec<_>>(), vec![4, 5, 6]);
        let d22 = delta_kl(2, 2).unwrap();
        for t in [[1, 2, 7], [2, 3, 9], [3, 4, 5]] {
            assert_eq!(b.part(4).unwrap().eval(&t).unwrap(), d22.eval(&t).unwrap());
        }
    }

    #[test]
    fn quotient_ring_reduces_y_squared() {
        let ring = Ring::quadratic(Rational::frac(2, 3));
        let y = PolyCochain::monomial(ring.clone(), Monomial::Y, Graded::from_cochain(dmu(2).unwrap()));
        let yy = y.bracket(&y).unwrap();
        let terms: Vec<_> = yy.terms().map(|(m, _)| *m).collect();
        assert_eq!(terms, vec![Monomial::ONE]);
        let v = yy.value(&[2, 3, 7]).unwrap();
        let w = delta_kl(2, 2).unwrap().eval(&[2, 3, 7]).unwrap();
        assert_eq!(v.get(&8).unwrap().as_rational().unwrap(), &w * &Rational::frac(2, 3));
    }
}
