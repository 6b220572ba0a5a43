//! Scalars for generic-coefficient runs: truncated polynomials in two
//! unknowns `x`, `y`, and the quotient ring `Q[y]/(y^2 - c)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    /// The rationals.
    Q,
    /// `Q[x,y]` with monomials of total degree above `cap` rejected.
    Poly { cap: u32 },
    /// `Q[y]/(y^2 - c)`.
    Quadratic { c: Rational },
}

impl Ring {
    pub fn poly() -> Self {
        Ring::Poly { cap: 6 }
    }

    pub fn quadratic(c: Rational) -> Self {
        Ring::Quadratic { c }
    }

    /// Division is possible in `Q` and in a quadratic extension whose
    /// modulus is not a square.
    pub fn is_field(&self) -> bool {
        match self {
            Ring::Q => true,
            Ring::Poly { .. } => false,
            Ring::Quadratic { c } => c.sqrt_exact().is_none(),
        }
    }

    fn join(&self, other: &Ring) -> Result<Ring> {
        match (self, other) {
            (a, b) if a == b => Ok(a.clone()),
            (Ring::Q, b) => Ok(b.clone()),
            (a, Ring::Q) => Ok(a.clone()),
            (a, b) => Err(Error::RingMismatch(a.to_string(), b.to_string())),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Q => write!(f, "Q"),
            Ring::Poly { cap } => write!(f, "Q[x,y]_(deg<={cap})"),
            Ring::Quadratic { c } => write!(f, "Q[y]/(y^2-{c})"),
        }
    }
}

/// Exponents of `x^a y^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };
    pub const X: Monomial = Monomial { x: 1, y: 0 };
    pub const Y: Monomial = Monomial { x: 0, y: 1 };

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }

    fn times(&self, o: &Monomial) -> Monomial {
        Monomial { x: self.x + o.x, y: self.y + o.y }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (v, e) in [("x", self.x), ("y", self.y)] {
            match e {
                0 => {}
                1 => parts.push(v.to_string()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyScalar {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl PolyScalar {
    pub fn zero(ring: Ring) -> Self {
        PolyScalar { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::ONE, c);
        }
        p
    }

    pub fn rational(c: Rational) -> Self {
        Self::constant(Ring::Q, c)
    }

    pub fn monomial(ring: Ring, m: Monomial, c: Rational) -> Result<Self> {
        Self::from_terms(ring, [(m, c)])
    }

    pub fn x(ring: Ring) -> Result<Self> {
        Self::monomial(ring, Monomial::X, Rational::one())
    }

    pub fn y(ring: Ring) -> Result<Self> {
        Self::monomial(ring, Monomial::Y, Rational::one())
    }

    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Adds `c * m`, reducing in the quotient ring.
    fn add_term(&mut self, m: Monomial, c: Rational) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let (m, c) = match &self.ring {
            Ring::Q if m != Monomial::ONE => {
                return Err(Error::RingMismatch("Q".into(), format!("monomial {m}")))
            }
            Ring::Poly { cap } if m.degree() > *cap => {
                return Err(Error::DegreeOverflow { degree: m.degree(), cap: *cap })
            }
            Ring::Quadratic { .. } if m.x > 0 => {
                return Err(Error::RingMismatch(self.ring.to_string(), format!("monomial {m}")))
            }
            Ring::Quadratic { c: modulus } => {
                let half = m.y / 2;
                (Monomial { x: 0, y: m.y % 2 }, &c * &modulus.pow(half))
            }
            _ => (m, c),
        };
        let slot = self.terms.entry(m).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let mut out = PolyScalar { ring: self.ring.join(&o.ring)?, terms: self.terms.clone() };
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let mut out = PolyScalar::zero(self.ring.join(&o.ring)?);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.times(m2), c1 * c2)?;
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        PolyScalar {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.ring.clone());
        }
        PolyScalar {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    pub fn checked_inv(&self) -> Result<Self> {
        match &self.ring {
            Ring::Q => Ok(Self::rational(self.coeff(&Monomial::ONE).recip()?)),
            Ring::Poly { .. } => match self.as_rational() {
                Some(r) => Ok(Self::constant(self.ring.clone(), r.recip()?)),
                None => Err(Error::NotAField(self.ring.to_string())),
            },
            Ring::Quadratic { c } => {
                if !self.ring.is_field() {
                    return Err(Error::NotAField(self.ring.to_string()));
                }
                // (a + b y)^-1 = (a - b y) / (a^2 - c b^2)
                let a = self.coeff(&Monomial::ONE);
                let b = self.coeff(&Monomial::Y);
                let norm = &(&a * &a) - &(&(c * &b) * &b);
                let inv = norm.recip()?;
                Self::from_terms(self.ring.clone(), [(Monomial::ONE, &a * &inv), (Monomial::Y, -&(&b * &inv))])
            }
        }
    }

    /// Moves the value into a larger ring (`Q` into anything).
    pub fn lift(&self, ring: &Ring) -> Result<Self> {
        let r = self.ring.join(ring)?;
        Self::from_terms(r, self.terms.iter().map(|(m, c)| (*m, c.clone())))
    }

    /// Substitutes a rational value for `x`.
    pub fn subs_x(&self, v: &Rational, ring: Ring) -> Result<Self> {
        let mut out = Self::zero(ring);
        for (m, c) in &self.terms {
            out.add_term(Monomial { x: 0, y: m.y }, c * &v.pow(m.x))?;
        }
        Ok(out)
    }

    /// Coefficient list (lowest degree first) when only one unknown occurs.
    pub fn univariate(&self) -> Result<(char, Vec<Rational>)> {
        let uses_x = self.terms.keys().any(|m| m.x > 0);
        let uses_y = self.terms.keys().any(|m| m.y > 0);
        if uses_x && uses_y {
            return Err(Error::NotUnivariate);
        }
        let var = if uses_y { 'y' } else { 'x' };
        let deg = self.degree().unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.degree() as usize] = c.clone();
        }
        Ok((var, coeffs))
    }

    /// Exact division by the unknown `y` (or `x`); fails when a term has
    /// no such factor.
    pub fn divide_by(&self, var: Monomial) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.x < var.x || m.y < var.y {
                return None;
            }
            terms.insert(Monomial { x: m.x - var.x, y: m.y - var.y }, c.clone());
        }
        Some(PolyScalar { ring: self.ring.clone(), terms })
    }
}

/// Serialized in its printed form, e.g. `-1440/77*x^2 - 288/77*x`.
impl Serialize for PolyScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.signum() < 0;
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (*m == Monomial::ONE, a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{a}*{m}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn quotient_reduces_y_squared() {
        let ring = Ring::quadratic(q(432, 2197));
        let y = PolyScalar::y(ring.clone()).unwrap();
        let yy = y.checked_mul(&y).unwrap();
        assert_eq!(yy, PolyScalar::constant(ring, q(432, 2197)));
    }

    #[test]
    fn quadratic_inverse() {
        let ring = Ring::quadratic(q(432, 2197));
        let y = PolyScalar::y(ring.clone()).unwrap();
        let a = y.checked_add(&PolyScalar::constant(ring.clone(), q(3, 5))).unwrap();
        let prod = a.checked_mul(&a.checked_inv().unwrap()).unwrap();
        assert_eq!(prod, PolyScalar::constant(ring, Rational::one()));
    }

    #[test]
    fn square_modulus_is_not_a_field() {
        assert!(!Ring::quadratic(q(9, 4)).is_field());
        assert!(Ring::quadratic(q(2, 1)).is_field());
    }

    #[test]
    fn degree_cap_enforced() {
        let ring = Ring::Poly { cap: 2 };
        let x = PolyScalar::x(ring.clone()).unwrap();
        let xx = x.checked_mul(&x).unwrap();
        assert!(matches!(xx.checked_mul(&x), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn display() {
        let ring = Ring::poly();
        let p = PolyScalar::from_terms(ring, [(Monomial { x: 2, y: 0 }, q(-7200, 77)), (Monomial::X, q(-1440, 77))]).unwrap();
        assert_eq!(p.to_string(), "-7200/77*x^2 - 1440/77*x");
    }
}
