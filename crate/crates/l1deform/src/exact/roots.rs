use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, PolyScalar, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RootReport {
    pub var: char,
    /// Rational roots with multiplicity, ascending.
    pub roots: Vec<Rational>,
    /// What is left after dividing out the rational roots; constant when
    /// the polynomial splits over Q.
    pub residual: PolyScalar,
}

fn horner(coeffs: &[Rational], v: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| &(&acc * v) + c)
}

/// Divides by `(var - v)`, assuming `v` is a root.
fn deflate(coeffs: &[Rational], v: &Rational) -> Vec<Rational> {
    let n = coeffs.len() - 1;
    let mut out = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (1..=n).rev() {
        carry = &coeffs[i] + &(&carry * v);
        out[i - 1] = carry.clone();
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots by enumerating `p/q` with `p | a_0`, `q | a_n`.
pub fn poly_roots_rational(p: &PolyScalar) -> Result<RootReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (var, mut coeffs) = p.univariate()?;
    let mut roots = Vec::new();
    while coeffs[0].is_zero() && coeffs.len() > 1 {
        roots.push(Rational::zero());
        coeffs.remove(0);
    }
    // integer coefficients
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    if coeffs.len() > 1 {
        let a0 = ints[0].clone();
        let an = ints[ints.len() - 1].clone();
        let mut cands = Vec::new();
        for num in divisors(&a0) {
            for den in divisors(&an) {
                let r = Rational::from_bigints(num.clone(), den)?;
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for c in cands {
            while coeffs.len() > 1 && horner(&coeffs, &c).is_zero() {
                coeffs = deflate(&coeffs, &c);
                roots.push(c.clone());
            }
        }
    }
    roots.sort();
    let ring = match p.ring() {
        Ring::Q => Ring::poly(),
        r => r.clone(),
    };
    let mono = |i: usize| if var == 'y' { Monomial { x: 0, y: i as u32 } } else { Monomial { x: i as u32, y: 0 } };
    let residual = PolyScalar::from_terms(ring, coeffs.into_iter().enumerate().map(|(i, c)| (mono(i), c)))?;
    Ok(RootReport { var, roots, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn poly_x(coeffs: &[Rational]) -> PolyScalar {
        PolyScalar::from_terms(Ring::poly(), coeffs.iter().enumerate().map(|(i, c)| (Monomial { x: i as u32, y: 0 }, c.clone()))).unwrap()
    }

    #[test]
    fn literal_obstruction_polynomial() {
        // 210 x (5x - 1) = 1050 x^2 - 210 x
        let p = poly_x(&[q(0, 1), q(-210, 1), q(1050, 1)]);
        let r = poly_roots_rational(&p).unwrap();
        assert_eq!(r.roots, vec![q(0, 1), q(1, 5)]);
        assert!(r.residual.degree() == Some(0));
    }

    #[test]
    fn irreducible_quadratic_residual() {
        let p = poly_x(&[q(1, 1), q(0, 1), q(1, 1)]);
        let r = poly_roots_rational(&p).unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.residual, p);
    }

    #[test]
    fn y_squared_minus_constant() {
        let p = PolyScalar::from_terms(Ring::poly(), [(Monomial { x: 0, y: 2 }, q(1, 1)), (Monomial::ONE, q(-432, 2197))]).unwrap();
        let r = poly_roots_rational(&p).unwrap();
        assert_eq!(r.var, 'y');
        assert!(r.roots.is_empty());
        assert_eq!(r.residual.degree(), Some(2));
    }

    #[test]
    fn multiplicities() {
        // (x - 1/2)^2 (x + 3)
        let p = poly_x(&[q(3, 4), q(-11, 4), q(2, 1), q(1, 1)]);
        let r = poly_roots_rational(&p).unwrap();
        assert_eq!(r.roots, vec![q(-3, 1), q(1, 2), q(1, 2)]);
    }

    #[test]
    fn zero_is_an_error() {
        assert_eq!(poly_roots_rational(&PolyScalar::zero(Ring::Q)), Err(Error::ZeroPolynomial));
    }
}
