use std::fmt;

use super::Field;
use crate::error::{Error, Result};

/// The Mersenne prime `2^61 - 1`.
pub const P61: u64 = (1 << 61) - 1;

/// Residues modulo [`P61`], used for fast rank computations whose results
/// are then certified over `Q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % P61)
    }

    pub fn from_i64(v: i64) -> Self {
        if v >= 0 {
            Fp(v as u64 % P61)
        } else {
            Fp((P61 - ((-(v as i128)) as u64 % P61)) % P61)
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn mulmod(a: u64, b: u64) -> u64 {
        let p = (a as u128) * (b as u128);
        let lo = (p as u64) & P61;
        let hi = (p >> 61) as u64;
        let s = lo + hi;
        if s >= P61 {
            s - P61
        } else {
            s
        }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let (mut b, mut r) = (self.0, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                r = Self::mulmod(r, b);
            }
            b = Self::mulmod(b, b);
            e >>= 1;
        }
        Fp(r)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp(0)
    }
    fn one_like(&self) -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P61 { s - P61 } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P61 - o.0 })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(Self::mulmod(self.0, o.0))
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P61 - self.0 })
    }
    fn inv(&self) -> Result<Self> {
        if self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(P61 - 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Fp::from_i64(-3);
        assert_eq!(a.add(&Fp::new(3)), Fp::new(0));
        assert_eq!(a.mul(&a.inv().unwrap()), Fp::new(1));
        assert_eq!(Fp::new(P61 - 1).mul(&Fp::new(P61 - 1)), Fp::new(1));
    }
}
