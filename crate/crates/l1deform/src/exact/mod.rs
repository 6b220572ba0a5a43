//! Exact scalars and sparse linear algebra.

mod dense;
mod modp;
mod poly;
mod rational;
mod roots;
mod sparse;

use std::fmt;

pub use dense::invert_dense;
pub use modp::{Fp, P61};
pub use poly::{Monomial, PolyScalar, Ring};
pub use rational::Rational;
pub use roots::{poly_roots_rational, RootReport};
pub use sparse::{Echelon, SolveOutcome, SparseMatrix, SparseVec};

use crate::error::{Error, Result};

/// Scalars usable in elimination. Arithmetic between elements of
/// different rings is a programming error and panics.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// Rejects scalars whose ring is not a field.
    fn field_check(&self) -> Result<()> {
        Ok(())
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        self.recip()
    }
}

impl Field for PolyScalar {
    fn zero_like(&self) -> Self {
        PolyScalar::zero(self.ring().clone())
    }
    fn one_like(&self) -> Self {
        PolyScalar::constant(self.ring().clone(), Rational::one())
    }
    fn is_zero(&self) -> bool {
        PolyScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("scalar ring mismatch")
    }
    fn sub(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("scalar ring mismatch")
    }
    fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("scalar ring mismatch")
    }
    fn neg(&self) -> Self {
        PolyScalar::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        self.checked_inv()
    }
    fn field_check(&self) -> Result<()> {
        if self.ring().is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(self.ring().to_string()))
        }
    }
}
