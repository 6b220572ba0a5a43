use super::Rational;
use crate::error::{Error, Result};

/// Inverse of a square matrix by Gauss-Jordan elimination.
pub fn invert_dense(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            Ok(r)
        })
        .collect::<Result<_>>()?;
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
        a.swap(c, p);
        let inv = a[c][c].recip()?;
        for v in a[c].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot) {
                if !p.is_zero() {
                    *v -= &(&f * p);
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_small_matrix() {
        let q = Rational::from_int;
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = invert_dense(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(invert_dense(&[vec![q(1), q(1)], vec![q(2), q(2)]]).is_err());
    }
}
