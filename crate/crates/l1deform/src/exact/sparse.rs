//! Sparse exact elimination with certificates.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::Field;
use crate::error::{Error, Result};

/// Sorted `(index, value)` pairs without zeros.
pub type SparseVec<S> = Vec<(usize, S)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome<S> {
    Solvable(Vec<S>),
    /// `v` with `v^T A = 0` and `v^T b != 0`.
    Infeasible(Vec<S>),
}

fn axpy<S: Field>(row: &[(usize, S)], f: &S, p: &[(usize, S)]) -> SparseVec<S> {
    // row - f * p
    let mut out = Vec::with_capacity(row.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < p.len() {
        let take_row = j >= p.len() || (i < row.len() && row[i].0 < p[j].0);
        let take_p = i >= row.len() || (j < p.len() && p[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_p {
            out.push((p[j].0, f.mul(&p[j].1).neg()));
            j += 1;
        } else {
            let v = row[i].1.sub(&f.mul(&p[j].1));
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form. Each stored row is normalized so its
/// leading entry is one.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    pivots: HashMap<usize, usize>,
    rows: Vec<SparseVec<S>>,
}

impl<S: Field> Default for Echelon<S> {
    fn default() -> Self {
        Echelon { pivots: HashMap::new(), rows: Vec::new() }
    }
}

impl<S: Field> Echelon<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored pivots until its leading column is
    /// new or it vanishes.
    pub fn reduce(&self, mut row: SparseVec<S>) -> SparseVec<S> {
        while let Some((lead, val)) = row.first() {
            match self.pivots.get(lead) {
                Some(&r) => {
                    let f = val.clone();
                    row = axpy(&row, &f, &self.rows[r]);
                }
                None => break,
            }
        }
        row
    }

    /// Returns the new pivot column, or `None` if the row was dependent.
    pub fn insert(&mut self, row: SparseVec<S>) -> Result<Option<usize>> {
        let row = self.reduce(row);
        let Some((lead, val)) = row.first() else { return Ok(None) };
        let lead = *lead;
        let inv = val.inv()?;
        let row: SparseVec<S> = row.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect();
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
        Ok(Some(lead))
    }

    pub fn rows(&self) -> &[SparseVec<S>] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivots.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Solves for the columns below `limit` with free variables set to
    /// zero; `rhs_col` holds the right-hand side entries, if any.
    fn back_substitute(&self, limit: usize, rhs: impl Fn(&SparseVec<S>) -> Option<S>, zero: &S, fixed: &BTreeMap<usize, S>) -> Vec<S> {
        let mut x = vec![zero.clone(); limit];
        for (c, v) in fixed {
            x[*c] = v.clone();
        }
        let mut order: Vec<(usize, usize)> = self.pivots.iter().filter(|(c, _)| **c < limit).map(|(c, r)| (*c, *r)).collect();
        order.sort_unstable_by_key(|p| std::cmp::Reverse(p.0));
        for (c, r) in order {
            let row = &self.rows[r];
            let mut acc = rhs(row).unwrap_or_else(|| zero.clone());
            for (cc, v) in row.iter().skip(1) {
                if *cc < limit && !x[*cc].is_zero() {
                    acc = acc.sub(&v.mul(&x[*cc]));
                }
            }
            x[c] = acc;
        }
        x
    }
}

impl<S: Field> SparseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, S)>) -> Result<Self> {
        let mut acc: Vec<BTreeMap<usize, S>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            if r >= rows {
                return Err(Error::DimensionMismatch { expected: rows, found: r });
            }
            if c >= cols {
                return Err(Error::DimensionMismatch { expected: cols, found: c });
            }
            match acc[r].remove(&c) {
                Some(old) => {
                    let s = old.add(&v);
                    if !s.is_zero() {
                        acc[r].insert(c, s);
                    }
                }
                None => {
                    if !v.is_zero() {
                        acc[r].insert(c, v);
                    }
                }
            }
        }
        Ok(SparseMatrix { rows, cols, data: acc.into_iter().map(|m| m.into_iter().collect()).collect() })
    }

    pub fn identity(n: usize, one: S) -> Self {
        SparseMatrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, one.clone())]).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec<S> {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&S> {
        self.data[r].binary_search_by_key(&c, |e| e.0).ok().map(|i| &self.data[r][i].1)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c.to_owned(), v)))
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseVec<S>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    fn check_scalars(&self) -> Result<()> {
        match self.data.iter().flatten().next() {
            Some((_, v)) => v.field_check(),
            None => Ok(()),
        }
    }

    pub fn mul_vec(&self, x: &[S], zero: &S) -> Result<Vec<S>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok(self
            .data
            .iter()
            .map(|row| row.iter().fold(zero.clone(), |acc, (c, v)| acc.add(&v.mul(&x[*c]))))
            .collect())
    }

    /// `v^T A`.
    pub fn left_mul(&self, v: &[S], zero: &S) -> Result<Vec<S>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: v.len() });
        }
        let mut out = vec![zero.clone(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            if v[r].is_zero() {
                continue;
            }
            for (c, a) in row {
                out[*c] = out[*c].add(&v[r].mul(a));
            }
        }
        Ok(out)
    }

    pub fn echelon(&self) -> Result<Echelon<S>> {
        self.check_scalars()?;
        let mut e = Echelon::new();
        for row in &self.data {
            e.insert(row.clone())?;
        }
        Ok(e)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.echelon()?.rank())
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn kernel_with(&self, zero: &S, one: &S) -> Result<Vec<SparseVec<S>>> {
        let e = self.echelon()?;
        let mut out = Vec::new();
        for f in 0..self.cols {
            if e.pivots.contains_key(&f) {
                continue;
            }
            let fixed = BTreeMap::from([(f, one.clone())]);
            let x = e.back_substitute(self.cols, |_| None, zero, &fixed);
            out.push(x.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect());
        }
        Ok(out)
    }

    /// Exact solve of `A x = b` with a verified certificate either way.
    pub fn solve(&self, b: &[S]) -> Result<SolveOutcome<S>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let sample = self.data.iter().flatten().next().map(|e| e.1.clone()).or_else(|| b.first().cloned());
        let Some(sample) = sample else {
            return if self.cols == 0 {
                Ok(SolveOutcome::Solvable(Vec::new()))
            } else {
                Err(Error::InvalidParameter("cannot infer the scalar ring of an empty system".into()))
            };
        };
        let zero = sample.zero_like();
        self.check_scalars()?;
        let n = self.cols;
        let mut e = Echelon::new();
        let mut infeasible = false;
        for (r, row) in self.data.iter().enumerate() {
            let mut aug = row.clone();
            if !b[r].is_zero() {
                aug.push((n, b[r].clone()));
            }
            if e.insert(aug)? == Some(n) {
                infeasible = true;
                break;
            }
        }
        let outcome = if infeasible {
            SolveOutcome::Infeasible(self.left_witness(b, &zero)?)
        } else {
            let x = e.back_substitute(n, |row| row.last().filter(|(c, _)| *c == n).map(|(_, v)| v.clone()), &zero, &BTreeMap::new());
            SolveOutcome::Solvable(x)
        };
        self.verify(b, &outcome, &zero)?;
        Ok(outcome)
    }

    fn left_witness(&self, b: &[S], zero: &S) -> Result<Vec<S>> {
        let n = self.cols;
        let one = b.iter().find(|v| !v.is_zero()).map(|v| v.one_like()).expect("nonzero rhs");
        let mut e = Echelon::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut aug = row.clone();
            if !b[r].is_zero() {
                aug.push((n, b[r].clone()));
            }
            aug.push((n + 1 + r, one.clone()));
            let reduced = e.reduce(aug);
            if reduced.first().map(|x| x.0) == Some(n) {
                let mut v = vec![zero.clone(); self.rows];
                for (c, val) in reduced.into_iter().skip(1) {
                    v[c - n - 1] = val;
                }
                return Ok(v);
            }
            e.insert(reduced)?;
        }
        Err(Error::Certificate("no left-kernel witness found".into()))
    }

    pub fn verify(&self, b: &[S], outcome: &SolveOutcome<S>, zero: &S) -> Result<()> {
        match outcome {
            SolveOutcome::Solvable(x) => {
                let ax = self.mul_vec(x, zero)?;
                if ax.iter().zip(b).any(|(l, r)| l != r) {
                    return Err(Error::Certificate("A x != b".into()));
                }
            }
            SolveOutcome::Infeasible(v) => {
                let va = self.left_mul(v, zero)?;
                if va.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Certificate("v^T A != 0".into()));
                }
                let vb = v.iter().zip(b).fold(zero.clone(), |acc, (p, q)| acc.add(&p.mul(q)));
                if vb.is_zero() {
                    return Err(Error::Certificate("v^T b = 0".into()));
                }
            }
        }
        Ok(())
    }
}

impl SparseMatrix<super::Rational> {
    pub fn kernel(&self) -> Result<Vec<SparseVec<super::Rational>>> {
        self.kernel_with(&super::Rational::zero(), &super::Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn dense_rank(mut m: Vec<Vec<Rational>>) -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            for r in 0..rows {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[rank][c];
                    for cc in 0..cols {
                        let v = &m[r][cc] - &(&f * &m[rank][cc]);
                        m[r][cc] = v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn trivial_ranks() {
        let z: SparseMatrix<Rational> = SparseMatrix::zeros(3, 3);
        assert_eq!(z.rank().unwrap(), 0);
        assert_eq!(SparseMatrix::identity(4, q(1)).rank().unwrap(), 4);
    }

    #[test]
    fn solve_identity_and_zero() {
        let id = SparseMatrix::identity(3, q(1));
        let b = vec![q(2), q(-1), Rational::frac(1, 3)];
        assert_eq!(id.solve(&b).unwrap(), SolveOutcome::Solvable(b.clone()));
        let z: SparseMatrix<Rational> = SparseMatrix::zeros(3, 2);
        let b = vec![q(0), q(5), q(0)];
        match z.solve(&b).unwrap() {
            SolveOutcome::Infeasible(v) => assert!(!v[1].is_zero()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = SparseMatrix::from_triplets(2, 4, [(0, 0, q(1)), (0, 1, q(2)), (1, 1, q(1)), (1, 3, q(-1))]).unwrap();
        let k = m.kernel().unwrap();
        assert_eq!(k.len(), 2);
        for v in k {
            let mut x = vec![q(0); 4];
            for (i, a) in v {
                x[i] = a;
            }
            assert!(m.mul_vec(&x, &q(0)).unwrap().iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn dimension_mismatch() {
        let m: SparseMatrix<Rational> = SparseMatrix::zeros(2, 2);
        assert!(matches!(m.solve(&[q(1)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn polynomial_scalars_rejected() {
        use crate::exact::{PolyScalar, Ring};
        let x = PolyScalar::x(Ring::poly()).unwrap();
        let m = SparseMatrix::from_triplets(1, 1, [(0, 0, x)]).unwrap();
        assert!(matches!(m.rank(), Err(Error::NotAField(_))));
    }

    #[test]
    fn sparse_rank_matches_dense_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let r = rng.gen_range(1..12);
            let c = rng.gen_range(1..12);
            let dense: Vec<Vec<Rational>> = (0..r)
                .map(|_| (0..c).map(|_| if rng.gen_bool(0.4) { q(rng.gen_range(-3..=3)) } else { q(0) }).collect())
                .collect();
            let trip = dense.iter().enumerate().flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
            let m = SparseMatrix::from_triplets(r, c, trip).unwrap();
            assert_eq!(m.rank().unwrap(), dense_rank(dense));
        }
    }
}
