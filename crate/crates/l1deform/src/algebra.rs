//! The Lie algebras `L1`, `L0`, their nilpotent quotients, the modules
//! `W` and `L1*`, and the three one-parameter families.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Echelon, Rational, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraSpec {
    /// Basis `e_i`, `i >= 1`.
    L1,
    /// Basis `e_i`, `i >= 0`.
    L0,
    /// `L1 / L_{N+1}`, basis `e_1..e_N`.
    Quotient(i64),
}

impl AlgebraSpec {
    pub fn contains(&self, i: i64) -> bool {
        match self {
            AlgebraSpec::L1 => i >= 1,
            AlgebraSpec::L0 => i >= 0,
            AlgebraSpec::Quotient(n) => (1..=*n).contains(&i),
        }
    }

    /// `[e_i, e_j]` as `(coefficient, index)`, or `None` when zero.
    pub fn bracket_basis(&self, i: i64, j: i64) -> Result<Option<(i64, i64)>> {
        for x in [i, j] {
            if !self.contains(x) {
                return Err(Error::InvalidIndex(x));
            }
        }
        let c = j - i;
        if c == 0 || !self.contains(i + j) {
            return Ok(None);
        }
        Ok(Some((c, i + j)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleSpec {
    Adjoint(AlgebraSpec),
    /// Basis `e_j` for every integer `j`.
    W,
    /// Basis `e_j*`, `j >= 1`.
    Dual,
}

impl ModuleSpec {
    pub fn contains(&self, j: i64) -> bool {
        match self {
            ModuleSpec::Adjoint(a) => a.contains(j),
            ModuleSpec::W => true,
            ModuleSpec::Dual => j >= 1,
        }
    }
}

/// Coefficient of `e_{j-i}*` in `e_i . e_j*`, from
/// `<e_i . phi, v> = -<phi, [e_i, v]>`.
pub fn dual_action_coeff(i: i64, j: i64) -> i64 {
    if j - i < 1 {
        0
    } else {
        -(j - 2 * i)
    }
}

/// Coefficient of `e_{i+j}` in `e_i . e_j` in `W`.
pub fn w_action_coeff(i: i64, j: i64) -> i64 {
    j - i
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    Algebra(AlgebraSpec),
    Module(ModuleSpec),
}

impl Space {
    fn contains(&self, i: i64) -> bool {
        match self {
            Space::Algebra(a) => a.contains(i),
            Space::Module(m) => m.contains(i),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vector {
    space: Space,
    terms: BTreeMap<i64, Rational>,
}

impl Vector {
    pub fn zero(space: Space) -> Self {
        Vector { space, terms: BTreeMap::new() }
    }

    pub fn basis(space: Space, i: i64) -> Result<Self> {
        Self::from_terms(space, [(i, Rational::one())])
    }

    pub fn from_terms(space: Space, terms: impl IntoIterator<Item = (i64, Rational)>) -> Result<Self> {
        let mut v = Self::zero(space);
        for (i, c) in terms {
            if !space.contains(i) {
                return Err(Error::InvalidIndex(i));
            }
            v.add_term(i, c);
        }
        Ok(v)
    }

    fn add_term(&mut self, i: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(i).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn coeff(&self, i: i64) -> Rational {
        self.terms.get(&i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Vector) -> Result<Vector> {
        if self.space != o.space {
            return Err(Error::SpaceMismatch(format!("{:?} vs {:?}", self.space, o.space)));
        }
        let mut out = self.clone();
        for (i, c) in &o.terms {
            out.add_term(*i, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Vector {
        let mut out = Vector::zero(self.space);
        for (i, c) in &self.terms {
            out.add_term(*i, c * r);
        }
        out
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let star = if self.space == Space::Module(ModuleSpec::Dual) { "*" } else { "" };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| if c.is_one() { format!("e{i}{star}") } else { format!("{c}*e{i}{star}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn bracket(spec: AlgebraSpec, x: &Vector, y: &Vector) -> Result<Vector> {
    let space = Space::Algebra(spec);
    if x.space != space || y.space != space {
        return Err(Error::SpaceMismatch(format!("bracket in {spec:?}")));
    }
    let mut out = Vector::zero(space);
    for (i, a) in &x.terms {
        for (j, b) in &y.terms {
            if let Some((c, k)) = spec.bracket_basis(*i, *j)? {
                out.add_term(k, &(a * b) * &Rational::from_int(c));
            }
        }
    }
    Ok(out)
}

/// `e_i . m`. The acting algebra is `L1` for `Dual`, `L0` for `W`, and
/// the algebra itself for `Adjoint`.
pub fn act(module: ModuleSpec, i: i64, m: &Vector) -> Result<Vector> {
    let space = Space::Module(module);
    if m.space != space {
        return Err(Error::SpaceMismatch(format!("action on {module:?}")));
    }
    let mut out = Vector::zero(space);
    match module {
        ModuleSpec::Adjoint(a) => {
            if !a.contains(i) {
                return Err(Error::InvalidIndex(i));
            }
            for (j, c) in &m.terms {
                if let Some((k, idx)) = a.bracket_basis(i, *j)? {
                    out.add_term(idx, c * &Rational::from_int(k));
                }
            }
        }
        ModuleSpec::W => {
            if i < 0 {
                return Err(Error::InvalidIndex(i));
            }
            for (j, c) in &m.terms {
                out.add_term(i + j, c * &Rational::from_int(w_action_coeff(i, *j)));
            }
        }
        ModuleSpec::Dual => {
            if i < 1 {
                return Err(Error::InvalidIndex(i));
            }
            for (j, c) in &m.terms {
                let k = dual_action_coeff(i, *j);
                if k != 0 {
                    out.add_term(j - i, c * &Rational::from_int(k));
                }
            }
        }
    }
    Ok(out)
}

/// The three one-parameter families `[ , ]^r_t` of `L1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Family(u8);

impl Family {
    pub fn new(r: u8) -> Result<Self> {
        if (1..=3).contains(&r) {
            Ok(Family(r))
        } else {
            Err(Error::InvalidParameter(format!("family must be 1, 2 or 3, got {r}")))
        }
    }

    pub fn index(&self) -> u8 {
        self.0
    }

    /// The first-order part `alpha_1^r(e_i, e_j)` for `i < j` as
    /// `(coefficient, index)`.
    pub fn first_order(&self, i: i64, j: i64) -> Option<(i64, i64)> {
        let (c, idx) = match self.0 {
            1 => (j - i, i + j - 1),
            2 if i == 1 => (j, j),
            2 if j == 1 => (-i, i),
            3 if i == 2 => (j, j),
            3 if j == 2 => (-i, i),
            _ => (0, 0),
        };
        (c != 0).then_some((c, idx))
    }

    /// `[e_i, e_j]^r_t` in `L1`.
    pub fn bracket(&self, i: i64, j: i64, t: &Rational) -> Result<Vector> {
        let space = Space::Algebra(AlgebraSpec::L1);
        let mut v = Vector::zero(space);
        if let Some((c, k)) = AlgebraSpec::L1.bracket_basis(i, j)? {
            v.add_term(k, Rational::from_int(c));
        }
        if let Some((c, k)) = self.first_order(i, j) {
            v.add_term(k, t * &Rational::from_int(c));
        }
        Ok(v)
    }

    pub fn bracket_vectors(&self, x: &Vector, y: &Vector, t: &Rational) -> Result<Vector> {
        let mut out = Vector::zero(Space::Algebra(AlgebraSpec::L1));
        for (i, a) in &x.terms {
            for (j, b) in &y.terms {
                let ab = a * b;
                for (k, c) in &self.bracket(*i, *j, t)?.terms {
                    out.add_term(*k, &ab * c);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianizationReport {
    pub family: u8,
    pub window: i64,
    /// `dim g/[g,g]`.
    pub g_mod_derived: usize,
    /// `dim M/[M,M]` with `M = [g,g]`.
    pub derived_mod_second: usize,
    /// Same values at window `N - 2`.
    pub stable: bool,
}

// Columns are ordered by decreasing index, so the leading entry of an
// echelon row is its highest basis index.
fn to_row(v: &Vector, n: i64) -> SparseVec<Rational> {
    let mut row: SparseVec<Rational> = v.terms.iter().map(|(i, c)| ((n - i) as usize, c.clone())).collect();
    row.sort_by_key(|e| e.0);
    row
}

fn from_row(row: &SparseVec<Rational>, n: i64) -> Vector {
    let mut v = Vector::zero(Space::Algebra(AlgebraSpec::L1));
    for (c, x) in row {
        v.add_term(n - *c as i64, x.clone());
    }
    v
}

fn dims_at(family: Family, n: i64) -> Result<(usize, usize)> {
    let t = Rational::one();
    let interior = n / 2;
    let mut derived = Echelon::new();
    for i in 1..n {
        for j in (i + 1)..=(n - i) {
            derived.insert(to_row(&family.bracket(i, j, &t)?, n))?;
        }
    }
    let lead = |e: &Echelon<Rational>| e.pivot_columns().into_iter().filter(|c| n - *c as i64 <= interior).count();
    let d1 = lead(&derived);
    let rows = echelon_rows(&derived, n);
    let mut second = Echelon::new();
    for (a, va) in rows.iter().enumerate() {
        for vb in rows.iter().skip(a + 1) {
            let top = max_index(va) + max_index(vb);
            if top > n {
                continue;
            }
            second.insert(to_row(&family.bracket_vectors(va, vb, &t)?, n))?;
        }
    }
    Ok(((interior as usize) - d1, d1 - lead(&second)))
}

fn max_index(v: &Vector) -> i64 {
    v.terms.keys().next_back().copied().unwrap_or(0)
}

fn echelon_rows(e: &Echelon<Rational>, n: i64) -> Vec<Vector> {
    e.rows().iter().map(|r| from_row(r, n)).collect()
}

/// Dimensions of `g/[g,g]` and `[g,g]/[[g,g],[g,g]]` for family `r` at
/// `t = 1`, counted on the interior `e_1..e_{N/2}` of a window of size `N`.
pub fn abelianization_dims(family: Family, n: i64) -> Result<AbelianizationReport> {
    if n < 12 {
        return Err(Error::WindowTooSmall { window: n, bound: 12 });
    }
    let (a, b) = dims_at(family, n)?;
    let (a2, b2) = dims_at(family, n - 2)?;
    Ok(AbelianizationReport {
        family: family.index(),
        window: n,
        g_mod_derived: a,
        derived_mod_second: b,
        stable: a == a2 && b == b2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: i64) -> Vector {
        Vector::basis(Space::Algebra(AlgebraSpec::L1), i).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let l = AlgebraSpec::L1;
        assert_eq!(bracket(l, &e(1), &e(2)).unwrap(), e(3));
        assert!(bracket(l, &e(2), &e(2)).unwrap().is_zero());
        assert_eq!(bracket(l, &e(2), &e(5)).unwrap(), e(7).scale(&Rational::from_int(3)));
    }

    #[test]
    fn quotient_drops_top() {
        let q = AlgebraSpec::Quotient(6);
        assert_eq!(q.bracket_basis(2, 5).unwrap(), None);
        assert_eq!(q.bracket_basis(2, 4).unwrap(), Some((2, 6)));
    }

    #[test]
    fn module_actions() {
        let w = Space::Module(ModuleSpec::W);
        let v = act(ModuleSpec::W, 5, &Vector::basis(w, 0).unwrap()).unwrap();
        assert_eq!(v.coeff(5), Rational::from_int(-5));
        let adj = Space::Module(ModuleSpec::Adjoint(AlgebraSpec::L1));
        assert!(act(ModuleSpec::Adjoint(AlgebraSpec::L1), 1, &Vector::basis(adj, 1).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn dual_action_by_duality() {
        // <e_2 . e_5*, e_m> = -<e_5*, [e_2, e_m]>
        let d = Space::Module(ModuleSpec::Dual);
        let v = act(ModuleSpec::Dual, 2, &Vector::basis(d, 5).unwrap()).unwrap();
        for m in 1..=10 {
            let rhs = match AlgebraSpec::L1.bracket_basis(2, m).unwrap() {
                Some((c, 5)) => -c,
                _ => 0,
            };
            assert_eq!(v.coeff(m), Rational::from_int(rhs), "m = {m}");
        }
    }

    #[test]
    fn family_brackets() {
        let one = Rational::one();
        let b = Family::new(1).unwrap().bracket(2, 5, &one).unwrap();
        assert_eq!((b.coeff(7), b.coeff(6)), (Rational::from_int(3), Rational::from_int(3)));
        let b = Family::new(2).unwrap().bracket(1, 4, &one).unwrap();
        assert_eq!((b.coeff(5), b.coeff(4)), (Rational::from_int(3), Rational::from_int(4)));
        let b = Family::new(3).unwrap().bracket(1, 4, &one).unwrap();
        assert_eq!(b, e(5).scale(&Rational::from_int(3)));
    }

    #[test]
    fn abelianization_table() {
        let dims: Vec<(usize, usize, bool)> = (1..=3)
            .map(|r| {
                let a = abelianization_dims(Family::new(r).unwrap(), 20).unwrap();
                (a.g_mod_derived, a.derived_mod_second, a.stable)
            })
            .collect();
        assert_eq!(dims[0].0, 2);
        assert_eq!((dims[1].0, dims[1].1), (1, 3));
        assert_eq!((dims[2].0, dims[2].1), (1, 2));
        assert!(dims.iter().all(|d| d.2));
    }
}
