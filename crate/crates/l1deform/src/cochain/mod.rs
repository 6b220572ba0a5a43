//! Weight-homogeneous cochains of `L1`, the Chevalley-Eilenberg
//! differential, the graded bracket, chains and pairings.
//!
//! A weight-`k` cochain of degree `q` is stored through its scalar
//! coefficient: the value on `e_{i_1},..,e_{i_q}` is `c(i) e_{sum i - k}` in
//! `W` (or `c(i) e*_{k - sum i}` for `L1*`-valued cochains).

mod catalog;
pub(crate) mod chain;
pub(crate) mod ops;
mod tuples;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use smallvec::SmallVec;

pub use catalog::{alpha1, beta, catalog, delta_k, delta_kl, dmu, extract_a, lambda, l1_valued_combinations, m0, mu, parse_catalog, L1Combination};
pub use chain::{chain_a2, chain_a3, chain_boundary, pair, parse_chain, ChainElement};
pub use ops::{bracket, ce_differential, clip_to_l1, commensurable, differences, lin, scale};
pub use tuples::{sort_with_sign, tuples_with_max, tuples_with_sum, tuples_with_sum_at_most};

use crate::error::{Error, Result};
use crate::exact::Rational;

pub type Tuple = SmallVec<[i64; 4]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ValueModule {
    W,
    Dual,
}

/// A closed-form evaluation rule supplied by another module (gauge
/// components, recursive primitives).
pub trait Rule: Send + Sync {
    /// Evaluates on a strictly increasing tuple of indices `>= 1`.
    fn eval_sorted(&self, t: &[i64]) -> Result<Rational>;
}

/// Validity of a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Window {
    /// Finitely supported: zero off the stored tuples, valid everywhere.
    Unbounded,
    /// Valid on tuples with index sum at most the bound.
    SumAtMost(i64),
}

pub(crate) enum Kind {
    Zero,
    Mu(i64),
    Alpha1(u8),
    Beta(u8),
    M0,
    Lambda { k: i64, l: i64, inner: Cochain },
    Table { window: Window, values: HashMap<Tuple, Rational> },
    Lin(Vec<(Rational, Cochain)>),
    Differential(Cochain),
    Bracket(Cochain, Cochain),
    Clip(Cochain),
    Custom(Arc<dyn Rule>),
}

pub(crate) struct Node {
    degree: usize,
    weight: i64,
    values: ValueModule,
    label: String,
    kind: Kind,
    memo: Option<Mutex<HashMap<Tuple, Rational>>>,
}

/// Cheap to clone; evaluation of derived cochains is memoized behind a
/// mutex so values can be shared across threads.
#[derive(Clone)]
pub struct Cochain(Arc<Node>);

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain({}, q={}, k={})", self.0.label, self.0.degree, self.0.weight)
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.label)
    }
}

impl Cochain {
    pub(crate) fn build(degree: usize, weight: i64, values: ValueModule, label: String, kind: Kind) -> Self {
        let memo = matches!(kind, Kind::Differential(_) | Kind::Bracket(..) | Kind::Lambda { .. } | Kind::Custom(_)).then(|| Mutex::new(HashMap::new()));
        Cochain(Arc::new(Node { degree, weight, values, label, kind, memo }))
    }

    pub fn zero(degree: usize, weight: i64) -> Self {
        Self::build(degree, weight, ValueModule::W, "0".into(), Kind::Zero)
    }

    /// A table of values with the given validity.
    pub fn table(degree: usize, weight: i64, window: Window, values: impl IntoIterator<Item = (Tuple, Rational)>, label: &str) -> Result<Self> {
        let mut map = HashMap::new();
        for (t, v) in values {
            if t.len() != degree {
                return Err(Error::Arity { expected: degree, found: t.len() });
            }
            let (s, sorted) = sort_with_sign(&t);
            if s == 0 || sorted[0] < 1 {
                return Err(Error::InvalidParameter(format!("bad table tuple {t:?}")));
            }
            if let Window::SumAtMost(b) = window {
                if sorted.iter().sum::<i64>() > b {
                    return Err(Error::OutOfWindow { name: label.into(), tuple: sorted.to_vec(), bound: b });
                }
            }
            let v = if s < 0 { -v } else { v };
            if !v.is_zero() {
                map.insert(sorted, v);
            }
        }
        Ok(Self::build(degree, weight, ValueModule::W, label.into(), Kind::Table { window, values: map }))
    }

    pub fn custom(degree: usize, weight: i64, label: &str, rule: Arc<dyn Rule>) -> Self {
        Self::build(degree, weight, ValueModule::W, label.into(), Kind::Custom(rule))
    }

    pub fn with_values(self, values: ValueModule) -> Self {
        let node = Arc::try_unwrap(self.0).unwrap_or_else(|arc| Node {
            degree: arc.degree,
            weight: arc.weight,
            values: arc.values,
            label: arc.label.clone(),
            kind: clone_kind(&arc.kind),
            memo: arc.memo.as_ref().map(|_| Mutex::new(HashMap::new())),
        });
        Cochain(Arc::new(Node { values, ..node }))
    }

    pub fn with_label(self, label: impl Into<String>) -> Self {
        let arc = self.0;
        Cochain(Arc::new(Node {
            degree: arc.degree,
            weight: arc.weight,
            values: arc.values,
            label: label.into(),
            kind: clone_kind(&arc.kind),
            memo: arc.memo.as_ref().map(|_| Mutex::new(HashMap::new())),
        }))
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn weight(&self) -> i64 {
        self.0.weight
    }

    pub fn values(&self) -> ValueModule {
        self.0.values
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn is_trivially_zero(&self) -> bool {
        matches!(self.0.kind, Kind::Zero)
    }

    /// Sum bound of a windowed table anywhere in the expression, if any.
    pub fn window(&self) -> Option<i64> {
        match &self.0.kind {
            Kind::Table { window: Window::SumAtMost(b), .. } => Some(*b),
            Kind::Lin(ts) => ts.iter().filter_map(|(_, c)| c.window()).min(),
            Kind::Differential(c) | Kind::Clip(c) => c.window(),
            Kind::Bracket(a, b) => [a.window(), b.window()].into_iter().flatten().min(),
            _ => None,
        }
    }

    /// Coefficient on an arbitrary argument list: sorted with sign, zero on
    /// repeated arguments.
    pub fn eval(&self, args: &[i64]) -> Result<Rational> {
        if args.len() != self.0.degree {
            return Err(Error::Arity { expected: self.0.degree, found: args.len() });
        }
        let (s, t) = sort_with_sign(args);
        if s == 0 {
            return Ok(Rational::zero());
        }
        if t[0] < 1 {
            return Err(Error::InvalidIndex(t[0]));
        }
        let v = self.eval_sorted(&t)?;
        Ok(if s < 0 { -v } else { v })
    }

    /// Index of the value basis element on a tuple.
    pub fn value_index(&self, t: &[i64]) -> i64 {
        let s: i64 = t.iter().sum();
        match self.0.values {
            ValueModule::W => s - self.0.weight,
            ValueModule::Dual => self.0.weight - s,
        }
    }

    pub(crate) fn eval_sorted(&self, t: &[i64]) -> Result<Rational> {
        if let Some(m) = &self.0.memo {
            if let Some(v) = m.lock().expect("memo poisoned").get(t) {
                return Ok(v.clone());
            }
        }
        let v = self.compute(t)?;
        if let Some(m) = &self.0.memo {
            m.lock().expect("memo poisoned").insert(Tuple::from_slice(t), v.clone());
        }
        Ok(v)
    }

    fn compute(&self, t: &[i64]) -> Result<Rational> {
        let k = self.0.weight;
        Ok(match &self.0.kind {
            Kind::Zero => Rational::zero(),
            Kind::Mu(k) => catalog::mu_coeff(*k, t[0]),
            Kind::Alpha1(r) => catalog::alpha1_coeff(*r, t[0], t[1]),
            Kind::Beta(r) => catalog::beta_coeff(*r, t[0]),
            Kind::M0 => Rational::from_int(t[1] - t[0]),
            Kind::Lambda { k, l, inner } => catalog::extract_from(inner, *k, *l, t[0], t[1])?,
            Kind::Table { window, values } => {
                if let Window::SumAtMost(b) = window {
                    if t.iter().sum::<i64>() > *b {
                        return Err(Error::OutOfWindow { name: self.0.label.clone(), tuple: t.to_vec(), bound: *b });
                    }
                }
                values.get(t).cloned().unwrap_or_default()
            }
            Kind::Lin(terms) => {
                let mut acc = Rational::zero();
                for (a, c) in terms {
                    let v = c.eval_sorted(t)?;
                    if !v.is_zero() {
                        acc += &(a * &v);
                    }
                }
                acc
            }
            Kind::Differential(c) => ops::differential_at(c, t)?,
            Kind::Bracket(a, b) => ops::bracket_at(a, b, t)?,
            Kind::Clip(c) => {
                if t.iter().sum::<i64>() - k < 1 {
                    Rational::zero()
                } else {
                    c.eval_sorted(t)?
                }
            }
            Kind::Custom(rule) => rule.eval_sorted(t)?,
        })
    }

    /// True when the coefficient vanishes on every tuple with entries up
    /// to `max`.
    pub fn is_zero_on(&self, max: i64) -> Result<bool> {
        for t in tuples_with_max(self.degree(), max) {
            if !self.eval_sorted(&t)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Tuples with entries up to `max` whose value lies outside `L1`
    /// (index `< 1`) and is nonzero.
    pub fn values_outside_l1(&self, max: i64) -> Result<Vec<(Tuple, Rational)>> {
        let mut out = Vec::new();
        for t in tuples_with_max(self.degree(), max) {
            if self.value_index(&t) < 1 {
                let v = self.eval_sorted(&t)?;
                if !v.is_zero() {
                    out.push((t, v));
                }
            }
        }
        Ok(out)
    }
}

fn clone_kind(k: &Kind) -> Kind {
    match k {
        Kind::Zero => Kind::Zero,
        Kind::Mu(a) => Kind::Mu(*a),
        Kind::Alpha1(r) => Kind::Alpha1(*r),
        Kind::Beta(r) => Kind::Beta(*r),
        Kind::M0 => Kind::M0,
        Kind::Lambda { k, l, inner } => Kind::Lambda { k: *k, l: *l, inner: inner.clone() },
        Kind::Table { window, values } => Kind::Table { window: *window, values: values.clone() },
        Kind::Lin(v) => Kind::Lin(v.clone()),
        Kind::Differential(c) => Kind::Differential(c.clone()),
        Kind::Bracket(a, b) => Kind::Bracket(a.clone(), b.clone()),
        Kind::Clip(c) => Kind::Clip(c.clone()),
        Kind::Custom(r) => Kind::Custom(r.clone()),
    }
}
