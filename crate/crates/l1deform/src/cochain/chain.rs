use std::collections::BTreeMap;
use std::fmt;

use super::{sort_with_sign, Cochain, Tuple, ValueModule};
use crate::algebra::dual_action_coeff;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// A finite sum of `e_j* (x) e_{i_1} ^ .. ^ e_{i_q}` with `sum i - j = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainElement {
    degree: usize,
    weight: i64,
    terms: BTreeMap<(i64, Tuple), Rational>,
}

impl ChainElement {
    pub fn zero(degree: usize, weight: i64) -> Self {
        ChainElement { degree, weight, terms: BTreeMap::new() }
    }

    pub fn from_terms(degree: usize, weight: i64, terms: impl IntoIterator<Item = (i64, Vec<i64>, Rational)>) -> Result<Self> {
        let mut c = Self::zero(degree, weight);
        for (j, t, a) in terms {
            c.add_term(j, &t, a)?;
        }
        Ok(c)
    }

    /// Adds `a e_j* (x) t`, sorting `t` with sign.
    pub fn add_term(&mut self, j: i64, t: &[i64], a: Rational) -> Result<()> {
        if t.len() != self.degree {
            return Err(Error::Arity { expected: self.degree, found: t.len() });
        }
        if j < 1 {
            return Err(Error::InvalidIndex(j));
        }
        let (s, t) = sort_with_sign(t);
        if s == 0 || a.is_zero() {
            return Ok(());
        }
        if let Some(&i) = t.first() {
            if i < 1 {
                return Err(Error::InvalidIndex(i));
            }
        }
        if t.iter().sum::<i64>() - j != self.weight {
            return Err(Error::GradingMismatch(format!("term e{j}*{t:?} in weight {}", self.weight)));
        }
        let a = if s < 0 { -a } else { a };
        let key = (j, t);
        let e = self.terms.entry(key.clone()).or_default();
        *e += &a;
        if e.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Tuple, &Rational)> {
        self.terms.iter().map(|((j, t), a)| (*j, t, a))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.degree, self.weight);
        if !r.is_zero() {
            out.terms = self.terms.iter().map(|(k, a)| (k.clone(), a * r)).collect();
        }
        out
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if (self.degree, self.weight) != (o.degree, o.weight) {
            return Err(Error::GradingMismatch("chain sum".into()));
        }
        let mut out = self.clone();
        for ((j, t), a) in &o.terms {
            out.add_term(*j, t, a.clone())?;
        }
        Ok(out)
    }
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((j, t), a)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let idx: Vec<String> = t.iter().map(|i| i.to_string()).collect();
            write!(f, "{a} e{j}*({})", idx.join(","))?;
        }
        Ok(())
    }
}

/// `sum a <e_j*, c(t)>`.
pub fn pair(c: &Cochain, a: &ChainElement) -> Result<Rational> {
    if c.degree() != a.degree {
        return Err(Error::Arity { expected: c.degree(), found: a.degree });
    }
    if c.weight() != a.weight {
        return Err(Error::GradingMismatch(format!("pairing weight {} with {}", c.weight(), a.weight)));
    }
    if c.values() != ValueModule::W {
        return Err(Error::SpaceMismatch("pairing needs a W-valued cochain".into()));
    }
    let mut tot = Rational::zero();
    for ((_, t), x) in &a.terms {
        let v = c.eval_sorted(t)?;
        if !v.is_zero() {
            tot += &(x * &v);
        }
    }
    Ok(tot)
}

/// Homology boundary on `C_*(L1; L1*)`, adjoint to the cochain
/// differential: `<dc, a> = <c, da>`.
pub fn chain_boundary(a: &ChainElement) -> Result<ChainElement> {
    if a.degree == 0 {
        return Err(Error::InvalidParameter("boundary of a degree-0 chain".into()));
    }
    let mut out = ChainElement::zero(a.degree - 1, a.weight);
    for ((j, g), x) in &a.terms {
        let mut err = Ok(());
        boundary_terms(*j, g, |jj, args, c| {
            if err.is_ok() {
                err = out.add_term(jj, args, x * &Rational::from_int(c));
            }
        });
        err?;
    }
    Ok(out)
}

/// Terms of the boundary of a single basis chain `e_j* (x) g`, with
/// unsorted index lists.
pub(crate) fn boundary_terms(j: i64, g: &[i64], mut emit: impl FnMut(i64, &[i64], i64)) {
    let n = g.len();
    let mut args: Vec<i64> = Vec::with_capacity(n);
    for s in 0..n {
        for u in s + 1..n {
            args.clear();
            args.push(g[s] + g[u]);
            args.extend((0..n).filter(|&y| y != s && y != u).map(|y| g[y]));
            let sign = if (s + u + 1) % 2 == 0 { 1 } else { -1 };
            emit(j, &args, sign * (g[u] - g[s]));
        }
    }
    for s in 0..n {
        let dc = dual_action_coeff(g[s], j);
        if dc == 0 {
            continue;
        }
        args.clear();
        args.extend((0..n).filter(|&y| y != s).map(|y| g[y]));
        let sign = if s % 2 == 0 { 1 } else { -1 };
        emit(j - g[s], &args, sign * dc);
    }
}

/// `e3* (x) (e1^e4 - 3 e2^e3) + 1/2 e2* (x) e1^e3 + 3 e1* (x) e1^e2`.
pub fn chain_a2() -> ChainElement {
    ChainElement::from_terms(
        2,
        2,
        [
            (3, vec![1, 4], Rational::one()),
            (3, vec![2, 3], Rational::from_int(-3)),
            (2, vec![1, 3], Rational::frac(1, 2)),
            (1, vec![1, 2], Rational::from_int(3)),
        ],
    )
    .expect("well-formed chain")
}

/// `e2* (x) (e1^e4 - 3 e2^e3)`.
pub fn chain_a3() -> ChainElement {
    ChainElement::from_terms(2, 3, [(2, vec![1, 4], Rational::one()), (2, vec![2, 3], Rational::from_int(-3))]).expect("well-formed chain")
}

/// `a2`, `a3`, or `q;k;j:i1,i2:coef;...` (coefficient optional).
pub fn parse_chain(spec: &str) -> Result<ChainElement> {
    match spec.trim() {
        "a2" => return Ok(chain_a2()),
        "a3" => return Ok(chain_a3()),
        _ => {}
    }
    let bad = |m: &str| Error::Parse(format!("chain '{spec}': {m}"));
    let mut parts = spec.split(';');
    let q: usize = parts.next().and_then(|s| s.trim().parse().ok()).ok_or_else(|| bad("degree"))?;
    let k: i64 = parts.next().and_then(|s| s.trim().parse().ok()).ok_or_else(|| bad("weight"))?;
    let mut c = ChainElement::zero(q, k);
    for term in parts.filter(|s| !s.trim().is_empty()) {
        let mut f = term.split(':');
        let j: i64 = f.next().and_then(|s| s.trim().parse().ok()).ok_or_else(|| bad("dual index"))?;
        let t = f
            .next()
            .ok_or_else(|| bad("tuple"))?
            .split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|_| bad("tuple")))
            .collect::<Result<Vec<_>>>()?;
        let a = match f.next() {
            Some(s) => s.trim().parse::<Rational>()?,
            None => Rational::one(),
        };
        c.add_term(j, &t, a)?;
    }
    Ok(c)
}
