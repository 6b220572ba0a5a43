use super::{tuples_with_max, Cochain, Kind, Tuple, ValueModule};
use crate::algebra::dual_action_coeff;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// The Chevalley-Eilenberg differential.
pub fn ce_differential(c: &Cochain) -> Cochain {
    if c.is_trivially_zero() {
        return Cochain::zero(c.degree() + 1, c.weight());
    }
    Cochain::build(c.degree() + 1, c.weight(), c.values(), format!("d{}", c.label()), Kind::Differential(c.clone()))
}

pub(super) fn differential_at(c: &Cochain, g: &[i64]) -> Result<Rational> {
    let mut tot = Rational::zero();
    let mut err = Ok(());
    differential_terms(g, c.weight(), c.values(), |args, coef| {
        if err.is_err() {
            return;
        }
        match c.eval(args) {
            Ok(v) if !v.is_zero() => tot += &(Rational::from_int(coef) * v),
            Ok(_) => {}
            Err(e) => err = Err(e),
        }
    });
    err.map(|_| tot)
}

/// `(dc)(g) = sum coef * c(args)` for a weight-`k` cochain; `args` are
/// unsorted.
pub(crate) fn differential_terms(g: &[i64], k: i64, values: ValueModule, mut emit: impl FnMut(&[i64], i64)) {
    let n = g.len();
    let mut args: Tuple = Tuple::with_capacity(n);
    for s in 0..n {
        for u in s + 1..n {
            args.clear();
            args.push(g[s] + g[u]);
            args.extend((0..n).filter(|&x| x != s && x != u).map(|x| g[x]));
            let sign = if (s + u + 1) % 2 == 0 { 1 } else { -1 };
            emit(&args, sign * (g[u] - g[s]));
        }
    }
    for s in 0..n {
        args.clear();
        args.extend((0..n).filter(|&x| x != s).map(|x| g[x]));
        let sum: i64 = args.iter().sum();
        let a = match values {
            ValueModule::W => (sum - k) - g[s],
            ValueModule::Dual => dual_action_coeff(g[s], k - sum),
        };
        if a != 0 {
            let sign = if s % 2 == 1 { 1 } else { -1 };
            emit(&args, sign * a);
        }
    }
}

/// The graded bracket of two `W`-valued cochains.
pub fn bracket(b: &Cochain, g: &Cochain) -> Result<Cochain> {
    if b.degree() == 0 || g.degree() == 0 {
        return Err(Error::InvalidParameter("bracket of degree-0 cochains".into()));
    }
    if b.values() != ValueModule::W || g.values() != ValueModule::W {
        return Err(Error::SpaceMismatch("bracket needs W-valued cochains".into()));
    }
    let n = b.degree() + g.degree() - 1;
    let k = b.weight() + g.weight();
    if b.is_trivially_zero() || g.is_trivially_zero() {
        return Ok(Cochain::zero(n, k));
    }
    Ok(Cochain::build(n, k, ValueModule::W, format!("[{},{}]", b.label(), g.label()), Kind::Bracket(b.clone(), g.clone())))
}

fn subsets(n: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(q);
    fn rec(n: usize, q: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in lo..n {
            cur.push(i);
            rec(n, q, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, q, 0, &mut cur, &mut out);
    out
}

/// `sum_I sign(I) inner(t_I) outer(m, t_rest)`.
fn insertion(outer: &Cochain, inner: &Cochain, t: &[i64]) -> Result<Rational> {
    let n = t.len();
    let q = inner.degree();
    let mut tot = Rational::zero();
    let mut args = Tuple::new();
    let mut rest = Tuple::new();
    for set in subsets(n, q) {
        args.clear();
        rest.clear();
        args.extend(set.iter().map(|&i| t[i]));
        let v = inner.eval_sorted(&args)?;
        if v.is_zero() {
            continue;
        }
        let m = args.iter().sum::<i64>() - inner.weight();
        rest.push(m);
        rest.extend((0..n).filter(|i| !set.contains(i)).map(|i| t[i]));
        if m < 1 {
            return Err(Error::InvalidIndex(m));
        }
        let w = outer.eval(&rest)?;
        if w.is_zero() {
            continue;
        }
        let e: usize = set.iter().map(|i| i + 1).sum::<usize>() - q * (q + 1) / 2;
        let prod = v * w;
        if e.is_multiple_of(2) {
            tot += &prod;
        } else {
            tot -= &prod;
        }
    }
    Ok(tot)
}

pub(super) fn bracket_at(b: &Cochain, g: &Cochain, t: &[i64]) -> Result<Rational> {
    let (p, q) = (b.degree(), g.degree());
    let first = insertion(b, g, t)?;
    let second = insertion(g, b, t)?;
    Ok(if (p * q + p + q) % 2 == 0 { first + second } else { first - second })
}

/// Linear combination of cochains of equal degree, weight and values.
pub fn lin(terms: impl IntoIterator<Item = (Rational, Cochain)>, label: &str) -> Result<Cochain> {
    let terms: Vec<_> = terms.into_iter().filter(|(a, c)| !a.is_zero() && !c.is_trivially_zero()).collect();
    let Some((_, first)) = terms.first() else {
        return Err(Error::InvalidParameter("empty linear combination".into()));
    };
    let (q, k, vm) = (first.degree(), first.weight(), first.values());
    for (_, c) in &terms {
        if c.degree() != q {
            return Err(Error::Arity { expected: q, found: c.degree() });
        }
        if c.weight() != k || c.values() != vm {
            return Err(Error::GradingMismatch(format!("{} vs {}", first.label(), c.label())));
        }
    }
    Ok(Cochain::build(q, k, vm, label.into(), Kind::Lin(terms)))
}

pub fn scale(a: Rational, c: &Cochain) -> Cochain {
    if a.is_zero() {
        return Cochain::zero(c.degree(), c.weight());
    }
    Cochain::build(c.degree(), c.weight(), c.values(), format!("{a}*{}", c.label()), Kind::Lin(vec![(a, c.clone())]))
}

/// Zeroes the coefficients whose value index falls below `1`.
pub fn clip_to_l1(c: &Cochain) -> Cochain {
    Cochain::build(c.degree(), c.weight(), c.values(), format!("clip({})", c.label()), Kind::Clip(c.clone()))
}

/// Tuples in the window with entries up to `max` where the two cochains
/// differ.
pub fn differences(c1: &Cochain, c2: &Cochain, max: i64) -> Result<Vec<(Tuple, Rational, Rational)>> {
    if c1.degree() != c2.degree() {
        return Err(Error::Arity { expected: c1.degree(), found: c2.degree() });
    }
    if c1.weight() != c2.weight() {
        return Err(Error::GradingMismatch(format!("weights {} and {}", c1.weight(), c2.weight())));
    }
    let mut out = Vec::new();
    for t in tuples_with_max(c1.degree(), max) {
        let (a, b) = (c1.eval_sorted(&t)?, c2.eval_sorted(&t)?);
        if a != b {
            out.push((t, a, b));
        }
    }
    Ok(out)
}

/// Agreement on every tuple with entries `<= window` whose largest entry
/// exceeds `exception`.
pub fn commensurable(c1: &Cochain, c2: &Cochain, window: i64, exception: i64) -> Result<bool> {
    if window < exception + 10 {
        return Err(Error::WindowTooSmall { window, bound: exception + 10 });
    }
    Ok(differences(c1, c2, window)?.iter().all(|(t, _, _)| t[t.len() - 1] <= exception))
}
