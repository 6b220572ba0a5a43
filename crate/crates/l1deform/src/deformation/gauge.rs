//! Gauge action `[g,h]' = phi^-1 [phi g, phi h]_t` with
//! `phi = id + sum beta_l t^l`, and primitives that kill exact terms.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use super::formal::FormalDeformation;
use super::graded::{Graded, PolyCochain};
use crate::algebra::AlgebraSpec;
use crate::cochain::{ce_differential, tuples_with_max, Cochain, Rule};
use crate::error::{Error, Result};
use crate::exact::{Rational, Ring};

type Vector = BTreeMap<i64, Rational>;

/// `phi_t = id + sum_l beta_l t^l`, each `beta_l` of degree 1.
#[derive(Clone, Debug)]
pub struct GaugeTransform {
    betas: Vec<Graded>,
}

impl GaugeTransform {
    pub fn new(betas: Vec<Graded>) -> Result<Self> {
        if let Some(b) = betas.iter().find(|b| b.degree() != 1) {
            return Err(Error::Arity { expected: 1, found: b.degree() });
        }
        Ok(GaugeTransform { betas })
    }

    pub fn identity() -> Self {
        GaugeTransform { betas: Vec::new() }
    }

    /// `phi_t = id + t^s beta`.
    pub fn single(s: usize, beta: Cochain) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidParameter("gauge order must be >= 1".into()));
        }
        let mut betas = vec![Graded::zero(1); s];
        betas[s - 1] = Graded::from_cochain(beta);
        Self::new(betas)
    }

    pub fn beta(&self, l: usize) -> Option<&Graded> {
        l.checked_sub(1).and_then(|i| self.betas.get(i)).filter(|b| !b.is_empty())
    }

    pub fn order(&self) -> usize {
        self.betas.len()
    }
}

struct Conjugation {
    alphas: Vec<Graded>,
    betas: Vec<Graded>,
    order: usize,
    cache: Mutex<HashMap<(i64, i64), Arc<Vec<Vector>>>>,
}

fn add_into(acc: &mut Vector, v: &Vector, c: &Rational) {
    for (k, x) in v {
        let e = acc.entry(*k).or_default();
        *e += &(x * c);
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

impl Conjugation {
    fn beta(&self, a: usize) -> Option<&Graded> {
        a.checked_sub(1).and_then(|i| self.betas.get(i)).filter(|b| !b.is_empty())
    }

    fn alpha(&self, k: usize) -> Option<&Graded> {
        k.checked_sub(1).and_then(|i| self.alphas.get(i)).filter(|b| !b.is_empty())
    }

    fn apply_beta(&self, a: usize, v: &Vector) -> Result<Vector> {
        let mut out = Vector::new();
        if let Some(b) = self.beta(a) {
            for (k, c) in v {
                if *k < 1 {
                    return Err(Error::InvalidIndex(*k));
                }
                add_into(&mut out, &b.value(&[*k])?, c);
            }
        }
        Ok(out)
    }

    /// `mu_k(x, y)` with `mu_0` the bracket of `L1`.
    fn mu(&self, k: usize, x: &Vector, y: &Vector) -> Result<Vector> {
        let mut out = Vector::new();
        for (p, a) in x {
            for (q, b) in y {
                let ab = a * b;
                if k == 0 {
                    if let Some((c, r)) = AlgebraSpec::L1.bracket_basis(*p, *q)? {
                        add_into(&mut out, &Vector::from([(r, Rational::from_int(c))]), &ab);
                    }
                } else if let Some(al) = self.alpha(k) {
                    add_into(&mut out, &al.value(&[*p, *q])?, &ab);
                }
            }
        }
        Ok(out)
    }

    /// `R_n(i,j)`, `n = 0..=order`: the coefficients of the conjugated bracket.
    fn series(&self, i: i64, j: i64) -> Result<Arc<Vec<Vector>>> {
        if let Some(s) = self.cache.lock().expect("gauge cache poisoned").get(&(i, j)) {
            return Ok(s.clone());
        }
        let k = self.order;
        let lift = |e: i64| -> Result<Vec<Vector>> {
            let v0 = Vector::from([(e, Rational::one())]);
            let mut vs = vec![v0.clone()];
            for a in 1..=k {
                vs.push(self.apply_beta(a, &v0)?);
            }
            Ok(vs)
        };
        let (vi, vj) = (lift(i)?, lift(j)?);
        let mut r: Vec<Vector> = Vec::with_capacity(k + 1);
        for n in 0..=k {
            let mut b = Vector::new();
            for a in 0..=n {
                for bb in 0..=(n - a) {
                    let m = n - a - bb;
                    if vi[a].is_empty() || vj[bb].is_empty() {
                        continue;
                    }
                    add_into(&mut b, &self.mu(m, &vi[a], &vj[bb])?, &Rational::one());
                }
            }
            for m in 1..=n {
                let corr = self.apply_beta(m, &r[n - m])?;
                add_into(&mut b, &corr, &Rational::from_int(-1));
            }
            r.push(b);
        }
        let r = Arc::new(r);
        self.cache.lock().expect("gauge cache poisoned").insert((i, j), r.clone());
        Ok(r)
    }

    /// Weights that can occur in `R_n`.
    fn weight_sets(&self) -> Vec<BTreeSet<i64>> {
        let ws = |g: Option<&Graded>| -> BTreeSet<i64> { g.map(|g| g.weights().collect()).unwrap_or_default() };
        let zero = BTreeSet::from([0]);
        let wa: Vec<BTreeSet<i64>> = (0..=self.order).map(|k| if k == 0 { zero.clone() } else { ws(self.alpha(k)) }).collect();
        let wb: Vec<BTreeSet<i64>> = (0..=self.order).map(|a| if a == 0 { zero.clone() } else { ws(self.beta(a)) }).collect();
        let mut out: Vec<BTreeSet<i64>> = Vec::new();
        for n in 0..=self.order {
            let mut s = BTreeSet::new();
            for a in 0..=n {
                for b in 0..=(n - a) {
                    for x in &wa[n - a - b] {
                        for y in &wb[a] {
                            for z in &wb[b] {
                                s.insert(x + y + z);
                            }
                        }
                    }
                }
            }
            for m in 1..=n {
                for y in &wb[m] {
                    for z in &out[n - m] {
                        s.insert(y + z);
                    }
                }
            }
            out.push(s);
        }
        out
    }
}

struct Component {
    conj: Arc<Conjugation>,
    n: usize,
    weight: i64,
}

impl Rule for Component {
    fn eval_sorted(&self, t: &[i64]) -> Result<Rational> {
        let s = self.conj.series(t[0], t[1])?;
        Ok(s[self.n].get(&(t[0] + t[1] - self.weight)).cloned().unwrap_or_default())
    }
}

/// Conjugates a deformation over `Q` by a gauge, exactly through `t^k`.
/// The result is evaluated lazily and memoized per pair of arguments.
pub fn apply_gauge(d: &FormalDeformation, g: &GaugeTransform, k: usize) -> Result<FormalDeformation> {
    if *d.ring() != Ring::Q {
        return Err(Error::RingMismatch("Q".into(), d.ring().to_string()));
    }
    let alphas = (1..=k).map(|i| d.rational_alpha(i)).collect::<Result<Vec<_>>>()?;
    let betas = (1..=k).map(|l| g.beta(l).cloned().unwrap_or_else(|| Graded::zero(1))).collect();
    let conj = Arc::new(Conjugation { alphas, betas, order: k, cache: Mutex::new(HashMap::new()) });
    let weights = conj.weight_sets();
    let mut out = Vec::with_capacity(k);
    for (n, ws) in weights.iter().enumerate().skip(1) {
        let parts = ws.iter().map(|&w| {
            let rule = Arc::new(Component { conj: conj.clone(), n, weight: w });
            Cochain::custom(2, w, &format!("gauged{n}_{w}"), rule)
        });
        out.push(PolyCochain::rational(Graded::from_parts(2, parts)?));
    }
    FormalDeformation::new(Ring::Q, out)
}

/// Family `r = 1, 2` conjugated by `id + t beta^r`: its first order
/// vanishes and the higher orders are the `gamma^r_k`.
pub fn gamma_deformation(r: u8, k: usize) -> Result<FormalDeformation> {
    if !(1..=2).contains(&r) {
        return Err(Error::InvalidParameter(format!("family {r} has no first-order gauge")));
    }
    let d = super::formal::deformation_family(r, k)?;
    apply_gauge(&d, &GaugeTransform::single(1, crate::cochain::beta(r)?)?, k)
}

/// `b(e_i) = b_i e_{i-k}` solving `db = c` along the pairs `(e_1, e_i)`.
struct E1Primitive {
    c: Cochain,
    b2: Rational,
    values: Mutex<Vec<Rational>>,
}

impl E1Primitive {
    fn new(c: Cochain, b2: Rational) -> Self {
        E1Primitive { c, b2, values: Mutex::new(vec![Rational::zero(); 2]) }
    }
}

impl Rule for E1Primitive {
    fn eval_sorted(&self, t: &[i64]) -> Result<Rational> {
        let k = self.c.weight();
        let i = t[0];
        if i <= k {
            return Ok(Rational::zero());
        }
        let mut vals = self.values.lock().expect("primitive table poisoned");
        // vals[m] = b_m
        while vals.len() as i64 <= i {
            let m = vals.len() as i64;
            let v = if m <= k {
                Rational::zero()
            } else if m == 2 {
                self.b2.clone()
            } else {
                // db(e_1, e_p) = (p-1) b_{p+1} - (p-k-1) b_p, p = m - 1
                let p = m - 1;
                (self.c.eval(&[1, p])? + Rational::from_int(p - k - 1) * &vals[p as usize]) / Rational::from_int(p - 1)
            };
            vals.push(v);
        }
        Ok(vals[i as usize].clone())
    }
}

/// A degree-1 cochain `b` with `db = c` on every pair with entries up to
/// `window`, if the recursion along `e_1` produces one.
pub fn gauge_primitive(c: &Cochain, window: i64) -> Result<Option<Cochain>> {
    if c.degree() != 2 {
        return Err(Error::Arity { expected: 2, found: c.degree() });
    }
    let k = c.weight();
    if k < 1 {
        return Err(Error::InvalidParameter(format!("weight {k} has no L1-valued primitive")));
    }
    let label = format!("prim({})", c.label());
    let build = |b2: Rational| Cochain::custom(1, k, &label, Arc::new(E1Primitive::new(c.clone(), b2)));
    let b = if k == 1 {
        // b_2 is free; fix it from the pair (e_2, e_3).
        let at = |b2: Rational| -> Result<Rational> { ce_differential(&build(b2)).eval(&[2, 3]) };
        let (v0, v1) = (at(Rational::zero())?, at(Rational::one())?);
        let slope = &v1 - &v0;
        let b2 = if slope.is_zero() { Rational::zero() } else { (c.eval(&[2, 3])? - v0) / slope };
        build(b2)
    } else {
        build(Rational::zero())
    };
    let db = ce_differential(&b);
    for t in tuples_with_max(2, window) {
        if db.eval_sorted(&t)? != c.eval_sorted(&t)? {
            return Ok(None);
        }
    }
    Ok(Some(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{alpha1, beta, differences};
    use crate::deformation::deformation_family;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn value(d: &FormalDeformation, k: usize, i: i64, j: i64) -> Vector {
        d.rational_alpha(k).unwrap().value(&[i, j]).unwrap()
    }

    #[test]
    fn identity_gauge_is_trivial() {
        let d = deformation_family(1, 3).unwrap();
        let g = apply_gauge(&d, &GaugeTransform::identity(), 3).unwrap();
        for k in 1..=3 {
            for t in tuples_with_max(2, 10) {
                assert_eq!(value(&g, k, t[0], t[1]), value(&d, k, t[0], t[1]));
            }
        }
    }

    #[test]
    fn gauge_kills_first_order_of_exact_families() {
        for fam in 1..=2 {
            let d = deformation_family(fam, 2).unwrap();
            let g = apply_gauge(&d, &GaugeTransform::single(1, beta(fam).unwrap()).unwrap(), 2).unwrap();
            assert!(g.rational_alpha(1).unwrap().is_zero_on(12).unwrap(), "family {fam}");
        }
    }

    #[test]
    fn gamma_samples() {
        let d = deformation_family(1, 3).unwrap();
        let g = apply_gauge(&d, &GaugeTransform::single(1, beta(1).unwrap()).unwrap(), 3).unwrap();
        assert_eq!(value(&g, 2, 1, 3), Vector::from([(2, r(1, 1))]));
        assert_eq!(value(&g, 2, 2, 3), Vector::from([(3, r(3, 2))]));
        assert_eq!(value(&g, 3, 1, 4), Vector::from([(2, r(-3, 1))]));
        let d = deformation_family(2, 3).unwrap();
        let g = apply_gauge(&d, &GaugeTransform::single(1, beta(2).unwrap()).unwrap(), 3).unwrap();
        assert_eq!(value(&g, 2, 1, 3), Vector::from([(2, r(4, 1))]));
        assert_eq!(value(&g, 3, 2, 3), Vector::from([(2, r(-9, 1))]));
    }

    #[test]
    fn first_order_shift_is_minus_d_beta() {
        let d = deformation_family(3, 1).unwrap();
        let b = Cochain::table(1, 3, crate::cochain::Window::Unbounded, [(smallvec::smallvec![5], r(1, 1)), (smallvec::smallvec![7], r(-2, 3))], "b").unwrap();
        let g = apply_gauge(&d, &GaugeTransform::single(1, b.clone()).unwrap(), 1).unwrap();
        let db = ce_differential(&b);
        for t in tuples_with_max(2, 10) {
            let mut expect = value(&d, 1, t[0], t[1]);
            let v = db.eval(&t).unwrap();
            if !v.is_zero() {
                add_into(&mut expect, &Vector::from([(t[0] + t[1] - 3, v)]), &Rational::from_int(-1));
            }
            assert_eq!(value(&g, 1, t[0], t[1]), expect, "{t:?}");
        }
    }

    #[test]
    fn primitives() {
        for fam in 1..=2 {
            let a = alpha1(fam).unwrap();
            let b = gauge_primitive(&a, 14).unwrap().expect("exact");
            assert!(differences(&ce_differential(&b), &a, 14).unwrap().is_empty());
        }
        let b0 = Cochain::table(1, 2, crate::cochain::Window::Unbounded, [(smallvec::smallvec![4], r(1, 1)), (smallvec::smallvec![6], r(5, 2))], "b").unwrap();
        let c = ce_differential(&b0);
        let b = gauge_primitive(&c, 14).unwrap().expect("exact");
        assert!(differences(&b, &b0, 14).unwrap().is_empty());
        assert!(gauge_primitive(&alpha1(3).unwrap(), 14).unwrap().is_none());
    }

    #[test]
    fn gauge_preserves_the_deformation_equation() {
        let g = gamma_deformation(1, 4).unwrap();
        for k in 1..=4 {
            assert!(crate::deformation::defect_vanishes(&g, k, 9).unwrap(), "order {k}");
        }
    }

    #[test]
    fn gauge_primitive_recovers_beta() {
        for fam in 1..=2 {
            let b = gauge_primitive(&alpha1(fam).unwrap(), 14).unwrap().unwrap();
            assert!(differences(&b, &beta(fam).unwrap(), 14).unwrap().is_empty(), "family {fam}");
        }
    }
}
