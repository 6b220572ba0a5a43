use num_bigint::BigInt;
use num_integer::binomial;

use super::{bracket, ce_differential, clip_to_l1, lin, tuples_with_sum_at_most, Cochain, Kind, Tuple, ValueModule};
use crate::error::{Error, Result};
use crate::exact::Rational;

pub(super) fn mu_coeff(k: i64, i: i64) -> Rational {
    if i < 2 || i - 2 > k - 1 {
        return Rational::zero();
    }
    let c = binomial(BigInt::from(k - 1), BigInt::from(i - 2));
    let r = Rational::from(c);
    if i % 2 == 1 {
        r
    } else {
        -r
    }
}

pub(super) fn alpha1_coeff(r: u8, i: i64, j: i64) -> Rational {
    Rational::from_int(match r {
        1 => j - i,
        2 if i == 1 => j,
        3 if i == 2 => j,
        3 if j == 2 => -i,
        _ => 0,
    })
}

pub(super) fn beta_coeff(r: u8, i: i64) -> Rational {
    match r {
        1 => Rational::frac(i - 1, 2),
        _ if i == 1 => Rational::zero(),
        _ => Rational::frac(i + 1, 2),
    }
}

fn check_k(k: i64) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k} must be >= 2")));
    }
    Ok(())
}

/// `mu_k(e_i) = (-1)^(i+1) C(k-1, i-2) e_{i-k}`.
pub fn mu(k: i64) -> Result<Cochain> {
    check_k(k)?;
    Ok(Cochain::build(1, k, ValueModule::W, format!("mu{k}"), Kind::Mu(k)))
}

pub fn dmu(k: i64) -> Result<Cochain> {
    Ok(ce_differential(&mu(k)?).with_label(format!("dmu{k}")))
}

/// `delta mu_k`, clipped to `L1` for `k > 4`.
pub fn delta_k(k: i64) -> Result<Cochain> {
    let d = dmu(k)?;
    Ok(if k <= 4 { d.with_label(format!("delta{k}")) } else { clip_to_l1(&d).with_label(format!("delta{k}")) })
}

pub fn delta_kl(k: i64, l: i64) -> Result<Cochain> {
    Ok(bracket(&delta_k(k)?, &delta_k(l)?)?.with_label(format!("delta{k},{l}")))
}

pub(super) fn extract_from(d: &Cochain, k: i64, l: i64, s: i64, t: i64) -> Result<Rational> {
    let n0 = (2 + k.max(l).max(k + l - s).max(k + l - t)).max(s + t + 1);
    let mut vals = Vec::with_capacity(3);
    for n in [n0, n0 + 1, n0 + 5] {
        let v = d.eval(&[s, t, n])?;
        vals.push(v.checked_div(&Rational::from_int(n + k + l - s - t))?);
    }
    if vals[0] != vals[1] || vals[0] != vals[2] {
        return Err(Error::Inconsistent { k, l, s, t });
    }
    Ok(vals.swap_remove(0))
}

/// The constant `a(k,l,s,t)` with
/// `delta_{k,l}(e_s,e_t,e_N) = a (N+k+l-s-t) e_{N+s+t-k-l}` for large `N`.
pub fn extract_a(k: i64, l: i64, s: i64, t: i64) -> Result<Rational> {
    check_k(k)?;
    check_k(l)?;
    if !(1 <= s && s < t) {
        return Err(Error::InvalidParameter(format!("need 1 <= s < t, got ({s},{t})")));
    }
    extract_from(&delta_kl(k, l)?, k, l, s, t)
}

/// `lambda_{k,l}(e_s,e_t) = a(k,l,s,t) e_{s+t-k-l}`.
pub fn lambda(k: i64, l: i64) -> Result<Cochain> {
    check_k(k)?;
    check_k(l)?;
    let inner = delta_kl(k, l)?;
    Ok(Cochain::build(2, k + l, ValueModule::W, format!("lambda{k},{l}"), Kind::Lambda { k, l, inner }))
}

pub fn alpha1(r: u8) -> Result<Cochain> {
    if !(1..=3).contains(&r) {
        return Err(Error::InvalidParameter(format!("alpha1 family {r}")));
    }
    let w = if r == 3 { 2 } else { 1 };
    Ok(Cochain::build(2, w, ValueModule::W, format!("alpha1^{r}"), Kind::Alpha1(r)))
}

pub fn beta(r: u8) -> Result<Cochain> {
    if !(1..=2).contains(&r) {
        return Err(Error::InvalidParameter(format!("beta family {r}")));
    }
    Ok(Cochain::build(1, 1, ValueModule::W, format!("beta^{r}"), Kind::Beta(r)))
}

/// The bracket of `L1` itself as a weight-0 cochain.
pub fn m0() -> Cochain {
    Cochain::build(2, 0, ValueModule::W, "m0".into(), Kind::M0)
}

fn ints(params: &[i64], n: usize, name: &str) -> Result<()> {
    if params.len() != n {
        return Err(Error::InvalidParameter(format!("{name} takes {n} parameter(s), got {}", params.len())));
    }
    Ok(())
}

/// Catalog constructor by name: `mu`, `dmu`, `delta` (one or two
/// parameters), `lambda`, `alpha1`, `beta`, `m0`.
pub fn catalog(name: &str, params: &[i64]) -> Result<Cochain> {
    let small = |x: i64| u8::try_from(x).map_err(|_| Error::InvalidParameter(format!("{name}: {x}")));
    match name {
        "mu" => ints(params, 1, name).and_then(|_| mu(params[0])),
        "dmu" => ints(params, 1, name).and_then(|_| dmu(params[0])),
        "delta" if params.len() == 1 => delta_k(params[0]),
        "delta" => ints(params, 2, name).and_then(|_| {
            check_k(params[0])?;
            check_k(params[1])?;
            delta_kl(params[0], params[1])
        }),
        "lambda" => ints(params, 2, name).and_then(|_| lambda(params[0], params[1])),
        "alpha1" => ints(params, 1, name).and_then(|_| alpha1(small(params[0])?)),
        "beta" => ints(params, 1, name).and_then(|_| beta(small(params[0])?)),
        "m0" => ints(params, 0, name).map(|_| m0()),
        _ => Err(Error::UnknownCatalog(name.into())),
    }
}

/// Parses `name` or `name:p1,p2,..`.
pub fn parse_catalog(spec: &str) -> Result<Cochain> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let params = rest
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{spec}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    catalog(name.trim(), &params)
}

#[derive(Clone, Debug)]
pub struct L1Combination {
    pub label: String,
    pub weight: i64,
    pub cochain: Cochain,
    /// Coefficient and constituent label.
    pub terms: Vec<(Rational, String)>,
    /// Every nonzero value of a constituent outside `L1`: constituent,
    /// tuple, coefficient.
    pub exceptional: Vec<(String, Tuple, Rational)>,
}

fn combos() -> Vec<(i64, Vec<(i64, &'static str, i64, i64)>)> {
    vec![
        (4, vec![(1, "lambda", 2, 2)]),
        (5, vec![(13, "lambda", 2, 3), (-1, "dmu", 5, 0)]),
        (6, vec![(7, "lambda", 2, 4), (2, "dmu", 6, 0)]),
        (6, vec![(21, "lambda", 3, 3), (-10, "dmu", 6, 0)]),
        (7, vec![(65, "lambda", 2, 5), (119, "lambda", 3, 4), (-2, "dmu", 7, 0)]),
        (8, vec![(151, "lambda", 2, 6), (-105, "lambda", 3, 5), (60, "dmu", 8, 0)]),
        (8, vec![(20, "lambda", 2, 6), (7, "lambda", 4, 4), (6, "dmu", 8, 0)]),
    ]
}

/// The seven `L1`-valued combinations of `lambda`s and `delta mu`s, with
/// the exceptional values of each constituent and a check that they
/// cancel.
pub fn l1_valued_combinations() -> Result<Vec<L1Combination>> {
    let mut out = Vec::new();
    for (weight, parts) in combos() {
        let mut terms = Vec::new();
        let mut label = String::new();
        for (a, name, p, q) in &parts {
            let c = if *name == "lambda" { lambda(*p, *q)? } else { dmu(*p)? };
            if !label.is_empty() {
                label.push_str(if *a < 0 { " - " } else { " + " });
            } else if *a < 0 {
                label.push('-');
            }
            if a.abs() != 1 {
                label.push_str(&a.abs().to_string());
            }
            label.push_str(c.label());
            terms.push((Rational::from_int(*a), c));
        }
        // all tuples with value index < 1 have index sum <= weight
        let candidates = tuples_with_sum_at_most(2, weight);
        let mut exceptional = Vec::new();
        for (_, c) in &terms {
            for t in &candidates {
                let v = c.eval_sorted(t)?;
                if !v.is_zero() {
                    exceptional.push((c.label().to_string(), t.clone(), v));
                }
            }
        }
        let cochain = lin(terms.clone(), &label)?;
        for t in &candidates {
            let v = cochain.eval_sorted(t)?;
            if !v.is_zero() {
                return Err(Error::Cancellation(format!("{label} at {t:?}: {v}")));
            }
        }
        let terms = terms.into_iter().map(|(a, c)| (a, c.label().to_string())).collect();
        out.push(L1Combination { label, weight, cochain, terms, exceptional });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn mu_values() {
        assert_eq!(mu(3).unwrap().eval(&[2]).unwrap(), q(-1));
        assert_eq!(mu(3).unwrap().eval(&[1]).unwrap(), q(0));
        assert_eq!(mu(4).unwrap().eval(&[5]).unwrap(), q(1));
        assert!(mu(1).is_err());
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha1(3).unwrap().eval(&[2, 7]).unwrap(), q(7));
        assert_eq!(alpha1(3).unwrap().eval(&[7, 2]).unwrap(), q(-7));
        assert_eq!(alpha1(2).unwrap().eval(&[3, 5]).unwrap(), q(0));
        assert!(alpha1(4).is_err());
    }

    #[test]
    fn delta5_clipped() {
        assert_eq!(delta_k(5).unwrap().eval(&[2, 3]).unwrap(), q(0));
        assert_eq!(dmu(5).unwrap().eval(&[2, 3]).unwrap(), q(26));
    }

    #[test]
    fn a_values() {
        assert_eq!(extract_a(2, 3, 2, 3).unwrap(), q(2));
        assert_eq!(extract_a(3, 3, 2, 4).unwrap(), q(-20));
        assert_eq!(extract_a(2, 2, 4, 9).unwrap(), q(0));
        assert!(extract_a(2, 2, 3, 3).is_err());
    }

    #[test]
    fn delta22_linear_in_n() {
        let d = delta_kl(2, 2).unwrap();
        for s in 1..=6 {
            for t in s + 1..=6 {
                let a = extract_a(2, 2, s, t).unwrap();
                for n in [20, 25, 30] {
                    assert_eq!(d.eval(&[s, t, n]).unwrap(), &a * &q(n + 4 - s - t));
                }
            }
        }
    }

    #[test]
    fn parse() {
        assert_eq!(parse_catalog("lambda:2,3").unwrap().weight(), 5);
        assert_eq!(parse_catalog("delta:2,5").unwrap().degree(), 3);
        assert_eq!(parse_catalog("m0").unwrap().weight(), 0);
        assert!(matches!(parse_catalog("nu:2"), Err(Error::UnknownCatalog(_))));
        assert!(parse_catalog("mu:x").is_err());
    }

    #[test]
    fn exceptional_values() {
        let l23 = lambda(2, 3).unwrap();
        assert_eq!(l23.eval(&[2, 3]).unwrap(), q(2));
        let l24 = lambda(2, 4).unwrap();
        let l33 = lambda(3, 3).unwrap();
        let d6 = dmu(6).unwrap();
        assert_eq!((l24.eval(&[2, 3]).unwrap(), l33.eval(&[2, 3]).unwrap(), d6.eval(&[2, 3]).unwrap()), (q(-12), q(20), q(42)));
        assert_eq!((l24.eval(&[2, 4]).unwrap(), l33.eval(&[2, 4]).unwrap(), d6.eval(&[2, 4]).unwrap()), (q(12), q(-20), q(-42)));
        let w = l1_valued_combinations().unwrap();
        assert_eq!(w.len(), 7);
        assert!(w[0].exceptional.is_empty());
        assert_eq!(w[1].exceptional.len(), 2);
    }
}
