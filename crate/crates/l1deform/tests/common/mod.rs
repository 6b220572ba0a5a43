//! Random cochains and chains, and the structural properties shared by
//! the property suites and the acceptance run.
#![allow(dead_code)]

use l1deform::cochain::{bracket, ce_differential, chain_boundary, pair, tuples_with_max, tuples_with_sum, tuples_with_sum_at_most, ChainElement, Cochain, Tuple, Window};
use l1deform::cohomology::ChainBasis;
use l1deform::exact::Rational;
use rand::Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

/// An `L1`-valued table of degree `degree` and weight `weight`,
/// supported on tuples with index sum at most `max_sum`.
pub fn random_table(rng: &mut impl Rng, degree: usize, weight: i64, max_sum: i64, density: f64) -> Cochain {
    let mut vals: Vec<(Tuple, Rational)> = Vec::new();
    for t in tuples_with_sum_at_most(degree, max_sum) {
        if t.iter().sum::<i64>() - weight >= 1 && rng.gen_bool(density) {
            vals.push((t, Rational::frac(rng.gen_range(-6..=6), rng.gen_range(1..=3))));
        }
    }
    Cochain::table(degree, weight, Window::Unbounded, vals, "r").expect("valid table")
}

/// A chain of degree `degree`, weight `weight`, dual indices `<= max_j`.
pub fn random_chain(rng: &mut impl Rng, degree: usize, weight: i64, max_j: i64, terms: usize) -> ChainElement {
    let mut c = ChainElement::zero(degree, weight);
    let basis: Vec<(i64, Tuple)> = (1..=max_j).flat_map(|j| tuples_with_sum(degree, weight + j).into_iter().map(move |t| (j, t))).collect();
    for _ in 0..terms {
        if basis.is_empty() {
            break;
        }
        let (j, t) = &basis[rng.gen_range(0..basis.len())];
        c.add_term(*j, t, q(rng.gen_range(-5..=5))).expect("valid term");
    }
    c
}

/// Tuples with entries `<= max` where `d d c` is nonzero.
pub fn d_squared_failures(c: &Cochain, max: i64) -> Vec<Tuple> {
    let dd = ce_differential(&ce_differential(c));
    tuples_with_max(c.degree() + 2, max).into_iter().filter(|t| !dd.eval(t).expect("evaluable").is_zero()).collect()
}

/// `[b, g] - (-1)^s [g, b]` vanishes on entries `<= max`, with
/// `s = (p-1)(q-1) + 1` the graded antisymmetry of shifted degrees.
pub fn graded_symmetric(b: &Cochain, g: &Cochain, max: i64) -> bool {
    let (x, y) = (bracket(b, g).unwrap(), bracket(g, b).unwrap());
    let sign = if ((b.degree() - 1) * (g.degree() - 1) + 1).is_multiple_of(2) { q(1) } else { q(-1) };
    tuples_with_max(x.degree(), max).iter().all(|t| x.eval(t).unwrap() == &sign * &y.eval(t).unwrap())
}

/// The sign pairs `(s1, s2)` for which `d[b,g] = s1 [db,g] + s2 [b,dg]`
/// holds on entries `<= max`.
pub fn leibniz_signs(b: &Cochain, g: &Cochain, max: i64) -> Vec<(i64, i64)> {
    let lhs = ce_differential(&bracket(b, g).unwrap());
    let first = bracket(&ce_differential(b), g).unwrap();
    let second = bracket(b, &ce_differential(g)).unwrap();
    let tuples = tuples_with_max(lhs.degree(), max);
    let mut out = Vec::new();
    for s1 in [1, -1] {
        for s2 in [1, -1] {
            if tuples.iter().all(|t| lhs.eval(t).unwrap() == &(&q(s1) * &first.eval(t).unwrap()) + &(&q(s2) * &second.eval(t).unwrap())) {
                out.push((s1, s2));
            }
        }
    }
    out
}

/// The signs in `d[b,g] = s1 [db,g] + s2 [b,dg]` for `g` of degree `r`.
pub fn leibniz_expected(r: usize) -> (i64, i64) {
    (if r % 2 == 1 { 1 } else { -1 }, 1)
}

/// `eps` with `<dc, a> = eps <c, da>`; `None` when both sides vanish,
/// `Some(0)` when no sign works.
pub fn adjoint_sign(c: &Cochain, a: &ChainElement) -> Option<i64> {
    let lhs = pair(&ce_differential(c), a).unwrap();
    let rhs = pair(c, &chain_boundary(a).unwrap()).unwrap();
    if lhs.is_zero() && rhs.is_zero() {
        None
    } else if lhs == rhs {
        Some(1)
    } else if lhs == -&rhs {
        Some(-1)
    } else {
        Some(0)
    }
}

/// The boundary of every basis chain of `F_J` stays in `F_J`.
pub fn subcomplex_holds(q: usize, k: i64, cutoff: i64) -> bool {
    let basis = ChainBasis::new(q, k, cutoff);
    basis.elems().iter().all(|(j, t)| {
        let c = ChainElement::from_terms(q, k, [(*j, t.to_vec(), Rational::one())]).unwrap();
        chain_boundary(&c).unwrap().terms().all(|(jj, _, _)| (1..=cutoff).contains(&jj))
    })
}
