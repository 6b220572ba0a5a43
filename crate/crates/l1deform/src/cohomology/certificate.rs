//! Certificates for cohomology classes: cycles with nonzero pairing, or
//! primitives on a window.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::complex::{ChainBasis, CochainBasis};
use super::reduced::SmallComplex;
use crate::cochain::chain::boundary_terms;
use crate::cochain::ops::differential_terms;
use crate::cochain::{bracket, ce_differential, chain_boundary, delta_kl, dmu, lambda, l1_valued_combinations, lin, pair, sort_with_sign, tuples_with_sum_at_most, ChainElement, Cochain, Tuple, ValueModule, Window};
use crate::error::{Error, Result};
use crate::exact::{Rational, SolveOutcome, SparseMatrix};

#[derive(Clone, Debug)]
pub enum ClassCertificate {
    /// A cycle of the full complex pairing nontrivially with the cocycle.
    NonzeroViaCycle { cycle: ChainElement, pairing: Rational },
    /// `d primitive = c` on every tuple with index sum `<= window`.
    ZeroViaPrimitive { primitive: Cochain, window: i64 },
}

impl ClassCertificate {
    pub fn is_nonzero(&self) -> bool {
        matches!(self, ClassCertificate::NonzeroViaCycle { .. })
    }

    /// Re-checks the certificate against `c` exactly.
    pub fn verify(&self, c: &Cochain) -> Result<()> {
        match self {
            ClassCertificate::NonzeroViaCycle { cycle, pairing } => {
                if !chain_boundary(cycle)?.is_zero() {
                    return Err(Error::Certificate("stored cycle has a boundary".into()));
                }
                let p = pair(c, cycle)?;
                if p.is_zero() || &p != pairing {
                    return Err(Error::Certificate(format!("pairing {p}, stored {pairing}")));
                }
            }
            ClassCertificate::ZeroViaPrimitive { primitive, window } => {
                let d = ce_differential(primitive);
                for t in tuples_with_sum_at_most(c.degree(), *window) {
                    if d.eval_sorted(&t)? != c.eval_sorted(&t)? {
                        return Err(Error::Certificate(format!("residual at {t:?}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn summary(&self) -> String {
        match self {
            ClassCertificate::NonzeroViaCycle { cycle, pairing } => format!("nonzero: pairing {pairing} with a {}-term cycle", cycle.len()),
            ClassCertificate::ZeroViaPrimitive { window, .. } => format!("zero: primitive on index sums <= {window}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Certified(ClassCertificate),
    Inconclusive(String),
}

impl Outcome {
    pub fn certificate(&self) -> Option<&ClassCertificate> {
        match self {
            Outcome::Certified(c) => Some(c),
            Outcome::Inconclusive(_) => None,
        }
    }

    pub fn is_nonzero(&self) -> bool {
        self.certificate().is_some_and(|c| c.is_nonzero())
    }

    pub fn is_zero(&self) -> bool {
        self.certificate().is_some_and(|c| !c.is_nonzero())
    }

    pub fn pairing(&self) -> Option<&Rational> {
        match self.certificate()? {
            ClassCertificate::NonzeroViaCycle { pairing, .. } => Some(pairing),
            _ => None,
        }
    }
}

/// Basis of the cycles of `F_J` (degree `q`, weight `k`, dual index
/// `<= J`), each re-verified to have zero boundary.
pub fn find_cycles(q: usize, k: i64, cutoff: i64) -> Result<Vec<ChainElement>> {
    if q == 0 {
        return Err(Error::InvalidParameter("degree 0".into()));
    }
    let src = ChainBasis::new(q, k, cutoff);
    let lower = ChainBasis::new(q - 1, k, cutoff);
    let mut trip = Vec::new();
    for (c, (j, g)) in src.elems().iter().enumerate() {
        boundary_terms(*j, g, |jj, args, v| {
            let (s, t) = sort_with_sign(args);
            if s != 0 && v != 0 {
                let r = lower.index_of(jj, &t).expect("boundary stays in the cutoff");
                trip.push((r, c, Rational::from_int(s as i64 * v)));
            }
        });
    }
    let m = SparseMatrix::from_triplets(lower.len(), src.len(), trip)?;
    let mut out = Vec::new();
    for z in m.kernel()? {
        let chain = ChainElement::from_terms(q, k, z.into_iter().map(|(i, a)| (src.elems()[i].0, src.elems()[i].1.to_vec(), a)))?;
        if !chain_boundary(&chain)?.is_zero() {
            return Err(Error::Certificate("kernel vector is not a cycle".into()));
        }
        out.push(chain);
    }
    Ok(out)
}

/// Cycles of `F_J` representing the homology of the reduced model: one
/// per kernel vector of its differential.
pub fn class_cycles(q: usize, k: i64, cutoff: i64) -> Result<Vec<ChainElement>> {
    if q == 0 {
        return Err(Error::InvalidParameter("degree 0".into()));
    }
    let m = SmallComplex::new(k);
    let gens = m.generators(q, cutoff)?;
    let lower = m.generators(q - 1, cutoff)?;
    let index: HashMap<_, _> = lower.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let mut trip = Vec::new();
    for (c, g) in gens.iter().enumerate() {
        for (t, a) in m.differential(q, *g)? {
            trip.push((index[&t], c, a));
        }
    }
    let d = SparseMatrix::from_triplets(lower.len(), gens.len(), trip)?;
    let lifts: Vec<ChainElement> = gens.iter().map(|g| m.lift(q, *g)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for z in d.kernel()? {
        let mut chain = ChainElement::zero(q, k);
        for (i, a) in z {
            chain = chain.add(&lifts[i].scale(&a))?;
        }
        if !chain_boundary(&chain)?.is_zero() {
            return Err(Error::Certificate("lifted class is not a cycle".into()));
        }
        out.push(chain);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum TruncatedSolve {
    /// Solves `d b = c` on all tuples with index sum `<= bound`.
    Primitive(Cochain),
    /// No such primitive; the left-kernel witness is a cycle pairing
    /// nontrivially with `c`.
    Obstructed { cycle: ChainElement, pairing: Rational },
}

/// Solves `d b = c` for `L1`-valued `b` in the quotient complex of tuples
/// with index sum `<= bound`.
pub fn solve_truncated(c: &Cochain, bound: i64) -> Result<TruncatedSolve> {
    if c.values() != ValueModule::W {
        return Err(Error::SpaceMismatch("solve needs a W-valued cochain".into()));
    }
    let (q, k) = (c.degree(), c.weight());
    if q == 0 {
        return Err(Error::InvalidParameter("degree 0".into()));
    }
    let unknowns = CochainBasis::new(q - 1, k, bound);
    let eqs = CochainBasis::new(q, k, bound);
    // Equations by increasing index sum keep the elimination sparse.
    let rows: Vec<&Tuple> = eqs.elems().iter().rev().collect();
    let mut trip = Vec::new();
    let mut rhs = Vec::with_capacity(eqs.len());
    for (r, g) in rows.iter().enumerate() {
        differential_terms(g, k, ValueModule::W, |args, v| {
            let (s, t) = sort_with_sign(args);
            if s == 0 || v == 0 {
                return;
            }
            if let Some(col) = unknowns.index_of(&t) {
                trip.push((r, col, Rational::from_int(s as i64 * v)));
            }
        });
        rhs.push(c.eval_sorted(g)?);
    }
    let label = format!("prim({})", c.label());
    if eqs.is_empty() {
        return Ok(TruncatedSolve::Primitive(Cochain::table(q - 1, k, Window::SumAtMost(bound), [], &label)?));
    }
    let a = SparseMatrix::from_triplets(eqs.len(), unknowns.len(), trip)?;
    let outcome = if unknowns.is_empty() {
        match rhs.iter().position(|v| !v.is_zero()) {
            None => SolveOutcome::Solvable(Vec::new()),
            Some(i) => SolveOutcome::Infeasible((0..rhs.len()).map(|r| if r == i { Rational::one() } else { Rational::zero() }).collect()),
        }
    } else {
        a.solve(&rhs)?
    };
    match outcome {
        SolveOutcome::Solvable(x) => {
            let values = x.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (unknowns.elems()[i].clone(), v));
            Ok(TruncatedSolve::Primitive(Cochain::table(q - 1, k, Window::SumAtMost(bound), values, &label)?))
        }
        SolveOutcome::Infeasible(v) => {
            let terms = v.into_iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, a)| {
                let g = rows[i];
                (g.iter().sum::<i64>() - k, g.to_vec(), a)
            });
            let cycle = ChainElement::from_terms(q, k, terms)?;
            if !chain_boundary(&cycle)?.is_zero() {
                return Err(Error::Certificate("witness is not a cycle".into()));
            }
            let pairing = pair(c, &cycle)?;
            if pairing.is_zero() {
                return Err(Error::Certificate("witness pairs to zero".into()));
            }
            Ok(TruncatedSolve::Obstructed { cycle, pairing })
        }
    }
}

fn check_closed(c: &Cochain, bound: i64) -> Result<()> {
    let d = ce_differential(c);
    for t in tuples_with_sum_at_most(c.degree() + 1, bound) {
        let v = d.eval_sorted(&t)?;
        if !v.is_zero() {
            return Err(Error::NotClosed(format!("{} at {t:?}: {v}", c.label())));
        }
    }
    Ok(())
}

/// Decides whether the closed cochain `c` is a coboundary. Cycles from
/// the reduced model are tried first; then a truncated solve at index sum
/// `n` either yields a primitive, checked on sums `<= n - margin`, or a
/// cycle witness.
pub fn is_coboundary(c: &Cochain, n: i64, margin: i64) -> Result<Outcome> {
    let (q, k) = (c.degree(), c.weight());
    if n - margin <= k {
        return Err(Error::Truncation(format!("truncation {n} with margin {margin} leaves no window above weight {k}")));
    }
    check_closed(c, n)?;
    for z in class_cycles(q, k, n - k)? {
        let p = pair(c, &z)?;
        if !p.is_zero() {
            return Ok(Outcome::Certified(ClassCertificate::NonzeroViaCycle { cycle: z, pairing: p }));
        }
    }
    let cert = match solve_truncated(c, n) {
        Ok(TruncatedSolve::Primitive(b)) => ClassCertificate::ZeroViaPrimitive { primitive: b, window: n - margin },
        Ok(TruncatedSolve::Obstructed { cycle, pairing }) => ClassCertificate::NonzeroViaCycle { cycle, pairing },
        Err(Error::OutOfWindow { name, bound, .. }) => return Ok(Outcome::Inconclusive(format!("{name} is only known up to index sum {bound}"))),
        Err(e) => return Err(e),
    };
    match cert.verify(c) {
        Ok(()) => Ok(Outcome::Certified(cert)),
        Err(e) => Ok(Outcome::Inconclusive(e.to_string())),
    }
}

#[derive(Clone, Debug)]
pub struct NamedCertificate {
    pub label: String,
    pub weight: i64,
    pub outcome: Outcome,
}

/// Certificates that `[delta mu_2]`, `[delta mu_3]`, `[delta mu_4]` are
/// nonzero; each cycle lives in a single weight.
pub fn h2_basis() -> Result<Vec<NamedCertificate>> {
    (2..=4)
        .map(|k| {
            let c = dmu(k)?;
            Ok(NamedCertificate { label: c.label().to_string(), weight: k, outcome: is_coboundary(&c, k + 12, 2)? })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct MasseyReport {
    /// `f` with `d f = [b, b]`.
    pub primitive: Cochain,
    pub closed_form: bool,
    pub cube: Cochain,
    pub outcome: Outcome,
}

/// The Massey cube `[b, f]`, `d f = [b, b]`, and its class in weight 9.
pub fn massey_cube(beta: &Cochain, n: i64) -> Result<MasseyReport> {
    massey_cube_with(beta, None, n)
}

/// As [`massey_cube`], with an explicit primitive of `[b, b]`.
pub fn massey_cube_with(beta: &Cochain, primitive: Option<Cochain>, n: i64) -> Result<MasseyReport> {
    if beta.degree() != 2 || beta.weight() != 3 {
        return Err(Error::GradingMismatch(format!("{} is not a weight-3 2-cochain", beta.label())));
    }
    if n < 24 {
        return Err(Error::Truncation(format!("truncation {n} < 24")));
    }
    check_closed(beta, 16)?;
    let bb = bracket(beta, beta)?;
    let window = 12 + 6;
    let agrees = |f: &Cochain| -> Result<bool> {
        let d = ce_differential(f);
        for t in tuples_with_sum_at_most(3, window) {
            if d.eval_sorted(&t)? != bb.eval_sorted(&t)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let (f, closed_form) = match primitive {
        Some(f) => {
            if !agrees(&f)? {
                return Err(Error::Certificate(format!("{} is not a primitive of [b,b]", f.label())));
            }
            (f, false)
        }
        None => {
            let f0 = lin([(Rational::one(), lambda(3, 3)?), (Rational::frac(-10, 21), dmu(6)?)], "lambda3,3 - 10/21 dmu6")?;
            if agrees(&f0)? {
                (f0, true)
            } else {
                match solve_truncated(&bb, n)? {
                    TruncatedSolve::Primitive(f) => (f, false),
                    TruncatedSolve::Obstructed { pairing, .. } => return Err(Error::Certificate(format!("[b,b] pairs to {pairing}"))),
                }
            }
        }
    };
    let cube = bracket(beta, &f)?;
    let outcome = is_coboundary(&cube, n, 6)?;
    Ok(MasseyReport { primitive: f, closed_form, cube, outcome })
}

#[derive(Clone, Debug)]
pub struct ProductClasses {
    pub bc: Outcome,
    pub cc: Outcome,
    /// `[delta mu_4, delta mu_4] = delta_{4,4}` on the window.
    pub cc_is_delta44: bool,
    pub massey: MasseyReport,
}

/// Nonzero classes `[b, c]` in weight 7, `[c, c]` in weight 8 and the
/// Massey cube in weight 9, for `b = [delta mu_3]`, `c = [delta mu_4]`.
pub fn product_classes(n: i64) -> Result<ProductClasses> {
    if n < 24 {
        return Err(Error::Truncation(format!("truncation {n} < 24")));
    }
    let (b, c) = (dmu(3)?, dmu(4)?);
    let bc = bracket(&b, &c)?;
    let cc = bracket(&c, &c)?;
    let d44 = delta_kl(4, 4)?;
    let cc_is_delta44 = tuples_with_sum_at_most(3, n).iter().map(|t| Ok(cc.eval_sorted(t)? == d44.eval_sorted(t)?)).collect::<Result<Vec<_>>>()?.into_iter().all(|x| x);
    Ok(ProductClasses { bc: is_coboundary(&bc, n, 6)?, cc: is_coboundary(&cc, n, 6)?, cc_is_delta44, massey: massey_cube(&b, n)? })
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub weight: i64,
    pub constituents: Vec<(i64, i64)>,
    /// `<d lambda_{k,l}, z>` for the certificate cycle `z`.
    pub pairings: Vec<Rational>,
    /// Primitive integer normal vector of the allowed coefficients.
    pub relation: Vec<i64>,
    /// The allowed direction, when there are two constituents.
    pub ray: Option<(i64, i64)>,
    /// Every `L1`-valued combination of `lambda`s and `delta mu`s in this
    /// weight satisfies the relation.
    pub witnesses_consistent: bool,
    #[serde(skip)]
    pub cycle: ChainElement,
}

fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(&x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let mut out: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        out.iter_mut().for_each(|x| *x = -&*x);
    }
    out
}

/// Which combinations of `delta_{k,l}` (`k + l = weight`) can be
/// commensurable with a coboundary: the pairing of `d lambda_{k,l}` with a
/// weight-`weight` degree-3 cycle gives the only linear constraint, and
/// the `L1`-valued combinations realize it.
pub fn lambda_relation_scan(weight: i64, n: i64) -> Result<RelationReport> {
    let constituents: Vec<(i64, i64)> = match weight {
        7 => vec![(2, 5), (3, 4)],
        8 => vec![(2, 6), (3, 5), (4, 4)],
        _ => return Err(Error::InvalidParameter(format!("weight {weight} (expected 7 or 8)"))),
    };
    if n < 28 {
        return Err(Error::Truncation(format!("truncation {n} < 28")));
    }
    let dl: Vec<Cochain> = constituents.iter().map(|&(k, l)| Ok(ce_differential(&lambda(k, l)?))).collect::<Result<_>>()?;
    let mut found = None;
    for z in class_cycles(3, weight, n - weight)? {
        let p: Vec<Rational> = dl.iter().map(|c| pair(c, &z)).collect::<Result<_>>()?;
        if p.iter().any(|x| !x.is_zero()) {
            found = Some((z, p));
            break;
        }
    }
    let (cycle, pairings) = found.ok_or_else(|| Error::Truncation(format!("no weight-{weight} cycle detects the lambdas at truncation {n}")))?;
    let relation = primitive_integer(&pairings)
        .into_iter()
        .map(|x| i64::try_from(&x).map_err(|_| Error::InvalidParameter(format!("relation coefficient {x} overflows"))))
        .collect::<Result<Vec<i64>>>()?;
    let ray = (relation.len() == 2).then(|| {
        let (a, b) = (relation[1], -relation[0]);
        if a < 0 || (a == 0 && b < 0) {
            (-a, -b)
        } else {
            (a, b)
        }
    });
    let mut witnesses_consistent = true;
    for w in l1_valued_combinations()?.into_iter().filter(|w| w.weight == weight) {
        let coeffs: Vec<Rational> = constituents
            .iter()
            .map(|&(k, l)| {
                let label = format!("lambda{k},{l}");
                w.terms.iter().filter(|(_, c)| *c == label).map(|(a, _)| a.clone()).sum()
            })
            .collect();
        let dot: Rational = coeffs.iter().zip(&pairings).map(|(a, p)| a * p).sum();
        witnesses_consistent &= dot.is_zero();
    }
    Ok(RelationReport { weight, constituents, pairings, relation, ray, witnesses_consistent, cycle })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{alpha1, beta, chain_a2, chain_a3};
    use crate::exact::SparseMatrix;

    #[test]
    fn cycles_contain_catalog_chains() {
        for (k, a) in [(2, chain_a2()), (3, chain_a3())] {
            let cycles = find_cycles(2, k, 8).unwrap();
            let src = ChainBasis::new(2, k, 8);
            let col = |c: &ChainElement| -> Vec<(usize, usize, Rational)> { c.terms().map(|(j, t, v)| (src.index_of(j, t).unwrap(), 0, v.clone())).collect() };
            let mut trip = Vec::new();
            for (i, z) in cycles.iter().enumerate() {
                trip.extend(col(z).into_iter().map(|(r, _, v)| (r, i, v)));
            }
            let m = SparseMatrix::from_triplets(src.len(), cycles.len(), trip).unwrap();
            let b: Vec<Rational> = {
                let mut b = vec![Rational::zero(); src.len()];
                for (r, _, v) in col(&a) {
                    b[r] = v;
                }
                b
            };
            assert!(matches!(m.solve(&b).unwrap(), SolveOutcome::Solvable(_)), "k={k}");
        }
    }

    #[test]
    fn dmu4_is_nonzero() {
        let o = is_coboundary(&dmu(4).unwrap(), 16, 4).unwrap();
        assert!(o.is_nonzero());
        o.certificate().unwrap().verify(&dmu(4).unwrap()).unwrap();
    }

    #[test]
    fn alpha11_primitive_is_beta1() {
        let a = alpha1(1).unwrap();
        let o = is_coboundary(&a, 16, 4).unwrap();
        let Some(ClassCertificate::ZeroViaPrimitive { primitive, window }) = o.certificate() else { panic!("{o:?}") };
        let b1 = beta(1).unwrap();
        for i in 1..=(*window - 1) {
            assert_eq!(primitive.eval(&[i]).unwrap(), b1.eval(&[i]).unwrap(), "i={i}");
        }
    }
}
