//! Order-by-order integration of `d alpha_k = -1/2 sum [alpha_i, alpha_{k-i}]`.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::formal::FormalDeformation;
use super::graded::{Graded, PolyCochain};
use crate::cochain::{ce_differential, dmu, lambda, lin, pair, tuples_with_sum_at_most, ChainElement, Cochain};
use crate::cohomology::{class_cycles, solve_truncated, ClassCertificate, TruncatedSolve, DEFAULT_MARGIN};
use crate::error::{Error, Result};
use crate::exact::{Monomial, PolyScalar, Rational, Ring};

/// Free multiples of `d mu_2, d mu_3, d mu_4` added at each order.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum CoefficientPolicy {
    #[default]
    Zero,
    /// `order -> (c_k2, c_k3, c_k4)`.
    Explicit(BTreeMap<usize, [Rational; 3]>),
    /// `alpha_2 += y d mu_3 + x d mu_4` over `Q[x,y]`.
    Generic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegrationOptions {
    /// Index-sum bound of the truncated complex.
    pub truncation: i64,
    pub margin: i64,
    pub policy: CoefficientPolicy,
}

impl IntegrationOptions {
    pub fn new(truncation: i64) -> Self {
        IntegrationOptions { truncation, margin: DEFAULT_MARGIN, policy: CoefficientPolicy::Zero }
    }
}

/// Where a primitive came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PrimitiveSource {
    /// A multiple of a closed-form catalog cochain, valid everywhere.
    ClosedForm(String),
    /// A table solving the equation on index sums up to the bound.
    Windowed(i64),
}

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub order: usize,
    pub weight: i64,
    pub monomial: String,
    pub source: PrimitiveSource,
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub order: usize,
    pub weight: i64,
    pub certificate: ClassCertificate,
    /// The offending right-hand side component.
    pub rhs: Cochain,
}

impl ObstructionReport {
    pub fn verify(&self) -> Result<()> {
        if !self.certificate.is_nonzero() {
            return Err(Error::Certificate("obstruction certificate claims zero".into()));
        }
        self.certificate.verify(&self.rhs)
    }
}

/// A polynomial condition on the unknowns: its vanishing is necessary for
/// the equation at `order` to be solvable in `weight`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Constraint {
    pub order: usize,
    pub weight: i64,
    pub polynomial: PolyScalar,
}

#[derive(Clone, Debug)]
pub enum Integration {
    Complete { deformation: FormalDeformation, steps: Vec<Step> },
    Obstructed { partial: FormalDeformation, steps: Vec<Step>, report: Box<ObstructionReport> },
    Constraint { partial: FormalDeformation, steps: Vec<Step>, constraints: Vec<Constraint> },
}

impl Integration {
    pub fn deformation(&self) -> &FormalDeformation {
        match self {
            Integration::Complete { deformation, .. } => deformation,
            Integration::Obstructed { partial, .. } | Integration::Constraint { partial, .. } => partial,
        }
    }

    pub fn steps(&self) -> &[Step] {
        match self {
            Integration::Complete { steps, .. } | Integration::Obstructed { steps, .. } | Integration::Constraint { steps, .. } => steps,
        }
    }
}

/// `-1/2 sum_{i+j=k} [alpha_i, alpha_j]`.
pub fn right_hand_side(d: &FormalDeformation, k: usize) -> Result<PolyCochain> {
    let mut out = PolyCochain::zero(d.ring().clone(), 3);
    for i in 1..k {
        let (a, b) = (d.alpha(i), d.alpha(k - i));
        if a.is_empty() || b.is_empty() {
            continue;
        }
        out = out.add(&a.bracket(&b)?.scale(&Rational::frac(-1, 2)))?;
    }
    Ok(out)
}

fn catalog_hints() -> Result<Vec<Cochain>> {
    let mut out = Vec::new();
    for (k, l) in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4)] {
        out.push(lambda(k, l)?);
    }
    out.push(lin([(Rational::one(), lambda(3, 3)?), (Rational::frac(-10, 21), dmu(6)?)], "lambda3,3 - 10/21 dmu6")?);
    Ok(out)
}

struct Integrator {
    opts: IntegrationOptions,
    hints: Vec<Cochain>,
    cycles: HashMap<i64, Vec<ChainElement>>,
}

impl Integrator {
    fn cycles(&mut self, w: i64) -> Result<&[ChainElement]> {
        let cutoff = self.opts.truncation - w - self.opts.margin;
        if cutoff < 1 {
            return Err(Error::Truncation(format!("truncation {} leaves no room for weight {w}", self.opts.truncation)));
        }
        if let Entry::Vacant(e) = self.cycles.entry(w) {
            e.insert(class_cycles(3, w, cutoff)?);
        }
        Ok(&self.cycles[&w])
    }

    fn agrees(&self, f: &Cochain, c: &Cochain) -> Result<bool> {
        let d = ce_differential(f);
        for t in tuples_with_sum_at_most(3, self.opts.truncation) {
            if d.eval_sorted(&t)? != c.eval_sorted(&t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn primitive(&self, c: &Cochain) -> Result<(Cochain, PrimitiveSource)> {
        for h in self.hints.iter().filter(|h| h.weight() == c.weight()) {
            let dh = ce_differential(h);
            let Some(t) = tuples_with_sum_at_most(3, self.opts.truncation).into_iter().find(|t| !dh.eval_sorted(t).map(|v| v.is_zero()).unwrap_or(true)) else {
                continue;
            };
            let a = c.eval_sorted(&t)?.checked_div(&dh.eval_sorted(&t)?)?;
            if a.is_zero() {
                continue;
            }
            let f = crate::cochain::scale(a.clone(), h);
            if self.agrees(&f, c)? && f.values_outside_l1(12)?.is_empty() {
                return Ok((f, PrimitiveSource::ClosedForm(format!("{a}*{}", h.label()))));
            }
        }
        match solve_truncated(c, self.opts.truncation)? {
            TruncatedSolve::Primitive(b) => Ok((b, PrimitiveSource::Windowed(self.opts.truncation))),
            TruncatedSolve::Obstructed { pairing, .. } => Err(Error::Truncation(format!(
                "{} pairs to {pairing} with a cycle near the truncation boundary; raise the truncation",
                c.label()
            ))),
        }
    }

    fn policy_terms(&self, ring: &Ring, k: usize) -> Result<PolyCochain> {
        let mut out = PolyCochain::zero(ring.clone(), 2);
        match &self.opts.policy {
            CoefficientPolicy::Zero => {}
            CoefficientPolicy::Explicit(map) => {
                if let Some(cs) = map.get(&k) {
                    for (c, m) in cs.iter().zip(2..) {
                        out = out.add(&PolyCochain::constant(ring.clone(), Graded::from_cochain(dmu(m)?).scale(c)))?;
                    }
                }
            }
            CoefficientPolicy::Generic if k == 2 => {
                out = out.add(&PolyCochain::monomial(ring.clone(), Monomial::Y, Graded::from_cochain(dmu(3)?)))?;
                out = out.add(&PolyCochain::monomial(ring.clone(), Monomial::X, Graded::from_cochain(dmu(4)?)))?;
            }
            CoefficientPolicy::Generic => {}
        }
        Ok(out)
    }

    /// One order: either the new `alpha_k` or why there is none.
    fn step(&mut self, d: &FormalDeformation, k: usize, steps: &mut Vec<Step>) -> Result<StepOutcome> {
        let rhs = right_hand_side(d, k)?;
        let ring = d.ring().clone();
        let mut constraints = Vec::new();
        for w in rhs.weights() {
            let comps = rhs.component(w);
            let cycles = self.cycles(w)?.to_vec();
            for z in &cycles {
                let mut p = PolyScalar::zero(ring.clone());
                for (m, c) in &comps {
                    let v = pair(c, z)?;
                    p = p.checked_add(&PolyScalar::monomial(ring.clone(), *m, v)?)?;
                }
                if p.is_zero() {
                    continue;
                }
                if let Some(v) = p.as_rational() {
                    let rhs_w = comps.iter().find(|(m, _)| *m == Monomial::ONE).map(|(_, c)| c.clone()).expect("constant component");
                    let report = ObstructionReport { order: k, weight: w, certificate: ClassCertificate::NonzeroViaCycle { cycle: z.clone(), pairing: v }, rhs: rhs_w };
                    report.verify()?;
                    return Ok(StepOutcome::Obstructed(report));
                }
                constraints.push(Constraint { order: k, weight: w, polynomial: p });
            }
        }
        if !constraints.is_empty() {
            return Ok(StepOutcome::Constraints(constraints));
        }
        let mut alpha = self.policy_terms(&ring, k)?;
        for w in rhs.weights() {
            for (m, c) in rhs.component(w) {
                let (f, source) = self.primitive(&c)?;
                steps.push(Step { order: k, weight: w, monomial: m.to_string(), source });
                alpha = alpha.add(&PolyCochain::monomial(ring.clone(), m, Graded::from_cochain(f)))?;
            }
        }
        Ok(StepOutcome::Solved(alpha))
    }
}

enum StepOutcome {
    Solved(PolyCochain),
    Obstructed(ObstructionReport),
    Constraints(Vec<Constraint>),
}

/// Extends `prefix` order by order through `order`.
pub fn integrate_from(prefix: &FormalDeformation, order: usize, opts: &IntegrationOptions) -> Result<Integration> {
    if order > 10 {
        return Err(Error::InvalidParameter(format!("order {order} > 10")));
    }
    let needed = 2 * order as i64 + 12;
    if opts.truncation < needed {
        return Err(Error::Truncation(format!("truncation {} < {needed}", opts.truncation)));
    }
    let ring = if opts.policy == CoefficientPolicy::Generic && *prefix.ring() == Ring::Q { Ring::poly() } else { prefix.ring().clone() };
    let mut d = prefix.map_ring(ring, None)?;
    let mut it = Integrator { opts: opts.clone(), hints: catalog_hints()?, cycles: HashMap::new() };
    let mut steps = Vec::new();
    for k in (prefix.order() + 1)..=order {
        match it.step(&d, k, &mut steps)? {
            StepOutcome::Solved(a) => d.push(a)?,
            StepOutcome::Obstructed(report) => return Ok(Integration::Obstructed { partial: d, steps, report: Box::new(report) }),
            StepOutcome::Constraints(constraints) => return Ok(Integration::Constraint { partial: d, steps, constraints }),
        }
    }
    Ok(Integration::Complete { deformation: d, steps })
}

/// Integrates from `alpha_1 = c2 d mu_2 + c3 d mu_3 + c4 d mu_4`.
pub fn integrate(alpha1: [Rational; 3], order: usize, opts: &IntegrationOptions) -> Result<Integration> {
    let parts = alpha1.iter().zip(2..).filter(|(c, _)| !c.is_zero()).map(|(c, k)| Ok(crate::cochain::scale(c.clone(), &dmu(k)?))).collect::<Result<Vec<_>>>()?;
    let first = Graded::from_parts(2, parts)?;
    integrate_from(&FormalDeformation::rational(vec![first])?, order, opts)
}
