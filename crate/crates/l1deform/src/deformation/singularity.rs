//! Gauge normalization and the singular / non-singular verdict.

use super::formal::{apply_parameter_change, FormalDeformation, ParameterChange};
use super::gauge::{apply_gauge, gauge_primitive, GaugeTransform};
use super::graded::Graded;
use crate::cochain::{chain_a2, chain_a3, pair, tuples_with_max, Cochain};
use crate::cohomology::{is_coboundary, ClassCertificate, Outcome, DEFAULT_MARGIN};
use crate::error::{Error, Result};
use crate::exact::{Rational, Ring};

/// A nonzero class of one weight component at one order.
#[derive(Clone, Debug)]
pub struct ClassEvidence {
    pub order: usize,
    pub weight: i64,
    pub certificate: ClassCertificate,
    pub component: Cochain,
}

impl ClassEvidence {
    pub fn verify(&self) -> Result<()> {
        self.certificate.verify(&self.component)
    }

    pub fn pairing(&self) -> Option<&Rational> {
        match &self.certificate {
            ClassCertificate::NonzeroViaCycle { pairing, .. } => Some(pairing),
            ClassCertificate::ZeroViaPrimitive { .. } => None,
        }
    }
}

/// A gauge step `id + t^order b` that killed an exact term.
#[derive(Clone, Debug)]
pub struct Killed {
    pub order: usize,
    pub weights: Vec<i64>,
}

#[derive(Clone, Debug)]
pub enum SingularityVerdict {
    /// After the gauge steps, `u = t^m` turns the deformation into one
    /// whose first order has the certified nonzero class.
    NonSingular { gauges: Vec<Killed>, parameter_change: ParameterChange, reduced: FormalDeformation, first: ClassEvidence },
    /// Independent nonzero classes at orders `k1 < k2 < 2 k1`, everything
    /// below `k1` killed.
    Singular { gauges: Vec<Killed>, first: ClassEvidence, second: ClassEvidence },
    Inconclusive { order: usize, reason: String },
}

impl SingularityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            SingularityVerdict::NonSingular { .. } => "NonSingular",
            SingularityVerdict::Singular { .. } => "Singular",
            SingularityVerdict::Inconclusive { .. } => "Inconclusive",
        }
    }

    /// Re-checks every embedded certificate.
    pub fn verify(&self) -> Result<()> {
        match self {
            SingularityVerdict::NonSingular { first, .. } => first.verify(),
            SingularityVerdict::Singular { first, second, .. } => {
                first.verify()?;
                second.verify()
            }
            SingularityVerdict::Inconclusive { .. } => Ok(()),
        }
    }
}

enum Class {
    Zero(Cochain),
    Nonzero(ClassCertificate),
    Unknown(String),
}

fn class_of(c: &Cochain, n: i64) -> Result<Class> {
    if let Some(b) = gauge_primitive(c, n)? {
        return Ok(Class::Zero(b));
    }
    let catalog = match c.weight() {
        2 => Some(chain_a2()),
        3 => Some(chain_a3()),
        _ => None,
    };
    if let Some(z) = catalog {
        let p = pair(c, &z)?;
        if !p.is_zero() {
            return Ok(Class::Nonzero(ClassCertificate::NonzeroViaCycle { cycle: z, pairing: p }));
        }
    }
    Ok(match is_coboundary(c, n, DEFAULT_MARGIN)? {
        Outcome::Certified(cert) if cert.is_nonzero() => Class::Nonzero(cert),
        Outcome::Certified(_) => Class::Unknown(format!("{} is exact on a window but has no primitive along e_1", c.label())),
        Outcome::Inconclusive(why) => Class::Unknown(why),
    })
}

fn is_zero(a: &Graded, n: i64) -> Result<bool> {
    let max = n / 2;
    for t in tuples_with_max(2, max) {
        if !a.value(&t)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Normalizes order by order: exact terms are gauged away, the first
/// nonzero class fixes `k1`, and later classes decide the verdict.
pub fn singularity_test(d: &FormalDeformation, order: usize, n: i64) -> Result<SingularityVerdict> {
    if order < 3 {
        return Err(Error::InvalidParameter(format!("order {order} < 3")));
    }
    if *d.ring() != Ring::Q {
        return Err(Error::RingMismatch("Q".into(), d.ring().to_string()));
    }
    let mut cur = d.with_order(order);
    let mut gauges = Vec::new();
    let mut first: Option<ClassEvidence> = None;
    for k in 1..=order {
        // Multiples of k1 are not closed in general; they survive into the
        // reduced deformation unchanged.
        if first.as_ref().is_some_and(|f| k % f.order == 0) {
            continue;
        }
        let a = cur.rational_alpha(k)?;
        if is_zero(&a, n)? {
            continue;
        }
        let mut prims = Vec::new();
        let mut nonzero = Vec::new();
        for c in a.parts() {
            match class_of(c, n)? {
                Class::Zero(b) => prims.push(b),
                Class::Nonzero(cert) => nonzero.push(ClassEvidence { order: k, weight: c.weight(), certificate: cert, component: c.clone() }),
                Class::Unknown(why) => return Ok(SingularityVerdict::Inconclusive { order: k, reason: why }),
            }
        }
        if !prims.is_empty() {
            let weights = prims.iter().map(Cochain::weight).collect();
            let mut betas = vec![Graded::zero(1); k];
            betas[k - 1] = Graded::from_parts(1, prims)?;
            cur = apply_gauge(&cur, &GaugeTransform::new(betas)?, order)?;
            gauges.push(Killed { order: k, weights });
        }
        let Some(ev) = nonzero.into_iter().next() else { continue };
        match &first {
            None if k == 1 => {
                let reduced = cur.clone();
                return Ok(SingularityVerdict::NonSingular { gauges, parameter_change: ParameterChange::identity(), reduced, first: ev });
            }
            None => first = Some(ev),
            Some(f) if k < 2 * f.order => {
                if ev.weight == f.weight {
                    return Ok(SingularityVerdict::Inconclusive { order: k, reason: format!("classes at orders {} and {k} share weight {}", f.order, f.weight) });
                }
                return Ok(SingularityVerdict::Singular { gauges, first: f.clone(), second: ev });
            }
            Some(f) => {
                return Ok(SingularityVerdict::Inconclusive { order: k, reason: format!("nonzero class at order {k}, not a multiple of {}", f.order) });
            }
        }
    }
    let Some(first) = first else {
        return Ok(SingularityVerdict::Inconclusive { order, reason: "every order up to the bound is exact".into() });
    };
    let m = first.order;
    let reduced = FormalDeformation::new(Ring::Q, (1..=order / m).map(|l| cur.alpha(l * m)).collect())?;
    let u = ParameterChange::power(m);
    let back = apply_parameter_change(&reduced, &u, order)?;
    for k in 1..=order {
        if back.rational_alpha(k)?.first_difference(&cur.rational_alpha(k)?, n / 2)?.is_some() {
            return Err(Error::Certificate(format!("order {k} does not come from the reduced deformation")));
        }
    }
    Ok(SingularityVerdict::NonSingular { gauges, parameter_change: u, reduced, first })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::deformation_family;

    #[test]
    fn family_three_is_nonsingular_at_first_order() {
        let v = singularity_test(&deformation_family(3, 3).unwrap(), 3, 16).unwrap();
        let SingularityVerdict::NonSingular { first, parameter_change, .. } = &v else { panic!("{}", v.label()) };
        assert_eq!(first.pairing(), Some(&Rational::from_int(-12)));
        assert_eq!(parameter_change, &ParameterChange::identity());
        v.verify().unwrap();
    }

    #[test]
    fn family_two_is_singular() {
        let v = singularity_test(&deformation_family(2, 3).unwrap(), 3, 16).unwrap();
        let SingularityVerdict::Singular { first, second, .. } = &v else { panic!("{}", v.label()) };
        assert_eq!((first.order, second.order), (2, 3));
        assert_eq!(first.pairing(), Some(&Rational::from_int(-13)));
        assert_eq!(second.pairing(), Some(&Rational::from_int(12)));
    }

    #[test]
    fn family_one_needs_a_parameter_change() {
        let v = singularity_test(&deformation_family(1, 6).unwrap(), 6, 20).unwrap();
        let SingularityVerdict::NonSingular { gauges, parameter_change, first, reduced } = &v else { panic!("{}", v.label()) };
        assert_eq!(gauges.iter().map(|g| g.order).collect::<Vec<_>>(), vec![1, 3, 5]);
        assert_eq!(parameter_change, &ParameterChange::power(2));
        assert_eq!(first.pairing(), Some(&Rational::from_int(-1)));
        assert_eq!(reduced.order(), 3);
    }
}
