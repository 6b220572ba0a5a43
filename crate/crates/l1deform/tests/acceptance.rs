//! Criteria 1 to 10, one status line each.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::*;
use l1deform::cochain::{alpha1, bracket, ce_differential, chain_a2, chain_a3, dmu, l1_valued_combinations, lin, pair, Cochain};
use l1deform::cohomology::{cohomology_dim_with, h2_basis, lambda_relation_scan, massey_cube_with, product_classes, ClassCertificate, Outcome, DEFAULT_MARGIN};
use l1deform::deformation::{
    classify, defect_vanishes, deformation_family, distinguish_families, gamma_deformation, integrate, singularity_test, verify_embedding, FormalDeformation, Integration, IntegrationOptions,
};
use l1deform::exact::Rational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const N: i64 = 32;
const K: usize = 8;
const WINDOW: i64 = 20;
const SEED: u64 = 20_240_601;

type Verdict = Result<String, Vec<String>>;

#[derive(Default)]
struct Tally {
    bad: Vec<String>,
}

impl Tally {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: impl std::fmt::Display, expected: T, computed: T) {
        if expected != computed {
            self.bad.push(format!("{what}: expected {expected:?}, computed {computed:?}"));
        }
    }

    fn ok(&mut self, what: impl std::fmt::Display, cond: bool) {
        if !cond {
            self.bad.push(format!("{what}"));
        }
    }

    fn done(self, summary: impl Into<String>) -> Verdict {
        if self.bad.is_empty() {
            Ok(summary.into())
        } else {
            Err(self.bad)
        }
    }
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn verifies(o: &Outcome, c: &Cochain) -> bool {
    o.is_nonzero() && o.certificate().is_some_and(|cert| cert.verify(c).is_ok())
}

fn expected_dim(q: usize, k: i64) -> usize {
    const NONZERO: [(usize, i64); 9] = [(1, 0), (2, 2), (2, 3), (2, 4), (3, 7), (3, 8), (3, 9), (3, 10), (3, 11)];
    usize::from(NONZERO.contains(&(q, k)))
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let cells: Vec<(usize, i64)> = (1..=3).flat_map(|q| (0..=14).map(move |k| (q, k))).collect();
    let reports: Vec<_> = cells
        .par_iter()
        .map(|&(q, k)| {
            let t = (2 * k + 4).min(N);
            cohomology_dim_with(q, k, &[t, t + 2, t + 4], DEFAULT_MARGIN, true)
        })
        .collect();
    let elapsed = start.elapsed();
    let mut t = Tally::default();
    for (&(q, k), r) in cells.iter().zip(reports) {
        match r {
            Ok(r) => {
                t.eq(format!("H^{q}_({k})"), Some(expected_dim(q, k)), r.value);
                t.ok(format!("H^{q}_({k}) cross-check"), r.cross_check.as_ref().is_some_and(|c| c.agrees));
            }
            Err(e) => t.ok(format!("H^{q}_({k}): {e}"), false),
        }
    }
    t.ok(format!("took {elapsed:?}"), elapsed < Duration::from_secs(120));
    t.done(format!("45 cells cross-validated in {:.1}s", elapsed.as_secs_f64()))
}

fn part(d: &FormalDeformation, k: usize, w: i64) -> Cochain {
    d.rational_alpha(k).unwrap().part(w).cloned().unwrap_or_else(|| Cochain::zero(2, w))
}

fn criterion_2() -> Verdict {
    let (a2, a3) = (chain_a2(), chain_a3());
    let (g1, g2) = (gamma_deformation(1, 3).unwrap(), gamma_deformation(2, 3).unwrap());
    let computed = [
        pair(&alpha1(3).unwrap(), &a2).unwrap(),
        pair(&part(&g1, 2, 2), &a2).unwrap(),
        pair(&part(&g2, 2, 2), &a2).unwrap(),
        pair(&part(&g1, 3, 3), &a3).unwrap(),
        pair(&part(&g2, 3, 3), &a3).unwrap(),
    ];
    let mut t = Tally::default();
    t.eq("pairings", [-12, -1, -13, 0, 12].map(q).to_vec(), computed.to_vec());
    t.done("-12, -1, -13, 0, 12")
}

fn vector(terms: &[(i64, i64, i64)]) -> BTreeMap<i64, Rational> {
    terms.iter().map(|&(i, n, d)| (i, frac(n, d))).collect()
}

fn criterion_3() -> Verdict {
    let args = [[1, 2], [1, 3], [1, 4], [2, 3]];
    let table: [(u8, usize, [&[(i64, i64, i64)]; 4]); 4] = [
        (1, 2, [&[], &[(2, 1, 1)], &[(3, 3, 1)], &[(3, 3, 2)]]),
        (1, 3, [&[], &[(1, 1, 1)], &[(2, -3, 1)], &[(2, -1, 1)]]),
        (2, 2, [&[], &[(2, 4, 1)], &[(3, 15, 2)], &[(3, 15, 2)]]),
        (2, 3, [&[], &[(1, -6, 1)], &[(2, -15, 1)], &[(2, -9, 1)]]),
    ];
    let mut t = Tally::default();
    for (fam, k, expected) in table {
        let g = gamma_deformation(fam, k).unwrap().rational_alpha(k).unwrap();
        for (a, e) in args.iter().zip(expected) {
            t.eq(format!("gamma^{fam}_{k}(e{},e{})", a[0], a[1]), vector(e), g.value(a).unwrap());
        }
    }
    t.done("16 values")
}

fn criterion_4() -> Verdict {
    let expected: BTreeMap<(String, Vec<i64>), Rational> = [
        ("lambda2,3", [2, 3], 2),
        ("dmu5", [2, 3], 26),
        ("lambda2,4", [2, 3], -12),
        ("lambda3,3", [2, 3], 20),
        ("dmu6", [2, 3], 42),
        ("lambda2,4", [2, 4], 12),
        ("lambda3,3", [2, 4], -20),
        ("dmu6", [2, 4], -42),
    ]
    .into_iter()
    .map(|(l, t, v)| ((l.to_string(), t.to_vec()), q(v)))
    .collect();
    let combos = l1_valued_combinations().unwrap();
    let mut seen = BTreeMap::new();
    let mut t = Tally::default();
    for c in &combos {
        t.eq(format!("{} values outside L1", c.label), 0, c.cochain.values_outside_l1(WINDOW).unwrap().len());
        if (5..=6).contains(&c.weight) {
            for (label, tuple, v) in &c.exceptional {
                seen.insert((label.clone(), tuple.to_vec()), v.clone());
            }
        }
    }
    t.eq("exceptional values", expected, seen);
    t.done(format!("{} combinations, 8 exceptional values", combos.len()))
}

fn criterion_5() -> Verdict {
    let mut t = Tally::default();
    let w7 = lambda_relation_scan(7, N).unwrap();
    t.eq("weight 7 ray", Some((65, 119)), w7.ray);
    t.ok("weight 7 witnesses", w7.witnesses_consistent);
    let w8 = lambda_relation_scan(8, N).unwrap();
    t.eq("weight 8 relation", vec![105, 151, -300], w8.relation.clone());
    t.ok("weight 8 witnesses", w8.witnesses_consistent);
    t.done("65:119, 105a + 151b - 300c")
}

fn criterion_6() -> Verdict {
    let p = product_classes(N).unwrap();
    let (b, c) = (dmu(3).unwrap(), dmu(4).unwrap());
    let mut t = Tally::default();
    t.ok("[b,c] nonzero, certificate verifies", verifies(&p.bc, &bracket(&b, &c).unwrap()));
    t.ok("[c,c] nonzero, certificate verifies", verifies(&p.cc, &bracket(&c, &c).unwrap()));
    t.ok("[c,c] = delta4,4", p.cc_is_delta44);
    t.ok("<b,b,b> nonzero, certificate verifies", verifies(&p.massey.outcome, &p.massey.cube));
    let Some(ClassCertificate::NonzeroViaCycle { cycle, pairing }) = p.massey.outcome.certificate() else {
        t.ok("<b,b,b> has a cycle certificate", false);
        return t.done("");
    };
    t.eq("<b,b,b> pairing", &q(112), pairing);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let w = random_table(&mut rng, 1, 6, 12, 1.0);
    let f2 = lin([(Rational::one(), p.massey.primitive.clone()), (Rational::one(), ce_differential(&w))], "f + dw").unwrap();
    let other = massey_cube_with(&b, Some(f2), N).unwrap();
    t.ok("<b,b,b> via f + dw nonzero", other.outcome.is_nonzero());
    t.eq("<b,b,b> via f + dw pairing", pairing.clone(), pair(&other.cube, cycle).unwrap());
    t.done("[b,c], [c,c], <b,b,b> certified; cube independent of the primitive")
}

fn criterion_7() -> Verdict {
    let c = classify(K, N).unwrap();
    let mut t = Tally::default();
    t.eq("branch A roots", vec![frac(-1, 5), q(0)], c.branch_a.roots.clone());
    t.eq("branch B x", frac(119, 845), c.branch_b.x.clone());
    t.eq("branch B y^2", frac(432, 2197), c.branch_b.y_squared.clone());
    t.eq("solution points", 3, c.determinants.len());
    for d in &c.determinants {
        t.ok(format!("det at x = {}", d.x), d.nonzero());
    }
    t.ok("branch B reaches the order", c.branch_b.complete);
    for e in &c.branch_a.extensions {
        t.ok(format!("branch A at x = {} reaches the order", e.x), e.complete);
    }
    t.done("roots {0, -1/5}, x = 119/845, y^2 = 432/2197, determinants nonzero")
}

fn criterion_8() -> Verdict {
    let mut t = Tally::default();
    for (name, a, site) in [("dmu4", [q(0), q(0), q(1)], (2, 8)), ("dmu3", [q(0), q(1), q(0)], (3, 9))] {
        match integrate(a, K, &IntegrationOptions::new(N)).unwrap() {
            Integration::Obstructed { report, .. } => {
                t.eq(format!("{name} obstruction site"), site, (report.order, report.weight));
                t.ok(format!("{name} certificate verifies"), report.verify().is_ok());
            }
            _ => t.ok(format!("{name} is obstructed"), false),
        }
    }
    t.done("(2,8) and (3,9)")
}

fn criterion_9() -> Verdict {
    let mut t = Tally::default();
    let cells: Vec<(u8, usize)> = (1..=3).flat_map(|f| (1..=6).map(move |o| (f, o))).collect();
    let fams: Vec<FormalDeformation> = (1..=3).map(|f| deformation_family(f, 6).unwrap()).collect();
    let defects: Vec<bool> = cells.par_iter().map(|&(f, o)| defect_vanishes(&fams[f as usize - 1], o, WINDOW).unwrap()).collect();
    for (&(f, o), ok) in cells.iter().zip(defects) {
        t.ok(format!("family {f}: Jacobi at order {o}"), ok);
    }
    for f in 1..=3 {
        t.ok(format!("family {f}: embedding"), verify_embedding(f, WINDOW).unwrap());
    }
    let inv = distinguish_families(N).unwrap();
    t.eq("abelianizations", vec![(2, None), (1, Some(3)), (1, Some(2))], inv.iter().map(|i| (i.abelianization, i.derived_abelianization)).collect());
    let verdicts: Vec<&str> = (1..=3)
        .map(|f| {
            let v = singularity_test(&deformation_family(f, K).unwrap(), K, WINDOW).unwrap();
            t.ok(format!("family {f}: verdict certificates verify"), v.verify().is_ok());
            v.label()
        })
        .collect();
    t.eq("verdicts", vec!["NonSingular", "Singular", "NonSingular"], verdicts);
    t.done("Jacobi, embeddings, (2;-), (1,3), (1,2), NonSingular/Singular/NonSingular")
}

fn criterion_10() -> Verdict {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut t = Tally::default();
    for i in 0..30 {
        let (degree, weight) = (1 + i % 2, rng.gen_range(0..=10));
        let c = random_table(&mut rng, degree, weight, 24, 0.3);
        t.ok(format!("d^2 = 0 on sample {i}"), d_squared_failures(&c, if degree == 1 { 15 } else { 10 }).is_empty());
    }
    for i in 0..30 {
        let (p, r) = (1 + i % 2, 1 + (i / 2) % 2);
        let (wb, wg) = (rng.gen_range(0..=3), rng.gen_range(1..=3));
        let b = random_table(&mut rng, p, wb, 12, 0.4);
        let g = random_table(&mut rng, r, wg, 12, 0.4);
        t.ok(format!("graded symmetry on sample {i}"), graded_symmetric(&b, &g, 9));
        t.ok(format!("Leibniz on sample {i}"), leibniz_signs(&b, &g, 7).contains(&leibniz_expected(r)));
    }
    let mut signs = Vec::new();
    for _ in 0..50 {
        let (degree, weight) = (rng.gen_range(1..=2), rng.gen_range(-2..=6));
        let c = random_table(&mut rng, degree, weight, weight + 12, 0.5);
        let a = random_chain(&mut rng, degree + 1, weight, 8, 6);
        signs.extend(adjoint_sign(&c, &a));
    }
    signs.sort_unstable();
    signs.dedup();
    t.ok(format!("one global adjoint sign, saw {signs:?}"), signs.len() == 1 && signs[0] != 0);
    for qq in 1..=3 {
        for k in -2..=8 {
            t.ok(format!("subcomplex q={qq} k={k}"), subcomplex_holds(qq, k, 10));
        }
    }
    for cert in h2_basis().unwrap() {
        let c = dmu(cert.weight).unwrap();
        t.ok(format!("{} certificate re-verifies", cert.label), verifies(&cert.outcome, &c));
        if let Some(ClassCertificate::NonzeroViaCycle { cycle, pairing }) = cert.outcome.certificate() {
            let tampered = ClassCertificate::NonzeroViaCycle { cycle: cycle.clone(), pairing: pairing + &Rational::one() };
            t.ok(format!("tampered {} certificate is rejected", cert.label), tampered.verify(&c).is_err());
        }
    }
    t.done("d^2, graded symmetry, Leibniz, adjointness, subcomplex, certificates")
}

#[test]
fn acceptance() {
    let criteria: [(u8, fn() -> Verdict); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    println!();
    let mut failed = Vec::new();
    for (n, f) in criteria {
        match f() {
            Ok(summary) => println!("criterion {n}: PASS {summary}"),
            Err(bad) => {
                println!("criterion {n}: FAIL {}", bad.join("; "));
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
