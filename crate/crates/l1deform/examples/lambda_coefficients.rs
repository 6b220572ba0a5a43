//! The coefficients a(k,l,s,t), the L1-valued combinations of lambdas and
//! d mu's, and the linear relations their classes must satisfy.

use l1deform::cochain::{extract_a, l1_valued_combinations};
use l1deform::cohomology::lambda_relation_scan;

fn main() -> l1deform::Result<()> {
    for (k, l) in [(2, 2), (2, 3), (3, 3)] {
        let row: Vec<String> = (1..=6).flat_map(|s| (s + 1..=6).map(move |t| (s, t))).map(|(s, t)| extract_a(k, l, s, t).map(|a| format!("{a}"))).collect::<Result<_, _>>()?;
        println!("a({k},{l},s,t), s<t<=6: {}", row.join(" "));
    }
    for w in l1_valued_combinations()? {
        println!("weight {}: {}", w.weight, w.label);
        for (c, t, v) in &w.exceptional {
            println!("    {c}{t:?} = {v}");
        }
    }
    for weight in [7, 8] {
        let r = lambda_relation_scan(weight, 28)?;
        println!("weight {weight}: constituents {:?}, relation {:?}, ray {:?}", r.constituents, r.relation, r.ray);
    }
    Ok(())
}
