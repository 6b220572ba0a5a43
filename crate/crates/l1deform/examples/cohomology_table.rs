//! Dimensions of H^q_(k)(L1; L1) with an independent cross-check.
//!
//! `cargo run --release --example cohomology_table -- 2 0 8`

use l1deform::cohomology::{cohomology_dim, default_truncations};

fn main() -> l1deform::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (q, lo, hi) = match args.as_slice() {
        [q, lo, hi] => (*q as usize, *lo, *hi),
        _ => (2, 0, 8),
    };
    println!("{:>3} {:>24} {:>6} {:>12}", "k", "(N, dim)", "value", "cross-check");
    for k in lo..=hi {
        let r = cohomology_dim(q, k, &default_truncations(k))?;
        let value = r.value.map_or("-".to_string(), |v| v.to_string());
        let cc = r.cross_check.as_ref().map_or("-".to_string(), |c| format!("{} ({})", c.dim, if c.agrees { "agrees" } else { "DIFFERS" }));
        println!("{k:>3} {:>24} {value:>6} {cc:>12}", format!("{:?}", r.dims));
    }
    Ok(())
}
