//! Running named checks from code, with a result cache, and rendering
//! the reports.

use l1deform::cli::cache::Cache;
use l1deform::cli::checks::{run_checks, Context, Settings};
use l1deform::cli::report::{overall, render, Format};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let ctx = Context::new(Settings::default()).with_cache(Some(Cache::open(dir.path())?));
    let ids: Vec<String> = ["sec4.pairings", "lemma5.8", "families.distinguish"].iter().map(|s| s.to_string()).collect();
    let reports = run_checks(&ids, &ctx)?;
    print!("{}", render(&reports, Format::Table));
    print!("{}", render(&reports[..1], Format::Json));
    println!("overall: {}", overall(&reports));
    Ok(())
}
