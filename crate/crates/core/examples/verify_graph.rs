//! The invariant suite that `kmh verify` runs, applied to a few graphs.

use kmeans_hardness::harness::{verify_instance, OutputFormat, RunConfig};
use kmeans_hardness::Graph;

fn main() -> kmeans_hardness::Result<()> {
    let cfg = RunConfig::default();
    for (name, g) in [("P5", Graph::path(5)), ("C5", Graph::cycle(5)), ("K4", Graph::complete(4))] {
        let report = verify_instance(&g, None, &cfg)?;
        println!("== {name}: {} failed, {} skipped", report.failed(), report.skipped());
        print!("{}", report.render(OutputFormat::Tsv));
    }
    Ok(())
}
