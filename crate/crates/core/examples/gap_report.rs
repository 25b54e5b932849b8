//! Gap report over the triangle-free graphs on up to 6 vertices.

use kmeans_hardness::harness::{gap_report, render_gap_report, triangle_free_suite, KRule, OutputFormat, RunConfig};

fn main() -> kmeans_hardness::Result<()> {
    let suite = triangle_free_suite(6);
    let cfg = RunConfig::default();
    let rows = gap_report(&suite, KRule::Vc(0), &cfg)?;
    print!("{}", render_gap_report(&rows, OutputFormat::Tsv));
    let tight = rows.iter().filter(|r| r.kmeans_opt.is_some_and(|o| o == (r.bound as i64).into())).count();
    println!("{} graphs, optimum equals m - VC on {tight}, all consistent: {}", rows.len(), rows.iter().all(|r| r.consistent()));
    Ok(())
}
