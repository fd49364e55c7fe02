//! Reads a CSV file and writes the JSON run report.
//!
//! `cargo run --example csv_report -- data/table1.csv report.json`

use exhull::report::{InputSummary, RunReport};
use exhull::{construct_hull, ingest_csv, HullConfig};

fn main() -> exhull::Result<()> {
    let mut args = std::env::args().skip(1);
    let input = args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/table1.csv").into());
    let output = args.next();

    let ing = ingest_csv(&input)?;
    let ps = ing.points;
    let cfg = HullConfig::for_points(&ps);
    let res = construct_hull(&ps, &cfg)?;
    let summary = InputSummary { n: ps.len(), m: ps.dim(), source: input, dropped_lines: ing.dropped_lines, precentered: false };
    let report = RunReport::new(&ps, summary, &cfg, &res, false);
    match output {
        Some(path) => {
            report.write_atomic(&path)?;
            println!("wrote {path}");
        }
        None => print!("{}", report.to_json()?),
    }
    Ok(())
}
