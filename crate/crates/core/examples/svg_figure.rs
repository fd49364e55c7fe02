//! Writes a traced figure of the planar instance.
//!
//! `cargo run --example svg_figure -- out.svg`

use exhull::report::{InputSummary, RunReport};
use exhull::{construct_hull, table1, HullConfig, InitStrategy};

fn main() -> exhull::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "table1.svg".into());
    let ps = table1();
    // single-seed runs grow more, which gives more arrows to look at
    let cfg = HullConfig::for_points(&ps).with_init(InitStrategy::SingleSeed(None));
    let res = construct_hull(&ps, &cfg)?;
    let input = InputSummary { n: ps.len(), m: ps.dim(), source: "table1".into(), dropped_lines: vec![], precentered: false };
    let report = RunReport::new(&ps, input, &cfg, &res, true);
    exhull::svg::write(&path, &ps, &report)?;
    println!("wrote {path}");
    Ok(())
}
