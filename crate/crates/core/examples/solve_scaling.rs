//! Counts projection solves as the cube corpus doubles in size.

use std::time::Instant;

use exhull::{construct_hull, generate, Corpus, HullConfig, InitStrategy};

fn main() -> exhull::Result<()> {
    for (name, init) in [("simplex", InitStrategy::Simplex), ("single-seed", InitStrategy::SingleSeed(None))] {
        println!("{name}:");
        let mut last = None;
        for n in [250, 500, 1000, 2000, 4000] {
            let ps = generate(Corpus::Cube, n, 4, 1)?;
            let t = Instant::now();
            let res = construct_hull(&ps, &HullConfig::for_points(&ps).with_init(init))?;
            let solves = res.total_qp_solves;
            let ratio = last.map_or(String::new(), |l: usize| format!("  x{:.2}", solves as f64 / l as f64));
            println!(
                "  n={n:>5}  h={:>4}  solves={solves:>6}  growth={:>5}  {:>8.1} ms{ratio}",
                res.extreme_ids.len(),
                res.growth_iterations(),
                t.elapsed().as_secs_f64() * 1e3
            );
            last = Some(solves);
        }
    }
    Ok(())
}
