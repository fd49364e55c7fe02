//! Gaussian clouds in up to 12 dimensions, checked against the brute-force
//! classifier.

use std::time::Instant;

use exhull::{classify_all_bruteforce, construct_hull, generate, Corpus, HullConfig};

fn main() -> exhull::Result<()> {
    println!("{:>3} {:>5} {:>9} {:>9} {:>7} {:>9} {:>9}", "m", "n", "extremes", "solves", "growth", "ms", "oracle ms");
    for m in [3, 6, 9, 12] {
        let n = 400;
        let ps = generate(Corpus::Gaussian, n, m, 42)?;
        let cfg = HullConfig::for_points(&ps);
        let t0 = Instant::now();
        let res = construct_hull(&ps, &cfg)?;
        let ours = t0.elapsed();
        let t1 = Instant::now();
        let truth = classify_all_bruteforce(&ps, &cfg.tolerances)?;
        let oracle = t1.elapsed();
        assert_eq!(res.extreme_ids, truth);
        println!(
            "{m:>3} {n:>5} {:>9} {:>9} {:>7} {:>9.1} {:>9.1}",
            res.extreme_ids.len(),
            res.total_qp_solves,
            res.growth_iterations(),
            ours.as_secs_f64() * 1e3,
            oracle.as_secs_f64() * 1e3
        );
    }
    Ok(())
}
