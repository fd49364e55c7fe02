//! Runs the nine-point planar instance and prints how each point was settled.

use exhull::{construct_hull, table1, HullConfig};

fn main() -> exhull::Result<()> {
    let ps = table1();
    let res = construct_hull(&ps, &HullConfig::for_points(&ps))?;

    let labels = |ids: &[exhull::PointId]| ids.iter().map(|p| p.label().to_string()).collect::<Vec<_>>().join(",");
    let seeds: Vec<_> = res.seed.e_prime.iter().copied().collect();
    println!("axis seeds: {{{}}}", labels(&seeds));
    for t in &res.traces {
        println!(
            "point {}: R = {{{}}} -> {{{}}}, {} solve(s), {} refinement(s)",
            t.point.label(),
            labels(&t.initial_reference),
            labels(&t.final_reference),
            t.qp_solves,
            t.refine_steps
        );
        for s in &t.steps {
            let added = s.added.map_or(String::new(), |p| format!(", add {}", p.label()));
            println!("    d^{} = {:.6}{added}", s.k, s.distance);
        }
    }
    let extremes: Vec<_> = res.extreme_ids.iter().copied().collect();
    println!("extreme points: {{{}}}", labels(&extremes));
    Ok(())
}
