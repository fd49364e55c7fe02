//! Compares the construction with a monotone-chain hull on random squares.

use exhull::oracle::has_collinear_boundary_points;
use exhull::{construct_hull, generate, hull_2d, Corpus, HullConfig};

fn main() -> exhull::Result<()> {
    let mut agree = 0;
    for seed in 0..20 {
        let ps = generate(Corpus::Cube, 2000, 2, seed)?;
        if has_collinear_boundary_points(&ps)? {
            println!("seed {seed}: collinear boundary points, skipped");
            continue;
        }
        let res = construct_hull(&ps, &HullConfig::for_points(&ps))?;
        let reference = hull_2d(&ps)?;
        if res.extreme_ids == reference {
            agree += 1;
        } else {
            println!("seed {seed}: {:?} vs {:?}", res.extreme_ids, reference);
        }
        println!("seed {seed}: {} vertices, {} solves", reference.len(), res.total_qp_solves);
    }
    println!("{agree} of 20 instances agree");
    Ok(())
}
