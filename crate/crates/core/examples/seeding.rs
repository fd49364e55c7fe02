//! Builds the starting reference sets for points 8 and 7 of the planar
//! instance.

use std::collections::BTreeSet;

use exhull::{axis_extremes, establish_simplex, nearest_hyperplane, table1, PointId, Tolerances};

fn main() -> exhull::Result<()> {
    let ps = table1();
    let tol = Tolerances::for_points(&ps);
    let seed = axis_extremes(&ps, &tol);
    for pick in &seed.log {
        println!("direction {:?}: point {} (unique: {})", pick.direction, pick.winner.label(), pick.unique);
    }
    let e_prime: BTreeSet<PointId> = seed.e_prime;

    for label in [8, 7] {
        let l = PointId(label - 1);
        let r = nearest_hyperplane(&ps, l, &e_prime, &tol)?;
        let near: Vec<usize> = r.members().iter().map(|p| p.label()).collect();
        let out = establish_simplex(&ps, &r, &tol)?;
        println!("point {label}: nearest sign-diverse extremes {near:?}");
        for (k, v) in out.directions.iter().enumerate() {
            println!("    v_{k} = {v:?}");
        }
        let members: Vec<usize> = out.reference.members().iter().map(|p| p.label()).collect();
        println!("    pick {} after {} refinement(s), R = {members:?}", out.pick.winner.label(), out.refinements);
    }
    Ok(())
}
