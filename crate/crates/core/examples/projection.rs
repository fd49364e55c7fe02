//! Projects a point onto the hull of three others and checks the optimality
//! certificate by hand.

use exhull::qp::verify_certificate;
use exhull::{PointId, PointSet, Projector, Tolerances};

fn main() -> exhull::Result<()> {
    let ps = PointSet::new(vec![vec![0.0, 0.0, 0.0], vec![4.0, 0.0, 0.0], vec![0.0, 4.0, 0.0]])?;
    let tol = Tolerances::for_points(&ps);
    let members: Vec<PointId> = ps.ids().collect();
    let z = [3.0, 3.0, 2.0];

    let mut solver = Projector::new();
    let r = solver.project(&ps, &z, &members, &tol, None)?;
    println!("lambda = {:?}", r.lambda);
    println!("projection = {:?}", r.projection(&z));
    println!("distance = {:.6} (expected {:.6})", r.distance(), (2.0f64 + 4.0).sqrt());
    println!("kkt residual = {:.2e}, pivots = {}", r.kkt_residual, r.pivots);
    println!("certificate: {:?}", verify_certificate(&ps, &z, &members, &r, &tol));

    // A warm start from the previous weights reaches the same optimum.
    let again = solver.project(&ps, &[3.0, 3.0, 1.0], &members, &tol, Some(&r.lambda))?;
    println!("warm-started distance = {:.6}, pivots = {}", again.distance(), again.pivots);
    Ok(())
}
