//! Independent ground truth for extremeness.
//!
//! [`verify_extreme`] decides whether a point is a convex combination of the
//! others by projecting it onto their hull, and [`hull_2d`] is a classical
//! planar hull with exact orientation tests.

use std::collections::BTreeSet;

use robust::{orient2d, Coord};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::points::{PointId, PointSet, Tolerances};
use crate::qp::Projector;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExtremenessVerdict {
    pub point: PointId,
    pub is_extreme: bool,
    /// Euclidean distance from the point to the hull of all other points;
    /// 0 when the point is representable. Infinite for a lone point.
    pub alpha: f64,
}

/// Classifies `l` by its distance to `conv(A \ {x_l})`.
///
/// The distance is positive exactly when no convex combination of the other
/// points reproduces `x_l`, the same zero/non-zero split as the L1 slack
/// formulation of extremeness.
pub fn verify_extreme(ps: &PointSet, l: PointId, tol: &Tolerances) -> Result<ExtremenessVerdict> {
    verify_with(&mut Projector::new(), ps, l, tol)
}

fn verify_with(solver: &mut Projector, ps: &PointSet, l: PointId, tol: &Tolerances) -> Result<ExtremenessVerdict> {
    ps.check(l)?;
    if ps.len() == 1 {
        return Ok(ExtremenessVerdict { point: l, is_extreme: true, alpha: f64::INFINITY });
    }
    let others: Vec<PointId> = ps.ids().filter(|&i| i != l).collect();
    let r = solver.project(ps, ps.point(l), &others, tol, None)?;
    let d = r.distance();
    let alpha = if d <= tol.eps_zero { 0.0 } else { d };
    Ok(ExtremenessVerdict { point: l, is_extreme: alpha > tol.eps_zero, alpha })
}

/// Extreme ids by `n` independent [`verify_extreme`] calls.
pub fn classify_all_bruteforce(ps: &PointSet, tol: &Tolerances) -> Result<BTreeSet<PointId>> {
    let mut solver = Projector::new();
    let mut out = BTreeSet::new();
    for l in ps.ids() {
        if verify_with(&mut solver, ps, l, tol)?.is_extreme {
            out.insert(l);
        }
    }
    Ok(out)
}

/// Vertex ids of the planar hull (edge-interior collinear points excluded).
pub fn hull_2d(ps: &PointSet) -> Result<BTreeSet<PointId>> {
    Ok(hull_2d_ordered(ps)?.into_iter().collect())
}

/// Hull vertices in counter-clockwise order, starting at the
/// lexicographically smallest point.
///
/// Andrew's monotone chain. Orientation signs come from an adaptive exact
/// predicate, so the result is exact for any finite input.
pub fn hull_2d_ordered(ps: &PointSet) -> Result<Vec<PointId>> {
    chain(ps, false)
}

/// True when some input point lies exactly on a hull edge without being a
/// vertex. Such inputs make vertex sets sensitive to tie handling.
pub fn has_collinear_boundary_points(ps: &PointSet) -> Result<bool> {
    Ok(chain(ps, true)?.len() != chain(ps, false)?.len())
}

fn chain(ps: &PointSet, keep_collinear: bool) -> Result<Vec<PointId>> {
    if ps.dim() != 2 {
        return Err(Error::Usage(format!("hull_2d needs 2-dimensional points, got {}", ps.dim())));
    }
    let coord = |id: PointId| {
        let p = ps.point(id);
        Coord { x: p[0], y: p[1] }
    };
    let mut ids: Vec<PointId> = ps.ids().collect();
    ids.sort_by(|&a, &b| {
        let (pa, pb) = (ps.point(a), ps.point(b));
        pa[0].total_cmp(&pb[0]).then(pa[1].total_cmp(&pb[1]))
    });
    if ids.len() <= 2 {
        return Ok(ids);
    }
    // pop while the turn is clockwise (or straight, unless collinear points are kept)
    let bad_turn = |a: PointId, b: PointId, c: PointId| {
        let o = orient2d(coord(a), coord(b), coord(c));
        if keep_collinear {
            o < 0.0
        } else {
            o <= 0.0
        }
    };
    let mut hull: Vec<PointId> = Vec::with_capacity(2 * ids.len());
    for &p in &ids {
        while hull.len() >= 2 && bad_turn(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in ids.iter().rev().skip(1) {
        while hull.len() >= lower && bad_turn(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if keep_collinear {
        // all-collinear input walks the line twice
        let mut seen = BTreeSet::new();
        hull.retain(|id| seen.insert(*id));
    }
    Ok(hull)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table1;

    fn labels(s: &BTreeSet<PointId>) -> Vec<usize> {
        s.iter().map(|p| p.label()).collect()
    }

    #[test]
    fn table1_verdicts() {
        let ps = table1();
        let t = Tolerances::for_points(&ps).with_eps_zero(1e-8);
        let v8 = verify_extreme(&ps, PointId(7), &t).unwrap();
        assert!(!v8.is_extreme);
        assert_eq!(v8.alpha, 0.0);
        let v9 = verify_extreme(&ps, PointId(8), &t).unwrap();
        assert!(v9.is_extreme && v9.alpha > 1.0);
        assert_eq!(labels(&classify_all_bruteforce(&ps, &t).unwrap()), vec![1, 2, 3, 4, 5, 6, 9]);
        assert_eq!(labels(&hull_2d(&ps).unwrap()), vec![1, 2, 3, 4, 5, 6, 9]);
    }

    #[test]
    fn small_sets() {
        let two = PointSet::new(vec![vec![0.0, 1.0], vec![3.0, 5.0]]).unwrap();
        let t = Tolerances::for_points(&two);
        assert!(verify_extreme(&two, PointId(0), &t).unwrap().is_extreme);
        assert!(verify_extreme(&two, PointId(1), &t).unwrap().is_extreme);
        let one = PointSet::new(vec![vec![1.0, 1.0]]).unwrap();
        let v = verify_extreme(&one, PointId(0), &Tolerances::for_points(&one)).unwrap();
        assert!(v.is_extreme);

        let tri = PointSet::new(vec![vec![0.0, 0.0], vec![4.0, 1.0], vec![1.0, 3.0]]).unwrap();
        assert_eq!(hull_2d(&tri).unwrap().len(), 3);
        let line = PointSet::new(vec![vec![0.0, 0.0], vec![2.0, 2.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(labels(&hull_2d(&line).unwrap()), vec![1, 2]);
        assert!(has_collinear_boundary_points(&line).unwrap());
        assert!(!has_collinear_boundary_points(&tri).unwrap());
    }

    #[test]
    fn hull_2d_requires_planar_input() {
        let ps = PointSet::new(vec![vec![0.0, 0.0, 0.0]]).unwrap();
        assert!(matches!(hull_2d(&ps), Err(Error::Usage(_))));
    }

    #[test]
    fn regular_simplex_with_centroid() {
        let ps = PointSet::new(vec![
            vec![1.0, 1.0, 1.0],
            vec![1.0, -1.0, -1.0],
            vec![-1.0, 1.0, -1.0],
            vec![-1.0, -1.0, 1.0],
            vec![0.0, 0.0, 0.0],
        ])
        .unwrap();
        let t = Tolerances::for_points(&ps);
        assert_eq!(labels(&classify_all_bruteforce(&ps, &t).unwrap()), vec![1, 2, 3, 4]);
    }

    #[test]
    fn ordered_hull_is_counter_clockwise() {
        let ps = table1();
        let order = hull_2d_ordered(&ps).unwrap();
        let n = order.len();
        for i in 0..n {
            let (a, b, c) = (order[i], order[(i + 1) % n], order[(i + 2) % n]);
            let (a, b, c) = (ps.point(a), ps.point(b), ps.point(c));
            let cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
            assert!(cross > 0.0);
        }
    }

    #[test]
    fn verdict_survives_scaling_and_permutation() {
        let ps = table1();
        let t = Tolerances::for_points(&ps);
        let base = classify_all_bruteforce(&ps, &t).unwrap();
        let scaled = PointSet::new(ps.rows().map(|r| r.iter().map(|x| x * 1e-3).collect()).collect()).unwrap();
        let ts = Tolerances::for_points(&scaled);
        assert_eq!(classify_all_bruteforce(&scaled, &ts).unwrap(), base);
        let v = verify_extreme(&ps, PointId(8), &t).unwrap();
        let vs = verify_extreme(&scaled, PointId(8), &ts).unwrap();
        assert!((vs.alpha - v.alpha * 1e-3).abs() < 1e-9);

        let mut rows = ps.to_rows();
        rows.reverse();
        let rev = PointSet::new(rows).unwrap();
        let vr = verify_extreme(&rev, PointId(0), &t).unwrap();
        assert!((vr.alpha - v.alpha).abs() < 1e-9);
    }
}
