//! Initial extreme points and per-point starting reference sets.
//!
//! Extreme points are discovered by maximizing linear functionals: a point
//! that is the unique maximizer of `⟨x, v⟩` for some `v ≠ 0` cannot be a
//! convex combination of the others. [`axis_extremes`] applies this to the
//! `±` coordinate axes. [`nearest_hyperplane`] and [`establish_simplex`]
//! then build, for one query point, a small reference set that is likely to
//! enclose it.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::points::{dot, norm, sign_pattern, transform_centered, MemberOrigin, PointId, PointSet, ReferenceSet, Tolerances};

/// Maximizer of a linear functional over the whole point set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ArgMax {
    pub winner: PointId,
    /// False when another point comes within `eps_tie` of the maximum.
    pub unique: bool,
}

impl ArgMax {
    pub fn origin(self) -> MemberOrigin {
        if self.unique {
            MemberOrigin::Argmax
        } else {
            MemberOrigin::TiedArgmax
        }
    }
}

/// One direction probed during axis seeding.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirectionPick {
    pub direction: Vec<f64>,
    pub winner: PointId,
    pub unique: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SeedState {
    pub e_prime: BTreeSet<PointId>,
    pub log: Vec<DirectionPick>,
}

/// Index maximizing `⟨x_i, v⟩`, lowest index on ties.
///
/// Inner products are taken against `v / ‖v‖` so that `eps_tie` is a
/// distance, independent of the direction's length.
pub fn argmax_direction(ps: &PointSet, v: &[f64], tol: &Tolerances) -> Result<ArgMax> {
    if v.len() != ps.dim() {
        return Err(Error::Usage(format!("direction has dimension {}, expected {}", v.len(), ps.dim())));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("direction".into()));
    }
    let len = norm(v);
    if len == 0.0 {
        return Err(Error::Usage("direction must be non-zero".into()));
    }
    let unit: Vec<f64> = v.iter().map(|x| x / len).collect();
    let values: Vec<f64> = ps.rows().map(|x| dot(x, &unit)).collect();
    let (winner, best) = values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &s)| if s > acc.1 { (i, s) } else { acc });
    let unique = values
        .iter()
        .enumerate()
        .all(|(i, &s)| i == winner || best - s > tol.eps_tie);
    Ok(ArgMax { winner: PointId(winner), unique })
}

/// Probes `-e_c` then `+e_c` for every axis `c`. Unique winners form `E′`;
/// tied directions are logged and contribute nothing.
pub fn axis_extremes(ps: &PointSet, tol: &Tolerances) -> SeedState {
    let m = ps.dim();
    let mut state = SeedState::default();
    for c in 0..m {
        for sign in [-1.0, 1.0] {
            let mut direction = vec![0.0; m];
            direction[c] = sign;
            let pick = argmax_direction(ps, &direction, tol).expect("axis directions are non-zero");
            if pick.unique {
                state.e_prime.insert(pick.winner);
            }
            state.log.push(DirectionPick { direction, winner: pick.winner, unique: pick.unique });
        }
    }
    state
}

/// Picks up to `m` points of `e_prime` for query `l`, nearest first, skipping
/// any point whose centered sign pattern repeats one already taken.
///
/// Every point of the shrinking pool that shares the picked point's sign
/// pattern (the pick included) is removed before the next pick.
pub fn nearest_hyperplane(
    ps: &PointSet,
    l: PointId,
    e_prime: &BTreeSet<PointId>,
    tol: &Tolerances,
) -> Result<ReferenceSet> {
    if e_prime.is_empty() {
        return Err(Error::Usage("nearest_hyperplane needs a non-empty extreme set".into()));
    }
    if e_prime.contains(&l) {
        return Err(Error::Usage(format!("query point {l} is already in the extreme set")));
    }
    let ids: Vec<PointId> = e_prime.iter().copied().collect();
    let centered = transform_centered(ps, l, &ids)?;
    let mut pool: Vec<(PointId, f64, Vec<i8>)> = ids
        .iter()
        .zip(&centered)
        .map(|(&id, x)| (id, norm(x), sign_pattern(x, tol.eps_sign)))
        .collect();

    let mut r = ReferenceSet::new(l);
    while r.len() < ps.dim() && !pool.is_empty() {
        // pool is in ascending id order, so the first minimum has the lowest id
        let nearest = pool
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, e)| if e.1 < acc.1 { (i, e.1) } else { acc })
            .0;
        let (id, _, pattern) = pool[nearest].clone();
        pool.retain(|e| e.2 != pattern);
        r.push(id, MemberOrigin::KnownExtreme);
    }
    Ok(r)
}

/// Result of [`establish_simplex`].
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexOutcome {
    pub reference: ReferenceSet,
    /// The final argmax pick and whether it was new to the reference set.
    pub pick: ArgMax,
    pub added: bool,
    /// Direction refinements performed (at most `max_refine`).
    pub refinements: usize,
    /// Every direction tried, in order.
    pub directions: Vec<Vec<f64>>,
}

/// Extends `r` by the maximizer of the direction from the centroid of its
/// centered members toward the query. While the maximizer is already in the
/// working list, it is appended again (so the mean is weighted by
/// multiplicity) and the direction recomputed, at most `max_refine` times.
pub fn establish_simplex(ps: &PointSet, r: &ReferenceSet, tol: &Tolerances) -> Result<SimplexOutcome> {
    if r.is_empty() {
        return Err(Error::Usage("establish_simplex needs a non-empty reference set".into()));
    }
    let l = r.owner();
    let m = ps.dim();
    let mut list: Vec<PointId> = r.members().to_vec();
    let mut sum = vec![0.0; m];
    for x in transform_centered(ps, l, &list)? {
        sum.iter_mut().zip(&x).for_each(|(s, x)| *s += x);
    }
    let direction = |sum: &[f64], count: usize| -> Vec<f64> { sum.iter().map(|s| -s / count as f64).collect() };

    let mut directions = Vec::new();
    let mut v = direction(&sum, list.len());
    // A query sitting exactly at the members' centroid leaves no direction.
    if norm(&v) == 0.0 {
        return Ok(SimplexOutcome {
            reference: r.clone(),
            pick: ArgMax { winner: r.members()[0], unique: false },
            added: false,
            refinements: 0,
            directions,
        });
    }
    let mut pick = argmax_direction(ps, &v, tol)?;
    directions.push(v);
    let mut refinements = 0;
    while list.contains(&pick.winner) && refinements < tol.max_refine {
        refinements += 1;
        list.push(pick.winner);
        let x = transform_centered(ps, l, &[pick.winner])?.pop().unwrap();
        sum.iter_mut().zip(&x).for_each(|(s, x)| *s += x);
        v = direction(&sum, list.len());
        if norm(&v) == 0.0 {
            break;
        }
        pick = argmax_direction(ps, &v, tol)?;
        directions.push(v);
    }
    let mut reference = r.clone();
    let added = reference.push(pick.winner, pick.origin());
    Ok(SimplexOutcome { reference, pick, added, refinements, directions })
}
