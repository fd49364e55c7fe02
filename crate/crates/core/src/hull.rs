//! Exact extreme-point construction.
//!
//! Each point not yet known to be extreme is projected onto the hull of a
//! small reference set. While the distance is positive, the residual
//! direction `v* = x_l − p` is maximized over the whole set, and the winner
//! joins the reference set. The winner satisfies `⟨v*, x_new⟩ ≥ ⟨v*, x_l⟩ >
//! ⟨v*, x_i⟩` for every current member, so each step strictly shrinks the
//! distance and the loop ends after at most `h` additions. Unique winners are
//! extreme; once every point is enclosed by its reference set, the collected
//! winners are exactly the vertex set.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::verify_extreme;
use crate::points::{dot, norm, MemberOrigin, PointId, PointSet, ReferenceSet, Tolerances};
use crate::qp::{ProjectionResult, Projector};
use crate::seeding::{argmax_direction, axis_extremes, establish_simplex, nearest_hyperplane, ArgMax, SeedState};

/// How the reference set of each query point starts out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitStrategy {
    /// Nearest sign-diverse known extremes plus one argmax pick.
    #[default]
    Simplex,
    /// One point: the given seed, or the nearest known extreme.
    SingleSeed(Option<PointId>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProcessingOrder {
    #[default]
    Index,
    /// Listed ids first, in order; unlisted ids follow in ascending order.
    Given(Vec<PointId>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct HullConfig {
    pub tolerances: Tolerances,
    pub init: InitStrategy,
    pub order: ProcessingOrder,
}

impl HullConfig {
    pub fn new(tolerances: Tolerances) -> Self {
        HullConfig { tolerances, init: InitStrategy::default(), order: ProcessingOrder::default() }
    }

    pub fn for_points(ps: &PointSet) -> Self {
        Self::new(Tolerances::for_points(ps))
    }

    pub fn with_init(mut self, init: InitStrategy) -> Self {
        self.init = init;
        self
    }

    pub fn with_order(mut self, order: ProcessingOrder) -> Self {
        self.order = order;
        self
    }
}

/// One projection in a point's growth loop.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub k: usize,
    /// `d(x_l, R^k)`.
    pub distance: f64,
    /// Point added after this projection; `None` on the final step.
    pub added: Option<PointId>,
    pub reference_size: usize,
    /// `v* = x_l − Σ λ_i x_i` of this projection.
    pub residual: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationTrace {
    pub point: PointId,
    /// Reference set right after initialization.
    pub initial_reference: Vec<PointId>,
    pub final_reference: Vec<PointId>,
    pub steps: Vec<TraceStep>,
    pub qp_solves: usize,
    pub refine_steps: usize,
}

impl IterationTrace {
    /// Reference-set additions made by the growth loop.
    pub fn growth_iterations(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn final_distance(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.distance)
    }

    /// First step `k` whose distance fails to drop strictly below step
    /// `k - 1` while both are positive.
    pub fn first_non_decrease(&self) -> Option<usize> {
        self.steps
            .windows(2)
            .find(|w| w[0].distance > 0.0 && w[1].distance > 0.0 && w[1].distance >= w[0].distance)
            .map(|w| w[1].k)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HullResult {
    pub extreme_ids: BTreeSet<PointId>,
    pub seed: SeedState,
    pub traces: Vec<IterationTrace>,
    pub total_qp_solves: usize,
    /// Solves spent confirming tied or seeded candidates with the oracle.
    pub verification_solves: usize,
    /// `(processed point, |E′| afterwards)`.
    pub e_prime_growth: Vec<(PointId, usize)>,
}

impl HullResult {
    pub fn growth_iterations(&self) -> usize {
        self.traces.iter().map(IterationTrace::growth_iterations).sum()
    }

    pub fn refine_steps(&self) -> usize {
        self.traces.iter().map(|t| t.refine_steps).sum()
    }
}

/// Members of `r` that may join the extreme set right away: those whose
/// origin already proves extremeness. Seeds and tied picks are left to
/// [`pending_verification`].
pub fn active(r: &ReferenceSet, _proj: &ProjectionResult) -> BTreeSet<PointId> {
    r.iter().filter(|(_, o)| o.is_certified()).map(|(id, _)| id).collect()
}

/// Uncertified members carrying positive weight in the final projection;
/// they are candidates for an explicit extremeness check. Uncertified
/// members with zero weight are dropped without one.
pub fn pending_verification(r: &ReferenceSet, proj: &ProjectionResult) -> Vec<PointId> {
    r.iter()
        .filter(|(id, o)| !o.is_certified() && proj.support.contains(id))
        .map(|(id, _)| id)
        .collect()
}

/// Computes the extreme points of `ps`.
pub fn construct_hull(ps: &PointSet, config: &HullConfig) -> Result<HullResult> {
    Driver::new(ps, config)?.run()
}

struct Driver<'a> {
    ps: &'a PointSet,
    tol: Tolerances,
    config: &'a HullConfig,
    solver: Projector,
    e_prime: BTreeSet<PointId>,
    /// Points left for processing (the `T` pool).
    pending: Vec<bool>,
    verification_solves: usize,
}

impl<'a> Driver<'a> {
    fn new(ps: &'a PointSet, config: &'a HullConfig) -> Result<Self> {
        config.tolerances.validate()?;
        Ok(Driver {
            ps,
            tol: config.tolerances,
            config,
            solver: Projector::new(),
            e_prime: BTreeSet::new(),
            pending: vec![true; ps.len()],
            verification_solves: 0,
        })
    }

    fn run(mut self) -> Result<HullResult> {
        let mut seed = axis_extremes(self.ps, &self.tol);
        if seed.e_prime.is_empty() {
            let fallback = self.fallback_seed()?;
            seed.e_prime.insert(fallback);
        }
        self.e_prime = seed.e_prime.clone();
        for id in &self.e_prime {
            self.pending[id.0] = false;
        }

        let mut traces = Vec::new();
        let mut growth = Vec::new();
        for l in self.order()? {
            // discovered extremes and already processed points
            if !self.pending[l.0] || self.e_prime.contains(&l) {
                continue;
            }
            let trace = self.process(l)?;
            traces.push(trace);
            self.pending[l.0] = false;
            growth.push((l, self.e_prime.len()));
        }

        let total_qp_solves = traces.iter().map(|t: &IterationTrace| t.qp_solves).sum();
        Ok(HullResult {
            extreme_ids: self.e_prime,
            seed,
            traces,
            total_qp_solves,
            verification_solves: self.verification_solves,
            e_prime_growth: growth,
        })
    }

    /// When every axis direction ties, the lexicographically smallest point,
    /// probed along the direction from the centroid to it.
    fn fallback_seed(&self) -> Result<PointId> {
        let lex = self
            .ps
            .ids()
            .min_by(|&a, &b| {
                let (pa, pb) = (self.ps.point(a), self.ps.point(b));
                pa.iter()
                    .zip(pb)
                    .map(|(x, y)| x.total_cmp(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("point sets are non-empty");
        let c = self.ps.centroid();
        let v: Vec<f64> = self.ps.point(lex).iter().zip(&c).map(|(x, c)| x - c).collect();
        if norm(&v) == 0.0 {
            return Err(Error::Degenerate("all axis directions tie and no fallback direction exists".into()));
        }
        let pick = argmax_direction(self.ps, &v, &self.tol)?;
        if !pick.unique {
            return Err(Error::Degenerate("all axis directions tie and the fallback direction ties too".into()));
        }
        log::debug!("axis seeding tied everywhere; falling back to point {}", pick.winner);
        Ok(pick.winner)
    }

    fn order(&self) -> Result<Vec<PointId>> {
        match &self.config.order {
            ProcessingOrder::Index => Ok(self.ps.ids().collect()),
            ProcessingOrder::Given(list) => {
                let mut seen = vec![false; self.ps.len()];
                let mut out = Vec::with_capacity(self.ps.len());
                for &id in list {
                    self.ps.check(id)?;
                    if !std::mem::replace(&mut seen[id.0], true) {
                        out.push(id);
                    }
                }
                out.extend(self.ps.ids().filter(|id| !seen[id.0]));
                Ok(out)
            }
        }
    }

    fn initial_reference(&mut self, l: PointId) -> Result<(ReferenceSet, usize)> {
        match self.config.init {
            InitStrategy::Simplex => {
                let r = nearest_hyperplane(self.ps, l, &self.e_prime, &self.tol)?;
                let out = establish_simplex(self.ps, &r, &self.tol)?;
                Ok((out.reference, out.refinements))
            }
            InitStrategy::SingleSeed(seed) => {
                let mut r = ReferenceSet::new(l);
                match seed.filter(|&s| s != l) {
                    Some(s) => {
                        self.ps.check(s)?;
                        let origin = if self.e_prime.contains(&s) { MemberOrigin::KnownExtreme } else { MemberOrigin::Seed };
                        r.push(s, origin);
                    }
                    None => {
                        let x = self.ps.point(l);
                        let nearest = self
                            .e_prime
                            .iter()
                            .map(|&e| (e, dist_sq(self.ps.point(e), x)))
                            .fold((None, f64::INFINITY), |acc, (e, d)| if d < acc.1 { (Some(e), d) } else { acc })
                            .0
                            .expect("extreme set is non-empty");
                        r.push(nearest, MemberOrigin::KnownExtreme);
                    }
                }
                Ok((r, 0))
            }
        }
    }

    fn process(&mut self, l: PointId) -> Result<IterationTrace> {
        let (mut r, refine_steps) = self.initial_reference(l)?;
        let initial_reference = r.members().to_vec();
        let z = self.ps.point(l);
        let mut proj = self.solve(l, z, &r, None)?;
        let mut qp_solves = 1;
        let mut steps = Vec::new();
        let mut distance = proj.distance();

        while distance > self.tol.eps_zero {
            let k = steps.len();
            let pick = argmax_direction(self.ps, &proj.residual, &self.tol)?;
            if r.contains(pick.winner) {
                return Err(Error::Breakdown {
                    point: l,
                    step: k,
                    detail: format!("residual direction selected existing member {} at distance {distance:e}", pick.winner),
                });
            }
            steps.push(TraceStep {
                k,
                distance,
                added: Some(pick.winner),
                reference_size: r.len(),
                residual: proj.residual.clone(),
            });
            r.push(pick.winner, pick.origin());
            if pick.unique && pick.winner != l {
                self.pending[pick.winner.0] = false;
            }

            let mut warm = proj.lambda.clone();
            warm.push(0.0);
            proj = self.solve(l, z, &r, Some(&warm))?;
            qp_solves += 1;
            let next = proj.distance();
            if next > self.tol.eps_zero && next >= distance {
                return Err(Error::Breakdown {
                    point: l,
                    step: k + 1,
                    detail: format!("distance did not decrease: {distance:e} -> {next:e}"),
                });
            }
            distance = next;
        }
        steps.push(TraceStep {
            k: steps.len(),
            distance,
            added: None,
            reference_size: r.len(),
            residual: proj.residual.clone(),
        });

        self.e_prime.extend(active(&r, &proj));
        for id in pending_verification(&r, &proj) {
            if self.e_prime.contains(&id) {
                continue;
            }
            self.verification_solves += 1;
            if verify_extreme(self.ps, id, &self.tol)?.is_extreme {
                self.e_prime.insert(id);
                self.pending[id.0] = false;
            }
        }

        Ok(IterationTrace {
            point: l,
            initial_reference,
            final_reference: r.members().to_vec(),
            steps,
            qp_solves,
            refine_steps,
        })
    }

    fn solve(&mut self, l: PointId, z: &[f64], r: &ReferenceSet, warm: Option<&[f64]>) -> Result<ProjectionResult> {
        self.solver
            .project(self.ps, z, r.members(), &self.tol, warm)
            .map_err(|e| Error::Projection { point: l, source: Box::new(e) })
    }
}

fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Argmax pick along a residual, exposed for trace analysis.
pub fn residual_pick(ps: &PointSet, residual: &[f64], tol: &Tolerances) -> Result<ArgMax> {
    argmax_direction(ps, residual, tol)
}

/// `‖x_l − p‖` where `p` is the projection of `x_l` onto the segment
/// `[a, b]`, computed in closed form.
pub fn segment_distance(x: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let d: Vec<f64> = b.iter().zip(a).map(|(b, a)| b - a).collect();
    let w: Vec<f64> = x.iter().zip(a).map(|(x, a)| x - a).collect();
    let dd = dot(&d, &d);
    let t = if dd == 0.0 { 0.0 } else { (dot(&w, &d) / dd).clamp(0.0, 1.0) };
    w.iter().zip(&d).map(|(w, d)| (w - t * d).powi(2)).sum::<f64>().sqrt()
}
