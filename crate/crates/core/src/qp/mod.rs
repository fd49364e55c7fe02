//! Euclidean projection of a query point onto the convex hull of a set of
//! reference points:
//!
//! ```text
//! min ‖z − Σ λ_i x_i‖²   s.t.  Σ λ_i = 1,  λ_i ≥ 0
//! ```
//!
//! Solved with Wolfe's nearest-point method, an active-set scheme on the
//! shifted points `y_i = x_i − z`. The active set ("corral") is kept affinely
//! independent, so it never holds more than `m + 1` points regardless of how
//! many members are passed in. Every result carries the data needed to check
//! optimality independently, see [`certificate`].

pub mod certificate;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::points::{dot, PointId, PointSet, Tolerances};

pub use certificate::{verify_certificate, CertificateViolation};

/// Optimal coefficients and derived quantities of one projection.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionResult {
    /// Convex coefficients, aligned with the `members` slice of the solve.
    pub lambda: Vec<f64>,
    /// Squared distance `‖residual‖²`.
    pub dist_sq: f64,
    /// `z − Σ λ_i x_i`.
    pub residual: Vec<f64>,
    /// Members with `λ_i > eps_kkt`, in member order.
    pub support: Vec<PointId>,
    /// `max(0, max_i ⟨residual, x_i − p⟩)` where `p` is the projection.
    pub kkt_residual: f64,
    /// Active-set pivots (additions and removals) the solve needed.
    pub pivots: usize,
}

impl ProjectionResult {
    pub fn distance(&self) -> f64 {
        self.dist_sq.sqrt()
    }

    /// The projected point `z − residual`.
    pub fn projection(&self, z: &[f64]) -> Vec<f64> {
        z.iter().zip(&self.residual).map(|(z, r)| z - r).collect()
    }
}

/// Reusable solver with private scratch space. Not shareable mid-solve, but
/// cheap to create one per thread.
#[derive(Debug, Default)]
pub struct Projector {
    shifted: Vec<f64>,
    corral: Vec<usize>,
    weights: Vec<f64>,
    x: Vec<f64>,
}

// Relative thresholds of the active-set iteration, independent of the
// caller-facing tolerances.
// The duality gap `‖x‖² − min ⟨x, y_j⟩` is driven below REL_GAP·‖x‖², which
// resolves small distances to full relative accuracy, but never below the
// rounding floor of the inner products, ULP_GAP·‖x‖·max‖y‖.
const REL_GAP: f64 = 1e-13;
const ULP_GAP: f64 = 1e-14;
const REL_ZERO: f64 = 1e-15;
const WEIGHT_FLOOR: f64 = 1e-14;
const AFFINE_RANK_TOL: f64 = 1e-10;

#[derive(Clone, Copy)]
struct GapRule {
    cap: f64,
    max_norm: f64,
}

impl GapRule {
    fn tolerance(self, xx: f64) -> f64 {
        self.cap.min((REL_GAP * xx).max(ULP_GAP * xx.sqrt() * self.max_norm))
    }
}

impl Projector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Projects `z` onto `conv(members)`.
    ///
    /// `warm_start`, when given, must have one coefficient per member; its
    /// positive entries seed the initial active set. It only affects the
    /// path, never the optimum beyond tolerance.
    pub fn project(
        &mut self,
        ps: &PointSet,
        z: &[f64],
        members: &[PointId],
        tol: &Tolerances,
        warm_start: Option<&[f64]>,
    ) -> Result<ProjectionResult> {
        if members.is_empty() {
            return Err(Error::Usage("projection needs at least one member".into()));
        }
        let m = ps.dim();
        if z.len() != m {
            return Err(Error::Usage(format!("query has dimension {}, expected {m}", z.len())));
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("projection query".into()));
        }
        for &id in members {
            ps.check(id)?;
        }
        if let Some(w) = warm_start {
            if w.len() != members.len() {
                return Err(Error::Usage(format!(
                    "warm start has {} coefficients for {} members",
                    w.len(),
                    members.len()
                )));
            }
        }

        let k = members.len();
        self.shifted.clear();
        for &id in members {
            self.shifted.extend(ps.point(id).iter().zip(z).map(|(x, z)| x - z));
        }
        let max_sq = self.shifted.chunks_exact(m).map(|y| dot(y, y)).fold(0.0, f64::max);
        let gap = GapRule { cap: tol.eps_kkt, max_norm: max_sq.sqrt() };
        let zero_sq = (REL_ZERO * REL_ZERO) * max_sq;
        let limit = 50 * k;

        let mut pivots = 0;
        let converged = self.iterate(m, warm_start, gap, zero_sq, limit, &mut pivots)?;
        if !converged && warm_start.is_some() {
            // A warm corral can be nearly affinely dependent; start over from
            // a single point, which builds the corral one pivot at a time.
            log::debug!("warm-started projection stalled; retrying cold");
            self.iterate(m, None, gap, zero_sq, pivots + limit, &mut pivots)?;
        }

        let result = self.finish(ps, z, members, tol, pivots);
        if result.kkt_residual > tol.eps_kkt {
            return Err(Error::Stalled { kkt_residual: result.kkt_residual, tolerance: tol.eps_kkt });
        }
        debug_assert!(
            verify_certificate(ps, z, members, &result, tol).is_ok(),
            "{:?}",
            verify_certificate(ps, z, members, &result, tol)
        );
        Ok(result)
    }

    /// Runs major cycles from a fresh corral until the gap closes (`true`) or
    /// progress stops on rounding noise (`false`).
    fn iterate(
        &mut self,
        m: usize,
        warm: Option<&[f64]>,
        gap: GapRule,
        zero_sq: f64,
        limit: usize,
        pivots: &mut usize,
    ) -> Result<bool> {
        self.init_corral(m, warm);
        // The warm corral is a convex point, not yet the affine minimizer.
        if self.corral.len() > 1 {
            *pivots += self.minor_cycle(m)?;
        }

        let mut best_sq = f64::INFINITY;
        loop {
            self.update_x(m);
            let xx = dot(&self.x, &self.x);
            if xx <= zero_sq {
                return Ok(true);
            }
            let (j, min_ip) = self.most_violating(m);
            if xx - min_ip <= gap.tolerance(xx) {
                return Ok(true);
            }
            // Without progress the corral can cycle on rounding noise.
            if self.corral.contains(&j) || xx >= best_sq {
                return Ok(false);
            }
            best_sq = xx;
            if *pivots >= limit {
                return Err(Error::IterationLimit { limit });
            }
            self.corral.push(j);
            self.weights.push(0.0);
            *pivots += 1;
            *pivots += self.minor_cycle(m)?;
            if *pivots > limit {
                return Err(Error::IterationLimit { limit });
            }
        }
    }

    fn y(&self, m: usize, i: usize) -> &[f64] {
        &self.shifted[i * m..(i + 1) * m]
    }

    fn init_corral(&mut self, m: usize, warm: Option<&[f64]>) {
        self.corral.clear();
        self.weights.clear();
        let k = self.shifted.len() / m;
        if let Some(w) = warm {
            let mut order: Vec<usize> = (0..k).filter(|&i| w[i] > 0.0 && w[i].is_finite()).collect();
            order.sort_by(|&a, &b| w[b].total_cmp(&w[a]).then(a.cmp(&b)));
            // Greedy affinely independent subset, via Gram-Schmidt on
            // differences to the first point.
            let mut basis: Vec<Vec<f64>> = Vec::new();
            for i in order {
                if self.corral.len() > m {
                    break;
                }
                if let Some(&first) = self.corral.first() {
                    let mut d: Vec<f64> = self.y(m, i).iter().zip(self.y(m, first)).map(|(a, b)| a - b).collect();
                    let scale = dot(&d, &d).sqrt();
                    for b in &basis {
                        let c = dot(&d, b);
                        d.iter_mut().zip(b).for_each(|(x, b)| *x -= c * b);
                    }
                    let r = dot(&d, &d).sqrt();
                    if r <= 1e-10 * scale || r == 0.0 {
                        continue;
                    }
                    d.iter_mut().for_each(|x| *x /= r);
                    basis.push(d);
                }
                self.corral.push(i);
                self.weights.push(w[i]);
            }
            let total: f64 = self.weights.iter().sum();
            if total > 0.0 {
                self.weights.iter_mut().for_each(|x| *x /= total);
                return;
            }
            self.corral.clear();
            self.weights.clear();
        }
        // Cold start: the member nearest to z, lowest position on ties.
        let mut best = 0;
        let mut best_sq = f64::INFINITY;
        for i in 0..k {
            let y = self.y(m, i);
            let s = dot(y, y);
            if s < best_sq {
                best_sq = s;
                best = i;
            }
        }
        self.corral.push(best);
        self.weights.push(1.0);
    }

    fn update_x(&mut self, m: usize) {
        self.x.clear();
        self.x.resize(m, 0.0);
        for (&i, &w) in self.corral.iter().zip(&self.weights) {
            let y = &self.shifted[i * m..(i + 1) * m];
            self.x.iter_mut().zip(y).for_each(|(x, y)| *x += w * y);
        }
    }

    /// Member minimizing `⟨x, y_j⟩`, lowest position on ties.
    fn most_violating(&self, m: usize) -> (usize, f64) {
        let mut best = 0;
        let mut best_ip = f64::INFINITY;
        for (i, y) in self.shifted.chunks_exact(m).enumerate() {
            let ip = dot(&self.x, y);
            if ip < best_ip {
                best_ip = ip;
                best = i;
            }
        }
        (best, best_ip)
    }

    /// Moves the weights toward the affine minimizer of the corral, dropping
    /// points whose weight reaches zero, until the affine minimizer lies in
    /// the relative interior. Returns the number of removals.
    fn minor_cycle(&mut self, m: usize) -> Result<usize> {
        let mut removed = 0;
        loop {
            let alpha = self.affine_minimizer(m)?;
            if alpha.iter().all(|&a| a > WEIGHT_FLOOR) {
                self.weights.copy_from_slice(&alpha);
                return Ok(removed);
            }
            // Largest step from the current weights toward alpha that stays
            // feasible.
            let mut theta = 1.0f64;
            for (&w, &a) in self.weights.iter().zip(&alpha) {
                if a <= WEIGHT_FLOOR && w > a {
                    theta = theta.min(w / (w - a));
                }
            }
            for (w, a) in self.weights.iter_mut().zip(&alpha) {
                *w = (1.0 - theta) * *w + theta * a;
            }
            // Drop every point that hit zero; keep at least one.
            let mut keep_c = Vec::with_capacity(self.corral.len());
            let mut keep_w = Vec::with_capacity(self.corral.len());
            for (&c, &w) in self.corral.iter().zip(&self.weights) {
                if w > WEIGHT_FLOOR {
                    keep_c.push(c);
                    keep_w.push(w);
                }
            }
            if keep_c.is_empty() {
                let (pos, _) = self
                    .weights
                    .iter()
                    .enumerate()
                    .fold((0, f64::NEG_INFINITY), |acc, (i, &w)| if w > acc.1 { (i, w) } else { acc });
                keep_c.push(self.corral[pos]);
                keep_w.push(1.0);
            }
            removed += self.corral.len() - keep_c.len();
            if removed == 0 {
                // Numerically alpha sits on the boundary; accept the clamped point.
                self.weights.iter_mut().for_each(|w| *w = w.max(0.0));
                let s: f64 = self.weights.iter().sum();
                self.weights.iter_mut().for_each(|w| *w /= s);
                return Ok(removed);
            }
            let s: f64 = keep_w.iter().sum();
            keep_w.iter_mut().for_each(|w| *w /= s);
            self.corral = keep_c;
            self.weights = keep_w;
        }
    }

    /// Weights `α` (summing to 1) of the point of minimum norm in the affine
    /// hull of the corral.
    fn affine_minimizer(&self, m: usize) -> Result<Vec<f64>> {
        let k = self.corral.len();
        if k == 1 {
            return Ok(vec![1.0]);
        }
        let y0 = self.y(m, self.corral[0]);
        let diff = |c: usize| -> Vec<f64> { self.y(m, self.corral[c]).iter().zip(y0).map(|(a, b)| a - b).collect() };

        // Columns that are affinely dependent on earlier corral points keep
        // weight 0; the minor cycle then drops them.
        let mut basis: Vec<Vec<f64>> = Vec::new();
        let mut cols: Vec<usize> = Vec::new();
        for c in 1..k.min(m + 1) {
            let mut d = diff(c);
            let scale = dot(&d, &d).sqrt();
            for _ in 0..2 {
                for q in &basis {
                    let t = dot(&d, q);
                    d.iter_mut().zip(q).for_each(|(x, q)| *x -= t * q);
                }
            }
            let r = dot(&d, &d).sqrt();
            if r > AFFINE_RANK_TOL * scale && r > 0.0 {
                d.iter_mut().for_each(|x| *x /= r);
                basis.push(d);
                cols.push(c);
            }
        }
        let mut beta = vec![0.0; k - 1];
        if !cols.is_empty() {
            let d = DMatrix::from_fn(m, cols.len(), |r, j| self.y(m, self.corral[cols[j]])[r] - y0[r]);
            let b = DVector::from_iterator(m, y0.iter().map(|v| -v));
            // Householder least squares. nalgebra 0.35's SVD loses accuracy
            // on small well-conditioned inputs, so it is not used here.
            let qr = d.clone().qr();
            let (q, r) = (qr.q(), qr.r());
            let solve = |rhs: &DVector<f64>| r.solve_upper_triangular(&(q.transpose() * rhs));
            let mut sol = solve(&b).ok_or_else(|| Error::NonFinite("affine minimizer".into()))?;
            // One step of iterative refinement.
            if let Some(delta) = solve(&(&b - &d * &sol)) {
                sol += delta;
            }
            for (j, &c) in cols.iter().enumerate() {
                beta[c - 1] = sol[j];
            }
        }
        let mut alpha = Vec::with_capacity(k);
        alpha.push(1.0 - beta.iter().sum::<f64>());
        alpha.extend(beta.iter());
        if alpha.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite("affine minimizer".into()));
        }
        Ok(alpha)
    }

    fn finish(
        &mut self,
        ps: &PointSet,
        z: &[f64],
        members: &[PointId],
        tol: &Tolerances,
        pivots: usize,
    ) -> ProjectionResult {
        let m = ps.dim();
        let mut lambda = vec![0.0; members.len()];
        for (&c, &w) in self.corral.iter().zip(&self.weights) {
            lambda[c] = w.max(0.0);
        }
        let total: f64 = lambda.iter().sum();
        lambda.iter_mut().for_each(|l| *l /= total);

        self.x.clear();
        self.x.resize(m, 0.0);
        for (i, &l) in lambda.iter().enumerate() {
            if l > 0.0 {
                let y = &self.shifted[i * m..(i + 1) * m];
                self.x.iter_mut().zip(y).for_each(|(x, y)| *x += l * y);
            }
        }
        let residual: Vec<f64> = self.x.iter().map(|v| -v).collect();
        let dist_sq = dot(&residual, &residual);
        let kkt_residual = self
            .shifted
            .chunks_exact(m)
            .map(|y| dist_sq - dot(&self.x, y))
            .fold(0.0, f64::max);
        let support = members
            .iter()
            .zip(&lambda)
            .filter(|(_, &l)| l > tol.eps_kkt)
            .map(|(&id, _)| id)
            .collect();
        let _ = z;
        ProjectionResult { lambda, dist_sq, residual, support, kkt_residual, pivots }
    }
}

/// One-shot projection with a fresh [`Projector`].
pub fn project(
    ps: &PointSet,
    z: &[f64],
    members: &[PointId],
    tol: &Tolerances,
    warm_start: Option<&[f64]>,
) -> Result<ProjectionResult> {
    Projector::new().project(ps, z, members, tol, warm_start)
}

/// Distance from `z` to `conv(members)`, exactly 0 when the squared distance
/// is at most `eps_zero²`.
pub fn distance(ps: &PointSet, z: &[f64], members: &[PointId], tol: &Tolerances) -> Result<f64> {
    let r = project(ps, z, members, tol, None)?;
    Ok(if r.dist_sq <= tol.eps_zero * tol.eps_zero { 0.0 } else { r.distance() })
}
