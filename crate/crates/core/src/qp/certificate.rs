//! Post-hoc optimality check for a [`ProjectionResult`].
//!
//! Recomputes everything from the returned coefficients and the raw
//! coordinates, sharing no state with the solver.

use thiserror::Error;

use super::ProjectionResult;
use crate::points::{PointId, PointSet, Tolerances};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertificateViolation {
    #[error("{got} coefficients for {expected} members")]
    Shape { expected: usize, got: usize },
    #[error("coefficients sum to {0}")]
    Sum(f64),
    #[error("coefficient {index} is {value}")]
    Negative { index: usize, value: f64 },
    #[error("stored residual differs from z - Σλx by {0:e}")]
    Residual(f64),
    #[error("dist_sq {stored} but ‖residual‖² is {recomputed}")]
    Distance { stored: f64, recomputed: f64 },
    #[error("member {index} improves the projection by {excess:e}")]
    Stationarity { index: usize, excess: f64 },
}

/// Checks feasibility, consistency and the KKT condition
/// `⟨r, x_i⟩ ≤ ⟨r, p⟩ + eps_kkt` for every member, with `r = z − p`.
pub fn verify_certificate(
    ps: &PointSet,
    z: &[f64],
    members: &[PointId],
    result: &ProjectionResult,
    tol: &Tolerances,
) -> Result<(), CertificateViolation> {
    let lambda = &result.lambda;
    if lambda.len() != members.len() {
        return Err(CertificateViolation::Shape { expected: members.len(), got: lambda.len() });
    }
    let sum: f64 = lambda.iter().sum();
    if (sum - 1.0).abs() > tol.eps_kkt {
        return Err(CertificateViolation::Sum(sum));
    }
    if let Some((index, &value)) = lambda.iter().enumerate().find(|(_, &l)| l < -tol.eps_kkt) {
        return Err(CertificateViolation::Negative { index, value });
    }

    let m = ps.dim();
    let mut p = vec![0.0; m];
    for (&id, &l) in members.iter().zip(lambda) {
        for (acc, x) in p.iter_mut().zip(ps.point(id)) {
            *acc += l * x;
        }
    }
    let r: Vec<f64> = z.iter().zip(&p).map(|(z, p)| z - p).collect();

    let scale = members
        .iter()
        .map(|&id| ps.point(id).iter().chain(z).fold(0.0f64, |a, x| a.max(x.abs())))
        .fold(1.0f64, f64::max);
    let slack = 1e3 * f64::EPSILON * scale * (m as f64);
    let diff = r
        .iter()
        .zip(&result.residual)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if diff > slack.max(tol.eps_kkt) {
        return Err(CertificateViolation::Residual(diff));
    }
    let recomputed: f64 = result.residual.iter().map(|x| x * x).sum();
    if (recomputed - result.dist_sq).abs() > tol.eps_kkt.max(slack * slack) {
        return Err(CertificateViolation::Distance { stored: result.dist_sq, recomputed });
    }

    let rp: f64 = r.iter().zip(&p).map(|(a, b)| a * b).sum();
    for (index, &id) in members.iter().enumerate() {
        let rx: f64 = r.iter().zip(ps.point(id)).map(|(a, b)| a * b).sum();
        let excess = rx - rp;
        if excess > tol.eps_kkt + slack * scale {
            return Err(CertificateViolation::Stationarity { index, excess });
        }
    }
    Ok(())
}
