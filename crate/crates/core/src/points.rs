//! Point sets, index identity, tolerances and centered coordinates.
//!
//! A [`PointSet`] is an immutable, row-major `n × m` matrix of finite, pairwise
//! distinct points. Every algorithm in the crate refers to points by
//! [`PointId`], which stays valid for the whole run.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a point inside one [`PointSet`] (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub usize);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }

    /// 1-based label, as used when points are numbered `1..=n`.
    #[inline]
    pub fn label(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for PointId {
    fn from(i: usize) -> Self {
        PointId(i)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    coords: Vec<f64>,
    n: usize,
    m: usize,
}

impl PointSet {
    /// Builds a point set, rejecting empty input, ragged rows, non-finite
    /// coordinates and exact duplicate rows.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let (ps, dropped) = Self::build(rows, false)?;
        debug_assert!(dropped.is_empty());
        Ok(ps)
    }

    /// Like [`PointSet::new`] but drops exact duplicate rows instead of failing.
    /// Returns the original row numbers (0-based) that were dropped.
    pub fn new_dedup(rows: Vec<Vec<f64>>) -> Result<(Self, Vec<usize>)> {
        let (ps, dropped) = Self::build(rows, true)?;
        if !dropped.is_empty() {
            log::warn!("dropped {} duplicate row(s): {:?}", dropped.len(), dropped);
        }
        Ok((ps, dropped))
    }

    fn build(rows: Vec<Vec<f64>>, dedup: bool) -> Result<(Self, Vec<usize>)> {
        let m = match rows.first() {
            Some(r) => r.len(),
            None => return Err(Error::Usage("point set must contain at least one point".into())),
        };
        if m == 0 {
            return Err(Error::Usage("points must have at least one coordinate".into()));
        }
        let mut coords = Vec::with_capacity(rows.len() * m);
        let mut seen: std::collections::HashMap<Vec<u64>, usize> = Default::default();
        let mut dropped = Vec::new();
        let mut n = 0;
        for (row_no, row) in rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(Error::Usage(format!(
                    "row {row_no} has {} coordinates, expected {m}",
                    row.len()
                )));
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite(format!("row {row_no}")));
            }
            // -0.0 and 0.0 compare equal, so they must hash equal too.
            let key: Vec<u64> = row.iter().map(|&x| (x + 0.0).to_bits()).collect();
            if let Some(&first) = seen.get(&key) {
                if dedup {
                    dropped.push(row_no);
                    continue;
                }
                return Err(Error::Duplicate { first, second: row_no });
            }
            seen.insert(key, row_no);
            coords.extend_from_slice(&row);
            n += 1;
        }
        Ok((PointSet { coords, n, m }, dropped))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.m
    }

    /// Coordinates of a point. Panics on an out-of-range id; use
    /// [`PointSet::check`] first for untrusted ids.
    #[inline]
    pub fn point(&self, id: PointId) -> &[f64] {
        &self.coords[id.0 * self.m..(id.0 + 1) * self.m]
    }

    pub fn check(&self, id: PointId) -> Result<()> {
        if id.0 < self.n {
            Ok(())
        } else {
            Err(Error::Index { index: id.0, n: self.n })
        }
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = PointId> + ExactSizeIterator + '_ {
        (0..self.n).map(PointId)
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.m)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn centroid(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.m];
        for row in self.rows() {
            for (acc, x) in c.iter_mut().zip(row) {
                *acc += x;
            }
        }
        c.iter_mut().for_each(|x| *x /= self.n as f64);
        c
    }

    /// Copy of the set translated so its centroid sits at the origin.
    /// Translation preserves extremeness, so ids keep their meaning.
    pub fn centered(&self) -> PointSet {
        let c = self.centroid();
        let coords = self
            .rows()
            .flat_map(|row| row.iter().zip(&c).map(|(x, c)| x - c))
            .collect();
        PointSet { coords, n: self.n, m: self.m }
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0, |a, x| a.max(x.abs()))
    }

    /// Largest Euclidean norm over all points.
    pub fn max_norm(&self) -> f64 {
        self.rows().map(norm).fold(0.0, f64::max)
    }

    /// Bounding-box diagonal, an upper bound on the diameter.
    pub fn diameter_estimate(&self) -> f64 {
        let mut lo = vec![f64::INFINITY; self.m];
        let mut hi = vec![f64::NEG_INFINITY; self.m];
        for row in self.rows() {
            for (j, &x) in row.iter().enumerate() {
                lo[j] = lo[j].min(x);
                hi[j] = hi[j].max(x);
            }
        }
        lo.iter().zip(&hi).map(|(l, h)| (h - l) * (h - l)).sum::<f64>().sqrt()
    }
}

/// Query point together with the ordered, duplicate-free list of points whose
/// hull it is projected onto.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceSet {
    owner: PointId,
    members: Vec<PointId>,
    origins: Vec<MemberOrigin>,
}

/// How a point entered a reference set. Decides whether membership alone
/// proves the point extreme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MemberOrigin {
    /// Already a confirmed extreme point when it was added.
    KnownExtreme,
    /// Strict unique maximizer of a linear functional.
    Argmax,
    /// Maximizer of a linear functional, but tied with another point.
    TiedArgmax,
    /// Caller-supplied starting point of unknown status.
    Seed,
}

impl MemberOrigin {
    /// True when membership already proves extremeness.
    pub fn is_certified(self) -> bool {
        matches!(self, MemberOrigin::KnownExtreme | MemberOrigin::Argmax)
    }
}

impl ReferenceSet {
    pub fn new(owner: PointId) -> Self {
        ReferenceSet { owner, members: Vec::new(), origins: Vec::new() }
    }

    #[inline]
    pub fn owner(&self) -> PointId {
        self.owner
    }

    #[inline]
    pub fn members(&self) -> &[PointId] {
        &self.members
    }

    #[inline]
    pub fn origins(&self) -> &[MemberOrigin] {
        &self.origins
    }

    pub fn iter(&self) -> impl Iterator<Item = (PointId, MemberOrigin)> + '_ {
        self.members.iter().copied().zip(self.origins.iter().copied())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: PointId) -> bool {
        self.members.contains(&id)
    }

    /// Appends `id` unless it is already a member. Returns whether it was added.
    pub fn push(&mut self, id: PointId, origin: MemberOrigin) -> bool {
        if self.contains(id) {
            return false;
        }
        self.members.push(id);
        self.origins.push(origin);
        true
    }
}

/// Numerical thresholds shared by every algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Distances at or below this count as zero.
    pub eps_zero: f64,
    /// Bound on the projection's optimality and feasibility residuals.
    pub eps_kkt: f64,
    /// Coordinates with magnitude at or below this have sign 0.
    pub eps_sign: f64,
    /// Inner products (against a unit direction) within this of the maximum tie.
    pub eps_tie: f64,
    /// Maximum number of direction refinements when establishing a simplex.
    pub max_refine: usize,
}

impl Tolerances {
    /// Scale-aware defaults for `ps`.
    ///
    /// `eps_kkt = 1e-10 (1 + s²)` where `s` is the largest coordinate
    /// magnitude about the centroid, `eps_zero = 1e-8 (1 + diameter)`,
    /// `eps_sign = 0`, `eps_tie = 1e-12 (1 + max‖x‖)`, `max_refine = m`.
    /// Both `eps_kkt` and `eps_zero` are translation invariant, and `eps_kkt`
    /// is capped at `eps_zero`.
    pub fn for_points(ps: &PointSet) -> Self {
        let c = ps.centroid();
        let s = ps.rows().flat_map(|r| r.iter().zip(&c).map(|(x, c)| (x - c).abs())).fold(0.0, f64::max);
        let eps_zero = 1e-8 * (1.0 + ps.diameter_estimate());
        let eps_kkt = (1e-10 * (1.0 + s * s)).min(eps_zero);
        Tolerances {
            eps_zero,
            eps_kkt,
            eps_sign: 0.0,
            eps_tie: 1e-12 * (1.0 + ps.max_norm()),
            max_refine: ps.dim(),
        }
    }

    /// Overrides `eps_zero`, lowering `eps_kkt` if needed to keep
    /// `eps_zero >= eps_kkt`.
    pub fn with_eps_zero(mut self, eps_zero: f64) -> Self {
        self.eps_zero = eps_zero;
        self.eps_kkt = self.eps_kkt.min(eps_zero);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.eps_zero, self.eps_kkt, self.eps_sign, self.eps_tie];
        if all.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Usage(format!("tolerances must be finite and non-negative: {self:?}")));
        }
        if self.eps_zero < self.eps_kkt {
            return Err(Error::Usage(format!(
                "eps_zero ({:e}) must not be smaller than eps_kkt ({:e})",
                self.eps_zero, self.eps_kkt
            )));
        }
        if self.max_refine == 0 {
            return Err(Error::Usage("max_refine must be positive".into()));
        }
        Ok(())
    }
}

/// `x_i - x_l` for every `i` in `subset`, in order.
pub fn transform_centered(ps: &PointSet, l: PointId, subset: &[PointId]) -> Result<Vec<Vec<f64>>> {
    ps.check(l)?;
    let origin = ps.point(l);
    subset
        .iter()
        .map(|&i| {
            ps.check(i)?;
            Ok(ps.point(i).iter().zip(origin).map(|(x, o)| x - o).collect())
        })
        .collect()
}

/// Component-wise sign with `|v_j| <= eps_sign` mapped to 0.
pub fn sign_pattern(v: &[f64], eps_sign: f64) -> Vec<i8> {
    v.iter()
        .map(|&x| {
            if x.abs() <= eps_sign {
                0
            } else if x > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table1;
    use proptest::prelude::*;

    #[test]
    fn centered_coordinates_table1() {
        let ps = table1();
        // 1-based labels 8 and 1 -> ids 7 and 0
        let v = transform_centered(&ps, PointId(7), &[PointId(0)]).unwrap();
        assert_eq!(v, vec![vec![-30.0, -12.0]]);
        let v = transform_centered(&ps, PointId(6), &[PointId(3)]).unwrap();
        assert_eq!(v, vec![vec![12.0, 10.0]]);
        let v = transform_centered(&ps, PointId(4), &[PointId(4)]).unwrap();
        assert_eq!(v, vec![vec![0.0, 0.0]]);
    }

    #[test]
    fn centered_rejects_bad_index() {
        let ps = table1();
        assert!(matches!(
            transform_centered(&ps, PointId(9), &[PointId(0)]),
            Err(Error::Index { index: 9, n: 9 })
        ));
        assert!(transform_centered(&ps, PointId(0), &[PointId(12)]).is_err());
    }

    #[test]
    fn sign_patterns() {
        assert_eq!(sign_pattern(&[-30.0, -12.0], 0.0), vec![-1, -1]);
        assert_eq!(sign_pattern(&[0.0, -37.0], 0.0), vec![0, -1]);
        assert_eq!(sign_pattern(&[0.0, 0.0, 0.0], 0.0), vec![0, 0, 0]);
        assert_eq!(sign_pattern(&[1e-9, -2.0], 1e-6), vec![0, -1]);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(PointSet::new(vec![]), Err(Error::Usage(_))));
        assert!(matches!(PointSet::new(vec![vec![]]), Err(Error::Usage(_))));
        assert!(matches!(
            PointSet::new(vec![vec![1.0, 2.0], vec![1.0]]),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            PointSet::new(vec![vec![1.0, f64::NAN]]),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            PointSet::new(vec![vec![1.0, 0.0], vec![2.0, 2.0], vec![1.0, -0.0]]),
            Err(Error::Duplicate { first: 0, second: 2 })
        ));
    }

    #[test]
    fn dedup_keeps_first_occurrence() {
        let rows = vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![1.0, 2.0], vec![3.0, 4.0]];
        let (ps, dropped) = PointSet::new_dedup(rows).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(dropped, vec![2, 3]);
        assert_eq!(ps.point(PointId(1)), &[3.0, 4.0]);
    }

    #[test]
    fn default_tolerances_are_consistent() {
        let ps = table1();
        let tol = Tolerances::for_points(&ps);
        tol.validate().unwrap();
        assert_eq!(tol.max_refine, 2);
        assert_eq!(tol.eps_sign, 0.0);
        let tight = tol.with_eps_zero(1e-8);
        tight.validate().unwrap();
        assert!(tight.eps_kkt <= 1e-8);
    }

    fn vec_strategy() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-1e3f64..1e3, 1..8)
    }

    proptest! {
        #[test]
        fn sign_pattern_is_odd(v in vec_strategy(), eps in 0.0f64..1.0) {
            let neg: Vec<f64> = v.iter().map(|x| -x).collect();
            let a = sign_pattern(&v, eps);
            let b = sign_pattern(&neg, eps);
            prop_assert!(a.iter().zip(&b).all(|(x, y)| *x == -*y));
        }

        #[test]
        fn centering_round_trips(rows in prop::collection::vec(prop::collection::vec(-1e3f64..1e3, 3), 2..10), l in 0usize..10) {
            let Ok((ps, _)) = PointSet::new_dedup(rows) else { return Ok(()) };
            let l = PointId(l % ps.len());
            let ids: Vec<PointId> = ps.ids().collect();
            let centered = transform_centered(&ps, l, &ids).unwrap();
            for (i, c) in ids.iter().zip(&centered) {
                let back: Vec<f64> = c.iter().zip(ps.point(l)).map(|(a, b)| a + b).collect();
                let scale = 1.0 + norm(ps.point(*i)) + norm(ps.point(l));
                let err: f64 = back.iter().zip(ps.point(*i)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                prop_assert!(err <= 4.0 * f64::EPSILON * scale);
            }
            prop_assert!(centered[l.0].iter().all(|&x| x == 0.0));
        }

        #[test]
        fn argmax_index_is_translation_invariant(
            rows in prop::collection::vec(prop::collection::vec(-100f64..100.0, 2), 2..12),
            v in prop::collection::vec(-1f64..1.0, 2),
            l in 0usize..12,
        ) {
            prop_assume!(v.iter().any(|x| x.abs() > 1e-3));
            let Ok((ps, _)) = PointSet::new_dedup(rows) else { return Ok(()) };
            let l = PointId(l % ps.len());
            let ids: Vec<PointId> = ps.ids().collect();
            let centered = transform_centered(&ps, l, &ids).unwrap();
            let best = |vals: Vec<f64>| {
                let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let second = vals.iter().cloned().filter(|&x| x < max).fold(f64::NEG_INFINITY, f64::max);
                (vals.iter().position(|&x| x == max).unwrap(), max - second)
            };
            let (a, gap_a) = best(ps.rows().map(|x| dot(x, &v)).collect());
            let (b, gap_b) = best(centered.iter().map(|x| dot(x, &v)).collect());
            // only compare when the maximizer is well separated from rounding
            if gap_a > 1e-9 && gap_b > 1e-9 {
                prop_assert_eq!(a, b);
            }
        }
    }
}
