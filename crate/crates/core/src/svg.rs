//! Planar figures of a finished run.
//!
//! The figure is drawn from a [`RunReport`] and the input points only, so
//! rendering can never change a result.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::points::{PointId, PointSet};
use crate::report::RunReport;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;

/// Maps data coordinates into the canvas with one scale for both axes.
struct Frame {
    min: [f64; 2],
    scale: f64,
}

impl Frame {
    fn fit(ps: &PointSet) -> Self {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for r in ps.rows() {
            for c in 0..2 {
                min[c] = min[c].min(r[c]);
                max[c] = max[c].max(r[c]);
            }
        }
        let span = (max[0] - min[0]).max(max[1] - min[1]);
        let scale = if span > 0.0 { (SIZE - 2.0 * MARGIN) / span } else { 1.0 };
        Frame { min, scale }
    }

    fn map(&self, p: &[f64]) -> (f64, f64) {
        (MARGIN + (p[0] - self.min[0]) * self.scale, SIZE - MARGIN - (p[1] - self.min[1]) * self.scale)
    }
}

/// Extreme ids ordered counter-clockwise by angle around their centroid.
fn polygon_order(ps: &PointSet, ids: &[PointId]) -> Vec<PointId> {
    let k = ids.len().max(1) as f64;
    let cx = ids.iter().map(|&i| ps.point(i)[0]).sum::<f64>() / k;
    let cy = ids.iter().map(|&i| ps.point(i)[1]).sum::<f64>() / k;
    let mut out = ids.to_vec();
    let angle = |i: PointId| {
        let p = ps.point(i);
        (p[1] - cy).atan2(p[0] - cx)
    };
    out.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)).then(a.cmp(&b)));
    out
}

/// SVG 1.1 document with every point, the hull polygon and, for traced
/// reports, one arrow per projection from `p` to `x_l` along `v*`.
pub fn render(ps: &PointSet, report: &RunReport) -> Result<String> {
    if ps.dim() != 2 {
        return Err(Error::Usage(format!("SVG output needs 2-dimensional points, got {}", ps.dim())));
    }
    let frame = Frame::fit(ps);
    let extremes: Vec<PointId> = report.extremes.ids().into_iter().collect();
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        s,
        r##"<defs><marker id="head" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#c0392b"/></marker></defs>"##
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let poly: Vec<String> = polygon_order(ps, &extremes)
        .into_iter()
        .map(|id| {
            let (x, y) = frame.map(ps.point(id));
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(
        s,
        r##"<polygon id="hull" points="{}" fill="#eaf2fb" stroke="#2c3e50" stroke-width="1.5"/>"##,
        poly.join(" ")
    );

    for stats in &report.points {
        let Some(steps) = &stats.steps else { continue };
        let x = ps.point(PointId(stats.index));
        for step in steps.iter().filter(|st| st.distance > 0.0) {
            let p: Vec<f64> = x.iter().zip(&step.residual).map(|(a, v)| a - v).collect();
            let (x1, y1) = frame.map(&p);
            let (x2, y2) = frame.map(x);
            let _ = writeln!(
                s,
                r##"<line class="residual" data-point="{}" data-k="{}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#c0392b" stroke-width="1" marker-end="url(#head)"/>"##,
                stats.label, step.k
            );
        }
    }

    for id in ps.ids() {
        let (x, y) = frame.map(ps.point(id));
        let extreme = report.extremes.indices.binary_search(&id.index()).is_ok();
        let fill = if extreme { "#2c3e50" } else { "#95a5a6" };
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3.5" fill="{fill}"/>"#);
        if ps.len() <= 200 {
            let _ = writeln!(
                s,
                r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="11">{}</text>"#,
                x + 5.0,
                y - 5.0,
                id.label()
            );
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn write(path: impl AsRef<Path>, ps: &PointSet, report: &RunReport) -> Result<()> {
    crate::report::write_atomic(path.as_ref(), render(ps, report)?.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::{construct_hull, HullConfig};
    use crate::oracle::hull_2d_ordered;
    use crate::report::InputSummary;
    use crate::table1;

    fn report(ps: &PointSet, trace: bool) -> RunReport {
        let cfg = HullConfig::for_points(ps);
        let res = construct_hull(ps, &cfg).unwrap();
        let input = InputSummary { n: ps.len(), m: ps.dim(), source: "t".into(), dropped_lines: vec![], precentered: false };
        RunReport::new(ps, input, &cfg, &res, trace)
    }

    #[test]
    fn polygon_follows_planar_hull_order() {
        let ps = table1();
        let r = report(&ps, false);
        let ids: Vec<PointId> = r.extremes.ids().into_iter().collect();
        let ours = polygon_order(&ps, &ids);
        let reference = hull_2d_ordered(&ps).unwrap();
        let start = ours.iter().position(|&p| p == reference[0]).unwrap();
        let rotated: Vec<PointId> = ours[start..].iter().chain(&ours[..start]).copied().collect();
        assert_eq!(rotated, reference);
    }

    #[test]
    fn svg_contents() {
        let ps = table1();
        let plain = render(&ps, &report(&ps, false)).unwrap();
        assert!(plain.starts_with("<?xml"));
        assert_eq!(plain.matches("<circle").count(), 9);
        let hull_line = plain.lines().find(|l| l.contains(r#"id="hull""#)).unwrap();
        assert_eq!(hull_line.matches(',').count(), 7);
        assert!(!plain.contains("class=\"residual\""));
        let traced = render(&ps, &report(&ps, true)).unwrap();
        assert!(traced.contains("class=\"residual\""));
    }

    #[test]
    fn rejects_other_dimensions() {
        let ps = crate::generate(crate::Corpus::Gaussian, 10, 3, 1).unwrap();
        assert!(matches!(render(&ps, &report(&ps, false)), Err(Error::Usage(_))));
    }
}
