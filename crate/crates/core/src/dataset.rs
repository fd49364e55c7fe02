//! Point set sources: CSV files, seeded generators and the 9-point planar
//! instance used throughout the tests and examples.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::points::PointSet;

/// Nine planar points with seven hull vertices (labels 1-6 and 9).
pub fn table1() -> PointSet {
    const X: [f64; 9] = [10.0, 72.0, 40.0, 46.0, 32.0, 71.0, 34.0, 40.0, 62.0];
    const Y: [f64; 9] = [26.0, 20.0, 1.0, 76.0, 72.0, 36.0, 66.0, 38.0, 69.0];
    PointSet::new(X.iter().zip(&Y).map(|(&x, &y)| vec![x, y]).collect()).expect("static data is valid")
}

pub const TABLE1_CSV: &str = "x1,x2\n10,26\n72,20\n40,1\n46,76\n32,72\n71,36\n34,66\n40,38\n62,69\n";

#[derive(Clone, Debug, PartialEq)]
pub struct Ingested {
    pub points: PointSet,
    /// 1-based line numbers of rows dropped as exact duplicates.
    pub dropped_lines: Vec<usize>,
    pub header: Option<Vec<String>>,
}

pub fn ingest_csv(path: impl AsRef<Path>) -> Result<Ingested> {
    let text = std::fs::read_to_string(path)?;
    parse_csv(&text)
}

/// Parses comma-separated rows of numbers (LF or CRLF). A first row with any
/// non-numeric cell is taken as a header.
pub fn parse_csv(text: &str) -> Result<Ingested> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut header = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();
    let mut width = None;
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(i + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = record.iter().map(f64::from_str).collect();
        let values = match parsed {
            Ok(v) => v,
            Err(_) if i == 0 => {
                header = Some(record.iter().map(str::to_owned).collect());
                width = Some(record.len());
                continue;
            }
            Err(_) => {
                let bad = record.iter().find(|c| c.parse::<f64>().is_err()).unwrap_or_default();
                return Err(Error::Parse { line, message: format!("non-numeric cell {bad:?}") });
            }
        };
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse { line, message: "non-finite value".into() });
        }
        match width {
            Some(w) if w != values.len() => {
                return Err(Error::Parse { line, message: format!("expected {w} fields, found {}", values.len()) })
            }
            _ => width = Some(values.len()),
        }
        rows.push(values);
        lines.push(line);
    }
    if rows.is_empty() {
        return Err(Error::Parse { line: 1, message: "no data rows".into() });
    }
    let (points, dropped) = PointSet::new_dedup(rows)?;
    Ok(Ingested { points, dropped_lines: dropped.into_iter().map(|r| lines[r]).collect(), header })
}

/// Writes `ps` as CSV with an `x1,...,xm` header.
pub fn to_csv(ps: &PointSet) -> String {
    let mut out = (1..=ps.dim()).map(|j| format!("x{j}")).collect::<Vec<_>>().join(",");
    out.push('\n');
    for row in ps.rows() {
        out.push_str(&row.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corpus {
    /// Uniform in the unit cube `[0, 1]^m`.
    Cube,
    /// Standard normal coordinates.
    Gaussian,
    /// Normalized Gaussian draws on the unit sphere; all points extreme.
    Sphere,
    /// `m + 1` simplex vertices followed by strictly interior points.
    SimplexInterior,
}

impl Corpus {
    pub const ALL: [Corpus; 4] = [Corpus::Cube, Corpus::Gaussian, Corpus::Sphere, Corpus::SimplexInterior];

    pub fn name(self) -> &'static str {
        match self {
            Corpus::Cube => "cube",
            Corpus::Gaussian => "gaussian",
            Corpus::Sphere => "sphere",
            Corpus::SimplexInterior => "simplex-interior",
        }
    }
}

impl fmt::Display for Corpus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Corpus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Corpus::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown corpus {s:?}")))
    }
}

/// Deterministic point cloud for `(kind, n, m, seed)`.
pub fn generate(kind: Corpus, n: usize, m: usize, seed: u64) -> Result<PointSet> {
    if n == 0 || m == 0 {
        return Err(Error::Usage(format!("{kind} corpus needs n >= 1 and m >= 1, got n={n}, m={m}")));
    }
    if kind == Corpus::SimplexInterior && n < m + 1 {
        return Err(Error::Usage(format!("simplex-interior needs n >= m + 1, got n={n}, m={m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gaussian = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..m).map(|_| rng.sample(StandardNormal)).collect() };
    let rows: Vec<Vec<f64>> = match kind {
        Corpus::Cube => (0..n).map(|_| (0..m).map(|_| rng.random::<f64>()).collect()).collect(),
        Corpus::Gaussian => (0..n).map(|_| gaussian(&mut rng)).collect(),
        Corpus::Sphere => (0..n)
            .map(|_| loop {
                let v = gaussian(&mut rng);
                let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if len > 1e-6 {
                    break v.into_iter().map(|x| x / len).collect();
                }
            })
            .collect(),
        Corpus::SimplexInterior => {
            let vertices: Vec<Vec<f64>> = (0..=m).map(|_| gaussian(&mut rng)).collect();
            let mut rows = vertices.clone();
            for _ in m + 1..n {
                // weights in [0.2, 1.2] before normalization, so none vanishes
                let w: Vec<f64> = (0..=m).map(|_| 0.2 + rng.random::<f64>()).collect();
                let total: f64 = w.iter().sum();
                let mut p = vec![0.0; m];
                for (v, wi) in vertices.iter().zip(&w) {
                    p.iter_mut().zip(v).for_each(|(p, x)| *p += wi / total * x);
                }
                rows.push(p);
            }
            rows
        }
    };
    let (ps, dropped) = PointSet::new_dedup(rows)?;
    if !dropped.is_empty() {
        log::warn!("{kind} generator produced {} duplicate point(s)", dropped.len());
    }
    Ok(ps)
}
