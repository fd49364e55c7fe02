//! Exact extreme points (convex hull vertices) of finite point sets in any
//! dimension.
//!
//! For every point that is not yet known to be a vertex, the crate projects
//! it onto the hull of a small reference set and grows that set along the
//! residual direction until the point is enclosed. The union of the reference
//! sets is the vertex set. No facets are ever built, so the cost stays
//! polynomial in the dimension.
//!
//! ```
//! use exhull::{construct_hull, table1, HullConfig};
//!
//! let points = table1();
//! let hull = construct_hull(&points, &HullConfig::for_points(&points)).unwrap();
//! let labels: Vec<usize> = hull.extreme_ids.iter().map(|p| p.label()).collect();
//! assert_eq!(labels, [1, 2, 3, 4, 5, 6, 9]);
//! ```
//!
//! Module map:
//! - [`points`]: point sets, ids, tolerances, centered coordinates
//! - [`qp`]: projection onto a convex hull with optimality certificates
//! - [`seeding`]: axis extremes and per-point starting reference sets
//! - [`hull`]: the construction driver with iteration traces
//! - [`oracle`]: brute-force and planar reference classifiers
//! - [`dataset`], [`report`], [`svg`], [`cli`]: I/O around the library

pub mod cli;
pub mod dataset;
pub mod error;
pub mod hull;
pub mod oracle;
pub mod points;
pub mod qp;
pub mod report;
pub mod seeding;
pub mod svg;

pub use dataset::{generate, ingest_csv, parse_csv, table1, Corpus};
pub use error::{Error, Result};
pub use hull::{construct_hull, HullConfig, HullResult, InitStrategy, IterationTrace, ProcessingOrder};
pub use oracle::{classify_all_bruteforce, hull_2d, verify_extreme};
pub use points::{sign_pattern, transform_centered, MemberOrigin, PointId, PointSet, ReferenceSet, Tolerances};
pub use qp::{distance, project, ProjectionResult, Projector};
pub use seeding::{argmax_direction, axis_extremes, establish_simplex, nearest_hyperplane};
