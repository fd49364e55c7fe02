//! Growth-loop invariants checked on recorded traces.

use exhull::hull::segment_distance;
use exhull::{construct_hull, generate, Corpus, HullConfig, InitStrategy, PointSet};
use proptest::prelude::*;

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Checks every growth step of every trace: the distance strictly drops,
/// and the segment from the previous projection to the added point is
/// already closer than the previous distance by the factor `sin θ`.
fn check_steps(ps: &PointSet, cfg: &HullConfig) -> Result<usize, TestCaseError> {
    let res = construct_hull(ps, cfg).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let eps = cfg.tolerances.eps_zero;
    let mut steps = 0;
    for t in &res.traces {
        prop_assert!(t.first_non_decrease().is_none(), "point {} trace {:?}", t.point, t.steps);
        prop_assert!(t.final_distance() <= eps);
        let x = ps.point(t.point);
        for w in t.steps.windows(2) {
            let (cur, next) = (&w[0], &w[1]);
            let added = cur.added.expect("non-final step adds a point");
            let v = &cur.residual;
            let p: Vec<f64> = x.iter().zip(v).map(|(a, b)| a - b).collect();
            let q = ps.point(added);
            let sub = segment_distance(x, &p, q);
            prop_assert!(sub < cur.distance, "segment {sub} vs {}", cur.distance);
            prop_assert!(next.distance <= sub + 1e-9 * (1.0 + cur.distance));

            let u: Vec<f64> = q.iter().zip(&p).map(|(a, b)| a - b).collect();
            let vu: f64 = v.iter().zip(&u).map(|(a, b)| a * b).sum();
            let t_foot = vu / u.iter().map(|a| a * a).sum::<f64>();
            if (0.0..=1.0).contains(&t_foot) {
                let cos = vu / (norm(v) * norm(&u));
                let sin = (1.0 - cos * cos).max(0.0).sqrt();
                prop_assert!((sub - norm(v) * sin).abs() <= 1e-7 * (1.0 + norm(v)));
            }
            steps += 1;
        }
    }
    Ok(steps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distances_strictly_decrease(
        n in 5usize..60,
        m in 2usize..6,
        seed in any::<u64>(),
        single in any::<bool>(),
        corpus in prop::sample::select(Corpus::ALL.to_vec()),
    ) {
        let n = n.max(m + 1);
        let ps = generate(corpus, n, m, seed).unwrap();
        let init = if single { InitStrategy::SingleSeed(None) } else { InitStrategy::Simplex };
        check_steps(&ps, &HullConfig::for_points(&ps).with_init(init))?;
    }
}

#[test]
fn single_seed_exercises_growth() {
    let ps = generate(Corpus::Gaussian, 120, 4, 3).unwrap();
    let cfg = HullConfig::for_points(&ps).with_init(InitStrategy::SingleSeed(None));
    let steps = check_steps(&ps, &cfg).unwrap();
    assert!(steps > 50, "only {steps} growth steps");
}

#[test]
fn tied_grid_points() {
    // Integer grid: many exact ties in every argmax.
    let rows: Vec<Vec<f64>> = (0..5).flat_map(|i| (0..5).map(move |j| vec![i as f64, j as f64])).collect();
    let ps = PointSet::new(rows).unwrap();
    for init in [InitStrategy::Simplex, InitStrategy::SingleSeed(None)] {
        let cfg = HullConfig::for_points(&ps).with_init(init);
        check_steps(&ps, &cfg).unwrap();
        let res = construct_hull(&ps, &cfg).unwrap();
        let labels: Vec<usize> = res.extreme_ids.iter().map(|p| p.label()).collect();
        assert_eq!(labels, vec![1, 5, 21, 25]);
    }
}
