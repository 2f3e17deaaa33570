use jdisk::acs::{gallery, TangentVector};
use jdisk::pseudonorm::{estimate_F, estimate_many, exact_F_chart, schwarz_constant, SearchConfig, Witness};
use jdisk::solver::SolverConfig;
use jdisk::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

// Poincaré metric of the disk of radius r: r|v| / (r² - |p|²).
fn poincare(r: f64, p: C64, v: C64) -> f64 {
    r * v.norm() / (r * r - p.norm_sqr())
}

#[test]
fn flat_space_reaches_the_search_ceiling() {
    let cfg = SearchConfig::default();
    let tv = TangentVector::new(vec![c(0.3, 0.1), c(-2.0, 0.0)], vec![c(0.6, 0.0), c(0.0, 0.8)]);
    let e = estimate_F(&gallery::std_cn(2), &tv, &cfg).unwrap();
    assert!(e.hit_r_max);
    assert!(e.value <= 1e-3 * 1.0 * (1.0 + cfg.rel_tol), "{}", e.value);
}

#[test]
fn disk_estimates_bracket_the_poincare_metric() {
    let cfg = SearchConfig::default();
    for (r, p, v) in [
        (1.0, c(0.0, 0.0), c(1.0, 0.0)),
        (1.0, c(0.3, -0.4), c(0.0, 2.0)),
        (0.5, c(0.1, 0.0), c(1.0, 1.0)),
    ] {
        let chart = gallery::disk(r);
        let tv = TangentVector::new(vec![p], vec![v]);
        let e = estimate_F(&chart, &tv, &cfg).unwrap();
        let exact = poincare(r, p, v);
        assert!(e.value >= exact * (1.0 - 1e-12), "{} < {exact}", e.value);
        assert!(e.value <= exact * (1.0 + cfg.rel_tol), "{} vs {exact}", e.value);
        assert!((exact_F_chart(&chart, &tv).unwrap() - exact).abs() <= 1e-14 * exact);
    }
}

#[test]
fn witness_disk_passes_through_the_tangent_vector() {
    let tv = TangentVector::new(vec![c(0.2, 0.1)], vec![c(0.5, 0.5)]);
    let e = estimate_F(&gallery::unit_disk(), &tv, &SearchConfig::default()).unwrap();
    let w = e.witness.as_ref().unwrap();
    assert!(matches!(w, Witness::Model(_)));
    assert!((w.eval(c(0.0, 0.0))[0] - tv.base[0]).norm() < 1e-14);
    let h = 1e-6;
    let slope = (w.eval(c(h, 0.0))[0] - w.eval(c(-h, 0.0))[0]) / (2.0 * h);
    assert!((slope - e.unit_dir[0]).norm() < 1e-8, "{slope} vs {}", e.unit_dir[0]);
}

#[test]
fn polydisk_grows_towards_the_boundary() {
    let chart = gallery::polydisk();
    let cfg = SearchConfig::default();
    let tvs: Vec<TangentVector> = [0.0, 0.5, 0.8, 0.95]
        .iter()
        .map(|&x| TangentVector::new(vec![c(x, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]))
        .collect();
    let vals: Vec<f64> = estimate_many(&chart, &tvs, &cfg)
        .into_iter()
        .map(|e| e.unwrap().value)
        .collect();
    assert!(vals.windows(2).all(|w| w[1] > w[0]), "{vals:?}");
    for (tv, v) in tvs.iter().zip(&vals) {
        let exact = poincare(1.0, tv.base[0], tv.dir[0]);
        assert!((v - exact).abs() <= cfg.rel_tol * exact, "{v} vs {exact}");
    }
}

#[test]
fn schwarz_constant_of_the_disk_at_the_origin_is_one() {
    let tvs: Vec<TangentVector> = (0..6)
        .map(|k| TangentVector::new(vec![c(0.0, 0.0)], vec![C64::from_polar(1.0 + k as f64, 0.7 * k as f64)]))
        .collect();
    let cfg = SearchConfig::default();
    let k = schwarz_constant(&gallery::unit_disk(), &tvs, &cfg).unwrap();
    assert!((1.0..=1.0 + cfg.rel_tol).contains(&k), "{k}");
}

#[test]
fn perturbed_chart_is_bounded_by_its_disk_factor() {
    // z ↦ (z, 0) is pseudoholomorphic from the disk of radius 1.5 into perturbed-R4.
    let chart = gallery::perturbed_r4(0.05);
    let cfg = SearchConfig {
        rel_tol: 0.05,
        solver: SolverConfig::default().with_resolution(32, 64).with_tol(1e-4),
        ..SearchConfig::default()
    };
    let tv = TangentVector::new(vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]);
    let e = estimate_F(&chart, &tv, &cfg).unwrap();
    let bound = poincare(1.5, c(0.0, 0.0), c(1.0, 0.0));
    assert!(e.value <= bound * (1.0 + cfg.rel_tol) + 0.02, "{} vs {bound}", e.value);
    assert!(e.residual() <= cfg.solver.tol);
}
