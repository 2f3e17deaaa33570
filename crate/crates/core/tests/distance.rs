use jdisk::acs::gallery;
use jdisk::distance::{estimate_d_chain, estimate_dbar, path_length, OptimizerConfig, PathSpec};
use jdisk::pseudonorm::SearchConfig;
use jdisk::{Error, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

// Poincaré distance from 0 with the metric |dz| / (1 - |z|²).
fn poincare_from_zero(r: f64) -> f64 {
    0.5 * ((1.0 + r) / (1.0 - r)).ln()
}

#[test]
fn unit_disk_radial_distance_at_64_segments() {
    let cfg = SearchConfig::default();
    let chart = gallery::unit_disk();
    let path = PathSpec::straight(&[c(0.0, 0.0)], &[c(0.5, 0.0)], 64).unwrap();
    let exact = poincare_from_zero(0.5);
    let integral = path_length(&chart, &path, &cfg).unwrap();
    let chain = estimate_d_chain(&chart, &path, &cfg).unwrap();
    assert!((integral - exact).abs() <= 0.05 * exact, "{integral} vs {exact}");
    assert!(
        (chain.value - exact).abs() <= 0.05 * exact,
        "{} vs {exact}",
        chain.value
    );
    assert!(chain.converged);
}

#[test]
fn flat_space_distance_is_tiny() {
    let cfg = SearchConfig::default();
    let d = estimate_dbar(
        &gallery::std_cn(2),
        &[c(0.0, 0.0); 2],
        &[c(1.0, 0.0), c(1.0, 0.0)],
        &OptimizerConfig::default(),
        &cfg,
    )
    .unwrap();
    assert!(d.value <= 1e-3 * 2f64.sqrt() * (1.0 + cfg.rel_tol), "{}", d.value);
}

#[test]
fn refinement_approaches_the_oracle() {
    let cfg = SearchConfig::default();
    let chart = gallery::unit_disk();
    let exact = poincare_from_zero(0.6);
    let errs: Vec<f64> = [4, 16, 64]
        .iter()
        .map(|&k| {
            let path = PathSpec::straight(&[c(0.0, 0.0)], &[c(0.0, 0.6)], k).unwrap();
            (estimate_d_chain(&chart, &path, &cfg).unwrap().value - exact).abs()
        })
        .collect();
    assert!(errs[2] < errs[0], "{errs:?}");
    assert!(errs[2] <= 0.02 * exact, "{errs:?}");
}

#[test]
fn reversed_path_has_the_same_length_on_the_disk() {
    let cfg = SearchConfig::default();
    let chart = gallery::unit_disk();
    let path = PathSpec::straight(&[c(-0.3, 0.1)], &[c(0.4, 0.2)], 32).unwrap();
    let a = path_length(&chart, &path, &cfg).unwrap();
    let b = path_length(&chart, &path.reversed(), &cfg).unwrap();
    assert!((a - b).abs() <= cfg.rel_tol * a.max(b), "{a} vs {b}");
}

#[test]
fn path_outside_the_chart_is_rejected() {
    let path = PathSpec::straight(&[c(0.0, 0.0)], &[c(1.2, 0.0)], 8).unwrap();
    let err = path_length(&gallery::unit_disk(), &path, &SearchConfig::default()).unwrap_err();
    assert!(matches!(err, Error::InvalidInput(_) | Error::Segment { .. }), "{err}");
}
