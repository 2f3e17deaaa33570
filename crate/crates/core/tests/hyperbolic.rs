use jdisk::acs::gallery;
use jdisk::distance::OptimizerConfig;
use jdisk::hyperbolic::{
    direction_fan, disk_lattice, reduced_distance, scan, verdict, FibrationSpec, ScanConfig, Verdict,
};
use jdisk::pseudonorm::SearchConfig;
use jdisk::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn verdict_thresholds() {
    assert_eq!(verdict(0.5, 3.0, 0.5), Verdict::HyperbolicEvidence);
    assert_eq!(verdict(0.0, 0.05, 0.5), Verdict::NonhyperbolicEvidence);
    assert_eq!(verdict(0.1, 0.3, 0.5), Verdict::Inconclusive);
}

#[test]
fn larger_fan_extends_the_smaller_one() {
    let small = direction_fan(3, 5);
    let big = direction_fan(3, 12);
    assert_eq!(&big[..5], &small[..]);
    for v in &big {
        let n: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((n - 1.0).abs() < 1e-14);
    }
}

#[test]
fn larger_fan_cannot_raise_the_infimum() {
    let chart = gallery::unit_disk();
    let pts: Vec<Vec<C64>> = disk_lattice(0.6, 2).into_iter().map(|z| vec![z]).collect();
    let run = |m| {
        let cfg = ScanConfig {
            directions: m,
            ..ScanConfig::default()
        };
        scan(&chart, &pts, &cfg).unwrap()
    };
    let (a, b) = (run(2), run(6));
    assert!(b.inf_f1 <= a.inf_f1 && b.sup_f1 >= a.sup_f1);
    assert_eq!(b.verdict, Verdict::HyperbolicEvidence);
}

#[test]
fn flat_space_scan_is_nonhyperbolic() {
    let pts = vec![vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(1.0, -1.0), c(0.5, 0.0)]];
    let r = scan(&gallery::std_cn(2), &pts, &ScanConfig::default()).unwrap();
    assert_eq!(r.verdict, Verdict::NonhyperbolicEvidence);
    assert!(r.failures.is_empty());
    assert_eq!(r.samples.len(), 2 * 4);
}

#[test]
fn fiber_directions_are_free_in_disk_times_plane() {
    let chart = gallery::disk_times_plane();
    let fib = FibrationSpec::for_chart(&chart).unwrap();
    let x = [c(0.3, 0.0)];
    let reps = vec![
        (vec![c(0.0, 0.0)], vec![c(1.0, 1.0)]),
        (vec![c(-2.0, 0.0)], vec![c(0.0, 3.0)]),
    ];
    let opt = OptimizerConfig {
        segments: 8,
        sweeps: 4,
        ..OptimizerConfig::default()
    };
    let d = reduced_distance(&chart, &fib, &x, &x, &reps, &opt, &SearchConfig::default()).unwrap();
    assert!(d.value <= 1e-2, "{}", d.value);
    assert_eq!(d.samples.len(), 2);
}
