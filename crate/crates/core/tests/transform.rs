use jdisk::transform::{apply_t, dbar, dz, holder_norm, holder_norm_points, DiskGrid};
use jdisk::C64;

fn pompeiu_sup(n_r: usize, n_t: usize, f: impl Fn(C64) -> C64 + Copy) -> f64 {
    let g = DiskGrid::scalar(1.0, n_r, n_t, 0.5, f);
    let back = dbar(&apply_t(&g).unwrap()).unwrap();
    g.interior_nodes(0.9)
        .into_iter()
        .map(|k| (back.component(0)[k] - g.component(0)[k]).norm())
        .fold(0.0, f64::max)
}

#[test]
fn dbar_inverts_transform_with_refinement() {
    let f = |z: C64| z * z.conj() + z.powi(2);
    let coarse = pompeiu_sup(16, 32, f);
    let fine = pompeiu_sup(32, 64, f);
    assert!(fine < coarse, "{fine} !< {coarse}");
    assert!(fine < 5e-2, "{fine}");
}

#[test]
fn transform_of_one_is_conjugate() {
    let one = DiskGrid::scalar(0.7, 16, 32, 0.5, |_| C64::new(1.0, 0.0));
    let t = apply_t(&one).unwrap();
    for k in 0..one.node_count() {
        assert!((t.component(0)[k] - one.node(k).conj()).norm() < 1e-10);
    }
}

#[test]
fn derivatives_exact_on_affine() {
    let (a, b, c) = (C64::new(0.3, -1.0), C64::new(2.0, 0.5), C64::new(-0.7, 0.2));
    let g = DiskGrid::scalar(1.3, 12, 24, 0.5, move |z| a + b * z + c * z.conj());
    let (gz, gzb) = (dz(&g).unwrap(), dbar(&g).unwrap());
    for k in 0..g.node_count() {
        assert!((gz.component(0)[k] - b).norm() < 1e-10);
        assert!((gzb.component(0)[k] - c).norm() < 1e-10);
    }
}

#[test]
fn holder_seminorm_grows_with_the_pair_set() {
    let g = DiskGrid::scalar(1.0, 8, 16, 0.5, |z| z.conj() * z * z);
    let full = holder_norm(&g, 0.5).unwrap();
    let pts: Vec<C64> = (0..g.node_count()).map(|k| g.node(k)).collect();
    let vals: Vec<Vec<C64>> = (0..g.node_count()).map(|k| g.at(k)).collect();
    let half = pts.len() / 2;
    let sub = holder_norm_points(&pts[..half], &vals[..half], 0.5).unwrap();
    let all = holder_norm_points(&pts, &vals, 0.5).unwrap();
    assert!(sub <= all);
    assert!((all - full).abs() <= 1e-12 * full);
}

#[test]
fn text_dump_round_trips() {
    let g = DiskGrid::scalar(0.9, 4, 8, 0.25, |z| z.exp());
    let back = DiskGrid::from_text(&g.to_text()).unwrap();
    assert_eq!(back, g);
}
