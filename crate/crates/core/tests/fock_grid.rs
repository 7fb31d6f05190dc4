use luders_core::algebra::{luders_symbolic, normal_order, parse_expression, to_matrix, Monomial, NormalPolynomial, Scalar};
use luders_core::fock::{
    default_xi_points, fock_coherent_state, guard_dimension, plane_quadrature,
    position_commutator_expectation, verify_damping, FockSpace, PlanePoint, PlaneQuadrature,
    DEFAULT_ANGULAR, DEFAULT_DIM, DEFAULT_RADIAL, DEFAULT_RADIUS,
};
use luders_core::linalg::{identity, max_abs_diff_block, projector};
use num_complex::Complex64;
use num_traits::One;

fn default_grid() -> (FockSpace, PlaneQuadrature, usize) {
    let space = FockSpace::new(DEFAULT_DIM);
    let grid = plane_quadrature(&space, DEFAULT_RADIUS, DEFAULT_RADIAL, DEFAULT_ANGULAR).unwrap();
    let guard = guard_dimension(DEFAULT_DIM, DEFAULT_RADIUS);
    (space, grid, guard)
}

#[test]
fn grid_channel_matches_symbolic_map() {
    let (space, grid, guard) = default_grid();
    assert!(guard >= 4);
    let chan = grid.channel(&space).unwrap();
    for m in 0..=4u32 {
        for n in 0..=4 - m {
            let p = NormalPolynomial::monomial(m, n, Scalar::one());
            let grid_out = chan.apply(&to_matrix(&p, &space).unwrap()).unwrap();
            let exact = to_matrix(&luders_symbolic(&p), &space).unwrap();
            let dev = max_abs_diff_block(&grid_out, &exact, guard);
            assert!(dev < 1e-6, "ad^{m} a^{n}: {dev:e}");
        }
    }
}

#[test]
fn grid_reproduces_position_squared_shift() {
    let (space, grid, guard) = default_grid();
    let chan = grid.channel(&space).unwrap();
    let q2 = normal_order(&parse_expression("q^2").unwrap());
    let out = chan.apply(&to_matrix(&q2, &space).unwrap()).unwrap();
    let expected = to_matrix(&q2, &space).unwrap() + identity(space.dim()) * Complex64::new(0.5, 0.0);
    assert!(max_abs_diff_block(&out, &expected, guard) < 1e-6);
}

#[test]
fn ring_route_agrees_with_projector_sum_at_defaults() {
    let (space, grid, guard) = default_grid();
    let family = grid.family(&space).unwrap();
    let chan = grid.channel(&space).unwrap();
    assert_eq!(family.guard(), chan.guard());
    let p = normal_order(&parse_expression("q^2 - 2*i*p*q + ad^3*a").unwrap());
    let b = to_matrix(&p, &space).unwrap();
    let slow = family.apply(&b).unwrap();
    let fast = chan.apply(&b).unwrap();
    assert!(max_abs_diff_block(&slow, &fast, space.dim()) < 1e-9);
    assert!(max_abs_diff_block(&fast, &to_matrix(&luders_symbolic(&p), &space).unwrap(), guard) < 1e-6);
}

#[test]
fn commutator_expectation_closed_form() {
    let space = FockSpace::new(40);
    let pts = [(0.0, 0.0), (0.5, -0.3), (-0.8, 0.6), (1.1, 1.0), (0.2, -1.4)];
    for &(ar, ai) in &pts {
        for &(br, bi) in &pts {
            let (al, be) = (PlanePoint::new(ar, ai), PlanePoint::new(br, bi));
            let (a, b) = (al.alpha, be.alpha);
            // Independent evaluation: ⟨β|Q|α⟩⟨α|β⟩ − ⟨β|α⟩⟨α|Q|β⟩ with Q|α⟩ from a|α⟩ = α|α⟩.
            let overlap = (-(a - b).norm_sqr()).exp();
            let expected = 0.5 * ((b.conj() + a) - (b + a.conj())) * overlap;
            let got = position_commutator_expectation(&space, al, be).unwrap();
            assert!((got - expected).norm() < 1e-8, "α={a} β={b}");
        }
    }
}

#[test]
fn projector_symbol_is_a_broadened_gaussian() {
    let (space, grid, _) = default_grid();
    let chan = grid.channel(&space).unwrap();
    let beta = PlanePoint::new(0.6, -0.4);
    let proj = projector(&fock_coherent_state(&space, beta).unwrap());
    let out = chan.apply(&proj).unwrap();
    for &(x, y) in &[(0.0, 0.0), (0.6, -0.4), (1.5, 0.5), (-1.0, 1.2), (2.0, -2.0)] {
        let alpha = PlanePoint::new(x, y);
        let psi = fock_coherent_state(&space, alpha).unwrap();
        let q = psi.dotc(&(&out * &psi));
        let expected = 0.5 * (-(alpha.alpha - beta.alpha).norm_sqr() / 2.0).exp();
        assert!((q - expected).norm() < 1e-8, "α=({x},{y})");
    }
}

#[test]
fn damping_ratio_of_coherent_projector() {
    let (space, grid, _) = default_grid();
    let beta = PlanePoint::new(0.3, 0.2);
    let proj = projector(&fock_coherent_state(&space, beta).unwrap());
    let report = verify_damping(&space, &proj, &grid, &default_xi_points()).unwrap();
    assert!(report.decayed);
    assert_eq!(report.flagged, 0);
    assert!(report.max_deviation < 1e-4, "{:e}", report.max_deviation);
    for pt in &report.points {
        let r = pt.ratio.unwrap();
        assert!((r - (-pt.xi.alpha.norm_sqr()).exp()).norm() < 1e-4);
    }
}

#[test]
fn identity_symbol_is_flagged() {
    let (space, grid, _) = default_grid();
    let report = verify_damping(&space, &identity(space.dim()), &grid, &default_xi_points()).unwrap();
    assert!(!report.decayed);
    assert_eq!(report.flagged, report.points.len());
}

#[test]
fn normal_order_to_matrix_matches_products() {
    let space = FockSpace::new(12);
    let a = space.a();
    let ad = space.adag();
    for m in 0..=3u32 {
        for n in 0..=3u32 {
            let p = NormalPolynomial::from_terms([(Monomial::new(m, n), Scalar::one())]);
            let mut direct = identity(12);
            for _ in 0..m {
                direct = &direct * ad;
            }
            for _ in 0..n {
                direct = &direct * a;
            }
            assert!(max_abs_diff_block(&to_matrix(&p, &space).unwrap(), &direct, 12) < 1e-12);
        }
    }
}
