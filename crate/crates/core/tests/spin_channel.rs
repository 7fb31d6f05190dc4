use std::f64::consts::PI;

use luders_core::channel::{
    apply_channel, channel_spectrum, choi_min_eigenvalue, CHOI_FLOOR,
};
use luders_core::linalg::{hs_inner, identity, max_abs, max_abs_diff, ComplexMatrix};
use luders_core::spin::{
    harmonic_coefficients, harmonic_damping_deviation, overlap_squared_from_states, q_symbol_spin,
    spin_channel, spin_family, SphereQuadrature, SpherePoint, SpinSpace,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TWO_S: [u32; 5] = [1, 2, 3, 4, 5];

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `(2s)!(2s+1)! / ((2s−l)!(2s+1+l)!)`.
fn tau_oracle(two_s: u32, l: u32) -> f64 {
    factorial(two_s) * factorial(two_s + 1) / (factorial(two_s - l) * factorial(two_s + 1 + l))
}

fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let m = ComplexMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

fn random_point(rng: &mut impl Rng) -> SpherePoint {
    let cos_theta: f64 = rng.gen_range(-1.0..1.0);
    SpherePoint::new(cos_theta.acos(), rng.gen_range(0.0..2.0 * PI)).unwrap()
}

#[test]
fn spectrum_matches_damping_factors() {
    for two_s in TWO_S {
        let sp = SpinSpace::new(two_s).unwrap();
        let report = channel_spectrum(&spin_channel(&sp).unwrap()).unwrap();
        let mut expected: Vec<f64> = (0..=two_s)
            .flat_map(|l| std::iter::repeat(tau_oracle(two_s, l)).take(2 * l as usize + 1))
            .collect();
        expected.sort_by(|a, b| b.total_cmp(a));
        assert_eq!(report.eigenvalues.len(), expected.len());
        for (z, e) in report.eigenvalues.iter().zip(&expected) {
            assert!((z - e).norm() < 1e-9, "2s={two_s}: {z} vs {e}");
        }
    }
}

#[test]
fn spin_half_eigenvalues() {
    let sp = SpinSpace::new(1).unwrap();
    let report = channel_spectrum(&spin_channel(&sp).unwrap()).unwrap();
    let grouped = report.grouped(1e-9);
    assert_eq!(grouped.len(), 2);
    assert!((grouped[0].0 - 1.0).abs() < 1e-12 && grouped[0].1 == 1);
    assert!((grouped[1].0 - 1.0 / 3.0).abs() < 1e-12 && grouped[1].1 == 3);
}

#[test]
fn fixed_space_is_the_identity_line() {
    for two_s in TWO_S {
        let sp = SpinSpace::new(two_s).unwrap();
        let report = channel_spectrum(&spin_channel(&sp).unwrap()).unwrap();
        assert_eq!(report.fixed_space_dim, 1);
        let f = &report.fixed_basis[0];
        let d = sp.dim() as f64;
        let sign = f[(0, 0)].re.signum();
        let target = identity(sp.dim()) * Complex64::new(sign / d.sqrt(), 0.0);
        assert!(max_abs_diff(f, &target) < 1e-9, "2s={two_s}");
    }
}

#[test]
fn harmonic_damping_on_random_operators() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for two_s in TWO_S {
        let sp = SpinSpace::new(two_s).unwrap();
        let chan = spin_channel(&sp).unwrap();
        for _ in 0..20 {
            let b = random_hermitian(&mut rng, sp.dim());
            let dev = harmonic_damping_deviation(&sp, &chan, &b).unwrap();
            assert!(dev < 1e-9, "2s={two_s}: {dev:e}");
        }
    }
}

#[test]
fn damping_on_an_independent_grid() {
    // Projection on a denser product rule must give the same per-sector ratios.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for two_s in TWO_S {
        let sp = SpinSpace::new(two_s).unwrap();
        let n = two_s as usize;
        let grid = SphereQuadrature::with_nodes(two_s, 2 * n + 4, 4 * n + 7);
        let chan = spin_channel(&sp).unwrap();
        let b = random_hermitian(&mut rng, sp.dim());
        let out = apply_channel(&chan, &b).unwrap();
        let before = harmonic_coefficients(&q_symbol_spin(&sp, &b, &grid).unwrap(), &grid, &sp).unwrap();
        let after = harmonic_coefficients(&q_symbol_spin(&sp, &out, &grid).unwrap(), &grid, &sp).unwrap();
        for (&(l, m), c) in &before.coeffs {
            let diff = after.get(l, m) - c * tau_oracle(two_s, l);
            assert!(diff.norm() < 1e-9, "2s={two_s} l={l} m={m}");
        }
    }
}

#[test]
fn overlap_law_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for two_s in TWO_S {
        let sp = SpinSpace::new(two_s).unwrap();
        for _ in 0..100 {
            let (p1, p2) = (random_point(&mut rng), random_point(&mut rng));
            let [x1, y1, z1] = p1.unit_vector();
            let [x2, y2, z2] = p2.unit_vector();
            let expected = ((1.0 + x1 * x2 + y1 * y2 + z1 * z2) / 2.0).powi(two_s as i32);
            let got = overlap_squared_from_states(&sp, p1, p2);
            assert!((got - expected).abs() < 1e-12, "2s={two_s}");
        }
    }
}

#[test]
fn channel_is_unital_trace_preserving_and_self_dual() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for two_s in TWO_S {
        let sp = SpinSpace::new(two_s).unwrap();
        let d = sp.dim();
        let chan = spin_channel(&sp).unwrap();
        assert!(max_abs_diff(&apply_channel(&chan, &identity(d)).unwrap(), &identity(d)) < 1e-12);
        assert!(max_abs_diff(chan.matrix(), &chan.hs_adjoint().matrix().clone()) < 1e-12);
        for _ in 0..5 {
            let a = random_hermitian(&mut rng, d);
            let b = random_hermitian(&mut rng, d);
            let la = apply_channel(&chan, &a).unwrap();
            let lb = apply_channel(&chan, &b).unwrap();
            assert!((la.trace() - a.trace()).norm() < 1e-12);
            assert!((hs_inner(&a, &lb) - hs_inner(&la, &b)).norm() < 1e-12);
        }
    }
}

#[test]
fn superoperator_agrees_with_direct_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for two_s in TWO_S {
        let sp = SpinSpace::new(two_s).unwrap();
        let family = spin_family(&sp).unwrap();
        let chan = spin_channel(&sp).unwrap();
        let b = random_hermitian(&mut rng, sp.dim());
        let direct = family.apply(&b).unwrap();
        assert!(max_abs_diff(&direct, &apply_channel(&chan, &b).unwrap()) < 1e-12);
    }
}

#[test]
fn iterates_converge_to_trace_multiple_of_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for two_s in TWO_S {
        let sp = SpinSpace::new(two_s).unwrap();
        let d = sp.dim();
        let chan = spin_channel(&sp).unwrap();
        let b = random_hermitian(&mut rng, d);
        let limit = identity(d) * (b.trace() / d as f64);
        let mut x = b.clone();
        for _ in 0..50 {
            x = apply_channel(&chan, &x).unwrap();
        }
        // Slowest nontrivial mode decays as τ_1^50 = (2s/(2s+2))^50.
        let bound = tau_oracle(two_s, 1).powi(50) * max_abs(&b) * d as f64 + 1e-12;
        assert!(max_abs_diff(&x, &limit) <= bound, "2s={two_s}");
    }
}

#[test]
fn choi_matrix_is_positive() {
    for two_s in TWO_S {
        let sp = SpinSpace::new(two_s).unwrap();
        let chan = spin_channel(&sp).unwrap();
        assert!(choi_min_eigenvalue(&chan).unwrap() >= CHOI_FLOOR);
    }
}

#[test]
fn spin_half_jz_is_damped_by_a_third() {
    let sp = SpinSpace::new(1).unwrap();
    let chan = spin_channel(&sp).unwrap();
    let out = apply_channel(&chan, sp.jz()).unwrap();
    assert!(max_abs_diff(&out, &(sp.jz() * Complex64::new(1.0 / 3.0, 0.0))) < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn overlap_is_symmetric_and_bounded(
        two_s in 1u32..=8,
        c1 in -1.0f64..1.0, p1 in 0.0f64..6.28,
        c2 in -1.0f64..1.0, p2 in 0.0f64..6.28,
    ) {
        let sp = SpinSpace::new(two_s).unwrap();
        let a = SpherePoint::new(c1.acos(), p1).unwrap();
        let b = SpherePoint::new(c2.acos(), p2).unwrap();
        let ab = overlap_squared_from_states(&sp, a, b);
        let ba = overlap_squared_from_states(&sp, b, a);
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&ab));
    }
}
