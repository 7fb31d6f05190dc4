use num_complex::Complex64;

use super::space::{SpherePoint, SpinSpace};
use crate::linalg::ComplexVector;

/// `C(n, k)` for `n ≤ 50`; exact in `u128`.
pub(crate) fn binomial(n: u32, k: u32) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * u128::from(n - j) / u128::from(j + 1);
    }
    acc
}

/// Spin coherent state `|n⟩` with components
/// `sqrt(C(2s, s+m)) cos^{s+m}(θ/2) sin^{s-m}(θ/2) e^{-imφ}`.
pub fn spin_coherent_state(space: &SpinSpace, pt: SpherePoint) -> ComplexVector {
    let two_s = space.two_s();
    let (sh, ch) = (0.5 * pt.theta).sin_cos();
    ComplexVector::from_fn(space.dim(), |k, _| {
        // s + m = 2s - k and s - m = k for basis index k.
        let up = two_s - k as u32;
        let down = k as u32;
        let amp = (binomial(two_s, up) as f64).sqrt() * ch.powi(up as i32) * sh.powi(down as i32);
        let m = space.m(k);
        Complex64::from_polar(amp, -m * pt.phi)
    })
}

/// `|⟨n₁|n₂⟩|² = ((1 + n₁·n₂)/2)^{2s}`.
pub fn overlap_squared(space: &SpinSpace, p1: SpherePoint, p2: SpherePoint) -> f64 {
    let c = (0.5 * (1.0 + p1.dot(&p2))).clamp(0.0, 1.0);
    c.powi(space.two_s() as i32)
}

/// The same overlap evaluated from the state vectors.
pub fn overlap_squared_from_states(space: &SpinSpace, p1: SpherePoint, p2: SpherePoint) -> f64 {
    let a = spin_coherent_state(space, p1);
    let b = spin_coherent_state(space, p2);
    a.dotc(&b).norm_sqr()
}
