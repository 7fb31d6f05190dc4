use std::f64::consts::PI;

use num_complex::Complex64;

use super::plane::PlaneQuadrature;
use super::{FockSpace, PlanePoint};
use crate::error::Result;
use crate::linalg::ComplexMatrix;

/// Coefficients below this modulus are flagged instead of compared.
pub const FLAG_THRESHOLD: f64 = 1e-8;
/// A symbol counts as decayed inside the disk when its largest value on the
/// outer ring is at most this fraction of its overall maximum.
pub const DECAY_TOL: f64 = 1e-5;

/// Discretized plane-wave coefficients `B_ξ = ∫ dμ(α) Q(α) e^{-(αξ* − α*ξ)}`.
#[derive(Debug, Clone)]
pub struct XiSpectrum {
    pub xi_points: Vec<PlanePoint>,
    pub coeffs: Vec<Complex64>,
}

pub fn xi_transform(grid: &PlaneQuadrature, samples: &[Complex64], xi_points: &[PlanePoint]) -> XiSpectrum {
    assert_eq!(samples.len(), grid.len());
    let coeffs = xi_points
        .iter()
        .map(|xi| {
            let x = xi.alpha;
            grid.points()
                .iter()
                .zip(grid.weights())
                .zip(samples)
                .map(|((p, w), q)| {
                    let a = p.alpha;
                    // αξ* − α*ξ is purely imaginary.
                    let phase = -(a * x.conj() - a.conj() * x).im;
                    q * Complex64::from_polar(*w, phase)
                })
                .sum()
        })
        .collect();
    XiSpectrum {
        xi_points: xi_points.to_vec(),
        coeffs,
    }
}

/// 25 samples on `0 < |ξ| ≤ 2`: five radii times five angles.
pub fn default_xi_points() -> Vec<PlanePoint> {
    let mut pts = Vec::with_capacity(25);
    for i in 1..=5 {
        let r = 0.4 * i as f64;
        for j in 0..5 {
            let angle = 2.0 * PI * j as f64 / 5.0 + 0.37 * i as f64;
            pts.push(PlanePoint::polar(r, angle));
        }
    }
    pts
}

#[derive(Debug, Clone)]
pub struct DampingPoint {
    pub xi: PlanePoint,
    pub source: Complex64,
    pub damped: Complex64,
    /// `damped / source`; `None` when flagged.
    pub ratio: Option<Complex64>,
    pub expected: f64,
}

#[derive(Debug, Clone)]
pub struct DampingReport {
    pub points: Vec<DampingPoint>,
    /// Both symbols fall off inside the grid disk.
    pub decayed: bool,
    pub flagged: usize,
    /// Largest `|ratio − e^{-|ξ|²}|` over unflagged points.
    pub max_deviation: f64,
}

fn decays(grid: &PlaneQuadrature, q: &[Complex64]) -> bool {
    let peak = q.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if peak == 0.0 {
        return false;
    }
    let edge = q[grid.outer_ring()].iter().fold(0.0f64, |m, z| m.max(z.norm()));
    edge <= DECAY_TOL * peak
}

/// Compares the plane-wave coefficients of `Q_B` and `Q_{Λ(B)}` against the
/// Gaussian damping `e^{-|ξ|²}`.
pub fn verify_damping(
    space: &FockSpace,
    b: &ComplexMatrix,
    grid: &PlaneQuadrature,
    xi_points: &[PlanePoint],
) -> Result<DampingReport> {
    let chan = grid.channel(space)?;
    let q_source = grid.q_symbol(space, b)?;
    let damped_op = chan.apply(b)?;
    let q_damped = grid.q_symbol(space, &damped_op)?;
    let decayed = decays(grid, &q_source) && decays(grid, &q_damped);

    let source = xi_transform(grid, &q_source, xi_points);
    let damped = xi_transform(grid, &q_damped, xi_points);
    let mut points = Vec::with_capacity(xi_points.len());
    let mut flagged = 0;
    let mut max_deviation = 0.0f64;
    for ((xi, s), d) in xi_points.iter().zip(&source.coeffs).zip(&damped.coeffs) {
        let expected = (-xi.alpha.norm_sqr()).exp();
        let ratio = if decayed && s.norm() >= FLAG_THRESHOLD {
            let r = d / s;
            max_deviation = max_deviation.max((r - expected).norm());
            Some(r)
        } else {
            flagged += 1;
            None
        };
        points.push(DampingPoint {
            xi: *xi,
            source: *s,
            damped: *d,
            ratio,
            expected,
        });
    }
    Ok(DampingReport {
        points,
        decayed,
        flagged,
        max_deviation,
    })
}
