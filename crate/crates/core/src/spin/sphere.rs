use std::f64::consts::PI;

use num_complex::Complex64;

use super::coherent::spin_coherent_state;
use super::harmonics::{from_table, normalized_legendre};
use super::space::{SpherePoint, SpinSpace};
use crate::channel::WeightedProjectorFamily;
use crate::error::Result;

/// Product rule on the sphere: Gauss-Legendre in `cos θ` times a uniform `φ`
/// grid. Weights carry the coherent-state measure `(2s+1)/(4π) dΩ`, so they
/// sum to `2s+1`.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    two_s: u32,
    points: Vec<SpherePoint>,
    weights: Vec<f64>,
    exact_degree: u32,
}

impl SphereQuadrature {
    /// `n_theta × n_phi` product rule for spin `two_s / 2`; exact for all
    /// spherical harmonics of degree `≤ min(2 n_theta - 1, n_phi - 1)`.
    pub fn with_nodes(two_s: u32, n_theta: usize, n_phi: usize) -> Self {
        assert!(n_theta > 0 && n_phi > 0);
        let (x, gw) = crate::quadrature::gauss_legendre(n_theta);
        let scale = f64::from(two_s + 1) / (4.0 * PI) * (2.0 * PI / n_phi as f64);
        let mut points = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for (xi, wi) in x.iter().zip(&gw) {
            let theta = xi.clamp(-1.0, 1.0).acos();
            for j in 0..n_phi {
                let phi = 2.0 * PI * j as f64 / n_phi as f64;
                points.push(SpherePoint { theta, phi });
                weights.push(wi * scale);
            }
        }
        let exact_degree = (2 * n_theta as u32 - 1).min(n_phi as u32 - 1);
        Self {
            two_s,
            points,
            weights,
            exact_degree,
        }
    }

    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn exact_degree(&self) -> u32 {
        self.exact_degree
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `∫ dΩ f` from samples at the nodes (plain solid-angle measure).
    pub fn integrate_solid_angle(&self, samples: &[Complex64]) -> Complex64 {
        assert_eq!(samples.len(), self.len());
        let to_solid = 4.0 * PI / f64::from(self.two_s + 1);
        samples
            .iter()
            .zip(&self.weights)
            .map(|(f, w)| f * (w * to_solid))
            .sum()
    }

    /// Harmonic values `Y_lm` at every node for `l ≤ lmax`, laid out
    /// `[node][l² + l + m]`.
    pub(crate) fn harmonic_table(&self, lmax: u32) -> Vec<Vec<Complex64>> {
        self.points
            .iter()
            .map(|pt| {
                let table = normalized_legendre(lmax as usize, pt.theta.cos());
                let mut row = Vec::with_capacity(((lmax + 1) * (lmax + 1)) as usize);
                for l in 0..=lmax {
                    for m in -(l as i32)..=(l as i32) {
                        row.push(from_table(&table, l, m, pt.phi));
                    }
                }
                row
            })
            .collect()
    }

    /// The coherent-state projector family carried by this grid.
    pub fn family(&self, space: &SpinSpace) -> Result<WeightedProjectorFamily> {
        let states = self
            .points
            .iter()
            .map(|&pt| spin_coherent_state(space, pt))
            .collect();
        WeightedProjectorFamily::new(states, self.weights.clone())
    }
}

/// The minimal exact rule for spin `s`: `2s+1` polar nodes and `4s+1`
/// azimuthal nodes, exact up to harmonic degree `4s`.
pub fn sphere_quadrature(space: &SpinSpace) -> SphereQuadrature {
    let two_s = space.two_s() as usize;
    SphereQuadrature::with_nodes(space.two_s(), two_s + 1, 2 * two_s + 1)
}
