use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::gamma_ur;

use super::{coherent_components, FockSpace, PlanePoint};
use crate::channel::WeightedProjectorFamily;
use crate::error::{Error, Result};
use crate::linalg::{identity, max_abs_diff_block, ComplexMatrix};

pub const DEFAULT_DIM: usize = 160;
/// `sqrt(DEFAULT_DIM / 4)`, the largest radius the truncation bound admits.
pub const DEFAULT_RADIUS: f64 = 6.324_555_320_336_759;
pub const DEFAULT_RADIAL: usize = 64;
pub const DEFAULT_ANGULAR: usize = 96;
/// Bound on the disk-tail mass `Q(G + 4, R²)` defining the guard block.
pub const GUARD_TAIL_TOL: f64 = 1e-8;
/// Resolution of unity asserted on the guard block.
pub const GUARD_UNITY_TOL: f64 = 1e-8;

/// Largest guard block `G` for a disk of radius `R` in a `dim`-level space.
///
/// Level `k` of the disk-restricted frame operator is short of one by the
/// regularized upper incomplete gamma `Q(k+1, R²)`; degree-4 operators shift
/// the relevant levels by up to 2 in each index, so `G` is the largest value
/// with `Q(G+4, R²) ≤ GUARD_TAIL_TOL`, capped at `dim − 8`.
pub fn guard_dimension(dim: usize, radius: f64) -> usize {
    let r2 = radius * radius;
    let cap = dim.saturating_sub(8);
    let mut g = 0;
    while g < cap && gamma_ur((g + 1 + 4) as f64, r2) <= GUARD_TAIL_TOL {
        g += 1;
    }
    g
}

/// Product rule on the disk `|α| ≤ R`: Gauss-Legendre in `r²` on `[0, R²]`
/// times a uniform angle grid. Weights carry the measure `d²α/π` and sum to
/// `R²`.
#[derive(Debug, Clone)]
pub struct PlaneQuadrature {
    points: Vec<PlanePoint>,
    weights: Vec<f64>,
    radius: f64,
    n_radial: usize,
    n_angular: usize,
}

impl PlaneQuadrature {
    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Nodes on the outermost radial ring.
    pub fn outer_ring(&self) -> std::ops::Range<usize> {
        let start = (self.n_radial - 1) * self.n_angular;
        start..start + self.n_angular
    }

    /// Truncated coherent-state family on this grid, validated on the guard
    /// block of [`guard_dimension`].
    pub fn family(&self, space: &FockSpace) -> Result<WeightedProjectorFamily> {
        let guard = guard_dimension(space.dim(), self.radius);
        if guard == 0 {
            return Err(Error::InvalidFamily(format!(
                "radius {:.4} leaves no guard block in dimension {}",
                self.radius,
                space.dim()
            )));
        }
        let states = self
            .points
            .iter()
            .map(|p| coherent_components(space.dim(), p.alpha))
            .collect();
        WeightedProjectorFamily::with_guard(states, self.weights.clone(), guard, GUARD_UNITY_TOL)
    }

    /// Q-symbol samples `⟨α_k|B|α_k⟩` (truncated states), in grid order.
    pub fn q_symbol(&self, space: &FockSpace, b: &ComplexMatrix) -> Result<Vec<Complex64>> {
        check_square(space, b)?;
        let nphi = self.n_angular;
        let mut out = Vec::with_capacity(self.len());
        for ring in self.rings(space.dim()) {
            let moments = ring.angular_moments(b, nphi);
            for j in 0..nphi {
                let phi = 2.0 * PI * j as f64 / nphi as f64;
                out.push(
                    moments
                        .iter()
                        .enumerate()
                        .map(|(res, m)| m * Complex64::from_polar(1.0, -(res as f64) * phi))
                        .sum(),
                );
            }
        }
        Ok(out)
    }

    /// Lüders channel of this grid, validated on the guard block.
    pub fn channel(&self, space: &FockSpace) -> Result<PlaneChannel> {
        let guard = guard_dimension(space.dim(), self.radius);
        if guard == 0 {
            return Err(Error::InvalidFamily(format!(
                "radius {:.4} leaves no guard block in dimension {}",
                self.radius,
                space.dim()
            )));
        }
        let chan = PlaneChannel {
            dim: space.dim(),
            n_angular: self.n_angular,
            guard,
            rings: self.rings(space.dim()),
        };
        let deviation = chan.resolution_defect(guard);
        if deviation > GUARD_UNITY_TOL {
            return Err(Error::ResolutionOfUnity {
                deviation,
                tolerance: GUARD_UNITY_TOL,
            });
        }
        Ok(chan)
    }

    fn rings(&self, dim: usize) -> Vec<Ring> {
        (0..self.n_radial)
            .map(|k| {
                let first = k * self.n_angular;
                let r = self.points[first].alpha.norm();
                Ring {
                    weight: self.weights[first] * self.n_angular as f64,
                    profile: coherent_components(dim, Complex64::new(r, 0.0)).iter().map(|z| z.re).collect(),
                }
            })
            .collect()
    }
}

fn check_square(space: &FockSpace, b: &ComplexMatrix) -> Result<()> {
    if b.nrows() != space.dim() || b.ncols() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            actual: b.nrows(),
        });
    }
    Ok(())
}

/// One radial node: `|r e^{iφ}⟩ = Σ_n c_n e^{inφ} |n⟩` with real `c_n`.
#[derive(Debug, Clone)]
struct Ring {
    /// Sum of the node weights on the ring.
    weight: f64,
    profile: Vec<f64>,
}

impl Ring {
    /// `A[ρ] = Σ_{d ≡ ρ (mod N_φ)} Σ_l c_{l+d} c_l B_{l+d, l}`, so that
    /// `⟨α_j|B|α_j⟩ = Σ_ρ A[ρ] e^{−iρφ_j}`.
    fn angular_moments(&self, b: &ComplexMatrix, nphi: usize) -> Vec<Complex64> {
        let c = &self.profile;
        let dim = c.len();
        let mut moments = vec![Complex64::new(0.0, 0.0); nphi];
        for col in 0..dim {
            for row in 0..dim {
                let d = row as i64 - col as i64;
                moments[d.rem_euclid(nphi as i64) as usize] += b[(row, col)] * (c[row] * c[col]);
            }
        }
        moments
    }
}

/// Lüders map of a [`PlaneQuadrature`], evaluated ring by ring.
///
/// Summing `Σ_j w q_j |α_j⟩⟨α_j|` over a uniform angle grid leaves only the
/// aliased diagonals `m − n ≡ ρ (mod N_φ)`, so each ring costs `O(D²)`.
/// The result equals the projector sum of [`PlaneQuadrature::family`].
#[derive(Debug, Clone)]
pub struct PlaneChannel {
    dim: usize,
    n_angular: usize,
    guard: usize,
    rings: Vec<Ring>,
}

impl PlaneChannel {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    /// `Σ_k w_k |α_k⟩⟨α_k|`.
    pub fn frame_operator(&self) -> ComplexMatrix {
        let nphi = self.n_angular as i64;
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for ring in &self.rings {
            let c = &ring.profile;
            for col in 0..self.dim {
                for row in 0..self.dim {
                    if (row as i64 - col as i64).rem_euclid(nphi) == 0 {
                        out[(row, col)] += ring.weight * c[row] * c[col];
                    }
                }
            }
        }
        out
    }

    pub fn resolution_defect(&self, block: usize) -> f64 {
        max_abs_diff_block(&self.frame_operator(), &identity(self.dim), block.min(self.dim))
    }

    pub fn apply(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        if b.nrows() != self.dim || b.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: b.nrows(),
            });
        }
        let nphi = self.n_angular as i64;
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for ring in &self.rings {
            let moments = ring.angular_moments(b, self.n_angular);
            let c = &ring.profile;
            for col in 0..self.dim {
                for row in 0..self.dim {
                    let res = (row as i64 - col as i64).rem_euclid(nphi) as usize;
                    out[(row, col)] += moments[res] * (ring.weight * c[row] * c[col]);
                }
            }
        }
        Ok(out)
    }
}

pub fn plane_quadrature(
    space: &FockSpace,
    radius: f64,
    n_radial: usize,
    n_angular: usize,
) -> Result<PlaneQuadrature> {
    if !(radius > 0.0) || n_radial == 0 || n_angular == 0 {
        return Err(Error::InvalidFamily(format!(
            "plane grid needs positive radius and node counts (got R = {radius}, {n_radial}×{n_angular})"
        )));
    }
    let bound = space.truncation_bound();
    if radius * radius > bound * (1.0 + super::BOUND_SLACK) {
        return Err(Error::Truncation {
            norm_sqr: radius * radius,
            bound,
            dim: space.dim(),
        });
    }
    let (u, w) = crate::quadrature::gauss_legendre_interval(n_radial, 0.0, radius * radius);
    let mut points = Vec::with_capacity(n_radial * n_angular);
    let mut weights = Vec::with_capacity(n_radial * n_angular);
    for (uk, wk) in u.iter().zip(&w) {
        // d²α/π = du dφ / 2π with u = r².
        let weight = wk / n_angular as f64;
        for j in 0..n_angular {
            let angle = 2.0 * PI * j as f64 / n_angular as f64;
            points.push(PlanePoint::polar(uk.sqrt(), angle));
            weights.push(weight);
        }
    }
    Ok(PlaneQuadrature {
        points,
        weights,
        radius,
        n_radial,
        n_angular,
    })
}
