//! Spin-`s` coherent states, their sphere quadrature, Q-symbols and the
//! harmonic damping factors of the spin Lüders channel.

mod coherent;
mod harmonics;
mod space;
mod sphere;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub use coherent::{overlap_squared, overlap_squared_from_states, spin_coherent_state};
pub use harmonics::{normalized_legendre, spherical_harmonic};
pub use space::{SpherePoint, SpinSpace, MAX_TWO_S};
pub use sphere::{sphere_quadrature, SphereQuadrature};

use crate::channel::{self, SuperoperatorMatrix, WeightedProjectorFamily};
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};

/// Q-symbol samples `⟨n_k|B|n_k⟩` on the grid nodes.
pub fn q_symbol_spin(
    space: &SpinSpace,
    b: &ComplexMatrix,
    grid: &SphereQuadrature,
) -> Result<Vec<Complex64>> {
    if b.nrows() != space.dim() || b.ncols() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            actual: b.nrows(),
        });
    }
    Ok(grid
        .points()
        .iter()
        .map(|&pt| linalg::expectation(&spin_coherent_state(space, pt), b))
        .collect())
}

/// Coefficients `B_lm`, `0 ≤ l ≤ 2s`, of a Q-symbol in the expansion
/// `Q(n) = sqrt(4π/(2s+1)) Σ B_lm Y_lm(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicCoefficients {
    pub two_s: u32,
    pub coeffs: BTreeMap<(u32, i32), Complex64>,
}

impl HarmonicCoefficients {
    pub fn get(&self, l: u32, m: i32) -> Complex64 {
        self.coeffs.get(&(l, m)).copied().unwrap_or_default()
    }

    fn prefactor(&self) -> f64 {
        (4.0 * PI / f64::from(self.two_s + 1)).sqrt()
    }

    /// Evaluates the expansion at a point.
    pub fn reconstruct(&self, pt: SpherePoint) -> Complex64 {
        let table = normalized_legendre(self.two_s as usize, pt.theta.cos());
        let sum: Complex64 = self
            .coeffs
            .iter()
            .map(|(&(l, m), c)| c * harmonics::from_table(&table, l, m, pt.phi))
            .sum();
        sum * self.prefactor()
    }
}

/// Projects Q-symbol samples onto `Y_lm`, `l ≤ 2s`, using the grid weights.
/// The grid must be exact to degree `4s` so the projection is exact.
pub fn harmonic_coefficients(
    samples: &[Complex64],
    grid: &SphereQuadrature,
    space: &SpinSpace,
) -> Result<HarmonicCoefficients> {
    let two_s = space.two_s();
    if grid.exact_degree() < 2 * two_s {
        return Err(Error::QuadratureTooCoarse {
            exact: grid.exact_degree(),
            required: 2 * two_s,
        });
    }
    if samples.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            actual: samples.len(),
        });
    }
    let table = grid.harmonic_table(two_s);
    let prefactor = (4.0 * PI / f64::from(two_s + 1)).sqrt();
    let mut coeffs = BTreeMap::new();
    let mut idx = 0;
    for l in 0..=two_s {
        for m in -(l as i32)..=(l as i32) {
            let c: Complex64 = samples
                .iter()
                .zip(grid.weights())
                .zip(&table)
                .map(|((q, w), row)| q * row[idx].conj() * *w)
                .sum();
            coeffs.insert((l, m), c * prefactor);
            idx += 1;
        }
    }
    Ok(HarmonicCoefficients { two_s, coeffs })
}

/// Exact damping factor `(2s)!(2s+1)! / ((2s-l)!(2s+1+l)!)` on the degree-`l`
/// harmonic sector.
pub fn tau_spin_exact(space: &SpinSpace, l: u32) -> Result<BigRational> {
    let two_s = space.two_s();
    if l > two_s {
        return Err(Error::DegreeOutOfRange { l, two_s });
    }
    let mut num = BigInt::from(1u32);
    let mut den = BigInt::from(1u32);
    for k in 0..l {
        num *= two_s - k;
        den *= two_s + 2 + k;
    }
    Ok(BigRational::new(num, den))
}

pub fn tau_spin(space: &SpinSpace, l: u32) -> Result<f64> {
    let exact = tau_spin_exact(space, l)?;
    Ok(exact.to_f64().expect("ratio of bounded integers is finite"))
}

/// Expected Lüders spectrum: `(τ_l, 2l+1)` for `l = 0..=2s`.
pub fn spectrum_law(space: &SpinSpace) -> Vec<(f64, usize)> {
    (0..=space.two_s())
        .map(|l| {
            let tau = tau_spin(space, l).expect("l within range");
            (tau, 2 * l as usize + 1)
        })
        .collect()
}

/// Projector family of the minimal exact sphere rule.
pub fn spin_family(space: &SpinSpace) -> Result<WeightedProjectorFamily> {
    sphere_quadrature(space).family(space)
}

/// Lüders superoperator of the spin CS-POVM.
pub fn spin_channel(space: &SpinSpace) -> Result<SuperoperatorMatrix> {
    channel::build_luders_channel(&spin_family(space)?)
}

/// Largest `|B'_lm − τ_l B_lm|` where `B'` are the coefficients of the
/// Q-symbol of `Λ(B)`.
pub fn harmonic_damping_deviation(
    space: &SpinSpace,
    chan: &SuperoperatorMatrix,
    b: &ComplexMatrix,
) -> Result<f64> {
    let grid = sphere_quadrature(space);
    let before = harmonic_coefficients(&q_symbol_spin(space, b, &grid)?, &grid, space)?;
    let out = channel::apply_channel(chan, b)?;
    let after = harmonic_coefficients(&q_symbol_spin(space, &out, &grid)?, &grid, space)?;
    let mut worst = 0.0f64;
    for (&(l, m), c) in &before.coeffs {
        let tau = tau_spin(space, l)?;
        worst = worst.max((after.get(l, m) - c * tau).norm());
    }
    Ok(worst)
}
