//! Truncated Fock space for the particle coherent-state POVM.
//!
//! Matrices live on levels `0..D`. Truncation corrupts the top levels, so
//! numerical statements are made on a leading guard block whose size is set
//! by the phase-space grid (see [`guard_dimension`]).

mod damping;
mod plane;

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

pub use damping::{default_xi_points, verify_damping, xi_transform, DampingPoint, DampingReport, XiSpectrum};
pub use plane::{
    guard_dimension, plane_quadrature, PlaneChannel, PlaneQuadrature, DEFAULT_ANGULAR, DEFAULT_DIM, DEFAULT_RADIAL,
    DEFAULT_RADIUS, GUARD_TAIL_TOL, GUARD_UNITY_TOL,
};

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ComplexVector};

#[derive(Debug, Clone)]
pub struct FockSpace {
    dim: usize,
    a: ComplexMatrix,
    adag: ComplexMatrix,
}

impl FockSpace {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "Fock space needs at least the vacuum");
        let a = ComplexMatrix::from_fn(dim, dim, |r, c| {
            if c == r + 1 {
                Complex64::new((c as f64).sqrt(), 0.0)
            } else {
                linalg::ZERO
            }
        });
        let adag = a.adjoint();
        Self { dim, a, adag }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Lowering operator.
    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    /// Raising operator.
    pub fn adag(&self) -> &ComplexMatrix {
        &self.adag
    }

    /// Position `(a + a†)/2`.
    pub fn position(&self) -> ComplexMatrix {
        (&self.a + &self.adag) * Complex64::new(0.5, 0.0)
    }

    /// Momentum `(a − a†)/2i`.
    pub fn momentum(&self) -> ComplexMatrix {
        (&self.a - &self.adag) * Complex64::new(0.0, -0.5)
    }

    /// Largest `|α|²` accepted for coherent states and displacements.
    pub fn truncation_bound(&self) -> f64 {
        self.dim as f64 / 4.0
    }

    fn check_alpha(&self, alpha: PlanePoint) -> Result<()> {
        let norm_sqr = alpha.alpha.norm_sqr();
        let bound = self.truncation_bound();
        if !(norm_sqr <= bound * (1.0 + BOUND_SLACK)) {
            return Err(Error::Truncation {
                norm_sqr,
                bound,
                dim: self.dim,
            });
        }
        Ok(())
    }
}

/// Relative slack on the truncation bound, absorbing rounding in `R²`.
pub(crate) const BOUND_SLACK: f64 = 1e-12;

/// A phase-space label `α ∈ ℂ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub alpha: Complex64,
}

impl PlanePoint {
    pub fn new(re: f64, im: f64) -> Self {
        Self {
            alpha: Complex64::new(re, im),
        }
    }

    pub fn polar(r: f64, angle: f64) -> Self {
        Self {
            alpha: Complex64::from_polar(r, angle),
        }
    }
}

impl From<Complex64> for PlanePoint {
    fn from(alpha: Complex64) -> Self {
        Self { alpha }
    }
}

/// Truncated coherent state with components `e^{-|α|²/2} α^k / sqrt(k!)`.
pub fn fock_coherent_state(space: &FockSpace, alpha: PlanePoint) -> Result<ComplexVector> {
    space.check_alpha(alpha)?;
    Ok(coherent_components(space.dim, alpha.alpha))
}

/// Components without the truncation guard; callers vouch for `|α|`.
pub(crate) fn coherent_components(dim: usize, alpha: Complex64) -> ComplexVector {
    let mut v = ComplexVector::zeros(dim);
    v[0] = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    if alpha.norm() == 0.0 {
        return v;
    }
    let (ln_r, angle) = (alpha.norm().ln(), alpha.arg());
    let mut log_mag = -0.5 * alpha.norm_sqr();
    for k in 1..dim {
        log_mag += ln_r - 0.5 * (k as f64).ln();
        v[k] = Complex64::from_polar(log_mag.exp(), k as f64 * angle);
    }
    v
}

/// `D(α) = exp(α a† − α* a)` via the eigendecomposition of the Hermitian
/// matrix `i(α a† − α* a)`.
pub fn displacement_matrix(space: &FockSpace, alpha: PlanePoint) -> Result<ComplexMatrix> {
    space.check_alpha(alpha)?;
    let a = alpha.alpha;
    let generator = &space.adag * a - &space.a * a.conj();
    let herm = linalg::hermitian_part(&(generator * linalg::I));
    let eig = SymmetricEigen::try_new(herm, f64::EPSILON, 0)
        .ok_or_else(|| Error::Eigensolver("displacement generator".into()))?;
    let phases = ComplexMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, -l)));
    Ok(&eig.eigenvectors * phases * eig.eigenvectors.adjoint())
}

/// `⟨β|[Q, |α⟩⟨α|]|β⟩` from truncated matrices, `Q = (a + a†)/2`.
pub fn position_commutator_expectation(
    space: &FockSpace,
    alpha: PlanePoint,
    beta: PlanePoint,
) -> Result<Complex64> {
    let psi_a = fock_coherent_state(space, alpha)?;
    let psi_b = fock_coherent_state(space, beta)?;
    let comm = linalg::commutator(&space.position(), &linalg::projector(&psi_a));
    Ok(linalg::expectation(&psi_b, &comm))
}

/// Closed form `½((α − α*) − (β − β*)) e^{−|α−β|²}`.
pub fn position_commutator_closed_form(alpha: PlanePoint, beta: PlanePoint) -> Complex64 {
    let (a, b) = (alpha.alpha, beta.alpha);
    ((a - a.conj()) - (b - b.conj())) * 0.5 * (-(a - b).norm_sqr()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, max_abs_diff_block};

    #[test]
    fn ladder_operators() {
        let sp = FockSpace::new(10);
        let a = sp.a();
        for k in 1..10 {
            assert!((a[(k - 1, k)].re - (k as f64).sqrt()).abs() < 1e-15);
        }
        let comm = linalg::commutator(sp.a(), sp.adag());
        assert!(max_abs_diff_block(&comm, &identity(10), 9) < 1e-14);
        // Truncation spoils the last diagonal entry.
        assert!((comm[(9, 9)].re + 9.0).abs() < 1e-12);
    }

    #[test]
    fn vacuum_and_eigenvalue() {
        let sp = FockSpace::new(40);
        let vac = fock_coherent_state(&sp, PlanePoint::new(0.0, 0.0)).unwrap();
        assert!((vac[0] - linalg::ONE).norm() < 1e-15 && vac.iter().skip(1).all(|z| z.norm() == 0.0));
        for &(re, im) in &[(1.0, 0.5), (-2.0, 1.0), (0.3, -3.0), (3.1, 0.4)] {
            let al = PlanePoint::new(re, im);
            let psi = fock_coherent_state(&sp, al).unwrap();
            assert!(psi.norm() >= 1.0 - 1e-10);
            assert!((linalg::expectation(&psi, sp.a()) - al.alpha).norm() < 1e-9);
        }
    }

    #[test]
    fn coherent_overlaps() {
        let sp = FockSpace::new(40);
        let pts = [PlanePoint::new(1.0, 0.5), PlanePoint::new(-0.5, 2.0), PlanePoint::new(0.0, -1.5)];
        for a in &pts {
            for b in &pts {
                let pa = fock_coherent_state(&sp, *a).unwrap();
                let pb = fock_coherent_state(&sp, *b).unwrap();
                let expected = (-(a.alpha - b.alpha).norm_sqr()).exp();
                assert!((pa.dotc(&pb).norm_sqr() - expected).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn truncation_guard() {
        let sp = FockSpace::new(40);
        assert!(matches!(
            fock_coherent_state(&sp, PlanePoint::new(3.2, 0.0)),
            Err(Error::Truncation { .. })
        ));
        assert!(displacement_matrix(&sp, PlanePoint::new(0.0, 4.0)).is_err());
    }

    #[test]
    fn displacement_properties() {
        let sp = FockSpace::new(40);
        let guard = 32;
        let zero = displacement_matrix(&sp, PlanePoint::new(0.0, 0.0)).unwrap();
        assert!(max_abs_diff_block(&zero, &identity(40), 40) < 1e-12);

        let al = PlanePoint::new(0.7, -0.4);
        let be = PlanePoint::new(-0.3, 0.9);
        let d_al = displacement_matrix(&sp, al).unwrap();
        let d_neg = displacement_matrix(&sp, PlanePoint::from(-al.alpha)).unwrap();
        assert!(max_abs_diff_block(&(&d_al * &d_neg), &identity(40), guard) < 1e-8);
        let unitary = &d_al * d_al.adjoint();
        assert!(max_abs_diff_block(&unitary, &identity(40), guard) < 1e-8);

        let vac = fock_coherent_state(&sp, PlanePoint::new(0.0, 0.0)).unwrap();
        let psi = fock_coherent_state(&sp, al).unwrap();
        assert!((&d_al * vac - psi).camax() < 1e-8);

        // D(α)D(β) = e^{(αβ* − α*β)/2} D(α+β).
        let d_be = displacement_matrix(&sp, be).unwrap();
        let d_sum = displacement_matrix(&sp, PlanePoint::from(al.alpha + be.alpha)).unwrap();
        let phase = ((al.alpha * be.alpha.conj() - al.alpha.conj() * be.alpha) * 0.5).exp();
        assert!(max_abs_diff_block(&(&d_al * &d_be), &(d_sum * phase), 20) < 1e-10);
    }

    #[test]
    fn position_commutator_matches_closed_form() {
        let sp = FockSpace::new(40);
        let pts = [
            PlanePoint::new(0.0, 0.0),
            PlanePoint::new(1.0, 1.0),
            PlanePoint::new(-1.2, 0.5),
            PlanePoint::new(0.4, -1.8),
        ];
        for a in &pts {
            for b in &pts {
                let lhs = position_commutator_expectation(&sp, *a, *b).unwrap();
                let rhs = position_commutator_closed_form(*a, *b);
                assert!((lhs - rhs).norm() < 1e-8);
            }
        }
    }
}
