//! Dense complex matrix helpers shared by the spin and particle channels.
//!
//! Operators are `D×D` matrices. Superoperators act on column-stacked
//! vectorizations: `vec(B)[r + D*c] = B[(r, c)]`, so that
//! `vec(A B C) = (Cᵀ ⊗ A) vec(B)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim, dim)
}

pub fn vectorize(m: &ComplexMatrix) -> ComplexVector {
    // nalgebra storage is column-major, which is exactly column stacking.
    ComplexVector::from_column_slice(m.as_slice())
}

pub fn unvectorize(v: &ComplexVector, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_column_slice(dim, dim, v.as_slice())
}

/// Largest entry modulus.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// Max deviation restricted to the leading `block × block` sub-matrix.
pub fn max_abs_diff_block(a: &ComplexMatrix, b: &ComplexMatrix, block: usize) -> f64 {
    let mut worst = 0.0f64;
    for c in 0..block {
        for r in 0..block {
            worst = worst.max((a[(r, c)] - b[(r, c)]).norm());
        }
    }
    worst
}

pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

pub fn is_hermitian(m: &ComplexMatrix, tol: f64) -> bool {
    m.is_square() && max_abs_diff(m, &m.adjoint()) <= tol
}

/// Hilbert-Schmidt inner product `tr(A† B)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn hs_norm(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `|ψ⟩⟨ψ|`
pub fn projector(psi: &ComplexVector) -> ComplexMatrix {
    psi * psi.adjoint()
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Expectation `⟨ψ|B|ψ⟩`.
pub fn expectation(psi: &ComplexVector, b: &ComplexMatrix) -> Complex64 {
    psi.dotc(&(b * psi))
}
