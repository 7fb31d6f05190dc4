//! Truncated-Fock matrix realization of normal-ordered polynomials.

use crate::error::{Error, Result};
use crate::fock::FockSpace;
use crate::linalg::ComplexMatrix;

use super::poly::NormalPolynomial;
use super::scalar;

/// Largest total degree accepted by [`to_matrix`].
pub const MAX_MATRIX_DEGREE: u32 = 8;

/// Substitutes the truncated ladder matrices into `Σ β a†^m a^n`.
pub fn to_matrix(p: &NormalPolynomial, space: &FockSpace) -> Result<ComplexMatrix> {
    let degree = p.degree();
    let dim = space.dim();
    if degree > MAX_MATRIX_DEGREE || degree as usize >= dim {
        return Err(Error::DegreeTooHigh { degree, dim });
    }
    let powers = |m: &ComplexMatrix| {
        let mut out = vec![ComplexMatrix::identity(dim, dim)];
        for k in 0..degree as usize {
            out.push(&out[k] * m);
        }
        out
    };
    let a_pow = powers(space.a());
    let ad_pow = powers(space.adag());
    let mut out = ComplexMatrix::zeros(dim, dim);
    for (k, c) in p.terms() {
        out += (&ad_pow[k.adag as usize] * &a_pow[k.a as usize]) * scalar::to_complex64(c);
    }
    Ok(out)
}
