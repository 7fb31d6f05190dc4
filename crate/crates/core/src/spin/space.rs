use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};

/// Largest supported `2s`; the superoperator has `(2s+1)^4` entries.
pub const MAX_TWO_S: u32 = 50;

/// Spin-`s` irrep in the `|s, m⟩` basis, `m` running from `s` down to `-s`.
#[derive(Debug, Clone)]
pub struct SpinSpace {
    two_s: u32,
    dim: usize,
    jz: ComplexMatrix,
    jplus: ComplexMatrix,
    jminus: ComplexMatrix,
}

impl SpinSpace {
    pub fn new(two_s: u32) -> Result<Self> {
        if two_s == 0 || two_s > MAX_TWO_S {
            return Err(Error::SpinOutOfRange(two_s));
        }
        let dim = two_s as usize + 1;
        let s = f64::from(two_s) / 2.0;
        let m_of = |k: usize| s - k as f64;
        let jz = ComplexMatrix::from_fn(dim, dim, |r, c| {
            if r == c {
                Complex64::new(m_of(r), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        // J+ |s,m⟩ = sqrt(s(s+1) - m(m+1)) |s,m+1⟩; m+1 sits one index up.
        let jplus = ComplexMatrix::from_fn(dim, dim, |r, c| {
            if r + 1 == c {
                let m = m_of(c);
                Complex64::new((s * (s + 1.0) - m * (m + 1.0)).sqrt(), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let jminus = jplus.adjoint();
        Ok(Self {
            two_s,
            dim,
            jz,
            jplus,
            jminus,
        })
    }

    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    pub fn spin(&self) -> f64 {
        f64::from(self.two_s) / 2.0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn jz(&self) -> &ComplexMatrix {
        &self.jz
    }

    pub fn jplus(&self) -> &ComplexMatrix {
        &self.jplus
    }

    pub fn jminus(&self) -> &ComplexMatrix {
        &self.jminus
    }

    pub fn jx(&self) -> ComplexMatrix {
        (&self.jplus + &self.jminus) * Complex64::new(0.5, 0.0)
    }

    pub fn jy(&self) -> ComplexMatrix {
        (&self.jplus - &self.jminus) * Complex64::new(0.0, -0.5)
    }

    pub fn casimir(&self) -> ComplexMatrix {
        let jx = self.jx();
        let jy = self.jy();
        &jx * &jx + &jy * &jy + &self.jz * &self.jz
    }

    /// Magnetic quantum number of basis index `k`.
    pub fn m(&self, k: usize) -> f64 {
        self.spin() - k as f64
    }

    /// Basis vector `|s, m⟩` for index `k` (`m = s - k`).
    pub fn basis_vector(&self, k: usize) -> ComplexVector {
        let mut v = ComplexVector::zeros(self.dim);
        v[k] = Complex64::new(1.0, 0.0);
        v
    }
}

/// A point on the unit sphere, `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub theta: f64,
    pub phi: f64,
}

impl SpherePoint {
    /// Wraps `phi` into `[0, 2π)`; `theta` must lie in `[0, π]`.
    pub fn new(theta: f64, phi: f64) -> Option<Self> {
        if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
            return None;
        }
        let phi = phi.rem_euclid(2.0 * PI);
        Some(Self { theta, phi })
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        let a = self.unit_vector();
        let b = other.unit_vector();
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }
}
