//! Lüders channels generated by finite weighted families of rank-1 projectors.
//!
//! A family `{(w_k, ψ_k)}` with `Σ_k w_k |ψ_k⟩⟨ψ_k| = I` defines the map
//! `Λ(B) = Σ_k w_k |ψ_k⟩⟨ψ_k| B |ψ_k⟩⟨ψ_k|`. Each projector is its own square
//! root, so `Λ` coincides with its Hilbert-Schmidt dual: the superoperator
//! matrix is Hermitian and its spectrum is real.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ComplexVector};

/// States must be unit vectors to this accuracy.
pub const NORM_TOL: f64 = 1e-12;
/// Entrywise tolerance on `Σ w_k |ψ_k⟩⟨ψ_k| = I`.
pub const UNITY_TOL: f64 = 1e-10;
/// Eigenvalues within this distance of 1 span the fixed space.
pub const FIXED_POINT_TOL: f64 = 1e-7;
/// Floor for Choi eigenvalues.
pub const CHOI_FLOOR: f64 = -1e-10;

/// A discretized coherent-state POVM: weights and the states whose projectors
/// they multiply.
///
/// Families built with [`WeightedProjectorFamily::new`] resolve the identity
/// on the whole space. Truncated families (Fock space) are built with
/// [`WeightedProjectorFamily::with_guard`]; they only resolve the identity on
/// a leading guard block and their states may have norm slightly below one.
#[derive(Debug, Clone)]
pub struct WeightedProjectorFamily {
    dim: usize,
    states: Vec<ComplexVector>,
    weights: Vec<f64>,
    guard: usize,
}

impl WeightedProjectorFamily {
    pub fn new(states: Vec<ComplexVector>, weights: Vec<f64>) -> Result<Self> {
        let family = Self::unchecked(states, weights)?;
        for (k, psi) in family.states.iter().enumerate() {
            let norm = psi.norm();
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::InvalidFamily(format!(
                    "state {k} has norm {norm:.15} (expected 1)"
                )));
            }
        }
        let deviation = family.resolution_defect(family.dim);
        if deviation > UNITY_TOL {
            return Err(Error::ResolutionOfUnity {
                deviation,
                tolerance: UNITY_TOL,
            });
        }
        Ok(family)
    }

    /// Family over a truncated space whose resolution of unity is only
    /// asserted on the leading `guard × guard` block, to `unity_tol`.
    pub fn with_guard(
        states: Vec<ComplexVector>,
        weights: Vec<f64>,
        guard: usize,
        unity_tol: f64,
    ) -> Result<Self> {
        let mut family = Self::unchecked(states, weights)?;
        if guard == 0 || guard > family.dim {
            return Err(Error::InvalidFamily(format!(
                "guard dimension {guard} not in 1..={}",
                family.dim
            )));
        }
        if let Some(k) = family.states.iter().position(|psi| psi.norm() > 1.0 + NORM_TOL) {
            return Err(Error::InvalidFamily(format!("state {k} has norm above 1")));
        }
        family.guard = guard;
        let deviation = family.resolution_defect(guard);
        if deviation > unity_tol {
            return Err(Error::ResolutionOfUnity {
                deviation,
                tolerance: unity_tol,
            });
        }
        Ok(family)
    }

    fn unchecked(states: Vec<ComplexVector>, weights: Vec<f64>) -> Result<Self> {
        let dim = states
            .first()
            .map(|s| s.len())
            .ok_or_else(|| Error::InvalidFamily("empty family".into()))?;
        if dim == 0 {
            return Err(Error::InvalidFamily("zero-dimensional states".into()));
        }
        if states.len() != weights.len() {
            return Err(Error::InvalidFamily(format!(
                "{} states but {} weights",
                states.len(),
                weights.len()
            )));
        }
        if let Some(s) = states.iter().find(|s| s.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: s.len(),
            });
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidFamily(format!("non-positive weight {w}")));
        }
        Ok(Self {
            dim,
            states,
            weights,
            guard: dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Leading block on which the identity is resolved; equals `dim` for
    /// untruncated families.
    pub fn guard(&self) -> usize {
        self.guard
    }

    pub fn states(&self) -> &[ComplexVector] {
        &self.states
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ_k w_k |ψ_k⟩⟨ψ_k|`
    pub fn frame_operator(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for (psi, &w) in self.states.iter().zip(&self.weights) {
            acc.gerc(Complex64::new(w, 0.0), psi, psi, linalg::ONE);
        }
        acc
    }

    /// Max entrywise deviation of the frame operator from the identity on the
    /// leading `block × block` sub-matrix.
    pub fn resolution_defect(&self, block: usize) -> f64 {
        let frame = self.frame_operator();
        linalg::max_abs_diff_block(&frame, &linalg::identity(self.dim), block.min(self.dim))
    }

    /// Applies `Λ` directly, without assembling the superoperator. This is the
    /// route for large truncated spaces.
    pub fn apply(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        check_square(b, self.dim)?;
        let n = self.states.len();
        let mut basis = ComplexMatrix::zeros(self.dim, n);
        for (k, psi) in self.states.iter().enumerate() {
            basis.set_column(k, psi);
        }
        let b_basis = b * &basis;
        let mut scaled = basis.clone();
        for k in 0..n {
            let q = basis.column(k).dotc(&b_basis.column(k));
            let factor = q * self.weights[k];
            for z in scaled.column_mut(k).iter_mut() {
                *z *= factor;
            }
        }
        Ok(scaled * basis.adjoint())
    }

    /// Q-symbol samples `⟨ψ_k|B|ψ_k⟩` at every family member.
    pub fn q_symbol(&self, b: &ComplexMatrix) -> Result<Vec<Complex64>> {
        check_square(b, self.dim)?;
        Ok(self
            .states
            .iter()
            .map(|psi| linalg::expectation(psi, b))
            .collect())
    }
}

/// Matrix of `Λ` acting on column-stacked operators.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperoperatorMatrix {
    dim: usize,
    matrix: ComplexMatrix,
}

impl SuperoperatorMatrix {
    pub fn from_matrix(dim: usize, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.nrows() != dim * dim || matrix.ncols() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: matrix.nrows(),
            });
        }
        Ok(Self { dim, matrix })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Hilbert-Schmidt adjoint, i.e. the dual map.
    pub fn hs_adjoint(&self) -> Self {
        Self {
            dim: self.dim,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn apply(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        apply_channel(self, b)
    }
}

/// Assembles `Σ_k w_k (ψ̄_k ψ̄_k† ⊗ ψ_k ψ_k†)` on a single worker.
pub fn build_luders_channel(family: &WeightedProjectorFamily) -> Result<SuperoperatorMatrix> {
    build_luders_channel_with_workers(family, 1)
}

/// As [`build_luders_channel`], partitioning the sum over `workers` threads.
/// One worker is bitwise deterministic; more workers reproduce it to rounding.
pub fn build_luders_channel_with_workers(
    family: &WeightedProjectorFamily,
    workers: usize,
) -> Result<SuperoperatorMatrix> {
    if family.guard() != family.dim() {
        return Err(Error::InvalidFamily(
            "superoperator assembly needs a family resolving the full identity".into(),
        ));
    }
    let deviation = family.resolution_defect(family.dim());
    if deviation > UNITY_TOL {
        return Err(Error::ResolutionOfUnity {
            deviation,
            tolerance: UNITY_TOL,
        });
    }
    let dim = family.dim();
    let members: Vec<(f64, &ComplexVector)> =
        family.weights().iter().copied().zip(family.states()).collect();
    let workers = workers.clamp(1, members.len().max(1));
    let matrix = if workers == 1 {
        accumulate(dim, &members)
    } else {
        let chunk = members.len().div_ceil(workers);
        let partials: Vec<ComplexMatrix> = std::thread::scope(|scope| {
            let handles: Vec<_> = members
                .chunks(chunk)
                .map(|part| scope.spawn(move || accumulate(dim, part)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("channel assembly worker panicked"))
                .collect()
        });
        partials
            .into_iter()
            .reduce(|a, b| a + b)
            .expect("at least one partition")
    };
    SuperoperatorMatrix::from_matrix(dim, matrix)
}

fn accumulate(dim: usize, members: &[(f64, &ComplexVector)]) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(dim * dim, dim * dim);
    for &(w, psi) in members {
        // vec(E B E) = (Eᵀ ⊗ E) vec(B) and Eᵀ = Ē for a Hermitian projector,
        // so each member contributes w · u u† with u = ψ̄ ⊗ ψ.
        let u = psi.conjugate().kronecker(psi);
        acc.gerc(Complex64::new(w, 0.0), &u, &u, linalg::ONE);
    }
    acc
}

pub fn apply_channel(chan: &SuperoperatorMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_square(b, chan.dim)?;
    let out = &chan.matrix * linalg::vectorize(b);
    Ok(linalg::unvectorize(&out, chan.dim))
}

fn check_square(b: &ComplexMatrix, dim: usize) -> Result<()> {
    if b.nrows() != dim || b.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: if b.nrows() != dim { b.nrows() } else { b.ncols() },
        });
    }
    Ok(())
}

/// Eigen-decomposition of a channel together with an orthonormal Hermitian
/// basis of its fixed space.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    /// Sorted by descending real part.
    pub eigenvalues: Vec<Complex64>,
    pub fixed_space_dim: usize,
    /// Hermitian, orthonormal in the Hilbert-Schmidt inner product.
    pub fixed_basis: Vec<ComplexMatrix>,
}

impl SpectralReport {
    /// Groups eigenvalues (real parts) into clusters of width `tol`,
    /// returned as `(mean value, multiplicity)` in descending order.
    pub fn grouped(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut groups: Vec<(f64, usize)> = Vec::new();
        let mut members: Vec<f64> = Vec::new();
        for z in &self.eigenvalues {
            let x = z.re;
            match members.last() {
                Some(&last) if (last - x).abs() <= tol => members.push(x),
                Some(_) => {
                    groups.push(summarize(&members));
                    members = vec![x];
                }
                None => members.push(x),
            }
        }
        if !members.is_empty() {
            groups.push(summarize(&members));
        }
        groups
    }
}

fn summarize(members: &[f64]) -> (f64, usize) {
    (members.iter().sum::<f64>() / members.len() as f64, members.len())
}

pub fn channel_spectrum(chan: &SuperoperatorMatrix) -> Result<SpectralReport> {
    let m = chan.matrix();
    let asym = linalg::max_abs_diff(m, &m.adjoint());
    if asym > 1e-9 {
        return Err(Error::Eigensolver(format!(
            "superoperator is not Hilbert-Schmidt self-adjoint (deviation {asym:.3e})"
        )));
    }
    let herm = linalg::hermitian_part(m);
    let eig = SymmetricEigen::try_new(herm, f64::EPSILON, 0)
        .ok_or_else(|| Error::Eigensolver("Hermitian eigensolver did not converge".into()))?;

    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let eigenvalues = order
        .iter()
        .map(|&i| Complex64::new(eig.eigenvalues[i], 0.0))
        .collect::<Vec<_>>();

    let fixed: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&i| (eig.eigenvalues[i] - 1.0).abs() <= FIXED_POINT_TOL)
        .collect();
    let fixed_space_dim = fixed.len();

    // The fixed space is closed under †, so the Hermitian and anti-Hermitian
    // parts of the eigenvectors span it; orthonormalize them and keep
    // `fixed_space_dim` independent directions.
    let dim = chan.dim();
    let mut candidates = Vec::with_capacity(2 * fixed_space_dim);
    for &i in &fixed {
        let f = linalg::unvectorize(&eig.eigenvectors.column(i).into_owned(), dim);
        candidates.push(linalg::hermitian_part(&f));
        candidates.push(linalg::hermitian_part(&(&f * Complex64::new(0.0, -1.0))));
    }
    let mut fixed_basis: Vec<ComplexMatrix> = Vec::with_capacity(fixed_space_dim);
    for mut f in candidates {
        if fixed_basis.len() == fixed_space_dim {
            break;
        }
        for g in &fixed_basis {
            // Both Hermitian, so the overlap is real.
            let overlap = linalg::hs_inner(g, &f).re;
            f -= g * Complex64::new(overlap, 0.0);
        }
        let norm = linalg::hs_norm(&f);
        if norm > 1e-6 {
            fixed_basis.push(f / Complex64::new(norm, 0.0));
        }
    }

    Ok(SpectralReport {
        eigenvalues,
        fixed_space_dim,
        fixed_basis,
    })
}

/// Choi matrix `Σ_{ij} |i⟩⟨j| ⊗ Λ(|i⟩⟨j|)`, indexed `(i·D + a, j·D + b)`.
pub fn choi_matrix(chan: &SuperoperatorMatrix) -> ComplexMatrix {
    let d = chan.dim();
    let s = chan.matrix();
    ComplexMatrix::from_fn(d * d, d * d, |row, col| {
        let (i, a) = (row / d, row % d);
        let (j, b) = (col / d, col % d);
        // Λ(|i⟩⟨j|)[a, b] is row (a + D b), column (i + D j) of the superoperator.
        s[(a + d * b, i + d * j)]
    })
}

/// Smallest eigenvalue of the (Hermitian) Choi matrix.
pub fn choi_min_eigenvalue(chan: &SuperoperatorMatrix) -> Result<f64> {
    let choi = linalg::hermitian_part(&choi_matrix(chan));
    let eig = SymmetricEigen::try_new(choi, f64::EPSILON, 0)
        .ok_or_else(|| Error::Eigensolver("Choi eigensolver did not converge".into()))?;
    Ok(eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
}
