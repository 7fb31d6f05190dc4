//! Exact kernel of `Λ − id` on Hermitian polynomials of bounded degree.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{is_well_ordered, luders_symbolic, Monomial, NormalPolynomial};
use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

pub const MAX_FIXED_DEGREE: u32 = 12;

/// `B^q_n = (a^n + a†^n)/2`.
pub fn family_q(n: u32) -> NormalPolynomial {
    let half = scalar::real(1, 2);
    NormalPolynomial::from_terms([
        (Monomial::new(0, n), half.clone()),
        (Monomial::new(n, 0), half),
    ])
}

/// `B^p_n = (a^n − a†^n)/2i`.
pub fn family_p(n: u32) -> NormalPolynomial {
    let c = scalar::imag_unit() * scalar::real(1, 2);
    NormalPolynomial::from_terms([
        (Monomial::new(0, n), -c.clone()),
        (Monomial::new(n, 0), c),
    ])
}

/// `B = b0·I + Σ_n (bq[n−1]·B^q_n + bp[n−1]·B^p_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LuedersFamilyCoefficients {
    pub max_degree: u32,
    pub b0: BigRational,
    pub bq: Vec<BigRational>,
    pub bp: Vec<BigRational>,
}

impl LuedersFamilyCoefficients {
    pub fn to_polynomial(&self) -> NormalPolynomial {
        let mut acc = NormalPolynomial::identity().scale(&scalar::from_rational(self.b0.clone()));
        for (k, (q, p)) in self.bq.iter().zip(&self.bp).enumerate() {
            let n = k as u32 + 1;
            acc = acc
                .add(&family_q(n).scale(&scalar::from_rational(q.clone())))
                .add(&family_p(n).scale(&scalar::from_rational(p.clone())));
        }
        acc
    }

    /// Reads off the coefficients; `None` when `p` has a term outside the family
    /// or a non-real family coefficient.
    pub fn decompose(p: &NormalPolynomial, max_degree: u32) -> Option<Self> {
        if p.terms().keys().any(|k| (k.adag != 0 && k.a != 0) || k.degree() > max_degree) {
            return None;
        }
        let real = |z: Scalar| z.im.is_zero().then_some(z.re);
        let b0 = real(p.coefficient(0, 0))?;
        let mut bq = Vec::new();
        let mut bp = Vec::new();
        for n in 1..=max_degree {
            let lower = p.coefficient(0, n);
            let raise = p.coefficient(n, 0);
            bq.push(real(&lower + &raise)?);
            bp.push(real(scalar::imag_unit() * (lower - raise))?);
        }
        Some(Self {
            max_degree,
            b0,
            bq,
            bp,
        })
    }

    /// Number of real parameters, `2N + 1`.
    pub fn degrees_of_freedom(&self) -> usize {
        1 + self.bq.len() + self.bp.len()
    }
}

/// Real basis element of the Hermitian polynomial space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HermitianBasis {
    /// `a†^m a^m`.
    Diagonal(u32),
    /// `a†^m a^n + a†^n a^m`, `m < n`.
    Symmetric(u32, u32),
    /// `i(a†^m a^n − a†^n a^m)`, `m < n`.
    Antisymmetric(u32, u32),
}

impl HermitianBasis {
    fn enumerate(max_degree: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for m in 0..=max_degree {
            if 2 * m <= max_degree {
                out.push(Self::Diagonal(m));
            }
            for n in m + 1..=max_degree - m {
                out.push(Self::Symmetric(m, n));
                out.push(Self::Antisymmetric(m, n));
            }
        }
        out
    }

    fn polynomial(self) -> NormalPolynomial {
        let one = Scalar::one();
        let i = scalar::imag_unit();
        match self {
            Self::Diagonal(m) => NormalPolynomial::monomial(m, m, one),
            Self::Symmetric(m, n) => NormalPolynomial::from_terms([
                (Monomial::new(m, n), one.clone()),
                (Monomial::new(n, m), one),
            ]),
            Self::Antisymmetric(m, n) => NormalPolynomial::from_terms([
                (Monomial::new(m, n), i.clone()),
                (Monomial::new(n, m), -i),
            ]),
        }
    }

    /// Real coordinate of a Hermitian polynomial along this element.
    fn coordinate(self, p: &NormalPolynomial) -> BigRational {
        match self {
            Self::Diagonal(m) => p.coefficient(m, m).re,
            Self::Symmetric(m, n) => p.coefficient(m, n).re,
            Self::Antisymmetric(m, n) => p.coefficient(m, n).im,
        }
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (pivot_row, row) = if i < r {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = rows.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    rref(&mut rows).len()
}

/// Exact fixed space of the Lüders map on Hermitian polynomials of degree ≤ N.
#[derive(Debug, Clone)]
pub struct FixedSpace {
    pub max_degree: u32,
    /// Real dimension of the Hermitian polynomial space searched.
    pub hermitian_dim: usize,
    pub basis: Vec<NormalPolynomial>,
    /// Decomposition of each basis element in the `I, B^q_n, B^p_n` family.
    pub family: Vec<LuedersFamilyCoefficients>,
}

impl FixedSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `p` lies in the real span of the kernel basis.
    pub fn contains(&self, p: &NormalPolynomial) -> bool {
        if !p.is_hermitian() || p.degree() > self.max_degree {
            return false;
        }
        let coords = HermitianBasis::enumerate(self.max_degree);
        let row = |q: &NormalPolynomial| coords.iter().map(|e| e.coordinate(q)).collect::<Vec<_>>();
        let mut rows: Vec<_> = self.basis.iter().map(row).collect();
        let before = rank(rows.clone());
        rows.push(row(p));
        rank(rows) == before
    }
}

pub fn luders_fixed_space(max_degree: u32) -> Result<FixedSpace> {
    if max_degree > MAX_FIXED_DEGREE {
        return Err(Error::FixedSpaceOutOfRange(max_degree));
    }
    let elems = HermitianBasis::enumerate(max_degree);
    let dim = elems.len();
    let images: Vec<NormalPolynomial> = elems
        .iter()
        .map(|e| {
            let p = e.polynomial();
            luders_symbolic(&p).sub(&p)
        })
        .collect();
    // Row i = coordinate i of (Λ − id) applied to each basis element.
    let mut rows: Vec<Vec<BigRational>> = elems
        .iter()
        .map(|coord| images.iter().map(|img| coord.coordinate(img)).collect())
        .collect();
    let pivots = rref(&mut rows);

    let mut basis = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut x = vec![BigRational::zero(); dim];
        x[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = -rows[r][free].clone();
        }
        let p = elems
            .iter()
            .zip(&x)
            .filter(|(_, c)| !c.is_zero())
            .fold(NormalPolynomial::zero(), |acc, (e, c)| {
                acc.add(&e.polynomial().scale(&scalar::from_rational(c.clone())))
            });
        basis.push(normalize_sign(p));
    }
    let family = basis
        .iter()
        .filter_map(|p| LuedersFamilyCoefficients::decompose(p, max_degree))
        .collect();
    Ok(FixedSpace {
        max_degree,
        hermitian_dim: dim,
        basis,
        family,
    })
}

/// Scale so the leading coefficient (canonical order) has positive real or imaginary part.
fn normalize_sign(p: NormalPolynomial) -> NormalPolynomial {
    let lead = p.terms().values().next().cloned();
    match lead {
        Some(c) if c.re.is_negative() || (c.re.is_zero() && c.im.is_negative()) => p.neg(),
        _ => p,
    }
}

/// Checks every `B^q_n`, `B^p_n` with `n ≤ N` for well-orderedness.
pub fn family_is_well_ordered(max_degree: u32) -> bool {
    (1..=max_degree).all(|n| is_well_ordered(&family_q(n)) && is_well_ordered(&family_p(n)))
}
