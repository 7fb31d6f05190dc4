//! Fully normalized spherical harmonics with the Condon-Shortley phase.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Normalized associated Legendre values `P̄_l^m(x)` for `0 ≤ m ≤ l ≤ lmax`,
/// such that `Y_lm(θ, φ) = P̄_l^m(cos θ) e^{imφ}`. Indexed `[l][m]`.
pub fn normalized_legendre(lmax: usize, x: f64) -> Vec<Vec<f64>> {
    let mut p: Vec<Vec<f64>> = (0..=lmax).map(|l| vec![0.0; l + 1]).collect();
    let sin = (1.0 - x * x).max(0.0).sqrt();
    // Diagonal: P̄_m^m = (-1)^m sqrt((2m+1)/(4π) Π_{k≤m} (2k-1)/(2k)) sin^m.
    let mut diag = (1.0 / (4.0 * PI)).sqrt();
    for m in 0..=lmax {
        if m > 0 {
            let mf = m as f64;
            diag *= -sin * ((2.0 * mf + 1.0) / (2.0 * mf)).sqrt();
        }
        p[m][m] = diag;
        if m < lmax {
            p[m + 1][m] = x * (2.0 * m as f64 + 3.0).sqrt() * diag;
        }
        for l in (m + 2)..=lmax {
            let (lf, mf) = (l as f64, m as f64);
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let prev = lf - 1.0;
            let b = ((prev * prev - mf * mf) / (4.0 * prev * prev - 1.0)).sqrt();
            p[l][m] = a * (x * p[l - 1][m] - b * p[l - 2][m]);
        }
    }
    p
}

/// `Y_lm(θ, φ)`, with `Y_{l,-m} = (-1)^m conj(Y_{l,m})`.
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    assert!(m.unsigned_abs() <= l, "|m| must not exceed l");
    let table = normalized_legendre(l as usize, theta.cos());
    from_table(&table, l, m, phi)
}

pub(crate) fn from_table(table: &[Vec<f64>], l: u32, m: i32, phi: f64) -> Complex64 {
    let mu = m.unsigned_abs();
    let y = Complex64::from_polar(table[l as usize][mu as usize], f64::from(mu) * phi);
    if m >= 0 {
        y
    } else if mu % 2 == 0 {
        y.conj()
    } else {
        -y.conj()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_closed_forms() {
        let (t, p) = (0.83_f64, 2.1_f64);
        let (st, ct) = t.sin_cos();
        let y00 = spherical_harmonic(0, 0, t, p);
        assert!((y00.re - (1.0 / (4.0 * PI)).sqrt()).abs() < 1e-15 && y00.im == 0.0);
        let y10 = spherical_harmonic(1, 0, t, p);
        assert!((y10.re - (3.0 / (4.0 * PI)).sqrt() * ct).abs() < 1e-15);
        let y11 = spherical_harmonic(1, 1, t, p);
        let expect = Complex64::from_polar(-(3.0 / (8.0 * PI)).sqrt() * st, p);
        assert!((y11 - expect).norm() < 1e-15);
        let y1m1 = spherical_harmonic(1, -1, t, p);
        let expect = Complex64::from_polar((3.0 / (8.0 * PI)).sqrt() * st, -p);
        assert!((y1m1 - expect).norm() < 1e-15);
        let y20 = spherical_harmonic(2, 0, t, p);
        assert!((y20.re - (5.0 / (16.0 * PI)).sqrt() * (3.0 * ct * ct - 1.0)).abs() < 1e-14);
        let y22 = spherical_harmonic(2, 2, t, p);
        let expect = Complex64::from_polar((15.0 / (32.0 * PI)).sqrt() * st * st, 2.0 * p);
        assert!((y22 - expect).norm() < 1e-14);
    }
}
