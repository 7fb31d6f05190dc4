//! Exact complex rationals.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Scalar = Complex<BigRational>;

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn real(num: i64, den: i64) -> Scalar {
    Scalar::new(rational(num, den), BigRational::zero())
}

pub fn from_rational(r: BigRational) -> Scalar {
    Scalar::new(r, BigRational::zero())
}

pub fn imag_unit() -> Scalar {
    Scalar::new(BigRational::zero(), BigRational::one())
}

pub fn to_complex64(z: &Scalar) -> Complex64 {
    Complex64::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

pub fn is_zero(z: &Scalar) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

/// Textual form that the expression parser reads back to the same value:
/// `3/2`, `-1`, `i`, `-3/2*i`, `(1/2 + 3*i)`.
pub fn format_scalar(z: &Scalar) -> String {
    let imag = |y: &BigRational| -> String {
        if y.is_one() {
            "i".to_string()
        } else if *y == -BigRational::one() {
            "-i".to_string()
        } else {
            format!("{y}*i")
        }
    };
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => format!("{}", z.re),
        (true, false) => imag(&z.im),
        (false, false) => {
            let sign = if z.im.is_negative() { '-' } else { '+' };
            format!("({} {} {})", z.re, sign, imag(&z.im.abs()))
        }
    }
}

/// `true` when [`format_scalar`] yields a bare literal (`3`, `3/2`, `i`).
pub(crate) fn is_atomic(z: &Scalar) -> bool {
    (z.im.is_zero() && !z.re.is_negative()) || (z.re.is_zero() && z.im.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(format_scalar(&real(3, 2)), "3/2");
        assert_eq!(format_scalar(&real(-4, 2)), "-2");
        assert_eq!(format_scalar(&imag_unit()), "i");
        assert_eq!(format_scalar(&(imag_unit() * real(-3, 2))), "-3/2*i");
        assert_eq!(format_scalar(&Scalar::new(rational(1, 2), rational(-1, 1))), "(1/2 - i)");
        assert_eq!(format_scalar(&Scalar::zero()), "0");
    }
}
