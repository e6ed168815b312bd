//! Scalar math routed through `libm` so the crate builds without `std`.

use num_complex::Complex64;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub(crate) fn abs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

/// `e^{iθ}`.
#[inline]
pub(crate) fn cis(theta: f64) -> Complex64 {
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

/// `-x log₂ x` with the convention `0 log 0 = 0`.
#[inline]
pub(crate) fn entropy_term(x: f64) -> f64 {
    if x > 0.0 {
        -x * log2(x)
    } else {
        0.0
    }
}
