//! Error functions and the overflow-safe `exp(a)·erfc(x)` kernel.
//!
//! `erf`/`erfc` are the FreeBSD msun implementations from `libm`; the scaled
//! complementary error function is built on top of them.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Threshold above which `erfc(x)` nears the bottom of the normal range and
/// the asymptotic expansion of `erfcx` takes over.
const ERFCX_ASYMPTOTIC: f64 = 26.0;

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Scaled complementary error function `exp(x²)·erfc(x)`.
///
/// Finite for every `x ≥ -26`; overflows to `+∞` for very negative `x`.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 * exp_square(x) - erfcx(-x);
    }
    if x < ERFCX_ASYMPTOTIC {
        return exp_square(x) * erfc(x);
    }
    // erfcx(x) ~ 1/(x√π) · Σ (-1)^n (2n-1)!! / (2x²)^n
    let inv = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..10 {
        term *= -((2 * n - 1) as f64) * inv;
        sum += term;
    }
    sum / (x * PI.sqrt())
}

/// `exp(x²)` with the square split into an exactly representable head and a
/// small tail, so the exponent carries no rounding error from `x*x`.
fn exp_square(x: f64) -> f64 {
    let head = f64::from_bits(x.to_bits() & 0xffff_ffff_0000_0000);
    let tail = x - head;
    (head * head).exp() * (tail * (x + head)).exp()
}

/// Standard normal upper-tail probability `Q(x) = P(Z > x)`.
pub fn gaussian_tail_q(x: f64) -> f64 {
    0.5 * erfc(x * FRAC_1_SQRT_2)
}

/// `exp(a)·erfc(x)` without intermediate overflow or underflow.
///
/// For `x ≥ 0` the product is `exp(a - x²)·erfcx(x)`; for `x < 0`,
/// `erfc(x) ∈ (1, 2]` and the factor is folded into the exponent.
pub fn exp_times_erfc_scaled(a: f64, x: f64) -> f64 {
    if x >= 0.0 {
        (a - x * x).exp() * erfcx(x)
    } else {
        (a + erfc(x).ln()).exp()
    }
}
