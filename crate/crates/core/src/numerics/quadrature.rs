//! Globally adaptive 21-point Gauss–Kronrod quadrature.
//!
//! The error estimate follows QUADPACK's `qk21`: the raw Gauss/Kronrod
//! difference is rescaled against the integral of `|f - mean|` and floored at
//! the round-off level of the panel.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Tolerances and subdivision budget of the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-9,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Purely relative control; the absolute floor only guards against a
    /// zero integral.
    pub fn relative(rel_tol: f64) -> Self {
        Self {
            abs_tol: f64::MIN_POSITIVE,
            rel_tol,
            max_subdivisions: 2000,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_subdivisions >= 1) {
            return Err(Error::InvalidParameter(format!(
                "quadrature spec needs abs_tol > 0, rel_tol > 0, max_subdivisions >= 1; got {self:?}"
            )));
        }
        Ok(())
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Integral value with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// Integrates `f` over `[lo, hi]`.
///
/// `hi` may be `f64::INFINITY`; the half line is then mapped onto `[0, 1)`
/// through `t = lo + u/(1-u)`.
pub fn integrate<F>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    check_bounds(lo, hi)?;
    spec.validate()?;
    if hi.is_infinite() {
        let g = |u: f64| {
            let w = 1.0 - u;
            f(lo + u / w) / (w * w)
        };
        adaptive(g, 0.0, 1.0, spec, |u| lo + u / (1.0 - u))
    } else {
        adaptive(f, lo, hi, spec, |t| t)
    }
}

/// Integrates `f` over `[lo, hi]` after substituting `t = lo + s²`.
///
/// Suited to hitting-time integrands, whose `t^(-1/2)` and `t^(-3/2)`
/// factors make them non-smooth at the lower endpoint. With an infinite
/// `hi`, `s = w/(1-w)` additionally maps the half line onto `[0, 1)`; a
/// `t^(-3/2)` tail then becomes bounded at `w = 1`.
pub fn integrate_from_singular<F>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    check_bounds(lo, hi)?;
    spec.validate()?;
    if hi.is_infinite() {
        let g = |w: f64| {
            let r = 1.0 - w;
            let s = w / r;
            f(lo + s * s) * 2.0 * s / (r * r)
        };
        adaptive(g, 0.0, 1.0, spec, |w| {
            let s = w / (1.0 - w);
            lo + s * s
        })
    } else {
        let g = |s: f64| 2.0 * s * f(lo + s * s);
        adaptive(g, 0.0, (hi - lo).sqrt(), spec, |s| lo + s * s)
    }
}

fn check_bounds(lo: f64, hi: f64) -> Result<()> {
    if !lo.is_finite() || hi.is_nan() || !(lo < hi) || hi == f64::NEG_INFINITY {
        return Err(Error::InvalidParameter(format!(
            "integration bounds must satisfy finite lo < hi, got [{lo}, {hi}]"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

/// `to_original` maps a point of the integration variable back to the
/// caller's variable, for error reporting only.
fn adaptive<F, M>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec, to_original: M) -> Result<Integral>
where
    F: Fn(f64) -> f64,
    M: Fn(f64) -> f64,
{
    let first = kronrod21(&f, lo, hi).map_err(|at| Error::NonFiniteIntegrand { at: to_original(at) })?;
    let mut heap = BinaryHeap::with_capacity(spec.max_subdivisions + 1);
    heap.push(first);
    let mut value = first.value;
    let mut error = first.error;

    loop {
        if error <= spec.tolerance(value) {
            break;
        }
        if heap.len() >= spec.max_subdivisions {
            let total = sum(&heap);
            return Err(Error::AccuracyNotReached {
                value: total.value,
                error: total.error,
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(worst.lo < mid && mid < worst.hi) {
            // Panel cannot be split further in floating point.
            heap.push(worst);
            let total = sum(&heap);
            return Err(Error::AccuracyNotReached {
                value: total.value,
                error: total.error,
            });
        }
        let left = kronrod21(&f, worst.lo, mid).map_err(|at| Error::NonFiniteIntegrand { at: to_original(at) })?;
        let right = kronrod21(&f, mid, worst.hi).map_err(|at| Error::NonFiniteIntegrand { at: to_original(at) })?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    Ok(sum(&heap))
}

/// Sums panels in ascending position so the result is independent of heap
/// layout.
fn sum(heap: &BinaryHeap<Segment>) -> Integral {
    let mut segments: Vec<&Segment> = heap.iter().collect();
    segments.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    segments.iter().fold(Integral { value: 0.0, error: 0.0 }, |acc, s| Integral {
        value: acc.value + s.value,
        error: acc.error + s.error,
    })
}

/// One 21-point Kronrod panel; `Err(x)` reports a non-finite sample at `x`.
fn kronrod21<F>(f: &F, lo: f64, hi: f64) -> std::result::Result<Segment, f64>
where
    F: Fn(f64) -> f64,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(x)
        }
    };

    let fc = eval(center)?;
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut abs = kronrod.abs();
    let mut left = [0.0; 10];
    let mut right = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        left[j] = f1;
        right[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((left[j] - mean).abs() + (right[j] - mean).abs());
    }

    let value = kronrod * half;
    let abs = abs * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    if abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs);
    }
    Ok(Segment { lo, hi, value, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_integrand() {
        let r = integrate(|_| 1.0, 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn infinite_upper_limit() {
        let r = integrate(|t| (-t).exp(), 0.0, f64::INFINITY, &QuadratureSpec::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
        let r = integrate(|t| 1.0 / (1.0 + t * t), 0.0, f64::INFINITY, &QuadratureSpec::default()).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-9);
    }

    #[test]
    fn singular_lower_endpoint() {
        let r = integrate_from_singular(|t| 1.0 / t.sqrt(), 0.0, 4.0, &QuadratureSpec::default()).unwrap();
        assert!((r.value - 4.0).abs() < 1e-12);
        // Heavy t^(-3/2) tail
        let r = integrate_from_singular(
            |t| if t < 1.0 { 0.0 } else { 0.5 * t.powf(-1.5) },
            0.0,
            f64::INFINITY,
            &QuadratureSpec::default(),
        );
        let r = r.unwrap();
        assert!((r.value - 1.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn deterministic_bits() {
        let f = |t: f64| (t * 3.0).sin() * (-t).exp();
        let a = integrate(f, 0.0, 10.0, &QuadratureSpec::default()).unwrap();
        let b = integrate(f, 0.0, 10.0, &QuadratureSpec::default()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.error.to_bits(), b.error.to_bits());
    }

    #[test]
    fn errors_are_reported() {
        assert!(matches!(
            integrate(|t| 1.0 / t, 0.0, 1.0, &QuadratureSpec::default()),
            Err(Error::NonFiniteIntegrand { .. }) | Err(Error::AccuracyNotReached { .. })
        ));
        let tight = QuadratureSpec::new(1e-300, 1e-300, 3).unwrap();
        assert!(matches!(
            integrate(|t| (50.0 * t).sin().abs(), 0.0, 1.0, &tight),
            Err(Error::AccuracyNotReached { .. })
        ));
        assert!(matches!(
            integrate(|_| f64::NAN, 0.0, 1.0, &QuadratureSpec::default()),
            Err(Error::NonFiniteIntegrand { .. })
        ));
        assert!(integrate(|_| 1.0, 1.0, 0.0, &QuadratureSpec::default()).is_err());
        assert!(QuadratureSpec::new(0.0, 1e-9, 10).is_err());
    }
}
