//! Special functions underlying the sinc-kernel quadratic forms.
//!
//! Everything here is expressed in the π-normalized convention:
//!
//! * `sinc x = sin(πx)/(πx)`, with `sinc 0 = 1`,
//! * `si x = ∫₀ˣ sinc t dt`, so `si(x) → 1/2` as `x → +∞`,
//! * `phi2 x = ∫₀ˣ si u du = x·si(x) + (cos πx − 1)/π²`,
//! * `g x  = x ∫₀ˣ sinc² t dt = ∫₀ˣ si(2y) dy`,
//! * `s_kernel β = ∫_{−1/2}^{1/2} e^{iβt} dt = 2 sin(β/2)/β`.
//!
//! All functions are total on finite arguments; a NaN or infinite argument is
//! a contract violation and panics. Target absolute accuracy is ~1e−14; the
//! sine integral switches from the alternating power series to a Lentz
//! continued-fraction evaluation of the auxiliary complex function, which
//! stays accurate where an optimally truncated asymptotic series would not.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

/// Evaluation controls for [`si_with`].
///
/// `series_switch` is the argument magnitude (in units of the π-normalized
/// argument) at which `si` switches from the power series to the
/// continued-fraction form. Arguments with `π·|x| < 2` always use the series,
/// where the continued fraction converges too slowly to trust.
#[derive(Debug, Clone, Copy)]
pub struct AccuracySpec {
    /// Absolute error target for series truncation.
    pub abs_tol: f64,
    /// Switch point between power series and continued fraction.
    pub series_switch: f64,
}

impl Default for AccuracySpec {
    fn default() -> Self {
        // The series keeps full accuracy through |x| ≈ 3 and degrades past
        // that from alternating-term cancellation; the continued fraction is
        // at machine accuracy for π|x| ≳ 6, so 3.0 is inside the overlap.
        AccuracySpec {
            abs_tol: 1e-15,
            series_switch: 3.0,
        }
    }
}

impl AccuracySpec {
    pub fn validate(&self) {
        assert!(
            self.abs_tol > 0.0 && self.series_switch > 0.0,
            "AccuracySpec fields must be positive"
        );
    }
}

/// `sin(πx)/(πx)` with the removable singularity filled in: `sinc 0 = 1`.
///
/// Near the origin the direct quotient loses accuracy, so `|x| < 1e−4` uses
/// the series `1 − (πx)²/6 + (πx)⁴/120` (next term is below 1e−21 there).
pub fn sinc(x: f64) -> f64 {
    assert!(x.is_finite(), "sinc: non-finite argument {x}");
    let z = PI * x;
    if x.abs() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// The π-normalized sine integral `∫₀ˣ sinc t dt`.
///
/// Odd, bounded, `si(x) → 1/2` as `x → +∞`. Uses [`AccuracySpec::default`].
pub fn si(x: f64) -> f64 {
    si_with(x, &AccuracySpec::default())
}

/// [`si`] with explicit evaluation controls.
pub fn si_with(x: f64, spec: &AccuracySpec) -> f64 {
    assert!(x.is_finite(), "si: non-finite argument {x}");
    spec.validate();
    let ax = x.abs();
    if ax == 0.0 {
        return 0.0;
    }
    let value = if ax <= spec.series_switch || PI * ax < 2.0 {
        si_series(ax, spec.abs_tol)
    } else {
        std_si_cf(PI * ax) / PI
    };
    if x < 0.0 {
        -value
    } else {
        value
    }
}

/// Alternating power series Σ_k (−1)^k π^{2k} x^{2k+1} / ((2k+1)·(2k+1)!).
fn si_series(x: f64, tol: f64) -> f64 {
    let z2 = (PI * x) * (PI * x);
    let mut term = x; // k = 0
    let mut sum = x;
    let mut k = 0u32;
    loop {
        let kk = k as f64;
        // a_{k+1}/a_k = −π²x² (2k+1) / ((2k+3)² (2k+2))
        term *= -z2 * (2.0 * kk + 1.0) / ((2.0 * kk + 3.0) * (2.0 * kk + 3.0) * (2.0 * kk + 2.0));
        sum += term;
        k += 1;
        if term.abs() < tol * 0.01 || k > 300 {
            break;
        }
    }
    sum
}

/// Standard sine integral `∫₀ᶻ sin u / u du` for z ≥ 2, via the Lentz
/// continued fraction for the auxiliary function `Ci(z) + i(Si(z) − π/2)`.
fn std_si_cf(z: f64) -> f64 {
    const MAX_ITER: usize = 4000;
    const EPS: f64 = 1e-17;
    let one = Complex64::new(1.0, 0.0);
    let mut b = Complex64::new(1.0, z);
    let mut c = Complex64::new(1.0 / f64::MIN_POSITIVE, 0.0);
    let mut d = one / b;
    let mut h = d;
    for i in 2..=MAX_ITER {
        let a = -(((i - 1) * (i - 1)) as f64);
        b += Complex64::new(2.0, 0.0);
        d = one / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - one).norm() < EPS {
            break;
        }
    }
    h *= Complex64::new(z.cos(), -z.sin());
    FRAC_PI_2 + h.im
}

/// Second antiderivative of sinc: `phi2(x) = ∫₀ˣ si(u) du`.
///
/// Closed form `x·si(x) + (cos πx − 1)/π²`; even function, `phi2(0) = 0`.
pub fn phi2(x: f64) -> f64 {
    assert!(x.is_finite(), "phi2: non-finite argument {x}");
    // (cos πx − 1) = −2 sin²(πx/2) avoids cancellation for small x.
    let s = (PI * x / 2.0).sin();
    x * si(x) - 2.0 * s * s / (PI * PI)
}

/// `g(x) = x ∫₀ˣ sinc² t dt`, the running second moment of the sinc kernel.
///
/// Nonnegative and nondecreasing on `[0, ∞)`; equals `∫₀ˣ si(2y) dy`, so
/// `g(x) = phi2(2x)/2` identically. Evaluated here through the independent
/// route `x·si(2x) − sin²(πx)/π²`.
///
/// Panics for `x < 0` (domain contract).
pub fn g(x: f64) -> f64 {
    assert!(x.is_finite(), "g: non-finite argument {x}");
    assert!(x >= 0.0, "g: argument must be nonnegative, got {x}");
    let s = (PI * x).sin();
    x * si(2.0 * x) - s * s / (PI * PI)
}

/// `∫_{−1/2}^{1/2} e^{iβt} dt = 2 sin(β/2)/β`, with `s_kernel(0) = 1`. Even.
pub fn s_kernel(beta: f64) -> f64 {
    assert!(beta.is_finite(), "s_kernel: non-finite argument {beta}");
    let u = beta / 2.0;
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sin() / u
    }
}
