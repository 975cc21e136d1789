//! The sinc-kernel quadratic form, spectral concentration, the field
//! `F_A(x) = ∫_A sinc(x − t) dt`, and the rearrangement gap functional `H`
//! with its analytic gradient.
//!
//! At unit bandwidth the form between two intervals closes through the second
//! sinc antiderivative:
//!
//! ```text
//! ∫_p^q ∫_r^s sinc(x − y) dy dx
//!     = phi2(s−p) − phi2(s−q) − phi2(r−p) + phi2(r−q),
//! ```
//!
//! and the gap functional `H = (I, I) − (J, J)` closes as
//! `4·T({a_j}, G(x/2))` via the block-sum operator. That closed form is the
//! authoritative value; the two oscillatory-integral forms of the same
//! quantity are computed by adaptive quadrature as cross-checks and any
//! disagreement is an error, never absorbed.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intervals::{GapVector, IntervalUnion, StepFunction};
use crate::quadrature::{self, AltPoly, QuadratureSpec};
use crate::specfun::{g, phi2, si};
use crate::toperator;

/// Band energy of an indicator function at a given bandwidth.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConcentrationResult {
    /// `∫_{−W/2}^{W/2} |χ̂_A(ξ)|² dξ`; strictly between 0 and `|A|`.
    pub value: f64,
    pub bandwidth: f64,
    pub set_measure: f64,
}

/// The gap functional evaluated through all three equivalent forms.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HBreakdown {
    /// Authoritative value (equals `form_b`, the exact closed form).
    pub h_value: f64,
    /// `(2/π²) ∫₀¹ T({a_j}, 1 − cos πxt)/t² dt` by adaptive quadrature.
    pub form_a: f64,
    /// `4·T({a_j}, G(x/2))`, exact.
    pub form_b: f64,
    /// Difference of the two `∫₀¹ |…|²/t² dt` polynomial integrals.
    pub form_c: f64,
    /// Tolerance the pairwise agreement was checked against.
    pub agreement_tol: f64,
}

/// `∫∫ sinc(x − y) dx dy` over `I₁ × I₂` at unit bandwidth.
///
/// Symmetric and translation invariant; the intervals may overlap.
pub fn pair_form(i1: (f64, f64), i2: (f64, f64)) -> f64 {
    let (p, q) = i1;
    let (r, s) = i2;
    phi2(s - p) - phi2(s - q) - phi2(r - p) + phi2(r - q)
}

/// `(A, B) = Σ` of [`pair_form`] over component pairs; bilinear under
/// disjoint union.
pub fn set_form(a: &IntervalUnion, b: &IntervalUnion) -> f64 {
    let mut total = 0.0;
    for ca in a.components() {
        for cb in b.components() {
            total += pair_form(ca, cb);
        }
    }
    total
}

/// Band energy `∫_{−W/2}^{W/2} |χ̂_A(ξ)|² dξ` computed by dilation reduction
/// to unit bandwidth: the energy equals `set_form(WA, WA)/W`.
pub fn concentration(a: &IntervalUnion, w: f64) -> Result<ConcentrationResult> {
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::invalid(format!("bandwidth must be positive, got {w}")));
    }
    let dilated = a.dilate(w)?;
    Ok(ConcentrationResult {
        value: set_form(&dilated, &dilated) / w,
        bandwidth: w,
        set_measure: a.measure(),
    })
}

/// `Σ_{p,q} v_p w_q pair_form(I_p, I_q)` for two step functions; reduces to
/// [`set_form`] when all values are 1.
pub fn step_form(f: &StepFunction, h: &StepFunction) -> f64 {
    let mut total = 0.0;
    for p in f.pieces() {
        for q in h.pieces() {
            total += p.value * q.value * pair_form((p.lo, p.hi), (q.lo, q.hi));
        }
    }
    total
}

/// `F_A(x) = ∫_A sinc(x − t) dt = Σ_k [si(x − x_{2k−1}) − si(x − x_{2k})]`.
pub fn f_field(a: &IntervalUnion, x: f64) -> f64 {
    a.components()
        .map(|(lo, hi)| si(x - lo) - si(x - hi))
        .sum()
}

/// The exact closed form of `H`: `4·T({a_j}, G(x/2))`. This is the hot path
/// used by sweeps and searches; [`h_gap`] adds the quadrature cross-checks.
pub fn h_exact(gv: &GapVector) -> f64 {
    4.0 * toperator::t_apply(gv.gaps(), |u| g(0.5 * u))
        .expect("gap vector length is odd by construction")
}

/// Evaluates `H` through all three forms and checks pairwise agreement.
///
/// Quadrature failures and disagreements beyond tolerance surface as errors.
pub fn h_gap(gv: &GapVector) -> Result<HBreakdown> {
    h_gap_with(gv, &QuadratureSpec::default())
}

/// [`h_gap`] with an explicit quadrature contract.
pub fn h_gap_with(gv: &GapVector, spec: &QuadratureSpec) -> Result<HBreakdown> {
    let form_b = h_exact(gv);

    // form_a: (2/π²) ∫₀¹ T({a_j}, 1 − cos πxt)/t² dt, with 1 − cos θ kept as
    // 2 sin²(θ/2). The integrand has a removable zero at t = 0.
    let terms = toperator::t_terms(gv.gaps())?;
    let max_freq = terms
        .iter()
        .map(|t| PI * t.argument)
        .fold(0.0f64, f64::max);
    let splits = quadrature::oscillatory_splits(0.0, 1.0, max_freq);
    let quad_a = quadrature::integrate_presplit(
        |t| {
            if t == 0.0 {
                return 0.0;
            }
            let sum: f64 = terms
                .iter()
                .map(|term| {
                    let s = (0.5 * PI * term.argument * t).sin();
                    f64::from(term.sign) * 2.0 * s * s
                })
                .sum();
            sum / (t * t)
        },
        &splits,
        spec,
    )?;
    let form_a = 2.0 / (PI * PI) * quad_a.value;

    // form_c: (1/π²)[∫₀¹ |1 − e^{iπTt}|²/t² dt − ∫₀¹ |Σ (−1)^j e^{iπ x_j t}|²/t² dt]
    let endpoints = AltPoly::new(gv.endpoints())?;
    let two_node = AltPoly::new(vec![0.0, gv.total_length()])?;
    let quad_p = quadrature::poly_sq_over_t2(&endpoints, 1.0, true, spec)?;
    let quad_i = quadrature::poly_sq_over_t2(&two_node, 1.0, true, spec)?;
    let form_c = (quad_i.value - quad_p.value) / (PI * PI);

    let quad_err = quad_a.error_estimate + quad_p.error_estimate + quad_i.error_estimate;
    let agreement_tol = (1e-7f64).max(50.0 * quad_err);
    for (what, other) in [("form_a vs form_b", form_a), ("form_c vs form_b", form_c)] {
        let diff = (other - form_b).abs();
        if diff > agreement_tol {
            return Err(Error::RouteDisagreement {
                what: if what.starts_with("form_a") {
                    "gap functional form_a vs closed form"
                } else {
                    "gap functional form_c vs closed form"
                },
                lhs: other,
                rhs: form_b,
                diff,
                allowed: agreement_tol,
            });
        }
    }

    Ok(HBreakdown {
        h_value: form_b,
        form_a,
        form_b,
        form_c,
        agreement_tol,
    })
}

/// `Φ(a, b, ε) = ∫₀¹ t⁻² sin(πat/2) sin(πbt/2) sin(πεt/2) sin(π(a+b+ε)t/2) dt`,
/// the two-interval integrand; `16/π² · Φ(a, b, ε) = H((a, ε, b))`.
pub fn phi_two_interval(a: f64, b: f64, eps: f64, spec: &QuadratureSpec) -> Result<f64> {
    for v in [a, b, eps] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::invalid(format!(
                "phi_two_interval arguments must be nonnegative, got ({a}, {b}, {eps})"
            )));
        }
    }
    let total = a + b + eps;
    let splits = quadrature::oscillatory_splits(0.0, 1.0, PI * total / 2.0);
    let r = quadrature::integrate_presplit(
        |t| {
            if t == 0.0 {
                return 0.0;
            }
            let p = 0.5 * PI * t;
            (p * a).sin() * (p * b).sin() * (p * eps).sin() * (p * total).sin() / (t * t)
        },
        &splits,
        spec,
    )?;
    Ok(r.value)
}

/// Analytic gradient `∂H/∂a_m` (1-based `m`):
///
/// * odd `m` (length): `2 si(T) − 2 Σ_{j=m+1}^{2n} (−1)^j F_J(x_j)`,
/// * even `m` (hole):  `−2 Σ_{j=m+1}^{2n} (−1)^j F_J(x_j)`.
///
/// Defined only in the interior (all gaps strictly positive); the optimizer
/// uses one-sided probes at the boundary.
pub fn grad_h(gv: &GapVector) -> Result<Vec<f64>> {
    if let Some(idx) = gv.gaps().iter().position(|&a| a == 0.0) {
        return Err(Error::BoundaryInput {
            index: idx + 1,
            context: "grad_h needs strictly positive gaps",
        });
    }
    let set = IntervalUnion::from_gaps(gv);
    let xs = gv.endpoints();
    let si_t = si(gv.total_length());
    // suffix sums of (−1)^j F_J(x_j), 1-based j
    let mut suffix = vec![0.0; xs.len() + 1];
    for j in (1..=xs.len()).rev() {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        suffix[j - 1] = suffix[j] + sign * f_field(&set, xs[j - 1]);
    }
    let grad = (1..=gv.len())
        .map(|m| {
            let tail = suffix[m]; // Σ_{j=m+1}^{2n}
            if m % 2 == 1 {
                2.0 * si_t - 2.0 * tail
            } else {
                -2.0 * tail
            }
        })
        .collect();
    Ok(grad)
}

/// Derivative of `s ↦ H(s·a)` at `s = 1`, in the closed form
/// `H(a) + (2/π²)·T({a_j}, 1 − cos πx)`. Vanishes at any stationary point.
pub fn scale_derivative(gv: &GapVector) -> f64 {
    let t_term = toperator::t_apply(gv.gaps(), |u| {
        let s = (0.5 * PI * u).sin();
        2.0 * s * s
    })
    .expect("gap vector length is odd by construction");
    h_exact(gv) + 2.0 / (PI * PI) * t_term
}

/// Superlevel-set diagnostic for a candidate maximizer.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuperlevelReport {
    /// `c = min_j F_A(x_j)` over the endpoints.
    pub c_value: f64,
    /// Measure of grid points inside `A` with `F_A < c − tol`.
    pub inside_violation_measure: f64,
    /// Measure of grid points outside `A` (near it) with `F_A > c + tol`.
    pub outside_violation_measure: f64,
    /// Worst interior deficit `c − F_A(x)` observed (≤ 0 when clean).
    pub max_inside_deficit: f64,
    /// Worst exterior excess `F_A(x) − c` observed (≤ 0 when clean).
    pub max_outside_excess: f64,
    pub tol: f64,
    pub grid_points: usize,
}

/// Samples `F_A` on grids inside and around `A` and reports where the
/// superlevel structure `A = {x : F_A(x) ≥ c}` fails at tolerance `tol`.
pub fn superlevel_check(a: &IntervalUnion, tol: f64) -> SuperlevelReport {
    const GRID: usize = 4096;
    let c = a
        .endpoints()
        .iter()
        .map(|&x| f_field(a, x))
        .fold(f64::INFINITY, f64::min);

    let measure = a.measure();
    let inside_step = measure / GRID as f64;
    let mut inside_violation = 0.0;
    let mut max_deficit = f64::NEG_INFINITY;
    for (lo, hi) in a.components() {
        let count = (((hi - lo) / inside_step).round() as usize).max(4);
        let step = (hi - lo) / count as f64;
        for i in 0..count {
            let x = lo + (i as f64 + 0.5) * step;
            let v = f_field(a, x);
            max_deficit = max_deficit.max(c - v);
            if v < c - tol {
                inside_violation += step;
            }
        }
    }

    let span_lo = a.endpoints()[0];
    let span_hi = *a.endpoints().last().expect("nonempty");
    let margin = 1.0f64.max(0.25 * (span_hi - span_lo));
    let (out_lo, out_hi) = (span_lo - margin, span_hi + margin);
    let out_step = (out_hi - out_lo) / GRID as f64;
    let mut outside_violation = 0.0;
    let mut max_excess = f64::NEG_INFINITY;
    let mut outside_count = 0usize;
    for i in 0..GRID {
        let x = out_lo + (i as f64 + 0.5) * out_step;
        if a.contains(x) {
            continue;
        }
        outside_count += 1;
        let v = f_field(a, x);
        max_excess = max_excess.max(v - c);
        if v > c + tol {
            outside_violation += out_step;
        }
    }

    SuperlevelReport {
        c_value: c,
        inside_violation_measure: inside_violation,
        outside_violation_measure: outside_violation,
        max_inside_deficit: max_deficit,
        max_outside_excess: max_excess,
        tol,
        grid_points: GRID + outside_count,
    }
}
