//! Adaptive one- and two-dimensional quadrature, the oscillatory integrals
//! `∫ |P(t)|²/t² dt` for alternating-coefficient exponential sums, and exact
//! L² norms on `[−1/2, 1/2]`.
//!
//! The one-dimensional driver is a globally adaptive Gauss–Kronrod (G7, K15)
//! scheme: the panel with the largest error estimate is bisected until the
//! summed estimate meets the tolerance. Depth exhaustion is reported as an
//! error carrying the best estimate, never silently truncated.
//!
//! The two-dimensional routine iterates the 1-D rule and exists to serve as a
//! brute-force oracle for the closed forms in [`crate::spectral`]; it is slow
//! on purpose and used only in tests and violation double-checks.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun;

/// Tolerance and depth contract for adaptive integration.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_depth: 60,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol >= 0.0 && self.max_depth >= 10) {
            return Err(Error::invalid(
                "quadrature spec requires abs_tol > 0, rel_tol ≥ 0, max_depth ≥ 10",
            ));
        }
        Ok(())
    }
}

/// Value and accumulated error estimate of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

// 15-point Kronrod abscissae on [-1, 1] (positive half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed abscissae.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// QUADPACK-style error rescaling: conservative for rough integrands, floored
/// at the roundoff level of the absolute integral.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut e = err.abs();
    if res_asc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / res_asc).powf(1.5);
        e = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * res_abs);
    }
    e
}

/// One (G7, K15) evaluation on `[a, b]`: returns (kronrod value, error estimate).
fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_gauss = f_center * WG[3];
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.abs();
    let mut fv = [0.0f64; 14];

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[j + 7] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[j + 7] - mean).abs());
    }

    let value = res_kronrod * half;
    let err = rescale_error((res_kronrod - res_gauss) * half, res_abs * half.abs(), res_asc * half.abs());
    (value, err)
}

#[derive(Debug)]
struct Panel {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive integral of `f` over `[a, b]`.
///
/// The returned `error_estimate` meets `max(abs_tol, rel_tol·|value|)` on
/// success; otherwise a [`Error::QuadratureFailure`] carries the best
/// estimate so the caller can report the deficit.
pub fn integrate(f: impl FnMut(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    integrate_presplit(f, &[a, b], spec)
}

/// As [`integrate`], with an explicit initial partition (used to pre-split
/// oscillatory integrands at half-period boundaries).
pub fn integrate_presplit(
    mut f: impl FnMut(f64) -> f64,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    spec.validate()?;
    assert!(points.len() >= 2, "need at least two partition points");
    let (a, b) = (points[0], points[points.len() - 1]);
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            panels: 0,
        });
    }

    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in points.windows(2) {
        let (v, e) = gk15(&mut f, w[0], w[1]);
        total += v;
        total_err += e;
        heap.push(Panel {
            err: e,
            a: w[0],
            b: w[1],
            value: v,
            depth: 0,
        });
    }

    const MAX_PANELS: usize = 200_000;
    loop {
        let target = spec.abs_tol.max(spec.rel_tol * total.abs());
        if total_err <= target {
            return Ok(QuadResult {
                value: total,
                error_estimate: total_err,
                panels: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap never empty here");
        if worst.depth >= spec.max_depth || heap.len() + 2 > MAX_PANELS {
            return Err(Error::QuadratureFailure {
                estimate: total,
                error_estimate: total_err,
                requested_tol: target,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk15(&mut f, worst.a, mid);
        let (v2, e2) = gk15(&mut f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel {
            err: e1,
            a: worst.a,
            b: mid,
            value: v1,
            depth: worst.depth + 1,
        });
        heap.push(Panel {
            err: e2,
            a: mid,
            b: worst.b,
            value: v2,
            depth: worst.depth + 1,
        });
    }
}

/// Half-period split points for an integrand with maximal angular frequency
/// `max_freq` on `[a, b]`; empty when the total phase span is below `8π`.
pub(crate) fn oscillatory_splits(a: f64, b: f64, max_freq: f64) -> Vec<f64> {
    let span = (b - a) * max_freq;
    if !(span > 8.0 * PI) {
        return vec![a, b];
    }
    let mut step = PI / max_freq;
    let mut count = ((b - a) / step).ceil() as usize;
    const MAX_SPLITS: usize = 4096;
    if count > MAX_SPLITS {
        count = MAX_SPLITS;
        step = (b - a) / count as f64;
    }
    let mut pts = Vec::with_capacity(count + 1);
    for i in 0..count {
        pts.push(a + step * i as f64);
    }
    pts.push(b);
    pts
}

/// Brute-force `∫∫ sinc(x − y) dx dy` over `I₁ × I₂` by iterated adaptive
/// quadrature. Test oracle for [`crate::spectral::pair_form`]; performance is
/// irrelevant by design.
pub fn oracle_pair_form(i1: (f64, f64), i2: (f64, f64), spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    let (p, q) = i1;
    let (r, s) = i2;
    if !(q >= p && s >= r) {
        return Err(Error::invalid("oracle_pair_form: intervals must be ordered"));
    }
    let len2 = (s - r).max(1.0);
    let inner_spec = QuadratureSpec {
        abs_tol: spec.abs_tol / (8.0 * len2),
        rel_tol: 0.0,
        ..*spec
    };
    let outer_spec = QuadratureSpec {
        abs_tol: spec.abs_tol / 2.0,
        rel_tol: 0.0,
        ..*spec
    };
    let mut inner_failure = None;
    let outer = integrate(
        |y| {
            match integrate(|x| specfun::sinc(x - y), p, q, &inner_spec) {
                Ok(r) => r.value,
                Err(e) => {
                    inner_failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        r,
        s,
        &outer_spec,
    );
    if let Some(e) = inner_failure {
        return Err(e);
    }
    Ok(outer?.value)
}

/// A non-harmonic exponential sum `P(t) = Σ_{j=1}^{2n} (−1)^j e^{i α_j t}`
/// with alternating coefficients at sorted frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AltPoly {
    nodes: Vec<f64>,
}

impl AltPoly {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() % 2 != 0 {
            return Err(Error::invalid(format!(
                "alternating polynomial needs a positive even node count, got {}",
                nodes.len()
            )));
        }
        if nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("nodes must be finite"));
        }
        if nodes.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::invalid("nodes must be nondecreasing"));
        }
        Ok(AltPoly { nodes })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn n_pairs(&self) -> usize {
        self.nodes.len() / 2
    }

    /// `Σ_j (α_{2j} − α_{2j−1})`: the total gap closed by the two-term
    /// comparison polynomial.
    pub fn pair_gap_sum(&self) -> f64 {
        self.nodes.chunks_exact(2).map(|p| p[1] - p[0]).sum()
    }

    /// Signed frequency-difference table `((−1)^{j+k}, ν_k − ν_j)` over `j < k`.
    fn pair_table(&self, pi_scaled: bool) -> Vec<(f64, f64)> {
        let scale = if pi_scaled { PI } else { 1.0 };
        let m = self.nodes.len();
        let mut table = Vec::with_capacity(m * (m - 1) / 2);
        for j in 0..m {
            for k in (j + 1)..m {
                let sign = if (j + k) % 2 == 0 { 1.0 } else { -1.0 };
                table.push((sign, scale * (self.nodes[k] - self.nodes[j])));
            }
        }
        table
    }

    /// `|P(t)|²/t²` evaluated through the cancellation-free pair expansion
    /// `−4 Σ_{j<k} (−1)^{j+k} sin²(ω_{jk} t/2)/t²`, with the `t = 0` value set
    /// to its limit `(Σ (−1)^j ν_j)²`.
    pub(crate) fn sq_over_t2_at(table: &[(f64, f64)], t: f64) -> f64 {
        if t == 0.0 {
            return -table.iter().map(|&(s, w)| s * w * w).sum::<f64>();
        }
        let inv_t2 = 1.0 / (t * t);
        -4.0 * table
            .iter()
            .map(|&(s, w)| {
                let u = (0.5 * w * t).sin();
                s * u * u
            })
            .sum::<f64>()
            * inv_t2
    }
}

/// `∫₀^U |P(t)|²/t² dt`, with the removable singularity at the origin filled
/// by its limit. Frequencies are `π·α_j` when `pi_scaled` is set.
pub fn poly_sq_over_t2(
    p: &AltPoly,
    u: f64,
    pi_scaled: bool,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::invalid(format!("upper limit must be positive, got {u}")));
    }
    let table = p.pair_table(pi_scaled);
    let max_freq = table.iter().map(|&(_, w)| w.abs()).fold(0.0, f64::max);
    let splits = oscillatory_splits(0.0, u, max_freq);
    integrate_presplit(|t| AltPoly::sq_over_t2_at(&table, t), &splits, spec)
}

/// The analytic tail `∫_U^∞ |P(t)|²/t² dt`, closed by integration by parts:
/// each cosine pair contributes `cos(ωU)/U − ω(π/2 − π·si(ωU/π))` and the
/// diagonal contributes `2n/U`.
pub fn poly_sq_over_t2_tail(p: &AltPoly, u: f64, pi_scaled: bool) -> f64 {
    assert!(u > 0.0 && u.is_finite(), "tail cutoff must be positive");
    let table = p.pair_table(pi_scaled);
    let diag = p.nodes.len() as f64 / u;
    let cross: f64 = table
        .iter()
        .map(|&(s, w)| {
            let w = w.abs();
            let c = if w == 0.0 {
                1.0 / u
            } else {
                (w * u).cos() / u - w * (FRAC_PI_2 - PI * specfun::si(w * u / PI))
            };
            s * c
        })
        .sum();
    diag + 2.0 * cross
}

/// `∫₀^∞ |P(t)|²/t² dt` as head (`[0, 1]`, adaptive) plus analytic tail.
pub fn poly_sq_over_t2_full(p: &AltPoly, pi_scaled: bool, spec: &QuadratureSpec) -> Result<f64> {
    let head = poly_sq_over_t2(p, 1.0, pi_scaled, spec)?;
    Ok(head.value + poly_sq_over_t2_tail(p, 1.0, pi_scaled))
}

/// Exact `∫_{−1/2}^{1/2} |P(t)|² dt = Σ_{j,k} (−1)^{j+k} s_kernel(α_j − α_k)`,
/// always in `[0, (2n)²]`.
pub fn closed_l2_norm(p: &AltPoly) -> f64 {
    let table = p.pair_table(false);
    let diag = p.nodes.len() as f64;
    let cross: f64 = table.iter().map(|&(s, w)| s * specfun::s_kernel(w)).sum();
    diag + 2.0 * cross
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{g, si, sinc};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn default_spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn integrate_constant() {
        let r = integrate(|_| 1.0, 0.0, 1.0, &default_spec()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn integrate_sinc_matches_si() {
        let r = integrate(sinc, 0.0, 1.0, &default_spec()).unwrap();
        assert!((r.value - si(1.0)).abs() < 1e-12);
    }

    #[test]
    fn integrate_oscillatory_sine_over_t() {
        // ∫₀^10 sin(πt)/t dt = π ∫₀^10 sinc t dt = π·si(10)
        let r = integrate(
            |t| if t == 0.0 { PI } else { (PI * t).sin() / t },
            0.0,
            10.0,
            &default_spec(),
        )
        .unwrap();
        assert!((r.value - PI * si(10.0)).abs() < 1e-10);
    }

    #[test]
    fn error_estimates_are_honest() {
        // battery of known integrals at a modest tolerance
        let spec = QuadratureSpec {
            abs_tol: 1e-8,
            rel_tol: 0.0,
            max_depth: 60,
        };
        let a = 1e-3f64.sqrt();
        let cases: Vec<(Box<dyn FnMut(f64) -> f64>, f64, f64, f64)> = vec![
            (Box::new(|x: f64| x.exp()), 0.0, 1.0, std::f64::consts::E - 1.0),
            (
                Box::new(move |x: f64| 1.0 / (1e-3 + x * x)),
                0.0,
                1.0,
                (1.0 / a) * (1.0 / a).atan(),
            ),
            (
                Box::new(|x: f64| (40.0 * x).cos()),
                0.0,
                20.0,
                (800.0f64).sin() / 40.0,
            ),
        ];
        for (f, lo, hi, exact) in cases {
            let r = integrate(f, lo, hi, &spec).unwrap();
            let true_err = (r.value - exact).abs();
            assert!(
                true_err <= 2.0 * r.error_estimate + 1e-13 * (1.0 + exact.abs()),
                "true error {true_err} vs estimate {}",
                r.error_estimate
            );
        }
    }

    #[test]
    fn depth_exhaustion_is_reported() {
        let spec = QuadratureSpec {
            abs_tol: 1e-13,
            rel_tol: 0.0,
            max_depth: 10,
        };
        let r = integrate(|x: f64| (1.0 / (x + 1e-9)).sin(), 0.0, 1.0, &spec);
        match r {
            Err(Error::QuadratureFailure { error_estimate, requested_tol, .. }) => {
                assert!(error_estimate > requested_tol);
            }
            other => panic!("expected depth exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn oracle_pair_form_unit_square() {
        let v = oracle_pair_form((0.0, 1.0), (0.0, 1.0), &default_spec()).unwrap();
        let exact = 2.0 * si(1.0) - 4.0 / (PI * PI);
        assert!((v - exact).abs() < 1e-8, "{v} vs {exact}");
    }

    #[test]
    fn oracle_pair_form_double_interval_matches_g() {
        // ([0,2],[0,2]) = 2·2·∫₀^1 sinc² x dx = 4·g(1)
        let v = oracle_pair_form((0.0, 2.0), (0.0, 2.0), &default_spec()).unwrap();
        assert!((v - 4.0 * g(1.0)).abs() < 1e-8);
    }

    #[test]
    fn alt_poly_validation() {
        assert!(AltPoly::new(vec![0.0, 1.0, 2.0]).is_err());
        assert!(AltPoly::new(vec![1.0, 0.5]).is_err());
        assert!(AltPoly::new(vec![]).is_err());
        assert!(AltPoly::new(vec![0.0, 0.0, 1.0, 1.0]).is_ok());
    }

    #[test]
    fn sq_over_t2_two_node_case() {
        // n = 1, nodes (0, T), π-scaled: integrand is 4 sin²(πTt/2)/t²
        let p = AltPoly::new(vec![0.0, 1.5]).unwrap();
        let head = poly_sq_over_t2(&p, 1.0, true, &default_spec()).unwrap();
        let direct = integrate(
            |t| {
                if t == 0.0 {
                    (PI * 1.5f64).powi(2)
                } else {
                    let s = (PI * 1.5 * t / 2.0).sin();
                    4.0 * s * s / (t * t)
                }
            },
            0.0,
            1.0,
            &default_spec(),
        )
        .unwrap();
        assert!((head.value - direct.value).abs() < 1e-9);
    }

    #[test]
    fn sq_over_t2_limit_at_origin() {
        // nodes (0,1,2,3), π-scaled: limit π²(−0+1−2+3)² = 4π²
        let p = AltPoly::new(vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let table = p.pair_table(true);
        let v = AltPoly::sq_over_t2_at(&table, 0.0);
        assert!((v - 4.0 * PI * PI).abs() < 1e-10, "{v}");
        // continuity into t > 0
        let v_eps = AltPoly::sq_over_t2_at(&table, 1e-6);
        assert!((v - v_eps).abs() < 1e-6);
    }

    #[test]
    fn sq_over_t2_collapsed_nodes_vanish() {
        let p = AltPoly::new(vec![0.0, 0.0, 1.0, 1.0]).unwrap();
        let table = p.pair_table(true);
        for &t in &[0.0, 0.1, 0.5, 0.9] {
            assert!(AltPoly::sq_over_t2_at(&table, t).abs() < 1e-12);
        }
        let head = poly_sq_over_t2(&p, 1.0, true, &default_spec()).unwrap();
        assert!(head.value.abs() < 1e-12);
    }

    #[test]
    fn head_plus_tail_equals_pi_t_for_two_nodes() {
        // ∫₀^∞ 4 sin²(Tt/2)/t² dt = πT (unscaled nodes (0, T))
        for &t_total in &[0.5, 1.0, 3.7] {
            let p = AltPoly::new(vec![0.0, t_total]).unwrap();
            let full = poly_sq_over_t2_full(&p, false, &default_spec()).unwrap();
            assert!(
                (full - PI * t_total).abs() < 1e-9,
                "T = {t_total}: {full} vs {}",
                PI * t_total
            );
        }
    }

    #[test]
    fn tail_vanishes_as_cutoff_grows() {
        let p = AltPoly::new(vec![0.0, 1.0, 2.5, 4.0]).unwrap();
        let t1 = poly_sq_over_t2_tail(&p, 1.0, false).abs();
        let t100 = poly_sq_over_t2_tail(&p, 100.0, false).abs();
        let t10000 = poly_sq_over_t2_tail(&p, 10_000.0, false).abs();
        assert!(t100 < t1);
        assert!(t10000 < 16.0 / 10_000.0 * 2.0);
    }

    #[test]
    fn head_tail_split_is_cutoff_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(1..=4usize);
            let mut nodes: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(0.0..12.0)).collect();
            nodes.sort_by(f64::total_cmp);
            let p = AltPoly::new(nodes).unwrap();
            let at = |u: f64| {
                poly_sq_over_t2(&p, u, false, &default_spec()).unwrap().value
                    + poly_sq_over_t2_tail(&p, u, false)
            };
            let v1 = at(1.0);
            let v5 = at(5.0);
            assert!((v1 - v5).abs() < 1e-8, "U=1: {v1}, U=5: {v5}");
        }
    }

    #[test]
    fn closed_l2_norm_examples() {
        // n = 1, nodes (0, β): 2 − 2 s_kernel(β)
        for &beta in &[0.3, 2.0, 7.7] {
            let p = AltPoly::new(vec![0.0, beta]).unwrap();
            let want = 2.0 - 2.0 * specfun::s_kernel(beta);
            assert!((closed_l2_norm(&p) - want).abs() < 1e-13);
        }
        // P ≡ 0
        let p = AltPoly::new(vec![0.0, 0.0, 5.0, 5.0]).unwrap();
        assert!(closed_l2_norm(&p).abs() < 1e-13);
    }

    #[test]
    fn closed_l2_norm_matches_direct_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..15 {
            let n = rng.gen_range(1..=4usize);
            let mut nodes: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(0.0..25.0)).collect();
            nodes.sort_by(f64::total_cmp);
            let p = AltPoly::new(nodes.clone()).unwrap();
            let direct = integrate(
                |t| {
                    let mut re = 0.0;
                    let mut im = 0.0;
                    for (j, &a) in nodes.iter().enumerate() {
                        let s = if (j + 1) % 2 == 0 { 1.0 } else { -1.0 };
                        re += s * (a * t).cos();
                        im += s * (a * t).sin();
                    }
                    re * re + im * im
                },
                -0.5,
                0.5,
                &default_spec(),
            )
            .unwrap();
            assert!(
                (closed_l2_norm(&p) - direct.value).abs() < 1e-9,
                "nodes {nodes:?}"
            );
        }
    }

    #[test]
    fn infinite_integrals_coincide_for_p_and_two_term() {
        // random alternating polynomials vs the two-term polynomial with the
        // same total pair gap
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let n = rng.gen_range(1..=5usize);
            let mut nodes: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(0.0..20.0)).collect();
            nodes.sort_by(f64::total_cmp);
            let p = AltPoly::new(nodes).unwrap();
            let two = AltPoly::new(vec![0.0, p.pair_gap_sum()]).unwrap();
            let lhs = poly_sq_over_t2_full(&p, false, &default_spec()).unwrap();
            let rhs = poly_sq_over_t2_full(&two, false, &default_spec()).unwrap();
            assert!((lhs - rhs).abs() < 1e-6, "{lhs} vs {rhs}");
        }
    }
}
