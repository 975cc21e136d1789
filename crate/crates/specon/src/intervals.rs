//! Finite unions of intervals, their gap-vector parameterization, decreasing
//! rearrangement, dilation, and nonnegative step functions.
//!
//! A set is stored as its sorted endpoint list `x₁ ≤ … ≤ x_{2n}`; the gap
//! vector `(a₁, …, a_{2n−1})` of consecutive differences generates the same
//! set up to translation, with interval lengths at odd positions and hole
//! widths at even positions (1-based).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used when merging nearly coincident endpoints.
const MERGE_TOL: f64 = 1e-12;

/// A finite union of closed intervals with positive total measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalUnion {
    endpoints: Vec<f64>,
}

impl IntervalUnion {
    /// Builds a union from a nondecreasing, even-length endpoint list.
    ///
    /// Zero-length components are allowed here; [`IntervalUnion::canonicalize`]
    /// removes them. Total measure must be positive.
    pub fn new(endpoints: Vec<f64>) -> Result<Self> {
        if endpoints.is_empty() || endpoints.len() % 2 != 0 {
            return Err(Error::invalid(format!(
                "endpoint list must have positive even length, got {}",
                endpoints.len()
            )));
        }
        if endpoints.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("endpoints must be finite"));
        }
        if endpoints.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::invalid("endpoints must be nondecreasing"));
        }
        let u = IntervalUnion { endpoints };
        if u.measure() <= 0.0 {
            return Err(Error::invalid("total measure must be positive"));
        }
        Ok(u)
    }

    /// Single interval `[lo, hi]`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        IntervalUnion::new(vec![lo, hi])
    }

    pub fn endpoints(&self) -> &[f64] {
        &self.endpoints
    }

    pub fn n_components(&self) -> usize {
        self.endpoints.len() / 2
    }

    /// Component intervals as `(lo, hi)` pairs, left to right.
    pub fn components(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.endpoints.chunks_exact(2).map(|c| (c[0], c[1]))
    }

    pub fn measure(&self) -> f64 {
        self.components().map(|(lo, hi)| hi - lo).sum()
    }

    /// Whether `x` lies in the union (closed components).
    pub fn contains(&self, x: f64) -> bool {
        self.components().any(|(lo, hi)| lo <= x && x <= hi)
    }

    /// Merges components separated by gaps below `MERGE_TOL·max(1,|x|)` and
    /// drops zero-length components. Idempotent.
    pub fn canonicalize(&self) -> IntervalUnion {
        let mut comps: Vec<(f64, f64)> = Vec::with_capacity(self.n_components());
        for (lo, hi) in self.components() {
            let near = |a: f64, b: f64| (b - a).abs() <= MERGE_TOL * 1f64.max(a.abs().max(b.abs()));
            match comps.last_mut() {
                Some(last) if near(last.1, lo) => last.1 = hi,
                _ => comps.push((lo, hi)),
            }
        }
        let endpoints = comps
            .into_iter()
            .filter(|(lo, hi)| hi - lo > MERGE_TOL * 1f64.max(lo.abs().max(hi.abs())))
            .flat_map(|(lo, hi)| [lo, hi])
            .collect();
        IntervalUnion { endpoints }
    }

    /// Translate every endpoint by `c`.
    pub fn translate(&self, c: f64) -> IntervalUnion {
        IntervalUnion {
            endpoints: self.endpoints.iter().map(|x| x + c).collect(),
        }
    }

    /// Decreasing rearrangement of the indicator: the interval `[0, |A|]`.
    pub fn rearrange(&self) -> IntervalUnion {
        IntervalUnion {
            endpoints: vec![0.0, self.measure()],
        }
    }

    /// `sA = {sx : x ∈ A}` for `s > 0`; measure scales by `s`.
    pub fn dilate(&self, s: f64) -> Result<IntervalUnion> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::invalid(format!(
                "dilation factor must be positive, got {s}"
            )));
        }
        Ok(IntervalUnion {
            endpoints: self.endpoints.iter().map(|x| x * s).collect(),
        })
    }

    /// Anchors the set at `x₁ = 0` and rebuilds it from its gap vector.
    pub fn from_gaps(g: &GapVector) -> IntervalUnion {
        let mut endpoints = Vec::with_capacity(g.len() + 1);
        let mut x = 0.0;
        endpoints.push(x);
        for &a in g.gaps() {
            x += a;
            endpoints.push(x);
        }
        IntervalUnion { endpoints }.canonicalize()
    }

    /// Consecutive endpoint differences; the translation is dropped.
    ///
    /// Expects a canonical set (strictly increasing endpoints); on a
    /// non-canonical one the result carries zero entries.
    pub fn to_gaps(&self) -> Result<GapVector> {
        GapVector::new(self.endpoints.windows(2).map(|w| w[1] - w[0]).collect())
    }
}

/// The tuple `(a₁, …, a_{2n−1})` of interval lengths (odd positions, 1-based)
/// and hole widths (even positions) generating a set up to translation.
///
/// Zero entries are allowed so the gap functional stays defined on the closed
/// domain; canonicalization is applied only on request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapVector {
    gaps: Vec<f64>,
}

impl GapVector {
    pub fn new(gaps: Vec<f64>) -> Result<Self> {
        if gaps.len() % 2 == 0 {
            return Err(Error::invalid(format!(
                "gap vector must have odd length 2n−1, got {}",
                gaps.len()
            )));
        }
        if gaps.iter().any(|a| !a.is_finite() || *a < 0.0) {
            return Err(Error::invalid("gap entries must be finite and nonnegative"));
        }
        let g = GapVector { gaps };
        if g.total_length() <= 0.0 {
            return Err(Error::invalid("total interval length must be positive"));
        }
        Ok(g)
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length is always ≥ 1
    }

    /// Number of intervals `n` (counting zero-length ones).
    pub fn n_intervals(&self) -> usize {
        (self.gaps.len() + 1) / 2
    }

    /// Total interval length `T = Σ a_{2j−1}` (odd positions, 1-based).
    pub fn total_length(&self) -> f64 {
        self.gaps.iter().step_by(2).sum()
    }

    /// Endpoints `x₁ = 0, x_{j+1} = x_j + a_j` of the generated set.
    pub fn endpoints(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.gaps.len() + 1);
        let mut x = 0.0;
        out.push(x);
        for &a in &self.gaps {
            x += a;
            out.push(x);
        }
        out
    }

    /// True if every entry is strictly positive.
    pub fn is_interior(&self) -> bool {
        self.gaps.iter().all(|&a| a > 0.0)
    }

    /// Removes zero lengths and zero holes by rebuilding from the generated set.
    pub fn canonicalize(&self) -> GapVector {
        IntervalUnion::from_gaps(self)
            .to_gaps()
            .expect("canonical set of positive measure yields a valid gap vector")
    }

    /// Scales every entry by `s > 0` (dilation of the generated set).
    pub fn scale(&self, s: f64) -> Result<GapVector> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::invalid(format!(
                "scale factor must be positive, got {s}"
            )));
        }
        GapVector::new(self.gaps.iter().map(|a| a * s).collect())
    }
}

/// One constant piece of a step function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepPiece {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

/// A nonnegative piecewise-constant function with finitely many pieces of
/// finite support. Pieces are kept sorted and pairwise disjoint; zero-measure
/// and zero-value pieces are dropped at construction (they carry no mass).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunction {
    pieces: Vec<StepPiece>,
}

impl StepFunction {
    pub fn new(mut pieces: Vec<StepPiece>) -> Result<Self> {
        for p in &pieces {
            if !(p.lo.is_finite() && p.hi.is_finite() && p.value.is_finite()) {
                return Err(Error::invalid("step pieces must be finite"));
            }
            if p.hi < p.lo {
                return Err(Error::invalid(format!(
                    "piece [{}, {}] has negative length",
                    p.lo, p.hi
                )));
            }
            if p.value < 0.0 {
                return Err(Error::invalid(format!("piece value {} < 0", p.value)));
            }
        }
        pieces.retain(|p| p.hi > p.lo && p.value > 0.0);
        pieces.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        for w in pieces.windows(2) {
            if w[1].lo < w[0].hi {
                return Err(Error::invalid(format!(
                    "pieces [{}, {}] and [{}, {}] overlap",
                    w[0].lo, w[0].hi, w[1].lo, w[1].hi
                )));
            }
        }
        Ok(StepFunction { pieces })
    }

    pub fn pieces(&self) -> &[StepPiece] {
        &self.pieces
    }

    /// Measure of the support.
    pub fn support_measure(&self) -> f64 {
        self.pieces.iter().map(|p| p.hi - p.lo).sum()
    }

    /// Decreasing rearrangement: pieces sorted by value descending and stacked
    /// left to right from the origin; measure per value level is preserved.
    pub fn rearrange(&self) -> StepFunction {
        let mut by_value: Vec<(f64, f64)> = Vec::new(); // (value, total measure)
        let mut sorted: Vec<&StepPiece> = self.pieces.iter().collect();
        sorted.sort_by(|a, b| b.value.total_cmp(&a.value));
        for p in sorted {
            match by_value.last_mut() {
                Some(last) if last.0 == p.value => last.1 += p.hi - p.lo,
                _ => by_value.push((p.value, p.hi - p.lo)),
            }
        }
        let mut pieces = Vec::with_capacity(by_value.len());
        let mut x = 0.0;
        for (value, m) in by_value {
            pieces.push(StepPiece {
                lo: x,
                hi: x + m,
                value,
            });
            x += m;
        }
        StepFunction { pieces }
    }
}
