//! Quadratic spectral concentration of indicator functions of interval
//! unions.
//!
//! For a set `A ⊂ ℝ` of finite measure and bandwidth `W`, the band energy
//! `∫_{−W/2}^{W/2} |χ̂_A(ξ)|² dξ` equals the sinc-kernel quadratic form
//! `(A, A) = ∫∫_{A×A} W sinc(W(s−t)) ds dt`. Replacing `A` by the single
//! interval `A* = [0, |A|]` of the same measure changes the energy by the
//! gap functional
//!
//! ```text
//! H(a₁, …, a_{2n−1}) = (I, I) − (J, J),
//! ```
//!
//! where `J` is generated by the gap vector (interval lengths at odd
//! positions, hole widths at even positions) and `I = [0, T]` with
//! `T = Σ a_{2j−1}`. This crate evaluates `H` exactly through a signed
//! block-sum operator applied to the second sinc antiderivative, cross-checks
//! it against two independent oscillatory-integral forms, searches for local
//! minima and counterexamples to the rearrangement inequality, and verifies
//! the known positivity regimes and L²-norm caps at desk scale.
//!
//! Modules:
//!
//! * [`specfun`] — sinc, the π-normalized sine integral, antiderivatives.
//! * [`intervals`] — interval unions, gap vectors, step functions.
//! * [`toperator`] — the block-sum operator `T({c_j}, φ)` and its parts.
//! * [`quadrature`] — adaptive Gauss–Kronrod rules and brute-force oracles.
//! * [`spectral`] — quadratic forms, the gap functional `H`, its gradient.
//! * [`search`] — multistart minimization, scans, stationarity certificates.
//! * [`bounds`] — verifiers for the positivity and norm-cap statements.
//! * [`cli`] — the `specon` command-line front end.
//!
//! Runnable walkthroughs live in `examples/`; start with
//! `cargo run --example eval_gap_vector`.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod intervals;
pub mod quadrature;
pub mod search;
pub mod specfun;
pub mod spectral;
pub mod toperator;

pub use error::{Error, Result};
