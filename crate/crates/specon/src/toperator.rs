//! The signed block-sum operator
//!
//! ```text
//! T({c_j}, φ) = Σ_{s=1}^{2n−1} (−1)^s Σ_{i=1}^{2n−s} φ(c_i + … + c_{i+s−1})
//!               + φ(c₁ + c₃ + … + c_{2n−1})
//! ```
//!
//! applied to an odd-length tuple of nonnegative numbers, together with its
//! per-variable part `T_k` (the terms whose block contains `c_k`). `T`
//! annihilates `x` and `x²` exactly, which is what makes the closed form of
//! the rearrangement gap functional work.
//!
//! Two independent enumerations are implemented: the direct block sums above
//! ([`t_apply`]) and the prefix-difference form ([`t_apply_prefix`])
//!
//! ```text
//! T({c_j}, φ) = Σ_{k>s} (−1)^{k−s} φ(y_k − y_s) + φ(Σ_j (y_{2j} − y_{2j−1})),
//! y_j = c₁ + … + c_{j−1},
//! ```
//!
//! which maps blocks onto endpoint differences. Tests require the two routes
//! to agree.

use std::ops::Add;

use crate::error::{Error, Result};

/// One signed term of the expansion of `T({c_j}, φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TTerm<T> {
    /// `+1` or `−1`.
    pub sign: i8,
    /// A consecutive block sum `c_i + … + c_{i+s−1}`, or the alternating
    /// total `c₁ + c₃ + … + c_{2n−1}` for the final term.
    pub argument: T,
}

fn check_odd_length<T>(c: &[T]) -> Result<()> {
    if c.is_empty() || c.len() % 2 == 0 {
        return Err(Error::invalid(format!(
            "tuple must have odd length 2n−1, got {}",
            c.len()
        )));
    }
    Ok(())
}

/// Enumerates every signed term of `T({c_j}, ·)` in deterministic order:
/// block length `s` ascending, start index `i` ascending, alternating-total
/// term last. The list has `Σ_{s=1}^{2n−1} (2n−s) + 1` entries.
///
/// Generic over the scalar so the test suite can run it over exact rationals.
pub fn t_terms<T>(c: &[T]) -> Result<Vec<TTerm<T>>>
where
    T: Clone + Add<Output = T>,
{
    check_odd_length(c)?;
    let len = c.len();
    let mut terms = Vec::with_capacity(len * (len + 1) / 2 + 1);
    for s in 1..=len {
        let sign: i8 = if s % 2 == 0 { 1 } else { -1 };
        for i in 0..=(len - s) {
            let mut block = c[i].clone();
            for x in &c[i + 1..i + s] {
                block = block + x.clone();
            }
            terms.push(TTerm {
                sign,
                argument: block,
            });
        }
    }
    let mut alt = c[0].clone();
    for x in c.iter().skip(2).step_by(2) {
        alt = alt + x.clone();
    }
    terms.push(TTerm {
        sign: 1,
        argument: alt,
    });
    Ok(terms)
}

/// The terms of `T({c_j}, ·)` that involve `c_k` (`k` is 1-based); the
/// alternating-total term counts exactly when `k` is odd.
pub fn t_k_terms<T>(c: &[T], k: usize) -> Result<Vec<TTerm<T>>>
where
    T: Clone + Add<Output = T>,
{
    check_odd_length(c)?;
    if k == 0 || k > c.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: c.len(),
        });
    }
    let len = c.len();
    let mut terms = Vec::new();
    for s in 1..=len {
        let sign: i8 = if s % 2 == 0 { 1 } else { -1 };
        for i in 0..=(len - s) {
            // block covers 1-based indices i+1 ..= i+s
            if i + 1 <= k && k <= i + s {
                let mut block = c[i].clone();
                for x in &c[i + 1..i + s] {
                    block = block + x.clone();
                }
                terms.push(TTerm {
                    sign,
                    argument: block,
                });
            }
        }
    }
    if k % 2 == 1 {
        let mut alt = c[0].clone();
        for x in c.iter().skip(2).step_by(2) {
            alt = alt + x.clone();
        }
        terms.push(TTerm {
            sign: 1,
            argument: alt,
        });
    }
    Ok(terms)
}

/// `T({c_j}, φ)` by direct block enumeration, without allocating.
pub fn t_apply(c: &[f64], mut phi: impl FnMut(f64) -> f64) -> Result<f64> {
    check_odd_length(c)?;
    let len = c.len();
    let mut total = 0.0;
    for s in 1..=len {
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        // running block sum over starts i = 0..len−s
        let mut block: f64 = c[..s].iter().sum();
        total += sign * phi(block);
        for i in 1..=(len - s) {
            block += c[i + s - 1] - c[i - 1];
            total += sign * phi(block);
        }
    }
    let alt: f64 = c.iter().step_by(2).sum();
    total += phi(alt);
    Ok(total)
}

/// `T({c_j}, φ)` through the prefix-difference enumeration: with
/// `y_j = c₁ + … + c_{j−1}`, sums `(−1)^{k−s} φ(y_k − y_s)` over `k > s` plus
/// `φ(Σ (y_{2j} − y_{2j−1}))`.
pub fn t_apply_prefix(c: &[f64], mut phi: impl FnMut(f64) -> f64) -> Result<f64> {
    check_odd_length(c)?;
    let mut y = Vec::with_capacity(c.len() + 1);
    let mut acc = 0.0;
    y.push(acc);
    for &x in c {
        acc += x;
        y.push(acc);
    }
    let mut total = 0.0;
    for k in 1..y.len() {
        for s in 0..k {
            let sign = if (k - s) % 2 == 0 { 1.0 } else { -1.0 };
            total += sign * phi(y[k] - y[s]);
        }
    }
    let alt: f64 = y.chunks_exact(2).map(|p| p[1] - p[0]).sum();
    total += phi(alt);
    Ok(total)
}

/// `T_k({c_j}, φ)`: the contribution of the terms involving `c_k` (1-based).
pub fn t_k_apply(c: &[f64], k: usize, mut phi: impl FnMut(f64) -> f64) -> Result<f64> {
    let terms = t_k_terms(c, k)?;
    Ok(terms
        .iter()
        .map(|t| f64::from(t.sign) * phi(t.argument))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun;
    use num::BigRational;
    use num::FromPrimitive;
    use proptest::prelude::*;
    use rand::{Rng as _, SeedableRng as _};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn t_terms_single_entry_cancels() {
        let terms = t_terms(&[3.0]).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0], TTerm { sign: -1, argument: 3.0 });
        assert_eq!(terms[1], TTerm { sign: 1, argument: 3.0 });
    }

    #[test]
    fn t_terms_three_entries_expansion() {
        // −φ(c₁)−φ(c₂)−φ(c₃)+φ(c₁+c₂)+φ(c₂+c₃)−φ(c₁+c₂+c₃)+φ(c₁+c₃)
        let terms = t_terms(&[1.0, 2.0, 3.0]).unwrap();
        let expected = [
            (-1, 1.0),
            (-1, 2.0),
            (-1, 3.0),
            (1, 3.0),
            (1, 5.0),
            (-1, 6.0),
            (1, 4.0),
        ];
        assert_eq!(terms.len(), expected.len());
        for (t, (sign, arg)) in terms.iter().zip(expected) {
            assert_eq!(t.sign, sign);
            assert_eq!(t.argument, arg);
        }
    }

    #[test]
    fn t_terms_count_formula() {
        // n = 3 (length 5): Σ_{s=1}^{5}(6−s) + 1 = 16
        let terms = t_terms(&[1.0, 1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(terms.len(), 16);
    }

    #[test]
    fn t_terms_rejects_even_length() {
        assert!(t_terms(&[1.0, 2.0]).is_err());
        assert!(t_apply(&[1.0, 2.0], |x| x).is_err());
        assert!(t_terms::<f64>(&[]).is_err());
    }

    #[test]
    fn t_apply_annihilates_identity_and_square() {
        assert_eq!(t_apply(&[1.0, 2.0, 3.0], |x| x).unwrap(), 0.0);
        // −14 + 34 − 36 + 16 = 0
        assert_eq!(t_apply(&[1.0, 2.0, 3.0], |x| x * x).unwrap(), 0.0);
    }

    #[test]
    fn t_apply_constant_counts_minus_n_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6usize {
            let c: Vec<f64> = (0..2 * n - 1).map(|_| rng.gen_range(0.1..4.0)).collect();
            let got = t_apply(&c, |_| 1.0).unwrap();
            assert_eq!(got, -((n as f64) - 1.0), "n = {n}");
        }
    }

    #[test]
    fn t_k_examples() {
        // φ = x vanishes for every k
        for k in 1..=5 {
            let v = t_k_apply(&[1.0, 2.0, 3.0, 0.5, 1.5], k, |x| x).unwrap();
            assert!(v.abs() < 1e-12, "T_{k} residual {v}");
        }
        // k = 2, c = (1,2,3), φ = x: −2 + 3 + 5 − 6 = 0
        let terms = t_k_terms(&[1.0, 2.0, 3.0], 2).unwrap();
        let args: Vec<(i8, f64)> = terms.iter().map(|t| (t.sign, t.argument)).collect();
        assert_eq!(args, vec![(-1, 2.0), (1, 3.0), (1, 5.0), (-1, 6.0)]);

        assert!(t_k_apply(&[1.0, 2.0, 3.0], 0, |x| x).is_err());
        assert!(t_k_apply(&[1.0, 2.0, 3.0], 4, |x| x).is_err());
    }

    #[test]
    fn t_is_the_plain_term_sum_not_a_sum_of_t_k() {
        // T_k's overlap on multi-index blocks, so Σ_k T_k over-counts;
        // t_apply must equal the direct signed term sum.
        let c = [1.3, 0.7, 2.2, 0.4, 1.9];
        let phi = |x: f64| (1.7 * x).cos() + x;
        let direct: f64 = t_terms(&c)
            .unwrap()
            .iter()
            .map(|t| f64::from(t.sign) * phi(t.argument))
            .sum();
        assert!((t_apply(&c, phi).unwrap() - direct).abs() < 1e-12);

        let overcount: f64 = (1..=c.len())
            .map(|k| t_k_apply(&c, k, phi).unwrap())
            .sum();
        assert!((overcount - direct).abs() > 1e-6, "T_k parts should overlap");
    }

    #[test]
    fn exact_rational_annihilation() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let zero = BigRational::from_i64(0).unwrap();
        for _ in 0..100 {
            let len = 2 * rng.gen_range(1..=6usize) - 1;
            let c: Vec<BigRational> = (0..len)
                .map(|_| {
                    BigRational::new(
                        rng.gen_range(0..1000i64).into(),
                        rng.gen_range(1..1000i64).into(),
                    )
                })
                .collect();
            let lin: BigRational = t_terms(&c[..])
                .unwrap()
                .iter()
                .map(|t| {
                    let s = BigRational::from_i64(t.sign as i64).unwrap();
                    s * t.argument.clone()
                })
                .sum();
            assert_eq!(lin, zero);
            let quad: BigRational = t_terms(&c[..])
                .unwrap()
                .iter()
                .map(|t| {
                    let s = BigRational::from_i64(t.sign as i64).unwrap();
                    s * (t.argument.clone() * t.argument.clone())
                })
                .sum();
            assert_eq!(quad, zero);
            for k in 1..=len {
                let part: BigRational = t_k_terms(&c[..], k)
                    .unwrap()
                    .iter()
                    .map(|t| {
                        let s = BigRational::from_i64(t.sign as i64).unwrap();
                        s * t.argument.clone()
                    })
                    .sum();
                assert_eq!(part, zero, "T_{k} over rationals");
            }
        }
    }

    proptest! {
        #[test]
        fn enumeration_routes_agree(raw in proptest::collection::vec(0.0f64..5.0, 1..12)) {
            let mut c = raw;
            if c.len() % 2 == 0 { c.pop(); }
            let phi = |x: f64| specfun::g(x / 2.0);
            let a = t_apply(&c, phi).unwrap();
            let b = t_apply_prefix(&c, phi).unwrap();
            prop_assert!((a - b).abs() < 1e-12, "(Top) {} vs (helpful) {}", a, b);
        }

        #[test]
        fn float_annihilation_residuals(raw in proptest::collection::vec(0.0f64..1.5, 1..12)) {
            let mut c = raw;
            if c.len() % 2 == 0 { c.pop(); }
            prop_assert!(t_apply(&c, |x| x).unwrap().abs() < 1e-12);
            prop_assert!(t_apply(&c, |x| x * x).unwrap().abs() < 1e-12);
        }
    }
}
