//! Dimensions of covariant and invariant spaces and Hilbert-series
//! coefficients, by symmetric-group characters and by constant-term
//! extraction from the rational generating functions.
//!
//! The multiplicity of a covariant of amplitude degree `n` and multidegree
//! `d` is `⟨Π_j χ^{λ(d_j)} | χ^{(n)}⟩` with `λ(d) = ((n+d)/2, (n−d)/2)`,
//! computed as `Σ_{μ⊢n} z_μ^{-1} Π_j χ^{λ(d_j)}(μ)`.

mod closed_form;
mod partition;
mod series;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub use closed_form::{expand_closed_form, ClosedForm, Factor};
pub use partition::{mn_character, partitions, two_row, Partition};
pub use series::{constant_term_series, hlsu_spec, hlu_spec, CtSpec, LaurentSeriesTruncation, Measure, SeriesMonomial};

use crate::error::{Error, Result};
use partition::class_average;

fn to_u64(v: BigInt) -> u64 {
    v.to_u64().expect("dimensions are nonnegative and small")
}

fn dim_cov_cache() -> &'static Mutex<HashMap<(u32, Vec<u32>), u64>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, Vec<u32>), u64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Dimension of the covariants of amplitude degree `n` and multidegree `d`.
/// Multidegrees with `d_j > n` or the wrong parity give 0.
pub fn dim_cov(n: u32, k: usize, d: &[u32]) -> Result<u64> {
    if d.len() != k {
        return Err(Error::Dimension { expected: k, found: d.len() });
    }
    if d.iter().any(|&x| x > n || (n - x) % 2 == 1) {
        return Ok(0);
    }
    let mut key = d.to_vec();
    key.sort_unstable();
    if let Some(&v) = dim_cov_cache().lock().expect("cache lock").get(&(n, key.clone())) {
        return Ok(v);
    }
    let shapes: Vec<Partition> = key.iter().map(|&x| two_row(n, x).expect("parity checked")).collect();
    let v = class_average(n, |mu| {
        shapes.iter().fold(BigInt::from(1), |acc, lam| acc * mn_character(lam, mu).expect("sizes agree"))
    })?;
    let v = to_u64(v);
    dim_cov_cache().lock().expect("cache lock").insert((n, key), v);
    Ok(v)
}

/// Dimension of the SLOCC invariants of the given degree (0 for odd degree).
pub fn dim_inv_slocc(degree: u32, k: usize) -> u64 {
    if degree % 2 == 1 {
        return 0;
    }
    dim_cov(degree, k, &vec![0; k]).expect("length matches")
}

/// Total dimension of covariants of amplitude degree `n`,
/// `Σ_{μ⊢n} z_μ^{-1} (Σ_{λ⊢n, ℓ(λ)≤2} χ^λ(μ))^k`.
pub fn dim_cov_total(n: u32, k: usize) -> u64 {
    let shapes: Vec<Partition> = partitions(n).into_iter().filter(|p| p.len() <= 2).collect();
    let v = class_average(n, |mu| {
        let s: i64 = shapes.iter().map(|l| mn_character(l, mu).expect("sizes agree")).sum();
        num_traits::pow(BigInt::from(s), k)
    })
    .expect("total covariant dimension is an integer");
    to_u64(v)
}

/// Every multidegree that can carry covariants of degree `n`: each entry in
/// `{n, n−2, …}`.
pub fn multidegrees(n: u32, k: usize) -> Vec<Vec<u32>> {
    let choices: Vec<u32> = (0..=n).filter(|d| (n - d) % 2 == 0).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                choices.iter().map(move |&c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Coefficients of `h_LUT(k; z)` for `z^0 … z^N` by the character route:
/// `z^{2n}` carries `Σ_d dim Cov(n; k; d)²`.
pub fn hilbert_lut_coeffs(k: usize, max_degree: u32) -> Vec<u64> {
    (0..=max_degree)
        .map(|e| {
            if e % 2 == 1 {
                return 0;
            }
            let n = e / 2;
            multidegrees(n, k).iter().map(|d| dim_cov(n, k, d).expect("length matches").pow(2)).sum()
        })
        .collect()
}

/// `table[n₁][n₂] = Σ_d dim Cov(n₁; k; d) · dim Cov(n₂; k; d)`.
pub fn hilbert_lsut_coeffs(k: usize, max_n1: u32, max_n2: u32) -> Vec<Vec<u64>> {
    (0..=max_n1)
        .map(|n1| {
            (0..=max_n2)
                .map(|n2| {
                    if (n1 + n2) % 2 == 1 {
                        return 0;
                    }
                    multidegrees(n1.min(n2), k)
                        .iter()
                        .map(|d| {
                            dim_cov(n1, k, d).expect("length matches") * dim_cov(n2, k, d).expect("length matches")
                        })
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Coefficients of `h_SLOCC(k; t)` for `t^0 … t^N`.
pub fn hilbert_slocc_coeffs(k: usize, max_degree: u32) -> Vec<u64> {
    (0..=max_degree).map(|d| dim_inv_slocc(d, k)).collect()
}

/// LUT coefficients through `z^N` by constant-term extraction.
pub fn hilbert_lut_ct(k: usize, max_degree: u32) -> Result<Vec<i128>> {
    let table = constant_term_series(&hlu_spec(k, Measure::Weyl)?, max_degree, 0)?;
    Ok(table.into_iter().map(|row| row[0]).collect())
}

/// LSUT bidegree table by constant-term extraction.
pub fn hilbert_lsut_ct(k: usize, max_n1: u32, max_n2: u32) -> Result<Vec<Vec<i128>>> {
    constant_term_series(&hlsu_spec(k, Measure::Weyl)?, max_n1, max_n2)
}

fn to_i128_table(t: Vec<Vec<u64>>) -> Vec<Vec<i128>> {
    t.into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect()
}

/// Compares two coefficient tables entry by entry and returns the first
/// mismatch as `(i, j, left, right)`.
pub fn first_mismatch(a: &[Vec<i128>], b: &[Vec<i128>]) -> Option<(usize, usize, i128, i128)> {
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                return Some((i, j, *x, *y));
            }
        }
    }
    None
}

/// Character-route LSUT table as signed integers, for comparisons.
pub fn hilbert_lsut_coeffs_i128(k: usize, max_n1: u32, max_n2: u32) -> Vec<Vec<i128>> {
    to_i128_table(hilbert_lsut_coeffs(k, max_n1, max_n2))
}

/// `⅓(2^{k−1} + (−1)^k)`, the predicted number of multilinear cubic
/// covariants.
pub fn multilinear_cubic_count(k: usize) -> u64 {
    let sign: i64 = if k % 2 == 0 { 1 } else { -1 };
    ((1i64 << (k - 1)) + sign) as u64 / 3
}

/// `7/3·2^{k−1} − 4/3·(−1)^{k−1}`, the predicted LSUT degree-4 count.
pub fn lsut_degree4_count(k: usize) -> u64 {
    let sign: i64 = if (k - 1) % 2 == 0 { 1 } else { -1 };
    ((7 * (1i64 << (k - 1)) - 4 * sign) / 3) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two_and_three_counts() {
        for k in 1..=5 {
            assert_eq!(dim_cov_total(2, k), 1 << (k - 1));
            assert_eq!(dim_cov_total(3, k), (3u64.pow(k as u32 - 1) + 1) / 2);
            assert_eq!(dim_cov_total(1, k), 1);
        }
        assert_eq!(dim_cov(3, 4, &[1, 1, 1, 1]).unwrap(), 3);
        assert_eq!(dim_cov(3, 4, &[3, 3, 3, 3]).unwrap(), 1);
        assert_eq!(dim_cov(2, 3, &[2, 0, 0]).unwrap(), 1);
        assert_eq!(dim_cov(2, 3, &[2, 2, 0]).unwrap(), 0);
        assert_eq!(dim_cov(2, 3, &[1, 0, 0]).unwrap(), 0);
    }

    #[test]
    fn slocc_invariant_counts() {
        assert_eq!(dim_inv_slocc(2, 3), 0);
        assert_eq!(dim_inv_slocc(2, 4), 1);
        assert_eq!(dim_inv_slocc(4, 3), 1);
        assert_eq!(dim_inv_slocc(3, 4), 0);
    }

    #[test]
    fn lut_character_route() {
        assert_eq!(hilbert_lut_coeffs(3, 6), vec![1, 0, 1, 0, 4, 0, 5]);
        let c4 = hilbert_lut_coeffs(4, 6);
        assert_eq!((c4[2], c4[4], c4[6]), (1, 8, 20));
    }

    #[test]
    fn lsut_small_entries() {
        for k in 1..=4 {
            let t = hilbert_lsut_coeffs(k, 4, 4);
            assert_eq!(t[1][1], 1);
            assert_eq!(t[2][1], 0);
            let deg4: u64 = (0..=4).map(|i| t[i][4 - i]).sum();
            if k >= 2 {
                assert_eq!(deg4, lsut_degree4_count(k));
            }
        }
    }

    #[test]
    fn predicted_counts() {
        assert_eq!([2, 3, 4].map(multilinear_cubic_count), [1, 1, 3]);
        assert_eq!([2, 3, 4].map(lsut_degree4_count), [6, 8, 20]);
    }
}
