use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `z_λ = Π i^{m_i} m_i!`, the order of the centralizer of the class.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let m = self.parts[i..].iter().take_while(|&&q| q == p).count();
            for j in 1..=m {
                z *= BigInt::from(p) * BigInt::from(j);
            }
            i += m;
        }
        z
    }
}

/// All partitions of `n`, in reverse lexicographic order starting at `(n)`.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

type CharKey = (Vec<u32>, Vec<u32>);

fn character_cache() -> &'static Mutex<HashMap<CharKey, i64>> {
    static CACHE: std::sync::OnceLock<Mutex<HashMap<CharKey, i64>>> = std::sync::OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Irreducible character `χ^λ(μ)` of `S_n` by the Murnaghan–Nakayama rule.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.n() != mu.n() {
        return Err(Error::Argument(format!("character of a partition of {} on a class of {}", lambda.n(), mu.n())));
    }
    Ok(mn_rec(&lambda.parts, &mu.parts))
}

/// Removes rim hooks of length `mu[0]` using beta-numbers: a hook of length
/// `r` corresponds to moving a bead from `b` to `b − r`, with sign given by
/// the parity of the beads jumped over.
fn mn_rec(lambda: &[u32], mu: &[u32]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = character_cache().lock().expect("cache lock").get(&key) {
        return v;
    }
    let len = lambda.len();
    let beta: Vec<i64> = lambda.iter().enumerate().map(|(i, &p)| p as i64 + (len - 1 - i) as i64).collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        let target = b - r as i64;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let jumped = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let shape: Vec<u32> =
            nb.iter().enumerate().map(|(j, &c)| (c - (len - 1 - j) as i64) as u32).filter(|&p| p > 0).collect();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&shape, rest);
    }
    character_cache().lock().expect("cache lock").insert(key, total);
    total
}

/// The two-row shape `((n+d)/2, (n−d)/2)` attached to a slot of degree `d`.
pub fn two_row(n: u32, d: u32) -> Option<Partition> {
    if d > n || (n - d) % 2 == 1 {
        return None;
    }
    Some(Partition::new(vec![(n + d) / 2, (n - d) / 2]))
}

/// `Σ_{μ ⊢ n} z_μ^{-1} Π_i f_i(μ)` for integer class functions, checked to be
/// an integer.
pub(crate) fn class_average(n: u32, product: impl Fn(&Partition) -> BigInt) -> Result<BigInt> {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for mu in partitions(n) {
        let z = mu.z();
        let v = product(&mu);
        // num/den + v/z
        num = num * &z + v * &den;
        den *= z;
        let g = num.gcd(&den);
        if !g.is_zero() {
            num /= &g;
            den /= &g;
        }
    }
    if !den.is_one() && !num.is_zero() {
        return Err(Error::Consistency(format!("class average {num}/{den} is not an integer")));
    }
    Ok(if num.is_zero() { num } else { num / den })
}
