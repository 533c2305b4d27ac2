use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 2×2 complex matrix, row-major.
pub type Mat2 = [[Complex64; 2]; 2];

/// A pure `k`-qubit state. `amplitudes[i]` is the coefficient of the basis
/// vector whose bitstring is the binary expansion of `i`, first qubit most
/// significant.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    k: usize,
    amplitudes: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    k: usize,
    amplitudes: Vec<[f64; 2]>,
}

impl State {
    pub fn new(k: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if k == 0 || k > 16 {
            return Err(Error::Argument(format!("qubit count k = {k} out of range")));
        }
        if amplitudes.len() != 1 << k {
            return Err(Error::Argument(format!(
                "a {k}-qubit state needs {} amplitudes, got {}",
                1 << k,
                amplitudes.len()
            )));
        }
        Ok(Self { k, amplitudes })
    }

    pub fn from_real(k: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::new(k, amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Equal-weight superposition of the given basis strings (unnormalized
    /// when `normalize` is false).
    pub fn superposition(k: usize, bitstrings: &[&str], normalize: bool) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << k];
        for s in bitstrings {
            if s.len() != k {
                return Err(Error::Argument(format!("bitstring {s} does not have length {k}")));
            }
            let idx =
                super::variable::parse_bitstring(s).ok_or_else(|| Error::Argument(format!("not a bitstring: {s}")))?;
            amps[idx as usize] += Complex64::new(1.0, 0.0);
        }
        let st = Self::new(k, amps)?;
        Ok(if normalize { st.normalized() } else { st })
    }

    pub fn ghz(k: usize) -> Self {
        let zeros = "0".repeat(k);
        let ones = "1".repeat(k);
        Self::superposition(k, &[&zeros, &ones], true).expect("valid GHZ state")
    }

    pub fn w(k: usize) -> Self {
        let strings: Vec<String> = (0..k).map(|j| (0..k).map(|i| if i == j { '1' } else { '0' }).collect()).collect();
        let refs: Vec<&str> = strings.iter().map(String::as_str).collect();
        Self::superposition(k, &refs, true).expect("valid W state")
    }

    pub fn basis(k: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << k];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { k, amplitudes: amps }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: u32) -> Complex64 {
        self.amplitudes[index as usize]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        Self { k: self.k, amplitudes: self.amplitudes.iter().map(|a| a / n).collect() }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self { k: self.k, amplitudes: self.amplitudes.iter().map(|a| a * c).collect() }
    }

    /// Applies `m[0] ⊗ m[1] ⊗ … ⊗ m[k-1]` to the amplitude vector.
    pub fn apply_tensor(&self, m: &[Mat2]) -> Result<Self> {
        if m.len() != self.k {
            return Err(Error::Dimension { expected: self.k, found: m.len() });
        }
        let mut amps = self.amplitudes.clone();
        for (slot, g) in m.iter().enumerate() {
            let bit = 1usize << (self.k - 1 - slot);
            for i in 0..amps.len() {
                if i & bit == 0 {
                    let (lo, hi) = (amps[i], amps[i | bit]);
                    amps[i] = g[0][0] * lo + g[0][1] * hi;
                    amps[i | bit] = g[1][0] * lo + g[1][1] * hi;
                }
            }
        }
        Ok(Self { k: self.k, amplitudes: amps })
    }

    /// Reorders the tensor factors: qubit `j` of the result is qubit `perm[j]`
    /// of `self`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let k = self.k;
        if perm.len() != k {
            return Err(Error::Dimension { expected: k, found: perm.len() });
        }
        let mut seen = vec![false; k];
        for &p in perm {
            if p >= k || seen[p] {
                return Err(Error::Argument(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << k];
        for (i, a) in amps.iter_mut().enumerate() {
            let mut src = 0usize;
            for (j, &p) in perm.iter().enumerate() {
                let b = (i >> (k - 1 - j)) & 1;
                src |= b << (k - 1 - p);
            }
            *a = self.amplitudes[src];
        }
        Ok(Self { k, amplitudes: amps })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(raw.k, raw.amplitudes.iter().map(|p| Complex64::new(p[0], p[1])).collect())
    }

    pub fn to_json(&self) -> String {
        let raw = StateFile { k: self.k, amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect() };
        serde_json::to_string(&raw).expect("state serializes")
    }
}
