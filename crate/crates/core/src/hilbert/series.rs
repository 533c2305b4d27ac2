use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Maximum number of Laurent variables (`t` and the `u_i`) a series carries.
pub const MAX_LAURENT_VARS: usize = 8;

type Key = [i16; MAX_LAURENT_VARS];
type Laurent = FxHashMap<Key, i128>;

/// `z^z · z̄^zbar · Π v_i^{exps[i]}` where the `v_i` are Laurent variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMonomial {
    pub z: u32,
    pub zbar: u32,
    pub exps: Vec<i32>,
}

/// Which torus density multiplies the integrand before taking constant terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    /// `Π (1 − u_i²)(1 − u_i^{-2})`, the Weyl density of `SU(2)`.
    Weyl,
    /// `Π (1 − u_i^{-2})²`, the prefactor as typeset in the source formula.
    AsPrinted,
}

/// `CT_v { prefactor / Π (1 − m)^{power} } / divisor`, to be expanded in
/// `z` (and `z̄`).
#[derive(Clone, Debug)]
pub struct CtSpec {
    pub nvars: usize,
    pub factors: Vec<(SeriesMonomial, u32)>,
    pub prefactor: Vec<(Vec<i32>, i128)>,
    pub divisor: i128,
}

fn key_of(exps: &[i32]) -> Key {
    let mut k = [0i16; MAX_LAURENT_VARS];
    for (slot, &e) in k.iter_mut().zip(exps) {
        *slot = e as i16;
    }
    k
}

fn shift(key: &Key, by: &Key) -> Key {
    let mut out = *key;
    for (o, b) in out.iter_mut().zip(by) {
        *o += b;
    }
    out
}

fn add_into(target: &mut Laurent, key: Key, c: i128) {
    let e = target.entry(key).or_insert(0);
    *e += c;
    if *e == 0 {
        target.remove(&key);
    }
}

/// A power series in `z` (and `z̄`) truncated at a bi-degree cutoff, whose
/// coefficients are sparse Laurent polynomials in up to eight variables.
#[derive(Clone, Debug)]
pub struct LaurentSeriesTruncation {
    nvars: usize,
    cutoff: (u32, u32),
    grades: Vec<Vec<Laurent>>,
}

impl LaurentSeriesTruncation {
    /// The series equal to the given Laurent polynomial in grade `(0, 0)`.
    pub fn from_laurent(nvars: usize, cutoff: (u32, u32), poly: &[(Vec<i32>, i128)]) -> Result<Self> {
        if nvars > MAX_LAURENT_VARS {
            return Err(Error::Specification(format!("at most {MAX_LAURENT_VARS} Laurent variables")));
        }
        let mut grades = vec![vec![Laurent::default(); cutoff.1 as usize + 1]; cutoff.0 as usize + 1];
        for (e, c) in poly {
            if e.len() != nvars {
                return Err(Error::Dimension { expected: nvars, found: e.len() });
            }
            add_into(&mut grades[0][0], key_of(e), *c);
        }
        Ok(Self { nvars, cutoff, grades })
    }

    pub fn cutoff(&self) -> (u32, u32) {
        self.cutoff
    }

    pub fn coefficient(&self, z: u32, zbar: u32, exps: &[i32]) -> i128 {
        self.grades
            .get(z as usize)
            .and_then(|r| r.get(zbar as usize))
            .and_then(|l| l.get(&key_of(exps)).copied())
            .unwrap_or(0)
    }

    /// Number of stored Laurent terms across all grades.
    pub fn size(&self) -> usize {
        self.grades.iter().flatten().map(|l| l.len()).sum()
    }

    /// Multiplies by `1/(1 − m)`, expanding the geometric series in place:
    /// `S_new[g] = S[g] + m · S_new[g − ord(m)]`, grades in increasing order.
    pub fn divide_by_one_minus(&mut self, m: &SeriesMonomial) -> Result<()> {
        if m.z == 0 && m.zbar == 0 {
            return Err(Error::Specification(
                "denominator factor has zero order in z and zbar; its expansion is not a power series".into(),
            ));
        }
        if m.exps.len() != self.nvars {
            return Err(Error::Dimension { expected: self.nvars, found: m.exps.len() });
        }
        let by = key_of(&m.exps);
        let (dz, dzb) = (m.z as usize, m.zbar as usize);
        for a in dz..self.grades.len() {
            for b in dzb..self.grades[a].len() {
                let src: Vec<(Key, i128)> =
                    self.grades[a - dz][b - dzb].iter().map(|(k, c)| (shift(k, &by), *c)).collect();
                for (k, c) in src {
                    add_into(&mut self.grades[a][b], k, c);
                }
            }
        }
        Ok(())
    }

    /// Drops terms that can no longer reach exponent zero: a term at grade
    /// `(a, b)` can move variable `v` by at most `rate_v` per unit of
    /// remaining order.
    fn prune(&mut self, rates: &[(i64, i64)]) {
        let (n1, n2) = self.cutoff;
        for (a, row) in self.grades.iter_mut().enumerate() {
            for (b, lp) in row.iter_mut().enumerate() {
                let remaining = (n1 as i64 - a as i64) + (n2 as i64 - b as i64);
                lp.retain(|key, _| {
                    rates.iter().enumerate().all(|(v, &(num, den))| (key[v] as i64).abs() * den <= num * remaining)
                });
            }
        }
    }

    /// Constant terms in every Laurent variable, as a table over grades.
    pub fn constant_terms(&self) -> Vec<Vec<i128>> {
        let zero = [0i16; MAX_LAURENT_VARS];
        self.grades.iter().map(|row| row.iter().map(|l| l.get(&zero).copied().unwrap_or(0)).collect()).collect()
    }
}

/// Expands the spec through `z^{n1} z̄^{n2}` and extracts constant terms,
/// dividing by the spec's divisor exactly.
pub fn constant_term_series(spec: &CtSpec, n1: u32, n2: u32) -> Result<Vec<Vec<i128>>> {
    let mut s = LaurentSeriesTruncation::from_laurent(spec.nvars, (n1, n2), &spec.prefactor)?;
    let mut rates = vec![(0i64, 1i64); spec.nvars];
    for (m, _) in &spec.factors {
        if m.z == 0 && m.zbar == 0 {
            return Err(Error::Specification(
                "denominator factor has zero order in z and zbar; its expansion is not a power series".into(),
            ));
        }
        let ord = (m.z + m.zbar) as i64;
        for (r, &e) in rates.iter_mut().zip(&m.exps) {
            let e = e.abs() as i64;
            if e * r.1 > r.0 * ord {
                *r = (e, ord);
            }
        }
    }
    for (m, power) in &spec.factors {
        for _ in 0..*power {
            s.divide_by_one_minus(m)?;
            s.prune(&rates);
        }
    }
    s.constant_terms()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|c| {
                    if c % spec.divisor != 0 {
                        Err(Error::Consistency(format!("constant term {c} is not divisible by {}", spec.divisor)))
                    } else {
                        Ok(c / spec.divisor)
                    }
                })
                .collect()
        })
        .collect()
}

fn sign_vectors(k: usize) -> Vec<Vec<i32>> {
    (0..1u32 << k).map(|mask| (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect()).collect()
}

/// The torus density as a Laurent polynomial in `offset + k` variables, the
/// first `offset` of which do not appear.
fn density(k: usize, offset: usize, measure: Measure) -> Vec<(Vec<i32>, i128)> {
    // one-variable factor: Weyl 2 − u² − u^{-2}; printed 1 − 2u^{-2} + u^{-4}
    let one: Vec<(i32, i128)> = match measure {
        Measure::Weyl => vec![(0, 2), (2, -1), (-2, -1)],
        Measure::AsPrinted => vec![(0, 1), (-2, -2), (-4, 1)],
    };
    let mut poly: Vec<(Vec<i32>, i128)> = vec![(vec![0; offset + k], 1)];
    for i in 0..k {
        poly = poly
            .into_iter()
            .flat_map(|(e, c)| {
                one.iter().map(move |&(d, w)| {
                    let mut e2 = e.clone();
                    e2[offset + i] += d;
                    (e2, c * w)
                })
            })
            .collect();
    }
    poly
}

fn check_k(k: usize, extra: usize) -> Result<()> {
    if k == 0 || k + extra > MAX_LAURENT_VARS {
        return Err(Error::Argument(format!("constant-term route supports 1 <= k <= {}", MAX_LAURENT_VARS - extra)));
    }
    Ok(())
}

/// The LUT integrand: variables `(t, u₁, …, u_k)`, denominator
/// `Π_{α∈{±1}^k, a=±1} (1 − t^a z u^α)`, divisor `2^k`.
pub fn hlu_spec(k: usize, measure: Measure) -> Result<CtSpec> {
    check_k(k, 1)?;
    let mut factors = Vec::new();
    for a in [1, -1] {
        for alpha in sign_vectors(k) {
            let mut exps = vec![a];
            exps.extend(alpha);
            factors.push((SeriesMonomial { z: 1, zbar: 0, exps }, 1));
        }
    }
    Ok(CtSpec { nvars: k + 1, factors, prefactor: density(k, 1, measure), divisor: 1 << k })
}

/// The LSUT integrand: variables `(u₁, …, u_k)`, denominator
/// `Π_α (1 − z u^α)(1 − z̄ u^α)`, divisor `2^k`.
pub fn hlsu_spec(k: usize, measure: Measure) -> Result<CtSpec> {
    check_k(k, 0)?;
    let mut factors = Vec::new();
    for alpha in sign_vectors(k) {
        factors.push((SeriesMonomial { z: 1, zbar: 0, exps: alpha.clone() }, 1));
        factors.push((SeriesMonomial { z: 0, zbar: 1, exps: alpha }, 1));
    }
    Ok(CtSpec { nvars: k, factors, prefactor: density(k, 0, measure), divisor: 1 << k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let mut s = LaurentSeriesTruncation::from_laurent(1, (4, 0), &[(vec![0], 1)]).unwrap();
        s.divide_by_one_minus(&SeriesMonomial { z: 1, zbar: 0, exps: vec![1] }).unwrap();
        for n in 0..=4 {
            assert_eq!(s.coefficient(n, 0, &[n as i32]), 1);
        }
        s.divide_by_one_minus(&SeriesMonomial { z: 1, zbar: 0, exps: vec![-1] }).unwrap();
        // 1/((1 − zu)(1 − z/u)): grade 2 is u² + 1 + u^{-2}
        assert_eq!(s.coefficient(2, 0, &[0]), 1);
        assert_eq!(s.coefficient(2, 0, &[2]), 1);
    }

    #[test]
    fn zero_order_factor_is_rejected() {
        let spec = CtSpec {
            nvars: 1,
            factors: vec![(SeriesMonomial { z: 0, zbar: 0, exps: vec![1] }, 1)],
            prefactor: vec![(vec![0], 1)],
            divisor: 1,
        };
        assert!(matches!(constant_term_series(&spec, 3, 0), Err(Error::Specification(_))));
    }

    #[test]
    fn one_qubit_lut() {
        let t = constant_term_series(&hlu_spec(1, Measure::Weyl).unwrap(), 6, 0).unwrap();
        let c: Vec<i128> = t.iter().map(|r| r[0]).collect();
        assert_eq!(c, vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn printed_density_disagrees() {
        let mut spec = hlu_spec(1, Measure::AsPrinted).unwrap();
        spec.divisor = 1;
        let t = constant_term_series(&spec, 2, 0).unwrap();
        // the character route needs 2 here (1 after dividing by 2)
        assert_ne!(t[2][0], 2);
    }
}
