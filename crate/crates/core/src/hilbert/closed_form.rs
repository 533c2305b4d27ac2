use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};

/// A denominator factor `(1 − z^z z̄^zbar)^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
pub struct Factor {
    pub z: u32,
    #[serde(default)]
    pub zbar: u32,
    pub power: u32,
}

/// A rational generating function `P(z, z̄) / Π (1 − z^a z̄^b)^m` with integer
/// numerator coefficients keyed by `(z, z̄)` exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub numerator: BTreeMap<(u32, u32), i64>,
    pub denominator: Vec<Factor>,
}

#[derive(Deserialize)]
struct TableFile {
    numerator: BTreeMap<String, i64>,
    denominator: Vec<Factor>,
    #[serde(default)]
    symmetric: bool,
}

const TABLE_LU4: &str = include_str!("../../data/table_lu4.json");
const TABLE_LSU4: &str = include_str!("../../data/table_lsu4.json");

fn parse_exponent(key: &str) -> Result<(u32, u32)> {
    let bad = || Error::Parse(format!("bad exponent key {key:?}"));
    let mut it = key.split(',').map(|p| p.trim().parse::<u32>().map_err(|_| bad()));
    let a = it.next().ok_or_else(bad)??;
    let b = it.next().transpose()?.unwrap_or(0);
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}

impl ClosedForm {
    pub fn new(numerator: impl IntoIterator<Item = ((u32, u32), i64)>, denominator: Vec<Factor>) -> Self {
        let mut num = BTreeMap::new();
        for (e, c) in numerator {
            *num.entry(e).or_insert(0) += c;
        }
        num.retain(|_, c| *c != 0);
        Self { numerator: num, denominator }
    }

    /// Reads a table file: `numerator` maps `"i"` or `"i,j"` exponent keys to
    /// integers; `denominator` lists `{"z", "zbar", "power"}` factors; when
    /// `symmetric` is set, each listed `a_ij` also supplies `a_ji`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: TableFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut num = BTreeMap::new();
        for (key, c) in &raw.numerator {
            let (a, b) = parse_exponent(key)?;
            num.insert((a, b), *c);
            if raw.symmetric && a != b {
                if let Some(prev) = num.insert((b, a), *c) {
                    if prev != *c {
                        return Err(Error::Parse(format!("symmetric table disagrees at {key}")));
                    }
                }
            }
        }
        Ok(Self::new(num, raw.denominator))
    }

    /// The bundled four-qubit LUT numerator and denominator.
    pub fn lut4() -> Self {
        Self::from_json(TABLE_LU4).expect("bundled LU table parses")
    }

    /// The bundled four-qubit LSUT numerator and denominator.
    pub fn lsut4() -> Self {
        Self::from_json(TABLE_LSU4).expect("bundled LSU table parses")
    }

    /// `(1 − z²⁴) / ((1−z²)(1−z⁴)³(1−z⁶)(1−z⁸)(1−z¹²))`.
    pub fn lut3() -> Self {
        let f = |z, power| Factor { z, zbar: 0, power };
        Self::new([((0, 0), 1), ((24, 0), -1)], vec![f(2, 1), f(4, 3), f(6, 1), f(8, 1), f(12, 1)])
    }

    /// `(z⁵z̄⁵ + z³z̄³ + z²z̄² + 1) / ((1−zz̄)(1−z⁴)(1−z²z̄²)²(1−z̄⁴)(1−zz̄³)(1−z³z̄))`.
    pub fn lsut3() -> Self {
        let f = |z, zbar, power| Factor { z, zbar, power };
        Self::new(
            [((5, 5), 1), ((3, 3), 1), ((2, 2), 1), ((0, 0), 1)],
            vec![f(1, 1, 1), f(4, 0, 1), f(2, 2, 2), f(0, 4, 1), f(1, 3, 1), f(3, 1, 1)],
        )
    }

    /// `1 / ((1−t²)(1−t⁴)²(1−t⁶))`.
    pub fn slocc4() -> Self {
        let f = |z, power| Factor { z, zbar: 0, power };
        Self::new([((0, 0), 1)], vec![f(2, 1), f(4, 2), f(6, 1)])
    }

    /// Power-series coefficients through `z^{n1} z̄^{n2}`.
    pub fn expand(&self, n1: u32, n2: u32) -> Result<Vec<Vec<i128>>> {
        let (r, c) = (n1 as usize + 1, n2 as usize + 1);
        let mut t = vec![vec![0i128; c]; r];
        for (&(a, b), &v) in &self.numerator {
            if (a as usize) < r && (b as usize) < c {
                t[a as usize][b as usize] += v as i128;
            }
        }
        for f in &self.denominator {
            if f.z == 0 && f.zbar == 0 {
                return Err(Error::Specification("denominator factor 1 − 1 vanishes".into()));
            }
            let (dz, db) = (f.z as usize, f.zbar as usize);
            for _ in 0..f.power {
                for a in dz..r {
                    for b in db..c {
                        t[a][b] += t[a - dz][b - db];
                    }
                }
            }
        }
        Ok(t)
    }

    /// One-variable expansion through `z^n`.
    pub fn expand_1d(&self, n: u32) -> Result<Vec<i128>> {
        Ok(self.expand(n, 0)?.into_iter().map(|row| row[0]).collect())
    }

    /// Checks `a_{i,j} = a_{top.0 − i, top.1 − j}` over the numerator.
    pub fn is_palindromic(&self, top: (u32, u32)) -> bool {
        self.numerator
            .iter()
            .all(|(&(a, b), &v)| a <= top.0 && b <= top.1 && self.numerator.get(&(top.0 - a, top.1 - b)) == Some(&v))
    }
}

/// Power-series expansion of `numerator / denominator` through `z^{n1} z̄^{n2}`.
pub fn expand_closed_form(
    numerator: &BTreeMap<(u32, u32), i64>,
    denominator: &[Factor],
    n1: u32,
    n2: u32,
) -> Result<Vec<Vec<i128>>> {
    ClosedForm::new(numerator.iter().map(|(k, v)| (*k, *v)), denominator.to_vec()).expand(n1, n2)
}
