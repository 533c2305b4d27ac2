//! Entanglement measures and the three-qubit SLOCC orbit classifier.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::{b_family, b_multidegrees};
use crate::error::{Error, Result};
use crate::poly::{GaussianRational, Monomial, Polynomial, State, VariableId};
use crate::unitary::{NumericPairing, ThreeQubit};

fn check_three(s: &State) -> Result<()> {
    if s.k() != 3 {
        return Err(Error::Dimension { expected: 3, found: s.k() });
    }
    Ok(())
}

fn amp_product(idx: [u32; 4]) -> Monomial {
    let mut exps = [0u16; 8];
    for b in idx {
        exps[b as usize] += 1;
    }
    Monomial::from_pairs(
        exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(b, &e)| (VariableId::Amp(b as u32).index(3), e)),
    )
}

/// Cayley's hyperdeterminant of a `2×2×2` array:
///
/// ```text
/// Σ a_{ijk}² a_{ī j̄ k̄}² over the four antipodal pairs
/// − 2 Σ over pairs of antipodal pairs a_p a_p̄ a_q a_q̄
/// + 4 (a000 a011 a101 a110 + a001 a010 a100 a111)
/// ```
pub fn cayley_hyperdeterminant() -> Polynomial {
    let pairs = [(0u32, 7u32), (1, 6), (2, 5), (4, 3)];
    let mut terms = Vec::new();
    for &(p, q) in &pairs {
        terms.push((amp_product([p, p, q, q]), 1.into()));
    }
    for (i, &(p, q)) in pairs.iter().enumerate() {
        for &(r, s) in &pairs[i + 1..] {
            terms.push((amp_product([p, q, r, s]), (-2).into()));
        }
    }
    terms.push((amp_product([0, 3, 5, 6]), 4.into()));
    terms.push((amp_product([1, 2, 4, 7]), 4.into()));
    Polynomial::from_terms(3, terms)
}

pub fn hyperdet3(s: &State) -> Result<Complex64> {
    check_three(s)?;
    let a = |b: usize| s.amplitudes()[b];
    let pairs = [(0, 7), (1, 6), (2, 5), (4, 3)];
    let mut total = Complex64::new(0.0, 0.0);
    for &(p, q) in &pairs {
        total += (a(p) * a(q)).powu(2);
    }
    for (i, &(p, q)) in pairs.iter().enumerate() {
        for &(r, t) in &pairs[i + 1..] {
            total -= 2.0 * a(p) * a(q) * a(r) * a(t);
        }
    }
    total += 4.0 * (a(0) * a(3) * a(5) * a(6) + a(1) * a(2) * a(4) * a(7));
    Ok(total)
}

/// `D₁^{(i)}` for the 1-based qubit `i`: four times the sum, over unordered
/// pairs of distinct contexts `c < c'` of the other qubits, of
/// `|a_{c,0} a_{c',1} − a_{c,1} a_{c',0}|²`. This equals `2(1 − Tr ρ_i²)` on
/// normalized states.
pub fn d1(i: usize, s: &State) -> Result<f64> {
    let k = s.k();
    if i == 0 || i > k {
        return Err(Error::Argument(format!("qubit index {i} outside 1..={k}")));
    }
    let shift = k - i;
    let low = (1usize << shift) - 1;
    let index = |c: usize, bit: usize| ((c & !low) << 1) | (bit << shift) | (c & low);
    let a = s.amplitudes();
    let contexts = 1usize << (k - 1);
    let mut total = 0.0;
    for c in 0..contexts {
        for d in c + 1..contexts {
            let det = a[index(c, 0)] * a[index(d, 1)] - a[index(c, 1)] * a[index(d, 0)];
            total += det.norm_sqr();
        }
    }
    Ok(4.0 * total)
}

/// Which formula computes the per-qubit terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureRoute {
    /// The determinant sum of [`d1`].
    Direct,
    /// `D₁^{(i)} = 2^{2−k} Σ_{d : d_i = 0} B_d` with `B_d = ⟨B_d|B_d⟩`.
    Covariant,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureReport {
    #[serde(rename = "Q")]
    pub q: f64,
    pub d1: Vec<f64>,
}

impl MeasureReport {
    fn from_terms(d1: Vec<f64>) -> Self {
        let q = if d1.is_empty() { 0.0 } else { d1.iter().sum::<f64>() / d1.len() as f64 };
        Self { q, d1 }
    }
}

/// Meyer–Wallach `Q = (1/k) Σ_i D₁^{(i)}`.
pub fn meyer_wallach(s: &State, route: MeasureRoute) -> Result<MeasureReport> {
    let k = s.k();
    let terms = match route {
        MeasureRoute::Direct => (1..=k).map(|i| d1(i, s)).collect::<Result<Vec<_>>>()?,
        MeasureRoute::Covariant => {
            let mut per_qubit = vec![0.0; k];
            for d in b_multidegrees(k) {
                if d.iter().all(|&x| x == 2) {
                    continue;
                }
                let b = b_family(k, &d)?;
                let value = NumericPairing::new(&b, &b).evaluate(s)?.re;
                for (j, &dj) in d.iter().enumerate() {
                    if dj == 0 {
                        per_qubit[j] += value;
                    }
                }
            }
            let scale = 2f64.powi(2 - k as i32);
            per_qubit.into_iter().map(|v| v * scale).collect()
        }
    };
    Ok(MeasureReport::from_terms(terms))
}

/// SLOCC orbits of three-qubit states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrbitLabel {
    #[serde(rename = "GHZ")]
    Ghz,
    W,
    B1,
    B2,
    B3,
    #[serde(rename = "SEPARABLE")]
    Separable,
    #[serde(rename = "UNCLASSIFIED")]
    Unclassified,
}

impl OrbitLabel {
    /// Vanishing pattern of `(B_200, B_020, B_002, D_000)`, `true` for nonzero.
    pub fn from_pattern(flags: [bool; 4]) -> Self {
        match flags {
            [true, true, true, true] => OrbitLabel::Ghz,
            [true, true, true, false] => OrbitLabel::W,
            [true, false, false, false] => OrbitLabel::B1,
            [false, true, false, false] => OrbitLabel::B2,
            [false, false, true, false] => OrbitLabel::B3,
            [false, false, false, false] => OrbitLabel::Separable,
            _ => OrbitLabel::Unclassified,
        }
    }

    fn layer(self) -> Option<u8> {
        match self {
            OrbitLabel::Separable => Some(0),
            OrbitLabel::B1 | OrbitLabel::B2 | OrbitLabel::B3 => Some(1),
            OrbitLabel::W => Some(2),
            OrbitLabel::Ghz => Some(3),
            OrbitLabel::Unclassified => None,
        }
    }
}

/// Closure containment of orbits: `SEPARABLE < B_i < W < GHZ`, with the
/// three `B_i` mutually incomparable.
impl PartialOrd for OrbitLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            return Some(Ordering::Equal);
        }
        let (a, b) = (self.layer()?, other.layer()?);
        (a != b).then(|| a.cmp(&b))
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrbitLabel::Ghz => "GHZ",
            OrbitLabel::W => "W",
            OrbitLabel::B1 => "B1",
            OrbitLabel::B2 => "B2",
            OrbitLabel::B3 => "B3",
            OrbitLabel::Separable => "SEPARABLE",
            OrbitLabel::Unclassified => "UNCLASSIFIED",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub label: OrbitLabel,
    /// Nonvanishing of `B_200, B_020, B_002, D_000`.
    pub flags: [bool; 4],
    /// Their values on the normalized state.
    pub values: [f64; 4],
}

pub const CLASSIFY_NAMES: [&str; 4] = ["B_200", "B_020", "B_002", "D_000"];

/// SLOCC orbit of a nonzero three-qubit state. The invariants are
/// evaluated on the normalized state and compared against `tol`.
pub fn classify3(s: &State, tol: f64) -> Result<Classification> {
    check_three(s)?;
    if s.norm() == 0.0 {
        return Err(Error::Argument("cannot classify the zero vector".into()));
    }
    let s = s.normalized();
    let tq = ThreeQubit::shared();
    let mut values = [0.0; 4];
    for (v, inv) in values.iter_mut().zip([&tq.b200, &tq.b020, &tq.b002, &tq.d000]) {
        *v = inv.evaluate(&s)?.re;
    }
    let flags = values.map(|v| v.abs() > tol);
    Ok(Classification { label: OrbitLabel::from_pattern(flags), flags, values })
}

/// Representative states of the six orbits, in table order.
pub fn table_representatives() -> Vec<(OrbitLabel, State)> {
    let sup = |b: &[&str]| State::superposition(3, b, true).expect("valid bitstrings");
    vec![
        (OrbitLabel::Ghz, sup(&["000", "111"])),
        (OrbitLabel::W, sup(&["001", "010", "100"])),
        (OrbitLabel::B1, sup(&["001", "010"])),
        (OrbitLabel::B2, sup(&["001", "100"])),
        (OrbitLabel::B3, sup(&["010", "100"])),
        (OrbitLabel::Separable, sup(&["000"])),
    ]
}

/// `2·Det` expressed through the catalog, for cross-checks.
pub fn delta_over_two() -> Polynomial {
    ThreeQubit::shared().delta.poly().scale(&GaussianRational::from_ratio(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_state, rng};

    #[test]
    fn hyperdeterminant_values() {
        let ghz = State::superposition(3, &["000", "111"], false).unwrap();
        assert!((hyperdet3(&ghz).unwrap() - 1.0).norm() < 1e-15);
        assert!(hyperdet3(&State::w(3)).unwrap().norm() < 1e-15);
        assert!(hyperdet3(&State::w(2)).is_err());
        let s = random_state(&mut rng(4), 3);
        let symbolic = cayley_hyperdeterminant().evaluate(&s, None).unwrap();
        assert!((symbolic - hyperdet3(&s).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn delta_is_twice_the_hyperdeterminant() {
        assert_eq!(delta_over_two(), cayley_hyperdeterminant());
    }

    #[test]
    fn meyer_wallach_routes_agree() {
        let mut r = rng(9);
        for k in 2..=4 {
            for _ in 0..5 {
                let s = random_state(&mut r, k);
                let a = meyer_wallach(&s, MeasureRoute::Direct).unwrap();
                let b = meyer_wallach(&s, MeasureRoute::Covariant).unwrap();
                for (x, y) in a.d1.iter().zip(&b.d1) {
                    assert!((x - y).abs() < 1e-10, "k = {k}: {x} vs {y}");
                }
            }
        }
        let ghz = meyer_wallach(&State::ghz(3), MeasureRoute::Direct).unwrap();
        assert!((ghz.q - 1.0).abs() < 1e-12);
        assert_eq!(meyer_wallach(&State::basis(3, 0), MeasureRoute::Direct).unwrap().q, 0.0);
    }

    #[test]
    fn table_representatives_classify() {
        for (label, s) in table_representatives() {
            assert_eq!(classify3(&s, 1e-9).unwrap().label, label);
        }
    }

    #[test]
    fn onion_order() {
        assert!(OrbitLabel::Separable < OrbitLabel::B2);
        assert!(OrbitLabel::B3 < OrbitLabel::W);
        assert!(OrbitLabel::W < OrbitLabel::Ghz);
        assert_eq!(OrbitLabel::B1.partial_cmp(&OrbitLabel::B2), None);
        assert_eq!(OrbitLabel::Unclassified.partial_cmp(&OrbitLabel::W), None);
        assert_eq!(OrbitLabel::from_pattern([true, true, false, false]), OrbitLabel::Unclassified);
    }
}
