//! Invariants by name, for the command line and the invariance suites.
//!
//! Atoms:
//!
//! - any `k`: `A`, `B_<d>`, `B` (even `k`), `D<i>`, `D<i>_bar`, `Cf<i>`,
//!   `Cf<i>_bar`, and `<X|Y>` for covariants `X`, `Y` known to the catalog;
//! - three qubits: `f1` … `f7`, `B_200`, `B_020`, `B_002`, `C_111`, `D_000`,
//!   `F_222`, `Delta`, `Delta_bar`, `Det`, `Det_bar`, `s2`, `s2_bar`, and
//!   `f7_bracket`.
//!
//! `B_<d>` with `d` all zero is the SLOCC invariant `(f, f)^{1…1}` itself;
//! other `B_<d>` are the pairings `⟨B_d|B_d⟩`, and `B = |B_{0…0}|²`. Atoms
//! combine as `X*Y` and `X^n`.

use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::{b_family, ground_form, lookup};
use crate::error::{Error, Result};
use crate::measures::cayley_hyperdeterminant;
use crate::poly::{Polynomial, State};
use crate::transvection::Epsilon;
use crate::unitary::{
    cubic_pairings, f7_bracket, lsut_degree4_basis, lut_degree4_basis, pairing, slocc_degree4, InvariantExpr,
    NumericPairing, ThreeQubit,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvariantKind {
    /// Invariant under `U(2)^k`.
    #[serde(rename = "LUT")]
    Lut,
    /// Invariant under `SU(2)^k` only.
    #[serde(rename = "LSUT")]
    Lsut,
    /// Invariant under `SL(2,C)^k`.
    #[serde(rename = "SLOCC")]
    Slocc,
    #[serde(rename = "none")]
    NotInvariant,
}

#[derive(Clone, Debug)]
enum Evaluator {
    Poly(Polynomial),
    Pairing(NumericPairing),
    Product(Vec<NamedInvariant>),
    Power(Box<NamedInvariant>, u32),
}

#[derive(Clone, Debug)]
pub struct NamedInvariant {
    name: String,
    k: usize,
    bidegree: (u32, u32),
    kind: InvariantKind,
    eval: Evaluator,
}

impl NamedInvariant {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bidegree(&self) -> (u32, u32) {
        self.bidegree
    }

    pub fn kind(&self) -> InvariantKind {
        self.kind
    }

    pub fn evaluate(&self, state: &State) -> Result<Complex64> {
        if state.k() != self.k {
            return Err(Error::Dimension { expected: self.k, found: state.k() });
        }
        match &self.eval {
            Evaluator::Poly(p) => p.evaluate(state, None),
            Evaluator::Pairing(p) => p.evaluate(state),
            Evaluator::Product(fs) => {
                fs.iter().try_fold(Complex64::new(1.0, 0.0), |acc, f| Ok(acc * f.evaluate(state)?))
            }
            Evaluator::Power(f, n) => Ok(f.evaluate(state)?.powu(*n)),
        }
    }

    fn from_expr(expr: InvariantExpr, name: &str, kind: InvariantKind) -> Self {
        Self {
            name: name.into(),
            k: expr.k(),
            bidegree: expr.bidegree(),
            kind,
            eval: Evaluator::Poly(expr.into_poly()),
        }
    }
}

fn kind_of_bidegree(bidegree: (u32, u32)) -> InvariantKind {
    if bidegree.0 == bidegree.1 {
        InvariantKind::Lut
    } else {
        InvariantKind::Lsut
    }
}

fn combined_kind(parts: &[&NamedInvariant], bidegree: (u32, u32)) -> InvariantKind {
    if parts.iter().any(|p| p.kind == InvariantKind::NotInvariant) {
        InvariantKind::NotInvariant
    } else if parts.iter().all(|p| p.kind == InvariantKind::Slocc) {
        InvariantKind::Slocc
    } else {
        kind_of_bidegree(bidegree)
    }
}

/// Splits on `*` outside angle brackets.
fn split_product(name: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in name.char_indices() {
        match c {
            '<' => depth += 1,
            '>' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&name[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&name[start..]);
    out
}

/// Resolves a name to an evaluable invariant of the `k`-qubit system.
pub fn resolve(k: usize, name: &str) -> Result<NamedInvariant> {
    let name = name.trim();
    let factors = split_product(name);
    if factors.len() > 1 {
        let parts = factors.iter().map(|f| resolve(k, f)).collect::<Result<Vec<_>>>()?;
        let bidegree = parts.iter().fold((0, 0), |acc, p| (acc.0 + p.bidegree.0, acc.1 + p.bidegree.1));
        let kind = combined_kind(&parts.iter().collect::<Vec<_>>(), bidegree);
        return Ok(NamedInvariant { name: name.into(), k, bidegree, kind, eval: Evaluator::Product(parts) });
    }
    if let Some((base, exp)) = name.rsplit_once('^') {
        if let Ok(n) = exp.parse::<u32>() {
            let inner = resolve(k, base)?;
            let bidegree = (inner.bidegree.0 * n, inner.bidegree.1 * n);
            let kind = combined_kind(&[&inner], bidegree);
            return Ok(NamedInvariant {
                name: name.into(),
                k,
                bidegree,
                kind,
                eval: Evaluator::Power(Box::new(inner), n),
            });
        }
    }
    resolve_atom(k, name)
}

fn unknown(k: usize, name: &str) -> Error {
    Error::UnknownName(format!("invariant {name} for k = {k}"))
}

fn resolve_atom(k: usize, name: &str) -> Result<NamedInvariant> {
    if k == 3 {
        if let Some(inv) = resolve_three_qubit(name)? {
            return Ok(inv);
        }
    }
    if let Some(inner) = name.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        let (x, y) = inner.split_once('|').ok_or_else(|| unknown(k, name))?;
        let (x, y) = (lookup(k, x.trim())?, lookup(k, y.trim())?);
        let bidegree = (x.amp_degree(), y.amp_degree());
        return Ok(NamedInvariant {
            name: name.into(),
            k,
            bidegree,
            kind: kind_of_bidegree(bidegree),
            eval: Evaluator::Pairing(NumericPairing::new(&x, &y)),
        });
    }
    match name {
        "A" => {
            let f = ground_form(k)?;
            return Ok(NamedInvariant::from_expr(pairing(&f, &f), name, InvariantKind::Lut));
        }
        "B" => {
            if k % 2 == 1 {
                return Err(unknown(k, name));
            }
            let b = b_family(k, &vec![0; k])?;
            return Ok(NamedInvariant::from_expr(pairing(&b, &b), name, InvariantKind::Lut));
        }
        _ => {}
    }
    if let Some(d) = name.strip_prefix("B_") {
        let d = Epsilon::parse(d)?.0;
        let b = b_family(k, &d)?;
        if d.iter().all(|&x| x == 0) {
            let expr = InvariantExpr::new(b.into_poly(), (2, 0), name)?;
            return Ok(NamedInvariant::from_expr(expr, name, InvariantKind::Slocc));
        }
        return Ok(NamedInvariant {
            name: name.into(),
            k,
            bidegree: (2, 2),
            kind: InvariantKind::Lut,
            eval: Evaluator::Pairing(NumericPairing::new(&b, &b)),
        });
    }
    let (base, conj) = match name.strip_suffix("_bar") {
        Some(b) => (b, true),
        None => (name, false),
    };
    let family = if base.starts_with("Cf") {
        cubic_pairings(k)?
    } else if base.starts_with('D') && base[1..].parse::<usize>().is_ok() {
        slocc_degree4(k)?
    } else {
        return Err(unknown(k, name));
    };
    let expr = family.into_iter().find(|x| x.name() == base).ok_or_else(|| unknown(k, name))?;
    let kind = if base.starts_with('D') && !conj { InvariantKind::Slocc } else { InvariantKind::Lsut };
    let expr = if conj { expr.conjugate() } else { expr };
    Ok(NamedInvariant::from_expr(expr, name, kind))
}

fn resolve_three_qubit(name: &str) -> Result<Option<NamedInvariant>> {
    let tq = ThreeQubit::shared();
    let lut = |x: &InvariantExpr| Some(NamedInvariant::from_expr(x.clone(), name, InvariantKind::Lut));
    let det = || InvariantExpr::new(cayley_hyperdeterminant(), (4, 0), "Det").expect("quartic in a");
    Ok(match name {
        "f1" | "f2" | "f3" | "f4" | "f5" | "f6" | "f7" => {
            let i = name[1..].parse().expect("digit");
            Some(NamedInvariant::from_expr(tq.generator(i)?, name, InvariantKind::Lut))
        }
        "B_200" => lut(&tq.b200),
        "B_020" => lut(&tq.b020),
        "B_002" => lut(&tq.b002),
        "C_111" => lut(&tq.c111),
        "D_000" => lut(&tq.d000),
        "F_222" => lut(&tq.f222),
        "Delta" => Some(NamedInvariant::from_expr(tq.delta_invariant(), name, InvariantKind::Slocc)),
        "Delta_bar" => Some(NamedInvariant::from_expr(tq.delta_invariant().conjugate(), name, InvariantKind::Lsut)),
        "Det" => Some(NamedInvariant::from_expr(det(), name, InvariantKind::Slocc)),
        "Det_bar" => Some(NamedInvariant::from_expr(det().conjugate(), name, InvariantKind::Lsut)),
        "s2" => Some(NamedInvariant::from_expr(tq.s2.clone(), name, InvariantKind::Lsut)),
        "s2_bar" => Some(NamedInvariant::from_expr(tq.s2.conjugate(), name, InvariantKind::Lsut)),
        "f7_bracket" => Some(NamedInvariant::from_expr(f7_bracket()?, name, InvariantKind::NotInvariant)),
        _ => None,
    })
}

/// The four-qubit LUT invariants of degree 6.
pub const FOUR_QUBIT_DEGREE6: [&str; 20] = [
    "A^3",
    "A*B",
    "A*B_2200",
    "A*B_2020",
    "A*B_2002",
    "A*B_0220",
    "A*B_0202",
    "A*B_0022",
    "<C1_1111|C1_1111>",
    "<C1_1111|C2_1111>",
    "<C1_1111|fB_0000>",
    "<C2_1111|C1_1111>",
    "<C2_1111|C2_1111>",
    "<C2_1111|fB_0000>",
    "<fB_0000|C1_1111>",
    "<fB_0000|C2_1111>",
    "<C_3111|C_3111>",
    "<C_1311|C_1311>",
    "<C_1131|C_1131>",
    "<C_1113|C_1113>",
];

/// Registry name of a degree-4 basis member. The pairing `⟨B_{0…0}|B_{0…0}⟩`
/// is registered as `B`, since `B_{0…0}` alone names the SLOCC invariant.
fn basis_name(x: &InvariantExpr) -> String {
    let name = x.name();
    match name.strip_prefix("B_") {
        Some(d) if !d.is_empty() && d.bytes().all(|c| c == b'0') => "B".into(),
        _ => name.to_string(),
    }
}

/// Names of the registered unitary invariants for `k` qubits: the degree-4
/// LSUT basis (which contains the LUT basis), the three-qubit generators
/// and the four-qubit degree-6 list.
pub fn registered_unitary(k: usize) -> Result<Vec<String>> {
    let mut names: Vec<String> =
        if k >= 2 { lsut_degree4_basis(k)?.iter().map(basis_name).collect() } else { vec!["A".into()] };
    if k == 3 {
        names.extend((1..=7).map(|i| format!("f{i}")));
        names.extend(["C_111", "D_000", "F_222", "s2", "s2_bar", "Delta_bar"].map(String::from));
    }
    if k == 4 {
        names.extend(FOUR_QUBIT_DEGREE6.map(String::from));
    }
    Ok(names)
}

/// Names of the registered LUT invariants (balanced bidegree).
pub fn registered_lut(k: usize) -> Result<Vec<String>> {
    let mut names: Vec<String> =
        if k >= 2 { lut_degree4_basis(k)?.iter().map(basis_name).collect() } else { vec!["A".into()] };
    if k == 3 {
        names.extend((1..=7).map(|i| format!("f{i}")));
    }
    if k == 4 {
        names.extend(FOUR_QUBIT_DEGREE6.map(String::from));
    }
    Ok(names)
}

/// Names of the registered SLOCC invariants.
pub fn registered_slocc(k: usize) -> Result<Vec<String>> {
    let mut names = Vec::new();
    if k == 3 {
        names.extend(["Det", "Delta"].map(String::from));
    }
    if k % 2 == 0 {
        names.push(format!("B_{}", "0".repeat(k)));
    }
    if k >= 2 {
        names.extend(slocc_degree4(k)?.iter().map(|x| x.name().to_string()));
    }
    Ok(names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_state, rng};

    #[test]
    fn products_and_powers_evaluate() {
        let s = random_state(&mut rng(2), 3);
        let a = resolve(3, "A").unwrap().evaluate(&s).unwrap();
        assert!((a - 1.0).norm() < 1e-12);
        let b = resolve(3, "B_200").unwrap().evaluate(&s).unwrap();
        let p = resolve(3, "A^2*B_200").unwrap();
        assert_eq!(p.bidegree(), (4, 4));
        assert!((p.evaluate(&s).unwrap() - a * a * b).norm() < 1e-12);
        assert_eq!(resolve(3, "Delta*Delta_bar").unwrap().kind(), InvariantKind::Lut);
        assert_eq!(resolve(3, "Delta^2").unwrap().kind(), InvariantKind::Slocc);
    }

    #[test]
    fn pairings_by_name() {
        let s = random_state(&mut rng(5), 3);
        let v = resolve(3, "<Hx|Hx>").unwrap().evaluate(&s).unwrap();
        let w = resolve(3, "B_200").unwrap().evaluate(&s).unwrap();
        assert!((v - w).norm() < 1e-12);
        assert_eq!(resolve(3, "<T|f>").unwrap().bidegree(), (3, 1));
        assert_eq!(resolve(4, "<C_3111|C_3111>").unwrap().kind(), InvariantKind::Lut);
    }

    #[test]
    fn zero_multidegree_b_is_slocc() {
        let inv = resolve(4, "B_0000").unwrap();
        assert_eq!((inv.kind(), inv.bidegree()), (InvariantKind::Slocc, (2, 0)));
        assert_eq!(resolve(4, "B").unwrap().bidegree(), (2, 2));
    }

    #[test]
    fn unknown_names_are_errors() {
        assert!(matches!(resolve(3, "nope"), Err(Error::UnknownName(_))));
        assert!(resolve(3, "B").is_err());
        assert!(resolve(4, "D9").is_err());
        assert!(resolve(3, "<f|").is_err());
    }

    #[test]
    fn registered_counts() {
        assert_eq!(registered_lut(4).unwrap().len(), 8 + 20);
        assert_eq!(registered_lut(3).unwrap().len(), 4 + 7);
        assert_eq!(registered_slocc(4).unwrap().len(), 1 + 3);
    }
}
