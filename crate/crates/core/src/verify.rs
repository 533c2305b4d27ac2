//! Seeded verification suites behind `qinv verify`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{
    first_mismatch, hilbert_lsut_coeffs_i128, hilbert_lsut_ct, hilbert_lut_coeffs, hilbert_lut_ct, ClosedForm,
};
use crate::measures::{classify3, table_representatives};
use crate::poly::State;
use crate::random::{random_local, random_state, relative_error, rng, LocalGroup, TestRng};
use crate::registry::{registered_slocc, registered_unitary, resolve, InvariantKind, NamedInvariant};
use crate::transvection::sl2_action_state;
use crate::unitary::{f7_check, f_squared_relation_check, grassl_permutation_form, syzygy_checks, ThreeQubit};

/// Relative tolerance for unitary invariance.
pub const UNITARY_TOL: f64 = 1e-9;
/// Relative tolerance for SLOCC invariance.
pub const SLOCC_TOL: f64 = 1e-8;
pub const DEFAULT_SEED: u64 = 20090801;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Invariance,
    Hilbert,
    Classification,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Suite::Identities),
            "invariance" => Ok(Suite::Invariance),
            "hilbert" => Ok(Suite::Hilbert),
            "classification" => Ok(Suite::Classification),
            other => Err(Error::UnknownName(format!("suite {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub k: usize,
    pub seed: u64,
    pub passed: bool,
    pub items: Vec<VerifyItem>,
}

fn item(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> VerifyItem {
    VerifyItem { name: name.into(), passed, detail: detail.into() }
}

pub fn run_suite(suite: Suite, k: usize, trials: usize, seed: u64) -> Result<VerifyReport> {
    let mut items = match suite {
        Suite::Identities => identities(k)?,
        Suite::Invariance => invariance(k, trials, seed)?,
        Suite::Hilbert => hilbert(k)?,
        Suite::Classification => classification(trials, seed)?,
    };
    items.sort_by(|a, b| a.name.cmp(&b.name));
    let name = match suite {
        Suite::Identities => "identities",
        Suite::Invariance => "invariance",
        Suite::Hilbert => "hilbert",
        Suite::Classification => "classification",
    };
    Ok(VerifyReport { suite: name.into(), k, seed, passed: items.iter().all(|i| i.passed), items })
}

fn identities(k: usize) -> Result<Vec<VerifyItem>> {
    let mut items = Vec::new();
    if k >= 2 {
        let r = f_squared_relation_check(k)?;
        items.push(item("f_squared_relation", r.holds, format!("residual terms: {}", r.residual.num_terms())));
    }
    if k == 3 {
        let tq = ThreeQubit::shared();
        for i in 2..=5 {
            let perm = grassl_permutation_form(i)?;
            let ok = perm.poly() == tq.generator(i)?.poly();
            items.push(item(format!("grassl_f{i}"), ok, "permutation sum vs pairing expression"));
        }
        let f7 = f7_check()?;
        let detail = match (&f7.ratio, &f7.f222_scalar) {
            (Some(r), _) => format!("proportional with ratio {r}"),
            (None, Some(c)) => format!("equal with F_222 coefficient {c}"),
            (None, None) => format!("not proportional; discrepancy has {} terms", f7.discrepancy.num_terms()),
        };
        items.push(item("grassl_f7", f7.equal || f7.ratio.is_some() || f7.f222_scalar.is_some(), detail));
        for s in syzygy_checks()? {
            if s.name == "syzygy_66_delta_tf" {
                continue;
            }
            let detail = format!("residual terms: {}, numeric: {:.2e}", s.residual_terms, s.numeric_residual);
            items.push(item(s.name, s.holds, detail));
        }
    }
    if items.is_empty() {
        return Err(Error::Argument(format!("no identities registered for k = {k}")));
    }
    Ok(items)
}

/// Largest relative change of `inv` under `trials` random local transformations.
pub fn invariance_error(inv: &NamedInvariant, group: LocalGroup, trials: usize, r: &mut TestRng) -> Result<f64> {
    let k = inv.k();
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let s = random_state(r, k);
        let g = random_local(r, k, group);
        let before = inv.evaluate(&s)?;
        let after = inv.evaluate(&sl2_action_state(&g, &s)?)?;
        worst = worst.max(relative_error(before, after, 1e-12));
    }
    Ok(worst)
}

fn invariance(k: usize, trials: usize, seed: u64) -> Result<Vec<VerifyItem>> {
    let mut r = rng(seed);
    let mut items = Vec::new();
    for name in registered_unitary(k)? {
        let inv = resolve(k, &name)?;
        let group = match inv.kind() {
            InvariantKind::Lut => LocalGroup::Unitary,
            _ => LocalGroup::SpecialUnitary,
        };
        let err = invariance_error(&inv, group, trials, &mut r)?;
        items.push(item(format!("{group:?}:{name}"), err <= UNITARY_TOL, format!("max relative error {err:.2e}")));
    }
    for name in registered_slocc(k)? {
        let inv = resolve(k, &name)?;
        let err = invariance_error(&inv, LocalGroup::Slocc, trials, &mut r)?;
        items.push(item(format!("Slocc:{name}"), err <= SLOCC_TOL, format!("max relative error {err:.2e}")));
    }
    Ok(items)
}

fn mismatch_detail(m: Option<(usize, usize, i128, i128)>) -> String {
    match m {
        None => "all coefficients agree".into(),
        Some((i, j, a, b)) => format!("first mismatch at ({i}, {j}): {a} vs {b}"),
    }
}

fn hilbert(k: usize) -> Result<Vec<VerifyItem>> {
    let mut items = Vec::new();
    let lut_order = if k <= 3 { 10 } else { 6 };
    let ch: Vec<i128> = hilbert_lut_coeffs(k, lut_order).into_iter().map(i128::from).collect();
    let ct = hilbert_lut_ct(k, lut_order)?;
    items.push(item(
        "lut_character_vs_ct",
        ch == ct,
        mismatch_detail(first_mismatch(std::slice::from_ref(&ch), &[ct])),
    ));
    let closed = match k {
        3 => Some((ClosedForm::lut3(), ClosedForm::lsut3())),
        4 => Some((ClosedForm::lut4(), ClosedForm::lsut4())),
        _ => None,
    };
    if let Some((lut, lsut)) = closed {
        let cf = lut.expand_1d(lut_order)?;
        items.push(item("lut_character_vs_closed_form", cf == ch, mismatch_detail(first_mismatch(&[ch], &[cf]))));
        let chl = hilbert_lsut_coeffs_i128(k, 6, 6);
        let cfl = lsut.expand(6, 6)?;
        items.push(item("lsut_character_vs_closed_form", chl == cfl, mismatch_detail(first_mismatch(&chl, &cfl))));
    }
    if k <= 3 {
        let chl = hilbert_lsut_coeffs_i128(k, 6, 6);
        let ctl = hilbert_lsut_ct(k, 6, 6)?;
        items.push(item("lsut_character_vs_ct", chl == ctl, mismatch_detail(first_mismatch(&chl, &ctl))));
    }
    if k == 4 {
        let cf = ClosedForm::slocc4().expand_1d(8)?;
        let ok = (0..=8).all(|d| cf[d as usize] == crate::hilbert::dim_inv_slocc(d, 4) as i128);
        items.push(item("slocc_closed_form", ok, "degrees 0..=8"));
    }
    Ok(items)
}

fn classification(trials: usize, seed: u64) -> Result<Vec<VerifyItem>> {
    let mut r = rng(seed);
    let mut items = Vec::new();
    for (label, s) in table_representatives() {
        let got = classify3(&s, 1e-9)?.label;
        items.push(item(format!("representative:{label}"), got == label, format!("classified as {got}")));
        let mut stable = 0;
        for _ in 0..trials {
            let g = random_local(&mut r, 3, LocalGroup::Slocc);
            let moved: State = sl2_action_state(&g, &s)?;
            if classify3(&moved, 1e-9)?.label == label {
                stable += 1;
            }
        }
        items.push(item(format!("stability:{label}"), stable == trials, format!("{stable}/{trials} unchanged")));
    }
    Ok(items)
}
