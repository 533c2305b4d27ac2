//! The hermitian pairing of covariants and the local unitary invariants built
//! from it: degree-4 bases for any `k`, the three-qubit generators, their
//! syzygies and the independence check of the LSUT primaries.

use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::catalog::{b_family, b_multidegrees, catalog_3, degree3_multilinear_basis, digits, ground_form};
use crate::error::{Error, Result};
use crate::poly::linalg::{determinant, proportionality, EchelonBasis};
use crate::poly::packed::PackedPoly;
use crate::poly::{sum, GaussianRational, Monomial, Polynomial, State, VariableId};
use crate::random::{random_state, rng};
use crate::transvection::{transvect, Covariant, Epsilon};

/// A polynomial in amplitudes and their conjugates, homogeneous of degree
/// `bidegree.0` in `a` and `bidegree.1` in `ā`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantExpr {
    poly: Polynomial,
    bidegree: (u32, u32),
    name: String,
}

impl InvariantExpr {
    pub fn new(poly: Polynomial, bidegree: (u32, u32), name: impl Into<String>) -> Result<Self> {
        if let Some(v) = poly.variables().into_iter().find(|v| v.is_aux()) {
            return Err(Error::Degree(format!("invariants may not contain {v}")));
        }
        for (m, _) in poly.terms() {
            let (n1, n2, _) = poly.monomial_degrees(m);
            if (n1, n2) != bidegree {
                return Err(Error::Degree(format!(
                    "monomial {} has bidegree ({n1}, {n2}), expected {bidegree:?}",
                    m.render(poly.k())
                )));
            }
        }
        Ok(Self { poly, bidegree, name: name.into() })
    }

    /// Infers the bidegree from the first term.
    pub fn from_poly(poly: Polynomial, name: impl Into<String>) -> Result<Self> {
        let (n1, n2, _) = poly
            .terms()
            .first()
            .map(|(m, _)| poly.monomial_degrees(m))
            .ok_or_else(|| Error::Degree("cannot infer the bidegree of the zero polynomial".into()))?;
        Self::new(poly, (n1, n2), name)
    }

    pub fn zero(k: usize, bidegree: (u32, u32), name: impl Into<String>) -> Self {
        Self { poly: Polynomial::zero(k), bidegree, name: name.into() }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn bidegree(&self) -> (u32, u32) {
        self.bidegree
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn k(&self) -> usize {
        self.poly.k()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn evaluate(&self, state: &State) -> Result<Complex64> {
        self.poly.evaluate(state, None)
    }

    /// Complex conjugate: swaps `a` with `ā` and the two degrees.
    pub fn conjugate(&self) -> InvariantExpr {
        let name = match self.name.strip_suffix("_bar") {
            Some(base) => base.to_string(),
            None => format!("{}_bar", self.name),
        };
        let poly = self.poly.conjugate().expect("invariants carry no auxiliary variables");
        InvariantExpr { poly, bidegree: (self.bidegree.1, self.bidegree.0), name }
    }

    pub fn mul(&self, other: &InvariantExpr) -> Result<InvariantExpr> {
        Ok(InvariantExpr {
            poly: self.poly.try_mul(&other.poly)?,
            bidegree: (self.bidegree.0 + other.bidegree.0, self.bidegree.1 + other.bidegree.1),
            name: format!("{}*{}", self.name, other.name),
        })
    }

    pub fn pow(&self, n: u32) -> InvariantExpr {
        InvariantExpr {
            poly: self.poly.pow(n),
            bidegree: (self.bidegree.0 * n, self.bidegree.1 * n),
            name: format!("{}^{n}", self.name),
        }
    }

    pub fn add(&self, other: &InvariantExpr) -> Result<InvariantExpr> {
        self.check_bidegree(other)?;
        Ok(InvariantExpr {
            poly: self.poly.try_add(&other.poly)?,
            bidegree: self.bidegree,
            name: format!("{}+{}", self.name, other.name),
        })
    }

    pub fn sub(&self, other: &InvariantExpr) -> Result<InvariantExpr> {
        self.check_bidegree(other)?;
        Ok(InvariantExpr {
            poly: self.poly.try_sub(&other.poly)?,
            bidegree: self.bidegree,
            name: format!("{}-{}", self.name, other.name),
        })
    }

    pub fn scale(&self, c: &GaussianRational) -> InvariantExpr {
        InvariantExpr { poly: self.poly.scale(c), bidegree: self.bidegree, name: format!("{c}*{}", self.name) }
    }

    fn check_bidegree(&self, other: &InvariantExpr) -> Result<()> {
        if self.bidegree != other.bidegree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Degree(format!("cannot add bidegrees {:?} and {:?}", self.bidegree, other.bidegree)));
        }
        Ok(())
    }
}

/// `Σ c_i · X_i` over invariants of one bidegree.
pub fn linear_combination(
    k: usize,
    bidegree: (u32, u32),
    name: &str,
    parts: &[(GaussianRational, &InvariantExpr)],
) -> Result<InvariantExpr> {
    for (_, x) in parts {
        if x.k() != k {
            return Err(Error::Dimension { expected: k, found: x.k() });
        }
    }
    InvariantExpr::new(sum(k, parts.iter().map(|(c, x)| x.poly.scale(c))), bidegree, name)
}

fn permanent_weight(m: &Monomial) -> i64 {
    m.pairs().iter().map(|&(_, e)| (1..=e as i64).product::<i64>()).product()
}

fn pairing_name(phi: &Covariant, psi: &Covariant) -> String {
    format!("<{}|{}>", phi.name().unwrap_or("?"), psi.name().unwrap_or("?"))
}

/// `⟨φ|ψ⟩ = Σ_m w(m) · coef_φ(m) · conj(coef_ψ(m))` over auxiliary monomials,
/// with `w(m) = Π p! q!` the permanent of the monomial's Gram matrix. The
/// first argument stays holomorphic. Different multidegrees pair to zero.
pub fn pairing(phi: &Covariant, psi: &Covariant) -> InvariantExpr {
    let k = phi.k();
    let bidegree = (phi.amp_degree(), psi.amp_degree());
    let name = pairing_name(phi, psi);
    if psi.k() != k || phi.multidegree() != psi.multidegree() {
        return InvariantExpr::zero(k, bidegree, name);
    }
    let right = psi.poly().split_aux();
    let parts = phi.poly().split_aux().into_iter().filter_map(|(m, c)| {
        let d = right.get(&m)?.conjugate().expect("coefficients are amplitude polynomials");
        Some((&c * &d).scale_int(permanent_weight(&m)))
    });
    InvariantExpr { poly: sum(k, parts), bidegree, name }
}

/// Numeric evaluation of a pairing without expanding it: each auxiliary
/// coefficient is evaluated at the state and the weighted products summed.
#[derive(Clone, Debug)]
pub struct NumericPairing {
    k: usize,
    parts: Vec<(f64, Polynomial, Polynomial)>,
}

impl NumericPairing {
    pub fn new(phi: &Covariant, psi: &Covariant) -> Self {
        let k = phi.k();
        if psi.k() != k || phi.multidegree() != psi.multidegree() {
            return Self { k, parts: Vec::new() };
        }
        let right = psi.poly().split_aux();
        let parts = phi
            .poly()
            .split_aux()
            .into_iter()
            .filter_map(|(m, c)| Some((permanent_weight(&m) as f64, c, right.get(&m)?.clone())))
            .collect();
        Self { k, parts }
    }

    pub fn evaluate(&self, state: &State) -> Result<Complex64> {
        if state.k() != self.k {
            return Err(Error::Dimension { expected: self.k, found: state.k() });
        }
        let mut total = Complex64::zero();
        for (w, c, d) in &self.parts {
            total += *w * c.evaluate(state, None)? * d.evaluate(state, None)?.conj();
        }
        Ok(total)
    }
}

fn check_basis_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Argument("degree-4 bases need k >= 2".into()));
    }
    Ok(())
}

/// `A² = ⟨f|f⟩²` followed by `B_d = ⟨B_d|B_d⟩` for every admissible
/// `d ≠ (2,…,2)`: `2^{k−1}` invariants of bidegree (2,2).
pub fn lut_degree4_basis(k: usize) -> Result<Vec<InvariantExpr>> {
    check_basis_k(k)?;
    let f = ground_form(k)?;
    let mut out = vec![pairing(&f, &f).pow(2).with_name("A^2")];
    for d in b_multidegrees(k) {
        if d.iter().all(|&x| x == 2) {
            continue;
        }
        let b = b_family(k, &d)?;
        out.push(pairing(&b, &b).with_name(format!("B_{}", digits(&d))));
    }
    Ok(out)
}

/// SLOCC invariants `(f, C_i)^{1…1}` of degree 4 from the multilinear cubic
/// covariants, keeping an independent subfamily.
pub fn slocc_degree4(k: usize) -> Result<Vec<InvariantExpr>> {
    check_basis_k(k)?;
    let f = ground_form(k)?;
    let mut basis = EchelonBasis::new();
    let mut out = Vec::new();
    for (i, c) in degree3_multilinear_basis(k)?.iter().enumerate() {
        let d = transvect(&f, c, &Epsilon::ones(k))?;
        if basis.insert(d.poly()) {
            out.push(InvariantExpr::new(d.into_poly(), (4, 0), format!("D{}", i + 1))?);
        }
    }
    Ok(out)
}

/// `⟨C_i|f⟩` for the multilinear cubic covariants, bidegree (3,1).
pub fn cubic_pairings(k: usize) -> Result<Vec<InvariantExpr>> {
    check_basis_k(k)?;
    let f = ground_form(k)?;
    Ok(degree3_multilinear_basis(k)?
        .iter()
        .enumerate()
        .map(|(i, c)| pairing(c, &f).with_name(format!("Cf{}", i + 1)))
        .collect())
}

/// Degree-4 LSUT invariants ordered by bidegree (4,0), (3,1), (2,2),
/// (1,3), (0,4).
pub fn lsut_degree4_basis(k: usize) -> Result<Vec<InvariantExpr>> {
    let ds = slocc_degree4(k)?;
    let cf = cubic_pairings(k)?;
    let mut out = ds.clone();
    out.extend(cf.iter().cloned());
    out.extend(lut_degree4_basis(k)?);
    out.extend(cf.iter().map(InvariantExpr::conjugate));
    out.extend(ds.iter().map(InvariantExpr::conjugate));
    Ok(out)
}

/// Outcome of an exact identity check.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub holds: bool,
    pub residual: Polynomial,
}

impl RelationCheck {
    fn from_residual(residual: Polynomial) -> Self {
        Self { holds: residual.is_zero(), residual }
    }
}

/// `⟨f²|f²⟩ = 2^k ⟨f|f⟩² − Σ_{d ≠ (2,…,2)} B_d`.
pub fn f_squared_relation_check(k: usize) -> Result<RelationCheck> {
    check_basis_k(k)?;
    let f = ground_form(k)?;
    let f2 = f.mul(&f)?;
    let lhs = pairing(&f2, &f2);
    let lut = lut_degree4_basis(k)?;
    let mut rhs = lut[0].poly().scale_int(1 << k);
    for b in &lut[1..] {
        rhs = &rhs - b.poly();
    }
    Ok(RelationCheck::from_residual(lhs.poly().try_sub(&rhs)?))
}

/// The three-qubit covariants and the pairings used by the generators.
/// Here `B_200 = ⟨Hx|Hx⟩` with the Hessian determinant, which is a quarter of
/// the pairing of the transvectant `(f, f)^{011} = 2·Hx`.
#[derive(Clone, Debug)]
pub struct ThreeQubit {
    pub f: Covariant,
    pub t: Covariant,
    pub delta: Covariant,
    pub a: InvariantExpr,
    pub b200: InvariantExpr,
    pub b020: InvariantExpr,
    pub b002: InvariantExpr,
    pub c111: InvariantExpr,
    pub d000: InvariantExpr,
    pub s2: InvariantExpr,
    pub f222: InvariantExpr,
}

impl ThreeQubit {
    pub fn new() -> Result<Self> {
        let f = catalog_3("f")?;
        let t = catalog_3("T")?;
        let delta = catalog_3("Delta")?;
        let b = |hessian: &str, name: &str| -> Result<InvariantExpr> {
            let h = catalog_3(hessian)?;
            Ok(pairing(&h, &h).with_name(name))
        };
        let f_sq = f.mul(&f)?;
        let f222 = pairing(&delta.mul(&f_sq)?, &t.mul(&t)?).with_name("F_222");
        Ok(Self {
            a: pairing(&f, &f).with_name("A"),
            b200: b("Hx", "B_200")?,
            b020: b("Hy", "B_020")?,
            b002: b("Hz", "B_002")?,
            c111: pairing(&t, &t).with_name("C_111"),
            d000: pairing(&delta, &delta).with_name("D_000"),
            s2: pairing(&t, &f).with_name("s2"),
            f222,
            f,
            t,
            delta,
        })
    }

    /// A process-wide instance, built on first use.
    pub fn shared() -> &'static ThreeQubit {
        static CELL: OnceLock<ThreeQubit> = OnceLock::new();
        CELL.get_or_init(|| ThreeQubit::new().expect("the three-qubit catalog is well formed"))
    }

    /// `Δ` as a polynomial in the amplitudes, bidegree (4,0).
    pub fn delta_invariant(&self) -> InvariantExpr {
        InvariantExpr::new(self.delta.poly().clone(), (4, 0), "Delta").expect("Delta has degree 4")
    }

    fn b_sum(&self) -> Polynomial {
        sum(3, [self.b200.poly().clone(), self.b020.poly().clone(), self.b002.poly().clone()])
    }

    /// The covariant-side expressions of the generators `f_1 … f_7`.
    pub fn generator(&self, i: usize) -> Result<InvariantExpr> {
        let a = self.a.poly();
        let a2 = a.pow(2);
        let q = |n: i64, d: i64| GaussianRational::from_ratio(n, d);
        let poly = match i {
            1 => a.clone(),
            2 => &(&a2 - self.b200.poly()) - self.b020.poly(),
            3 => &(&a2 - self.b200.poly()) - self.b002.poly(),
            4 => &(&a2 - self.b020.poly()) - self.b002.poly(),
            5 => sum(3, [a.pow(3), self.c111.poly().scale(&q(3, 2)), (a * &self.b_sum()).scale(&q(-3, 2))]),
            6 => self.d000.poly().clone(),
            7 => self.f7_without_f222()? + self.f222.poly().scale(&q(1, 8)),
            _ => return Err(Error::Argument(format!("generator index {i} outside 1..=7"))),
        };
        let bidegree = match i {
            1 => (1, 1),
            2..=4 => (2, 2),
            5 => (3, 3),
            6 => (4, 4),
            _ => (6, 6),
        };
        InvariantExpr::new(poly, bidegree, format!("f{i}"))
    }

    /// `½D(3/2·ΣB − A²) + 2C² − 4·B₂₀₀B₀₂₀B₀₀₂`.
    fn f7_without_f222(&self) -> Result<Polynomial> {
        let q = |n: i64, d: i64| GaussianRational::from_ratio(n, d);
        let inner = &self.b_sum().scale(&q(3, 2)) - &self.a.poly().pow(2);
        let bbb = &(self.b200.poly() * self.b020.poly()) * self.b002.poly();
        Ok(sum(
            3,
            [(self.d000.poly() * &inner).scale(&q(1, 2)), self.c111.poly().pow(2).scale_int(2), bbb.scale_int(-4)],
        ))
    }
}

/// The covariant-side generator `f_i` of the three-qubit LUT algebra.
pub fn grassl_f(i: usize) -> Result<InvariantExpr> {
    ThreeQubit::shared().generator(i)
}

/// Permutation of `{0,…,n−1}` from cycle notation over `1…n`, such as
/// `"(12)"`, `"(13)(2)"` or `"Id"`. Entry `m` of the result is the image of `m`.
pub fn permutation_from_cycles(cycles: &str, n: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let text = cycles.trim();
    if text.is_empty() || text.eq_ignore_ascii_case("id") {
        return Ok(perm);
    }
    let bad = || Error::Parse(format!("malformed cycle notation {cycles:?} for n = {n}"));
    for cycle in text.split(')') {
        let body = cycle.trim();
        if body.is_empty() {
            continue;
        }
        let body = body.strip_prefix('(').ok_or_else(bad)?;
        let points = body
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| c.to_digit(10).map(|d| d as usize).filter(|&d| (1..=n).contains(&d)).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        for (j, &p) in points.iter().enumerate() {
            perm[p - 1] = points[(j + 1) % points.len()] - 1;
        }
    }
    let mut seen = vec![false; n];
    for &p in &perm {
        if std::mem::replace(&mut seen[p], true) {
            return Err(bad());
        }
    }
    Ok(perm)
}

fn check_permutation(p: &[usize]) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || std::mem::replace(&mut seen[x], true) {
            return Err(Error::Argument(format!("{p:?} is not a permutation")));
        }
    }
    Ok(())
}

/// `Σ a_{ijk} ā_{i^σ j^τ k^ρ}` over index tuples of length `n`, where
/// `a_{ijk} = Π_m a_{i_m j_m k_m}` and `i^σ = (i_{σ(1)}, …, i_{σ(n)})`.
pub fn grassl_sum(sigma: &[usize], tau: &[usize], rho: &[usize]) -> Result<InvariantExpr> {
    let n = sigma.len();
    if tau.len() != n || rho.len() != n || n == 0 {
        return Err(Error::Argument(format!(
            "permutations must have one common positive size, got {}, {}, {}",
            n,
            tau.len(),
            rho.len()
        )));
    }
    for p in [sigma, tau, rho] {
        check_permutation(p)?;
    }
    let k = 3;
    let bit = |word: u32, m: usize| (word >> m) & 1;
    let amp = |i: u32, j: u32, l: u32| (i << 2) | (j << 1) | l;
    let mut terms = Vec::with_capacity(1 << (3 * n));
    for i in 0..1u32 << n {
        for j in 0..1u32 << n {
            for l in 0..1u32 << n {
                let mut pairs = Vec::with_capacity(2 * n);
                for m in 0..n {
                    pairs.push((VariableId::Amp(amp(bit(i, m), bit(j, m), bit(l, m))).index(k), 1));
                    let conj = amp(bit(i, sigma[m]), bit(j, tau[m]), bit(l, rho[m]));
                    pairs.push((VariableId::AmpConj(conj).index(k), 1));
                }
                terms.push((Monomial::from_pairs(pairs), GaussianRational::one()));
            }
        }
    }
    InvariantExpr::new(Polynomial::from_terms(k, terms), (n as u32, n as u32), "f_sigma_tau_rho")
}

/// The permutation sums defining `f_2 … f_5`.
pub fn grassl_permutation_form(i: usize) -> Result<InvariantExpr> {
    let (n, s, t, r) = match i {
        2 => (2, "(12)", "(12)", "Id"),
        3 => (2, "(12)", "Id", "(12)"),
        4 => (2, "Id", "(12)", "(12)"),
        5 => (3, "(12)", "(23)", "(13)"),
        _ => return Err(Error::Argument(format!("no permutation form for generator {i}"))),
    };
    let p = |c| permutation_from_cycles(c, n);
    Ok(grassl_sum(&p(s)?, &p(t)?, &p(r)?)?.with_name(format!("f{i}")))
}

/// Signed bracket/brace terms of the `f_7` display.
const F7_TERMS: [(i64, &str, &str, &str, &str); 12] = [
    (1, "11", "00", "00", "00"),
    (-1, "11", "00", "11", "11"),
    (1, "11", "01", "00", "01"),
    (1, "11", "10", "00", "10"),
    (2, "11", "10", "01", "11"),
    (-2, "01", "00", "10", "00"),
    (-1, "01", "00", "11", "01"),
    (-1, "10", "00", "11", "10"),
    (-1, "10", "01", "00", "00"),
    (-1, "10", "01", "01", "01"),
    (1, "10", "01", "10", "10"),
    (1, "10", "01", "11", "11"),
];

fn pair_index(s: &str) -> u32 {
    u32::from_str_radix(s, 2).expect("two-bit literal")
}

/// `Δ̄ · (Σ c [i₁i₂, j₁j₂]{l₁l₂, m₁m₂})²` with
/// `[p, q] = a_{p0}a_{q1} − a_{p1}a_{q0}` and `{p, q} = a_{p0}ā_{q1} + a_{p1}ā_{q0}`.
pub fn f7_bracket() -> Result<InvariantExpr> {
    let k = 3;
    let a = |p: &str, b: u32| Polynomial::amp(k, (pair_index(p) << 1) | b);
    let ab = |p: &str, b: u32| Polynomial::amp_conj(k, (pair_index(p) << 1) | b);
    let bracket = |p: &str, q: &str| &(&a(p, 0) * &a(q, 1)) - &(&a(p, 1) * &a(q, 0));
    let brace = |p: &str, q: &str| &(&a(p, 0) * &ab(q, 1)) + &(&a(p, 1) * &ab(q, 0));
    let inner = sum(k, F7_TERMS.iter().map(|&(c, p, q, r, s)| (&bracket(p, q) * &brace(r, s)).scale_int(c)));
    let delta_bar = ThreeQubit::shared().delta_invariant().conjugate();
    InvariantExpr::new(delta_bar.poly() * &inner.pow(2), (6, 6), "f7_bracket")
}

/// Comparison of the two `f_7` constructions.
#[derive(Clone, Debug)]
pub struct F7Report {
    pub equal: bool,
    /// `c` with `bracket = c · covariant side`, when the two are proportional.
    pub ratio: Option<GaussianRational>,
    /// `c` with `bracket − (covariant side without F₂₂₂) = c · F₂₂₂`.
    pub f222_scalar: Option<GaussianRational>,
    /// `bracket − covariant side`.
    pub discrepancy: Polynomial,
}

pub fn f7_check() -> Result<F7Report> {
    let tq = ThreeQubit::shared();
    let bracket = f7_bracket()?;
    let covariant = tq.generator(7)?;
    let discrepancy = bracket.poly().try_sub(covariant.poly())?;
    let rest = bracket.poly().try_sub(&tq.f7_without_f222()?)?;
    Ok(F7Report {
        equal: discrepancy.is_zero(),
        ratio: proportionality(bracket.poly(), covariant.poly()),
        f222_scalar: proportionality(&rest, tq.f222.poly()),
        discrepancy,
    })
}

/// One syzygy of the three-qubit LSUT algebra, checked exactly.
#[derive(Clone, Debug)]
pub struct SyzygyReport {
    pub name: String,
    pub holds: bool,
    pub residual_terms: usize,
    /// Largest `|residual| / Σ|terms|` over the numeric prescreen states.
    pub numeric_residual: f64,
}

/// Building blocks of the syzygies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Piece {
    F1,
    F2,
    F3,
    F4,
    F5,
    Delta,
    DeltaBar,
    S2,
    S2Bar,
}

const PIECES: [Piece; 9] =
    [Piece::F1, Piece::F2, Piece::F3, Piece::F4, Piece::F5, Piece::Delta, Piece::DeltaBar, Piece::S2, Piece::S2Bar];

type Relation = Vec<(i64, Vec<Piece>)>;

fn syzygy_44() -> Relation {
    use Piece::*;
    vec![
        (8, vec![F1, F5]),
        (-6, vec![F4, F2]),
        (3, vec![F4, F4]),
        (-3, vec![Delta, DeltaBar]),
        (3, vec![F2, F2]),
        (-6, vec![F4, F3]),
        (1, vec![F1, F1, F1, F1]),
        (3, vec![F3, F3]),
        (-6, vec![F3, F2]),
        (-12, vec![S2, S2Bar]),
    ]
}

fn syzygy_66() -> Relation {
    use Piece::*;
    vec![
        (-18, vec![F1, F1, F1, F1, F4]),
        (-18, vec![F1, F1, F1, F1, F3]),
        (-18, vec![F1, F1, F1, F1, F2]),
        (11, vec![F1, F1, F1, F1, F1, F1]),
        (18, vec![DeltaBar, S2, S2]),
        (-36, vec![S2, S2Bar, F3]),
        (18, vec![Delta, S2Bar, S2Bar]),
        (-72, vec![F4, F3, F2]),
        (30, vec![F1, F1, F4, F2]),
        (30, vec![F1, F1, F4, F3]),
        (-36, vec![S2, S2Bar, F2]),
        (60, vec![F1, F1, S2, S2Bar]),
        (3, vec![F1, F1, F4, F4]),
        (3, vec![F1, F1, F3, F3]),
        (30, vec![F1, F1, F3, F2]),
        (-36, vec![S2, S2Bar, F4]),
        (3, vec![F1, F1, F2, F2]),
        (-3, vec![F1, F1, Delta, DeltaBar]),
        (16, vec![F5, F5]),
    ]
}

/// Syzygy pieces as polynomials. `delta_sign = −1` uses `(f, T)^{111}`
/// in place of `(T, f)^{111}`.
fn syzygy_pieces(delta_sign: i64) -> Result<Vec<Polynomial>> {
    let tq = ThreeQubit::shared();
    let delta = tq.delta.poly().scale_int(delta_sign);
    let delta_bar = delta.conjugate()?;
    let s2 = tq.s2.poly().clone();
    let s2_bar = s2.conjugate()?;
    let perm = |i| grassl_permutation_form(i).map(InvariantExpr::into_poly);
    Ok(vec![tq.a.poly().clone(), perm(2)?, perm(3)?, perm(4)?, perm(5)?, delta, delta_bar, s2, s2_bar])
}

fn piece_index(p: Piece) -> usize {
    PIECES.iter().position(|&q| q == p).expect("listed piece")
}

fn numeric_residual(relation: &Relation, pieces: &[Polynomial]) -> Result<f64> {
    let mut r = rng(0x5eed);
    let mut worst = 0.0f64;
    for _ in 0..8 {
        let s = random_state(&mut r, 3);
        let values = pieces.iter().map(|p| p.evaluate(&s, None)).collect::<Result<Vec<_>>>()?;
        let (mut total, mut scale) = (Complex64::zero(), 0.0);
        for (c, factors) in relation {
            let t = factors.iter().fold(Complex64::new(*c as f64, 0.0), |acc, &p| acc * values[piece_index(p)]);
            total += t;
            scale += t.norm();
        }
        worst = worst.max(total.norm() / scale.max(f64::MIN_POSITIVE));
    }
    Ok(worst)
}

fn packed(p: &Polynomial) -> Result<PackedPoly> {
    PackedPoly::from_polynomial(p)
        .ok_or_else(|| Error::InternalState("polynomial does not fit the packed kernel".into()))
}

fn overflow() -> Error {
    Error::InternalState("packed arithmetic overflow".into())
}

/// Expands `Σ c · Π pieces` exactly in the packed kernel.
fn exact_residual(relation: &Relation, pieces: &[Polynomial]) -> Result<PackedPoly> {
    let packed_pieces = pieces.iter().map(packed).collect::<Result<Vec<_>>>()?;
    let mut total = PackedPoly::zero(3);
    for (c, factors) in relation {
        let mut sorted = factors.clone();
        sorted.sort_by_key(|&p| packed_pieces[piece_index(p)].num_terms());
        let mut prod = packed_pieces[piece_index(sorted[0])].checked_scale(*c as i128, 1).ok_or_else(overflow)?;
        for &p in &sorted[1..] {
            prod = prod.checked_mul(&packed_pieces[piece_index(p)]).ok_or_else(overflow)?;
        }
        total = total.checked_add(&prod).ok_or_else(overflow)?;
    }
    Ok(total)
}

fn check_relation(name: &str, relation: &Relation, pieces: &[Polynomial]) -> Result<SyzygyReport> {
    let numeric = numeric_residual(relation, pieces)?;
    let residual = exact_residual(relation, pieces)?;
    Ok(SyzygyReport {
        name: name.to_string(),
        holds: residual.is_zero(),
        residual_terms: residual.num_terms(),
        numeric_residual: numeric,
    })
}

/// The two LSUT syzygies in degrees (4,4) and (6,6). The (6,6) relation is
/// checked with `Δ = (f, T)^{111}`; its variant with `Δ = (T, f)^{111}` is
/// reported as well. The (4,4) relation only involves `|Δ|²`.
pub fn syzygy_checks() -> Result<Vec<SyzygyReport>> {
    let pieces = syzygy_pieces(-1)?;
    let swapped = syzygy_pieces(1)?;
    Ok(vec![
        check_relation("syzygy_44", &syzygy_44(), &pieces)?,
        check_relation("syzygy_66", &syzygy_66(), &pieces)?,
        check_relation("syzygy_66_delta_tf", &syzygy_66(), &swapped)?,
    ])
}

/// Amplitudes `a_000 … a_111` of the tabulated evaluation point.
pub fn table_point() -> [GaussianRational; 8] {
    [(3, 3), (3, 3), (3, 3), (2, 1), (3, 2), (1, 2), (2, 3), (3, 1)].map(|(re, im)| GaussianRational::from_ints(re, im))
}

/// The determinant value printed for the tabulated point.
pub fn printed_jacobian_value() -> GaussianRational {
    GaussianRational::from_ints(-53279560564736, -243669580382208)
}

/// `A, f_2, f_3, Δ, Δ̄, s_2, s̄_2, a_000, …, a_111, ā_000`.
pub fn primary_function_list() -> Result<Vec<Polynomial>> {
    let tq = ThreeQubit::shared();
    let delta = tq.delta.poly().clone();
    let mut out = vec![
        tq.a.poly().clone(),
        tq.generator(2)?.into_poly(),
        tq.generator(3)?.into_poly(),
        delta.clone(),
        delta.conjugate()?,
        tq.s2.poly().clone(),
        tq.s2.poly().conjugate()?,
    ];
    out.extend((0..8).map(|b| Polynomial::amp(3, b)));
    out.push(Polynomial::amp_conj(3, 0));
    Ok(out)
}

/// Gradient rows `∂F/∂(a_000 … a_111, ā_000 … ā_111)` at the tabulated point.
pub fn jacobian_rows(functions: &[Polynomial]) -> Result<Vec<Vec<GaussianRational>>> {
    let point = table_point();
    let value = |v: VariableId| match v {
        VariableId::Amp(b) => point.get(b as usize).cloned(),
        VariableId::AmpConj(b) => point.get(b as usize).map(GaussianRational::conj),
        VariableId::Aux { .. } => None,
    };
    let vars: Vec<VariableId> = (0..8).map(VariableId::Amp).chain((0..8).map(VariableId::AmpConj)).collect();
    functions
        .iter()
        .map(|f| {
            if f.k() != 3 {
                return Err(Error::Dimension { expected: 3, found: f.k() });
            }
            vars.iter().map(|&v| f.partial(v).evaluate_exact(value)).collect()
        })
        .collect()
}

/// Exact determinant of the 16×16 Jacobian at the tabulated point.
pub fn jacobian_at_table_point(functions: &[Polynomial]) -> Result<GaussianRational> {
    if functions.len() != 16 {
        return Err(Error::Argument(format!("the Jacobian needs 16 functions, got {}", functions.len())));
    }
    Ok(determinant(jacobian_rows(functions)?))
}

#[derive(Clone, Debug)]
pub struct JacobianReport {
    /// Determinant of the listed 16 functions.
    pub determinant: GaussianRational,
    pub printed_value: GaussianRational,
    /// Columns (0..8 for `a`, 8..16 for `ā`) of the first nonzero 7×7 minor
    /// of the seven invariant rows, if any.
    pub certificate_columns: Option<Vec<usize>>,
    pub certificate_minor: GaussianRational,
    /// Whether `printed_value / determinant` is a nonzero real rational.
    pub matches_printed: bool,
}

fn combinations(n: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (r <= n).then(|| (0..r).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = r;
        current = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if next[i] < n - r + i {
                next[i] += 1;
                for j in i + 1..r {
                    next[j] = next[j - 1] + 1;
                }
                break Some(next);
            }
        };
        Some(out)
    })
}

/// Evaluates the Jacobian of the LSUT primaries together with nine
/// coordinate functions, and searches the invariant rows for a nonzero
/// maximal minor certifying algebraic independence.
pub fn jacobian_independence() -> Result<JacobianReport> {
    let functions = primary_function_list()?;
    let rows = jacobian_rows(&functions)?;
    let det = determinant(rows.clone());
    let printed = printed_jacobian_value();
    let matches_printed = !det.is_zero() && {
        let r = printed.clone() / det.clone();
        r.is_real()
    };
    let mut certificate_columns = None;
    let mut certificate_minor = GaussianRational::zero();
    for cols in combinations(16, 7) {
        let m = rows[..7].iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        let d = determinant(m);
        if !d.is_zero() {
            certificate_columns = Some(cols);
            certificate_minor = d;
            break;
        }
    }
    Ok(JacobianReport {
        determinant: det,
        printed_value: printed,
        certificate_columns,
        certificate_minor,
        matches_printed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::linalg::rank;

    #[test]
    fn norm_pairing_and_weights() {
        let f = ground_form(2).unwrap();
        let a = pairing(&f, &f);
        let expected = sum(2, (0..4).map(|b| &Polynomial::amp(2, b) * &Polynomial::amp_conj(2, b)));
        assert_eq!(a.poly(), &expected);
        let x = Covariant::from_poly(Polynomial::aux(1, 0, 0).pow(2)).unwrap();
        assert_eq!(pairing(&x, &x).poly(), &Polynomial::constant(1, 2.into()));
    }

    #[test]
    fn mismatched_multidegrees_pair_to_zero() {
        let hx = catalog_3("Hx").unwrap();
        let hy = catalog_3("Hy").unwrap();
        let p = pairing(&hx, &hy);
        assert!(p.is_zero());
        assert_eq!(p.bidegree(), (2, 2));
    }

    #[test]
    fn numeric_pairing_matches_symbolic() {
        let t = catalog_3("T").unwrap();
        let f = catalog_3("f").unwrap();
        let s = random_state(&mut rng(11), 3);
        let exact = pairing(&t, &f).evaluate(&s).unwrap();
        let fast = NumericPairing::new(&t, &f).evaluate(&s).unwrap();
        assert!((exact - fast).norm() < 1e-12);
    }

    #[test]
    fn lut_basis_sizes_and_rank() {
        for k in 2..=4 {
            let b = lut_degree4_basis(k).unwrap();
            assert_eq!(b.len(), 1 << (k - 1));
            let polys: Vec<_> = b.iter().map(|x| x.poly().clone()).collect();
            assert_eq!(rank(&polys), b.len());
        }
    }

    #[test]
    fn f_squared_relation_small_k() {
        for k in 2..=3 {
            assert!(f_squared_relation_check(k).unwrap().holds, "k = {k}");
        }
    }

    #[test]
    fn cycles_parse() {
        assert_eq!(permutation_from_cycles("(12)", 2).unwrap(), vec![1, 0]);
        assert_eq!(permutation_from_cycles("(13)", 3).unwrap(), vec![2, 1, 0]);
        assert_eq!(permutation_from_cycles("Id", 3).unwrap(), vec![0, 1, 2]);
        assert!(permutation_from_cycles("(14)", 3).is_err());
        assert!(grassl_sum(&[0], &[0, 1], &[0]).is_err());
    }

    #[test]
    fn identity_permutation_gives_norm() {
        let id = grassl_sum(&[0], &[0], &[0]).unwrap();
        assert_eq!(id.poly(), ThreeQubit::shared().a.poly());
    }

    #[test]
    fn permutation_forms_match_covariant_expressions() {
        let tq = ThreeQubit::shared();
        for i in 2..=5 {
            let perm = grassl_permutation_form(i).unwrap();
            assert_eq!(perm.poly(), tq.generator(i).unwrap().poly(), "f{i}");
        }
    }

    #[test]
    fn combinations_enumerate_in_order() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
    }

    #[test]
    fn conjugate_swaps_bidegree_and_name() {
        let s2 = ThreeQubit::shared().s2.clone();
        let c = s2.conjugate();
        assert_eq!(c.bidegree(), (1, 3));
        assert_eq!(c.name(), "s2_bar");
        assert_eq!(c.conjugate(), s2);
    }
}
