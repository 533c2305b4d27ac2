//! Covariants and the transvection product built from Cayley's Omega operator.
//!
//! For a single slot, `Ω = ∂/∂x'₀ ∂/∂x''₁ − ∂/∂x'₁ ∂/∂x''₀` and the two
//! factors of each term act on disjoint copies, so
//!
//! ```text
//! Ω^n Φ(x')Ψ(x'') = Σ_i (−1)^i C(n,i) ∂_{0}^{n−i} ∂_{1}^{i} Φ · ∂_{0}^{i} ∂_{1}^{n−i} Ψ
//! ```
//!
//! Identifying `x' = x'' = x` afterwards turns the primed derivatives into
//! plain ones. `transvect` evaluates this expansion slot by slot without
//! materialising the primed copies.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{GaussianRational, Mat2, Polynomial, State, VariableId};

/// A polynomial in amplitudes and plain auxiliary variables that is
/// homogeneous of amplitude degree `amp_degree` and of degree
/// `multidegree[j]` in the auxiliary pair of slot `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Covariant {
    poly: Polynomial,
    amp_degree: u32,
    multidegree: Vec<u32>,
    name: Option<String>,
}

impl Covariant {
    /// Wraps `poly`, checking that every monomial has the stated degrees.
    pub fn new(poly: Polynomial, amp_degree: u32, multidegree: Vec<u32>) -> Result<Self> {
        let k = poly.k();
        if multidegree.len() != k {
            return Err(Error::Dimension { expected: k, found: multidegree.len() });
        }
        for v in poly.variables() {
            let ok = match v {
                VariableId::Amp(_) => true,
                VariableId::Aux { copy, .. } => copy == crate::poly::AuxCopy::Plain,
                VariableId::AmpConj(_) => false,
            };
            if !ok {
                return Err(Error::Degree(format!("covariants may not contain {v}")));
            }
        }
        for (m, _) in poly.terms() {
            let (amp, conj, slots) = poly.monomial_degrees(m);
            if amp != amp_degree || conj != 0 || slots != multidegree {
                return Err(Error::Degree(format!(
                    "monomial {} has degree ({amp}, {slots:?}), expected ({amp_degree}, {multidegree:?})",
                    m.render(k)
                )));
            }
        }
        Ok(Self { poly, amp_degree, multidegree, name: None })
    }

    /// Infers the degrees from the first term. Fails on the zero polynomial
    /// or inhomogeneous input.
    pub fn from_poly(poly: Polynomial) -> Result<Self> {
        let (amp, _, slots) = poly
            .terms()
            .first()
            .map(|(m, _)| poly.monomial_degrees(m))
            .ok_or_else(|| Error::Degree("cannot infer degrees of the zero polynomial".into()))?;
        Self::new(poly, amp, slots)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn k(&self) -> usize {
        self.poly.k()
    }

    pub fn amp_degree(&self) -> u32 {
        self.amp_degree
    }

    pub fn multidegree(&self) -> &[u32] {
        &self.multidegree
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Product of covariants; degrees add.
    pub fn mul(&self, other: &Covariant) -> Result<Covariant> {
        let poly = self.poly.try_mul(&other.poly)?;
        let md = self.multidegree.iter().zip(&other.multidegree).map(|(a, b)| a + b).collect();
        Ok(Covariant { poly, amp_degree: self.amp_degree + other.amp_degree, multidegree: md, name: None })
    }

    /// Linear combination with a covariant of the same degrees.
    pub fn add(&self, other: &Covariant) -> Result<Covariant> {
        self.check_same_degrees(other)?;
        Ok(Covariant { poly: self.poly.try_add(&other.poly)?, name: None, ..self.clone() })
    }

    pub fn scale(&self, c: &GaussianRational) -> Covariant {
        Covariant { poly: self.poly.scale(c), name: None, ..self.clone() }
    }

    fn check_same_degrees(&self, other: &Covariant) -> Result<()> {
        if self.k() != other.k() {
            return Err(Error::Dimension { expected: self.k(), found: other.k() });
        }
        if self.amp_degree != other.amp_degree || self.multidegree != other.multidegree {
            return Err(Error::Degree("covariants of different degrees cannot be added".into()));
        }
        Ok(())
    }

    pub fn evaluate(&self, state: &State, aux: &[[Complex64; 2]]) -> Result<Complex64> {
        self.poly.evaluate(state, Some(aux))
    }
}

/// The exponent tuple `(ε₁,…,ε_k)` of a transvectant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Epsilon(pub Vec<u32>);

impl Epsilon {
    pub fn zeros(k: usize) -> Self {
        Epsilon(vec![0; k])
    }

    pub fn ones(k: usize) -> Self {
        Epsilon(vec![1; k])
    }

    /// Parses a digit string such as `"0111"`.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad epsilon digit in {s}"))))
            .collect::<Result<Vec<_>>>()
            .map(Epsilon)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

fn binomial(n: u32, i: u32) -> i64 {
    (0..i).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

/// Transvectant `(φ, ψ)^ε`, with `φ` on the primed and `ψ` on the
/// double-primed copies. No normalising constant is applied.
pub fn transvect(phi: &Covariant, psi: &Covariant, eps: &Epsilon) -> Result<Covariant> {
    let k = phi.k();
    if psi.k() != k {
        return Err(Error::Dimension { expected: k, found: psi.k() });
    }
    if eps.0.len() != k {
        return Err(Error::Dimension { expected: k, found: eps.0.len() });
    }
    for j in 0..k {
        let bound = phi.multidegree[j].min(psi.multidegree[j]);
        if eps.0[j] > bound {
            return Err(Error::Degree(format!(
                "epsilon {:?} exceeds min multidegree {bound} in slot {}",
                eps.0,
                j + 1
            )));
        }
    }

    // Enumerate the per-slot split index i_j ∈ 0..=ε_j.
    let mut result = Polynomial::zero(k);
    let mut idx = vec![0u32; k];
    loop {
        let mut sign_coeff: i64 = 1;
        let mut dphi = Vec::with_capacity(2 * k);
        let mut dpsi = Vec::with_capacity(2 * k);
        for j in 0..k {
            let (n, i) = (eps.0[j], idx[j]);
            sign_coeff *= binomial(n, i) * if i % 2 == 1 { -1 } else { 1 };
            dphi.push((VariableId::aux(j, 0), (n - i) as u16));
            dphi.push((VariableId::aux(j, 1), i as u16));
            dpsi.push((VariableId::aux(j, 0), i as u16));
            dpsi.push((VariableId::aux(j, 1), (n - i) as u16));
        }
        let a = phi.poly.partial_multi(&dphi);
        if !a.is_zero() {
            let b = psi.poly.partial_multi(&dpsi);
            if !b.is_zero() {
                result = &result + &(&a * &b).scale_int(sign_coeff);
            }
        }
        // advance the mixed-radix counter
        let mut j = 0;
        loop {
            if j == k {
                let multidegree = (0..k).map(|s| phi.multidegree[s] + psi.multidegree[s] - 2 * eps.0[s]).collect();
                return Ok(Covariant {
                    poly: result,
                    amp_degree: phi.amp_degree + psi.amp_degree,
                    multidegree,
                    name: None,
                });
            }
            if idx[j] < eps.0[j] {
                idx[j] += 1;
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

fn det2(m: &Mat2) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn inverse_transpose(m: &Mat2) -> Result<Mat2> {
    let d = det2(m);
    let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if d.norm() <= 1e-14 * scale * scale || !d.is_finite() {
        return Err(Error::Argument("singular local matrix".into()));
    }
    // (m^{-1})^T = [[d, -c], [-b, a]] / det
    Ok([[m[1][1] / d, -m[1][0] / d], [-m[0][1] / d, m[0][0] / d]])
}

/// Local action on a state. The transformed amplitudes satisfy
/// `Σ a x = Σ a' x'` with `x'^{(j)} = g^{(j)} x^{(j)}`, i.e.
/// `a' = (g^{(1)})^{-T} ⊗ … ⊗ (g^{(k)})^{-T} a`.
pub fn sl2_action_state(g: &[Mat2], state: &State) -> Result<State> {
    if g.len() != state.k() {
        return Err(Error::Dimension { expected: state.k(), found: g.len() });
    }
    let inv: Vec<Mat2> = g.iter().map(inverse_transpose).collect::<Result<_>>()?;
    state.apply_tensor(&inv)
}

/// Transforms auxiliary points by `x' = g x`, slot by slot.
pub fn sl2_action_aux(g: &[Mat2], aux: &[[Complex64; 2]]) -> Result<Vec<[Complex64; 2]>> {
    if g.len() != aux.len() {
        return Err(Error::Dimension { expected: aux.len(), found: g.len() });
    }
    g.iter()
        .zip(aux)
        .map(|(m, x)| {
            inverse_transpose(m)?;
            Ok([m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]])
        })
        .collect()
}
