use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::coeff::GaussianRational;
use super::monomial::Monomial;
use super::packed::PackedPoly;
use super::state::State;
use super::variable::{AuxCopy, VariableId};

/// Products with at least this many term pairs try the packed kernel first.
const PACKED_THRESHOLD: usize = 1 << 12;
use crate::error::{Error, Result};

/// Sparse polynomial over Q(i) in the variable universe of a `k`-qubit system.
///
/// Terms are kept sorted by monomial with no zero coefficients, so two
/// polynomials are equal exactly when their term vectors are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    k: usize,
    terms: Vec<(Monomial, GaussianRational)>,
}

impl Polynomial {
    pub fn zero(k: usize) -> Self {
        Self { k, terms: Vec::new() }
    }

    pub fn one(k: usize) -> Self {
        Self::constant(k, GaussianRational::one())
    }

    pub fn constant(k: usize, c: GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(k);
        }
        Self { k, terms: vec![(Monomial::one(), c)] }
    }

    pub fn variable(k: usize, v: VariableId) -> Result<Self> {
        if !v.fits(k) {
            return Err(Error::Argument(format!("variable {v} does not exist for k = {k}")));
        }
        Ok(Self { k, terms: vec![(Monomial::var(v.index(k), 1), GaussianRational::one())] })
    }

    /// Shorthand for the amplitude `a_b`; panics if `b` does not fit.
    pub fn amp(k: usize, b: u32) -> Self {
        Self::variable(k, VariableId::Amp(b)).expect("amplitude index in range")
    }

    pub fn amp_conj(k: usize, b: u32) -> Self {
        Self::variable(k, VariableId::AmpConj(b)).expect("amplitude index in range")
    }

    pub fn aux(k: usize, slot: usize, component: usize) -> Self {
        Self::variable(k, VariableId::aux(slot, component)).expect("aux slot in range")
    }

    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut acc: FxHashMap<Monomial, GaussianRational> = FxHashMap::default();
        for (m, c) in terms {
            acc.entry(m).or_insert_with(GaussianRational::zero).add_assign_ref(&c);
        }
        Self::from_map(k, acc)
    }

    fn from_map(k: usize, acc: FxHashMap<Monomial, GaussianRational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Self { k, terms }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(Monomial, GaussianRational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(pos) => self.terms[pos].1.clone(),
            Err(_) => GaussianRational::zero(),
        }
    }

    fn check_k(&self, other: &Polynomial) -> Result<()> {
        if self.k != other.k {
            return Err(Error::Dimension { expected: self.k, found: other.k });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_k(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_k(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &GaussianRational| if negate { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    if negate {
                        c.sub_assign_ref(&b[j].1);
                    } else {
                        c.add_assign_ref(&b[j].1);
                    }
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| (t.0.clone(), sign(&t.1))));
        Polynomial { k: self.k, terms: out }
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_k(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.k));
        }
        if self.terms.len().saturating_mul(other.terms.len()) >= PACKED_THRESHOLD {
            if let Some(p) = PackedPoly::from_polynomial(self)
                .zip(PackedPoly::from_polynomial(other))
                .and_then(|(a, b)| a.checked_mul(&b))
            {
                return Ok(p.to_polynomial());
            }
        }
        let (small, large) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc: FxHashMap<Monomial, GaussianRational> =
            FxHashMap::with_capacity_and_hasher(large.terms.len() * 2, Default::default());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let c = c1.mul_ref(c2);
                match acc.entry(m1.mul(m2)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&c),
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Ok(Self::from_map(self.k, acc))
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.k);
        }
        Polynomial { k: self.k, terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul_ref(c))).collect() }
    }

    pub fn scale_int(&self, n: i64) -> Polynomial {
        self.scale(&GaussianRational::from_int(n))
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one(self.k);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial(&self, v: VariableId) -> Polynomial {
        self.partial_n(v, 1)
    }

    pub fn partial_n(&self, v: VariableId, order: u16) -> Polynomial {
        if !v.fits(self.k) {
            return Polynomial::zero(self.k);
        }
        let idx = v.index(self.k);
        let terms = self.terms.iter().filter_map(|(m, c)| {
            m.differentiate(idx, order).map(|(dm, f)| (dm, c.mul_ref(&GaussianRational::from_int(f as i64))))
        });
        // differentiation is injective on surviving monomials, so order is kept
        Polynomial { k: self.k, terms: terms.collect() }
    }

    /// Mixed derivative `∏ ∂^{order}/∂v^{order}` over the listed variables.
    pub fn partial_multi(&self, orders: &[(VariableId, u16)]) -> Polynomial {
        let idx: Vec<(u16, u16)> = orders.iter().filter(|o| o.1 > 0).map(|&(v, o)| (v.index(self.k), o)).collect();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let mut cur = m.clone();
            let mut factor: u64 = 1;
            for &(i, o) in &idx {
                let (dm, f) = cur.differentiate(i, o)?;
                cur = dm;
                factor *= f;
            }
            Some((cur, c.mul_ref(&GaussianRational::from_int(factor as i64))))
        });
        Polynomial { k: self.k, terms: terms.collect() }
    }

    /// Swaps amplitudes with their conjugates and conjugates coefficients.
    pub fn conjugate(&self) -> Result<Polynomial> {
        let n = 1u16 << self.k;
        if let Some(v) =
            self.variables().into_iter().find(|v| matches!(v, VariableId::Aux { copy, .. } if *copy != AuxCopy::Plain))
        {
            return Err(Error::InternalState(format!(
                "conjugate called on a transvection intermediate containing {v}"
            )));
        }
        let map = |i: u16| {
            if i < n {
                i + n
            } else if i < 2 * n {
                i - n
            } else {
                i
            }
        };
        Ok(Polynomial::from_terms(self.k, self.terms.iter().map(|(m, c)| (m.map_indices(map), c.conj()))))
    }

    /// Renames every variable through `f`; colliding monomials are summed.
    pub fn map_variables(&self, f: impl Fn(VariableId) -> VariableId) -> Polynomial {
        let k = self.k;
        Polynomial::from_terms(
            k,
            self.terms.iter().map(|(m, c)| (m.map_indices(|i| f(VariableId::from_index(k, i)).index(k)), c.clone())),
        )
    }

    /// Moves all plain auxiliary variables onto the given working copy.
    pub fn with_aux_copy(&self, copy: AuxCopy) -> Polynomial {
        self.map_variables(|v| match v {
            VariableId::Aux { slot, component, copy: AuxCopy::Plain } => VariableId::Aux { slot, component, copy },
            other => other,
        })
    }

    /// Identifies primed and double-primed auxiliaries with the plain ones.
    pub fn identify_copies(&self) -> Polynomial {
        self.map_variables(|v| match v {
            VariableId::Aux { slot, component, .. } => VariableId::Aux { slot, component, copy: AuxCopy::Plain },
            other => other,
        })
    }

    pub fn variables(&self) -> Vec<VariableId> {
        let mut seen: Vec<u16> = self.terms.iter().flat_map(|(m, _)| m.pairs().iter().map(|p| p.0)).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.into_iter().map(|i| VariableId::from_index(self.k, i)).collect()
    }

    /// Groups terms by their auxiliary part: returns `aux monomial → amplitude
    /// coefficient polynomial`.
    pub fn split_aux(&self) -> BTreeMap<Monomial, Polynomial> {
        let first_aux = 2u16 << self.k;
        let mut groups: BTreeMap<Monomial, Vec<(Monomial, GaussianRational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (aux, rest) = m.split(|i| i >= first_aux);
            groups.entry(aux).or_default().push((rest, c.clone()));
        }
        groups.into_iter().map(|(aux, terms)| (aux, Polynomial::from_terms(self.k, terms))).collect()
    }

    /// Per-monomial degree data: (amplitude degree, conjugate degree, aux
    /// degree of each slot). Primed copies count toward their slot.
    pub fn monomial_degrees(&self, m: &Monomial) -> (u32, u32, Vec<u32>) {
        let n = 1u16 << self.k;
        let mut amp = 0;
        let mut conj = 0;
        let mut slots = vec![0u32; self.k];
        for &(i, e) in m.pairs() {
            if i < n {
                amp += e as u32;
            } else if i < 2 * n {
                conj += e as u32;
            } else {
                slots[((i - 2 * n) / 6) as usize] += e as u32;
            }
        }
        (amp, conj, slots)
    }

    /// Returns the common degree data when every term shares it.
    pub fn homogeneous_degrees(&self) -> Option<(u32, u32, Vec<u32>)> {
        let mut it = self.terms.iter().map(|(m, _)| self.monomial_degrees(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Numeric value at a state; conjugate amplitudes take conjugated values.
    /// Auxiliary variables read `aux[slot][component]` when supplied.
    pub fn evaluate(&self, state: &State, aux: Option<&[[Complex64; 2]]>) -> Result<Complex64> {
        if state.k() != self.k {
            return Err(Error::Dimension { expected: self.k, found: state.k() });
        }
        self.evaluate_with(|v| match v {
            VariableId::Amp(b) => Some(state.amplitude(b)),
            VariableId::AmpConj(b) => Some(state.amplitude(b).conj()),
            VariableId::Aux { slot, component, copy: AuxCopy::Plain } => {
                aux.and_then(|x| x.get(slot as usize)).map(|p| p[component as usize])
            }
            VariableId::Aux { .. } => None,
        })
    }

    pub fn evaluate_with(&self, value: impl Fn(VariableId) -> Option<Complex64>) -> Result<Complex64> {
        let vars = self.variables();
        let mut table: FxHashMap<u16, Complex64> = FxHashMap::default();
        for v in vars {
            let x = value(v).ok_or(Error::Evaluation(v))?;
            table.insert(v.index(self.k), x);
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex64();
            for &(i, e) in m.pairs() {
                t *= table[&i].powu(e as u32);
            }
            total += t;
        }
        Ok(total)
    }

    /// Exact value when every variable is assigned an element of Q(i).
    pub fn evaluate_exact(&self, value: impl Fn(VariableId) -> Option<GaussianRational>) -> Result<GaussianRational> {
        let mut table: FxHashMap<u16, Vec<GaussianRational>> = FxHashMap::default();
        for v in self.variables() {
            let x = value(v).ok_or(Error::Evaluation(v))?;
            table.insert(v.index(self.k), vec![GaussianRational::one(), x]);
        }
        let mut total = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(i, e) in m.pairs() {
                let powers = table.get_mut(&i).expect("variable registered above");
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap().mul_ref(&powers[1]);
                    powers.push(next);
                }
                t = t.mul_ref(&powers[e as usize]);
            }
            total.add_assign_ref(&t);
        }
        Ok(total)
    }

    /// Text form: terms in monomial order, separated by ` + ` / ` - `, each
    /// `coef*var^e*...` with exact rational coefficients.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg_real = c.im.is_zero() && c.re < num_rational::BigRational::zero();
            let shown = if neg_real { -c.clone() } else { c.clone() };
            if n > 0 {
                out.push_str(if neg_real { " - " } else { " + " });
            } else if neg_real {
                out.push('-');
            }
            let mono = m.render(self.k);
            if m.is_one() {
                out.push_str(&shown.to_string());
            } else if shown.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{shown}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[k={}]({})", self.k, self.render())
    }
}

// Operator forms panic on mismatched k; the `try_*` methods report it.
impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials over different k")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomials over different k")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomials over different k")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { k: self.k, terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -(self.clone())
    }
}

/// Sum of a sequence of polynomials over the same `k`.
pub fn sum(k: usize, items: impl IntoIterator<Item = Polynomial>) -> Polynomial {
    Polynomial::from_terms(
        k,
        items.into_iter().flat_map(|p| {
            assert_eq!(p.k, k, "polynomials over different k");
            p.terms
        }),
    )
}
