//! Packed exact arithmetic for large identities in amplitude variables.
//!
//! A monomial in at most 32 variables with exponents below 16 fits in a
//! `u128`, four bits per variable, and multiplication is key addition.
//! Coefficients are Gaussian integers over one shared integer denominator.
//! Every operation is checked and returns `None` when a bound would be
//! exceeded, so callers can fall back to [`Polynomial`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rustc_hash::FxHashMap;

use super::coeff::GaussianRational;
use super::monomial::Monomial;
use super::polynomial::Polynomial;

const BITS: u32 = 4;
const MAX_VARS: u16 = 32;
const MAX_EXP: u16 = 15;

#[derive(Clone, Debug, PartialEq)]
pub struct PackedPoly {
    k: usize,
    den: i128,
    max_exp: u16,
    terms: FxHashMap<u128, (i128, i128)>,
}

fn pack(m: &Monomial) -> Option<u128> {
    let mut key = 0u128;
    for &(i, e) in m.pairs() {
        if i >= MAX_VARS || e > MAX_EXP {
            return None;
        }
        key |= (e as u128) << (BITS * i as u32);
    }
    Some(key)
}

fn unpack(key: u128) -> Monomial {
    Monomial::from_pairs((0..MAX_VARS).filter_map(|i| {
        let e = (key >> (BITS * i as u32)) & 0xF;
        (e > 0).then_some((i, e as u16))
    }))
}

fn max_exponent(key: u128) -> u16 {
    (0..MAX_VARS).map(|i| ((key >> (BITS * i as u32)) & 0xF) as u16).max().unwrap_or(0)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

impl PackedPoly {
    pub fn zero(k: usize) -> Self {
        Self { k, den: 1, max_exp: 0, terms: FxHashMap::default() }
    }

    /// Converts when every variable index is below 32, exponents are below
    /// 16 and the scaled coefficients fit in `i128`.
    pub fn from_polynomial(p: &Polynomial) -> Option<Self> {
        let mut den = BigInt::one();
        for (_, c) in p.terms() {
            den = den.lcm(c.re.denom()).lcm(c.im.denom());
        }
        let scale = |r: &BigRational| -> Option<i128> { (r.numer() * (&den / r.denom())).to_i128() };
        let mut terms = FxHashMap::default();
        let mut max_exp = 0;
        for (m, c) in p.terms() {
            let key = pack(m)?;
            max_exp = max_exp.max(max_exponent(key));
            terms.insert(key, (scale(&c.re)?, scale(&c.im)?));
        }
        Some(Self { k: p.k(), den: den.to_i128()?, max_exp, terms })
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let den = BigInt::from(self.den);
        Polynomial::from_terms(
            self.k,
            self.terms.iter().map(|(&key, &(re, im))| {
                let c = GaussianRational::new(
                    BigRational::new(BigInt::from(re), den.clone()),
                    BigRational::new(BigInt::from(im), den.clone()),
                );
                (unpack(key), c)
            }),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn rescaled(&self, factor: i128) -> Option<FxHashMap<u128, (i128, i128)>> {
        self.terms.iter().map(|(&k, &(re, im))| Some((k, (re.checked_mul(factor)?, im.checked_mul(factor)?)))).collect()
    }

    fn combine(&self, other: &PackedPoly, sign: i128) -> Option<PackedPoly> {
        let g = gcd_i128(self.den, other.den);
        let den = (self.den / g).checked_mul(other.den)?;
        let mut terms = self.rescaled(den / self.den)?;
        let f = den / other.den;
        for (&key, &(re, im)) in &other.terms {
            let e = terms.entry(key).or_insert((0, 0));
            e.0 = e.0.checked_add(re.checked_mul(f)?.checked_mul(sign)?)?;
            e.1 = e.1.checked_add(im.checked_mul(f)?.checked_mul(sign)?)?;
        }
        terms.retain(|_, c| *c != (0, 0));
        let max_exp = terms.keys().map(|&k| max_exponent(k)).max().unwrap_or(0);
        Some(PackedPoly { k: self.k, den, max_exp, terms }.normalized())
    }

    pub fn checked_add(&self, other: &PackedPoly) -> Option<PackedPoly> {
        self.combine(other, 1)
    }

    pub fn checked_sub(&self, other: &PackedPoly) -> Option<PackedPoly> {
        self.combine(other, -1)
    }

    pub fn checked_mul(&self, other: &PackedPoly) -> Option<PackedPoly> {
        if self.max_exp + other.max_exp > MAX_EXP {
            return None;
        }
        let mut terms: FxHashMap<u128, (i128, i128)> = FxHashMap::default();
        terms.reserve(self.terms.len().saturating_mul(other.terms.len()).min(1 << 22));
        for (&ka, &(ar, ai)) in &self.terms {
            for (&kb, &(br, bi)) in &other.terms {
                let re = ar.checked_mul(br)?.checked_sub(ai.checked_mul(bi)?)?;
                let im = ar.checked_mul(bi)?.checked_add(ai.checked_mul(br)?)?;
                let e = terms.entry(ka + kb).or_insert((0, 0));
                e.0 = e.0.checked_add(re)?;
                e.1 = e.1.checked_add(im)?;
            }
        }
        terms.retain(|_, c| *c != (0, 0));
        let out = PackedPoly {
            k: self.k,
            den: self.den.checked_mul(other.den)?,
            max_exp: self.max_exp + other.max_exp,
            terms,
        };
        Some(out.normalized())
    }

    /// Multiplies by the rational `num/den`.
    pub fn checked_scale(&self, num: i128, den: i128) -> Option<PackedPoly> {
        let terms = self.rescaled(num)?;
        let mut out = PackedPoly { k: self.k, den: self.den.checked_mul(den)?, max_exp: self.max_exp, terms };
        out.terms.retain(|_, c| *c != (0, 0));
        Some(out.normalized())
    }

    /// Divides numerators and denominator by their common gcd.
    fn normalized(mut self) -> Self {
        if self.terms.is_empty() {
            self.den = 1;
            return self;
        }
        let mut g = self.den;
        for &(re, im) in self.terms.values() {
            g = gcd_i128(gcd_i128(g, re), im);
            if g == 1 {
                return self;
            }
        }
        if g > 1 {
            self.den /= g;
            for c in self.terms.values_mut() {
                c.0 /= g;
                c.1 /= g;
            }
        }
        self
    }
}
