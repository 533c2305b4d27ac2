use smallvec::SmallVec;

use super::variable::VariableId;

/// A power product, stored as `(dense variable index, exponent)` pairs sorted
/// by index. Exponents are always positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Monomial(pub(crate) SmallVec<[(u16, u16); 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(idx: u16, exp: u16) -> Self {
        let mut m = Monomial::one();
        if exp > 0 {
            m.0.push((idx, exp));
        }
        m
    }

    /// Builds a monomial from unsorted pairs, merging repeated indices.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u16, u16)>) -> Self {
        let mut v: SmallVec<[(u16, u16); 8]> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_unstable_by_key(|p| p.0);
        let mut out: SmallVec<[(u16, u16); 8]> = SmallVec::new();
        for (i, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => out.push((i, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(u16, u16)] {
        &self.0
    }

    pub fn exponent(&self, idx: u16) -> u16 {
        match self.0.binary_search_by_key(&idx, |p| p.0) {
            Ok(pos) => self.0[pos].1,
            Err(_) => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|p| p.1 as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[(u16, u16); 8]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Lowers the exponent of `idx` by `order`, returning the falling-factorial
    /// multiplier, or `None` when the derivative kills the monomial.
    pub fn differentiate(&self, idx: u16, order: u16) -> Option<(Monomial, u64)> {
        if order == 0 {
            return Some((self.clone(), 1));
        }
        let pos = self.0.binary_search_by_key(&idx, |p| p.0).ok()?;
        let e = self.0[pos].1;
        if e < order {
            return None;
        }
        let factor: u64 = ((e - order + 1)..=e).map(u64::from).product();
        let mut out = self.clone();
        if e == order {
            out.0.remove(pos);
        } else {
            out.0[pos].1 = e - order;
        }
        Some((out, factor))
    }

    /// Splits into the part whose variables satisfy `pred` and the rest.
    pub fn split(&self, pred: impl Fn(u16) -> bool) -> (Monomial, Monomial) {
        let mut yes = Monomial::one();
        let mut no = Monomial::one();
        for &p in &self.0 {
            if pred(p.0) {
                yes.0.push(p);
            } else {
                no.0.push(p);
            }
        }
        (yes, no)
    }

    /// Applies a variable renaming; the map must send every index somewhere.
    pub fn map_indices(&self, f: impl Fn(u16) -> u16) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(i, e)| (f(i), e)))
    }

    pub fn variables(&self, k: usize) -> impl Iterator<Item = (VariableId, u16)> + '_ {
        self.0.iter().map(move |&(i, e)| (VariableId::from_index(k, i), e))
    }

    pub fn render(&self, k: usize) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(i, e)| {
                let name = VariableId::from_index(k, i).display(k);
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_differentiate() {
        let m = Monomial::from_pairs([(3, 1), (1, 2)]);
        let n = Monomial::from_pairs([(1, 1), (5, 1)]);
        let p = m.mul(&n);
        assert_eq!(p.pairs(), &[(1, 3), (3, 1), (5, 1)]);
        assert_eq!(p.total_degree(), 5);
        let (d, c) = p.differentiate(1, 2).unwrap();
        assert_eq!(c, 6);
        assert_eq!(d.pairs(), &[(1, 1), (3, 1), (5, 1)]);
        assert!(p.differentiate(2, 1).is_none());
        assert!(p.differentiate(3, 2).is_none());
    }

    #[test]
    fn from_pairs_merges() {
        let m = Monomial::from_pairs([(2, 1), (2, 2), (0, 0)]);
        assert_eq!(m.pairs(), &[(2, 3)]);
    }
}
