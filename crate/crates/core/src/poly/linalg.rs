//! Exact linear algebra over Q(i): ranks of polynomial families and small
//! dense determinants.

use num_traits::{One, Zero};

use super::coeff::GaussianRational;
use super::polynomial::Polynomial;

/// Incremental row echelon form over polynomials viewed as coefficient
/// vectors. Each stored row is monic in its smallest monomial, and pivots are
/// pairwise distinct.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<Polynomial>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `p` against the basis until its smallest monomial is not a
    /// pivot. The result is zero exactly when `p` is in the span.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut cur = p.clone();
        loop {
            let Some((lead, c)) = cur.terms().first().cloned() else {
                return cur;
            };
            let Some(row) = self.rows.iter().find(|r| r.terms()[0].0 == lead) else {
                return cur;
            };
            cur = &cur - &row.scale(&c);
        }
    }

    /// Adds `p` if it is independent of the current rows; reports whether it
    /// was added.
    pub fn insert(&mut self, p: &Polynomial) -> bool {
        let r = self.reduce(p);
        if r.is_zero() {
            return false;
        }
        let inv = r.terms()[0].1.inv().expect("nonzero leading coefficient");
        self.rows.push(r.scale(&inv));
        true
    }
}

pub fn rank(polys: &[Polynomial]) -> usize {
    let mut basis = EchelonBasis::new();
    for p in polys {
        basis.insert(p);
    }
    basis.rank()
}

/// Indices of a maximal independent subfamily, chosen greedily in order.
pub fn independent_subset(polys: &[Polynomial]) -> Vec<usize> {
    let mut basis = EchelonBasis::new();
    polys.iter().enumerate().filter(|(_, p)| basis.insert(p)).map(|(i, _)| i).collect()
}

/// If `p = c·q` for a nonzero scalar `c`, returns `c`.
pub fn proportionality(p: &Polynomial, q: &Polynomial) -> Option<GaussianRational> {
    if p.is_zero() || q.is_zero() || p.num_terms() != q.num_terms() {
        return None;
    }
    let (m0, c0) = &q.terms()[0];
    if p.terms()[0].0 != *m0 {
        return None;
    }
    let ratio = p.terms()[0].1.clone() / c0.clone();
    (q.scale(&ratio) == *p).then_some(ratio)
}

/// Determinant of a square matrix over Q(i) by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<GaussianRational>>) -> GaussianRational {
    let n = m.len();
    let mut det = GaussianRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return GaussianRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det.mul_ref(&p);
        let inv = p.inv().expect("pivot is nonzero");
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul_ref(&inv);
            for c in col..n {
                let t = f.mul_ref(&m[col][c]);
                m[r][c].sub_assign_ref(&t);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_family() {
        let a = Polynomial::amp(1, 0);
        let b = Polynomial::amp(1, 1);
        let family = vec![a.clone(), b.clone(), &a + &b, (&a - &b).scale_int(3)];
        assert_eq!(rank(&family), 2);
        assert_eq!(independent_subset(&family), vec![0, 1]);
    }

    #[test]
    fn proportional_polynomials() {
        let p = &Polynomial::amp(1, 0) + &Polynomial::amp(1, 1).scale_int(2);
        let q = p.scale(&GaussianRational::from_ints(0, 3));
        assert_eq!(proportionality(&q, &p), Some(GaussianRational::from_ints(0, 3)));
        assert_eq!(proportionality(&Polynomial::amp(1, 0), &p), None);
    }

    #[test]
    fn small_determinants() {
        let g = |a: i64, b: i64| GaussianRational::from_ints(a, b);
        assert_eq!(determinant(vec![vec![g(1, 0), g(2, 0)], vec![g(3, 0), g(4, 0)]]), g(-2, 0));
        assert_eq!(determinant(vec![vec![g(0, 0), g(1, 0)], vec![g(1, 0), g(0, 0)]]), g(-1, 0));
        assert_eq!(determinant(vec![vec![g(0, 1), g(1, 0)], vec![g(1, 0), g(0, 1)]]), g(-2, 0));
        assert!(determinant(vec![vec![g(1, 1), g(2, 2)], vec![g(1, 0), g(2, 0)]]).is_zero());
    }
}
