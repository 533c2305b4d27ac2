//! Named covariants: the ground form, the degree-2 family, the three-qubit
//! system and the four-qubit transvection chains.

use crate::error::{Error, Result};
use crate::hilbert::dim_cov;
use crate::poly::linalg::EchelonBasis;
use crate::poly::{Monomial, Polynomial, VariableId};
use crate::transvection::{transvect, Covariant, Epsilon};

/// Largest qubit count the symbolic catalog accepts.
pub const MAX_SYMBOLIC_K: usize = 8;

/// Names understood by [`catalog_3`].
pub const CATALOG_3_NAMES: [&str; 6] = ["f", "Hx", "Hy", "Hz", "T", "Delta"];

/// Names understood by [`catalog_4`], besides `f`.
pub const CATALOG_4_NAMES: [&str; 21] = [
    "B_0000", "B_2200", "B_2020", "B_2002", "B_0220", "B_0202", "B_0022", "C1_1111", "C2_1111", "C_3111", "C_1311",
    "C_1131", "C_1113", "D_4000", "D_0400", "D_0040", "D_0004", "D_2200", "E_3111", "fB_0000", "f2",
];

fn check_k(k: usize) -> Result<()> {
    if k == 0 || k > MAX_SYMBOLIC_K {
        return Err(Error::Argument(format!("qubit count k = {k} outside 1..={MAX_SYMBOLIC_K}")));
    }
    Ok(())
}

/// `f = Σ a_{i₁…i_k} x^{(1)}_{i₁} ⋯ x^{(k)}_{i_k}`.
pub fn ground_form(k: usize) -> Result<Covariant> {
    check_k(k)?;
    let terms = (0..1u32 << k).map(|b| {
        let mut pairs = vec![(VariableId::Amp(b).index(k), 1u16)];
        for slot in 0..k {
            let bit = (b >> (k - 1 - slot)) & 1;
            pairs.push((VariableId::aux(slot, bit as usize).index(k), 1));
        }
        (Monomial::from_pairs(pairs), 1.into())
    });
    Covariant::new(Polynomial::from_terms(k, terms), 1, vec![1; k]).map(|c| c.with_name("f"))
}

/// Multidegrees `d ∈ {0,2}^k` with an even number of zeros, in lexicographic
/// order of their digit strings.
pub fn b_multidegrees(k: usize) -> Vec<Vec<u32>> {
    (0..1u32 << k)
        .map(|mask| (0..k).map(|j| if mask >> (k - 1 - j) & 1 == 1 { 2 } else { 0 }).collect::<Vec<u32>>())
        .filter(|d| d.iter().filter(|&&x| x == 0).count() % 2 == 0)
        .collect()
}

pub fn digits(d: &[u32]) -> String {
    d.iter().map(|x| char::from_digit(*x, 10).unwrap_or('?')).collect()
}

/// `B_d = (f, f)^{(2−d₁)/2, …, (2−d_k)/2}`.
pub fn b_family(k: usize, d: &[u32]) -> Result<Covariant> {
    check_k(k)?;
    if d.len() != k {
        return Err(Error::Dimension { expected: k, found: d.len() });
    }
    if d.iter().any(|&x| x != 0 && x != 2) {
        return Err(Error::Argument(format!("B_d needs d in {{0,2}}^k, got {}", digits(d))));
    }
    if d.iter().filter(|&&x| x == 0).count() % 2 == 1 {
        return Err(Error::Argument(format!(
            "B_{} vanishes: degree-2 covariants need an even number of zero entries",
            digits(d)
        )));
    }
    let f = ground_form(k)?;
    let eps = Epsilon(d.iter().map(|x| (2 - x) / 2).collect());
    Ok(transvect(&f, &f, &eps)?.with_name(format!("B_{}", digits(d))))
}

/// `det [[∂²f/∂u₀∂v₀, ∂²f/∂u₁∂v₀], [∂²f/∂u₀∂v₁, ∂²f/∂u₁∂v₁]]` for slots `u`, `v`.
fn hessian_det(f: &Polynomial, u: usize, v: usize) -> Polynomial {
    let d = |i, j| f.partial(VariableId::aux(u, i)).partial(VariableId::aux(v, j));
    &(&d(0, 0) * &d(1, 1)) - &(&d(1, 0) * &d(0, 1))
}

/// The three-qubit generators `f, Hx, Hy, Hz, T, Delta`.
pub fn catalog_3(name: &str) -> Result<Covariant> {
    let f = ground_form(3)?;
    let hx = || hessian_det(f.poly(), 1, 2);
    let cov = match name {
        "f" => return Ok(f),
        "Hx" => Covariant::new(hx(), 2, vec![2, 0, 0])?,
        "Hy" => Covariant::new(hessian_det(f.poly(), 0, 2), 2, vec![0, 2, 0])?,
        "Hz" => Covariant::new(hessian_det(f.poly(), 0, 1), 2, vec![0, 0, 2])?,
        "T" => t_covariant(&f, &hx())?,
        "Delta" => {
            let t = t_covariant(&f, &hx())?;
            transvect(&t, &f, &Epsilon::ones(3))?
        }
        other => return Err(Error::UnknownName(format!("three-qubit covariant {other}"))),
    };
    Ok(cov.with_name(name))
}

fn t_covariant(f: &Covariant, hx: &Polynomial) -> Result<Covariant> {
    let (x0, x1) = (VariableId::aux(0, 0), VariableId::aux(0, 1));
    let fp = f.poly();
    let t = &(&fp.partial(x0) * &hx.partial(x1)) - &(&fp.partial(x1) * &hx.partial(x0));
    Covariant::new(t, 3, vec![1, 1, 1])
}

fn named_b4(name: &str) -> Result<Covariant> {
    let d = name.strip_prefix("B_").ok_or_else(|| Error::UnknownName(name.into()))?;
    b_family(4, &Epsilon::parse(d)?.0)
}

fn chain(base: &Covariant, name: &str, eps: &str) -> Result<Covariant> {
    let f = ground_form(base.k())?;
    Ok(transvect(&f, base, &Epsilon::parse(eps)?)?.with_name(name))
}

/// The four-qubit covariants built by transvection chains with the ground form.
pub fn catalog_4(name: &str) -> Result<Covariant> {
    let c = |n: &str| catalog_4(n);
    let cov = match name {
        "f" => ground_form(4)?,
        "f2" => {
            let f = ground_form(4)?;
            f.mul(&f)?
        }
        "B_0000" | "B_2200" | "B_2020" | "B_2002" | "B_0220" | "B_0202" | "B_0022" => named_b4(name)?,
        "fB_0000" => ground_form(4)?.mul(&named_b4("B_0000")?)?,
        "C1_1111" => chain(&c("B_2200")?, name, "1100")?,
        "C2_1111" => chain(&c("B_2020")?, name, "1010")?,
        "C_3111" => chain(&c("B_2200")?, name, "0100")?,
        "C_1311" => chain(&c("B_2200")?, name, "1000")?,
        "C_1131" => chain(&c("B_2020")?, name, "1000")?,
        "C_1113" => chain(&c("B_2002")?, name, "1000")?,
        "D_4000" => chain(&c("C_3111")?, name, "0111")?,
        "D_0400" => chain(&c("C_1311")?, name, "1011")?,
        "D_0040" => chain(&c("C_1131")?, name, "1101")?,
        "D_0004" => chain(&c("C_1113")?, name, "1110")?,
        "D_2200" => chain(&c("C_3111")?, name, "1011")?,
        // the chain lands in multidegree (1,1,1,1); the label is kept as printed
        "E_3111" => chain(&c("D_2200")?, name, "1100")?,
        other => return Err(Error::UnknownName(format!("four-qubit covariant {other}"))),
    };
    Ok(cov.with_name(name))
}

/// Looks a covariant up by name for any `k`: `f`, `f2`, `B_<d>`, and the
/// three- and four-qubit catalogs.
pub fn lookup(k: usize, name: &str) -> Result<Covariant> {
    match (k, name) {
        (_, "f") => ground_form(k),
        (_, "f2") => {
            let f = ground_form(k)?;
            Ok(f.mul(&f)?.with_name("f2"))
        }
        (3, n) if CATALOG_3_NAMES.contains(&n) => catalog_3(n),
        (4, n) if CATALOG_4_NAMES.contains(&n) => catalog_4(n),
        (_, n) if n.starts_with("B_") => {
            let d = Epsilon::parse(&n[2..])?.0;
            b_family(k, &d)
        }
        _ => Err(Error::UnknownName(format!("covariant {name} for k = {k}"))),
    }
}

/// A basis of the covariants of degree 3 and multidegree `(1,…,1)`, chosen
/// greedily among `(f, B_d)^{d/2}` in the order of [`b_multidegrees`].
pub fn degree3_multilinear_basis(k: usize) -> Result<Vec<Covariant>> {
    if k < 2 {
        return Err(Error::Argument("the degree-3 multilinear basis needs k >= 2".into()));
    }
    let f = ground_form(k)?;
    let mut basis = EchelonBasis::new();
    let mut out = Vec::new();
    for d in b_multidegrees(k) {
        let b = if d.iter().all(|&x| x == 2) { f.mul(&f)? } else { b_family(k, &d)? };
        let eps = Epsilon(d.iter().map(|x| x / 2).collect());
        let cand = transvect(&f, &b, &eps)?;
        if basis.insert(cand.poly()) {
            out.push(cand.with_name(format!("C_{}", digits(&d))));
        }
    }
    let expected = dim_cov(3, k, &vec![1; k])? as usize;
    if out.len() != expected {
        return Err(Error::Consistency(format!(
            "degree-3 multilinear covariants for k = {k}: rank {} but the character formula gives {expected}",
            out.len()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::State;
    use num_complex::Complex64;

    fn ones(k: usize) -> Vec<[Complex64; 2]> {
        vec![[Complex64::new(1.0, 0.0); 2]; k]
    }

    #[test]
    fn ground_form_one_qubit() {
        let f = ground_form(1).unwrap();
        assert_eq!(f.poly().render(), "a0*x1_0 + a1*x1_1");
        assert_eq!(ground_form(3).unwrap().poly().num_terms(), 8);
        assert!(ground_form(0).is_err());
    }

    #[test]
    fn ghz_ground_form_value() {
        let f = ground_form(3).unwrap();
        let v = f.evaluate(&State::ghz(3), &ones(3)).unwrap();
        assert!((v.re - 2f64.sqrt()).abs() < 1e-12 && v.im.abs() < 1e-12);
    }

    #[test]
    fn b_family_counts_and_errors() {
        assert_eq!(b_multidegrees(4).len(), 8);
        assert_eq!(b_multidegrees(3).len(), 4);
        assert!(matches!(b_family(3, &[0, 2, 2]), Err(Error::Argument(_))));
        assert!(b_family(3, &[1, 1, 2]).is_err());
    }

    #[test]
    fn hx_on_unnormalized_ghz() {
        let hx = catalog_3("Hx").unwrap();
        let ghz = State::superposition(3, &["000", "111"], false).unwrap();
        let x = |c: usize| {
            hx.poly()
                .evaluate_with(|v| match v {
                    VariableId::Amp(b) => Some(ghz.amplitude(b)),
                    VariableId::Aux { slot: 0, component, .. } => {
                        Some(Complex64::new(if component as usize == c { 1.0 } else { 0.0 }, 0.0))
                    }
                    _ => Some(Complex64::new(1.0, 0.0)),
                })
                .unwrap()
        };
        // Hx = x0*x1 here, so it vanishes on each coordinate axis
        assert!(x(0).norm() < 1e-12 && x(1).norm() < 1e-12);
        let s = hx.evaluate(&ghz, &ones(3)).unwrap();
        assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn four_qubit_degrees() {
        let c = catalog_4("C_3111").unwrap();
        assert_eq!((c.amp_degree(), c.multidegree()), (3, &[3, 1, 1, 1][..]));
        let d = catalog_4("D_4000").unwrap();
        assert_eq!((d.amp_degree(), d.multidegree()), (4, &[4, 0, 0, 0][..]));
        assert!(!d.is_zero());
        let e = catalog_4("E_3111").unwrap();
        assert_eq!((e.amp_degree(), e.multidegree()), (5, &[1, 1, 1, 1][..]));
        assert!(catalog_4("Q_1111").is_err());
    }

    #[test]
    fn multilinear_basis_sizes() {
        assert_eq!(degree3_multilinear_basis(2).unwrap().len(), 1);
        assert_eq!(degree3_multilinear_basis(3).unwrap().len(), 1);
    }
}
