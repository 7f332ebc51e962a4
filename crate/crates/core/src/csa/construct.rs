use crate::error::{Error, Result};
use crate::field::{Elem, Field, Poly};
use crate::quadform::QuaternionSymbol;

use super::Algebra;

/// M_n(F) on the matrix units E_ab (row-major), E_ab E_cd = [b = c] E_ad.
pub fn matrix_algebra(field: &Field, n: usize) -> Algebra {
    assert!(n >= 1, "matrix algebra needs n >= 1");
    let idx = |a: usize, b: usize| a * n + b;
    let entries = (0..n)
        .flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |d| (idx(a, b), idx(b, d), idx(a, d), Elem::ONE))));
    let mut identity = vec![Elem::ZERO; n * n];
    for a in 0..n {
        identity[idx(a, a)] = Elem::ONE;
    }
    let labels = (0..n)
        .flat_map(|a| {
            (0..n).map(move |b| if n < 10 { format!("E{}{}", a + 1, b + 1) } else { format!("E{},{}", a + 1, b + 1) })
        })
        .collect();
    Algebra::from_structure(field.clone(), n * n, entries, identity, format!("Mat({n})"))
        .expect("well-formed structure constants")
        .with_basis_labels(labels)
        .with_brauer(Some(Vec::new()))
        .flag_csa()
        .expect("n^2 is a square")
}

/// The quaternion algebra (a, b] with basis 1, e, f, ef where e^2 = a,
/// f^2 + f = b and ef + fe = e.
pub fn quaternion_algebra(field: &Field, a: Elem, b: Elem) -> Result<Algebra> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !field.contains(a) || !field.contains(b) {
        return Err(Error::FieldMismatch);
    }
    let ab = field.mul(a, b);
    let (one, e, f, ef) = (0, 1, 2, 3);
    let i = Elem::ONE;
    let mut t = Vec::new();
    for x in 0..4 {
        t.push((one, x, x, i));
        if x != one {
            t.push((x, one, x, i));
        }
    }
    // e * .
    t.extend([(e, e, one, a), (e, f, ef, i), (e, ef, f, a)]);
    // f * .   fe = e + ef,  f^2 = f + b,  f(ef) = b e
    t.extend([(f, e, e, i), (f, e, ef, i), (f, f, f, i), (f, f, one, b), (f, ef, e, b)]);
    // ef * .  (ef)e = a + a f,  (ef)f = ef + b e,  (ef)^2 = ab
    t.extend([(ef, e, one, a), (ef, e, f, a), (ef, f, ef, i), (ef, f, e, b), (ef, ef, one, ab)]);
    let identity = vec![Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO];
    let label = format!("Quat({},{})", field.format(a), field.format(b));
    Algebra::from_structure(field.clone(), 4, t, identity, label)?
        .with_basis_labels(vec!["1".into(), "e".into(), "f".into(), "ef".into()])
        .with_brauer(Some(vec![QuaternionSymbol { a, b }]))
        .flag_csa()
}

/// A ⊗ B on the basis e_i ⊗ f_j in row-major order (index i * dim B + j).
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let f = a.field();
    let mb = b.dim();
    let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
    for i in 0..a.dim() {
        for &(k, p, c) in a.table_row(i) {
            for j in 0..mb {
                for &(l, q, d) in b.table_row(j) {
                    entries.push((i * mb + j, k as usize * mb + l as usize, p as usize * mb + q as usize, f.mul(c, d)));
                }
            }
        }
    }
    let identity: Vec<Elem> =
        a.identity().iter().flat_map(|&x| b.identity().iter().map(move |&y| f.mul(x, y))).collect();
    let labels =
        a.basis_labels().iter().flat_map(|x| b.basis_labels().iter().map(move |y| format!("{x}⊗{y}"))).collect();
    let brauer = match (a.brauer_symbols(), b.brauer_symbols()) {
        (Some(x), Some(y)) => Some([x, y].concat()),
        _ => None,
    };
    let alg = Algebra::from_structure(
        f.clone(),
        a.dim() * mb,
        entries,
        identity,
        format!("Tensor({},{})", a.label(), b.label()),
    )?
    .with_basis_labels(labels)
    .with_brauer(brauer);
    if a.degree().is_some() && b.degree().is_some() {
        alg.flag_csa()
    } else {
        Ok(alg)
    }
}

/// F[x]/(f) on the basis 1, x, ..., x^(d-1). Commutative; a field exactly
/// when `f` is irreducible.
pub fn monogenic_algebra(field: &Field, f: &Poly) -> Result<Algebra> {
    let d = f.degree().filter(|&d| d >= 1).ok_or(Error::DivisionByZero)?;
    if !f.is_monic() {
        return Err(Error::InvalidExtension("defining polynomial must be monic".into()));
    }
    let powers: Vec<Poly> =
        (0..2 * d - 1).map(|k| Poly::monomial(Elem::ONE, k).rem(field, f).expect("monic divisor")).collect();
    let mut entries = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for (k, &c) in powers[i + j].coeffs().iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c));
                }
            }
        }
    }
    let mut identity = vec![Elem::ZERO; d];
    identity[0] = Elem::ONE;
    let labels = (0..d)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        })
        .collect();
    Ok(Algebra::from_structure(field.clone(), d, entries, identity, format!("Mono({})", f.format(field, "x")))?
        .with_basis_labels(labels))
}
