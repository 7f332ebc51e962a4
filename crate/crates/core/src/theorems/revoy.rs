//! Trace forms of commutative algebras F[x]/(f).

use crate::csa::{monogenic_algebra, restrict_sparse, trace_kernel};
use crate::error::Result;
use crate::field::{linalg, Elem, Field, Poly};
use crate::quadform::QuadraticForm;

/// (T_1, T_2) of multiplication by each basis vector x^i of F[x]/(f).
pub fn basis_char_coeffs(field: &Field, f: &Poly) -> Result<(Vec<Elem>, Vec<Elem>)> {
    let e = monogenic_algebra(field, f)?;
    let d = e.dim();
    let mut t1 = Vec::with_capacity(d);
    let mut t2 = Vec::with_capacity(d);
    for i in 0..d {
        let cp = linalg::charpoly(field, &e.left_regular_matrix(&e.basis_vector(i)));
        t1.push(cp[d - 1]);
        t2.push(if d >= 2 { cp[d - 2] } else { Elem::ZERO });
    }
    Ok((t1, t2))
}

/// T_2 on E = F[x]/(f), restricted to Ker T_1 when deg f is odd. E need not
/// be a field.
pub fn revoy_trace_form(field: &Field, f: &Poly) -> Result<QuadraticForm> {
    let d = f.degree().unwrap_or(0);
    if d <= 1 {
        return Ok(QuadraticForm::zero(field));
    }
    let f = f.monic(field);
    let (t1, t2) = basis_char_coeffs(field, &f)?;
    // B(x^i, x^j) = T_1(x^(i+j)) + T_1(x^i) T_1(x^j)
    let e = monogenic_algebra(field, &f)?;
    let mut polar = vec![vec![Elem::ZERO; d]; d];
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            let prod = e.mul(&e.basis_vector(i), &e.basis_vector(j));
            let tr = prod.iter().zip(&t1).fold(Elem::ZERO, |s, (&a, &t)| s + field.mul(a, t));
            polar[i][j] = tr + field.mul(t1[i], t1[j]);
        }
    }
    let full = QuadraticForm::new(field, t2, polar)?;
    if d.is_multiple_of(2) {
        return Ok(full);
    }
    let sub = trace_kernel(field, &t1).expect("odd degree: T_1(1) = 1");
    restrict_sparse(&full, &sub.basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_extension_gives_norm_form() {
        let f2 = Field::gf2();
        let q = revoy_trace_form(&f2, &Poly::parse(&f2, "x^2+x+1", "x").unwrap()).unwrap();
        assert_eq!(q.diag(), &[Elem::ONE, Elem::ONE]);
        assert_eq!(q.polar()[0][1], Elem::ONE);
    }

    #[test]
    fn cubic_extension_has_arf_one() {
        let f2 = Field::gf2();
        let q = revoy_trace_form(&f2, &Poly::parse(&f2, "x^3+x+1", "x").unwrap()).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.arf().unwrap(), Elem::ONE);
    }

    #[test]
    fn degree_one_is_zero_form() {
        let f2 = Field::gf2();
        assert_eq!(revoy_trace_form(&f2, &Poly::linear(Elem::ONE)).unwrap().dim(), 0);
    }
}
