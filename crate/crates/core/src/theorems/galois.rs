//! Detecting non-Galois odd-degree extensions from the Arf invariant of
//! their trace form.

use crate::error::{Error, Result};
use crate::field::{linalg::FieldOps, poly, Elem, Field, Poly};
use crate::quadform::QuadraticForm;

use super::predict::{bit_class, classes_coincide};
use super::revoy::revoy_trace_form;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaloisVerdict {
    /// The defining polynomial factors; E is étale but not a field.
    NotAField {
        factors: Vec<Poly>,
    },
    /// The Arf class differs from the one every Galois extension of this
    /// degree has.
    NotGalois,
    Inconclusive,
}

impl GaloisVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            GaloisVerdict::NotAField { .. } => "not-a-field",
            GaloisVerdict::NotGalois => "not-galois",
            GaloisVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Result of [`galois_obstruction`] over a finite field.
#[derive(Clone, Debug)]
pub struct GaloisCheck {
    pub verdict: GaloisVerdict,
    /// The trace form of E = F[x]/(f).
    pub form: QuadraticForm,
    pub arf: Elem,
    /// The Arf class of a Galois extension of the same degree.
    pub galois_arf: Elem,
    /// 1 lies in wp(F), so the test cannot discriminate.
    pub degenerate: bool,
}

fn odd_degree(f: &Poly) -> Result<usize> {
    match f.degree() {
        Some(d) if d % 2 == 1 => Ok(d),
        _ => Err(Error::InvalidExtension("an odd-degree defining polynomial is required".into())),
    }
}

/// Compares Arf(T_{E/F}) with the Galois prediction for deg f mod 8.
pub fn galois_obstruction(field: &Field, f: &Poly) -> Result<GaloisCheck> {
    let n = odd_degree(f)?;
    let f = f.monic(field);
    let form = revoy_trace_form(field, &f)?;
    let factors = poly::factor(field, &f);
    // repeated factors leave a radical; the Arf is then that of one
    // nonsingular complement and only informative
    let arf = if factors.len() > 1 { form.witt_class().arf } else { form.arf()? };
    let galois_arf = bit_class(field, matches!(n % 8, 3 | 5));
    let verdict = if factors.len() > 1 {
        GaloisVerdict::NotAField { factors }
    } else if arf != galois_arf {
        GaloisVerdict::NotGalois
    } else {
        GaloisVerdict::Inconclusive
    };
    Ok(GaloisCheck { verdict, form, arf, galois_arf, degenerate: classes_coincide(field) })
}

/// Diagonal values and polar matrix of a quadratic form.
pub type FormData<E> = (Vec<E>, Vec<Vec<E>>);

/// Trace form data of K[x]/(f) over any field: the values of T_2 and the
/// polar matrix on 1, x, ..., x^(d-1), and the values of T_1.
#[allow(clippy::type_complexity)]
pub fn etale_trace_data<F: FieldOps>(k: &F, coeffs: &[F::E]) -> (Vec<F::E>, Vec<Vec<F::E>>, Vec<F::E>) {
    let d = coeffs.len() - 1;
    // x^m mod f as coordinate vectors, m < 2d - 1
    let mut powers: Vec<Vec<F::E>> = Vec::with_capacity(2 * d);
    for m in 0..d {
        powers.push((0..d).map(|r| if r == m { k.one() } else { k.zero() }).collect());
    }
    for m in d..2 * d {
        let prev = &powers[m - 1];
        let top = prev[d - 1].clone();
        let mut next = vec![k.zero(); d];
        next[1..d].clone_from_slice(&prev[..d - 1]);
        for (r, c) in coeffs[..d].iter().enumerate() {
            let t = k.mul(&top, c);
            next[r] = k.add(&next[r], &t);
        }
        powers.push(next);
    }
    let mut t1 = Vec::with_capacity(d);
    let mut t2 = Vec::with_capacity(d);
    for i in 0..d {
        let m: Vec<Vec<F::E>> = (0..d).map(|r| (0..d).map(|j| powers[i + j][r].clone()).collect()).collect();
        let cp = crate::field::linalg::charpoly(k, &m);
        t1.push(cp[d - 1].clone());
        t2.push(if d >= 2 { cp[d - 2].clone() } else { k.zero() });
    }
    let trace = |v: &[F::E]| v.iter().zip(&t1).fold(k.zero(), |s, (a, t)| k.add(&s, &k.mul(a, t)));
    let polar = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { k.zero() } else { k.add(&trace(&powers[i + j]), &k.mul(&t1[i], &t1[j])) })
                .collect()
        })
        .collect();
    (t2, polar, t1)
}

/// Restriction to Ker t1 on the basis e_k + (t1_k / t1_p) e_p, k != p.
pub fn restrict_to_kernel<F: FieldOps>(
    k: &F,
    diag: &[F::E],
    polar: &[Vec<F::E>],
    t1: &[F::E],
) -> Option<FormData<F::E>> {
    let p = t1.iter().position(|t| !k.is_zero(t))?;
    let inv = k.inv(&t1[p])?;
    let idx: Vec<usize> = (0..t1.len()).filter(|&i| i != p).collect();
    let c: Vec<F::E> = idx.iter().map(|&i| k.mul(&t1[i], &inv)).collect();
    let new_diag = idx
        .iter()
        .zip(&c)
        .map(|(&i, ci)| {
            let a = k.add(&diag[i], &k.mul(&k.mul(ci, ci), &diag[p]));
            k.add(&a, &k.mul(ci, &polar[i][p]))
        })
        .collect();
    let new_polar = idx
        .iter()
        .zip(&c)
        .map(|(&i, ci)| {
            idx.iter()
                .zip(&c)
                .map(|(&j, cj)| {
                    if i == j {
                        return k.zero();
                    }
                    let s = k.add(&polar[i][j], &k.mul(cj, &polar[i][p]));
                    k.add(&s, &k.mul(ci, &polar[p][j]))
                })
                .collect()
        })
        .collect();
    Some((new_diag, new_polar))
}

/// sum a_i b_i over a symplectic block decomposition, before reduction
/// modulo wp; `None` when the form is singular.
pub fn arf_sum<F: FieldOps>(k: &F, diag: &[F::E], polar: &[Vec<F::E>]) -> Option<F::E> {
    let n = diag.len();
    let mut q = diag.to_vec();
    let mut b: Vec<Vec<F::E>> = polar.to_vec();
    let mut active: Vec<bool> = vec![true; n];
    let mut acc = k.zero();
    for i in 0..n {
        if !active[i] {
            continue;
        }
        let j = (0..n).find(|&j| active[j] && j != i && !k.is_zero(&b[i][j]))?;
        // scale e_j so that B(e_i, e_j) = 1
        let c = k.inv(&b[i][j])?;
        q[j] = k.mul(&q[j], &k.mul(&c, &c));
        for l in 0..n {
            b[j][l] = k.mul(&b[j][l], &c);
            b[l][j] = b[j][l].clone();
        }
        active[i] = false;
        active[j] = false;
        acc = k.add(&acc, &k.mul(&q[i], &q[j]));
        let rest: Vec<usize> = (0..n).filter(|&l| active[l]).collect();
        let alpha: Vec<F::E> = rest.iter().map(|&l| b[l][j].clone()).collect();
        let beta: Vec<F::E> = rest.iter().map(|&l| b[l][i].clone()).collect();
        for (x, &l) in rest.iter().enumerate() {
            let (a, be) = (&alpha[x], &beta[x]);
            let t = k.add(&k.mul(&k.mul(a, a), &q[i]), &k.mul(&k.mul(be, be), &q[j]));
            q[l] = k.add(&q[l], &k.add(&t, &k.mul(a, be)));
            for (y, &m) in rest.iter().enumerate() {
                if y <= x {
                    continue;
                }
                let upd = k.add(&k.mul(&alpha[y], be), &k.mul(a, &beta[y]));
                b[l][m] = k.add(&b[l][m], &upd);
                b[m][l] = b[l][m].clone();
            }
        }
        for &l in &rest {
            b[l][i] = k.zero();
            b[i][l] = k.zero();
            b[l][j] = k.zero();
            b[j][l] = k.zero();
        }
    }
    Some(acc)
}

#[cfg(feature = "rational")]
pub use rational::{galois_obstruction_rational, RationalGaloisCheck};

#[cfg(feature = "rational")]
mod rational {
    use super::*;
    use crate::field::rational::{Rational, RationalField};

    /// Result of [`galois_obstruction_rational`]; only the Arf comparison
    /// is available, so the verdict is `NotGalois` or `Inconclusive`.
    #[derive(Clone, Debug)]
    pub struct RationalGaloisCheck {
        pub verdict: GaloisVerdict,
        /// Unreduced Arf sum of the trace form.
        pub arf: Rational,
        pub galois_bit: bool,
    }

    /// Arf comparison over F_q(t) for a monic odd-degree polynomial given
    /// by its coefficients, constant term first. Irreducibility is assumed.
    pub fn galois_obstruction_rational(k: &RationalField, coeffs: &[Rational]) -> Result<RationalGaloisCheck> {
        let d = coeffs
            .len()
            .checked_sub(1)
            .filter(|d| d % 2 == 1)
            .ok_or_else(|| Error::InvalidExtension("an odd-degree defining polynomial is required".into()))?;
        if coeffs[d] != k.one() {
            return Err(Error::InvalidExtension("defining polynomial must be monic".into()));
        }
        let (diag, polar, t1) = etale_trace_data(k, coeffs);
        let (diag, polar) = restrict_to_kernel(k, &diag, &polar, &t1).expect("odd degree: T_1(1) = 1");
        let arf = arf_sum(k, &diag, &polar).ok_or(Error::SingularForm { radical_dim: 1 })?;
        let galois_bit = matches!(d % 8, 3 | 5);
        let diff = if galois_bit { k.add(&arf, &k.one()) } else { arf.clone() };
        let verdict = if k.wp_member(&diff) { GaloisVerdict::Inconclusive } else { GaloisVerdict::NotGalois };
        Ok(RationalGaloisCheck { verdict, arf, galois_bit })
    }
}

/// The audit of F = GF(4), f = x^3 + x + a, with the stated form [1, a].
#[derive(Clone, Debug)]
pub struct Example1Audit {
    pub field: Field,
    pub poly: Poly,
    pub factors: Vec<Poly>,
    pub roots: Vec<Elem>,
    pub check: GaloisCheck,
    pub stated_form: QuadraticForm,
    pub stated_arf: Elem,
}

pub fn example1_audit() -> Result<Example1Audit> {
    let field = Field::gf2().extend_str("a^2+a+1")?;
    let a = field.generator().expect("extension level");
    let poly = Poly::parse(&field, "x^3+x+a", "x")?;
    let check = galois_obstruction(&field, &poly)?;
    let stated_form = QuadraticForm::binary(&field, Elem::ONE, a);
    let stated_arf = stated_form.arf()?;
    Ok(Example1Audit {
        factors: poly::factor(&field, &poly),
        roots: poly::roots(&field, &poly),
        field,
        poly,
        check,
        stated_form,
        stated_arf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_galois_extensions_are_inconclusive() {
        let f2 = Field::gf2();
        for text in ["x^3+x+1", "x^5+x^2+1", "x^7+x+1"] {
            let c = galois_obstruction(&f2, &Poly::parse(&f2, text, "x").unwrap()).unwrap();
            assert_eq!(c.verdict, GaloisVerdict::Inconclusive, "{text}");
        }
    }

    #[test]
    fn audit_reports_factorization() {
        let audit = example1_audit().unwrap();
        assert!(matches!(audit.check.verdict, GaloisVerdict::NotAField { .. }));
        let a = audit.field.generator().unwrap();
        assert_eq!(audit.roots, vec![a + Elem::ONE]);
        assert_eq!(audit.check.form.dim(), 2);
        assert!(audit.check.degenerate);
    }

    #[test]
    fn generic_arf_matches_finite_reduction() {
        let f4 = Field::gf2().extend_str("a^2+a+1").unwrap();
        let p = Poly::parse(&f4, "x^5+x^2+a*x+1", "x").unwrap();
        let form = revoy_trace_form(&f4, &p).unwrap();
        let (d, b, t1) = etale_trace_data(&f4, p.coeffs());
        let (d, b) = restrict_to_kernel(&f4, &d, &b, &t1).unwrap();
        assert_eq!(d, form.diag());
        let s = arf_sum(&f4, &d, &b).unwrap();
        assert_eq!(f4.wp_class(s), form.arf().unwrap());
    }
}
