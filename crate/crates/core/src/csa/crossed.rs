//! Crossed products (E, G, Phi) for a cyclic extension E/F of finite fields,
//! G generated by the relative Frobenius.

use crate::error::{Error, Result};
use crate::field::{linalg::Matrix, Elem, Field};
use crate::quadform::QuadraticForm;

use super::{trace, Algebra};

/// A normalized 2-cocycle G x G -> E*, indexed by Frobenius exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cocycle {
    Trivial,
    /// Phi(s^i, s^j) = 1 if i + j < d, else `a` (a nonzero in F).
    Cyclic(Elem),
    Table(Vec<Vec<Elem>>),
}

impl Cocycle {
    pub fn table(&self, d: usize) -> Vec<Vec<Elem>> {
        match self {
            Cocycle::Trivial => vec![vec![Elem::ONE; d]; d],
            Cocycle::Cyclic(a) => {
                (0..d).map(|i| (0..d).map(|j| if i + j < d { Elem::ONE } else { *a }).collect()).collect()
            }
            Cocycle::Table(t) => t.clone(),
        }
    }
}

/// A crossed-product algebra together with its defining data. Basis index
/// `i * d + t` is u_{s^i} g^t, g the generator of E over F.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    pub algebra: Algebra,
    pub ext: Field,
    pub base: Field,
    pub cocycle: Vec<Vec<Elem>>,
}

impl CrossedProduct {
    pub fn degree(&self) -> usize {
        self.ext.degree_over_parent()
    }

    /// Coordinates of u_{s^i} c.
    pub fn element(&self, i: usize, c: Elem) -> Vec<Elem> {
        let d = self.degree();
        let mut v = vec![Elem::ZERO; d * d];
        v[i * d..(i + 1) * d].copy_from_slice(&self.ext.coeffs(c));
        v
    }

    /// The E-coefficient c_i of x = sum_i u_{s^i} c_i.
    pub fn component(&self, x: &[Elem], i: usize) -> Elem {
        let d = self.degree();
        self.ext.from_coeffs(&x[i * d..(i + 1) * d])
    }
}

/// Builds (E, <s>, Phi) with (u_s c)(u_t e) = u_{st} Phi(s, t) t(c) e.
pub fn crossed_product(ext: &Field, cocycle: Cocycle) -> Result<CrossedProduct> {
    let base = ext.parent().ok_or_else(|| Error::InvalidExtension("GF2 has no base field".into()))?;
    let d = ext.degree_over_parent();
    let phi = cocycle.table(d);
    if phi.len() != d || phi.iter().any(|r| r.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: phi.len() });
    }
    if phi.iter().flatten().any(|&c| c.is_zero() || !ext.contains(c)) {
        return Err(Error::InvalidExtension("cocycle values must be nonzero elements of E".into()));
    }
    if (0..d).any(|i| phi[0][i] != Elem::ONE || phi[i][0] != Elem::ONE) {
        return Err(Error::InvalidExtension("cocycle must be normalized".into()));
    }
    let g = ext.generator().expect("extension level");
    let gpow: Vec<Elem> = (0..d).map(|t| ext.pow(g, t as u64)).collect();
    let mut entries = Vec::new();
    for i in 0..d {
        for s in 0..d {
            for j in 0..d {
                let c = ext.relative_frobenius(gpow[s], j);
                let pc = ext.mul(phi[i][j], c);
                for t in 0..d {
                    let e = ext.mul(pc, gpow[t]);
                    let k = (i + j) % d;
                    for (r, &x) in ext.coeffs(e).iter().enumerate() {
                        if !x.is_zero() {
                            entries.push((i * d + s, j * d + t, k * d + r, x));
                        }
                    }
                }
            }
        }
    }
    let mut identity = vec![Elem::ZERO; d * d];
    identity[0] = Elem::ONE;
    let gname = ext.name().to_string();
    let labels = (0..d)
        .flat_map(|i| {
            let gname = gname.clone();
            (0..d).map(move |t| match t {
                0 => format!("u{i}"),
                1 => format!("u{i}*{gname}"),
                _ => format!("u{i}*{gname}^{t}"),
            })
        })
        .collect();
    let label = format!("Crossed({})", ext.modulus().format(&base, &gname));
    let algebra = Algebra::from_structure(base.clone(), d * d, entries, identity, label)?.with_basis_labels(labels);
    if let Some((i, j, k)) = algebra.associativity_witness(20_000, 0) {
        return Err(Error::CocycleInvalid(i, j, k));
    }
    let brauer = (phi.iter().flatten().all(|&c| c == Elem::ONE)).then(Vec::new);
    let algebra = algebra.with_brauer(brauer).flag_csa()?;
    Ok(CrossedProduct { algebra, ext: ext.clone(), base, cocycle: phi })
}

/// The matrix [d_{s,t}] over E with d_{s,t} = Phi(s t^-1, t) t(c_{s t^-1}),
/// rows and columns in Frobenius-power order.
pub fn crossed_splitting_rep(cp: &CrossedProduct, x: &[Elem]) -> Matrix<Elem> {
    let d = cp.degree();
    let e = &cp.ext;
    (0..d)
        .map(|a| {
            (0..d)
                .map(|b| {
                    let r = (a + d - b) % d;
                    e.mul(cp.cocycle[r][b], e.relative_frobenius(cp.component(x, r), b))
                })
                .collect()
        })
        .collect()
}

/// t_2 on B = span of u_r E over the elements r of order two (r = s^(d/2)).
/// Odd degree: no such r, the 0-dimensional form.
pub fn b_subspace_form(cp: &CrossedProduct) -> Result<QuadraticForm> {
    let d = cp.degree();
    if d % 2 == 1 {
        return Ok(QuadraticForm::zero(&cp.base));
    }
    let r = d / 2;
    let idx: Vec<usize> = (0..d).map(|t| r * d + t).collect();
    trace::t2_form_on(&cp.algebra, &idx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> Field {
        Field::gf2().extend_str("b^3+b+1").unwrap()
    }

    #[test]
    fn trivial_crossed_products_are_csas() {
        let cp = crossed_product(&gf8(), Cocycle::Trivial).unwrap();
        assert_eq!(cp.algebra.dim(), 9);
        assert!(cp.algebra.sanity_check_csa().passed);
        let f4 = Field::gf2().extend_str("a^2+a+1").unwrap();
        let cp = crossed_product(&f4, Cocycle::Cyclic(Elem::ONE)).unwrap();
        assert!(cp.algebra.sanity_check_csa().passed);
    }

    #[test]
    fn corrupted_cocycle_is_rejected() {
        let e = gf8();
        let b = e.generator().unwrap();
        let mut t = Cocycle::Trivial.table(3);
        t[1][1] = b;
        assert!(matches!(crossed_product(&e, Cocycle::Table(t)), Err(Error::CocycleInvalid(..))));
    }

    #[test]
    fn splitting_rep_of_field_element_is_diagonal() {
        let e = gf8();
        let cp = crossed_product(&e, Cocycle::Trivial).unwrap();
        let c = e.generator().unwrap();
        let m = crossed_splitting_rep(&cp, &cp.element(0, c));
        for a in 0..3 {
            for b in 0..3 {
                let want = if a == b { e.relative_frobenius(c, a) } else { Elem::ZERO };
                assert_eq!(m[a][b], want);
            }
        }
        let one = crossed_splitting_rep(&cp, cp.algebra.identity());
        assert_eq!(one, crate::field::linalg::identity(&e, 3));
    }

    #[test]
    fn splitting_rep_is_multiplicative() {
        use rand::SeedableRng;
        let e = Field::gf2().extend_str("a^2+a+1").unwrap().extend_str("b^2+b+a").unwrap();
        let a = e.parent().unwrap().generator().unwrap();
        let cp = crossed_product(&e, Cocycle::Cyclic(a)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x = cp.algebra.random_element(&mut rng);
            let y = cp.algebra.random_element(&mut rng);
            let xy = crossed_splitting_rep(&cp, &cp.algebra.mul(&x, &y));
            let prod =
                crate::field::linalg::mat_mul(&e, &crossed_splitting_rep(&cp, &x), &crossed_splitting_rep(&cp, &y));
            assert_eq!(xy, prod);
        }
    }
}
