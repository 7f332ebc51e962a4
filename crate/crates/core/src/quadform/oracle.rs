//! Witt decomposition by exhaustive search for isotropic vectors.

use super::{QuadraticForm, WittClass};
use crate::error::{Error, Result};
use crate::field::{linalg, Elem};

/// Outcome of [`isotropic_split_oracle`].
#[derive(Clone, Debug)]
pub struct OracleSplit {
    pub planes: usize,
    /// The anisotropic form left after splitting off `planes` copies of H.
    pub kernel: QuadraticForm,
}

impl OracleSplit {
    pub fn witt_class(&self) -> WittClass {
        let f = self.kernel.field().clone();
        let arf = if self.kernel.dim() == 0 { Elem::ZERO } else { f.nonresidue() };
        WittClass { field: f, dim: 2 * self.planes + self.kernel.dim(), arf, radical_dim: 0 }
    }
}

/// Splits hyperbolic planes off a nonsingular form by brute force: find an
/// isotropic v, complete it to a hyperbolic pair (v, w'), pass to the
/// orthogonal complement and repeat.
pub fn isotropic_split_oracle(q: &QuadraticForm) -> Result<OracleSplit> {
    let f = q.field().clone();
    if q.dim() > 6 || f.order() > 8 {
        return Err(Error::SearchSpaceTooLarge(format!("dim {} over a field of order {}", q.dim(), f.order())));
    }
    let radical_dim = q.radical().len();
    if radical_dim > 0 {
        return Err(Error::SingularForm { radical_dim });
    }
    let mut cur = q.clone();
    let mut planes = 0;
    loop {
        let d = cur.dim();
        let Some(v) = find_isotropic(&cur) else {
            return Ok(OracleSplit { planes, kernel: cur });
        };
        let e = |k: usize| -> Vec<Elem> { (0..d).map(|i| if i == k { Elem::ONE } else { Elem::ZERO }).collect() };
        let (k, bvk) = (0..d)
            .map(|k| (k, cur.polar_value(&v, &e(k)).unwrap()))
            .find(|(_, b)| !b.is_zero())
            .expect("nonsingular form has no isotropic radical vector");
        // w with B(v, w) = 1, then w' = w + q(w) v is isotropic
        let w: Vec<Elem> = e(k).iter().map(|&x| f.mul(x, f.inv(bvk).unwrap())).collect();
        let qw = cur.evaluate(&w)?;
        let w2: Vec<Elem> = w.iter().zip(&v).map(|(&a, &b)| a + f.mul(qw, b)).collect();
        debug_assert!(cur.evaluate(&w2)?.is_zero());
        let mut comp: Vec<Vec<Elem>> = (0..d)
            .map(|k| {
                let ek = e(k);
                let s = cur.polar_value(&ek, &w2).unwrap();
                let t = cur.polar_value(&ek, &v).unwrap();
                (0..d).map(|i| ek[i] + f.mul(s, v[i]) + f.mul(t, w2[i])).collect()
            })
            .collect();
        let r = linalg::rref(&f, &mut comp);
        comp.truncate(r.len());
        debug_assert_eq!(comp.len(), d - 2);
        cur = cur.restrict(&comp)?;
        planes += 1;
    }
}

fn find_isotropic(q: &QuadraticForm) -> Option<Vec<Elem>> {
    let f = q.field();
    let d = q.dim();
    let order = f.order();
    let total = order.checked_pow(d as u32)?;
    (1..total).find_map(|mut idx| {
        let v: Vec<Elem> = (0..d)
            .map(|_| {
                let x = Elem(idx % order);
                idx /= order;
                x
            })
            .collect();
        q.evaluate(&v).unwrap().is_zero().then_some(v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn oracle_examples() {
        let f2 = Field::gf2();
        let h = isotropic_split_oracle(&QuadraticForm::hyperbolic(&f2, 1)).unwrap();
        assert_eq!((h.planes, h.kernel.dim()), (1, 0));
        let b11 = QuadraticForm::binary(&f2, Elem::ONE, Elem::ONE);
        let r = isotropic_split_oracle(&b11).unwrap();
        assert_eq!((r.planes, r.kernel.dim()), (0, 2));
        let r = isotropic_split_oracle(&b11.direct_sum(&b11).unwrap()).unwrap();
        assert_eq!((r.planes, r.kernel.dim()), (2, 0));
    }

    #[test]
    fn oracle_refuses_large_inputs() {
        let f2 = Field::gf2();
        let big = QuadraticForm::hyperbolic(&f2, 4);
        assert!(matches!(isotropic_split_oracle(&big), Err(Error::SearchSpaceTooLarge(_))));
    }
}
