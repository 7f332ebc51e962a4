//! Quadratic forms over finite fields of characteristic two: evaluation,
//! block decomposition, Arf invariant and Witt classification.

mod clifford;
mod oracle;

use crate::error::{Error, Result};
use crate::field::{linalg, Elem, Field};

pub use clifford::{
    arf_via_even_clifford_center, clifford_algebra, clifford_invariant, clifford_symbols, even_clifford_algebra,
    quaternion_is_split, BrauerClass, QuaternionSymbol,
};
pub use oracle::{isotropic_split_oracle, OracleSplit};

/// q(sum x_i e_i) = sum x_i^2 q(e_i) + sum_{i<j} x_i x_j B(e_i, e_j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    field: Field,
    diag: Vec<Elem>,
    polar: Vec<Vec<Elem>>,
}

impl QuadraticForm {
    pub fn new(field: &Field, diag: Vec<Elem>, polar: Vec<Vec<Elem>>) -> Result<QuadraticForm> {
        let n = diag.len();
        if polar.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: polar.len() });
        }
        for (i, row) in polar.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            if !row[i].is_zero() || (0..i).any(|j| row[j] != polar[j][i]) {
                return Err(Error::InvalidForm("polar matrix must be alternating".into()));
            }
        }
        if diag.iter().chain(polar.iter().flatten()).any(|&c| !field.contains(c)) {
            return Err(Error::FieldMismatch);
        }
        Ok(QuadraticForm { field: field.clone(), diag, polar })
    }

    pub fn zero(field: &Field) -> QuadraticForm {
        QuadraticForm { field: field.clone(), diag: Vec::new(), polar: Vec::new() }
    }

    /// The binary form [a, b] = a x^2 + x y + b y^2.
    pub fn binary(field: &Field, a: Elem, b: Elem) -> QuadraticForm {
        QuadraticForm {
            field: field.clone(),
            diag: vec![a, b],
            polar: vec![vec![Elem::ZERO, Elem::ONE], vec![Elem::ONE, Elem::ZERO]],
        }
    }

    /// k copies of the hyperbolic plane [0, 0].
    pub fn hyperbolic(field: &Field, k: usize) -> QuadraticForm {
        (0..k).fold(QuadraticForm::zero(field), |acc, _| {
            acc.direct_sum(&QuadraticForm::binary(field, Elem::ZERO, Elem::ZERO)).unwrap()
        })
    }

    /// The diagonal (quasilinear) form <c_1, ..., c_k> with zero polar.
    pub fn quasilinear(field: &Field, values: Vec<Elem>) -> QuadraticForm {
        let n = values.len();
        QuadraticForm { field: field.clone(), diag: values, polar: vec![vec![Elem::ZERO; n]; n] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[Elem] {
        &self.diag
    }

    pub fn polar(&self) -> &[Vec<Elem>] {
        &self.polar
    }

    pub fn evaluate(&self, v: &[Elem]) -> Result<Elem> {
        self.check_len(v)?;
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for i in 0..v.len() {
            if v[i].is_zero() {
                continue;
            }
            acc += f.mul(f.square(v[i]), self.diag[i]);
            for j in i + 1..v.len() {
                if !v[j].is_zero() && !self.polar[i][j].is_zero() {
                    acc += f.mul(f.mul(v[i], v[j]), self.polar[i][j]);
                }
            }
        }
        Ok(acc)
    }

    /// x^T B y.
    pub fn polar_value(&self, x: &[Elem], y: &[Elem]) -> Result<Elem> {
        self.check_len(x)?;
        self.check_len(y)?;
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let row = &self.polar[i];
            let s = y.iter().zip(row).fold(Elem::ZERO, |s, (&yj, &b)| s + f.mul(yj, b));
            acc += f.mul(xi, s);
        }
        Ok(acc)
    }

    fn check_len(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    /// Orthogonal sum with block-diagonal polar matrix.
    pub fn direct_sum(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let (n, m) = (self.dim(), other.dim());
        let mut polar = vec![vec![Elem::ZERO; n + m]; n + m];
        for i in 0..n {
            polar[i][..n].copy_from_slice(&self.polar[i]);
        }
        for i in 0..m {
            polar[n + i][n..].copy_from_slice(&other.polar[i]);
        }
        let diag = [self.diag.as_slice(), other.diag.as_slice()].concat();
        Ok(QuadraticForm { field: self.field.clone(), diag, polar })
    }

    /// <c> q: both diagonal and polar multiplied by c.
    pub fn scale(&self, c: Elem) -> Result<QuadraticForm> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        Ok(QuadraticForm {
            field: f.clone(),
            diag: self.diag.iter().map(|&x| f.mul(x, c)).collect(),
            polar: self.polar.iter().map(|r| r.iter().map(|&x| f.mul(x, c)).collect()).collect(),
        })
    }

    /// The form restricted to the span of `basis` (dense coordinate rows).
    pub fn restrict(&self, basis: &[Vec<Elem>]) -> Result<QuadraticForm> {
        for v in basis {
            self.check_len(v)?;
        }
        let k = basis.len();
        let diag = basis.iter().map(|v| self.evaluate(v)).collect::<Result<Vec<_>>>()?;
        let mut polar = vec![vec![Elem::ZERO; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let b = self.polar_value(&basis[i], &basis[j])?;
                polar[i][j] = b;
                polar[j][i] = b;
            }
        }
        Ok(QuadraticForm { field: self.field.clone(), diag, polar })
    }

    /// Basis of the radical (kernel of the polar matrix).
    pub fn radical(&self) -> Vec<Vec<Elem>> {
        linalg::kernel(&self.field, &self.polar, self.dim())
    }

    pub fn is_nonsingular(&self) -> bool {
        self.reduce(false).radical_values.is_empty()
    }

    /// Symplectic reduction into binary blocks plus radical, with the basis
    /// change recorded.
    pub fn block_decompose(&self) -> Decomposition {
        self.reduce(true)
    }

    pub(crate) fn reduce(&self, track: bool) -> Decomposition {
        let f = &self.field;
        let m = self.dim();
        let mut q = self.diag.clone();
        let mut p = self.polar.clone();
        let mut w: Vec<Vec<Elem>> = if track {
            (0..m).map(|i| (0..m).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect()).collect()
        } else {
            Vec::new()
        };
        let mut active = vec![true; m];
        let mut blocks = Vec::new();
        let mut row = 0;
        let mut kset: Vec<(usize, Elem, Elem)> = Vec::new();
        while row < m {
            if !active[row] {
                row += 1;
                continue;
            }
            let Some(j) = (row + 1..m).find(|&j| active[j] && !p[row][j].is_zero()) else {
                // a zero row stays zero under later updates
                row += 1;
                continue;
            };
            let i = row;
            let c = f.inv(p[i][j]).expect("nonzero");
            if c != Elem::ONE {
                q[j] = f.mul(q[j], f.square(c));
                for k in 0..m {
                    p[j][k] = f.mul(p[j][k], c);
                    p[k][j] = p[j][k];
                }
                if track {
                    for x in w[j].iter_mut() {
                        *x = f.mul(*x, c);
                    }
                }
            }
            active[i] = false;
            active[j] = false;
            // w_k <- w_k + alpha_k w_i + beta_k w_j clears both pivot columns
            kset.clear();
            for k in 0..m {
                if active[k] && (!p[k][i].is_zero() || !p[k][j].is_zero()) {
                    kset.push((k, p[k][j], p[k][i]));
                }
            }
            let (qi, qj) = (q[i], q[j]);
            let (wi, wj) = if track { (w[i].clone(), w[j].clone()) } else { Default::default() };
            for &(k, alpha, beta) in &kset {
                q[k] += f.mul(f.square(alpha), qi) + f.mul(f.square(beta), qj) + f.mul(alpha, beta);
                p[k][i] = Elem::ZERO;
                p[k][j] = Elem::ZERO;
                p[i][k] = Elem::ZERO;
                p[j][k] = Elem::ZERO;
                if track {
                    for ((x, &a), &b) in w[k].iter_mut().zip(&wi).zip(&wj) {
                        *x += f.mul(alpha, a) + f.mul(beta, b);
                    }
                }
            }
            for (x, &(k, ak, bk)) in kset.iter().enumerate() {
                for &(l, al, bl) in &kset[x + 1..] {
                    let d = f.mul(al, bk) + f.mul(ak, bl);
                    if !d.is_zero() {
                        p[k][l] += d;
                        p[l][k] += d;
                    }
                }
            }
            blocks.push(Block {
                a: q[i],
                b: q[j],
                u: if track { w[i].clone() } else { Vec::new() },
                v: if track { w[j].clone() } else { Vec::new() },
            });
            row += 1;
        }
        let rad: Vec<usize> = (0..m).filter(|&k| active[k]).collect();
        Decomposition {
            blocks,
            radical_values: rad.iter().map(|&k| q[k]).collect(),
            radical: if track { rad.iter().map(|&k| w[k].clone()).collect() } else { Vec::new() },
        }
    }

    /// Arf invariant as the canonical representative modulo wp(F).
    pub fn arf(&self) -> Result<Elem> {
        let d = self.reduce(false);
        if !d.radical_values.is_empty() {
            return Err(Error::SingularForm { radical_dim: d.radical_values.len() });
        }
        Ok(self.field.wp_class(d.arf_sum(&self.field)))
    }

    /// (nonsingular dimension, Arf, radical dimension). For singular forms
    /// the Arf entry is that of the nonsingular block part.
    pub fn witt_class(&self) -> WittClass {
        let d = self.reduce(false);
        WittClass {
            field: self.field.clone(),
            dim: 2 * d.blocks.len(),
            arf: self.field.wp_class(d.arf_sum(&self.field)),
            radical_dim: d.radical_values.len(),
        }
    }

    pub fn is_witt_equivalent(&self, other: &QuadraticForm) -> bool {
        let (a, b) = (self.witt_class(), other.witt_class());
        a.radical_dim == 0 && b.radical_dim == 0 && a.arf == b.arf && a.field == b.field
    }

    pub fn is_isometric(&self, other: &QuadraticForm) -> bool {
        self.dim() == other.dim() && self.is_witt_equivalent(other)
    }

    /// The form as a polynomial in x1, ..., xn.
    pub fn format_poly(&self) -> String {
        let f = &self.field;
        let coeff = |c: Elem, mono: String| {
            let s = f.format(c);
            if c == Elem::ONE {
                mono
            } else if s.contains('+') {
                format!("({s})*{mono}")
            } else {
                format!("{s}*{mono}")
            }
        };
        let mut terms = Vec::new();
        for i in 0..self.dim() {
            if !self.diag[i].is_zero() {
                terms.push(coeff(self.diag[i], format!("x{}^2", i + 1)));
            }
            for j in i + 1..self.dim() {
                if !self.polar[i][j].is_zero() {
                    terms.push(coeff(self.polar[i][j], format!("x{}*x{}", i + 1, j + 1)));
                }
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// One binary block [a, b] on the pair (u, v) with B(u, v) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub a: Elem,
    pub b: Elem,
    pub u: Vec<Elem>,
    pub v: Vec<Elem>,
}

/// Output of [`QuadraticForm::block_decompose`]. Basis vectors are in the
/// coordinates of the original form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub blocks: Vec<Block>,
    pub radical: Vec<Vec<Elem>>,
    pub radical_values: Vec<Elem>,
}

impl Decomposition {
    /// sum a_i b_i, not yet reduced modulo wp(F).
    pub fn arf_sum(&self, f: &Field) -> Elem {
        self.blocks.iter().fold(Elem::ZERO, |s, b| s + f.mul(b.a, b.b))
    }
}

/// Witt class of a form over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittClass {
    pub field: Field,
    /// Dimension of the nonsingular part (even).
    pub dim: usize,
    /// 0 or the canonical nonresidue of the field.
    pub arf: Elem,
    pub radical_dim: usize,
}

impl WittClass {
    pub fn arf_bit(&self) -> u8 {
        self.field.absolute_trace(self.arf).0 as u8
    }

    /// Number of hyperbolic planes in the Witt decomposition.
    pub fn hyperbolic_planes(&self) -> usize {
        if self.arf.is_zero() {
            self.dim / 2
        } else {
            self.dim / 2 - 1
        }
    }

    pub fn anisotropic_dim(&self) -> usize {
        if self.arf.is_zero() {
            0
        } else {
            2
        }
    }

    /// Representative form: k H, or <1>[1, c] + (k-1) H with c the
    /// canonical nonresidue.
    pub fn representative(&self) -> QuadraticForm {
        let f = &self.field;
        let h = QuadraticForm::hyperbolic(f, self.hyperbolic_planes());
        if self.arf.is_zero() {
            h
        } else {
            QuadraticForm::binary(f, Elem::ONE, self.arf).direct_sum(&h).unwrap()
        }
    }
}
