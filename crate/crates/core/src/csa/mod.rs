//! Finite-dimensional associative algebras given by structure constants,
//! with the constructions used throughout: matrix algebras, quaternion
//! algebras, tensor products, crossed products and monogenic algebras.

mod construct;
mod crossed;
mod trace;

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{linalg, Elem, Field};
use crate::quadform::QuaternionSymbol;

pub use construct::{matrix_algebra, monogenic_algebra, quaternion_algebra, tensor_product};
pub use crossed::{b_subspace_form, crossed_product, crossed_splitting_rep, Cocycle, CrossedProduct};
pub use trace::{
    reduced_charpoly, reduced_charpoly_via, restrict_sparse, second_trace_form, t2_form, trace_kernel,
    trace_zero_subspace, ReducedCharPoly, SplittingModule, TraceForm, TraceRoute, Traces, REGULAR_ROUTE_MAX_DIM,
};

/// A sparse vector: (basis index, coefficient) pairs with nonzero
/// coefficients.
pub type SparseVec = Vec<(usize, Elem)>;

pub fn to_dense(v: &SparseVec, dim: usize) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; dim];
    for &(i, c) in v {
        out[i] += c;
    }
    out
}

pub fn to_sparse(v: &[Elem]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i, c)).collect()
}

/// Associative algebra with basis e_0..e_{m-1} and e_i e_j = sum_k c_ijk e_k.
#[derive(Clone)]
pub struct Algebra {
    field: Field,
    dim: usize,
    // per left index i: (j, k, c_ijk) with c_ijk != 0
    table: Vec<Vec<(u32, u32, Elem)>>,
    identity: Vec<Elem>,
    degree: Option<usize>,
    label: String,
    basis_labels: Vec<String>,
    brauer: Option<Vec<QuaternionSymbol>>,
    traces: OnceLock<Arc<Traces>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra")
            .field("label", &self.label)
            .field("dim", &self.dim)
            .field("degree", &self.degree)
            .finish()
    }
}

impl Algebra {
    /// Builds an algebra from structure constants `(i, j, k, c)`; repeated
    /// entries accumulate.
    pub fn from_structure(
        field: Field,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Elem)>,
        identity: Vec<Elem>,
        label: impl Into<String>,
    ) -> Result<Algebra> {
        if identity.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: identity.len() });
        }
        let mut dense: Vec<std::collections::BTreeMap<(u32, u32), Elem>> = vec![Default::default(); dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::DimensionMismatch { expected: dim, got: i.max(j).max(k) + 1 });
            }
            if !field.contains(c) {
                return Err(Error::FieldMismatch);
            }
            *dense[i].entry((j as u32, k as u32)).or_default() += c;
        }
        let table = dense
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, c)| !c.is_zero()).map(|((j, k), c)| (j, k, c)).collect())
            .collect();
        Ok(Algebra {
            field,
            dim,
            table,
            identity,
            degree: None,
            label: label.into(),
            basis_labels: (0..dim).map(|i| format!("e{i}")).collect(),
            brauer: None,
            traces: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Degree n (dim = n^2) when the algebra is flagged central simple.
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    /// The known Brauer class as quaternion symbols, when the construction
    /// determines one (split algebras: empty).
    pub fn brauer_symbols(&self) -> Option<&[QuaternionSymbol]> {
        self.brauer.as_deref()
    }

    pub fn identity(&self) -> &[Elem] {
        &self.identity
    }

    pub(crate) fn with_basis_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.basis_labels = labels;
        self
    }

    pub(crate) fn with_brauer(mut self, symbols: Option<Vec<QuaternionSymbol>>) -> Self {
        self.brauer = symbols;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Flags the algebra as central simple of degree sqrt(dim). The caller
    /// vouches for the flag; [`Algebra::sanity_check_csa`] verifies it.
    pub fn flag_csa(mut self) -> Result<Self> {
        let n = (self.dim as f64).sqrt().round() as usize;
        if n * n != self.dim {
            return Err(Error::NotCsa(format!("dimension {} is not a perfect square", self.dim)));
        }
        self.degree = Some(n);
        Ok(self)
    }

    pub(crate) fn table_row(&self, i: usize) -> &[(u32, u32, Elem)] {
        &self.table[i]
    }

    /// Number of nonzero structure constants.
    pub fn nnz(&self) -> usize {
        self.table.iter().map(Vec::len).sum()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; self.dim];
        v[i] = Elem::ONE;
        v
    }

    pub fn zero_vector(&self) -> Vec<Elem> {
        vec![Elem::ZERO; self.dim]
    }

    pub fn scalar(&self, c: Elem) -> Vec<Elem> {
        self.identity.iter().map(|&x| self.field.mul(x, c)).collect()
    }

    pub fn add(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        x.iter().zip(y).map(|(&a, &b)| a + b).collect()
    }

    pub fn scale(&self, c: Elem, x: &[Elem]) -> Vec<Elem> {
        x.iter().map(|&a| self.field.mul(a, c)).collect()
    }

    pub fn mul(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &(j, k, c) in &self.table[i] {
                let yj = y[j as usize];
                if !yj.is_zero() {
                    out[k as usize] += f.mul(xi, f.mul(yj, c));
                }
            }
        }
        out
    }

    /// e_i * y
    pub fn basis_mul(&self, i: usize, y: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.dim];
        for &(j, k, c) in &self.table[i] {
            let yj = y[j as usize];
            if !yj.is_zero() {
                out[k as usize] += f.mul(yj, c);
            }
        }
        out
    }

    pub fn pow(&self, x: &[Elem], mut e: u64) -> Vec<Elem> {
        let mut acc = self.identity.clone();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Elem> {
        (0..self.dim).map(|_| self.field.random(rng)).collect()
    }

    /// Matrix of y -> x y in the algebra basis.
    pub fn left_regular_matrix(&self, x: &[Elem]) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let mut m = vec![vec![Elem::ZERO; self.dim]; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &(j, k, c) in &self.table[i] {
                m[k as usize][j as usize] += f.mul(xi, c);
            }
        }
        m
    }

    /// First basis triple violating associativity, checking every triple
    /// when `dim^3` is small and a seeded sample of `samples` triples
    /// otherwise.
    pub fn associativity_witness(&self, samples: usize, seed: u64) -> Option<(usize, usize, usize)> {
        let m = self.dim;
        let check = |i: usize, j: usize, k: usize| {
            let ej = self.basis_vector(j);
            let ek = self.basis_vector(k);
            let left = self.mul(&self.basis_mul(i, &ej), &ek);
            let right = self.basis_mul(i, &self.basis_mul(j, &ek));
            left != right
        };
        if m * m * m <= 600_000 {
            for i in 0..m {
                for j in 0..m {
                    // (e_i e_j) e_k for all k at once: compare rows of the
                    // two regular actions
                    let ej = self.basis_vector(j);
                    let eij = self.basis_mul(i, &ej);
                    for k in 0..m {
                        let ek = self.basis_vector(k);
                        let left = self.mul(&eij, &ek);
                        let right = self.basis_mul(i, &self.basis_mul(j, &ek));
                        if left != right {
                            return Some((i, j, k));
                        }
                    }
                }
            }
            None
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m)))
                .find(|&(i, j, k)| check(i, j, k))
        }
    }

    fn identity_ok(&self) -> bool {
        (0..self.dim).all(|i| {
            let e = self.basis_vector(i);
            self.mul(&self.identity, &e) == e && self.mul(&e, &self.identity) == e
        })
    }

    /// Commutant of the given elements: { z : z g = g z for all g }.
    pub fn commutant(&self, gens: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        let m = self.dim;
        let f = &self.field;
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        for g in gens {
            // column i of the constraint block: e_i g - g e_i
            let cols: Vec<Vec<Elem>> = (0..m)
                .map(|i| {
                    let e = self.basis_vector(i);
                    self.add(&self.mul(&e, g), &self.mul(g, &e))
                })
                .collect();
            for k in 0..m {
                rows.push((0..m).map(|i| cols[i][k]).collect());
            }
            // keep the system small
            let piv = linalg::rref(f, &mut rows);
            rows.truncate(piv.len());
        }
        linalg::kernel(f, &rows, m)
    }

    /// Basis of the center. Uses the whole basis as generator set for small
    /// algebras and seeded random elements (whose commutant contains the
    /// center) for large ones.
    pub fn center(&self) -> Vec<Vec<Elem>> {
        if self.dim <= 128 {
            let gens: Vec<Vec<Elem>> = (0..self.dim).map(|i| self.basis_vector(i)).collect();
            return self.commutant(&gens);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut gens = Vec::new();
        let mut cur = Vec::new();
        for _ in 0..6 {
            gens.push(self.random_element(&mut rng));
            cur = self.commutant(&gens);
            if cur.len() <= 1 {
                break;
            }
        }
        cur
    }

    pub fn sanity_check_csa(&self) -> CsaReport {
        let assoc = self.associativity_witness(20_000, 0);
        let identity_ok = self.identity_ok();
        let n = (self.dim as f64).sqrt().round() as usize;
        let square = n * n == self.dim;
        let center_dim = self.center().len();
        CsaReport {
            associativity_witness: assoc,
            identity_ok,
            square_dim: square,
            center_dim,
            passed: assoc.is_none() && identity_ok && square && center_dim == 1,
        }
    }
}

/// Result of [`Algebra::sanity_check_csa`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsaReport {
    pub associativity_witness: Option<(usize, usize, usize)>,
    pub identity_ok: bool,
    pub square_dim: bool,
    pub center_dim: usize,
    pub passed: bool,
}

/// A subspace of an algebra, spanned by sparse rows.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn whole(dim: usize) -> Subspace {
        Subspace { ambient_dim: dim, basis: (0..dim).map(|i| vec![(i, Elem::ONE)]).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dense_basis(&self) -> Vec<Vec<Elem>> {
        self.basis.iter().map(|v| to_dense(v, self.ambient_dim)).collect()
    }
}
