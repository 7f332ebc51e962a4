//! Reduced characteristic polynomials and the second trace form.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{linalg, poly, Elem, Field, Poly};
use crate::quadform::QuadraticForm;

use super::{Algebra, SparseVec, Subspace};

/// Algebras up to this dimension use the regular representation by
/// default; larger ones go through a splitting module.
pub const REGULAR_ROUTE_MAX_DIM: usize = 100;

/// How reduced characteristic polynomials are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceRoute {
    /// n-th root of the characteristic polynomial of left multiplication.
    Regular,
    /// Characteristic polynomial on a minimal left ideal.
    Splitting,
    Auto,
}

impl TraceRoute {
    fn resolve(self, alg: &Algebra) -> TraceRoute {
        match self {
            TraceRoute::Auto if alg.dim() <= REGULAR_ROUTE_MAX_DIM => TraceRoute::Regular,
            TraceRoute::Auto => TraceRoute::Splitting,
            r => r,
        }
    }
}

/// Prd(x) = x^n + t_1 x^(n-1) + t_2 x^(n-2) + ... + t_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedCharPoly {
    poly: Poly,
}

impl ReducedCharPoly {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap()
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// t_k, the coefficient of x^(n-k); t_0 = 1.
    pub fn t(&self, k: usize) -> Elem {
        let n = self.degree();
        if k > n {
            Elem::ZERO
        } else {
            self.poly.coeff(n - k)
        }
    }

    pub fn t1(&self) -> Elem {
        self.t(1)
    }

    pub fn t2(&self) -> Elem {
        self.t(2)
    }

    /// Reduced norm t_n.
    pub fn nrd(&self) -> Elem {
        self.t(self.degree())
    }
}

fn csa_degree(alg: &Algebra) -> Result<usize> {
    alg.degree().ok_or_else(|| Error::NotCsa(format!("{} is not flagged central simple", alg.label())))
}

fn regular_charpoly(alg: &Algebra, x: &[Elem]) -> Result<ReducedCharPoly> {
    let n = csa_degree(alg)?;
    let f = alg.field();
    let cp = Poly::new(linalg::charpoly(f, &alg.left_regular_matrix(x)));
    Ok(ReducedCharPoly { poly: poly::nth_root(f, &cp, n)? })
}

pub fn reduced_charpoly(alg: &Algebra, x: &[Elem]) -> Result<ReducedCharPoly> {
    reduced_charpoly_via(alg, x, TraceRoute::Auto)
}

pub fn reduced_charpoly_via(alg: &Algebra, x: &[Elem], route: TraceRoute) -> Result<ReducedCharPoly> {
    if x.len() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), got: x.len() });
    }
    match route.resolve(alg) {
        TraceRoute::Regular => regular_charpoly(alg, x),
        _ => {
            let traces = alg.traces()?;
            match &traces.module {
                Some(m) => Ok(m.reduced_charpoly(x)),
                None => SplittingModule::build(alg, 0)?.reduced_charpoly_checked(x),
            }
        }
    }
}

/// A minimal left ideal L = A z (z of rank one), giving A -> End_F(L), an
/// n x n matrix representation.
#[derive(Clone, Debug)]
pub struct SplittingModule {
    field: Field,
    n: usize,
    /// The n x n matrices of left multiplication by each basis vector.
    rho: Vec<Vec<Vec<Elem>>>,
}

impl SplittingModule {
    /// Picks seeded random x until the minimal polynomial of x has degree n
    /// and a simple root l in F; then z = (mu / (X - l))(x) has rank one.
    pub fn build(alg: &Algebra, seed: u64) -> Result<SplittingModule> {
        let n = csa_degree(alg)?;
        let f = alg.field().clone();
        let m = alg.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5b1e);
        for _ in 0..400 {
            let x = alg.random_element(&mut rng);
            let Some((powers, mu)) = minimal_polynomial(alg, &x, n) else { continue };
            let Some(lambda) = poly::roots(&f, &mu).into_iter().find(|&r| {
                let (p, _) = mu.divrem(&f, &Poly::linear(r)).unwrap();
                !p.eval(&f, r).is_zero()
            }) else {
                continue;
            };
            let (p, _) = mu.divrem(&f, &Poly::linear(lambda)).unwrap();
            let mut z = vec![Elem::ZERO; m];
            for (k, &c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    for (zi, &pi) in z.iter_mut().zip(&powers[k]) {
                        *zi += f.mul(c, pi);
                    }
                }
            }
            let Some((rows, pivots)) = left_ideal(alg, &z, n, &mut rng) else { continue };
            let rho = represent_basis(alg, &rows, &pivots);
            let module = SplittingModule { field: f.clone(), n, rho };
            if module.spot_check(alg, &mut rng) {
                return Ok(module);
            }
        }
        Err(Error::NotCsa(format!("no splitting module found for {}", alg.label())))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// The n x n matrix of x acting on L.
    pub fn represent(&self, x: &[Elem]) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let mut out = vec![vec![Elem::ZERO; self.n]; self.n];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (orow, rrow) in out.iter_mut().zip(&self.rho[i]) {
                for (o, &r) in orow.iter_mut().zip(rrow) {
                    *o += f.mul(xi, r);
                }
            }
        }
        out
    }

    pub fn reduced_charpoly(&self, x: &[Elem]) -> ReducedCharPoly {
        ReducedCharPoly { poly: Poly::new(linalg::charpoly(&self.field, &self.represent(x))) }
    }

    fn reduced_charpoly_checked(&self, x: &[Elem]) -> Result<ReducedCharPoly> {
        if x.len() != self.rho.len() {
            return Err(Error::DimensionMismatch { expected: self.rho.len(), got: x.len() });
        }
        Ok(self.reduced_charpoly(x))
    }

    fn spot_check(&self, alg: &Algebra, rng: &mut ChaCha8Rng) -> bool {
        if self.represent(alg.identity()) != linalg::identity(&self.field, self.n) {
            return false;
        }
        (0..3).all(|_| {
            let x = alg.random_element(rng);
            let y = alg.random_element(rng);
            self.represent(&alg.mul(&x, &y)) == linalg::mat_mul(&self.field, &self.represent(&x), &self.represent(&y))
        })
    }

    /// (t_1, t_2) of a basis vector, t_2 by sum_{a<b} m_aa m_bb + m_ab m_ba.
    fn basis_traces(&self, i: usize) -> (Elem, Elem) {
        let f = &self.field;
        let m = &self.rho[i];
        let mut t1 = Elem::ZERO;
        let mut t2 = Elem::ZERO;
        for a in 0..self.n {
            t1 += m[a][a];
            for b in a + 1..self.n {
                t2 += f.mul(m[a][a], m[b][b]) + f.mul(m[a][b], m[b][a]);
            }
        }
        (t1, t2)
    }
}

/// Powers 1, x, ..., x^n and the minimal polynomial, when it has degree n.
fn minimal_polynomial(alg: &Algebra, x: &[Elem], n: usize) -> Option<(Vec<Vec<Elem>>, Poly)> {
    let f = alg.field();
    let mut powers = vec![alg.identity().to_vec()];
    for k in 1..=n {
        let next = alg.mul(&powers[k - 1], x);
        powers.push(next);
    }
    // columns are the powers; a one-dimensional kernel is the minimal
    // polynomial of degree n
    let m = alg.dim();
    let mat: Vec<Vec<Elem>> = (0..m).map(|r| powers.iter().map(|p| p[r]).collect()).collect();
    let ker = linalg::kernel(f, &mat, n + 1);
    if ker.len() != 1 || ker[0][n].is_zero() {
        return None;
    }
    let mu = Poly::new(ker[0].clone()).monic(f);
    Some((powers, mu))
}

/// Reduced row basis of A z with its pivot columns, if it has dimension n.
fn left_ideal(alg: &Algebra, z: &[Elem], n: usize, rng: &mut ChaCha8Rng) -> Option<(Vec<Vec<Elem>>, Vec<usize>)> {
    let f = alg.field();
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut misses = 0;
    while rows.len() < n && misses < 32 {
        let r = alg.random_element(rng);
        let mut v = alg.mul(&r, z);
        for (row, &p) in rows.iter().zip(&pivots) {
            let c = v[p];
            if !c.is_zero() {
                for (vi, &ri) in v.iter_mut().zip(row) {
                    *vi += f.mul(c, ri);
                }
            }
        }
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            misses += 1;
            continue;
        };
        let inv = f.inv(v[p]).unwrap();
        for vi in v.iter_mut() {
            *vi = f.mul(*vi, inv);
        }
        for row in rows.iter_mut() {
            let c = row[p];
            if !c.is_zero() {
                for (ri, &vi) in row.iter_mut().zip(&v) {
                    *ri += f.mul(c, vi);
                }
            }
        }
        rows.push(v);
        pivots.push(p);
    }
    if rows.len() != n {
        return None;
    }
    // A z must not be larger than n
    let r = alg.random_element(rng);
    let v = alg.mul(&r, z);
    let mut w = v.clone();
    for (row, &p) in rows.iter().zip(&pivots) {
        let c = v[p];
        if !c.is_zero() {
            for (wi, &ri) in w.iter_mut().zip(row) {
                *wi += f.mul(c, ri);
            }
        }
    }
    w.iter().all(|c| c.is_zero()).then_some((rows, pivots))
}

fn represent_basis(alg: &Algebra, rows: &[Vec<Elem>], pivots: &[usize]) -> Vec<Vec<Vec<Elem>>> {
    let f = alg.field();
    let n = rows.len();
    let mut pivot_of = vec![usize::MAX; alg.dim()];
    for (r, &p) in pivots.iter().enumerate() {
        pivot_of[p] = r;
    }
    let mut rho = vec![vec![vec![Elem::ZERO; n]; n]; alg.dim()];
    for (c, l) in rows.iter().enumerate() {
        for (i, rho_i) in rho.iter_mut().enumerate() {
            for &(j, k, coef) in alg.table_row(i) {
                let r = pivot_of[k as usize];
                let lj = l[j as usize];
                if r != usize::MAX && !lj.is_zero() {
                    rho_i[r][c] += f.mul(coef, lj);
                }
            }
        }
    }
    rho
}

/// t_1 and t_2 on every basis vector.
#[derive(Debug)]
pub struct Traces {
    pub t1: Vec<Elem>,
    pub t2: Vec<Elem>,
    pub route: TraceRoute,
    module: Option<SplittingModule>,
}

impl Traces {
    pub fn compute(alg: &Algebra, route: TraceRoute) -> Result<Traces> {
        Traces::compute_seeded(alg, route, 0)
    }

    /// As [`Traces::compute`], with `seed` driving the search for a
    /// splitting module. The traces do not depend on the seed.
    pub fn compute_seeded(alg: &Algebra, route: TraceRoute, seed: u64) -> Result<Traces> {
        let n = csa_degree(alg)?;
        let route = route.resolve(alg);
        let m = alg.dim();
        if route == TraceRoute::Regular {
            let mut t1 = Vec::with_capacity(m);
            let mut t2 = Vec::with_capacity(m);
            for i in 0..m {
                let rc = regular_charpoly(alg, &alg.basis_vector(i))?;
                t1.push(rc.t1());
                t2.push(rc.t2());
            }
            return Ok(Traces { t1, t2, route, module: None });
        }
        let module = if n == 1 {
            SplittingModule {
                field: alg.field().clone(),
                n: 1,
                rho: (0..m).map(|i| vec![vec![alg.identity_coeff(i)]]).collect(),
            }
        } else {
            SplittingModule::build(alg, seed)?
        };
        let (t1, t2) = (0..m).map(|i| module.basis_traces(i)).unzip();
        Ok(Traces { t1, t2, route, module: Some(module) })
    }

    pub fn module(&self) -> Option<&SplittingModule> {
        self.module.as_ref()
    }
}

impl Algebra {
    /// Basis traces on the default route, computed once per algebra.
    pub fn traces(&self) -> Result<Arc<Traces>> {
        if let Some(t) = self.traces.get() {
            return Ok(t.clone());
        }
        let t = Arc::new(Traces::compute(self, TraceRoute::Auto)?);
        Ok(self.traces.get_or_init(|| t).clone())
    }

    /// Uses `traces` for all later trace computations on this algebra.
    pub fn with_traces(self, traces: Traces) -> Algebra {
        let alg = Algebra { traces: std::sync::OnceLock::new(), ..self };
        let _ = alg.traces.set(Arc::new(traces));
        alg
    }

    // coordinate of 1 when the algebra is F itself
    fn identity_coeff(&self, i: usize) -> Elem {
        let f = self.field();
        let one = self.identity()[0];
        if i == 0 {
            f.inv(one).unwrap_or(Elem::ZERO)
        } else {
            Elem::ZERO
        }
    }

    /// Reduced trace, linear in x.
    pub fn t1(&self, x: &[Elem]) -> Result<Elem> {
        let tr = self.traces()?;
        let f = self.field();
        Ok(x.iter().zip(&tr.t1).fold(Elem::ZERO, |s, (&a, &t)| s + f.mul(a, t)))
    }

    /// t_2(x) from the reduced characteristic polynomial.
    pub fn t2(&self, x: &[Elem]) -> Result<Elem> {
        Ok(reduced_charpoly(self, x)?.t2())
    }

    /// Polar form of t_2: b(x, y) = t_1(xy) + t_1(x) t_1(y).
    pub fn b_t2(&self, x: &[Elem], y: &[Elem]) -> Result<Elem> {
        let f = self.field();
        Ok(self.t1(&self.mul(x, y))? + f.mul(self.t1(x)?, self.t1(y)?))
    }
}

/// t_2 as a quadratic form on the basis vectors listed in `idx`, polar
/// values by t_1(e_i e_j) + t_1(e_i) t_1(e_j).
pub(crate) fn t2_form_on(alg: &Algebra, idx: &[usize]) -> Result<QuadraticForm> {
    let tr = alg.traces()?;
    let f = alg.field();
    let m = alg.dim();
    let mut pos = vec![usize::MAX; m];
    for (a, &i) in idx.iter().enumerate() {
        pos[i] = a;
    }
    let k = idx.len();
    let mut polar = vec![vec![Elem::ZERO; k]; k];
    for (a, &i) in idx.iter().enumerate() {
        for &(j, l, c) in alg.table_row(i) {
            let b = pos[j as usize];
            if b != usize::MAX {
                polar[a][b] += f.mul(c, tr.t1[l as usize]);
            }
        }
    }
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            polar[a][b] += f.mul(tr.t1[i], tr.t1[j]);
        }
    }
    let diag = idx.iter().map(|&i| tr.t2[i]).collect();
    QuadraticForm::new(f, diag, polar)
}

/// (A, t_2) on the whole algebra.
pub fn t2_form(alg: &Algebra) -> Result<QuadraticForm> {
    let idx: Vec<usize> = (0..alg.dim()).collect();
    t2_form_on(alg, &idx)
}

/// A_0 = Ker t_1, spanned by e_k + (t_1(e_k) / t_1(e_p)) e_p for k != p,
/// p the first basis index with t_1(e_p) != 0.
pub fn trace_zero_subspace(alg: &Algebra) -> Result<Subspace> {
    trace_kernel(alg.field(), &alg.traces()?.t1)
        .ok_or_else(|| Error::NotCsa("reduced trace vanishes identically".into()))
}

/// Kernel of the functional with values `t1` on the basis, in the sparse
/// shape described at [`trace_zero_subspace`].
pub fn trace_kernel(f: &Field, t1: &[Elem]) -> Option<Subspace> {
    let m = t1.len();
    let p = t1.iter().position(|t| !t.is_zero())?;
    let inv = f.inv(t1[p]).ok()?;
    let basis = (0..m)
        .filter(|&k| k != p)
        .map(|k| {
            let c = f.mul(t1[k], inv);
            let mut v: SparseVec = vec![(k, Elem::ONE)];
            if !c.is_zero() {
                v.push((p, c));
                v.sort_by_key(|x| x.0);
            }
            v
        })
        .collect();
    Some(Subspace { ambient_dim: m, basis })
}

/// The second trace form with the basis it is written in.
#[derive(Clone, Debug)]
pub struct TraceForm {
    pub form: QuadraticForm,
    pub basis: Subspace,
}

/// T_{A/F}: (A, t_2) for even degree, (A_0, t_2) for odd degree.
pub fn second_trace_form(alg: &Algebra) -> Result<TraceForm> {
    let n = csa_degree(alg)?;
    if n == 1 {
        return Err(Error::DegreeOne);
    }
    let full = t2_form(alg)?;
    if n % 2 == 0 {
        return Ok(TraceForm { form: full, basis: Subspace::whole(alg.dim()) });
    }
    let sub = trace_zero_subspace(alg)?;
    let form = restrict_sparse(&full, &sub.basis)?;
    Ok(TraceForm { form, basis: sub })
}

/// Restriction to the span of sparse vectors, in O(k^2 * nnz^2).
pub fn restrict_sparse(q: &QuadraticForm, basis: &[SparseVec]) -> Result<QuadraticForm> {
    let f = q.field();
    let k = basis.len();
    let value = |v: &SparseVec| {
        let mut acc = Elem::ZERO;
        for (x, &(i, a)) in v.iter().enumerate() {
            acc += f.mul(f.square(a), q.diag()[i]);
            for &(j, b) in &v[x + 1..] {
                acc += f.mul(f.mul(a, b), q.polar()[i][j]);
            }
        }
        acc
    };
    let pair = |u: &SparseVec, v: &SparseVec| {
        let mut acc = Elem::ZERO;
        for &(i, a) in u {
            for &(j, b) in v {
                acc += f.mul(f.mul(a, b), q.polar()[i][j]);
            }
        }
        acc
    };
    let diag = basis.iter().map(value).collect();
    let mut polar = vec![vec![Elem::ZERO; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let b = pair(&basis[i], &basis[j]);
            polar[i][j] = b;
            polar[j][i] = b;
        }
    }
    QuadraticForm::new(f, diag, polar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csa::{matrix_algebra, quaternion_algebra};

    #[test]
    fn reduced_charpoly_examples() {
        let f2 = Field::gf2();
        let m2 = matrix_algebra(&f2, 2);
        let swap = [Elem(0), Elem(1), Elem(1), Elem(0)];
        let rc = reduced_charpoly(&m2, &swap).unwrap();
        assert_eq!(rc.poly().format(&f2, "x"), "x^2+1");
        assert_eq!((rc.t1(), rc.t2()), (Elem::ZERO, Elem::ONE));

        let m3 = matrix_algebra(&f2, 3);
        let rc = reduced_charpoly(&m3, m3.identity()).unwrap();
        assert_eq!(rc.poly().format(&f2, "x"), "x^3+x^2+x+1");
        assert_eq!(rc.t2(), Elem::ONE);

        let f4 = Field::gf2().extend_str("a^2+a+1").unwrap();
        let a = f4.generator().unwrap();
        let q = quaternion_algebra(&f4, a, a).unwrap();
        let rc = reduced_charpoly(&q, &q.basis_vector(2)).unwrap();
        assert_eq!(rc.poly().format(&f4, "x"), "x^2+x+a");
    }

    #[test]
    fn polar_examples_in_m2() {
        let f2 = Field::gf2();
        let m2 = matrix_algebra(&f2, 2);
        let e = |i| m2.basis_vector(i);
        assert_eq!(m2.b_t2(&e(0), &e(3)).unwrap(), Elem::ONE);
        assert_eq!(m2.b_t2(&e(1), &e(2)).unwrap(), Elem::ONE);
        assert_eq!(m2.b_t2(&e(1), &e(1)).unwrap(), Elem::ZERO);
    }

    #[test]
    fn routes_agree() {
        let f2 = Field::gf2();
        let m4 = matrix_algebra(&f2, 4);
        let reg = Traces::compute(&m4, TraceRoute::Regular).unwrap();
        let spl = Traces::compute(&m4, TraceRoute::Splitting).unwrap();
        assert_eq!(reg.t1, spl.t1);
        assert_eq!(reg.t2, spl.t2);
    }

    #[test]
    fn second_trace_form_shapes() {
        let f2 = Field::gf2();
        assert_eq!(second_trace_form(&matrix_algebra(&f2, 1)).unwrap_err(), Error::DegreeOne);
        let t = second_trace_form(&matrix_algebra(&f2, 3)).unwrap();
        assert_eq!(t.form.dim(), 8);
        assert_eq!(t.form.arf().unwrap(), Elem::ONE);
        let t = second_trace_form(&matrix_algebra(&f2, 2)).unwrap();
        assert_eq!(t.form.dim(), 4);
        assert_eq!(t.form.arf().unwrap(), Elem::ZERO);
    }
}
