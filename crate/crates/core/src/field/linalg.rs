//! Exact dense linear algebra over any field implementing [`FieldOps`].

/// Minimal field interface shared by finite tower levels and rational
/// function fields.
pub trait FieldOps {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool;
}

pub type Matrix<E> = Vec<Vec<E>>;

pub fn identity<F: FieldOps>(f: &F, n: usize) -> Matrix<F::E> {
    (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
}

pub fn mat_mul<F: FieldOps>(f: &F, a: &Matrix<F::E>, b: &Matrix<F::E>) -> Matrix<F::E> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![f.zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let x = &a[i][k];
            if f.is_zero(x) {
                continue;
            }
            for j in 0..m {
                let t = f.mul(x, &bk[j]);
                out[i][j] = f.add(&out[i][j], &t);
            }
        }
    }
    out
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: FieldOps>(f: &F, m: &mut Matrix<F::E>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let t = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !f.is_zero(p) {
                    *x = f.add(x, &f.mul(&t, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldOps>(f: &F, m: &Matrix<F::E>) -> usize {
    rref(f, &mut m.clone()).len()
}

/// Basis of { x : m x = 0 }.
pub fn kernel<F: FieldOps>(f: &F, m: &Matrix<F::E>, cols: usize) -> Vec<Vec<F::E>> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                // char 2: -a = a
                v[pc] = a[r][fc].clone();
            }
            v
        })
        .collect()
}

/// One solution of m x = b, if any.
pub fn solve<F: FieldOps>(f: &F, m: &Matrix<F::E>, b: &[F::E]) -> Option<Vec<F::E>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Matrix<F::E> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Characteristic polynomial det(xI - M), low degree first, monic.
///
/// Similarity reduction to upper Hessenberg form followed by the standard
/// three-term recurrence on leading principal submatrices; O(n^3) and
/// division-free apart from the elimination pivots.
pub fn charpoly<F: FieldOps>(f: &F, m: &Matrix<F::E>) -> Vec<F::E> {
    let n = m.len();
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| !f.is_zero(&h[i][j])) else {
            continue;
        };
        if p != j + 1 {
            h.swap(p, j + 1);
            for row in h.iter_mut() {
                row.swap(p, j + 1);
            }
        }
        let inv = f.inv(&h[j + 1][j]).unwrap();
        for k in j + 2..n {
            if f.is_zero(&h[k][j]) {
                continue;
            }
            let u = f.mul(&h[k][j], &inv);
            // row_k -= u * row_{j+1}
            for c in 0..n {
                let t = f.mul(&u, &h[j + 1][c]);
                h[k][c] = f.add(&h[k][c], &t);
            }
            // col_{j+1} += u * col_k
            for row in h.iter_mut() {
                let t = f.mul(&u, &row[k]);
                row[j + 1] = f.add(&row[j + 1], &t);
            }
        }
    }
    // p[k] = charpoly of the leading k x k block
    let mut p: Vec<Vec<F::E>> = vec![vec![f.one()]];
    for k in 1..=n {
        let hk = h[k - 1][k - 1].clone();
        // (x + h_kk) p_{k-1}  (signs vanish in characteristic two)
        let prev = &p[k - 1];
        let mut next = vec![f.zero(); k + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] = f.add(&next[i + 1], c);
            next[i] = f.add(&next[i], &f.mul(&hk, c));
        }
        let mut prod = f.one();
        for i in (1..k).rev() {
            prod = f.mul(&prod, &h[i][i - 1]);
            if f.is_zero(&prod) {
                break;
            }
            let coef = f.mul(&h[i - 1][k - 1], &prod);
            if f.is_zero(&coef) {
                continue;
            }
            for (d, c) in p[i - 1].iter().enumerate() {
                next[d] = f.add(&next[d], &f.mul(&coef, c));
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}
