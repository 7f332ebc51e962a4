//! Clifford algebras on monomials e_S, quaternion symbols and the Clifford
//! invariant.

use super::QuadraticForm;
use crate::csa::Algebra;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// The quaternion algebra (a, b]: e^2 = a, f^2 + f = b, ef + fe = e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionSymbol {
    pub a: Elem,
    pub b: Elem,
}

impl QuaternionSymbol {
    pub fn format(&self, f: &Field) -> String {
        format!("({},{}]", f.format(self.a), f.format(self.b))
    }
}

/// A Brauer class as a product of quaternion symbols, none of them split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerClass {
    symbols: Vec<QuaternionSymbol>,
}

impl BrauerClass {
    pub fn trivial() -> BrauerClass {
        BrauerClass { symbols: Vec::new() }
    }

    /// Drops every split symbol.
    pub fn reduce(field: &Field, symbols: &[QuaternionSymbol]) -> BrauerClass {
        BrauerClass { symbols: symbols.iter().copied().filter(|s| !quaternion_is_split(field, s.a, s.b)).collect() }
    }

    pub fn symbols(&self) -> &[QuaternionSymbol] {
        &self.symbols
    }

    pub fn is_trivial(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn format(&self, f: &Field) -> String {
        if self.symbols.is_empty() {
            "trivial".into()
        } else {
            self.symbols.iter().map(|s| s.format(f)).collect::<Vec<_>>().join("⊗")
        }
    }
}

/// Whether (a, b] is split: b in wp(F), or a a norm from F[x]/(x^2+x+b).
pub fn quaternion_is_split(f: &Field, a: Elem, b: Elem) -> bool {
    debug_assert!(!a.is_zero());
    if f.wp_member(b) {
        return true;
    }
    // norm form u^2 + uv + b v^2; finite fields are perfect, so v = 0 and
    // u = sqrt(a) is always a witness
    let (u, v) = (f.sqrt(a), Elem::ZERO);
    f.square(u) + f.mul(u, v) + f.mul(b, f.square(v)) == a
}

/// Symbols (a_i, a_i b_i] of the blocks of a decomposition; [0, b] blocks
/// are read as [b, 0] and H blocks are dropped.
pub fn clifford_symbols(q: &QuadraticForm) -> Result<Vec<QuaternionSymbol>> {
    let d = q.reduce(false);
    if !d.radical_values.is_empty() {
        return Err(Error::SingularForm { radical_dim: d.radical_values.len() });
    }
    let f = q.field();
    Ok(d.blocks
        .iter()
        .filter_map(|blk| {
            if !blk.a.is_zero() {
                Some(QuaternionSymbol { a: blk.a, b: f.mul(blk.a, blk.b) })
            } else if !blk.b.is_zero() {
                Some(QuaternionSymbol { a: blk.b, b: Elem::ZERO })
            } else {
                None
            }
        })
        .collect())
}

pub fn clifford_invariant(q: &QuadraticForm) -> Result<BrauerClass> {
    Ok(BrauerClass::reduce(q.field(), &clifford_symbols(q)?))
}

type Terms = Vec<(u32, Elem)>;

/// e_S e_j for every monomial S and generator j.
fn generator_table(q: &QuadraticForm) -> Vec<Vec<Terms>> {
    let n = q.dim();
    let mut gp: Vec<Vec<Terms>> = Vec::with_capacity(1 << n);
    for s in 0u32..(1 << n) {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let terms = if s == 0 {
                vec![(1 << j, Elem::ONE)]
            } else {
                let m = 31 - s.leading_zeros() as usize;
                let rest = s & !(1 << m);
                if m < j {
                    vec![(s | 1 << j, Elem::ONE)]
                } else if m == j {
                    vec![(rest, q.diag()[j])]
                } else {
                    // e_S' e_m e_j = (e_S' e_j) e_m + B(j, m) e_S'
                    let mut t: Terms = gp[rest as usize][j].iter().map(|&(u, c)| (u | 1 << m, c)).collect();
                    t.push((rest, q.polar()[j][m]));
                    t
                }
            };
            row.push(terms.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
        gp.push(row);
    }
    gp
}

fn monomial_product(f: &Field, gp: &[Vec<Terms>], s: u32, t: u32, n: usize) -> Terms {
    let mut cur: Terms = vec![(s, Elem::ONE)];
    for j in 0..n {
        if t & (1 << j) == 0 {
            continue;
        }
        let mut next: Terms = Vec::new();
        for &(u, c) in &cur {
            for &(v, d) in &gp[u as usize][j] {
                next.push((v, f.mul(c, d)));
            }
        }
        next.sort_unstable_by_key(|x| x.0);
        cur.clear();
        for (v, c) in next {
            match cur.last_mut() {
                Some(last) if last.0 == v => last.1 += c,
                _ => cur.push((v, c)),
            }
        }
        cur.retain(|x| !x.1.is_zero());
    }
    cur
}

fn build(q: &QuadraticForm, even_only: bool) -> Result<Algebra> {
    let n = q.dim();
    if n > 10 {
        return Err(Error::DimensionTooLarge { dim: n, max: 10 });
    }
    let f = q.field();
    let gp = generator_table(q);
    let masks: Vec<u32> = (0u32..(1 << n)).filter(|s| !even_only || s.count_ones() % 2 == 0).collect();
    let mut index = vec![usize::MAX; 1 << n];
    for (i, &s) in masks.iter().enumerate() {
        index[s as usize] = i;
    }
    let mut entries = Vec::new();
    for (i, &s) in masks.iter().enumerate() {
        for (j, &t) in masks.iter().enumerate() {
            for (u, c) in monomial_product(f, &gp, s, t, n) {
                entries.push((i, j, index[u as usize], c));
            }
        }
    }
    let mut identity = vec![Elem::ZERO; masks.len()];
    identity[0] = Elem::ONE;
    let labels = masks
        .iter()
        .map(|&s| {
            if s == 0 {
                "1".to_string()
            } else {
                (0..n).filter(|j| s & (1 << j) != 0).map(|j| format!("e{}", j + 1)).collect::<Vec<_>>().join("")
            }
        })
        .collect();
    let label = if even_only { "C0(q)" } else { "C(q)" };
    Ok(Algebra::from_structure(f.clone(), masks.len(), entries, identity, label)?.with_basis_labels(labels))
}

/// C(q) on the monomials e_S (basis index = bitmask of S).
pub fn clifford_algebra(q: &QuadraticForm) -> Result<Algebra> {
    build(q, false)
}

/// The even part C_0(q), on the even monomials in increasing mask order.
pub fn even_clifford_algebra(q: &QuadraticForm) -> Result<Algebra> {
    build(q, true)
}

/// Arf invariant read off the center Z of C_0(q): Z = F[z] with
/// z^2 + z = Arf(q) after normalization.
pub fn arf_via_even_clifford_center(q: &QuadraticForm) -> Result<Elem> {
    let n = q.dim();
    if n > 8 {
        return Err(Error::DimensionTooLarge { dim: n, max: 8 });
    }
    let f = q.field();
    if n == 0 {
        return Ok(Elem::ZERO);
    }
    if n % 2 == 1 {
        return Err(Error::SingularForm { radical_dim: 1 });
    }
    let c0 = even_clifford_algebra(q)?;
    // C_0 is generated by the products e_i e_j
    let mut index = std::collections::HashMap::new();
    let mut k = 0;
    for s in 0u32..(1 << n) {
        if s.count_ones() % 2 == 0 {
            index.insert(s, k);
            k += 1;
        }
    }
    let gens: Vec<Vec<Elem>> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| c0.basis_vector(index[&((1u32 << i) | (1 << j))]))
        .collect();
    let center = c0.commutant(&gens);
    if center.len() != 2 {
        return Err(Error::SingularForm { radical_dim: center.len().saturating_sub(2) });
    }
    let z = center
        .iter()
        .find(|v| v.iter().skip(1).any(|c| !c.is_zero()))
        .expect("center contains a non-scalar element")
        .clone();
    let z2 = c0.mul(&z, &z);
    let k = (1..z.len()).find(|&k| !z[k].is_zero()).unwrap();
    let alpha = f.div(z2[k], z[k])?;
    let beta = z2[0] + f.mul(alpha, z[0]);
    let check = c0.add(&c0.scale(alpha, &z), &c0.scalar(beta));
    if check != z2 {
        return Err(Error::NotCsa("even Clifford center is not a quadratic algebra".into()));
    }
    if alpha.is_zero() {
        return Err(Error::SingularForm { radical_dim: 0 });
    }
    Ok(f.wp_class(f.div(beta, f.square(alpha))?))
}
