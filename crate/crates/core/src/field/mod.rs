//! Towers of finite fields of characteristic two.
//!
//! A [`Tower`] starts at GF(2) and grows by adjoining a root of an
//! irreducible polynomial over an existing level. Elements of every level are
//! packed into a `u64`: the coefficient vector over the parent level, each
//! coefficient occupying the parent's bit width. With that packing a parent
//! element embeds into every descendant level unchanged, so ancestors'
//! generators can be used directly inside extensions.

pub mod expr;
pub mod gf2;
pub mod linalg;
pub mod poly;
#[cfg(feature = "rational")]
pub mod rational;

use std::fmt;
use std::ops::{Add, AddAssign, Sub};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use expr::{Expr, ExprRing};
pub use linalg::FieldOps;
pub use poly::Poly;

/// An element of some level of a tower, as packed bits.
///
/// Addition is XOR at every level, so `+` is available without the field
/// context; everything else goes through [`Field`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem({:#x})", self.0)
    }
}

// addition in characteristic two is xor
#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl Add for Elem {
    type Output = Elem;
    #[inline]
    fn add(self, o: Elem) -> Elem {
        Elem(self.0 ^ o.0)
    }
}

// addition in characteristic two is xor
#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl Sub for Elem {
    type Output = Elem;
    #[inline]
    fn sub(self, o: Elem) -> Elem {
        Elem(self.0 ^ o.0)
    }
}

// addition in characteristic two is xor
#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl AddAssign for Elem {
    #[inline]
    fn add_assign(&mut self, o: Elem) {
        self.0 ^= o.0;
    }
}

enum Arith {
    Prime,
    Log { log: Vec<u32>, exp: Vec<u64>, order: u64 },
    Table { prod: Vec<u64> },
}

struct Level {
    parent: Option<usize>,
    name: String,
    modulus: Poly,
    degree: usize,
    parent_bits: usize,
    bits: usize,
    arith: Arith,
}

/// The levels of a tower; level 0 is GF(2).
pub struct Tower {
    levels: Vec<Arc<Level>>,
}

/// Handle to one level of a tower.
#[derive(Clone)]
pub struct Field {
    tower: Arc<Tower>,
    level: usize,
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        same_level(&self.tower, self.level, &other.tower, other.level)
    }
}

impl Eq for Field {}

fn same_level(a: &Tower, la: usize, b: &Tower, lb: usize) -> bool {
    if std::ptr::eq(a, b) && la == lb {
        return true;
    }
    let (x, y) = (&a.levels[la], &b.levels[lb]);
    if Arc::ptr_eq(x, y) {
        return true;
    }
    if x.bits != y.bits || x.name != y.name || x.modulus != y.modulus {
        return false;
    }
    match (x.parent, y.parent) {
        (None, None) => true,
        (Some(pa), Some(pb)) => same_level(a, pa, b, pb),
        _ => false,
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.describe())
    }
}

impl Field {
    pub fn gf2() -> Field {
        let level = Level {
            parent: None,
            name: String::new(),
            modulus: Poly::zero(),
            degree: 1,
            parent_bits: 0,
            bits: 1,
            arith: Arith::Prime,
        };
        Field { tower: Arc::new(Tower { levels: vec![Arc::new(level)] }), level: 0 }
    }

    fn lv(&self) -> &Level {
        &self.tower.levels[self.level]
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Absolute degree over GF(2).
    pub fn bits(&self) -> usize {
        self.lv().bits
    }

    pub fn order(&self) -> u64 {
        1u64 << self.bits()
    }

    pub fn is_prime(&self) -> bool {
        self.lv().parent.is_none()
    }

    pub fn degree_over_parent(&self) -> usize {
        self.lv().degree
    }

    pub fn name(&self) -> &str {
        &self.lv().name
    }

    pub fn parent(&self) -> Option<Field> {
        self.lv().parent.map(|p| Field { tower: self.tower.clone(), level: p })
    }

    /// Defining polynomial over the parent level (zero polynomial for GF(2)).
    pub fn modulus(&self) -> &Poly {
        &self.lv().modulus
    }

    pub fn generator(&self) -> Option<Elem> {
        let lv = self.lv();
        lv.parent.map(|_| Elem(1 << lv.parent_bits))
    }

    /// Ancestor chain from GF(2) up to and including this level.
    pub fn chain(&self) -> Vec<Field> {
        let mut out = vec![self.clone()];
        while let Some(p) = out.last().unwrap().parent() {
            out.push(p);
        }
        out.reverse();
        out
    }

    /// True when `self` is `other` or one of its ancestors.
    pub fn is_subfield_of(&self, other: &Field) -> bool {
        other.chain().iter().any(|f| f == self)
    }

    /// Generator names visible at this level, innermost last.
    pub fn generators(&self) -> Vec<(String, Elem)> {
        self.chain().iter().filter_map(|f| f.generator().map(|g| (f.name().to_string(), g))).collect()
    }

    /// Adjoins a root of `modulus` (monic, irreducible over this level).
    pub fn extend(&self, modulus: &Poly, name: &str) -> Result<Field> {
        let deg = modulus.degree().unwrap_or(0);
        if deg < 2 || !modulus.is_monic() {
            return Err(Error::InvalidExtension(format!(
                "defining polynomial must be monic of degree >= 2, got {}",
                modulus.format(self, "x")
            )));
        }
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::InvalidExtension(format!("bad generator name `{name}`")));
        }
        if self.generators().iter().any(|(n, _)| n == name) || name == "GF2" {
            return Err(Error::InvalidExtension(format!("generator name `{name}` already in use")));
        }
        if modulus.coeffs().iter().any(|c| !self.contains(*c)) {
            return Err(Error::FieldMismatch);
        }
        let bits = self.bits() * deg;
        if bits > 63 {
            return Err(Error::FieldTooLarge(bits));
        }
        if let Some(factor) = poly::find_factor(self, modulus) {
            return Err(Error::RejectsReducible {
                poly: modulus.format(self, name),
                witness: format!("factor {}", factor.format(self, name)),
            });
        }
        let level = build_level(self, modulus.clone(), name.to_string());
        let mut levels = self.tower.levels.clone();
        levels.push(Arc::new(level));
        let idx = levels.len() - 1;
        Ok(Field { tower: Arc::new(Tower { levels }), level: idx })
    }

    /// Extends by a polynomial written in a fresh variable, e.g. `"b^3+b^2+b+a"`.
    /// The fresh identifier becomes the generator name.
    pub fn extend_str(&self, text: &str) -> Result<Field> {
        let e = Expr::parse(text)?;
        let known: Vec<String> = self.generators().into_iter().map(|(n, _)| n).collect();
        let fresh: Vec<String> = e.idents().into_iter().filter(|n| !known.contains(n)).collect();
        if fresh.len() != 1 {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected exactly one new variable in `{text}`, found {fresh:?}"),
            });
        }
        let p = Poly::parse(self, text, &fresh[0])?;
        self.extend(&p, &fresh[0])
    }

    /// Human-readable description in the field-spec grammar.
    pub fn describe(&self) -> String {
        match self.parent() {
            None => "GF2".to_string(),
            Some(p) => format!("extend({},\"{}\")", p.describe(), self.modulus().format(&p, self.name())),
        }
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        self.bits() == 64 || a.0 < self.order()
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.lv().arith {
            Arith::Prime => Elem(a.0 & b.0),
            Arith::Log { log, exp, .. } => {
                if a.0 == 0 || b.0 == 0 {
                    Elem::ZERO
                } else {
                    Elem(exp[(log[a.0 as usize] + log[b.0 as usize]) as usize])
                }
            }
            Arith::Table { prod } => table_mul(prod, self.bits(), a, b),
        }
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.lv().arith {
            Arith::Prime => Elem::ONE,
            Arith::Log { log, exp, order } => Elem(exp[((order - log[a.0 as usize] as u64) % order) as usize]),
            Arith::Table { .. } => self.pow(a, self.order() - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The absolute Frobenius x -> x^2.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.square(a)
    }

    /// Inverse of the Frobenius; every finite field is perfect.
    pub fn sqrt(&self, a: Elem) -> Elem {
        let mut x = a;
        for _ in 1..self.bits() {
            x = self.square(x);
        }
        x
    }

    /// x -> x^(|parent|^times), the relative Frobenius over the parent.
    pub fn relative_frobenius(&self, a: Elem, times: usize) -> Elem {
        let pb = self.lv().parent_bits.max(1);
        let mut x = a;
        for _ in 0..(pb * times) % self.bits() {
            x = self.square(x);
        }
        x
    }

    /// Trace to GF(2): x + x^2 + ... + x^(2^(k-1)).
    pub fn absolute_trace(&self, a: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut x = a;
        for _ in 0..self.bits() {
            acc += x;
            x = self.square(x);
        }
        debug_assert!(acc.0 <= 1);
        acc
    }

    /// Trace to the parent level.
    pub fn relative_trace(&self, a: Elem) -> Elem {
        (0..self.degree_over_parent()).fold(Elem::ZERO, |acc, i| acc + self.relative_frobenius(a, i))
    }

    /// Norm to the parent level.
    pub fn relative_norm(&self, a: Elem) -> Elem {
        (0..self.degree_over_parent()).fold(Elem::ONE, |acc, i| self.mul(acc, self.relative_frobenius(a, i)))
    }

    /// Coefficient vector over the parent level (length = relative degree).
    pub fn coeffs(&self, a: Elem) -> Vec<Elem> {
        let lv = self.lv();
        if lv.parent.is_none() {
            return vec![a];
        }
        let pb = lv.parent_bits;
        let mask = (1u64 << pb) - 1;
        (0..lv.degree).map(|i| Elem((a.0 >> (i * pb)) & mask)).collect()
    }

    pub fn from_coeffs(&self, c: &[Elem]) -> Elem {
        let lv = self.lv();
        if lv.parent.is_none() {
            return c.first().copied().unwrap_or_default();
        }
        assert!(c.len() <= lv.degree);
        c.iter().enumerate().fold(Elem::ZERO, |acc, (i, x)| Elem(acc.0 | (x.0 << (i * lv.parent_bits))))
    }

    /// All elements in order of their packed encoding.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order()).map(Elem)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem(rng.gen_range(0..self.order()))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem(rng.gen_range(1..self.order()))
    }

    /// Solves x^2 + x = c; `None` when c is not in the image of x^2 + x.
    pub fn artin_schreier_solve(&self, c: Elem) -> Option<Elem> {
        let k = self.bits();
        let cols: Vec<u64> = (0..k)
            .map(|i| {
                let e = Elem(1 << i);
                (self.square(e) + e).0
            })
            .collect();
        gf2::solve_columns(&cols, k, c.0).map(Elem)
    }

    /// Membership in wp(F) = { x^2 + x }.
    pub fn wp_member(&self, c: Elem) -> bool {
        self.artin_schreier_solve(c).is_some()
    }

    /// The canonical representative of the nontrivial class of F / wp(F):
    /// the first element in generator-power order with absolute trace 1.
    pub fn nonresidue(&self) -> Elem {
        if let Some(g) = self.generator() {
            let mut x = Elem::ONE;
            for _ in 0..self.order() {
                if self.absolute_trace(x) == Elem::ONE {
                    return x;
                }
                x = self.mul(x, g);
                if x == Elem::ONE {
                    break;
                }
            }
            self.elements().find(|&x| self.absolute_trace(x) == Elem::ONE).expect("trace is onto")
        } else {
            Elem::ONE
        }
    }

    /// Canonical representative of c modulo wp(F): 0 or [`Field::nonresidue`].
    pub fn wp_class(&self, c: Elem) -> Elem {
        if self.absolute_trace(c).is_zero() {
            Elem::ZERO
        } else {
            self.nonresidue()
        }
    }

    /// Formats an element as a polynomial in the generator names.
    pub fn format(&self, a: Elem) -> String {
        let Some(parent) = self.parent() else {
            return if a.is_zero() { "0".into() } else { "1".into() };
        };
        if a.0 < parent.order() {
            return parent.format(a);
        }
        let name = self.name();
        let cs = self.coeffs(a);
        let mut terms = Vec::new();
        for (i, c) in cs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => name.to_string(),
                _ => format!("{name}^{i}"),
            };
            let cstr = parent.format(*c);
            terms.push(if i == 0 {
                cstr
            } else if *c == Elem::ONE {
                mono
            } else if cstr.contains('+') {
                format!("({cstr})*{mono}")
            } else {
                format!("{cstr}*{mono}")
            });
        }
        terms.join("+")
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        Expr::parse(text)?.eval(&ElemRing { field: self })
    }
}

struct ElemRing<'a> {
    field: &'a Field,
}

impl ExprRing for ElemRing<'_> {
    type Value = Elem;
    fn zero(&self) -> Elem {
        Elem::ZERO
    }
    fn one(&self) -> Elem {
        Elem::ONE
    }
    fn add(&self, x: &Elem, y: &Elem) -> Elem {
        *x + *y
    }
    fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        self.field.mul(*x, *y)
    }
    fn ident(&self, name: &str, _pos: usize) -> Result<Elem> {
        self.field
            .generators()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }
}

#[inline]
fn table_mul(prod: &[u64], bits: usize, a: Elem, b: Elem) -> Elem {
    let mut acc = 0u64;
    let mut x = a.0;
    while x != 0 {
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        let row = &prod[i * bits..(i + 1) * bits];
        let mut y = b.0;
        while y != 0 {
            let j = y.trailing_zeros() as usize;
            y &= y - 1;
            acc ^= row[j];
        }
    }
    Elem(acc)
}

fn build_level(parent: &Field, modulus: Poly, name: String) -> Level {
    let d = modulus.degree().unwrap();
    let pb = parent.bits();
    let bits = pb * d;
    // x^k mod f for k < 2d - 1, as coefficient vectors over the parent
    let mut powers: Vec<Vec<Elem>> = Vec::with_capacity(2 * d);
    let mut cur = vec![Elem::ZERO; d];
    cur[0] = Elem::ONE;
    for _ in 0..(2 * d - 1) {
        powers.push(cur.clone());
        let top = cur[d - 1];
        let mut next = vec![Elem::ZERO; d];
        for i in (1..d).rev() {
            next[i] = cur[i - 1];
        }
        for (i, n) in next.iter_mut().enumerate() {
            *n += parent.mul(top, modulus.coeff(i));
        }
        cur = next;
    }
    let pack = |v: &[Elem]| v.iter().enumerate().fold(0u64, |acc, (i, x)| acc | (x.0 << (i * pb)));
    let mut prod = vec![0u64; bits * bits];
    for i in 0..bits {
        for j in 0..bits {
            let c = parent.mul(Elem(1 << (i % pb)), Elem(1 << (j % pb)));
            let v: Vec<Elem> = powers[i / pb + j / pb].iter().map(|&x| parent.mul(c, x)).collect();
            prod[i * bits + j] = pack(&v);
        }
    }
    let arith = if bits <= 16 { log_tables(&prod, bits) } else { Arith::Table { prod } };
    Level { parent: Some(parent.level), name, modulus, degree: d, parent_bits: pb, bits, arith }
}

fn log_tables(prod: &[u64], bits: usize) -> Arith {
    let order = (1u64 << bits) - 1;
    let mul = |a: u64, b: u64| table_mul(prod, bits, Elem(a), Elem(b)).0;
    let pow = |a: u64, mut e: u64| {
        let (mut acc, mut base) = (1u64, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let mut primes = Vec::new();
    let mut n = order;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    let g = (2..=order).find(|&g| primes.iter().all(|&p| pow(g, order / p) != 1)).unwrap_or(1);
    let mut exp = vec![0u64; 2 * order as usize];
    let mut log = vec![0u32; (order + 1) as usize];
    let mut x = 1u64;
    for i in 0..order as usize {
        exp[i] = x;
        exp[i + order as usize] = x;
        log[x as usize] = i as u32;
        x = mul(x, g);
    }
    Arith::Log { log, exp, order }
}

impl FieldOps for Field {
    type E = Elem;
    fn zero(&self) -> Elem {
        Elem::ZERO
    }
    fn one(&self) -> Elem {
        Elem::ONE
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        *a + *b
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Field::mul(self, *a, *b)
    }
    fn inv(&self, a: &Elem) -> Option<Elem> {
        Field::inv(self, *a).ok()
    }
    fn is_zero(&self, a: &Elem) -> bool {
        a.is_zero()
    }
}

/// GF(2^k) built as a single extension of GF(2) by the first irreducible
/// polynomial of degree k in enumeration order. Generator name `g` unless
/// `name` is given.
pub fn gf2k(k: usize, name: &str) -> Field {
    let base = Field::gf2();
    if k == 1 {
        return base;
    }
    let p = poly::first_irreducible(&base, k);
    base.extend(&p, name).expect("first_irreducible returns an irreducible polynomial")
}
