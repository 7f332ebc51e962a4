//! Dense univariate polynomials over a tower level.

use super::expr::{Expr, ExprRing};
use super::{Elem, Field};
use crate::error::{Error, Result};

/// Coefficients low degree first; trailing zeros are always trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    c: Vec<Elem>,
}

impl Poly {
    pub fn new(mut c: Vec<Elem>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { c: vec![Elem::ONE] }
    }

    pub fn x() -> Poly {
        Poly { c: vec![Elem::ZERO, Elem::ONE] }
    }

    pub fn constant(a: Elem) -> Poly {
        Poly::new(vec![a])
    }

    pub fn monomial(a: Elem, d: usize) -> Poly {
        let mut c = vec![Elem::ZERO; d + 1];
        c[d] = a;
        Poly::new(c)
    }

    /// `x - r` (equivalently `x + r`).
    pub fn linear(r: Elem) -> Poly {
        Poly { c: vec![r, Elem::ONE] }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.c.get(i).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lead(&self) -> Elem {
        self.c.last().copied().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Elem::ONE
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn scale(&self, f: &Field, a: Elem) -> Poly {
        Poly::new(self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    pub fn mul(&self, f: &Field, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] += f.mul(a, b);
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, f: &Field, mut e: u64) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        acc
    }

    pub fn divrem(&self, f: &Field, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = f.inv(d.lead())?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![Elem::ZERO; r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = f.mul(r[k + dd], inv);
            if t.is_zero() {
                continue;
            }
            q[k] = t;
            for (j, &dc) in d.c.iter().enumerate() {
                r[k + j] += f.mul(t, dc);
            }
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, f: &Field, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(f, d)?.1)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.lead()).expect("nonzero lead"))
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, f: &Field, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.c.iter().rev().fold(Elem::ZERO, |acc, &c| f.mul(acc, x) + c)
    }

    /// self^e mod m.
    pub fn powmod(&self, f: &Field, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut acc = Poly::one().rem(f, m)?;
        let mut base = self.rem(f, m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m)?;
            }
            base = base.mul(f, &base).rem(f, m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn format(&self, f: &Field, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = f.format(c);
            terms.push(if i == 0 {
                cs
            } else if c == Elem::ONE {
                mono
            } else if cs.contains('+') {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            });
        }
        terms.join("+")
    }

    /// Parses a polynomial in `var` whose coefficients use the generator
    /// names of `f`.
    pub fn parse(f: &Field, text: &str, var: &str) -> Result<Poly> {
        Expr::parse(text)?.eval(&PolyRing { f, var })
    }
}

struct PolyRing<'a> {
    f: &'a Field,
    var: &'a str,
}

impl ExprRing for PolyRing<'_> {
    type Value = Poly;
    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::one()
    }
    fn add(&self, x: &Poly, y: &Poly) -> Poly {
        x.add(y)
    }
    fn mul(&self, x: &Poly, y: &Poly) -> Poly {
        x.mul(self.f, y)
    }
    fn ident(&self, name: &str, _pos: usize) -> Result<Poly> {
        if name == self.var {
            return Ok(Poly::x());
        }
        self.f
            .generators()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| Poly::constant(g))
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }
}

/// All roots in the coefficient field, repeated by multiplicity.
pub fn roots(f: &Field, p: &Poly) -> Vec<Elem> {
    let mut out = Vec::new();
    let mut cur = p.clone();
    if cur.is_zero() {
        return out;
    }
    for x in f.elements() {
        while cur.degree().unwrap_or(0) > 0 && cur.eval(f, x).is_zero() {
            out.push(x);
            cur = cur.divrem(f, &Poly::linear(x)).unwrap().0;
        }
        if cur.degree() == Some(0) {
            break;
        }
    }
    out
}

fn nth_monic(f: &Field, d: usize, index: u64) -> Poly {
    let bits = f.bits();
    let mask = f.order() - 1;
    let mut c: Vec<Elem> = (0..d).map(|j| Elem((index >> (j * bits)) & mask)).collect();
    c.push(Elem::ONE);
    Poly::new(c)
}

/// A proper monic factor of `p`, or `None` when `p` is irreducible.
///
/// Roots first, then trial division by every monic polynomial of degree up
/// to deg/2. Field sizes here are tiny, so exhaustive division is cheap.
pub fn find_factor(f: &Field, p: &Poly) -> Option<Poly> {
    let d = p.degree()?;
    if d <= 1 {
        return None;
    }
    if let Some(r) = f.elements().find(|&x| p.eval(f, x).is_zero()) {
        return Some(Poly::linear(r));
    }
    for k in 2..=d / 2 {
        let count = 1u64.checked_shl((k * f.bits()) as u32).unwrap_or(u64::MAX);
        assert!(count <= 1 << 24, "trial division space too large for desk-scale irreducibility test");
        for i in 0..count {
            let q = nth_monic(f, k, i);
            if p.rem(f, &q).unwrap().is_zero() {
                return Some(q);
            }
        }
    }
    None
}

/// Monic irreducible factors with multiplicity, sorted by degree and then
/// by coefficients.
pub fn factor(f: &Field, p: &Poly) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut stack = vec![p.monic(f)];
    while let Some(q) = stack.pop() {
        if q.degree().unwrap_or(0) == 0 {
            continue;
        }
        match find_factor(f, &q) {
            Some(g) => {
                let (h, _) = q.divrem(f, &g).unwrap();
                stack.push(g);
                stack.push(h);
            }
            None => out.push(q),
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    out
}

pub fn is_irreducible(f: &Field, p: &Poly) -> bool {
    p.degree().is_some_and(|d| d >= 1) && find_factor(f, p).is_none()
}

/// The first monic irreducible polynomial of degree `d` in enumeration order.
pub fn first_irreducible(f: &Field, d: usize) -> Poly {
    let count = 1u64 << (d * f.bits()).min(63);
    (0..count)
        .map(|i| nth_monic(f, d, i))
        .find(|q| is_irreducible(f, q))
        .expect("irreducible polynomials exist in every degree")
}

/// The monic `q` with `q^n = p`.
///
/// Writing `n = 2^s * u` with `u` odd: `p` must be `r(x^(2^s))` with every
/// coefficient a `2^s`-th power, which yields `r = q^u` by coefficient-wise
/// Frobenius inversion. The odd root of `r` is then recovered from the top
/// coefficient down, since `u = 1` in characteristic two.
pub fn nth_root(f: &Field, p: &Poly, n: usize) -> Result<Poly> {
    let err = Error::NotAPower { n };
    let deg = p.degree().ok_or(err.clone())?;
    if n == 0 || deg % n != 0 || !p.is_monic() {
        return Err(err);
    }
    let s = n.trailing_zeros() as usize;
    let u = n >> s;
    let step = 1usize << s;
    let mut r = Vec::with_capacity(deg / step + 1);
    for (i, &c) in p.coeffs().iter().enumerate() {
        if i % step != 0 {
            if !c.is_zero() {
                return Err(err);
            }
            continue;
        }
        let mut v = c;
        for _ in 0..s {
            v = f.sqrt(v);
        }
        r.push(v);
    }
    let r = Poly::new(r);
    let rd = r.degree().unwrap();
    let qd = rd / u;
    let mut q = vec![Elem::ZERO; qd + 1];
    q[qd] = Elem::ONE;
    for k in 1..=qd {
        let partial = Poly::new(q.clone()).pow(f, u as u64);
        q[qd - k] = r.coeff(rd - k) + partial.coeff(rd - k);
    }
    let q = Poly::new(q);
    if q.pow(f, u as u64) != r {
        return Err(err);
    }
    Ok(q)
}
