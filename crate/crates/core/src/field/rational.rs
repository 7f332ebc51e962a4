//! Rational function fields F_q(t) over a finite tower level: arithmetic,
//! square roots and Artin-Schreier membership.

use super::gf2::BitMatrix;
use super::linalg::FieldOps;
use super::{Elem, Field, Poly};
use crate::error::{Error, Result};

/// num / den in lowest terms with den monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: Poly,
    den: Poly,
}

impl Rational {
    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// F_q(t) with F_q a level of a tower.
#[derive(Clone, Debug)]
pub struct RationalField {
    base: Field,
    var: String,
}

impl RationalField {
    pub fn new(base: &Field, var: &str) -> RationalField {
        RationalField { base: base.clone(), var: var.to_string() }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn make(&self, num: Poly, den: Poly) -> Result<Rational> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.base;
        let g = num.gcd(f, &den);
        let (mut n, _) = num.divrem(f, &g)?;
        let (mut d, _) = den.divrem(f, &g)?;
        let lc = f.inv(d.lead())?;
        n = n.scale(f, lc);
        d = d.scale(f, lc);
        if n.is_zero() {
            d = Poly::one();
        }
        Ok(Rational { num: n, den: d })
    }

    pub fn from_poly(&self, p: Poly) -> Rational {
        Rational { num: p, den: Poly::one() }
    }

    pub fn constant(&self, c: Elem) -> Rational {
        self.from_poly(Poly::constant(c))
    }

    pub fn t(&self) -> Rational {
        self.from_poly(Poly::x())
    }

    pub fn add(&self, a: &Rational, b: &Rational) -> Rational {
        let f = &self.base;
        let num = a.num.mul(f, &b.den).add(&b.num.mul(f, &a.den));
        self.make(num, a.den.mul(f, &b.den)).expect("nonzero denominators")
    }

    pub fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        let f = &self.base;
        self.make(a.num.mul(f, &b.num), a.den.mul(f, &b.den)).expect("nonzero denominators")
    }

    pub fn square(&self, a: &Rational) -> Rational {
        self.mul(a, a)
    }

    pub fn inv(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.make(a.den.clone(), a.num.clone())
    }

    pub fn div(&self, a: &Rational, b: &Rational) -> Result<Rational> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The square root, when `a` is a square.
    pub fn sqrt(&self, a: &Rational) -> Option<Rational> {
        let n = poly_sqrt(&self.base, &a.num)?;
        let d = poly_sqrt(&self.base, &a.den)?;
        Some(Rational { num: n, den: d })
    }

    /// Solves u^2 + u = c.
    ///
    /// Writing c = N / r^2 (the denominator must be a square) and u = s / r
    /// turns the equation into s^2 + s r = N, which is GF(2)-linear in the
    /// bits of the coefficients of s, with deg s <= deg r + ceil(deg N / 2).
    pub fn artin_schreier_solve(&self, c: &Rational) -> Option<Rational> {
        if c.is_zero() {
            return Some(self.constant(Elem::ZERO));
        }
        let f = &self.base;
        let r = poly_sqrt(f, &c.den)?;
        let dr = r.degree().unwrap();
        let dn = c.num.degree().unwrap();
        let bound = dr + dn.div_ceil(2);
        let k = f.bits();
        let unknowns = (bound + 1) * k;
        let out_deg = (2 * bound).max(bound + dr).max(dn);
        let rows = (out_deg + 1) * k;
        let mut m = BitMatrix::zeros(rows, unknowns);
        for i in 0..=bound {
            for bit in 0..k {
                let s = Poly::monomial(Elem(1 << bit), i);
                let img = s.mul(f, &s).add(&s.mul(f, &r));
                let col = i * k + bit;
                for (d, &c) in img.coeffs().iter().enumerate() {
                    for b in 0..k {
                        if (c.0 >> b) & 1 == 1 {
                            m.set(d * k + b, col, true);
                        }
                    }
                }
            }
        }
        let target: Vec<bool> = (0..rows)
            .map(|row| {
                let (d, b) = (row / k, row % k);
                (c.num.coeff(d).0 >> b) & 1 == 1
            })
            .collect();
        let x = m.solve(&target)?;
        let s = Poly::new(
            (0..=bound).map(|i| Elem((0..k).fold(0u64, |acc, b| acc | ((x[i * k + b] as u64) << b)))).collect(),
        );
        let u = self.make(s, r).ok()?;
        debug_assert_eq!(&self.add(&self.square(&u), &u), c);
        Some(u)
    }

    pub fn wp_member(&self, c: &Rational) -> bool {
        self.artin_schreier_solve(c).is_some()
    }

    pub fn format(&self, a: &Rational) -> String {
        let n = a.num.format(&self.base, &self.var);
        if a.den == Poly::one() {
            return n;
        }
        format!("({n})/({})", a.den.format(&self.base, &self.var))
    }

    /// Parses `p` or `p/q` with polynomials in the variable and generator
    /// names of the base field.
    pub fn parse(&self, text: &str) -> Result<Rational> {
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let num = Poly::parse(&self.base, n, &self.var)?;
        let den = Poly::parse(&self.base, d, &self.var)?;
        self.make(num, den)
    }
}

/// q with q^2 = p, when p is a square in F_q[t].
fn poly_sqrt(f: &Field, p: &Poly) -> Option<Poly> {
    let c = p.coeffs();
    if c.iter().skip(1).step_by(2).any(|x| !x.is_zero()) {
        return None;
    }
    Some(Poly::new(c.iter().step_by(2).map(|&x| f.sqrt(x)).collect()))
}

impl FieldOps for RationalField {
    type E = Rational;
    fn zero(&self) -> Rational {
        self.constant(Elem::ZERO)
    }
    fn one(&self) -> Rational {
        self.constant(Elem::ONE)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        RationalField::add(self, a, b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        RationalField::mul(self, a, b)
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        RationalField::inv(self, a).ok()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}
