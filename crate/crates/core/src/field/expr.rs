//! Arithmetic expressions in named generators, e.g. `b^3+b+a` or `(a+1)*b`.
//!
//! The same grammar is used for field elements and for polynomials in one
//! extra named variable; evaluation is delegated to an [`ExprRing`].

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Ident { name: String, pos: usize },
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Pow(Box<Expr>, u64),
}

/// Target of expression evaluation.
pub trait ExprRing {
    type Value: Clone;
    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add(&self, x: &Self::Value, y: &Self::Value) -> Self::Value;
    fn mul(&self, x: &Self::Value, y: &Self::Value) -> Self::Value;
    fn ident(&self, name: &str, pos: usize) -> Result<Self::Value>;

    fn pow(&self, x: &Self::Value, mut e: u64) -> Self::Value {
        let mut acc = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn eval<R: ExprRing>(&self, ring: &R) -> Result<R::Value> {
        Ok(match self {
            Expr::Int(v) => {
                if v % 2 == 0 {
                    ring.zero()
                } else {
                    ring.one()
                }
            }
            Expr::Ident { name, pos } => ring.ident(name, *pos)?,
            Expr::Sum(terms) => {
                let mut acc = ring.zero();
                for t in terms {
                    acc = ring.add(&acc, &t.eval(ring)?);
                }
                acc
            }
            Expr::Prod(fs) => {
                let mut acc = ring.one();
                for f in fs {
                    acc = ring.mul(&acc, &f.eval(ring)?);
                }
                acc
            }
            Expr::Pow(b, e) => ring.pow(&b.eval(ring)?, *e),
        })
    }

    /// All identifiers in order of first appearance.
    pub fn idents(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Int(_) => {}
                Expr::Ident { name, .. } => {
                    if !out.contains(name) {
                        out.push(name.clone());
                    }
                }
                Expr::Sum(v) | Expr::Prod(v) => v.iter().for_each(|x| walk(x, out)),
                Expr::Pow(b, _) => walk(b, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = vec![self.product()?];
        // subtraction is addition in characteristic two
        while let Some(b'+' | b'-') = self.peek() {
            self.pos += 1;
            terms.push(self.product()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn product(&mut self) -> Result<Expr> {
        let mut fs = vec![self.power()?];
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    fs.push(self.power()?);
                }
                Some(c) if c == b'(' || c.is_ascii_alphabetic() || c == b'_' => {
                    fs.push(self.power()?);
                }
                _ => break,
            }
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { Expr::Prod(fs) })
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "integer overflow".into() })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
                Ok(Expr::Ident { name, pos: start })
            }
            _ => Err(self.err("expected number, identifier or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Ints;
    impl ExprRing for Ints {
        type Value = i64;
        fn zero(&self) -> i64 {
            0
        }
        fn one(&self) -> i64 {
            1
        }
        fn add(&self, x: &i64, y: &i64) -> i64 {
            x + y
        }
        fn mul(&self, x: &i64, y: &i64) -> i64 {
            x * y
        }
        fn ident(&self, name: &str, pos: usize) -> Result<i64> {
            match name {
                "x" => Ok(3),
                _ => Err(Error::UnknownGenerator(format!("{name}@{pos}"))),
            }
        }
    }

    #[test]
    fn precedence_and_implicit_product() {
        let e = Expr::parse("x^2 + 1 + (x+1)x").unwrap();
        assert_eq!(e.eval(&Ints).unwrap(), 9 + 1 + 12);
        assert_eq!(e.idents(), vec!["x".to_string()]);
    }

    #[test]
    fn errors_carry_positions() {
        match Expr::parse("x^ + 1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Expr::parse("y+1").unwrap().eval(&Ints), Err(Error::UnknownGenerator(_))));
    }
}
