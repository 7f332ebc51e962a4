//! Textual specs for fields, algebras and quadratic forms.
//!
//! ```text
//! field   = GF2 | extend(field, "poly")
//! algebra = Mat(n) | Quat(a, b) | Tensor(algebra, algebra)
//!         | Crossed(ext="poly", cocycle=trivial | cyclic(c) | [[..],..])
//! form    = term (+ term)*
//! term    = H | k*H | [a, b] | <c>[a, b]
//! ```

use crate::csa::{crossed_product, matrix_algebra, quaternion_algebra, tensor_product, Algebra, Cocycle};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, Poly};
use crate::quadform::QuadraticForm;

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

/// Re-bases positions in errors from a nested parse.
fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
        e => e,
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Cursor<'a> {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(parse_err(self.pos, format!("expected `{s}`")))
        }
    }

    fn done(&mut self) -> Result<()> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(parse_err(self.pos, format!("unexpected trailing input `{}`", self.rest())))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(parse_err(self.pos, "expected a number"));
        }
        let v = self.rest()[..len].parse().map_err(|_| parse_err(self.pos, "number out of range"))?;
        self.pos += len;
        Ok(v)
    }

    fn quoted(&mut self) -> Result<(usize, &'a str)> {
        self.expect("\"")?;
        let start = self.pos;
        let len = self.rest().find('"').ok_or_else(|| parse_err(start, "unterminated string"))?;
        self.pos += len + 1;
        Ok((start, &self.text[start..start + len]))
    }

    /// An element expression: everything up to a `,`, `]`, `)` or `>` at
    /// parenthesis depth zero.
    fn expr(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0usize;
        let mut end = self.text.len();
        for (i, ch) in self.rest().char_indices() {
            match ch {
                '(' => depth += 1,
                ')' if depth > 0 => depth -= 1,
                ',' | ']' | ')' | '>' if depth == 0 => {
                    end = start + i;
                    break;
                }
                _ => {}
            }
        }
        let s = self.text[start..end].trim_end();
        if s.is_empty() {
            return Err(parse_err(start, "expected an element"));
        }
        self.pos = end;
        Ok((start, s))
    }
}

fn elem(f: &Field, (pos, text): (usize, &str)) -> Result<Elem> {
    f.parse_elem(text).map_err(|e| shift(e, pos))
}

pub fn parse_field(text: &str) -> Result<Field> {
    let mut c = Cursor::new(text);
    let f = field_rule(&mut c)?;
    c.done()?;
    Ok(f)
}

fn field_rule(c: &mut Cursor) -> Result<Field> {
    if c.eat("GF2") {
        return Ok(Field::gf2());
    }
    c.expect("extend")?;
    c.expect("(")?;
    let parent = field_rule(c)?;
    c.expect(",")?;
    let (pos, poly) = c.quoted()?;
    c.expect(")")?;
    parent.extend_str(poly).map_err(|e| shift(e, pos))
}

/// Canonical rendering of a field, inverse to [`parse_field`].
pub fn render_field(f: &Field) -> String {
    f.describe()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleSpec {
    Trivial,
    Cyclic(Elem),
    Table(Vec<Vec<Elem>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    Mat(usize),
    Quat(Elem, Elem),
    /// `ext` is a monic irreducible polynomial over the base field in the
    /// variable `var`; cocycle values live in the extension.
    Crossed {
        ext: Poly,
        var: String,
        cocycle: CocycleSpec,
    },
    Tensor(Box<AlgebraSpec>, Box<AlgebraSpec>),
}

impl AlgebraSpec {
    pub fn parse(f: &Field, text: &str) -> Result<AlgebraSpec> {
        let mut c = Cursor::new(text);
        let a = algebra_rule(f, &mut c)?;
        c.done()?;
        Ok(a)
    }

    pub fn degree(&self) -> usize {
        match self {
            AlgebraSpec::Mat(n) => *n,
            AlgebraSpec::Quat(..) => 2,
            AlgebraSpec::Crossed { ext, .. } => ext.degree().unwrap_or(0),
            AlgebraSpec::Tensor(a, b) => a.degree() * b.degree(),
        }
    }

    fn extension(f: &Field, ext: &Poly, var: &str) -> Result<Field> {
        f.extend(ext, var)
    }

    pub fn build(&self, f: &Field) -> Result<Algebra> {
        match self {
            AlgebraSpec::Mat(n) => Ok(matrix_algebra(f, *n)),
            AlgebraSpec::Quat(a, b) => quaternion_algebra(f, *a, *b),
            AlgebraSpec::Crossed { ext, var, cocycle } => {
                let e = AlgebraSpec::extension(f, ext, var)?;
                let cocycle = match cocycle {
                    CocycleSpec::Trivial => Cocycle::Trivial,
                    CocycleSpec::Cyclic(a) => Cocycle::Cyclic(*a),
                    CocycleSpec::Table(t) => Cocycle::Table(t.clone()),
                };
                Ok(crossed_product(&e, cocycle)?.algebra)
            }
            AlgebraSpec::Tensor(a, b) => tensor_product(&a.build(f)?, &b.build(f)?),
        }
    }

    pub fn render(&self, f: &Field) -> String {
        match self {
            AlgebraSpec::Mat(n) => format!("Mat({n})"),
            AlgebraSpec::Quat(a, b) => format!("Quat({},{})", f.format(*a), f.format(*b)),
            AlgebraSpec::Crossed { ext, var, cocycle } => {
                let e = AlgebraSpec::extension(f, ext, var).expect("validated at parse time");
                let c = match cocycle {
                    CocycleSpec::Trivial => "trivial".to_string(),
                    CocycleSpec::Cyclic(a) => format!("cyclic({})", f.format(*a)),
                    CocycleSpec::Table(t) => {
                        let rows: Vec<String> = t
                            .iter()
                            .map(|r| format!("[{}]", r.iter().map(|&x| e.format(x)).collect::<Vec<_>>().join(",")))
                            .collect();
                        format!("[{}]", rows.join(","))
                    }
                };
                format!("Crossed(ext=\"{}\",cocycle={c})", ext.format(f, var))
            }
            AlgebraSpec::Tensor(a, b) => format!("Tensor({},{})", a.render(f), b.render(f)),
        }
    }
}

fn algebra_rule(f: &Field, c: &mut Cursor) -> Result<AlgebraSpec> {
    c.skip_ws();
    let start = c.pos;
    if c.eat("Mat") {
        c.expect("(")?;
        let n = c.number()?;
        c.expect(")")?;
        if n == 0 {
            return Err(parse_err(start, "matrix size must be positive"));
        }
        Ok(AlgebraSpec::Mat(n))
    } else if c.eat("Quat") {
        c.expect("(")?;
        let a = elem(f, c.expr()?)?;
        c.expect(",")?;
        let b = elem(f, c.expr()?)?;
        c.expect(")")?;
        if a.is_zero() {
            return Err(parse_err(start, "Quat(a,b) needs a != 0"));
        }
        Ok(AlgebraSpec::Quat(a, b))
    } else if c.eat("Tensor") {
        c.expect("(")?;
        let a = algebra_rule(f, c)?;
        c.expect(",")?;
        let b = algebra_rule(f, c)?;
        c.expect(")")?;
        Ok(AlgebraSpec::Tensor(Box::new(a), Box::new(b)))
    } else if c.eat("Crossed") {
        c.expect("(")?;
        c.expect("ext")?;
        c.expect("=")?;
        let (pos, text) = c.quoted()?;
        let e = f.extend_str(text).map_err(|e| shift(e, pos))?;
        let var = e.name().to_string();
        let ext = e.modulus().clone();
        let mut cocycle = CocycleSpec::Trivial;
        if c.eat(",") {
            if c.eat("table") {
                c.expect("=")?;
                cocycle = CocycleSpec::Table(table_rule(&e, c)?);
            } else {
                c.expect("cocycle")?;
                c.expect("=")?;
                cocycle = if c.eat("trivial") {
                    CocycleSpec::Trivial
                } else if c.eat("cyclic") {
                    c.expect("(")?;
                    let a = elem(f, c.expr()?)?;
                    c.expect(")")?;
                    CocycleSpec::Cyclic(a)
                } else {
                    CocycleSpec::Table(table_rule(&e, c)?)
                };
            }
        }
        c.expect(")")?;
        Ok(AlgebraSpec::Crossed { ext, var, cocycle })
    } else {
        Err(parse_err(start, "expected Mat, Quat, Crossed or Tensor"))
    }
}

fn table_rule(e: &Field, c: &mut Cursor) -> Result<Vec<Vec<Elem>>> {
    c.expect("[")?;
    let mut rows = Vec::new();
    loop {
        c.expect("[")?;
        let mut row = Vec::new();
        loop {
            row.push(elem(e, c.expr()?)?);
            if !c.eat(",") {
                break;
            }
        }
        c.expect("]")?;
        rows.push(row);
        if !c.eat(",") {
            break;
        }
    }
    c.expect("]")?;
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormTerm {
    Hyperbolic(usize),
    /// <c>[a, b], c = 1 when absent.
    Binary {
        c: Elem,
        a: Elem,
        b: Elem,
    },
}

/// A perpendicular sum of binary forms and hyperbolic planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpec(pub Vec<FormTerm>);

impl FormSpec {
    pub fn parse(f: &Field, text: &str) -> Result<FormSpec> {
        let mut c = Cursor::new(text);
        let mut terms = vec![term_rule(f, &mut c)?];
        while c.eat("+") {
            terms.push(term_rule(f, &mut c)?);
        }
        c.done()?;
        Ok(FormSpec(terms))
    }

    pub fn build(&self, f: &Field) -> Result<QuadraticForm> {
        let mut q = QuadraticForm::zero(f);
        for t in &self.0 {
            let part = match *t {
                FormTerm::Hyperbolic(k) => QuadraticForm::hyperbolic(f, k),
                FormTerm::Binary { c, a, b } => QuadraticForm::binary(f, a, b).scale(c)?,
            };
            q = q.direct_sum(&part)?;
        }
        Ok(q)
    }

    pub fn render(&self, f: &Field) -> String {
        self.0
            .iter()
            .map(|t| match *t {
                FormTerm::Hyperbolic(1) => "H".to_string(),
                FormTerm::Hyperbolic(k) => format!("{k}*H"),
                FormTerm::Binary { c, a, b } if c == Elem::ONE => format!("[{},{}]", f.format(a), f.format(b)),
                FormTerm::Binary { c, a, b } => format!("<{}>[{},{}]", f.format(c), f.format(a), f.format(b)),
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

fn term_rule(f: &Field, c: &mut Cursor) -> Result<FormTerm> {
    c.skip_ws();
    let start = c.pos;
    if c.eat("H") {
        return Ok(FormTerm::Hyperbolic(1));
    }
    if c.rest().starts_with(|ch: char| ch.is_ascii_digit()) {
        let k = c.number()?;
        c.expect("*")?;
        c.expect("H")?;
        return Ok(FormTerm::Hyperbolic(k));
    }
    let mut scale = Elem::ONE;
    if c.eat("<") {
        scale = elem(f, c.expr()?)?;
        c.expect(">")?;
        if scale.is_zero() {
            return Err(parse_err(start, "scaling factor must be nonzero"));
        }
    }
    if !c.eat("[") {
        return Err(parse_err(start, "expected H, k*H, [a,b] or <c>[a,b]"));
    }
    let a = elem(f, c.expr()?)?;
    c.expect(",")?;
    let b = elem(f, c.expr()?)?;
    c.expect("]")?;
    Ok(FormTerm::Binary { c: scale, a, b })
}
