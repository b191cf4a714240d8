//! The `.alg` presentation format.
//!
//! ```text
//! # the G-fat point A_2
//! field Q
//! vars y1 y2
//! rel y1*y2
//! rel y1^2 - y2^2
//! rel y1^3
//! orient y1^2 : 1
//! aug y1 = 0, y2 = 0
//! ```
//!
//! A `family` line reserves `t` as a parameter that may appear in
//! relations and in orientation/augmentation values.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::frobenius::{AugmentedAlgebra, OrientedAlgebra};
use crate::linalg::Vector;
use crate::poly::{Monomial, MultiPoly, Quotient};
use crate::scalar::{Field, Scalar};

pub const PARAMETER: &str = "t";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationDocument {
    pub field: Field,
    pub vars: Vec<String>,
    /// Polynomials in `vars`, followed by `t` for families.
    pub relations: Vec<MultiPoly>,
    /// Values are polynomials in `t` (families) or in no variables.
    pub orient: Option<Vec<(Monomial, MultiPoly)>>,
    pub aug: Option<Vec<(String, MultiPoly)>>,
    pub family: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn syntax(line: usize, col: usize, expected: &str) -> Error {
    Error::Syntax {
        line,
        col,
        expected: expected.to_string(),
    }
}

fn tokenize(text: &str, line: usize) -> Result<(Vec<Token>, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                col,
            });
        } else if "+-*^/():,=".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return Err(syntax(line, col, "a token"));
        }
    }
    Ok((out, chars.len() + 1))
}

/// Cursor over the tokens of one line.
struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.line, self.col(), &format!("'{c}'")))
        }
    }

    fn ident(&mut self) -> Option<(String, usize)> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let col = self.col();
                self.pos += 1;
                Some((s.clone(), col))
            }
            _ => None,
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(syntax(self.line, self.col(), "operator or end of line"))
        }
    }
}

/// Recursive-descent polynomial expressions over a fixed ring.
struct ExprParser<'r> {
    field: Field,
    ring: &'r Arc<[String]>,
}

impl ExprParser<'_> {
    fn expr(&self, c: &mut Cursor) -> Result<MultiPoly> {
        let neg = if c.eat('-') {
            true
        } else {
            c.eat('+');
            false
        };
        let mut acc = self.term(c)?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if c.eat('+') {
                acc = acc.add(&self.term(c)?)?;
            } else if c.eat('-') {
                acc = acc.sub(&self.term(c)?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, c: &mut Cursor) -> Result<MultiPoly> {
        let mut acc = self.unary(c)?;
        while c.eat('*') {
            acc = acc.mul(&self.unary(c)?)?;
        }
        Ok(acc)
    }

    fn unary(&self, c: &mut Cursor) -> Result<MultiPoly> {
        if c.eat('-') {
            return Ok(self.unary(c)?.neg());
        }
        let base = self.atom(c)?;
        if c.eat('^') {
            let col = c.col();
            match c.peek() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n.try_into().map_err(|_| syntax(c.line, col, "a small exponent"))?;
                    c.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(syntax(c.line, col, "integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&self, c: &mut Cursor) -> Result<MultiPoly> {
        let col = c.col();
        match c.peek() {
            Some(Tok::Int(n)) => {
                c.pos += 1;
                let mut value = self.field.from_bigint(n);
                if c.eat('/') {
                    let dcol = c.col();
                    let d = match c.peek() {
                        Some(Tok::Int(d)) => d.clone(),
                        _ => return Err(syntax(c.line, dcol, "integer denominator")),
                    };
                    c.pos += 1;
                    let inv = self
                        .field
                        .from_bigint(&d)
                        .inv()
                        .ok_or_else(|| Error::ZeroInput(format!("denominator at {}:{dcol}", c.line)))?;
                    value = &value * &inv;
                }
                Ok(MultiPoly::constant(self.field, self.ring.clone(), value))
            }
            Some(Tok::Ident(name)) => {
                c.pos += 1;
                match self.ring.iter().position(|v| v == name) {
                    Some(i) => Ok(MultiPoly::var(self.field, self.ring.clone(), i)),
                    None => Err(Error::UnknownVariable {
                        name: name.clone(),
                        line: c.line,
                        col,
                    }),
                }
            }
            Some(Tok::Sym('(')) => {
                c.pos += 1;
                let inner = self.expr(c)?;
                c.expect(')')?;
                Ok(inner)
            }
            _ => Err(syntax(c.line, col, "number, variable or '('")),
        }
    }
}

struct Line {
    number: usize,
    keyword: String,
    keyword_col: usize,
    toks: Vec<Token>,
    end_col: usize,
}

impl Line {
    fn cursor(&self) -> Cursor<'_> {
        Cursor {
            toks: &self.toks,
            pos: 0,
            line: self.number,
            end_col: self.end_col,
        }
    }
}

fn duplicate(clause: &str, line: usize, col: usize) -> Error {
    Error::DuplicateClause {
        clause: clause.to_string(),
        line,
        col,
    }
}

fn single<'a>(lines: &'a [Line], keyword: &str) -> Result<Option<&'a Line>> {
    let mut found = lines.iter().filter(|l| l.keyword == keyword);
    let first = found.next();
    if let Some(second) = found.next() {
        return Err(duplicate(&format!("{keyword} clause"), second.number, second.keyword_col));
    }
    Ok(first)
}

/// Parses a presentation document. A missing `field` line means ℚ.
pub fn parse_presentation(text: &str) -> Result<PresentationDocument> {
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let number = k + 1;
        let (toks, end_col) = tokenize(raw, number)?;
        let Some(first) = toks.first() else { continue };
        let Tok::Ident(keyword) = &first.tok else {
            return Err(syntax(number, first.col, "a clause keyword"));
        };
        if !["field", "vars", "rel", "orient", "aug", "family"].contains(&keyword.as_str()) {
            return Err(syntax(number, first.col, "field, vars, rel, orient, aug or family"));
        }
        lines.push(Line {
            number,
            keyword: keyword.clone(),
            keyword_col: first.col,
            toks: toks[1..].to_vec(),
            end_col,
        });
    }

    let field = match single(&lines, "field")? {
        None => Field::Rationals,
        Some(l) => {
            let mut c = l.cursor();
            let field = match c.ident() {
                Some((name, _)) if name == "Q" => Field::Rationals,
                Some((name, _)) if name == "F" => match c.peek() {
                    Some(Tok::Int(p)) => {
                        c.pos += 1;
                        let p: u64 = p.try_into().map_err(|_| syntax(l.number, c.col(), "a small prime"))?;
                        Field::prime(p)?
                    }
                    _ => return Err(syntax(l.number, c.col(), "prime modulus")),
                },
                _ => return Err(syntax(l.number, c.col(), "Q or F <p>")),
            };
            c.finish()?;
            field
        }
    };

    let family = match single(&lines, "family")? {
        None => false,
        Some(l) => {
            l.cursor().finish()?;
            true
        }
    };

    let vars = match single(&lines, "vars")? {
        None => Vec::new(),
        Some(l) => {
            let mut c = l.cursor();
            let mut vars: Vec<String> = Vec::new();
            while !c.at_end() {
                let Some((name, col)) = c.ident() else {
                    return Err(syntax(l.number, c.col(), "variable name"));
                };
                if family && name == PARAMETER {
                    return Err(syntax(l.number, col, "variable name other than the reserved t"));
                }
                if vars.contains(&name) {
                    return Err(duplicate(&format!("variable {name}"), l.number, col));
                }
                vars.push(name);
            }
            vars
        }
    };

    let mut ring_names = vars.clone();
    if family {
        ring_names.push(PARAMETER.to_string());
    }
    let ring: Arc<[String]> = ring_names.into();
    let value_ring: Arc<[String]> = if family { vec![PARAMETER.to_string()].into() } else { Vec::new().into() };
    let poly_parser = ExprParser { field, ring: &ring };
    let value_parser = ExprParser {
        field,
        ring: &value_ring,
    };
    let monomial_ring: Arc<[String]> = vars.clone().into();
    let monomial_parser = ExprParser {
        field,
        ring: &monomial_ring,
    };

    let mut relations = Vec::new();
    for l in lines.iter().filter(|l| l.keyword == "rel") {
        let mut c = l.cursor();
        relations.push(poly_parser.expr(&mut c)?);
        c.finish()?;
    }

    let orient = match single(&lines, "orient")? {
        None => None,
        Some(l) => {
            let mut c = l.cursor();
            let mut entries: Vec<(Monomial, MultiPoly)> = Vec::new();
            loop {
                let col = c.col();
                let m = monomial_parser.term(&mut c)?;
                let mono = match m.terms().collect::<Vec<_>>().as_slice() {
                    [(mono, coef)] if coef.is_one() => (*mono).clone(),
                    _ => return Err(syntax(l.number, col, "monomial")),
                };
                if entries.iter().any(|(e, _)| *e == mono) {
                    return Err(duplicate(&format!("orientation entry {}", mono.format(&vars)), l.number, col));
                }
                c.expect(':')?;
                entries.push((mono, value_parser.expr(&mut c)?));
                if !c.eat(',') {
                    break;
                }
            }
            if !c.at_end() {
                return Err(syntax(l.number, c.col(), "',' or end of line"));
            }
            Some(entries)
        }
    };

    let aug = match single(&lines, "aug")? {
        None => None,
        Some(l) => {
            let mut c = l.cursor();
            let mut entries: Vec<(String, MultiPoly)> = Vec::new();
            loop {
                let col = c.col();
                let Some((name, _)) = c.ident() else {
                    return Err(syntax(l.number, col, "variable name"));
                };
                if !vars.contains(&name) {
                    return Err(Error::UnknownVariable {
                        name,
                        line: l.number,
                        col,
                    });
                }
                if entries.iter().any(|(e, _)| *e == name) {
                    return Err(duplicate(&format!("augmentation entry {name}"), l.number, col));
                }
                c.expect('=')?;
                entries.push((name, value_parser.expr(&mut c)?));
                if !c.eat(',') {
                    break;
                }
            }
            if !c.at_end() {
                return Err(syntax(l.number, c.col(), "',' or end of line"));
            }
            Some(entries)
        }
    };

    Ok(PresentationDocument {
        field,
        vars,
        relations,
        orient,
        aug,
        family,
    })
}

impl PresentationDocument {
    /// Canonical text; `parse_presentation` reads it back to an equal
    /// document.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self.field {
            Field::Rationals => out.push_str("field Q\n"),
            Field::Prime(p) => writeln!(out, "field F {p}").unwrap(),
        }
        if !self.vars.is_empty() {
            writeln!(out, "vars {}", self.vars.join(" ")).unwrap();
        }
        if self.family {
            out.push_str("family\n");
        }
        for r in &self.relations {
            writeln!(out, "rel {r}").unwrap();
        }
        if let Some(o) = &self.orient {
            let parts: Vec<String> = o.iter().map(|(m, v)| format!("{} : {v}", m.format(&self.vars))).collect();
            writeln!(out, "orient {}", parts.join(", ")).unwrap();
        }
        if let Some(a) = &self.aug {
            let parts: Vec<String> = a.iter().map(|(x, v)| format!("{x} = {v}")).collect();
            writeln!(out, "aug {}", parts.join(", ")).unwrap();
        }
        out
    }
}

/// A document compiled to its standard-monomial quotient.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub quotient: Quotient,
    pub vars: Arc<[String]>,
    pub phi: Option<Vector>,
    pub e: Option<Vector>,
}

impl Compiled {
    pub fn oriented(&self) -> Result<OrientedAlgebra> {
        let phi = self
            .phi
            .clone()
            .ok_or_else(|| Error::BadParameter("this command needs an orient clause".into()))?;
        OrientedAlgebra::new(self.quotient.algebra.clone(), phi)
    }

    pub fn augmented(&self) -> Result<AugmentedAlgebra> {
        let e = self
            .e
            .clone()
            .ok_or_else(|| Error::BadParameter("this command needs an aug clause".into()))?;
        AugmentedAlgebra::new(self.oriented()?, e)
    }
}

/// Value of a parameter polynomial: at `t = at` for families, the constant
/// otherwise.
fn value_at(p: &MultiPoly, at: Option<&Scalar>) -> Result<Scalar> {
    match at {
        Some(a) => p.eval(std::slice::from_ref(a)),
        None => p.eval(&[]),
    }
}

fn drop_parameter(p: &MultiPoly, vars: &Arc<[String]>, at: &Scalar) -> MultiPoly {
    let n = vars.len();
    let fixed = p.substitute(n, at);
    MultiPoly::from_terms(
        p.field(),
        vars.clone(),
        fixed.terms().map(|(m, c)| (Monomial(m.0[..n].to_vec()), c.clone())),
    )
}

/// Compiles to a quotient, orientation and augmentation. Families need
/// `at`; fixed documents reject it.
pub fn compile(doc: &PresentationDocument, at: Option<&Scalar>) -> Result<Compiled> {
    let field = doc.field;
    if let Some(a) = at {
        field.check(a)?;
    }
    match (doc.family, at) {
        (true, None) => return Err(Error::BadParameter("family document needs --at t=V".into())),
        (false, Some(_)) => return Err(Error::BadParameter("--at applies only to family documents".into())),
        _ => {}
    }
    let vars: Arc<[String]> = doc.vars.clone().into();
    let relations: Vec<MultiPoly> = match at {
        Some(a) => doc.relations.iter().map(|r| drop_parameter(r, &vars, a)).collect(),
        None => doc.relations.clone(),
    };
    let quotient = Quotient::new(field, vars.clone(), &relations)?;
    let d = quotient.basis.len();

    let phi = match &doc.orient {
        None => None,
        Some(entries) => {
            let mut phi = vec![field.zero(); d];
            for (m, v) in entries {
                let i = quotient.index_of(m).ok_or_else(|| {
                    Error::BadOrientation(format!("{} is not a standard monomial", m.format(&vars)))
                })?;
                phi[i] = value_at(v, at)?;
            }
            Some(phi)
        }
    };

    let e = match &doc.aug {
        None => None,
        Some(entries) => {
            let mut point = vec![field.zero(); vars.len()];
            for (name, v) in entries {
                let i = vars.iter().position(|x| x == name).expect("checked on parse");
                point[i] = value_at(v, at)?;
            }
            for r in &relations {
                if !r.eval(&point)?.is_zero() {
                    return Err(Error::NotAugmentation(format!("relation {r} does not vanish at the point")));
                }
            }
            let e = quotient
                .basis
                .iter()
                .map(|m| MultiPoly::term(field, vars.clone(), m.clone(), field.one()).eval(&point))
                .collect::<Result<Vector>>()?;
            Some(e)
        }
    };

    Ok(Compiled { quotient, vars, phi, e })
}
