//! Problem files: a ring header, one map line per variable, optional options.
//!
//! ```text
//! # comments run to the end of the line
//! ring QQ[x1^±, x2^±, x3]
//! x1 -> x1
//! x2 -> 1
//! x3 -> x3 + x2 - 1
//! option label = E7
//! ```
//!
//! Domains are `QQ`, `ZZ` and `GF(p)`. `^±` (or `^+-`) marks a Laurent
//! variable; Laurent variables come first. Expressions use `+ - * ^ ( )`
//! with integer or `a/b` coefficients; negative exponents are allowed on
//! Laurent variables and on parenthesized units only.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::domain::DomainDescriptor;
use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::poly::MixedPoly;
use crate::ring::{ExponentVector, Ring, RingSignature};

const MAX_EXPONENT: i64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub endomorphism: Endomorphism,
    /// `option key = value` lines, in file order.
    pub options: Vec<(String, String)>,
    /// Leading `#` lines emitted before the header when printing.
    pub comments: Vec<String>,
}

impl ProblemFile {
    pub fn new(endomorphism: Endomorphism) -> Self {
        ProblemFile {
            endomorphism,
            options: Vec::new(),
            comments: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.endomorphism.ring()
    }
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.comments {
            writeln!(f, "# {c}")?;
        }
        writeln!(f, "{}", self.ring().header())?;
        write!(f, "{}", self.endomorphism)?;
        for (k, v) in &self.options {
            writeln!(f, "option {k} = {v}")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    ring: Option<&'a Ring>,
}

impl<'a> Cursor<'a> {
    fn new(text: &str, line: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
            ring: None,
        }
    }

    fn err_at(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: pos + 1,
            message: message.into(),
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        self.err_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let want: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&want) {
            self.pos += want.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn ident(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == '_' => {}
            _ => return Err(self.err("expected an identifier")),
        }
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn digits(&mut self) -> Result<(usize, BigInt)> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok((start, s.parse().expect("digits")))
    }

    fn ring(&self) -> &'a Ring {
        self.ring.expect("expression parsing needs a ring")
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<MixedPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := unary ('*' unary)*
    fn term(&mut self) -> Result<MixedPoly> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    // unary := '-' unary | '+' unary | power
    fn unary(&mut self) -> Result<MixedPoly> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    // power := atom ('^' ['-'|'+'] digits)?
    fn power(&mut self) -> Result<MixedPoly> {
        let (start, base, var) = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let sign_pos = {
            self.skip_ws();
            self.pos
        };
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let (_, mag) = self.digits()?;
        let e = mag
            .to_i64()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| self.err_at(sign_pos, format!("exponent larger than {MAX_EXPONENT}")))?;
        let e = if negative { -e } else { e };
        if e < 0 {
            if let Some(i) = var {
                let ring = self.ring();
                if !ring.is_laurent(i) {
                    return Err(self.err_at(
                        sign_pos,
                        format!("negative exponent on polynomial variable {}", ring.name(i)),
                    ));
                }
            } else if base.is_unit().is_none() {
                return Err(self.err_at(start, format!("negative power of non-unit {base}")));
            }
        }
        base.pow(e).map_err(|err| self.err_at(start, err.to_string()))
    }

    // atom := number ['/' number] | ident | '(' expr ')'
    fn atom(&mut self) -> Result<(usize, MixedPoly, Option<usize>)> {
        let ring = self.ring();
        let c = self.peek().ok_or_else(|| self.err("unexpected end of line"))?;
        let start = self.pos;
        if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(')')?;
            return Ok((start, e, None));
        }
        if c.is_ascii_digit() {
            let (_, num) = self.digits()?;
            let mut value = BigRational::from_integer(num);
            if self.eat('/') {
                let (dpos, den) = self.digits()?;
                if den.is_zero() {
                    return Err(self.err_at(dpos, "division by zero"));
                }
                value /= BigRational::from_integer(den);
            }
            let c = ring
                .domain()
                .coerce(&value)
                .map_err(|e| self.err_at(start, e.to_string()))?;
            return Ok((start, MixedPoly::constant(ring, c), None));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let (pos, name) = self.ident()?;
            let i = ring
                .index_of(&name)
                .ok_or_else(|| self.err_at(pos, format!("undeclared identifier {name}")))?;
            return Ok((start, MixedPoly::var(ring, i), Some(i)));
        }
        Err(self.err(format!("unexpected character '{c}'")))
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_header(cur: &mut Cursor) -> Result<Ring> {
    if !cur.eat_str("ring") {
        return Err(cur.err("expected a 'ring' header"));
    }
    let (dpos, dname) = cur.ident()?;
    let domain = match dname.as_str() {
        "QQ" => DomainDescriptor::rationals(),
        "ZZ" => DomainDescriptor::integers(),
        "GF" => {
            cur.expect('(')?;
            let (ppos, p) = cur.digits()?;
            cur.expect(')')?;
            let p = p.to_u64().ok_or_else(|| cur.err_at(ppos, "field size too large"))?;
            DomainDescriptor::prime_field(p).map_err(|e| cur.err_at(ppos, e.to_string()))?
        }
        other => return Err(cur.err_at(dpos, format!("unknown domain {other}"))),
    };
    cur.expect('[')?;
    let mut names = Vec::new();
    let mut d = 0;
    if !cur.eat(']') {
        loop {
            let (vpos, name) = cur.ident()?;
            let laurent = if cur.eat('^') {
                if cur.eat('±') || cur.eat_str("+-") {
                    true
                } else {
                    return Err(cur.err("expected '±' after '^'"));
                }
            } else {
                false
            };
            if laurent {
                if d < names.len() {
                    return Err(cur.err_at(vpos, "Laurent variables must precede polynomial variables"));
                }
                d += 1;
            }
            if names.contains(&name) {
                return Err(cur.err_at(vpos, format!("duplicate variable {name}")));
            }
            names.push(name);
            if cur.eat(']') {
                break;
            }
            cur.expect(',')?;
        }
    }
    if !cur.at_end() {
        return Err(cur.err("trailing input after ring header"));
    }
    RingSignature::new(domain, names, d).map_err(|e| cur.err_at(0, e.to_string()))
}

/// Parses a polynomial expression in `ring`.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<MixedPoly> {
    let mut cur = Cursor::new(text, 1);
    cur.ring = Some(ring);
    let p = cur.expr()?;
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    Ok(p)
}

/// Parses a complete problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut ring: Option<Ring> = None;
    let mut images: Vec<Option<MixedPoly>> = Vec::new();
    let mut options = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line, line_no);
        let Some(r) = ring.as_ref() else {
            let parsed = parse_header(&mut cur)?;
            images = vec![None; parsed.n()];
            ring = Some(parsed);
            continue;
        };
        cur.ring = Some(r);
        let (pos, name) = cur.ident()?;
        if name == "option" && cur.peek() != Some('-') {
            let (_, key) = cur.ident()?;
            cur.expect('=')?;
            cur.skip_ws();
            let value: String = cur.chars[cur.pos..].iter().collect();
            options.push((key, value.trim().to_string()));
            continue;
        }
        let i = r
            .index_of(&name)
            .ok_or_else(|| cur.err_at(pos, format!("undeclared identifier {name}")))?;
        if !cur.eat_str("->") {
            return Err(cur.err("expected '->'"));
        }
        let image = cur.expr()?;
        if !cur.at_end() {
            return Err(cur.err("trailing input"));
        }
        if images[i].is_some() {
            return Err(cur.err_at(pos, format!("duplicate map line for {name}")));
        }
        images[i] = Some(image);
    }
    let ring = ring.ok_or(Error::Parse {
        line: last_line.max(1),
        column: 1,
        message: "missing 'ring' header".into(),
    })?;
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            p.ok_or_else(|| Error::Parse {
                line: last_line + 1,
                column: 1,
                message: format!("no map line for {}", ring.name(i)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProblemFile {
        endomorphism: Endomorphism::new(&ring, images)?,
        options,
        comments: Vec::new(),
    })
}

/// Parses a monomial written as `x1^a*x2^b` (or `1`) into its exponent.
pub fn parse_monomial(text: &str, ring: &Ring) -> Result<ExponentVector> {
    let p = parse_poly(text, ring)?;
    match p.terms() {
        [t] if t.coeff == ring.domain().one() => Ok(t.exp.clone()),
        _ => Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("{text} is not a monomial"),
        }),
    }
}
