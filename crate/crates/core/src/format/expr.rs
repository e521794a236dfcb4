//! The diagram expression grammar:
//!
//! ```text
//! expr := "id(" word ")" | genname | expr "*0" expr | expr "*1" expr | "(" expr ")"
//! word := ε | genname { " " genname }
//! ```
//!
//! `*1` binds tighter than `*0`; whitespace is insignificant. A linear
//! combination is a `+`/`-` separated list of terms, each an optional
//! scalar (`a/b` or an integer) followed by an expression. Schema
//! templates may use `expr ^ n` for an iterated vertical power, where
//! `n` is a natural number or the template index.

use super::ParseError;
use crate::diagram::{Diagram, Signature, Word};
use crate::lincomb::{scalar_int, LinComb, Scalar};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Star0,
    Star1,
    LPar,
    RPar,
    Plus,
    Minus,
    Caret,
    Int(BigInt),
    Slash,
    Id,
}

struct Lexer<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    col: usize,
    toks: Vec<(Tok, usize, usize)>,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '↑' | '↓' | '\'' | '.')
}

fn lex(src: &str, line: usize) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut lx = Lexer {
        src,
        chars: src.char_indices().collect(),
        pos: 0,
        line,
        col: 1,
        toks: Vec::new(),
    };
    while lx.pos < lx.chars.len() {
        let (byte, c) = lx.chars[lx.pos];
        let col = lx.col;
        match c {
            c if c.is_whitespace() => {
                lx.pos += 1;
                lx.col += 1;
            }
            '(' => lx.push1(Tok::LPar, col),
            ')' => lx.push1(Tok::RPar, col),
            '+' => lx.push1(Tok::Plus, col),
            '-' | '−' => lx.push1(Tok::Minus, col),
            '^' => lx.push1(Tok::Caret, col),
            '/' => lx.push1(Tok::Slash, col),
            '*' => {
                let next = lx.chars.get(lx.pos + 1).map(|p| p.1);
                match next {
                    Some('0') => {
                        lx.toks.push((Tok::Star0, line, col));
                        lx.pos += 2;
                        lx.col += 2;
                    }
                    Some('1') => {
                        lx.toks.push((Tok::Star1, line, col));
                        lx.pos += 2;
                        lx.col += 2;
                    }
                    _ => {
                        return Err(ParseError::syntax(line, col, "expected *0 or *1"));
                    }
                }
            }
            c if c.is_ascii_digit() => {
                let start = byte;
                let mut end = start + c.len_utf8();
                lx.pos += 1;
                lx.col += 1;
                while lx.pos < lx.chars.len() && lx.chars[lx.pos].1.is_ascii_digit() {
                    end = lx.chars[lx.pos].0 + 1;
                    lx.pos += 1;
                    lx.col += 1;
                }
                let text = &lx.src[start..end];
                // A digit followed by a name character is a name like `0cell`.
                if lx.pos < lx.chars.len() && is_name_char(lx.chars[lx.pos].1) {
                    let mut e = end;
                    while lx.pos < lx.chars.len() && is_name_char(lx.chars[lx.pos].1) {
                        e = lx.chars[lx.pos].0 + lx.chars[lx.pos].1.len_utf8();
                        lx.pos += 1;
                        lx.col += 1;
                    }
                    lx.toks.push((Tok::Name(lx.src[start..e].to_string()), line, col));
                } else {
                    let n: BigInt = text.parse().expect("digits");
                    lx.toks.push((Tok::Int(n), line, col));
                }
            }
            c if is_name_char(c) => {
                let start = byte;
                let mut end = start + c.len_utf8();
                lx.pos += 1;
                lx.col += 1;
                while lx.pos < lx.chars.len() && is_name_char(lx.chars[lx.pos].1) {
                    end = lx.chars[lx.pos].0 + lx.chars[lx.pos].1.len_utf8();
                    lx.pos += 1;
                    lx.col += 1;
                }
                let name = &lx.src[start..end];
                if name == "id" {
                    lx.toks.push((Tok::Id, line, col));
                } else {
                    lx.toks.push((Tok::Name(name.to_string()), line, col));
                }
            }
            other => {
                return Err(ParseError::syntax(line, col, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(lx.toks)
}

impl Lexer<'_> {
    fn push1(&mut self, t: Tok, col: usize) {
        self.toks.push((t, self.line, col));
        self.pos += 1;
        self.col += 1;
    }
}

pub struct ExprParser<'s> {
    sig: &'s Arc<Signature>,
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    line: usize,
    /// Substitution for the template index `n`, when parsing schemas.
    pub index_value: Option<usize>,
}

impl<'s> ExprParser<'s> {
    pub fn new(sig: &'s Arc<Signature>, text: &str, line: usize) -> Result<Self, ParseError> {
        Ok(ExprParser { sig, toks: lex(text, line)?, pos: 0, line, index_value: None })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.1, t.2))
            .unwrap_or((self.line, 9999))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        let (l, c) = self.here();
        match self.bump() {
            Some(got) if got == t => Ok(()),
            _ => Err(ParseError::syntax(l, c, format!("expected {what}"))),
        }
    }

    fn resolve_one(&self, name: &str) -> Option<crate::diagram::OneId> {
        self.sig
            .one(name)
            .or_else(|| match name {
                "u" => self.sig.one("↑"),
                "d" => self.sig.one("↓"),
                _ => None,
            })
    }

    fn resolve_two(&self, name: &str) -> Option<crate::diagram::GenId> {
        self.sig.two(name)
    }

    pub fn parse_word(&mut self) -> Result<Word, ParseError> {
        let mut letters = Vec::new();
        while let Some(Tok::Name(n)) = self.peek() {
            let n = n.clone();
            let (l, c) = self.here();
            let id = self
                .resolve_one(&n)
                .ok_or(ParseError::UnknownGenerator { name: n, line: l, col: c })?;
            letters.push(id);
            self.pos += 1;
        }
        let at = if letters.is_empty() {
            // Empty word: with a unique zero-cell this is unambiguous.
            self.sig.zeros().next().ok_or(ParseError::syntax(
                self.line,
                1,
                "signature has no zero-cells",
            ))?
        } else {
            self.sig.one_boundary(letters[0]).0
        };
        Word::new(self.sig, letters, at).map_err(|e| ParseError::Invalid {
            line: self.line,
            msg: e.to_string(),
        })
    }

    fn parse_primary(&mut self) -> Result<Diagram, ParseError> {
        let (l, c) = self.here();
        match self.bump() {
            Some(Tok::Id) => {
                self.expect(Tok::LPar, "( after id")?;
                let w = self.parse_word()?;
                self.expect(Tok::RPar, ") closing id(")?;
                Ok(Diagram::identity(self.sig, w))
            }
            Some(Tok::LPar) => {
                let d = self.parse_expr0()?;
                self.expect(Tok::RPar, "closing )")?;
                Ok(d)
            }
            Some(Tok::Name(n)) => {
                if let Some(g) = self.resolve_two(&n) {
                    Ok(Diagram::generator(self.sig, g))
                } else if let Some(o) = self.resolve_one(&n) {
                    // A bare 1-generator denotes its identity 2-cell.
                    let at = self.sig.one_boundary(o).0;
                    let w = Word::new(self.sig, vec![o], at).expect("single letter word");
                    Ok(Diagram::identity(self.sig, w))
                } else {
                    Err(ParseError::UnknownGenerator { name: n, line: l, col: c })
                }
            }
            _ => Err(ParseError::syntax(l, c, "expected an expression")),
        }
    }

    fn parse_power(&mut self) -> Result<Diagram, ParseError> {
        let base = self.parse_primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let (l, c) = self.here();
            let k: usize = match self.bump() {
                Some(Tok::Int(n)) => n.try_into().map_err(|_| {
                    ParseError::syntax(l, c, "power out of range")
                })?,
                Some(Tok::Name(n)) if n == "n" => self.index_value.ok_or(
                    ParseError::syntax(l, c, "template index n used outside a schema"),
                )?,
                _ => return Err(ParseError::syntax(l, c, "expected a natural number after ^")),
            };
            if base.source() != base.target() {
                return Err(ParseError::Invalid {
                    line: l,
                    msg: "^ requires an endo-2-cell".to_string(),
                });
            }
            let mut acc = Diagram::identity(self.sig, base.source().clone());
            for _ in 0..k {
                acc = acc.compose1(&base).map_err(|e| ParseError::Invalid {
                    line: l,
                    msg: e.to_string(),
                })?;
            }
            Ok(acc)
        } else {
            Ok(base)
        }
    }

    fn parse_expr1(&mut self) -> Result<Diagram, ParseError> {
        let mut acc = self.parse_power()?;
        while self.peek() == Some(&Tok::Star1) {
            let (l, _c) = self.here();
            self.bump();
            let rhs = self.parse_power()?;
            acc = acc.compose1(&rhs).map_err(|e| ParseError::Invalid {
                line: l,
                msg: e.to_string(),
            })?;
        }
        Ok(acc)
    }

    fn parse_expr0(&mut self) -> Result<Diagram, ParseError> {
        let mut acc = self.parse_expr1()?;
        while self.peek() == Some(&Tok::Star0) {
            let (l, _c) = self.here();
            self.bump();
            let rhs = self.parse_expr1()?;
            acc = acc.compose0(&rhs).map_err(|e| ParseError::Invalid {
                line: l,
                msg: e.to_string(),
            })?;
        }
        Ok(acc)
    }

    pub fn parse_diagram(&mut self) -> Result<Diagram, ParseError> {
        let d = self.parse_expr0()?;
        let (l, c) = self.here();
        if self.pos != self.toks.len() {
            return Err(ParseError::syntax(l, c, "trailing input"));
        }
        Ok(d)
    }

    fn parse_scalar_opt(&mut self) -> Result<Scalar, ParseError> {
        // [-] int [/ int], only when followed by more input (a term body)
        // or when the int is the whole coefficient.
        let mut sign = Scalar::one();
        while matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            sign = -sign;
        }
        if let Some(Tok::Int(_)) = self.peek() {
            let Some(Tok::Int(n)) = self.bump() else { unreachable!() };
            let mut value = BigRational::from_integer(n);
            if self.peek() == Some(&Tok::Slash) {
                self.bump();
                let (l, c) = self.here();
                match self.bump() {
                    Some(Tok::Int(d)) if !d.is_zero() => {
                        value /= BigRational::from_integer(d);
                    }
                    _ => return Err(ParseError::syntax(l, c, "expected a nonzero denominator")),
                }
            }
            Ok(sign * value)
        } else {
            Ok(sign)
        }
    }

    pub fn parse_lincomb(&mut self) -> Result<LinComb, ParseError> {
        let (l, c) = self.here();
        if self.peek() == Some(&Tok::Int(BigInt::zero())) && self.toks.len() == self.pos + 1 {
            return Err(ParseError::syntax(
                l,
                c,
                "a bare 0 has no boundary; write 0 id(...) instead",
            ));
        }
        let mut out: Option<LinComb> = None;
        loop {
            let coeff = self.parse_scalar_opt()?;
            let term = if self.pos == self.toks.len()
                || matches!(self.peek(), Some(Tok::Plus) | Some(Tok::Minus))
            {
                // Coefficient with no body: scalar multiple of an identity
                // is not expressible without a boundary.
                let (l, c) = self.here();
                return Err(ParseError::syntax(l, c, "expected a diagram expression"));
            } else {
                self.parse_expr0()?
            };
            let piece = LinComb::with_coeff(term, coeff);
            out = Some(match out {
                None => piece,
                Some(acc) => acc.add(&piece).map_err(|e| ParseError::Invalid {
                    line: self.line,
                    msg: e.to_string(),
                })?,
            });
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                }
                Some(Tok::Minus) => {
                    // Leave the sign for the next coefficient.
                }
                None => break,
                _ => {
                    let (l, c) = self.here();
                    return Err(ParseError::syntax(l, c, "expected + or - between terms"));
                }
            }
        }
        Ok(out.expect("at least one term parsed"))
    }
}

pub fn parse_diagram(sig: &Arc<Signature>, text: &str) -> Result<Diagram, ParseError> {
    ExprParser::new(sig, text, 1)?.parse_diagram()
}

pub fn parse_lincomb(sig: &Arc<Signature>, text: &str) -> Result<LinComb, ParseError> {
    ExprParser::new(sig, text, 1)?.parse_lincomb()
}

pub fn word_to_expr(w: &Word, sig: &Signature) -> String {
    w.display(sig).to_string()
}

/// Prints a diagram as a `*1`-chain of whiskered slices.
pub fn diagram_to_expr(d: &Diagram) -> String {
    let sig = d.signature();
    if d.is_identity() {
        return format!("id({})", word_after(sig, d.source(), &[]));
    }
    let words = d.level_words();
    let mut parts = Vec::with_capacity(d.slices().len());
    for (k, s) in d.slices().iter().enumerate() {
        let w = &words[k];
        let off = s.offset as usize;
        let (gsrc, _) = sig.two_boundary(s.gen);
        let left = w.slice_range(0, off, sig);
        let right = w.slice_range(off + gsrc.len(), w.len(), sig);
        let mut factors = Vec::new();
        if !left.is_empty() {
            factors.push(format!("id({})", left.display(sig)));
        }
        factors.push(sig.two_name(s.gen).to_string());
        if !right.is_empty() {
            factors.push(format!("id({})", right.display(sig)));
        }
        let joined = factors.join(" *0 ");
        if factors.len() > 1 && d.slices().len() > 1 {
            parts.push(format!("({joined})"));
        } else {
            parts.push(joined);
        }
    }
    parts.join(" *1 ")
}

fn word_after(sig: &Signature, w: &Word, _slices: &[()]) -> String {
    w.display(sig).to_string()
}

pub fn scalar_to_expr(c: &Scalar) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn lincomb_to_expr(u: &LinComb) -> String {
    if u.is_zero() {
        return format!(
            "0 id({})",
            u.source().display(u.signature())
        );
    }
    let mut out = String::new();
    for (k, (d, c)) in u.terms().enumerate() {
        let body = diagram_to_expr(d);
        if k == 0 {
            if c == &scalar_int(1) {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{} {}", scalar_to_expr(c), body));
            }
        } else if c.is_negative() {
            let pos = -c.clone();
            if pos == scalar_int(1) {
                out.push_str(&format!(" - {body}"));
            } else {
                out.push_str(&format!(" - {} {}", scalar_to_expr(&pos), body));
            }
        } else if c == &scalar_int(1) {
            out.push_str(&format!(" + {body}"));
        } else {
            out.push_str(&format!(" + {} {}", scalar_to_expr(c), body));
        }
    }
    out
}
