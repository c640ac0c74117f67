//! Series literals and canonical JSON.
//!
//! Literal grammar: a `+`/`-` separated sum of terms, each a `*`-separated
//! product of factors, where a factor is a rational (`3/2`), a bracketed
//! coefficient (`[1,1;0,1]`, `[1 - g]`), a word `w("xy")`, or a bare run of
//! alphabet letters (`xy`). Factors multiply left to right in the series
//! ring, so `w("x")*[a]` is twisted correctly.

use std::sync::Arc;

use serde_json::{Map, Value};

use super::{SeriesRing, TwistedSeries};
use crate::coeff::CoeffRing;
use crate::word::Word;
use crate::{Error, Result, Q};

fn bare_coefficient<R: CoeffRing>(ring: &R, text: &str) -> Result<R::Elem> {
    if ring.contains_rationals() {
        ring.from_rational(&crate::coeff::parse_rational(text)?)
    } else {
        ring.parse_elem(text)
    }
}

pub(super) fn format_series<R: CoeffRing>(s: &TwistedSeries<R>) -> String {
    let ring = s.ring();
    let coeff = ring.coeff();
    let mut out = String::new();
    for (w, a) in s.terms() {
        let text = coeff.format_elem(a);
        let word = (!w.is_empty()).then(|| format!("w(\"{}\")", w.render(ring.letters())));
        let scalar = text
            .parse::<Q>()
            .ok()
            .filter(|_| bare_coefficient(coeff, &text).map(|b| b == *a).unwrap_or(false));
        match scalar {
            Some(q) => {
                let neg = q < Q::from_integer(0.into());
                let mag = if neg { -q } else { q };
                if out.is_empty() {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                match word {
                    Some(wd) if mag == Q::from_integer(1.into()) => out.push_str(&wd),
                    Some(wd) => out.push_str(&format!("{mag}*{wd}")),
                    None => out.push_str(&mag.to_string()),
                }
            }
            None => {
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                out.push_str(&format!("[{text}]"));
                if let Some(wd) = word {
                    out.push('*');
                    out.push_str(&wd);
                }
            }
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

struct Parser<'a, R: CoeffRing> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a Arc<SeriesRing<R>>,
    src: &'a str,
}

impl<'a, R: CoeffRing> Parser<'a, R> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn factor(&mut self) -> Result<TwistedSeries<R>> {
        self.skip_ws();
        let coeff = self.ring.coeff();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek(), Some(d) if d.is_ascii_digit() || d == '/') {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                Ok(TwistedSeries::lift(self.ring, bare_coefficient(coeff, &text)?))
            }
            Some('[') => {
                let start = self.pos + 1;
                let mut depth = 0usize;
                loop {
                    match self.peek() {
                        None => return Err(self.err("unbalanced '['")),
                        Some('[') => depth += 1,
                        Some(']') => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                self.pos += 1;
                Ok(TwistedSeries::lift(self.ring, coeff.parse_elem(&text)?))
            }
            Some('w') if self.chars.get(self.pos + 1) == Some(&'(') => {
                self.pos += 2;
                if self.peek() != Some('"') {
                    return Err(self.err("expected '\"' after w("));
                }
                self.pos += 1;
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c != '"') {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                if self.chars.get(self.pos..self.pos + 2) != Some(&['"', ')']) {
                    return Err(self.err("expected '\")' closing the word"));
                }
                self.pos += 2;
                self.word(&text)
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_alphabetic()) {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                self.word(&text)
            }
            _ => Err(self.err("expected a factor")),
        }
    }

    fn word(&self, text: &str) -> Result<TwistedSeries<R>> {
        let w = Word::parse(text, self.ring.letters())
            .ok_or_else(|| Error::Parse(format!("{text:?} is not a word in the alphabet")))?;
        Ok(TwistedSeries::monomial(self.ring, self.ring.coeff().one(), w))
    }

    fn term(&mut self) -> Result<TwistedSeries<R>> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn sum(&mut self) -> Result<TwistedSeries<R>> {
        let mut acc = TwistedSeries::zero(self.ring);
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negate = false;
            let mut saw_sign = false;
            while let Some(c @ ('+' | '-')) = self.peek() {
                negate ^= c == '-';
                saw_sign = true;
                self.pos += 1;
                self.skip_ws();
            }
            if !first && !saw_sign {
                return Err(self.err("expected '+' or '-'"));
            }
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            first = false;
            self.skip_ws();
            if self.pos >= self.chars.len() {
                return Ok(acc);
            }
        }
    }
}

/// Parses a series literal in the given ring.
pub fn parse_series<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, text: &str) -> Result<TwistedSeries<R>> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, ring, src: text };
    p.sum()
}

/// Accepts either a literal string or a `{word: coefficient}` object.
pub fn parse_series_value<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, v: &Value) -> Result<TwistedSeries<R>> {
    match v {
        Value::String(s) => parse_series(ring, s),
        Value::Object(m) => {
            let mut terms = Vec::with_capacity(m.len());
            for (k, c) in m {
                let w = Word::parse(k, ring.letters())
                    .ok_or_else(|| Error::Parse(format!("{k:?} is not a word in the alphabet")))?;
                let a = match c {
                    Value::String(s) => ring.coeff().parse_elem(s)?,
                    Value::Number(n) => ring.coeff().parse_elem(&n.to_string())?,
                    _ => return Err(Error::Parse(format!("coefficient of {k:?} must be a string"))),
                };
                terms.push((w, a));
            }
            Ok(TwistedSeries::from_terms(ring, terms))
        }
        Value::Number(n) => parse_series(ring, &n.to_string()),
        _ => Err(Error::Parse("series must be a literal string or a {word: coefficient} object".into())),
    }
}

/// Canonical `{word: coefficient}` object, words in graded-lex order.
pub fn series_to_json<R: CoeffRing>(s: &TwistedSeries<R>) -> Value {
    let ring = s.ring();
    let mut m = Map::new();
    for (w, a) in s.terms() {
        m.insert(w.render(ring.letters()), Value::String(ring.coeff().format_elem(a)));
    }
    Value::Object(m)
}
