//! Coefficients, states and sequents in their rendered ASCII form.
//!
//! ```text
//! sequent := state "=>" [dist] | state "|-" "[" coeff "]" KET
//! state   := ["-"] term (("+" | "-") term)*
//! term    := ["(" coeff ")"] KET
//! coeff   := ["-"] prod (("+" | "-") prod)*
//! prod    := power (("*" | "/") power)*
//! power   := atom ["^" INT]
//! atom    := INT | "sqrt2" | "i" | "w" | "(" coeff ")" | "-" atom
//! ```
//!
//! Division is only by `±√2^m`, which keeps every value in the ring.

use std::collections::BTreeMap;

use super::lexer::{lex, Tok, Token};
use super::SourceError;
use crate::amplitude::{Amplitude, ExactReal};
use crate::calculus::{Distribution, Sequent};
use crate::scalar::Coeff;
use crate::state::{combine, BasisState, Superposition};

const MAX_DEPTH: usize = 64;
const MAX_EXPONENT: u32 = 4096;

/// A token stream with a cursor.
pub(crate) struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Cursor {
    pub fn new(toks: Vec<Token>) -> Self {
        Cursor { toks, pos: 0, depth: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    pub fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_punct(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    pub fn at_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == w)
    }

    pub fn expect_punct(&mut self, c: char) -> Result<Token, SourceError> {
        if self.at_punct(c) {
            Ok(self.next())
        } else {
            Err(self.peek().error(format!("expected `{c}`")))
        }
    }

    pub fn expect_word(&mut self, w: &str) -> Result<Token, SourceError> {
        if self.at_word(w) {
            Ok(self.next())
        } else {
            Err(self.peek().error(format!("expected `{w}`")))
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<Token, SourceError> {
        if matches!(self.peek().tok, Tok::Ident(_)) {
            Ok(self.next())
        } else {
            Err(self.peek().error(format!("expected {what}")))
        }
    }

    pub fn expect_ket(&mut self) -> Result<(Token, BasisState), SourceError> {
        match &self.peek().tok {
            Tok::Ket(digits) => {
                let b = BasisState::parse(digits).map_err(|e| self.peek().error(e.to_string()))?;
                Ok((self.next(), b))
            }
            _ => Err(self.peek().error("expected a ket such as `|01>`")),
        }
    }

    pub fn expect_usize(&mut self, what: &str) -> Result<(Token, usize), SourceError> {
        match &self.peek().tok {
            Tok::Int(d) => {
                let v = d.parse().map_err(|_| self.peek().error(format!("{what} is too large")))?;
                Ok((self.next(), v))
            }
            _ => Err(self.peek().error(format!("expected {what}"))),
        }
    }

    pub fn expect_eof(&mut self) -> Result<(), SourceError> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            Err(self.peek().error("unexpected trailing input"))
        }
    }

    fn enter(&mut self) -> Result<(), SourceError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.peek().error("expression nested too deeply"));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }
}

fn arith<T, E>(at: &Token, r: Result<T, E>) -> Result<T, SourceError> {
    r.map_err(|_| at.error("coefficient overflows the integer type"))
}

pub(crate) fn coeff<C: Coeff>(cur: &mut Cursor) -> Result<Amplitude<C>, SourceError> {
    cur.enter()?;
    let start = cur.peek().clone();
    let mut acc = if cur.at_punct('-') {
        cur.next();
        let p = prod(cur)?;
        arith(&start, p.checked_neg())?
    } else {
        prod(cur)?
    };
    while cur.at_punct('+') || cur.at_punct('-') {
        let op = cur.next();
        let rhs = prod(cur)?;
        acc = arith(&op, if op.tok == Tok::Punct('+') { acc.checked_add(&rhs) } else { acc.checked_sub(&rhs) })?;
    }
    cur.leave();
    Ok(acc)
}

fn prod<C: Coeff>(cur: &mut Cursor) -> Result<Amplitude<C>, SourceError> {
    let mut acc = power(cur)?;
    while cur.at_punct('*') || cur.at_punct('/') {
        let op = cur.next();
        let rhs_at = cur.peek().clone();
        let rhs = power(cur)?;
        acc = if op.tok == Tok::Punct('*') {
            arith(&op, acc.checked_mul(&rhs))?
        } else {
            let (negative, m) =
                rhs.as_signed_sqrt2_power().ok_or_else(|| rhs_at.error("can only divide by a power of sqrt2"))?;
            let q = arith(&op, acc.checked_div_sqrt2_pow(m))?;
            if negative {
                arith(&op, q.checked_neg())?
            } else {
                q
            }
        };
    }
    Ok(acc)
}

fn power<C: Coeff>(cur: &mut Cursor) -> Result<Amplitude<C>, SourceError> {
    let base = atom(cur)?;
    if !cur.at_punct('^') {
        return Ok(base);
    }
    let caret = cur.next();
    let (tok, e) = cur.expect_usize("an exponent")?;
    let e = u32::try_from(e).ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| tok.error("exponent too large"))?;
    let mut acc = Amplitude::one();
    for _ in 0..e {
        acc = arith(&caret, acc.checked_mul(&base))?;
    }
    Ok(acc)
}

fn atom<C: Coeff>(cur: &mut Cursor) -> Result<Amplitude<C>, SourceError> {
    let t = cur.peek().clone();
    match &t.tok {
        Tok::Int(d) => {
            cur.next();
            let n = C::from_str_radix(d, 10).map_err(|_| t.error("integer too large"))?;
            Ok(Amplitude::from_int(n))
        }
        Tok::Ident(w) if w == "sqrt2" => {
            cur.next();
            Ok(Amplitude::sqrt2())
        }
        Tok::Ident(w) if w == "i" => {
            cur.next();
            Ok(Amplitude::i())
        }
        Tok::Ident(w) if w == "w" => {
            cur.next();
            Ok(Amplitude::omega_pow(1))
        }
        Tok::Punct('(') => {
            cur.next();
            let v = coeff(cur)?;
            cur.expect_punct(')')?;
            Ok(v)
        }
        Tok::Punct('-') => {
            cur.next();
            cur.enter()?;
            let v = atom(cur)?;
            cur.leave();
            arith(&t, v.checked_neg())
        }
        _ => Err(t.error("expected a coefficient")),
    }
}

/// Leading-sign, coefficient and ket of each term, with the token to blame.
fn terms<C: Coeff>(cur: &mut Cursor) -> Result<Vec<(Token, Amplitude<C>, BasisState)>, SourceError> {
    let mut out = Vec::new();
    loop {
        let start = cur.peek().clone();
        let negative = if out.is_empty() {
            cur.at_punct('-') && cur.next().tok == Tok::Punct('-')
        } else if cur.at_punct('+') || cur.at_punct('-') {
            cur.next().tok == Tok::Punct('-')
        } else {
            break;
        };
        let mut a = if cur.at_punct('(') {
            cur.next();
            let v = coeff(cur)?;
            cur.expect_punct(')')?;
            v
        } else {
            Amplitude::one()
        };
        if negative {
            a = arith(&start, a.checked_neg())?;
        }
        let (_, b) = cur.expect_ket()?;
        out.push((start, a, b));
    }
    Ok(out)
}

pub(crate) fn state<C: Coeff>(cur: &mut Cursor) -> Result<Superposition<C>, SourceError> {
    let first = cur.peek().clone();
    let ts = terms(cur)?;
    let width = ts.first().map(|(_, _, b)| b.width()).ok_or_else(|| first.error("expected a state"))?;
    if let Some((t, _, _)) = ts.iter().find(|(_, _, b)| b.width() != width) {
        return Err(t.error(format!("all kets in a state must have {width} qubits")));
    }
    combine(ts.into_iter().map(|(_, a, b)| (a, b)), width).map_err(|e| first.error(e.to_string()))
}

fn distribution<C: Coeff>(cur: &mut Cursor) -> Result<Distribution<C>, SourceError> {
    let mut probs = BTreeMap::new();
    for (t, a, b) in terms::<C>(cur)? {
        let p: ExactReal<C> = arith(&t, a.to_exact_real())?.ok_or_else(|| t.error("probabilities must be real"))?;
        if probs.insert(b, p).is_some() {
            return Err(t.error("outcome listed twice"));
        }
    }
    Ok(Distribution::from_map(probs))
}

pub(crate) fn sequent<C: Coeff>(cur: &mut Cursor) -> Result<Sequent<C>, SourceError> {
    let s = state(cur)?;
    match cur.peek().tok {
        Tok::Arrow => {
            cur.next();
            if matches!(cur.peek().tok, Tok::Ket(_) | Tok::Punct('(') | Tok::Punct('-')) {
                Ok(Sequent::BornAnnotated { state: s, dist: distribution(cur)? })
            } else {
                Ok(Sequent::Coherent(s))
            }
        }
        Tok::Turnstile => {
            cur.next();
            cur.expect_punct('[')?;
            let at = cur.peek().clone();
            let p = coeff::<C>(cur)?;
            let prob = arith(&at, p.to_exact_real())?.ok_or_else(|| at.error("probabilities must be real"))?;
            cur.expect_punct(']')?;
            let (_, outcome) = cur.expect_ket()?;
            Ok(Sequent::Measured { state: s, outcome, prob })
        }
        _ => Err(cur.peek().error("expected `=>` or `|-`")),
    }
}

fn whole<T>(text: &str, f: impl FnOnce(&mut Cursor) -> Result<T, SourceError>) -> Result<T, SourceError> {
    let mut cur = Cursor::new(lex(text, false)?);
    let v = f(&mut cur)?;
    cur.expect_eof()?;
    Ok(v)
}

/// Parses a coefficient such as `1/sqrt2` or `(1 + i)/2`.
pub fn parse_amplitude<C: Coeff>(text: &str) -> Result<Amplitude<C>, SourceError> {
    whole(text, coeff)
}

/// Parses a state such as `(1/sqrt2)|00> + (1/sqrt2)|11>`.
pub fn parse_state<C: Coeff>(text: &str) -> Result<Superposition<C>, SourceError> {
    whole(text, state)
}

/// Parses a sequent in its rendered form.
pub fn parse_sequent<C: Coeff>(text: &str) -> Result<Sequent<C>, SourceError> {
    whole(text, sequent)
}
