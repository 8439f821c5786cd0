//! Sparse multivariate polynomials over an exact field, with the standard
//! grading (every variable has degree 1) and a fixed monomial order per ring.

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Exponent vector; length equals the number of ring variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.0.iter().zip(&b.0) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    other => return other,
                }
                // Reverse-lex tie break: last nonzero entry of a - b negative
                // means a is larger.
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: FieldSpec, vars: &[&str], order: MonomialOrder) -> Result<Arc<PolyRing>> {
        field.validate()?;
        if vars.is_empty() {
            return Err(Error::NoVariables);
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.to_string()));
            }
        }
        Ok(Arc::new(PolyRing {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            order,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn same(&self, other: &PolyRing) -> bool {
        self == other
    }
}

/// Terms kept sorted in strictly descending monomial order, no zero
/// coefficients. This is the unique canonical form.
#[derive(Clone, Debug)]
pub struct Polynomial {
    pub ring: Arc<PolyRing>,
    pub terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(Monomial::one(ring.nvars()), c)],
        }
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Polynomial {
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(Monomial::var(ring.nvars(), i), ring.field.one())],
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(m, c)],
        }
    }

    /// Normalize an arbitrary term list into canonical form.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, Coeff)>) -> Polynomial {
        terms.sort_by(|a, b| ring.order.cmp(&b.0, &a.0).then_with(|| a.0.cmp(&b.0)));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = ring.field.add(&last.1, &c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial {
            ring: Arc::clone(ring),
            terms: out,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let f = &self.ring.field;
        let ord = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match ord.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(&self.terms[i].1, &other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let f = &self.ring.field;
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let f = &self.ring.field;
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), f.mul(a, c)))
                .collect(),
        }
    }

    /// Multiply by a single term c * m.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let f = &self.ring.field;
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(mm, a)| (mm.mul(m), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(m, c));
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn leading(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    /// Maximum total degree of any term; None for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Common total degree of all terms; the zero polynomial is homogeneous
    /// of every degree and reports None.
    pub fn homogeneous_degree(&self) -> Result<Option<i64>> {
        let mut deg = None;
        for (m, _) in &self.terms {
            let d = m.degree();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::Inhomogeneous(self.to_string()));
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    pub fn homogeneous_part(&self, d: i64) -> Polynomial {
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    pub fn constant_term(&self) -> Coeff {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    /// Coefficient of an exponent vector.
    pub fn coeff_of(&self, m: &Monomial) -> Coeff {
        self.terms
            .iter()
            .find(|(mm, _)| mm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn parse(ring: &Arc<PolyRing>, input: &str) -> Result<Polynomial> {
        parse::polynomial(ring, input)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = &self.ring.field;
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = field.is_negative(c);
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let c_abs = if neg { field.neg(c) } else { c.clone() };
            let mut printed = false;
            if !c_abs.is_one() || m.is_one() {
                write!(f, "{}", field.display(&c_abs))?;
                printed = true;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if printed {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.ring.vars[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                printed = true;
            }
        }
        Ok(())
    }
}

mod parse {
    use super::*;

    struct Lexer<'a> {
        chars: std::iter::Peekable<std::str::Chars<'a>>,
    }

    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Int(i64),
        Ident(String),
        Plus,
        Minus,
        Star,
        Caret,
        Slash,
        LParen,
        RParen,
    }

    impl<'a> Lexer<'a> {
        fn tokens(input: &'a str) -> Result<Vec<Tok>> {
            let mut lx = Lexer {
                chars: input.chars().peekable(),
            };
            let mut out = Vec::new();
            while let Some(&c) = lx.chars.peek() {
                match c {
                    ' ' | '\t' | '\n' | '\r' => {
                        lx.chars.next();
                    }
                    '+' => {
                        lx.chars.next();
                        out.push(Tok::Plus);
                    }
                    '-' => {
                        lx.chars.next();
                        out.push(Tok::Minus);
                    }
                    '*' => {
                        lx.chars.next();
                        out.push(Tok::Star);
                    }
                    '^' => {
                        lx.chars.next();
                        out.push(Tok::Caret);
                    }
                    '/' => {
                        lx.chars.next();
                        out.push(Tok::Slash);
                    }
                    '(' => {
                        lx.chars.next();
                        out.push(Tok::LParen);
                    }
                    ')' => {
                        lx.chars.next();
                        out.push(Tok::RParen);
                    }
                    '0'..='9' => {
                        let mut n = 0i64;
                        while let Some(&d) = lx.chars.peek() {
                            if let Some(v) = d.to_digit(10) {
                                n = n
                                    .checked_mul(10)
                                    .and_then(|n| n.checked_add(v as i64))
                                    .ok_or_else(|| {
                                        Error::Parse("integer literal too large".into())
                                    })?;
                                lx.chars.next();
                            } else {
                                break;
                            }
                        }
                        out.push(Tok::Int(n));
                    }
                    c if c.is_alphabetic() || c == '_' => {
                        let mut s = String::new();
                        while let Some(&d) = lx.chars.peek() {
                            if d.is_alphanumeric() || d == '_' {
                                s.push(d);
                                lx.chars.next();
                            } else {
                                break;
                            }
                        }
                        out.push(Tok::Ident(s));
                    }
                    other => {
                        return Err(Error::Parse(format!("unexpected character `{other}`")));
                    }
                }
            }
            Ok(out)
        }
    }

    /// Grammar: sum of terms; a term is a `*`-separated product of factors,
    /// each factor an integer, a rational `a/b`, a variable, or either raised
    /// to a `^` power. Parenthesized sums are allowed as factors.
    pub fn polynomial(ring: &Arc<PolyRing>, input: &str) -> Result<Polynomial> {
        let toks = Lexer::tokens(input)?;
        let mut pos = 0usize;
        let p = parse_sum(ring, &toks, &mut pos)?;
        if pos != toks.len() {
            return Err(Error::Parse(format!("trailing input in `{input}`")));
        }
        Ok(p)
    }

    fn parse_sum(ring: &Arc<PolyRing>, toks: &[Tok], pos: &mut usize) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(ring);
        let mut first = true;
        loop {
            let mut sign = 1i64;
            loop {
                match toks.get(*pos) {
                    Some(Tok::Plus) => {
                        *pos += 1;
                    }
                    Some(Tok::Minus) => {
                        sign = -sign;
                        *pos += 1;
                    }
                    _ => break,
                }
            }
            if toks.get(*pos).is_none() || toks.get(*pos) == Some(&Tok::RParen) {
                if first && sign == 1 {
                    break;
                }
                return Err(Error::Parse("dangling sign".into()));
            }
            let t = parse_term(ring, toks, pos)?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            first = false;
            match toks.get(*pos) {
                Some(Tok::Plus) | Some(Tok::Minus) => continue,
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(ring: &Arc<PolyRing>, toks: &[Tok], pos: &mut usize) -> Result<Polynomial> {
        let mut acc = parse_factor(ring, toks, pos)?;
        loop {
            match toks.get(*pos) {
                Some(Tok::Star) => {
                    *pos += 1;
                    let f = parse_factor(ring, toks, pos)?;
                    acc = acc.mul(&f);
                }
                // Implicit multiplication: `3x`, `x y`.
                Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = parse_factor(ring, toks, pos)?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(ring: &Arc<PolyRing>, toks: &[Tok], pos: &mut usize) -> Result<Polynomial> {
        let base = match toks.get(*pos) {
            Some(Tok::Int(n)) => {
                *pos += 1;
                if toks.get(*pos) == Some(&Tok::Slash) {
                    *pos += 1;
                    match toks.get(*pos) {
                        Some(Tok::Int(d)) if *d != 0 => {
                            *pos += 1;
                            Polynomial::constant(ring, ring.field.from_ratio(*n, *d))
                        }
                        _ => return Err(Error::Parse("expected denominator".into())),
                    }
                } else {
                    Polynomial::constant(ring, ring.field.from_int(*n))
                }
            }
            Some(Tok::Ident(name)) => {
                let i = ring
                    .var_index(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                *pos += 1;
                Polynomial::var(ring, i)
            }
            Some(Tok::LParen) => {
                *pos += 1;
                let p = parse_sum(ring, toks, pos)?;
                if toks.get(*pos) != Some(&Tok::RParen) {
                    return Err(Error::Parse("expected `)`".into()));
                }
                *pos += 1;
                p
            }
            other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
        };
        if toks.get(*pos) == Some(&Tok::Caret) {
            *pos += 1;
            match toks.get(*pos) {
                Some(Tok::Int(e)) if *e >= 0 => {
                    *pos += 1;
                    Ok(base.pow(*e as u32))
                }
                _ => Err(Error::Parse("expected non-negative exponent".into())),
            }
        } else {
            Ok(base)
        }
    }
}
