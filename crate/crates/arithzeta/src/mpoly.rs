//! Sparse multivariate polynomials over Z, plus the small expression
//! grammar used by variety spec files: integer literals, variables
//! x0..x9 (with x, y, z, w as aliases for x0..x3), +, -, *, ^ with
//! nonnegative integer exponents, and parentheses. Whitespace is
//! insignificant.

use crate::{Error, Int, Result};
use num::{One, Zero};

pub const MAX_VARS: usize = 10;

/// Canonical sparse polynomial: terms sorted by exponent vector, no zero
/// coefficients, exponent vectors all of length `nvars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Int, Vec<u32>)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: vec![],
        }
    }

    pub fn constant(nvars: usize, c: Int) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.push((c, vec![0; nvars]));
        }
        p
    }

    pub fn variable(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars);
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        MultiPoly {
            nvars,
            terms: vec![(Int::one(), exps)],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Int, Vec<u32>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn normalize(nvars: usize, mut terms: Vec<(Int, Vec<u32>)>) -> Self {
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut merged: Vec<(Int, Vec<u32>)> = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            match merged.last_mut() {
                Some((mc, me)) if *me == e => *mc += c,
                _ => merged.push((c, e)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        MultiPoly {
            nvars,
            terms: merged,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::normalize(self.nvars, terms)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(c, e)| (-c, e.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, e1) in &self.terms {
            for (c2, e2) in &other.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                terms.push((c1 * c2, exps));
            }
        }
        Self::normalize(self.nvars, terms)
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, e)| (a * c, e.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Int::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division of every coefficient; errors if any is not divisible.
    pub fn div_exact(&self, d: &Int) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, e) in &self.terms {
            if (c % d) != Int::zero() {
                return Err(Error::Internal(format!(
                    "inexact division of coefficient {c} by {d}"
                )));
            }
            terms.push((c / d, e.clone()));
        }
        Ok(MultiPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Substitute polynomials for each variable (used for composing with
    /// other polynomials over Z).
    pub fn compose(&self, args: &[MultiPoly]) -> Self {
        assert_eq!(args.len(), self.nvars);
        let nv = args.first().map(|a| a.nvars).unwrap_or(0);
        let mut acc = MultiPoly::zero(nv);
        for (c, exps) in &self.terms {
            let mut term = MultiPoly::constant(nv, c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&args[i].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Evaluate over Z.
    pub fn eval_int(&self, args: &[Int]) -> Int {
        let mut acc = Int::zero();
        for (c, exps) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &args[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Total degree of each monomial must agree; on failure returns the
    /// offending monomial rendered with the variable names.
    pub fn homogeneous_degree(&self) -> std::result::Result<u32, String> {
        let mut degree: Option<u32> = None;
        for (c, exps) in &self.terms {
            let d: u32 = exps.iter().sum();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(render_monomial(c, exps));
                }
                _ => {}
            }
        }
        Ok(degree.unwrap_or(0))
    }

    /// Largest variable index actually used, if any.
    pub fn max_var_used(&self) -> Option<usize> {
        self.terms
            .iter()
            .flat_map(|(_, e)| {
                e.iter()
                    .enumerate()
                    .filter(|&(_, &x)| x > 0)
                    .map(|(i, _)| i)
            })
            .max()
    }
}

pub fn render_monomial(c: &Int, exps: &[u32]) -> String {
    let mut parts = Vec::new();
    if !c.is_one() || exps.iter().all(|&e| e == 0) {
        parts.push(c.to_string());
    }
    for (i, &e) in exps.iter().enumerate() {
        if e == 1 {
            parts.push(format!("x{i}"));
        } else if e > 1 {
            parts.push(format!("x{i}^{e}"));
        }
    }
    parts.join("*")
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Int),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line,
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn tokens(&mut self) -> Result<Vec<(Token, usize)>> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let col = self.pos + 1;
            let c = self.src[self.pos] as char;
            match c {
                ' ' | '\t' => {
                    self.pos += 1;
                }
                '+' => {
                    out.push((Token::Plus, col));
                    self.pos += 1;
                }
                '-' => {
                    out.push((Token::Minus, col));
                    self.pos += 1;
                }
                '*' => {
                    out.push((Token::Star, col));
                    self.pos += 1;
                }
                '^' => {
                    out.push((Token::Caret, col));
                    self.pos += 1;
                }
                '(' => {
                    out.push((Token::LParen, col));
                    self.pos += 1;
                }
                ')' => {
                    out.push((Token::RParen, col));
                    self.pos += 1;
                }
                '0'..='9' => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let n: Int = text
                        .parse()
                        .map_err(|_| self.error(format!("bad integer literal {text}")))?;
                    out.push((Token::Num(n), col));
                }
                'a'..='z' | 'A'..='Z' => {
                    let start = self.pos;
                    self.pos += 1;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let idx = match name {
                        "x" => 0,
                        "y" => 1,
                        "z" => 2,
                        "w" => 3,
                        _ => {
                            let digits = name
                                .strip_prefix('x')
                                .ok_or_else(|| self.error(format!("unknown variable {name}")))?;
                            let idx: usize = digits
                                .parse()
                                .map_err(|_| self.error(format!("unknown variable {name}")))?;
                            if idx >= MAX_VARS {
                                return Err(self.error(format!(
                                    "variable {name} out of range (x0..x9)"
                                )));
                            }
                            idx
                        }
                    };
                    out.push((Token::Var(idx), col));
                }
                other => return Err(self.error(format!("unexpected character '{other}'"))),
            }
        }
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    line: usize,
    nvars: usize,
}

impl Parser {
    fn error_at(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col,
            msg: msg.into(),
        }
    }

    fn error_here(&self, msg: impl Into<String>) -> Error {
        let col = self
            .tokens
            .get(self.pos)
            .map(|&(_, c)| c)
            .unwrap_or_else(|| self.tokens.last().map(|&(_, c)| c + 1).unwrap_or(1));
        self.error_at(col, msg)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.advance();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.advance();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.advance();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.advance();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.advance();
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.advance();
            match self.advance() {
                Some(Token::Num(n)) => {
                    let e = u32::try_from(&n)
                        .map_err(|_| self.error_here("exponent out of range"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.error_here("expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<MultiPoly> {
        match self.advance() {
            Some(Token::Num(n)) => Ok(MultiPoly::constant(self.nvars, n)),
            Some(Token::Var(i)) => Ok(MultiPoly::variable(self.nvars, i)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.advance() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(self.error_here("expected ')'")),
                }
            }
            _ => Err(self.error_here("expected a number, variable, or '('")),
        }
    }
}

/// Parse one polynomial expression. `line` seeds parse-error positions.
pub fn parse_poly(src: &str, line: usize) -> Result<MultiPoly> {
    let tokens = Lexer::new(src, line).tokens()?;
    if tokens.is_empty() {
        return Err(Error::Parse {
            line,
            col: 1,
            msg: "empty polynomial expression".into(),
        });
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        line,
        nvars: MAX_VARS,
    };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error_here("trailing input after expression"));
    }
    Ok(poly)
}
