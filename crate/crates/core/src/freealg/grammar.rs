//! Text syntax for elements of `T(V)`.
//!
//! ```text
//! expr    := ['+' | '-'] term (('+' | '-') term)*
//! term    := factor (['*' | '/'] factor)*        juxtaposition multiplies
//! factor  := atom ['^' exponent]
//! exponent:= ['-'] (INT | IDENT | '(' idx ')')
//! atom    := INT | 'z' | IDENT
//!          | 'x' DIGITS                          x3 is a generator, x112 the bracket x_{112}
//!          | 'x(' idx ')'                        generator with a computed index
//!          | '[' expr ',' expr ']'               braided commutator
//!          | 'ad(' idx ',' expr ')'              braided adjoint action
//!          | 'xw(' idx (',' idx)* ')'            iterated bracket
//!          | 'xint(' idx ',' idx ')'             interval root vector x_{(ij)}
//!          | 'q(' idx ',' idx ')' | 'qt(' idx ',' idx ')'
//!          | '(' expr ')'
//! idx     := iterm (('+' | '-') iterm)*;  iterm := ifactor ('*' ifactor)*
//! ifactor := INT | IDENT | '(' idx ')' | '-' ifactor
//! ```
//!
//! Generator indices are 1-based. `z` is the primitive root of unity of
//! the ambient matrix order. A name directly followed by `(` is a function
//! call, so `q(1,2)` is `q_12` while `q*(x1+x2)` scales by the parameter
//! `q`. Other identifiers are looked up in the [`Env`]: scalar bindings
//! (such as `q`, `r`, `s`, `zeta`) or integer index bindings (such as `N`,
//! `theta`, `i`, `j`), the latter usable both as integers and as indices.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::{ad, braided_commutator, iterated_bracket, xint, FreeElement};
use crate::braiding::BraidingMatrix;
use crate::cyclo::CycScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Bindings available while evaluating an expression.
#[derive(Clone, Debug)]
pub struct Env<'a> {
    pub matrix: &'a BraidingMatrix,
    scalars: HashMap<String, CycScalar>,
    indices: HashMap<String, i64>,
    elements: HashMap<String, FreeElement>,
}

impl<'a> Env<'a> {
    pub fn new(matrix: &'a BraidingMatrix) -> Self {
        Env { matrix, scalars: HashMap::new(), indices: HashMap::new(), elements: HashMap::new() }
    }

    pub fn with_scalar(mut self, name: &str, value: CycScalar) -> Self {
        self.scalars.insert(name.to_string(), value);
        self
    }

    pub fn with_index(mut self, name: &str, value: i64) -> Self {
        self.indices.insert(name.to_string(), value);
        self
    }

    /// Binds a name to an element. Bindings shadow the `x<digits>` rule, so
    /// `x11212` can be given a meaning other than the iterated bracket.
    pub fn with_element(mut self, name: &str, value: FreeElement) -> Self {
        self.elements.insert(name.to_string(), value);
        self
    }

    /// Parses `text` in the current environment and binds the result to `name`.
    pub fn define(&mut self, name: &str, text: &str) -> Result<(), ParseError> {
        let e = parse_element(text, self)?;
        self.elements.insert(name.to_string(), e);
        Ok(())
    }

    pub fn element(&self, name: &str) -> Option<&FreeElement> {
        self.elements.get(name)
    }

    pub fn set_index(&mut self, name: &str, value: i64) {
        self.indices.insert(name.to_string(), value);
    }

    pub fn index(&self, name: &str) -> Option<i64> {
        self.indices.get(name).copied()
    }

    pub fn scalar(&self, name: &str) -> Option<&CycScalar> {
        self.scalars.get(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(i64),
    /// Identifier; the flag records an immediately following `(`.
    Ident(String, bool),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Cmp(&'static str),
    AndAnd,
    OrOr,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s, _) => write!(f, "'{s}'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBrack => f.write_str("'['"),
            Tok::RBrack => f.write_str("']'"),
            Tok::LBrace => f.write_str("'{'"),
            Tok::RBrace => f.write_str("'}'"),
            Tok::Comma => f.write_str("','"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Cmp(s) => write!(f, "'{s}'"),
            Tok::AndAnd => f.write_str("'&&'"),
            Tok::OrOr => f.write_str("'||'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, col);
        let err = |m: String| ParseError { line: l0, col: c0, message: m };
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        let two: String = chars[k..(k + 2).min(chars.len())].iter().collect();
        let (tok, width) = if c.is_ascii_digit() {
            let mut j = k;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[k..j].iter().collect();
            let n = s.parse::<i64>().map_err(|_| err(format!("integer literal {s} is too large")))?;
            (Tok::Int(n), j - k)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = k;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let s: String = chars[k..j].iter().collect();
            let call = j < chars.len() && chars[j] == '(';
            (Tok::Ident(s, call), j - k)
        } else {
            match two.as_str() {
                "==" => (Tok::Cmp("=="), 2),
                "!=" => (Tok::Cmp("!="), 2),
                "<=" => (Tok::Cmp("<="), 2),
                ">=" => (Tok::Cmp(">="), 2),
                "&&" => (Tok::AndAnd, 2),
                "||" => (Tok::OrOr, 2),
                _ => {
                    let t = match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        '[' => Tok::LBrack,
                        ']' => Tok::RBrack,
                        '{' => Tok::LBrace,
                        '}' => Tok::RBrace,
                        ',' => Tok::Comma,
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '/' => Tok::Slash,
                        '^' => Tok::Caret,
                        '<' => Tok::Cmp("<"),
                        '>' => Tok::Cmp(">"),
                        other => return Err(err(format!("unexpected character '{other}'"))),
                    };
                    (t, 1)
                }
            }
        };
        out.push(Spanned { tok, line: l0, col: c0 });
        k += width;
        col += width;
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

/// Recursive-descent evaluator over a token stream.
pub(crate) struct Parser<'e, 'a> {
    toks: Vec<Spanned>,
    pos: usize,
    pub env: &'e Env<'a>,
}

impl<'e, 'a> Parser<'e, 'a> {
    pub fn new(text: &str, env: &'e Env<'a>) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0, env })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn advance(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error_here(&self, message: impl Into<String>) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError { line: s.line, col: s.col, message: message.into() }
    }

    fn error_at(&self, s: &Spanned, message: impl Into<String>) -> ParseError {
        ParseError { line: s.line, col: s.col, message: message.into() }
    }

    pub fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.advance();
            Ok(())
        } else {
            Err(self.error_here(format!("expected {t}, found {}", self.peek())))
        }
    }

    pub fn expect_eof(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error_here(format!("unexpected {} after expression", self.peek())))
        }
    }

    fn theta(&self) -> usize {
        self.env.matrix.theta()
    }

    fn order(&self) -> u32 {
        self.env.matrix.order()
    }

    pub fn expr(&mut self) -> Result<FreeElement, ParseError> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.advance();
                -self.term()?
            }
            Tok::Plus => {
                self.advance();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.advance();
                    acc += &self.term()?;
                }
                Tok::Minus => {
                    self.advance();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Ident(..) | Tok::LParen | Tok::LBrack)
    }

    fn term(&mut self) -> Result<FreeElement, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.advance();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    let at = self.advance();
                    let d = self.factor()?;
                    let s = d.as_scalar().ok_or_else(|| self.error_at(&at, "can only divide by a scalar"))?;
                    let inv = s.inv().map_err(|_| self.error_at(&at, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ if self.starts_factor() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FreeElement, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let at = self.advance();
        let e = self.exponent()?;
        if let Some(s) = base.as_scalar() {
            let p = s.pow(e).map_err(|_| self.error_at(&at, "zero raised to a negative power"))?;
            return Ok(FreeElement::scalar(p));
        }
        if e < 0 {
            return Err(self.error_at(&at, "negative powers are only defined for scalars"));
        }
        Ok(base.pow(e as u32))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let neg = if *self.peek() == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        let v = match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                n
            }
            Tok::Ident(name, false) => {
                let at = self.advance();
                self.env.index(&name).ok_or_else(|| self.error_at(&at, format!("unknown index variable '{name}'")))?
            }
            Tok::LParen => {
                self.advance();
                let v = self.idx()?;
                self.expect(Tok::RParen)?;
                v
            }
            other => return Err(self.error_here(format!("expected an exponent, found {other}"))),
        };
        Ok(if neg { -v } else { v })
    }

    /// An index expression evaluated to an integer.
    pub fn idx(&mut self) -> Result<i64, ParseError> {
        let mut acc = self.iterm()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.advance();
                    acc += self.iterm()?;
                }
                Tok::Minus => {
                    self.advance();
                    acc -= self.iterm()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn iterm(&mut self) -> Result<i64, ParseError> {
        let mut acc = self.ifactor()?;
        while *self.peek() == Tok::Star {
            self.advance();
            acc *= self.ifactor()?;
        }
        Ok(acc)
    }

    fn ifactor(&mut self) -> Result<i64, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(n)
            }
            Tok::Minus => {
                self.advance();
                Ok(-self.ifactor()?)
            }
            Tok::LParen => {
                self.advance();
                let v = self.idx()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Tok::Ident(name, _) => {
                let at = self.advance();
                self.env.index(&name).ok_or_else(|| self.error_at(&at, format!("unknown index variable '{name}'")))
            }
            other => Err(self.error_here(format!("expected an index, found {other}"))),
        }
    }

    /// A 1-based generator index, returned 0-based after a range check.
    fn vertex(&mut self) -> Result<usize, ParseError> {
        let at = self.toks[self.pos].clone();
        let v = self.idx()?;
        if v < 1 || v as usize > self.theta() {
            return Err(self.error_at(&at, format!("generator index {v} is out of range 1..={}", self.theta())));
        }
        Ok(v as usize - 1)
    }

    fn atom(&mut self) -> Result<FreeElement, ParseError> {
        let at = self.toks[self.pos].clone();
        match at.tok.clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(FreeElement::scalar(CycScalar::from_int(n)))
            }
            Tok::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::LBrack => {
                self.advance();
                let a = self.expr()?;
                self.expect(Tok::Comma)?;
                let b = self.expr()?;
                self.expect(Tok::RBrack)?;
                Ok(braided_commutator(self.env.matrix, &a, &b))
            }
            Tok::Ident(name, call) => {
                self.advance();
                if call {
                    return self.call(&name, &at);
                }
                if name == "z" {
                    return Ok(FreeElement::scalar(CycScalar::root_of_unity(self.order(), 1)));
                }
                if let Some(e) = self.env.element(&name) {
                    return Ok(e.clone());
                }
                if let Some(digits) = name.strip_prefix('x').filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit())) {
                    let mut idx = Vec::with_capacity(digits.len());
                    for ch in digits.bytes() {
                        let v = (ch - b'0') as usize;
                        if v == 0 || v > self.theta() {
                            return Err(self.error_at(&at, format!("generator index {v} in '{name}' is out of range 1..={}", self.theta())));
                        }
                        idx.push(v - 1);
                    }
                    return Ok(iterated_bracket(self.env.matrix, &idx));
                }
                if let Some(s) = self.env.scalar(&name) {
                    return Ok(FreeElement::scalar(s.clone()));
                }
                if let Some(v) = self.env.index(&name) {
                    return Ok(FreeElement::scalar(CycScalar::from_int(v)));
                }
                Err(self.error_at(&at, format!("unknown identifier '{name}'")))
            }
            other => Err(self.error_here(format!("expected an expression, found {other}"))),
        }
    }

    fn call(&mut self, name: &str, at: &Spanned) -> Result<FreeElement, ParseError> {
        self.expect(Tok::LParen)?;
        let q = self.env.matrix;
        let out = match name {
            "x" => FreeElement::generator(self.vertex()?),
            "xw" => {
                let mut idx = vec![self.vertex()?];
                while *self.peek() == Tok::Comma {
                    self.advance();
                    idx.push(self.vertex()?);
                }
                iterated_bracket(q, &idx)
            }
            "xint" => {
                let i = self.vertex()?;
                self.expect(Tok::Comma)?;
                let j = self.vertex()?;
                xint(q, i, j)
            }
            "ad" => {
                let i = self.vertex()?;
                self.expect(Tok::Comma)?;
                let e = self.expr()?;
                ad(q, i, &e)
            }
            "q" | "qt" => {
                let i = self.vertex()?;
                self.expect(Tok::Comma)?;
                let j = self.vertex()?;
                FreeElement::scalar(if name == "q" { q.q(i, j) } else { q.qt(i, j) })
            }
            other => return Err(self.error_at(at, format!("unknown function '{other}'"))),
        };
        self.expect(Tok::RParen)?;
        Ok(out)
    }
}

/// Parses and evaluates an element expression.
pub fn parse_element(text: &str, env: &Env<'_>) -> Result<FreeElement, ParseError> {
    let mut p = Parser::new(text, env)?;
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::FreeElement;

    fn m8() -> BraidingMatrix {
        BraidingMatrix::new(8, vec![vec![2, 7], vec![0, 7]]).unwrap()
    }

    #[test]
    fn spec_examples() {
        let q = m8();
        let env = Env::new(&q);
        let e = parse_element("x1*x2 - z^3*x2*x1", &env).unwrap();
        let expected = &(&FreeElement::generator(0) * &FreeElement::generator(1))
            - &(&FreeElement::generator(1) * &FreeElement::generator(0)).scale(&CycScalar::root_of_unity(8, 3));
        assert_eq!(e, expected);
        let b = parse_element("[xw(1,1,2), xw(1,2)]", &env).unwrap();
        let direct = braided_commutator(&q, &iterated_bracket(&q, &[0, 0, 1]), &iterated_bracket(&q, &[0, 1]));
        assert_eq!(b, direct);
        let q3 = BraidingMatrix::new(8, vec![vec![2, 7, 0], vec![0, 7, 1], vec![0, 0, 4]]).unwrap();
        let err = parse_element("[[xint(1,3),x2]", &Env::new(&q3)).unwrap_err();
        assert_eq!((err.line, err.col), (1, 16));
    }

    #[test]
    fn juxtaposition_and_precedence() {
        let q = m8();
        let env = Env::new(&q);
        assert_eq!(parse_element("2 x1 x2", &env).unwrap(), parse_element("2*x1*x2", &env).unwrap());
        assert_eq!(parse_element("x1^2 x2", &env).unwrap(), parse_element("x1*x1*x2", &env).unwrap());
        assert_eq!(parse_element("-x1 + x2", &env).unwrap(), parse_element("x2 - x1", &env).unwrap());
    }

    #[test]
    fn element_bindings_shadow_iterated_brackets() {
        let q = m8();
        let mut env = Env::new(&q);
        let nested = parse_element("x11212", &env).unwrap();
        assert_eq!(nested, iterated_bracket(&q, &[0, 0, 1, 0, 1]));
        env.define("x11212", "[x112, x12]").unwrap();
        let bound = parse_element("x11212", &env).unwrap();
        assert_eq!(bound, parse_element("[xw(1,1,2), xw(1,2)]", &env).unwrap());
        assert_ne!(bound, nested);
    }

    #[test]
    fn bindings() {
        let q = m8();
        let env = Env::new(&q).with_scalar("q", CycScalar::root_of_unity(8, 1)).with_index("i", 2).with_index("N", 8);
        assert_eq!(parse_element("q^-1", &env).unwrap().as_scalar().unwrap(), CycScalar::root_of_unity(8, 7));
        assert_eq!(parse_element("x(i)", &env).unwrap(), FreeElement::generator(1));
        assert_eq!(parse_element("x(i-1)^2", &env).unwrap(), FreeElement::generator(0).pow(2));
        assert_eq!(parse_element("q(1,2)", &env).unwrap().as_scalar().unwrap(), CycScalar::root_of_unity(8, 7));
        assert_eq!(parse_element("q^N", &env).unwrap(), FreeElement::one());
    }

    #[test]
    fn errors_carry_positions() {
        let q = m8();
        let env = Env::new(&q);
        let e = parse_element("x1 +\n  x3", &env).unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert!(parse_element("x1 / x2", &env).is_err());
        assert!(parse_element("x1^-1", &env).is_err());
        assert!(parse_element("foo", &env).is_err());
        assert!(parse_element("x1 $", &env).is_err());
    }
}
