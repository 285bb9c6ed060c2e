//! The one-variable expression language used for curve components.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := primary ("^" unary)?
//! primary := NUMBER | "v" | "pi" | "e" | FUNC "(" expr ")" | "(" expr ")"
//! FUNC    := sin | cos | sinh | cosh | tan | tanh | exp | ln | sqrt
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-v^2`
//! is `-(v^2)` and `2^-v` is `2^(-v)`.

use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::jets::{apply, Elementary, Jet3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    pub fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Func(Elementary),
}

/// Expression tree. Number literals are finite and non-negative; a leading
/// minus is always a [`UnaryOp::Neg`] node.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Number(f64),
    Constant(Constant),
    Variable,
    Unary(UnaryOp, Box<ExprAst>),
    Binary(BinOp, Box<ExprAst>, Box<ExprAst>),
}

impl ExprAst {
    pub fn number(x: f64) -> Self {
        ExprAst::Number(x)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: ExprAst) -> Self {
        ExprAst::Unary(UnaryOp::Neg, Box::new(e))
    }

    pub fn func(f: Elementary, e: ExprAst) -> Self {
        ExprAst::Unary(UnaryOp::Func(f), Box::new(e))
    }

    pub fn binary(op: BinOp, l: ExprAst, r: ExprAst) -> Self {
        ExprAst::Binary(op, Box::new(l), Box::new(r))
    }

    /// Evaluates the expression and its first three derivatives at `v`.
    pub fn eval_jet(&self, v: Jet3) -> Result<Jet3> {
        Ok(match self {
            ExprAst::Number(x) => Jet3::constant(*x),
            ExprAst::Constant(c) => Jet3::constant(c.value()),
            ExprAst::Variable => v,
            ExprAst::Unary(UnaryOp::Neg, a) => -a.eval_jet(v)?,
            ExprAst::Unary(UnaryOp::Func(f), a) => apply(*f, a.eval_jet(v)?)?,
            ExprAst::Binary(op, l, r) => {
                let (a, b) = (l.eval_jet(v)?, r.eval_jet(v)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a.checked_div(b)?,
                    BinOp::Pow => a.pow(b)?,
                }
            }
        })
    }

    pub fn eval(&self, v: f64) -> Result<f64> {
        Ok(self.eval_jet(Jet3::constant(v))?.c0)
    }

    pub fn mentions_variable(&self) -> bool {
        match self {
            ExprAst::Variable => true,
            ExprAst::Number(_) | ExprAst::Constant(_) => false,
            ExprAst::Unary(_, a) => a.mentions_variable(),
            ExprAst::Binary(_, l, r) => l.mentions_variable() || r.mentions_variable(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            ExprAst::Binary(op, ..) => op.precedence(),
            ExprAst::Unary(UnaryOp::Neg, _) => 3,
            _ => 5,
        }
    }
}

impl fmt::Display for ExprAst {
    /// Serializes with the minimal parentheses needed to parse back to the
    /// same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &ExprAst, paren: bool) -> fmt::Result {
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            ExprAst::Number(x) => {
                let plain = x.to_string();
                if plain.len() > 24 {
                    write!(f, "{x:e}")
                } else {
                    f.write_str(&plain)
                }
            }
            ExprAst::Constant(c) => f.write_str(c.name()),
            ExprAst::Variable => f.write_str("v"),
            ExprAst::Unary(UnaryOp::Func(func), a) => write!(f, "{func}({a})"),
            ExprAst::Unary(UnaryOp::Neg, a) => {
                f.write_str("-")?;
                child(f, a, a.precedence() < 3)
            }
            ExprAst::Binary(BinOp::Pow, l, r) => {
                child(f, l, l.precedence() < 5)?;
                f.write_str("^")?;
                child(f, r, r.precedence() < 3)
            }
            ExprAst::Binary(op, l, r) => {
                let p = op.precedence();
                child(f, l, l.precedence() < p)?;
                write!(f, " {} ", op.symbol())?;
                child(f, r, r.precedence() <= p)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(x) => format!("number {x}"),
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::Op(c) => format!("`{c}`"),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.pos - start
    }

    /// Returns the token and its starting byte offset.
    fn next(&mut self) -> std::result::Result<(Token, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((Token::End, start));
        };
        let tok = match c {
            b'0'..=b'9' | b'.' => {
                let int = self.digits();
                let mut frac = 0;
                if self.src.get(self.pos) == Some(&b'.') {
                    self.pos += 1;
                    frac = self.digits();
                }
                if int + frac == 0 {
                    return Err(ParseError::new(start, "expected digits in number"));
                }
                if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
                    let save = self.pos;
                    self.pos += 1;
                    if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                        self.pos += 1;
                    }
                    if self.digits() == 0 {
                        // not an exponent; leave `e` for the next token
                        self.pos = save;
                    }
                }
                // the slice is ASCII by construction
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                let x: f64 = text.parse().map_err(|_| ParseError::new(start, "malformed number"))?;
                if !x.is_finite() {
                    return Err(ParseError::new(start, "number out of range"));
                }
                Token::Number(x)
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                Token::Ident(text.to_string())
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                self.pos += 1;
                Token::Op(c as char)
            }
            b'(' => {
                self.pos += 1;
                Token::LParen
            }
            b')' => {
                self.pos += 1;
                Token::RParen
            }
            _ => {
                let ch = std::str::from_utf8(&self.src[start..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| format!("\\x{c:02x}"));
                return Err(ParseError::new(start, format!("unexpected character `{ch}`")));
            }
        };
        Ok((tok, start))
    }
}

/// Nesting limit; deeper input is rejected instead of overflowing the stack.
const MAX_NESTING: usize = 256;

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Token,
    at: usize,
    depth: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> PResult<Self> {
        let mut lexer = Lexer {
            src: text.as_bytes(),
            pos: 0,
        };
        let (tok, at) = lexer.next()?;
        Ok(Self {
            lexer,
            tok,
            at,
            depth: 0,
        })
    }

    fn bump(&mut self) -> PResult<()> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::new(self.at, format!("expected {expected}, found {}", self.tok.describe()))
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(ParseError::new(self.at, "expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> PResult<ExprAst> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Token::Op('+') => BinOp::Add,
                Token::Op('-') => BinOp::Sub,
                _ => break,
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = ExprAst::binary(op, lhs, rhs);
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> PResult<ExprAst> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.tok {
                Token::Op('*') => BinOp::Mul,
                Token::Op('/') => BinOp::Div,
                _ => break,
            };
            self.bump()?;
            let rhs = self.unary()?;
            lhs = ExprAst::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<ExprAst> {
        if self.tok == Token::Op('-') {
            self.enter()?;
            self.bump()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(ExprAst::neg(inner));
        }
        self.power()
    }

    fn power(&mut self) -> PResult<ExprAst> {
        let base = self.primary()?;
        if self.tok == Token::Op('^') {
            self.enter()?;
            self.bump()?;
            let exponent = self.unary()?;
            self.depth -= 1;
            return Ok(ExprAst::binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult<ExprAst> {
        match std::mem::replace(&mut self.tok, Token::End) {
            Token::Number(x) => {
                self.bump()?;
                Ok(ExprAst::Number(x))
            }
            Token::LParen => {
                self.bump()?;
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Token::Ident(name) => {
                let start = self.at;
                let node = match name.as_str() {
                    "v" => ExprAst::Variable,
                    "pi" => ExprAst::Constant(Constant::Pi),
                    "e" => ExprAst::Constant(Constant::E),
                    other => match Elementary::from_name(other) {
                        Some(func) => {
                            self.bump()?;
                            if self.tok != Token::LParen {
                                return Err(self.error(&format!("`(` after `{other}`")));
                            }
                            self.bump()?;
                            let arg = self.expr()?;
                            self.expect_rparen()?;
                            return Ok(ExprAst::func(func, arg));
                        }
                        None => return Err(ParseError::new(start, format!("unknown identifier `{other}`"))),
                    },
                };
                self.bump()?;
                Ok(node)
            }
            other => {
                self.tok = other;
                Err(self.error("a number, `v`, a constant, a function or `(`"))
            }
        }
    }

    fn expect_rparen(&mut self) -> PResult<()> {
        if self.tok != Token::RParen {
            return Err(self.error("`)`"));
        }
        self.bump()
    }
}

/// Parses one expression in the variable `v`.
pub fn parse_expression(text: &str) -> std::result::Result<ExprAst, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if p.tok != Token::End {
        return Err(p.error("an operator or end of input"));
    }
    Ok(e)
}

/// Parses and evaluates an expression that must not mention `v`, such as a
/// command-line number like `e` or `2*pi`.
pub fn parse_constant(text: &str) -> Result<f64> {
    let e = parse_expression(text)?;
    if e.mentions_variable() {
        return Err(Error::ParseError(ParseError::new(
            0,
            "expected a constant expression, found one mentioning `v`",
        )));
    }
    e.eval(0.0)
}
