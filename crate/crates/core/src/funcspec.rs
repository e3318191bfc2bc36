//! A small expression language for real functions of one variable `x`.
//!
//! Generators loaded from JSON, integrands passed on the command line and
//! suite functions are all written in this language. The grammar, from
//! loosest to tightest binding:
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := primary ('^' unary)?          // right-associative
//! primary  := number | 'x' | 'pi' | 'e' | name '(' expr ')' | '(' expr ')'
//! ```
//!
//! so `-x^2` is `-(x^2)` and `2^-x^2` is `2^(-(x^2))`.

use std::fmt;

use crate::error::PseudoError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Exp,
    Ln,
    Abs,
    Sqrt,
    Sin,
    Cos,
}

impl UnaryOp {
    const FUNCTIONS: [UnaryOp; 6] = [UnaryOp::Exp, UnaryOp::Ln, UnaryOp::Abs, UnaryOp::Sqrt, UnaryOp::Sin, UnaryOp::Cos];

    fn function_name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Exp => "exp",
            UnaryOp::Ln => "ln",
            UnaryOp::Abs => "abs",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
        }
    }

    fn from_function_name(name: &str) -> Option<UnaryOp> {
        Self::FUNCTIONS.into_iter().find(|op| op.function_name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinaryOp::Add | BinaryOp::Sub => 1,
            BinaryOp::Mul | BinaryOp::Div => 2,
            BinaryOp::Pow => 4,
        }
    }
}

/// Parsed expression tree. Literals produced by the parser are never negative;
/// a leading minus is always a `Neg` node.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Lit(f64),
    Var,
    Const(Constant),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

impl std::ops::Neg for Expr {
    type Output = Expr;

    fn neg(self) -> Expr {
        Expr::Unary(UnaryOp::Neg, Box::new(self))
    }
}

impl Expr {
    pub fn unary(op: UnaryOp, e: Expr) -> Expr {
        Expr::Unary(op, Box::new(e))
    }

    pub fn binary(op: BinaryOp, l: Expr, r: Expr) -> Expr {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Lit(_) | Expr::Var | Expr::Const(_) => 1,
            Expr::Unary(_, e) => 1 + e.depth(),
            Expr::Binary(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, _, _) => op.precedence(),
            Expr::Unary(UnaryOp::Neg, _) => 3,
            _ => 5,
        }
    }

    /// Evaluates the expression at `x`.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let mut path = Vec::new();
        eval_node(self, x, &mut path)
    }
}

// ---------------------------------------------------------------------------
// Errors

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("parse error at offset {position}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub position: usize,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", expected.join(", "))
    }
}

/// Evaluation failure. `path` lists child indices from the root to the
/// offending node.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("evaluation error at node /{}: {message}", join_path(.path))]
pub struct EvalError {
    pub path: Vec<usize>,
    pub message: String,
}

fn join_path(path: &[usize]) -> String {
    path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("/")
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Num(v) => format!("number {v}"),
            Token::Ident(s) => format!("`{s}`"),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Slash => "`/`".into(),
            Token::Caret => "`^`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // Exponent part only when followed by digits, so `2e` stays `2` then `e`.
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &input[start..i];
                let value = text.parse::<f64>().map_err(|_| ParseError {
                    position: start,
                    message: format!("malformed number `{text}`"),
                    expected: vec![],
                })?;
                out.push((start, Token::Num(value)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(input[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = input[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    position: start,
                    message: format!("unexpected character `{ch}`"),
                    expected: vec![],
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((input.len(), Token::End));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

const OPERAND_START: [&str; 6] = ["number", "x", "pi", "e", "function call", "`(`"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String, expected: &[&str]) -> ParseError {
        ParseError {
            position: self.offset(),
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Token::Plus => BinaryOp::Add,
                Token::Minus => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Token::Star => BinaryOp::Mul,
                Token::Slash => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if *self.peek() == Token::Caret {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Expr::binary(BinaryOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Token::Num(v) => {
                self.bump();
                Ok(Expr::Lit(v))
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Token::Ident(name) => {
                let start = self.offset();
                self.bump();
                match name.as_str() {
                    "x" => return Ok(Expr::Var),
                    "pi" => return Ok(Expr::Const(Constant::Pi)),
                    "e" => return Ok(Expr::Const(Constant::E)),
                    _ => {}
                }
                let Some(op) = UnaryOp::from_function_name(&name) else {
                    return Err(ParseError {
                        position: start,
                        message: format!("unknown identifier `{name}`"),
                        expected: ["x", "pi", "e", "exp", "ln", "abs", "sqrt", "sin", "cos"]
                            .iter()
                            .map(|s| s.to_string())
                            .collect(),
                    });
                };
                if *self.peek() != Token::LParen {
                    return Err(self.error(
                        format!("expected `(` after function `{name}`, found {}", self.peek().describe()),
                        &["`(`"],
                    ));
                }
                self.bump();
                let arg = self.expr()?;
                self.expect_rparen()?;
                Ok(Expr::unary(op, arg))
            }
            other => Err(self.error(format!("expected an operand, found {}", other.describe()), &OPERAND_START)),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Token::RParen {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected `)`, found {}", self.peek().describe()), &["`)`"]))
        }
    }
}

/// Parses an expression string.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    if input.trim().is_empty() {
        return Err(ParseError {
            position: 0,
            message: "empty expression".into(),
            expected: OPERAND_START.iter().map(|s| s.to_string()).collect(),
        });
    }
    let mut parser = Parser {
        tokens: tokenize(input)?,
        pos: 0,
    };
    let e = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.error(
            format!("unexpected {} after expression", parser.peek().describe()),
            &["operator", "end of input"],
        ));
    }
    Ok(e)
}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

// ---------------------------------------------------------------------------
// Pretty printing

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(self, 0, f)
    }
}

fn write_expr(e: &Expr, min_prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let parens = e.precedence() < min_prec;
    if parens {
        f.write_str("(")?;
    }
    match e {
        Expr::Lit(v) => write!(f, "{v}")?,
        Expr::Var => f.write_str("x")?,
        Expr::Const(Constant::Pi) => f.write_str("pi")?,
        Expr::Const(Constant::E) => f.write_str("e")?,
        Expr::Unary(UnaryOp::Neg, inner) => {
            f.write_str("-")?;
            write_expr(inner, 3, f)?;
        }
        Expr::Unary(op, inner) => {
            write!(f, "{}(", op.function_name())?;
            write_expr(inner, 0, f)?;
            f.write_str(")")?;
        }
        Expr::Binary(BinaryOp::Pow, l, r) => {
            write_expr(l, 5, f)?;
            f.write_str(" ^ ")?;
            write_expr(r, 3, f)?;
        }
        Expr::Binary(op, l, r) => {
            let p = op.precedence();
            write_expr(l, p, f)?;
            write!(f, " {} ", op.symbol())?;
            write_expr(r, p + 1, f)?;
        }
    }
    if parens {
        f.write_str(")")?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Evaluation

fn fail(path: &[usize], message: impl Into<String>) -> EvalError {
    EvalError {
        path: path.to_vec(),
        message: message.into(),
    }
}

fn child(e: &Expr, x: f64, path: &mut Vec<usize>, index: usize) -> Result<f64, EvalError> {
    path.push(index);
    let v = eval_node(e, x, path);
    path.pop();
    v
}

fn eval_node(e: &Expr, x: f64, path: &mut Vec<usize>) -> Result<f64, EvalError> {
    let value = match e {
        Expr::Lit(v) => *v,
        Expr::Var => x,
        Expr::Const(c) => c.value(),
        Expr::Unary(op, inner) => {
            let v = child(inner, x, path, 0)?;
            match op {
                UnaryOp::Neg => -v,
                UnaryOp::Exp => v.exp(),
                UnaryOp::Ln => {
                    if v <= 0.0 {
                        return Err(fail(path, format!("ln of non-positive value {v}")));
                    }
                    v.ln()
                }
                UnaryOp::Abs => v.abs(),
                UnaryOp::Sqrt => {
                    if v < 0.0 {
                        return Err(fail(path, format!("sqrt of negative value {v}")));
                    }
                    v.sqrt()
                }
                UnaryOp::Sin => v.sin(),
                UnaryOp::Cos => v.cos(),
            }
        }
        Expr::Binary(op, l, r) => {
            let a = child(l, x, path, 0)?;
            let b = child(r, x, path, 1)?;
            match op {
                BinaryOp::Add => a + b,
                BinaryOp::Sub => a - b,
                BinaryOp::Mul => a * b,
                BinaryOp::Div => {
                    if b == 0.0 {
                        return Err(fail(path, "division by zero"));
                    }
                    a / b
                }
                BinaryOp::Pow => real_pow(a, b).map_err(|m| fail(path, m))?,
            }
        }
    };
    if value.is_nan() {
        return Err(fail(path, "result is not a number"));
    }
    if value.is_infinite() {
        return Err(fail(path, "result overflowed"));
    }
    Ok(value)
}

const MAX_REPEATED_MUL: f64 = 64.0;

fn real_pow(base: f64, exponent: f64) -> Result<f64, String> {
    if exponent.fract() == 0.0 && exponent.abs() <= MAX_REPEATED_MUL {
        let n = exponent.abs() as u32;
        if base == 0.0 && exponent < 0.0 {
            return Err("zero raised to a negative power".into());
        }
        let mut acc = 1.0;
        for _ in 0..n {
            acc *= base;
        }
        return Ok(if exponent < 0.0 { 1.0 / acc } else { acc });
    }
    if base < 0.0 {
        return Err(format!("negative base {base} with non-integer exponent {exponent}"));
    }
    if base == 0.0 {
        return if exponent > 0.0 {
            Ok(0.0)
        } else {
            Err("zero raised to a negative power".into())
        };
    }
    Ok((exponent * base.ln()).exp())
}

impl crate::calculus::RealFunction for Expr {
    fn eval(&self, x: f64) -> crate::Result<f64> {
        Expr::eval(self, x).map_err(PseudoError::from)
    }
}
