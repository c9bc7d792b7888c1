//! Text grammar for operators, rational functions and log-extension elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-' | '+') factor | power
//! power  := atom ('^' '-'? INT)?
//! atom   := INT | 't' | 'x' | 'z' | 'Dt' | 'zeta' '(' INT ')'
//!         | 'log' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `z` stands for `x/t`, `Dt` for `∂_t`. A coefficient next to `Dt` multiplies
//! on the left; `A*B` between operators is composition, so `Dt*t = t*Dt + 1`.
//! `log(x - b)` needs a monic linear argument.

use crate::error::{Error, Result};
use crate::fields::{Field, Fx, LogExt, Param, Scalar};
use crate::ore::OrePoly;

/// A parsed value.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Fx(Fx),
    Op(OrePoly<Param>),
    Log(LogExt),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Fx(_) => "rational function",
            Value::Op(_) => "operator",
            Value::Log(_) => "log-extension element",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let (l0, c0) = (line, col);
        if c.is_ascii_digit() {
            let s: String = chars[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
            i += s.len();
            col += s.len();
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                col: c0,
            });
        } else if c.is_ascii_alphabetic() {
            let s: String = chars[i..]
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                .collect();
            i += s.len();
            col += s.len();
            out.push(Token {
                tok: Tok::Ident(s),
                line: l0,
                col: c0,
            });
        } else if "+-*/^()".contains(c) {
            i += 1;
            col += 1;
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                col: c0,
            });
        } else {
            return Err(Error::Parse {
                line,
                column: col,
                message: format!("unexpected character '{}'", c),
            });
        }
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(tok: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: tok.line,
            column: tok.col,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok != Tok::Sym(c) {
            return Self::err(&t, format!("expected '{}'", c));
        }
        Ok(())
    }

    fn int(&mut self) -> Result<(num_bigint::BigInt, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok((n.clone(), t.clone())),
            _ => Self::err(&t, "expected an integer"),
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let t = self.peek().clone();
            match t.tok {
                Tok::Sym('+') => {
                    self.next();
                    let r = self.term()?;
                    acc = add(acc, r).or_else(|m| Self::err(&t, m))?;
                }
                Tok::Sym('-') => {
                    self.next();
                    let r = self.term()?;
                    acc = add(acc, neg(r)).or_else(|m| Self::err(&t, m))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            let t = self.peek().clone();
            match t.tok {
                Tok::Sym('*') => {
                    self.next();
                    let r = self.factor()?;
                    acc = mul(acc, r).or_else(|m| Self::err(&t, m))?;
                }
                Tok::Sym('/') => {
                    self.next();
                    let r = self.factor()?;
                    acc = div(acc, r).or_else(|m| Self::err(&t, m))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Value> {
        match self.peek().tok {
            Tok::Sym('-') => {
                self.next();
                Ok(neg(self.factor()?))
            }
            Tok::Sym('+') => {
                self.next();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Sym('^') {
            return Ok(base);
        }
        let caret = self.next();
        let negative = if self.peek().tok == Tok::Sym('-') {
            self.next();
            true
        } else {
            false
        };
        let (n, nt) = self.int()?;
        let Ok(n) = i64::try_from(n) else {
            return Self::err(&nt, "exponent too large");
        };
        let n = if negative { -n } else { n };
        pow(base, n).or_else(|m| Self::err(&caret, m))
    }

    fn atom(&mut self) -> Result<Value> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok(Value::Fx(Fx::from_rational(&crate::fields::Q::from_integer(n.clone())))),
            Tok::Ident(s) => match s.as_str() {
                "t" => Ok(Value::Fx(Fx::param(Param::t()))),
                "x" => Ok(Value::Fx(Fx::x())),
                "z" => Ok(Value::Fx(Fx::x() * Fx::param(Param::t().inv().expect("t ≠ 0")))),
                "Dt" => Ok(Value::Op(OrePoly::dt())),
                "zeta" => {
                    self.expect('(')?;
                    let (n, nt) = self.int()?;
                    self.expect(')')?;
                    match u32::try_from(n) {
                        Ok(n) if (1..=10_000).contains(&n) => {
                            Ok(Value::Fx(Fx::param(Param::scalar(Scalar::zeta(n)))))
                        }
                        _ => Self::err(&nt, "zeta order must be between 1 and 10000"),
                    }
                }
                "log" => {
                    self.expect('(')?;
                    let arg_tok = self.peek().clone();
                    let arg = self.expr()?;
                    self.expect(')')?;
                    log_of(arg).or_else(|m| Self::err(&arg_tok, m))
                }
                other => Self::err(&t, format!("unknown identifier '{}'", other)),
            },
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::End => Self::err(&t, "unexpected end of input"),
            Tok::Sym(c) => Self::err(&t, format!("unexpected '{}'", c)),
        }
    }
}

fn as_param(f: &Fx) -> Option<Param> {
    f.as_constant()
}

fn neg(v: Value) -> Value {
    match v {
        Value::Fx(f) => Value::Fx(-f),
        Value::Op(o) => Value::Op(-o),
        Value::Log(l) => Value::Log(l.neg()),
    }
}

fn op_of(f: &Fx) -> std::result::Result<OrePoly<Param>, String> {
    as_param(f)
        .map(OrePoly::constant)
        .ok_or_else(|| "operator coefficients must not depend on x".to_string())
}

fn log_of_value(v: &Value) -> Option<LogExt> {
    match v {
        Value::Fx(f) => Some(LogExt::from_fx(f.clone())),
        Value::Log(l) => Some(l.clone()),
        Value::Op(_) => None,
    }
}

fn simplify_log(l: LogExt) -> Value {
    if l.in_base() {
        Value::Fx(l.tail().clone())
    } else {
        Value::Log(l)
    }
}

fn add(a: Value, b: Value) -> std::result::Result<Value, String> {
    match (a, b) {
        (Value::Fx(x), Value::Fx(y)) => Ok(Value::Fx(x + y)),
        (Value::Op(x), Value::Op(y)) => Ok(Value::Op(x + y)),
        (Value::Op(x), Value::Fx(y)) | (Value::Fx(y), Value::Op(x)) => Ok(Value::Op(x + op_of(&y)?)),
        (a, b) => match (log_of_value(&a), log_of_value(&b)) {
            (Some(x), Some(y)) => Ok(simplify_log(x.add(&y))),
            _ => Err(format!("cannot add {} and {}", a.kind(), b.kind())),
        },
    }
}

fn mul(a: Value, b: Value) -> std::result::Result<Value, String> {
    match (a, b) {
        (Value::Fx(x), Value::Fx(y)) => Ok(Value::Fx(x * y)),
        (Value::Op(x), Value::Op(y)) => Ok(Value::Op(x.compose(&y))),
        (Value::Fx(c), Value::Op(o)) => Ok(Value::Op(op_of(&c)?.compose(&o))),
        (Value::Op(o), Value::Fx(c)) => Ok(Value::Op(o.compose(&op_of(&c)?))),
        (Value::Log(l), Value::Fx(f)) | (Value::Fx(f), Value::Log(l)) => Ok(simplify_log(l.mul_fx(&f))),
        (a, b) => Err(format!("cannot multiply {} by {}", a.kind(), b.kind())),
    }
}

fn div(a: Value, b: Value) -> std::result::Result<Value, String> {
    let Value::Fx(d) = b else {
        return Err(format!("cannot divide by {}", b.kind()));
    };
    let inv = d.inv().ok_or_else(|| "division by zero".to_string())?;
    match a {
        Value::Op(o) => match as_param(&inv).and_then(|p| p.as_constant()) {
            Some(c) => Ok(Value::Op(o.scale_left(&Param::scalar(c)))),
            None => Err("operators may only be divided by constants; write (1/c)*Dt".into()),
        },
        other => mul(other, Value::Fx(inv)),
    }
}

fn pow(a: Value, n: i64) -> std::result::Result<Value, String> {
    match a {
        Value::Fx(f) => f
            .pow(n)
            .map(Value::Fx)
            .ok_or_else(|| "division by zero".to_string()),
        Value::Op(o) if n >= 0 => {
            let mut acc = OrePoly::one();
            for _ in 0..n {
                acc = acc.compose(&o);
            }
            Ok(Value::Op(acc))
        }
        Value::Op(_) => Err("negative powers of operators are not defined".into()),
        Value::Log(l) if n == 1 => Ok(Value::Log(l)),
        Value::Log(_) => Err("powers of logarithms are not supported".into()),
    }
}

fn log_of(arg: Value) -> std::result::Result<Value, String> {
    let Value::Fx(f) = arg else {
        return Err("log expects an argument of the form x - b".into());
    };
    let num = f.num();
    if !f.is_polynomial() || num.degree() != Some(1) || !num.leading().is_one() {
        return Err("log expects an argument of the form x - b".into());
    }
    Ok(Value::Log(LogExt::log(-num.coeff(0), Fx::one())))
}

/// Parses any value of the grammar.
pub fn parse(src: &str) -> Result<Value> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let v = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Parser::err(&t, "unexpected trailing input");
    }
    Ok(v)
}

fn shape_error(what: &str, got: &Value) -> Error {
    Error::Parse {
        line: 1,
        column: 1,
        message: format!("expected {}, found {}", what, got.kind()),
    }
}

/// Parses an operator; a bare coefficient is read as that multiple of `∂_t⁰`.
pub fn parse_ore(src: &str) -> Result<OrePoly<Param>> {
    match parse(src)? {
        Value::Op(o) => Ok(o),
        Value::Fx(f) => op_of(&f).map_err(|m| Error::Parse {
            line: 1,
            column: 1,
            message: m,
        }),
        v => Err(shape_error("an operator", &v)),
    }
}

pub fn parse_fx(src: &str) -> Result<Fx> {
    match parse(src)? {
        Value::Fx(f) => Ok(f),
        v => Err(shape_error("a rational function", &v)),
    }
}

/// Parses an element of `K = k(t)`.
pub fn parse_param(src: &str) -> Result<Param> {
    let f = parse_fx(src)?;
    f.as_constant().ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "expected a function of t alone".into(),
    })
}

/// Parses an element of `k`.
pub fn parse_scalar(src: &str) -> Result<Scalar> {
    parse_param(src)?.as_constant().ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "expected a constant".into(),
    })
}

pub fn parse_logext(src: &str) -> Result<LogExt> {
    match parse(src)? {
        Value::Fx(f) => Ok(LogExt::from_fx(f)),
        Value::Log(l) => Ok(l),
        v => Err(shape_error("a log-extension element", &v)),
    }
}

/// Splits a comma-separated list at top-level commas.
pub fn parse_list<T>(src: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(item(&src[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !src[start..].trim().is_empty() || !out.is_empty() {
        out.push(item(&src[start..])?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_examples() {
        let l = parse_ore("t*Dt + 1").unwrap();
        assert_eq!(l, OrePoly::new(vec![Param::one(), Param::t()]));
        let l = parse_ore("Dt*t").unwrap();
        assert_eq!(l, OrePoly::new(vec![Param::one(), Param::t()]));
        let l = parse_ore("t*Dt^2 + (1/t)*Dt + 3").unwrap();
        assert_eq!(l.order(), Some(2));
        assert_eq!(l.coeff(1), Param::t().inv().unwrap());
    }

    #[test]
    fn rational_function_example() {
        let f = parse_fx("(x+1)/(x*(x-1))").unwrap();
        let x = Fx::x();
        assert_eq!(f, (x.clone() + Fx::one()) * (x.clone() * (x - Fx::one())).inv().unwrap());
    }

    #[test]
    fn syntax_error_position() {
        match parse("t*Dt + ") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 8)),
            other => panic!("unexpected {:?}", other),
        }
        match parse("1 +\n  ? ") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn logs_and_roots_of_unity() {
        let l = parse_logext("t*log(x - 1) + 1/x").unwrap();
        assert_eq!(l.log_coeff(&Param::one()), Fx::param(Param::t()));
        let s = parse_scalar("zeta(4)^2").unwrap();
        assert_eq!(s, Scalar::int(-1));
        assert!(parse("log(x^2)").is_err());
        assert!(parse("x*Dt").is_err());
    }

    #[test]
    fn z_is_x_over_t() {
        let z = parse_fx("z*t").unwrap();
        assert_eq!(z, Fx::x());
    }

    #[test]
    fn lists() {
        let v = parse_list("1, t, (t+1)/(t-1)", parse_param).unwrap();
        assert_eq!(v.len(), 3);
        assert!(parse_list("", parse_param).unwrap().is_empty());
    }
}
