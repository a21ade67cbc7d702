//! Expression parser and canonical printer.
//!
//! Grammar: integers, variables, `+ - * / ^` and parentheses. Multiplication must be written
//! explicitly; exponents are nonnegative integer literals.

use std::sync::Arc;

use num::BigInt;

use crate::algebra::field::{Field, Rational};
use crate::algebra::multipoly::{var_list, MultiPoly};
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - st;
            let s: String = chars[st..i].iter().collect();
            out.push(Token {
                tok: Tok::Num(s.parse().unwrap()),
                line: l0,
                col: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            while i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            col += i - st;
            out.push(Token {
                tok: Tok::Ident(chars[st..i].iter().collect()),
                line: l0,
                col: c0,
            });
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push(Token {
                tok: Tok::Op(c),
                line: l0,
                col: c0,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(err(l0, c0, format!("unexpected character '{c}'")));
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Num(BigInt),
    Var(usize),
    Neg(Box<Ast>),
    Bin(char, Box<Ast>, Box<Ast>, usize, usize),
    Pow(Box<Ast>, u32),
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
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

    fn expr(&mut self) -> Result<Ast> {
        let mut a = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = self.peek().tok {
            let t = self.next();
            let b = self.term()?;
            a = Ast::Bin(c, Box::new(a), Box::new(b), t.line, t.col);
        }
        Ok(a)
    }

    fn term(&mut self) -> Result<Ast> {
        let mut a = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Op(c @ ('*' | '/')) => {
                    let t = self.next();
                    let b = self.unary()?;
                    a = Ast::Bin(c, Box::new(a), Box::new(b), t.line, t.col);
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::Op('(') => {
                    let t = self.peek();
                    return Err(err(
                        t.line,
                        t.col,
                        "implicit multiplication is not allowed; use '*'",
                    ));
                }
                _ => return Ok(a),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        match self.peek().tok {
            Tok::Op('-') => {
                self.next();
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Tok::Op('+') => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let a = self.atom()?;
        if let Tok::Op('^') = self.peek().tok {
            self.next();
            let t = self.next();
            match t.tok {
                Tok::Num(n) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| err(t.line, t.col, "exponent too large"))?;
                    if let Tok::Op('^') = self.peek().tok {
                        let u = self.peek();
                        return Err(err(u.line, u.col, "chained exponents need parentheses"));
                    }
                    return Ok(Ast::Pow(Box::new(a), e));
                }
                _ => {
                    return Err(err(
                        t.line,
                        t.col,
                        "exponent must be a nonnegative integer literal",
                    ))
                }
            }
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Ast> {
        let t = self.next();
        match t.tok {
            Tok::Num(n) => Ok(Ast::Num(n)),
            Tok::Ident(name) => {
                if name.ends_with("''") {
                    return Err(err(t.line, t.col, "order greater than one"));
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Ast::Var(i)),
                    None => Err(err(
                        t.line,
                        t.col,
                        format!(
                            "unknown variable '{name}' (expected one of: {})",
                            self.vars.join(", ")
                        ),
                    )),
                }
            }
            Tok::Op('(') => {
                let a = self.expr()?;
                let c = self.next();
                if c.tok != Tok::Op(')') {
                    return Err(err(c.line, c.col, "expected ')'"));
                }
                Ok(a)
            }
            Tok::End => Err(err(t.line, t.col, "unexpected end of input")),
            Tok::Op(c) => Err(err(t.line, t.col, format!("unexpected '{c}'"))),
        }
    }
}

fn parse_ast(s: &str, vars: &[&str]) -> Result<Ast> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, vars };
    let a = p.expr()?;
    let t = p.peek();
    match &t.tok {
        Tok::End => Ok(a),
        Tok::Op(')') => Err(err(t.line, t.col, "unbalanced ')'")),
        _ => Err(err(t.line, t.col, "unexpected token")),
    }
}

fn eval_poly(a: &Ast, vars: &Arc<[String]>) -> Result<MultiPoly> {
    Ok(match a {
        Ast::Num(n) => MultiPoly::constant(vars, Rational::from_integer(n.clone())),
        Ast::Var(i) => MultiPoly::var(vars, *i),
        Ast::Neg(x) => -eval_poly(x, vars)?,
        Ast::Pow(x, e) => eval_poly(x, vars)?.pow(*e),
        Ast::Bin(op, x, y, line, col) => {
            let (x, y) = (eval_poly(x, vars)?, eval_poly(y, vars)?);
            match op {
                '+' => &x + &y,
                '-' => &x - &y,
                '*' => &x * &y,
                _ => {
                    if !y.is_constant() {
                        return Err(err(*line, *col, "division by a non-constant polynomial"));
                    }
                    let c = y.constant_term();
                    if c.is_zero() {
                        return Err(err(*line, *col, "division by zero"));
                    }
                    x.scale(&c.recip())
                }
            }
        }
    })
}

fn eval_ratfunc(a: &Ast) -> Result<RatFunc> {
    Ok(match a {
        Ast::Num(n) => RatFunc::constant(Rational::from_integer(n.clone())),
        Ast::Var(_) => RatFunc::t(),
        Ast::Neg(x) => eval_ratfunc(x)?.negate(),
        Ast::Pow(x, e) => eval_ratfunc(x)?.powi(*e as i32),
        Ast::Bin(op, x, y, line, col) => {
            let (x, y) = (eval_ratfunc(x)?, eval_ratfunc(y)?);
            match op {
                '+' => x.plus(&y),
                '-' => x.minus(&y),
                '*' => x.times(&y),
                _ => {
                    if y.is_zero() {
                        return Err(err(*line, *col, "division by zero"));
                    }
                    x.over(&y)
                }
            }
        }
    })
}

/// Polynomial over Q in the given variables.
pub fn parse_poly(s: &str, vars: &[&str]) -> Result<MultiPoly> {
    let a = parse_ast(s, vars)?;
    eval_poly(&a, &var_list(vars))
}

/// Rational function in `t`.
pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    eval_ratfunc(&parse_ast(s, &["t"])?)
}

/// Comma-separated list of rational functions in `t`, optionally wrapped in parentheses.
pub fn parse_ratfunc_list(s: &str) -> Result<Vec<RatFunc>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .filter(|x| !x.contains(['(', ')']) || balanced(x))
        .unwrap_or(s);
    split_top_level(inner)
        .iter()
        .map(|p| parse_ratfunc(p))
        .collect()
}

fn balanced(s: &str) -> bool {
    let mut d = 0i32;
    for c in s.chars() {
        match c {
            '(' => d += 1,
            ')' => {
                d -= 1;
                if d < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    d == 0
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut d = 0;
    for c in s.chars() {
        match c {
            '(' => d += 1,
            ')' => d -= 1,
            ',' if d == 0 => {
                out.push(String::new());
                continue;
            }
            _ => {}
        }
        out.last_mut().unwrap().push(c);
    }
    out
}

/// Canonical text of a rational function in `t`.
pub fn ratfunc_text(r: &RatFunc) -> String {
    r.to_string()
}

/// Canonical text of a univariate polynomial in `var`.
pub fn unipoly_text(u: &UniPoly, var: &str) -> String {
    u.fmt_var(var)
}

#[cfg(test)]
mod tests {
    use super::*;

    const AODE: [&str; 3] = ["t", "y", "y'"];

    #[test]
    fn parse_examples() {
        let f = parse_poly("2*y' + t*y^3 + y^2", &AODE).unwrap();
        assert_eq!(f.degree_in(2), Some(1));
        assert_eq!(f.to_text(), "t*y^3 + y^2 + 2*y'");
        let e = parse_poly("y''", &AODE).unwrap_err();
        assert!(e.to_string().contains("order greater than one"));
        let c = parse_poly("x1^2*x2 - x0^3", &["x0", "x1", "x2"]).unwrap();
        assert!(c.is_homogeneous());
        assert_eq!(c.total_degree(), Some(3));
    }

    #[test]
    fn rejects_implicit_multiplication() {
        for s in ["2y", "2 y", "(t)(y)", "t y"] {
            let e = parse_poly(s, &AODE).unwrap_err();
            assert!(
                e.to_string().contains("implicit multiplication"),
                "{s}: {e}"
            );
        }
    }

    #[test]
    fn error_positions() {
        let e = parse_poly("t +\n  2*z", &AODE).unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                col: 5,
                msg: "unknown variable 'z' (expected one of: t, y, y')".into()
            }
        );
        assert!(matches!(
            parse_poly("(t + 1", &AODE),
            Err(Error::Parse {
                line: 1,
                col: 7,
                ..
            })
        ));
        assert!(matches!(parse_poly("t/y", &AODE), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trip_canonical() {
        for s in [
            "t*y^3 + y^2 + 2*y'",
            "-1/2*y'^2 + 3*t - 7",
            "y^5 + y*y'^2 + t",
            "0",
            "x0^2*x1 - 5/3*x2^3",
        ] {
            let vars: &[&str] = if s.contains('x') {
                &["x0", "x1", "x2"]
            } else {
                &AODE
            };
            assert_eq!(parse_poly(s, vars).unwrap().to_text(), s);
        }
        for s in [
            "1/t",
            "(t + 1)/(t - 1)",
            "t^2 - 1/3",
            "-t/(t^2 + 1)",
            "(-2*t + 1)/t^3",
        ] {
            assert_eq!(parse_ratfunc(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn ratfunc_lists() {
        let v = parse_ratfunc_list("(t^2, t^3 + 1, 1)").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[1].to_string(), "t^3 + 1");
    }
}
