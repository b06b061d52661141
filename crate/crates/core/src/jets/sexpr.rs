//! Prefix s-expression text form, e.g. `(mul (exp (neg t)) (cos (mul 2 t)))`.
//!
//! `add` and `mul` accept two or more operands and `sub a b` is read as
//! `add a (neg b)`; printing always emits the binary core forms.

use super::expr::{Expr, Power};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

fn tokenize(s: &str) -> Vec<Tok> {
    let mut out = vec![];
    let mut cur = String::new();
    let flush = |cur: &mut String, out: &mut Vec<Tok>| {
        if !cur.is_empty() {
            out.push(Tok::Atom(std::mem::take(cur)));
        }
    };
    for ch in s.chars() {
        match ch {
            '(' => {
                flush(&mut cur, &mut out);
                out.push(Tok::Open);
            }
            ')' => {
                flush(&mut cur, &mut out);
                out.push(Tok::Close);
            }
            c if c.is_whitespace() => flush(&mut cur, &mut out),
            c => cur.push(c),
        }
    }
    flush(&mut cur, &mut out);
    out
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        msg: msg.into(),
    }
}

fn number(a: &str) -> Option<f64> {
    if let Some((p, q)) = a.split_once('/') {
        let p: f64 = p.parse().ok()?;
        let q: f64 = q.parse().ok()?;
        if q == 0.0 {
            return None;
        }
        return Some(p / q);
    }
    a.parse().ok()
}

fn power(a: &str) -> Option<Power> {
    if let Some(num) = a.strip_suffix("/2") {
        let k: i32 = num.parse().ok()?;
        return Some(if k % 2 == 0 {
            Power::Int(k / 2)
        } else {
            Power::Half(k)
        });
    }
    a.parse().ok().map(Power::Int)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn next(&mut self) -> Result<Tok> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| perr("unexpected end of expression"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expr(&mut self) -> Result<Expr> {
        match self.next()? {
            Tok::Close => Err(perr("unexpected ')'")),
            Tok::Atom(a) => self.atom(&a),
            Tok::Open => {
                let head = match self.next()? {
                    Tok::Atom(a) => a,
                    _ => return Err(perr("expected operator after '('")),
                };
                if head == "pow" {
                    let base = self.expr()?;
                    let p = match self.next()? {
                        Tok::Atom(a) => {
                            power(&a).ok_or_else(|| perr(format!("bad exponent {a:?}")))?
                        }
                        _ => return Err(perr("pow exponent must be an integer or k/2")),
                    };
                    self.close()?;
                    return Ok(Expr::Pow(Box::new(base), p));
                }
                let mut args = vec![];
                while self.toks.get(self.pos) != Some(&Tok::Close) {
                    args.push(self.expr()?);
                }
                self.close()?;
                self.form(&head, args)
            }
        }
    }

    fn close(&mut self) -> Result<()> {
        match self.next()? {
            Tok::Close => Ok(()),
            t => Err(perr(format!("expected ')', found {t:?}"))),
        }
    }

    fn atom(&self, a: &str) -> Result<Expr> {
        if let Some(i) = self.names.iter().position(|n| *n == a) {
            return Ok(Expr::Coord(i));
        }
        if let Some(v) = number(a) {
            return Ok(Expr::Const(v));
        }
        Err(perr(format!("unknown symbol {a:?}")))
    }

    fn form(&self, head: &str, mut args: Vec<Expr>) -> Result<Expr> {
        let arity = |k: usize, args: &Vec<Expr>| {
            if args.len() == k {
                Ok(())
            } else {
                Err(perr(format!(
                    "{head} takes {k} operand(s), got {}",
                    args.len()
                )))
            }
        };
        let fold = |args: Vec<Expr>, f: fn(Box<Expr>, Box<Expr>) -> Expr| -> Result<Expr> {
            if args.len() < 2 {
                return Err(perr(format!("{head} needs at least two operands")));
            }
            let mut it = args.into_iter();
            let first = it.next().unwrap();
            Ok(it.fold(first, |acc, e| f(Box::new(acc), Box::new(e))))
        };
        let unary = |args: &mut Vec<Expr>| Box::new(args.pop().unwrap());
        match head {
            "add" => fold(args, Expr::Add),
            "mul" => fold(args, Expr::Mul),
            "sub" => {
                arity(2, &args)?;
                let b = args.pop().unwrap();
                let a = args.pop().unwrap();
                Ok(a - b)
            }
            "div" => {
                arity(2, &args)?;
                let b = args.pop().unwrap();
                let a = args.pop().unwrap();
                Ok(Expr::Div(Box::new(a), Box::new(b)))
            }
            "neg" | "exp" | "log" | "sin" | "cos" | "sqrt" => {
                arity(1, &args)?;
                let a = unary(&mut args);
                Ok(match head {
                    "neg" => Expr::Neg(a),
                    "exp" => Expr::Exp(a),
                    "log" => Expr::Log(a),
                    "sin" => Expr::Sin(a),
                    "cos" => Expr::Cos(a),
                    _ => Expr::Sqrt(a),
                })
            }
            other => Err(perr(format!("unknown operator {other:?}"))),
        }
    }
}

/// Parse an expression whose coordinates are named by `names` (index order).
pub fn parse_expr(text: &str, names: &[&str]) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(text),
        pos: 0,
        names,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(perr("trailing input after expression"));
    }
    Ok(e)
}

pub fn to_sexpr(e: &Expr, names: &[&str]) -> String {
    let mut s = String::new();
    write(e, names, &mut s);
    s
}

fn write(e: &Expr, names: &[&str], out: &mut String) {
    let call = |head: &str, args: &[&Expr], out: &mut String| {
        out.push('(');
        out.push_str(head);
        for a in args {
            out.push(' ');
            write(a, names, out);
        }
        out.push(')');
    };
    match e {
        Expr::Const(v) => out.push_str(&format!("{v:?}")),
        Expr::Coord(i) => match names.get(*i) {
            Some(n) => out.push_str(n),
            None => out.push_str(&format!("x{i}")),
        },
        Expr::Add(a, b) => call("add", &[a, b], out),
        Expr::Mul(a, b) => call("mul", &[a, b], out),
        Expr::Div(a, b) => call("div", &[a, b], out),
        Expr::Neg(a) => call("neg", &[a], out),
        Expr::Pow(a, p) => {
            out.push_str("(pow ");
            write(a, names, out);
            out.push_str(&format!(" {p})"));
        }
        Expr::Exp(a) => call("exp", &[a], out),
        Expr::Log(a) => call("log", &[a], out),
        Expr::Sin(a) => call("sin", &[a], out),
        Expr::Cos(a) => call("cos", &[a], out),
        Expr::Sqrt(a) => call("sqrt", &[a], out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_example() {
        let e = parse_expr("(mul (exp (neg t)) (cos (mul 2 t)))", &["t"]).unwrap();
        let t = Expr::coord(0);
        assert_eq!(e, (-t.clone()).exp() * (2.0 * t).cos());
    }

    #[test]
    fn roundtrip() {
        let names = ["u", "v"];
        let src = "(add (pow (add u 0.5) -3/2) (div (sqrt v) (sub u 1/3)))";
        let e = parse_expr(src, &names).unwrap();
        let again = parse_expr(&to_sexpr(&e, &names), &names).unwrap();
        assert_eq!(e, again);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("(mul t)", &["t"]).is_err());
        assert!(parse_expr("(foo t t)", &["t"]).is_err());
        assert!(parse_expr("(add t s)", &["t"]).is_err());
        assert!(parse_expr("(add t 1", &["t"]).is_err());
        assert!(parse_expr("t t", &["t"]).is_err());
    }
}
