use std::fmt;
use std::ops;

use super::jet::Jet3;
use crate::error::{Error, Result};

/// Exponent of a `pow` node: an integer or an odd multiple of 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Power {
    Int(i32),
    /// `Half(k)` is `k/2`.
    Half(i32),
}

impl Power {
    pub fn value(self) -> f64 {
        match self {
            Power::Int(k) => k as f64,
            Power::Half(k) => k as f64 / 2.0,
        }
    }
}

impl fmt::Display for Power {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Power::Int(k) => write!(f, "{k}"),
            Power::Half(k) => write!(f, "{k}/2"),
        }
    }
}

/// Closed-form scalar expression over chart coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Coord(usize),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Power),
    Exp(Box<Expr>),
    Log(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Sqrt(Box<Expr>),
}

impl Expr {
    pub fn c(v: f64) -> Expr {
        Expr::Const(v)
    }

    pub fn coord(i: usize) -> Expr {
        Expr::Coord(i)
    }

    pub fn zero() -> Expr {
        Expr::Const(0.0)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(v) if *v == 0.0)
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self))
    }

    pub fn ln(self) -> Expr {
        Expr::Log(Box::new(self))
    }

    pub fn sin(self) -> Expr {
        Expr::Sin(Box::new(self))
    }

    pub fn cos(self) -> Expr {
        Expr::Cos(Box::new(self))
    }

    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }

    pub fn powi(self, k: i32) -> Expr {
        Expr::Pow(Box::new(self), Power::Int(k))
    }

    /// `self^(k/2)`; even `k` collapses to an integer power.
    pub fn pow_half(self, k: i32) -> Expr {
        if k % 2 == 0 {
            self.powi(k / 2)
        } else {
            Expr::Pow(Box::new(self), Power::Half(k))
        }
    }

    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Const(_) | Expr::Coord(_) => vec![],
            Expr::Add(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => vec![a, b],
            Expr::Neg(a)
            | Expr::Pow(a, _)
            | Expr::Exp(a)
            | Expr::Log(a)
            | Expr::Sin(a)
            | Expr::Cos(a)
            | Expr::Sqrt(a) => vec![a],
        }
    }

    /// Largest coordinate index referenced, if any.
    pub fn max_coord(&self) -> Option<usize> {
        match self {
            Expr::Coord(i) => Some(*i),
            _ => self
                .children()
                .into_iter()
                .filter_map(Expr::max_coord)
                .max(),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Expr::node_count)
            .sum::<usize>()
    }

    /// Replace every coordinate `i` by `subs[i]`.
    pub fn substitute(&self, subs: &[Expr]) -> Expr {
        let b = |e: &Expr| Box::new(e.substitute(subs));
        match self {
            Expr::Const(v) => Expr::Const(*v),
            Expr::Coord(i) => subs[*i].clone(),
            Expr::Add(x, y) => Expr::Add(b(x), b(y)),
            Expr::Mul(x, y) => Expr::Mul(b(x), b(y)),
            Expr::Div(x, y) => Expr::Div(b(x), b(y)),
            Expr::Neg(x) => Expr::Neg(b(x)),
            Expr::Pow(x, p) => Expr::Pow(b(x), *p),
            Expr::Exp(x) => Expr::Exp(b(x)),
            Expr::Log(x) => Expr::Log(b(x)),
            Expr::Sin(x) => Expr::Sin(b(x)),
            Expr::Cos(x) => Expr::Cos(b(x)),
            Expr::Sqrt(x) => Expr::Sqrt(b(x)),
        }
    }
}

fn check_dim(e: &Expr, n: usize) -> Result<()> {
    if let Some(m) = e.max_coord() {
        if m >= n {
            return Err(Error::domain(
                &[],
                format!("coordinate index {m} outside chart of dimension {n}"),
            ));
        }
    }
    Ok(())
}

/// Plain double-precision evaluation with the same domain obligations as
/// [`eval_jet`].
pub fn eval(e: &Expr, p: &[f64]) -> Result<f64> {
    check_dim(e, p.len())?;
    let mut path = vec![];
    eval_at(e, p, &mut path)
}

fn eval_at(e: &Expr, p: &[f64], path: &mut Vec<usize>) -> Result<f64> {
    let child = |k: usize, x: &Expr, path: &mut Vec<usize>| -> Result<f64> {
        path.push(k);
        let v = eval_at(x, p, path)?;
        path.pop();
        Ok(v)
    };
    let v = match e {
        Expr::Const(v) => *v,
        Expr::Coord(i) => p[*i],
        Expr::Add(a, b) => child(0, a, path)? + child(1, b, path)?,
        Expr::Mul(a, b) => child(0, a, path)? * child(1, b, path)?,
        Expr::Div(a, b) => {
            let num = child(0, a, path)?;
            let den = child(1, b, path)?;
            if den == 0.0 {
                return Err(Error::domain(path, "division by zero"));
            }
            num / den
        }
        Expr::Neg(a) => -child(0, a, path)?,
        Expr::Pow(a, pw) => {
            let x = child(0, a, path)?;
            check_pow(x, *pw, path)?;
            match pw {
                Power::Int(k) => x.powi(*k),
                Power::Half(_) => x.powf(pw.value()),
            }
        }
        Expr::Exp(a) => child(0, a, path)?.exp(),
        Expr::Log(a) => {
            let x = child(0, a, path)?;
            if x <= 0.0 {
                return Err(Error::domain(
                    path,
                    format!("log of non-positive value {x}"),
                ));
            }
            x.ln()
        }
        Expr::Sin(a) => child(0, a, path)?.sin(),
        Expr::Cos(a) => child(0, a, path)?.cos(),
        Expr::Sqrt(a) => {
            let x = child(0, a, path)?;
            if x <= 0.0 {
                return Err(Error::domain(
                    path,
                    format!("sqrt of non-positive value {x}"),
                ));
            }
            x.sqrt()
        }
    };
    Ok(v)
}

fn check_pow(x: f64, pw: Power, path: &[usize]) -> Result<()> {
    match pw {
        Power::Int(k) if k < 0 && x == 0.0 => Err(Error::domain(path, "negative power of zero")),
        Power::Half(_) if x <= 0.0 => Err(Error::domain(
            path,
            format!("half-integer power of non-positive value {x}"),
        )),
        _ => Ok(()),
    }
}

/// Order-3 jet of `e` at the point `p` of an `n`-dimensional chart.
pub fn eval_jet(e: &Expr, p: &[f64], n: usize) -> Result<Jet3> {
    assert_eq!(p.len(), n, "point dimension");
    check_dim(e, n)?;
    let mut path = vec![];
    jet_at(e, p, n, &mut path)
}

fn jet_at(e: &Expr, p: &[f64], n: usize, path: &mut Vec<usize>) -> Result<Jet3> {
    let child = |k: usize, x: &Expr, path: &mut Vec<usize>| -> Result<Jet3> {
        path.push(k);
        let v = jet_at(x, p, n, path)?;
        path.pop();
        Ok(v)
    };
    let j = match e {
        Expr::Const(v) => Jet3::constant(n, *v),
        Expr::Coord(i) => Jet3::variable(n, *i, p[*i]),
        Expr::Add(a, b) => child(0, a, path)?.add(&child(1, b, path)?),
        Expr::Mul(a, b) => child(0, a, path)?.mul(&child(1, b, path)?),
        Expr::Div(a, b) => {
            let num = child(0, a, path)?;
            let den = child(1, b, path)?;
            if den.value() == 0.0 {
                return Err(Error::domain(path, "division by zero"));
            }
            num.div(&den)
        }
        Expr::Neg(a) => child(0, a, path)?.neg(),
        Expr::Pow(a, pw) => {
            let x = child(0, a, path)?;
            check_pow(x.value(), *pw, path)?;
            match pw {
                Power::Int(k) => x.powi(*k),
                Power::Half(_) => x.powf(pw.value()),
            }
        }
        Expr::Exp(a) => child(0, a, path)?.exp(),
        Expr::Log(a) => {
            let x = child(0, a, path)?;
            if x.value() <= 0.0 {
                return Err(Error::domain(
                    path,
                    format!("log of non-positive value {}", x.value()),
                ));
            }
            x.ln()
        }
        Expr::Sin(a) => child(0, a, path)?.sin(),
        Expr::Cos(a) => child(0, a, path)?.cos(),
        Expr::Sqrt(a) => {
            let x = child(0, a, path)?;
            if x.value() <= 0.0 {
                return Err(Error::domain(
                    path,
                    format!("sqrt of non-positive value {}", x.value()),
                ));
            }
            x.sqrt()
        }
    };
    Ok(j)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $variant:ident) => {
        impl ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(o))
            }
        }
        impl ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, o: &Expr) -> Expr {
                Expr::$variant(Box::new(self.clone()), Box::new(o.clone()))
            }
        }
        impl ops::$tr<f64> for Expr {
            type Output = Expr;
            fn $m(self, o: f64) -> Expr {
                Expr::$variant(Box::new(self), Box::new(Expr::Const(o)))
            }
        }
        impl ops::$tr<Expr> for f64 {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                Expr::$variant(Box::new(Expr::Const(self)), Box::new(o))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl ops::Sub<Expr> for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        self + (-o)
    }
}

impl ops::Sub<&Expr> for &Expr {
    type Output = Expr;
    fn sub(self, o: &Expr) -> Expr {
        self.clone() + (-o.clone())
    }
}

impl ops::Sub<f64> for Expr {
    type Output = Expr;
    fn sub(self, o: f64) -> Expr {
        self + Expr::Const(-o)
    }
}

impl ops::Sub<Expr> for f64 {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        Expr::Const(self) + (-o)
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_at_three() {
        let e = Expr::coord(0).powi(2);
        let j = eval_jet(&e, &[3.0], 1).unwrap();
        assert_eq!(j.value(), 9.0);
        assert_eq!(j.partial(&[1]), 6.0);
        assert_eq!(j.partial(&[2]), 2.0);
        assert_eq!(j.partial(&[3]), 0.0);
    }

    #[test]
    fn exp_of_minus_t() {
        let e = (-Expr::coord(0)).exp();
        let j = eval_jet(&e, &[0.0], 1).unwrap();
        let want = [1.0, -1.0, 0.5, -1.0 / 6.0];
        for (a, b) in j.coefficients().iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn domain_error_reports_path() {
        let e = Expr::c(1.0) + (Expr::coord(0) - 1.0).ln();
        let err = eval_jet(&e, &[0.5], 1).unwrap_err();
        match err {
            Error::Domain { path, .. } => assert_eq!(path, "root/1"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(eval(&(Expr::c(1.0) / Expr::coord(0)), &[0.0]).is_err());
        assert!(eval(&Expr::coord(0).pow_half(3), &[-1.0]).is_err());
    }

    #[test]
    fn out_of_chart_coordinate() {
        assert!(eval_jet(&Expr::coord(3), &[0.0, 0.0], 2).is_err());
    }
}
