use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub const NVARS: usize = 5;
/// Variable names, in increasing order of precedence for grlex ties.
pub const VAR_NAMES: [&str; NVARS] = ["J", "a", "b", "alpha", "H"];

pub const J: usize = 0;
pub const A: usize = 1;
pub const B: usize = 2;
pub const ALPHA: usize = 3;
pub const H: usize = 4;

const DEG_SHIFT: u32 = 8 * NVARS as u32;

/// Exponent vector packed so that integer order is graded lexicographic order:
/// total degree in the top byte, then `H, α, b, a, J`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn new(exps: [u32; NVARS]) -> Monomial {
        let deg: u32 = exps.iter().sum();
        assert!(deg < 256, "total degree {deg} exceeds the packed range");
        let mut m = (deg as u64) << DEG_SHIFT;
        for (i, &e) in exps.iter().enumerate() {
            m |= (e as u64) << (8 * i);
        }
        Monomial(m)
    }

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> (8 * i)) & 0xff) as u32
    }

    pub fn exps(self) -> [u32; NVARS] {
        std::array::from_fn(|i| self.exp(i))
    }

    pub fn degree(self) -> u32 {
        (self.0 >> DEG_SHIFT) as u32
    }

    pub fn divides(self, o: Monomial) -> bool {
        (0..NVARS).all(|i| self.exp(i) <= o.exp(i))
    }

    /// `o / self`; caller guarantees divisibility.
    pub fn quotient_of(self, o: Monomial) -> Monomial {
        Monomial(o.0 - self.0)
    }

    pub fn lcm(self, o: Monomial) -> Monomial {
        Monomial::new(std::array::from_fn(|i| self.exp(i).max(o.exp(i))))
    }

    pub fn coprime(self, o: Monomial) -> bool {
        (0..NVARS).all(|i| self.exp(i) == 0 || o.exp(i) == 0)
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, o: Monomial) -> Monomial {
        assert!(
            self.degree() + o.degree() < 256,
            "total degree exceeds the packed range"
        );
        Monomial(self.0 + o.0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, name) in VAR_NAMES.iter().enumerate() {
            let e = self.exp(i);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Polynomial over ℚ in `J, a, b, α, H`; terms sorted by decreasing grlex, no zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigRational)>,
}

fn ratio(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Poly {
        Poly::from_terms(vec![(Monomial::ONE, c)])
    }

    pub fn int(c: i64) -> Poly {
        Poly::constant(ratio(c))
    }

    pub fn var(i: usize) -> Poly {
        Poly::from_terms(vec![(Monomial::var(i), BigRational::one())])
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Poly {
        Poly::from_terms(vec![(m, c)])
    }

    /// Sorts, merges duplicates and drops zeros.
    pub fn from_terms(mut terms: Vec<(Monomial, BigRational)>) -> Poly {
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Monomial, BigRational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn coefficient(&self, m: Monomial) -> BigRational {
        self.terms
            .iter()
            .find(|(k, _)| *k == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.combine(o, &BigRational::one())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.combine(o, &-BigRational::one())
    }

    /// `self + s·o` by a sorted merge.
    fn combine(&self, o: &Poly, s: &BigRational) -> Poly {
        let (x, y) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() || j < y.len() {
            let ord = match (x.get(i), y.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(x[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((y[j].0, &y[j].1 * s));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &x[i].1 + &y[j].1 * s;
                    if !c.is_zero() {
                        out.push((x[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn mul_term(&self, m: Monomial, s: &BigRational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, c)| (*k * m, c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut acc = Vec::with_capacity(self.len() * o.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                acc.push((*m1 * *m2, c1 * c2));
            }
        }
        Poly::from_terms(acc)
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::int(1), |acc, _| acc.mul(self))
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| {
                let mut e = m.exps();
                let k = e[i];
                e[i] -= 1;
                (Monomial::new(e), c * ratio(k as i64))
            })
            .collect();
        Poly::from_terms(terms)
    }

    /// `den^d · p(x_i = num/den)` with `d` the degree of `p` in `x_i`.
    pub fn substitute_ratio(&self, i: usize, num: &Poly, den: &Poly) -> Poly {
        let d = self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0);
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let k = m.exp(i);
            let mut e = m.exps();
            e[i] = 0;
            let rest = Poly::monomial(Monomial::new(e), c.clone());
            out = out.add(&rest.mul(&num.pow(k)).mul(&den.pow(d - k)));
        }
        out
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Poly::zero(),
        }
    }

    pub fn eval(&self, x: &[f64; NVARS]) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(m, c)| {
                c.to_f64().unwrap_or(f64::NAN)
                    * (0..NVARS)
                        .map(|i| x[i].powi(m.exp(i) as i32))
                        .product::<f64>()
            })
            .sum()
    }

    /// Parses `-a*b^2*H + 12*J^2*H - 3/2*alpha`; `α` is accepted for `alpha`.
    pub fn parse(text: &str) -> Result<Poly> {
        let err = |msg: String| Error::Parse { line: 0, msg };
        let s: String = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .replace('α', "alpha");
        if s.is_empty() {
            return Err(err("empty polynomial".into()));
        }
        let mut pieces = vec![];
        let mut cur = String::new();
        for (k, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && k > 0 && !cur.ends_with('^') {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        let mut terms = vec![];
        for piece in pieces {
            let (neg, body) = match piece.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(err(format!("dangling sign in {text:?}")));
            }
            let mut coef = BigRational::one();
            let mut exps = [0u32; NVARS];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(err(format!("empty factor in {piece:?}")));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    let value = match factor.split_once('/') {
                        Some((n, d)) => {
                            let n: BigInt = n
                                .parse()
                                .map_err(|_| err(format!("bad number {factor:?}")))?;
                            let d: BigInt = d
                                .parse()
                                .map_err(|_| err(format!("bad number {factor:?}")))?;
                            if d.is_zero() {
                                return Err(err("zero denominator".into()));
                            }
                            BigRational::new(n, d)
                        }
                        None => BigRational::from_integer(
                            factor
                                .parse()
                                .map_err(|_| err(format!("bad number {factor:?}")))?,
                        ),
                    };
                    coef *= value;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((v, e)) => (
                        v,
                        e.parse::<u32>()
                            .map_err(|_| err(format!("bad exponent {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let i = VAR_NAMES
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| err(format!("unknown variable {name:?}")))?;
                exps[i] += e;
            }
            if neg {
                coef = -coef;
            }
            terms.push((Monomial::new(exps), coef));
        }
        Ok(Poly::from_terms(terms))
    }

    /// Monomials whose coefficients differ between `self` and `o`.
    pub fn differing_monomials(&self, o: &Poly) -> Vec<String> {
        self.sub(o)
            .terms
            .iter()
            .map(|(m, c)| format!("{m}: {c}"))
            .collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Integer-coefficient polynomial kept primitive; the working type of Buchberger.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub(crate) struct IPoly {
    pub terms: Vec<(Monomial, BigInt)>,
}

impl IPoly {
    pub fn from_poly(p: &Poly) -> IPoly {
        let lcm = p
            .terms
            .iter()
            .fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
        let terms = p
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    *m,
                    (c * BigRational::from_integer(lcm.clone())).to_integer(),
                )
            })
            .collect();
        let mut out = IPoly { terms };
        out.make_primitive();
        out
    }

    pub fn to_monic(&self) -> Poly {
        let Some((_, lc)) = self.terms.first() else {
            return Poly::zero();
        };
        let lc = lc.clone();
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, BigRational::new(c.clone(), lc.clone())))
                .collect(),
        }
    }

    pub fn lm(&self) -> Monomial {
        self.terms[0].0
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c = &*c / &g;
            }
        }
    }

    /// S-polynomial, scaled to integer coefficients.
    pub fn s_poly(f: &IPoly, g: &IPoly) -> IPoly {
        let (mf, cf) = (&f.terms[0].0, &f.terms[0].1);
        let (mg, cg) = (&g.terms[0].0, &g.terms[0].1);
        let l = mf.lcm(*mg);
        let gcd = cf.gcd(cg);
        let (sf, sg) = (cg / &gcd, cf / &gcd);
        let uf = mf.quotient_of(l);
        let ug = mg.quotient_of(l);
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (x, y) = (&f.terms[1..], &g.terms[1..]);
        let (mut i, mut j) = (0, 0);
        while i < x.len() || j < y.len() {
            let a = x.get(i).map(|t| t.0 * uf);
            let b = y.get(j).map(|t| t.0 * ug);
            let ord = match (a, b) {
                (Some(a), Some(b)) => a.cmp(&b),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push((a.unwrap(), &x[i].1 * &sf));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.unwrap(), -(&y[j].1 * &sg)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &x[i].1 * &sf - &y[j].1 * &sg;
                    if !c.is_zero() {
                        out.push((a.unwrap(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        let mut p = IPoly { terms: out };
        p.make_primitive();
        p
    }

    /// Full reduction modulo `basis` (all terms, not just the head).
    /// Returns `None` if some intermediate exceeds `max_terms`.
    pub fn reduce(mut self, basis: &[&IPoly], max_terms: usize) -> Option<IPoly> {
        let mut pos = 0;
        let mut steps = 0usize;
        while pos < self.terms.len() {
            let m = self.terms[pos].0;
            let Some(g) = basis.iter().find(|g| g.lm().divides(m)) else {
                pos += 1;
                continue;
            };
            let c = &self.terms[pos].1;
            let lc = &g.terms[0].1;
            let gcd = c.gcd(lc);
            let sp = lc / &gcd;
            let sg = c / &gcd;
            let u = g.lm().quotient_of(m);
            let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
            if !sp.is_one() {
                out.extend(self.terms[..pos].iter().map(|(k, v)| (*k, v * &sp)));
            } else {
                out.extend_from_slice(&self.terms[..pos]);
            }
            let (x, y) = (&self.terms[pos + 1..], &g.terms[1..]);
            let (mut i, mut j) = (0, 0);
            while i < x.len() || j < y.len() {
                let b = y.get(j).map(|t| t.0 * u);
                let ord = match (x.get(i), b) {
                    (Some(a), Some(b)) => a.0.cmp(&b),
                    (Some(_), None) => Ordering::Greater,
                    _ => Ordering::Less,
                };
                match ord {
                    Ordering::Greater => {
                        out.push((x[i].0, &x[i].1 * &sp));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((b.unwrap(), -(&y[j].1 * &sg)));
                        j += 1;
                    }
                    Ordering::Equal => {
                        let v = &x[i].1 * &sp - &y[j].1 * &sg;
                        if !v.is_zero() {
                            out.push((x[i].0, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
            if out.len() > max_terms {
                return None;
            }
            self.terms = out;
            steps += 1;
            if steps.is_multiple_of(16) {
                self.make_primitive();
            }
        }
        self.make_primitive();
        Some(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let h = Monomial::var(H);
        let j = Monomial::var(J);
        assert!(h > j);
        assert!(Monomial::new([2, 0, 0, 0, 0]) > h);
        // same degree: H dominates α dominates b ...
        assert!(Monomial::new([0, 0, 0, 1, 1]) > Monomial::new([0, 0, 0, 2, 0]));
        assert!(Monomial::new([0, 1, 1, 0, 0]) > Monomial::new([1, 0, 1, 0, 0]));
    }

    #[test]
    fn parse_print_roundtrip() {
        let p = Poly::parse("-a*b^2*H + 12*J^2*H - 3/2*alpha + 7").unwrap();
        assert_eq!(p.len(), 4);
        let q = Poly::parse(&p.to_string()).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.coefficient(Monomial::new([2, 0, 0, 0, 1])), ratio(12));
        assert!(Poly::parse("2*x").is_err());
        assert!(Poly::parse("").is_err());
    }

    #[test]
    fn arithmetic() {
        let x = Poly::var(J);
        let y = Poly::var(A);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p, x.mul(&x).sub(&y.mul(&y)));
        assert!(p.sub(&p).is_zero());
        assert_eq!(x.pow(3).partial(J), x.pow(2).scale(&ratio(3)));
    }

    #[test]
    fn substitution_clears_denominator() {
        // a^2 + a with a = (1 - J)/H  →  (1 - J)^2 + (1 - J) H
        let p = Poly::parse("a^2 + a").unwrap();
        let num = Poly::parse("1 - J").unwrap();
        let den = Poly::var(H);
        let want = Poly::parse("1 - 2*J + J^2 + H - J*H").unwrap();
        assert_eq!(p.substitute_ratio(A, &num, &den), want);
    }

    #[test]
    fn integer_reduction_matches_rational() {
        let g = IPoly::from_poly(&Poly::parse("2*J*a - 1").unwrap());
        let f = IPoly::from_poly(&Poly::parse("3*J^2*a^2 + J").unwrap());
        let r = f.reduce(&[&g], usize::MAX).unwrap();
        // 3J²a² ≡ 3/4, remainder ∝ J + 3/4
        assert_eq!(r.to_monic(), Poly::parse("J + 3/4").unwrap());
    }
}
