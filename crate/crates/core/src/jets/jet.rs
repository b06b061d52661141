use std::sync::OnceLock;

pub const MAX_DIM: usize = 6;

/// Multi-index bookkeeping for one chart dimension.
///
/// Monomials are stored as sorted variable tuples: degree 0 first, then the
/// `n` linear ones, then `i <= j`, then `i <= j <= k`.
#[derive(Debug)]
pub struct Layout {
    pub n: usize,
    pub vars: Vec<Vec<usize>>,
    pub degree_start: [usize; 5],
    idx1: Vec<usize>,
    idx2: Vec<usize>,
    idx3: Vec<usize>,
    /// `(a, b, a*b)` for every pair with total degree <= 3, sorted by degree.
    mul: Vec<(u16, u16, u16)>,
    /// `mul_end[k]` is the number of leading `mul` entries with degree <= k.
    mul_end: [usize; 4],
    /// Per variable: `(target, source, factor)` for the partial derivative.
    deriv: Vec<Vec<(u16, u16, f64)>>,
}

impl Layout {
    fn build(n: usize) -> Layout {
        let mut vars = vec![vec![]];
        for i in 0..n {
            vars.push(vec![i]);
        }
        for i in 0..n {
            for j in i..n {
                vars.push(vec![i, j]);
            }
        }
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    vars.push(vec![i, j, k]);
                }
            }
        }
        let n2 = n * (n + 1) / 2;
        let n3 = n * (n + 1) * (n + 2) / 6;
        let degree_start = [0, 1, 1 + n, 1 + n + n2, 1 + n + n2 + n3];
        let mut idx1 = vec![0; n];
        let mut idx2 = vec![0; n * n];
        let mut idx3 = vec![0; n * n * n];
        for (pos, v) in vars.iter().enumerate() {
            match v.len() {
                1 => idx1[v[0]] = pos,
                2 => {
                    idx2[v[0] * n + v[1]] = pos;
                    idx2[v[1] * n + v[0]] = pos;
                }
                3 => {
                    let (a, b, c) = (v[0], v[1], v[2]);
                    for (x, y, z) in [
                        (a, b, c),
                        (a, c, b),
                        (b, a, c),
                        (b, c, a),
                        (c, a, b),
                        (c, b, a),
                    ] {
                        idx3[(x * n + y) * n + z] = pos;
                    }
                }
                _ => {}
            }
        }
        let mut layout = Layout {
            n,
            vars,
            degree_start,
            idx1,
            idx2,
            idx3,
            mul: vec![],
            mul_end: [0; 4],
            deriv: vec![],
        };
        let len = layout.len();
        let mut mul = vec![];
        for a in 0..len {
            for b in 0..len {
                let da = layout.vars[a].len();
                let db = layout.vars[b].len();
                if da + db > 3 {
                    continue;
                }
                let mut m = layout.vars[a].clone();
                m.extend_from_slice(&layout.vars[b]);
                let c = layout.index_of_vars(&m);
                mul.push((da + db, a as u16, b as u16, c as u16));
            }
        }
        mul.sort_by_key(|t| t.0);
        for k in 0..4 {
            layout.mul_end[k] = mul.iter().filter(|t| t.0 <= k).count();
        }
        layout.mul = mul.into_iter().map(|t| (t.1, t.2, t.3)).collect();
        for i in 0..n {
            let mut d = vec![];
            for beta in 0..layout.degree_start[3] {
                let mut m = layout.vars[beta].clone();
                m.push(i);
                let src = layout.index_of_vars(&m);
                let factor = m.iter().filter(|&&v| v == i).count() as f64;
                d.push((beta as u16, src as u16, factor));
            }
            layout.deriv.push(d);
        }
        layout
    }

    pub fn get(n: usize) -> &'static Layout {
        static LAYOUTS: [OnceLock<Layout>; MAX_DIM + 1] = [const { OnceLock::new() }; MAX_DIM + 1];
        assert!(
            (1..=MAX_DIM).contains(&n),
            "chart dimension {n} outside 1..={MAX_DIM}"
        );
        LAYOUTS[n].get_or_init(|| Layout::build(n))
    }

    pub fn len(&self) -> usize {
        self.degree_start[4]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Position of the monomial given as a list of variables (any order).
    pub fn index_of_vars(&self, v: &[usize]) -> usize {
        let n = self.n;
        match v.len() {
            0 => 0,
            1 => self.idx1[v[0]],
            2 => self.idx2[v[0] * n + v[1]],
            3 => self.idx3[(v[0] * n + v[1]) * n + v[2]],
            d => panic!("monomial degree {d} exceeds 3"),
        }
    }

    /// Position of the monomial with exponent vector `alpha`.
    pub fn index_of_exponents(&self, alpha: &[usize]) -> usize {
        assert_eq!(alpha.len(), self.n, "exponent vector length");
        let mut v = vec![];
        for (i, &a) in alpha.iter().enumerate() {
            v.extend(std::iter::repeat_n(i, a));
        }
        self.index_of_vars(&v)
    }

    pub fn exponents(&self, idx: usize) -> Vec<usize> {
        let mut e = vec![0; self.n];
        for &v in &self.vars[idx] {
            e[v] += 1;
        }
        e
    }
}

/// Truncated multivariate Taylor expansion of total degree <= 3.
///
/// Coefficients are Taylor coefficients `∂^α f / α!`. `order` records how many
/// degrees are trustworthy: differentiating a jet lowers it by one, and all
/// arithmetic truncates to the smaller order of its operands.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet3 {
    n: usize,
    order: usize,
    c: Vec<f64>,
}

impl Jet3 {
    pub fn zero(n: usize, order: usize) -> Jet3 {
        Jet3 {
            n,
            order: order.min(3),
            c: vec![0.0; Layout::get(n).len()],
        }
    }

    pub fn constant(n: usize, v: f64) -> Jet3 {
        let mut j = Jet3::zero(n, 3);
        j.c[0] = v;
        j
    }

    /// The coordinate function `x_i` expanded at `x_i = at`.
    pub fn variable(n: usize, i: usize, at: f64) -> Jet3 {
        let mut j = Jet3::constant(n, at);
        j.c[Layout::get(n).index_of_vars(&[i])] = 1.0;
        j
    }

    pub fn from_coefficients(n: usize, order: usize, c: Vec<f64>) -> Jet3 {
        assert_eq!(c.len(), Layout::get(n).len(), "coefficient count");
        let mut j = Jet3 {
            n,
            order: order.min(3),
            c,
        };
        j.clear_above_order();
        j
    }

    fn clear_above_order(&mut self) {
        let start = Layout::get(self.n).degree_start[self.order + 1];
        for v in &mut self.c[start..] {
            *v = 0.0;
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.c
    }

    /// Taylor coefficient of the monomial with exponent vector `alpha`.
    pub fn coefficient(&self, alpha: &[usize]) -> f64 {
        self.c[Layout::get(self.n).index_of_exponents(alpha)]
    }

    /// Mixed partial `∂^α f` at the expansion point.
    pub fn partial(&self, alpha: &[usize]) -> f64 {
        let fact: f64 = alpha.iter().map(|&a| factorial(a)).product();
        self.coefficient(alpha) * fact
    }

    /// `∂ f / ∂x_i ∂x_j` style access by variable list.
    pub fn partial_vars(&self, vars: &[usize]) -> f64 {
        let layout = Layout::get(self.n);
        let mut counts = [0usize; MAX_DIM];
        for &v in vars {
            counts[v] += 1;
        }
        let fact: f64 = counts.iter().map(|&a| factorial(a)).product();
        self.c[layout.index_of_vars(vars)] * fact
    }

    pub fn gradient(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.partial_vars(&[i])).collect()
    }

    pub fn truncate(&self, order: usize) -> Jet3 {
        let mut j = self.clone();
        j.order = j.order.min(order);
        j.clear_above_order();
        j
    }

    /// Partial derivative in direction `i`; the result has one order less.
    pub fn derivative(&self, i: usize) -> Jet3 {
        assert!(self.order > 0, "cannot differentiate an order-0 jet");
        let layout = Layout::get(self.n);
        let mut out = Jet3::zero(self.n, self.order - 1);
        let end = layout.degree_start[self.order];
        for &(t, s, f) in &layout.deriv[i] {
            if (t as usize) < end {
                out.c[t as usize] = f * self.c[s as usize];
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Jet3 {
        let mut j = self.clone();
        for v in &mut j.c {
            *v *= s;
        }
        j
    }

    pub fn add_const(&self, s: f64) -> Jet3 {
        let mut j = self.clone();
        j.c[0] += s;
        j
    }

    pub fn add(&self, o: &Jet3) -> Jet3 {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Jet3) -> Jet3 {
        self.zip(o, |a, b| a - b)
    }

    pub fn neg(&self) -> Jet3 {
        self.scale(-1.0)
    }

    fn zip(&self, o: &Jet3, f: impl Fn(f64, f64) -> f64) -> Jet3 {
        assert_eq!(self.n, o.n, "jet dimension mismatch");
        let order = self.order.min(o.order);
        let mut j = Jet3 {
            n: self.n,
            order,
            c: self.c.iter().zip(&o.c).map(|(&a, &b)| f(a, b)).collect(),
        };
        j.clear_above_order();
        j
    }

    /// `self += a * b`, truncated to the smallest order involved.
    pub fn add_mul_assign(&mut self, a: &Jet3, b: &Jet3) {
        let order = self.order.min(a.order).min(b.order);
        let layout = Layout::get(self.n);
        for &(i, j, k) in &layout.mul[..layout.mul_end[order]] {
            self.c[k as usize] += a.c[i as usize] * b.c[j as usize];
        }
        self.order = order;
        self.clear_above_order();
    }

    pub fn mul(&self, o: &Jet3) -> Jet3 {
        assert_eq!(self.n, o.n, "jet dimension mismatch");
        let mut out = Jet3::zero(self.n, self.order.min(o.order));
        out.add_mul_assign(self, o);
        out
    }

    /// `f(self)` given `[f, f', f'', f''']` at the constant term.
    pub fn compose(&self, d: [f64; 4]) -> Jet3 {
        let mut delta = self.clone();
        delta.c[0] = 0.0;
        let mut out = Jet3::constant(self.n, d[0]);
        out.order = self.order;
        let mut power = delta.clone();
        let mut fact = 1.0;
        for (k, &dk) in d.iter().enumerate().skip(1).take(self.order) {
            fact *= k as f64;
            if dk != 0.0 {
                for (o, p) in out.c.iter_mut().zip(&power.c) {
                    *o += dk / fact * p;
                }
            }
            if k < self.order {
                power = power.mul(&delta);
            }
        }
        out.clear_above_order();
        out
    }

    pub fn recip(&self) -> Jet3 {
        let x = self.value();
        let r = 1.0 / x;
        self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }

    pub fn div(&self, o: &Jet3) -> Jet3 {
        self.mul(&o.recip())
    }

    pub fn exp(&self) -> Jet3 {
        let e = self.value().exp();
        self.compose([e; 4])
    }

    pub fn ln(&self) -> Jet3 {
        let x = self.value();
        self.compose([x.ln(), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)])
    }

    pub fn sin(&self) -> Jet3 {
        let (s, c) = self.value().sin_cos();
        self.compose([s, c, -s, -c])
    }

    pub fn cos(&self) -> Jet3 {
        let (s, c) = self.value().sin_cos();
        self.compose([c, -s, -c, s])
    }

    pub fn sqrt(&self) -> Jet3 {
        self.powf(0.5)
    }

    pub fn powi(&self, k: i32) -> Jet3 {
        let x = self.value();
        let mut d = [0.0; 4];
        let mut coef = 1.0;
        for (m, slot) in d.iter_mut().enumerate() {
            let e = k - m as i32;
            // falling factorial k(k-1)...(k-m+1) vanishes once it passes zero
            *slot = if coef == 0.0 { 0.0 } else { coef * x.powi(e) };
            coef *= (k - m as i32) as f64;
        }
        self.compose(d)
    }

    pub fn powf(&self, p: f64) -> Jet3 {
        let x = self.value();
        let d = [
            x.powf(p),
            p * x.powf(p - 1.0),
            p * (p - 1.0) * x.powf(p - 2.0),
            p * (p - 1.0) * (p - 2.0) * x.powf(p - 3.0),
        ];
        self.compose(d)
    }

    pub fn max_abs_diff(&self, o: &Jet3) -> f64 {
        self.c
            .iter()
            .zip(&o.c)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_sizes() {
        for n in 1..=MAX_DIM {
            let l = Layout::get(n);
            assert_eq!(l.len(), 1 + n + n * (n + 1) / 2 + n * (n + 1) * (n + 2) / 6);
        }
        assert_eq!(Layout::get(4).len(), 35);
    }

    #[test]
    fn exponent_roundtrip() {
        let l = Layout::get(4);
        for idx in 0..l.len() {
            assert_eq!(l.index_of_exponents(&l.exponents(idx)), idx);
        }
    }

    #[test]
    fn product_of_variables() {
        let x = Jet3::variable(2, 0, 2.0);
        let y = Jet3::variable(2, 1, -1.0);
        let p = x.mul(&y).mul(&x);
        // x^2 y at (2,-1)
        assert_eq!(p.value(), -4.0);
        assert_eq!(p.partial(&[1, 0]), -4.0);
        assert_eq!(p.partial(&[0, 1]), 4.0);
        assert_eq!(p.partial(&[2, 1]), 2.0);
        assert_eq!(p.partial(&[1, 1]), 4.0);
    }

    #[test]
    fn derivative_lowers_order() {
        let x = Jet3::variable(1, 0, 0.3);
        let s = x.sin();
        let d = s.derivative(0);
        assert_eq!(d.order(), 2);
        assert!((d.value() - 0.3f64.cos()).abs() < 1e-15);
        assert!((d.partial(&[2]) + 0.3f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn powi_at_zero_base() {
        let x = Jet3::variable(1, 0, 0.0);
        let c = x.powi(3);
        assert_eq!(c.coefficients(), &[0.0, 0.0, 0.0, 1.0]);
        let s = x.powi(2);
        assert_eq!(s.coefficients(), &[0.0, 0.0, 1.0, 0.0]);
    }
}
