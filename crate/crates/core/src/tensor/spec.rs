use serde::{Deserialize, Serialize};

use crate::classify::JordanType;
use crate::jets::Expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Signature {
    /// `(−,+,…,+)`: exactly one negative eigenvalue.
    Lorentzian,
    Riemannian,
}

impl Signature {
    pub fn negative_count(self) -> usize {
        match self {
            Signature::Lorentzian => 1,
            Signature::Riemannian => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Signature::Lorentzian => "lorentzian",
            Signature::Riemannian => "riemannian",
        }
    }
}

/// Properties a spec claims; `None` means "no claim".
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExpectedFlags {
    pub is_solution: Option<bool>,
    pub harmonic_curvature: Option<bool>,
    pub locally_conformally_flat: Option<bool>,
    pub ricci_flat: Option<bool>,
    pub ricci_type: Option<JordanType>,
    pub nilpotency: Option<u8>,
}

/// A coordinate metric with density on a box-shaped chart.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricMeasureSpec {
    pub name: String,
    pub coords: Vec<String>,
    /// Upper triangle `g_ij`, `i <= j`, row-major.
    pub metric: Vec<Expr>,
    pub density: Expr,
    pub domain: Vec<(f64, f64)>,
    pub signature: Signature,
    pub expected: ExpectedFlags,
}

pub(crate) fn tri_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

impl MetricMeasureSpec {
    /// Spec with an all-zero metric, to be filled with [`Self::set`].
    pub fn new(
        name: &str,
        coords: &[&str],
        density: Expr,
        domain: Vec<(f64, f64)>,
        signature: Signature,
    ) -> Self {
        let n = coords.len();
        assert!((3..=6).contains(&n), "chart dimension must be 3..=6");
        assert_eq!(domain.len(), n, "one interval per coordinate");
        MetricMeasureSpec {
            name: name.to_string(),
            coords: coords.iter().map(|s| s.to_string()).collect(),
            metric: vec![Expr::zero(); n * (n + 1) / 2],
            density,
            domain,
            signature,
            expected: ExpectedFlags::default(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn component(&self, i: usize, j: usize) -> &Expr {
        &self.metric[tri_index(self.dim(), i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Expr) -> &mut Self {
        let n = self.dim();
        self.metric[tri_index(n, i, j)] = e;
        self
    }

    /// Diagonal entries `g_ii = d[i]`.
    pub fn with_diagonal(mut self, d: Vec<Expr>) -> Self {
        for (i, e) in d.into_iter().enumerate() {
            self.set(i, i, e);
        }
        self
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    pub fn coord_names(&self) -> Vec<&str> {
        self.coords.iter().map(String::as_str).collect()
    }

    /// The middle of the domain box.
    pub fn center(&self) -> Vec<f64> {
        self.domain.iter().map(|(a, b)| 0.5 * (a + b)).collect()
    }

    /// Every expression: metric components then density.
    pub fn expressions(&self) -> Vec<(String, &Expr)> {
        let n = self.dim();
        let mut out = vec![];
        for i in 0..n {
            for j in i..n {
                out.push((
                    format!("g_{}{}", self.coords[i], self.coords[j]),
                    self.component(i, j),
                ));
            }
        }
        out.push(("h".to_string(), &self.density));
        out
    }
}
