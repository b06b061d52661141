//! Ricci tensor of multiply warped products `ε dt² + Σ f_k(t)² g^{F_k}` with
//! Einstein fibers, assembled from the warped-product formulas. Used only as
//! an independent check on the general engine.

use super::value::TensorValue;
use crate::error::Result;
use crate::jets::{eval, eval_jet, Expr};

#[derive(Debug, Clone, PartialEq)]
pub struct WarpedFiber {
    /// Chart coordinates spanned by the fiber.
    pub coords: Vec<usize>,
    /// Warping function, depending on the base coordinate only.
    pub warp: Expr,
    /// `ρ^F = einstein · g^F`.
    pub einstein: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WarpedStructure {
    pub base: usize,
    /// `g(∂_t, ∂_t)`.
    pub epsilon: f64,
    pub fibers: Vec<WarpedFiber>,
}

/// Ricci tensor at `p` of the warped product described by `ws`, whose full
/// metric expressions are `metric` (full `n×n`, row-major).
pub fn warped_ricci(ws: &WarpedStructure, metric: &[Expr], p: &[f64]) -> Result<TensorValue> {
    let n = p.len();
    let eps = ws.epsilon;
    let mut fs = vec![];
    for fib in &ws.fibers {
        let j = eval_jet(&fib.warp, p, n)?;
        let f0 = j.value();
        let mut alpha = vec![0; n];
        alpha[ws.base] = 1;
        let f1 = j.partial(&alpha);
        alpha[ws.base] = 2;
        let f2 = j.partial(&alpha);
        fs.push((f0, f1, f2, fib.coords.len() as f64));
    }
    let mut out = TensorValue::zeros(2, n, p);
    let rho_tt: f64 = fs.iter().map(|&(f, _, f2, d)| -d * f2 / f).sum();
    out.set(&[ws.base, ws.base], rho_tt);
    for (k, fib) in ws.fibers.iter().enumerate() {
        let (f, f1, f2, d) = fs[k];
        let mut bracket = (f * eps * f2 + (d - 1.0) * eps * f1 * f1) / (f * f);
        for (j, &(fj, fj1, _, dj)) in fs.iter().enumerate() {
            if j != k {
                bracket += dj * eps * f1 * fj1 / (f * fj);
            }
        }
        let factor = fib.einstein / (f * f) - bracket;
        for &a in &fib.coords {
            for &b in &fib.coords {
                let gab = eval(&metric[a * n + b], p)?;
                out.set(&[a, b], factor * gab);
            }
        }
    }
    Ok(out)
}
