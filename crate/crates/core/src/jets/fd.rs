//! Finite-difference oracle, independent of the jet arithmetic.

use super::expr::{eval, Expr};
use crate::error::Result;

const SHRINK: f64 = 1.4;
const TABLE: usize = 10;
const SAFE: f64 = 2.0;

/// Initial step for a partial of total order `order` at `p`.
pub fn fd_step(p: &[f64], alpha: &[usize], order: usize) -> f64 {
    let scale = alpha
        .iter()
        .zip(p)
        .filter(|(&a, _)| a > 0)
        .map(|(_, x)| x.abs())
        .fold(1.0, f64::max);
    scale * [0.0, 1e-3, 1e-2, 5e-2][order]
}

fn stencil(order: usize) -> &'static [(i32, f64)] {
    match order {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        _ => unreachable!("order checked by caller"),
    }
}

fn central(e: &Expr, p: &[f64], alpha: &[usize], h: f64) -> Result<f64> {
    let dirs: Vec<(usize, &[(i32, f64)])> = alpha
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(i, &a)| (i, stencil(a)))
        .collect();
    let total: usize = alpha.iter().sum();
    let mut counters = vec![0usize; dirs.len()];
    let mut acc = 0.0;
    let mut q = p.to_vec();
    loop {
        let mut w = 1.0;
        for (d, &(i, st)) in dirs.iter().enumerate() {
            let (off, c) = st[counters[d]];
            q[i] = p[i] + off as f64 * h;
            w *= c;
        }
        acc += w * eval(e, &q)?;
        let mut d = 0;
        loop {
            if d == dirs.len() {
                return Ok(acc / h.powi(total as i32));
            }
            counters[d] += 1;
            if counters[d] < dirs[d].1.len() {
                break;
            }
            counters[d] = 0;
            d += 1;
        }
    }
}

/// Central-difference estimate of `∂^α e` at `p`, `|α|` in 1..=3.
///
/// Product central stencils with second-order error are refined by Ridders'
/// polynomial extrapolation, starting from [`fd_step`] and shrinking the step
/// geometrically; the estimate with the smallest internal error wins.
pub fn fd_oracle(e: &Expr, p: &[f64], alpha: &[usize]) -> Result<f64> {
    let order: usize = alpha.iter().sum();
    assert!(
        (1..=3).contains(&order),
        "finite-difference order must be 1..=3"
    );
    assert_eq!(alpha.len(), p.len(), "multi-index length");
    let mut h = fd_step(p, alpha, order);
    let mut table = vec![vec![0.0; TABLE]; TABLE];
    table[0][0] = central(e, p, alpha, h)?;
    let mut best = table[0][0];
    let mut err = f64::INFINITY;
    for i in 1..TABLE {
        h /= SHRINK;
        table[0][i] = central(e, p, alpha, h)?;
        let mut fac = SHRINK * SHRINK;
        for j in 1..=i {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= SHRINK * SHRINK;
            let e1 = (table[j][i] - table[j - 1][i]).abs();
            let e2 = (table[j][i] - table[j - 1][i - 1]).abs();
            let ej = e1.max(e2);
            if ej <= err {
                err = ej;
                best = table[j][i];
            }
        }
        if (table[i][i] - table[i - 1][i - 1]).abs() >= SAFE * err {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_third_derivative() {
        let e = Expr::coord(0).powi(3);
        let d = fd_oracle(&e, &[1.0], &[3]).unwrap();
        assert!((d - 6.0).abs() < 1e-4);
    }

    #[test]
    fn sine_slope_at_origin() {
        let d = fd_oracle(&Expr::coord(0).sin(), &[0.0], &[1]).unwrap();
        assert!((d - 1.0).abs() < 1e-8);
    }

    #[test]
    fn mixed_partial() {
        // x^2 y^3 -> d^3/dx dy^2 = 2x * 6y
        let e = Expr::coord(0).powi(2) * Expr::coord(1).powi(3);
        let d = fd_oracle(&e, &[0.7, -1.3], &[1, 2]).unwrap();
        assert!((d - 12.0 * 0.7 * -1.3).abs() < 1e-8);
    }

    #[test]
    fn stencil_leaving_domain_is_an_error() {
        let e = Expr::coord(0).ln();
        assert!(fd_oracle(&e, &[0.05], &[3]).is_err());
    }
}
