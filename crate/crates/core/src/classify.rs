//! Ricci operator Jordan types, causal character of `∇h`, and Kundt optical
//! scalars.

use std::fmt;

use nalgebra::{Complex, DMatrix, DVector, Schur};
use serde::{Deserialize, Serialize};

use crate::consts::{
    CAUSAL_DEAD_BAND, CLASSIFY_TOL, ISOTROPIC_GRADIENT_FLOOR, OPTICAL_TOL, VANISHING_GRADIENT,
};
use crate::error::{Error, Result};
use crate::jets::{eval_jet, Expr};
use crate::tensor::{Geometry, MetricMeasureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum JordanType {
    #[serde(rename = "I.a")]
    Ia,
    #[serde(rename = "I.b")]
    Ib,
    #[serde(rename = "II")]
    II,
    #[serde(rename = "III")]
    III,
}

impl JordanType {
    pub fn tag(self) -> &'static str {
        match self {
            JordanType::Ia => "I.a",
            JordanType::Ib => "I.b",
            JordanType::II => "II",
            JordanType::III => "III",
        }
    }

    pub fn from_tag(s: &str) -> Option<JordanType> {
        match s {
            "I.a" | "Ia" => Some(JordanType::Ia),
            "I.b" | "Ib" => Some(JordanType::Ib),
            "II" => Some(JordanType::II),
            "III" => Some(JordanType::III),
            _ => None,
        }
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

/// Output of [`jordan_type`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JordanFragment {
    /// Cluster means, repeated by algebraic multiplicity.
    pub eigenvalues: Vec<Eigenvalue>,
    pub jordan_type: JordanType,
    /// Size of the largest Jordan block of each real cluster, in eigenvalue order.
    pub block_sizes: Vec<usize>,
    /// `k` with `Ric^k = 0` and `Ric^{k−1} ≠ 0`; 0 when some eigenvalue is nonzero.
    pub nilpotency: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RicciTypeReport {
    pub point: Vec<f64>,
    pub eigenvalues: Vec<Eigenvalue>,
    pub jordan_type: JordanType,
    pub nilpotency: u8,
    pub causal: CausalCharacter,
    pub grad_h_norm2: f64,
}

struct Cluster {
    mean: Complex<f64>,
    members: usize,
}

fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

fn rank(m: &DMatrix<f64>, threshold: f64) -> usize {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .filter(|&&s| s > threshold)
        .count()
}

const SCHUR_MAX_ITER: usize = 2000;

/// Eigenvalues via real Schur. nalgebra's QR sweep can stall on exactly
/// structured inputs, so a stalled run is retried on orthogonally similar matrices.
fn eigenvalues_of(a: &DMatrix<f64>) -> Result<Vec<Complex<f64>>> {
    let n = a.nrows();
    let mut m = a.clone();
    for attempt in 0..4 {
        if let Some(s) = Schur::try_new(m.clone(), f64::EPSILON, SCHUR_MAX_ITER) {
            return Ok(s.complex_eigenvalues().iter().cloned().collect());
        }
        // Householder reflection along a fixed generic direction
        let v = DVector::from_fn(n, |i, _| {
            ((i + 1) as f64 * (1.0 + attempt as f64) * 0.754_877_666).sin()
        });
        let q = DMatrix::identity(n, n) - (&v * v.transpose()) * (2.0 / v.norm_squared());
        m = &q * &m * &q;
    }
    Err(Error::ResourceLimit {
        what: "schur iterations",
        limit: SCHUR_MAX_ITER,
    })
}

/// Jordan structure of a real `n×n` matrix (row-major) under the tolerance
/// ladder: eigenvalues within `√tol · max(1, ‖A‖)` are one cluster, and the
/// rank of `(A − λ)^k` counts singular values above `tol^{1/4} · ‖A − λ‖^k`.
pub fn jordan_type(matrix: &[f64], n: usize, tol: f64) -> Result<JordanFragment> {
    assert_eq!(matrix.len(), n * n, "matrix size");
    let a = DMatrix::from_row_slice(n, n, matrix);
    let scale = spectral_norm(&a).max(1.0);
    let gap = tol.sqrt() * scale;
    let rank_rel = tol.powf(0.25);

    let mut pts = eigenvalues_of(&a)?;
    pts.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    // single-linkage clustering
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..i {
            if (pts[i] - pts[j]).norm() <= gap {
                let (li, lj) = (label[i], label[j]);
                for l in label.iter_mut() {
                    if *l == li {
                        *l = lj;
                    }
                }
            }
        }
    }
    let mut clusters: Vec<Cluster> = vec![];
    let mut seen: Vec<usize> = vec![];
    for i in 0..n {
        if seen.contains(&label[i]) {
            continue;
        }
        seen.push(label[i]);
        let members: Vec<Complex<f64>> = (0..n)
            .filter(|&k| label[k] == label[i])
            .map(|k| pts[k])
            .collect();
        let sum: Complex<f64> = members.iter().sum();
        let mut mean = sum / members.len() as f64;
        if mean.im.abs() <= gap {
            mean.im = 0.0;
        }
        clusters.push(Cluster {
            mean,
            members: members.len(),
        });
    }
    for i in 0..clusters.len() {
        for j in 0..i {
            let d = (clusters[i].mean - clusters[j].mean).norm();
            if d < 10.0 * gap {
                return Err(Error::IllConditioned {
                    gap: d,
                    limit: 10.0 * gap,
                });
            }
        }
    }
    clusters.sort_by(|x, y| {
        x.mean
            .re
            .total_cmp(&y.mean.re)
            .then(x.mean.im.total_cmp(&y.mean.im))
    });

    let complex = clusters.iter().any(|c| c.mean.im != 0.0);
    let mut block_sizes = vec![];
    let mut nilpotency = 0u8;
    for c in clusters.iter().filter(|c| c.mean.im == 0.0) {
        let nm = &a - DMatrix::identity(n, n) * c.mean.re;
        let norm = spectral_norm(&nm);
        let target = n - c.members;
        let mut size = 0;
        let mut power = DMatrix::identity(n, n);
        if norm <= gap {
            size = 1;
        } else {
            for k in 1..=c.members {
                power = &power * &nm;
                if rank(&power, rank_rel * norm.powi(k as i32)) <= target {
                    size = k;
                    break;
                }
            }
            if size == 0 {
                size = c.members;
            }
        }
        block_sizes.push(size);
        if (c.mean.re == 0.0 || c.mean.re.abs() <= gap) && c.members == n {
            nilpotency = if norm <= gap { 1 } else { size as u8 };
        }
    }
    let jordan_type = if complex {
        JordanType::Ib
    } else {
        match block_sizes.iter().max().copied().unwrap_or(1) {
            0 | 1 => JordanType::Ia,
            2 => JordanType::II,
            _ => JordanType::III,
        }
    };
    let mut eigenvalues = vec![];
    for c in &clusters {
        for _ in 0..c.members {
            eigenvalues.push(Eigenvalue {
                re: c.mean.re,
                im: c.mean.im,
            });
        }
    }
    Ok(JordanFragment {
        eigenvalues,
        jordan_type,
        block_sizes,
        nilpotency,
    })
}

pub fn ricci_operator(spec: &MetricMeasureSpec, p: &[f64]) -> Result<Vec<f64>> {
    Ok(Geometry::new(spec, p)?.ricci_operator())
}

/// Causal character of `∇h` and the value `g(∇h, ∇h)`.
pub fn causal_character_of(geo: &Geometry) -> Result<(CausalCharacter, f64)> {
    let q = geo.grad_h_norm2();
    let e = geo.grad_h.iter().map(|v| v * v).sum::<f64>().sqrt();
    if e < VANISHING_GRADIENT {
        return Err(Error::VanishingGradient { norm: e });
    }
    let tag = if q.abs() < CAUSAL_DEAD_BAND {
        if e > ISOTROPIC_GRADIENT_FLOOR {
            CausalCharacter::Lightlike
        } else {
            CausalCharacter::Zero
        }
    } else if q > 0.0 {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Timelike
    };
    Ok((tag, q))
}

pub fn causal_character(spec: &MetricMeasureSpec, p: &[f64]) -> Result<(CausalCharacter, f64)> {
    causal_character_of(&Geometry::new(spec, p)?)
}

pub fn ricci_type_report_of(geo: &Geometry, tol: f64) -> Result<RicciTypeReport> {
    let frag = jordan_type(&geo.ricci_operator(), geo.n, tol)?;
    let (causal, q) = match causal_character_of(geo) {
        Ok(v) => v,
        Err(Error::VanishingGradient { .. }) => (CausalCharacter::Zero, geo.grad_h_norm2()),
        Err(e) => return Err(e),
    };
    Ok(RicciTypeReport {
        point: geo.point.clone(),
        eigenvalues: frag.eigenvalues,
        jordan_type: frag.jordan_type,
        nilpotency: frag.nilpotency,
        causal,
        grad_h_norm2: q,
    })
}

pub fn ricci_type_report(spec: &MetricMeasureSpec, p: &[f64]) -> Result<RicciTypeReport> {
    ricci_type_report_of(&Geometry::new(spec, p)?, CLASSIFY_TOL)
}

/// Expansion, shear and twist `(θ, σ², ω²)` of the vector field `V`.
pub fn optical_scalars(spec: &MetricMeasureSpec, v: &[Expr], p: &[f64]) -> Result<(f64, f64, f64)> {
    let n = spec.dim();
    assert_eq!(v.len(), n, "vector field needs n components");
    let geo = Geometry::new(spec, p)?;
    let vj = v
        .iter()
        .map(|e| eval_jet(e, p, n))
        .collect::<Result<Vec<_>>>()?;
    let vv: Vec<f64> = vj.iter().map(|j| j.value()).collect();
    let g = &geo.g;
    let gi = &geo.g_inv;
    let gvv: f64 = (0..n * n).map(|k| g[k] * vv[k / n] * vv[k % n]).sum();
    let vscale = vv.iter().map(|x| x * x).sum::<f64>().max(1.0);
    if gvv.abs() > OPTICAL_TOL * vscale {
        return Err(Error::NotLightlike { value: gvv });
    }
    // nv[i][j] = ∇_i V^j
    let mut nv = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = vj[j].partial_vars(&[i]);
            for (k, v) in vv.iter().enumerate() {
                s += geo.gamma[(j * n + i) * n + k] * v;
            }
            nv[i * n + j] = s;
        }
    }
    let acc: Vec<f64> = (0..n)
        .map(|j| (0..n).map(|i| vv[i] * nv[i * n + j]).sum())
        .collect();
    let vn2: f64 = vv.iter().map(|x| x * x).sum();
    let kappa = if vn2 > 0.0 {
        acc.iter().zip(&vv).map(|(a, b)| a * b).sum::<f64>() / vn2
    } else {
        0.0
    };
    let resid = acc
        .iter()
        .zip(&vv)
        .map(|(a, b)| (a - kappa * b).powi(2))
        .sum::<f64>()
        .sqrt();
    let ascale = nv.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    if resid > OPTICAL_TOL * ascale * vscale {
        return Err(Error::NotGeodesic { value: resid });
    }
    // b[i][j] = ∇_i V_j, up[i][j] = ∇^i V^j
    let mut b = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            b[i * n + j] = (0..n).map(|k| g[j * n + k] * nv[i * n + k]).sum();
        }
    }
    let mut up = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            up[i * n + j] = (0..n).map(|a| gi[i * n + a] * nv[a * n + j]).sum();
        }
    }
    let div: f64 = (0..n).map(|i| nv[i * n + i]).sum();
    let theta = div / (n as f64 - 2.0);
    let mut sym = 0.0;
    let mut anti = 0.0;
    for i in 0..n {
        for j in 0..n {
            sym += up[i * n + j] * 0.5 * (b[i * n + j] + b[j * n + i]);
            anti += up[i * n + j] * 0.5 * (b[i * n + j] - b[j * n + i]);
        }
    }
    let shear = sym - (n as f64 - 2.0) * theta * theta;
    Ok((theta, shear, anti))
}
