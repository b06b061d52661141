use nalgebra::{DMatrix, SymmetricEigen};

use super::spec::{tri_index, MetricMeasureSpec};
use super::value::TensorValue;
use crate::consts::{INVERSE_CHECK, SINGULAR_DET};
use crate::error::{Error, Result};
use crate::jets::{eval_jet, Jet3};

/// Metric, inverse and component jets at one point.
#[derive(Debug, Clone)]
pub struct MetricAt {
    pub g: TensorValue,
    pub g_inv: TensorValue,
    /// Full symmetric `n×n` array of order-3 jets.
    pub jets: Vec<Jet3>,
}

impl MetricAt {
    pub fn new(spec: &MetricMeasureSpec, p: &[f64]) -> Result<MetricAt> {
        let n = spec.dim();
        assert_eq!(p.len(), n, "point dimension");
        let mut tri = Vec::with_capacity(spec.metric.len());
        for e in &spec.metric {
            tri.push(eval_jet(e, p, n)?);
        }
        let jets: Vec<Jet3> = (0..n * n)
            .map(|k| tri[tri_index(n, k / n, k % n)].clone())
            .collect();
        let gm = DMatrix::from_fn(n, n, |i, j| jets[i * n + j].value());
        let det = gm.determinant();
        if det.is_nan() || det.abs() < SINGULAR_DET {
            return Err(Error::SingularMetric { det });
        }
        let eig = SymmetricEigen::new(gm.clone());
        let negative = eig.eigenvalues.iter().filter(|&&v| v < 0.0).count();
        if negative != spec.signature.negative_count() {
            return Err(Error::SignatureMismatch {
                expected: spec.signature.name().to_string(),
                negative,
            });
        }
        let inv = gm
            .clone()
            .try_inverse()
            .ok_or(Error::SingularMetric { det })?;
        let check = (&inv * &gm - DMatrix::identity(n, n)).amax();
        if check > INVERSE_CHECK * (1.0 + gm.amax() * inv.amax()) {
            return Err(Error::SingularMetric { det });
        }
        let g = TensorValue::from_data(2, n, (0..n * n).map(|k| gm[(k / n, k % n)]).collect(), p);
        let g_inv =
            TensorValue::from_data(2, n, (0..n * n).map(|k| inv[(k / n, k % n)]).collect(), p);
        Ok(MetricAt { g, g_inv, jets })
    }
}

/// `Γ^k_ij` and its first two coordinate derivatives.
#[derive(Debug, Clone)]
pub struct Christoffel {
    /// `[k][i][j]`
    pub gamma: TensorValue,
    /// `[m][k][i][j]` = `∂_m Γ^k_ij`
    pub d_gamma: TensorValue,
    /// `[m][l][k][i][j]` = `∂_m ∂_l Γ^k_ij`
    pub dd_gamma: TensorValue,
}

/// Everything curvature-related at one point, computed once.
#[derive(Debug, Clone)]
pub struct Geometry {
    pub n: usize,
    pub point: Vec<f64>,
    pub g: Vec<f64>,
    pub g_inv: Vec<f64>,
    pub gamma_jets: Vec<Jet3>,
    pub gamma: Vec<f64>,
    /// `R_ijkl`, sign convention of [`crate::consts::SIGN_CONVENTION`].
    pub riemann: Vec<f64>,
    pub ricci: Vec<f64>,
    pub tau: f64,
    pub dtau: Vec<f64>,
    /// `[k][i][j]` = `(∇_k ρ)(i, j)`
    pub nabla_ricci: Vec<f64>,
    pub h: f64,
    pub dh: Vec<f64>,
    pub grad_h: Vec<f64>,
    pub hessian: Vec<f64>,
    pub laplacian: f64,
}

fn mat_mul(a: &[Jet3], b: &[Jet3], n: usize, order: usize) -> Vec<Jet3> {
    let dim = a[0].dim();
    let mut out = vec![Jet3::zero(dim, order); n * n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i * n + j].add_mul_assign(&a[i * n + k], &b[k * n + j]);
            }
        }
    }
    out
}

impl Geometry {
    pub fn new(spec: &MetricMeasureSpec, p: &[f64]) -> Result<Geometry> {
        let n = spec.dim();
        let m = MetricAt::new(spec, p)?;
        let gj = &m.jets;
        let a0: Vec<Jet3> = m.g_inv.data.iter().map(|&v| Jet3::constant(n, v)).collect();

        // (g0 + δ)^{-1} = (I − E + E² − E³) A0 with E = A0 δ nilpotent to degree 3
        let delta: Vec<Jet3> = gj.iter().map(|j| j.add_const(-j.value())).collect();
        let e = mat_mul(&a0, &delta, n, 3);
        let e2 = mat_mul(&e, &e, n, 3);
        let e3 = mat_mul(&e2, &e, n, 3);
        let mut series = vec![Jet3::zero(n, 3); n * n];
        for k in 0..n * n {
            let id = if k / n == k % n {
                Jet3::constant(n, 1.0)
            } else {
                Jet3::zero(n, 3)
            };
            series[k] = id.sub(&e[k]).add(&e2[k]).sub(&e3[k]);
        }
        let ginv_j = mat_mul(&series, &a0, n, 3);

        let dg: Vec<Vec<Jet3>> = (0..n)
            .map(|k| gj.iter().map(|j| j.derivative(k)).collect())
            .collect();
        // first kind Γ_{l,ij}
        let mut gamma1 = vec![Jet3::zero(n, 2); n * n * n];
        for l in 0..n {
            for i in 0..n {
                for j in i..n {
                    let v = dg[i][l * n + j]
                        .add(&dg[j][l * n + i])
                        .sub(&dg[l][i * n + j])
                        .scale(0.5);
                    gamma1[(l * n + i) * n + j] = v.clone();
                    gamma1[(l * n + j) * n + i] = v;
                }
            }
        }
        let mut gamma_jets = vec![Jet3::zero(n, 2); n * n * n];
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    let mut acc = Jet3::zero(n, 2);
                    for l in 0..n {
                        acc.add_mul_assign(&ginv_j[k * n + l], &gamma1[(l * n + i) * n + j]);
                    }
                    gamma_jets[(k * n + j) * n + i] = acc.clone();
                    gamma_jets[(k * n + i) * n + j] = acc;
                }
            }
        }
        let gidx = |k: usize, i: usize, j: usize| (k * n + i) * n + j;
        let dgamma: Vec<Vec<Jet3>> = (0..n)
            .map(|mm| gamma_jets.iter().map(|j| j.derivative(mm)).collect())
            .collect();

        // textbook R̂^m_{kij}, order 1, stored [m][k][i][j]
        let mut rhat = vec![Jet3::zero(n, 1); n * n * n * n];
        for mm in 0..n {
            for k in 0..n {
                for i in 0..n {
                    for j in (i + 1)..n {
                        let mut v = dgamma[i][gidx(mm, j, k)].sub(&dgamma[j][gidx(mm, i, k)]);
                        for q in 0..n {
                            v.add_mul_assign(
                                &gamma_jets[gidx(mm, i, q)],
                                &gamma_jets[gidx(q, j, k)],
                            );
                            v.add_mul_assign(
                                &gamma_jets[gidx(mm, j, q)].neg(),
                                &gamma_jets[gidx(q, i, k)],
                            );
                        }
                        rhat[((mm * n + k) * n + j) * n + i] = v.neg();
                        rhat[((mm * n + k) * n + i) * n + j] = v;
                    }
                }
            }
        }
        let mut ricci_j = vec![Jet3::zero(n, 1); n * n];
        for b in 0..n {
            for c in b..n {
                let mut acc = Jet3::zero(n, 1);
                for a in 0..n {
                    acc = acc.add(&rhat[((a * n + c) * n + a) * n + b]);
                }
                ricci_j[c * n + b] = acc.clone();
                ricci_j[b * n + c] = acc;
            }
        }
        let mut tau_j = Jet3::zero(n, 1);
        for k in 0..n * n {
            tau_j.add_mul_assign(&ginv_j[k], &ricci_j[k]);
        }

        let g = m.g.data.clone();
        let g_inv = m.g_inv.data.clone();
        let gamma: Vec<f64> = gamma_jets.iter().map(Jet3::value).collect();
        let mut riemann = vec![0.0; n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = 0.0;
                        for mm in 0..n {
                            s += rhat[((mm * n + k) * n + i) * n + j].value() * g[mm * n + l];
                        }
                        riemann[((i * n + j) * n + k) * n + l] = -s;
                    }
                }
            }
        }
        let ricci: Vec<f64> = ricci_j.iter().map(Jet3::value).collect();
        let tau = tau_j.value();
        let dtau = tau_j.gradient();
        let mut nabla_ricci = vec![0.0; n * n * n];
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut v = ricci_j[i * n + j].partial_vars(&[k]);
                    for q in 0..n {
                        v -= gamma[gidx(q, k, i)] * ricci[q * n + j]
                            + gamma[gidx(q, k, j)] * ricci[i * n + q];
                    }
                    nabla_ricci[(k * n + i) * n + j] = v;
                }
            }
        }

        let hj = eval_jet(&spec.density, p, n)?;
        let h = hj.value();
        let dh = hj.gradient();
        let grad_h: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| g_inv[i * n + j] * dh[j]).sum())
            .collect();
        let mut hessian = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut v = hj.partial_vars(&[i, j]);
                for k in 0..n {
                    v -= gamma[gidx(k, i, j)] * dh[k];
                }
                hessian[i * n + j] = v;
            }
        }
        let laplacian = (0..n * n).map(|k| g_inv[k] * hessian[k]).sum();

        Ok(Geometry {
            n,
            point: p.to_vec(),
            g,
            g_inv,
            gamma_jets,
            gamma,
            riemann,
            ricci,
            tau,
            dtau,
            nabla_ricci,
            h,
            dh,
            grad_h,
            hessian,
            laplacian,
        })
    }

    fn t2(&self, data: Vec<f64>) -> TensorValue {
        TensorValue::from_data(2, self.n, data, &self.point)
    }

    fn t3(&self, data: Vec<f64>) -> TensorValue {
        TensorValue::from_data(3, self.n, data, &self.point)
    }

    pub fn metric(&self) -> TensorValue {
        self.t2(self.g.clone())
    }

    pub fn christoffel(&self) -> Christoffel {
        let n = self.n;
        let mut d = vec![0.0; n.pow(4)];
        let mut dd = vec![0.0; n.pow(5)];
        for m in 0..n {
            for (c, jet) in self.gamma_jets.iter().enumerate() {
                d[m * n.pow(3) + c] = jet.partial_vars(&[m]);
                for l in 0..n {
                    dd[(m * n + l) * n.pow(3) + c] = jet.partial_vars(&[m, l]);
                }
            }
        }
        Christoffel {
            gamma: self.t3(self.gamma.clone()),
            d_gamma: TensorValue::from_data(4, n, d, &self.point),
            dd_gamma: TensorValue::from_data(5, n, dd, &self.point),
        }
    }

    /// `∇_k g_ij`, which must vanish for the Levi-Civita connection.
    pub fn metric_compatibility(&self, spec: &MetricMeasureSpec) -> Result<TensorValue> {
        let n = self.n;
        let m = MetricAt::new(spec, &self.point)?;
        let mut out = vec![0.0; n * n * n];
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut v = m.jets[i * n + j].partial_vars(&[k]);
                    for q in 0..n {
                        v -= self.gamma[(q * n + k) * n + i] * self.g[q * n + j]
                            + self.gamma[(q * n + k) * n + j] * self.g[i * n + q];
                    }
                    out[(k * n + i) * n + j] = v;
                }
            }
        }
        Ok(self.t3(out))
    }

    pub fn riemann_tensor(&self) -> TensorValue {
        TensorValue::from_data(4, self.n, self.riemann.clone(), &self.point)
    }

    pub fn ricci_tensor(&self) -> TensorValue {
        self.t2(self.ricci.clone())
    }

    pub fn hessian_tensor(&self) -> TensorValue {
        self.t2(self.hessian.clone())
    }

    pub fn nabla_ricci_tensor(&self) -> TensorValue {
        self.t3(self.nabla_ricci.clone())
    }

    /// Mixed-index Ricci operator `g^{-1} ρ` as a row-major matrix.
    pub fn ricci_operator(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..n)
                    .map(|k| self.g_inv[i * n + k] * self.ricci[k * n + j])
                    .sum();
            }
        }
        out
    }

    /// `J = τ / (2(n−1))`.
    pub fn j_scalar(&self) -> f64 {
        self.tau / (2.0 * (self.n as f64 - 1.0))
    }

    pub fn schouten(&self) -> TensorValue {
        let n = self.n;
        let j = self.j_scalar();
        let data = (0..n * n)
            .map(|k| (self.ricci[k] - j * self.g[k]) / (n as f64 - 2.0))
            .collect();
        self.t2(data)
    }

    /// `(∇_k P)(i, j)`; `∇g = 0` leaves `(∇ρ − dJ ⊗ g)/(n−2)`.
    pub fn nabla_schouten(&self) -> TensorValue {
        let n = self.n;
        let c = 1.0 / (2.0 * (n as f64 - 1.0));
        let mut out = vec![0.0; n * n * n];
        for k in 0..n {
            for ij in 0..n * n {
                out[k * n * n + ij] = (self.nabla_ricci[k * n * n + ij]
                    - c * self.dtau[k] * self.g[ij])
                    / (n as f64 - 2.0);
            }
        }
        self.t3(out)
    }

    /// `dP(X,Y,Z) = (n−2){(∇_Y P)(X,Z) − (∇_Z P)(X,Y)}`.
    pub fn cotton(&self) -> TensorValue {
        let n = self.n;
        let np = self.nabla_schouten();
        let mut out = vec![0.0; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    out[(x * n + y) * n + z] = (n as f64 - 2.0)
                        * (np.data[(y * n + x) * n + z] - np.data[(z * n + x) * n + y]);
                }
            }
        }
        self.t3(out)
    }

    pub fn curvature_divergence(&self) -> TensorValue {
        let n = self.n;
        let nr = &self.nabla_ricci;
        let mut out = vec![0.0; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    out[(x * n + y) * n + z] = nr[(y * n + x) * n + z] - nr[(z * n + x) * n + y];
                }
            }
        }
        self.t3(out)
    }

    /// `W = R − P⊘g`; `n >= 4` only.
    pub fn weyl(&self) -> Result<TensorValue> {
        if self.n < 4 {
            return Err(Error::Dimension {
                what: "weyl",
                n: self.n,
                min: 4,
            });
        }
        Ok(self.weyl_unchecked())
    }

    /// `R − P⊘g` in any dimension; identically zero for `n = 3`.
    pub fn weyl_unchecked(&self) -> TensorValue {
        let kn = kulkarni_nomizu(&self.schouten(), &self.metric());
        self.riemann_tensor().sub(&kn)
    }

    /// `g(∇h, ∇h)`.
    pub fn grad_h_norm2(&self) -> f64 {
        self.grad_h.iter().zip(&self.dh).map(|(a, b)| a * b).sum()
    }
}

/// `(A⊘B)_ijkl = A_ik B_jl + A_jl B_ik − A_il B_jk − A_jk B_il`.
pub fn kulkarni_nomizu(a: &TensorValue, b: &TensorValue) -> TensorValue {
    assert_eq!(
        (a.valence, b.valence),
        (2, 2),
        "Kulkarni-Nomizu needs two 2-tensors"
    );
    let n = a.n;
    let at = |i: usize, j: usize| a.data[i * n + j];
    let bt = |i: usize, j: usize| b.data[i * n + j];
    let mut out = TensorValue::zeros(4, n, &a.point);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    out.data[((i * n + j) * n + k) * n + l] = at(i, k) * bt(j, l)
                        + at(j, l) * bt(i, k)
                        - at(i, l) * bt(j, k)
                        - at(j, k) * bt(i, l);
                }
            }
        }
    }
    out
}
