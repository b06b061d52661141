//! Weighted Einstein tensor, the curvature identities that hold on solutions,
//! the augmented Cotton tensor and the aggregated verdicts.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{ricci_type_report_of, CausalCharacter, JordanType};
use crate::consts::{Tolerances, CLASSIFY_TOL, NOT_A_SOLUTION_FACTOR, SOLUTION_RTOL};
use crate::error::{Error, Result};
use crate::sampling::SamplePlan;
use crate::tensor::{Geometry, MetricMeasureSpec, TensorValue};

/// `G^h = hρ − Hes_h + Δh g`.
pub fn gh_tensor_of(geo: &Geometry) -> TensorValue {
    let n = geo.n;
    let data = (0..n * n)
        .map(|k| geo.h * geo.ricci[k] - geo.hessian[k] + geo.laplacian * geo.g[k])
        .collect();
    TensorValue::from_data(2, n, data, &geo.point)
}

pub fn gh_tensor(spec: &MetricMeasureSpec, p: &[f64]) -> Result<TensorValue> {
    Ok(gh_tensor_of(&Geometry::new(spec, p)?))
}

/// Threshold below which `G^h` counts as zero at this point.
pub fn solution_threshold(geo: &Geometry) -> f64 {
    let rho = geo.ricci.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    SOLUTION_RTOL * (1.0 + geo.h.abs() * rho)
}

fn require_solution(geo: &Geometry) -> Result<()> {
    let residual = gh_tensor_of(geo).max_abs();
    let limit = NOT_A_SOLUTION_FACTOR * solution_threshold(geo);
    if residual > limit {
        return Err(Error::NotASolution { residual, limit });
    }
    Ok(())
}

/// `(T∧ω)(X,Y,Z) = T(X,Y)ω(Z) − T(X,Z)ω(Y)`.
pub fn wedge(t: &[f64], w: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n * n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                out[(x * n + y) * n + z] = t[x * n + y] * w[z] - t[x * n + z] * w[y];
            }
        }
    }
    out
}

/// `(ι_v T)(X,Y,Z) = T(v,X,Y,Z)` for a 4-tensor.
pub fn contract_first(t: &[f64], v: &[f64], n: usize) -> Vec<f64> {
    let n3 = n * n * n;
    let mut out = vec![0.0; n3];
    for (a, &va) in v.iter().enumerate() {
        if va != 0.0 {
            for (o, &x) in out.iter_mut().zip(&t[a * n3..(a + 1) * n3]) {
                *o += va * x;
            }
        }
    }
    out
}

/// `ι_{∇h}R − ((ρ − 2Jg)∧dh − h·dP)`; zero on solutions.
pub fn rnf_residual_of(geo: &Geometry) -> Result<TensorValue> {
    require_solution(geo)?;
    let n = geo.n;
    let j = geo.j_scalar();
    let lhs = contract_first(&geo.riemann, &geo.grad_h, n);
    let t: Vec<f64> = (0..n * n)
        .map(|k| geo.ricci[k] - 2.0 * j * geo.g[k])
        .collect();
    let w = wedge(&t, &geo.dh, n);
    let dp = geo.cotton();
    let data = (0..n * n * n)
        .map(|k| lhs[k] - (w[k] - geo.h * dp.data[k]))
        .collect();
    Ok(TensorValue::from_data(3, n, data, &geo.point))
}

pub fn rnf_residual(spec: &MetricMeasureSpec, p: &[f64]) -> Result<TensorValue> {
    rnf_residual_of(&Geometry::new(spec, p)?)
}

/// `D = h·dP + ι_{∇h}W` (the Weyl term is absent in dimension 3).
pub fn augmented_cotton_of(geo: &Geometry) -> TensorValue {
    let n = geo.n;
    let dp = geo.cotton();
    let iw = if n >= 4 {
        contract_first(&geo.weyl_unchecked().data, &geo.grad_h, n)
    } else {
        vec![0.0; n * n * n]
    };
    let data = (0..n * n * n).map(|k| geo.h * dp.data[k] + iw[k]).collect();
    TensorValue::from_data(3, n, data, &geo.point)
}

pub fn augmented_cotton(spec: &MetricMeasureSpec, p: &[f64]) -> Result<TensorValue> {
    Ok(augmented_cotton_of(&Geometry::new(spec, p)?))
}

/// `D` from Ricci data alone, valid on solutions:
/// `(n−2)D = (n−1)ρ∧dh + g∧ι_{∇h}ρ − τ g∧dh`.
pub fn augmented_cotton_from_ricci(
    g: &[f64],
    rho: &[f64],
    tau: f64,
    dh: &[f64],
    grad_h: &[f64],
    n: usize,
) -> Vec<f64> {
    let irho: Vec<f64> = (0..n)
        .map(|b| (0..n).map(|a| grad_h[a] * rho[a * n + b]).sum())
        .collect();
    let w1 = wedge(rho, dh, n);
    let w2 = wedge(g, &irho, n);
    let w3 = wedge(g, dh, n);
    let nf = n as f64;
    (0..n * n * n)
        .map(|k| ((nf - 1.0) * w1[k] + w2[k] - tau * w3[k]) / (nf - 2.0))
        .collect()
}

pub fn augmented_cotton_alt_of(geo: &Geometry) -> Result<TensorValue> {
    require_solution(geo)?;
    let data =
        augmented_cotton_from_ricci(&geo.g, &geo.ricci, geo.tau, &geo.dh, &geo.grad_h, geo.n);
    Ok(TensorValue::from_data(3, geo.n, data, &geo.point))
}

pub fn augmented_cotton_alt(spec: &MetricMeasureSpec, p: &[f64]) -> Result<TensorValue> {
    augmented_cotton_alt_of(&Geometry::new(spec, p)?)
}

/// Max `|∇τ|` over the sample plan.
pub fn check_constant_tau(spec: &MetricMeasureSpec, plan: &SamplePlan) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in plan.points(&spec.domain) {
        let geo = Geometry::new(spec, &p)?;
        worst = worst.max(geo.dtau.iter().fold(0.0, |m, v| m.max(v.abs())));
    }
    Ok(worst)
}

/// Residuals at one point; `None` for identities skipped off-solution.
#[derive(Debug, Clone, Default)]
struct PointChecks {
    gh: f64,
    gh_ratio: f64,
    tau_gradient: f64,
    tau_ratio: f64,
    rnf: Option<f64>,
    d_agreement: Option<f64>,
    laplacian_identity: Option<f64>,
    identity_ratio: Option<f64>,
    codazzi: f64,
    codazzi_ratio: f64,
    weyl: f64,
    weyl_ratio: f64,
    cotton: f64,
    cotton_ratio: f64,
    d_norm: f64,
    ricci: f64,
    ricci_ratio: f64,
    hessian: f64,
    eigen_max: f64,
    jordan: Option<JordanType>,
    nilpotency: Option<u8>,
    causal: Option<CausalCharacter>,
    classify_error: Option<String>,
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn check_point(geo: &Geometry, tol: &Tolerances) -> PointChecks {
    let n = geo.n;
    let mut c = PointChecks::default();
    let riem = max_abs(&geo.riemann);
    let nabla = max_abs(&geo.nabla_ricci);
    c.gh = gh_tensor_of(geo).max_abs();
    c.gh_ratio = c.gh / solution_threshold(geo);
    c.tau_gradient = max_abs(&geo.dtau);
    c.tau_ratio = c.tau_gradient / tol.threshold(nabla);
    c.codazzi = geo.curvature_divergence().max_abs();
    c.codazzi_ratio = c.codazzi / tol.threshold(nabla);
    let cot = geo.cotton();
    c.cotton = cot.max_abs();
    c.cotton_ratio = c.cotton / tol.threshold((n as f64 - 2.0) * 2.0 * nabla);
    c.weyl = if n >= 4 {
        geo.weyl_unchecked().max_abs()
    } else {
        0.0
    };
    c.weyl_ratio = if n >= 4 {
        c.weyl / tol.threshold(riem)
    } else {
        c.cotton_ratio
    };
    let d = augmented_cotton_of(geo);
    c.d_norm = d.max_abs();
    c.ricci = max_abs(&geo.ricci);
    c.ricci_ratio = c.ricci / tol.threshold(riem);
    c.hessian = max_abs(&geo.hessian);
    if let (Ok(rnf), Ok(alt)) = (rnf_residual_of(geo), augmented_cotton_alt_of(geo)) {
        c.rnf = Some(rnf.max_abs());
        c.d_agreement = Some(alt.max_abs_diff(&d));
        let lap = (geo.laplacian + geo.h * geo.tau / (n as f64 - 1.0)).abs();
        c.laplacian_identity = Some(lap);
        let scale = geo.h.abs() * (riem + nabla) + max_abs(&geo.dh) * riem;
        let worst = rnf.max_abs().max(alt.max_abs_diff(&d)).max(lap);
        c.identity_ratio = Some(worst / tol.threshold(scale));
    }
    match ricci_type_report_of(geo, CLASSIFY_TOL) {
        Ok(r) => {
            c.eigen_max = r
                .eigenvalues
                .iter()
                .map(|e| e.re.hypot(e.im))
                .fold(0.0, f64::max);
            c.jordan = Some(r.jordan_type);
            c.nilpotency = Some(r.nilpotency);
            c.causal = Some(r.causal);
        }
        Err(e) => c.classify_error = Some(e.to_string()),
    }
    c
}

/// Aggregated residuals and verdicts for one spec over a sample plan.
#[derive(Debug, Clone, Serialize)]
pub struct WeightedReport {
    pub name: String,
    pub points_evaluated: usize,
    pub identity_points: usize,
    pub errors: Vec<String>,
    pub gh_residual: f64,
    pub tau_gradient: f64,
    pub rnf_residual: f64,
    pub d_tensor_agreement: f64,
    pub laplacian_identity: f64,
    pub codazzi_residual: f64,
    pub weyl_norm: f64,
    pub cotton_norm: f64,
    pub d_norm: f64,
    pub ricci_norm: f64,
    pub hessian_norm: f64,
    pub max_abs_eigenvalue: f64,
    /// Worst residual-to-threshold ratio per check; a verdict holds iff `<= 1`.
    pub ratios: BTreeMap<String, f64>,
    pub is_solution: bool,
    pub constant_tau: bool,
    pub harmonic_curvature: bool,
    pub harmonic_weyl: bool,
    pub locally_conformally_flat: bool,
    pub ricci_flat: bool,
    pub ricci_type: Option<JordanType>,
    pub ricci_types: Vec<JordanType>,
    pub nilpotency: Option<u8>,
    pub causal: Vec<CausalCharacter>,
    pub mismatches: Vec<String>,
}

impl WeightedReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.errors.is_empty()
    }
}

pub fn verify(spec: &MetricMeasureSpec, plan: &SamplePlan, tol: &Tolerances) -> WeightedReport {
    let points = plan.points(&spec.domain);
    verify_points(spec, &points, tol)
}

pub fn verify_points(
    spec: &MetricMeasureSpec,
    points: &[Vec<f64>],
    tol: &Tolerances,
) -> WeightedReport {
    let results: Vec<std::result::Result<PointChecks, String>> = points
        .par_iter()
        .map(|p| {
            Geometry::new(spec, p)
                .map(|g| check_point(&g, tol))
                .map_err(|e| format!("{p:?}: {e}"))
        })
        .collect();
    let mut errors = vec![];
    let mut ok = vec![];
    for r in results {
        match r {
            Ok(c) => ok.push(c),
            Err(e) => errors.push(e),
        }
    }
    let fold = |f: &dyn Fn(&PointChecks) -> f64| ok.iter().map(f).fold(0.0, f64::max);
    let fold_opt =
        |f: &dyn Fn(&PointChecks) -> Option<f64>| ok.iter().filter_map(f).fold(0.0, f64::max);
    let mut ratios = BTreeMap::new();
    ratios.insert("gh".to_string(), fold(&|c| c.gh_ratio));
    ratios.insert("tau_gradient".to_string(), fold(&|c| c.tau_ratio));
    ratios.insert("codazzi".to_string(), fold(&|c| c.codazzi_ratio));
    ratios.insert("cotton".to_string(), fold(&|c| c.cotton_ratio));
    ratios.insert("weyl".to_string(), fold(&|c| c.weyl_ratio));
    ratios.insert("ricci".to_string(), fold(&|c| c.ricci_ratio));
    ratios.insert("identities".to_string(), fold_opt(&|c| c.identity_ratio));
    let identity_points = ok.iter().filter(|c| c.rnf.is_some()).count();
    for c in &ok {
        if let Some(e) = &c.classify_error {
            errors.push(format!("classification: {e}"));
        }
    }
    let ricci_types: Vec<JordanType> = ok
        .iter()
        .filter_map(|c| c.jordan)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let nil: BTreeSet<u8> = ok.iter().filter_map(|c| c.nilpotency).collect();
    let mut causal: Vec<CausalCharacter> = vec![];
    for c in ok.iter().filter_map(|c| c.causal) {
        if !causal.contains(&c) {
            causal.push(c);
        }
    }
    let have = !ok.is_empty();
    let is_solution = have && ratios["gh"] <= 1.0;
    let mut report = WeightedReport {
        name: spec.name.clone(),
        points_evaluated: ok.len(),
        identity_points,
        errors,
        gh_residual: fold(&|c| c.gh),
        tau_gradient: fold(&|c| c.tau_gradient),
        rnf_residual: fold_opt(&|c| c.rnf),
        d_tensor_agreement: fold_opt(&|c| c.d_agreement),
        laplacian_identity: fold_opt(&|c| c.laplacian_identity),
        codazzi_residual: fold(&|c| c.codazzi),
        weyl_norm: fold(&|c| c.weyl),
        cotton_norm: fold(&|c| c.cotton),
        d_norm: fold(&|c| c.d_norm),
        ricci_norm: fold(&|c| c.ricci),
        hessian_norm: fold(&|c| c.hessian),
        max_abs_eigenvalue: fold(&|c| c.eigen_max),
        is_solution,
        constant_tau: have && ratios["tau_gradient"] <= 1.0,
        harmonic_curvature: have && ratios["codazzi"] <= 1.0,
        harmonic_weyl: have && ratios["cotton"] <= 1.0,
        locally_conformally_flat: have && ratios["weyl"] <= 1.0,
        ricci_flat: have && ratios["ricci"] <= 1.0,
        ricci_type: if ricci_types.len() == 1 {
            Some(ricci_types[0])
        } else {
            None
        },
        ricci_types,
        nilpotency: if nil.len() == 1 {
            nil.into_iter().next()
        } else {
            None
        },
        causal,
        ratios,
        mismatches: vec![],
    };
    report.mismatches = compare_expected(spec, &report);
    report
}

fn compare_expected(spec: &MetricMeasureSpec, r: &WeightedReport) -> Vec<String> {
    let e = &spec.expected;
    let mut out = vec![];
    let mut flag = |name: &str, want: Option<bool>, got: bool| {
        if let Some(w) = want {
            if w != got {
                out.push(format!("{name}: expected {w}, computed {got}"));
            }
        }
    };
    flag("is_solution", e.is_solution, r.is_solution);
    flag(
        "harmonic_curvature",
        e.harmonic_curvature,
        r.harmonic_curvature,
    );
    flag(
        "locally_conformally_flat",
        e.locally_conformally_flat,
        r.locally_conformally_flat,
    );
    flag("ricci_flat", e.ricci_flat, r.ricci_flat);
    if e.is_solution == Some(true) && r.is_solution {
        let ratio = r.ratios["identities"];
        if ratio > 1.0 {
            out.push(format!(
                "solution identities: worst residual/threshold ratio {ratio:.3e}"
            ));
        }
        if !r.constant_tau {
            out.push("solution identities: scalar curvature not constant".to_string());
        }
    }
    if let Some(t) = e.ricci_type {
        if r.ricci_type != Some(t) {
            let got: Vec<&str> = r.ricci_types.iter().map(|t| t.tag()).collect();
            out.push(format!(
                "ricci_type: expected {t}, computed {}",
                if got.is_empty() {
                    "none".to_string()
                } else {
                    got.join("/")
                }
            ));
        }
    }
    if let Some(k) = e.nilpotency {
        if r.nilpotency != Some(k) {
            out.push(format!(
                "nilpotency: expected {k}, computed {:?}",
                r.nilpotency
            ));
        }
    }
    out
}
