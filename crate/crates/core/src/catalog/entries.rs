use super::{value, Family, Param, Parts};
use crate::classify::JordanType;
use crate::consts::SOLUTION_RTOL;
use crate::error::{Error, Result};
use crate::jets::Expr;
use crate::ode::{Branch, ClosedForm};
use crate::tensor::{ExpectedFlags, MetricMeasureSpec, Signature, WarpedFiber, WarpedStructure};
use crate::weighted::{gh_tensor_of, solution_threshold};

fn x(i: usize) -> Expr {
    Expr::coord(i)
}

fn c(v: f64) -> Expr {
    Expr::c(v)
}

fn out_of_range(name: &str, value: f64, constraint: &str) -> Error {
    Error::ParameterOutOfRange {
        name: name.to_string(),
        value,
        constraint: constraint.to_string(),
    }
}

fn sign_param(params: &[Param], name: &str) -> Result<f64> {
    let v = value(params, name);
    if v == 1.0 || v == -1.0 {
        Ok(v)
    } else {
        Err(out_of_range(name, v, "must be +1 or -1"))
    }
}

fn flags(
    is_solution: Option<bool>,
    harmonic: Option<bool>,
    lcf: Option<bool>,
    ricci_flat: Option<bool>,
    ricci_type: Option<JordanType>,
    nilpotency: Option<u8>,
) -> ExpectedFlags {
    ExpectedFlags {
        is_solution,
        harmonic_curvature: harmonic,
        locally_conformally_flat: lcf,
        ricci_flat,
        ricci_type,
        nilpotency,
    }
}

/// Conformal chart of a constant-curvature space: `σ^{-2} Σ s_i dy_i²` with
/// `σ = 1 + (κ/4) Σ s_i y_i²`. Returns the diagonal entries.
fn space_form(coords: &[usize], signs: &[f64], kappa: f64) -> Vec<Expr> {
    let mut quad = c(0.0);
    for (&i, &s) in coords.iter().zip(signs) {
        quad = quad + s * x(i).powi(2);
    }
    let sigma = 1.0 + (0.25 * kappa) * quad;
    signs.iter().map(|&s| s * sigma.clone().powi(-2)).collect()
}

fn ppwave_family(
    id: &str,
    coords: usize,
    profile: Expr,
    density: Expr,
    v_box: (f64, f64),
    expected: ExpectedFlags,
) -> Parts {
    let names: Vec<String> = ["u".to_string(), "v".to_string()]
        .into_iter()
        .chain((1..=coords - 2).map(|k| format!("x{k}")))
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut domain = vec![(-1.0, 1.0), v_box];
    domain.extend((2..coords).map(|_| (-1.0, 1.0)));
    let mut spec = MetricMeasureSpec::new(id, &refs, density, domain, Signature::Lorentzian);
    spec.set(0, 1, c(1.0));
    spec.set(1, 1, profile);
    for k in 2..coords {
        spec.set(k, k, c(1.0));
    }
    spec.expected = expected;
    let mut parts = Parts::new(spec);
    let mut field = vec![c(0.0); coords];
    field[0] = c(1.0);
    parts.null_field = Some(field);
    parts
}

fn flat_linear(_: &[Param]) -> Result<Parts> {
    let spec = MetricMeasureSpec::new(
        "flat-linear",
        &["t", "x", "y", "z"],
        2.0 + x(1),
        vec![(-1.0, 1.0); 4],
        Signature::Lorentzian,
    )
    .with_diagonal(vec![c(-1.0), c(1.0), c(1.0), c(1.0)]);
    let mut spec = spec;
    spec.expected = flags(
        Some(true),
        Some(true),
        Some(true),
        Some(true),
        Some(JordanType::Ia),
        Some(1),
    );
    Ok(Parts::new(spec))
}

fn planewave(params: &[Param]) -> Result<Parts> {
    let nf = value(params, "n");
    if nf.fract() != 0.0 {
        return Err(out_of_range("n", nf, "integer dimension"));
    }
    let n = nf as usize;
    let h0 = value(params, "h0");
    let v = x(1);
    let h = h0 + v.clone().sin();
    // F = (a/(n−2)) Σ x_i², a = −h''/h
    let a = v.clone().sin() / h.clone();
    let mut sq = c(0.0);
    for k in 2..n {
        sq = sq + x(k).powi(2);
    }
    let profile = (1.0 / (n as f64 - 2.0)) * a * sq;
    let expected = flags(
        Some(true),
        Some(true),
        Some(true),
        Some(false),
        Some(JordanType::II),
        Some(2),
    );
    Ok(ppwave_family(
        "thm11-planewave",
        n,
        profile,
        h,
        (0.2, 1.2),
        expected,
    ))
}

fn product_branch(params: &[Param], id: &str, want: Branch) -> Result<Parts> {
    let eps = sign_param(params, "eps")?;
    let (kappa, phi0, c1, c2) = (
        value(params, "kappa"),
        value(params, "phi0"),
        value(params, "c1"),
        value(params, "c2"),
    );
    let cf = ClosedForm::product(eps, kappa, phi0, c1, c2)?;
    if cf.branch != want {
        return Err(out_of_range(
            "kappa",
            kappa,
            if want == Branch::ProductTrig {
                "eps*kappa > 0"
            } else {
                "eps*kappa < 0"
            },
        ));
    }
    let w = (2.0 * (eps * kappa).abs()).sqrt() / phi0;
    let t = x(0);
    let h = if want == Branch::ProductTrig {
        c1 * (w * t.clone()).sin() + c2 * (w * t).cos()
    } else {
        c1 * (w * t.clone()).exp() + c2 * (-w * t).exp()
    };
    let signs = fiber_signs(eps);
    let fiber = space_form(&[1, 2, 3], &signs, kappa);
    let mut spec = MetricMeasureSpec::new(
        id,
        &["t", "y1", "y2", "y3"],
        h,
        cor36_box(0.5),
        Signature::Lorentzian,
    );
    spec.set(0, 0, c(eps));
    for (k, e) in fiber.into_iter().enumerate() {
        spec.set(k + 1, k + 1, (phi0 * phi0) * e);
    }
    spec.expected = flags(
        Some(true),
        Some(true),
        Some(true),
        Some(false),
        Some(JordanType::Ia),
        None,
    );
    let mut parts = Parts::new(spec);
    parts.warped = Some(WarpedStructure {
        base: 0,
        epsilon: eps,
        fibers: vec![WarpedFiber {
            coords: vec![1, 2, 3],
            warp: c(phi0),
            einstein: 2.0 * kappa,
        }],
    });
    parts.closed_form = Some(cf);
    Ok(parts)
}

/// Fiber signature making the total metric Lorentzian.
fn fiber_signs(eps: f64) -> Vec<f64> {
    if eps > 0.0 {
        vec![-1.0, 1.0, 1.0]
    } else {
        vec![1.0, 1.0, 1.0]
    }
}

fn cor36_box(t: f64) -> Vec<(f64, f64)> {
    vec![(-t, t), (-0.5, 0.5), (-0.5, 0.5), (-0.5, 0.5)]
}

fn warped_branch(params: &[Param], id: &str, want: Branch) -> Result<Parts> {
    let eps = sign_param(params, "eps")?;
    let tau = if want == Branch::WarpedQuadratic {
        0.0
    } else {
        value(params, "tau")
    };
    let (kappa, c1, c2, amp) = (
        value(params, "kappa"),
        value(params, "c1"),
        value(params, "c2"),
        value(params, "A"),
    );
    if amp == 0.0 {
        return Err(out_of_range("A", amp, "A != 0"));
    }
    let cf = ClosedForm::warped(eps, tau, kappa, c1, c2, amp)?;
    if cf.branch != want {
        return Err(out_of_range(
            "tau",
            tau,
            if want == Branch::WarpedTrig {
                "eps*tau > 0"
            } else {
                "eps*tau < 0"
            },
        ));
    }
    let t = x(0);
    let (f, df) = match want {
        Branch::WarpedTrig => {
            let w = (eps * tau / 3.0).sqrt();
            let (s, co) = ((w * t.clone()).sin(), (w * t).cos());
            (
                6.0 * kappa / tau + c1 * s.clone() + c2 * co.clone(),
                w * (c1 * co - c2 * s),
            )
        }
        Branch::WarpedExp => {
            let w = (-eps * tau / 3.0).sqrt();
            let (p, m) = ((w * t.clone()).exp(), (-w * t).exp());
            (
                6.0 * kappa / tau + c1 * p.clone() + c2 * m.clone(),
                w * (c1 * p - c2 * m),
            )
        }
        _ => (
            (eps * kappa) * t.clone().powi(2) + c1 * t.clone() + c2,
            (2.0 * eps * kappa) * t + c1,
        ),
    };
    let h = (0.5 * amp) * df / f.clone().sqrt();
    let span = if want == Branch::WarpedQuadratic {
        0.8
    } else {
        0.5
    };
    let domain = cor36_box(span);
    for k in 0..=40 {
        let tt = -span + 2.0 * span * k as f64 / 40.0;
        let s = cf.eval(tt);
        if !(s.phi.is_finite() && s.phi > 0.0) {
            return Err(out_of_range("c2", c2, "phi^2 > 0 on the domain box"));
        }
    }
    let fiber = space_form(&[1, 2, 3], &fiber_signs(eps), kappa);
    let mut spec = MetricMeasureSpec::new(
        id,
        &["t", "y1", "y2", "y3"],
        h,
        domain,
        Signature::Lorentzian,
    );
    spec.set(0, 0, c(eps));
    for (k, e) in fiber.into_iter().enumerate() {
        spec.set(k + 1, k + 1, f.clone() * e);
    }
    spec.expected = flags(
        Some(true),
        None,
        Some(true),
        Some(false),
        Some(JordanType::Ia),
        None,
    );
    let mut parts = Parts::new(spec);
    parts.warped = Some(WarpedStructure {
        base: 0,
        epsilon: eps,
        fibers: vec![WarpedFiber {
            coords: vec![1, 2, 3],
            warp: f.sqrt(),
            einstein: 2.0 * kappa,
        }],
    });
    if want == Branch::WarpedExp {
        parts.notes.push("the two exponentials carry independent constants c1 and c2".to_string());
    }
    parts.closed_form = Some(cf);
    Ok(parts)
}

fn cor36_1_pos(p: &[Param]) -> Result<Parts> {
    product_branch(p, "cor36-1-pos", Branch::ProductTrig)
}

fn cor36_1_neg(p: &[Param]) -> Result<Parts> {
    product_branch(p, "cor36-1-neg", Branch::ProductExp)
}

fn cor36_2_zero(p: &[Param]) -> Result<Parts> {
    warped_branch(p, "cor36-2-tau-zero", Branch::WarpedQuadratic)
}

fn cor36_2_pos(p: &[Param]) -> Result<Parts> {
    warped_branch(p, "cor36-2-tau-pos", Branch::WarpedTrig)
}

fn cor36_2_neg(p: &[Param]) -> Result<Parts> {
    warped_branch(p, "cor36-2-tau-neg", Branch::WarpedExp)
}

fn thm41_ppwave(params: &[Param]) -> Result<Parts> {
    let amp = value(params, "amp");
    let profile = amp * (x(2).powi(2) - x(3).powi(2));
    let expected = flags(
        Some(true),
        Some(true),
        Some(false),
        Some(true),
        Some(JordanType::Ia),
        Some(1),
    );
    Ok(ppwave_family(
        "thm41-ppwave",
        4,
        profile,
        x(1),
        (0.5, 1.5),
        expected,
    ))
}

fn thm41_surfaces(params: &[Param]) -> Result<Parts> {
    let kappa = value(params, "kappa");
    let n1 = space_form(&[0, 1], &[1.0, 1.0], 0.5 * kappa);
    let n2 = space_form(&[2, 3], &[-1.0, 1.0], kappa);
    let sigma1 = 1.0 + (0.125 * kappa) * (x(0).powi(2) + x(1).powi(2));
    let h = x(0) / sigma1;
    let domain = vec![(0.2, 1.0), (-0.5, 0.5), (-0.5, 0.5), (-0.5, 0.5)];
    let mut spec = MetricMeasureSpec::new(
        "thm41-surfaces",
        &["x", "y", "z", "w"],
        h,
        domain,
        Signature::Lorentzian,
    )
    .with_diagonal(n1.into_iter().chain(n2).collect());
    spec.expected = flags(
        Some(true),
        Some(true),
        Some(false),
        Some(false),
        Some(JordanType::Ia),
        None,
    );
    Ok(Parts::new(spec))
}

/// `ε₁dt² + ε₂ds² + ξ²(ε₃dx₂² + dx₃²)`, `ξ = K₁t^{2/3}`, `h = K₂t^{−1/3}`.
fn multiwarp(params: &[Param], id: &str, eps: [f64; 3]) -> Result<Parts> {
    let (k1, k2) = (value(params, "K1"), value(params, "K2"));
    let t = x(0);
    let xi = k1 * ((2.0 / 3.0) * t.clone().ln()).exp();
    let h = k2 * ((-1.0 / 3.0) * t.ln()).exp();
    let xi2 = xi.clone().powi(2);
    let domain = vec![(0.5, 1.5), (-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0)];
    let mut spec = MetricMeasureSpec::new(
        id,
        &["t", "s", "x2", "x3"],
        h,
        domain,
        Signature::Lorentzian,
    )
    .with_diagonal(vec![c(eps[0]), c(eps[1]), eps[2] * xi2.clone(), xi2]);
    spec.expected = flags(
        Some(true),
        Some(true),
        Some(false),
        Some(false),
        Some(JordanType::Ia),
        None,
    );
    let mut parts = Parts::new(spec);
    parts.warped = Some(WarpedStructure {
        base: 0,
        epsilon: eps[0],
        fibers: vec![
            WarpedFiber {
                coords: vec![1],
                warp: c(1.0),
                einstein: 0.0,
            },
            WarpedFiber {
                coords: vec![2, 3],
                warp: xi,
                einstein: 0.0,
            },
        ],
    });
    Ok(parts)
}

fn multiwarp_a(p: &[Param]) -> Result<Parts> {
    multiwarp(p, "lemma46-multiwarp", [1.0, -1.0, 1.0])
}

fn multiwarp_b(p: &[Param]) -> Result<Parts> {
    multiwarp(p, "lemma46-multiwarp-timelike-base", [-1.0, 1.0, 1.0])
}

fn ex37_3d(params: &[Param]) -> Result<Parts> {
    let eps = sign_param(params, "eps")?;
    let (k1, k2) = (value(params, "K1"), value(params, "K2"));
    let t = x(0);
    let xi = k1 * ((2.0 / 3.0) * t.clone().ln()).exp();
    let h = k2 * ((-1.0 / 3.0) * t.ln()).exp();
    let xi2 = xi.clone().powi(2);
    let s = if eps > 0.0 { -1.0 } else { 1.0 };
    let domain = vec![(0.5, 1.5), (-1.0, 1.0), (-1.0, 1.0)];
    let mut spec = MetricMeasureSpec::new(
        "ex37-3d",
        &["t", "x", "y"],
        h,
        domain,
        Signature::Lorentzian,
    )
    .with_diagonal(vec![c(eps), s * xi2.clone(), xi2]);
    spec.expected = flags(
        Some(true),
        None,
        Some(true),
        Some(false),
        Some(JordanType::Ia),
        None,
    );
    let mut parts = Parts::new(spec);
    parts.warped = Some(WarpedStructure {
        base: 0,
        epsilon: eps,
        fibers: vec![WarpedFiber {
            coords: vec![1, 2],
            warp: xi,
            einstein: 0.0,
        }],
    });
    Ok(parts)
}

fn thm62_ppwave(params: &[Param]) -> Result<Parts> {
    let amp = value(params, "amp");
    let profile = -0.5 * (x(2).powi(2) + x(3).powi(2)) + amp * (x(2).powi(2) - x(3).powi(2));
    let expected = flags(
        Some(true),
        Some(true),
        None,
        Some(false),
        Some(JordanType::II),
        Some(2),
    );
    Ok(ppwave_family(
        "thm62-ppwave",
        4,
        profile,
        x(1).exp(),
        (-1.0, 1.0),
        expected,
    ))
}

fn ex52_metric(id: &str, density: Expr) -> MetricMeasureSpec {
    let t = x(3);
    let two_t = 2.0 * t.clone();
    let domain = vec![(-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0), (-0.5, 0.5)];
    let mut spec = MetricMeasureSpec::new(
        id,
        &["x", "y", "z", "t"],
        density,
        domain,
        Signature::Lorentzian,
    );
    spec.set(0, 0, two_t.clone().exp());
    spec.set(1, 1, two_t.clone().cos());
    spec.set(1, 2, two_t.clone().sin());
    spec.set(2, 2, -two_t.cos());
    spec.set(3, 3, c(1.0));
    spec
}

fn ex52(_: &[Param]) -> Result<Parts> {
    let mut spec = ex52_metric("ex52", (-x(3)).exp());
    spec.expected = flags(
        Some(true),
        Some(false),
        None,
        Some(false),
        Some(JordanType::Ib),
        None,
    );
    Ok(Parts::new(spec))
}

fn ex66(params: &[Param]) -> Result<Parts> {
    let (cc, h0) = (value(params, "C"), value(params, "h0"));
    let (u, v, x1) = (x(0), x(1), x(2));
    let h = h0 + v.clone().sin();
    let dh = v.cos();
    let f = (1.0 / cc) * u.clone().powi(2) * h.clone().powi(4) / x1.clone().powi(2)
        - (12.0 * cc) * x1.clone().powi(2) * (x1.clone().ln() - 1.0) * dh.clone().powi(2)
            / h.clone().powi(6);
    let omega = -(3.0 * cc) * x1.clone() * dh / h.clone().powi(5) - 2.0 * u / x1;
    let transverse = cc * h.clone().powi(-4);
    let domain = vec![(-0.5, 0.5), (-1.0, 1.0), (1.0, 2.0), (-1.0, 1.0)];
    let make = |factor: f64| {
        let mut spec = MetricMeasureSpec::new(
            "ex66-kundt",
            &["u", "v", "x1", "x2"],
            h.clone(),
            domain.clone(),
            Signature::Lorentzian,
        );
        spec.set(0, 1, c(1.0));
        spec.set(1, 1, f.clone());
        spec.set(1, 2, factor * omega.clone());
        spec.set(2, 2, transverse.clone());
        spec.set(3, 3, transverse.clone());
        spec.expected = flags(
            Some(true),
            Some(true),
            Some(false),
            Some(false),
            Some(JordanType::III),
            Some(3),
        );
        spec
    };
    // The line element `dv(2du + F dv + ω dx₁)` reads as g(∂v,∂x₁) = ω/2;
    // keep that unless G^h rules it out at the box center.
    let half = make(0.5);
    let center = half.center();
    let geo = crate::tensor::Geometry::new(&half, &center)?;
    let residual = gh_tensor_of(&geo).max_abs();
    let limit = solution_threshold(&geo).max(SOLUTION_RTOL);
    let mut notes = vec![];
    let spec = if residual <= limit {
        notes.push("g(dv,dx1) = omega/2".to_string());
        half
    } else {
        notes.push(format!("g(dv,dx1) = omega/2 leaves |G^h| = {residual:.3e} at the box center; g(dv,dx1) = omega selected"));
        make(1.0)
    };
    let mut parts = Parts::new(spec);
    parts.notes = notes;
    let mut field = vec![c(0.0); 4];
    field[0] = c(1.0);
    parts.null_field = Some(field);
    Ok(parts)
}

fn ctrl_ex52(_: &[Param]) -> Result<Parts> {
    let mut spec = ex52_metric("ctrl-ex52-perturbed", (-x(3)).exp() * (0.01 * x(3)).exp());
    spec.expected = flags(
        Some(false),
        Some(false),
        None,
        Some(false),
        Some(JordanType::Ib),
        None,
    );
    Ok(Parts::new(spec))
}

fn ctrl_ppwave(_: &[Param]) -> Result<Parts> {
    let profile = x(2).powi(2) + x(3).powi(2);
    let expected = flags(
        Some(false),
        Some(true),
        Some(true),
        Some(false),
        Some(JordanType::II),
        Some(2),
    );
    Ok(ppwave_family(
        "ctrl-ppwave-nonharmonic",
        4,
        profile,
        x(1),
        (0.5, 1.5),
        expected,
    ))
}

fn no_params() -> Vec<Param> {
    vec![]
}

fn product_params_pos() -> Vec<Param> {
    vec![
        Param::new("eps", 1.0, -1.0, 1.0),
        Param::new("kappa", 1.0, -4.0, 4.0),
        Param::new("phi0", 1.0, 0.1, 10.0),
        Param::new("c1", 1.0, -10.0, 10.0),
        Param::new("c2", 1.0, -10.0, 10.0),
    ]
}

fn product_params_neg() -> Vec<Param> {
    let mut p = product_params_pos();
    p[1] = Param::new("kappa", -1.0, -4.0, 4.0);
    p[4] = Param::new("c2", 0.2, -10.0, 10.0);
    p
}

fn warped_params(tau: Option<f64>, kappa: f64, c1: f64, c2: f64) -> Vec<Param> {
    let mut p = vec![Param::new("eps", 1.0, -1.0, 1.0)];
    if let Some(t) = tau {
        p.push(Param::new("tau", t, -12.0, 12.0));
    }
    p.extend([
        Param::new("kappa", kappa, -4.0, 4.0),
        Param::new("c1", c1, -10.0, 10.0),
        Param::new("c2", c2, -10.0, 10.0),
        Param::new("A", 1.0, -10.0, 10.0),
    ]);
    p
}

pub(crate) fn families() -> Vec<Family> {
    vec![
        Family {
            id: "flat-linear",
            citation: "flat spacetime with a linear density",
            params: no_params,
            build: flat_linear,
        },
        Family {
            id: "thm11-planewave",
            citation: "locally conformally flat plane wave, F = a(v)|x|^2/(n-2) with a = -h''/h",
            params: || {
                vec![
                    Param::new("n", 4.0, 4.0, 6.0),
                    Param::new("h0", 2.0, 1.1, 10.0),
                ]
            },
            build: planewave,
        },
        Family {
            id: "cor36-1-pos",
            citation:
                "direct product with a space form fiber, trigonometric density (eps*kappa > 0)",
            params: product_params_pos,
            build: cor36_1_pos,
        },
        Family {
            id: "cor36-1-neg",
            citation: "direct product with a space form fiber, exponential density (eps*kappa < 0)",
            params: product_params_neg,
            build: cor36_1_neg,
        },
        Family {
            id: "cor36-2-tau-zero",
            citation: "warped product over a space form, h = A phi', quadratic phi^2 (tau = 0)",
            params: || warped_params(None, 1.0, 2.0, 2.0),
            build: cor36_2_zero,
        },
        Family {
            id: "cor36-2-tau-pos",
            citation:
                "warped product over a space form, h = A phi', trigonometric phi^2 (eps*tau > 0)",
            params: || warped_params(Some(3.0), 1.0, 1.0, 0.0),
            build: cor36_2_pos,
        },
        Family {
            id: "cor36-2-tau-neg",
            citation:
                "warped product over a space form, h = A phi', exponential phi^2 (eps*tau < 0)",
            params: || warped_params(Some(-3.0), -1.0, 1.0, 0.0),
            build: cor36_2_neg,
        },
        Family {
            id: "thm41-ppwave",
            citation: "Ricci-flat pp-wave with harmonic profile, h = v",
            params: || vec![Param::new("amp", 1.0, -10.0, 10.0)],
            build: thm41_ppwave,
        },
        Family {
            id: "thm41-surfaces",
            citation:
                "product of surfaces of curvature kappa/2 and kappa, Obata density on the first",
            params: || vec![Param::new("kappa", 1.0, 0.1, 2.0)],
            build: thm41_surfaces,
        },
        Family {
            id: "lemma46-multiwarp",
            citation:
                "multiply warped product I x I x_xi N, flat N, xi = K1 t^(2/3), spacelike base",
            params: || {
                vec![
                    Param::new("K1", 1.0, 0.1, 10.0),
                    Param::new("K2", 1.0, 0.1, 10.0),
                ]
            },
            build: multiwarp_a,
        },
        Family {
            id: "lemma46-multiwarp-timelike-base",
            citation:
                "multiply warped product I x I x_xi N, flat N, xi = K1 t^(2/3), timelike base",
            params: || {
                vec![
                    Param::new("K1", 1.0, 0.1, 10.0),
                    Param::new("K2", 1.0, 0.1, 10.0),
                ]
            },
            build: multiwarp_b,
        },
        Family {
            id: "ex37-3d",
            citation: "three-dimensional warped solution with tau = 0, flat fiber",
            params: || {
                vec![
                    Param::new("eps", -1.0, -1.0, 1.0),
                    Param::new("K1", 1.0, 0.1, 10.0),
                    Param::new("K2", 1.0, 0.1, 10.0),
                ]
            },
            build: ex37_3d,
        },
        Family {
            id: "thm62-ppwave",
            citation: "isotropic Type II pp-wave, Laplacian of F equal to -2h''/h, h = e^v",
            params: || vec![Param::new("amp", 1.0, -10.0, 10.0)],
            build: thm62_ppwave,
        },
        Family {
            id: "ex52",
            citation: "left-invariant Type I.b solution without harmonic curvature",
            params: no_params,
            build: ex52,
        },
        Family {
            id: "ex66-kundt",
            citation: "isotropic Kundt solution with 3-step nilpotent Ricci operator",
            params: || {
                vec![
                    Param::new("C", 1.0, 0.1, 10.0),
                    Param::new("h0", 2.0, 1.1, 10.0),
                ]
            },
            build: ex66,
        },
        Family {
            id: "ctrl-ex52-perturbed",
            citation: "control: the Type I.b metric with h scaled by exp(t/100)",
            params: no_params,
            build: ctrl_ex52,
        },
        Family {
            id: "ctrl-ppwave-nonharmonic",
            citation: "control: pp-wave with F = x1^2 + x2^2 and h = v",
            params: no_params,
            build: ctrl_ppwave,
        },
    ]
}
