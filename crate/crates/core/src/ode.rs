//! The warped-product ODE system `0 = h'φ' − hφ''`,
//! `0 = h'' + (n−1)hφ''/φ + ετh/(n−1)`, its first integrals and the
//! closed-form four-dimensional branches.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::consts::{ODE_DEGENERATE_H, ODE_FLOOR, ODE_MIN_STEP, ODE_TOL, TAU_DEAD_BAND};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeParams {
    pub n: usize,
    pub epsilon: f64,
    pub tau: f64,
    pub kappa: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeState {
    pub t: f64,
    pub h: f64,
    pub dh: f64,
    pub phi: f64,
    pub dphi: f64,
    pub params: OdeParams,
}

impl OdeState {
    fn vector(&self) -> [f64; 4] {
        [self.h, self.dh, self.phi, self.dphi]
    }

    fn with_vector(&self, t: f64, y: [f64; 4]) -> OdeState {
        OdeState {
            t,
            h: y[0],
            dh: y[1],
            phi: y[2],
            dphi: y[3],
            params: self.params,
        }
    }
}

/// `(h'', φ'')`.
pub fn rhs(s: &OdeState) -> Result<(f64, f64)> {
    if s.h < ODE_DEGENERATE_H {
        return Err(Error::DegenerateState { h: s.h });
    }
    if s.phi <= 0.0 {
        return Err(Error::DegenerateState { h: s.phi });
    }
    let n = s.params.n as f64;
    let ddphi = s.dh * s.dphi / s.h;
    let ddh = -(n - 1.0) * s.h * ddphi / s.phi - s.params.epsilon * s.params.tau * s.h / (n - 1.0);
    Ok((ddh, ddphi))
}

fn field(s: &OdeState, t: f64, y: [f64; 4]) -> Result<[f64; 4]> {
    let (ddh, ddphi) = rhs(&s.with_vector(t, y))?;
    Ok([y[1], ddh, y[3], ddphi])
}

/// `(γ, κ)` with `γ = φ^{n−1}φ'' + ετφⁿ/(n(n−1))` and
/// `εκ/(n−2) = φ'² + 2γφ^{2−n}/(n−2) + ετφ²/(n(n−1))`.
///
/// `κ` is the Einstein constant of the fiber (`ρ^N = κ g^N`), which is
/// `(n−2)` times its sectional curvature.
pub fn first_integrals(s: &OdeState) -> Result<(f64, f64)> {
    let (_, ddphi) = rhs(s)?;
    let n = s.params.n as f64;
    let et = s.params.epsilon * s.params.tau;
    let gamma = s.phi.powf(n - 1.0) * ddphi + et * s.phi.powf(n) / (n * (n - 1.0));
    let k = s.dphi * s.dphi
        + 2.0 * gamma * s.phi.powf(2.0 - n) / (n - 2.0)
        + et * s.phi * s.phi / (n * (n - 1.0));
    Ok((gamma, s.params.epsilon * (n - 2.0) * k))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub h: f64,
    pub dh: f64,
    pub phi: f64,
    pub dphi: f64,
    pub gamma: f64,
    pub kappa: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub params: OdeParams,
    pub points: Vec<TrajectoryPoint>,
    /// Set when `h` or `φ` dropped below the floor before the end of the span.
    pub terminated_early: Option<String>,
    pub accepted: usize,
    pub rejected: usize,
}

impl Trajectory {
    pub fn last_state(&self) -> OdeState {
        let p = self
            .points
            .last()
            .expect("trajectory holds the initial point");
        OdeState {
            t: p.t,
            h: p.h,
            dh: p.dh,
            phi: p.phi,
            dphi: p.dphi,
            params: self.params,
        }
    }

    /// Spread `max − min` of `(γ, κ)` along the trajectory.
    pub fn integral_drift(&self) -> (f64, f64) {
        let spread = |f: fn(&TrajectoryPoint) -> f64| {
            let (lo, hi) = self
                .points
                .iter()
                .map(f)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| {
                    (l.min(v), h.max(v))
                });
            hi - lo
        };
        (spread(|p| p.gamma), spread(|p| p.kappa))
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Parse {
            line: 0,
            msg: e.to_string(),
        };
        out.write_record(["t", "h", "dh", "phi", "dphi", "gamma", "kappa_recovered"])
            .map_err(io)?;
        for p in &self.points {
            let row =
                [p.t, p.h, p.dh, p.phi, p.dphi, p.gamma, p.kappa].map(|v| format!("{v:.15e}"));
            out.write_record(&row).map_err(io)?;
        }
        out.flush().map_err(|e| Error::Parse {
            line: 0,
            msg: e.to_string(),
        })?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct StepControl {
    pub tol: f64,
    pub initial_step: f64,
    pub max_steps: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        StepControl {
            tol: ODE_TOL,
            initial_step: 1e-3,
            max_steps: 1_000_000,
        }
    }
}

// Dormand-Prince 5(4) coefficients.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn point_of(s: &OdeState) -> Result<TrajectoryPoint> {
    let (gamma, kappa) = first_integrals(s)?;
    Ok(TrajectoryPoint {
        t: s.t,
        h: s.h,
        dh: s.dh,
        phi: s.phi,
        dphi: s.dphi,
        gamma,
        kappa,
    })
}

/// Adaptive Dormand-Prince integration from `init.t` to `t_end` (either direction).
pub fn integrate(init: &OdeState, t_end: f64, ctl: &StepControl) -> Result<Trajectory> {
    rhs(init)?;
    let mut traj = Trajectory {
        params: init.params,
        points: vec![point_of(init)?],
        terminated_early: None,
        accepted: 0,
        rejected: 0,
    };
    let dir = if t_end >= init.t { 1.0 } else { -1.0 };
    let mut t = init.t;
    let mut y = init.vector();
    let mut step = ctl.initial_step.min((t_end - t).abs()).max(ODE_MIN_STEP);
    let mut k = [[0.0; 4]; 7];
    k[0] = field(init, t, y)?;
    while dir * (t_end - t) > 0.0 {
        if traj.accepted + traj.rejected >= ctl.max_steps {
            return Err(Error::StepFailure { t, step });
        }
        if step < ODE_MIN_STEP * t.abs().max(1.0) {
            return Err(Error::StepFailure { t, step });
        }
        let last = dir * (t_end - t) <= step;
        let hs = if last { t_end - t } else { dir * step };
        let mut stage_failed = false;
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                for i in 0..4 {
                    ys[i] += hs * A[s][j] * kj[i];
                }
            }
            match field(init, t + C[s] * hs, ys) {
                Ok(v) => k[s] = v,
                Err(_) => {
                    stage_failed = true;
                    break;
                }
            }
        }
        if stage_failed {
            traj.rejected += 1;
            step *= 0.25;
            continue;
        }
        let mut y5 = y;
        let mut err = 0.0f64;
        for i in 0..4 {
            let mut d5 = 0.0;
            let mut d4 = 0.0;
            for s in 0..7 {
                d5 += B5[s] * k[s][i];
                d4 += B4[s] * k[s][i];
            }
            y5[i] += hs * d5;
            let scale = ctl.tol * y[i].abs().max(y5[i].abs()).max(1.0);
            err = err.max((hs * (d5 - d4)).abs() / scale);
        }
        if err <= 1.0 {
            t = if last { t_end } else { t + hs };
            y = y5;
            k[0] = k[6];
            traj.accepted += 1;
            let state = init.with_vector(t, y);
            traj.points.push(point_of(&state)?);
            if y[0] < ODE_FLOOR || y[2] < ODE_FLOOR {
                traj.terminated_early =
                    Some(format!("state left the admissible region at t = {t}"));
                break;
            }
        } else {
            traj.rejected += 1;
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        step = hs.abs() * factor;
    }
    Ok(traj)
}

/// Independent trajectories, integrated concurrently.
pub fn integrate_many(inits: &[(OdeState, f64)], ctl: &StepControl) -> Vec<Result<Trajectory>> {
    inits
        .par_iter()
        .map(|(s, t)| integrate(s, *t, ctl))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    ProductTrig,
    ProductExp,
    WarpedTrig,
    WarpedExp,
    WarpedQuadratic,
}

impl Branch {
    /// Branch of the product (`φ' = 0`) or warped family from the signs of `εκ` or `ετ`.
    pub fn select(product: bool, epsilon: f64, tau: f64, kappa: f64) -> Result<Branch> {
        if product {
            let ek = epsilon * kappa;
            if ek > 0.0 {
                Ok(Branch::ProductTrig)
            } else if ek < 0.0 {
                Ok(Branch::ProductExp)
            } else {
                Err(Error::ParameterOutOfRange {
                    name: "kappa".into(),
                    value: kappa,
                    constraint: "nonzero (flat otherwise)".into(),
                })
            }
        } else {
            let et = epsilon * tau;
            if et.abs() < TAU_DEAD_BAND {
                Ok(Branch::WarpedQuadratic)
            } else if et > 0.0 {
                Ok(Branch::WarpedTrig)
            } else {
                Ok(Branch::WarpedExp)
            }
        }
    }
}

/// Closed-form four-dimensional solution. `kappa` is the sectional curvature
/// of the three-dimensional fiber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedForm {
    pub branch: Branch,
    pub epsilon: f64,
    pub tau: f64,
    pub kappa: f64,
    pub c1: f64,
    pub c2: f64,
    /// `A` in `h = Aφ'`; unused on product branches.
    pub amplitude: f64,
    /// Constant `φ` on product branches; unused otherwise.
    pub phi0: f64,
}

impl ClosedForm {
    pub fn product(epsilon: f64, kappa: f64, phi0: f64, c1: f64, c2: f64) -> Result<ClosedForm> {
        let branch = Branch::select(true, epsilon, 0.0, kappa)?;
        let tau = 6.0 * kappa / (phi0 * phi0);
        Ok(ClosedForm {
            branch,
            epsilon,
            tau,
            kappa,
            c1,
            c2,
            amplitude: 0.0,
            phi0,
        })
    }

    pub fn warped(
        epsilon: f64,
        tau: f64,
        kappa: f64,
        c1: f64,
        c2: f64,
        amplitude: f64,
    ) -> Result<ClosedForm> {
        let branch = Branch::select(false, epsilon, tau, kappa)?;
        if branch == Branch::WarpedQuadratic && (c1 * c1 - 4.0 * epsilon * c2 * kappa).abs() < 1e-12
        {
            return Err(Error::ParameterOutOfRange {
                name: "c1".into(),
                value: c1,
                constraint: "c1^2 != 4 eps c2 kappa (flat otherwise)".into(),
            });
        }
        let tau = if branch == Branch::WarpedQuadratic {
            0.0
        } else {
            tau
        };
        Ok(ClosedForm {
            branch,
            epsilon,
            tau,
            kappa,
            c1,
            c2,
            amplitude,
            phi0: 0.0,
        })
    }

    pub fn params(&self) -> OdeParams {
        OdeParams {
            n: 4,
            epsilon: self.epsilon,
            tau: self.tau,
            kappa: self.kappa,
        }
    }

    /// `F = φ²` and its first three derivatives on warped branches.
    fn warp_square(&self, t: f64) -> [f64; 4] {
        let (e, tau, k, c1, c2) = (self.epsilon, self.tau, self.kappa, self.c1, self.c2);
        match self.branch {
            Branch::WarpedTrig => {
                let w = (e * tau / 3.0).sqrt();
                let (s, c) = (w * t).sin_cos();
                let base = 6.0 * k / tau;
                [
                    base + c1 * s + c2 * c,
                    w * (c1 * c - c2 * s),
                    -w * w * (c1 * s + c2 * c),
                    -w * w * w * (c1 * c - c2 * s),
                ]
            }
            Branch::WarpedExp => {
                let w = (-e * tau / 3.0).sqrt();
                let (p, m) = ((w * t).exp(), (-w * t).exp());
                let base = 6.0 * k / tau;
                [
                    base + c1 * p + c2 * m,
                    w * (c1 * p - c2 * m),
                    w * w * (c1 * p + c2 * m),
                    w * w * w * (c1 * p - c2 * m),
                ]
            }
            Branch::WarpedQuadratic => [
                e * k * t * t + c1 * t + c2,
                2.0 * e * k * t + c1,
                2.0 * e * k,
                0.0,
            ],
            _ => unreachable!("product branches have constant warp"),
        }
    }

    /// `(h, h', φ, φ')` at `t`.
    pub fn eval(&self, t: f64) -> OdeState {
        let params = self.params();
        match self.branch {
            Branch::ProductTrig | Branch::ProductExp => {
                let w = (2.0 * (self.epsilon * self.kappa).abs()).sqrt() / self.phi0;
                let (h, dh) = if self.branch == Branch::ProductTrig {
                    let (s, c) = (w * t).sin_cos();
                    (self.c1 * s + self.c2 * c, w * (self.c1 * c - self.c2 * s))
                } else {
                    let (p, m) = ((w * t).exp(), (-w * t).exp());
                    (self.c1 * p + self.c2 * m, w * (self.c1 * p - self.c2 * m))
                };
                OdeState {
                    t,
                    h,
                    dh,
                    phi: self.phi0,
                    dphi: 0.0,
                    params,
                }
            }
            _ => {
                let [f, f1, f2, _] = self.warp_square(t);
                let phi = f.sqrt();
                let dphi = f1 / (2.0 * phi);
                let ddphi = (2.0 * f * f2 - f1 * f1) / (4.0 * f * phi);
                OdeState {
                    t,
                    h: self.amplitude * dphi,
                    dh: self.amplitude * ddphi,
                    phi,
                    dphi,
                    params,
                }
            }
        }
    }

    /// `(h'', φ'')` differentiated from the closed form itself.
    pub fn second_derivatives(&self, t: f64) -> (f64, f64) {
        match self.branch {
            Branch::ProductTrig | Branch::ProductExp => {
                let s = self.eval(t);
                let w2 = 2.0 * self.epsilon * self.kappa / (self.phi0 * self.phi0);
                (-w2 * s.h, 0.0)
            }
            _ => {
                let [f, f1, f2, f3] = self.warp_square(t);
                let phi = f.sqrt();
                let ddphi = (2.0 * f * f2 - f1 * f1) / (4.0 * f * phi);
                // d/dt of (2FF'' − F'²)/(4F^{3/2})
                let num = 2.0 * f * f2 - f1 * f1;
                let dnum = 2.0 * f * f3;
                let dddphi = dnum / (4.0 * f * phi) - 1.5 * num * f1 / (4.0 * f * f * phi);
                (self.amplitude * dddphi, ddphi)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn warped_q() -> ClosedForm {
        ClosedForm::warped(1.0, 0.0, 1.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn fixed_point() {
        let s = OdeState {
            t: 0.0,
            h: 1.0,
            dh: 0.0,
            phi: 1.0,
            dphi: 0.0,
            params: OdeParams {
                n: 4,
                epsilon: 1.0,
                tau: 0.0,
                kappa: 0.0,
            },
        };
        assert_eq!(rhs(&s).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn quadratic_closed_form_satisfies_rhs() {
        let cf = warped_q();
        let s = cf.eval(1.0);
        let (ddh, ddphi) = rhs(&s).unwrap();
        let (ddh_cf, ddphi_cf) = cf.second_derivatives(1.0);
        assert!((ddh - ddh_cf).abs() < 1e-10, "{ddh} {ddh_cf}");
        assert!((ddphi - ddphi_cf).abs() < 1e-10);
    }

    #[test]
    fn two_thirds_power_law() {
        // φ = t^{2/3}, h = φ', n = 3, τ = 0
        let t: f64 = 1.0;
        let phi = t.powf(2.0 / 3.0);
        let dphi = 2.0 / 3.0 * t.powf(-1.0 / 3.0);
        let ddphi = -2.0 / 9.0 * t.powf(-4.0 / 3.0);
        let dddphi = 8.0 / 27.0 * t.powf(-7.0 / 3.0);
        let s = OdeState {
            t,
            h: dphi,
            dh: ddphi,
            phi,
            dphi,
            params: OdeParams {
                n: 3,
                epsilon: 1.0,
                tau: 0.0,
                kappa: 0.0,
            },
        };
        let (ddh, ddp) = rhs(&s).unwrap();
        assert!((ddp - ddphi).abs() < 1e-14);
        assert!((ddh - dddphi).abs() < 1e-14);
        let (gamma, kappa) = first_integrals(&s).unwrap();
        assert!((gamma - phi * phi * ddphi).abs() < 1e-14);
        assert!(kappa.abs() < 1e-14);
    }

    #[test]
    fn degenerate_density_rejected() {
        let s = OdeState {
            t: 0.0,
            h: 1e-13,
            dh: 0.0,
            phi: 1.0,
            dphi: 0.0,
            params: OdeParams {
                n: 4,
                epsilon: 1.0,
                tau: 0.0,
                kappa: 0.0,
            },
        };
        assert!(matches!(rhs(&s), Err(Error::DegenerateState { .. })));
    }

    #[test]
    fn branch_dead_band() {
        assert_eq!(
            Branch::select(false, 1.0, 1e-13, 1.0).unwrap(),
            Branch::WarpedQuadratic
        );
        assert_eq!(
            Branch::select(false, -1.0, 2.0, 1.0).unwrap(),
            Branch::WarpedExp
        );
        assert_eq!(
            Branch::select(true, -1.0, 0.0, -1.0).unwrap(),
            Branch::ProductTrig
        );
    }

    #[test]
    fn integrates_quadratic_branch_and_back() {
        let cf = warped_q();
        let ctl = StepControl::default();
        let fwd = integrate(&cf.eval(0.0), 1.0, &ctl).unwrap();
        for p in &fwd.points {
            let e = cf.eval(p.t);
            assert!((p.phi - e.phi).abs() < 1e-7 && (p.h - e.h).abs() < 1e-7);
        }
        let back = integrate(&fwd.last_state(), 0.0, &ctl).unwrap();
        let s0 = cf.eval(0.0);
        let s1 = back.last_state();
        assert!((s1.phi - s0.phi).abs() < 1e-8 && (s1.h - s0.h).abs() < 1e-8);
        assert!((fwd.points[0].kappa - 2.0).abs() < 1e-12);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let cf = warped_q();
        let traj = integrate(&cf.eval(0.0), 0.1, &StepControl::default()).unwrap();
        let mut buf = vec![];
        traj.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,h,dh,phi,dphi,gamma,kappa_recovered\n"));
        assert_eq!(text.lines().count(), traj.points.len() + 1);
    }
}
