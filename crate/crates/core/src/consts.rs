//! Shared numeric thresholds. The CLI and the test suites read every default
//! from here.

use serde::{Deserialize, Serialize};

/// Residual threshold `atol + rtol * magnitude`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub atol: f64,
    pub rtol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            atol: ATOL,
            rtol: RTOL,
        }
    }
}

impl Tolerances {
    pub fn threshold(&self, magnitude: f64) -> f64 {
        self.atol + self.rtol * magnitude.abs()
    }
}

pub const ATOL: f64 = 1e-10;
pub const RTOL: f64 = 1e-8;

/// `G^h` counts as zero when below `SOLUTION_RTOL * (1 + |h| |ρ|)`.
pub const SOLUTION_RTOL: f64 = 1e-8;
/// Identities that only hold on solutions refuse to run past this multiple
/// of the solution threshold.
pub const NOT_A_SOLUTION_FACTOR: f64 = 10.0;

pub const DEFAULT_SAMPLES: usize = 100;
/// Fraction trimmed from each side of a domain interval before sampling.
pub const BOX_SHRINK: f64 = 0.05;

pub const SINGULAR_DET: f64 = 1e-12;
pub const INVERSE_CHECK: f64 = 1e-12;

pub const CAUSAL_DEAD_BAND: f64 = 1e-10;
pub const ISOTROPIC_GRADIENT_FLOOR: f64 = 1e-6;
pub const VANISHING_GRADIENT: f64 = 1e-10;

/// Base tolerance of the Jordan classification ladder: clustering at its
/// square root, rank decisions at its fourth root.
pub const CLASSIFY_TOL: f64 = 1e-8;
/// Lightlike and geodesic preconditions for optical scalars.
pub const OPTICAL_TOL: f64 = 1e-9;

pub const ODE_TOL: f64 = 1e-10;
pub const ODE_FLOOR: f64 = 1e-9;
pub const ODE_DEGENERATE_H: f64 = 1e-12;
pub const ODE_MIN_STEP: f64 = 1e-14;
pub const TAU_DEAD_BAND: f64 = 1e-12;

pub const GROEBNER_PAIR_BUDGET: usize = 200_000;
pub const GROEBNER_TERM_BUDGET: usize = 5_000_000;

/// Curvature sign convention used throughout:
///
/// `R(X,Y,Z,U) = g((∇_[X,Y] − [∇_X,∇_Y])Z, U)`, i.e. minus the textbook
/// `g(R̂(X,Y)Z, U)`. In coordinates `R_ijkl = −R̂^m_kij g_ml` with
/// `R̂^m_kij = ∂_iΓ^m_jk − ∂_jΓ^m_ik + Γ^m_ip Γ^p_jk − Γ^m_jp Γ^p_ik`.
/// Ricci is `ρ_bc = R̂^a_cab`, positive on round spheres, and the
/// Kulkarni-Nomizu product `(A⊘B)_ijkl = A_ik B_jl + A_jl B_ik − A_il B_jk
/// − A_jk B_il` gives `R = P⊘g` on space forms with this R.
pub const SIGN_CONVENTION: &str = "R_ijkl = -g(Rhat(d_i,d_j)d_k, d_l); rho_bc = Rhat^a_cab";
