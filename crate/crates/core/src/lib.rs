//! Verification toolkit for the vacuum weighted Einstein field equations
//! `h ρ − Hes_h + Δh g = 0` on coordinate metrics with a positive density.
//!
//! The crate is organised bottom-up: [`jets`] supplies exact order-3 Taylor
//! expansions of closed-form expressions, [`tensor`] turns metric jets into
//! curvature, [`weighted`] builds the weighted objects and verdicts on top,
//! [`classify`] handles Ricci operator types and Kundt optical scalars,
//! [`catalog`] holds the explicit families, [`ode`] integrates the warped
//! system and [`groebner`] does the exact polynomial side.

pub mod catalog;
pub mod classify;
pub mod consts;
pub mod error;
pub mod groebner;
pub mod jets;
pub mod ode;
pub mod sampling;
pub mod tensor;
pub mod weighted;

pub use catalog::{CatalogEntry, Param};
pub use classify::{CausalCharacter, Eigenvalue, JordanType, RicciTypeReport};
pub use consts::Tolerances;
pub use error::{Error, Result};
pub use jets::{Expr, Jet3};
pub use sampling::SamplePlan;
pub use tensor::{Geometry, MetricMeasureSpec, Signature, TensorValue};
pub use weighted::WeightedReport;
