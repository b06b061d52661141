//! Pointwise curvature of coordinate metrics with density.

mod geometry;
mod spec;
mod value;
mod warped;

pub use geometry::{kulkarni_nomizu, Christoffel, Geometry, MetricAt};
pub use spec::{ExpectedFlags, MetricMeasureSpec, Signature};
pub use value::TensorValue;
pub use warped::{warped_ricci, WarpedFiber, WarpedStructure};

use crate::error::Result;

pub fn metric_at(spec: &MetricMeasureSpec, p: &[f64]) -> Result<MetricAt> {
    MetricAt::new(spec, p)
}

pub fn christoffel(spec: &MetricMeasureSpec, p: &[f64]) -> Result<Christoffel> {
    Ok(Geometry::new(spec, p)?.christoffel())
}

pub fn riemann(spec: &MetricMeasureSpec, p: &[f64]) -> Result<TensorValue> {
    Ok(Geometry::new(spec, p)?.riemann_tensor())
}

pub fn ricci(spec: &MetricMeasureSpec, p: &[f64]) -> Result<TensorValue> {
    Ok(Geometry::new(spec, p)?.ricci_tensor())
}

pub fn scalar_curvature(spec: &MetricMeasureSpec, p: &[f64]) -> Result<f64> {
    Ok(Geometry::new(spec, p)?.tau)
}

pub fn hessian(spec: &MetricMeasureSpec, p: &[f64]) -> Result<TensorValue> {
    Ok(Geometry::new(spec, p)?.hessian_tensor())
}

pub fn laplacian(spec: &MetricMeasureSpec, p: &[f64]) -> Result<f64> {
    Ok(Geometry::new(spec, p)?.laplacian)
}

pub fn schouten(spec: &MetricMeasureSpec, p: &[f64]) -> Result<TensorValue> {
    Ok(Geometry::new(spec, p)?.schouten())
}

pub fn weyl(spec: &MetricMeasureSpec, p: &[f64]) -> Result<TensorValue> {
    Geometry::new(spec, p)?.weyl()
}

pub fn cov_ricci(spec: &MetricMeasureSpec, p: &[f64]) -> Result<TensorValue> {
    Ok(Geometry::new(spec, p)?.nabla_ricci_tensor())
}

pub fn cotton(spec: &MetricMeasureSpec, p: &[f64]) -> Result<TensorValue> {
    Ok(Geometry::new(spec, p)?.cotton())
}

/// `div R(X,Y,Z) = (∇_Y ρ)(X,Z) − (∇_Z ρ)(X,Y)`.
pub fn curvature_divergence(spec: &MetricMeasureSpec, p: &[f64]) -> Result<TensorValue> {
    Ok(Geometry::new(spec, p)?.curvature_divergence())
}
