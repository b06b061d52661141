//! Built-in metric measure spaces with their expected properties.

mod entries;
mod manifest;

pub use manifest::{parse_manifest, to_manifest};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jets::{eval, Expr};
use crate::ode::ClosedForm;
use crate::sampling::SamplePlan;
use crate::tensor::{MetricMeasureSpec, WarpedStructure};

/// A named real parameter with its admissible closed range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Param {
    pub name: String,
    pub value: f64,
    pub default: f64,
    pub min: f64,
    pub max: f64,
}

impl Param {
    pub fn new(name: &str, default: f64, min: f64, max: f64) -> Param {
        Param {
            name: name.to_string(),
            value: default,
            default,
            min,
            max,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub citation: String,
    pub spec: MetricMeasureSpec,
    pub params: Vec<Param>,
    /// Build-time observations, such as which reading of a component was selected.
    pub notes: Vec<String>,
    /// Lightlike vector field whose optical scalars are of interest.
    pub null_field: Option<Vec<Expr>>,
    pub warped: Option<WarpedStructure>,
    pub closed_form: Option<ClosedForm>,
}

impl CatalogEntry {
    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|p| p.name == name).map(|p| p.value)
    }

    /// Full `n×n` metric expressions, row-major.
    pub fn full_metric(&self) -> Vec<Expr> {
        let n = self.spec.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.spec.component(i, j).clone());
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntrySummary {
    pub id: String,
    pub citation: String,
    pub dim: usize,
    pub signature: &'static str,
    pub params: Vec<Param>,
    pub expected: crate::tensor::ExpectedFlags,
}

type Builder = fn(&[Param]) -> Result<Parts>;

/// What a family builder produces before bookkeeping is attached.
pub(crate) struct Parts {
    pub spec: MetricMeasureSpec,
    pub notes: Vec<String>,
    pub null_field: Option<Vec<Expr>>,
    pub warped: Option<WarpedStructure>,
    pub closed_form: Option<ClosedForm>,
}

impl Parts {
    pub fn new(spec: MetricMeasureSpec) -> Parts {
        Parts {
            spec,
            notes: vec![],
            null_field: None,
            warped: None,
            closed_form: None,
        }
    }
}

pub(crate) struct Family {
    pub id: &'static str,
    pub citation: &'static str,
    pub params: fn() -> Vec<Param>,
    pub build: Builder,
}

pub fn ids() -> Vec<&'static str> {
    entries::families().iter().map(|f| f.id).collect()
}

/// Builds an entry with parameter overrides `(name, value)`.
pub fn build(id: &str, overrides: &[(String, f64)]) -> Result<CatalogEntry> {
    let fams = entries::families();
    let fam = fams
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownEntry(id.to_string()))?;
    let mut params = (fam.params)();
    for (name, value) in overrides {
        let p = params.iter_mut().find(|p| &p.name == name).ok_or_else(|| {
            Error::ParameterOutOfRange {
                name: name.clone(),
                value: *value,
                constraint: format!("not a parameter of {id}"),
            }
        })?;
        if !(p.min..=p.max).contains(value) {
            return Err(Error::ParameterOutOfRange {
                name: name.clone(),
                value: *value,
                constraint: format!("{} <= {name} <= {}", p.min, p.max),
            });
        }
        p.value = *value;
    }
    let parts = (fam.build)(&params)?;
    check_positive_density(&parts.spec)?;
    Ok(CatalogEntry {
        id: id.to_string(),
        citation: fam.citation.to_string(),
        spec: parts.spec,
        params,
        notes: parts.notes,
        null_field: parts.null_field,
        warped: parts.warped,
        closed_form: parts.closed_form,
    })
}

pub fn build_default(id: &str) -> Result<CatalogEntry> {
    build(id, &[])
}

pub fn list() -> Vec<EntrySummary> {
    entries::families()
        .iter()
        .filter_map(|f| build_default(f.id).ok())
        .map(|e| EntrySummary {
            id: e.id,
            citation: e.citation,
            dim: e.spec.dim(),
            signature: e.spec.signature.name(),
            params: e.params,
            expected: e.spec.expected,
        })
        .collect()
}

/// `h > 0` at the box corners and a spread of interior points.
fn check_positive_density(spec: &MetricMeasureSpec) -> Result<()> {
    let mut points = SamplePlan::new(64).points(&spec.domain);
    let n = spec.dim();
    for mask in 0..(1u32 << n) {
        points.push(
            (0..n)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        spec.domain[i].1
                    } else {
                        spec.domain[i].0
                    }
                })
                .collect(),
        );
    }
    for p in points {
        let h = eval(&spec.density, &p).map_err(|e| Error::ParameterOutOfRange {
            name: "h".into(),
            value: f64::NAN,
            constraint: format!("density defined on the domain box ({e})"),
        })?;
        if h <= 0.0 {
            return Err(Error::ParameterOutOfRange {
                name: "h".into(),
                value: h,
                constraint: format!("h > 0 on the domain box, fails at {p:?}"),
            });
        }
    }
    Ok(())
}

pub(crate) fn value(params: &[Param], name: &str) -> f64 {
    params
        .iter()
        .find(|p| p.name == name)
        .map(|p| p.value)
        .unwrap_or_else(|| panic!("family declares {name}"))
}
