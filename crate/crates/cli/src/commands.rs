use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use wefe::catalog::{self, CatalogEntry};
use wefe::classify::{optical_scalars, ricci_type_report};
use wefe::groebner::{alpha_equals_a_branch, pipeline, Budget};
use wefe::ode::{integrate, StepControl};
use wefe::{Error, SamplePlan, Tolerances};

use crate::report::{float, ErrorBlock, RunReport, Status, TOOLKIT};

fn report(command: &str) -> RunReport {
    RunReport {
        toolkit: TOOLKIT,
        command: command.to_string(),
        entries: vec![],
        status: Status::Pass,
        body: Value::Object(Map::new()),
        errors: vec![],
        timings: None,
    }
}

fn error_status(e: &Error) -> Status {
    if e.is_input_error() {
        Status::BadInput
    } else {
        Status::EvaluationError
    }
}

impl RunReport {
    fn fail(&mut self, entry: Option<&str>, e: &Error) {
        self.status = self.status.max(error_status(e));
        self.errors
            .push(ErrorBlock::new(entry, e.kind(), e.to_string()));
    }

    fn body_mut(&mut self) -> &mut Map<String, Value> {
        self.body.as_object_mut().expect("object body")
    }
}

/// Catalog entries named by `--entry` (all of them when nothing is named) plus manifest files.
fn load(
    r: &mut RunReport,
    ids: &[String],
    manifests: &[PathBuf],
    params: &[(String, f64)],
) -> Vec<CatalogEntry> {
    let mut out = vec![];
    let all: Vec<String>;
    let ids = if ids.is_empty() && manifests.is_empty() {
        all = catalog::ids().into_iter().map(str::to_string).collect();
        &all[..]
    } else {
        ids
    };
    for id in ids {
        match catalog::build(id, params) {
            Ok(e) => out.push(e),
            Err(e) => r.fail(Some(id), &e),
        }
    }
    for path in manifests {
        let name = path.display().to_string();
        match std::fs::read_to_string(path) {
            Ok(text) => match catalog::parse_manifest(&text) {
                Ok(e) => out.push(e),
                Err(e) => r.fail(Some(&name), &e),
            },
            Err(e) => {
                r.status = Status::BadInput;
                r.errors
                    .push(ErrorBlock::new(Some(&name), "io", e.to_string()));
            }
        }
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out.dedup_by(|a, b| a.id == b.id);
    out
}

fn optical_summary(e: &CatalogEntry, plan: &SamplePlan) -> Option<Result<Value, Error>> {
    let v = e.null_field.as_ref()?;
    let mut worst = [0.0f64; 3];
    for p in plan.points(&e.spec.domain) {
        match optical_scalars(&e.spec, v, &p) {
            Ok((th, sh, tw)) => {
                for (w, x) in worst.iter_mut().zip([th, sh, tw]) {
                    *w = w.max(x.abs());
                }
            }
            Err(err) => return Some(Err(err)),
        }
    }
    Some(Ok(
        json!({"max_expansion": worst[0], "max_shear": worst[1], "max_twist": worst[2]}),
    ))
}

pub fn verify(
    ids: &[String],
    manifests: &[PathBuf],
    params: &[(String, f64)],
    plan: &SamplePlan,
    tol: &Tolerances,
    timings: bool,
) -> RunReport {
    let mut r = report("verify");
    let entries = load(&mut r, ids, manifests, params);
    let results: Vec<_> = entries
        .par_iter()
        .map(|e| {
            let start = Instant::now();
            let w = wefe::weighted::verify(&e.spec, plan, tol);
            let optical = optical_summary(e, plan);
            (e, w, optical, start.elapsed().as_secs_f64() * 1e3)
        })
        .collect();
    let mut times = Map::new();
    let mut blocks = Map::new();
    for (e, w, optical, ms) in results {
        let mut status = if !w.errors.is_empty() {
            Status::EvaluationError
        } else if !w.mismatches.is_empty() {
            Status::Mismatch
        } else {
            Status::Pass
        };
        for msg in &w.errors {
            r.errors
                .push(ErrorBlock::new(Some(&e.id), "evaluation", msg.clone()));
        }
        let mut block = json!({
            "citation": e.citation,
            "dim": e.spec.dim(),
            "signature": e.spec.signature.name(),
            "params": e.params.iter().map(|p| (p.name.clone(), json!(p.value))).collect::<Map<_, _>>(),
            "expected": e.spec.expected,
            "report": w,
        });
        match optical {
            Some(Ok(v)) => block["optical"] = v,
            Some(Err(err)) => {
                status = status.max(Status::EvaluationError);
                r.errors
                    .push(ErrorBlock::new(Some(&e.id), err.kind(), err.to_string()));
            }
            None => {}
        }
        block["status"] = json!(status);
        r.status = r.status.max(status);
        r.entries.push(e.id.clone());
        times.insert(e.id.clone(), json!(ms));
        blocks.insert(e.id.clone(), block);
    }
    if timings {
        r.timings = Some(json!({ "entries_ms": times }));
    }
    let b = r.body_mut();
    b.insert("entries".into(), Value::Object(blocks));
    b.insert("samples".into(), json!(plan.count));
    b.insert("seed".into(), json!(plan.seed));
    b.insert("tolerances".into(), json!(tol));
    r
}

pub fn classify(
    ids: &[String],
    manifests: &[PathBuf],
    params: &[(String, f64)],
    point: Option<&[f64]>,
) -> RunReport {
    let mut r = report("classify");
    let entries = load(&mut r, ids, manifests, params);
    let mut blocks = Map::new();
    for e in &entries {
        let p = match point {
            Some(p) if p.len() != e.spec.dim() => {
                r.status = Status::BadInput;
                let msg = format!(
                    "point has {} coordinates, {} needs {}",
                    p.len(),
                    e.id,
                    e.spec.dim()
                );
                r.errors
                    .push(ErrorBlock::new(Some(&e.id), "bad_point", msg));
                continue;
            }
            Some(p) => p.to_vec(),
            None => e.spec.center(),
        };
        r.entries.push(e.id.clone());
        match ricci_type_report(&e.spec, &p) {
            Ok(t) => {
                let expected = e.spec.expected.ricci_type;
                let status = match expected {
                    Some(x) if x != t.jordan_type => Status::Mismatch,
                    _ => Status::Pass,
                };
                r.status = r.status.max(status);
                blocks.insert(
                    e.id.clone(),
                    json!({"classification": t, "expected": expected, "status": status}),
                );
            }
            Err(err) => {
                r.fail(Some(&e.id), &err);
                blocks.insert(e.id.clone(), json!({"status": error_status(&err)}));
            }
        }
    }
    r.body_mut().insert("entries".into(), Value::Object(blocks));
    r
}

pub fn groebner(budget: &Budget, timings: bool) -> RunReport {
    let mut r = report("groebner");
    let start = Instant::now();
    let alpha = alpha_equals_a_branch();
    if !(alpha.verified && alpha.derivative_identity) {
        r.status = Status::Mismatch;
    }
    r.body_mut().insert("alpha_equals_a".into(), json!(alpha));
    match pipeline(budget) {
        Ok(pl) => {
            if !pl.generators.mismatches.is_empty()
                || !pl.target_in_ideal()
                || !pl.s_pair_failures.is_empty()
            {
                r.status = r.status.max(Status::Mismatch);
            }
            let b = r.body_mut();
            b.insert("generators".into(), json!(pl.generators));
            b.insert(
                "mismatched_monomials".into(),
                json!(pl.generators.mismatched_monomials()),
            );
            b.insert("basis".into(), json!(pl.basis.polys));
            b.insert("basis_size".into(), json!(pl.basis.len()));
            b.insert("stats".into(), json!(pl.basis.stats));
            b.insert("reduced".into(), json!(pl.reduced));
            b.insert("s_pair_failures".into(), json!(pl.s_pair_failures));
            b.insert("target_remainder".into(), json!(pl.target_remainder));
            b.insert("target_in_ideal".into(), json!(pl.target_in_ideal()));
        }
        Err(e) => r.fail(None, &e),
    }
    if timings {
        r.timings = Some(json!({ "total_ms": start.elapsed().as_secs_f64() * 1e3 }));
    }
    r
}

pub fn ode(
    id: &str,
    params: &[(String, f64)],
    t_start: f64,
    t_end: f64,
    tol: f64,
    csv: Option<&Path>,
    timings: bool,
) -> RunReport {
    let mut r = report("ode");
    let e = match catalog::build(id, params) {
        Ok(e) => e,
        Err(err) => {
            r.fail(Some(id), &err);
            return r;
        }
    };
    r.entries.push(e.id.clone());
    let Some(cf) = e.closed_form else {
        r.status = Status::BadInput;
        r.errors.push(ErrorBlock::new(
            Some(id),
            "no_closed_form",
            format!("{id} has no warped closed form"),
        ));
        return r;
    };
    if !(tol.is_finite() && tol > 0.0) || !t_start.is_finite() || !t_end.is_finite() {
        r.status = Status::BadInput;
        r.errors.push(ErrorBlock::new(
            Some(id),
            "bad_input",
            "tolerance and interval must be finite, tol > 0",
        ));
        return r;
    }
    let start = Instant::now();
    let ctl = StepControl {
        tol,
        ..StepControl::default()
    };
    let traj = match integrate(&cf.eval(t_start), t_end, &ctl) {
        Ok(t) => t,
        Err(err) => {
            r.fail(Some(id), &err);
            return r;
        }
    };
    let mut deviation = 0.0f64;
    for p in &traj.points {
        let s = cf.eval(p.t);
        deviation = deviation
            .max((p.h - s.h).abs())
            .max((p.dh - s.dh).abs())
            .max((p.phi - s.phi).abs())
            .max((p.dphi - s.dphi).abs());
    }
    let (dg, dk) = traj.integral_drift();
    let deviation_limit = 1e3 * tol;
    let drift_limit = 1e2 * tol;
    if let Some(why) = &traj.terminated_early {
        r.status = Status::EvaluationError;
        r.errors
            .push(ErrorBlock::new(Some(id), "terminated_early", why.clone()));
    } else if !(deviation <= deviation_limit && dg.max(dk) <= drift_limit) {
        r.status = Status::Mismatch;
    }
    if let Some(path) = csv {
        let written = std::fs::File::create(path)
            .map_err(|e| e.to_string())
            .and_then(|f| traj.write_csv(f).map_err(|e| e.to_string()));
        if let Err(msg) = written {
            r.status = r.status.max(Status::BadInput);
            r.errors.push(ErrorBlock::new(Some(id), "io", msg));
        }
    }
    let last = traj.points.last().copied();
    let b = r.body_mut();
    b.insert("branch".into(), json!(cf.branch));
    b.insert("params".into(), json!(traj.params));
    b.insert("interval".into(), json!([t_start, t_end]));
    b.insert("tol".into(), json!(tol));
    b.insert("accepted".into(), json!(traj.accepted));
    b.insert("rejected".into(), json!(traj.rejected));
    b.insert("points".into(), json!(traj.points.len()));
    b.insert("final".into(), json!(last));
    b.insert("closed_form_deviation".into(), json!(deviation));
    b.insert("deviation_limit".into(), json!(deviation_limit));
    b.insert("drift".into(), json!({"gamma": dg, "kappa": dk}));
    b.insert("drift_limit".into(), json!(drift_limit));
    if timings {
        r.timings = Some(json!({ "total_ms": start.elapsed().as_secs_f64() * 1e3 }));
    }
    r
}

pub fn list() -> RunReport {
    let mut r = report("list");
    let list = catalog::list();
    r.entries = list.iter().map(|e| e.id.clone()).collect();
    let entries: BTreeMap<String, Value> =
        list.into_iter().map(|e| (e.id.clone(), json!(e))).collect();
    r.body_mut().insert("entries".into(), json!(entries));
    r
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Mismatch => "MISMATCH",
        Status::EvaluationError => "ERROR",
        Status::BadInput => "BAD INPUT",
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => float(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(
                    &if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    },
                    x,
                    out,
                );
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (k, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{k}]"), x, out);
            }
        }
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            let _ = writeln!(out, "  {prefix} = [{}]", items.join(", "));
        }
        x => {
            let _ = writeln!(out, "  {prefix} = {}", scalar(x));
        }
    }
}

fn verify_line(id: &str, b: &Value, out: &mut String) {
    let st = b["status"].as_str().unwrap_or("");
    let w = &b["report"];
    let ty = w["ricci_type"].as_str().unwrap_or("-");
    let _ = writeln!(
        out,
        "{:<10} {:<22} solution={} type={} |G^h|={} points={}",
        st.to_uppercase(),
        id,
        w["is_solution"],
        ty,
        scalar(&w["gh_residual"]),
        w["points_evaluated"]
    );
    if let Some(ms) = w["mismatches"].as_array() {
        for m in ms {
            let _ = writeln!(out, "    mismatch: {}", scalar(m));
        }
    }
    if let Some(o) = b.get("optical") {
        let _ = writeln!(
            out,
            "    optical: expansion {} shear {} twist {}",
            scalar(&o["max_expansion"]),
            scalar(&o["max_shear"]),
            scalar(&o["max_twist"])
        );
    }
}

pub fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {}: {}",
        r.toolkit,
        r.command,
        status_word(r.status)
    );
    let body = serde_json::to_value(&r.body).unwrap_or(Value::Null);
    match r.command.as_str() {
        "verify" => {
            if let Some(entries) = body["entries"].as_object() {
                for (id, b) in entries {
                    verify_line(id, b, &mut out);
                }
            }
        }
        "list" => {
            if let Some(entries) = body["entries"].as_object() {
                for (id, e) in entries {
                    let _ = writeln!(
                        out,
                        "{id:<22} n={} {:<11} {}",
                        e["dim"],
                        scalar(&e["signature"]),
                        scalar(&e["citation"])
                    );
                }
            }
        }
        "groebner" => {
            for k in [
                "basis_size",
                "mismatched_monomials",
                "target_in_ideal",
                "reduced",
                "stats",
            ] {
                flatten(k, &body[k], &mut out);
            }
            if let Some(ms) = body["generators"]["mismatches"].as_array() {
                for m in ms {
                    flatten(
                        &format!("mismatch {}", scalar(&m["which"])),
                        &m["monomials"],
                        &mut out,
                    );
                }
            }
            flatten(
                "alpha_equals_a.verified",
                &body["alpha_equals_a"]["verified"],
                &mut out,
            );
        }
        _ => flatten("", &body, &mut out),
    }
    for e in &r.errors {
        let _ = writeln!(
            out,
            "error [{}] {}: {}",
            e.kind,
            e.entry.as_deref().unwrap_or("-"),
            e.message
        );
    }
    if let Some(t) = &r.timings {
        flatten("timings", t, &mut out);
    }
    out
}
