//! Line-oriented manifest format. One directive per line, `#` starts a comment:
//!
//! ```text
//! id ex52
//! citation left-invariant Type I.b solution
//! signature lorentzian
//! coords x y z t
//! domain t -0.5 0.5          (one per coordinate)
//! param C 1 0.1 10           (name value min max)
//! metric y z (sin (mul 2 t)) (upper or lower triangle, unset entries are 0)
//! density (exp (neg t))
//! null u 1                   (components of a lightlike field)
//! expect is_solution true
//! note free text
//! ```

use super::{CatalogEntry, Param};
use crate::classify::JordanType;
use crate::error::{Error, Result};
use crate::jets::{parse_expr, to_sexpr, Expr};
use crate::tensor::{ExpectedFlags, MetricMeasureSpec, Signature};

fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

pub fn to_manifest(entry: &CatalogEntry) -> String {
    let spec = &entry.spec;
    let names = spec.coord_names();
    let n = spec.dim();
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("id {}", entry.id));
    line(format!("citation {}", entry.citation));
    line(format!("signature {}", spec.signature.name()));
    line(format!("coords {}", names.join(" ")));
    for (name, (a, b)) in names.iter().zip(&spec.domain) {
        line(format!("domain {name} {} {}", fmt_f64(*a), fmt_f64(*b)));
    }
    for p in &entry.params {
        line(format!(
            "param {} {} {} {}",
            p.name,
            fmt_f64(p.value),
            fmt_f64(p.min),
            fmt_f64(p.max)
        ));
    }
    for i in 0..n {
        for j in i..n {
            let e = spec.component(i, j);
            if !e.is_zero() {
                line(format!(
                    "metric {} {} {}",
                    names[i],
                    names[j],
                    to_sexpr(e, &names)
                ));
            }
        }
    }
    line(format!("density {}", to_sexpr(&spec.density, &names)));
    if let Some(field) = &entry.null_field {
        for (k, e) in field.iter().enumerate() {
            if !e.is_zero() {
                line(format!("null {} {}", names[k], to_sexpr(e, &names)));
            }
        }
    }
    let ex = &spec.expected;
    let bools = [
        ("is_solution", ex.is_solution),
        ("harmonic_curvature", ex.harmonic_curvature),
        ("locally_conformally_flat", ex.locally_conformally_flat),
        ("ricci_flat", ex.ricci_flat),
    ];
    for (k, v) in bools {
        if let Some(v) = v {
            line(format!("expect {k} {v}"));
        }
    }
    if let Some(t) = ex.ricci_type {
        line(format!("expect ricci_type {}", t.tag()));
    }
    if let Some(k) = ex.nilpotency {
        line(format!("expect nilpotency {k}"));
    }
    for note in &entry.notes {
        line(format!("note {note}"));
    }
    out
}

pub fn parse_manifest(text: &str) -> Result<CatalogEntry> {
    let mut id = None;
    let mut citation = String::new();
    let mut signature = None;
    let mut coords: Option<Vec<String>> = None;
    let mut domain: Vec<Option<(f64, f64)>> = vec![];
    let mut params = vec![];
    let mut metric: Vec<(usize, usize, Expr)> = vec![];
    let mut density = None;
    let mut null: Vec<(usize, Expr)> = vec![];
    let mut expected = ExpectedFlags::default();
    let mut notes = vec![];

    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let err = |msg: String| Error::Parse { line: lineno, msg };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, rest) = trimmed
            .split_once(char::is_whitespace)
            .map(|(a, b)| (a, b.trim()))
            .unwrap_or((trimmed, ""));
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| err(format!("bad number {s:?}")))
        };
        let names: Vec<&str> = coords
            .as_ref()
            .map(|c| c.iter().map(String::as_str).collect())
            .unwrap_or_default();
        let coord = |s: &str| {
            names
                .iter()
                .position(|c| *c == s)
                .ok_or_else(|| err(format!("unknown coordinate {s:?}")))
        };
        let need_coords = || {
            if coords.is_none() {
                Err(err("coords must come first".into()))
            } else {
                Ok(())
            }
        };
        match key {
            "id" => id = Some(rest.to_string()),
            "citation" => citation = rest.to_string(),
            "note" => notes.push(rest.to_string()),
            "signature" => {
                signature = Some(match rest {
                    "lorentzian" => Signature::Lorentzian,
                    "riemannian" => Signature::Riemannian,
                    _ => return Err(err(format!("unknown signature {rest:?}"))),
                })
            }
            "coords" => {
                let c: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if !(3..=6).contains(&c.len()) {
                    return Err(err(format!("dimension {} outside 3..=6", c.len())));
                }
                domain = vec![None; c.len()];
                coords = Some(c);
            }
            "domain" => {
                need_coords()?;
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() != 3 {
                    return Err(err("domain expects: coordinate lo hi".into()));
                }
                let (lo, hi) = (num(f[1])?, num(f[2])?);
                if lo >= hi {
                    return Err(err(format!("empty interval for {}", f[0])));
                }
                domain[coord(f[0])?] = Some((lo, hi));
            }
            "param" => {
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() != 4 {
                    return Err(err("param expects: name value min max".into()));
                }
                let mut p = Param::new(f[0], num(f[1])?, num(f[2])?, num(f[3])?);
                p.default = p.value;
                params.push(p);
            }
            "metric" => {
                need_coords()?;
                let mut it = rest.splitn(3, char::is_whitespace);
                let (a, b, e) = (
                    it.next().unwrap_or(""),
                    it.next().unwrap_or(""),
                    it.next().unwrap_or(""),
                );
                let expr = parse_expr(e, &names).map_err(|e| err(e.to_string()))?;
                metric.push((coord(a)?, coord(b)?, expr));
            }
            "density" => {
                need_coords()?;
                density = Some(parse_expr(rest, &names).map_err(|e| err(e.to_string()))?);
            }
            "null" => {
                need_coords()?;
                let (a, e) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err("null expects: coordinate expr".into()))?;
                null.push((
                    coord(a)?,
                    parse_expr(e.trim(), &names).map_err(|e| err(e.to_string()))?,
                ));
            }
            "expect" => {
                let (flag, v) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err("expect expects: flag value".into()))?;
                let v = v.trim();
                let boolean = || match v {
                    "true" => Ok(true),
                    "false" => Ok(false),
                    _ => Err(err(format!("expected true/false, got {v:?}"))),
                };
                match flag {
                    "is_solution" => expected.is_solution = Some(boolean()?),
                    "harmonic_curvature" => expected.harmonic_curvature = Some(boolean()?),
                    "locally_conformally_flat" => {
                        expected.locally_conformally_flat = Some(boolean()?)
                    }
                    "ricci_flat" => expected.ricci_flat = Some(boolean()?),
                    "ricci_type" => {
                        expected.ricci_type = Some(
                            JordanType::from_tag(v)
                                .ok_or_else(|| err(format!("unknown Jordan type {v:?}")))?,
                        )
                    }
                    "nilpotency" => {
                        expected.nilpotency = Some(
                            v.parse()
                                .map_err(|_| err(format!("bad nilpotency {v:?}")))?,
                        )
                    }
                    _ => return Err(err(format!("unknown flag {flag:?}"))),
                }
            }
            _ => return Err(err(format!("unknown directive {key:?}"))),
        }
    }
    let eof = |msg: &str| Error::Parse {
        line: 0,
        msg: msg.to_string(),
    };
    let id = id.ok_or_else(|| eof("missing id"))?;
    let coords = coords.ok_or_else(|| eof("missing coords"))?;
    let signature = signature.ok_or_else(|| eof("missing signature"))?;
    let density = density.ok_or_else(|| eof("missing density"))?;
    let domain: Vec<(f64, f64)> = domain
        .into_iter()
        .zip(&coords)
        .map(|(d, c)| d.ok_or_else(|| eof(&format!("missing domain for {c}"))))
        .collect::<Result<_>>()?;
    let refs: Vec<&str> = coords.iter().map(String::as_str).collect();
    let mut spec = MetricMeasureSpec::new(&id, &refs, density, domain, signature);
    for (i, j, e) in metric {
        spec.set(i, j, e);
    }
    spec.expected = expected;
    let null_field = if null.is_empty() {
        None
    } else {
        let mut f = vec![Expr::zero(); coords.len()];
        for (k, e) in null {
            f[k] = e;
        }
        Some(f)
    };
    Ok(CatalogEntry {
        id,
        citation,
        spec,
        params,
        notes,
        null_field,
        warped: None,
        closed_form: None,
    })
}
