use wefe::catalog::{self, build};
use wefe::classify::{ricci_type_report, JordanType};
use wefe::groebner::{alpha_equals_a_branch, generators, pipeline, target, Budget};
use wefe::{Error, SamplePlan, Tolerances};

fn budget() -> Budget {
    Budget {
        pairs: wefe::consts::GROEBNER_PAIR_BUDGET,
        terms: wefe::consts::GROEBNER_TERM_BUDGET,
    }
}

#[test]
fn every_entry_meets_its_expectations() {
    let plan = SamplePlan::new(40);
    for id in catalog::ids() {
        let e = catalog::build_default(id).unwrap();
        let r = wefe::weighted::verify(&e.spec, &plan, &Tolerances::default());
        assert!(
            r.passed(),
            "{id}: mismatches {:?} errors {:?}",
            r.mismatches,
            r.errors
        );
    }
}

#[test]
fn overrides_are_range_checked() {
    assert!(matches!(
        build("cor36-1-pos", &[("kappa".into(), 9.0)]),
        Err(Error::ParameterOutOfRange { .. })
    ));
    assert!(matches!(
        build("cor36-1-pos", &[("nope".into(), 1.0)]),
        Err(Error::ParameterOutOfRange { .. })
    ));
    assert!(matches!(build("missing", &[]), Err(Error::UnknownEntry(_))));
    // a product branch with the wrong sign of eps*kappa is refused by the builder
    assert!(build("cor36-1-pos", &[("kappa".into(), -1.0)]).is_err());
    // in range, but h turns negative inside the box
    assert!(matches!(
        build(
            "cor36-2-tau-neg",
            &[("tau".into(), -5.0), ("A".into(), -2.0)]
        ),
        Err(Error::ParameterOutOfRange { .. })
    ));
}

#[test]
fn overrides_stay_solutions() {
    let plan = SamplePlan::new(25);
    for (id, overrides) in [
        (
            "cor36-1-pos",
            vec![("kappa".to_string(), 2.5), ("phi0".to_string(), 2.0)],
        ),
        (
            "cor36-2-tau-neg",
            vec![("tau".to_string(), -5.0), ("A".to_string(), 2.0)],
        ),
        ("thm41-surfaces", vec![("kappa".to_string(), 0.3)]),
    ] {
        let e = build(id, &overrides).unwrap();
        let r = wefe::weighted::verify(&e.spec, &plan, &Tolerances::default());
        assert!(
            r.is_solution && r.passed(),
            "{id} {overrides:?}: {:?}",
            r.mismatches
        );
    }
}

#[test]
fn ex52_spectrum_is_minus_one_plus_minus_i_one() {
    let e = catalog::build_default("ex52").unwrap();
    let r = ricci_type_report(&e.spec, &e.spec.center()).unwrap();
    assert_eq!(r.jordan_type, JordanType::Ib);
    let mut ev: Vec<(f64, f64)> = r.eigenvalues.iter().map(|z| (z.re, z.im)).collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (got, want) in ev
        .iter()
        .zip([(-1.0, 0.0), (0.0, -1.0), (0.0, 1.0), (1.0, 0.0)])
    {
        assert!(
            (got.0 - want.0).abs() < 1e-9 && (got.1 - want.1).abs() < 1e-9,
            "{ev:?}"
        );
    }
}

#[test]
fn kundt_ricci_operator_is_three_step_nilpotent() {
    let e = catalog::build_default("ex66-kundt").unwrap();
    for p in SamplePlan::new(10).points(&e.spec.domain) {
        let r = ricci_type_report(&e.spec, &p).unwrap();
        assert_eq!((r.jordan_type, r.nilpotency), (JordanType::III, 3));
    }
}

#[test]
fn printed_generators_disagree_in_five_monomials() {
    let err = generators().unwrap_err();
    assert!(
        matches!(err, Error::GeneratorMismatch { ref which, count: 1, .. } if which == "P3"),
        "{err}"
    );
    let r = wefe::groebner::generator_report();
    assert_eq!(r.mismatched_monomials(), 5);
    assert_eq!(
        r.mismatches
            .iter()
            .map(|m| m.which.as_str())
            .collect::<Vec<_>>(),
        ["P3", "P6"]
    );
}

#[test]
fn reduced_basis_certifies_target_membership() {
    let pl = pipeline(&budget()).unwrap();
    // reduced Groebner bases are unique, so the size is a property of the ideal
    assert_eq!(pl.basis.len(), 14);
    assert!(pl.reduced);
    assert!(pl.s_pair_failures.is_empty());
    assert!(pl.target_in_ideal());
    assert!(!target().is_zero());
}

#[test]
fn alpha_equals_a_is_contradictory() {
    let a = alpha_equals_a_branch();
    assert!(a.derivative_identity && a.verified);
    assert_eq!(a.combination.to_string(), "b^2*H^2 + 6");
}

#[test]
fn tight_budget_is_a_resource_error() {
    let err = pipeline(&Budget {
        pairs: 3,
        terms: 1_000_000,
    })
    .unwrap_err();
    assert!(matches!(err, Error::ResourceLimit { .. }), "{err}");
}
