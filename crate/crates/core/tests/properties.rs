use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use wefe::catalog;
use wefe::groebner::{divide, division_identity_holds, nabla_h, Monomial, Poly};
use wefe::jets::{eval, eval_jet, fd_oracle, Expr, Jet3, Layout};
use wefe::tensor::{
    ricci, warped_ricci, Geometry, MetricMeasureSpec, WarpedFiber, WarpedStructure,
};
use wefe::{weighted, SamplePlan, Signature, Tolerances};

fn x(i: usize) -> Expr {
    Expr::coord(i)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

// -- jets --------------------------------------------------------------------

fn jet(n: usize) -> impl Strategy<Value = Jet3> {
    prop::collection::vec(-2.0f64..2.0, Layout::get(n).len())
        .prop_map(move |c| Jet3::from_coefficients(n, 3, c))
}

fn positive_jet(n: usize) -> impl Strategy<Value = Jet3> {
    jet(n).prop_map(|j| j.add_const(5.0 - j.value()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jet_product_commutes_and_distributes(a in jet(3), b in jet(3), c in jet(3)) {
        prop_assert!(a.mul(&b).max_abs_diff(&b.mul(&a)) < 1e-12);
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-11);
    }

    #[test]
    fn jet_reciprocal_and_transcendental_identities(a in positive_jet(2)) {
        let one = Jet3::constant(2, 1.0);
        prop_assert!(a.mul(&a.recip()).max_abs_diff(&one) < 1e-12);
        prop_assert!(a.ln().exp().max_abs_diff(&a) < 1e-10);
        prop_assert!(a.sqrt().mul(&a.sqrt()).max_abs_diff(&a) < 1e-10);
        let s = a.sin();
        let c = a.cos();
        prop_assert!(s.mul(&s).add(&c.mul(&c)).max_abs_diff(&one) < 1e-12);
        prop_assert!(a.powf(1.5).max_abs_diff(&a.sqrt().powi(3)) < 1e-9);
    }
}

#[derive(Debug, Clone)]
enum Shape {
    Leaf(usize, f64),
    Add(Box<Shape>, Box<Shape>),
    Mul(Box<Shape>, Box<Shape>),
    Sin(Box<Shape>),
    Exp(Box<Shape>),
    Quot(Box<Shape>),
}

fn build(s: &Shape) -> Expr {
    match s {
        Shape::Leaf(i, c) => *c * x(*i),
        Shape::Add(a, b) => build(a) + build(b),
        Shape::Mul(a, b) => build(a) * build(b),
        Shape::Sin(a) => build(a).sin(),
        Shape::Exp(a) => (0.3 * build(a)).exp(),
        // 1/(2 + sin) stays away from poles
        Shape::Quot(a) => 1.0 / (2.0 + build(a).sin()),
    }
}

fn shape() -> impl Strategy<Value = Shape> {
    let leaf = (0usize..3, -1.5f64..1.5).prop_map(|(i, c)| Shape::Leaf(i, c));
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Shape::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Shape::Mul(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Shape::Sin(Box::new(a))),
            inner.clone().prop_map(|a| Shape::Exp(Box::new(a))),
            inner.prop_map(|a| Shape::Quot(Box::new(a))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jets_agree_with_finite_differences(s in shape(), p in prop::array::uniform3(-1.0f64..1.0)) {
        let e = build(&s);
        let j = eval_jet(&e, &p, 3).unwrap();
        prop_assert!(close(j.value(), eval(&e, &p).unwrap(), 1e-14));
        let layout = Layout::get(3);
        for idx in 1..layout.len() {
            let alpha = layout.exponents(idx);
            let fd = fd_oracle(&e, &p, &alpha).unwrap();
            let exact = j.partial(&alpha);
            prop_assert!(close(exact, fd, 1e-5), "alpha {:?}: jet {} fd {}", alpha, exact, fd);
        }
    }
}

// -- curvature on generic metrics --------------------------------------------

/// Lorentzian metric on `[-1,1]^4` kept diagonally dominant by small coefficients.
fn generic_metric(c: &[f64; 8]) -> MetricMeasureSpec {
    let diag = vec![
        -(1.0 + 0.3 * (c[0] * x(1) + x(2)).sin()),
        1.0 + 0.3 * (c[1] * x(0) * x(3)).cos().powi(2),
        1.5 + 0.2 * (c[2] * x(1) + c[3] * x(0)).sin(),
        1.0 + 0.1 * (c[4] * x(2)).exp(),
    ];
    let h = (0.3 * c[5] * x(0) + 0.2 * x(2)).exp() + 1.0;
    let mut spec = MetricMeasureSpec::new(
        "generic",
        &["t", "x", "y", "z"],
        h,
        vec![(-1.0, 1.0); 4],
        Signature::Lorentzian,
    )
    .with_diagonal(diag);
    spec.set(0, 1, 0.15 * (c[6] * x(2) + x(3)).sin());
    spec.set(2, 3, 0.1 * c[7] * x(0) * x(1));
    spec
}

fn coeffs() -> impl Strategy<Value = [f64; 8]> {
    prop::array::uniform8(-1.0f64..1.0)
}

fn point() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.9f64..0.9, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn algebraic_bianchi_and_pair_symmetry(c in coeffs(), p in point()) {
        let geo = Geometry::new(&generic_metric(&c), &p).unwrap();
        let r = geo.riemann_tensor();
        let scale = r.max_abs().max(1.0);
        for i in 0..4 { for j in 0..4 { for k in 0..4 { for l in 0..4 {
            let cyc = r.get(&[i, j, k, l]) + r.get(&[i, k, l, j]) + r.get(&[i, l, j, k]);
            prop_assert!(cyc.abs() < 1e-11 * scale);
            prop_assert!((r.get(&[i, j, k, l]) - r.get(&[k, l, i, j])).abs() < 1e-11 * scale);
            prop_assert!((r.get(&[i, j, k, l]) + r.get(&[j, i, k, l])).abs() < 1e-11 * scale);
        }}}}
    }

    #[test]
    fn weyl_is_trace_free(c in coeffs(), p in point()) {
        let geo = Geometry::new(&generic_metric(&c), &p).unwrap();
        let w = geo.weyl().unwrap();
        let scale = geo.riemann_tensor().max_abs().max(1.0);
        for j in 0..4 { for l in 0..4 {
            let tr: f64 = (0..4).flat_map(|i| (0..4).map(move |k| (i, k)))
                .map(|(i, k)| geo.g_inv[i * 4 + k] * w.get(&[i, j, k, l])).sum();
            prop_assert!(tr.abs() < 1e-10 * scale, "trace {}", tr);
        }}
    }

    #[test]
    fn contracted_bianchi(c in coeffs(), p in point()) {
        let geo = Geometry::new(&generic_metric(&c), &p).unwrap();
        let n = 4;
        let scale = geo.nabla_ricci.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for k in 0..n {
            let div: f64 = (0..n * n).map(|ij| geo.g_inv[ij] * geo.nabla_ricci[(ij / n * n + ij % n) * n + k]).sum();
            prop_assert!((div - 0.5 * geo.dtau[k]).abs() < 1e-10 * scale, "k={} div={} dtau/2={}", k, div, 0.5 * geo.dtau[k]);
        }
    }

    #[test]
    fn scalar_invariants_survive_linear_coordinate_changes(c in coeffs(), m in prop::array::uniform16(-0.2f64..0.2), p in prop::collection::vec(-0.4f64..0.4, 4)) {
        let spec = generic_metric(&c);
        let a: Vec<f64> = (0..16).map(|k| m[k] + if k % 5 == 0 { 1.0 } else { 0.0 }).collect();
        let subs: Vec<Expr> = (0..4).map(|i| (0..4).fold(Expr::zero(), |acc, j| acc + a[i * 4 + j] * x(j))).collect();
        let mut moved = MetricMeasureSpec::new("moved", &["s0", "s1", "s2", "s3"], spec.density.substitute(&subs), vec![(-1.0, 1.0); 4], Signature::Lorentzian);
        for i in 0..4 {
            for j in i..4 {
                let mut e = Expr::zero();
                for k in 0..4 {
                    for l in 0..4 {
                        let coef = a[k * 4 + i] * a[l * 4 + j];
                        if coef != 0.0 {
                            e = e + coef * spec.component(k, l).substitute(&subs);
                        }
                    }
                }
                moved.set(i, j, e);
            }
        }
        let q: Vec<f64> = (0..4).map(|i| (0..4).map(|j| a[i * 4 + j] * p[j]).sum()).collect();
        let g0 = Geometry::new(&spec, &q).unwrap();
        let g1 = Geometry::new(&moved, &p).unwrap();
        prop_assert!(close(g0.tau, g1.tau, 1e-9));
        prop_assert!(close(g0.laplacian, g1.laplacian, 1e-9));
        prop_assert!(close(g0.grad_h_norm2(), g1.grad_h_norm2(), 1e-9));
        let sq = |g: &Geometry| -> f64 {
            let op = g.ricci_operator();
            (0..16).map(|k| op[k] * op[(k % 4) * 4 + k / 4]).sum()
        };
        prop_assert!(close(sq(&g0), sq(&g1), 1e-9));
    }

    #[test]
    fn warped_ricci_matches_general_engine(a in 0.5f64..2.0, b in -0.4f64..0.4, k in -1.0f64..1.0, eps in prop::sample::select(vec![-1.0, 1.0]), t in -0.9f64..0.9) {
        let f1 = a + b * x(0).sin();
        let f2 = (0.5 * k * x(0)).exp();
        let mut spec = MetricMeasureSpec::new("warped", &["t", "x", "y", "z"], Expr::c(1.0), vec![(-1.0, 1.0); 4], Signature::Lorentzian)
            .with_diagonal(vec![Expr::c(eps), f1.clone().powi(2), f2.clone().powi(2), f2.clone().powi(2)]);
        if eps > 0.0 {
            // spacelike base: the one-dimensional fiber carries the time direction
            spec.set(1, 1, -1.0 * f1.clone().powi(2));
        }
        let ws = WarpedStructure {
            base: 0,
            epsilon: eps,
            fibers: vec![
                WarpedFiber { coords: vec![1], warp: f1, einstein: 0.0 },
                WarpedFiber { coords: vec![2, 3], warp: f2, einstein: 0.0 },
            ],
        };
        let full: Vec<Expr> = (0..16).map(|ij| spec.component(ij / 4, ij % 4).clone()).collect();
        let p = [t, 0.3, -0.2, 0.1];
        let general = ricci(&spec, &p).unwrap();
        let special = warped_ricci(&ws, &full, &p).unwrap();
        prop_assert!(general.max_abs_diff(&special) < 1e-10, "{:?} vs {:?}", general.data, special.data);
    }
}

// -- polynomials -------------------------------------------------------------

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::array::uniform5(0u32..3), -4i64..5, 1i64..4), 0..6).prop_map(
        |terms| {
            Poly::from_terms(
                terms
                    .into_iter()
                    .map(|(e, n, d)| {
                        (
                            Monomial::new(e),
                            BigRational::new(BigInt::from(n), BigInt::from(d)),
                        )
                    })
                    .collect(),
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nabla_is_a_derivation(p in poly(), q in poly()) {
        let lhs = nabla_h(&p.mul(&q));
        let rhs = nabla_h(&p).mul(&q).add(&p.mul(&nabla_h(&q)));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(nabla_h(&p.add(&q)), nabla_h(&p).add(&nabla_h(&q)));
    }

    #[test]
    fn polynomial_text_roundtrip(p in poly()) {
        prop_assert_eq!(Poly::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn division_reconstructs_the_dividend(q in poly(), f in poly(), g in poly()) {
        let basis: Vec<Poly> = [f, g].into_iter().filter(|b| !b.is_zero()).collect();
        let d = divide(&q, &basis);
        prop_assert!(division_identity_holds(&q, &basis, &d));
        for (m, _) in d.remainder.terms() {
            prop_assert!(basis.iter().all(|b| !b.leading().unwrap().0.divides(*m)));
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(), q in poly(), v in prop::array::uniform5(-1.0f64..1.0)) {
        let lhs = p.mul(&q).eval(&v);
        prop_assert!(close(lhs, p.eval(&v) * q.eval(&v), 1e-10));
    }
}

// -- determinism and manifests -----------------------------------------------

#[test]
fn verification_is_deterministic() {
    let e = catalog::build_default("ex66-kundt").unwrap();
    let plan = SamplePlan::new(40);
    let a = weighted::verify(&e.spec, &plan, &Tolerances::default());
    let b = weighted::verify(&e.spec, &plan, &Tolerances::default());
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
}

#[test]
fn seeded_plans_repeat_and_stay_inside_the_box() {
    let domain = vec![(-1.0, 2.0), (0.5, 0.75), (-3.0, -2.0)];
    let a = SamplePlan::new(50).with_seed(Some(7)).points(&domain);
    let b = SamplePlan::new(50).with_seed(Some(7)).points(&domain);
    let c = SamplePlan::new(50).with_seed(Some(8)).points(&domain);
    assert_eq!(a, b);
    assert_ne!(a, c);
    for p in a.iter().chain(&c) {
        for (v, (lo, hi)) in p.iter().zip(&domain) {
            assert!(v > lo && v < hi);
        }
    }
}

#[test]
fn every_entry_survives_a_manifest_roundtrip() {
    for id in catalog::ids() {
        let e = catalog::build_default(id).unwrap();
        let text = catalog::to_manifest(&e);
        let back =
            catalog::parse_manifest(&text).unwrap_or_else(|err| panic!("{id}: {err}\n{text}"));
        assert_eq!(catalog::to_manifest(&back), text, "{id}");
        assert_eq!(back.spec.expected, e.spec.expected, "{id}");
        for p in SamplePlan::new(5).points(&e.spec.domain) {
            for (k, (name, ex)) in e.spec.expressions().into_iter().enumerate() {
                let (_, ey) = &back.spec.expressions()[k];
                assert_eq!(eval(ex, &p).unwrap(), eval(ey, &p).unwrap(), "{id} {name}");
            }
        }
    }
}
