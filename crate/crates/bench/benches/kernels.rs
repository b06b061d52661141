use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use wefe::groebner::{pipeline, Budget};
use wefe::jets::eval_jet;
use wefe::ode::{integrate, StepControl};
use wefe::{Geometry, SamplePlan, Tolerances};
use wefe_bench::entry;

fn jets(c: &mut Criterion) {
    let e = entry("ex52");
    let p = e.spec.center();
    let g = e.spec.component(1, 2).clone();
    c.bench_function("jet3 sin(2t)", |b| {
        b.iter(|| eval_jet(black_box(&g), &p, 4))
    });
}

fn geometry(c: &mut Criterion) {
    for id in ["ex52", "ex66-kundt", "lemma46-multiwarp"] {
        let e = entry(id);
        let p = e.spec.center();
        c.bench_function(&format!("geometry {id}"), |b| {
            b.iter(|| Geometry::new(black_box(&e.spec), &p))
        });
    }
}

fn verify(c: &mut Criterion) {
    let e = entry("thm62-ppwave");
    let plan = SamplePlan::new(20);
    c.bench_function("verify thm62-ppwave x20", |b| {
        b.iter(|| wefe::weighted::verify(&e.spec, &plan, &Tolerances::default()))
    });
}

fn ode(c: &mut Criterion) {
    let cf = entry("cor36-2-tau-pos").closed_form.expect("closed form");
    let init = cf.eval(0.0);
    c.bench_function("dopri5 cor36-2-tau-pos", |b| {
        b.iter(|| integrate(&init, 0.5, &StepControl::default()))
    });
}

fn groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("groebner");
    g.sample_size(10);
    let budget = Budget {
        pairs: wefe::consts::GROEBNER_PAIR_BUDGET,
        terms: wefe::consts::GROEBNER_TERM_BUDGET,
    };
    g.bench_function("pipeline", |b| b.iter(|| pipeline(&budget)));
    g.finish();
}

criterion_group!(kernels, jets, geometry, verify, ode, groebner);
criterion_main!(kernels);
