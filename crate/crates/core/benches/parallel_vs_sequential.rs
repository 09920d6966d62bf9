use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gsv_core::algebra::build_algebra_with;
use gsv_core::index::{coordinate_invariance_check, evaluate_batch};
use gsv_core::par::Execution;
use gsv_core::poly::parse_poly;
use gsv_core::{FieldTag, IndexOptions, MonomialOrder, PolyMatrix, Problem};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

/// `f = x^2 + y^k` with the tangent field `(x + y)(f_y, -f_x)`.
fn plane_problem(k: u32) -> Problem {
    let vars = ["x", "y"];
    let p = |s: &str| parse_poly(s, &vars).unwrap();
    let f = p(&format!("x^2 + y^{k}"));
    let x = vec![p(&format!("(x + y)*{k}*y^{}", k - 1)), p("-(x + y)*2*x")];
    let c = PolyMatrix::new(1, 1, vec![p("0")]).unwrap();
    Problem::new(vars.map(String::from).to_vec(), vec![f], x, c, FieldTag::Complex).unwrap()
}

fn algebra(c: &mut Criterion) {
    let vars = ["x", "y", "z"];
    let gens: Vec<_> = ["x^4 + y*z^2", "y^4 + x^2*z", "z^4 + x*y^2"].iter().map(|s| parse_poly(s, &vars).unwrap()).collect();
    let mut group = c.benchmark_group("build_algebra");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| build_algebra_with(black_box(&gens), MonomialOrder::default(), exec).unwrap()));
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let problems: Vec<Problem> = (3..=14).map(plane_problem).collect();
    let mut group = c.benchmark_group("evaluate_batch");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = IndexOptions { exec, ..IndexOptions::default() };
        group.bench_with_input(BenchmarkId::new(name, problems.len()), &problems, |b, ps| b.iter(|| evaluate_batch(ps, &opts)));
    }
    group.finish();
}

fn invariance(c: &mut Criterion) {
    let problem = plane_problem(6);
    let mut group = c.benchmark_group("coordinate_invariance");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| coordinate_invariance_check(black_box(&problem), 11, 8, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, algebra, batch, invariance);
criterion_main!(benches);
