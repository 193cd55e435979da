use criterion::{black_box, criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use symop::coeffs::{Coeff, HalfLaurent};
use symop::symfunc::{macdonald_basis, operator_matrix};
use symop::vertexops::{Operator, OperatorContext};
use symop::Orientation;

/// `prod (1 - q^a t^b)` over the given exponent pairs.
fn product(factors: &[(i32, i32)]) -> Coeff {
    factors
        .iter()
        .map(|&(a, b)| Coeff::from(&HalfLaurent::one() - &HalfLaurent::qt_pow(2 * a, 2 * b)))
        .fold(Coeff::one(), |acc, f| &acc * &f)
}

fn coefficient_arithmetic(c: &mut Criterion) {
    let x = product(&[(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 0)]);
    let y = product(&[(1, 0), (0, 2), (1, 1), (3, 1), (1, 3)]);
    c.bench_function("coeff_divide_with_gcd", |b| b.iter(|| black_box(&x) / black_box(&y)));
    let z = &x / &y;
    let w = product(&[(1, 1)]).inverse().unwrap();
    c.bench_function("coeff_add_fractions", |b| b.iter(|| black_box(&z) + black_box(&w)));
}

fn dn_matrices(c: &mut Criterion) {
    let mut g = c.benchmark_group("dn_matrix");
    g.sample_size(10);
    for (n, d) in [(1, 3), (1, 4), (2, 3), (2, 4), (3, 3)] {
        g.bench_with_input(BenchmarkId::new(format!("D_{n}"), d), &d, |b, &d| {
            // fresh context each time so the memo does not hide the work
            b.iter_batched(OperatorContext::default, |ctx| operator_matrix(&ctx, &Operator::Dn(n), d).unwrap(), BatchSize::PerIteration)
        });
    }
    g.finish();
}

fn macdonald(c: &mut Criterion) {
    let mut g = c.benchmark_group("macdonald_basis");
    g.sample_size(10);
    for d in 2..=4 {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter_batched(
                OperatorContext::default,
                |ctx| macdonald_basis(&ctx, d, Orientation::Inverted).unwrap(),
                BatchSize::PerIteration,
            )
        });
    }
    g.finish();
}

criterion_group!(benches, coefficient_arithmetic, dn_matrices, macdonald);
criterion_main!(benches);
