use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use khovanov::complex::{build_complex, BuildOptions};
use khovanov::cube::build_cube;
use khovanov::homology::{homology_table, smith_normal_form, IntMatrix};
use khovanov::jones;
use khovanov::ring::Specialization;
use khovanov::tqft::FrobeniusData;
use khovanov_bench::fixtures;
use num_bigint::BigInt;

fn bench_state_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("kauffman_bracket");
    for (name, d) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &d, |b, d| {
            b.iter(|| jones::kauffman_bracket(d))
        });
    }
    group.finish();
}

fn bench_cube(c: &mut Criterion) {
    let alg = FrobeniusData::universal();
    let mut group = c.benchmark_group("cube_with_psi_phi");
    group.sample_size(10);
    for (name, d) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &d, |b, d| {
            b.iter(|| {
                let mut cube = build_cube(d, &alg);
                cube.populate_psi().unwrap();
                cube.edge_assignment().unwrap();
                cube
            })
        });
    }
    group.finish();
}

fn bench_homology(c: &mut Criterion) {
    let alg = FrobeniusData::universal();
    let mut group = c.benchmark_group("integral_homology");
    group.sample_size(10);
    for (name, d) in fixtures() {
        let mut cube = build_cube(&d, &alg);
        cube.populate_psi().unwrap();
        cube.edge_assignment().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(&name), &cube, |b, cube| {
            b.iter(|| {
                let complex =
                    build_complex(cube, &Specialization::even(), BuildOptions::default())
                        .unwrap();
                homology_table(&complex)
            })
        });
    }
    group.finish();
}

fn bench_snf(c: &mut Criterion) {
    // A moderately dense integer matrix with known coefficient growth.
    let n = 40;
    let data: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigInt::from(((i * 7 + j * 13) % 9) as i64 - 4))
                .collect()
        })
        .collect();
    let m = IntMatrix::new(data);
    c.bench_function("smith_normal_form_40x40", |b| b.iter(|| smith_normal_form(&m)));
}

criterion_group!(benches, bench_state_sums, bench_cube, bench_homology, bench_snf);
criterion_main!(benches);
