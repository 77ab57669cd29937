use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use willmore_core::adjoint::{pedal, pedal_jet, verify_contact};
use willmore_core::ends::{check_closed_willmore, ChecklistOptions};
use willmore_core::examples::{example1, example1_pedal, example2_ansatz, example3, example3_ansatz};
use willmore_core::gram::{build_system, solve_system, Pin};
use willmore_core::moebius::{canonical_frame_jet, frame_at, willmore_energy};
use willmore_core::Coeff;

fn exact(c: &mut Criterion) {
    let s = example1();
    let x0 = vec![Coeff::zero(); 6];
    c.bench_function("pedal, first example", |b| b.iter(|| pedal(black_box(&s), &x0).unwrap()));
    let adj = pedal(&s, &x0).unwrap();
    c.bench_function("contact identities, first example", |b| b.iter(|| verify_contact(black_box(&adj))));
    let x = example1_pedal();
    c.bench_function("Willmore residual, first example", |b| {
        b.iter(|| frame_at(black_box(&x)).unwrap().willmore_residual().is_zero())
    });
    c.bench_function("energy grid 64, first example", |b| b.iter(|| willmore_energy(black_box(&x), 64).unwrap()));
}

fn jets(c: &mut Criterion) {
    let s = example3();
    let x0: Vec<Coeff> = [(1, 3), (-2, 7), (5, 11), (1, 13), (3, 17)].iter().map(|&(n, d)| Coeff::ratio(n, d)).collect();
    let z = Complex64::new(0.4, 0.3);
    c.bench_function("pedal frame jet, third example", |b| {
        b.iter(|| canonical_frame_jet(&pedal_jet(&s, &x0, black_box(z), 8).unwrap()).unwrap())
    });
}

fn gram(c: &mut Criterion) {
    let a2 = example2_ansatz();
    c.bench_function("Gram solve, second example", |b| {
        b.iter(|| {
            let sys = build_system(black_box(&a2)).unwrap();
            solve_system(&sys, &[Pin { j: 0, k: 4, value: Coeff::one() }]).unwrap()
        })
    });
    let a3 = example3_ansatz();
    let mut pins: Vec<Pin> = (0..=10).map(|j| Pin { j, k: 10, value: Coeff::zero() }).collect();
    pins.push(Pin { j: 0, k: 8, value: Coeff::one() });
    c.bench_function("Gram solve, third example", |b| {
        b.iter(|| {
            let sys = build_system(black_box(&a3)).unwrap();
            solve_system(&sys, &pins).unwrap()
        })
    });
}

fn checklist(c: &mut Criterion) {
    let s = example1();
    let x0 = vec![Coeff::zero(); 6];
    let mut g = c.benchmark_group("checklist");
    g.sample_size(10);
    g.bench_function("first example", |b| {
        b.iter(|| check_closed_willmore(black_box(&s), &x0, &ChecklistOptions::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, exact, jets, gram, checklist);
criterion_main!(benches);
