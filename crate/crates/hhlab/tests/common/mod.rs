//! Property checks shared between the standalone property suite and the
//! acceptance criterion that re-runs it.

use hhlab::families::{build_presentation, Family, FamilyParams};
use hhlab::field::{FieldSpec, Scalar};
use hhlab::linalg::SparseMatrix;
use hhlab::quadratic::{normal_form_with, Algebra};
use hhlab::quiver::{combo_add, LinCombo};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_scalar(rng: &mut ChaCha8Rng, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::Rationals => {
            let num = field.from_i64(rng.gen_range(-20..=20));
            let den = field.from_i64(rng.gen_range(1..=9));
            num.div(&den).unwrap()
        }
        FieldSpec::PrimeField(p) => field.from_i64(rng.gen_range(0..p as i64)),
        FieldSpec::Cyclotomic(_) => {
            let z = field.generator().unwrap();
            let mut acc = field.from_i64(rng.gen_range(-5..=5));
            let mut zp = field.one();
            for _ in 0..2 {
                zp = zp.mul(&z);
                acc = acc.add(&zp.mul(&field.from_i64(rng.gen_range(-5..=5))));
            }
            acc
        }
        FieldSpec::RationalFunctions => {
            let t = field.generator().unwrap();
            let mut num = field.from_i64(rng.gen_range(-9..=9));
            num = num.add(&t.mul(&field.from_i64(rng.gen_range(-9..=9))));
            let den = t.add(&field.from_i64(rng.gen_range(1..=9)));
            num.div(&den).unwrap()
        }
    }
}

/// Field axioms on random triples: commutativity, associativity,
/// distributivity, units, and inverses.
pub fn field_axioms(trials: usize) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let fields = [
        FieldSpec::Rationals,
        FieldSpec::PrimeField(5),
        FieldSpec::PrimeField(7),
        FieldSpec::Cyclotomic(4),
        FieldSpec::RationalFunctions,
    ];
    for field in fields {
        for _ in 0..trials {
            let a = random_scalar(&mut rng, field);
            let b = random_scalar(&mut rng, field);
            let c = random_scalar(&mut rng, field);
            if a.add(&b) != b.add(&a) || a.mul(&b) != b.mul(&a) {
                return false;
            }
            if a.add(&b).add(&c) != a.add(&b.add(&c)) {
                return false;
            }
            if a.mul(&b).mul(&c) != a.mul(&b.mul(&c)) {
                return false;
            }
            if a.mul(&b.add(&c)) != a.mul(&b).add(&a.mul(&c)) {
                return false;
            }
            if a.add(&field.zero()) != a || a.mul(&field.one()) != a {
                return false;
            }
            if !a.sub(&a).is_zero() {
                return false;
            }
            if !a.is_zero() && !a.mul(&a.inv().unwrap()).is_one() {
                return false;
            }
        }
    }
    true
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, field: FieldSpec) -> SparseMatrix {
    let mut m = SparseMatrix::zero(rows, cols, field);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(0.4) {
                m.set(r, c, field.from_i64(rng.gen_range(-5..=5)));
            }
        }
    }
    m
}

/// Rank-nullity, kernel membership, and transpose-rank identities on random
/// matrices over the rationals.
pub fn rank_kernel_identities(trials: usize) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let field = FieldSpec::Rationals;
    for _ in 0..trials {
        let rows = rng.gen_range(1..=7);
        let cols = rng.gen_range(1..=7);
        let m = random_matrix(&mut rng, rows, cols, field);
        let rank = m.rank();
        let kernel = m.kernel_basis();
        if rank + kernel.len() != cols {
            return false;
        }
        if m.transpose().rank() != rank {
            return false;
        }
        for v in &kernel {
            if m.mul_vector(v).iter().any(|c| !c.is_zero()) {
                return false;
            }
        }
    }
    true
}

fn sample_algebras() -> Vec<Algebra> {
    let f = FieldSpec::Rationals;
    let mut out = Vec::new();
    let cases = [
        (Family::LambdaQ, 3, 1),
        (Family::GammaQ, 3, 1),
        (Family::LambdaMN, 2, 3),
        (Family::GammaMN, 2, 2),
    ];
    for (family, m, n) in cases {
        let count = if family.is_mn() { m * n } else { m };
        let q: Vec<Scalar> = (0..count).map(|k| f.from_i64(k as i64 + 2)).collect();
        let fp = FamilyParams::new(family, m, n, f, q).unwrap();
        out.push(Algebra::new(build_presentation(&fp).unwrap()).unwrap());
    }
    out
}

fn random_combo(rng: &mut ChaCha8Rng, alg: &Algebra, max_len: usize) -> LinCombo {
    let q = alg.quiver();
    let mut out = LinCombo::new();
    for _ in 0..rng.gen_range(1..=4) {
        let len = rng.gen_range(0..=max_len);
        let paths = q.enumerate_paths(len, None, None);
        if paths.is_empty() {
            continue;
        }
        let p = paths[rng.gen_range(0..paths.len())].clone();
        hhlab::quiver::combo_add_term(&mut out, p, &alg.field().from_i64(rng.gen_range(-4..=4)));
    }
    out
}

/// Normal forms are idempotent, linear, and independent of the reduction
/// strategy.
pub fn normal_form_properties(trials: usize) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for alg in sample_algebras() {
        for _ in 0..trials {
            let x = random_combo(&mut rng, &alg, 4);
            let y = random_combo(&mut rng, &alg, 4);
            let nx = alg.normal_form(&x);
            if alg.normal_form(&nx) != nx {
                return false;
            }
            let sum_first = alg.normal_form(&combo_add(&x, &y));
            let nf_first = combo_add(&nx, &alg.normal_form(&y));
            if sum_first != nf_first {
                return false;
            }
            let seed: u64 = rng.gen();
            let mut inner = ChaCha8Rng::seed_from_u64(seed);
            let scrambled = normal_form_with(&alg.rs, &x, |positions| {
                positions[inner.gen_range(0..positions.len())]
            });
            if scrambled != nx {
                return false;
            }
        }
    }
    true
}

/// Total dimensions by basis enumeration: 4mn for the torus algebras and
/// 6mn + 1 for their coextensions.
pub fn dimension_counts() -> bool {
    let f = FieldSpec::Rationals;
    for (m, n) in [(2usize, 2usize), (3, 2), (3, 3)] {
        for (family, expected) in [
            (Family::LambdaMN, 4 * m * n),
            (Family::GammaMN, 6 * m * n + 1),
        ] {
            let q: Vec<Scalar> = (0..m * n).map(|k| f.from_i64(k as i64 + 2)).collect();
            let fp = FamilyParams::new(family, m, n, f, q).unwrap();
            let alg = Algebra::new(build_presentation(&fp).unwrap()).unwrap();
            match alg.total_dimension(10_000).unwrap() {
                Some(total) if total == expected => {}
                _ => return false,
            }
        }
    }
    for m in [2usize, 3, 4] {
        for (family, expected) in [(Family::LambdaQ, 4 * m), (Family::GammaQ, 6 * m + 1)] {
            let q: Vec<Scalar> = (0..m).map(|k| f.from_i64(k as i64 + 2)).collect();
            let fp = FamilyParams::new(family, m, 1, f, q).unwrap();
            let alg = Algebra::new(build_presentation(&fp).unwrap()).unwrap();
            match alg.total_dimension(10_000).unwrap() {
                Some(total) if total == expected => {}
                _ => return false,
            }
        }
    }
    true
}
