//! Acceptance suite: nine end-to-end criteria, one pass/fail line each.

mod common;

use hhlab::center::{center_piece, match_structure};
use hhlab::families::{
    build_presentation, dual_kq_view, printed_dual, Family, FamilyParams, Shape,
};
use hhlab::field::{FieldSpec, Scalar};
use hhlab::hochschild::Hochschild;
use hhlab::quadratic::{
    build_reduction_system, confluence_check, quadratic_dual, relation_span_equal, Algebra,
};
use hhlab::resolution::Resolution;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(name: &str, ok: bool) {
    println!("criterion {name}: {}", if ok { "pass" } else { "fail" });
    assert!(ok, "criterion {name} failed");
}

fn square_torus_generic(n: usize) -> (FamilyParams, Algebra) {
    let f = FieldSpec::RationalFunctions;
    let t = f.generator().unwrap();
    let q = vec![t; n * n];
    let fp = FamilyParams::new(Family::LambdaMN, n, n, f, q).unwrap();
    let alg = Algebra::new(build_presentation(&fp).unwrap()).unwrap();
    (fp, alg)
}

fn random_q(rng: &mut ChaCha8Rng, field: FieldSpec, count: usize) -> Vec<Scalar> {
    (0..count)
        .map(|_| match field {
            FieldSpec::RationalFunctions => {
                let c = field.from_i64(rng.gen_range(1..=5));
                let t = field.generator().unwrap();
                let e: i64 = rng.gen_range(1..=3);
                c.mul(&t.pow(e).unwrap())
            }
            _ => field.from_i64(rng.gen_range(1..=9)),
        })
        .collect()
}

#[test]
fn criterion_1_cohomology_dimension_tables() {
    let mut ok = true;
    for (n, l_max) in [(3usize, 8usize), (2, 6)] {
        let (fp, alg) = square_torus_generic(n);
        let res = Resolution::new(&fp, &alg).unwrap();
        let hh = Hochschild::new(&res);
        for l in 0..=l_max {
            let expected = match l {
                0 | 2 => 1,
                1 => 2,
                _ => 0,
            };
            ok = ok && hh.hh_dimension(l) == expected;
        }
    }
    verdict("1 (cohomology dimension tables)", ok);
}

#[test]
fn criterion_2_cup_products() {
    let (fp, alg) = square_torus_generic(3);
    let res = Resolution::new(&fp, &alg).unwrap();
    let hh = Hochschild::new(&res);
    let fa = hh.one_cocycle_a();
    let fb = hh.one_cocycle_b();
    let uv = hh.cup_one_one(&fa, &fb).unwrap();
    let vu = hh.cup_one_one(&fb, &fa).unwrap();
    let uu = hh.cup_one_one(&fa, &fa).unwrap();
    let vv = hh.cup_one_one(&fb, &fb).unwrap();
    let mut ok = !hh.is_coboundary(2, &uv).unwrap();
    let anti: Vec<Scalar> = uv.iter().zip(&vu).map(|(a, b)| a.add(b)).collect();
    ok = ok && hh.is_coboundary(2, &anti).unwrap();
    ok = ok && hh.is_coboundary(2, &uu).unwrap();
    ok = ok && hh.is_coboundary(2, &vv).unwrap();
    let (psi0, psi1) = hh.printed_lift();
    ok = ok && hh.lift_is_valid(&fb, &psi0, &psi1).unwrap();
    let fixture = hh.compose_with_lift(&fa, &psi1).unwrap();
    ok = ok && hh.classes_equal(2, &uv, &fixture).unwrap();
    verdict("2 (cup products)", ok);
}

#[test]
fn criterion_3_resolution_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut ok = true;
    for (m, n) in [(2usize, 2usize), (3, 3)] {
        for field in [FieldSpec::Rationals, FieldSpec::RationalFunctions] {
            let q = random_q(&mut rng, field, m * n);
            let fp = FamilyParams::new(Family::LambdaMN, m, n, field, q).unwrap();
            let alg = Algebra::new(build_presentation(&fp).unwrap()).unwrap();
            let res = Resolution::new(&fp, &alg).unwrap();
            for l in 1..=6 {
                ok = ok && res.d_squared_zero(l);
                ok = ok
                    && res.labels(l).into_iter().all(|g| {
                        res.right_recursion_check(l, g.p as i64, g.i as i64, g.j as i64)
                    });
                ok = ok && res.minimality_check(l);
            }
            for l in 2..=5 {
                ok = ok && res.span_matches_oracle(l, 200_000).unwrap();
            }
            for l in 0..=3 {
                ok = ok && res.exactness_check(l).unwrap();
            }
        }
    }
    verdict("3 (resolution suite)", ok);
}

#[test]
fn criterion_4_cochain_dimension_formula() {
    let mut ok = true;
    for n in [2usize, 3, 4] {
        let (fp, alg) = square_torus_generic(n);
        let res = Resolution::new(&fp, &alg).unwrap();
        let hh = Hochschild::new(&res);
        for l in 0..=3 * n {
            // the three congruence branches overlap when n = 2, so sum
            // every branch that applies
            let mut expected = 0;
            if l % n == 0 {
                expected += (l / n + 1) * n * n;
            }
            if l >= 1 && (l - 1) % n == 0 {
                expected += 2 * ((l - 1) / n + 1) * n * n;
            }
            if l >= 2 && (l - 2) % n == 0 {
                expected += ((l - 2) / n + 1) * n * n;
            }
            ok = ok && hh.cochain_basis(l).len() == expected;
        }
    }
    let (fp, alg) = square_torus_generic(3);
    let res = Resolution::new(&fp, &alg).unwrap();
    let hh = Hochschild::new(&res);
    ok = ok && hh.delta_matrix(2).rank() == 8;
    ok = ok && hh.delta_matrix(5).rank() == 18;
    verdict("4 (cochain dimension formula)", ok);
}

#[test]
fn criterion_5_degenerate_parameter_centers() {
    let f = FieldSpec::RationalFunctions;
    let t = f.generator().unwrap();
    let one = f.one();
    let mut ok = true;
    let cycle = FamilyParams::new(Family::GammaQ, 2, 1, f, vec![t.clone(), one.clone()]).unwrap();
    let torus = FamilyParams::new(
        Family::GammaMN,
        2,
        2,
        f,
        vec![t, one.clone(), one.clone(), one],
    )
    .unwrap();
    for fp in [cycle, torus] {
        let alg = Algebra::new(dual_kq_view(&fp).unwrap()).unwrap();
        for l in 1..=12 {
            ok = ok && center_piece(&alg, l).unwrap().dimension() == 0;
        }
    }
    verdict("5 (degenerate parameter centers)", ok);
}

#[test]
fn criterion_6_cycle_coextension_instances() {
    let mut ok = true;

    // (a) m = 2, all ones: cone of height 2, eps = -1, lengths (2,2,2)
    let f = FieldSpec::Rationals;
    let fp = FamilyParams::new(Family::GammaQ, 2, 1, f, vec![f.one(); 2]).unwrap();
    let alg = Algebra::new(dual_kq_view(&fp).unwrap()).unwrap();
    let mr = match_structure(&fp, &alg, 12).unwrap();
    ok = ok && mr.consistent;
    ok = ok && mr.model.shape == Shape::TruncatedCone(2);
    ok = ok && mr.model.epsilon == Some(f.from_i64(-1));
    ok = ok && (mr.model.len_x, mr.model.len_y, mr.model.len_w) == (2, 2, 2);

    // (b) m = 3, all ones: odd-order case, |w| = 4, |x| = |y| = 6
    let fp = FamilyParams::new(Family::GammaQ, 3, 1, f, vec![f.one(); 3]).unwrap();
    let alg = Algebra::new(dual_kq_view(&fp).unwrap()).unwrap();
    let mr = match_structure(&fp, &alg, 12).unwrap();
    ok = ok && mr.consistent;
    ok = ok && mr.model.shape == Shape::TruncatedCone(3);
    ok = ok && (mr.model.len_x, mr.model.len_y, mr.model.len_w) == (6, 6, 4);

    // (c) m = 3, q = (-1,1,1): order 2 case, relation w^(2m) = eps x y, |w| = 2
    let fp = FamilyParams::new(
        Family::GammaQ,
        3,
        1,
        f,
        vec![f.from_i64(-1), f.one(), f.one()],
    )
    .unwrap();
    let alg = Algebra::new(dual_kq_view(&fp).unwrap()).unwrap();
    let mr = match_structure(&fp, &alg, 12).unwrap();
    ok = ok && mr.consistent;
    ok = ok && mr.model.shape == Shape::TruncatedCone(6);
    ok = ok && mr.model.len_w == 2;

    // (d) m = 3 over the fourth cyclotomic field, q = (z,1,1): order 4 case
    let c4 = FieldSpec::Cyclotomic(4);
    let z = c4.generator().unwrap();
    let fp = FamilyParams::new(Family::GammaQ, 3, 1, c4, vec![z, c4.one(), c4.one()]).unwrap();
    let alg = Algebra::new(dual_kq_view(&fp).unwrap()).unwrap();
    let mr = match_structure(&fp, &alg, 16).unwrap();
    ok = ok && mr.consistent;
    ok = ok && mr.model.shape == Shape::TruncatedCone(3);

    verdict("6 (cycle coextension instances)", ok);
}

#[test]
fn criterion_7_torus_coextension_instances() {
    let f = FieldSpec::Rationals;
    let mut ok = true;
    let cases = [
        (2usize, 2usize, 10usize, Shape::KPlusXYIdeal),
        (3, 3, 18, Shape::KPlusXYIdealEven),
        (3, 2, 12, Shape::KPlusXYIdeal),
    ];
    for (m, n, l_max, shape) in cases {
        let fp = FamilyParams::new(Family::GammaMN, m, n, f, vec![f.one(); m * n]).unwrap();
        let alg = Algebra::new(dual_kq_view(&fp).unwrap()).unwrap();
        let mr = match_structure(&fp, &alg, l_max).unwrap();
        ok = ok && mr.consistent && mr.model.shape == shape;
    }
    verdict("7 (torus coextension instances)", ok);
}

#[test]
fn criterion_8_duality_and_confluence() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let f = FieldSpec::Rationals;
    let mut ok = true;
    let mut check = |fp: &FamilyParams| {
        let primal = build_presentation(fp).unwrap();
        let dual = quadratic_dual(&primal).unwrap();
        ok = ok && relation_span_equal(&dual, &printed_dual(fp).unwrap()).unwrap();
        let double = quadratic_dual(&dual).unwrap();
        ok = ok && relation_span_equal(&double, &primal).unwrap();
        let rs = build_reduction_system(&primal).unwrap();
        ok = ok && confluence_check(&primal.quiver, &rs).unresolved.is_empty();
        let dual_view = dual_kq_view(fp).unwrap();
        let rs = build_reduction_system(&dual_view).unwrap();
        ok = ok && confluence_check(&dual_view.quiver, &rs).unresolved.is_empty();
    };
    for m in 2..=4 {
        for family in [Family::LambdaQ, Family::GammaQ] {
            let q = random_q(&mut rng, f, m);
            check(&FamilyParams::new(family, m, 1, f, q).unwrap());
        }
    }
    for m in 2..=4 {
        for n in 2..=4 {
            for family in [Family::LambdaMN, Family::GammaMN] {
                let q = random_q(&mut rng, f, m * n);
                check(&FamilyParams::new(family, m, n, f, q).unwrap());
            }
        }
    }
    verdict("8 (duality and confluence)", ok);
}

#[test]
fn criterion_9_property_suites() {
    let ok = common::field_axioms(100)
        && common::rank_kernel_identities(60)
        && common::normal_form_properties(25)
        && common::dimension_counts();
    verdict("9 (standalone property suites)", ok);
}
