use symop::hallalg::{
    all_pass, check_adjoint, check_rel1, check_rel2, determine_orientation, AdjointVerdict, GeneratorSigns, Hall,
    LatticePoint, TriangleRules, TriangleSpec,
};
use symop::vertexops::{HalfPlane, KernelReading, Operator, OperatorContext};
use symop::{Coeff, Error, Orientation};

fn pt(m: i64, n: i64) -> LatticePoint {
    LatticePoint::new(m, n).unwrap()
}

fn tri(a: (i64, i64), b: (i64, i64)) -> TriangleSpec {
    TriangleSpec::new(pt(a.0, a.1), pt(b.0, b.1))
}

#[test]
fn orientation_is_inverted() {
    let ctx = OperatorContext::default();
    assert_eq!(determine_orientation(&Hall::new(&ctx), 2).unwrap(), Orientation::Inverted);
    assert!(determine_orientation(&Hall::new(&ctx), 0).is_err());
}

#[test]
fn rel1_on_small_rays() {
    let ctx = OperatorContext::default();
    let hall = Hall::with_signs(&ctx, GeneratorSigns::Relations);
    for (m, n, k, l) in [(1, 0, 1, -1), (1, 0, 2, -2), (0, 1, 1, -1), (0, 1, 1, 2), (1, 1, 1, -1), (1, 1, 1, 1), (-1, 1, 1, -1)] {
        let reports = check_rel1(&hall, m, n, k, l, 2).unwrap();
        assert!(all_pass(&reports), "ray ({m},{n}) k={k} l={l}");
    }
    assert!(matches!(check_rel1(&hall, 2, 2, 1, 1, 1), Err(Error::Argument(_))));
}

#[test]
fn rel2_on_unit_triangles() {
    let ctx = OperatorContext::default();
    let hall = Hall::with_signs(&ctx, GeneratorSigns::Relations);
    for (a, b) in [((0, 1), (1, 0)), ((1, 1), (1, 0)), ((-1, 1), (1, 1)), ((0, -1), (-1, 0)), ((1, 0), (0, -1)), ((0, 1), (1, -1))] {
        let t = tri(a, b);
        let reports = check_rel2(&hall, &t, TriangleRules::default(), 2).unwrap();
        assert!(all_pass(&reports), "triangle {t}");
    }
    // counterclockwise labeling is rejected
    assert!(check_rel2(&hall, &tri((1, 0), (0, 1)), TriangleRules::default(), 1).is_err());
}

#[test]
fn relation_signs_work_under_both_readings() {
    let ctx = OperatorContext::default().with_reading(KernelReading::Printed);
    let hall = Hall::with_signs(&ctx, GeneratorSigns::Relations);
    assert!(all_pass(&check_rel2(&hall, &tri((0, 1), (1, 0)), TriangleRules::default(), 2).unwrap()));
    assert!(all_pass(&check_rel1(&hall, 1, 1, 1, -1, 2).unwrap()));
}

#[test]
fn heisenberg_commutator_matches_the_scalar() {
    let ctx = OperatorContext::default();
    let hall = Hall::new(&ctx);
    for d in 0..=3 {
        let c = hall.commutator(pt(1, 0), pt(-1, 0), d).unwrap();
        let expect = symop::hallalg::OpMatrix::identity(d).scale(&Coeff::beta(1).unwrap().inverse().unwrap());
        assert!(c.sub(&expect).unwrap().is_zero(), "degree {d}");
    }
}

#[test]
fn adjoint_negates_m() {
    let ctx = OperatorContext::default();
    let hall = Hall::new(&ctx);
    assert_eq!(check_adjoint(&hall, 1, 0, 3).unwrap().verdict, AdjointVerdict::Both);
    for (m, n) in [(0, 1), (1, 1), (1, -1), (2, 1)] {
        assert_eq!(check_adjoint(&hall, m, n, 3).unwrap().verdict, AdjointVerdict::NegateM, "({m},{n})");
    }
}

#[test]
fn integral_generators_match_one_variable_formulas() {
    let ctx = OperatorContext::default();
    let hall = Hall::new(&ctx);
    for m in -2..=2i32 {
        for d in 0..=3 {
            let upper = hall.u(pt(m as i64, 1), d).unwrap();
            let one = hall.matrix_of(&Operator::UOne { m, sign: HalfPlane::Plus }, d).unwrap();
            assert!(upper.sub(&one).unwrap().is_zero(), "U_({m},1) on degree {d}");
            let lower = hall.u(pt(-m as i64, -1), d).unwrap();
            let one = hall.matrix_of(&Operator::UOne { m, sign: HalfPlane::Minus }, d).unwrap();
            assert!(lower.sub(&one).unwrap().is_zero(), "U_({},-1) on degree {d}", -m);
        }
    }
}
