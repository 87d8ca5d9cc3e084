mod common;

use proptest::prelude::*;

use curvlab::curvature::{
    bianchi_project, decompose, potential, q, rotate, sharp, tri, weyl_part, CurvatureOperator,
};
use curvlab::flow::{flow_step, FlowState};
use curvlab::io::{read_operator_json, write_operator_json};
use curvlab::sample;

fn dims() -> impl Strategy<Value = usize> {
    4usize..=7
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bianchi_projection_is_idempotent(seed in any::<u64>(), n in dims()) {
        let s = sample::symmetric(&mut sample::rng(seed), n);
        let once = bianchi_project(&s);
        let twice = bianchi_project(&once);
        prop_assert!((&twice.mat - &once.mat).amax() < 1e-12 * s.mat.amax().max(1.0));
    }

    #[test]
    fn sharp_is_symmetric_and_matches_trace_formula(seed in any::<u64>(), n in dims()) {
        let mut rng = sample::rng(seed);
        let r = sample::curvature(&mut rng, n);
        let s = sample::curvature(&mut rng, n);
        let rs = sharp(&r, &s).unwrap();
        let sr = sharp(&s, &r).unwrap();
        prop_assert!((&rs.mat - &sr.mat).amax() < 1e-12);
        prop_assert!((&rs.mat - common::sharp(n, &r.mat, &s.mat)).amax() < 1e-10);
    }

    #[test]
    fn decomposition_is_orthogonal(seed in any::<u64>(), n in dims()) {
        let r = sample::curvature(&mut sample::rng(seed), n);
        let d = decompose(&r).unwrap();
        let sum = &d.identity_part.mat + &d.ricci_part.mat + &d.weyl.mat;
        prop_assert!((sum - &r.mat).amax() < 1e-10);
        prop_assert!(d.weyl.dot(&d.ricci_part).abs() < 1e-9);
        prop_assert!(common::ricci(n, &d.weyl.mat).amax() < 1e-10);
    }

    #[test]
    fn q_is_equivariant(seed in any::<u64>(), n in dims()) {
        let mut rng = sample::rng(seed);
        let g = sample::rotation(&mut rng, n);
        let r = sample::curvature(&mut rng, n);
        let lhs = q(&rotate(&g, &r).unwrap());
        let rhs = rotate(&g, &q(&r)).unwrap();
        prop_assert!((&lhs.mat - &rhs.mat).amax() < 1e-9 * r.norm().powi(2).max(1.0));
    }

    #[test]
    fn tri_is_fully_symmetric(seed in any::<u64>(), n in dims()) {
        let mut rng = sample::rng(seed);
        let (a, b, c) = (sample::curvature(&mut rng, n), sample::curvature(&mut rng, n), sample::curvature(&mut rng, n));
        let base = tri(&a, &b, &c).unwrap();
        let scale = base.abs().max(1.0);
        for t in [tri(&b, &a, &c).unwrap(), tri(&c, &b, &a).unwrap(), tri(&a, &c, &b).unwrap()] {
            prop_assert!((t - base).abs() < 1e-9 * scale);
        }
        prop_assert!((tri(&a, &a, &a).unwrap() - potential(&a)).abs() < 1e-9 * potential(&a).abs().max(1.0));
    }

    #[test]
    fn potential_is_cubic(seed in any::<u64>(), n in dims(), c in -3.0f64..3.0) {
        let r = sample::curvature(&mut sample::rng(seed), n);
        let scaled = CurvatureOperator::new(n, &r.mat * c).unwrap();
        let want = c.powi(3) * potential(&r);
        prop_assert!((potential(&scaled) - want).abs() < 1e-9 * want.abs().max(1.0));
    }

    #[test]
    fn flow_steps_stay_on_the_weyl_sphere(seed in any::<u64>(), n in 4usize..=6) {
        let w = sample::unit_weyl(&mut sample::rng(seed), n);
        let mut state = FlowState::new(&w, false).unwrap();
        for _ in 0..20 {
            let dt = state.auto_dt();
            let next = flow_step(&state, dt).unwrap();
            prop_assert!(next.potential >= state.potential - 1e-12);
            state = next;
        }
        prop_assert!((state.w.norm() - 1.0).abs() < 1e-12);
        prop_assert!((&weyl_part(&state.w).unwrap().mat - &state.w.mat).amax() < 1e-12);
    }

    #[test]
    fn operator_json_round_trips(seed in any::<u64>(), n in 2usize..=8) {
        let op = sample::symmetric(&mut sample::rng(seed), n);
        let mut buf = Vec::new();
        write_operator_json(&op, &mut buf).unwrap();
        let back = read_operator_json(buf.as_slice()).unwrap();
        prop_assert_eq!(back.dim, n);
        prop_assert!((&back.mat - &op.mat).amax() == 0.0);
    }
}
