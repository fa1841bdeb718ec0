use proptest::prelude::*;
use slicecubic::archimedean::QuadConfig;
use slicecubic::arcs::eval_f;
use slicecubic::expsum::{eval_a, eval_s};
use slicecubic::lattice::{count_r4, count_r6, count_v_divisor, CountBound, RepCounts, RepKind};
use slicecubic::parse::{parse_bound_list, parse_rational, parse_real_list};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let v = parse_rational(&format!(" {p} / {q} ")).unwrap();
        prop_assert_eq!(v, p as f64 / q as f64);
    }

    #[test]
    fn bound_list_round_trip(bs in prop::collection::vec(0u32..5000, 1..8)) {
        let text = bs.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        prop_assert_eq!(parse_bound_list(&text).unwrap(), bs);
    }

    #[test]
    fn real_list_round_trip(xs in prop::collection::vec(-1e6f64..1e6, 1..8)) {
        let text = xs.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        prop_assert_eq!(parse_real_list(&text).unwrap(), xs);
    }

    #[test]
    fn quad_config_round_trip(
        outer in 20.0f64..400.0,
        inner_frac in 0.1f64..0.5,
        nodes in 4usize..16,
        samples in 1u64..1_000_000,
        seed in any::<u64>(),
    ) {
        let cfg = QuadConfig {
            outer_radius: outer,
            inner_radius: outer * inner_frac,
            panel_nodes: nodes,
            mc_samples: samples,
            mc_seed: seed,
            ..QuadConfig::default()
        };
        prop_assert!(cfg.validate().is_ok());
        let back: QuadConfig = cfg.to_string().parse().unwrap();
        prop_assert_eq!(back, cfg);
    }

    #[test]
    fn f_is_even(alpha in 0.0f64..1.0, beta in 0.0f64..1.0, b in 1u32..60) {
        let x = eval_f(alpha, beta, b).unwrap();
        let y = eval_f(-alpha, -beta, b).unwrap();
        prop_assert!((x - y).abs() <= 1e-9 * b as f64);
        prop_assert!(x.abs() <= 2.0 * b as f64 + 1.0 + 1e-9);
    }

    #[test]
    fn s_conjugate_symmetry(q in 1u64..200, a in -500i64..500, b in -500i64..500) {
        let s = eval_s(q, a, b).unwrap();
        let t = eval_s(q, -a, -b).unwrap();
        prop_assert!((s - t.conj()).norm() <= 1e-9 * q as f64);
    }

    #[test]
    fn v_is_odd_symmetric(n in 1i64..20_000, b in 1u32..30) {
        let bound = CountBound::new(b).unwrap();
        prop_assert_eq!(count_v_divisor(n, bound).unwrap(), count_v_divisor(-n, bound).unwrap());
    }
}

#[test]
fn rep_counts_csv_round_trip() {
    for b in 0..8 {
        let bound = CountBound::new(b).unwrap();
        for (kind, reps) in [(RepKind::R4, count_r4(bound).unwrap()), (RepKind::R6, count_r6(bound).unwrap())] {
            let mut buf = Vec::new();
            reps.write_csv(&mut buf).unwrap();
            let back = RepCounts::from_csv(kind, std::str::from_utf8(&buf).unwrap()).unwrap();
            assert_eq!(back.iter().collect::<Vec<_>>(), reps.iter().collect::<Vec<_>>());
            assert_eq!(back.total(), reps.total());
        }
    }
}

#[test]
fn rep_counts_are_symmetric_in_n() {
    let bound = CountBound::new(12).unwrap();
    for reps in [count_r4(bound).unwrap(), count_r6(bound).unwrap()] {
        for (n, c) in reps.iter() {
            assert_eq!(reps.get(-n), c, "n={n}");
        }
    }
}

#[test]
fn series_coefficient_multiplicative_on_prime_powers() {
    // A at composite moduli from the cache against products of prime powers
    for (q1, q2) in [(4u64, 9u64), (8, 25), (27, 7), (16, 49), (11, 13)] {
        let prod = eval_a(q1).unwrap().value * eval_a(q2).unwrap().value;
        assert!((eval_a(q1 * q2).unwrap().value - prod).abs() < 1e-9);
    }
}

#[test]
fn malformed_inputs_are_rejected() {
    for bad in ["", "1/0", "a/b", "inf", "1/2/3", "nan"] {
        assert!(parse_rational(bad).is_err(), "{bad:?}");
    }
    for bad in ["", "1,,2", "-1", "3.5", "x"] {
        assert!(parse_bound_list(bad).is_err(), "{bad:?}");
    }
    assert!(RepCounts::from_csv(RepKind::R4, "n,count\n1,2\n1,3\n").is_err());
    assert!(RepCounts::from_csv(RepKind::R4, "n,count\nx,2\n").is_err());
    assert!("outer_radius = -1".parse::<QuadConfig>().is_err());
}
