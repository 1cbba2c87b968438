//! Property tests for the cross-module invariants.

mod common;

use common::{brute_min_cover, brute_radius, floyd, planted_setcover, radius_of};
use kcenter_core::approx::{
    plan_deltas_combinatorial, plan_deltas_omega2, plan_deltas_omega_general, plan_deltas_tradeoff, ApproxConfig,
    Decider, DecisionOutcome, DeltaSchedule,
};
use kcenter_core::bench::{run_solve, within_guarantee, Algo, SolveParams};
use kcenter_core::gadget::{build_base_gadget, gen_recursive_lb, gen_simple_lb, recursive_size, yes_case_centers, Role};
use kcenter_core::{approximate_radius, cover_radius, exact_k_radius, generators, DistOracle, Graph};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3usize..=max_n, 0.1f64..0.6, any::<u64>(), 1u64..4).prop_map(|(n, p, seed, wmax)| {
        let g = generators::erdos_renyi_raw(n, p, seed).unwrap();
        if wmax > 1 {
            generators::with_random_weights(&g, wmax, seed ^ 0x55).unwrap()
        } else {
            g
        }
    })
}

fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (6usize..=max_n, 0.15f64..0.5, any::<u64>()).prop_map(|(n, p, seed)| generators::erdos_renyi(n, p, seed).unwrap())
}

fn arb_decider() -> impl Strategy<Value = (Decider, usize)> {
    prop_oneof![
        Just((Decider::TwoCenter53, 2)),
        (1usize..4).prop_map(|k| (Decider::ThreeHalves, k)),
        (1usize..4).prop_map(|k| (Decider::Step2k, k)),
        (1usize..4).prop_flat_map(|k| (1..=k).prop_map(move |l| (Decider::Step2l { l, schedule: None }, k))),
        Just((Decider::Weighted74, 3)),
    ]
}

fn recurrence_holds(s: &DeltaSchedule) -> bool {
    s.t_values.len() == s.deltas.len() + 1
        && (0..s.deltas.len()).all(|i| (s.t_values[i] - s.t_values[i + 1] - s.deltas[i]).abs() <= 1e-12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_is_monotone_and_certified(g in arb_graph(9)) {
        let d = floyd(&g);
        let mut prev = u64::MAX;
        for k in 1..=4 {
            let s = exact_k_radius(&g, k).unwrap();
            prop_assert!(s.radius <= prev);
            prop_assert_eq!(cover_radius(&g, &s.centers).unwrap(), s.radius);
            prop_assert_eq!(s.radius, brute_radius(&d, k));
            prev = s.radius;
        }
    }

    #[test]
    fn covered_outcomes_are_sound_and_deterministic(
        plain in arb_graph(20),
        (decider, k) in arb_decider(),
        wmax in 1u64..5,
        r in 0u64..12,
        seed in any::<u64>(),
        c in prop::sample::select(vec![0.2, 1.0, 3.0]),
    ) {
        // only the weighted decider accepts weights
        let g = match (&decider, plain.is_weighted()) {
            (Decider::Weighted74, false) => generators::with_random_weights(&plain, wmax, seed).unwrap(),
            (Decider::Weighted74, true) | (_, false) => plain,
            (_, true) => generators::erdos_renyi_raw(plain.n(), 0.3, seed).unwrap(),
        };
        let cfg = ApproxConfig { seed, sample_const: c, ..ApproxConfig::default() };
        let oracle = DistOracle::new(&g);
        let first = decider.decide(&oracle, k, r, &cfg).unwrap();
        let again = decider.decide(&DistOracle::new(&g), k, r, &cfg).unwrap();
        prop_assert_eq!(&first, &again);
        if let DecisionOutcome::Covered { centers, radius } = first {
            prop_assert!(cover_radius(&g, &centers).unwrap() <= radius);
            prop_assert!(radius <= decider.target(k, r, g.weight_bound()));
            prop_assert_eq!(centers.len(), k.min(g.n()));
        }
    }

    #[test]
    fn search_never_beats_the_optimum(g in arb_connected(24), (decider, k) in arb_decider(), seed in any::<u64>()) {
        let opt = radius_of(&floyd(&g), &exact_k_radius(&g, k).unwrap().centers.to_vec());
        let s = approximate_radius(&g, k, &decider, &ApproxConfig::with_seed(seed)).unwrap();
        prop_assert!(s.solution.radius >= opt);
        prop_assert_eq!(cover_radius(&g, &s.solution.centers).unwrap(), s.solution.radius);
    }

    #[test]
    fn bound_flag_matches_guarantee(g in arb_connected(18), seed in any::<u64>(), k in 1usize..4) {
        for algo in [Algo::Gonzalez, Algo::Approx(Decider::ThreeHalves), Algo::Approx(Decider::Step2k)] {
            let mut p = SolveParams::new(algo, k);
            p.seed = seed;
            p.with_exact = true;
            p.timing = false;
            let rec = run_solve(&g, &p).unwrap();
            let (alpha, beta) = p.algo.guarantee(k, g.weight_bound());
            let exact = rec.exact.unwrap();
            prop_assert_eq!(rec.bound_satisfied, Some(within_guarantee(rec.radius, exact, alpha, beta)));
        }
    }

    #[test]
    fn schedules_satisfy_recurrence(k in 1usize..16, l_frac in 0.0f64..1.0, omega in 2.0f64..3.0) {
        let l = 1 + ((k - 1) as f64 * l_frac) as usize;
        for s in [
            plan_deltas_combinatorial(k).unwrap(),
            plan_deltas_omega2(k).unwrap(),
            plan_deltas_omega_general(k, omega).unwrap(),
            plan_deltas_tradeoff(k, l).unwrap(),
        ] {
            prop_assert!(recurrence_holds(&s));
        }
        for s in [plan_deltas_omega2(k).unwrap(), plan_deltas_tradeoff(k, l).unwrap()] {
            prop_assert!(s.deltas.iter().all(|&d| d > 0.0 && d <= 0.5 + 1e-12), "{:?}", s.deltas);
        }
    }

    #[test]
    fn gadgets_are_complete_and_certified(
        a in 2usize..6,
        b in 1usize..6,
        planted in 1usize..3,
        seed in any::<u64>(),
        t in 1usize..4,
        ell in 1usize..3,
    ) {
        let sc = planted_setcover(a, b, planted.min(a), seed);
        let k = brute_min_cover(&sc);
        let cover = sc.find_cover(k, u128::MAX).unwrap().unwrap();

        let base = build_base_gadget(&sc, ell).unwrap();
        prop_assert_eq!(base.roles.len(), base.graph.n());
        prop_assert_eq!(base.graph.m(), ell * (sc.edge_count() + a));

        let rec = gen_recursive_lb(&sc, k, t, ell, 1 << 24).unwrap();
        prop_assert_eq!(rec.roles.len(), rec.graph.n());
        let (nv, ne) = recursive_size(&sc, t, ell);
        prop_assert_eq!((nv, ne), (rec.graph.n() as u128, rec.graph.m() as u128));
        let hubs = rec.roles.iter().filter(|r| matches!(r, Role::Hub { .. })).count();
        prop_assert_eq!(hubs, rec.gadget_count());
        let centers = yes_case_centers(&rec, &sc, &cover).unwrap();
        prop_assert!(radius_of(&floyd(&rec.graph), &centers.to_vec()) <= rec.predicted_yes_radius);

        let simple = gen_simple_lb(&sc, k, ell).unwrap();
        prop_assert_eq!(simple.roles.len(), simple.graph.n());
        let centers = yes_case_centers(&simple, &sc, &cover).unwrap();
        prop_assert!(cover_radius(&simple.graph, &centers).unwrap() <= simple.predicted_yes_radius);
    }
}
