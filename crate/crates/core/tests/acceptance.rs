//! End-to-end acceptance checks, one test per criterion. Each prints a
//! `[acceptance] criterion N: PASS|FAIL ...` line before asserting.

mod common;

use std::time::{Duration, Instant};

use common::{
    brute_min_cover, brute_radius, family_instance, floyd, planted_setcover, radius_of, random_setcover, report, INF,
};
use kcenter_core::approx::{plan_deltas_omega2, plan_deltas_tradeoff, ApproxConfig, Decider, DecisionOutcome};
use kcenter_core::bench::{run_plan, Algo, BenchPlan, SolveParams};
use kcenter_core::gadget::{
    count_gadgets, gen_recursive_lb, gen_simple_lb, yes_case_centers, SetCoverInstance, DEFAULT_GADGET_BUDGET,
};
use kcenter_core::exact::exact_k_radius_with_budget;
use kcenter_core::{
    approximate_radius, exact_k_radius, generators, verify_cover, DistOracle, Graph, KCenterError,
};

fn pct(hits: usize, total: usize) -> f64 {
    100.0 * hits as f64 / total as f64
}

#[test]
fn criterion_01_exact_oracle() {
    let start = Instant::now();
    let mut agree = 0;
    let mut total = 0;
    for i in 0..50u64 {
        let n = 4 + (i as usize % 7);
        let p = [0.2, 0.35, 0.5][i as usize % 3];
        let mut g = generators::erdos_renyi_raw(n, p, 77 + i).unwrap();
        if i % 5 == 4 {
            g = generators::with_random_weights(&g, 4, i).unwrap();
        }
        let d = floyd(&g);
        for k in 1..=3 {
            total += 1;
            let got = exact_k_radius(&g, k).unwrap();
            let want = brute_radius(&d, k);
            let certified = radius_of(&d, &got.centers.to_vec()) == got.radius;
            if got.radius == want && certified && got.centers.len() == k.min(n) {
                agree += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = agree == total && elapsed < Duration::from_secs(10);
    report(1, pass, &format!("{agree}/{total} agree with exhaustive search in {elapsed:.2?}"));
    assert!(pass);
}

/// Instance for soundness run `i` of a decider (weighted ones for w3-74).
fn soundness_instance(i: usize, weighted: bool) -> Graph {
    let g = family_instance(i, 8, 30);
    if weighted {
        generators::with_random_weights(&g, [2, 3, 5][i % 3], i as u64).unwrap()
    } else {
        g
    }
}

#[test]
fn criterion_02_soundness() {
    let deciders: [(Decider, usize); 5] = [
        (Decider::TwoCenter53, 2),
        (Decider::ThreeHalves, 3),
        (Decider::Step2k, 3),
        (Decider::Step2l { l: 2, schedule: None }, 3),
        (Decider::Weighted74, 3),
    ];
    let consts = [3.0, 0.5, 0.2];
    let mut runs = 0;
    let mut covered = 0;
    let mut sound = 0;
    for (decider, k) in &deciders {
        let weighted = matches!(decider, Decider::Weighted74);
        for i in 0..100 {
            let g = soundness_instance(i, weighted);
            let d = floyd(&g);
            let opt = brute_radius(&d, *k);
            // probe below, at and above the optimum
            let r = (opt + (i as u64 % 5)).saturating_sub(2);
            let cfg = ApproxConfig {
                seed: i as u64,
                sample_const: consts[i % 3],
                fresh_samples: Some(i % 2 == 1),
                ..ApproxConfig::default()
            };
            let oracle = DistOracle::new(&g);
            runs += 1;
            if let DecisionOutcome::Covered { centers, radius } = decider.decide(&oracle, *k, r, &cfg).unwrap() {
                covered += 1;
                let ok = verify_cover(&g, &centers, radius)
                    && radius_of(&d, &centers.to_vec()) == radius
                    && radius <= decider.target(*k, r, g.weight_bound())
                    && centers.len() == (*k).min(g.n());
                if ok {
                    sound += 1;
                }
            }
        }
    }
    let pass = runs == 500 && sound == covered;
    report(2, pass, &format!("{sound}/{covered} covered outcomes verified over {runs} runs"));
    assert!(pass);
}

/// Fraction of the bound family within `α·R_k + β`, and whether every
/// result is at least `R_k`.
fn bound_family(decider: &Decider, trials: usize) -> (usize, usize, bool, Duration) {
    let start = Instant::now();
    let mut within = 0;
    let mut never_below = true;
    let total = 200;
    for i in 0..total {
        let g = family_instance(i, 10, 60);
        let k = 2 + i % 2;
        let opt = exact_k_radius(&g, k).unwrap().radius;
        let cfg = ApproxConfig {
            seed: i as u64,
            trials,
            ..ApproxConfig::default()
        };
        let s = approximate_radius(&g, k, decider, &cfg).unwrap();
        let (alpha, beta) = decider.guarantee(k, g.weight_bound());
        if s.solution.radius as f64 <= alpha * opt as f64 + beta + 1e-9 {
            within += 1;
        }
        never_below &= s.solution.radius >= opt;
    }
    (within, total, never_below, start.elapsed())
}

#[test]
fn criterion_03_k2k_bound() {
    let (within, total, never_below, elapsed) = bound_family(&Decider::Step2k, 3);
    let pass = pct(within, total) >= 95.0 && never_below && elapsed < Duration::from_secs(120);
    report(
        3,
        pass,
        &format!("{within}/{total} within (2-1/(2k-1))R+(1-1/(2k-1)), never below R_k: {never_below}, {elapsed:.2?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_04_three_halves_bound() {
    let (within, total, never_below, elapsed) = bound_family(&Decider::ThreeHalves, 1);
    let pass = pct(within, total) >= 95.0 && never_below && elapsed < Duration::from_secs(120);
    report(4, pass, &format!("{within}/{total} within 1.5R+0.5, never below R_k: {never_below}, {elapsed:.2?}"));
    assert!(pass);
}

/// Graphs whose 2-radius is a positive multiple of 3, confirmed by the oracle.
fn divisible_instances(count: usize) -> Vec<(Graph, u64)> {
    let mut out = Vec::new();
    let mut candidates: Vec<Graph> = Vec::new();
    for base in [11, 23, 35, 47, 59] {
        for n in base..base + 4 {
            candidates.push(generators::cycle(n).unwrap());
            candidates.push(generators::path(n).unwrap());
        }
    }
    for (w, h) in [(2, 11), (3, 12), (2, 23), (4, 13), (3, 24), (5, 11), (2, 35), (6, 13), (4, 25), (3, 36)] {
        candidates.push(generators::grid(w, h).unwrap());
    }
    for seed in 0..200 {
        candidates.push(generators::erdos_renyi(40, 0.06, seed).unwrap());
    }
    for g in candidates {
        if out.len() == count {
            break;
        }
        let r = exact_k_radius(&g, 2).unwrap().radius;
        if r > 0 && r.is_multiple_of(3) {
            out.push((g, r));
        }
    }
    out
}

#[test]
fn criterion_05_two_center_divisible() {
    let inst = divisible_instances(50);
    let mut within = 0;
    for (i, (g, opt)) in inst.iter().enumerate() {
        let s = approximate_radius(g, 2, &Decider::TwoCenter53, &ApproxConfig::with_seed(i as u64)).unwrap();
        if 3 * s.solution.radius <= 5 * opt {
            within += 1;
        }
    }
    let pass = inst.len() == 50 && pct(within, inst.len()) >= 95.0;
    report(5, pass, &format!("{within}/{} within (5/3)R_2 on instances with 3 | R_2", inst.len()));
    assert!(pass);
}

#[test]
fn criterion_06_tradeoff() {
    let k = 4;
    let graphs: Vec<(Graph, u64)> = (0..50)
        .map(|i| {
            let g = family_instance(i, 10, 36);
            let opt = exact_k_radius(&g, k).unwrap().radius;
            (g, opt)
        })
        .collect();
    let mut pass = true;
    let mut details = Vec::new();
    for l in 1..=4 {
        let decider = Decider::Step2l { l, schedule: None };
        let (alpha, beta) = decider.guarantee(k, 1);
        let mut within = 0;
        for (i, (g, opt)) in graphs.iter().enumerate() {
            let s = approximate_radius(g, k, &decider, &ApproxConfig::with_seed(i as u64)).unwrap();
            if s.solution.radius as f64 <= alpha * *opt as f64 + beta + 1e-9 {
                within += 1;
            }
        }
        pass &= pct(within, graphs.len()) >= 95.0;
        details.push(format!("l={l}: {within}/{}", graphs.len()));
    }
    report(6, pass, &details.join(", "));
    assert!(pass);
}

#[test]
fn criterion_07_weighted_three_center() {
    let mut within = 0;
    let total = 50;
    for i in 0..total {
        let m = [2, 3, 5][i % 3];
        let g = generators::with_random_weights(&family_instance(i, 10, 50), m, 500 + i as u64).unwrap();
        let opt = exact_k_radius(&g, 3).unwrap().radius;
        let s = approximate_radius(&g, 3, &Decider::Weighted74, &ApproxConfig::with_seed(i as u64)).unwrap();
        if s.solution.radius <= 7 * opt / 4 + m {
            within += 1;
        }
    }
    let pass = pct(within, total) >= 95.0;
    report(7, pass, &format!("{within}/{total} within floor(7R_3/4)+M"));
    assert!(pass);
}

/// Ten small instances, each with a planted cover, and the smallest cover.
fn yes_instances() -> Vec<(SetCoverInstance, Vec<usize>)> {
    (0..10)
        .map(|i| {
            let planted = 1 + i % 3;
            let sc = planted_setcover(3 + i % 4, 3 + (i * 5) % 4, planted, 40 + i as u64);
            let k = brute_min_cover(&sc);
            let cover = sc.find_cover(k, u128::MAX).unwrap().expect("minimum cover exists");
            assert!(cover.len() <= planted);
            (sc, cover)
        })
        .collect()
}

#[test]
fn criterion_08_gadget_yes_certificates() {
    let mut checked = 0;
    let mut ok = 0;
    for (sc, cover) in yes_instances() {
        let k = cover.len();
        for t in 1..=3 {
            for ell in 1..=2 {
                let gout = gen_recursive_lb(&sc, k, t, ell, DEFAULT_GADGET_BUDGET).unwrap();
                let centers = yes_case_centers(&gout, &sc, &cover).unwrap();
                let d = floyd(&gout.graph);
                let r = radius_of(&d, &centers.to_vec());
                checked += 1;
                if r <= ((2 * t + 1) * ell) as u64 && centers.len() == gout.center_budget {
                    ok += 1;
                }
            }
        }
        for ell in 1..=2 {
            let gout = gen_simple_lb(&sc, k, ell).unwrap();
            let centers = yes_case_centers(&gout, &sc, &cover).unwrap();
            let r = radius_of(&floyd(&gout.graph), &centers.to_vec());
            checked += 1;
            if r <= 2 * ell as u64 && centers.len() == k {
                ok += 1;
            }
        }
    }
    let pass = ok == checked;
    report(8, pass, &format!("{ok}/{checked} gadget certificates within the yes radius"));
    assert!(pass);
}

/// Tiny instances with minimum cover larger than `k + 1`, paired with `k`.
fn no_instances() -> Vec<(SetCoverInstance, usize)> {
    let identity = |m: usize| SetCoverInstance::new(m, (0..m).map(|j| vec![j]).collect()).unwrap();
    let mut out = vec![(identity(3), 1), (identity(4), 1), (identity(4), 2), (identity(5), 2)];
    let mut seed = 0;
    while out.len() < 10 {
        seed += 1;
        let Some(sc) = random_setcover(5, 6, 2, seed) else { continue };
        let min = brute_min_cover(&sc);
        if min >= 3 {
            out.push((sc, min - 2));
        }
    }
    out
}

#[test]
fn criterion_09_gadget_gap_witness() {
    let mut checked = 0;
    let mut ok = 0;
    let mut lines = Vec::new();
    for (i, (sc, k)) in no_instances().into_iter().enumerate() {
        let ell = 1 + i % 2;
        let gout = gen_recursive_lb(&sc, k, 1, ell, DEFAULT_GADGET_BUDGET).unwrap();
        let budget = gout.center_budget;
        assert!(brute_min_cover(&sc) > budget, "instance {i} is not a NO instance");
        match exact_k_radius_with_budget(&gout.graph, budget, 1 << 40) {
            Ok(s) => {
                checked += 1;
                if s.radius >= 5 * ell as u64 {
                    ok += 1;
                } else {
                    lines.push(format!("instance {i}: radius {} < {}", s.radius, 5 * ell));
                }
            }
            Err(KCenterError::BudgetExceeded { .. }) => lines.push(format!("instance {i}: skipped (budget)")),
            Err(e) => panic!("{e}"),
        }
    }
    let pass = checked == 10 && ok == checked;
    report(9, pass, &format!("{ok}/{checked} NO gadgets have radius >= 5l {}", lines.join("; ")));
    assert!(pass);
}

/// Chains `1 = p_1 | p_2 | ...` with odd ratios >= 3 and last element <= `top`.
fn count_chains(top: usize) -> usize {
    fn go(p: usize, top: usize) -> usize {
        1 + (3..).step_by(2).take_while(|m| p * m <= top).map(|m| go(p * m, top)).sum::<usize>()
    }
    if top == 0 {
        0
    } else {
        go(1, top)
    }
}

#[test]
fn criterion_10_counting_identities() {
    let c = count_gadgets(5).unwrap();
    let listed = c.g_table == vec![0, 1, 1, 2, 2, 3, 3, 4, 4, 6, 6];
    let f: Vec<usize> = (1..=5).map(|t| count_gadgets(t).unwrap().f).collect();
    let f_listed = f == vec![1, 2, 3, 4, 6];
    let mut square = true;
    let mut chains = true;
    for t in 1..=20 {
        let c = count_gadgets(t).unwrap();
        square &= c.f <= t * t;
        chains &= c.h_table[1] == c.g_table[2 * t] && (0..=2 * t).all(|big_t| c.g_table[big_t] == count_chains(big_t));
    }
    let pass = listed && f_listed && square && chains;
    report(
        10,
        pass,
        &format!("g table {listed}, f(1..5) {f_listed}, f(t) <= t^2 {square}, chain counts {chains}"),
    );
    assert!(pass);
}

#[test]
fn criterion_11_schedule_identities() {
    let mut worst: f64 = 0.0;
    for k in 3..=12 {
        let s = plan_deltas_omega2(k).unwrap();
        for i in 3..=k {
            let want = i as f64 / 2.0 + 22.0 / (9.0 * (i as f64 + 1.0));
            worst = worst.max((s.t_values[k - i] - want).abs());
        }
    }
    let mut worst_tradeoff: f64 = 0.0;
    for k in 1..=10 {
        for l in 1..=k {
            let s = plan_deltas_tradeoff(k, l).unwrap();
            let (kf, lf) = (k as f64, l as f64);
            let want = kf - lf + lf * (lf + 1.0) / (2.0 * (kf + 1.0)) + 1.0;
            worst_tradeoff = worst_tradeoff.max((s.t0() - want).abs());
        }
    }
    let pass = worst <= 1e-12 && worst_tradeoff <= 1e-12;
    report(
        11,
        pass,
        &format!("max error omega2 {worst:.1e}, tradeoff {worst_tradeoff:.1e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_12_determinism() {
    let plan = BenchPlan::parse(
        "instance er:24:0.2 seed=3\n\
         instance cycle:18\n\
         instance grid:4:5\n\
         instance er:20:0.25 seed=5 weights=3\n\
         algo exact k=2\n\
         algo gonzalez k=3\n\
         algo c2-53 k=2\n\
         algo k-32 k=3\n\
         algo k-2k k=3\n\
         algo k-2l k=3 l=2\n\
         algo w3-74 k=3\n\
         seeds 0..4\n\
         trials 2\n\
         with-exact\n",
    )
    .unwrap();
    let mut base = SolveParams::new(Algo::Exact, 1);
    base.timing = false;
    let render = |rows: Vec<kcenter_core::bench::BenchRow>| -> String {
        rows.iter().map(|r| r.to_kv() + "\n").collect()
    };
    let first = render(run_plan(&plan, &base).unwrap());
    let second = render(run_plan(&plan, &base).unwrap());
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| render(run_plan(&plan, &base).unwrap()));
    let records = first.lines().count();
    let pass = first == second && first == single && records == 4 * 7 * 4;
    report(12, pass, &format!("{records} records byte-identical across 3 runs (one single-threaded)"));
    assert!(pass);
}

#[test]
fn oracle_sanity() {
    // the reference oracle itself on a known case
    let d = floyd(&generators::cycle(12).unwrap());
    assert_eq!(brute_radius(&d, 2), 3);
    assert_eq!(radius_of(&d, &[]), INF);
}
