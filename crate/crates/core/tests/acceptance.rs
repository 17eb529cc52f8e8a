//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Bounds are recomputed here from plain integer arithmetic rather than
//! taken from the library, and optimal weights come from the exact solver.
//! Randomized criteria compare sample means against the expected bound
//! plus three standard errors.

use std::process::ExitCode;

use arbodom::cli::{rows_to_csv, run_experiment, ExperimentConfig};
use arbodom::graph::{
    build_lower_bound_graph, complete, cycle, exact_orientation, generate_bounded_arboricity,
    generate_star, gnp, petersen, random_tree, NodeId, WeightedGraph,
};
use arbodom::mds_det::{
    mds_deterministic_with, mds_unknown_alpha_with, mds_unknown_delta_with, mds_unweighted_with,
    partial_dominating_set, tree_mds, DominatingSetResult, PackingAssignment, RunOptions,
};
use arbodom::mds_rand::{extend_randomized, mds_general_with, mds_randomized_with};
use arbodom::oracle::{ds_to_fractional_vc, exact_mds, is_dominating, load_violation};
use arbodom::packing::PackingEntry;
use arbodom::rational::{int, ratio, to_f64};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SIGMAS: f64 = 3.0;

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: String) -> Self {
        Verdict { passed, detail }
    }
}

/// `ε` as `p/q`.
#[derive(Clone, Copy)]
struct Eps {
    p: u64,
    q: u64,
}

impl Eps {
    fn rational(self) -> BigRational {
        ratio(self.p as i64, self.q as i64)
    }
}

const EPS_GRID: [Eps; 3] = [Eps { p: 1, q: 10 }, Eps { p: 1, q: 2 }, Eps { p: 9, q: 10 }];

fn opt(g: &WeightedGraph) -> u64 {
    exact_mds(g).unwrap().opt_weight
}

fn tau_of(g: &WeightedGraph) -> Vec<u64> {
    (0..g.n())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&u| g.weight(u))
                .fold(g.weight(v), u64::min)
        })
        .collect()
}

fn neighborhood_of(g: &WeightedGraph, set: &[NodeId]) -> Vec<bool> {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
        for &u in g.neighbors(v) {
            inside[u] = true;
        }
    }
    inside
}

/// `(2α+1)(1+ε)`.
fn det_bound(alpha: u32, e: Eps) -> BigRational {
    int(2 * u64::from(alpha) + 1) * ratio((e.q + e.p) as i64, e.q as i64)
}

/// Smallest `r >= 0` with `(1+ε)^r > λ(Δ+1)` for `λ = 1/((2α+1)(1+ε))`,
/// i.e. `(2α+1)(q+p)^{r+1} > (Δ+1) q^{r+1}`.
fn det_iterations(alpha: u32, e: Eps, delta: usize) -> u32 {
    let (p, q) = (u128::from(e.p), u128::from(e.q));
    let (mut lhs, mut rhs) = (
        (2 * u128::from(alpha) + 1) * (q + p),
        (delta as u128 + 1) * q,
    );
    let mut r = 0;
    while lhs <= rhs {
        lhs *= q + p;
        rhs *= q;
        r += 1;
    }
    r
}

fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

fn residual_violation(g: &WeightedGraph, p: &PackingAssignment) -> Option<usize> {
    let values: Vec<BigRational> = p
        .values()
        .into_iter()
        .zip(&p.entries)
        .map(|(v, e)| if e.frozen { BigRational::zero() } else { v })
        .collect();
    load_violation(g, &values)
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, var.sqrt())
}

/// Results gathered for the packing and message-width criteria.
#[derive(Default)]
struct Ledger {
    runs: usize,
    packing_failures: Vec<String>,
    width_failures: Vec<String>,
    widest: (u32, u32),
}

impl Ledger {
    fn width(&mut self, label: &str, n: usize, r: u32, t: u32, bits: u32) {
        let budget = 8 * ceil_log2(n as u64 + 1) + 8 * ceil_log2(u64::from(r) * u64::from(t) + 1);
        if bits > self.widest.0 {
            self.widest = (bits, budget);
        }
        if bits > budget {
            self.width_failures
                .push(format!("{label}: {bits} > {budget} bits"));
        }
    }

    fn width_of(&mut self, label: &str, g: &WeightedGraph, res: &DominatingSetResult) {
        let (r, t) = match (res.phases, res.phase_iterations) {
            (Some(t), Some(r)) => (r.max(res.iterations), t),
            _ => (res.iterations, 1),
        };
        self.width(label, g.n(), r, t, res.max_message_bits);
    }

    fn certificate(&mut self, label: &str, res: &DominatingSetResult, opt: u64) {
        if let Some(c) = &res.certificate {
            if c.total() > int(opt) {
                self.packing_failures
                    .push(format!("{label}: certificate total above OPT"));
            }
        }
    }
}

/// Runs `f` with a hook that checks full feasibility in the first
/// `full` simulations and residual feasibility in later ones.
fn observed<T>(
    g: &WeightedGraph,
    full: u32,
    seed: u64,
    ledger: &mut Ledger,
    label: &str,
    f: impl FnOnce(&mut RunOptions) -> T,
) -> T {
    let mut stage = 0u32;
    let mut bad = None;
    let mut hook = |round: u32, p: &PackingAssignment| {
        if round == 0 {
            stage += 1;
        }
        let v = if stage <= full {
            load_violation(g, &p.values())
        } else {
            residual_violation(g, p)
        };
        if let (Some(u), None) = (v, &bad) {
            bad = Some((stage, round, u));
        }
    };
    let out = f(&mut RunOptions {
        seed,
        packing_hook: Some(&mut hook),
    });
    ledger.runs += 1;
    if let Some((stage, round, u)) = bad {
        ledger.packing_failures.push(format!(
            "{label}: node {u} overloaded in stage {stage} round {round}"
        ));
    }
    out
}

struct DetInstance {
    g: WeightedGraph,
    alpha: u32,
    eps: Eps,
    opt: u64,
}

fn det_instances() -> Vec<DetInstance> {
    let mut out = Vec::new();
    let mut idx = 0usize;
    for alpha in 1..=3u32 {
        for weight_max in [1u64, 8] {
            for eps in EPS_GRID {
                for s in 0..12u64 {
                    let n = 1 + (idx * 7 + s as usize * 5) % 18;
                    idx += 1;
                    let g = generate_bounded_arboricity(n, alpha, weight_max, 1000 + idx as u64)
                        .unwrap();
                    let opt = opt(&g);
                    out.push(DetInstance { g, alpha, eps, opt });
                }
            }
        }
    }
    out
}

/// Deterministic bound, iteration count and round budget over the grid.
fn deterministic_sweep(instances: &[DetInstance], ledger: &mut Ledger) -> (Verdict, Verdict) {
    let mut bound_bad = Vec::new();
    let mut iter_bad = Vec::new();
    let mut worst = 0.0f64;
    let mut max_rounds = (0u32, 0u32);
    for (k, inst) in instances.iter().enumerate() {
        let g = &inst.g;
        let label = format!("det #{k} n={} α={}", g.n(), inst.alpha);
        let res = observed(g, 1, 0, ledger, &label, |o| {
            mds_deterministic_with(g, &inst.eps.rational(), o)
        })
        .unwrap();
        ledger.certificate(&label, &res, inst.opt);
        ledger.width_of(&label, g, &res);
        let bound = det_bound(inst.alpha, inst.eps) * int(inst.opt);
        if !is_dominating(g, &res.members) || int(res.total_weight) > bound {
            bound_bad.push(label.clone());
        }
        worst = worst.max(res.total_weight as f64 / to_f64(&bound));

        let r = det_iterations(inst.alpha, inst.eps, g.max_degree());
        if res.iterations != r || res.rounds < 2 * r + 2 || res.rounds > 5 * r + 10 {
            iter_bad.push(format!(
                "{label}: r={r}, ran {} in {} rounds",
                res.iterations, res.rounds
            ));
        }
        if res.rounds > max_rounds.0 {
            max_rounds = (res.rounds, r);
        }
    }
    (
        Verdict::new(
            bound_bad.is_empty(),
            format!(
                "{} instances, weight <= (2α+1)(1+ε)·OPT, worst weight/bound {worst:.3}{}",
                instances.len(),
                failures(&bound_bad)
            ),
        ),
        Verdict::new(
            iter_bad.is_empty(),
            format!(
                "iterations match r on {} instances, longest run {} rounds for r={} (budget 5r+10){}",
                instances.len(),
                max_rounds.0,
                max_rounds.1,
                failures(&iter_bad)
            ),
        ),
    )
}

fn failures(list: &[String]) -> String {
    match list.first() {
        None => String::new(),
        Some(first) => format!("; {} failures, first: {first}", list.len()),
    }
}

/// Weight bound of the partial set and value floor outside its neighbourhood.
fn partial_set_inequalities(instances: &[DetInstance]) -> Verdict {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (k, inst) in instances.iter().enumerate() {
        let g = &inst.g;
        let a = int(u64::from(inst.alpha));
        let eps = inst.eps.rational();
        let det_lambda =
            BigRational::one() / (int(2 * u64::from(inst.alpha) + 1) * (BigRational::one() + &eps));
        let quarter = ratio(1, 4);
        let rand_lambda = &quarter / (&a + BigRational::one());
        for (eps, lambda) in [(eps, det_lambda), (quarter, rand_lambda)] {
            checked += 1;
            let p = partial_dominating_set(g, &eps, &lambda).unwrap();
            let values = p.packing.values();
            let tau = tau_of(g);
            let near = neighborhood_of(g, &p.set);
            let mass: BigRational = (0..g.n())
                .filter(|&v| near[v])
                .map(|v| values[v].clone())
                .sum();
            let slack = BigRational::one() / (BigRational::one() + &eps)
                - &lambda * (&a + BigRational::one());
            if int(g.set_weight(&p.set)) * slack > &a * mass {
                bad.push(format!("#{k} λ={lambda}: weight bound"));
            }
            if let Some(v) = (0..g.n()).find(|&v| !near[v] && values[v] < &lambda * int(tau[v])) {
                bad.push(format!("#{k} λ={lambda}: node {v} below λτ"));
            }
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!(
            "{checked} partial sets, both inequalities hold exactly{}",
            failures(&bad)
        ),
    )
}

fn unit_variants(ledger: &mut Ledger) -> Verdict {
    let mut bad = Vec::new();
    let mut count = 0;
    let mut widest_orientation = (0u32, 0u32);
    for alpha in 1..=3u32 {
        for eps in EPS_GRID {
            for s in 0..6u64 {
                let n = 2 + ((s as usize * 5 + alpha as usize * 3) % 16);
                let g = generate_bounded_arboricity(n, alpha, 1, 7000 + s * 31 + u64::from(alpha))
                    .unwrap();
                let opt = opt(&g);
                let e = eps.rational();
                let det = det_bound(alpha, eps) * int(opt);
                let label = format!("unit n={n} α={alpha} ε={e} s={s}");
                let runs = [
                    (
                        "unweighted",
                        observed(&g, 1, 0, ledger, &label, |o| mds_unweighted_with(&g, &e, o)),
                    ),
                    (
                        "unknown-delta",
                        observed(&g, 1, 0, ledger, &label, |o| {
                            mds_unknown_delta_with(&g, &e, o)
                        }),
                    ),
                    (
                        "unknown-alpha",
                        observed(&g, 1, 0, ledger, &label, |o| {
                            mds_unknown_alpha_with(&g, &e, o)
                        }),
                    ),
                ];
                for (name, res) in runs {
                    let res = res.unwrap();
                    count += 1;
                    ledger.certificate(&label, &res, opt);
                    ledger.width_of(&label, &g, &res);
                    let bound = match res.orientation_out_degree {
                        Some(a2) => {
                            widest_orientation = widest_orientation.max((a2, alpha));
                            int(2 * u64::from(a2) + 1) * (int(2) + &e) * int(opt)
                        }
                        None => det.clone(),
                    };
                    if !is_dominating(&g, &res.members) || int(res.total_weight) > bound {
                        bad.push(format!("{name} {label}"));
                    }
                }
            }
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!(
            "{count} runs; unknown-α bound (2α'+1)(2+ε) with largest audited α' = {} (declared α = {}){}",
            widest_orientation.0,
            widest_orientation.1,
            failures(&bad)
        ),
    )
}

/// Per-node mean of `c_v` when extending the empty set.
fn cover_counts() -> Verdict {
    const TRIALS: u64 = 10_000;
    let mut graphs = vec![
        ("star Δ=4", generate_star(4)),
        ("star Δ=8", generate_star(8)),
    ];
    for (n, s) in [(8usize, 11u64), (10, 12), (12, 13)] {
        graphs.push(("α=2", generate_bounded_arboricity(n, 2, 8, s).unwrap()));
    }
    let mut bad = Vec::new();
    let mut tightest = f64::NEG_INFINITY;
    for (name, g) in &graphs {
        let base = g.max_degree() as u64 + 1;
        let tau = tau_of(g);
        let packing = PackingAssignment {
            eps: ratio(1, 2),
            gamma: int(1),
            entries: tau.iter().map(|&t| PackingEntry::new(t, base)).collect(),
        };
        let lambda = ratio(1, base as i64);
        for gamma in [int(2), ratio(3, 2)] {
            let mut sums = vec![vec![0.0f64; 0]; g.n()];
            for trial in 0..TRIALS {
                let e = extend_randomized(g, &[], &packing, &lambda, &gamma, trial).unwrap();
                for (v, &c) in e.tally.counts.iter().enumerate() {
                    sums[v].push(f64::from(c));
                }
            }
            let limit = to_f64(&(&gamma + BigRational::one()));
            for (v, xs) in sums.iter().enumerate() {
                let (mean, std) = mean_std(xs);
                let allowed = limit + SIGMAS * std / (TRIALS as f64).sqrt();
                tightest = tightest.max(mean - allowed);
                if mean > allowed {
                    bad.push(format!(
                        "{name} n={} γ={gamma} node {v}: mean {mean:.3} > {allowed:.3}",
                        g.n()
                    ));
                }
            }
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!(
            "{} graphs × γ∈{{2,3/2}} × {TRIALS} trials, mean c_v <= γ+1+3σ/√N, largest mean-minus-allowance {tightest:.3}{}",
            graphs.len(),
            failures(&bad)
        ),
    )
}

/// Smallest `g` in `{2, 3, ...}` with `g^{2t} >= α`; at least 2.
fn integer_gamma(alpha: u32, t: u32) -> u64 {
    let mut g = 2u64;
    while g.pow(2 * t) < u64::from(alpha) {
        g += 1;
    }
    g
}

fn randomized_arboricity(ledger: &mut Ledger) -> Verdict {
    const TRIALS: u64 = 500;
    let alpha = 3u32;
    let mut bad = Vec::new();
    let mut lines = Vec::new();
    for (n, s) in [(10usize, 21u64), (13, 22), (16, 23)] {
        let g = generate_bounded_arboricity(n, alpha, 8, s).unwrap();
        let opt = opt(&g);
        for t in 1..=2u32 {
            // α = 3 needs no root above 2
            let gamma = integer_gamma(alpha, t);
            assert_eq!(gamma, 2);
            let eps = ratio(1, 4 * i64::from(t));
            let a = int(u64::from(alpha));
            let lambda = &eps / (&a + BigRational::one());
            let mut phases = 0u32;
            while int(gamma.pow(phases)) < lambda.recip() {
                phases += 1;
            }
            let slack = BigRational::one() / (BigRational::one() + &eps)
                - &lambda * (&a + BigRational::one());
            let factor = &a / slack + int(gamma * (gamma + 1) * u64::from(phases.max(1)));
            let det_part = &a + &a / int(u64::from(t));
            let mut weights = Vec::new();
            for trial in 0..TRIALS {
                let label = format!("rand n={n} t={t} trial {trial}");
                let res = if trial < 20 {
                    observed(&g, 1, trial, ledger, &label, |o| {
                        mds_randomized_with(&g, t, o)
                    })
                } else {
                    mds_randomized_with(&g, t, &mut RunOptions::seeded(trial))
                }
                .unwrap();
                ledger.certificate(&label, &res, opt);
                ledger.width_of(&label, &g, &res);
                if !is_dominating(&g, &res.members) {
                    bad.push(format!("{label}: not dominating"));
                }
                if int(g.set_weight(&res.partial)) > &det_part * int(opt) {
                    bad.push(format!("{label}: partial set above (α+α/t)·OPT"));
                }
                weights.push(res.total_weight as f64);
            }
            let (mean, std) = mean_std(&weights);
            let allowed = to_f64(&factor) * opt as f64 + SIGMAS * std / (TRIALS as f64).sqrt();
            if mean > allowed {
                bad.push(format!("n={n} t={t}: mean {mean:.2} > {allowed:.2}"));
            }
            lines.push(format!(
                "n={n} t={t} mean/OPT {:.2} vs {:.2}",
                mean / opt as f64,
                to_f64(&factor)
            ));
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!(
            "{TRIALS} trials each: {}{}",
            lines.join(", "),
            failures(&bad)
        ),
    )
}

fn general_algorithm(ledger: &mut Ledger) -> Verdict {
    const TRIALS: u64 = 500;
    const ROUND_CONSTANT: u32 = 16;
    let graphs = [
        gnp(12, 1, 3, 31),
        gnp(16, 1, 2, 32),
        generate_bounded_arboricity(14, 2, 8, 33).unwrap(),
    ];
    let mut bad = Vec::new();
    let mut lines = Vec::new();
    let mut max_rounds = [0u32; 2];
    for g in &graphs {
        let delta = g.max_degree();
        assert!(delta <= 16);
        let opt = opt(g);
        for k in 1..=2u32 {
            let root = (delta as f64).powf(1.0 / f64::from(k));
            let factor = root * (root + 1.0) * f64::from(k + 1);
            let mut weights = Vec::new();
            for trial in 0..TRIALS {
                let label = format!("general n={} k={k} trial {trial}", g.n());
                let res = if trial < 20 {
                    observed(g, 0, trial, ledger, &label, |o| mds_general_with(g, k, o))
                } else {
                    mds_general_with(g, k, &mut RunOptions::seeded(trial))
                }
                .unwrap();
                ledger.width_of(&label, g, &res);
                if !is_dominating(g, &res.members) {
                    bad.push(format!("{label}: not dominating"));
                }
                if res.rounds > ROUND_CONSTANT * k * k {
                    bad.push(format!("{label}: {} rounds", res.rounds));
                }
                let slot = &mut max_rounds[k as usize - 1];
                *slot = (*slot).max(res.rounds);
                weights.push(res.total_weight as f64);
            }
            let (mean, std) = mean_std(&weights);
            let allowed = factor * opt as f64 + SIGMAS * std / (TRIALS as f64).sqrt();
            if mean > allowed {
                bad.push(format!("n={} k={k}: mean {mean:.2} > {allowed:.2}", g.n()));
            }
            lines.push(format!(
                "Δ={delta} k={k} mean/OPT {:.2} vs {factor:.2}",
                mean / opt as f64
            ));
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!(
            "{TRIALS} trials each: {}; rounds <= {ROUND_CONSTANT}k², max {} (k=1) and {} (k=2){}",
            lines.join(", "),
            max_rounds[0],
            max_rounds[1],
            failures(&bad)
        ),
    )
}

fn trees(ledger: &mut Ledger) -> Verdict {
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for s in 0..100u64 {
        let n = 1 + (s as usize * 13) % 20;
        let g = random_tree(n, 500 + s);
        let res = tree_mds(&g).unwrap();
        ledger.width_of(&format!("tree #{s}"), &g, &res);
        let opt = opt(&g);
        worst = worst.max(res.total_weight as f64 / opt as f64);
        if !is_dominating(&g, &res.members) || res.total_weight > 3 * opt {
            bad.push(format!("tree #{s} n={n}"));
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!(
            "100 trees, weight <= 3·OPT, worst ratio {worst:.2}{}",
            failures(&bad)
        ),
    )
}

fn random_dominating_set(g: &WeightedGraph, seed: u64) -> Vec<NodeId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set: Vec<NodeId> = (0..g.n()).filter(|_| rng.random_ratio(1, 4)).collect();
    let mut covered = neighborhood_of(g, &set);
    for v in 0..g.n() {
        if !covered[v] {
            let pick = *g.neighbors(v).first().unwrap_or(&v);
            set.push(pick);
            covered[pick] = true;
            for &u in g.neighbors(pick) {
                covered[u] = true;
            }
        }
    }
    set.sort_unstable();
    set.dedup();
    set
}

fn lower_bound_family(ledger: &mut Ledger) -> Verdict {
    let bases = [
        ("K2", complete(2)),
        ("K3", complete(3)),
        ("K4", complete(4)),
        ("C5", cycle(5)),
        ("Petersen", petersen()),
    ];
    let mut bad = Vec::new();
    for (name, base) in &bases {
        let (n, m, d) = (base.n(), base.m(), base.max_degree());
        let h = build_lower_bound_graph(base).unwrap();
        let hg = &h.graph;
        if hg.n() != d * d * (n + m) + n || hg.m() != d * d * (2 * m + n) {
            bad.push(format!("{name}: {} nodes, {} edges", hg.n(), hg.m()));
        }
        if exact_orientation(hg, 2).is_err() {
            bad.push(format!("{name}: no orientation with out-degree 2"));
        }
        if hg.max_degree() != d * d {
            bad.push(format!(
                "{name}: max degree {} but Δ² = {}",
                hg.max_degree(),
                d * d
            ));
        }
        let det = mds_deterministic_with(hg, &ratio(1, 2), &mut RunOptions::default()).unwrap();
        ledger.width_of(&format!("lower-bound {name}"), hg, &det);
        let mut sets = vec![det.members, (0..hg.n()).collect()];
        sets.extend((0..5).map(|s| random_dominating_set(hg, s)));
        for set in &sets {
            assert!(is_dominating(hg, set));
            let y = ds_to_fractional_vc(&h, set).unwrap();
            if y.violation(base).is_some() || !y.in_unit_range() {
                bad.push(format!("{name}: converted cover infeasible"));
            }
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!(
            "K2, K3, K4, C5, Petersen: sizes, out-degree-2 orientation, max degree Δ², cover conversion{}",
            failures(&bad)
        ),
    )
}

fn reproducible_csv() -> Verdict {
    let configs = [
        serde_json::json!({
            "generator": {"family": "arboricity", "n": 14, "alpha": 2, "weight_max": 8},
            "algorithm": {"name": "det", "eps": "1/10"},
            "seeds": {"start": 0, "end": 20},
        }),
        serde_json::json!({
            "generator": {"family": "arboricity", "n": 12, "alpha": 3, "weight_max": 8},
            "algorithm": {"name": "rand", "t": 2},
            "seeds": {"start": 5, "end": 9},
            "trials": 10,
        }),
    ];
    let mut bad = Vec::new();
    let mut bytes = 0;
    for (k, json) in configs.iter().enumerate() {
        let config: ExperimentConfig = serde_json::from_value(json.clone()).unwrap();
        let first = rows_to_csv(&run_experiment(&config).unwrap()).unwrap();
        let second = rows_to_csv(&run_experiment(&config).unwrap()).unwrap();
        bytes += first.len();
        if first != second {
            bad.push(format!("config {k}"));
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!(
            "2 configs rerun, {bytes} bytes byte-identical{}",
            failures(&bad)
        ),
    )
}

fn main() -> ExitCode {
    let mut ledger = Ledger::default();
    let instances = det_instances();
    let (bound, iterations) = deterministic_sweep(&instances, &mut ledger);
    let mut verdicts = vec![
        ("deterministic approximation", bound),
        ("partial set inequalities", partial_set_inequalities(&instances)),
    ];
    let unit = unit_variants(&mut ledger);
    let covers = cover_counts();
    let rand = randomized_arboricity(&mut ledger);
    let general = general_algorithm(&mut ledger);
    let tree = trees(&mut ledger);
    let lb = lower_bound_family(&mut ledger);
    let packing = Verdict::new(
        ledger.packing_failures.is_empty(),
        format!(
            "{} observed runs feasible after every round, certificate totals <= OPT{}",
            ledger.runs,
            failures(&ledger.packing_failures)
        ),
    );
    let width = Verdict::new(
        ledger.width_failures.is_empty(),
        format!(
            "widest message {} bits against a budget of {}{}",
            ledger.widest.0,
            ledger.widest.1,
            failures(&ledger.width_failures)
        ),
    );
    verdicts.extend([
        ("packing feasibility", packing),
        ("iteration count and rounds", iterations),
        ("unit-weight variants", unit),
        ("cover counts", covers),
        ("bounded-arboricity randomized", rand),
        ("general randomized", general),
        ("trees", tree),
        ("lower-bound family", lb),
        ("message width", width),
        ("reproducible output", reproducible_csv()),
    ]);

    let mut all = true;
    for (k, (name, v)) in verdicts.iter().enumerate() {
        all &= v.passed;
        let tag = if v.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name}: {}", k + 1, v.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
