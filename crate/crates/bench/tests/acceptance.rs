//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::{BTreeSet, BinaryHeap};
use std::cmp::Reverse;
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tstar_bench::compare::compare;
use tstar_bench::generate::{generate_workspace, GenerateSpec};
use tstar_bench::queries::{ALTERNATING_GATHER_UPLOAD, GATHER_UPLOAD};
use tstar_bench::stats::spearman;
use tstar_bench::sweep::{run_sweep, Axis, SweepSpec};
use tstar_core::ltl::{eval_ltl_on_lasso, lasso_accepts, parse_ltl, translate_to_buchi, BuchiAutomaton, Formula, LassoWord};
use tstar_core::planner::{baseline_plan, PlanError, PlanResult, TStarPlanner, WeightedGraph};
use tstar_core::workspace::{GridWorkspace, TransitionSystem, WorkspaceDocument};
use tstar_core::MoveCost;

const QUERIES: [&str; 5] = [
    "[]<>p1",
    "[](<>p1 && <>p2)",
    "[](<>p1 && <>p2 && !p3)",
    GATHER_UPLOAD,
    ALTERNATING_GATHER_UPLOAD,
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn translate(text: &str) -> BuchiAutomaton {
    translate_to_buchi(&parse_ltl(text).unwrap()).unwrap()
}

/// Counters gathered from T* runs for the update-budget criterion.
#[derive(Default)]
struct UpdateAudit {
    runs: usize,
    over_budget: usize,
    suffix_edges_not_updated: usize,
}

impl UpdateAudit {
    fn run(&mut self, ws: &GridWorkspace, automaton: &BuchiAutomaton) -> Result<PlanResult, PlanError> {
        let mut planner = TStarPlanner::new(ws, automaton);
        let result = planner.plan();
        self.runs += 1;
        let graph = planner.graph();
        if planner.stats().edges_updated as usize > graph.edge_count() {
            self.over_budget += 1;
        }
        if let Ok(plan) = &result {
            for pair in plan.suffix_run.windows(2) {
                let (a, b) = (graph.vertex_of(pair[0]).unwrap(), graph.vertex_of(pair[1]).unwrap());
                if !graph.edge(a, b).is_some_and(|e| e.updated) {
                    self.suffix_edges_not_updated += 1;
                }
            }
        }
        result
    }
}

fn small_instance(rng: &mut ChaCha8Rng) -> GridWorkspace {
    let mut spec = GenerateSpec::gather_upload(rng.gen_range(8..=20), rng.gen_range(0.0..0.25));
    spec.dims[1] = rng.gen_range(8..=20);
    spec.connectivity = *[4, 8].choose(rng).unwrap();
    spec.margin = 0;
    generate_workspace(&spec, rng).unwrap()
}

/// Criteria 1 and 2 over the same plans.
fn oracle_equivalence(audit: &mut UpdateAudit) -> (Outcome, Outcome) {
    let automata: Vec<BuchiAutomaton> = QUERIES.iter().map(|q| translate(q)).collect();
    let formulas: Vec<Formula> = QUERIES.iter().map(|q| parse_ltl(q).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let start = Instant::now();
    let (mut plans, mut unsat, mut mismatches, mut rejected) = (0, 0, 0, 0);
    let instances = 100;
    for _ in 0..instances {
        let ws = small_instance(&mut rng);
        for (automaton, formula) in automata.iter().zip(&formulas) {
            let base = baseline_plan(&ws, automaton);
            let fast = audit.run(&ws, automaton);
            match (&base, &fast) {
                (Ok(b), Ok(t)) => {
                    plans += 1;
                    if b.suffix_cost.half_units() != t.suffix_cost.half_units() {
                        mismatches += 1;
                    }
                    for plan in [b, t] {
                        let word = plan.lasso_word(&ws);
                        if !lasso_accepts(automaton, &word) || !eval_ltl_on_lasso(formula, &word) {
                            rejected += 1;
                        }
                    }
                }
                (Err(PlanError::Unsatisfiable), Err(PlanError::Unsatisfiable)) => unsat += 1,
                _ => mismatches += 1,
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let equivalence = outcome(
        mismatches == 0 && secs < 60.0,
        format!(
            "{instances} instances x {} queries: {plans} plans, {unsat} unsatisfiable together, {mismatches} mismatches, {secs:.1} s",
            QUERIES.len()
        ),
    );
    let language = outcome(rejected == 0, format!("{} plans checked, {rejected} rejected", 2 * plans));
    (equivalence, language)
}

const PROPS: [&str; 3] = ["p1", "p2", "p3"];

fn random_formula(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..8) {
            0 => Formula::True,
            1 => Formula::False,
            i => Formula::atom(PROPS[i % 3]),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_formula(rng, depth - 1);
    match rng.gen_range(0..9) {
        0 => Formula::not(sub(rng)),
        1 => Formula::next(sub(rng)),
        2 => Formula::always(sub(rng)),
        3 => Formula::eventually(sub(rng)),
        4 => Formula::and(vec![sub(rng), sub(rng)]),
        5 => Formula::or(vec![sub(rng), sub(rng)]),
        6 => Formula::until(sub(rng), sub(rng)),
        7 => Formula::release(sub(rng), sub(rng)),
        _ => Formula::implies(sub(rng), sub(rng)),
    }
}

fn random_letter(rng: &mut ChaCha8Rng) -> BTreeSet<String> {
    PROPS.iter().filter(|_| rng.gen_bool(0.5)).map(|p| p.to_string()).collect()
}

fn random_lasso(rng: &mut ChaCha8Rng) -> LassoWord {
    let prefix = (0..rng.gen_range(0..=4)).map(|_| random_letter(rng)).collect();
    let period = (0..rng.gen_range(1..=4)).map(|_| random_letter(rng)).collect();
    LassoWord::new(prefix, period).unwrap()
}

fn translation_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let start = Instant::now();
    let mut disagreements = 0;
    for _ in 0..500 {
        let f = random_formula(&mut rng, 4);
        let automaton = translate_to_buchi(&f).unwrap();
        for _ in 0..20 {
            let w = random_lasso(&mut rng);
            if lasso_accepts(&automaton, &w) != eval_ltl_on_lasso(&f, &w) {
                disagreements += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(disagreements == 0 && secs < 30.0, format!("10000 checks, {disagreements} disagreements, {secs:.1} s"))
}

/// Exact move-cost distances from `source` by Dijkstra over the successor relation.
fn distances(ws: &GridWorkspace, source: usize) -> Vec<MoveCost> {
    let mut dist = vec![MoveCost::INFINITY; ws.state_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = MoveCost::ZERO;
    heap.push(Reverse((MoveCost::ZERO, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        ws.for_each_successor(u, |v, w| {
            if d + w < dist[v] {
                dist[v] = d + w;
                heap.push(Reverse((d + w, v)));
            }
        });
    }
    dist
}

fn grid(dims: &[u32], connectivity: u32, density: f64, rng: &mut ChaCha8Rng) -> GridWorkspace {
    let cells: Vec<Vec<u32>> = if dims.len() == 2 {
        (0..dims[1]).flat_map(|y| (0..dims[0]).map(move |x| vec![x, y])).collect()
    } else {
        (0..dims[2])
            .flat_map(|z| (0..dims[1]).flat_map(move |y| (0..dims[0]).map(move |x| vec![x, y, z])))
            .collect()
    };
    let start = cells[0].clone();
    let obstacles = cells[1..].iter().filter(|_| rng.gen_bool(density)).cloned().collect();
    let doc = WorkspaceDocument { dims: dims.to_vec(), connectivity, start, obstacles, labels: Default::default(), stay: false };
    GridWorkspace::from_document(&doc).unwrap()
}

fn heuristic_admissibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let (mut violations, mut inexact, mut checked) = (0, 0, 0);
    for (connectivity, dims) in [(4, vec![30, 30]), (8, vec![30, 30]), (6, vec![10, 10, 10]), (26, vec![10, 10, 10])] {
        let cluttered = grid(&dims, connectivity, 0.3, &mut rng);
        let empty = grid(&dims, connectivity, 0.0, &mut rng);
        for ws in [&cluttered, &empty] {
            let free: Vec<usize> = (0..ws.state_count()).filter(|&s| ws.is_state(s)).collect();
            for _ in 0..1000 {
                let (a, b) = (*free.choose(&mut rng).unwrap(), *free.choose(&mut rng).unwrap());
                let exact = distances(ws, a)[b];
                let h = TransitionSystem::heuristic(ws, a, b);
                checked += 1;
                if exact.is_finite() && h > exact {
                    violations += 1;
                }
                if std::ptr::eq(ws, &empty) && h != exact {
                    inexact += 1;
                }
            }
        }
    }
    outcome(
        violations == 0 && inexact == 0,
        format!("{checked} pairs over 4/8/6/26-connectivity: {violations} inadmissible, {inexact} inexact on empty grids"),
    )
}

/// A satisfiable 100x100 gather-upload instance at 20% density.
fn workspace_one(automaton: &BuchiAutomaton) -> GridWorkspace {
    for seed in 0.. {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005 + seed);
        let ws = generate_workspace(&GenerateSpec::gather_upload(100, 0.2), &mut rng).unwrap();
        if baseline_plan(&ws, automaton).is_ok() {
            return ws;
        }
    }
    unreachable!()
}

fn speedup_and_memory(automaton: &BuchiAutomaton, audit: &mut UpdateAudit) -> (Outcome, Outcome) {
    let ws = workspace_one(automaton);
    let cmp = compare(&ws, automaton, "workspace-1", "phi_d", 5).expect("planners agree");
    audit.run(&ws, automaton).unwrap();
    let (tb, tt) = (cmp.baseline.seconds.unwrap(), cmp.tstar.seconds.unwrap());
    let speed = outcome(
        tt <= 0.5 * tb,
        format!("baseline {tb:.4} s, T* {tt:.4} s, ratio {:.3} (speedup {:.1}x)", tt / tb, tb / tt),
    );

    let (product_mem, reduced_mem) = (cmp.baseline.memory_bytes, cmp.tstar.memory_bytes);
    let mut spec = SweepSpec::new(Axis::WorkspaceSize, vec![100, 200, 300]);
    spec.seed = 0x5eed_0006;
    let mut counts = Vec::new();
    let mut product_counts = Vec::new();
    'sizes: for attempt in 0..20 {
        counts.clear();
        product_counts.clear();
        for i in 0..3 {
            let ws = spec.instance(i, 0, attempt).unwrap();
            match (audit.run(&ws, automaton), baseline_plan(&ws, automaton)) {
                (Ok(t), Ok(b)) => {
                    counts.push(t.graph.vertices);
                    product_counts.push(b.graph.vertices);
                }
                _ => continue 'sizes,
            }
        }
        break;
    }
    let constant = counts.len() == 3 && counts.windows(2).all(|w| w[0] == w[1]);
    let memory = outcome(
        reduced_mem < product_mem && constant,
        format!(
            "100x100 memory: reduced {reduced_mem} B < product {product_mem} B; reduced vertices at 100/200/300: {counts:?} (product {product_counts:?})"
        ),
    );
    (speed, memory)
}

fn density_trend(automaton: &BuchiAutomaton) -> Outcome {
    let mut spec = SweepSpec::new(Axis::Density, (1..=8).map(|i| 5 * i).collect());
    spec.reps = 5;
    spec.seed = 0x5eed_0008;
    spec.timing_reps = 3;
    let rows = run_sweep(&spec, automaton, "phi_d").expect("sweep runs");
    let points: Vec<(f64, f64)> = rows.iter().filter_map(|r| Some((r.value as f64, r.speedup?))).collect();
    let skipped = rows.iter().filter(|r| r.status == "skipped").count();
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().copied().unzip();
    let rho = spearman(&xs, &ys);
    let mut means = Vec::new();
    for &d in &spec.values {
        let s: Vec<f64> = points.iter().filter(|p| p.0 == d as f64).map(|p| p.1).collect();
        means.push(format!("{d}%:{:.0}", s.iter().sum::<f64>() / s.len().max(1) as f64));
    }
    outcome(
        rho.is_some_and(|r| r < 0.0),
        format!("{} rows, {skipped} skipped, spearman {rho:.3?}, mean speedups {}", points.len(), means.join(" ")),
    )
}

fn main() -> ExitCode {
    let phi_d = translate(ALTERNATING_GATHER_UPLOAD);
    let mut audit = UpdateAudit::default();

    let (c1, c2) = oracle_equivalence(&mut audit);
    let c3 = translation_soundness();
    let c4 = heuristic_admissibility();
    let (c5, c6) = speedup_and_memory(&phi_d, &mut audit);
    let c7 = outcome(
        audit.over_budget == 0 && audit.suffix_edges_not_updated == 0,
        format!(
            "{} T* runs: {} over the |E_r| update budget, {} suffix edges left unrefined",
            audit.runs, audit.over_budget, audit.suffix_edges_not_updated
        ),
    );
    let c8 = density_trend(&phi_d);

    let names = [
        "suffix costs match baseline",
        "plans satisfy their query",
        "translation agrees with semantics",
        "heuristic admissible and exact",
        "T* at most half baseline time",
        "reduced graph smaller and size-independent",
        "update budget and refined suffixes",
        "speedup falls with obstacle density",
    ];
    let results = [c1, c2, c3, c4, c5, c6, c7, c8];
    for (i, (name, r)) in names.iter().zip(&results).enumerate() {
        println!("{} criterion {}: {name}: {}", if r.pass { "PASS" } else { "FAIL" }, i + 1, r.detail);
    }
    if results.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
