#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};
use std::path::Path;

use rand::Rng;
use tstar_core::ltl::{parse_ltl, translate_to_buchi, BuchiAutomaton};
use tstar_core::workspace::{load_workspace, GridWorkspace, TransitionSystem, WorkspaceDocument};
use tstar_core::MoveCost;

pub const GATHER_UPLOAD: &str = "[](<>p1 && <>p2 && <>p3) && [](<>p4 || <>p5) \
    && []((p4 || p5) -> X((!p4 && !p5) U (p1 || p2 || p3)))";

pub fn alternating_gather_upload() -> String {
    format!("{GATHER_UPLOAD} && []((p1 || p2 || p3) -> X((!p1 && !p2 && !p3) U (p4 || p5)))")
}

pub fn fixture(name: &str) -> GridWorkspace {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    load_workspace(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn automaton(query: &str) -> BuchiAutomaton {
    translate_to_buchi(&parse_ltl(query).unwrap()).unwrap()
}

/// Plain Dijkstra over the grid, skipping masked cells other than the
/// endpoints.
pub fn masked_dijkstra<T: TransitionSystem>(
    ts: &T,
    masked: impl Fn(usize) -> bool,
    a: usize,
    b: usize,
) -> Option<MoveCost> {
    let mut dist = vec![MoveCost::INFINITY; ts.state_count()];
    let mut heap = BinaryHeap::new();
    dist[a] = MoveCost::ZERO;
    heap.push(Reverse((MoveCost::ZERO, a)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if u == b {
            return Some(d);
        }
        if d > dist[u] {
            continue;
        }
        ts.for_each_successor(u, |n, c| {
            if (masked(n) && n != b) || d + c >= dist[n] {
                return;
            }
            dist[n] = d + c;
            heap.push(Reverse((d + c, n)));
        });
    }
    None
}

/// Random grid with a few labeled regions of 1-3 cells; propositions are
/// drawn from `props`.
pub fn random_workspace(rng: &mut impl Rng, props: &[&str]) -> GridWorkspace {
    let w = rng.gen_range(8..=20u32);
    let h = rng.gen_range(8..=20u32);
    let connectivity = if rng.gen_bool(0.5) { 4 } else { 8 };
    let density = rng.gen_range(0.0..0.25);
    let mut taken = HashSet::new();
    let start = (rng.gen_range(0..w), rng.gen_range(0..h));
    taken.insert(start);
    let mut labels: BTreeMap<String, Vec<Vec<u32>>> = BTreeMap::new();
    let regions = rng.gen_range(2..=4usize).max(props.len().min(5));
    for r in 0..regions {
        let prop = props[r % props.len()];
        let size = rng.gen_range(1..=3);
        let (mut x, mut y) = (rng.gen_range(0..w), rng.gen_range(0..h));
        for _ in 0..size {
            if taken.insert((x, y)) {
                labels.entry(prop.to_string()).or_default().push(vec![x, y]);
            }
            x = (x + 1).min(w - 1);
            if rng.gen_bool(0.5) {
                y = (y + 1).min(h - 1);
            }
        }
    }
    let target = (density * (w * h) as f64) as usize;
    let mut obstacles = Vec::new();
    let mut attempts = 0;
    while obstacles.len() < target && attempts < 10 * target {
        attempts += 1;
        let c = (rng.gen_range(0..w), rng.gen_range(0..h));
        if taken.insert(c) {
            obstacles.push(vec![c.0, c.1]);
        }
    }
    let doc = WorkspaceDocument {
        dims: vec![w, h],
        connectivity,
        start: vec![start.0, start.1],
        obstacles,
        labels,
        stay: false,
    };
    GridWorkspace::from_document(&doc).unwrap()
}
