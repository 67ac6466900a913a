mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tstar_core::workspace::{load_workspace, to_ascii, to_json, Cell, GridWorkspace, TransitionSystem, WorkspaceDocument};
use tstar_core::MoveCost;

fn random_grid(seed: u64, connectivity: u32) -> GridWorkspace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let three_d = connectivity == 6 || connectivity == 26;
    let dims: Vec<u32> = if three_d {
        vec![rng.gen_range(2..7), rng.gen_range(2..7), rng.gen_range(2..5)]
    } else {
        vec![rng.gen_range(2..14), rng.gen_range(2..14)]
    };
    let cells: u32 = dims.iter().product();
    let mut obstacles = Vec::new();
    for i in 1..cells {
        if rng.gen_bool(0.25) {
            let mut rest = i;
            obstacles.push(dims.iter().map(|&d| {
                let c = rest % d;
                rest /= d;
                c
            }).collect());
        }
    }
    let doc = WorkspaceDocument {
        dims: dims.clone(),
        connectivity,
        start: vec![0; dims.len()],
        obstacles,
        labels: Default::default(),
        stay: false,
    };
    GridWorkspace::from_document(&doc).unwrap()
}

fn connectivity() -> impl Strategy<Value = u32> {
    prop_oneof![Just(4u32), Just(8), Just(6), Just(26)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moves_are_symmetric(seed in any::<u64>(), conn in connectivity()) {
        let ws = random_grid(seed, conn);
        for s in (0..ws.state_count()).filter(|&s| ws.is_state(s)) {
            ws.for_each_successor(s, |n, c| {
                let mut back = None;
                ws.for_each_successor(n, |m, d| if m == s { back = Some(d) });
                assert_eq!(back, Some(c));
            });
        }
    }

    #[test]
    fn heuristic_is_admissible_and_consistent(seed in any::<u64>(), conn in connectivity()) {
        let ws = random_grid(seed, conn);
        let states: Vec<usize> = (0..ws.state_count()).filter(|&s| ws.is_state(s)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..16 {
            let a = states[rng.gen_range(0..states.len())];
            let b = states[rng.gen_range(0..states.len())];
            let c = states[rng.gen_range(0..states.len())];
            let h = |x: usize, y: usize| ws.heuristic(ws.cell(x), ws.cell(y));
            if let Some(d) = common::masked_dijkstra(&ws, |_| false, a, b) {
                prop_assert!(h(a, b) <= d);
            }
            prop_assert!(h(a, c) <= h(a, b) + h(b, c));
            ws.for_each_successor(a, |n, cost| assert!(h(a, b) <= cost + h(n, b)));
        }
    }

    #[test]
    fn heuristic_is_exact_on_empty_grids(conn in connectivity(), ax in 0..6u32, ay in 0..6u32, az in 0..3u32,
                                         bx in 0..6u32, by in 0..6u32, bz in 0..3u32) {
        let three_d = conn == 6 || conn == 26;
        let dims = if three_d { vec![6, 6, 3] } else { vec![6, 6] };
        let doc = WorkspaceDocument {
            dims, connectivity: conn, start: vec![0; if three_d { 3 } else { 2 }],
            obstacles: vec![], labels: Default::default(), stay: false,
        };
        let ws = GridWorkspace::from_document(&doc).unwrap();
        let (a, b) = if three_d {
            (Cell::new3(ax, ay, az), Cell::new3(bx, by, bz))
        } else {
            (Cell::new(ax, ay), Cell::new(bx, by))
        };
        let exact = common::masked_dijkstra(&ws, |_| false, ws.index(a), ws.index(b)).unwrap();
        prop_assert_eq!(ws.heuristic(a, b), exact);
    }

    #[test]
    fn formats_round_trip(seed in any::<u64>(), conn in connectivity()) {
        let ws = random_grid(seed, conn);
        prop_assert_eq!(load_workspace(&to_ascii(&ws).unwrap()).unwrap().to_document(), ws.to_document());
        prop_assert_eq!(load_workspace(&to_json(&ws)).unwrap().to_document(), ws.to_document());
    }
}

#[test]
fn diagonal_heuristic_example() {
    let doc = WorkspaceDocument {
        dims: vec![8, 8],
        connectivity: 8,
        start: vec![0, 0],
        obstacles: vec![],
        labels: Default::default(),
        stay: false,
    };
    let ws = GridWorkspace::from_document(&doc).unwrap();
    let h = ws.heuristic(Cell::new(0, 0), Cell::new(5, 7));
    assert_eq!(h, MoveCost::from_half_units(19));
    assert_eq!(h.to_string(), "9.5");
    assert_eq!(Some(h), common::masked_dijkstra(&ws, |_| false, 0, ws.index(Cell::new(5, 7))));
}

#[test]
fn running_example_labels_and_heuristic() {
    let ws = common::fixture("running_example.txt");
    assert_eq!(ws.label_of(Cell::new(6, 7)), ["p1".to_string()].into());
    assert_eq!(ws.heuristic(Cell::new(7, 1), Cell::new(6, 7)), MoveCost::units(7));
}
