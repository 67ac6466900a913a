//! Weighted-graph abstraction shared by the product and reduced graphs, and
//! the Dijkstra searches run over it.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::cost::MoveCost;

use super::SearchStats;

const NONE: usize = usize::MAX;

/// A directed graph whose vertices pair a transition-system state with an
/// automaton state.
pub trait WeightedGraph {
    fn vertex_count(&self) -> usize;

    fn edge_count(&self) -> usize;

    /// Calls `f(target, weight)` for every outgoing edge of `v`.
    fn for_each_edge<F: FnMut(usize, MoveCost)>(&self, v: usize, f: F);

    /// `(transition-system state, automaton state)` of a vertex.
    fn vertex_key(&self, v: usize) -> (usize, usize);

    fn vertex_of(&self, key: (usize, usize)) -> Option<usize>;

    fn edge_weight(&self, from: usize, to: usize) -> Option<MoveCost> {
        let mut found = None;
        self.for_each_edge(from, |t, w| {
            if t == to && found.is_none() {
                found = Some(w);
            }
        });
        found
    }
}

/// A vertex sequence; position `i` is time step `i` of the run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Run {
    pub vertices: Vec<usize>,
}

impl Run {
    pub fn new(vertices: Vec<usize>) -> Self {
        Run { vertices }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn keys<G: WeightedGraph>(&self, graph: &G) -> Vec<(usize, usize)> {
        self.vertices.iter().map(|&v| graph.vertex_key(v)).collect()
    }
}

/// Sum of the run's edge weights; `None` if some step is not an edge.
pub fn run_cost<G: WeightedGraph>(run: &Run, graph: &G) -> Option<MoveCost> {
    run.edges().map(|(a, b)| graph.edge_weight(a, b)).sum()
}

/// Single-source distances and predecessors from `source`.
pub fn dijkstra_all<G: WeightedGraph>(
    graph: &G,
    source: usize,
    stats: &mut SearchStats,
) -> (Vec<MoveCost>, Vec<usize>) {
    stats.dijkstra_calls += 1;
    let n = graph.vertex_count();
    let mut dist = vec![MoveCost::INFINITY; n];
    let mut pred = vec![NONE; n];
    let mut heap = BinaryHeap::new();
    dist[source] = MoveCost::ZERO;
    heap.push(Reverse((MoveCost::ZERO, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        stats.expansions += 1;
        graph.for_each_edge(u, |x, w| {
            if !w.is_finite() {
                return;
            }
            let nd = d + w;
            if nd < dist[x] {
                dist[x] = nd;
                pred[x] = u;
                heap.push(Reverse((nd, x)));
            }
        });
    }
    (dist, pred)
}

pub(crate) fn unwind(pred: &[usize], source: usize, target: usize) -> Vec<usize> {
    let mut path = vec![target];
    let mut v = target;
    while v != source {
        v = pred[v];
        path.push(v);
    }
    path.reverse();
    path
}

/// Shortest path `source → target` ignoring `+∞` edges.
pub fn dijkstra_shortest_path<G: WeightedGraph>(
    graph: &G,
    source: usize,
    target: usize,
    stats: &mut SearchStats,
) -> Option<(Run, MoveCost)> {
    if source == target {
        return Some((Run::new(vec![source]), MoveCost::ZERO));
    }
    stats.dijkstra_calls += 1;
    let n = graph.vertex_count();
    let mut dist = vec![MoveCost::INFINITY; n];
    let mut pred = vec![NONE; n];
    let mut heap = BinaryHeap::new();
    dist[source] = MoveCost::ZERO;
    heap.push(Reverse((MoveCost::ZERO, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        if u == target {
            return Some((Run::new(unwind(&pred, source, target)), d));
        }
        stats.expansions += 1;
        graph.for_each_edge(u, |x, w| {
            if !w.is_finite() {
                return;
            }
            let nd = d + w;
            if nd < dist[x] {
                dist[x] = nd;
                pred[x] = u;
                heap.push(Reverse((nd, x)));
            }
        });
    }
    None
}

/// Minimum-weight cycle through `f` with at least one edge.
///
/// Seeds the queue with `f`'s successors at the weight of their leading
/// edge and stops once no queued vertex can close a cheaper cycle.
pub fn dijkstra_shortest_cycle<G: WeightedGraph>(
    graph: &G,
    f: usize,
    stats: &mut SearchStats,
) -> Option<(Run, MoveCost)> {
    stats.dijkstra_calls += 1;
    let n = graph.vertex_count();
    let mut dist = vec![MoveCost::INFINITY; n];
    let mut pred = vec![NONE; n];
    let mut heap = BinaryHeap::new();
    let mut best = MoveCost::INFINITY;
    let mut closing = NONE;

    graph.for_each_edge(f, |u, w| {
        if !w.is_finite() {
            return;
        }
        if u == f {
            if w < best {
                best = w;
                closing = f;
            }
        } else if w < dist[u] {
            dist[u] = w;
            pred[u] = f;
            heap.push(Reverse((w, u)));
        }
    });
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        if d >= best {
            break;
        }
        stats.expansions += 1;
        graph.for_each_edge(u, |x, w| {
            if !w.is_finite() {
                return;
            }
            let nd = d + w;
            if x == f {
                if nd < best {
                    best = nd;
                    closing = u;
                }
            } else if nd < dist[x] {
                dist[x] = nd;
                pred[x] = u;
                heap.push(Reverse((nd, x)));
            }
        });
    }
    if closing == NONE {
        return None;
    }
    let mut vertices = if closing == f { vec![f] } else { unwind(&pred, f, closing) };
    vertices.push(f);
    Some((Run::new(vertices), best))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Adjacency-list graph for search tests.
    pub(crate) struct ListGraph {
        pub adj: Vec<Vec<(usize, MoveCost)>>,
    }

    impl WeightedGraph for ListGraph {
        fn vertex_count(&self) -> usize {
            self.adj.len()
        }
        fn edge_count(&self) -> usize {
            self.adj.iter().map(Vec::len).sum()
        }
        fn for_each_edge<F: FnMut(usize, MoveCost)>(&self, v: usize, mut f: F) {
            for &(t, w) in &self.adj[v] {
                f(t, w);
            }
        }
        fn vertex_key(&self, v: usize) -> (usize, usize) {
            (v, 0)
        }
        fn vertex_of(&self, key: (usize, usize)) -> Option<usize> {
            (key.0 < self.adj.len() && key.1 == 0).then_some(key.0)
        }
    }

    fn u(n: u64) -> MoveCost {
        MoveCost::units(n)
    }

    #[test]
    fn self_edge_is_the_cycle() {
        let g = ListGraph { adj: vec![vec![(0, u(3)), (1, u(1))], vec![(0, u(5))]] };
        let (run, cost) = dijkstra_shortest_cycle(&g, 0, &mut SearchStats::default()).unwrap();
        assert_eq!(run.vertices, vec![0, 0]);
        assert_eq!(cost, u(3));
    }

    #[test]
    fn isolated_vertex_has_no_cycle() {
        let g = ListGraph { adj: vec![vec![], vec![(0, u(1))]] };
        assert!(dijkstra_shortest_cycle(&g, 0, &mut SearchStats::default()).is_none());
    }

    #[test]
    fn infinite_edges_are_skipped() {
        let g = ListGraph {
            adj: vec![vec![(1, u(1)), (2, u(1))], vec![(0, MoveCost::INFINITY)], vec![(0, u(4))]],
        };
        let (run, cost) = dijkstra_shortest_cycle(&g, 0, &mut SearchStats::default()).unwrap();
        assert_eq!(run.vertices, vec![0, 2, 0]);
        assert_eq!(cost, u(5));
        assert_eq!(run_cost(&run, &g), Some(u(5)));
    }

    #[test]
    fn run_cost_of_three_step_suffix() {
        let g = ListGraph { adj: vec![vec![(1, u(1))], vec![(2, u(7))], vec![(0, u(8))]] };
        let run = Run::new(vec![0, 1, 2, 0]);
        assert_eq!(run_cost(&run, &g), Some(u(16)));
        assert_eq!(run_cost(&Run::new(vec![1]), &g), Some(MoveCost::ZERO));
        assert_eq!(run_cost(&Run::new(vec![0, 2]), &g), None);
        let inf = ListGraph { adj: vec![vec![(1, MoveCost::INFINITY)], vec![]] };
        assert_eq!(run_cost(&Run::new(vec![0, 1]), &inf), Some(MoveCost::INFINITY));
    }

    #[test]
    fn path_to_self_is_empty() {
        let g = ListGraph { adj: vec![vec![]] };
        let (run, cost) = dijkstra_shortest_path(&g, 0, 0, &mut SearchStats::default()).unwrap();
        assert!(run.is_empty());
        assert_eq!(cost, MoveCost::ZERO);
    }
}
