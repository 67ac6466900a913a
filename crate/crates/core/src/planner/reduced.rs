//! Reduced product graph with heuristic "distant" edges and lazy refinement.

use std::collections::{HashMap, HashSet, VecDeque};
use std::mem::size_of;

use crate::cost::MoveCost;
use crate::ltl::{BuchiAutomaton, LiteralClause};
use crate::workspace::TransitionSystem;

use super::astar::{astar_with, AStarBuffers};
use super::graph::{Run, WeightedGraph};
use super::labels::LabelIndex;
use super::SearchStats;

/// An edge of the reduced graph.
///
/// Edges out of states without the distant-neighbour property are single
/// moves and start out `updated`. Distant edges start with a heuristic
/// weight and get their true weight and concrete path from masked A*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedEdge {
    pub from: usize,
    pub to: usize,
    pub weight: MoveCost,
    pub updated: bool,
    /// Transition-system states along the edge, endpoints included; `None`
    /// until refined, and after refinement proves the edge impassable.
    pub path: Option<Vec<usize>>,
}

type PathCacheKey = (usize, usize, usize);

#[derive(Clone, Debug)]
pub struct ReducedGraph {
    keys: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    adjacency: Vec<Vec<u32>>,
    edges: Vec<ReducedEdge>,
    initial: usize,
    finals: Vec<usize>,
    labels: LabelIndex,
    /// Per automaton state: index into `self_loop_classes`.
    mask_class: Vec<usize>,
    self_loop_classes: Vec<Vec<LiteralClause>>,
    cache: HashMap<PathCacheKey, Option<(MoveCost, Vec<usize>)>>,
    buffers: AStarBuffers,
}

/// Builds the part of the reduced graph reachable from `(s_0, q_0)`.
pub fn build_reduced_graph<T: TransitionSystem>(ts: &T, automaton: &BuchiAutomaton) -> ReducedGraph {
    let q_count = automaton.state_count();
    let labels = LabelIndex::new(ts, automaton);
    let distant: Vec<bool> = (0..q_count).map(|q| automaton.admits_distant_neighbours(q)).collect();
    let mut self_loop_classes: Vec<Vec<LiteralClause>> = Vec::new();
    let mask_class = (0..q_count)
        .map(|q| {
            let clauses = automaton.negative_self_loops(q);
            match self_loop_classes.iter().position(|c| *c == clauses) {
                Some(i) => i,
                None => {
                    self_loop_classes.push(clauses);
                    self_loop_classes.len() - 1
                }
            }
        })
        .collect();

    let mut graph = ReducedGraph {
        keys: Vec::new(),
        index: HashMap::new(),
        adjacency: Vec::new(),
        edges: Vec::new(),
        initial: 0,
        finals: Vec::new(),
        labels,
        mask_class,
        self_loop_classes,
        cache: HashMap::new(),
        buffers: AStarBuffers::new(),
    };
    graph.intern(ts.initial_state(), automaton.initial());
    let mut queue = VecDeque::from([0usize]);
    let mut targets = HashSet::new();
    let mut successors = Vec::new();
    while let Some(v) = queue.pop_front() {
        let (s, q) = graph.keys[v];
        targets.clear();
        if distant[q] {
            for t in automaton.outgoing(q).filter(|t| !t.clause.is_negative()) {
                for i in 0..graph.labels.labeled().len() {
                    let sj = graph.labels.labeled()[i];
                    if !t.clause.satisfied_by(graph.labels.letter(sj)) {
                        continue;
                    }
                    let target = graph.intern_queued(sj, t.to, &mut queue);
                    if targets.insert(target) {
                        let weight = if sj == s { ts.min_move_cost() } else { ts.heuristic(s, sj) };
                        graph.push_edge(ReducedEdge { from: v, to: target, weight, updated: false, path: None });
                    }
                }
            }
        } else {
            successors.clear();
            ts.for_each_successor(s, |n, c| successors.push((n, c)));
            for &(n, cost) in &successors {
                let letter = graph.labels.letter(n);
                for t in automaton.outgoing(q) {
                    if !t.clause.satisfied_by(letter) {
                        continue;
                    }
                    let target = graph.intern_queued(n, t.to, &mut queue);
                    if targets.insert(target) {
                        graph.push_edge(ReducedEdge {
                            from: v,
                            to: target,
                            weight: cost,
                            updated: true,
                            path: Some(vec![s, n]),
                        });
                    }
                }
            }
        }
    }
    graph.finals = (0..graph.keys.len()).filter(|&v| automaton.is_accepting(graph.keys[v].1)).collect();
    graph
}

impl ReducedGraph {
    fn intern(&mut self, s: usize, q: usize) -> usize {
        if let Some(&v) = self.index.get(&(s, q)) {
            return v;
        }
        let v = self.keys.len();
        self.keys.push((s, q));
        self.index.insert((s, q), v);
        self.adjacency.push(Vec::new());
        v
    }

    fn intern_queued(&mut self, s: usize, q: usize, queue: &mut VecDeque<usize>) -> usize {
        let before = self.keys.len();
        let v = self.intern(s, q);
        if self.keys.len() > before {
            queue.push_back(v);
        }
        v
    }

    fn push_edge(&mut self, edge: ReducedEdge) {
        self.adjacency[edge.from].push(self.edges.len() as u32);
        self.edges.push(edge);
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    /// Vertices whose automaton state is accepting, in id order.
    pub fn finals(&self) -> &[usize] {
        &self.finals
    }

    pub fn edges(&self) -> &[ReducedEdge] {
        &self.edges
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = &ReducedEdge> + '_ {
        self.adjacency[v].iter().map(|&e| &self.edges[e as usize])
    }

    pub fn edge(&self, from: usize, to: usize) -> Option<&ReducedEdge> {
        self.edge_id(from, to).map(|e| &self.edges[e])
    }

    fn edge_id(&self, from: usize, to: usize) -> Option<usize> {
        self.adjacency[from].iter().map(|&e| e as usize).find(|&e| self.edges[e].to == to)
    }

    /// Bytes held by vertex records, edge records and refined paths.
    pub fn memory_bytes(&self) -> usize {
        let paths: usize = self.edges.iter().filter_map(|e| e.path.as_ref()).map(Vec::len).sum();
        self.keys.len() * (size_of::<(usize, usize)>() + size_of::<Vec<u32>>())
            + self.edges.len() * (size_of::<ReducedEdge>() + size_of::<u32>())
            + paths * size_of::<usize>()
    }

    /// Refines every not-yet-updated edge on `run` with masked A* and
    /// returns how many edges were refined.
    pub fn update_edges<T: TransitionSystem>(&mut self, ts: &T, run: &Run, stats: &mut SearchStats) -> usize {
        let mut updated = 0;
        for (u, v) in run.edges() {
            let Some(e) = self.edge_id(u, v) else { continue };
            if self.edges[e].updated {
                continue;
            }
            let (sa, q) = self.keys[u];
            let sb = self.keys[v].0;
            let class = self.mask_class[q];
            let refined = match self.cache.get(&(class, sa, sb)) {
                Some(hit) => hit.clone(),
                None => {
                    let clauses = &self.self_loop_classes[class];
                    let labels = &self.labels;
                    let masked = |s: usize| {
                        let letter = labels.letter(s);
                        !clauses.iter().any(|c| c.satisfied_by(letter))
                    };
                    let found = astar_with(ts, &masked, sa, sb, &mut self.buffers, stats);
                    self.cache.insert((class, sa, sb), found.clone());
                    found
                }
            };
            let edge = &mut self.edges[e];
            match refined {
                Some((cost, path)) => {
                    debug_assert!(cost >= edge.weight, "refinement lowered an edge weight");
                    edge.weight = cost;
                    edge.path = Some(path);
                }
                None => {
                    edge.weight = MoveCost::INFINITY;
                    edge.path = None;
                }
            }
            edge.updated = true;
            updated += 1;
        }
        stats.edges_updated += updated as u64;
        updated
    }
}

/// Free-function form of [`ReducedGraph::update_edges`].
pub fn update_edges<T: TransitionSystem>(
    run: &Run,
    ts: &T,
    graph: &mut ReducedGraph,
    stats: &mut SearchStats,
) -> usize {
    graph.update_edges(ts, run, stats)
}

impl WeightedGraph for ReducedGraph {
    fn vertex_count(&self) -> usize {
        self.keys.len()
    }

    fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    fn for_each_edge<F: FnMut(usize, MoveCost)>(&self, v: usize, mut f: F) {
        for &e in &self.adjacency[v] {
            let edge = &self.edges[e as usize];
            f(edge.to, edge.weight);
        }
    }

    fn vertex_key(&self, v: usize) -> (usize, usize) {
        self.keys[v]
    }

    fn vertex_of(&self, key: (usize, usize)) -> Option<usize> {
        self.index.get(&key).copied()
    }
}
