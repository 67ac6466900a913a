use std::collections::{BTreeMap, BTreeSet};

use crate::cost::MoveCost;

use super::{TransitionSystem, WorkspaceDocument, WorkspaceError};

/// Integer grid coordinates; `z` is always 0 in planar workspaces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Cell {
    pub const fn new(x: u32, y: u32) -> Self {
        Cell { x, y, z: 0 }
    }

    pub const fn new3(x: u32, y: u32, z: u32) -> Self {
        Cell { x, y, z }
    }
}

/// Neighbourhood shape of one move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connectivity {
    Four,
    Eight,
    Six,
    TwentySix,
}

impl Connectivity {
    pub fn from_count(n: u32) -> Result<Self, WorkspaceError> {
        match n {
            4 => Ok(Connectivity::Four),
            8 => Ok(Connectivity::Eight),
            6 => Ok(Connectivity::Six),
            26 => Ok(Connectivity::TwentySix),
            other => Err(WorkspaceError::UnknownConnectivity(other)),
        }
    }

    pub fn count(self) -> u32 {
        match self {
            Connectivity::Four => 4,
            Connectivity::Eight => 8,
            Connectivity::Six => 6,
            Connectivity::TwentySix => 26,
        }
    }

    pub fn is_3d(self) -> bool {
        matches!(self, Connectivity::Six | Connectivity::TwentySix)
    }

    pub fn allows_diagonals(self) -> bool {
        matches!(self, Connectivity::Eight | Connectivity::TwentySix)
    }

    /// Unit offsets with their move costs.
    fn offsets(self) -> Vec<([i64; 3], MoveCost)> {
        let zs: &[i64] = if self.is_3d() { &[-1, 0, 1] } else { &[0] };
        let mut out = Vec::new();
        for &dz in zs {
            for dy in -1..=1i64 {
                for dx in -1..=1i64 {
                    let changed = [dx, dy, dz].iter().filter(|d| **d != 0).count();
                    match changed {
                        0 => {}
                        1 => out.push(([dx, dy, dz], MoveCost::STRAIGHT)),
                        _ if self.allows_diagonals() => out.push(([dx, dy, dz], MoveCost::DIAGONAL)),
                        _ => {}
                    }
                }
            }
        }
        out
    }
}

/// A validated 2-D or 3-D grid workspace: the weighted transition system the
/// robot moves in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridWorkspace {
    extents: [u32; 3],
    three_d: bool,
    connectivity: Connectivity,
    start: Cell,
    blocked: Vec<bool>,
    labels: BTreeMap<usize, BTreeSet<String>>,
    allow_stay: bool,
    offsets: Vec<([i64; 3], MoveCost)>,
}

impl GridWorkspace {
    /// Validates a structured workspace description.
    pub fn from_document(doc: &WorkspaceDocument) -> Result<Self, WorkspaceError> {
        let three_d = match doc.dims.len() {
            2 => false,
            3 => true,
            _ => return Err(WorkspaceError::InvalidDims(doc.dims.clone())),
        };
        if doc.dims.contains(&0) {
            return Err(WorkspaceError::InvalidDims(doc.dims.clone()));
        }
        let connectivity = Connectivity::from_count(doc.connectivity)?;
        if connectivity.is_3d() != three_d {
            return Err(WorkspaceError::ConnectivityMismatch { connectivity: doc.connectivity, dims: doc.dims.len() });
        }
        let extents = [doc.dims[0], doc.dims[1], if three_d { doc.dims[2] } else { 1 }];
        let total = extents.iter().map(|&e| e as usize).product::<usize>();
        let mut ws = GridWorkspace {
            extents,
            three_d,
            connectivity,
            start: Cell::default(),
            blocked: vec![false; total],
            labels: BTreeMap::new(),
            allow_stay: doc.stay,
            offsets: connectivity.offsets(),
        };
        for raw in &doc.obstacles {
            let cell = ws.cell_from_coords(raw)?;
            let idx = ws.index(cell);
            ws.blocked[idx] = true;
        }
        ws.start = ws.cell_from_coords(&doc.start)?;
        if ws.blocked[ws.index(ws.start)] {
            return Err(WorkspaceError::StartOnObstacle(doc.start.clone()));
        }
        for (prop, cells) in &doc.labels {
            if prop.is_empty() || !prop.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(WorkspaceError::InvalidProposition(prop.clone()));
            }
            for raw in cells {
                let cell = ws.cell_from_coords(raw)?;
                let idx = ws.index(cell);
                if ws.blocked[idx] {
                    return Err(WorkspaceError::LabelOnObstacle(raw.clone()));
                }
                ws.labels.entry(idx).or_default().insert(prop.clone());
            }
        }
        Ok(ws)
    }

    /// Structured description; `from_document(&ws.to_document())` is `ws`.
    pub fn to_document(&self) -> WorkspaceDocument {
        let dims = if self.three_d { self.extents.to_vec() } else { self.extents[..2].to_vec() };
        let mut labels: BTreeMap<String, Vec<Vec<u32>>> = BTreeMap::new();
        for (&idx, props) in &self.labels {
            for p in props {
                labels.entry(p.clone()).or_default().push(self.coords(self.cell(idx)));
            }
        }
        WorkspaceDocument {
            dims,
            connectivity: self.connectivity.count(),
            start: self.coords(self.start),
            obstacles: self.obstacles().map(|c| self.coords(c)).collect(),
            labels,
            stay: self.allow_stay,
        }
    }

    fn cell_from_coords(&self, raw: &[u32]) -> Result<Cell, WorkspaceError> {
        let want = if self.three_d { 3 } else { 2 };
        if raw.len() != want {
            return Err(WorkspaceError::OutOfBounds(raw.to_vec()));
        }
        let cell = Cell::new3(raw[0], raw[1], if self.three_d { raw[2] } else { 0 });
        if !self.in_bounds(cell) {
            return Err(WorkspaceError::OutOfBounds(raw.to_vec()));
        }
        Ok(cell)
    }

    /// Coordinates as written in documents: `[x, y]` or `[x, y, z]`.
    pub fn coords(&self, cell: Cell) -> Vec<u32> {
        if self.three_d {
            vec![cell.x, cell.y, cell.z]
        } else {
            vec![cell.x, cell.y]
        }
    }

    pub fn width(&self) -> u32 {
        self.extents[0]
    }

    pub fn height(&self) -> u32 {
        self.extents[1]
    }

    pub fn depth(&self) -> u32 {
        self.extents[2]
    }

    pub fn is_3d(&self) -> bool {
        self.three_d
    }

    pub fn connectivity(&self) -> Connectivity {
        self.connectivity
    }

    pub fn start(&self) -> Cell {
        self.start
    }

    pub fn allows_stay(&self) -> bool {
        self.allow_stay
    }

    pub fn cell_count(&self) -> usize {
        self.blocked.len()
    }

    pub fn in_bounds(&self, cell: Cell) -> bool {
        cell.x < self.extents[0] && cell.y < self.extents[1] && cell.z < self.extents[2]
    }

    pub fn is_obstacle(&self, cell: Cell) -> bool {
        self.blocked[self.index(cell)]
    }

    pub fn obstacles(&self) -> impl Iterator<Item = Cell> + '_ {
        self.blocked.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| self.cell(i))
    }

    pub fn obstacle_count(&self) -> usize {
        self.blocked.iter().filter(|&&b| b).count()
    }

    /// Labeled cells with their proposition sets, in index order.
    pub fn labeled_cells(&self) -> impl Iterator<Item = (Cell, &BTreeSet<String>)> + '_ {
        self.labels.iter().map(|(&i, props)| (self.cell(i), props))
    }

    pub fn propositions(&self) -> BTreeSet<String> {
        self.labels.values().flatten().cloned().collect()
    }

    #[inline]
    pub fn index(&self, cell: Cell) -> usize {
        let [w, h, _] = self.extents;
        cell.x as usize + w as usize * (cell.y as usize + h as usize * cell.z as usize)
    }

    #[inline]
    pub fn cell(&self, index: usize) -> Cell {
        let w = self.extents[0] as usize;
        let h = self.extents[1] as usize;
        Cell::new3((index % w) as u32, ((index / w) % h) as u32, (index / (w * h)) as u32)
    }

    /// One-move successors of a free cell with their costs.
    pub fn neighbors(&self, cell: Cell) -> Result<Vec<(Cell, MoveCost)>, WorkspaceError> {
        if !self.in_bounds(cell) || self.is_obstacle(cell) {
            return Err(WorkspaceError::NotAState(self.coords(cell)));
        }
        let mut out = Vec::new();
        self.for_each_successor(self.index(cell), |s, c| out.push((self.cell(s), c)));
        Ok(out)
    }

    /// Obstacle-free shortest-path cost between two cells.
    ///
    /// Manhattan distance under 4/6-connectivity; under 8/26-connectivity
    /// `d_max + d_mid / 2` over the sorted absolute coordinate deltas.
    pub fn heuristic(&self, a: Cell, b: Cell) -> MoveCost {
        let mut d = [a.x.abs_diff(b.x) as u64, a.y.abs_diff(b.y) as u64, a.z.abs_diff(b.z) as u64];
        if self.connectivity.allows_diagonals() {
            d.sort_unstable_by(|p, q| q.cmp(p));
            MoveCost::from_half_units(2 * d[0] + d[1])
        } else {
            MoveCost::from_half_units(2 * (d[0] + d[1] + d[2]))
        }
    }

    /// Propositions holding at `cell`; empty when unlabeled.
    pub fn label_of(&self, cell: Cell) -> BTreeSet<String> {
        self.labels.get(&self.index(cell)).cloned().unwrap_or_default()
    }
}

impl TransitionSystem for GridWorkspace {
    fn state_count(&self) -> usize {
        self.blocked.len()
    }

    fn initial_state(&self) -> usize {
        self.index(self.start)
    }

    fn is_state(&self, s: usize) -> bool {
        s < self.blocked.len() && !self.blocked[s]
    }

    #[inline]
    fn for_each_successor<F: FnMut(usize, MoveCost)>(&self, s: usize, mut f: F) {
        let c = self.cell(s);
        let [w, h, d] = self.extents.map(|e| e as i64);
        for &([dx, dy, dz], cost) in &self.offsets {
            let (x, y, z) = (c.x as i64 + dx, c.y as i64 + dy, c.z as i64 + dz);
            if x < 0 || y < 0 || z < 0 || x >= w || y >= h || z >= d {
                continue;
            }
            let idx = (x + w * (y + h * z)) as usize;
            if !self.blocked[idx] {
                f(idx, cost);
            }
        }
        if self.allow_stay {
            f(s, MoveCost::STRAIGHT);
        }
    }

    fn label(&self, s: usize) -> Option<&BTreeSet<String>> {
        self.labels.get(&s)
    }

    fn labeled_states(&self) -> impl Iterator<Item = (usize, &BTreeSet<String>)> + '_ {
        self.labels.iter().map(|(&i, props)| (i, props))
    }

    fn heuristic(&self, a: usize, b: usize) -> MoveCost {
        GridWorkspace::heuristic(self, self.cell(a), self.cell(b))
    }

    fn describe_state(&self, s: usize) -> Vec<u32> {
        self.coords(self.cell(s))
    }
}
