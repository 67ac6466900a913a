//! Random workspace generation.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;
use tstar_core::workspace::{GridWorkspace, WorkspaceDocument, WorkspaceError};

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("density {0} is outside [0, 1)")]
    Density(f64),
    #[error("{needed} reserved cells and {obstacles} obstacles do not fit in {cells} cells")]
    DoesNotFit { needed: usize, obstacles: usize, cells: usize },
    #[error(transparent)]
    Workspace(#[from] WorkspaceError),
}

/// Parameters of a generated workspace.
#[derive(Clone, Debug, PartialEq)]
pub struct GenerateSpec {
    pub dims: Vec<u32>,
    pub connectivity: u32,
    pub density: f64,
    /// One entry per region; each region is a single cell carrying these
    /// propositions.
    pub regions: Vec<Vec<String>>,
    /// Start and regions keep at least this distance from the border.
    pub margin: u32,
}

impl GenerateSpec {
    /// Three gather and two upload singleton regions.
    pub fn gather_upload(side: u32, density: f64) -> Self {
        GenerateSpec {
            dims: vec![side, side],
            connectivity: 8,
            density,
            regions: ["p1", "p2", "p3", "p4", "p5"].iter().map(|p| vec![p.to_string()]).collect(),
            margin: 2,
        }
    }

    fn cell_count(&self) -> usize {
        self.dims.iter().map(|&d| d as usize).product()
    }
}

/// Region propositions for `gathers` gather and `uploads` upload locations.
///
/// Gather locations cycle through `p1..p3` and upload locations through
/// `p4, p5`; when there are fewer locations than propositions of a kind, the
/// last location carries the rest.
pub fn location_regions(gathers: usize, uploads: usize) -> Vec<Vec<String>> {
    fn spread(count: usize, props: &[&str]) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = (0..count).map(|i| vec![props[i % props.len()].to_string()]).collect();
        if let Some(last) = out.last_mut() {
            for p in props.iter().skip(count) {
                last.push(p.to_string());
            }
        }
        out
    }
    let mut regions = spread(gathers, &["p1", "p2", "p3"]);
    regions.extend(spread(uploads, &["p4", "p5"]));
    regions
}

fn unflatten(dims: &[u32], mut i: usize) -> Vec<u32> {
    dims.iter()
        .map(|&d| {
            let c = (i % d as usize) as u32;
            i /= d as usize;
            c
        })
        .collect()
}

/// Places the start and regions uniformly inside the margin, then exactly
/// `round(density × cells)` obstacles uniformly among the remaining cells.
pub fn generate_workspace(spec: &GenerateSpec, rng: &mut impl Rng) -> Result<GridWorkspace, GenerateError> {
    if !(0.0..1.0).contains(&spec.density) {
        return Err(GenerateError::Density(spec.density));
    }
    let cells = spec.cell_count();
    let obstacles = (spec.density * cells as f64).round() as usize;
    let needed = spec.regions.len() + 1;
    let inner: Vec<usize> = (0..cells)
        .filter(|&i| {
            unflatten(&spec.dims, i)
                .iter()
                .zip(&spec.dims)
                .all(|(&c, &d)| d <= 2 * spec.margin || (c >= spec.margin && c + spec.margin < d))
        })
        .collect();
    if needed + obstacles > cells || needed > inner.len() {
        return Err(GenerateError::DoesNotFit { needed, obstacles, cells });
    }
    let reserved: Vec<usize> = inner.choose_multiple(rng, needed).copied().collect();
    let taken: HashSet<usize> = reserved.iter().copied().collect();
    let mut free: Vec<usize> = (0..cells).filter(|i| !taken.contains(i)).collect();
    let (blocked, _) = free.partial_shuffle(rng, obstacles);
    let mut blocked = blocked.to_vec();
    blocked.sort_unstable();

    let mut labels: BTreeMap<String, Vec<Vec<u32>>> = BTreeMap::new();
    for (props, &cell) in spec.regions.iter().zip(&reserved[1..]) {
        for p in props {
            labels.entry(p.clone()).or_default().push(unflatten(&spec.dims, cell));
        }
    }
    let doc = WorkspaceDocument {
        dims: spec.dims.clone(),
        connectivity: spec.connectivity,
        start: unflatten(&spec.dims, reserved[0]),
        obstacles: blocked.into_iter().map(|i| unflatten(&spec.dims, i)).collect(),
        labels,
        stay: false,
    };
    Ok(GridWorkspace::from_document(&doc)?)
}

/// Copies `base` into the low corner of a larger grid and fills the new area
/// with obstacles at `density`. Start, labels and existing obstacles keep
/// their coordinates.
pub fn embed_workspace(
    base: &GridWorkspace,
    dims: &[u32],
    density: f64,
    rng: &mut impl Rng,
) -> Result<GridWorkspace, GenerateError> {
    let mut doc = base.to_document();
    let cells: usize = dims.iter().map(|&d| d as usize).product();
    let outside: Vec<usize> = (0..cells)
        .filter(|&i| unflatten(dims, i).iter().zip(&doc.dims).any(|(&c, &d)| c >= d))
        .collect();
    let count = (density * outside.len() as f64).round() as usize;
    let mut extra: Vec<usize> = outside.choose_multiple(rng, count).copied().collect();
    extra.sort_unstable();
    doc.obstacles.extend(extra.into_iter().map(|i| unflatten(dims, i)));
    doc.dims = dims.to_vec();
    Ok(GridWorkspace::from_document(&doc)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use tstar_core::workspace::TransitionSystem;

    #[test]
    fn exact_obstacle_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ws = generate_workspace(&GenerateSpec::gather_upload(100, 0.2), &mut rng).unwrap();
        assert_eq!(ws.obstacle_count(), 2000);
        assert_eq!(ws.labeled_states().count(), 5);
    }

    #[test]
    fn zero_density_has_no_obstacles() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let ws = generate_workspace(&GenerateSpec::gather_upload(10, 0.0), &mut rng).unwrap();
        assert_eq!(ws.obstacle_count(), 0);
    }

    #[test]
    fn too_many_regions_fail() {
        let mut spec = GenerateSpec::gather_upload(3, 0.0);
        spec.margin = 0;
        spec.regions = (0..9).map(|i| vec![format!("p{i}")]).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(matches!(generate_workspace(&spec, &mut rng), Err(GenerateError::DoesNotFit { .. })));
    }

    #[test]
    fn same_seed_same_workspace() {
        let spec = GenerateSpec::gather_upload(30, 0.3);
        let a = generate_workspace(&spec, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = generate_workspace(&spec, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a.to_document(), b.to_document());
    }

    #[test]
    fn small_location_counts_cover_every_proposition() {
        assert_eq!(
            location_regions(2, 1),
            vec![vec!["p1".to_string()], vec!["p2".into(), "p3".into()], vec!["p4".into(), "p5".into()]]
        );
        assert_eq!(location_regions(4, 2).len(), 6);
    }

    #[test]
    fn embedding_keeps_labels_in_place() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let base = generate_workspace(&GenerateSpec::gather_upload(20, 0.2), &mut rng).unwrap();
        let big = embed_workspace(&base, &[40, 40], 0.2, &mut rng).unwrap();
        assert_eq!(big.to_document().labels, base.to_document().labels);
        assert_eq!(big.to_document().start, base.to_document().start);
        assert_eq!(big.obstacle_count(), base.obstacle_count() + 240);
    }
}
