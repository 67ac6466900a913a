//! Text formats for workspaces.
//!
//! ASCII layout:
//!
//! ```text
//! dims: 8 8
//! connectivity: 4
//! S.1.....
//! ..#.....
//! ...
//! props: 1=p1 2=p2 3=p1+p2
//! ```
//!
//! `.` is free, `#` an obstacle, `S` the start and `1`-`9`/`a`-`z` are
//! proposition markers declared in the `props:` footer. Layers of a 3-D grid
//! are separated by blank lines. A labeled start cell is written with its
//! marker plus a `start: x y [z]` footer. An optional `stay: true` header
//! line enables stay-in-place moves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::{Cell, GridWorkspace, WorkspaceDocument, WorkspaceError};

const MARKERS: &str = "123456789abcdefghijklmnopqrstuvwxyz";

/// Loads a workspace from either the ASCII or the JSON format.
pub fn load_workspace(text: &str) -> Result<GridWorkspace, WorkspaceError> {
    if text.trim_start().starts_with('{') {
        let doc: WorkspaceDocument = serde_json::from_str(text).map_err(|e| WorkspaceError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        GridWorkspace::from_document(&doc)
    } else {
        parse_ascii(text)
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> WorkspaceError {
    WorkspaceError::Syntax { line, column, message: message.into() }
}

fn parse_numbers(line_no: usize, value: &str) -> Result<Vec<u32>, WorkspaceError> {
    value
        .split_whitespace()
        .map(|tok| tok.parse::<u32>().map_err(|_| syntax(line_no, 1, format!("expected a number, found '{tok}'"))))
        .collect()
}

pub fn parse_ascii(text: &str) -> Result<GridWorkspace, WorkspaceError> {
    let mut dims: Option<Vec<u32>> = None;
    let mut connectivity: Option<u32> = None;
    let mut stay = false;
    let mut explicit_start: Option<Vec<u32>> = None;
    let mut markers: BTreeMap<char, BTreeSet<String>> = BTreeMap::new();
    // (line number, row text), with None marking a layer break.
    let mut rows: Vec<Option<(usize, &str)>> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end();
        if line.trim().is_empty() {
            if rows.last().is_some_and(|r| r.is_some()) {
                rows.push(None);
            }
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            rows.push(Some((line_no, line)));
            continue;
        };
        match key.trim() {
            "dims" => dims = Some(parse_numbers(line_no, value)?),
            "connectivity" => {
                let v = parse_numbers(line_no, value)?;
                if v.len() != 1 {
                    return Err(syntax(line_no, key.len() + 2, "expected a single connectivity value"));
                }
                connectivity = Some(v[0]);
            }
            "stay" => {
                stay = match value.trim() {
                    "true" => true,
                    "false" => false,
                    other => return Err(syntax(line_no, key.len() + 2, format!("expected true or false, found '{other}'"))),
                }
            }
            "start" => explicit_start = Some(parse_numbers(line_no, value)?),
            "props" => {
                for entry in value.split_whitespace() {
                    let column = line.find(entry).map(|c| c + 1).unwrap_or(1);
                    let (marker, names) = entry
                        .split_once('=')
                        .ok_or_else(|| syntax(line_no, column, format!("expected marker=props, found '{entry}'")))?;
                    let mut chars = marker.chars();
                    let (Some(m), None) = (chars.next(), chars.next()) else {
                        return Err(syntax(line_no, column, format!("marker '{marker}' must be one character")));
                    };
                    if !MARKERS.contains(m) {
                        return Err(syntax(line_no, column, format!("'{m}' is not a proposition marker")));
                    }
                    let set: BTreeSet<String> = names.split('+').map(str::to_string).collect();
                    if set.iter().any(|n| n.is_empty()) {
                        return Err(syntax(line_no, column, "empty proposition name"));
                    }
                    if let Some(previous) = markers.insert(m, set.clone()) {
                        if previous != set {
                            return Err(WorkspaceError::ConflictingLabel(m));
                        }
                    }
                }
            }
            other => return Err(syntax(line_no, 1, format!("unknown header '{other}'"))),
        }
    }
    while rows.last().is_some_and(|r| r.is_none()) {
        rows.pop();
    }

    let dims = dims.ok_or_else(|| syntax(1, 1, "missing 'dims:' header"))?;
    let connectivity = connectivity.ok_or_else(|| syntax(1, 1, "missing 'connectivity:' header"))?;
    if !(dims.len() == 2 || dims.len() == 3) || dims.contains(&0) {
        return Err(WorkspaceError::InvalidDims(dims));
    }
    let (width, height) = (dims[0] as usize, dims[1] as usize);
    let depth = if dims.len() == 3 { dims[2] as usize } else { 1 };

    let layers: Vec<Vec<(usize, &str)>> =
        rows.split(|r| r.is_none()).map(|layer| layer.iter().flatten().copied().collect()).collect();
    if layers.len() != depth {
        let line = rows.iter().flatten().last().map(|r| r.0).unwrap_or(1);
        return Err(syntax(line, 1, format!("expected {depth} layer(s), found {}", layers.len())));
    }

    let mut obstacles = Vec::new();
    let mut labels: BTreeMap<String, Vec<Vec<u32>>> = BTreeMap::new();
    let mut start_marker: Option<Vec<u32>> = None;
    for (z, layer) in layers.iter().enumerate() {
        if layer.len() != height {
            let line = layer.last().map(|r| r.0).unwrap_or(1);
            return Err(syntax(line, 1, format!("layer {z} has {} rows, expected {height}", layer.len())));
        }
        for (y, &(line_no, row)) in layer.iter().enumerate() {
            if row.chars().count() != width {
                return Err(syntax(line_no, 1, format!("row has {} cells, expected {width}", row.chars().count())));
            }
            for (x, ch) in row.chars().enumerate() {
                let mut coords = vec![x as u32, y as u32];
                if dims.len() == 3 {
                    coords.push(z as u32);
                }
                match ch {
                    '.' => {}
                    '#' => obstacles.push(coords),
                    'S' => {
                        if start_marker.is_some() {
                            return Err(syntax(line_no, x + 1, "more than one start cell"));
                        }
                        start_marker = Some(coords);
                    }
                    m if MARKERS.contains(m) => {
                        let props = markers
                            .get(&m)
                            .ok_or_else(|| syntax(line_no, x + 1, format!("marker '{m}' is not declared in props")))?;
                        for p in props {
                            labels.entry(p.clone()).or_default().push(coords.clone());
                        }
                    }
                    other => return Err(syntax(line_no, x + 1, format!("unknown cell character '{other}'"))),
                }
            }
        }
    }
    let start = match (start_marker, explicit_start) {
        (Some(s), None) | (None, Some(s)) => s,
        (Some(_), Some(_)) => return Err(syntax(1, 1, "start given both as 'S' and as a footer")),
        (None, None) => return Err(syntax(1, 1, "no start cell")),
    };
    GridWorkspace::from_document(&WorkspaceDocument { dims, connectivity, start, obstacles, labels, stay })
}

/// Renders the ASCII format. Fails when more distinct label sets exist than
/// there are marker characters.
pub fn to_ascii(ws: &GridWorkspace) -> Result<String, WorkspaceError> {
    let sets: BTreeSet<&BTreeSet<String>> = ws.labeled_cells().map(|(_, p)| p).collect();
    if sets.len() > MARKERS.len() {
        return Err(WorkspaceError::TooManyLabelSets(sets.len()));
    }
    let marker_of: BTreeMap<&BTreeSet<String>, char> = sets.iter().copied().zip(MARKERS.chars()).collect();

    let mut out = String::new();
    let dims: Vec<String> = ws.to_document().dims.iter().map(u32::to_string).collect();
    writeln!(out, "dims: {}", dims.join(" ")).unwrap();
    writeln!(out, "connectivity: {}", ws.connectivity().count()).unwrap();
    if ws.allows_stay() {
        writeln!(out, "stay: true").unwrap();
    }
    let start_labeled = !ws.label_of(ws.start()).is_empty();
    for z in 0..ws.depth() {
        if z > 0 {
            out.push('\n');
        }
        for y in 0..ws.height() {
            for x in 0..ws.width() {
                let cell = Cell::new3(x, y, z);
                let label = ws.label_of(cell);
                let ch = if ws.is_obstacle(cell) {
                    '#'
                } else if !label.is_empty() {
                    marker_of[&label]
                } else if cell == ws.start() {
                    'S'
                } else {
                    '.'
                };
                out.push(ch);
            }
            out.push('\n');
        }
    }
    if !marker_of.is_empty() {
        let decls: Vec<String> = marker_of
            .iter()
            .map(|(set, m)| format!("{m}={}", set.iter().cloned().collect::<Vec<_>>().join("+")))
            .collect();
        writeln!(out, "props: {}", decls.join(" ")).unwrap();
    }
    if start_labeled {
        let coords: Vec<String> = ws.coords(ws.start()).iter().map(u32::to_string).collect();
        writeln!(out, "start: {}", coords.join(" ")).unwrap();
    }
    Ok(out)
}

pub fn to_json(ws: &GridWorkspace) -> String {
    serde_json::to_string_pretty(&ws.to_document()).expect("workspace document serializes")
}
