//! Static SVG rendering of a workspace and a plan.

use std::fmt::Write;

use thiserror::Error;
use tstar_core::planner::PlanResult;
use tstar_core::workspace::{Cell, GridWorkspace, TransitionSystem};
use tstar_core::MoveCost;

use crate::record::TrajectoryDocument;

const CELL: u32 = 12;
const LEGEND: u32 = 28;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SvgError {
    #[error("workspace is 3-D; pass a layer to render one z slice")]
    ThreeDimensional,
    #[error("layer {layer} is outside depth {depth}")]
    Layer { layer: u32, depth: u32 },
    #[error("trajectory cell {0:?} is not a free cell of the workspace")]
    Cell(Vec<u32>),
    #[error("trajectory has an empty suffix")]
    EmptySuffix,
}

/// A plan as drawn: cells rather than state ids.
#[derive(Clone, Debug, PartialEq)]
pub struct Overlay {
    pub algorithm: String,
    /// From the start up to, not including, the first suffix cell.
    pub prefix: Vec<Cell>,
    /// Closed cycle: first and last cells coincide.
    pub suffix: Vec<Cell>,
    pub suffix_cost: MoveCost,
    pub prefix_cost: MoveCost,
}

impl Overlay {
    pub fn from_plan(ws: &GridWorkspace, plan: &PlanResult) -> Self {
        Overlay {
            algorithm: plan.algorithm.name().to_string(),
            prefix: plan.concrete_prefix.iter().map(|&s| ws.cell(s)).collect(),
            suffix: plan.concrete_suffix.iter().map(|&s| ws.cell(s)).collect(),
            suffix_cost: plan.suffix_cost,
            prefix_cost: plan.prefix_cost,
        }
    }

    pub fn from_trajectory(ws: &GridWorkspace, doc: &TrajectoryDocument) -> Result<Self, SvgError> {
        let cells = |list: &[Vec<u32>]| -> Result<Vec<Cell>, SvgError> {
            list.iter()
                .map(|c| {
                    let cell = match c.as_slice() {
                        [x, y] => Cell::new(*x, *y),
                        [x, y, z] => Cell::new3(*x, *y, *z),
                        _ => return Err(SvgError::Cell(c.clone())),
                    };
                    if !ws.in_bounds(cell) || !ws.is_state(ws.index(cell)) {
                        return Err(SvgError::Cell(c.clone()));
                    }
                    Ok(cell)
                })
                .collect()
        };
        let suffix = cells(&doc.suffix)?;
        if suffix.is_empty() {
            return Err(SvgError::EmptySuffix);
        }
        Ok(Overlay {
            algorithm: doc.algorithm.name().to_string(),
            prefix: cells(&doc.prefix)?,
            suffix,
            suffix_cost: MoveCost::from_half_units(doc.suffix_cost.half_units),
            prefix_cost: MoveCost::from_half_units(doc.prefix_cost.half_units),
        })
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders obstacles, labeled cells, the prefix and the closed suffix cycle.
///
/// Rows are drawn with `y` increasing downwards, as in the ASCII format. For 3-D workspaces `layer`
/// selects the z slice; path points on other layers are dropped.
pub fn render_svg(ws: &GridWorkspace, plan: Option<&Overlay>, layer: Option<u32>) -> Result<String, SvgError> {
    let z = match (ws.is_3d(), layer) {
        (false, _) => 0,
        (true, None) => return Err(SvgError::ThreeDimensional),
        (true, Some(l)) if l >= ws.depth() => return Err(SvgError::Layer { layer: l, depth: ws.depth() }),
        (true, Some(l)) => l,
    };
    let (w, h) = (ws.width(), ws.height());
    let px = |c: Cell| (c.x * CELL, c.y * CELL);
    let centre = |c: Cell| {
        let (x, y) = px(c);
        (x + CELL / 2, y + CELL / 2)
    };

    let mut out = String::new();
    let total_h = h * CELL + LEGEND;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{total_h}" viewBox="0 0 {} {total_h}">"#,
        w * CELL,
        w * CELL
    )
    .unwrap();
    writeln!(out, r##"<rect class="background" x="0" y="0" width="{}" height="{}" fill="#ffffff" stroke="#888888"/>"##, w * CELL, h * CELL).unwrap();
    for cell in ws.obstacles().filter(|c| c.z == z) {
        let (x, y) = px(cell);
        writeln!(out, r##"<rect class="obstacle" x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="#333333"/>"##).unwrap();
    }
    for (cell, props) in ws.labeled_cells().filter(|(c, _)| c.z == z) {
        let (x, y) = px(cell);
        let (cx, cy) = centre(cell);
        let text: Vec<&str> = props.iter().map(String::as_str).collect();
        writeln!(out, r##"<rect class="label" x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="#ffe08a"/>"##).unwrap();
        writeln!(
            out,
            r#"<text x="{cx}" y="{}" font-size="7" text-anchor="middle">{}</text>"#,
            cy + 3,
            escape(&text.join(","))
        )
        .unwrap();
    }
    let start = ws.start();
    if start.z == z {
        let (cx, cy) = centre(start);
        writeln!(out, r##"<circle class="start" cx="{cx}" cy="{cy}" r="{}" fill="#2a7ab0"/>"##, CELL / 3).unwrap();
    }

    if let Some(plan) = plan {
        let points = |cells: &[Cell]| -> String {
            cells
                .iter()
                .copied()
                .filter(|c| c.z == z)
                .map(|c| {
                    let (x, y) = centre(c);
                    format!("{x},{y}")
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        if !plan.prefix.is_empty() {
            let mut walk = plan.prefix.clone();
            walk.push(plan.suffix[0]);
            writeln!(
                out,
                r##"<polyline class="prefix" points="{}" fill="none" stroke="#2a7ab0" stroke-width="2" stroke-dasharray="4 2"/>"##,
                points(&walk)
            )
            .unwrap();
        }
        writeln!(
            out,
            r##"<polyline class="suffix" points="{}" fill="none" stroke="#c0392b" stroke-width="2"/>"##,
            points(&plan.suffix)
        )
        .unwrap();
        writeln!(
            out,
            r#"<text class="legend" x="4" y="{}" font-size="11">{} suffix cost {} (prefix {})</text>"#,
            h * CELL + 18,
            plan.algorithm,
            plan.suffix_cost,
            plan.prefix_cost
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
