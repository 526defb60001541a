//! JSON form of a diagram.
//!
//! ```json
//! {
//!   "component_count": 2,
//!   "arcs_per_component": [2, 2],
//!   "self_writhe": [0, 0],
//!   "crossings": [
//!     {"id": 0, "over_arc": [1, 1], "under_in": [2, 1], "under_out": [2, 2], "sign": 1}
//!   ],
//!   "passes": [[{"crossing": 0, "over": true}], [{"crossing": 0, "over": false}]]
//! }
//! ```
//!
//! `passes` lists, per component, the crossings met along its orientation.
//! It is the authoritative part: on import every other field is recomputed
//! from it and must match.

use serde::{Deserialize, Serialize};

use super::link::{ArcId, Crossing, Pass, StringLinkDiagram};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingRecord {
    pub id: usize,
    pub over_arc: ArcId,
    pub under_in: ArcId,
    pub under_out: ArcId,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRecord {
    pub component_count: usize,
    pub arcs_per_component: Vec<usize>,
    pub self_writhe: Vec<i64>,
    pub crossings: Vec<CrossingRecord>,
    pub passes: Vec<Vec<Pass>>,
}

impl From<&StringLinkDiagram> for DiagramRecord {
    fn from(d: &StringLinkDiagram) -> Self {
        DiagramRecord {
            component_count: d.component_count(),
            arcs_per_component: d.arc_counts(),
            self_writhe: d.self_writhes(),
            crossings: d
                .crossings()
                .into_iter()
                .enumerate()
                .map(|(id, c)| CrossingRecord {
                    id,
                    over_arc: c.over_arc,
                    under_in: c.under_in,
                    under_out: c.under_out,
                    sign: c.sign,
                })
                .collect(),
            passes: (1..=d.component_count())
                .map(|i| d.passes(i).to_vec())
                .collect(),
        }
    }
}

impl TryFrom<DiagramRecord> for StringLinkDiagram {
    type Error = Error;

    fn try_from(r: DiagramRecord) -> Result<Self> {
        if r.passes.len() != r.component_count {
            return Err(Error::InvalidDiagram(format!(
                "component_count is {} but {} pass lists were given",
                r.component_count,
                r.passes.len()
            )));
        }
        let mut signs = vec![0i8; r.crossings.len()];
        for (pos, c) in r.crossings.iter().enumerate() {
            if c.id != pos {
                return Err(Error::InvalidDiagram(format!(
                    "crossing ids must be 0..{} in order",
                    r.crossings.len()
                )));
            }
            signs[pos] = c.sign;
        }
        let d = StringLinkDiagram::from_passes(r.passes, signs)?;
        if d.arc_counts() != r.arcs_per_component {
            return Err(Error::InvalidDiagram(format!(
                "arcs_per_component {:?} disagrees with passes {:?}",
                r.arcs_per_component,
                d.arc_counts()
            )));
        }
        if d.self_writhes() != r.self_writhe {
            return Err(Error::InvalidDiagram(format!(
                "self_writhe {:?} disagrees with crossings {:?}",
                r.self_writhe,
                d.self_writhes()
            )));
        }
        for (c, rec) in d.crossings().iter().zip(&r.crossings) {
            let Crossing {
                over_arc,
                under_in,
                under_out,
                ..
            } = *c;
            if (over_arc, under_in, under_out) != (rec.over_arc, rec.under_in, rec.under_out) {
                return Err(Error::InvalidDiagram(format!(
                    "crossing {} arcs disagree with passes",
                    rec.id
                )));
            }
        }
        Ok(d)
    }
}

pub fn diagram_to_json(d: &StringLinkDiagram) -> String {
    serde_json::to_string_pretty(&DiagramRecord::from(d)).expect("diagram records serialize")
}

pub fn diagram_from_json(text: &str) -> Result<StringLinkDiagram> {
    let record: DiagramRecord = serde_json::from_str(text)?;
    StringLinkDiagram::try_from(record)
}
