//! String link diagrams: braid input, windings, stacking and local moves.

mod braid;
mod build;
mod json;
mod link;

pub use braid::{insert_2n_move, insert_2n_move_at, parse_braid, BraidLetter, BraidWord};
pub use build::{
    braid_to_diagram, plat_to_diagram, winding_braid, winding_to_diagram, WindingWord,
};
pub use json::{diagram_from_json, diagram_to_json, CrossingRecord, DiagramRecord};
pub use link::{self_crossing_change, stack, ArcId, Crossing, Pass, StringLinkDiagram};
