//! Oriented, colored link diagrams: parsing, braid closures, mirror images,
//! colored writhes and Reidemeister moves.

mod braid;
mod diagram;
mod moves;
mod parse;

pub use braid::{from_braid, from_braid_colored, periodic_cover, Tangle};
pub(crate) use diagram::ArcUnion;
pub use diagram::{ArcId, Coloring, Crossing, Diagram, End, Role};
pub use moves::{apply_reidemeister, move_sites, Dart, Move};
pub use parse::{parse_json, parse_pd, to_json};

/// Sum of signs of crossings whose two strands are both colored `i` by `mu`.
pub fn colored_writhe(d: &Diagram, mu: &Coloring, i: u32) -> crate::Result<i64> {
    Ok(d.with_coloring(mu)?.colored_writhe(i))
}

pub fn mirror(d: &Diagram) -> Diagram {
    d.mirror()
}
