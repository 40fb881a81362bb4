//! Link diagrams and braids as sliced webs, and back.

use super::morse::to_slices;
use super::planar::PlanarWeb;
use super::{Slice, SliceKind, SliceWeb, Strand, Turn};
use crate::error::{Error, Result};
use crate::linkdiag::{ArcId, ArcUnion, Crossing, Diagram, Role};

/// Compiles a diagram into slices over upward and downward colored strands,
/// with one `Crossing` slice per crossing. Fails if the crossing rotations do
/// not describe a planar diagram.
pub fn compile(d: &Diagram, n: u32) -> Result<SliceWeb> {
    d.validate()?;
    for &c in &d.arc_colors {
        if c == 0 || c > n {
            return Err(Error::ColorOutOfRange { color: c, n });
        }
    }
    if !d.is_planar() {
        return Err(Error::NoPlanarEmbedding);
    }
    to_slices(&PlanarWeb::from_diagram(d))
}

/// Slices for a braid closure: nested cups, the braid word, nested caps.
pub fn compile_braid(word: &[i32], strands: usize, colors: &[u32]) -> Result<SliceWeb> {
    if colors.len() != strands {
        return Err(Error::ColoringNotTotal);
    }
    let mut slices = Vec::new();
    for (i, &c) in colors.iter().enumerate() {
        slices.push(Slice::cup(i, c, Turn::Cw));
    }
    let mut current = colors.to_vec();
    for &g in word {
        if g == 0 || g.unsigned_abs() as usize >= strands {
            return Err(Error::GeneratorOutOfRange(g));
        }
        let k = g.unsigned_abs() as usize - 1;
        slices.push(Slice::crossing(
            k,
            current[k],
            current[k + 1],
            g.signum() as i8,
        ));
        current.swap(k, k + 1);
    }
    if current != colors {
        return Err(Error::ColoringNotTotal);
    }
    for i in (0..strands).rev() {
        slices.push(Slice::cap(i, colors[i], Turn::Cw));
    }
    Ok(SliceWeb::closed(slices))
}

/// Reads a sliced diagram (cups, caps and crossings only) back as a link
/// diagram.
pub fn to_diagram(w: &SliceWeb) -> Result<Diagram> {
    let mut colors: Vec<u32> = Vec::new();
    let mut crossings: Vec<Crossing> = Vec::new();
    let mut frontier: Vec<(ArcId, Strand)> = Vec::new();
    let mut glue: Vec<(ArcId, ArcId)> = Vec::new();
    let new_arc = |c: u32, colors: &mut Vec<u32>| {
        colors.push(c);
        colors.len() - 1
    };
    for s in &w.slices {
        let p = s.pos;
        match s.kind {
            SliceKind::Cup { color, turn } => {
                let a = new_arc(color, &mut colors);
                let (l, r) = turn.cup_dirs();
                frontier.splice(
                    p..p,
                    [(a, Strand::new(color, l)), (a, Strand::new(color, r))],
                );
            }
            SliceKind::Cap { .. } => {
                glue.push((frontier[p].0, frontier[p + 1].0));
                frontier.drain(p..p + 2);
            }
            SliceKind::Crossing {
                inputs: [a, b],
                sign,
            } => {
                let (sw, se) = (frontier[p].0, frontier[p + 1].0);
                let nw = new_arc(b, &mut colors);
                let ne = new_arc(a, &mut colors);
                let (bl, br) = if sign > 0 {
                    (
                        (Role::OverIn, Role::OverOut),
                        (Role::UnderIn, Role::UnderOut),
                    )
                } else {
                    (
                        (Role::UnderIn, Role::UnderOut),
                        (Role::OverIn, Role::OverOut),
                    )
                };
                crossings.push(Crossing::from_ccw([
                    (sw, bl.0),
                    (se, br.0),
                    (ne, bl.1),
                    (nw, br.1),
                ]));
                frontier[p] = (nw, Strand::up(b));
                frontier[p + 1] = (ne, Strand::up(a));
            }
            _ => {
                return Err(Error::InvalidWeb(
                    "trivalent vertex in a link diagram".into(),
                ))
            }
        }
    }
    if !frontier.is_empty() {
        return Err(Error::InvalidWeb("open sliced diagram".into()));
    }
    let mut u = ArcUnion::new(colors.len());
    for (a, b) in glue {
        u.union(a, b);
    }
    let d = Diagram::rebuild(crossings, &colors, &mut u, 0..colors.len());
    d.validate()?;
    Ok(d)
}
