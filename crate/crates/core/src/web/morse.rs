//! Morse presentation of planar maps: each vertex becomes a standard slice
//! surrounded by the cups and caps that bring its ends to the running
//! frontier.

use super::planar::{EdgeId, PlanarWeb, VertexId, VertexKind};
use super::{Dir, Slice, SliceWeb, Strand, Turn};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Entry {
    edge: EdgeId,
    strand: Strand,
}

/// A vertex with some ends bent by cups and caps, as a local sliced
/// tangle.
struct Local {
    bottom: Vec<Entry>,
    top: Vec<Entry>,
    slices: Vec<Slice>,
}

fn shifted(slices: &[Slice], by: usize) -> Vec<Slice> {
    slices
        .iter()
        .map(|s| Slice::new(s.pos + by, s.kind))
        .collect()
}

fn flipped(e: Entry) -> Entry {
    Entry {
        edge: e.edge,
        strand: Strand::new(e.strand.color, e.strand.dir.flip()),
    }
}

impl Local {
    fn cup_left(self) -> Local {
        let leg = flipped(self.bottom[0]);
        let mut slices = vec![Slice::cup(
            0,
            leg.strand.color,
            Turn::for_cup(leg.strand.dir),
        )];
        slices.extend(shifted(&self.slices, 1));
        let mut top = vec![leg];
        top.extend(self.top);
        Local {
            bottom: self.bottom[1..].to_vec(),
            top,
            slices,
        }
    }

    fn cup_right(self) -> Local {
        let old = *self.bottom.last().unwrap();
        let leg = flipped(old);
        let bottom = self.bottom[..self.bottom.len() - 1].to_vec();
        let mut slices = vec![Slice::cup(
            bottom.len(),
            old.strand.color,
            Turn::for_cup(old.strand.dir),
        )];
        slices.extend(self.slices);
        let mut top = self.top;
        top.push(leg);
        Local {
            bottom,
            top,
            slices,
        }
    }

    fn cap_left(self) -> Local {
        let leg = flipped(self.top[0]);
        let mut slices = shifted(&self.slices, 1);
        slices.push(Slice::cap(
            0,
            leg.strand.color,
            Turn::for_cap(leg.strand.dir),
        ));
        let mut bottom = vec![leg];
        bottom.extend(self.bottom);
        Local {
            bottom,
            top: self.top[1..].to_vec(),
            slices,
        }
    }

    fn cap_right(self) -> Local {
        let old = *self.top.last().unwrap();
        let leg = flipped(old);
        let top = self.top[..self.top.len() - 1].to_vec();
        let mut slices = self.slices;
        slices.push(Slice::cap(
            top.len(),
            old.strand.color,
            Turn::for_cap(old.strand.dir),
        ));
        let mut bottom = self.bottom;
        bottom.push(leg);
        Local {
            bottom,
            top,
            slices,
        }
    }
}

/// Number of ends on the bottom of a vertex's standard box.
fn base_bottom(kind: VertexKind) -> usize {
    match kind {
        VertexKind::Split => 1,
        _ => 2,
    }
}

/// The local tangle for vertex `v` exposing the counterclockwise slot range
/// `rel_start..rel_start + k` (mod degree) at the bottom.
fn local_for(g: &PlanarWeb, v: VertexId, rel_start: i32, k: i32) -> Option<Local> {
    let vx = &g.vertices[v];
    let d = vx.ends.len() as i32;
    let nb = base_bottom(vx.kind) as i32;
    let entry = |r: i32| {
        let edge = vx.ends[r.rem_euclid(d) as usize];
        Entry {
            edge,
            strand: Strand::up(g.edges[edge].color),
        }
    };
    let mut best: Option<(i32, i32)> = None;
    for start in [rel_start, rel_start - d] {
        let end = start + k;
        let inc = (-start).max(0) + (end - nb).max(0);
        let dec = start.max(0) + (nb - end).max(0);
        if nb + inc > d {
            continue;
        }
        let cost = inc + dec;
        if best.is_none_or(|(b, _)| cost < b) {
            best = Some((cost, start));
        }
    }
    let (_, start) = best?;
    let end = start + k;
    let color = |r: i32| g.edges[vx.ends[r as usize]].color;
    let slice = match vx.kind {
        VertexKind::Merge => Slice::merge(0, color(0), color(1)),
        VertexKind::Split => Slice::split(0, color(2), color(1)),
        VertexKind::Crossing(sign) => Slice::crossing(0, color(0), color(1), sign),
    };
    let mut local = Local {
        bottom: (0..nb).map(entry).collect(),
        top: (nb..d).rev().map(entry).collect(),
        slices: vec![slice],
    };
    let (mut s, mut e) = (0, nb);
    while s > start {
        local = local.cap_left();
        s -= 1;
    }
    while e < end {
        local = local.cap_right();
        e += 1;
    }
    while s < start {
        local = local.cup_left();
        s += 1;
    }
    while e > end {
        local = local.cup_right();
        e -= 1;
    }
    Some(local)
}

struct Builder<'a> {
    g: &'a PlanarWeb,
    frontier: Vec<Entry>,
    slices: Vec<Slice>,
}

/// Where a vertex can be attached to the frontier.
struct Site {
    pos: usize,
    rel: i32,
    k: usize,
    /// Relative slots of loops hanging below the vertex between its
    /// frontier edges.
    kinks: Vec<i32>,
}

impl Builder<'_> {
    fn place(&mut self, v: VertexId, pos: usize, rel: i32, k: usize) -> bool {
        let Some(local) = local_for(self.g, v, rel, k as i32) else {
            return false;
        };
        if self.frontier[pos..pos + k] != local.bottom[..] {
            return false;
        }
        self.slices.extend(shifted(&local.slices, pos));
        self.frontier.splice(pos..pos + k, local.top);
        self.close_adjacent();
        true
    }

    /// Caps neighbouring frontier strands that are two ends of one edge.
    fn close_adjacent(&mut self) {
        let mut i = 0;
        while i + 1 < self.frontier.len() {
            if self.frontier[i].edge == self.frontier[i + 1].edge {
                let e = self.frontier[i];
                self.slices
                    .push(Slice::cap(i, e.strand.color, Turn::for_cap(e.strand.dir)));
                self.frontier.drain(i..i + 2);
                i = i.saturating_sub(1);
            } else {
                i += 1;
            }
        }
    }

    /// The vertex's frontier edges must be contiguous and appear in
    /// counterclockwise slot order, possibly with loops of the vertex
    /// hanging down between them.
    fn attachment(&self, v: VertexId) -> Option<Site> {
        let vx = &self.g.vertices[v];
        let d = vx.ends.len();
        let positions: Vec<usize> = self
            .frontier
            .iter()
            .enumerate()
            .filter(|(_, e)| vx.ends.contains(&e.edge))
            .map(|(p, _)| p)
            .collect();
        let k = positions.len();
        if k == 0 || positions[k - 1] - positions[0] + 1 != k {
            return None;
        }
        let pos = positions[0];
        let slot_of = |edge: EdgeId, want_in: bool| -> Option<usize> {
            (0..d).find(|&s| vx.ends[s] == edge && vx.kind.is_in(s) == want_in)
        };
        let mut rels = Vec::with_capacity(k);
        for e in &self.frontier[pos..pos + k] {
            // Upward flow at the frontier means the edge enters the vertex.
            rels.push(slot_of(e.edge, e.strand.dir == Dir::Up)? as i32);
        }
        let edge_at = |r: i32| vx.ends[r.rem_euclid(d as i32) as usize];
        let mut kinks = Vec::new();
        for w in rels.windows(2) {
            match (w[1] - w[0]).rem_euclid(d as i32) {
                1 => {}
                3 if d == 4 && edge_at(w[0] + 1) == edge_at(w[0] + 2) => kinks.push(w[0] + 1),
                _ => return None,
            }
        }
        Some(Site {
            pos,
            rel: rels[0],
            k,
            kinks,
        })
    }

    /// Opens a cup for each hanging loop of `v` at the site.
    fn open_kinks(&mut self, v: VertexId, site: &Site) {
        let vx = &self.g.vertices[v];
        let d = vx.ends.len() as i32;
        for &r in site.kinks.iter().rev() {
            let slot = r.rem_euclid(d) as usize;
            let edge = vx.ends[slot];
            let color = self.g.edges[edge].color;
            let left = if vx.kind.is_in(slot) {
                Dir::Up
            } else {
                Dir::Down
            };
            let at = site.pos + (r - site.rel).rem_euclid(d) as usize;
            self.slices.push(Slice::cup(at, color, Turn::for_cup(left)));
            self.frontier.splice(
                at..at,
                [
                    Entry {
                        edge,
                        strand: Strand::new(color, left),
                    },
                    Entry {
                        edge,
                        strand: Strand::new(color, left.flip()),
                    },
                ],
            );
        }
    }
}

fn compile_component(
    g: &PlanarWeb,
    vs: &[VertexId],
    first: VertexId,
    rot: i32,
) -> Option<Vec<Slice>> {
    let mut b = Builder {
        g,
        frontier: Vec::new(),
        slices: Vec::new(),
    };
    if !b.place(first, 0, rot, 0) {
        return None;
    }
    let mut placed = vec![false; g.vertices.len()];
    placed[first] = true;
    for _ in 1..vs.len() {
        let mut best: Option<(VertexId, Site)> = None;
        for &v in vs {
            if placed[v] {
                continue;
            }
            if let Some(site) = b.attachment(v) {
                let better = match &best {
                    None => true,
                    Some((_, s)) => site.k > s.k || (site.k == s.k && site.pos < s.pos),
                };
                if better {
                    best = Some((v, site));
                }
            }
        }
        let (v, site) = best?;
        b.open_kinks(v, &site);
        if !b.place(v, site.pos, site.rel, site.k + 2 * site.kinks.len()) {
            return None;
        }
        placed[v] = true;
    }
    b.frontier.is_empty().then_some(b.slices)
}

/// Slices for a closed planar map. Fails if no attachment order works,
/// which happens when the rotations do not describe a planar embedding.
pub fn to_slices(g: &PlanarWeb) -> Result<SliceWeb> {
    let mut slices = Vec::new();
    for (vs, es) in g.components() {
        if vs.is_empty() {
            for e in es {
                let c = g.edges[e].color;
                slices.push(Slice::cup(0, c, Turn::Ccw));
                slices.push(Slice::cap(0, c, Turn::Ccw));
            }
            continue;
        }
        let mut done = None;
        'search: for &first in &vs {
            for rot in 0..g.vertices[first].ends.len() as i32 {
                if let Some(s) = compile_component(g, &vs, first, rot) {
                    done = Some(s);
                    break 'search;
                }
            }
        }
        slices.extend(done.ok_or(Error::NoPlanarEmbedding)?);
    }
    Ok(SliceWeb::closed(slices))
}
