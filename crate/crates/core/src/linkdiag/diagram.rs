use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ArcId = usize;

/// Role of one of the four arc ends at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    UnderIn,
    UnderOut,
    OverIn,
    OverOut,
}

impl Role {
    pub fn is_in(self) -> bool {
        matches!(self, Role::UnderIn | Role::OverIn)
    }
    pub fn is_over(self) -> bool {
        matches!(self, Role::OverIn | Role::OverOut)
    }
}

/// A crossing, stored by the four arcs around it in counterclockwise order
/// starting at the incoming under arc. The sign fixes which of the other
/// slots belong to the over strand:
/// positive `[u_in, o_out, u_out, o_in]`, negative `[u_in, o_in, u_out, o_out]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub sign: i8,
    pub ends: [ArcId; 4],
}

impl Crossing {
    /// Builds a crossing from its sign and the over/under arc pairs.
    pub fn from_strands(sign: i8, over: (ArcId, ArcId), under: (ArcId, ArcId)) -> Self {
        let ends = if sign > 0 {
            [under.0, over.1, under.1, over.0]
        } else {
            [under.0, over.0, under.1, over.1]
        };
        Self { sign, ends }
    }

    /// Builds a crossing from four arcs in counterclockwise order with their
    /// roles; the sign follows from the rotation.
    pub fn from_ccw(slots: [(ArcId, Role); 4]) -> Self {
        let start = slots
            .iter()
            .position(|s| s.1 == Role::UnderIn)
            .expect("a crossing has an incoming under arc");
        let rot: Vec<(ArcId, Role)> = (0..4).map(|k| slots[(start + k) % 4]).collect();
        debug_assert_eq!(rot[2].1, Role::UnderOut);
        let sign = if rot[1].1 == Role::OverOut { 1 } else { -1 };
        Self {
            sign,
            ends: [rot[0].0, rot[1].0, rot[2].0, rot[3].0],
        }
    }

    pub fn role(&self, slot: usize) -> Role {
        match (slot, self.sign > 0) {
            (0, _) => Role::UnderIn,
            (2, _) => Role::UnderOut,
            (1, true) | (3, false) => Role::OverOut,
            _ => Role::OverIn,
        }
    }

    pub fn slot_of(&self, role: Role) -> usize {
        (0..4).find(|&k| self.role(k) == role).unwrap()
    }

    pub fn arc(&self, role: Role) -> ArcId {
        self.ends[self.slot_of(role)]
    }

    pub fn over(&self) -> (ArcId, ArcId) {
        (self.arc(Role::OverIn), self.arc(Role::OverOut))
    }

    pub fn under(&self) -> (ArcId, ArcId) {
        (self.arc(Role::UnderIn), self.arc(Role::UnderOut))
    }

    /// The same projection with over and under exchanged.
    pub fn switched(&self) -> Self {
        let e = self.ends;
        if self.sign > 0 {
            Self {
                sign: -1,
                ends: [e[3], e[0], e[1], e[2]],
            }
        } else {
            Self {
                sign: 1,
                ends: [e[1], e[2], e[3], e[0]],
            }
        }
    }
}

/// Where an arc starts or ends: a crossing and a slot there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct End {
    pub crossing: usize,
    pub slot: usize,
}

/// Per-component colors, indexed like [`Diagram::components`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring(pub Vec<u32>);

impl Coloring {
    pub fn uniform(components: usize, color: u32) -> Self {
        Self(vec![color; components])
    }
}

/// An oriented, colored link diagram on the sphere.
///
/// Arcs run from one crossing to the next. An arc with no crossing is a
/// free loop (a crossingless component). Each arc carries the color of its
/// component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Diagram {
    pub crossings: Vec<Crossing>,
    pub arc_colors: Vec<u32>,
    pub loops: Vec<ArcId>,
}

/// Minimal union-find over arc ids, used when moves glue arcs together.
pub(crate) struct ArcUnion {
    parent: Vec<usize>,
}

impl ArcUnion {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }
    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
        }
    }
}

impl Diagram {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn num_arcs(&self) -> usize {
        self.arc_colors.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Reassembles a diagram from crossings that may reference glued or
    /// dropped arcs. Arcs in the same class of `unions` become one arc;
    /// classes referenced by no crossing become free loops. `keep` lists the
    /// arc ids (in the old numbering) that still exist.
    pub(crate) fn rebuild(
        crossings: Vec<Crossing>,
        colors: &[u32],
        unions: &mut ArcUnion,
        keep: impl IntoIterator<Item = ArcId>,
    ) -> Diagram {
        let mut new_id: BTreeMap<usize, usize> = BTreeMap::new();
        let mut arc_colors = Vec::new();
        let mut roots: Vec<usize> = keep.into_iter().map(|a| unions.find(a)).collect();
        roots.sort_unstable();
        roots.dedup();
        for r in roots {
            new_id.insert(r, arc_colors.len());
            arc_colors.push(colors[r]);
        }
        let mut referenced = vec![false; arc_colors.len()];
        let crossings: Vec<Crossing> = crossings
            .into_iter()
            .map(|c| {
                let mut ends = c.ends;
                for e in ends.iter_mut() {
                    *e = new_id[&unions.find(*e)];
                    referenced[*e] = true;
                }
                Crossing { sign: c.sign, ends }
            })
            .collect();
        let loops = (0..arc_colors.len()).filter(|&a| !referenced[a]).collect();
        Diagram {
            crossings,
            arc_colors,
            loops,
        }
        .normalized()
    }

    /// `(head, tail)` ends for every arc; free loops have neither.
    pub fn arc_ends(&self) -> (Vec<Option<End>>, Vec<Option<End>>) {
        let mut head = vec![None; self.num_arcs()];
        let mut tail = vec![None; self.num_arcs()];
        for (ci, c) in self.crossings.iter().enumerate() {
            for slot in 0..4 {
                let end = End { crossing: ci, slot };
                if c.role(slot).is_in() {
                    head[c.ends[slot]] = Some(end);
                } else {
                    tail[c.ends[slot]] = Some(end);
                }
            }
        }
        (head, tail)
    }

    /// Checks that every arc is used exactly once as an input and once as an
    /// output, or is a free loop.
    pub fn validate(&self) -> Result<()> {
        let mut ins = vec![0u32; self.num_arcs()];
        let mut outs = vec![0u32; self.num_arcs()];
        for c in &self.crossings {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::Parse("crossing sign must be ±1".into()));
            }
            for slot in 0..4 {
                let a = c.ends[slot];
                if a >= self.num_arcs() {
                    return Err(Error::ArcUseCount(a as i64));
                }
                if c.role(slot).is_in() {
                    ins[a] += 1;
                } else {
                    outs[a] += 1;
                }
            }
        }
        for &a in &self.loops {
            if a >= self.num_arcs() {
                return Err(Error::ArcUseCount(a as i64));
            }
            ins[a] += 1;
            outs[a] += 1;
        }
        for a in 0..self.num_arcs() {
            if ins[a] + outs[a] != 2 {
                return Err(Error::ArcUseCount(a as i64));
            }
            if ins[a] != 1 {
                return Err(Error::InconsistentOrientation);
            }
        }
        Ok(())
    }

    /// The arc following `a` along its component.
    pub fn next_arc(&self, a: ArcId, head: &[Option<End>]) -> ArcId {
        match head[a] {
            None => a,
            Some(End { crossing, slot }) => self.crossings[crossing].ends[(slot + 2) % 4],
        }
    }

    /// Components as oriented arc cycles, ordered by least arc id and each
    /// starting at its least arc.
    pub fn components(&self) -> Vec<Vec<ArcId>> {
        let (head, _) = self.arc_ends();
        let mut seen = vec![false; self.num_arcs()];
        let mut out = Vec::new();
        for start in 0..self.num_arcs() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut a = start;
            loop {
                seen[a] = true;
                cyc.push(a);
                a = self.next_arc(a, &head);
                if a == start {
                    break;
                }
            }
            out.push(cyc);
        }
        out
    }

    /// Component index of every arc.
    pub fn component_of_arcs(&self) -> Vec<usize> {
        let mut comp = vec![0; self.num_arcs()];
        for (k, cyc) in self.components().iter().enumerate() {
            for &a in cyc {
                comp[a] = k;
            }
        }
        comp
    }

    pub fn coloring(&self) -> Coloring {
        Coloring(
            self.components()
                .iter()
                .map(|cyc| self.arc_colors[cyc[0]])
                .collect(),
        )
    }

    /// Recolors every component from `mu`.
    pub fn with_coloring(&self, mu: &Coloring) -> Result<Diagram> {
        let comps = self.components();
        if mu.0.len() != comps.len() {
            return Err(Error::ColoringNotTotal);
        }
        let mut d = self.clone();
        for (cyc, &color) in comps.iter().zip(&mu.0) {
            for &a in cyc {
                d.arc_colors[a] = color;
            }
        }
        Ok(d)
    }

    pub fn with_uniform_color(&self, color: u32) -> Diagram {
        let mut d = self.clone();
        d.arc_colors.iter_mut().for_each(|c| *c = color);
        d
    }

    pub fn max_color(&self) -> u32 {
        self.arc_colors.iter().copied().max().unwrap_or(0)
    }

    /// Every crossing switched and the plane rotation kept.
    pub fn mirror(&self) -> Diagram {
        Diagram {
            crossings: self.crossings.iter().map(Crossing::switched).collect(),
            ..self.clone()
        }
    }

    /// Sum of signs of crossings whose two strands both carry color `i`.
    pub fn colored_writhe(&self, i: u32) -> i64 {
        self.crossings
            .iter()
            .filter(|c| {
                self.arc_colors[c.arc(Role::OverIn)] == i
                    && self.arc_colors[c.arc(Role::UnderIn)] == i
            })
            .map(|c| c.sign as i64)
            .sum()
    }

    /// Renumbers arcs along components (least original arc first) and sorts
    /// crossings, so that equal inputs built in different orders compare
    /// equal.
    pub fn normalized(&self) -> Diagram {
        let comps = self.components();
        let mut new_id = vec![0; self.num_arcs()];
        let mut arc_colors = Vec::with_capacity(self.num_arcs());
        for cyc in &comps {
            for &a in cyc {
                new_id[a] = arc_colors.len();
                arc_colors.push(self.arc_colors[a]);
            }
        }
        let mut crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing {
                sign: c.sign,
                ends: c.ends.map(|a| new_id[a]),
            })
            .collect();
        crossings.sort();
        let mut loops: Vec<ArcId> = self.loops.iter().map(|&a| new_id[a]).collect();
        loops.sort_unstable();
        Diagram {
            crossings,
            arc_colors,
            loops,
        }
    }

    /// Connected pieces of the underlying 4-valent graph, as crossing index
    /// lists. Free loops are not included.
    pub fn pieces(&self) -> Vec<Vec<usize>> {
        let (head, tail) = self.arc_ends();
        let mut seen = vec![false; self.crossings.len()];
        let mut out = Vec::new();
        for start in 0..self.crossings.len() {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            let mut piece = Vec::new();
            while let Some(c) = stack.pop() {
                piece.push(c);
                for &a in &self.crossings[c].ends {
                    for e in [head[a], tail[a]].into_iter().flatten() {
                        if !seen[e.crossing] {
                            seen[e.crossing] = true;
                            stack.push(e.crossing);
                        }
                    }
                }
            }
            piece.sort_unstable();
            out.push(piece);
        }
        out
    }

    /// An isomorphism-invariant key: equal for diagrams that differ only by
    /// arc numbering, crossing order and component order.
    pub fn canonical_key(&self) -> Vec<i64> {
        let (head, tail) = self.arc_ends();
        let mut piece_codes: Vec<Vec<i64>> = Vec::new();
        for piece in self.pieces() {
            let mut arcs: Vec<ArcId> = piece.iter().flat_map(|&c| self.crossings[c].ends).collect();
            arcs.sort_unstable();
            arcs.dedup();
            let best = arcs
                .iter()
                .map(|&start| self.encode_from(start, &head, &tail))
                .min()
                .unwrap_or_default();
            piece_codes.push(best);
        }
        let mut loop_colors: Vec<i64> = self
            .loops
            .iter()
            .map(|&a| self.arc_colors[a] as i64)
            .collect();
        loop_colors.sort_unstable();
        piece_codes.sort();
        let mut key = vec![piece_codes.len() as i64];
        for code in piece_codes {
            key.push(code.len() as i64);
            key.extend(code);
        }
        key.push(-1);
        key.extend(loop_colors);
        key
    }

    /// Numbers arcs by walking components, starting from `start` and moving
    /// to a new component through the earliest-numbered crossing met.
    fn encode_from(&self, start: ArcId, head: &[Option<End>], tail: &[Option<End>]) -> Vec<i64> {
        let mut id: HashMap<ArcId, i64> = HashMap::new();
        let mut order: Vec<ArcId> = Vec::new();
        let walk = |s: ArcId, id: &mut HashMap<ArcId, i64>, order: &mut Vec<ArcId>| {
            let mut a = s;
            while !id.contains_key(&a) {
                id.insert(a, order.len() as i64);
                order.push(a);
                a = self.next_arc(a, head);
            }
        };
        walk(start, &mut id, &mut order);
        let mut cursor = 0;
        while cursor < order.len() {
            let a = order[cursor];
            cursor += 1;
            for e in [head[a], tail[a]].into_iter().flatten() {
                let c = &self.crossings[e.crossing];
                // The strand through this crossing that does not contain `a`.
                let other_out = c.ends[(e.slot + 1) % 4];
                let other_out = if c.role((e.slot + 1) % 4).is_in() {
                    c.ends[(e.slot + 3) % 4]
                } else {
                    other_out
                };
                if !id.contains_key(&other_out) {
                    walk(other_out, &mut id, &mut order);
                }
            }
        }
        let mut crossings: Vec<[i64; 5]> = Vec::new();
        for c in &self.crossings {
            if !c.ends.iter().any(|a| id.contains_key(a)) {
                continue;
            }
            let e = c.ends.map(|a| id[&a]);
            crossings.push([c.sign as i64, e[0], e[1], e[2], e[3]]);
        }
        crossings.sort_unstable();
        let mut code: Vec<i64> = order.iter().map(|a| self.arc_colors[*a] as i64).collect();
        for c in crossings {
            code.extend(c);
        }
        code
    }

    /// The faces of each connected piece as dart cycles; a dart is an arc
    /// with a direction (`true` along the orientation), and its face lies to
    /// its left.
    pub fn faces(&self) -> Vec<Vec<(ArcId, bool)>> {
        let (head, tail) = self.arc_ends();
        let mut seen: HashMap<(ArcId, bool), ()> = HashMap::new();
        let mut out = Vec::new();
        for a in 0..self.num_arcs() {
            if head[a].is_none() {
                continue;
            }
            for fwd in [true, false] {
                if seen.contains_key(&(a, fwd)) {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = (a, fwd);
                while !seen.contains_key(&d) {
                    seen.insert(d, ());
                    face.push(d);
                    d = self.next_dart(d, &head, &tail);
                }
                out.push(face);
            }
        }
        out
    }

    pub(crate) fn next_dart(
        &self,
        d: (ArcId, bool),
        head: &[Option<End>],
        tail: &[Option<End>],
    ) -> (ArcId, bool) {
        let end = if d.1 { head[d.0] } else { tail[d.0] }.expect("dart on a crossing arc");
        let c = &self.crossings[end.crossing];
        let slot = (end.slot + 3) % 4;
        (c.ends[slot], !c.role(slot).is_in())
    }

    /// Whether the crossing rotations describe a diagram on the sphere.
    pub fn is_planar(&self) -> bool {
        let v = self.crossings.len() as i64;
        let e = 2 * v;
        let f = self.faces().len() as i64;
        v - e + f == 2 * self.pieces().len() as i64
    }

    /// Crossing switched in place.
    pub fn switch(&self, ci: usize) -> Diagram {
        let mut d = self.clone();
        d.crossings[ci] = d.crossings[ci].switched();
        d
    }

    /// Oriented smoothing of crossing `ci`: the incoming under arc continues
    /// into the outgoing over arc and vice versa.
    pub fn smooth(&self, ci: usize) -> Diagram {
        let c = self.crossings[ci];
        let mut u = ArcUnion::new(self.num_arcs());
        u.union(c.arc(Role::UnderIn), c.arc(Role::OverOut));
        u.union(c.arc(Role::OverIn), c.arc(Role::UnderOut));
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != ci)
            .map(|(_, c)| *c)
            .collect();
        Diagram::rebuild(crossings, &self.arc_colors, &mut u, 0..self.num_arcs())
    }
}
