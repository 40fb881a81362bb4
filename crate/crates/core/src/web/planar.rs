//! Webs as embedded planar graphs: vertices with counterclockwise edge
//! rotations. This is the representation the rewriter works on.

use std::collections::{BTreeMap, VecDeque};

use super::{Dir, SliceKind, SliceWeb};
use crate::error::{Error, Result};
use crate::linkdiag::Diagram;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Vertex shapes. Ends are stored counterclockwise in a fixed normal order:
/// `Merge` is `[in (flow-left), in (flow-right), out]`, `Split` is
/// `[in, out (flow-right), out (flow-left)]` and `Crossing` is
/// `[bottom-left in, bottom-right in, top-right out, top-left out]` with
/// the bottom-left strand over when the sign is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Merge,
    Split,
    Crossing(i8),
}

impl VertexKind {
    pub fn degree(self) -> usize {
        match self {
            VertexKind::Crossing(_) => 4,
            _ => 3,
        }
    }

    /// Whether the end at `slot` is incoming.
    pub fn is_in(self, slot: usize) -> bool {
        match self {
            VertexKind::Merge => slot < 2,
            VertexKind::Split => slot == 0,
            VertexKind::Crossing(_) => slot < 2,
        }
    }

    fn code(self) -> u32 {
        match self {
            VertexKind::Merge => 1,
            VertexKind::Split => 2,
            VertexKind::Crossing(s) if s > 0 => 3,
            VertexKind::Crossing(_) => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    pub ends: Vec<EdgeId>,
}

/// A directed colored edge. Both endpoints `None` means a closed circle;
/// exactly one `None` only occurs transiently during surgery.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub color: u32,
    pub tail: Option<(VertexId, usize)>,
    pub head: Option<(VertexId, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlanarWeb {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

/// An edge traversed from tail to head (`forward`) or back.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: EdgeId,
    pub forward: bool,
}

/// Vertex sign type after making every edge outgoing (an incoming edge of
/// color `c` becomes an outgoing one of color `n - c`): splits sum to `n`
/// and are `+`, merges sum to `2n` and are `-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignType {
    Plus,
    Minus,
}

/// A face traversed counterclockwise (face on the left).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
    pub colors: Vec<u32>,
    /// Sign type of the vertex at the end of each dart; empty for the faces
    /// of a circle.
    pub signs: Vec<SignType>,
}

impl Face {
    pub fn size(&self) -> usize {
        self.darts.len()
    }

    /// Valid when vertex sign types alternate around the face.
    pub fn has_valid_sign_type(&self) -> bool {
        let k = self.signs.len();
        k.is_multiple_of(2) && (0..k).all(|i| self.signs[i] != self.signs[(i + 1) % k])
    }
}

impl PlanarWeb {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn has_crossings(&self) -> bool {
        self.vertices
            .iter()
            .any(|v| matches!(v.kind, VertexKind::Crossing(_)))
    }

    pub fn add_vertex(&mut self, kind: VertexKind) -> VertexId {
        self.vertices.push(Vertex {
            kind,
            ends: vec![usize::MAX; kind.degree()],
        });
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, color: u32) -> EdgeId {
        self.edges.push(Edge {
            color,
            tail: None,
            head: None,
        });
        self.edges.len() - 1
    }

    /// Attaches an end of `e` to `slot` of `v`; the slot's direction decides
    /// which end.
    pub fn attach(&mut self, e: EdgeId, v: VertexId, slot: usize) {
        self.vertices[v].ends[slot] = e;
        if self.vertices[v].kind.is_in(slot) {
            self.edges[e].head = Some((v, slot));
        } else {
            self.edges[e].tail = Some((v, slot));
        }
    }

    /// Glues the dangling head of `a` to the dangling tail of `b`; `b` is
    /// absorbed into `a`. Gluing an edge to itself closes a circle.
    pub fn join(&mut self, a: EdgeId, b: EdgeId) {
        debug_assert!(self.edges[a].head.is_none() && self.edges[b].tail.is_none());
        debug_assert_eq!(self.edges[a].color, self.edges[b].color);
        if a == b {
            return;
        }
        let head = self.edges[b].head;
        self.edges[a].head = head;
        if let Some((v, s)) = head {
            self.vertices[v].ends[s] = a;
        }
        self.edges[b] = Edge {
            color: 0,
            tail: None,
            head: None,
        };
    }

    /// Detaches vertex `v`: its edges keep dangling ends. The vertex is
    /// marked dead until `compact`.
    pub fn detach(&mut self, v: VertexId) {
        for (slot, &e) in self.vertices[v].ends.clone().iter().enumerate() {
            if e == usize::MAX {
                continue;
            }
            if self.edges[e].head == Some((v, slot)) {
                self.edges[e].head = None;
            }
            if self.edges[e].tail == Some((v, slot)) {
                self.edges[e].tail = None;
            }
        }
        self.vertices[v].ends.clear();
    }

    /// Marks an edge dead.
    pub fn kill_edge(&mut self, e: EdgeId) {
        self.edges[e].color = 0;
        self.edges[e].tail = None;
        self.edges[e].head = None;
    }

    /// Drops dead vertices and edges and renumbers.
    pub fn compact(&mut self) {
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if !v.ends.is_empty() {
                vmap[i] = vertices.len();
                vertices.push(v.clone());
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.color != 0 {
                emap[i] = edges.len();
                edges.push(Edge {
                    color: e.color,
                    tail: e.tail.map(|(v, s)| (vmap[v], s)),
                    head: e.head.map(|(v, s)| (vmap[v], s)),
                });
            }
        }
        for v in &mut vertices {
            for e in &mut v.ends {
                *e = emap[*e];
            }
        }
        self.vertices = vertices;
        self.edges = edges;
    }

    /// Checks incidence consistency and flow conservation.
    pub fn validate(&self, n: u32) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidWeb(m));
        for (i, e) in self.edges.iter().enumerate() {
            if e.color == 0 || e.color > n {
                return bad(format!("edge {i} has color {} outside 1..={n}", e.color));
            }
            if e.tail.is_some() != e.head.is_some() {
                return bad(format!("edge {i} is open"));
            }
            for (end, is_in) in [(e.tail, false), (e.head, true)] {
                if let Some((v, s)) = end {
                    let vx = &self.vertices[v];
                    if vx.ends.get(s) != Some(&i) || vx.kind.is_in(s) != is_in {
                        return bad(format!("edge {i} disagrees with vertex {v}"));
                    }
                }
            }
        }
        for (i, v) in self.vertices.iter().enumerate() {
            let c: Vec<u32> = v.ends.iter().map(|&e| self.edges[e].color).collect();
            let ok = match v.kind {
                VertexKind::Merge => c[0] + c[1] == c[2],
                VertexKind::Split => c[0] == c[1] + c[2],
                VertexKind::Crossing(s) => (s == 1 || s == -1) && c[0] == c[2] && c[1] == c[3],
            };
            if !ok {
                return bad(format!("vertex {i} violates flow conservation"));
            }
        }
        Ok(())
    }

    /// Builds the planar map of a closed sliced web (crossings allowed).
    pub fn from_slices(w: &SliceWeb, n: u32) -> Result<PlanarWeb> {
        if !w.bottom.is_empty() {
            return Err(Error::OracleRequiresClosedWeb);
        }
        let words = w.words(n)?;
        if !words.last().map(|t| t.is_empty()).unwrap_or(true) {
            return Err(Error::OracleRequiresClosedWeb);
        }
        let mut g = PlanarWeb::default();
        // Frontier entries are edges cut by the running level; the strand
        // direction tells which end is still open.
        let mut frontier: Vec<EdgeId> = Vec::new();
        for (idx, s) in w.slices.iter().enumerate() {
            let word = &words[idx];
            let p = s.pos;
            match s.kind {
                SliceKind::Cup { color, .. } => {
                    let e = g.add_edge(color);
                    frontier.splice(p..p, [e, e]);
                }
                SliceKind::Cap { .. } => {
                    let (l, r) = (frontier[p], frontier[p + 1]);
                    // The upward strand's edge flows into the cap.
                    let (a, b) = if word[p].dir == Dir::Up {
                        (l, r)
                    } else {
                        (r, l)
                    };
                    g.join(a, b);
                    let a_new = a;
                    for f in frontier.iter_mut() {
                        if *f == b {
                            *f = a_new;
                        }
                    }
                    frontier.drain(p..p + 2);
                }
                SliceKind::Merge { inputs: [a, b] } => {
                    let (l, r) = (frontier[p], frontier[p + 1]);
                    let e = g.add_edge(a + b);
                    if word[p].dir == Dir::Up {
                        let v = g.add_vertex(VertexKind::Merge);
                        g.attach(l, v, 0);
                        g.attach(r, v, 1);
                        g.attach(e, v, 2);
                    } else {
                        // Flow runs down: the new strand splits into l and r;
                        // the flow's right is the picture's left.
                        let v = g.add_vertex(VertexKind::Split);
                        g.attach(e, v, 0);
                        g.attach(l, v, 1);
                        g.attach(r, v, 2);
                    }
                    frontier.splice(p..p + 2, [e]);
                }
                SliceKind::Split { out: [a, b] } => {
                    let m = frontier[p];
                    let (l, r) = (g.add_edge(a), g.add_edge(b));
                    if word[p].dir == Dir::Up {
                        let v = g.add_vertex(VertexKind::Split);
                        g.attach(m, v, 0);
                        g.attach(r, v, 1);
                        g.attach(l, v, 2);
                    } else {
                        let v = g.add_vertex(VertexKind::Merge);
                        g.attach(r, v, 0);
                        g.attach(l, v, 1);
                        g.attach(m, v, 2);
                    }
                    frontier.splice(p..p + 1, [l, r]);
                }
                SliceKind::Crossing {
                    inputs: [a, b],
                    sign,
                } => {
                    let (bl, br) = (frontier[p], frontier[p + 1]);
                    let (tl, tr) = (g.add_edge(b), g.add_edge(a));
                    let v = g.add_vertex(VertexKind::Crossing(sign));
                    g.attach(bl, v, 0);
                    g.attach(br, v, 1);
                    g.attach(tr, v, 2);
                    g.attach(tl, v, 3);
                    frontier[p] = tl;
                    frontier[p + 1] = tr;
                }
            }
        }
        g.compact();
        g.validate(n)?;
        Ok(g)
    }

    /// Planar map of a link diagram with crossings as 4-valent vertices.
    pub fn from_diagram(d: &Diagram) -> PlanarWeb {
        let mut g = PlanarWeb::default();
        for &c in &d.arc_colors {
            g.add_edge(c);
        }
        for c in &d.crossings {
            let first = if c.sign > 0 { 3 } else { 0 };
            let v = g.add_vertex(VertexKind::Crossing(c.sign));
            for k in 0..4 {
                g.attach(c.ends[(first + k) % 4], v, k);
            }
        }
        // Arcs not met by any crossing are the free loops.
        g
    }

    /// Connected components as vertex and edge lists. Circles come out as
    /// components without vertices.
    pub fn components(&self) -> Vec<(Vec<VertexId>, Vec<EdgeId>)> {
        let mut vseen = vec![false; self.vertices.len()];
        let mut eseen = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for start in 0..self.edges.len() {
            if eseen[start] {
                continue;
            }
            let mut vs = Vec::new();
            let mut es = Vec::new();
            let mut queue = VecDeque::from([start]);
            eseen[start] = true;
            while let Some(e) = queue.pop_front() {
                es.push(e);
                for end in [self.edges[e].tail, self.edges[e].head]
                    .into_iter()
                    .flatten()
                {
                    let v = end.0;
                    if vseen[v] {
                        continue;
                    }
                    vseen[v] = true;
                    vs.push(v);
                    for &f in &self.vertices[v].ends {
                        if !eseen[f] {
                            eseen[f] = true;
                            queue.push_back(f);
                        }
                    }
                }
            }
            vs.sort_unstable();
            es.sort_unstable();
            out.push((vs, es));
        }
        out
    }

    /// The sub-web on the given vertices and edges, renumbered.
    pub fn subweb(&self, vs: &[VertexId], es: &[EdgeId]) -> PlanarWeb {
        let vmap: BTreeMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let emap: BTreeMap<usize, usize> = es.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        PlanarWeb {
            vertices: vs
                .iter()
                .map(|&v| Vertex {
                    kind: self.vertices[v].kind,
                    ends: self.vertices[v].ends.iter().map(|e| emap[e]).collect(),
                })
                .collect(),
            edges: es
                .iter()
                .map(|&e| {
                    let x = self.edges[e];
                    Edge {
                        color: x.color,
                        tail: x.tail.map(|(v, s)| (vmap[&v], s)),
                        head: x.head.map(|(v, s)| (vmap[&v], s)),
                    }
                })
                .collect(),
        }
    }

    /// Places two webs side by side.
    pub fn disjoint_union(&self, other: &PlanarWeb) -> PlanarWeb {
        let (nv, ne) = (self.vertices.len(), self.edges.len());
        let mut g = self.clone();
        g.vertices.extend(other.vertices.iter().map(|v| Vertex {
            kind: v.kind,
            ends: v.ends.iter().map(|e| e + ne).collect(),
        }));
        g.edges.extend(other.edges.iter().map(|e| Edge {
            color: e.color,
            tail: e.tail.map(|(v, s)| (v + nv, s)),
            head: e.head.map(|(v, s)| (v + nv, s)),
        }));
        g
    }

    /// Vertex and slot a dart arrives at.
    pub fn dart_end(&self, d: Dart) -> Option<(VertexId, usize)> {
        let e = &self.edges[d.edge];
        if d.forward {
            e.head
        } else {
            e.tail
        }
    }

    /// Dart leaving `v` through `slot`.
    pub fn dart_from(&self, v: VertexId, slot: usize) -> Dart {
        let edge = self.vertices[v].ends[slot];
        Dart {
            edge,
            forward: !self.vertices[v].kind.is_in(slot),
        }
    }

    /// Next dart along the face on the left of `d`.
    pub fn next_dart(&self, d: Dart) -> Dart {
        match self.dart_end(d) {
            None => d,
            Some((v, s)) => {
                let deg = self.vertices[v].ends.len();
                self.dart_from(v, (s + deg - 1) % deg)
            }
        }
    }

    fn sign_type(&self, v: VertexId) -> Option<SignType> {
        match self.vertices[v].kind {
            VertexKind::Merge => Some(SignType::Minus),
            VertexKind::Split => Some(SignType::Plus),
            VertexKind::Crossing(_) => None,
        }
    }

    /// All faces, per connected component.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen = BTreeMap::new();
        let mut out = Vec::new();
        for e in 0..self.edges.len() {
            for forward in [true, false] {
                let start = Dart { edge: e, forward };
                if seen.contains_key(&start) {
                    continue;
                }
                let mut darts = Vec::new();
                let mut d = start;
                loop {
                    seen.insert(d, out.len());
                    darts.push(d);
                    d = self.next_dart(d);
                    if d == start {
                        break;
                    }
                }
                let colors = darts.iter().map(|d| self.edges[d.edge].color).collect();
                let signs = darts
                    .iter()
                    .filter_map(|&d| self.dart_end(d).and_then(|(v, _)| self.sign_type(v)))
                    .collect();
                out.push(Face {
                    darts,
                    colors,
                    signs,
                });
            }
        }
        out
    }

    /// `V - E + F = 2` on every component.
    pub fn euler_ok(&self) -> bool {
        let faces = self.faces();
        self.components().iter().all(|(vs, es)| {
            let f = faces
                .iter()
                .filter(|f| es.binary_search(&f.darts[0].edge).is_ok())
                .count() as i64;
            // A circle is counted with one vertex on it.
            let v = vs.len().max(1) as i64;
            v - es.len() as i64 + f == 2
        })
    }

    /// A code for the connected web that is invariant under renumbering:
    /// the least breadth-first encoding over all root vertices.
    pub fn canonical_code(&self) -> Vec<u32> {
        if self.vertices.is_empty() {
            let mut c: Vec<u32> = self.edges.iter().map(|e| e.color).collect();
            c.sort_unstable();
            c.insert(0, 0);
            return c;
        }
        (0..self.vertices.len())
            .map(|r| self.encode_from(r))
            .min()
            .unwrap_or_default()
    }

    fn encode_from(&self, root: VertexId) -> Vec<u32> {
        let mut order = vec![u32::MAX; self.vertices.len()];
        let mut queue = VecDeque::from([root]);
        order[root] = 0;
        let mut next = 1;
        let mut code = Vec::with_capacity(self.vertices.len() * 9);
        while let Some(v) = queue.pop_front() {
            let vx = &self.vertices[v];
            code.push(vx.kind.code());
            for (s, &e) in vx.ends.iter().enumerate() {
                let edge = &self.edges[e];
                let other = if vx.kind.is_in(s) {
                    edge.tail
                } else {
                    edge.head
                };
                let (u, t) = other.expect("closed web");
                if order[u] == u32::MAX {
                    order[u] = next;
                    next += 1;
                    queue.push_back(u);
                }
                code.extend([edge.color, order[u], t as u32]);
            }
        }
        // Disconnected remainders are not expected; append their size.
        code.push(self.vertices.len() as u32);
        code
    }

    /// Canonical codes of all components, sorted: equal for webs that differ
    /// by renumbering.
    pub fn canonical_key(&self) -> Vec<Vec<u32>> {
        let mut keys: Vec<Vec<u32>> = self
            .components()
            .iter()
            .map(|(vs, es)| self.subweb(vs, es).canonical_code())
            .collect();
        keys.sort();
        keys
    }
}
