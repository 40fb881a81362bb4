//! Local graph surgery on planar webs.

use std::collections::HashMap;

use crate::web::build::Rung;
use crate::web::planar::{EdgeId, PlanarWeb, VertexId, VertexKind};

/// A web being edited. Joined edges are tracked so that later references to
/// an absorbed edge land on its survivor.
pub(crate) struct Surgery {
    pub g: PlanarWeb,
    alias: HashMap<EdgeId, EdgeId>,
}

impl Surgery {
    pub fn new(g: &PlanarWeb) -> Self {
        Surgery {
            g: g.clone(),
            alias: HashMap::new(),
        }
    }

    pub fn resolve(&self, mut e: EdgeId) -> EdgeId {
        while let Some(&a) = self.alias.get(&e) {
            e = a;
        }
        e
    }

    /// Removes the vertices and kills the listed interior edges; every other
    /// edge at those vertices is left with a dangling end.
    pub fn cut(&mut self, vs: &[VertexId], interior: &[EdgeId]) {
        for &v in vs {
            self.g.detach(v);
        }
        for &e in interior {
            self.g.kill_edge(e);
        }
    }

    /// Glues the dangling head of `a` to the dangling tail of `b`.
    pub fn join(&mut self, a: EdgeId, b: EdgeId) {
        let (a, b) = (self.resolve(a), self.resolve(b));
        self.g.join(a, b);
        if a != b {
            self.alias.insert(b, a);
        }
    }

    pub fn vertex(&mut self, kind: VertexKind, ends: &[EdgeId]) -> VertexId {
        let v = self.g.add_vertex(kind);
        for (slot, &e) in ends.iter().enumerate() {
            let e = self.resolve(e);
            self.g.attach(e, v, slot);
        }
        v
    }

    pub fn edge(&mut self, color: u32) -> EdgeId {
        self.g.add_edge(color)
    }

    /// Builds an upward ladder between four ports: `bl`, `br` have dangling
    /// heads and `tl`, `tr` dangling tails. A rail of color 0 has no port.
    /// Rung colors must fit their source rails.
    pub fn ladder(&mut self, ports: [Option<EdgeId>; 4], bottom: (u32, u32), rungs: &[Rung]) {
        let [bl, br, tl, tr] = ports;
        let (mut a, mut b) = bottom;
        let (mut left, mut right) = (bl, br);
        for &rung in rungs {
            match rung {
                Rung::Left(0) | Rung::Right(0) => {}
                Rung::Left(r) => {
                    debug_assert!(r <= b);
                    let src = right.take().expect("right rail");
                    let rung_edge = if b > r {
                        let rail = self.edge(b - r);
                        let e = self.edge(r);
                        self.vertex(VertexKind::Split, &[src, rail, e]);
                        right = Some(rail);
                        e
                    } else {
                        src
                    };
                    left = Some(match left {
                        Some(l) => {
                            let out = self.edge(a + r);
                            self.vertex(VertexKind::Merge, &[l, rung_edge, out]);
                            out
                        }
                        None => rung_edge,
                    });
                    a += r;
                    b -= r;
                }
                Rung::Right(r) => {
                    debug_assert!(r <= a);
                    let src = left.take().expect("left rail");
                    let rung_edge = if a > r {
                        let rail = self.edge(a - r);
                        let e = self.edge(r);
                        self.vertex(VertexKind::Split, &[src, e, rail]);
                        left = Some(rail);
                        e
                    } else {
                        src
                    };
                    right = Some(match right {
                        Some(rr) => {
                            let out = self.edge(b + r);
                            self.vertex(VertexKind::Merge, &[rung_edge, rr, out]);
                            out
                        }
                        None => rung_edge,
                    });
                    a -= r;
                    b += r;
                }
            }
        }
        for (rail, port) in [(left, tl), (right, tr)] {
            match (rail, port) {
                (Some(e), Some(p)) => self.join(e, p),
                (None, None) => {}
                _ => panic!("ladder top does not match its ports"),
            }
        }
    }

    pub fn finish(mut self) -> PlanarWeb {
        self.g.compact();
        self.g
    }
}
