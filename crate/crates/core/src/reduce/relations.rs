//! Sites and right-hand sides of the local web relations.

use std::fmt;

use serde::Serialize;

use super::surgery::Surgery;
use crate::error::{Error, Result};
use crate::qlaurent::{qbinom, LPoly};
use crate::web::build::Rung;
use crate::web::crossing_terms;
use crate::web::planar::{Dart, EdgeId, PlanarWeb, VertexId, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RelationId {
    Circle,
    Bigon,
    FourId1,
    FourId2,
    Rect1,
    Rect2,
    Curl,
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Where a relation applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Site {
    /// A vertex-free circle.
    Circle(EdgeId),
    /// Two edges between a split and a merge bounding a face.
    Bigon { split: VertexId, merge: VertexId },
    /// A crossing whose strand returns to it through an adjacent slot.
    Curl(VertexId),
    /// Two merges (or two splits) joined by `edge`.
    FourId(EdgeId),
    /// A four-sided face read as a ladder square: darts are the lower rung,
    /// the right rail, the upper rung and the left rail.
    Square([Dart; 4]),
    /// A crossing to expand into ladders. Not a relation of the calculus
    /// itself, but the rewriter uses it to enter from link diagrams.
    Crossing(VertexId),
}

/// A right-hand side: coefficients and webs.
pub type Terms = Vec<(LPoly, PlanarWeb)>;

fn kind(g: &PlanarWeb, v: VertexId) -> VertexKind {
    g.vertices[v].kind
}

fn color(g: &PlanarWeb, e: EdgeId) -> u32 {
    g.edges[e].color
}

fn end_of(g: &PlanarWeb, d: Dart) -> Option<VertexId> {
    g.dart_end(d).map(|(v, _)| v)
}

/// The end of `v` not on either of the two given edges.
fn third(g: &PlanarWeb, v: VertexId, a: EdgeId, b: EdgeId) -> Option<(usize, EdgeId)> {
    let ends = &g.vertices[v].ends;
    let mut rest = (0..ends.len()).filter(|&s| ends[s] != a && ends[s] != b);
    let s = rest.next()?;
    rest.next().is_none().then_some((s, ends[s]))
}

/// A recognized ladder square.
struct Square {
    vs: [VertexId; 4],
    face: [EdgeId; 4],
    /// Third edges at bottom-left, bottom-right, top-left, top-right.
    ports: [EdgeId; 4],
    lower: Rung,
    upper: Rung,
}

fn rung_color(r: Rung) -> u32 {
    match r {
        Rung::Left(k) | Rung::Right(k) => k,
    }
}

fn read_square(g: &PlanarWeb, darts: &[Dart; 4]) -> Option<Square> {
    let [d0, d1, d2, d3] = *darts;
    if !d1.forward || d3.forward {
        return None;
    }
    let bl = end_of(g, d3)?;
    let br = end_of(g, d0)?;
    let tr = end_of(g, d1)?;
    let tl = end_of(g, d2)?;
    let vs = [bl, br, tl, tr];
    for (i, &v) in vs.iter().enumerate() {
        if matches!(kind(g, v), VertexKind::Crossing(_)) || vs[..i].contains(&v) {
            return None;
        }
    }
    let face = [d0.edge, d1.edge, d2.edge, d3.edge];
    for i in 0..4 {
        if face[..i].contains(&face[i]) {
            return None;
        }
    }
    let (s_bl, p_bl) = third(g, bl, d3.edge, d0.edge)?;
    let (s_br, p_br) = third(g, br, d0.edge, d1.edge)?;
    let (s_tr, p_tr) = third(g, tr, d1.edge, d2.edge)?;
    let (s_tl, p_tl) = third(g, tl, d2.edge, d3.edge)?;
    if !kind(g, bl).is_in(s_bl)
        || !kind(g, br).is_in(s_br)
        || kind(g, tl).is_in(s_tl)
        || kind(g, tr).is_in(s_tr)
    {
        return None;
    }
    let lower = if d0.forward {
        Rung::Right(color(g, d0.edge))
    } else {
        Rung::Left(color(g, d0.edge))
    };
    let upper = if d2.forward {
        Rung::Left(color(g, d2.edge))
    } else {
        Rung::Right(color(g, d2.edge))
    };
    Some(Square {
        vs,
        face,
        ports: [p_bl, p_br, p_tl, p_tr],
        lower,
        upper,
    })
}

type Ladder = (LPoly, Vec<Rung>);

/// The ladders equal to a square, or `None` when the square is already in
/// the preferred form for its boundary.
fn square_terms(
    b: (u32, u32),
    t: (u32, u32),
    lower: Rung,
    upper: Rung,
) -> Option<(RelationId, Vec<Ladder>)> {
    let (b1, b2) = b;
    let (t1, t2) = t;
    let (b1i, b2i, t1i, t2i) = (b1 as i64, b2 as i64, t1 as i64, t2 as i64);
    match (lower, upper) {
        (Rung::Left(r), Rung::Left(s)) => Some((
            RelationId::Bigon,
            vec![(qbinom((r + s) as i64, r as i64), vec![Rung::Left(r + s)])],
        )),
        (Rung::Right(r), Rung::Right(s)) => Some((
            RelationId::Bigon,
            vec![(qbinom((r + s) as i64, r as i64), vec![Rung::Right(r + s)])],
        )),
        (Rung::Left(r), Rung::Right(s)) => {
            let l = b2i - t1i;
            if l < 0 {
                return None;
            }
            let k = r.min(s) as i64;
            let terms = (0..=t1.min(b1))
                .map(|m| {
                    let c = qbinom(l, k - m as i64);
                    let rungs = vec![
                        Rung::Right(m + b1.saturating_sub(t1)),
                        Rung::Left(m + t1.saturating_sub(b1)),
                    ];
                    (c, rungs)
                })
                .filter(|(c, _)| !c.is_zero())
                .collect();
            let id = if b1i >= t1i {
                RelationId::Rect1
            } else {
                RelationId::Rect2
            };
            Some((id, terms))
        }
        (Rung::Right(r), Rung::Left(s)) => {
            let l = b1i - t2i;
            if l < 0 {
                return None;
            }
            let k = r.min(s) as i64;
            let terms = (0..=t2.min(b2))
                .map(|m| {
                    let c = qbinom(l, k - m as i64);
                    let rungs = vec![
                        Rung::Left(m + b2.saturating_sub(t2)),
                        Rung::Right(m + t2.saturating_sub(b2)),
                    ];
                    (c, rungs)
                })
                .filter(|(c, _)| !c.is_zero())
                .collect();
            let id = if b2i >= t2i {
                RelationId::Rect1
            } else {
                RelationId::Rect2
            };
            Some((id, terms))
        }
    }
}

fn max_rail(bottom: (u32, u32), rungs: &[Rung]) -> u32 {
    let (mut a, mut b) = bottom;
    let mut m = a.max(b);
    for r in rungs {
        match *r {
            Rung::Left(k) => {
                a += k;
                b -= k;
            }
            Rung::Right(k) => {
                a -= k;
                b += k;
            }
        }
        m = m.max(a).max(b);
    }
    m
}

fn port(e: EdgeId, c: u32) -> Option<EdgeId> {
    (c > 0).then_some(e)
}

/// Every site of `g`, in no particular order. Squares are listed once per
/// readable orientation.
pub fn find_sites(g: &PlanarWeb) -> Vec<Site> {
    let mut out = Vec::new();
    for (e, edge) in g.edges.iter().enumerate() {
        if edge.tail.is_none() && edge.head.is_none() {
            out.push(Site::Circle(e));
        }
    }
    for (v, vx) in g.vertices.iter().enumerate() {
        if let VertexKind::Crossing(_) = vx.kind {
            if curl_loop(g, v).is_some() {
                out.push(Site::Curl(v));
            }
            out.push(Site::Crossing(v));
        }
    }
    for (e, edge) in g.edges.iter().enumerate() {
        if let (Some((u, su)), Some((w, _))) = (edge.tail, edge.head) {
            let (ku, kw) = (kind(g, u), kind(g, w));
            if (ku == VertexKind::Merge && kw == VertexKind::Merge && su == 2)
                || (ku == VertexKind::Split && kw == VertexKind::Split)
            {
                out.push(Site::FourId(e));
            }
        }
    }
    for f in g.faces() {
        match f.size() {
            2 => {
                let (a, b) = (end_of(g, f.darts[0]), end_of(g, f.darts[1]));
                if let (Some(a), Some(b)) = (a, b) {
                    let (s, m) = match (kind(g, a), kind(g, b)) {
                        (VertexKind::Split, VertexKind::Merge) => (a, b),
                        (VertexKind::Merge, VertexKind::Split) => (b, a),
                        _ => continue,
                    };
                    out.push(Site::Bigon { split: s, merge: m });
                }
            }
            4 => {
                for rot in 0..4 {
                    let d: [Dart; 4] = std::array::from_fn(|i| f.darts[(rot + i) % 4]);
                    if read_square(g, &d).is_some() {
                        out.push(Site::Square(d));
                    }
                }
            }
            _ => {}
        }
    }
    out
}

fn curl_loop(g: &PlanarWeb, v: VertexId) -> Option<(usize, usize)> {
    let ends = &g.vertices[v].ends;
    [(3, 0), (2, 1)]
        .into_iter()
        .find(|&(out, inn)| ends[out] == ends[inn])
}

/// The relation a site belongs to, if it is one of the calculus.
pub fn relation_of(g: &PlanarWeb, site: &Site) -> Option<RelationId> {
    Some(match site {
        Site::Circle(_) => RelationId::Circle,
        Site::Bigon { .. } => RelationId::Bigon,
        Site::Curl(_) => RelationId::Curl,
        Site::FourId(e) => match g.edges[*e].tail.map(|(v, _)| kind(g, v)) {
            Some(VertexKind::Merge) => RelationId::FourId1,
            _ => RelationId::FourId2,
        },
        Site::Square(d) => {
            let sq = read_square(g, d)?;
            let c = |e| color(g, e);
            let b = (c(sq.ports[0]), c(sq.ports[1]));
            let t = (c(sq.ports[2]), c(sq.ports[3]));
            square_terms(b, t, sq.lower, sq.upper)?.0
        }
        Site::Crossing(_) => return None,
    })
}

/// The right-hand side of the relation at `site`. Terms whose webs would
/// carry a color above `n` vanish and are dropped.
pub fn apply(g: &PlanarWeb, site: &Site, n: u32) -> Result<Terms> {
    let na = || Error::RelationNotApplicable;
    match *site {
        Site::Circle(e) => {
            let edge = g.edges.get(e).ok_or_else(na)?;
            if edge.tail.is_some() || edge.head.is_some() || edge.color == 0 {
                return Err(na());
            }
            let mut s = Surgery::new(g);
            s.cut(&[], &[e]);
            Ok(vec![(qbinom(n as i64, edge.color as i64), s.finish())])
        }
        Site::Bigon { split, merge } => bigon(g, split, merge, n),
        Site::Curl(v) => {
            let VertexKind::Crossing(sign) = kind(g, v) else {
                return Err(na());
            };
            let (out, inn) = curl_loop(g, v).ok_or_else(na)?;
            let ends = g.vertices[v].ends.clone();
            let i = color(g, ends[out]) as i64;
            // The strand enters at the slot opposite `out` and leaves
            // opposite `inn`.
            let (enter, leave) = ((out + 2) % 4, (inn + 2) % 4);
            let mut s = Surgery::new(g);
            s.cut(&[v], &[ends[out]]);
            s.join(ends[enter], ends[leave]);
            let exp = sign as i64 * i * (n as i64 - i + 1);
            Ok(vec![(LPoly::v_pow(exp), s.finish())])
        }
        Site::Crossing(v) => {
            let VertexKind::Crossing(sign) = kind(g, v) else {
                return Err(na());
            };
            let e = g.vertices[v].ends.clone();
            let (a, b) = (color(g, e[0]), color(g, e[1]));
            let mut out = Vec::new();
            for (c, rungs) in crossing_terms(a, b, sign) {
                if max_rail((a, b), &rungs) > n {
                    continue;
                }
                let mut s = Surgery::new(g);
                s.cut(&[v], &[]);
                s.ladder(
                    [Some(e[0]), Some(e[1]), Some(e[3]), Some(e[2])],
                    (a, b),
                    &rungs,
                );
                out.push((c, s.finish()));
            }
            Ok(out)
        }
        Site::FourId(e) => four_id(g, e),
        Site::Square(d) => {
            let sq = read_square(g, &d).ok_or_else(na)?;
            let c = |e| color(g, e);
            let b = (c(sq.ports[0]), c(sq.ports[1]));
            let t = (c(sq.ports[2]), c(sq.ports[3]));
            let (_, terms) = square_terms(b, t, sq.lower, sq.upper).ok_or_else(na)?;
            debug_assert!(rung_color(sq.lower) > 0 && rung_color(sq.upper) > 0);
            let mut out = Vec::new();
            for (coef, rungs) in terms {
                if max_rail(b, &rungs) > n {
                    continue;
                }
                let mut s = Surgery::new(g);
                s.cut(&sq.vs, &sq.face);
                let [pbl, pbr, ptl, ptr] = sq.ports;
                s.ladder(
                    [
                        port(pbl, b.0),
                        port(pbr, b.1),
                        port(ptl, t.0),
                        port(ptr, t.1),
                    ],
                    b,
                    &rungs,
                );
                out.push((coef, s.finish()));
            }
            Ok(out)
        }
    }
}

fn bigon(g: &PlanarWeb, sp: VertexId, mg: VertexId, n: u32) -> Result<Terms> {
    let na = || Error::RelationNotApplicable;
    if kind(g, sp) != VertexKind::Split || kind(g, mg) != VertexKind::Merge {
        return Err(na());
    }
    let s = g.vertices[sp].ends.clone();
    let m = g.vertices[mg].ends.clone();
    let mut surg = Surgery::new(g);
    // Parallel: both outputs of the split feed the merge, in the same
    // left-right order.
    if s[1] == m[1] && s[2] == m[0] {
        let coef = qbinom(color(g, s[0]) as i64, color(g, s[1]) as i64);
        surg.cut(&[sp, mg], &[s[1], s[2]]);
        surg.join(s[0], m[2]);
        return Ok(vec![(coef, surg.finish())]);
    }
    // Antiparallel: the merge feeds the split, and one split output returns
    // to the merge through the face.
    if m[2] != s[0] {
        return Err(na());
    }
    let (loop_e, through_out) = if s[1] == m[0] || s[1] == m[1] {
        (s[1], s[2])
    } else if s[2] == m[0] || s[2] == m[1] {
        (s[2], s[1])
    } else {
        return Err(na());
    };
    let through_in = if m[0] == loop_e { m[1] } else { m[0] };
    let x = color(g, through_in) as i64;
    let j = color(g, loop_e) as i64;
    let coef = qbinom(n as i64 - x, j);
    surg.cut(&[sp, mg], &[loop_e, m[2]]);
    surg.join(through_in, through_out);
    Ok(vec![(coef, surg.finish())])
}

fn four_id(g: &PlanarWeb, e: EdgeId) -> Result<Terms> {
    let na = || Error::RelationNotApplicable;
    let edge = g.edges[e];
    let ((u, su), (w, sw)) = (edge.tail.ok_or_else(na)?, edge.head.ok_or_else(na)?);
    let a = g.vertices[u].ends.clone();
    let b = g.vertices[w].ends.clone();
    let c = |e| color(g, e);
    let mut s = Surgery::new(g);
    match (kind(g, u), kind(g, w)) {
        (VertexKind::Merge, VertexKind::Merge) => {
            s.cut(&[u, w], &[e]);
            if sw == 0 {
                // (a0 a1) b1 -> a0 (a1 b1)
                let f = s.edge(c(a[1]) + c(b[1]));
                s.vertex(VertexKind::Merge, &[a[1], b[1], f]);
                s.vertex(VertexKind::Merge, &[a[0], f, b[2]]);
            } else {
                // b0 (a0 a1) -> (b0 a0) a1
                let f = s.edge(c(b[0]) + c(a[0]));
                s.vertex(VertexKind::Merge, &[b[0], a[0], f]);
                s.vertex(VertexKind::Merge, &[f, a[1], b[2]]);
            }
        }
        (VertexKind::Split, VertexKind::Split) => {
            s.cut(&[u, w], &[e]);
            if su == 2 {
                // Left output splits again: flow order b2, b1, a1.
                let f = s.edge(c(b[1]) + c(a[1]));
                s.vertex(VertexKind::Split, &[a[0], f, b[2]]);
                s.vertex(VertexKind::Split, &[f, a[1], b[1]]);
            } else {
                // Right output splits again: flow order a2, b2, b1.
                let f = s.edge(c(a[2]) + c(b[2]));
                s.vertex(VertexKind::Split, &[a[0], b[1], f]);
                s.vertex(VertexKind::Split, &[f, b[2], a[2]]);
            }
        }
        _ => return Err(na()),
    }
    Ok(vec![(LPoly::one(), s.finish())])
}

/// Vertex count of the smallest web a site's terms can leave, relative to
/// `g`: negative when every term is strictly smaller.
pub fn shrinks(g: &PlanarWeb, terms: &Terms) -> bool {
    terms
        .iter()
        .all(|(_, t)| t.num_vertices() < g.num_vertices())
}
