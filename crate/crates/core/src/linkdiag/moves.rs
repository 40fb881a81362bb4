use serde::{Deserialize, Serialize};

use super::diagram::{ArcId, ArcUnion, Crossing, Diagram, Role};
use crate::error::{Error, Result};

/// An arc traversed along (`true`) or against its orientation.
pub type Dart = (ArcId, bool);

/// A Reidemeister move together with the place it applies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    /// Adds a kink of the given sign on `arc`, on its left or right side.
    R1 { arc: ArcId, left: bool, sign: i8 },
    /// Removes the kink at a crossing.
    R1Inverse { crossing: usize },
    /// Pushes the arc of dart `a` across the arc of dart `b`; both darts must
    /// border the same face.
    R2 { a: Dart, b: Dart, a_over: bool },
    /// Removes the two crossings around a bigon face.
    R2Inverse { face: Vec<Dart> },
    /// Slides a strand across the crossing opposite it in a triangle face.
    R3 { face: Vec<Dart> },
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::R1 { sign, .. } if *sign > 0 => "R1+",
            Move::R1 { .. } => "R1-",
            Move::R1Inverse { .. } => "R1^-1",
            Move::R2 { .. } => "R2",
            Move::R2Inverse { .. } => "R2^-1",
            Move::R3 { .. } => "R3",
        }
    }
}

fn not_applicable(why: &str) -> Error {
    Error::MoveNotApplicable(why.to_string())
}

/// Applies one Reidemeister move.
pub fn apply_reidemeister(d: &Diagram, mv: &Move) -> Result<Diagram> {
    match mv {
        Move::R1 { arc, left, sign } => r1(d, *arc, *left, *sign),
        Move::R1Inverse { crossing } => r1_inverse(d, *crossing),
        Move::R2 { a, b, a_over } => r2(d, *a, *b, *a_over),
        Move::R2Inverse { face } => r2_inverse(d, face),
        Move::R3 { face } => r3(d, face),
    }
}

fn r1(d: &Diagram, a: ArcId, left: bool, sign: i8) -> Result<Diagram> {
    if a >= d.num_arcs() || (sign != 1 && sign != -1) {
        return Err(not_applicable("no such arc"));
    }
    let mut out = d.clone();
    let color = d.arc_colors[a];
    let b = out.arc_colors.len();
    out.arc_colors.push(color);
    let is_loop = d.loops.contains(&a);
    let c = if is_loop {
        out.loops.retain(|&x| x != a);
        a
    } else {
        let c = out.arc_colors.len();
        out.arc_colors.push(color);
        let (head, _) = d.arc_ends();
        let h = head[a].unwrap();
        out.crossings[h.crossing].ends[h.slot] = c;
        c
    };
    let build = |first_over: bool| {
        let (i1, o1, i2, o2) = if first_over {
            (Role::OverIn, Role::OverOut, Role::UnderIn, Role::UnderOut)
        } else {
            (Role::UnderIn, Role::UnderOut, Role::OverIn, Role::OverOut)
        };
        if left {
            Crossing::from_ccw([(a, i1), (b, i2), (b, o1), (c, o2)])
        } else {
            Crossing::from_ccw([(a, i1), (c, o2), (b, o1), (b, i2)])
        }
    };
    let x = [build(true), build(false)]
        .into_iter()
        .find(|x| x.sign == sign)
        .unwrap();
    out.crossings.push(x);
    Ok(out.normalized())
}

fn r1_inverse(d: &Diagram, ci: usize) -> Result<Diagram> {
    let x = d
        .crossings
        .get(ci)
        .ok_or_else(|| not_applicable("no such crossing"))?;
    for h in 0..4 {
        if !x.role(h).is_in() {
            continue;
        }
        let b = x.ends[h];
        for t in [(h + 1) % 4, (h + 3) % 4] {
            if x.ends[t] != b || x.role(t).is_in() {
                continue;
            }
            let a = x.ends[(t + 2) % 4];
            let c = x.ends[(h + 2) % 4];
            let mut u = ArcUnion::new(d.num_arcs());
            u.union(a, c);
            let crossings = d
                .crossings
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != ci)
                .map(|(_, c)| *c)
                .collect();
            let keep = (0..d.num_arcs()).filter(|&k| k != b);
            return Ok(Diagram::rebuild(crossings, &d.arc_colors, &mut u, keep));
        }
    }
    Err(not_applicable("crossing is not a kink"))
}

fn face_containing(d: &Diagram, a: Dart, b: Dart) -> bool {
    d.faces().iter().any(|f| f.contains(&a) && f.contains(&b))
}

fn r2(d: &Diagram, x: Dart, y: Dart, x_over: bool) -> Result<Diagram> {
    if x.0 == y.0 || x.0 >= d.num_arcs() || y.0 >= d.num_arcs() {
        return Err(not_applicable("R2 needs two distinct arcs"));
    }
    if d.loops.contains(&x.0) || d.loops.contains(&y.0) || !face_containing(d, x, y) {
        return Err(not_applicable("darts do not share a face"));
    }
    let (head, _) = d.arc_ends();
    let mut out = d.clone();
    // Arc pieces in arc order; the first keeps the original id and tail.
    let pieces = |arc: ArcId, out: &mut Diagram| -> [ArcId; 3] {
        let color = out.arc_colors[arc];
        let p1 = out.arc_colors.len();
        out.arc_colors.push(color);
        let p2 = out.arc_colors.len();
        out.arc_colors.push(color);
        let h = head[arc].unwrap();
        out.crossings[h.crossing].ends[h.slot] = p2;
        [arc, p1, p2]
    };
    let px = pieces(x.0, &mut out);
    let py = pieces(y.0, &mut out);
    // Pieces in dart order.
    let dx = if x.1 { px } else { [px[2], px[1], px[0]] };
    let dy = if y.1 { py } else { [py[2], py[1], py[0]] };
    let (x_l, x_m, x_r) = (dx[0], dx[1], dx[2]);
    let (y_1, y_m, y_2) = (dy[0], dy[1], dy[2]);
    let roles = |along: bool, over: bool| -> (Role, Role) {
        // (role of the piece entered first in dart order, role of the next)
        let (i, o) = if over {
            (Role::OverIn, Role::OverOut)
        } else {
            (Role::UnderIn, Role::UnderOut)
        };
        if along {
            (i, o)
        } else {
            (o, i)
        }
    };
    let (xa, xb) = roles(x.1, x_over);
    let (ya, yb) = roles(y.1, !x_over);
    // Dart x runs east below the face, dart y runs west above it; x is
    // pushed north across y, meeting it at c1 (west) then c2 (east).
    let c1 = Crossing::from_ccw([(y_m, ya), (x_m, xb), (y_2, yb), (x_l, xa)]);
    let c2 = Crossing::from_ccw([(y_1, ya), (x_m, xa), (y_m, yb), (x_r, xb)]);
    out.crossings.push(c1);
    out.crossings.push(c2);
    Ok(out.normalized())
}

fn r2_inverse(d: &Diagram, face: &[Dart]) -> Result<Diagram> {
    if face.len() != 2 || !d.faces().iter().any(|f| sorted(f) == sorted(face)) {
        return Err(not_applicable("not a bigon face"));
    }
    let (head, tail) = d.arc_ends();
    let (e1, e2) = (face[0].0, face[1].0);
    if e1 == e2 {
        return Err(not_applicable("degenerate bigon"));
    }
    let mut u = ArcUnion::new(d.num_arcs());
    let mut over_flags = Vec::new();
    let mut removed = Vec::new();
    for e in [e1, e2] {
        let (t, h) = (tail[e].unwrap(), head[e].unwrap());
        if t.crossing == h.crossing {
            return Err(not_applicable("degenerate bigon"));
        }
        let ct = &d.crossings[t.crossing];
        let ch = &d.crossings[h.crossing];
        let (ot, oh) = (ct.role(t.slot).is_over(), ch.role(h.slot).is_over());
        if ot != oh {
            return Err(not_applicable("bigon strands alternate"));
        }
        over_flags.push(ot);
        u.union(ct.ends[(t.slot + 2) % 4], ch.ends[(h.slot + 2) % 4]);
        removed.push(t.crossing);
        removed.push(h.crossing);
    }
    if over_flags[0] == over_flags[1] {
        return Err(not_applicable("both bigon edges on the same level"));
    }
    removed.sort_unstable();
    removed.dedup();
    if removed.len() != 2 {
        return Err(not_applicable("degenerate bigon"));
    }
    let crossings = d
        .crossings
        .iter()
        .enumerate()
        .filter(|(k, _)| !removed.contains(k))
        .map(|(_, c)| *c)
        .collect();
    let keep = (0..d.num_arcs()).filter(|&k| k != e1 && k != e2);
    Ok(Diagram::rebuild(crossings, &d.arc_colors, &mut u, keep))
}

fn sorted(f: &[Dart]) -> Vec<Dart> {
    let mut v = f.to_vec();
    v.sort_unstable();
    v
}

struct Side {
    arc: ArcId,
    tail: usize,
    head: usize,
    in_arc: ArcId,
    out_arc: ArcId,
    over_tail: bool,
    over_head: bool,
}

fn r3(d: &Diagram, face: &[Dart]) -> Result<Diagram> {
    if face.len() != 3 || !d.faces().iter().any(|f| sorted(f) == sorted(face)) {
        return Err(not_applicable("not a triangle face"));
    }
    let (head, tail) = d.arc_ends();
    let mut sides = Vec::new();
    for &(arc, _) in face {
        let (t, h) = (tail[arc].unwrap(), head[arc].unwrap());
        let (ct, ch) = (&d.crossings[t.crossing], &d.crossings[h.crossing]);
        sides.push(Side {
            arc,
            tail: t.crossing,
            head: h.crossing,
            in_arc: ct.ends[(t.slot + 2) % 4],
            out_arc: ch.ends[(h.slot + 2) % 4],
            over_tail: ct.role(t.slot).is_over(),
            over_head: ch.role(h.slot).is_over(),
        });
    }
    let mut cs: Vec<usize> = sides.iter().flat_map(|s| [s.tail, s.head]).collect();
    cs.sort_unstable();
    cs.dedup();
    let side_arcs: Vec<ArcId> = sides.iter().map(|s| s.arc).collect();
    if cs.len() != 3
        || side_arcs[0] == side_arcs[1]
        || side_arcs[1] == side_arcs[2]
        || side_arcs[0] == side_arcs[2]
        || sides.iter().any(|s| s.tail == s.head)
        || sides
            .iter()
            .any(|s| side_arcs.contains(&s.in_arc) || side_arcs.contains(&s.out_arc))
    {
        return Err(not_applicable("degenerate triangle"));
    }
    let top = sides.iter().filter(|s| s.over_tail && s.over_head).count();
    let bottom = sides
        .iter()
        .filter(|s| !s.over_tail && !s.over_head)
        .count();
    if top != 1 || bottom != 1 {
        return Err(not_applicable("triangle strands are not stacked"));
    }
    let mut out = d.clone();
    for &k in &cs {
        let old = d.crossings[k];
        let mut over = None;
        let mut under = None;
        for s in &sides {
            // Along each strand the two triangle crossings swap order.
            let (pair, is_over) = if s.tail == k {
                ((s.arc, s.out_arc), s.over_tail)
            } else if s.head == k {
                ((s.in_arc, s.arc), s.over_head)
            } else {
                continue;
            };
            if is_over {
                over = Some(pair);
            } else {
                under = Some(pair);
            }
        }
        out.crossings[k] = Crossing::from_strands(old.sign, over.unwrap(), under.unwrap());
    }
    Ok(out.normalized())
}

/// Every legal move site of the diagram, in a deterministic order.
pub fn move_sites(d: &Diagram) -> Vec<Move> {
    let mut out = Vec::new();
    for arc in 0..d.num_arcs() {
        for left in [true, false] {
            for sign in [1, -1] {
                out.push(Move::R1 { arc, left, sign });
            }
        }
    }
    for crossing in 0..d.crossings.len() {
        let mv = Move::R1Inverse { crossing };
        if apply_reidemeister(d, &mv).is_ok() {
            out.push(mv);
        }
    }
    let faces = d.faces();
    for f in &faces {
        for (i, &a) in f.iter().enumerate() {
            for &b in &f[i + 1..] {
                if a.0 == b.0 {
                    continue;
                }
                for a_over in [true, false] {
                    out.push(Move::R2 { a, b, a_over });
                }
            }
        }
        if f.len() == 2 {
            let mv = Move::R2Inverse { face: f.clone() };
            if apply_reidemeister(d, &mv).is_ok() {
                out.push(mv);
            }
        }
        if f.len() == 3 {
            let mv = Move::R3 { face: f.clone() };
            if apply_reidemeister(d, &mv).is_ok() {
                out.push(mv);
            }
        }
    }
    out
}
