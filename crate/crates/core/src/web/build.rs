//! Constructors for common web fragments.

use super::{Slice, SliceWeb, Turn};

/// Direction in which a ladder rung transfers color between two rails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rung {
    /// Move `k` units from the right rail to the left rail.
    Left(u32),
    /// Move `k` units from the left rail to the right rail.
    Right(u32),
}

/// Slices for a two-rail upward ladder whose left rail sits at `pos`.
///
/// Rails of color 0 are absent; when one rail is absent the other sits at
/// `pos`. Returns `None` if a rung moves more color than its source rail
/// carries.
pub fn ladder(pos: usize, bottom: (u32, u32), rungs: &[Rung]) -> Option<(Vec<Slice>, (u32, u32))> {
    let (mut a, mut b) = bottom;
    let mut out = Vec::new();
    for &rung in rungs {
        match rung {
            Rung::Left(0) | Rung::Right(0) => {}
            Rung::Left(r) => {
                if r > b {
                    return None;
                }
                match (a > 0, b - r > 0) {
                    (true, true) => {
                        out.push(Slice::split(pos + 1, r, b - r));
                        out.push(Slice::merge(pos, a, r));
                    }
                    (true, false) => out.push(Slice::merge(pos, a, b)),
                    (false, true) => out.push(Slice::split(pos, r, b - r)),
                    (false, false) => {}
                }
                a += r;
                b -= r;
            }
            Rung::Right(r) => {
                if r > a {
                    return None;
                }
                match (a - r > 0, b > 0) {
                    (true, true) => {
                        out.push(Slice::split(pos, a - r, r));
                        out.push(Slice::merge(pos + 1, r, b));
                    }
                    (false, true) => out.push(Slice::merge(pos, a, b)),
                    (true, false) => out.push(Slice::split(pos, a - r, r)),
                    (false, false) => {}
                }
                a -= r;
                b += r;
            }
        }
    }
    Some((out, (a, b)))
}

/// An unknotted circle of one color.
pub fn circle(color: u32, turn: Turn) -> SliceWeb {
    SliceWeb::closed(vec![Slice::cup(0, color, turn), Slice::cap(0, color, turn)])
}

/// Closes an upward fragment acting on a single strand of color `c` at
/// position 0 into a clockwise loop.
pub fn close_strand(c: u32, middle: &[Slice]) -> SliceWeb {
    let mut slices = vec![Slice::cup(0, c, Turn::Cw)];
    slices.extend_from_slice(middle);
    slices.push(Slice::cap(0, c, Turn::Cw));
    SliceWeb::closed(slices)
}

/// Closes an upward two-rail fragment from `bottom` to `top` by splitting a
/// single strand into `bottom` and merging `top` back, then closing that
/// strand. Zero rails are absent, matching [`ladder`].
pub fn close_pair(bottom: (u32, u32), top: (u32, u32), middle: &[Slice]) -> SliceWeb {
    let c = bottom.0 + bottom.1;
    assert_eq!(c, top.0 + top.1, "rail colors must be conserved");
    let mut inner = Vec::new();
    if bottom.0 > 0 && bottom.1 > 0 {
        inner.push(Slice::split(0, bottom.0, bottom.1));
    }
    inner.extend_from_slice(middle);
    if top.0 > 0 && top.1 > 0 {
        inner.push(Slice::merge(0, top.0, top.1));
    }
    close_strand(c, &inner)
}
