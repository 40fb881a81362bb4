use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Up,
    Down,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }
}

/// Turning sense of a cup or cap, following the flow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Turn {
    Ccw,
    Cw,
}

impl Turn {
    pub fn sign(self) -> i64 {
        match self {
            Turn::Ccw => 1,
            Turn::Cw => -1,
        }
    }

    /// Directions of the (left, right) strands of a cup with this turn.
    /// A counterclockwise cup runs down its left leg and up its right leg.
    pub fn cup_dirs(self) -> (Dir, Dir) {
        match self {
            Turn::Ccw => (Dir::Down, Dir::Up),
            Turn::Cw => (Dir::Up, Dir::Down),
        }
    }

    /// Directions of the (left, right) strands entering a cap with this turn.
    /// A counterclockwise cap comes up its right leg and leaves down its left.
    pub fn cap_dirs(self) -> (Dir, Dir) {
        match self {
            Turn::Ccw => (Dir::Down, Dir::Up),
            Turn::Cw => (Dir::Up, Dir::Down),
        }
    }

    pub fn for_cup(left: Dir) -> Turn {
        if left == Dir::Down {
            Turn::Ccw
        } else {
            Turn::Cw
        }
    }

    pub fn for_cap(left: Dir) -> Turn {
        if left == Dir::Down {
            Turn::Ccw
        } else {
            Turn::Cw
        }
    }
}

/// One colored, directed strand crossing a horizontal level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Strand {
    pub color: u32,
    pub dir: Dir,
}

impl Strand {
    pub fn new(color: u32, dir: Dir) -> Self {
        Self { color, dir }
    }
    pub fn up(color: u32) -> Self {
        Self::new(color, Dir::Up)
    }
    pub fn down(color: u32) -> Self {
        Self::new(color, Dir::Down)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SliceKind {
    /// Creates an adjacent pair of opposite strands at `pos, pos+1`.
    Cup { color: u32, turn: Turn },
    /// Annihilates the adjacent pair at `pos, pos+1`.
    Cap { color: u32, turn: Turn },
    /// Two same-direction strands at `pos, pos+1` become one of summed color.
    Merge {
        #[serde(rename = "in")]
        inputs: [u32; 2],
    },
    /// One strand at `pos` becomes two of the given colors.
    Split { out: [u32; 2] },
    /// Two upward strands at `pos, pos+1` cross; the bottom-left strand
    /// exits top-right. Positive sign: the bottom-left strand is over.
    Crossing {
        #[serde(rename = "in")]
        inputs: [u32; 2],
        sign: i8,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slice {
    pub pos: usize,
    #[serde(flatten)]
    pub kind: SliceKind,
}

impl Slice {
    pub fn new(pos: usize, kind: SliceKind) -> Self {
        Self { pos, kind }
    }
    pub fn cup(pos: usize, color: u32, turn: Turn) -> Self {
        Self::new(pos, SliceKind::Cup { color, turn })
    }
    pub fn cap(pos: usize, color: u32, turn: Turn) -> Self {
        Self::new(pos, SliceKind::Cap { color, turn })
    }
    pub fn merge(pos: usize, a: u32, b: u32) -> Self {
        Self::new(pos, SliceKind::Merge { inputs: [a, b] })
    }
    pub fn split(pos: usize, a: u32, b: u32) -> Self {
        Self::new(pos, SliceKind::Split { out: [a, b] })
    }
    pub fn crossing(pos: usize, a: u32, b: u32, sign: i8) -> Self {
        Self::new(
            pos,
            SliceKind::Crossing {
                inputs: [a, b],
                sign,
            },
        )
    }

    /// Number of strands consumed and produced.
    pub fn arity(&self) -> (usize, usize) {
        match self.kind {
            SliceKind::Cup { .. } => (0, 2),
            SliceKind::Cap { .. } => (2, 0),
            SliceKind::Merge { .. } => (2, 1),
            SliceKind::Split { .. } => (1, 2),
            SliceKind::Crossing { .. } => (2, 2),
        }
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self.kind, SliceKind::Merge { .. } | SliceKind::Split { .. })
    }

    /// Applies the slice to a strand word, checking consistency.
    pub fn apply(&self, word: &mut Vec<Strand>, n: u32) -> Result<()> {
        let (consumed, _) = self.arity();
        let p = self.pos;
        if p + consumed > word.len() || (consumed == 0 && p > word.len()) {
            return Err(Error::InvalidWeb(format!(
                "slice at position {p} out of range for width {}",
                word.len()
            )));
        }
        let check_color = |c: u32| -> Result<()> {
            if c == 0 {
                Err(Error::InvalidWeb("color 0 edge".into()))
            } else if c > n {
                Err(Error::InvalidWeb(format!("color exceeds n ({c} > {n})")))
            } else {
                Ok(())
            }
        };
        match self.kind {
            SliceKind::Cup { color, turn } => {
                check_color(color)?;
                let (l, r) = turn.cup_dirs();
                word.splice(p..p, [Strand::new(color, l), Strand::new(color, r)]);
            }
            SliceKind::Cap { color, turn } => {
                check_color(color)?;
                let (l, r) = turn.cap_dirs();
                if word[p] != Strand::new(color, l) || word[p + 1] != Strand::new(color, r) {
                    return Err(Error::InvalidWeb(format!(
                        "cap at {p} does not match strands {:?} {:?}",
                        word[p],
                        word[p + 1]
                    )));
                }
                word.drain(p..p + 2);
            }
            SliceKind::Merge { inputs: [a, b] } => {
                check_color(a)?;
                check_color(b)?;
                check_color(a + b)?;
                let (s, t) = (word[p], word[p + 1]);
                if s.color != a || t.color != b || s.dir != t.dir {
                    return Err(Error::InvalidWeb(format!(
                        "merge at {p} does not match strands {s:?} {t:?}"
                    )));
                }
                word.splice(p..p + 2, [Strand::new(a + b, s.dir)]);
            }
            SliceKind::Split { out: [a, b] } => {
                check_color(a)?;
                check_color(b)?;
                let s = word[p];
                if s.color != a + b {
                    return Err(Error::InvalidWeb(format!(
                        "split at {p} does not match strand {s:?}"
                    )));
                }
                word.splice(p..p + 1, [Strand::new(a, s.dir), Strand::new(b, s.dir)]);
            }
            SliceKind::Crossing {
                inputs: [a, b],
                sign,
            } => {
                check_color(a)?;
                check_color(b)?;
                if sign != 1 && sign != -1 {
                    return Err(Error::InvalidWeb("crossing sign must be ±1".into()));
                }
                if word[p] != Strand::up(a) || word[p + 1] != Strand::up(b) {
                    return Err(Error::InvalidWeb(format!(
                        "crossing at {p} needs upward strands {a}, {b}"
                    )));
                }
                word[p] = Strand::up(b);
                word[p + 1] = Strand::up(a);
            }
        }
        Ok(())
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SliceKind::Cup { color, turn } => write!(f, "cup{color}{turn:?}@{}", self.pos),
            SliceKind::Cap { color, turn } => write!(f, "cap{color}{turn:?}@{}", self.pos),
            SliceKind::Merge { inputs: [a, b] } => write!(f, "merge({a},{b})@{}", self.pos),
            SliceKind::Split { out: [a, b] } => write!(f, "split({a},{b})@{}", self.pos),
            SliceKind::Crossing {
                inputs: [a, b],
                sign,
            } => {
                write!(
                    f,
                    "x{}({a},{b})@{}",
                    if sign > 0 { "+" } else { "-" },
                    self.pos
                )
            }
        }
    }
}

/// A web (or sliced diagram) as a vertical composition of elementary slices
/// acting on a running strand word. `bottom` is the initial word; closed
/// webs have empty bottom and top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct SliceWeb {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bottom: Vec<Strand>,
    pub slices: Vec<Slice>,
}

impl SliceWeb {
    pub fn closed(slices: Vec<Slice>) -> Self {
        Self {
            bottom: Vec::new(),
            slices,
        }
    }

    pub fn with_bottom(bottom: Vec<Strand>, slices: Vec<Slice>) -> Self {
        Self { bottom, slices }
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty() && self.bottom.is_empty()
    }

    /// Strand words before each slice and after the last one. Fails on the
    /// first inconsistent slice.
    pub fn words(&self, n: u32) -> Result<Vec<Vec<Strand>>> {
        let mut w = self.bottom.clone();
        let mut out = Vec::with_capacity(self.slices.len() + 1);
        out.push(w.clone());
        for (idx, s) in self.slices.iter().enumerate() {
            s.apply(&mut w, n).map_err(|e| match e {
                Error::InvalidWeb(m) => Error::InvalidWeb(format!("slice {idx} ({s}): {m}")),
                other => other,
            })?;
            out.push(w.clone());
        }
        Ok(out)
    }

    pub fn top(&self, n: u32) -> Result<Vec<Strand>> {
        Ok(self.words(n)?.pop().unwrap_or_default())
    }

    /// Checks every slice against the running word, color bounds, and that
    /// the web is closed. Reports the first violation.
    pub fn validate(&self, n: u32) -> Result<()> {
        if !self.bottom.is_empty() {
            return Err(Error::InvalidWeb("web has an open bottom".into()));
        }
        if !self.top(n)?.is_empty() {
            return Err(Error::InvalidWeb("web has an open top".into()));
        }
        Ok(())
    }

    pub fn has_crossings(&self) -> bool {
        self.slices
            .iter()
            .any(|s| matches!(s.kind, SliceKind::Crossing { .. }))
    }

    pub fn crossing_count(&self) -> usize {
        self.slices
            .iter()
            .filter(|s| matches!(s.kind, SliceKind::Crossing { .. }))
            .count()
    }

    pub fn max_width(&self, n: u32) -> Result<usize> {
        Ok(self.words(n)?.iter().map(Vec::len).max().unwrap_or(0))
    }

    /// Places `other` to the right of `self` (distant union). Both must be
    /// closed.
    pub fn disjoint_union(&self, other: &SliceWeb) -> SliceWeb {
        let mut slices = self.slices.clone();
        slices.extend_from_slice(&other.slices);
        SliceWeb::closed(slices)
    }

    /// Reverses every strand direction (the dual web).
    pub fn reversed(&self) -> SliceWeb {
        let flip_turn = |t: Turn| match t {
            Turn::Ccw => Turn::Cw,
            Turn::Cw => Turn::Ccw,
        };
        let slices = self
            .slices
            .iter()
            .map(|s| {
                let kind = match s.kind {
                    SliceKind::Cup { color, turn } => SliceKind::Cup {
                        color,
                        turn: flip_turn(turn),
                    },
                    SliceKind::Cap { color, turn } => SliceKind::Cap {
                        color,
                        turn: flip_turn(turn),
                    },
                    k => k,
                };
                Slice::new(s.pos, kind)
            })
            .collect();
        SliceWeb {
            bottom: self
                .bottom
                .iter()
                .map(|s| Strand::new(s.color, s.dir.flip()))
                .collect(),
            slices,
        }
    }
}

impl fmt::Display for SliceWeb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.slices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}
