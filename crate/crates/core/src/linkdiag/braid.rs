use serde::{Deserialize, Serialize};

use super::diagram::{ArcUnion, Crossing, Diagram};
use crate::error::{Error, Result};

/// Closure of a braid word. Letter `+k` is a positive crossing of strands
/// `k, k+1` (the bottom-left strand passes over), `-k` its inverse.
pub fn from_braid(word: &[i32], strands: usize) -> Result<Diagram> {
    from_braid_colored(word, strands, &vec![1; strands])
}

/// Braid closure with a color per bottom strand position.
pub fn from_braid_colored(word: &[i32], strands: usize, colors: &[u32]) -> Result<Diagram> {
    if colors.len() != strands {
        return Err(Error::ColoringNotTotal);
    }
    for &g in word {
        if g == 0 || g.unsigned_abs() as usize >= strands.max(1) {
            return Err(Error::GeneratorOutOfRange(g));
        }
    }
    let mut arc_colors: Vec<u32> = colors.to_vec();
    let mut current: Vec<usize> = (0..strands).collect();
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let k = g.unsigned_abs() as usize - 1;
        let (left, right) = (current[k], current[k + 1]);
        let (new_l, new_r) = (arc_colors.len(), arc_colors.len() + 1);
        // The left strand exits top-right and the right strand top-left.
        arc_colors.push(arc_colors[right]);
        arc_colors.push(arc_colors[left]);
        let c = if g > 0 {
            Crossing::from_strands(1, (left, new_r), (right, new_l))
        } else {
            Crossing::from_strands(-1, (right, new_l), (left, new_r))
        };
        crossings.push(c);
        current[k] = new_l;
        current[k + 1] = new_r;
    }
    let mut u = ArcUnion::new(arc_colors.len());
    for (pos, &top) in current.iter().enumerate() {
        u.union(pos, top);
    }
    let d = Diagram::rebuild(crossings, &arc_colors, &mut u, 0..arc_colors.len());
    d.validate()?;
    Ok(d)
}

/// A braid-like tangle: `strands` upward strands with bottom colors, whose
/// top boundary must repeat the bottom boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tangle {
    pub strands: usize,
    pub word: Vec<i32>,
    pub colors: Vec<u32>,
}

impl Tangle {
    pub fn new(word: Vec<i32>, strands: usize, colors: Vec<u32>) -> Self {
        Self {
            strands,
            word,
            colors,
        }
    }

    pub fn uniform(word: Vec<i32>, strands: usize) -> Self {
        Self::new(word, strands, vec![1; strands])
    }

    /// Colors along the top boundary.
    pub fn top_colors(&self) -> Vec<u32> {
        let mut c = self.colors.clone();
        for &g in &self.word {
            let k = g.unsigned_abs() as usize - 1;
            if k + 1 < c.len() {
                c.swap(k, k + 1);
            }
        }
        c
    }

    pub fn closure(&self) -> Result<Diagram> {
        periodic_cover(self, 1)
    }
}

/// Closure of the `p`-fold vertical self-composition of `t`.
pub fn periodic_cover(t: &Tangle, p: usize) -> Result<Diagram> {
    if p == 0 {
        return Err(Error::InvalidParameter("period must be at least 1".into()));
    }
    for &g in &t.word {
        if g == 0 || g.unsigned_abs() as usize >= t.strands.max(1) {
            return Err(Error::GeneratorOutOfRange(g));
        }
    }
    if t.colors.len() != t.strands {
        return Err(Error::ColoringNotTotal);
    }
    if t.top_colors() != t.colors {
        return Err(Error::TangleNotComposable);
    }
    let word: Vec<i32> = std::iter::repeat_n(t.word.iter().copied(), p)
        .flatten()
        .collect();
    from_braid_colored(&word, t.strands, &t.colors)
}
