use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::build::{ladder, Rung};
use super::{Slice, SliceKind, SliceWeb};
use crate::error::{Error, Result};
use crate::qlaurent::LPoly;

/// A formal linear combination of webs with Laurent coefficients. Terms
/// with equal canonical slice lists are merged; zero terms are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebSum {
    pub terms: Vec<(LPoly, SliceWeb)>,
}

impl WebSum {
    pub fn single(coef: LPoly, web: SliceWeb) -> Self {
        let mut s = Self::default();
        s.push(coef, web);
        s
    }

    pub fn push(&mut self, coef: LPoly, web: SliceWeb) {
        if !coef.is_zero() {
            self.terms.push((coef, web));
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Canonicalizes every web and merges equal ones.
    pub fn merged(self) -> WebSum {
        let mut acc: BTreeMap<SliceWeb, LPoly> = BTreeMap::new();
        for (c, w) in self.terms {
            let w = canonicalize(&w);
            *acc.entry(w).or_default() += &c;
        }
        WebSum {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, c)| (c, w))
                .collect(),
        }
    }
}

/// The ladder replacing one crossing, per term: `(coefficient, rungs)`.
/// Bottom colors are `(j, i)` (bottom-left `j`); the top is `(i, j)`.
pub fn crossing_terms(j: u32, i: u32, sign: i8) -> Vec<(LPoly, Vec<Rung>)> {
    let mut out = Vec::new();
    let parity = |e: u32| if e.is_multiple_of(2) { 1 } else { -1 };
    if j >= i {
        for k in 0..=i {
            let c = LPoly::monomial(parity(k + (j + 1) * i), (i - k) as i64);
            out.push((c, vec![Rung::Left(k), Rung::Right(j + k - i)]));
        }
    } else {
        for k in 0..=j {
            let c = LPoly::monomial(parity(k + (i + 1) * j), (j - k) as i64);
            out.push((c, vec![Rung::Right(k), Rung::Left(i + k - j)]));
        }
    }
    if sign < 0 {
        for t in &mut out {
            t.0 = t.0.qconj();
        }
    }
    out
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

/// Replaces every crossing slice by its web expansion. Terms containing an
/// edge of color above `n` vanish and are dropped.
pub fn expand_crossings(w: &SliceWeb, n: u32) -> Result<WebSum> {
    let mut partial: Vec<(LPoly, Vec<Slice>)> = vec![(LPoly::one(), Vec::new())];
    for s in &w.slices {
        match s.kind {
            SliceKind::Crossing {
                inputs: [j, i],
                sign,
            } => {
                if i > n || j > n {
                    return Err(Error::ColorOutOfRange { color: i.max(j), n });
                }
                let options: Vec<(LPoly, Vec<Slice>)> = crossing_terms(j, i, sign)
                    .into_iter()
                    .filter(|(_, rungs)| max_rail((j, i), rungs) <= n)
                    .map(|(c, rungs)| {
                        let (slices, top) =
                            ladder(s.pos, (j, i), &rungs).ok_or(Error::ColorOverflow)?;
                        debug_assert_eq!(top, (i, j));
                        Ok((c, slices))
                    })
                    .collect::<Result<_>>()?;
                let mut next = Vec::with_capacity(partial.len() * options.len());
                for (c, sl) in &partial {
                    for (c2, sl2) in &options {
                        let mut v = sl.clone();
                        v.extend_from_slice(sl2);
                        next.push((c * c2, v));
                    }
                }
                partial = next;
            }
            _ => {
                for (_, sl) in partial.iter_mut() {
                    sl.push(*s);
                }
            }
        }
    }
    let mut sum = WebSum::default();
    for (c, slices) in partial {
        sum.push(
            c,
            SliceWeb {
                bottom: w.bottom.clone(),
                slices,
            },
        );
    }
    Ok(sum.merged())
}

/// Slides independent neighbouring slices so that the one acting further
/// left comes first. Webs differing only by such slides compare equal.
pub fn canonicalize(w: &SliceWeb) -> SliceWeb {
    let mut s = w.slices.clone();
    let limit = s.len() * s.len() + 1;
    for _ in 0..limit {
        let mut changed = false;
        for k in 0..s.len().saturating_sub(1) {
            let (a, b) = (s[k], s[k + 1]);
            let (cb, pb) = b.arity();
            // b acts entirely to the left of a's output. A cup touching a's
            // left edge is ambiguous and would let cup/cap runs cycle.
            let left = if cb == 0 {
                b.pos < a.pos
            } else {
                b.pos + cb <= a.pos
            };
            if left {
                s[k] = b;
                s[k + 1] = Slice::new(a.pos + pb - cb, a.kind);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    SliceWeb {
        bottom: w.bottom.clone(),
        slices: s,
    }
}
