//! Exhaustive verification of the web relations under the oracle.

use serde::Serialize;

use crate::error::Result;
use crate::oracle::eval_web;
use crate::qlaurent::{qbinom, LPoly};
use crate::web::build::{circle, close_pair, close_strand, ladder, Rung};
use crate::web::{Slice, Turn};

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct RelationCount {
    pub relation: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelReport {
    pub n: u32,
    pub max_l: u32,
    pub relations: Vec<RelationCount>,
}

impl RelReport {
    pub fn all_passed(&self) -> bool {
        self.relations.iter().all(|r| r.failed == 0)
    }

    fn tally(&mut self, relation: &'static str, ok: bool) {
        let pos = match self.relations.iter().position(|r| r.relation == relation) {
            Some(p) => p,
            None => {
                self.relations.push(RelationCount {
                    relation,
                    ..Default::default()
                });
                self.relations.len() - 1
            }
        };
        let r = &mut self.relations[pos];
        if ok {
            r.passed += 1;
        } else {
            r.failed += 1;
        }
    }
}

/// Ladders used to close two-rail fragments.
const CONTEXTS: &[&[Rung]] = &[
    &[],
    &[Rung::Left(1)],
    &[Rung::Right(1)],
    &[Rung::Left(1), Rung::Right(2)],
    &[Rung::Right(1), Rung::Left(1)],
];

fn inverse(rungs: &[Rung]) -> Vec<Rung> {
    rungs
        .iter()
        .rev()
        .map(|r| match *r {
            Rung::Left(k) => Rung::Right(k),
            Rung::Right(k) => Rung::Left(k),
        })
        .collect()
}

/// Values of a two-rail fragment in every closing context that fits.
fn in_contexts(
    n: u32,
    bottom: (u32, u32),
    top: (u32, u32),
    fragment: &[Slice],
) -> Result<Vec<LPoly>> {
    let mut out = Vec::new();
    for pre in CONTEXTS {
        for post in CONTEXTS {
            let Some((_, start)) = ladder(0, bottom, &inverse(pre)) else {
                continue;
            };
            let Some((mut mid, _)) = ladder(0, start, pre) else {
                continue;
            };
            let Some((post_slices, end)) = ladder(0, top, post) else {
                continue;
            };
            mid.extend_from_slice(fragment);
            mid.extend(post_slices);
            out.push(eval_web(&close_pair(start, end, &mid), n)?);
        }
    }
    Ok(out)
}

fn linear(terms: &[(LPoly, Vec<LPoly>)], len: usize) -> Vec<LPoly> {
    (0..len)
        .map(|c| terms.iter().map(|(coef, vals)| coef * &vals[c]).sum())
        .collect()
}

/// The ladder switch of `[Left(r), Right(s)]` from `(b1, b2)`. `None` when
/// it does not apply in this direction or exceeds `max_l`; otherwise
/// whether it holds and how many right-hand terms survive.
fn square(
    n: u32,
    (b1, b2): (u32, u32),
    r: u32,
    s: u32,
    max_l: u32,
) -> Result<Option<(bool, usize)>> {
    let Some((lhs, (t1, t2))) = ladder(0, (b1, b2), &[Rung::Left(r), Rung::Right(s)]) else {
        return Ok(None);
    };
    if t1 > b2 || b2 - t1 > max_l {
        return Ok(None);
    }
    let l = b2 - t1;
    let k = r.min(s);
    let mut terms = Vec::new();
    for m in 0..=t1.min(b1) {
        let coef = qbinom(l as i64, k as i64 - m as i64);
        if coef.is_zero() {
            continue;
        }
        let rungs = [
            Rung::Right(m + b1.saturating_sub(t1)),
            Rung::Left(m + t1.saturating_sub(b1)),
        ];
        let (slices, _) = ladder(0, (b1, b2), &rungs).expect("switched ladder fits");
        terms.push((coef, in_contexts(n, (b1, b2), (t1, t2), &slices)?));
    }
    let got = in_contexts(n, (b1, b2), (t1, t2), &lhs)?;
    let expect = linear(&terms, got.len());
    Ok(Some((got == expect, terms.len())))
}

fn three_strand(
    n: u32,
    (a, b, c): (u32, u32, u32),
    below: &[Slice],
    above: &[Slice],
) -> Result<LPoly> {
    let mut middle = below.to_vec();
    middle.extend_from_slice(above);
    eval_web(&close_strand(a + b + c, &middle), n)
}

/// Checks every relation for all parameters allowed at `n`, with rectangle
/// widths `l` up to `max_l`.
pub fn run(n: u32, max_l: u32) -> Result<RelReport> {
    let mut rep = RelReport {
        n,
        max_l,
        relations: Vec::new(),
    };

    for i in 1..=n {
        for turn in [Turn::Ccw, Turn::Cw] {
            rep.tally(
                "circle",
                eval_web(&circle(i, turn), n)? == qbinom(n as i64, i as i64),
            );
        }
    }

    for a in 1..=n {
        for b in 0..=(n - a) {
            for j in 1..a {
                let bigon = [Slice::split(0, j, a - j), Slice::merge(0, j, a - j)];
                let lhs = in_contexts(n, (a, b), (a, b), &bigon)?;
                let rhs = in_contexts(n, (a, b), (a, b), &[])?;
                let f = qbinom(a as i64, j as i64);
                let ok = lhs.iter().zip(&rhs).all(|(l, r)| *l == &f * r);
                rep.tally("bigon", ok);
            }
        }
    }

    for a in 1..n {
        for b in 1..n.saturating_sub(a) {
            for c in 1..=(n - a - b) {
                let abc = (a, b, c);
                let merges = [
                    [Slice::merge(0, a, b), Slice::merge(0, a + b, c)],
                    [Slice::merge(1, b, c), Slice::merge(0, a, b + c)],
                ];
                let splits = [
                    [Slice::split(0, a + b, c), Slice::split(0, a, b)],
                    [Slice::split(0, a, b + c), Slice::split(1, b, c)],
                ];
                let mut merge_ok = true;
                let mut split_ok = true;
                for ctx in &splits {
                    merge_ok &= three_strand(n, abc, ctx, &merges[0])?
                        == three_strand(n, abc, ctx, &merges[1])?;
                }
                for ctx in &merges {
                    split_ok &= three_strand(n, abc, &splits[0], ctx)?
                        == three_strand(n, abc, &splits[1], ctx)?;
                }
                rep.tally("four-valent merge", merge_ok);
                rep.tally("four-valent split", split_ok);
            }
        }
    }

    for b1 in 0..=n {
        for b2 in (b1 == 0) as u32..=(n - b1) {
            for r in 0..=b2 {
                for s in (r == 0) as u32..=(b1 + r) {
                    let Some((ok, terms)) = square(n, (b1, b2), r, s, max_l)? else {
                        continue;
                    };
                    if r == 0 && s > 0 {
                        rep.tally("rectangle anchor k=0", ok && terms == 1);
                    } else if b1 == 0 && r > 0 && s > 0 {
                        rep.tally("rectangle anchor i=0", ok && terms <= 1);
                    } else if s > 0 {
                        let shape = if s >= r { "rectangle 1" } else { "rectangle 2" };
                        rep.tally(shape, ok);
                    }
                }
            }
        }
    }
    Ok(rep)
}
