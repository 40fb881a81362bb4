//! Exact state-sum evaluation of closed, crossing-free sliced webs.
//!
//! A state labels every edge of color `c` with a `c`-element subset of
//! `{1..n}`. Labels are disjoint-unioned at trivalent vertices and carried
//! unchanged around cups and caps. The weight of a state is a product of
//! vertex factors `v^{π(L,R)}` (flow merge) and `v^{-π(R,L)}` (flow split),
//! where `L, R` are the labels on the left and right of the flow, times a
//! rotation factor `v^{ε ρ(A) / 2}` per turnback.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::qlaurent::LPoly;
use crate::web::build::ladder;
use crate::web::{crossing_terms, Dir, Slice, SliceKind, SliceWeb, Strand};

/// `#{(a, b) ∈ A × B : a > b}` for bitmask subsets (bit `a-1` for label `a`).
pub fn pi(a: u16, b: u16) -> i64 {
    let mut total = 0;
    let mut rest = a;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        let below = (1u32 << bit) - 1;
        total += (b as u32 & below).count_ones() as i64;
        rest &= rest - 1;
    }
    total
}

/// `Σ_{a∈A} (n + 1 - 2a)`.
pub fn rho(a: u16, n: u32) -> i64 {
    let mut total = 0;
    let mut rest = a;
    while rest != 0 {
        let label = rest.trailing_zeros() as i64 + 1;
        total += n as i64 + 1 - 2 * label;
        rest &= rest - 1;
    }
    total
}

fn subsets_of_size(n: u32, size: u32) -> Vec<u16> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() == size)
        .map(|m| m as u16)
        .collect()
}

/// Sub-subsets of `s` of the given size, in increasing mask order.
fn subsets_within(s: u16, size: u32) -> Vec<u16> {
    let mut out = Vec::new();
    let mut sub = s;
    loop {
        if sub.count_ones() == size {
            out.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & s;
    }
    out.reverse();
    out
}

/// Weight of one slice in half-powers of `v`, or `None` if the labels are
/// incompatible. `below` and `above` are the labels of the strands consumed
/// and produced.
fn slice_weight_half(
    kind: &SliceKind,
    dir: Dir,
    below: &[u16],
    above: &[u16],
    n: u32,
) -> Option<i64> {
    let flow_merge = |l: u16, r: u16| -> Option<i64> { (l & r == 0).then(|| 2 * pi(l, r)) };
    let flow_split = |l: u16, r: u16| -> Option<i64> { (l & r == 0).then(|| -2 * pi(r, l)) };
    match *kind {
        SliceKind::Cup { turn, .. } => {
            (above[0] == above[1]).then(|| turn.sign() * rho(above[0], n))
        }
        SliceKind::Cap { turn, .. } => {
            (below[0] == below[1]).then(|| turn.sign() * rho(below[0], n))
        }
        SliceKind::Merge { .. } => {
            let (a, b) = (below[0], below[1]);
            if a | b != above[0] {
                return None;
            }
            match dir {
                Dir::Up => flow_merge(a, b),
                // Flow runs downward: the single strand splits, and the
                // flow's left is the picture's right.
                Dir::Down => flow_split(b, a),
            }
        }
        SliceKind::Split { .. } => {
            let (a, b) = (above[0], above[1]);
            if a | b != below[0] {
                return None;
            }
            match dir {
                Dir::Up => flow_split(a, b),
                Dir::Down => flow_merge(b, a),
            }
        }
        SliceKind::Crossing { .. } => None,
    }
}

fn check_evaluable(w: &SliceWeb, n: u32) -> Result<()> {
    check_closed(w, n)?;
    if w.has_crossings() {
        return Err(Error::InvalidWeb("oracle input contains crossings".into()));
    }
    Ok(())
}

fn check_closed(w: &SliceWeb, n: u32) -> Result<()> {
    if n == 0 || n > 16 {
        return Err(Error::InvalidParameter(format!("n = {n} outside 1..=16")));
    }
    if !w.bottom.is_empty() {
        return Err(Error::OracleRequiresClosedWeb);
    }
    let top = w.top(n)?;
    if !top.is_empty() {
        return Err(Error::OracleRequiresClosedWeb);
    }
    Ok(())
}

type Frontier = HashMap<Vec<u16>, LPoly>;

struct Dp {
    n: u32,
    by_size: HashMap<u32, Vec<u16>>,
    tables: HashMap<(u32, u32, i8), CrossingTable>,
}

/// Per input label pair, the weighted output label pairs of an expanded
/// crossing, in half-powers of `v`.
type CrossingTable = HashMap<(u16, u16), Vec<((u16, u16), LPoly)>>;

impl Dp {
    fn new(n: u32) -> Self {
        Self {
            n,
            by_size: HashMap::new(),
            tables: HashMap::new(),
        }
    }

    fn run(&mut self, frontier: Frontier, slices: &[Slice], words: &[Vec<Strand>]) -> Frontier {
        let mut frontier = frontier;
        for (idx, slice) in slices.iter().enumerate() {
            frontier = self.step(frontier, slice, &words[idx]);
        }
        frontier
    }

    fn step(&mut self, frontier: Frontier, slice: &Slice, word: &[Strand]) -> Frontier {
        let n = self.n;
        let p = slice.pos;
        let (consumed, _) = slice.arity();
        let mut next: Frontier = HashMap::with_capacity(frontier.len());
        let mut emit = |labels: &[u16], above: &[u16], term: LPoly| {
            let mut key = Vec::with_capacity(labels.len() + 2);
            key.extend_from_slice(&labels[..p]);
            key.extend_from_slice(above);
            key.extend_from_slice(&labels[p + consumed..]);
            match next.get_mut(&key) {
                Some(acc) => *acc += &term,
                None => {
                    next.insert(key, term);
                }
            }
        };
        if let SliceKind::Crossing {
            inputs: [j, i],
            sign,
        } = slice.kind
        {
            let table = self.crossing_table(j, i, sign);
            for (labels, value) in frontier {
                if let Some(outs) = table.get(&(labels[p], labels[p + 1])) {
                    for ((x, y), w) in outs {
                        emit(&labels, &[*x, *y], &value * w);
                    }
                }
            }
        } else {
            let dir = match slice.kind {
                SliceKind::Cup { turn, .. } => turn.cup_dirs().0,
                _ => word[p].dir,
            };
            for (labels, value) in frontier {
                let below = &labels[p..p + consumed];
                let choices: Vec<Vec<u16>> = match slice.kind {
                    SliceKind::Cup { color, .. } => self
                        .by_size
                        .entry(color)
                        .or_insert_with(|| subsets_of_size(n, color))
                        .iter()
                        .map(|&s| vec![s, s])
                        .collect(),
                    SliceKind::Cap { .. } => vec![vec![]],
                    SliceKind::Merge { .. } => vec![vec![below[0] | below[1]]],
                    SliceKind::Split { out: [a, _] } => subsets_within(below[0], a)
                        .into_iter()
                        .map(|l| vec![l, below[0] & !l])
                        .collect(),
                    SliceKind::Crossing { .. } => unreachable!(),
                };
                for above in choices {
                    if let Some(h) = slice_weight_half(&slice.kind, dir, below, &above, n) {
                        emit(&labels, &above, value.shift(h));
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        next
    }

    fn crossing_table(&mut self, j: u32, i: u32, sign: i8) -> CrossingTable {
        if let Some(t) = self.tables.get(&(j, i, sign)) {
            return t.clone();
        }
        let n = self.n;
        let bottom = vec![Strand::up(j), Strand::up(i)];
        let terms: Vec<(LPoly, Vec<Slice>, Vec<Vec<Strand>>)> = crossing_terms(j, i, sign)
            .into_iter()
            .filter_map(|(c, rungs)| {
                let (slices, _) = ladder(0, (j, i), &rungs)?;
                let words = SliceWeb::with_bottom(bottom.clone(), slices.clone())
                    .words(n)
                    .ok()?;
                // Coefficients are in powers of v; the DP works in halves.
                let c = LPoly::from_terms(c.terms().map(|(e, k)| (2 * e, k.clone())));
                Some((c, slices, words))
            })
            .collect();
        let mut table = CrossingTable::new();
        for &x in &subsets_of_size(n, j) {
            for &y in &subsets_of_size(n, i) {
                let mut acc: HashMap<(u16, u16), LPoly> = HashMap::new();
                for (c, slices, words) in &terms {
                    let start: Frontier = [(vec![x, y], c.clone())].into_iter().collect();
                    for (k, v) in self.run(start, slices, words) {
                        *acc.entry((k[0], k[1])).or_default() += &v;
                    }
                }
                let outs: Vec<_> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !outs.is_empty() {
                    table.insert((x, y), outs);
                }
            }
        }
        self.tables.insert((j, i, sign), table.clone());
        table
    }
}

fn finish(mut frontier: Frontier) -> LPoly {
    let total = frontier.remove(&Vec::new()).unwrap_or_default();
    total
        .compress_exponents(2)
        .expect("closed webs have integral rotation weight")
}

/// Evaluates a closed crossing-free web by frontier dynamic programming over
/// the slices.
pub fn eval_web(w: &SliceWeb, n: u32) -> Result<LPoly> {
    check_evaluable(w, n)?;
    let words = w.words(n)?;
    let start: Frontier = [(Vec::new(), LPoly::one())].into_iter().collect();
    Ok(finish(Dp::new(n).run(start, &w.slices, &words)))
}

/// Evaluates a closed sliced diagram, crossings included, by expanding each
/// crossing locally inside the dynamic program. Equals the sum over the full
/// crossing expansion without materializing it.
pub fn eval_diagram(w: &SliceWeb, n: u32) -> Result<LPoly> {
    check_closed(w, n)?;
    let words = w.words(n)?;
    let start: Frontier = [(Vec::new(), LPoly::one())].into_iter().collect();
    Ok(finish(Dp::new(n).run(start, &w.slices, &words)))
}

/// One labelling of a web: the subset carried by each edge segment, with
/// segments numbered in order of creation (a cup creates one segment, a
/// split two, a merge one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub edges: Vec<Vec<u32>>,
}

fn mask_labels(m: u16) -> Vec<u32> {
    (0..16)
        .filter(|b| m & (1 << b) != 0)
        .map(|b| b + 1)
        .collect()
}

/// Lists every state with nonzero weight, in lexicographic order by segment
/// id then subset. Exponential; meant for tests and small webs.
pub fn enumerate_states(w: &SliceWeb, n: u32) -> Result<Vec<(State, LPoly)>> {
    check_evaluable(w, n)?;
    let words = w.words(n)?;
    let mut out = Vec::new();
    let mut frontier: Vec<(usize, u16)> = Vec::new();
    let mut labels: Vec<u16> = Vec::new();
    enumerate_rec(w, n, &words, 0, &mut frontier, &mut labels, 0, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    w: &SliceWeb,
    n: u32,
    words: &[Vec<crate::web::Strand>],
    idx: usize,
    frontier: &mut Vec<(usize, u16)>,
    labels: &mut Vec<u16>,
    half: i64,
    out: &mut Vec<(State, LPoly)>,
) {
    if idx == w.slices.len() {
        debug_assert!(frontier.is_empty());
        out.push((
            State {
                edges: labels.iter().map(|&m| mask_labels(m)).collect(),
            },
            LPoly::v_pow(half / 2),
        ));
        return;
    }
    let slice = &w.slices[idx];
    let p = slice.pos;
    let (consumed, _) = slice.arity();
    let dir = match slice.kind {
        SliceKind::Cup { turn, .. } => turn.cup_dirs().0,
        _ => words[idx][p].dir,
    };
    let below: Vec<u16> = frontier[p..p + consumed].iter().map(|e| e.1).collect();
    let choices: Vec<Vec<u16>> = match slice.kind {
        SliceKind::Cup { color, .. } => subsets_of_size(n, color)
            .into_iter()
            .map(|s| vec![s, s])
            .collect(),
        SliceKind::Cap { .. } => vec![vec![]],
        SliceKind::Merge { .. } => vec![vec![below[0] | below[1]]],
        SliceKind::Split { out: [a, _] } => subsets_within(below[0], a)
            .into_iter()
            .map(|l| vec![l, below[0] & !l])
            .collect(),
        SliceKind::Crossing { .. } => unreachable!(),
    };
    for above in choices {
        let Some(h) = slice_weight_half(&slice.kind, dir, &below, &above, n) else {
            continue;
        };
        let saved_frontier = frontier.clone();
        let saved_len = labels.len();
        let produced: Vec<(usize, u16)> = match slice.kind {
            SliceKind::Cup { .. } => {
                labels.push(above[0]);
                let id = labels.len() - 1;
                vec![(id, above[0]), (id, above[1])]
            }
            SliceKind::Cap { .. } => vec![],
            _ => above
                .iter()
                .map(|&s| {
                    labels.push(s);
                    (labels.len() - 1, s)
                })
                .collect(),
        };
        frontier.splice(p..p + consumed, produced);
        enumerate_rec(w, n, words, idx + 1, frontier, labels, half + h, out);
        *frontier = saved_frontier;
        labels.truncate(saved_len);
    }
}
