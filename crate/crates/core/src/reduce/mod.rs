//! Relation-based evaluation of planar webs.
//!
//! Faces are reduced smallest first: circles, bigons, curls, then squares
//! whose ladder switch removes vertices. When nothing shrinks the web, a
//! bounded search over re-associations looks for a position where something
//! does. Results are memoized per connected component.

mod relations;
mod surgery;

use std::collections::{HashMap, HashSet, VecDeque};

use parking_lot::RwLock;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::oracle;
use crate::qlaurent::{qbinom, LPoly};
use crate::web::planar::PlanarWeb;
use crate::web::{to_slices, SliceWeb};

pub use relations::{apply as apply_relation, find_sites, relation_of, RelationId, Site, Terms};

/// Re-association moves tried before giving up.
pub const SEARCH_DEPTH: usize = 3;

/// One relation application: what was used, where, and the coefficients it
/// emitted (one per surviving term).
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub relation: RelationId,
    pub vertices: usize,
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn count(&self, r: RelationId) -> usize {
        self.steps.iter().filter(|s| s.relation == r).count()
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Value(LPoly),
    /// No relation applies within the search budget.
    Stuck(PlanarWeb),
}

/// A rewriting evaluator for one `n`, with a shared memo table.
pub struct Reducer {
    n: u32,
    memo: RwLock<HashMap<Vec<u32>, LPoly>>,
    /// Evaluate irreducible components with the oracle instead of failing.
    fallback: bool,
    /// Shuffles the order in which equally ranked sites are tried.
    seed: Option<u64>,
}

struct Ctx {
    active: HashSet<Vec<u32>>,
    trace: Option<ReductionTrace>,
}

impl Ctx {
    fn record(&mut self, g: &PlanarWeb, site: &Site, terms: &Terms) {
        if let Some(t) = &mut self.trace {
            if let Some(relation) = relation_of(g, site) {
                t.steps.push(TraceStep {
                    relation,
                    vertices: g.num_vertices(),
                    coefficients: terms.iter().map(|(c, _)| c.to_string()).collect(),
                });
            }
        }
    }
}

type Eval = std::result::Result<LPoly, PlanarWeb>;

impl Reducer {
    pub fn new(n: u32) -> Self {
        Reducer {
            n,
            memo: RwLock::new(HashMap::new()),
            fallback: false,
            seed: None,
        }
    }

    pub fn with_fallback(mut self) -> Self {
        self.fallback = true;
        self
    }

    /// A reducer that tries sites in a seeded random order within each
    /// priority class. It keeps its own memo, so values reached by
    /// different seeds are independent.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().len()
    }

    pub fn reduce(&self, g: &PlanarWeb) -> Outcome {
        let mut ctx = Ctx {
            active: HashSet::new(),
            trace: None,
        };
        match self.value(g, &mut ctx) {
            Ok(v) => Outcome::Value(v),
            Err(w) => Outcome::Stuck(w),
        }
    }

    /// Like `reduce`, recording applications. Memo hits are not expanded,
    /// so a trace is complete only on a fresh reducer.
    pub fn reduce_traced(&self, g: &PlanarWeb) -> (Outcome, ReductionTrace) {
        let mut ctx = Ctx {
            active: HashSet::new(),
            trace: Some(ReductionTrace::default()),
        };
        let out = match self.value(g, &mut ctx) {
            Ok(v) => Outcome::Value(v),
            Err(w) => Outcome::Stuck(w),
        };
        (out, ctx.trace.unwrap_or_default())
    }

    fn value(&self, g: &PlanarWeb, ctx: &mut Ctx) -> Eval {
        let mut total = LPoly::one();
        for (vs, es) in g.components() {
            let part = if vs.is_empty() {
                es.iter()
                    .map(|&e| qbinom(self.n as i64, g.edges[e].color as i64))
                    .fold(LPoly::one(), |acc, c| &acc * &c)
            } else {
                self.connected(&g.subweb(&vs, &es), ctx)?
            };
            if part.is_zero() {
                return Ok(part);
            }
            total = &total * &part;
        }
        Ok(total)
    }

    fn connected(&self, g: &PlanarWeb, ctx: &mut Ctx) -> Eval {
        let key = g.canonical_code();
        if let Some(v) = self.memo.read().get(&key) {
            return Ok(v.clone());
        }
        if !ctx.active.insert(key.clone()) {
            return Err(g.clone());
        }
        let mut res = self.step(g, ctx);
        ctx.active.remove(&key);
        if res.is_err() && self.fallback {
            res = Ok(oracle_value(g, self.n).expect("planar web evaluates"));
        }
        if let Ok(v) = &res {
            self.memo.write().insert(key, v.clone());
        }
        res
    }

    fn sum(&self, g: &PlanarWeb, site: &Site, terms: Terms, ctx: &mut Ctx) -> Eval {
        ctx.record(g, site, &terms);
        let mut total = LPoly::zero();
        for (c, t) in terms {
            let v = self.value(&t, ctx)?;
            total += &(&c * &v);
        }
        Ok(total)
    }

    /// The first site whose right-hand side strictly shrinks the web.
    fn shrinking(&self, g: &PlanarWeb, sites: &[Site]) -> Option<(Site, Terms)> {
        let rank = |s: &Site| match s {
            Site::Circle(_) => 0,
            Site::Bigon { .. } => 1,
            Site::Curl(_) => 2,
            Site::Square(_) => 3,
            _ => 4,
        };
        let mut ordered: Vec<&Site> = sites.iter().filter(|s| rank(s) < 4).collect();
        if let Some(seed) = self.seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ g.num_vertices() as u64);
            ordered.shuffle(&mut rng);
        }
        ordered.sort_by_key(|s| rank(s));
        for site in ordered {
            if let Ok(terms) = apply_relation(g, site, self.n) {
                if relations::shrinks(g, &terms) {
                    return Some((site.clone(), terms));
                }
            }
        }
        None
    }

    fn step(&self, g: &PlanarWeb, ctx: &mut Ctx) -> Eval {
        let sites = find_sites(g);
        if let Some((site, terms)) = self.shrinking(g, &sites) {
            return self.sum(g, &site, terms, ctx);
        }
        if let Some(site) = sites.iter().find(|s| matches!(s, Site::Crossing(_))) {
            let terms = apply_relation(g, site, self.n).map_err(|_| g.clone())?;
            return self.sum(g, site, terms, ctx);
        }
        // Breadth-first over re-associations for a web that can shrink.
        let mut seen = HashSet::from([g.canonical_code()]);
        let mut queue = VecDeque::from([(g.clone(), 0usize)]);
        while let Some((w, depth)) = queue.pop_front() {
            if depth == SEARCH_DEPTH {
                continue;
            }
            for site in find_sites(&w) {
                if !matches!(site, Site::FourId(_)) {
                    continue;
                }
                let Ok(mut terms) = apply_relation(&w, &site, self.n) else {
                    continue;
                };
                let (_, next) = terms.pop().expect("one term");
                if !seen.insert(next.canonical_code()) {
                    continue;
                }
                if self.shrinking(&next, &find_sites(&next)).is_some() {
                    ctx.record(&w, &site, &vec![(LPoly::one(), next.clone())]);
                    return self.connected(&next, ctx);
                }
                queue.push_back((next, depth + 1));
            }
        }
        Err(g.clone())
    }
}

fn oracle_value(g: &PlanarWeb, n: u32) -> Result<LPoly> {
    let w = to_slices(g)?;
    if g.has_crossings() {
        oracle::eval_diagram(&w, n)
    } else {
        oracle::eval_web(&w, n)
    }
}

/// Reduces a closed sliced web (crossings allowed) to a scalar, or reports
/// the residual web that no relation reduces.
pub fn reduce_web(w: &SliceWeb, n: u32) -> Result<Outcome> {
    let g = PlanarWeb::from_slices(w, n)?;
    Ok(Reducer::new(n).reduce(&g))
}
