use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::Mutex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle;
use crate::qlaurent::LPoly;
use crate::reduce::{Outcome, Reducer};
use crate::web::{expand_crossings, PlanarWeb, SliceWeb};

/// Evaluates closed crossing-free webs.
pub trait Engine: Send + Sync {
    fn name(&self) -> &'static str;
    fn eval(&self, w: &SliceWeb, n: u32) -> Result<LPoly>;

    /// Value of a closed sliced diagram: expand every crossing, evaluate
    /// each web and sum.
    fn eval_diagram(&self, w: &SliceWeb, n: u32) -> Result<LPoly> {
        let sum = expand_crossings(w, n)?;
        let values = sum
            .terms
            .par_iter()
            .map(|(c, web)| Ok(c * &self.eval(web, n)?))
            .collect::<Result<Vec<LPoly>>>()?;
        Ok(values.into_iter().sum())
    }
}

pub struct OracleEngine;

impl Engine for OracleEngine {
    fn name(&self) -> &'static str {
        "oracle"
    }
    fn eval(&self, w: &SliceWeb, n: u32) -> Result<LPoly> {
        oracle::eval_web(w, n)
    }
    fn eval_diagram(&self, w: &SliceWeb, n: u32) -> Result<LPoly> {
        oracle::eval_diagram(w, n)
    }
}

/// Relation-based evaluation. Crossings are resolved inside the reducer,
/// so diagrams never go through a full state expansion.
pub struct RewriteEngine {
    fallback: bool,
    reducers: Mutex<HashMap<u32, Arc<Reducer>>>,
}

impl RewriteEngine {
    pub fn new(fallback: bool) -> Self {
        RewriteEngine {
            fallback,
            reducers: Mutex::new(HashMap::new()),
        }
    }

    fn reducer(&self, n: u32) -> Arc<Reducer> {
        self.reducers
            .lock()
            .entry(n)
            .or_insert_with(|| {
                let r = Reducer::new(n);
                Arc::new(if self.fallback { r.with_fallback() } else { r })
            })
            .clone()
    }

    fn run(&self, w: &SliceWeb, n: u32) -> Result<LPoly> {
        let g = PlanarWeb::from_slices(w, n)?;
        match self.reducer(n).reduce(&g) {
            Outcome::Value(v) => Ok(v),
            Outcome::Stuck(_) => Err(Error::Irreducible),
        }
    }
}

impl Engine for RewriteEngine {
    fn name(&self) -> &'static str {
        if self.fallback {
            "rewrite-with-fallback"
        } else {
            "rewrite"
        }
    }
    fn eval(&self, w: &SliceWeb, n: u32) -> Result<LPoly> {
        self.run(w, n)
    }
    fn eval_diagram(&self, w: &SliceWeb, n: u32) -> Result<LPoly> {
        self.run(w, n)
    }
}

/// Runs the rewriter (with fallback) and the oracle and insists they agree.
pub struct BothEngine {
    rewrite: RewriteEngine,
}

impl BothEngine {
    pub fn new() -> Self {
        BothEngine {
            rewrite: RewriteEngine::new(true),
        }
    }

    fn check(a: LPoly, b: LPoly) -> Result<LPoly> {
        if a == b {
            Ok(a)
        } else {
            Err(Error::EngineDisagreement(format!(
                "rewrite {a}, oracle {b}"
            )))
        }
    }
}

impl Default for BothEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine for BothEngine {
    fn name(&self) -> &'static str {
        "both"
    }
    fn eval(&self, w: &SliceWeb, n: u32) -> Result<LPoly> {
        let (a, b) = rayon::join(|| self.rewrite.eval(w, n), || oracle::eval_web(w, n));
        Self::check(a?, b?)
    }
    fn eval_diagram(&self, w: &SliceWeb, n: u32) -> Result<LPoly> {
        let (a, b) = rayon::join(
            || self.rewrite.eval_diagram(w, n),
            || oracle::eval_diagram(w, n),
        );
        Self::check(a?, b?)
    }
}

type Factory = fn() -> Box<dyn Engine>;

const REGISTRY: &[(&str, Factory)] = &[
    ("oracle", || Box::new(OracleEngine)),
    ("rewrite", || Box::new(RewriteEngine::new(false))),
    ("rewrite-with-fallback", || {
        Box::new(RewriteEngine::new(true))
    }),
    ("both", || Box::new(BothEngine::new())),
];

pub fn engine_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|(n, _)| *n).collect()
}

pub fn engine_by_name(name: &str) -> Result<Box<dyn Engine>> {
    REGISTRY
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| f())
        .ok_or_else(|| Error::UnknownEngine(name.to_string()))
}
