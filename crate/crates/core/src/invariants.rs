use std::collections::HashMap;

use crate::engine::Engine;
use crate::error::Result;
use crate::linkdiag::{Coloring, Diagram, Role};
use crate::qlaurent::{qint, LPoly};
use crate::web::compile;

/// The framed bracket `[D]_n`: expand every crossing into webs and evaluate.
pub fn bracket(d: &Diagram, mu: &Coloring, n: u32, engine: &dyn Engine) -> Result<LPoly> {
    let d = d.with_coloring(mu)?;
    engine.eval_diagram(&compile(&d, n)?, n)
}

/// Framing correction `Π_i v^{-ω_i i(n-i+1)}` in powers of `v = q^{1/2}`.
pub fn framing_exponent(d: &Diagram, n: u32) -> i64 {
    (1..=n)
        .map(|i| -d.colored_writhe(i) * (i * (n - i + 1)) as i64)
        .sum()
}

/// The isotopy invariant `K_n(L, μ)`.
pub fn k_invariant(d: &Diagram, mu: &Coloring, n: u32, engine: &dyn Engine) -> Result<LPoly> {
    let colored = d.with_coloring(mu)?;
    Ok(bracket(&colored, mu, n, engine)?.shift(framing_exponent(&colored, n)))
}

/// `P_n(q)`: every component colored 1. The unknot evaluates to `[n]`.
pub fn homfly_pn(d: &Diagram, n: u32, engine: &dyn Engine) -> Result<LPoly> {
    let mu = Coloring::uniform(d.components().len(), 1);
    k_invariant(d, &mu, n, engine)
}

/// `P_n` straight from the skein relation, switching crossings toward a
/// descending diagram. Base points are the least arc of each component and
/// components are visited in order.
pub fn skein_oracle_pn(d: &Diagram, n: u32) -> LPoly {
    let mut memo = HashMap::new();
    skein_rec(&d.with_uniform_color(1), n, &mut memo)
}

fn first_ascending(d: &Diagram) -> Option<usize> {
    let (head, _) = d.arc_ends();
    let mut seen = vec![false; d.crossings.len()];
    for cyc in d.components() {
        for a in cyc {
            if let Some(e) = head[a] {
                if !seen[e.crossing] {
                    seen[e.crossing] = true;
                    if d.crossings[e.crossing].role(e.slot) == Role::UnderIn {
                        return Some(e.crossing);
                    }
                }
            }
        }
    }
    None
}

fn skein_rec(d: &Diagram, n: u32, memo: &mut HashMap<Vec<i64>, LPoly>) -> LPoly {
    let key = d.canonical_key();
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let n64 = n as i64;
    let value = match first_ascending(d) {
        None => qint(n).pow(d.components().len() as u32),
        Some(ci) => {
            // v^n P(L+) - v^-n P(L-) = (v - v^-1) P(L0)
            let switched = skein_rec(&d.switch(ci), n, memo);
            let smoothed = skein_rec(&d.smooth(ci), n, memo);
            let z = LPoly::v_pow(1) - LPoly::v_pow(-1);
            if d.crossings[ci].sign > 0 {
                switched.shift(-2 * n64) + (z * smoothed).shift(-n64)
            } else {
                switched.shift(2 * n64) - (z * smoothed).shift(n64)
            }
        }
    };
    memo.insert(key, value.clone());
    value
}
