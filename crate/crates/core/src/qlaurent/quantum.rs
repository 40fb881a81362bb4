use std::collections::HashMap;

use parking_lot::RwLock;

use super::LPoly;

/// The quantum integer `[m] = v^{m-1} + v^{m-3} + ... + v^{-(m-1)}`.
pub fn qint(m: u32) -> LPoly {
    let m = m as i64;
    LPoly::from_terms((0..m).map(|t| (m - 1 - 2 * t, 1)))
}

static BINOM_TABLE: RwLock<Option<HashMap<(i64, i64), LPoly>>> = RwLock::new(None);

/// Quantum binomial `[m, k]`, total on all integer pairs: zero unless
/// `0 <= k <= m`.
pub fn qbinom(m: i64, k: i64) -> LPoly {
    if k < 0 || m < 0 || k > m {
        return LPoly::zero();
    }
    if k == 0 || k == m {
        return LPoly::one();
    }
    if let Some(t) = BINOM_TABLE.read().as_ref() {
        if let Some(p) = t.get(&(m, k)) {
            return p.clone();
        }
    }
    // [m, k] = v^k [m-1, k] + v^{-(m-k)} [m-1, k-1]
    let p = qbinom(m - 1, k).shift(k) + qbinom(m - 1, k - 1).shift(-(m - k));
    BINOM_TABLE
        .write()
        .get_or_insert_with(HashMap::new)
        .insert((m, k), p.clone());
    p
}

/// `q -> q^-1`.
pub fn qconj(f: &LPoly) -> LPoly {
    f.qconj()
}
