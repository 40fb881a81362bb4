//! Congruence tests for periodic links.
//!
//! Both tests compute a difference of invariants and reduce it in a quotient
//! ring. A nonzero residue proves the link is not periodic in the claimed
//! way; a zero residue proves nothing.

use serde::Serialize;
use serde_json::{json, Value};

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::invariants::k_invariant;
use crate::linkdiag::{periodic_cover, Coloring, Diagram, Tangle};
use crate::qlaurent::{ideal_residue, is_prime, IdealSpec, ModPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Consistent,
    Obstructed,
}

/// Which invariant the factor test compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Invariant {
    /// `K_n` under the given colorings.
    #[default]
    K,
    /// `P_n`: every component colored 1, colorings ignored.
    P,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    /// The nonzero residue when obstructed.
    pub witness: Option<ModPoly>,
    pub n: u32,
    pub p: u64,
    pub ideal: IdealSpec,
}

impl Verdict {
    fn from_residue(residue: ModPoly, n: u32, ideal: IdealSpec) -> Self {
        let obstructed = !residue.is_zero();
        Verdict {
            status: if obstructed {
                Status::Obstructed
            } else {
                Status::Consistent
            },
            witness: obstructed.then_some(residue),
            n,
            p: ideal.period(),
            ideal,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.status == Status::Consistent
    }

    /// `{"status": .., "p": .., "n": .., "residue": [[exp, coeff], ..]}` with
    /// exponents in powers of `q^{1/2}`. The residue is empty when consistent.
    pub fn to_json(&self) -> Value {
        let residue: Vec<Value> = self
            .witness
            .iter()
            .flat_map(|w| w.terms().collect::<Vec<_>>())
            .rev()
            .map(|(e, c)| json!([e, c]))
            .collect();
        let ideal = match self.ideal {
            IdealSpec::In { .. } => "I_n",
            IdealSpec::PQp { .. } => "(p, q^p - 1)",
        };
        json!({
            "status": self.status,
            "p": self.p,
            "n": self.n,
            "ideal": ideal,
            "residue": residue,
        })
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n = 0 is out of range".into()));
    }
    Ok(())
}

/// `K_n(L, μ) - K_n(L̄, μ̄)^p` reduced modulo `I_n`.
pub fn check_factor_congruence(
    l: &Diagram,
    mu: &Coloring,
    lbar: &Diagram,
    mubar: &Coloring,
    p: u64,
    n: u32,
    engine: &dyn Engine,
) -> Result<Verdict> {
    check_factor_congruence_with(l, mu, lbar, mubar, p, n, Invariant::K, engine)
}

#[allow(clippy::too_many_arguments)]
pub fn check_factor_congruence_with(
    l: &Diagram,
    mu: &Coloring,
    lbar: &Diagram,
    mubar: &Coloring,
    p: u64,
    n: u32,
    invariant: Invariant,
    engine: &dyn Engine,
) -> Result<Verdict> {
    check_n(n)?;
    if p < 2 || !is_prime(p) {
        return Err(Error::UnsupportedPeriod);
    }
    let (mu, mubar) = match invariant {
        Invariant::K => (mu.clone(), mubar.clone()),
        Invariant::P => (
            Coloring::uniform(l.components().len(), 1),
            Coloring::uniform(lbar.components().len(), 1),
        ),
    };
    let (a, b) = rayon::join(
        || k_invariant(l, &mu, n, engine),
        || k_invariant(lbar, &mubar, n, engine),
    );
    let delta = &a? - &b?.pow(p as u32);
    let ideal = IdealSpec::In { n, p };
    Ok(Verdict::from_residue(
        ideal_residue(&delta, ideal)?,
        n,
        ideal,
    ))
}

/// `K_n(L, μ) - K_n(L*, μ)` reduced modulo `(p, q^p - 1)`.
pub fn check_mirror_congruence(
    l: &Diagram,
    mu: &Coloring,
    p: u64,
    n: u32,
    engine: &dyn Engine,
) -> Result<Verdict> {
    check_n(n)?;
    let mirrored = l.mirror();
    let (a, b) = rayon::join(
        || k_invariant(l, mu, n, engine),
        || k_invariant(&mirrored, mu, n, engine),
    );
    let ideal = IdealSpec::PQp { p };
    Ok(Verdict::from_residue(
        ideal_residue(&(&a? - &b?), ideal)?,
        n,
        ideal,
    ))
}

/// Both tests on the `p`-fold cover of `t` against its closure, with the
/// colorings induced by `t`.
pub fn check_cover(t: &Tangle, p: u64, n: u32, engine: &dyn Engine) -> Result<(Verdict, Verdict)> {
    let cover = periodic_cover(t, p as usize)?;
    let factor = t.closure()?;
    let factor_verdict = check_factor_congruence(
        &cover,
        &cover.coloring(),
        &factor,
        &factor.coloring(),
        p,
        n,
        engine,
    )?;
    let mirror_verdict = check_mirror_congruence(&cover, &cover.coloring(), p, n, engine)?;
    Ok((factor_verdict, mirror_verdict))
}
