use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{qbinom, LPoly};
use crate::error::{Error, Result};

/// A Laurent polynomial in `v` with coefficients in `Z/p`.
///
/// When `wrap` is set, exponents live in `[0, wrap)`: the element is read in
/// `(Z/p)[v]/(v^wrap - 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModPoly {
    modulus: u64,
    wrap: Option<i64>,
    terms: BTreeMap<i64, u64>,
}

impl ModPoly {
    pub fn zero(modulus: u64) -> Self {
        Self {
            modulus,
            wrap: None,
            terms: BTreeMap::new(),
        }
    }

    /// Reduces the coefficients of `f` mod `p`, keeping exponents.
    pub fn from_lpoly(f: &LPoly, p: u64) -> Self {
        let mut r = Self::zero(p);
        for (e, c) in f.terms() {
            r.add_term(e, residue(c, p));
        }
        r
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn wrap(&self) -> Option<i64> {
        self.wrap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn coeff(&self, e: i64) -> u64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    fn add_term(&mut self, e: i64, c: u64) {
        let e = match self.wrap {
            Some(w) => e.rem_euclid(w),
            None => e,
        };
        let p = self.modulus;
        let slot = self.terms.entry(e).or_insert(0);
        *slot = ((*slot as u128 + c as u128) % p as u128) as u64;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.wrap, other.wrap);
        let mut r = self.clone();
        for (e, c) in other.terms() {
            r.add_term(e, c);
        }
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.wrap, other.wrap);
        let p = self.modulus as u128;
        let mut r = Self {
            modulus: self.modulus,
            wrap: self.wrap,
            terms: BTreeMap::new(),
        };
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                r.add_term(e1 + e2, ((c1 as u128 * c2 as u128) % p) as u64);
            }
        }
        r
    }

    /// `[exponent_of_v, coefficient_decimal_string]` pairs, decreasing exponent.
    pub fn to_pairs(&self) -> Vec<(i64, String)> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| (*e, c.to_string()))
            .collect()
    }

    /// Dense coefficients after multiplying by the unit `v^-min_exp`.
    fn normalized_dense(&self) -> Vec<u64> {
        let Some(lo) = self.terms.keys().next().copied() else {
            return Vec::new();
        };
        let hi = *self.terms.keys().next_back().unwrap();
        let mut d = vec![0u64; (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            d[(e - lo) as usize] = *c;
        }
        d
    }

    fn from_dense(d: &[u64], p: u64) -> Self {
        let mut r = Self::zero(p);
        for (i, c) in d.iter().enumerate() {
            r.add_term(i as i64, *c);
        }
        r
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly(mod {}", self.modulus)?;
        if let Some(w) = self.wrap {
            write!(f, ", v^{w}=1")?;
        }
        write!(f, ": ")?;
        if self.is_zero() {
            f.write_str("0")?;
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}v^{e}")?;
        }
        f.write_str(")")
    }
}

fn residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Canonical image of `f` in `(Z/p)[v]/(v^{2p} - 1)`, i.e. modulo the
/// ideal `(p, q^p - 1)`.
pub fn reduce_mod_pqp(f: &LPoly, p: u64) -> ModPoly {
    assert!(p >= 2, "period must be at least 2");
    let mut r = ModPoly::zero(p);
    r.wrap = Some(2 * p as i64);
    for (e, c) in f.terms() {
        r.add_term(e, residue(c, p));
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime: a^(p-2)
    let (mut base, mut exp, mut acc) = (a as u128 % p as u128, p - 2, 1u128);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        exp >>= 1;
    }
    acc as u64
}

fn trim(d: &mut Vec<u64>) {
    while d.last() == Some(&0) {
        d.pop();
    }
}

/// Remainder of `a` modulo `b` in `F_p[v]`; `b` nonzero.
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    trim(&mut a);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let factor = (a[top] as u128 * lead_inv as u128 % p as u128) as u64;
        let shift = top - db;
        for (i, bc) in b.iter().enumerate() {
            let sub = (factor as u128 * *bc as u128 % p as u128) as u64;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(&mut a);
    }
    a
}

fn make_monic(mut d: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut d);
    if let Some(&lead) = d.last() {
        let inv = inv_mod(lead, p);
        for c in d.iter_mut() {
            *c = (*c as u128 * inv as u128 % p as u128) as u64;
        }
    }
    d
}

/// Monic generator of the ideal generated by `polys` in `F_p[v^{±1}]`,
/// normalized to have lowest exponent 0. Zero if every input is zero.
pub fn gcd_fp(polys: &[ModPoly], p: u64) -> Result<ModPoly> {
    if !is_prime(p) {
        return Err(Error::CompositeModulus);
    }
    let mut g: Vec<u64> = Vec::new();
    for f in polys {
        if f.modulus != p {
            return Err(Error::InvalidParameter(format!(
                "modulus mismatch: {} vs {p}",
                f.modulus
            )));
        }
        let mut a = f.normalized_dense();
        let mut b = std::mem::take(&mut g);
        trim(&mut a);
        // Euclid on (a, b)
        while !b.is_empty() {
            let r = poly_rem(a, &b, p);
            a = b;
            b = r;
        }
        g = a;
    }
    Ok(ModPoly::from_dense(&make_monic(g, p), p))
}

/// Which ideal of `Z[q^{±1/2}]` a membership query refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdealSpec {
    /// `(p, [n,i]^p - [n,i] : 1 <= i <= n/2)`
    In { n: u32, p: u64 },
    /// `(p, q^p - 1)`
    PQp { p: u64 },
}

impl IdealSpec {
    pub fn period(&self) -> u64 {
        match *self {
            IdealSpec::In { p, .. } | IdealSpec::PQp { p } => p,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            IdealSpec::In { n, p } if n < 1 || p < 2 => Err(Error::InvalidParameter(format!(
                "I_n needs n >= 1 and p >= 2 (got n = {n}, p = {p})"
            ))),
            IdealSpec::PQp { p } if p < 2 => Err(Error::InvalidParameter(format!(
                "(p, q^p - 1) needs p >= 2 (got {p})"
            ))),
            _ => Ok(()),
        }
    }

    /// The listed integral generators besides `p` itself.
    pub fn generators(&self) -> Vec<LPoly> {
        match *self {
            IdealSpec::In { n, p } => (1..=(n / 2) as i64)
                .map(|i| {
                    let b = qbinom(n as i64, i);
                    &b.pow(p as u32) - &b
                })
                .collect(),
            IdealSpec::PQp { p } => vec![&LPoly::v_pow(2 * p as i64) - &LPoly::one()],
        }
    }
}

/// Residue of `f` in the quotient by `spec`: for `PQp` the canonical
/// representative, for `In` the remainder modulo the gcd generator.
pub fn ideal_residue(f: &LPoly, spec: IdealSpec) -> Result<ModPoly> {
    spec.validate()?;
    match spec {
        IdealSpec::PQp { p } => Ok(reduce_mod_pqp(f, p)),
        IdealSpec::In { p, .. } => {
            if !is_prime(p) {
                return Err(Error::CompositePeriod);
            }
            let gens: Vec<ModPoly> = spec
                .generators()
                .iter()
                .map(|g| ModPoly::from_lpoly(g, p))
                .collect();
            let g = gcd_fp(&gens, p)?;
            let fr = ModPoly::from_lpoly(f, p);
            if g.is_zero() {
                return Ok(fr);
            }
            let rem = poly_rem(fr.normalized_dense(), &g.normalized_dense(), p);
            Ok(ModPoly::from_dense(&rem, p))
        }
    }
}

pub fn in_ideal(f: &LPoly, spec: IdealSpec) -> Result<bool> {
    Ok(ideal_residue(f, spec)?.is_zero())
}
