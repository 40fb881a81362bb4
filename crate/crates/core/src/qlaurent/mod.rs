//! Exact arithmetic in `Z[v^{±1}]` with `v = q^{1/2}`, quantum integers and
//! binomials, and the two ideal-membership tests used by the periodicity
//! criteria.

mod modular;
mod poly;
mod quantum;

pub use modular::{gcd_fp, ideal_residue, in_ideal, is_prime, reduce_mod_pqp, IdealSpec, ModPoly};
pub use poly::LPoly;
pub use quantum::{qbinom, qconj, qint};
