//! Exact arithmetic in `F_p`, `F_p[z]` and `F_p(z)`, and derivations of
//! `F_p(z)`.

mod derivation;
mod poly;
mod prime;
mod ratfun;

pub use derivation::{compute_gamma, Derivation};
pub use poly::PolyZ;
pub use prime::{Prime, MAX_PRIME, MIN_PRIME};
pub use ratfun::{parse_ratfun, ParseMode, RatFun};
