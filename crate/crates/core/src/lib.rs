//! Differential convolutional codes over `F_p(z)`.
//!
//! The crate is layered bottom-up:
//!
//! * [`rfield`]: exact arithmetic in `F_p`, `F_p[z]`, `F_p(z)` and derivations.
//! * [`ore`]: the differential operator ring `F_p(z)[x; delta]`.
//! * [`linalg`]: dense exact matrices over `F_p(z)`.
//! * [`code`]: Reed-Solomon differential convolutional codes and encoding.
//! * [`pgz`]: Peterson-Gorenstein-Zierler style decoding.
//! * [`sim`]: error injection, randomized trials and per-node framing.
//! * [`format`]: line-oriented text files used by the command-line tool.

pub mod code;
pub mod error;
pub mod format;
pub mod linalg;
pub mod ore;
pub mod pgz;
pub mod rfield;
pub mod sim;

pub use code::{CodeParams, CodeSpec, Codeword, Message};
pub use error::{Error, Result};
pub use linalg::{wronskian, FunMatrix};
pub use ore::{gcrd, llcm, llcm_all, n_values, OrePoly, QuotientElem};
pub use pgz::{decode, decode_basic, BasicOutcome, Decoded, ErrorVector};
pub use rfield::{Derivation, ParseMode, PolyZ, Prime, RatFun};
