//! Exact and `p`-adic verification of Atkin-Swinnerton-Dyer type
//! congruences for truncated `1F0` sums, Apéry numbers and the Lucas and
//! binomial identities behind them.
//!
//! Every statement has an exact rational oracle ([`exact`]); large indices
//! switch to residue arithmetic modulo `p^E` ([`padic`]) with explicit
//! precision accounting.

pub mod engine;
pub mod error;
pub mod exact;
pub mod lucas;
pub mod padic;
pub mod series;

pub use error::{Error, Result};
pub use exact::{ExactInt, ExactRat, Valuation};
pub use padic::{PadicApprox, PadicCtx};
pub use series::{SeriesSpec, Variant};
