//! Truncated `q`-series with rational coefficients, eta quotients, and the
//! modular-form identities behind the CLF numbers.

pub mod eta;
pub mod formal;
pub mod identities;
mod series;

pub use eta::{EtaQuotient, NamedSeries};
pub use formal::{derive_c_from_b, sb_route_supercongruence, verify_modppower_lemma};
pub use identities::fine_c;
pub use series::QSeries;
