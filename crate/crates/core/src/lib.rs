//! Exact arithmetic and congruence verification for the Catalan-Larcombe-French
//! numbers `P_n` and three related sequences (Franel, and two Apéry-like
//! sequences).
//!
//! The crate is split by the kind of mathematics involved:
//!
//! - [`sequences`]: the sequences themselves, each computable by a three-term
//!   recurrence and by one or more closed forms.
//! - [`congruences`]: mod-`p` symmetries, special values, the Lucas-type
//!   product congruence, the supercongruence `P_{mp^r} ≡ P_{mp^{r-1}} (mod p^r)`
//!   and the 5-adic valuation scan.
//! - [`granville`]: base-`p` combinatorics (partial factorials, carries,
//!   Granville's binomial congruence) and the binomial-sum route to the
//!   supercongruence.
//! - [`qseries`]: truncated power series with exact rational coefficients,
//!   eta quotients, and the modular route to the supercongruence.
//! - [`suite`]: the fixed acceptance criteria, runnable as a unit.
//!
//! Every check produces a [`CongruenceReport`].

pub mod arith;
pub mod congruences;
pub mod error;
pub mod granville;
pub mod qseries;
pub mod report;
pub mod sequences;
pub mod suite;

pub use error::{Error, Result};
pub use report::{CheckKind, CongruenceReport, Counterexample, Status};
pub use sequences::{SequenceId, SequenceTable};

/// Hard limits on run size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest sequence index any operation may compute.
    pub index: u64,
    /// Largest power-series truncation order.
    pub order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            index: 1_000_000,
            order: 10_000,
        }
    }
}

impl Caps {
    pub fn check_index(&self, index: u64) -> Result<()> {
        if index > self.index {
            return Err(Error::CapExceeded {
                what: "sequence index",
                requested: index,
                cap: self.index,
            });
        }
        Ok(())
    }

    pub fn check_order(&self, order: usize) -> Result<()> {
        if order > self.order {
            return Err(Error::CapExceeded {
                what: "series order",
                requested: order as u64,
                cap: self.order as u64,
            });
        }
        Ok(())
    }
}
