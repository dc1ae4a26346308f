//! Dedekind eta products and the three eta quotients `t`, `f`, `E`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::QSeries;
use crate::error::{Error, Result};

/// `∏_{n>=1} (1 - q^n)` to `O(q^order)`, by Euler's pentagonal number theorem.
///
/// The `q^{1/24}` of `η(τ)` is not included; [`EtaQuotient`] accounts for it.
pub fn eta_expansion(order: usize) -> Result<QSeries> {
    if order == 0 {
        return Err(Error::Series("eta expansion needs order >= 1".into()));
    }
    Ok(QSeries::from_integers(
        0,
        &euler_product(order),
        order as i64,
    ))
}

/// Integer coefficients of `∏ (1 - q^n)` below `len`.
fn euler_product(len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for k in 0i64.. {
        let sign = if k % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let a = (k * (3 * k - 1) / 2) as usize;
        let b = (k * (3 * k + 1) / 2) as usize;
        if a >= len {
            break;
        }
        out[a] = sign.clone();
        if k > 0 && b < len {
            out[b] = sign;
        }
    }
    out
}

fn int_mul(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Inverse of an integer series with constant term 1.
fn int_inv_unit(a: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    if len == 0 {
        return out;
    }
    out[0] = BigInt::one();
    for n in 1..len {
        let mut s = BigInt::zero();
        for k in 1..=n.min(a.len() - 1) {
            s += &a[k] * &out[n - k];
        }
        out[n] = -s;
    }
    out
}

/// `∏ η(d τ)^{r_d}` times a rational prefactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    pub factors: Vec<(u32, i32)>,
    pub prefactor: BigRational,
}

impl EtaQuotient {
    pub fn new(factors: &[(u32, i32)]) -> Self {
        EtaQuotient {
            factors: factors.to_vec(),
            prefactor: BigRational::one(),
        }
    }

    pub fn with_prefactor(mut self, prefactor: BigRational) -> Self {
        self.prefactor = prefactor;
        self
    }

    /// `24 ×` the leading `q`-power `Σ d r_d / 24`.
    pub fn q_power_times_24(&self) -> i64 {
        self.factors.iter().map(|&(d, r)| d as i64 * r as i64).sum()
    }

    /// The leading `q`-power; must be an integer.
    pub fn q_power(&self) -> Result<i64> {
        let s = self.q_power_times_24();
        if s % 24 != 0 {
            return Err(Error::Domain(format!(
                "eta quotient {self} has fractional leading power {s}/24"
            )));
        }
        Ok(s / 24)
    }

    /// Weight `Σ r_d / 2`, as a rational.
    pub fn weight(&self) -> BigRational {
        let s: i64 = self.factors.iter().map(|&(_, r)| r as i64).sum();
        BigRational::new(s.into(), 2.into())
    }

    /// Expands to `O(q^order)`.
    pub fn expand(&self, order: usize) -> Result<QSeries> {
        if self.factors.iter().any(|&(d, _)| d == 0) {
            return Err(Error::Domain("eta scale d must be positive".into()));
        }
        let shift = self.q_power()?;
        let len = (order as i64 - shift).max(0) as usize;
        let base = euler_product(len);
        let mut acc = vec![BigInt::zero(); len];
        if len > 0 {
            acc[0] = BigInt::one();
        }
        for &(d, r) in &self.factors {
            let mut scaled = vec![BigInt::zero(); len];
            for (i, c) in base.iter().enumerate() {
                let k = i * d as usize;
                if k >= len {
                    break;
                }
                scaled[k] = c.clone();
            }
            let factor = if r < 0 {
                int_inv_unit(&scaled, len)
            } else {
                scaled
            };
            for _ in 0..r.unsigned_abs() {
                acc = int_mul(&acc, &factor, len);
            }
        }
        let s = QSeries::from_integers(shift, &acc, order as i64);
        Ok(s.scalar_mul(&self.prefactor))
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefactor.is_one() {
            write!(f, "{} * ", self.prefactor)?;
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(d, r)| {
                let tau = if d == 1 {
                    "τ".to_string()
                } else {
                    format!("{d}τ")
                };
                format!("η({tau})^{r}")
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// `η(τ)^4 η(4τ)^2 η(8τ)^4 / η(2τ)^10` without the factor ½.
pub fn hauptmodul_unscaled() -> EtaQuotient {
    EtaQuotient::new(&[(1, 4), (4, 2), (8, 4), (2, -10)])
}

/// `t(τ) = ½ η(τ)^4 η(4τ)^2 η(8τ)^4 / η(2τ)^10 = ½q - 2q^2 + 6q^3 - ...`,
/// the normalization for which `Σ P_n t^n = f`.
pub fn hauptmodul() -> EtaQuotient {
    hauptmodul_unscaled().with_prefactor(BigRational::new(1.into(), 2.into()))
}

/// `f(τ) = η(2τ)^10 / (η(τ)^4 η(4τ)^4)`, weight 1.
pub fn weight_one_form() -> EtaQuotient {
    EtaQuotient::new(&[(2, 10), (1, -4), (4, -4)])
}

/// `E(τ) = η(τ)^4 η(2τ)^6 / η(4τ)^4`, weight 3.
pub fn weight_three_form() -> EtaQuotient {
    EtaQuotient::new(&[(1, 4), (2, 6), (4, -4)])
}

/// The series exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedSeries {
    /// `t(τ)` with prefactor ½
    T,
    F,
    E,
    /// `E(2τ)`
    E2,
}

impl NamedSeries {
    pub fn expand(self, order: usize) -> Result<QSeries> {
        match self {
            NamedSeries::T => hauptmodul().expand(order),
            NamedSeries::F => weight_one_form().expand(order),
            NamedSeries::E => weight_three_form().expand(order),
            NamedSeries::E2 => {
                let half = order.div_ceil(2);
                weight_three_form()
                    .expand(half)?
                    .substitute_q_power(2)
                    .map(|s| s.truncate(order as i64))
            }
        }
    }
}
