use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A truncated Laurent series `Σ_{k < order} c_k q^k + O(q^order)` with exact
/// rational coefficients.
///
/// Coefficients are stored densely from the lower valuation; everything in
/// `[lower_valuation, order)` not stored is zero, and nothing at or above
/// `order` is known. Every operation computes the order to which its result
/// is reliable from the orders and valuations of its operands.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    start: i64,
    coeffs: Vec<BigRational>,
    order: i64,
}

impl QSeries {
    /// Builds `Σ coeffs[i] q^{start+i} + O(q^order)`, dropping any
    /// coefficients at or beyond `order`.
    pub fn new(start: i64, mut coeffs: Vec<BigRational>, order: i64) -> Self {
        let keep = (order - start).clamp(0, coeffs.len() as i64) as usize;
        coeffs.truncate(keep);
        let mut s = QSeries {
            start,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    pub fn from_integers(start: i64, coeffs: &[BigInt], order: i64) -> Self {
        let coeffs = coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        Self::new(start, coeffs, order)
    }

    pub fn from_i64(start: i64, coeffs: &[i64], order: i64) -> Self {
        let coeffs = coeffs
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        Self::new(start, coeffs, order)
    }

    pub fn zero(order: i64) -> Self {
        QSeries {
            start: order,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(BigRational::one(), 0, order)
    }

    /// `c q^k + O(q^order)`.
    pub fn monomial(c: BigRational, k: i64, order: i64) -> Self {
        Self::new(k, vec![c], order)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.start = self.order;
        }
    }

    /// Exclusive bound on the known exponents.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Least exponent with a nonzero coefficient, `None` if every known
    /// coefficient is zero.
    pub fn lower_valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// Valuation used for precision bookkeeping: a series that is zero to
    /// its order is `O(q^order)`.
    fn effective_valuation(&self) -> i64 {
        self.lower_valuation().unwrap_or(self.order)
    }

    /// Coefficient of `q^k`, or `None` if `k` is at or beyond the order.
    pub fn coeff(&self, k: i64) -> Option<BigRational> {
        if k >= self.order {
            return None;
        }
        Some(self.coeff_unchecked(k))
    }

    fn coeff_unchecked(&self, k: i64) -> BigRational {
        if k < self.start {
            return BigRational::zero();
        }
        self.coeffs
            .get((k - self.start) as usize)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Coefficients of `q^from, ..., q^{to-1}`; fails if `to` exceeds the order.
    pub fn coefficients(&self, from: i64, to: i64) -> Result<Vec<BigRational>> {
        if to > self.order {
            return Err(Error::Series(format!(
                "coefficients up to q^{} requested from a series known to O(q^{})",
                to - 1,
                self.order
            )));
        }
        Ok((from..to).map(|k| self.coeff_unchecked(k)).collect())
    }

    /// Nonzero terms `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Self::new(self.start, self.coeffs.clone(), order)
    }

    pub fn scalar_mul(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        Self::new(self.start, coeffs, self.order)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QSeries {
            start: self.start + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let order = self.order.min(other.order);
        let start = self.start.min(other.start).min(order);
        let len = (order - start).max(0) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        for (k, c) in self.terms() {
            if k < order {
                coeffs[(k - start) as usize] += c;
            }
        }
        for (k, c) in other.terms() {
            if k < order {
                let slot = &mut coeffs[(k - start) as usize];
                if negate {
                    *slot -= c;
                } else {
                    *slot += c;
                }
            }
        }
        Self::new(start, coeffs, order)
    }

    /// Integer numerators over a common denominator.
    fn scaled(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (nums, den)
    }

    pub fn mul_series(&self, other: &Self) -> Self {
        let order = (self.order + other.effective_valuation())
            .min(other.order + self.effective_valuation());
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let start = self.start + other.start;
        let len = (order - start).max(0) as usize;
        let (a, da) = self.scaled();
        let (b, db) = other.scaled();
        let mut acc = vec![BigInt::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                acc[i + j] += x * y;
            }
        }
        let den = da * db;
        let coeffs = acc
            .into_iter()
            .map(|n| BigRational::new(n, den.clone()))
            .collect();
        Self::new(start, coeffs, order)
    }

    /// `self^e` by repeated squaring; `self^0 = 1` to the relative precision
    /// of `self`.
    pub fn pow(&self, e: u64) -> Self {
        if e == 0 {
            return Self::one(self.order - self.effective_valuation());
        }
        let mut base = self.clone();
        let mut acc: Option<QSeries> = None;
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul_series(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul_series(&base);
        }
        acc.expect("e > 0")
    }

    /// Multiplicative inverse; the series must have a nonzero leading term.
    pub fn invert(&self) -> Result<Self> {
        let v = self
            .lower_valuation()
            .ok_or_else(|| Error::Series("cannot invert a series with no nonzero term".into()))?;
        let precision = (self.order - v) as usize;
        let c0_inv = self.coeffs[0].recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(precision);
        out.push(c0_inv.clone());
        for n in 1..precision {
            let mut s = BigRational::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                s += &self.coeffs[k] * &out[n - k];
            }
            out.push(-(s * &c0_inv));
        }
        Ok(Self::new(-v, out, -v + precision as i64))
    }

    pub fn div_series(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_series(&other.invert()?))
    }

    /// `self(inner(q))`, for `self` a power series (no negative exponents)
    /// and `inner` of valuation at least 1.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.lower_valuation().is_some_and(|v| v < 0) {
            return Err(Error::Series(
                "outer series of a composition has negative exponents".into(),
            ));
        }
        let vg = inner.effective_valuation();
        if vg < 1 {
            return Err(Error::Series(format!(
                "composition needs an inner series of valuation >= 1, got {vg}"
            )));
        }
        let order = self.order.saturating_mul(vg).min(inner.order);
        let inner = inner.truncate(order);
        let top = (self.order - 1).max(0);
        // Horner: f_K, then acc * g + f_k for k = K-1 .. 0
        let mut acc = QSeries::monomial(self.coeff_unchecked(top), 0, order);
        for k in (0..top).rev() {
            acc = acc.mul_series(&inner).truncate(order);
            acc = &acc + &QSeries::monomial(self.coeff_unchecked(k), 0, order);
        }
        Ok(acc.truncate(order))
    }

    /// `q d/dq`: scales the coefficient of `q^k` by `k`.
    pub fn q_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigInt::from(self.start + i as i64))
            .collect();
        Self::new(self.start, coeffs, self.order)
    }

    /// `d/dq`.
    pub fn derivative(&self) -> Self {
        self.q_derivative().shift(-1)
    }

    /// `q ↦ q^k` for `k >= 1`.
    pub fn substitute_q_power(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Series(
                "substitution q -> q^0 is not a power series map".into(),
            ));
        }
        let k = k as i64;
        let len = self.coeffs.len().saturating_sub(1) * k as usize + 1;
        let mut coeffs = vec![BigRational::zero(); if self.coeffs.is_empty() { 0 } else { len }];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        Ok(Self::new(self.start * k, coeffs, self.order * k))
    }

    /// `(exponent, lhs, rhs)` of the first coefficient where the two series
    /// differ below their joint order.
    pub fn first_difference(&self, other: &Self) -> Option<(i64, BigRational, BigRational)> {
        let order = self.order.min(other.order);
        let from = self.start.min(other.start);
        (from..order).find_map(|k| {
            let (a, b) = (self.coeff_unchecked(k), other.coeff_unchecked(k));
            (a != b).then_some((k, a, b))
        })
    }

    /// True when every known coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.combine(rhs, false)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.combine(rhs, true)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.mul_series(rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scalar_mul(&-BigRational::one())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries({self})")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match (k, show_coeff) {
                (0, _) => {}
                (1, true) => f.write_str("*q")?,
                (1, false) => f.write_str("q")?,
                (_, true) => write!(f, "*q^{k}")?,
                (_, false) => write!(f, "q^{k}")?,
            }
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O(q^{})", self.order)
    }
}
