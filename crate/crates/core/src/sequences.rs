//! The Catalan-Larcombe-French numbers `P_n`, the Franel numbers `f_n`, and
//! the Apéry-like sequences `a_n`, `b_n`.
//!
//! All four satisfy a recurrence of the shape
//!
//! ```text
//! (n+1)^2 s_{n+1} = A(n) s_n + B(n) s_{n-1}
//! ```
//!
//! with quadratic `A`, `B`. The recurrence is the default computation path;
//! the binomial sums (and, for `P_n`, the factorial form) are the oracles.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, exact_div};
use crate::error::{Error, Result};
use crate::Caps;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceId {
    Clf,
    Franel,
    AperyA,
    AperyB,
}

impl SequenceId {
    pub const ALL: [SequenceId; 4] = [
        SequenceId::Clf,
        SequenceId::Franel,
        SequenceId::AperyA,
        SequenceId::AperyB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SequenceId::Clf => "clf",
            SequenceId::Franel => "franel",
            SequenceId::AperyA => "apery-a",
            SequenceId::AperyB => "apery-b",
        }
    }

    pub fn initial_values(self) -> [i64; 2] {
        match self {
            SequenceId::Clf => [1, 8],
            SequenceId::Franel => [1, 2],
            SequenceId::AperyA => [1, 3],
            SequenceId::AperyB => [1, 3],
        }
    }

    /// Coefficients `[c0, c1, c2]` of `A(n)` and `B(n)` in
    /// `(n+1)^2 s_{n+1} = A(n) s_n + B(n) s_{n-1}`.
    pub fn recurrence_coefficients(self) -> ([i64; 3], [i64; 3]) {
        match self {
            // n^2 P_n - 8(3n^2-3n+1) P_{n-1} + 128(n-1)^2 P_{n-2} = 0, shifted by one
            SequenceId::Clf => ([8, 24, 24], [0, 0, -128]),
            SequenceId::Franel => ([2, 7, 7], [0, 0, 8]),
            SequenceId::AperyA => ([3, 11, 11], [0, 0, 1]),
            SequenceId::AperyB => ([3, 10, 10], [0, 0, -9]),
        }
    }

    /// Evaluates `(A(n), B(n))`.
    pub fn recurrence_at(self, n: u64) -> (BigInt, BigInt) {
        let (a, b) = self.recurrence_coefficients();
        let eval = |c: [i64; 3]| {
            let n = BigInt::from(n);
            BigInt::from(c[0]) + BigInt::from(c[1]) * &n + BigInt::from(c[2]) * &n * &n
        };
        (eval(a), eval(b))
    }

    /// `s_n` by forward recurrence.
    pub fn value(self, n: u64) -> Result<BigInt> {
        let mut it = RecurrenceIter::new(self);
        let mut last = BigInt::zero();
        for _ in 0..=n {
            last = it
                .next()
                .transpose()?
                .ok_or_else(|| Error::Internal("recurrence ended".into()))?;
        }
        Ok(last)
    }

    /// `s_n` by the sequence's binomial-sum closed form.
    pub fn closed_form(self, n: u64) -> BigInt {
        match self {
            SequenceId::Clf => clf_binomial_sum(n),
            SequenceId::Franel => franel(n),
            SequenceId::AperyA => apery_a(n),
            SequenceId::AperyB => apery_b(n),
        }
    }

    /// `s_0, ..., s_{n_max}` by forward recurrence.
    pub fn values(self, n_max: u64) -> Result<Vec<BigInt>> {
        RecurrenceIter::new(self).take(n_max as usize + 1).collect()
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Streams `s_0, s_1, ...` keeping two terms of state.
#[derive(Clone, Debug)]
pub struct RecurrenceIter {
    id: SequenceId,
    n: u64,
    prev: BigInt,
    cur: BigInt,
}

impl RecurrenceIter {
    pub fn new(id: SequenceId) -> Self {
        let [s0, _] = id.initial_values();
        RecurrenceIter {
            id,
            n: 0,
            prev: BigInt::zero(),
            cur: BigInt::from(s0),
        }
    }
}

impl Iterator for RecurrenceIter {
    type Item = Result<BigInt>;

    fn next(&mut self) -> Option<Self::Item> {
        let out = self.cur.clone();
        let next = if self.n == 0 {
            BigInt::from(self.id.initial_values()[1])
        } else {
            // (n+1)^2 s_{n+1} = A(n) s_n + B(n) s_{n-1}
            let (a, b) = self.id.recurrence_at(self.n);
            let rhs = a * &self.cur + b * &self.prev;
            let d = BigInt::from(self.n + 1).pow(2);
            match exact_div(&rhs, &d, "sequence recurrence") {
                Ok(v) => v,
                Err(e) => return Some(Err(e)),
            }
        };
        self.prev = std::mem::replace(&mut self.cur, next);
        self.n += 1;
        Some(Ok(out))
    }
}

/// `P_n` by forward iteration of the three-term recurrence.
pub fn clf_recurrence(n: u64) -> Result<BigInt> {
    SequenceId::Clf.value(n)
}

/// `g(i, n) = C(2(n-i), n-i)^2 C(n-i, i)`, defined for `2i <= n`.
pub fn g_term(i: u64, n: u64) -> Result<BigInt> {
    if 2 * i > n {
        return Err(Error::Domain(format!("g({i}, {n}) needs 2i <= n")));
    }
    let k = n - i;
    Ok(arith::binomial(2 * k, k).pow(2) * arith::binomial(k, i))
}

/// `g(0, n), ..., g(⌊n/2⌋, n)`, each from the previous by an exact ratio.
pub fn g_row(n: u64) -> Vec<BigInt> {
    let half = n / 2;
    let mut out = Vec::with_capacity(half as usize + 1);
    let mut g = arith::binomial(2 * n, n).pow(2);
    out.push(g.clone());
    for i in 0..half {
        // g(i+1, n) / g(i, n) = k (n-2i)(n-2i-1) / (4 (2k-1)^2 (i+1)),  k = n - i
        let k = n - i;
        let num = BigInt::from(k) * (n - 2 * i) * (n - 2 * i - 1);
        let den = BigInt::from(4) * BigInt::from(2 * k - 1).pow(2) * (i + 1);
        g = g * num / den;
        out.push(g.clone());
    }
    out
}

/// `P_n = 2^n Σ_{i ≤ n/2} (-4)^i g(i, n)`.
pub fn clf_binomial_sum(n: u64) -> BigInt {
    let mut sum = BigInt::zero();
    let mut sign_pow = BigInt::one();
    for g in g_row(n) {
        sum += &sign_pow * g;
        sign_pow *= -4;
    }
    sum << n as usize
}

/// `P_n = (1/n!) Σ_{r+s=n} C(2r,r) C(2s,s) (2r)!(2s)! / (r! s!)`.
pub fn clf_factorial_form(n: u64) -> Result<BigInt> {
    let central = arith::central_binomials(n);
    let fact = arith::factorials(n);
    let mut sum = BigInt::zero();
    for r in 0..=n as usize {
        let s = n as usize - r;
        // (2r)!/r! = C(2r, r) r!
        sum += central[r].pow(2) * central[s].pow(2) * &fact[r] * &fact[s];
    }
    exact_div(&sum, &fact[n as usize], "factorial form")
}

/// `f_n = Σ_r C(n, r)^3`.
pub fn franel(n: u64) -> BigInt {
    arith::binomial_row(n).iter().map(|c| c.pow(3)).sum()
}

/// `a_n = Σ_k C(n, k)^2 C(n+k, k)`.
pub fn apery_a(n: u64) -> BigInt {
    let row = arith::binomial_row(n);
    let mut upper = BigInt::one();
    let mut sum = BigInt::zero();
    for (k, c) in row.iter().enumerate() {
        let k = k as u64;
        if k > 0 {
            // C(n+k, k) = C(n+k-1, k-1) (n+k) / k
            upper = upper * (n + k) / k;
        }
        sum += c.pow(2) * &upper;
    }
    sum
}

/// `b_n = Σ_k C(n, k)^2 C(2k, k)`.
pub fn apery_b(n: u64) -> BigInt {
    let row = arith::binomial_row(n);
    let central = arith::central_binomials(n);
    row.iter().zip(&central).map(|(c, z)| c.pow(2) * z).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Recurrence,
    BinomialSum,
    FactorialForm,
}

/// Values `s_0..=s_{n_max}` of one sequence with the formula that produced
/// each entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    id: SequenceId,
    values: Vec<BigInt>,
    provenance: Vec<Provenance>,
}

impl SequenceTable {
    pub fn id(&self) -> SequenceId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: u64) -> Option<&BigInt> {
        self.values.get(n as usize)
    }

    pub fn provenance(&self, n: u64) -> Option<Provenance> {
        self.provenance.get(n as usize).copied()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Builds a table by one named formula, without cross-checks.
    pub fn by_formula(
        id: SequenceId,
        n_max: u64,
        formula: Provenance,
        caps: &Caps,
    ) -> Result<Self> {
        caps.check_index(n_max)?;
        let values = match formula {
            Provenance::Recurrence => id.values(n_max)?,
            Provenance::BinomialSum => (0..=n_max).map(|n| id.closed_form(n)).collect(),
            Provenance::FactorialForm => {
                if id != SequenceId::Clf {
                    return Err(Error::Domain(format!("{id} has no factorial form")));
                }
                (0..=n_max).map(clf_factorial_form).collect::<Result<_>>()?
            }
        };
        Ok(SequenceTable {
            id,
            provenance: vec![formula; values.len()],
            values,
        })
    }

    /// Verifies the recurrence among every consecutive triple.
    pub fn check_recurrence(&self) -> Result<()> {
        let [s0, s1] = self.id.initial_values();
        for (n, (want, got)) in [s0, s1].iter().zip(&self.values).enumerate() {
            if BigInt::from(*want) != *got {
                return Err(Error::CrossCheck {
                    sequence: self.id.name(),
                    index: n as u64,
                    left: want.to_string(),
                    right: got.to_string(),
                });
            }
        }
        for n in 1..self.values.len().saturating_sub(1) {
            let (a, b) = self.id.recurrence_at(n as u64);
            let lhs = BigInt::from(n + 1).pow(2) * &self.values[n + 1];
            let rhs = a * &self.values[n] + b * &self.values[n - 1];
            if lhs != rhs {
                return Err(Error::CrossCheck {
                    sequence: self.id.name(),
                    index: n as u64 + 1,
                    left: lhs.to_string(),
                    right: rhs.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// Fills `s_0..=s_{n_max}` by recurrence and re-derives every `stride`-th
/// entry from the closed forms (`stride = 0` disables the cross-check).
pub fn sequence_table(
    id: SequenceId,
    n_max: u64,
    stride: u64,
    caps: &Caps,
) -> Result<SequenceTable> {
    let table = SequenceTable::by_formula(id, n_max, Provenance::Recurrence, caps)?;
    if stride > 0 {
        for n in (0..=n_max).step_by(stride as usize) {
            let rec = &table.values[n as usize];
            let mut oracles = vec![id.closed_form(n)];
            if id == SequenceId::Clf {
                oracles.push(clf_factorial_form(n)?);
            }
            for other in oracles {
                if &other != rec {
                    return Err(Error::CrossCheck {
                        sequence: id.name(),
                        index: n,
                        left: rec.to_string(),
                        right: other.to_string(),
                    });
                }
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn clf_first_values() {
        let expected = big(&[1, 8, 80, 896, 10816, 137728]);
        assert_eq!(SequenceId::Clf.values(5).unwrap(), expected);
        assert_eq!(clf_recurrence(0).unwrap(), BigInt::from(1));
        assert_eq!(clf_recurrence(2).unwrap(), BigInt::from(80));
        assert_eq!(clf_recurrence(5).unwrap(), BigInt::from(137728));
        assert_eq!(clf_binomial_sum(0), BigInt::from(1));
        assert_eq!(clf_binomial_sum(3), BigInt::from(896));
        assert_eq!(clf_binomial_sum(4), BigInt::from(10816));
        assert_eq!(clf_factorial_form(1).unwrap(), BigInt::from(8));
        assert_eq!(clf_factorial_form(2).unwrap(), BigInt::from(80));
        assert_eq!(clf_factorial_form(6).unwrap(), clf_recurrence(6).unwrap());
    }

    #[test]
    fn related_sequence_values() {
        assert_eq!(franel(0), BigInt::from(1));
        assert_eq!(franel(1), BigInt::from(2));
        assert_eq!(franel(3), BigInt::from(56));
        assert_eq!(apery_a(0), BigInt::from(1));
        assert_eq!(apery_a(1), BigInt::from(3));
        assert_eq!(apery_a(2), BigInt::from(19));
        assert_eq!(apery_b(0), BigInt::from(1));
        assert_eq!(apery_b(1), BigInt::from(3));
        assert_eq!(apery_b(2), BigInt::from(15));
        for id in SequenceId::ALL {
            for n in 0..12 {
                assert_eq!(id.value(n).unwrap(), id.closed_form(n), "{id} at {n}");
            }
        }
    }

    #[test]
    fn g_terms() {
        assert_eq!(g_term(0, 0).unwrap(), BigInt::from(1));
        assert_eq!(g_term(0, 1).unwrap(), BigInt::from(4));
        assert_eq!(arith::vp(&g_term(7, 18).unwrap(), 3).unwrap(), 3);
        assert!(g_term(2, 3).is_err());
        for n in 0..40 {
            let row = g_row(n);
            assert_eq!(row.len() as u64, n / 2 + 1);
            for (i, g) in row.iter().enumerate() {
                assert_eq!(*g, g_term(i as u64, n).unwrap(), "g({i}, {n})");
            }
        }
    }

    #[test]
    fn tables() {
        let caps = Caps::default();
        let t = sequence_table(SequenceId::Clf, 5, 1, &caps).unwrap();
        assert_eq!(t.values(), big(&[1, 8, 80, 896, 10816, 137728]).as_slice());
        assert_eq!(t.provenance(3), Some(Provenance::Recurrence));
        t.check_recurrence().unwrap();
        let f = sequence_table(SequenceId::Franel, 1, 1, &caps).unwrap();
        assert_eq!(f.values(), big(&[1, 2]).as_slice());
        let tight = Caps { index: 10, ..caps };
        assert!(matches!(
            sequence_table(SequenceId::Clf, 11, 1, &tight),
            Err(Error::CapExceeded { .. })
        ));
        assert!(
            SequenceTable::by_formula(SequenceId::Franel, 3, Provenance::FactorialForm, &caps)
                .is_err()
        );
    }

    #[test]
    fn recurrence_check_detects_corruption() {
        let caps = Caps::default();
        let mut t = sequence_table(SequenceId::AperyB, 8, 0, &caps).unwrap();
        t.check_recurrence().unwrap();
        t.values[5] += 1;
        assert!(matches!(
            t.check_recurrence(),
            Err(Error::CrossCheck { index: 5, .. })
        ));
    }
}
