//! Congruences for `P_n` and its relatives modulo primes and prime powers.
//!
//! Every check reduces exact big-integer values; there is no modular
//! shortcut through the recurrence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, require_odd_prime};
use crate::error::{Error, Result};
use crate::report::{CongruenceReport, ReportBuilder};
use crate::sequences::SequenceId;
use crate::Caps;

pub use crate::arith::{legendre_symbol, vp};

/// An odd prime power `p^r`, `r >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePower {
    p: u64,
    r: u32,
    modulus: BigInt,
}

impl PrimePower {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        require_odd_prime(p)?;
        if r == 0 {
            return Err(Error::Domain(
                "prime power exponent must be positive".into(),
            ));
        }
        Ok(PrimePower {
            p,
            r,
            modulus: arith::big_pow(p, r),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }
}

/// Base-`p` digits, least significant first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePDigits {
    pub n: u64,
    pub p: u64,
    pub digits: Vec<u64>,
}

impl BasePDigits {
    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn count(&self, digit: u64) -> usize {
        self.digits.iter().filter(|&&d| d == digit).count()
    }
}

pub fn base_p_digits(n: u64, p: u64) -> Result<BasePDigits> {
    if p < 2 {
        return Err(Error::Domain(format!("base {p} must be >= 2")));
    }
    let mut digits = Vec::new();
    let mut rest = n;
    loop {
        digits.push(rest % p);
        rest /= p;
        if rest == 0 {
            break;
        }
    }
    Ok(BasePDigits { n, p, digits })
}

/// `(-1)^{(p-1)/2}`.
fn quadratic_sign(p: u64) -> BigInt {
    if ((p - 1) / 2).is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn clf_values(n_max: u64) -> Result<Vec<BigInt>> {
    SequenceId::Clf.values(n_max)
}

/// `P_n ≡ P_{a_d} ⋯ P_{a_0} (mod p)` for `n = (a_d … a_0)_p`, `0 <= n <= n_max`.
pub fn verify_lucas_product(p: u64, n_max: u64, caps: &Caps) -> Result<CongruenceReport> {
    arith::require_prime(p)?;
    caps.check_index(n_max)?;
    let values = clf_values(n_max.max(p - 1))?;
    let modulus = BigInt::from(p);
    let mut report = ReportBuilder::new("lucas", format!("p={p} n<={n_max}"), p.to_string());
    for n in 0..=n_max {
        let digits = base_p_digits(n, p)?;
        let product: BigInt = digits
            .digits
            .iter()
            .map(|&d| &values[d as usize])
            .fold(BigInt::one(), |acc, v| acc * v);
        report.congruent(|| format!("n={n}"), &values[n as usize], &product, &modulus);
    }
    report.finish()
}

/// `128^n P_{p-1-n} ≡ (-1)^{(p-1)/2} P_n (mod p)` for `0 <= n <= p-1`, and
/// `p | P_n ⇔ p | P_{p-1-n}`.
pub fn verify_clf_symmetry(p: u64) -> Result<CongruenceReport> {
    require_odd_prime(p)?;
    let values = clf_values(p - 1)?;
    let modulus = BigInt::from(p);
    let sign = quadratic_sign(p);
    let mut report = ReportBuilder::new("clf-symmetry", format!("p={p}"), p.to_string());
    let mut pow128 = BigInt::one();
    for n in 0..p as usize {
        let mirror = &values[p as usize - 1 - n];
        report.congruent(
            || format!("n={n}"),
            &(&pow128 * mirror),
            &(&sign * &values[n]),
            &modulus,
        );
        let divides = values[n].is_multiple_of(&modulus);
        let mirror_divides = mirror.is_multiple_of(&modulus);
        report.equal(|| format!("n={n} divisibility"), divides, mirror_divides);
        pow128 = (pow128 * 128) % &modulus;
    }
    report.finish()
}

/// `P_{p-1} ≡ (-1)^{(p-1)/2}` and `16 P_{p-2} ≡ (-1)^{(p-1)/2} (mod p)`.
pub fn verify_special_values(p: u64) -> Result<CongruenceReport> {
    require_odd_prime(p)?;
    let values = clf_values(p - 1)?;
    let modulus = BigInt::from(p);
    let sign = quadratic_sign(p);
    let mut report = ReportBuilder::new("special-values", format!("p={p}"), p.to_string());
    report.congruent(
        || "P_{p-1}".into(),
        &values[p as usize - 1],
        &sign,
        &modulus,
    );
    report.congruent(
        || "16 P_{p-2}".into(),
        &(&values[p as usize - 2] * 16),
        &sign,
        &modulus,
    );
    report.finish()
}

/// `p = a^2 + 2b^2` with `a, b > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSquareRep {
    pub p: u64,
    pub a: u64,
    pub b: u64,
}

/// Finds `p = a^2 + 2b^2` by exhaustive search over `a <= √p`.
pub fn two_square_rep(p: u64) -> Result<TwoSquareRep> {
    require_odd_prime(p)?;
    if !matches!(p % 8, 1 | 3) {
        return Err(Error::Domain(format!(
            "{p} ≡ {} (mod 8) has no representation a^2 + 2b^2",
            p % 8
        )));
    }
    let mut a = 1;
    while a * a < p {
        let rest = p - a * a;
        if rest.is_multiple_of(2) {
            let b = num_integer::Roots::sqrt(&(rest / 2));
            if b > 0 && b * b == rest / 2 {
                return Ok(TwoSquareRep { p, a, b });
            }
        }
        a += 2;
    }
    Err(Error::Internal(format!(
        "no a^2 + 2b^2 representation found for {p}"
    )))
}

/// The central value `P_{(p-1)/2}`: divisible by `p` when `p ≡ 5, 7 (mod 8)`,
/// otherwise congruent to `(-1)^{(p-1)/2} 4a^2` where `p = a^2 + 2b^2`.
pub fn central_value(p: u64) -> Result<CongruenceReport> {
    require_odd_prime(p)?;
    let half = (p - 1) / 2;
    let value = SequenceId::Clf.value(half)?;
    let modulus = BigInt::from(p);
    let mut report = ReportBuilder::new("central", format!("p={p}"), p.to_string());
    match p % 8 {
        5 | 7 => {
            report.congruent(|| format!("P_{half}"), &value, &BigInt::zero(), &modulus);
        }
        _ => {
            let rep = two_square_rep(p)?;
            let predicted = quadratic_sign(p) * 4 * BigInt::from(rep.a).pow(2);
            report.congruent(
                || format!("P_{half} a={} b={}", rep.a, rep.b),
                &value,
                &predicted,
                &modulus,
            );
            let nonzero = !value.is_multiple_of(&modulus);
            report.equal(|| format!("P_{half} nonzero mod p"), nonzero, true);
        }
    }
    report.finish()
}

/// `f_n ≡ (-8)^n f_{p-1-n} (mod p)` for `0 <= n <= p-1`, plus the central
/// criterion `p | f_{(p-1)/2} ⇔ p ≡ 5, 7 (mod 8)`.
pub fn verify_franel_symmetry(p: u64) -> Result<CongruenceReport> {
    require_odd_prime(p)?;
    let values = SequenceId::Franel.values(p - 1)?;
    let modulus = BigInt::from(p);
    let mut report = ReportBuilder::new("franel-symmetry", format!("p={p}"), p.to_string());
    let mut pow = BigInt::one();
    for n in 0..p as usize {
        let rhs = &pow * &values[p as usize - 1 - n];
        report.congruent(|| format!("n={n}"), &values[n], &rhs, &modulus);
        pow = (pow * -8i32).mod_floor(&modulus);
    }
    let half = (p - 1) / 2;
    let divides = values[half as usize].is_multiple_of(&modulus);
    report.equal(|| format!("p | f_{half}"), divides, matches!(p % 8, 5 | 7));
    report.finish()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AperyFamily {
    /// `a_n ≡ (-1)^n a_{p-1-n}`
    A,
    /// `b_n ≡ (-3/p) 9^n b_{p-1-n}`, needs `p > 3`
    B,
    Both,
}

/// Mod-`p` symmetry of the Apéry-like sequences over `0 <= n <= p-1`.
pub fn verify_apery_symmetries(p: u64, family: AperyFamily) -> Result<CongruenceReport> {
    require_odd_prime(p)?;
    let want_b = matches!(family, AperyFamily::B | AperyFamily::Both);
    if want_b && p == 3 {
        return Err(Error::Domain("the b-family symmetry needs p > 3".into()));
    }
    let modulus = BigInt::from(p);
    let label = match family {
        AperyFamily::A => "a",
        AperyFamily::B => "b",
        AperyFamily::Both => "a,b",
    };
    let mut report = ReportBuilder::new(
        "apery-symmetry",
        format!("p={p} family={label}"),
        p.to_string(),
    );
    if matches!(family, AperyFamily::A | AperyFamily::Both) {
        let a = SequenceId::AperyA.values(p - 1)?;
        for n in 0..p as usize {
            let sign = if n % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            report.congruent(
                || format!("a n={n}"),
                &a[n],
                &(sign * &a[p as usize - 1 - n]),
                &modulus,
            );
        }
    }
    if want_b {
        let b = SequenceId::AperyB.values(p - 1)?;
        let chi = BigInt::from(legendre_symbol(-3, p)?);
        let mut pow = BigInt::one();
        for n in 0..p as usize {
            let rhs = &chi * &pow * &b[p as usize - 1 - n];
            report.congruent(|| format!("b n={n}"), &b[n], &rhs, &modulus);
            pow = (pow * 9) % &modulus;
        }
    }
    report.finish()
}

/// `P_{mp^r} ≡ P_{mp^{r-1}} (mod p^r)` from exact values.
pub fn verify_supercongruence(m: u64, pr: &PrimePower, caps: &Caps) -> Result<CongruenceReport> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let (hi, lo) = supercongruence_indices(m, pr)?;
    caps.check_index(hi)?;
    let values = clf_values(hi)?;
    let mut report = ReportBuilder::new(
        "supercongruence",
        format!("m={m} p={} r={}", pr.p(), pr.r()),
        pr.modulus().to_string(),
    );
    report.congruent(
        || format!("P_{hi} vs P_{lo}"),
        &values[hi as usize],
        &values[lo as usize],
        pr.modulus(),
    );
    report.finish()
}

/// `(m p^r, m p^{r-1})`, or a cap error if `m p^r` overflows.
pub(crate) fn supercongruence_indices(m: u64, pr: &PrimePower) -> Result<(u64, u64)> {
    let lo = pr
        .p()
        .checked_pow(pr.r() - 1)
        .and_then(|x| x.checked_mul(m))
        .ok_or(Error::CapExceeded {
            what: "sequence index",
            requested: u64::MAX,
            cap: 0,
        })?;
    let hi = lo.checked_mul(pr.p()).ok_or(Error::CapExceeded {
        what: "sequence index",
        requested: u64::MAX,
        cap: 0,
    })?;
    Ok((hi, lo))
}

/// Compares `v_5(P_n)` with the number of digits 2 in base 5, `n <= n_max`.
/// A mismatch refutes an observation, not a theorem.
pub fn v5_conjecture_scan(n_max: u64, caps: &Caps) -> Result<CongruenceReport> {
    caps.check_index(n_max)?;
    let mut report =
        ReportBuilder::new("v5-conjecture", format!("n<={n_max}"), "exact").conjecture();
    for (n, value) in SequenceId::Clf.values(n_max)?.iter().enumerate() {
        let twos = base_p_digits(n as u64, 5)?.count(2) as u32;
        report.equal(|| format!("n={n}"), vp(value, 5)?, twos);
    }
    report.finish()
}
