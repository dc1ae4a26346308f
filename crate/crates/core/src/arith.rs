//! Small-integer number theory and exact big-integer helpers shared by the
//! other modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Witnesses that make Miller-Rabin deterministic for every n < 3.4 × 10^14.
const MR_WITNESSES: [u64; 7] = [2, 3, 5, 7, 11, 13, 17];
const MR_BOUND: u64 = 341_550_071_728_321;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all `n` below 3.4 × 10^14.
///
/// Larger inputs are rejected by [`require_prime`]; here they get the same
/// witness set, which is then only probabilistic.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &MR_WITNESSES {
        if n == w {
            return true;
        }
        if n.is_multiple_of(w) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if p >= MR_BOUND {
        return Err(Error::Domain(format!(
            "{p} is beyond the deterministic primality bound {MR_BOUND}"
        )));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

pub fn require_odd_prime(p: u64) -> Result<()> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::Domain("p must be an odd prime".into()));
    }
    Ok(())
}

/// Odd primes `p` with `lo <= p < hi`, ascending.
pub fn odd_primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..hi)
        .filter(|&p| p % 2 == 1 && is_prime(p))
        .collect()
}

/// Legendre symbol `(a/p)` via Euler's criterion.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    match pow_mod(r, (p - 1) / 2, p) {
        1 => Ok(1),
        x if x == p - 1 => Ok(-1),
        x => Err(Error::Internal(format!(
            "Euler's criterion gave {x} for ({a}/{p})"
        ))),
    }
}

/// `p`-adic valuation of a nonzero integer.
pub fn vp(x: &BigInt, p: u64) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::Domain("v_p(0) is undefined".into()));
    }
    if p < 2 {
        return Err(Error::Domain(format!("valuation base {p} must be >= 2")));
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut k = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Ok(k);
        }
        x = q;
        k += 1;
    }
}

pub fn vp_u64(mut x: u64, p: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut k = 0;
    while x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    Some(k)
}

/// `numerator / denominator`, failing if the remainder is nonzero.
pub fn exact_div(
    numerator: &BigInt,
    denominator: &BigInt,
    context: &'static str,
) -> Result<BigInt> {
    let (q, r) = numerator.div_rem(denominator);
    if !r.is_zero() {
        return Err(Error::InexactDivision {
            context,
            numerator: numerator.to_string(),
            denominator: denominator.to_string(),
        });
    }
    Ok(q)
}

/// Least non-negative residue.
pub fn residue(x: &BigInt, modulus: &BigInt) -> BigInt {
    x.mod_floor(modulus)
}

pub fn big_pow(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `C(n, k)` by the multiplicative formula, dividing exactly at each step.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Row `C(n, 0), ..., C(n, n)`.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

/// Central binomials `C(2k, k)` for `0 <= k <= n`.
pub fn central_binomials(n: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    out.push(c.clone());
    for k in 1..=n {
        // C(2k, k) = C(2k-2, k-1) * 2(2k-1) / k
        c = c * (2 * (2 * k - 1)) / k;
        out.push(c.clone());
    }
    out
}

pub fn factorials(n: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut f = BigInt::one();
    out.push(f.clone());
    for k in 1..=n {
        f *= k;
        out.push(f.clone());
    }
    out
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}
