//! Binomial coefficients modulo prime powers: partial factorials, base-`p`
//! carries, Granville's congruence and its corollaries, and the term-by-term
//! route from the binomial sum for `P_n` to the supercongruence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{self, inv_mod, mul_mod, require_odd_prime, require_prime};
use crate::congruences::{base_p_digits, supercongruence_indices, PrimePower};
use crate::error::{Error, Result};
use crate::report::{CongruenceReport, Counterexample, ReportBuilder};
use crate::sequences::{g_row, SequenceId};
use crate::Caps;

/// `(k!)_p`: the product of the integers in `[1, k]` not divisible by `p`.
pub fn partial_factorial(k: u64, p: u64) -> Result<BigInt> {
    require_prime(p)?;
    Ok((1..=k)
        .filter(|i| i % p != 0)
        .fold(BigInt::one(), |acc, i| acc * i))
}

/// `(k!)_p mod modulus`.
pub fn partial_factorial_mod(k: u64, p: u64, modulus: u64) -> u64 {
    (1..=k)
        .filter(|i| i % p != 0)
        .fold(1 % modulus, |acc, i| mul_mod(acc, i % modulus, modulus))
}

/// Carry flags of the base-`p` addition `t + s`, one per digit position,
/// least significant first. `flags[i]` is set when digit `i` produces a carry.
pub fn carry_flags(t: u64, s: u64, p: u64) -> Vec<bool> {
    let mut flags = Vec::new();
    let (mut t, mut s, mut carry) = (t, s, 0);
    while t > 0 || s > 0 || carry > 0 {
        let digit = t % p + s % p + carry;
        carry = u64::from(digit >= p);
        flags.push(carry == 1);
        t /= p;
        s /= p;
    }
    flags
}

/// Number of carries in the base-`p` addition `t + s`.
pub fn carries(t: u64, s: u64, p: u64) -> u32 {
    carry_flags(t, s, p).iter().filter(|&&c| c).count() as u32
}

/// `v_p(C(s, t))` by counting carries in `t + (s - t)` (Kummer).
pub fn vp_binomial(s: u64, t: u64, p: u64) -> Result<u32> {
    if t > s {
        return Err(Error::Domain(format!("C({s}, {t}) needs t <= s")));
    }
    require_prime(p)?;
    Ok(carries(t, s - t, p))
}

/// `v_p(g(i, n))` from carries: twice `v_p(C(2(n-i), n-i))` plus `v_p(C(n-i, i))`.
pub fn vp_g(i: u64, n: u64, p: u64) -> Result<u32> {
    if 2 * i > n {
        return Err(Error::Domain(format!("g({i}, {n}) needs 2i <= n")));
    }
    let k = n - i;
    Ok(2 * vp_binomial(2 * k, k, p)? + vp_binomial(k, i, p)?)
}

/// Base-`p` data for `C(n, m)` modulo `p^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GranvilleDecomposition {
    pub n: u64,
    pub m: u64,
    pub r: u64,
    pub p: u64,
    pub q: u32,
    /// Digits of `n`, `m`, `r`, least significant first, padded to equal length.
    pub n_digits: Vec<u64>,
    pub m_digits: Vec<u64>,
    pub r_digits: Vec<u64>,
    /// Least residues of `⌊n/p^j⌋`, `⌊m/p^j⌋`, `⌊r/p^j⌋` modulo `p^q`.
    pub big_n: Vec<u64>,
    pub big_m: Vec<u64>,
    pub big_r: Vec<u64>,
    /// `e[j]`: carries produced at digit positions `>= j` in `m + r`.
    pub e: Vec<u32>,
}

impl GranvilleDecomposition {
    pub fn new(n: u64, m: u64, p: u64, q: u32) -> Result<Self> {
        if m > n {
            return Err(Error::Domain(format!("C({n}, {m}) needs m <= n")));
        }
        require_odd_prime(p)?;
        if q == 0 {
            return Err(Error::Domain("q must be positive".into()));
        }
        let modulus = p
            .checked_pow(q)
            .ok_or_else(|| Error::Domain("p^q overflows".into()))?;
        let r = n - m;
        let n_digits = base_p_digits(n, p)?.digits;
        let len = n_digits.len();
        let pad = |x: u64| {
            let mut d = base_p_digits(x, p).map(|b| b.digits).unwrap_or_default();
            d.resize(len, 0);
            d
        };
        let m_digits = pad(m);
        let r_digits = pad(r);
        let mut flags = carry_flags(m, r, p);
        flags.resize(len, false);
        let mut e = vec![0u32; len + 1];
        for j in (0..len).rev() {
            e[j] = e[j + 1] + u32::from(flags[j]);
        }
        let residues = |x: u64| {
            (0..len as u32)
                .map(|j| (x / p.pow(j)) % modulus)
                .collect::<Vec<_>>()
        };
        Ok(GranvilleDecomposition {
            n,
            m,
            r,
            p,
            q,
            big_n: residues(n),
            big_m: residues(m),
            big_r: residues(r),
            n_digits,
            m_digits,
            r_digits,
            e,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.q)
    }

    /// `e_j`, zero past the leading digit.
    pub fn e(&self, j: usize) -> u32 {
        self.e.get(j).copied().unwrap_or(0)
    }

    /// Number of carries in `m + r`.
    pub fn carries(&self) -> u32 {
        self.e(0)
    }
}

/// Right-hand side of Granville's congruence for `C(n, m) / p^{e_0}` modulo
/// `p^q`: `(-1)^{e_{q-1}} ∏_j (N_j!)_p / ((M_j!)_p (R_j!)_p)`, with the
/// quotients taken through modular inverses.
pub fn granville_rhs(d: &GranvilleDecomposition) -> u64 {
    let modulus = d.modulus();
    let pf = |k: u64| partial_factorial_mod(k, d.p, modulus);
    let mut acc = 1 % modulus;
    for j in 0..d.big_n.len() {
        let den = mul_mod(pf(d.big_m[j]), pf(d.big_r[j]), modulus);
        // partial factorials are units mod p^q
        let inv = inv_mod(den, modulus).expect("partial factorial is a unit");
        acc = mul_mod(acc, mul_mod(pf(d.big_n[j]), inv, modulus), modulus);
    }
    if d.e(d.q as usize - 1) % 2 == 1 {
        (modulus - acc) % modulus
    } else {
        acc
    }
}

fn unit_part_mod(x: &BigInt, e0: u32, p: u64, modulus: u64) -> Result<u64> {
    let unit = arith::exact_div(x, &arith::big_pow(p, e0), "p-adic unit part")?;
    let r = unit.mod_floor(&BigInt::from(modulus));
    Ok(r.try_into().expect("residue below a u64 modulus"))
}

fn u64_cex(params: String, lhs: u64, rhs: u64, modulus: u64) -> Counterexample {
    Counterexample {
        params,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        modulus: modulus.to_string(),
    }
}

/// Granville's congruence against exact binomials for all `m <= n <= n_max`.
pub fn verify_granville(n_max: u64, p: u64, q: u32) -> Result<CongruenceReport> {
    require_odd_prime(p)?;
    let modulus = p.pow(q);
    let mut report = ReportBuilder::new(
        "granville",
        format!("n<={n_max} p={p} q={q}"),
        modulus.to_string(),
    );
    for n in 0..=n_max {
        for (m, c) in arith::binomial_row(n).iter().enumerate() {
            let m = m as u64;
            let d = GranvilleDecomposition::new(n, m, p, q)?;
            let e0 = d.carries();
            report.equal(|| format!("n={n} m={m} valuation"), arith::vp(c, p)?, e0);
            let lhs = unit_part_mod(c, e0, p, modulus)?;
            let rhs = granville_rhs(&d);
            report.holds(lhs == rhs, || {
                u64_cex(format!("n={n} m={m}"), lhs, rhs, modulus)
            });
        }
    }
    report.finish()
}

/// The one-extra-factor relation between `C(pn, pm)` and `C(n, m)` modulo
/// `p^q` for all `m <= n <= n_max`, and for `p >= 5` the classical
/// `C(pn, pm) ≡ C(n, m) (mod p^3)`.
///
/// The extra factor uses the least residues of `pn`, `pm`, `p(n-m)` modulo
/// `p^q`, and carries the sign `(-1)^{c}` where `c` flags a carry out of
/// digit `q-2` of `m + (n-m)`.
pub fn verify_ljunggren(n_max: u64, p: u64, q: u32) -> Result<CongruenceReport> {
    require_odd_prime(p)?;
    if q == 0 {
        return Err(Error::Domain("q must be positive".into()));
    }
    let modulus = p.pow(q);
    let cube = arith::big_pow(p, 3);
    let mut report = ReportBuilder::new(
        "ljunggren",
        format!("n<={n_max} p={p} q={q}"),
        modulus.to_string(),
    );
    for n in 0..=n_max {
        let small = arith::binomial_row(n);
        for m in 0..=n {
            let r = n - m;
            let c0 = &small[m as usize];
            let c1 = arith::binomial(p * n, p * m);
            let e0 = carries(m, r, p);
            report.equal(|| format!("n={n} m={m} valuation"), arith::vp(&c1, p)?, e0);

            let pf = |k: u64| partial_factorial_mod(k % modulus, p, modulus);
            let den = mul_mod(pf(p * m), pf(p * r), modulus);
            let extra = mul_mod(pf(p * n), inv_mod(den, modulus).expect("unit"), modulus);
            let flipped = q >= 2
                && carry_flags(m, r, p)
                    .get(q as usize - 2)
                    .copied()
                    .unwrap_or(false);
            let mut rhs = mul_mod(extra, unit_part_mod(c0, e0, p, modulus)?, modulus);
            if flipped {
                rhs = (modulus - rhs) % modulus;
            }
            let lhs = unit_part_mod(&c1, e0, p, modulus)?;
            report.holds(lhs == rhs, || {
                u64_cex(format!("n={n} m={m}"), lhs, rhs, modulus)
            });

            if p >= 5 {
                report.congruent(|| format!("n={n} m={m} mod p^3"), &c1, c0, &cube);
            }
        }
    }
    report.finish()
}

/// `C(mp^r, kp^s)/p^{e_0} ≡ C(mp^{r-1}, kp^{s-1})/p^{e_0} (mod p^q)` for
/// `r >= s >= q >= 1`, where both binomials must share the valuation `e_0`.
pub fn verify_ljunggren_sp(
    m: u64,
    k: u64,
    p: u64,
    q: u32,
    r: u32,
    s: u32,
) -> Result<CongruenceReport> {
    require_odd_prime(p)?;
    if !(r >= s && s >= q && q >= 1) {
        return Err(Error::Domain(format!(
            "need r >= s >= q >= 1, got r={r} s={s} q={q}"
        )));
    }
    let big = |x: u64, e: u32| {
        p.checked_pow(e)
            .and_then(|pe| pe.checked_mul(x))
            .ok_or_else(|| Error::Domain("index overflows u64".into()))
    };
    let (top, bottom) = (big(m, r)?, big(k, s)?);
    if bottom > top {
        return Err(Error::Domain(format!(
            "need k p^s <= m p^r, got {bottom} > {top}"
        )));
    }
    let (top1, bottom1) = (big(m, r - 1)?, big(k, s - 1)?);
    let modulus = p.pow(q);
    let left = arith::binomial(top, bottom);
    let right = arith::binomial(top1, bottom1);
    let e0 = arith::vp(&left, p)?;
    let mut report = ReportBuilder::new(
        "ljunggren-sp",
        format!("m={m} k={k} p={p} q={q} r={r} s={s}"),
        modulus.to_string(),
    );
    if !report.equal(|| "valuation".into(), arith::vp(&right, p)?, e0) {
        return report.finish();
    }
    let lhs = unit_part_mod(&left, e0, p, modulus)?;
    let rhs = unit_part_mod(&right, e0, p, modulus)?;
    report.holds(lhs == rhs, || {
        u64_cex(
            format!("C({top},{bottom}) vs C({top1},{bottom1})"),
            lhs,
            rhs,
            modulus,
        )
    });
    report.finish()
}

/// `v_p(g(i, n)) >= v_p(n)` for all `1 <= n <= n_max` and `p ∤ i`, `2i <= n`.
pub fn verify_g_valuation_bound(n_max: u64, p: u64) -> Result<CongruenceReport> {
    require_odd_prime(p)?;
    let mut report = ReportBuilder::new("g-valuation", format!("n<={n_max} p={p}"), ">=");
    for n in 1..=n_max {
        let bound = arith::vp_u64(n, p).expect("n > 0");
        for i in (1..=n / 2).filter(|i| i % p != 0) {
            let v = vp_g(i, n, p)?;
            report.holds(v >= bound, || Counterexample {
                params: format!("i={i} n={n}"),
                lhs: v.to_string(),
                rhs: bound.to_string(),
                modulus: ">=".into(),
            });
        }
    }
    report.finish()
}

fn pow_mod_big(base: i64, exp: u64, modulus: &BigInt) -> BigInt {
    BigInt::from(base)
        .mod_floor(modulus)
        .modpow(&BigInt::from(exp), modulus)
}

/// `g(jp, mp^r) ≡ g(j, mp^{r-1})` and `(-4)^{jp} g(jp, mp^r) ≡ (-4)^j g(j, mp^{r-1})`
/// modulo `p^r`, for `0 <= j <= min(j_max, ⌊mp^{r-1}/2⌋)`; also the sign
/// factor `(-4)^{jp} ≡ (-4)^j (mod p^{s+1})` where `j = kp^s`, `p ∤ k`.
pub fn verify_g_congruence(
    m: u64,
    p: u64,
    r: u32,
    j_max: u64,
    caps: &Caps,
) -> Result<CongruenceReport> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let pr = PrimePower::new(p, r)?;
    let (hi, lo) = supercongruence_indices(m, &pr)?;
    caps.check_index(2 * hi)?;
    let modulus = pr.modulus();
    let top = g_row(hi);
    let bottom = g_row(lo);
    let mut report = ReportBuilder::new(
        "g-congruence",
        format!("m={m} p={p} r={r}"),
        modulus.to_string(),
    );
    for j in 0..=j_max.min(lo / 2) {
        let upper = &top[(j * p) as usize];
        let lower = &bottom[j as usize];
        report.congruent(|| format!("j={j} g"), upper, lower, modulus);
        let lhs = pow_mod_big(-4, j * p, modulus) * upper;
        let rhs = pow_mod_big(-4, j, modulus) * lower;
        report.congruent(|| format!("j={j} (-4)^j g"), &lhs, &rhs, modulus);
        if j > 0 {
            let s = arith::vp_u64(j, p).expect("j > 0");
            let sub = arith::big_pow(p, s + 1);
            report.congruent(
                || format!("j={j} sign mod p^{}", s + 1),
                &pow_mod_big(-4, j * p, &sub),
                &pow_mod_big(-4, j, &sub),
                &sub,
            );
        }
    }
    report.finish()
}

/// Replays the binomial-sum proof of `P_{mp^r} ≡ P_{mp^{r-1}} (mod p^r)`
/// on exact values, checking each intermediate congruence:
///
/// 0. the binomial sum reproduces `P_{mp^r}` exactly;
/// 1. terms with `p ∤ i` vanish mod `p^r` (valuation bound), so the sum
///    over `p | i` alone is congruent to `P_{mp^r}`;
/// 2. `2^{mp^r} ≡ 2^{mp^{r-1}}` (Euler), re-scaling the restricted sum;
/// 3. each term `(-4)^{jp} g(jp, mp^r)` matches `(-4)^j g(j, mp^{r-1})`,
///    and the resulting sum is exactly `P_{mp^{r-1}}`.
pub fn granville_route_supercongruence(
    m: u64,
    p: u64,
    r: u32,
    caps: &Caps,
) -> Result<CongruenceReport> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let pr = PrimePower::new(p, r)?;
    let (hi, lo) = supercongruence_indices(m, &pr)?;
    caps.check_index(2 * hi)?;
    let modulus = pr.modulus();
    let values = SequenceId::Clf.values(hi)?;
    let (p_hi, p_lo) = (&values[hi as usize], &values[lo as usize]);
    let top = g_row(hi);
    let bottom = g_row(lo);
    let mut report = ReportBuilder::new(
        "supercongruence-granville",
        format!("m={m} p={p} r={r}"),
        modulus.to_string(),
    );

    // stage 0
    let mut full = BigInt::zero();
    let mut sign_pow = BigInt::one();
    for g in &top {
        full += &sign_pow * g;
        sign_pow *= -4;
    }
    report.equal(
        || "stage0 binomial sum".into(),
        full << hi as usize,
        p_hi.clone(),
    );

    // stage 1
    let mut restricted = BigInt::zero();
    for (i, g) in top.iter().enumerate() {
        let i = i as u64;
        if !i.is_multiple_of(p) {
            let v = vp_g(i, hi, p)?;
            report.holds(v >= r, || Counterexample {
                params: format!("stage1 i={i} valuation"),
                lhs: v.to_string(),
                rhs: r.to_string(),
                modulus: ">=".into(),
            });
            report.congruent(|| format!("stage1 i={i}"), g, &BigInt::zero(), modulus);
        } else {
            restricted += pow_mod_big(-4, i, modulus) * g;
        }
    }
    let stage1 = pow_mod_big(2, hi, modulus) * &restricted;
    report.congruent(|| "stage1 sum".into(), p_hi, &stage1, modulus);

    // stage 2
    report.congruent(
        || "stage2 2^{mp^r} vs 2^{mp^{r-1}}".into(),
        &pow_mod_big(2, hi, modulus),
        &pow_mod_big(2, lo, modulus),
        modulus,
    );
    let stage2 = pow_mod_big(2, lo, modulus) * &restricted;
    report.congruent(|| "stage2 sum".into(), &stage1, &stage2, modulus);

    // stage 3
    let mut descended = BigInt::zero();
    let mut descended_exact = BigInt::zero();
    for j in 0..=lo / 2 {
        let upper = pow_mod_big(-4, j * p, modulus) * &top[(j * p) as usize];
        let lower = pow_mod_big(-4, j, modulus) * &bottom[j as usize];
        report.congruent(|| format!("stage3 j={j}"), &upper, &lower, modulus);
        descended += lower;
        descended_exact += BigInt::from(-4).pow(j as u32) * &bottom[j as usize];
    }
    report.equal(
        || "stage3 binomial sum".into(),
        descended_exact << lo as usize,
        p_lo.clone(),
    );
    let stage3 = pow_mod_big(2, lo, modulus) * descended;
    report.congruent(|| "stage3 sum".into(), &stage2, &stage3, modulus);

    report.congruent(|| format!("P_{hi} vs P_{lo}"), p_hi, p_lo, modulus);
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_factorials() {
        assert_eq!(partial_factorial(0, 5).unwrap(), BigInt::one());
        assert_eq!(
            partial_factorial(7, 3).unwrap(),
            BigInt::from(2 * 4 * 5 * 7)
        );
        for p in [3u64, 5, 7] {
            for q in 1..=2u32 {
                let pq = p.pow(q);
                let big_pq = BigInt::from(pq);
                assert_eq!(
                    partial_factorial(pq, p).unwrap().mod_floor(&big_pq),
                    BigInt::from(pq - 1)
                );
                for m in 0..=10u64 {
                    let v = partial_factorial(m * pq, p).unwrap().mod_floor(&big_pq);
                    let want = if m % 2 == 0 { 1 } else { pq - 1 };
                    assert_eq!(v, BigInt::from(want), "p={p} q={q} m={m}");
                    assert_eq!(partial_factorial_mod(m * pq, p, pq), want);
                }
            }
        }
    }

    #[test]
    fn carry_examples() {
        // 102 + 102 = 211 in base 3
        assert_eq!(carries(11, 11, 3), 1);
        // 102 + 21 = 200 in base 3
        assert_eq!(carries(11, 7, 3), 2);
        assert_eq!(carries(0, 41, 7), 0);
        assert_eq!(vp_binomial(17, 0, 5).unwrap(), 0);
        // C(10, 5) = 252; 10 + 10 = 20 in base 5 has no carry
        assert_eq!(vp_binomial(10, 5, 5).unwrap(), 0);
        assert!(vp_binomial(3, 4, 5).is_err());
        assert_eq!(vp_g(7, 18, 3).unwrap(), 3);
    }

    #[test]
    fn decomposition_shape() {
        let d = GranvilleDecomposition::new(18, 7, 3, 2).unwrap();
        assert_eq!(d.n_digits, vec![0, 0, 2]);
        assert_eq!(d.m_digits, vec![1, 2, 0]);
        assert_eq!(d.r_digits, vec![2, 0, 1]);
        assert_eq!(d.carries(), 2);
        assert!(d.e.windows(2).all(|w| w[0] >= w[1]));
        assert!(d.big_n.iter().all(|&x| x < 9));
        assert!(GranvilleDecomposition::new(3, 4, 3, 1).is_err());
        assert!(GranvilleDecomposition::new(4, 3, 2, 1).is_err());
    }

    #[test]
    fn granville_rhs_examples() {
        // C(7, 3) = 35 ≡ 8 (mod 9), no carries
        let d = GranvilleDecomposition::new(7, 3, 3, 2).unwrap();
        assert_eq!(d.carries(), 0);
        assert_eq!(granville_rhs(&d), 8);
        for n in 0..20 {
            let d = GranvilleDecomposition::new(n, 0, 5, 2).unwrap();
            assert_eq!(granville_rhs(&d), 1);
        }
        // C(p, 1)/p = 1
        let d = GranvilleDecomposition::new(5, 1, 5, 1).unwrap();
        assert_eq!(d.carries(), 1);
        assert_eq!(granville_rhs(&d), 1);
    }

    #[test]
    fn verification_examples() {
        assert!(verify_granville(60, 3, 2).unwrap().passed());
        assert!(verify_granville(60, 5, 1).unwrap().passed());
        assert!(verify_ljunggren(40, 3, 2).unwrap().passed());
        assert!(verify_ljunggren(2, 5, 1).unwrap().passed());
        assert_eq!((arith::binomial(10, 5) - 2) % 125, BigInt::zero());
        assert!(verify_g_valuation_bound(18, 3).unwrap().passed());
        assert!(verify_g_valuation_bound(100, 5).unwrap().passed());
        assert!(verify_granville(5, 2, 1).is_err());
    }

    #[test]
    fn ljunggren_sp_examples() {
        assert!(verify_ljunggren_sp(2, 1, 3, 1, 2, 1).unwrap().passed());
        assert!(verify_ljunggren_sp(3, 0, 5, 1, 2, 1).unwrap().passed());
        assert!(verify_ljunggren_sp(1, 1, 5, 1, 1, 1).unwrap().passed());
        assert!(verify_ljunggren_sp(1, 1, 3, 2, 1, 1).is_err());
        assert!(verify_ljunggren_sp(1, 2, 3, 1, 1, 1).is_err());
    }

    #[test]
    fn g_congruence_examples() {
        let caps = Caps::default();
        let r = verify_g_congruence(1, 3, 1, 1, &caps).unwrap();
        assert!(r.passed());
        // only j = 0 is in range, two congruences for it
        assert_eq!(r.checked, 2);
        assert_eq!(
            BigInt::from(396).mod_floor(&BigInt::from(3)),
            BigInt::zero()
        );
        assert!(verify_g_congruence(1, 3, 2, 10, &caps).unwrap().passed());
        assert!(verify_g_congruence(2, 5, 2, 100, &caps).unwrap().passed());
    }

    #[test]
    fn granville_route_examples() {
        let caps = Caps::default();
        for (m, p, r) in [(1, 3, 1), (1, 5, 1), (2, 3, 2), (1, 7, 2)] {
            let rep = granville_route_supercongruence(m, p, r, &caps).unwrap();
            assert!(rep.passed(), "{rep}");
        }
        let tight = Caps { index: 10, ..caps };
        assert!(matches!(
            granville_route_supercongruence(1, 3, 2, &tight),
            Err(Error::CapExceeded { .. })
        ));
    }
}
