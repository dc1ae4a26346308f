//! Formal-group congruences: the power lemma `t^{p^k}(u^p) ≡ t^{p^{k+1}}(u)`,
//! the change of variable taking coefficients `b_n` in `t` to `c_n` in `u`,
//! and the end-to-end modular route to the supercongruence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::eta::hauptmodul;
use super::identities::{compare_series, fine_c, weight_three_product};
use super::{NamedSeries, QSeries};
use crate::arith;
use crate::congruences::PrimePower;
use crate::error::{Error, Result};
use crate::report::{CongruenceReport, Counterexample, ReportBuilder};
use crate::sequences::SequenceId;

/// `v_p(x) >= k` for a rational `x`, treating 0 as divisible by everything.
fn divisible(x: &BigRational, p: u64, k: u32) -> bool {
    if x.is_zero() {
        return true;
    }
    let num = arith::vp(x.numer(), p).expect("nonzero") as i64;
    let den = arith::vp(x.denom(), p).expect("nonzero") as i64;
    num - den >= k as i64
}

/// Checks `t^{p^k}(u^p) ≡ t^{p^{k+1}}(u) (mod p^{k+1})` coefficientwise below
/// `order`, for `0 <= k <= k_max`. Coefficients may be rationals; divisibility
/// is `p`-adic.
pub fn verify_modppower_series(
    t: &QSeries,
    label: &str,
    p: u64,
    k_max: u32,
    order: usize,
) -> Result<CongruenceReport> {
    arith::require_prime(p)?;
    let order = order as i64;
    if t.order() < order {
        return Err(Error::Series(format!(
            "series known only to O(q^{}), {order} needed",
            t.order()
        )));
    }
    let t = t.truncate(order);
    let mut report = ReportBuilder::new(
        "modppower",
        format!("{label} p={p} k<={k_max} order={order}"),
        format!("{p}^(k+1)"),
    );
    let mut power = t.clone(); // t^{p^k}
    for k in 0..=k_max {
        let lhs = power.substitute_q_power(p as u32)?.truncate(order);
        let next = power.pow(p);
        let rhs = next.truncate(order);
        let joint = lhs.order().min(rhs.order());
        for e in 0..joint {
            let diff = lhs.coeff(e).expect("below order") - rhs.coeff(e).expect("below order");
            report.holds(divisible(&diff, p, k + 1), || Counterexample {
                params: format!("k={k} u^{e}"),
                lhs: lhs.coeff(e).expect("below order").to_string(),
                rhs: rhs.coeff(e).expect("below order").to_string(),
                modulus: arith::big_pow(p, k + 1).to_string(),
            });
        }
        power = next;
    }
    report.finish()
}

/// The power lemma for an integer polynomial `t(u) = Σ t_poly[i] u^i`.
pub fn verify_modppower_lemma(
    t_poly: &[i64],
    p: u64,
    k_max: u32,
    order: usize,
) -> Result<CongruenceReport> {
    let t = QSeries::from_i64(0, t_poly, order as i64);
    verify_modppower_series(&t, &format!("t={t_poly:?}"), p, k_max, order)
}

/// Runs the power lemma on `count` seeded random integer polynomials of degree
/// at most 6 with coefficients in `[-9, 9]`, cycling `p` through 3, 5, 7.
pub fn modppower_property_suite(
    seed: u64,
    count: usize,
    k_max: u32,
    order: usize,
) -> Result<CongruenceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::with_capacity(count);
    for i in 0..count {
        let degree = rng.gen_range(0..=6);
        let poly: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-9..=9)).collect();
        let p = [3, 5, 7][i % 3];
        parts.push(verify_modppower_lemma(&poly, p, k_max, order)?);
    }
    Ok(CongruenceReport::combine(
        "modppower",
        crate::CheckKind::Theorem,
        format!("seed={seed} polynomials={count} k<={k_max} order={order}"),
        "p^(k+1)",
        &parts,
    ))
}

/// Transfers the differential `Σ_k b_k t^{k-1} dt` to `Σ_n c_n u^{n-1} du`.
///
/// `t` is given as a series in `q = u^{1/v}` and must have the shape
/// `t = (1/m) Σ_{n>=1} a_n q^n` with integer `a_n` and `a_1 = 1`. Entry `b[k]`
/// is the coefficient of `t^{k-1} dt`, so `b[0]` multiplies `dt/t`. Returns
/// `c_1, ..., c_n_max`, each of which must be an integer.
///
/// Since `Σ b_k t^{k-1} dt = B(t) (q dt/dq)/t · dq/q` and `du/u = v dq/q`,
/// `c_n` is `1/v` times the coefficient of `q^{vn}` in `B(t) (q dt/dq)/t`.
pub fn derive_c_from_b(
    b: &[BigInt],
    t: &QSeries,
    m: u64,
    v: u32,
    n_max: usize,
) -> Result<Vec<BigInt>> {
    if m == 0 || v == 0 {
        return Err(Error::Domain("m and v must be positive".into()));
    }
    let scaled = t.scalar_mul(&BigRational::from_integer(m.into()));
    if scaled.lower_valuation() != Some(1) || scaled.coeff(1) != Some(BigRational::one()) {
        return Err(Error::Domain(
            "m·t must start with exactly q + O(q^2)".into(),
        ));
    }
    if !scaled.is_integral() {
        return Err(Error::Domain("m·t must have integer coefficients".into()));
    }
    let need = v as i64 * n_max as i64 + 1;
    if t.order() < need + 1 || (b.len() as i64) < need {
        return Err(Error::Series(format!(
            "c_{n_max} needs t to O(q^{}) and {need} coefficients b_k",
            need + 1
        )));
    }
    let b_series = QSeries::from_integers(0, &b[..need as usize], need);
    let log_derivative = t.q_derivative().div_series(t)?;
    let w = (&b_series.compose(t)? * &log_derivative).truncate(need);
    let v_rat = BigRational::from_integer(v.into());
    let mut out = Vec::with_capacity(n_max);
    for e in 1..need {
        let coeff = w.coeff(e).expect("below order");
        if e % v as i64 != 0 {
            if !coeff.is_zero() {
                return Err(Error::Internal(format!(
                    "q^{e} coefficient {coeff} is not on the u = q^{v} lattice"
                )));
            }
            continue;
        }
        let c = coeff / &v_rat;
        if !c.is_integer() {
            return Err(Error::Internal(format!(
                "c_{} = {c} is not an integer",
                e / v as i64
            )));
        }
        out.push(c.to_integer());
    }
    Ok(out)
}

/// The modular route to `P_{mp^r} ≡ P_{mp^{r-1}} (mod p^r)`, checked on
/// series truncated at `O(q^order)`:
///
/// (a) `f · (q dt/dq)/t = E(2τ)`;
/// (b) the `c_n` derived from `b_n = P_n` equal `-2 × Fine's c_n` and satisfy
///     `c_{mp^r} ≡ c_{mp^{r-1}} (mod p^r)`;
/// (c) `P_{mp^r} ≡ P_{mp^{r-1}} (mod p^r)` directly, for every `m <= m_max`,
///     `r <= r_max` with `mp^r < order`.
pub fn sb_route_supercongruence(
    m_max: u64,
    p: u64,
    r_max: u32,
    order: usize,
) -> Result<CongruenceReport> {
    arith::require_odd_prime(p)?;
    if order < 4 {
        return Err(Error::Domain(format!(
            "series order must be >= 4, got {order}"
        )));
    }
    let mut report = ReportBuilder::new(
        "supercongruence-sb",
        format!("m<={m_max} p={p} r<={r_max} order={order}"),
        "p^r",
    );

    // (a)
    let lhs = weight_three_product(order)?;
    let rhs = NamedSeries::E2.expand(order)?;
    compare_series(&mut report, "(a) f·θt/t", &lhs, &rhs, 0, order as i64)?;

    // (b)
    let u_terms = (order - 2) / 2;
    let b = SequenceId::Clf.values(order as u64)?;
    let t = hauptmodul().expand(order + 1)?;
    let c = derive_c_from_b(&b, &t, 2, 2, u_terms)?;
    for (i, c) in c.iter().enumerate() {
        let n = i as u64 + 1;
        report.equal(
            || format!("(b) c_{n} = -2 fine_c"),
            c.clone(),
            BigInt::from(-2 * fine_c(n)?),
        );
    }
    let derived = |n: u64| c.get(n as usize - 1).cloned();

    // (b) and (c)
    let clf = SequenceId::Clf.values(order as u64)?;
    for r in 1..=r_max {
        let pr = PrimePower::new(p, r)?;
        let lo_scale = p.pow(r - 1);
        for m in 1..=m_max {
            let lo = m * lo_scale;
            let hi = lo * p;
            if hi >= order as u64 {
                break;
            }
            if let (Some(ch), Some(cl)) = (derived(hi), derived(lo)) {
                report.congruent(|| format!("(b) m={m} r={r} c"), &ch, &cl, pr.modulus());
            }
            report.congruent(
                || format!("(c) m={m} r={r} P_{hi} vs P_{lo}"),
                &clf[hi as usize],
                &clf[lo as usize],
                pr.modulus(),
            );
        }
    }
    report.finish()
}
