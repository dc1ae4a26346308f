use std::io::Write;

use clap::{Args, ValueEnum};
use clf_core::arith::{self, odd_primes_in};
use clf_core::congruences::{
    central_value, v5_conjecture_scan, verify_apery_symmetries, verify_clf_symmetry,
    verify_franel_symmetry, verify_lucas_product, verify_special_values, verify_supercongruence,
    AperyFamily, PrimePower,
};
use clf_core::granville::{
    granville_route_supercongruence, verify_g_congruence, verify_g_valuation_bound,
    verify_granville, verify_ljunggren, verify_ljunggren_sp,
};
use clf_core::qseries::formal::{
    modppower_property_suite, sb_route_supercongruence, verify_modppower_series,
};
use clf_core::qseries::identities::{
    verify_clf_ode, verify_e_equals_fine, verify_fine_congruence, verify_generating_identity,
    verify_picard_fuchs, verify_weight3_identity,
};
use clf_core::qseries::NamedSeries;
use clf_core::suite::{self, MODPPOWER_SEED};
use clf_core::{Caps, CongruenceReport, Error, Result};

use crate::output::{self, Format};
use crate::{Failure, GlobalArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Lucas,
    ClfSymmetry,
    SpecialValues,
    Central,
    FranelSymmetry,
    AperySymmetry,
    Supercongruence,
    SupercongruenceGranville,
    SupercongruenceSb,
    Granville,
    Ljunggren,
    LjunggrenSp,
    GValuation,
    GCongruence,
    V5Conjecture,
    QseriesIdentities,
    Modppower,
    Fine,
    All,
}

/// Omitted parameters fall back to each family's default sweep.
#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub family: Family,
    /// Prime
    #[arg(long)]
    pub p: Option<u64>,
    /// Prime-power exponent
    #[arg(long)]
    pub r: Option<u32>,
    /// Multiplier, or its upper bound for sweeping families
    #[arg(long)]
    pub m: Option<u64>,
    /// Upper bound: largest index, or the prime bound for symmetry families
    #[arg(long)]
    pub max: Option<u64>,
    /// Series truncation order
    #[arg(long)]
    pub order: Option<usize>,
    /// Modulus exponent for the binomial congruences
    #[arg(long)]
    pub q: Option<u32>,
    /// Lower index multiplier (ljunggren-sp) or lemma depth (modppower)
    #[arg(long)]
    pub k: Option<u64>,
    /// Lower prime-power exponent (ljunggren-sp)
    #[arg(long)]
    pub s: Option<u32>,
    /// Seed for randomized suites
    #[arg(long)]
    pub seed: Option<u64>,
}

fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn positive<T: Into<u64> + Copy>(name: &str, v: Option<T>) -> Result<()> {
    match v {
        Some(x) if x.into() == 0 => Err(domain(format!("--{name} must be positive"))),
        _ => Ok(()),
    }
}

/// Rejects bad parameters before any computation.
fn validate(a: &VerifyArgs, caps: &Caps) -> Result<()> {
    if let Some(p) = a.p {
        if a.family == Family::Lucas {
            arith::require_prime(p)?;
        } else if a.family != Family::Modppower {
            arith::require_odd_prime(p)?;
        } else {
            arith::require_prime(p)?;
        }
    }
    positive("r", a.r)?;
    positive("m", a.m)?;
    positive("q", a.q)?;
    positive("s", a.s)?;
    if let Some(max) = a.max {
        caps.check_index(max)?;
    }
    if let Some(order) = a.order {
        caps.check_order(order + 1)?;
    }
    if matches!(
        a.family,
        Family::Supercongruence | Family::SupercongruenceGranville
    ) {
        let (p, r, m) = (a.p.unwrap_or(13), a.r.unwrap_or(3), a.m.unwrap_or(6));
        let top = p
            .checked_pow(r)
            .and_then(|x| x.checked_mul(m))
            .ok_or_else(|| domain("m p^r overflows"))?;
        caps.check_index(top.min(a.max.unwrap_or(u64::MAX)))?;
    }
    Ok(())
}

fn primes_or(p: Option<u64>, default: Vec<u64>) -> Vec<u64> {
    p.map_or(default, |p| vec![p])
}

fn range_or<T: Copy>(
    v: Option<T>,
    default: std::ops::RangeInclusive<T>,
) -> std::ops::RangeInclusive<T> {
    v.map_or(default, |x| x..=x)
}

fn collect(
    items: impl IntoIterator<Item = Result<CongruenceReport>>,
) -> Result<Vec<CongruenceReport>> {
    items.into_iter().collect()
}

/// `(m, p, r)` triples with `m p^r <= bound`.
fn supercongruence_grid(a: &VerifyArgs) -> Vec<(u64, u64, u32)> {
    let bound = a.max.unwrap_or(4000);
    let mut out = Vec::new();
    for p in primes_or(a.p, vec![3, 5, 7, 11, 13]) {
        for r in range_or(a.r, 1..=3) {
            for m in range_or(a.m, 1..=6) {
                if p.checked_pow(r)
                    .and_then(|x| x.checked_mul(m))
                    .is_some_and(|x| x <= bound)
                {
                    out.push((m, p, r));
                }
            }
        }
    }
    out
}

pub fn run(a: &VerifyArgs, caps: &Caps) -> Result<Vec<CongruenceReport>> {
    validate(a, caps)?;
    let order = a.order.unwrap_or(100);
    let reports =
        match a.family {
            Family::Lucas => {
                let primes = primes_or(a.p, (2..=50).filter(|&p| arith::is_prime(p)).collect());
                let n_max = a.max.unwrap_or(200);
                collect(
                    primes
                        .into_iter()
                        .map(|p| verify_lucas_product(p, n_max, caps)),
                )?
            }
            Family::ClfSymmetry => collect(
                primes_or(a.p, odd_primes_in(3, a.max.unwrap_or(100)))
                    .into_iter()
                    .map(verify_clf_symmetry),
            )?,
            Family::SpecialValues => collect(
                primes_or(a.p, odd_primes_in(3, a.max.unwrap_or(100)))
                    .into_iter()
                    .map(verify_special_values),
            )?,
            Family::Central => collect(
                primes_or(a.p, odd_primes_in(3, a.max.unwrap_or(200)))
                    .into_iter()
                    .map(central_value),
            )?,
            Family::FranelSymmetry => collect(
                primes_or(a.p, odd_primes_in(3, a.max.unwrap_or(60)))
                    .into_iter()
                    .map(verify_franel_symmetry),
            )?,
            Family::AperySymmetry => collect(
                primes_or(a.p, odd_primes_in(3, a.max.unwrap_or(60)))
                    .into_iter()
                    .map(|p| {
                        verify_apery_symmetries(
                            p,
                            if p == 3 {
                                AperyFamily::A
                            } else {
                                AperyFamily::Both
                            },
                        )
                    }),
            )?,
            Family::Supercongruence => collect(
                supercongruence_grid(a)
                    .into_iter()
                    .map(|(m, p, r)| verify_supercongruence(m, &PrimePower::new(p, r)?, caps)),
            )?,
            Family::SupercongruenceGranville => collect(
                supercongruence_grid(a)
                    .into_iter()
                    .map(|(m, p, r)| granville_route_supercongruence(m, p, r, caps)),
            )?,
            Family::SupercongruenceSb => {
                caps.check_order(order)?;
                collect(primes_or(a.p, vec![3, 5, 7]).into_iter().map(|p| {
                    sb_route_supercongruence(a.m.unwrap_or(6), p, a.r.unwrap_or(3), order)
                }))?
            }
            Family::Granville => {
                let n_max = a.max.unwrap_or(60);
                let mut out = Vec::new();
                for p in primes_or(a.p, vec![3, 5, 7]) {
                    for q in range_or(a.q, 1..=3) {
                        out.push(verify_granville(n_max, p, q)?);
                    }
                }
                out
            }
            Family::Ljunggren => {
                let n_max = a.max.unwrap_or(20);
                let mut out = Vec::new();
                for p in primes_or(a.p, vec![5, 7]) {
                    for q in range_or(a.q, 1..=3) {
                        out.push(verify_ljunggren(n_max, p, q)?);
                    }
                }
                out
            }
            Family::LjunggrenSp => ljunggren_sp(a)?,
            Family::GValuation => {
                let n_max = a.max.unwrap_or(80);
                collect(
                    primes_or(a.p, vec![3, 5, 7])
                        .into_iter()
                        .map(|p| verify_g_valuation_bound(n_max, p)),
                )?
            }
            Family::GCongruence => {
                let j_max = a.max.unwrap_or(1000);
                let mut out = Vec::new();
                for p in primes_or(a.p, vec![3, 5, 7]) {
                    for r in range_or(a.r, 1..=2) {
                        for m in range_or(a.m, 1..=3) {
                            out.push(verify_g_congruence(m, p, r, j_max, caps)?);
                        }
                    }
                }
                out
            }
            Family::V5Conjecture => vec![v5_conjecture_scan(a.max.unwrap_or(3000), caps)?],
            Family::QseriesIdentities => {
                caps.check_order(order)?;
                vec![
                    verify_generating_identity(order)?,
                    verify_weight3_identity(order)?,
                    verify_clf_ode(order)?,
                    verify_picard_fuchs(order)?,
                ]
            }
            Family::Modppower => {
                let order = a.order.unwrap_or(64);
                caps.check_order(order)?;
                let k_max = u32::try_from(a.k.unwrap_or(2)).map_err(|_| domain("--k too large"))?;
                let mut out = vec![modppower_property_suite(
                    a.seed.unwrap_or(MODPPOWER_SEED),
                    50,
                    k_max,
                    order,
                )?];
                let t = NamedSeries::T.expand(order)?;
                for p in primes_or(a.p, vec![3, 5, 7]) {
                    out.push(verify_modppower_series(&t, "t", p, k_max, order)?);
                }
                out
            }
            Family::Fine => {
                caps.check_order(order)?;
                let mut out = vec![verify_e_equals_fine(order)?];
                for p in primes_or(a.p, vec![3, 5, 7]) {
                    for r in range_or(a.r, 1..=3) {
                        out.push(verify_fine_congruence(a.m.unwrap_or(6), p, r)?);
                    }
                }
                out
            }
            Family::All => return Err(domain("`all` is dispatched separately")),
        };
    Ok(reports)
}

/// Every `(m, k, p, q, r, s)` with `1 <= q <= s <= r <= 2` (or as given) and
/// `k p^s <= m p^r`.
fn ljunggren_sp(a: &VerifyArgs) -> Result<Vec<CongruenceReport>> {
    let mut out = Vec::new();
    for p in primes_or(a.p, vec![3, 5, 7]) {
        for r in range_or(a.r, 1..=2) {
            for s in range_or(a.s, 1..=r) {
                for q in range_or(a.q, 1..=s) {
                    if !(r >= s && s >= q) {
                        return Err(domain("ljunggren-sp needs r >= s >= q >= 1"));
                    }
                    for m in range_or(a.m, 1..=4) {
                        for k in range_or(a.k, 1..=4) {
                            if k * p.pow(s) <= m * p.pow(r) {
                                out.push(verify_ljunggren_sp(m, k, p, q, r, s)?);
                            }
                        }
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(domain("ljunggren-sp: no (m, k) with k p^s <= m p^r"));
    }
    Ok(out)
}

/// The full acceptance suite. Human output gives one line per criterion;
/// machine formats list every report.
pub fn all(out: &mut impl Write, global: &GlobalArgs) -> std::result::Result<bool, Failure> {
    let mut reports = Vec::new();
    let mut lines = Vec::new();
    for (id, _, _, _) in suite::CRITERIA {
        eprintln!("running criterion {id}");
        let outcome = suite::run(id)?;
        if !outcome.within_limit() {
            eprintln!("warning: criterion {id} exceeded its time budget");
        }
        lines.push(outcome.summary());
        reports.extend(outcome.reports);
    }
    match global.format {
        Format::Human => {
            for line in &lines {
                writeln!(out, "{line}").map_err(|e| Failure::Usage(e.to_string()))?;
            }
            for r in reports.iter().filter(|r| !r.passed()) {
                writeln!(out, "{r}").map_err(|e| Failure::Usage(e.to_string()))?;
            }
        }
        format => output::reports(out, &reports, format)?,
    }
    Ok(reports.iter().all(CongruenceReport::passed))
}
