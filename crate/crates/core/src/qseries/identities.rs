//! Coefficientwise checks of the series identities linking `P_n`, `t`, `f`
//! and `E`, and of the two differential equations annihilating `Σ P_n x^n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::eta::{hauptmodul, weight_one_form, weight_three_form, NamedSeries};
use super::QSeries;
use crate::arith;
use crate::error::{Error, Result};
use crate::report::{CongruenceReport, Counterexample, ReportBuilder};
use crate::sequences::SequenceId;

/// Fine's divisor sum `Σ_{d|n, d≡1 (4)} d^2 - Σ_{d|n, d≡3 (4)} d^2`.
pub fn fine_c(n: u64) -> Result<i128> {
    if n == 0 {
        return Err(Error::Domain("fine_c is defined for n >= 1".into()));
    }
    let weight = |d: u64| -> i128 {
        let sq = (d as i128) * (d as i128);
        match d % 4 {
            1 => sq,
            3 => -sq,
            _ => 0,
        }
    };
    let mut sum = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            sum += weight(d);
            if d != n / d {
                sum += weight(n / d);
            }
        }
        d += 1;
    }
    Ok(sum)
}

fn rat_cex(params: String, lhs: &BigRational, rhs: &BigRational) -> Counterexample {
    Counterexample {
        params,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        modulus: "exact".into(),
    }
}

/// Compares two series coefficient by coefficient below `order`, failing if
/// either is not known that far.
pub(crate) fn compare_series(
    report: &mut ReportBuilder,
    label: &str,
    lhs: &QSeries,
    rhs: &QSeries,
    from: i64,
    order: i64,
) -> Result<()> {
    for side in [lhs, rhs] {
        if side.order() < order {
            return Err(Error::Series(format!(
                "{label}: operand known only to O(q^{}), {order} needed",
                side.order()
            )));
        }
    }
    for k in from..order {
        let (a, b) = (
            lhs.coeff(k).expect("checked"),
            rhs.coeff(k).expect("checked"),
        );
        report.holds(a == b, || rat_cex(format!("{label} q^{k}"), &a, &b));
    }
    Ok(())
}

fn require_order(order: usize, min: usize) -> Result<()> {
    if order < min {
        return Err(Error::Domain(format!(
            "series order must be >= {min}, got {order}"
        )));
    }
    Ok(())
}

/// `1 - 4 Σ_{1<=n<order} fine_c(n) q^n`.
pub fn fine_series(order: usize) -> Result<QSeries> {
    let mut coeffs = vec![BigInt::one()];
    for n in 1..order as u64 {
        coeffs.push(BigInt::from(-4 * fine_c(n)?));
    }
    Ok(QSeries::from_integers(0, &coeffs, order as i64))
}

/// The eta-quotient expansion of `E(τ)` against Fine's formula.
pub fn verify_e_equals_fine(order: usize) -> Result<CongruenceReport> {
    require_order(order, 2)?;
    let e = weight_three_form().expand(order)?;
    let mut report = ReportBuilder::new("fine", format!("E=1-4Σc_n q^n order={order}"), "exact");
    compare_series(&mut report, "E", &e, &fine_series(order)?, 0, order as i64)?;
    report.finish()
}

/// `c_{mp^r} ≡ c_{mp^{r-1}} (mod p^r)` for `1 <= m <= m_max`.
pub fn verify_fine_congruence(m_max: u64, p: u64, r: u32) -> Result<CongruenceReport> {
    arith::require_odd_prime(p)?;
    if r == 0 {
        return Err(Error::Domain("r must be positive".into()));
    }
    let modulus = arith::big_pow(p, r);
    let mut report = ReportBuilder::new(
        "fine",
        format!("m<={m_max} p={p} r={r}"),
        modulus.to_string(),
    );
    let lo_scale = p.pow(r - 1);
    for m in 1..=m_max {
        let lo = m * lo_scale;
        let hi = lo * p;
        report.congruent(
            || format!("m={m}"),
            &BigInt::from(fine_c(hi)?),
            &BigInt::from(fine_c(lo)?),
            &modulus,
        );
    }
    report.finish()
}

/// `Σ_{n<order} P_n x^n`, exact below `order`.
pub fn clf_generating_series(order: usize) -> Result<QSeries> {
    let values = SequenceId::Clf.values(order.saturating_sub(1) as u64)?;
    Ok(QSeries::from_integers(0, &values[..order], order as i64))
}

/// `Σ P_n t(τ)^n = f(τ)` to `O(q^order)`.
pub fn verify_generating_identity(order: usize) -> Result<CongruenceReport> {
    require_order(order, 2)?;
    let t = hauptmodul().expand(order)?;
    let composed = clf_generating_series(order)?.compose(&t)?;
    let f = weight_one_form().expand(order)?;
    let mut report = ReportBuilder::new(
        "qseries-identities",
        format!("ΣP_n t^n=f order={order}"),
        "exact",
    );
    compare_series(&mut report, "ΣP_n t^n", &composed, &f, 0, order as i64)?;
    report.holds(composed.is_integral(), || Counterexample {
        params: "integrality of ΣP_n t^n".into(),
        lhs: "non-integral".into(),
        rhs: "integral".into(),
        modulus: "exact".into(),
    });
    report.finish()
}

/// `f · (q dt/dq) / t` to `O(q^order)`.
pub fn weight_three_product(order: usize) -> Result<QSeries> {
    // t has valuation 1, so dividing by it costs one order of precision
    let t = hauptmodul().expand(order + 1)?;
    let f = weight_one_form().expand(order)?;
    let log_derivative = t.q_derivative().div_series(&t)?;
    Ok((&f * &log_derivative).truncate(order as i64))
}

/// `f · (q dt/dq) / t = E(2τ)` to `O(q^order)`, plus vanishing of the odd
/// coefficients of the left side.
pub fn verify_weight3_identity(order: usize) -> Result<CongruenceReport> {
    require_order(order, 2)?;
    let lhs = weight_three_product(order)?;
    let rhs = NamedSeries::E2.expand(order)?;
    let mut report = ReportBuilder::new(
        "qseries-identities",
        format!("f·θt/t=E(2τ) order={order}"),
        "exact",
    );
    compare_series(&mut report, "f·θt/t", &lhs, &rhs, 0, order as i64)?;
    for k in (1..order as i64).step_by(2) {
        let c = lhs.coeff(k).expect("within order");
        report.holds(c.is_zero(), || {
            rat_cex(format!("odd q^{k}"), &c, &BigRational::zero())
        });
    }
    report.finish()
}

fn poly(coeffs: &[i64], order: i64) -> QSeries {
    QSeries::from_i64(0, coeffs, order)
}

/// `x(1-16x)(1-8x) y'' + (384x^2 - 48x + 1) y' - 8(1-16x) y`.
pub fn clf_operator(y: &QSeries) -> QSeries {
    let order = y.order() + 4;
    let y1 = y.derivative();
    let y2 = y1.derivative();
    let a = poly(&[0, 1, -24, 128], order);
    let b = poly(&[1, -48, 384], order);
    let c = poly(&[-8, 128], order);
    let sum = &(&a * &y2) + &(&b * &y1);
    &sum + &(&c * y)
}

/// `t(4t-1)(8t-1) F'' + (96t^2 - 24t + 1) F' + 4(8t-1) F`.
pub fn picard_fuchs_operator(f: &QSeries) -> QSeries {
    let order = f.order() + 4;
    let f1 = f.derivative();
    let f2 = f1.derivative();
    let a = poly(&[0, 1, -12, 32], order);
    let b = poly(&[1, -24, 96], order);
    let c = poly(&[-4, 32], order);
    let sum = &(&a * &f2) + &(&b * &f1);
    &sum + &(&c * f)
}

fn check_annihilated(
    report: &mut ReportBuilder,
    label: &str,
    out: &QSeries,
    order: usize,
) -> Result<()> {
    let need = order as i64 - 2;
    if out.order() < need {
        return Err(Error::Series(format!(
            "{label}: operator output known only to O(q^{}), {need} needed",
            out.order()
        )));
    }
    for k in 0..need {
        let c = out.coeff(k).expect("checked");
        report.holds(c.is_zero(), || {
            rat_cex(format!("{label} x^{k}"), &c, &BigRational::zero())
        });
    }
    Ok(())
}

/// The second-order operator annihilates `Σ P_n x^n` through `x^{order-3}`.
pub fn verify_clf_ode(order: usize) -> Result<CongruenceReport> {
    require_order(order, 3)?;
    let y = clf_generating_series(order)?;
    let mut report = ReportBuilder::new(
        "qseries-identities",
        format!("clf ODE order={order}"),
        "exact",
    );
    check_annihilated(&mut report, "L[ΣP_n x^n]", &clf_operator(&y), order)?;
    report.finish()
}

/// `y(t/2)` for a power series `y`.
fn halve_argument(y: &QSeries) -> QSeries {
    let half = BigRational::new(1.into(), 2.into());
    let coeffs = (0..y.order())
        .map(|k| y.coeff(k).expect("below order") * num_traits::pow(half.clone(), k as usize))
        .collect();
    QSeries::new(0, coeffs, y.order())
}

/// The Picard-Fuchs operator annihilates `F(t) = Σ P_n (t/2)^n`; and on an
/// arbitrary test series it equals half the `x`-operator under `t = 2x`.
pub fn verify_picard_fuchs(order: usize) -> Result<CongruenceReport> {
    require_order(order, 3)?;
    let y = clf_generating_series(order)?;
    let mut report = ReportBuilder::new(
        "qseries-identities",
        format!("Picard-Fuchs order={order}"),
        "exact",
    );
    check_annihilated(
        &mut report,
        "PF[ΣP_n (t/2)^n]",
        &picard_fuchs_operator(&halve_argument(&y)),
        order,
    )?;

    // (n + 1)^2 + 3 is no solution; the operators must still agree
    let probe: Vec<i64> = (0..order as i64).map(|n| (n + 1) * (n + 1) + 3).collect();
    let probe = poly(&probe, order as i64);
    let pf = picard_fuchs_operator(&halve_argument(&probe));
    let lemma =
        halve_argument(&clf_operator(&probe)).scalar_mul(&BigRational::new(1.into(), 2.into()));
    compare_series(
        &mut report,
        "PF vs L under t=2x",
        &pf,
        &lemma,
        0,
        order as i64 - 2,
    )?;
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fine_values() {
        assert_eq!(fine_c(1).unwrap(), 1);
        assert_eq!(fine_c(3).unwrap(), -8);
        assert_eq!(fine_c(5).unwrap(), 26);
        assert_eq!(fine_c(9).unwrap(), 1 - 9 + 81);
        assert!(fine_c(0).is_err());
    }

    #[test]
    fn fine_congruence_examples() {
        assert!(verify_fine_congruence(1, 3, 1).unwrap().passed());
        assert_eq!(fine_c(5).unwrap() - fine_c(1).unwrap(), 25);
        assert!(verify_fine_congruence(30, 3, 2).unwrap().passed());
        assert!(verify_fine_congruence(30, 5, 2).unwrap().passed());
    }

    #[test]
    fn e_matches_fine() {
        let r = verify_e_equals_fine(10).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 10);
        let e = weight_three_form().expand(2).unwrap();
        assert_eq!(e.coeff(1).unwrap(), BigRational::from_integer((-4).into()));
    }

    #[test]
    fn generating_identity_low_order() {
        assert!(verify_generating_identity(20).unwrap().passed());
        let t = hauptmodul().expand(3).unwrap();
        let composed = clf_generating_series(3).unwrap().compose(&t).unwrap();
        assert_eq!(composed.coeff(0).unwrap(), BigRational::one());
        assert_eq!(
            composed.coeff(1).unwrap(),
            BigRational::from_integer(4.into())
        );
    }

    #[test]
    fn weight_three_low_order() {
        assert!(verify_weight3_identity(20).unwrap().passed());
        let lhs = weight_three_product(4).unwrap();
        assert_eq!(lhs.coeff(0).unwrap(), BigRational::one());
    }

    #[test]
    fn operators() {
        assert!(verify_clf_ode(30).unwrap().passed());
        assert!(verify_picard_fuchs(30).unwrap().passed());
        // x^0 coefficient of the operator output is P_1 - 8 P_0
        let y = clf_generating_series(5).unwrap();
        assert_eq!(clf_operator(&y).coeff(0).unwrap(), BigRational::zero());
        let wrong = QSeries::from_i64(0, &[1, 7, 80, 896], 4);
        assert_eq!(
            clf_operator(&wrong).coeff(0).unwrap(),
            BigRational::from_integer((-1).into())
        );
        assert!(verify_clf_ode(2).is_err());
    }
}
