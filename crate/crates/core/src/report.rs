use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Whether a failure is a bug or a finding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// A proven statement; a counterexample signals a defect in this crate.
    Theorem,
    /// An empirical observation; a counterexample is a result.
    Conjecture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// First violating instance of a checked congruence. Residues are decimal
/// strings so arbitrarily large values survive JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub params: String,
    pub lhs: String,
    pub rhs: String,
    pub modulus: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub family: String,
    pub kind: CheckKind,
    pub parameters: String,
    pub modulus: String,
    pub checked: u64,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Builds a report from independently collected parts, enforcing
    /// `status = fail <=> counterexample present`.
    pub fn from_parts(
        family: impl Into<String>,
        kind: CheckKind,
        parameters: impl Into<String>,
        modulus: impl Into<String>,
        checked: u64,
        counterexample: Option<Counterexample>,
    ) -> Self {
        let status = if counterexample.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        CongruenceReport {
            family: family.into(),
            kind,
            parameters: parameters.into(),
            modulus: modulus.into(),
            checked,
            status,
            counterexample,
        }
    }

    /// Merges reports for one family into a single summary: counts add up,
    /// the first counterexample wins.
    pub fn combine(
        family: impl Into<String>,
        kind: CheckKind,
        parameters: impl Into<String>,
        modulus: impl Into<String>,
        parts: &[CongruenceReport],
    ) -> Self {
        let checked = parts.iter().map(|r| r.checked).sum();
        let counterexample = parts.iter().find_map(|r| {
            r.counterexample.as_ref().map(|c| Counterexample {
                params: format!("{} {}", r.parameters, c.params),
                ..c.clone()
            })
        });
        Self::from_parts(family, kind, parameters, modulus, checked, counterexample)
    }

    /// The CSV row `family,param_tuple,modulus,status,counterexample_lhs,counterexample_rhs`.
    pub fn csv_row(&self) -> String {
        let (params, modulus, lhs, rhs) = match &self.counterexample {
            Some(c) => (
                format!("{} {}", self.parameters, c.params),
                c.modulus.clone(),
                c.lhs.clone(),
                c.rhs.clone(),
            ),
            None => (
                self.parameters.clone(),
                self.modulus.clone(),
                String::new(),
                String::new(),
            ),
        };
        [
            csv_field(&self.family),
            csv_field(&params),
            csv_field(&modulus),
            csv_field(match self.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
            }),
            csv_field(&lhs),
            csv_field(&rhs),
        ]
        .join(",")
    }

    pub const CSV_HEADER: &'static str =
        "family,param_tuple,modulus,status,counterexample_lhs,counterexample_rhs";
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl fmt::Display for CongruenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (self.status, self.kind) {
            (Status::Pass, _) => "PASS",
            (Status::Fail, CheckKind::Theorem) => "FAIL",
            (Status::Fail, CheckKind::Conjecture) => "CONJECTURE REFUTED",
        };
        write!(
            f,
            "[{tag}] {} ({}) mod {}: {} checked",
            self.family, self.parameters, self.modulus, self.checked
        )?;
        if let Some(c) = &self.counterexample {
            write!(
                f,
                "; counterexample at {}: {} != {} (mod {})",
                c.params, c.lhs, c.rhs, c.modulus
            )?;
        }
        Ok(())
    }
}

/// Accumulates individual congruence checks into a [`CongruenceReport`],
/// keeping only the first counterexample.
#[derive(Debug)]
pub struct ReportBuilder {
    family: String,
    kind: CheckKind,
    parameters: String,
    modulus: String,
    checked: u64,
    counterexample: Option<Counterexample>,
}

impl ReportBuilder {
    pub fn new(
        family: impl Into<String>,
        parameters: impl Into<String>,
        modulus: impl Into<String>,
    ) -> Self {
        ReportBuilder {
            family: family.into(),
            kind: CheckKind::Theorem,
            parameters: parameters.into(),
            modulus: modulus.into(),
            checked: 0,
            counterexample: None,
        }
    }

    pub fn conjecture(mut self) -> Self {
        self.kind = CheckKind::Conjecture;
        self
    }

    /// Checks `lhs ≡ rhs (mod modulus)`.
    pub fn congruent(
        &mut self,
        params: impl FnOnce() -> String,
        lhs: &BigInt,
        rhs: &BigInt,
        modulus: &BigInt,
    ) -> bool {
        let l = arith::residue(lhs, modulus);
        let r = arith::residue(rhs, modulus);
        let ok = l == r;
        self.record(ok, || Counterexample {
            params: params(),
            lhs: l.to_string(),
            rhs: r.to_string(),
            modulus: modulus.to_string(),
        });
        ok
    }

    /// Checks exact equality of two values that are not residues, such as
    /// valuations or counts.
    pub fn equal<T: PartialEq + ToString>(
        &mut self,
        params: impl FnOnce() -> String,
        lhs: T,
        rhs: T,
    ) -> bool {
        let ok = lhs == rhs;
        self.record(ok, || Counterexample {
            params: params(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            modulus: "exact".into(),
        });
        ok
    }

    /// Records a predicate; on failure the counterexample carries the given
    /// descriptions of both sides.
    pub fn holds(&mut self, ok: bool, cex: impl FnOnce() -> Counterexample) -> bool {
        self.record(ok, cex);
        ok
    }

    fn record(&mut self, ok: bool, cex: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(cex());
        }
    }

    pub fn checked(&self) -> u64 {
        self.checked
    }

    pub fn finish(self) -> Result<CongruenceReport> {
        if self.checked == 0 {
            return Err(Error::Domain(format!(
                "{} ({}) has nothing to check",
                self.family, self.parameters
            )));
        }
        Ok(CongruenceReport::from_parts(
            self.family,
            self.kind,
            self.parameters,
            self.modulus,
            self.checked,
            self.counterexample,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_tracks_counterexample() {
        let mut b = ReportBuilder::new("demo", "p=3", "3");
        let three = BigInt::from(3);
        assert!(b.congruent(|| "n=0".into(), &BigInt::from(4), &BigInt::from(1), &three));
        assert!(!b.congruent(|| "n=1".into(), &BigInt::from(5), &BigInt::from(1), &three));
        assert!(!b.congruent(|| "n=2".into(), &BigInt::from(6), &BigInt::from(1), &three));
        let r = b.finish().unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.checked, 3);
        let c = r.counterexample.unwrap();
        assert_eq!(
            (c.params.as_str(), c.lhs.as_str(), c.rhs.as_str()),
            ("n=1", "2", "1")
        );
    }

    #[test]
    fn empty_run_is_an_error() {
        assert!(ReportBuilder::new("demo", "", "1").finish().is_err());
    }

    #[test]
    fn csv_quotes_commas() {
        let r = CongruenceReport::from_parts("f", CheckKind::Theorem, "m=1, p=3", "3", 1, None);
        assert_eq!(r.csv_row(), "f,\"m=1, p=3\",3,pass,,");
    }

    #[test]
    fn combine_keeps_first_failure() {
        let ok = CongruenceReport::from_parts("a", CheckKind::Theorem, "p=3", "3", 2, None);
        let bad = CongruenceReport::from_parts(
            "a",
            CheckKind::Theorem,
            "p=5",
            "5",
            4,
            Some(Counterexample {
                params: "n=2".into(),
                lhs: "1".into(),
                rhs: "0".into(),
                modulus: "5".into(),
            }),
        );
        let all = CongruenceReport::combine("a", CheckKind::Theorem, "p<7", "p", &[ok, bad]);
        assert_eq!(all.checked, 6);
        assert_eq!(all.counterexample.unwrap().params, "p=5 n=2");
    }
}
