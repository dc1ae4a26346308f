use std::io::Write;

use clap::ValueEnum;
use clf_core::arith;
use clf_core::qseries::NamedSeries;
use clf_core::{CongruenceReport, SequenceId};
use serde::Serialize;

use crate::{Failure, GlobalArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(format!("writing output: {e}"))
}

#[derive(Serialize)]
struct SeqRow {
    n: u64,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    vp: Option<u32>,
}

pub fn seq(
    out: &mut impl Write,
    id: SequenceId,
    max: u64,
    vp: Option<u64>,
    global: &GlobalArgs,
) -> Result<(), Failure> {
    global.caps().check_index(max)?;
    if let Some(p) = vp {
        arith::require_prime(p)?;
    }
    let values = id.values(max)?;
    let rows: Vec<SeqRow> = values
        .iter()
        .enumerate()
        .map(|(n, v)| {
            Ok(SeqRow {
                n: n as u64,
                value: v.to_string(),
                vp: vp.map(|p| arith::vp(v, p)).transpose()?,
            })
        })
        .collect::<Result<_, clf_core::Error>>()?;
    match global.format {
        Format::Human => {
            for r in &rows {
                match r.vp {
                    Some(v) => writeln!(out, "{} {} {v}", r.n, r.value),
                    None => writeln!(out, "{} {}", r.n, r.value),
                }
                .map_err(io)?;
            }
        }
        Format::Csv => {
            let header = if vp.is_some() {
                "n,value,vp"
            } else {
                "n,value"
            };
            writeln!(out, "{header}").map_err(io)?;
            for r in &rows {
                match r.vp {
                    Some(v) => writeln!(out, "{},{},{v}", r.n, r.value),
                    None => writeln!(out, "{},{}", r.n, r.value),
                }
                .map_err(io)?;
            }
        }
        Format::Json => json(out, &rows)?,
    }
    Ok(())
}

/// Coefficients from the first nonzero one through `q^order`.
pub fn qexpand(
    out: &mut impl Write,
    name: NamedSeries,
    order: usize,
    global: &GlobalArgs,
) -> Result<(), Failure> {
    global.caps().check_order(order + 1)?;
    let series = name.expand(order + 1)?;
    let start = series.lower_valuation().unwrap_or(0).min(order as i64);
    let coeffs = series.coefficients(start, order as i64 + 1)?;
    match global.format {
        Format::Human => {
            for c in &coeffs {
                writeln!(out, "{c}").map_err(io)?;
            }
        }
        Format::Csv => {
            writeln!(out, "exponent,numerator,denominator").map_err(io)?;
            for (k, c) in coeffs.iter().enumerate() {
                writeln!(out, "{},{},{}", start + k as i64, c.numer(), c.denom()).map_err(io)?;
            }
        }
        Format::Json => {
            let pairs: Vec<[String; 2]> = coeffs
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect();
            json(out, &pairs)?;
        }
    }
    Ok(())
}

pub fn reports(
    out: &mut impl Write,
    reports: &[CongruenceReport],
    format: Format,
) -> Result<(), Failure> {
    match format {
        Format::Human => {
            for r in reports {
                writeln!(out, "{r}").map_err(io)?;
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let checked: u64 = reports.iter().map(|r| r.checked).sum();
            writeln!(
                out,
                "{} reports, {checked} checks, {failed} failed",
                reports.len()
            )
            .map_err(io)?;
        }
        Format::Csv => {
            writeln!(out, "{}", CongruenceReport::CSV_HEADER).map_err(io)?;
            for r in reports {
                writeln!(out, "{}", r.csv_row()).map_err(io)?;
            }
        }
        Format::Json => json(out, reports)?,
    }
    Ok(())
}

pub fn json<T: Serialize + ?Sized>(out: &mut impl Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Check(e.to_string()))?;
    writeln!(out, "{text}").map_err(io)
}
