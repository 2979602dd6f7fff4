use std::fmt::Write as _;

use hbch::hermitian::{BoundReport, BoundSource};
use hbch::quantum::{PipelineReport, QuantumParams};
use hbch::CosetListing;
use serde::{Deserialize, Serialize};

use crate::harness::Verdict;
use crate::Format;

pub const BOUND_HEADER: &str = "q s n1 case L_closed L_brute classic_bound witness_x witness_y witness_k";
const PARAMS_HEADER: &str = "q,n,k,d_designed,construction,s,n1,lambda,cosets,zero,lengthened";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructOutput {
    pub report: PipelineReport,
    pub lengthened: Vec<QuantumParams>,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("result types serialize");
    s.push('\n');
    s
}

fn join(v: &[u32], sep: &str) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

pub fn cosets(listing: &CosetListing, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return json(listing),
        Format::Csv => {
            out.push_str("representative,size,elements\n");
            for c in &listing.cosets {
                let _ = writeln!(out, "{},{},{}", c[0], c.len(), join(c, " "));
            }
        }
        Format::Text => {
            let _ = writeln!(
                out,
                "modulus={} q={} multiplier={} cosets={}",
                listing.modulus,
                listing.q,
                listing.multiplier,
                listing.cosets.len()
            );
            for c in &listing.cosets {
                let _ = writeln!(out, "{}: {{{}}}", c[0], join(c, ", "));
            }
        }
    }
    out
}

pub fn bound(report: &BoundReport, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let mut out = BOUND_HEADER.replace(' ', ",");
            out.push('\n');
            for row in report.rows() {
                out.push_str(&row.replace(' ', ","));
                out.push('\n');
            }
            out
        }
        Format::Text => {
            let mut out = format!("{BOUND_HEADER}\n");
            for row in report.rows() {
                out.push_str(&row);
                out.push('\n');
            }
            if report.caveat_excluded {
                out.push_str("note: excluded subcase q=2, a=s-2 has no closed form; L_brute only\n");
            }
            if !report.consistent() {
                out.push_str("note: closed form disagrees with the brute-force value\n");
            }
            out
        }
    }
}

fn csv_row(p: &QuantumParams) -> String {
    let v = &p.provenance;
    let opt = |x: Option<u64>| x.map_or(String::new(), |x| x.to_string());
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        p.q,
        p.n,
        p.k,
        p.d_designed,
        v.construction,
        opt(v.s.map(u64::from)),
        opt(v.n1),
        opt(v.lambda),
        join(&v.cosets, ";"),
        v.include_zero,
        p.pure_chain
    )
}

pub fn records(found: &[QuantumParams], format: Format) -> String {
    match format {
        Format::Json => json(&found),
        Format::Csv => {
            let mut out = format!("{PARAMS_HEADER}\n");
            for p in found {
                out.push_str(&csv_row(p));
                out.push('\n');
            }
            out
        }
        Format::Text => found.iter().map(|p| p.record() + "\n").collect(),
    }
}

pub fn construct(report: &PipelineReport, lengthened: &[QuantumParams], format: Format) -> String {
    match format {
        Format::Json => json(&ConstructOutput {
            report: report.clone(),
            lengthened: lengthened.to_vec(),
        }),
        Format::Csv => {
            let rows: Vec<QuantumParams> = std::iter::once(report.params.clone()).chain(lengthened.iter().cloned()).collect();
            records(&rows, Format::Csv)
        }
        Format::Text => {
            let mut out = format!("{}\n", report.params);
            let source = match &report.bound.source {
                BoundSource::ClosedForm(c) => format!("closed form, case {}", c.case),
                BoundSource::BruteForce => "brute force".to_string(),
            };
            let d = &report.delta;
            let r = &report.reduced;
            let _ = writeln!(out, "construction: {}", report.construction);
            let _ = writeln!(
                out,
                "defining set: modulus={} cosets=[{}] zero={} size={}",
                d.modulus,
                join(&d.representatives, ","),
                d.includes_zero,
                d.size
            );
            let _ = writeln!(
                out,
                "reduced: modulus={} cosets=[{}] zero={}",
                r.modulus,
                join(&r.representatives, ","),
                r.includes_zero
            );
            let _ = writeln!(out, "max reduced representative: {}", report.a_prime);
            let _ = writeln!(out, "L: {} ({source})", report.bound.l);
            let _ = writeln!(out, "next representative: {}", report.next_representative);
            let _ = writeln!(out, "rank: {}", report.rank);
            let _ = writeln!(out, "k lower bound: {}", report.k_lower_bound);
            let _ = writeln!(out, "gram: {}", if report.gram_zero { "zero" } else { "nonzero" });
            let _ = writeln!(out, "record: {}", report.params.record());
            for p in lengthened {
                let _ = writeln!(out, "{p}");
            }
            out
        }
    }
}

pub fn verdicts(verdicts: &[Verdict], format: Format) -> String {
    match format {
        Format::Json => json(&verdicts),
        Format::Csv => {
            let mut out = String::from("claim,pass,detail\n");
            for v in verdicts {
                let _ = writeln!(out, "\"{}\",{},\"{}\"", v.claim, v.pass, v.detail.replace('"', "'"));
            }
            out
        }
        Format::Text => verdicts
            .iter()
            .map(|v| {
                if v.pass {
                    format!("PASS {}\n", v.claim)
                } else {
                    format!("FAIL {}: {}\n", v.claim, v.detail)
                }
            })
            .collect(),
    }
}
