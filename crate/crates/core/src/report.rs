//! Structure surveys and the text formats written by the command line tool.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::decoder::{DecodeOutcome, DecoderConfig};
use crate::exec::Execution;
use crate::graph::TannerGraph;
use crate::sim::{FerPoint, VerifyReport};
use crate::trapping::{
    classify_subset, critical_number, find_53_structures_with, find_80_codewords_with,
    find_three_three, five_three_is_exact, SubgraphReport, TrapError, CRITICAL_NUMBER_MAX_VARS,
};

pub const FER_CSV_HEADER: &str = "alpha,trials,failures,fer,ci_low,ci_high";
pub const STRUCTURES_CSV_HEADER: &str = "type,support,V,C,cond_a,cond_b,critical_number";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Search-tree expansions allowed per root in the codeword search.
    pub codeword_budget: u64,
    pub critical_numbers: bool,
    pub decoder: DecoderConfig,
    pub exec: Execution,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            codeword_budget: 2_000_000,
            critical_numbers: false,
            decoder: DecoderConfig::default(),
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureRow {
    /// `(V,C)` label of the search that found it.
    pub kind: String,
    pub report: SubgraphReport,
    pub critical_number: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub n: usize,
    pub m: usize,
    pub girth: Option<usize>,
    pub check_degree_histogram: Vec<(usize, usize)>,
    pub three_three: usize,
    pub five_three: usize,
    pub five_three_exact: bool,
    pub weight8_codewords: usize,
    pub lighter_codewords: usize,
    pub codeword_search_exhaustive: bool,
    pub rows: Vec<StructureRow>,
}

impl Analysis {
    /// Girth at least 8, no (5,3) structures, no codewords of weight 8 or
    /// less, and the codeword search was not cut short.
    pub fn passes_gates(&self) -> bool {
        self.girth.is_none_or(|g| g >= 8)
            && self.five_three == 0
            && self.weight8_codewords == 0
            && self.lighter_codewords == 0
            && self.codeword_search_exhaustive
    }
}

/// Runs every structure search on `g`.
pub fn analyze(g: &TannerGraph, opts: &AnalysisOptions) -> Result<Analysis, TrapError> {
    let mut rows = Vec::new();
    let mut push = |kind: &str, vars: &[usize]| -> Result<(), TrapError> {
        let report = classify_subset(g, vars)?;
        rows.push(StructureRow {
            kind: kind.to_string(),
            report,
            critical_number: None,
        });
        Ok(())
    };
    let threes = find_three_three(g);
    for t in &threes {
        push("(3,3)", t)?;
    }
    let fives = find_53_structures_with(g, None, opts.exec)?;
    for r in &fives {
        push("(5,3)", &r.vars)?;
    }
    let words = find_80_codewords_with(g, opts.codeword_budget, opts.exec);
    for w in &words.lighter {
        push(&format!("({},0)", w.len()), w)?;
    }
    for w in &words.weight8 {
        push("(8,0)", w)?;
    }
    if opts.critical_numbers {
        for row in &mut rows {
            if row.report.vars.len() <= CRITICAL_NUMBER_MAX_VARS {
                row.critical_number = critical_number(g, &row.report.vars, &opts.decoder)?.value;
            }
        }
    }
    Ok(Analysis {
        n: g.n(),
        m: g.m(),
        girth: g.girth(),
        check_degree_histogram: g.check_degree_histogram(),
        three_three: threes.len(),
        five_three: fives.len(),
        five_three_exact: five_three_is_exact(g),
        weight8_codewords: words.weight8.len(),
        lighter_codewords: words.lighter.len(),
        codeword_search_exhaustive: words.exhaustive,
        rows,
    })
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn structures_csv(a: &Analysis) -> String {
    let mut out = String::from(STRUCTURES_CSV_HEADER);
    out.push('\n');
    for row in &a.rows {
        let r = &row.report;
        let cn = row
            .critical_number
            .map(|c| c.to_string())
            .unwrap_or_default();
        writeln!(
            out,
            "\"{}\",{},{},{},{},{},{}",
            row.kind,
            join(&r.vars),
            r.vars.len(),
            r.odd_checks.len(),
            r.cond_a,
            r.cond_b,
            cn
        )
        .unwrap();
    }
    out
}

pub fn fer_csv(points: &[FerPoint]) -> String {
    let mut out = String::from(FER_CSV_HEADER);
    out.push('\n');
    for p in points {
        writeln!(
            out,
            "{},{},{},{:e},{:e},{:e}",
            p.alpha, p.trials, p.failures, p.fer, p.ci_low, p.ci_high
        )
        .unwrap();
    }
    out
}

/// Parses the output of [`fer_csv`].
pub fn parse_fer_csv(text: &str) -> Result<Vec<FerPoint>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(FER_CSV_HEADER) {
        return Err("missing FER header".into());
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 6 {
                return Err(format!("line {}: expected 6 fields", i + 2));
            }
            let bad = |e: &dyn std::fmt::Display| format!("line {}: {e}", i + 2);
            Ok(FerPoint {
                alpha: f[0].parse().map_err(|e| bad(&e))?,
                trials: f[1].parse().map_err(|e| bad(&e))?,
                failures: f[2].parse().map_err(|e| bad(&e))?,
                fer: f[3].parse().map_err(|e| bad(&e))?,
                ci_low: f[4].parse().map_err(|e| bad(&e))?,
                ci_high: f[5].parse().map_err(|e| bad(&e))?,
            })
        })
        .collect()
}

pub fn verify_json(r: &VerifyReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

pub fn outcome_text(o: &DecodeOutcome) -> String {
    let status = match o.status {
        crate::decoder::DecodeStatus::Converged => "converged",
        crate::decoder::DecodeStatus::FailedMaxIter => "failed_max_iter",
        crate::decoder::DecodeStatus::FixedPoint => "fixed_point",
    };
    let word: String = o.output.iter().map(|b| char::from(b'0' + b)).collect();
    format!(
        "status {status}\niterations {}\noutput {word}\nresidual_support {}\n",
        o.iterations_used, o.residual_error_support
    )
}
