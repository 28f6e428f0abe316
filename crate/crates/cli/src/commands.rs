use std::fmt::Write as _;

use npseq::diffset::{classify_pdpds_detailed, group_ring_residual, GroupSubset, PdpdsParams};
use npseq::search::{self, SearchConfig, SearchFilter, SearchMode, SearchReport};
use npseq::theory::{bound_table_csv, generate_bound_table, nonexistence_verdict};
use npseq::{AlmostParySequence, DifferenceMultiset, SequenceReport};
use serde_json::json;

use crate::output::{check_word, envelope, opt, to_value, CmdResult, Failure, Outcome};
use crate::{Format, SearchArgs};

pub fn analyze(p: u32, text: &str, format: Format) -> CmdResult {
    let seq = AlmostParySequence::parse(p, text)?;
    let report = SequenceReport::of(&seq);
    let checks = report.checks();
    let stdout = match format {
        Format::Json => envelope(json!({ "p": p, "seq": text }), to_value(&report), &checks),
        Format::Csv => {
            let mut out = String::from("t,value\n");
            for (i, v) in report.profile.values.iter().enumerate() {
                let _ = writeln!(out, "{},\"{}\"", i + 1, v);
            }
            out
        }
        Format::Text => analyze_text(&report, &checks),
    };
    Ok(Outcome::new(stdout, true))
}

fn analyze_text(r: &SequenceReport, checks: &[(&str, Option<bool>)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "sequence  {}", r.sequence);
    let _ = writeln!(out, "p = {}, N = {}, n = {}, s = {}", r.p, r.period, r.nonzero, r.zeros);
    let values: Vec<String> = r.profile.values.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "C(t), t = 1..N-1:  {}", values.join(" "));
    let _ = writeln!(out, "ell       {}", r.profile.ell);
    let _ = writeln!(out, "NPS type  {}", opt(r.nps));
    let two = r.two_valued_set.as_ref().map(|s| format!("{s:?}"));
    let _ = writeln!(out, "values    {}", opt(two));
    if let Some(e) = &r.ell_bounds {
        let _ = writeln!(out, "ell range [{}, {}]", e.lower, e.upper);
    }
    if let Some(pd) = &r.pdpds {
        let _ = writeln!(out, "rotated   {}", pd.rotated);
        let _ = writeln!(out, "R_a       {}", pd.set);
        match (&pd.params, &pd.violation) {
            (Some(params), _) => {
                let _ = writeln!(out, "PDPDS     {params}");
            }
            (None, Some(v)) => {
                let _ = writeln!(out, "PDPDS     none ({v})");
            }
            (None, None) => {}
        }
        let _ = writeln!(out, "expected  {}", opt(pd.expected));
    }
    if let Some(d) = &r.dpds {
        let _ = writeln!(out, "rotated   {}", d.rotated);
        let _ = writeln!(out, "R_a       {}", d.set);
        match (&d.params, &d.violation) {
            (Some(params), _) => {
                let _ = writeln!(
                    out,
                    "DPDS      ({},{},{},{},{},{})",
                    params.n, params.m, params.k, params.lambda1, params.lambda2, params.mu
                );
            }
            (None, Some(v)) => {
                let _ = writeln!(out, "DPDS      none ({v})");
            }
            (None, None) => {}
        }
    }
    write_checks(&mut out, checks);
    out
}

fn write_checks(out: &mut String, checks: &[(&str, Option<bool>)]) {
    if checks.is_empty() {
        return;
    }
    let _ = writeln!(out, "checks");
    for (name, c) in checks {
        let _ = writeln!(out, "  {name:<30} {}", check_word(*c));
    }
}

pub fn verify_pdpds(order_h: usize, p: u32, set_text: &str, params: Option<&str>, format: Format) -> CmdResult {
    npseq::cyclotomic::check_prime(p)?;
    if order_h < 3 {
        return Err(Failure::input("N must be at least 3"));
    }
    let set = GroupSubset::parse(order_h, p, set_text)?;
    let params = params.map(PdpdsParams::parse).transpose()?;
    if let Some(pr) = params {
        if pr.n != order_h as i64 || pr.m != p as i64 {
            return Err(Failure::input(format!("parameters {pr} do not match N = {order_h}, p = {p}")));
        }
    }
    let classified = classify_pdpds_detailed(&set);
    let residual = params.map(|pr| group_ring_residual(&set, &pr));
    let ok = match &residual {
        Some(grid) => grid.is_zero(),
        None => classified.is_ok(),
    };
    let (found, violation) = match &classified {
        Ok(pr) => (Some(*pr), None),
        Err(v) => (None, Some(v.to_string())),
    };
    let mut checks = vec![("is-pdpds", Some(classified.is_ok()))];
    if let Some(grid) = &residual {
        checks.push(("residual-zero", Some(grid.is_zero())));
    }
    let stdout = match format {
        Format::Json => envelope(
            json!({ "N": order_h, "p": p, "set": set_text, "params": params }),
            json!({
                "set": set.to_string(),
                "pdpds": found,
                "violation": violation,
                "residual": residual.as_ref().map(|g| json!({
                    "cells": g.cells,
                    "nonzero": g.nonzero(),
                })),
            }),
            &checks,
        ),
        Format::Csv => {
            let diff = DifferenceMultiset::of(&set);
            let mut out = String::from("h,g,count,residual\n");
            for h in 0..order_h {
                for g in 0..p {
                    let res = residual.as_ref().map(|r| r.get(h, g));
                    let _ =
                        writeln!(out, "{h},{g},{},{}", diff.get(h, g), res.map(|r| r.to_string()).unwrap_or_default());
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            match (&found, &violation) {
                (Some(pr), _) => {
                    let _ = writeln!(out, "PDPDS {pr}");
                }
                (None, Some(v)) => {
                    let _ = writeln!(out, "not a PDPDS: {v}");
                }
                (None, None) => {}
            }
            if let Some(grid) = &residual {
                let _ = writeln!(out, "residual (rows h = 0..N-1, columns g = 0..p-1)");
                for h in 0..order_h {
                    let row: Vec<String> = (0..p).map(|g| format!("{:>4}", grid.get(h, g))).collect();
                    let _ = writeln!(out, "{}", row.join(""));
                }
                let _ = writeln!(out, "residual {}", if grid.is_zero() { "zero" } else { "nonzero" });
            }
            out
        }
    };
    Ok(Outcome::new(stdout, ok))
}

pub fn bounds(n: i64, p: u32, gamma1: i64, gamma2: i64, format: Format) -> CmdResult {
    npseq::cyclotomic::check_prime(p)?;
    let v = nonexistence_verdict(n, p, gamma1, gamma2);
    let checks: Vec<(&str, Option<bool>)> = v.checks.iter().map(|c| (c.name, c.excludes.map(|e| !e))).collect();
    let stdout = match format {
        Format::Json => {
            let mut results = to_value(&v);
            results["nonexistence"] = json!(v.status.excludes());
            results["status"] = json!(v.status.to_string());
            envelope(json!({ "n": n, "p": p, "gamma1": gamma1, "gamma2": gamma2 }), results, &checks)
        }
        Format::Csv => {
            let mut out = String::from("condition,result,detail\n");
            for c in &v.checks {
                let _ = writeln!(out, "\"{}\",{},\"{}\"", c.name, check_word(c.excludes.map(|e| !e)), c.detail);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "type ({gamma1},{gamma2}), n = {n}, p = {p}");
            let _ = writeln!(out, "B = {}", opt(v.bound));
            let word = if v.status.excludes() { "nonexistence" } else { "undecided" };
            let _ = writeln!(out, "verdict {} ({word})", v.status);
            for c in &v.checks {
                let _ = writeln!(out, "  {:<16} {:<5} {}", c.name, check_word(c.excludes.map(|e| !e)), c.detail);
            }
            out
        }
    };
    Ok(Outcome::new(stdout, true))
}

pub fn table(n: i64, gamma1s: &[i64], gamma2s: &[i64], p: Option<u32>, format: Format) -> CmdResult {
    if let Some(p) = p {
        npseq::cyclotomic::check_prime(p)?;
    }
    let rows = generate_bound_table(n, gamma1s, gamma2s, p);
    let stdout = match format {
        Format::Csv => bound_table_csv(&rows),
        Format::Json => {
            envelope(json!({ "n": n, "gamma1_list": gamma1s, "gamma2_list": gamma2s, "p": p }), to_value(&rows), &[])
        }
        Format::Text => {
            let mut out = format!("{:>7} {:>7} {:>5}  verdict\n", "gamma1", "gamma2", "B");
            for r in &rows {
                let _ = writeln!(out, "{:>7} {:>7} {:>5}  {}", r.gamma1, r.gamma2, opt(r.bound), r.verdict());
            }
            out
        }
    };
    Ok(Outcome::new(stdout, true))
}

fn parse_filter(args: &SearchArgs) -> Result<SearchFilter, Failure> {
    if let Some(t) = &args.nps_type {
        let inner = t.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        return match parts.as_slice() {
            [a, b] => match (a.parse(), b.parse()) {
                (Ok(gamma1), Ok(gamma2)) => Ok(SearchFilter::Type { gamma1, gamma2 }),
                _ => Err(Failure::input(format!("bad type {t:?}"))),
            },
            _ => Err(Failure::input(format!("type must be gamma1,gamma2, got {t:?}"))),
        };
    }
    let Some(f) = args.filter.as_deref() else {
        return Ok(SearchFilter::AnyNps);
    };
    match f {
        "nps" => Ok(SearchFilter::AnyNps),
        "all" => Ok(SearchFilter::All),
        "uniform" => Ok(SearchFilter::Uniform),
        _ => {
            let bound = f.strip_prefix("gamma2<=").or_else(|| f.strip_prefix("gamma2-max:"));
            bound
                .and_then(|b| b.trim().parse().ok())
                .map(|bound| SearchFilter::Gamma2AtMost { bound })
                .ok_or_else(|| Failure::input(format!("unknown filter {f:?}")))
        }
    }
}

fn run_search(args: &SearchArgs, mode: SearchMode) -> CmdResult {
    let filter = parse_filter(args)?;
    let config = SearchConfig::new(args.p, args.period, args.zeros)
        .with_filter(filter)
        .with_jobs(args.jobs)
        .with_budget(args.budget)
        .with_normalize_phase(!args.full_space);
    let report = search::run(&config, mode)?;
    let clean = report.violations.is_empty();
    let checks = [("no-violations", Some(clean))];
    let stdout = match args.format {
        // The worker count is deliberately left out so output does not depend on it.
        Format::Json => envelope(
            json!({
                "p": args.p,
                "period": args.period,
                "zeros": args.zeros,
                "filter": filter.to_string(),
                "budget": args.budget.to_string(),
                "normalize_phase": !args.full_space,
            }),
            to_value(&report),
            &checks,
        ),
        Format::Csv => report.to_csv(),
        Format::Text => search_text(&report),
    };
    Ok(Outcome::new(stdout, clean))
}

fn search_text(r: &SearchReport) -> String {
    let mut out = String::new();
    let phase = if r.normalize_phase { "first exponent fixed to 0" } else { "all phases" };
    let _ = writeln!(out, "p = {}, N = {}, s = {}, filter {}, {phase}", r.p, r.period, r.zeros, r.filter);
    let _ = writeln!(out, "enumerated {}", r.total_enumerated);
    let _ = writeln!(out, "matches {}", r.matches.len());
    for m in &r.matches {
        let _ = writeln!(out, "  {}  type {}  PDPDS {}", m.sequence, opt(m.nps), opt(m.pdpds));
    }
    let hist: Vec<String> = r.ell_histogram.iter().map(|(ell, c)| format!("{ell}:{c}")).collect();
    let _ = writeln!(out, "ell histogram {}", hist.join(" "));
    let _ = writeln!(out, "violations {}", r.violations.len());
    for v in &r.violations {
        let _ = writeln!(out, "  {}  {}", v.sequence, v.reason);
    }
    out
}

pub fn search(args: &SearchArgs, ell_bounds: bool) -> CmdResult {
    run_search(args, if ell_bounds { SearchMode::EllBounds } else { SearchMode::Classify })
}

pub fn roundtrip(args: &SearchArgs) -> CmdResult {
    run_search(args, SearchMode::Theorem3)
}
