use std::fmt::Write as _;

use brauer_core::algebra::{enumerate_modifications_bounded, Modification};
use brauer_core::cohomology::{brute_force_cohomology, cohomology, element_order_multiset, Cochain, SliceJson};
use brauer_core::fields::{galois_module, ExtensionDescriptor};
use brauer_core::linalg::GroupSummary;
use brauer_core::monoid::{build_galois_monoid, BuildOptions, EpsMode, MonoidJson};
use brauer_core::verify::{verify_extension, VerificationReport};
use brauer_core::Error;
use serde::Serialize;

use crate::cache::Cache;
use crate::config::{parse_group, parse_zeros, Command, Format, RunConfig};
use crate::{CliError, Outcome};

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (output, passed, cache_hit) = match &cfg.command {
        Command::Modifications { group } => (modifications(cfg, group)?, true, false),
        Command::Component { extension, zeros } => {
            let (text, passed) = component(cfg, extension, zeros)?;
            (text, passed, false)
        }
        Command::Monoid { extension } => {
            let (text, hit) = monoid(cfg, extension)?;
            (text, true, hit)
        }
        Command::Verify { extension } => verify(cfg, extension)?,
    };
    Ok(Outcome {
        output,
        out: cfg.out.clone(),
        passed,
        cache_hit,
    })
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Io(e.to_string()))
}

fn pairs(zero_pairs: &[(usize, usize)]) -> Vec<[usize; 2]> {
    zero_pairs.iter().map(|&(a, b)| [a, b]).collect()
}

fn show_pairs(zero_pairs: &[[usize; 2]]) -> String {
    let inner: Vec<String> = zero_pairs.iter().map(|[a, b]| format!("[{a},{b}]")).collect();
    format!("[{}]", inner.join(","))
}

fn show_factors(factors: &[String]) -> String {
    if factors.is_empty() {
        "0".to_string()
    } else {
        factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ")
    }
}

fn show_group(g: &GroupSummary) -> String {
    let mut parts: Vec<String> = g.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
    parts.extend(std::iter::repeat_n("Z".to_string(), g.free_rank));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn cache_inputs(e: &ExtensionDescriptor) -> serde_json::Value {
    serde_json::json!({ "p": e.p, "m": e.m, "n": e.n })
}

#[derive(Serialize)]
struct ModificationRow {
    id: usize,
    zero_pairs: Vec<[usize; 2]>,
    units: Vec<usize>,
}

fn modifications(cfg: &RunConfig, spec: &str) -> Result<String, CliError> {
    let group = parse_group(spec, cfg.bounds.max_group_order)?;
    let mods = enumerate_modifications_bounded(&group, cfg.bounds.max_group_order)?;
    let rows: Vec<ModificationRow> = mods
        .iter()
        .enumerate()
        .map(|(id, m)| ModificationRow {
            id,
            zero_pairs: pairs(m.zero_pairs()),
            units: m.unit_group().units,
        })
        .collect();
    if cfg.format == Format::Json {
        return to_json(&rows);
    }
    let mut out = String::new();
    let noun = if rows.len() == 1 { "modification" } else { "modifications" };
    writeln!(out, "{} {noun}", rows.len()).unwrap();
    for r in &rows {
        writeln!(out, "#{} zeros {} units {:?}", r.id, show_pairs(&r.zero_pairs), r.units).unwrap();
    }
    Ok(out)
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
enum OracleCheck {
    Agrees { order: u64 },
    Disagrees { lattice_order: String, brute_force_order: u64 },
    Skipped { reason: String },
}

#[derive(Serialize)]
struct ComponentReport {
    extension: String,
    zero_pairs: Vec<[usize; 2]>,
    units: Vec<usize>,
    cohomology: SliceJson,
    oracle: OracleCheck,
}

fn show_cochain(c: &Cochain) -> String {
    let mut terms = Vec::new();
    for (i, t) in c.domain().tuples().iter().enumerate() {
        let v = c.get(i);
        if v.iter().any(|&x| x != 0) {
            let args: Vec<String> = t.iter().map(ToString::to_string).collect();
            let value = if v.len() == 1 {
                v[0].to_string()
            } else {
                format!("{v:?}")
            };
            terms.push(format!("f({})={value}", args.join(",")));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" ")
    }
}

fn component(cfg: &RunConfig, spec: &str, zeros: &str) -> Result<(String, bool), CliError> {
    let e = cfg.extension(spec)?;
    let galois = galois_module(&e)?;
    if galois.group.order() > cfg.bounds.max_group_order {
        return Err(Error::GroupTooLarge {
            order: galois.group.order(),
            bound: cfg.bounds.max_group_order,
        }
        .into());
    }
    let s = Modification::from_zero_set(galois.group.clone(), parse_zeros(zeros)?)?;
    let module = galois.module_over(&s)?;
    let slice = cohomology(&module, 2)?;
    let oracle = match brute_force_cohomology(&module, 2, cfg.bounds.brute_force_budget) {
        Ok(brute) => {
            let same = slice.order() == brute.order.into()
                && element_order_multiset(slice.invariant_factors()) == brute.element_orders;
            if same {
                OracleCheck::Agrees { order: brute.order }
            } else {
                OracleCheck::Disagrees {
                    lattice_order: slice.order().to_string(),
                    brute_force_order: brute.order,
                }
            }
        }
        Err(Error::BudgetExceeded { needed, budget }) => OracleCheck::Skipped {
            reason: format!("needs {needed} cochains, budget {budget}"),
        },
        Err(other) => return Err(other.into()),
    };
    let passed = !matches!(oracle, OracleCheck::Disagrees { .. });
    let report = ComponentReport {
        extension: e.to_string(),
        zero_pairs: pairs(s.zero_pairs()),
        units: s.unit_group().units,
        cohomology: slice.to_json(),
        oracle,
    };
    if cfg.format == Format::Json {
        return Ok((to_json(&report)?, passed));
    }
    let mut out = String::new();
    writeln!(out, "{} zeros {}", report.extension, show_pairs(&report.zero_pairs)).unwrap();
    writeln!(out, "units {:?}", report.units).unwrap();
    writeln!(out, "H^2_0 = {}", show_group(&report.cohomology.group)).unwrap();
    for (i, rep) in slice.representatives().iter().enumerate() {
        writeln!(out, "generator {}: {}", i + 1, show_cochain(rep)).unwrap();
    }
    match &report.oracle {
        OracleCheck::Agrees { order } => writeln!(out, "oracle agrees (order {order})"),
        OracleCheck::Disagrees {
            lattice_order,
            brute_force_order,
        } => writeln!(out, "oracle DISAGREES: lattice order {lattice_order}, brute force {brute_force_order}"),
        OracleCheck::Skipped { reason } => writeln!(out, "oracle skipped: {reason}"),
    }
    .unwrap();
    Ok((out, passed))
}

fn monoid(cfg: &RunConfig, spec: &str) -> Result<(String, bool), CliError> {
    let e = cfg.extension(spec)?;
    let compute = || -> Result<MonoidJson, CliError> {
        let options = BuildOptions {
            max_order: cfg.bounds.max_group_order,
            eps: EpsMode::Eager,
        };
        Ok(build_galois_monoid(&e, &options)?.to_json()?)
    };
    let (json, hit) = match &cfg.cache_dir {
        Some(dir) => Cache::new(dir)?.get_or_compute(&Cache::key("monoid", &cache_inputs(&e)), compute)?,
        None => (compute()?, false),
    };
    if cfg.format == Format::Json {
        return Ok((to_json(&json)?, hit));
    }
    let mut out = String::new();
    writeln!(
        out,
        "Brauer monoid of {}: {} components over a group of order {}",
        e,
        json.components.len(),
        json.group.order
    )
    .unwrap();
    for c in &json.components {
        writeln!(
            out,
            "#{} zeros {} H^2_0 = {}",
            c.modification,
            show_pairs(&json.modifications[c.modification]),
            show_group(&c.group)
        )
        .unwrap();
    }
    writeln!(out, "{} restriction maps", json.eps.len()).unwrap();
    let nt = &json.nontriviality;
    if nt.nontrivial_components.is_empty() {
        writeln!(out, "every component is trivial").unwrap();
    } else {
        writeln!(out, "nontrivial components {:?}", nt.nontrivial_components).unwrap();
    }
    Ok((out, hit))
}

fn verify(cfg: &RunConfig, spec: &str) -> Result<(String, bool, bool), CliError> {
    let e = cfg.extension(spec)?;
    let compute = || -> Result<VerificationReport, CliError> { Ok(verify_extension(&e, cfg.bounds.max_group_order)?) };
    let (report, hit) = match &cfg.cache_dir {
        Some(dir) => Cache::new(dir)?.get_or_compute(&Cache::key("verify", &cache_inputs(&e)), compute)?,
        None => (compute()?, false),
    };
    let passed = report.all_passed();
    if cfg.format == Format::Json {
        return Ok((to_json(&report)?, passed, hit));
    }
    let mut out = String::new();
    for (r, c) in report.reports.iter().zip(&report.corollary) {
        let verdict = serde_json::to_value(r.verdict).unwrap();
        let constructive = match &r.constructive {
            Some(k) if k.all() => "ok",
            Some(_) => "FAILED",
            None => "not run",
        };
        writeln!(
            out,
            "#{} zeros {} {} H^2_0(S) = {} H^2_0(S/U) = {} constructive {} corollary {}",
            r.modification_id,
            show_pairs(&r.zero_pairs),
            verdict.as_str().unwrap_or("?"),
            show_factors(&r.component_invariants),
            show_factors(&r.quotient_component_invariants),
            constructive,
            if c.passed { "ok" } else { "FAILED" }
        )
        .unwrap();
    }
    let s = &report.summary;
    writeln!(out, "{}: {}/{} pass", report.extension, s.passed, s.tested).unwrap();
    if s.hypothesis_not_met > 0 {
        writeln!(out, "{} with nontrivial H^1 of the units", s.hypothesis_not_met).unwrap();
    }
    Ok((out, passed, hit))
}
