use std::fs;
use std::path::{Path, PathBuf};

use ntc_core::brieskorn::{self, BrieskornType};
use ntc_core::homogeneous;
use ntc_core::io::{self, Diagnostic};
use ntc_core::lattice::ChiMin;
use ntc_core::rational::{format_q, to_i64};
use ntc_core::reduction::{criterion_solution, gorenstein_cycle_criterion};
use ntc_core::{Cycle, Lattice, WeightedDualGraph, Q};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{Report, CM_WARNING};
use crate::verify::{self, VerifyOptions};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{diagnostic}")]
    Diagnostic {
        path: String,
        diagnostic: Diagnostic,
    },
    #[error("{0}")]
    Input(String),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_graph(path: &Path) -> Result<WeightedDualGraph, CliError> {
    io::parse(&read(path)?).map_err(|diagnostic| CliError::Diagnostic {
        path: path.display().to_string(),
        diagnostic,
    })
}

fn load_cycle(path: &Path, graph: &WeightedDualGraph) -> Result<Cycle, CliError> {
    io::parse_cycle(&read(path)?, graph).map_err(|diagnostic| CliError::Diagnostic {
        path: path.display().to_string(),
        diagnostic,
    })
}

fn input_error(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Integers as JSON numbers, other rationals as `"p/q"` strings.
pub fn q_json(x: &Q) -> Value {
    match to_i64(x) {
        Some(i) => Value::from(i),
        None => Value::from(format_q(x)),
    }
}

pub fn cycle_json(lat: &Lattice, z: &Cycle) -> Value {
    Value::Object(
        lat.ids()
            .iter()
            .zip(z.coeffs())
            .map(|(id, c)| (id.clone(), q_json(c)))
            .collect(),
    )
}

struct CycleNumbers {
    zsq: Q,
    kz: Q,
    chi: Q,
}

fn numbers(lat: &Lattice, z: &Cycle) -> CycleNumbers {
    CycleNumbers {
        zsq: lat.self_intersection(z).expect("dimension"),
        kz: lat.canonical_pairing(z).expect("dimension"),
        chi: lat.chi(z).expect("dimension"),
    }
}

fn put_numbers(report: &mut Report, n: &CycleNumbers) {
    report
        .result("self_intersection", q_json(&n.zsq))
        .result("canonical_pairing", q_json(&n.kz))
        .result("chi", q_json(&n.chi));
}

/// The `r` solving `(r-1) Z^2 + K_X Z = 0`, for an integral cycle.
fn solving_r(n: &CycleNumbers) -> Value {
    match (to_i64(&n.zsq), to_i64(&n.kz)) {
        (Some(zsq), Some(kz)) => criterion_solution(zsq, kz).map_or(Value::Null, Value::from),
        _ => Value::Null,
    }
}

fn file_input(report: &mut Report, file: &Path) {
    report.input("file", file.display().to_string());
}

pub fn graph_check(file: &Path) -> Result<Report, CliError> {
    let g = load_graph(file)?;
    let lat = Lattice::new(&g);
    let minors: Vec<Value> = lat
        .form()
        .negated_leading_minors()
        .iter()
        .map(|m| {
            m.to_i64()
                .map_or_else(|| Value::from(m.to_string()), Value::from)
        })
        .collect();
    let mut r = Report::new("graph check");
    file_input(&mut r, file);
    r.result("name", g.name().map_or(Value::Null, Value::from))
        .result("vertices", g.len())
        .result("edges", g.edges().len())
        .result("arrows", g.arrows().len())
        .result("negated_leading_minors", minors)
        .result("canonical", io::serialize(&g))
        .verdict("valid", true)
        .verdict("negative_definite", lat.form().is_negative_definite());
    Ok(r)
}

pub fn graph_analyze(file: &Path, r: Option<u32>) -> Result<Report, CliError> {
    let g = load_graph(file)?;
    let lat = Lattice::new(&g);
    let z = lat.cycle_from_arrows().map_err(input_error)?;
    if !z.is_integral() {
        return Err(CliError::Input(format!(
            "arrows define the non-integral cycle {}",
            lat.describe(&z)
        )));
    }
    let n = numbers(&lat, &z);
    let mut report = Report::new("graph analyze");
    file_input(&mut report, file);
    report.input("r", r.map_or(Value::Null, Value::from));
    report
        .result("cycle", cycle_json(&lat, &z))
        .result("cycle_terms", lat.describe(&z))
        .result("antinef", lat.is_antinef(&z))
        .result("multiplicity", q_json(&-n.zsq.clone()))
        .result("canonical_cycle", cycle_json(&lat, &lat.canonical_cycle()));
    put_numbers(&mut report, &n);

    let zsq = to_i64(&n.zsq).expect("integral cycle");
    let kz = to_i64(&n.kz).expect("integral cycle");
    let pg = kz == 0;
    let elliptic = n.chi == Q::from_integer(0.into());
    report
        .verdict(
            "r1_pg_criterion",
            json!({"statement": "K_X Z = 0", "holds": pg}),
        )
        .verdict(
            "r2_elliptic_criterion",
            json!({"statement": "chi(Z) = 0", "holds": elliptic}),
        );
    let summary = match r {
        Some(r) => {
            let holds = gorenstein_cycle_criterion(zsq, kz, r as usize);
            report.verdict("criterion_at_r", json!({"r": r, "holds": holds}));
            format!(
                "criterion (r-1)Z^2 + K_X Z = 0 {} at r={r}",
                if holds { "holds" } else { "fails" }
            )
        }
        None => {
            let solution = criterion_solution(zsq, kz);
            report.verdict(
                "criterion_solution_r",
                solution.map_or(Value::Null, Value::from),
            );
            match solution {
                Some(1) => "good p_g-type (r=1) criterion holds".to_string(),
                Some(2) => "elliptic (r=2) criterion holds".to_string(),
                Some(r) => format!("criterion holds at r={r}"),
                None => "no r >= 1 satisfies the criterion; r=1 criterion fails".to_string(),
            }
        }
    };
    report.verdict("summary", summary).warn(CM_WARNING);
    Ok(report)
}

pub fn graph_dual(file: &Path, vertex: &str) -> Result<Report, CliError> {
    let g = load_graph(file)?;
    let lat = Lattice::new(&g);
    let z = lat.dual_cycle(vertex).map_err(input_error)?.clone();
    let mut r = Report::new("graph dual");
    file_input(&mut r, file);
    r.input("vertex", vertex)
        .result("dual", cycle_json(&lat, &z))
        .result("integral", z.is_integral());
    put_numbers(&mut r, &numbers(&lat, &z));
    Ok(r)
}

pub fn graph_fundamental(file: &Path) -> Result<Report, CliError> {
    let g = load_graph(file)?;
    let lat = Lattice::new(&g);
    let z = lat.fundamental_cycle();
    let mut r = Report::new("graph fundamental");
    file_input(&mut r, file);
    r.result("fundamental_cycle", cycle_json(&lat, &z));
    put_numbers(&mut r, &numbers(&lat, &z));
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumMode {
    Below,
    Canonical,
}

fn entry_json(lat: &Lattice, z: &Cycle) -> Value {
    let n = numbers(lat, z);
    json!({
        "cycle": cycle_json(lat, z),
        "chi": q_json(&n.chi),
        "self_intersection": q_json(&n.zsq),
        "criterion_r": solving_r(&n),
    })
}

pub fn graph_enum(file: &Path, mode: EnumMode, bound: Option<&Path>) -> Result<Report, CliError> {
    let g = load_graph(file)?;
    let lat = Lattice::new(&g);
    let mut report = Report::new("graph enum");
    file_input(&mut report, file);
    let cycles = match mode {
        EnumMode::Below => {
            report.input("mode", "below");
            let w = match bound {
                Some(p) => {
                    report.input("bound", p.display().to_string());
                    load_cycle(p, &g)?
                }
                None => {
                    report.warn("no --bound given; W defaults to the fundamental cycle");
                    lat.fundamental_cycle()
                }
            };
            report.result("bound_cycle", cycle_json(&lat, &w));
            lat.enumerate_antinef_below(&w).map_err(input_error)?
        }
        EnumMode::Canonical => {
            report.input("mode", "zk");
            if bound.is_some() {
                return Err(CliError::Input(
                    "--bound only applies to --mode below".into(),
                ));
            }
            let e = lat.enumerate_antinef_not_exceeding_canonical();
            report.result("canonical_cycle", cycle_json(&lat, &e.canonical_cycle));
            for w in &e.warnings {
                report.warn(w.clone());
            }
            e.entries.into_iter().map(|(z, _)| z).collect()
        }
    };
    report
        .result("count", cycles.len())
        .result(
            "cycles",
            Value::Array(cycles.iter().map(|z| entry_json(&lat, z)).collect()),
        )
        .warn(CM_WARNING);
    Ok(report)
}

pub fn graph_chimin(file: &Path, bound: Option<&Path>) -> Result<Report, CliError> {
    let g = load_graph(file)?;
    let lat = Lattice::new(&g);
    let mut report = Report::new("graph chimin");
    file_input(&mut report, file);
    let bound = match bound {
        Some(p) => {
            report.input("bound", p.display().to_string());
            load_cycle(p, &g)?
        }
        None => {
            report.warn("no --bound given; using 2 max(ceil(Z_K), 0) + Z_f");
            lat.default_chi_bound()
        }
    };
    let ChiMin {
        value,
        witness,
        bound,
    } = lat.chi_min(&bound).map_err(input_error)?;
    report
        .result("bound_cycle", cycle_json(&lat, &bound))
        .result("chi_min", q_json(&value))
        .result("witness", cycle_json(&lat, &witness))
        .result(
            "arithmetic_genus_bound",
            q_json(&(Q::from_integer(1.into()) - value)),
        )
        .warn("bounded search: the minimum is over the box only");
    Ok(report)
}

pub fn brieskorn_single(a: u32, b: u32, c: u32) -> Result<Report, CliError> {
    let t = BrieskornType::new(a, b, c).map_err(input_error)?;
    let x = brieskorn::analyze(t);
    let mut r = Report::new("brieskorn");
    r.input("a", a)
        .input("b", b)
        .input("c", c)
        .input("hypothesis", brieskorn::CHARACTERISTIC_NOTE);
    let closures: Vec<Value> = (0..=t.r() + 1)
        .map(|n| {
            let ideal = t.overline_power(n);
            json!({"n": n, "exponents": ideal.exponents(), "colength": ideal.colength()})
        })
        .collect();
    r.result("d", x.invariants.d)
        .result("n", x.invariants.n.clone())
        .result("r", x.invariants.r)
        .result("br_direct", x.br_direct)
        .result("self_intersection", x.invariants.zsq)
        .result("canonical_pairing", x.invariants.kz)
        .result("chi", x.chi)
        .result("pg_minus_q", 1 - x.chi)
        .result("steps", x.steps.clone())
        .result("b_sequence", x.b_sequence.values().to_vec())
        .result("l_colengths", x.l_colengths.clone())
        .result("q_drops", x.q_drops.clone())
        .result("closures", closures);
    let v = x.verdicts;
    r.verdict("arith", v.arith)
        .verdict("cycle", v.cycle)
        .verdict("symmetric", v.symmetric)
        .verdict("gorenstein", v.cycle)
        .verdict("complementarity", x.complementary)
        .verdict("eqbb", x.eqbb);
    if !v.agree() || !x.eqbb || x.complementary != v.cycle {
        r.fail();
    }
    Ok(r)
}

pub fn brieskorn_scan(max: u32) -> Result<Report, CliError> {
    if max < 2 {
        return Err(CliError::Input(format!(
            "--max must be at least 2, got {max}"
        )));
    }
    let s = brieskorn::corollary_suite(max);
    let mismatches: usize = brieskorn::types_up_to(max)
        .map(|t| brieskorn::power_reduction_mismatches(&t).len())
        .sum();
    let mut counts = serde_json::Map::new();
    for v in &s.violations {
        let e = counts.entry(v.claim.to_string()).or_insert(Value::from(0));
        *e = Value::from(e.as_u64().unwrap_or(0) + 1);
    }
    let mut r = Report::new("brieskorn scan");
    r.input("max", max)
        .input("hypothesis", brieskorn::CHARACTERISTIC_NOTE)
        .result("types", s.types)
        .result("gorenstein", s.gorenstein)
        .result("violation_counts", Value::Object(counts))
        .result(
            "violations",
            Value::Array(
                s.violations
                    .iter()
                    .map(|v| json!({"type": v.t.to_string(), "claim": v.claim}))
                    .collect(),
            ),
        )
        .result("power_reduction_mismatches", mismatches);
    let clean = s.violations.is_empty() && mismatches == 0;
    r.verdict("clean", clean);
    if !clean {
        r.fail();
    }
    Ok(r)
}

pub fn homog_classify(d: u32, cap: u32) -> Result<Report, CliError> {
    if d > cap {
        return Err(CliError::Input(format!("degree {d} exceeds --cap {cap}")));
    }
    let c = homogeneous::classify(d).map_err(input_error)?;
    let sols = homogeneous::search_r2(d).map_err(input_error)?;
    let mut r = Report::new("homog classify");
    r.input("d", d).input("cap", cap);
    let mut realizations_ok = true;
    let ideals: Vec<Value> = c
        .ideals
        .iter()
        .map(|i| {
            let check = homogeneous::cross_check_realization(d, &i.datum);
            realizations_ok &= check != Some(false);
            json!({
                "label": i.label,
                "u": i.datum.u,
                "mults": i.datum.mults,
                "on_curve": i.datum.on_curve,
                "br": i.br,
                "divides": i.parent,
                "factor": i.factor,
                "realization_check": check,
            })
        })
        .collect();
    let solutions: Vec<Value> = sols
        .iter()
        .map(|s| {
            json!({
                "label": s.label,
                "u": s.datum.u,
                "mults": s.datum.mults,
                "on_curve": s.datum.on_curve,
                "chi": s.analysis.chi,
                "self_intersection": s.analysis.zsq,
                "pairing_with_e0": s.analysis.ze0,
            })
        })
        .collect();
    let mut labels = c.labels();
    labels.sort();
    r.result("ideals", ideals)
        .result("labels", labels.clone())
        .result("r2_solutions", solutions)
        .result("verified", c.verified);
    let matches = homogeneous::expected_classification(d).map(|e| e == labels);
    r.verdict("matches_expected", matches.map_or(Value::Null, Value::from))
        .verdict("realizations_consistent", realizations_ok)
        .warn(CM_WARNING);
    if !c.verified {
        r.warn(format!(
            "unverified: completeness is only established for d <= {}",
            homogeneous::VERIFIED_MAX_DEGREE
        ));
    }
    if matches == Some(false) || !realizations_ok {
        r.fail();
    }
    Ok(r)
}

pub fn homog_power(d: u32, n: u32) -> Result<Report, CliError> {
    let p = homogeneous::power_report(d, n).map_err(input_error)?;
    let mut r = Report::new("homog power");
    r.input("d", d)
        .input("n", n)
        .result("colength", p.colength)
        .result("q", p.q)
        .result("br", p.br)
        .verdict("gorenstein", p.gorenstein)
        .warn(CM_WARNING);
    Ok(r)
}

pub fn homog_il(d: u32) -> Result<Report, CliError> {
    let il = homogeneous::il_report(d).map_err(input_error)?;
    let opt = |x: Option<i64>| x.map_or(Value::Null, Value::from);
    let mut r = Report::new("homog il");
    r.input("d", d)
        .result("chi", il.chi)
        .result("q", il.q)
        .result("colength", opt(il.colength))
        .result("colength_square", opt(il.colength2))
        .verdict("elliptic", il.chi == 0);
    if il.colength.is_none() {
        r.warn("colengths are derived for d = 5 only");
    }
    Ok(r)
}

pub fn verify_paper(max: u32, fixtures: Option<PathBuf>) -> Result<Report, CliError> {
    if max < 2 {
        return Err(CliError::Input(format!(
            "--max must be at least 2, got {max}"
        )));
    }
    if let Some(dir) = &fixtures {
        if !dir.is_dir() {
            return Err(CliError::Input(format!(
                "{} is not a directory",
                dir.display()
            )));
        }
    }
    let opts = VerifyOptions {
        max,
        fixtures,
        ..VerifyOptions::default()
    };
    let outcomes = verify::run(&opts);
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let mut r = Report::new("verify-paper");
    r.input("max", max).input(
        "fixtures",
        opts.fixtures.as_ref().map_or(Value::from("embedded"), |p| {
            Value::from(p.display().to_string())
        }),
    );
    r.result(
        "checks",
        Value::Array(
            outcomes
                .iter()
                .map(|o| {
                    json!({
                        "id": o.id,
                        "anchor": o.anchor,
                        "passed": o.passed,
                        "detail": o.detail,
                    })
                })
                .collect(),
        ),
    )
    .result("passed", passed)
    .result("total", outcomes.len())
    .verdict("all_passed", passed == outcomes.len());
    for o in outcomes.iter().filter(|o| !o.passed) {
        r.warn(format!("{} failed: contradicts {}", o.id, o.anchor));
    }
    if passed != outcomes.len() {
        r.fail();
    }
    Ok(r)
}
