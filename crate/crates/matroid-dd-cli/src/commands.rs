//! The five subcommands. Each returns the full stdout text plus a flag
//! saying whether every checked relation held; `main` maps a cleared flag
//! to exit code 4 after printing, so failed checks still show their report.
//!
//! All output is deterministic: equal invocations print identical bytes.

use std::path::Path;

use itertools::Itertools;

use matroid_dd::analysis::{
    check_width_bounds, good_order, laminar_counterexample, pathwidth_exact, AnalysisError,
    WidthReport, DEFAULT_PATHWIDTH_MAX, MAX_PATHWIDTH_GROUND,
};
use matroid_dd::build::{build_dd_limited, BuildTarget, TargetFamily, DEFAULT_MAX_GROUND};
use matroid_dd::oracle::{zdd_independence, zdd_rank};
use matroid_dd::transforms::size_relations_report;
use matroid_dd::{DdKind, Diagram, ElementOrder, Store};

use crate::error::CliError;
use crate::spec;

/// Environment variable overriding the default ground-size limit.
pub const ENV_MAX_N: &str = "MATROID_DD_MAX_N";

/// Output of a successful command run.
pub struct CmdOut {
    pub stdout: String,
    /// Cleared when a checked relation or bound failed (exit code 4).
    pub theorem_pass: bool,
}

impl CmdOut {
    fn ok(stdout: String) -> Self {
        CmdOut { stdout, theorem_pass: true }
    }

    fn checked(stdout: String, theorem_pass: bool) -> Self {
        CmdOut { stdout, theorem_pass }
    }
}

/// How `build` renders the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutFormat {
    Summary,
    Csv,
    Dot,
}

/// Which element order(s) `analyze` sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderMode {
    Given,
    Good,
    AllPermutations,
}

/// Largest ground set `analyze --order all-permutations` will sweep.
pub const MAX_PERMUTATION_GROUND: usize = 8;

fn env_limit_override() -> Result<Option<usize>, CliError> {
    match std::env::var(ENV_MAX_N) {
        Ok(text) => {
            let value: usize = text.trim().parse().map_err(|_| {
                CliError::Input(format!("{ENV_MAX_N} must be a positive integer, got `{text}`"))
            })?;
            if value == 0 {
                return Err(CliError::Input(format!("{ENV_MAX_N} must be a positive integer")));
            }
            Ok(Some(value))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err(CliError::Input(format!("{ENV_MAX_N} is not valid unicode")))
        }
    }
}

fn ground_limit() -> Result<usize, CliError> {
    Ok(env_limit_override()?.unwrap_or(DEFAULT_MAX_GROUND))
}

fn check_ground_limit(n: usize, limit: usize) -> Result<(), CliError> {
    if n > limit {
        return Err(CliError::Resource(format!(
            "ground set of {n} elements exceeds the limit of {limit} (set {ENV_MAX_N} to change it)"
        )));
    }
    Ok(())
}

fn comma_joined<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).join(",")
}

/// `build`: one diagram of one matroid, as a summary, CSV widths, or DOT.
pub fn cmd_build(
    spec_path: &Path,
    kind: DdKind,
    target: TargetFamily,
    out: OutFormat,
) -> Result<CmdOut, CliError> {
    let loaded = spec::load(spec_path)?;
    let limit = ground_limit()?;

    // An explicit family needs no matroid structure to have a diagram of
    // its sets, so that path skips the axiom check. Everything else —
    // including the bases target, which is only meaningful for matroids —
    // interprets the description as a matroid.
    let (store, diagram) = match (target, loaded.raw_family()) {
        (TargetFamily::IndependentSets, Some(raw)) => {
            let (family, order) = raw?;
            check_ground_limit(order.len(), limit)?;
            let mut store = Store::new(order);
            let diagram = store.from_family(kind, &family)?;
            (store, diagram)
        }
        _ => {
            let (m, order) = loaded.matroid()?;
            let mut store = Store::new(order);
            let diagram = build_dd_limited(&m, &mut store, BuildTarget { kind, target }, limit)?;
            (store, diagram)
        }
    };

    let text = match out {
        OutFormat::Summary => render_summary(&store, &diagram, target),
        OutFormat::Csv => render_width_csv(&store, &diagram),
        OutFormat::Dot => store.to_dot(&diagram),
    };
    Ok(CmdOut::ok(text))
}

fn render_summary(store: &Store, d: &Diagram, target: TargetFamily) -> String {
    let order = store.order();
    let target_name = match target {
        TargetFamily::IndependentSets => "independent",
        TargetFamily::Bases => "bases",
    };
    let widths = store.level_widths(d);
    let mut s = String::new();
    s.push_str(&format!("kind: {}\n", d.kind()));
    s.push_str(&format!("target: {target_name}\n"));
    s.push_str(&format!("elements: {}\n", order.len()));
    s.push_str(&format!("order: {}\n", comma_joined(order.names().iter())));
    s.push_str(&format!("size: {}\n", store.size(d)));
    s.push_str(&format!("width: {}\n", store.width(d)));
    s.push_str(&format!("level_widths: {}\n", comma_joined(widths)));
    s.push_str(&format!("count: {}\n", store.count(d)));
    s
}

fn render_width_csv(store: &Store, d: &Diagram) -> String {
    let order = store.order();
    let mut s = String::from("level,element,width\n");
    for (level, width) in store.level_widths(d).iter().enumerate() {
        s.push_str(&format!("{level},{},{width}\n", order.name(level)));
    }
    s
}

/// `relations`: the eight diagram sizes and the nine size relations.
pub fn cmd_relations(spec_path: &Path) -> Result<CmdOut, CliError> {
    let loaded = spec::load(spec_path)?;
    let (m, order) = loaded.matroid()?;
    check_ground_limit(m.n(), ground_limit()?)?;
    let mut store = Store::new(order);
    let report = size_relations_report(&m, &mut store)?;

    let mut s = String::new();
    s.push_str(&format!("elements: {}\n", m.n()));
    s.push_str(&format!("order: {}\n", comma_joined(store.order().names().iter())));
    let z = &report.sizes;
    for (name, value) in [
        ("zdd_isets", z.zdd_isets),
        ("zdd_bases", z.zdd_bases),
        ("bdd_isets", z.bdd_isets),
        ("bdd_bases", z.bdd_bases),
        ("zdd_isets_dual", z.zdd_isets_dual),
        ("zdd_bases_dual", z.zdd_bases_dual),
        ("bdd_isets_dual", z.bdd_isets_dual),
        ("bdd_bases_dual", z.bdd_bases_dual),
    ] {
        s.push_str(&format!("{name}: {value}\n"));
    }
    for check in &report.checks {
        s.push_str(&format!(
            "check {}: {} {} {} -> {}\n",
            check.name,
            check.lhs,
            check.op,
            check.rhs,
            if check.pass { "pass" } else { "fail" }
        ));
    }
    let all = report.all_pass();
    s.push_str(&format!("relations: {}\n", if all { "pass" } else { "fail" }));
    Ok(CmdOut::checked(s, all))
}

/// `analyze`: per-level connectivity, minor counts, widths, and the
/// class-specific width bound, as CSV, over one or many element orders.
pub fn cmd_analyze(
    spec_path: Option<&Path>,
    mode: OrderMode,
    laminar_k: Option<usize>,
) -> Result<CmdOut, CliError> {
    let (m, given_order) = match (spec_path, laminar_k) {
        (Some(path), None) => spec::load(path)?.matroid()?,
        (None, Some(k)) => laminar_counterexample(k)?,
        (Some(_), Some(_)) => {
            return Err(CliError::Input(
                "pass either a description file or --laminar-counterexample, not both".into(),
            ));
        }
        (None, None) => {
            return Err(CliError::Input(
                "pass a description file or --laminar-counterexample".into(),
            ));
        }
    };
    check_ground_limit(m.n(), ground_limit()?)?;

    let orders: Vec<ElementOrder> = match mode {
        OrderMode::Given => vec![given_order],
        OrderMode::Good => vec![good_order(&m)?],
        OrderMode::AllPermutations => {
            if m.n() > MAX_PERMUTATION_GROUND {
                return Err(CliError::Resource(format!(
                    "sweeping all orders of {} elements exceeds the limit of {}",
                    m.n(),
                    MAX_PERMUTATION_GROUND
                )));
            }
            let names = m.ground().names();
            (0..m.n())
                .permutations(m.n())
                .map(|perm| {
                    let chosen: Vec<String> = perm.iter().map(|&i| names[i].clone()).collect();
                    ElementOrder::new(chosen).expect("permuting distinct names keeps them distinct")
                })
                .collect()
        }
    };

    let mut s = String::from(
        "level,lambda,minor_count,nonloop_minor_count,w_bdd_I,w_bdd_B,w_zdd_I,w_zdd_B,bound,verdict\n",
    );
    let mut all = true;
    for order in orders {
        s.push_str(&format!("# order={}\n", comma_joined(order.names().iter())));
        let mut store = Store::new(order);
        let report: WidthReport = check_width_bounds(&m, &mut store)?;
        for row in &report.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                row.level,
                row.lambda,
                row.minor_count,
                row.nonloop_minor_count,
                row.w_bdd_isets,
                row.w_bdd_bases,
                row.w_zdd_isets,
                row.w_zdd_bases,
                row.bound,
                if row.pass { "pass" } else { "fail" }
            ));
        }
        all &= report.all_pass();
    }
    Ok(CmdOut::checked(s, all))
}

/// `pathwidth`: exact pathwidth with a witness order; for classes whose
/// defining order is known to be optimal, also checks that the widest
/// diagram level under that order stays within pathwidth + 1.
pub fn cmd_pathwidth(spec_path: &Path) -> Result<CmdOut, CliError> {
    let loaded = spec::load(spec_path)?;
    let (m, _) = loaded.matroid()?;
    let pw_cap = match env_limit_override()? {
        Some(value) => value.min(MAX_PATHWIDTH_GROUND),
        None => DEFAULT_PATHWIDTH_MAX,
    };
    let pw = pathwidth_exact(&m, pw_cap)?;

    let mut s = String::new();
    s.push_str(&format!("elements: {}\n", m.n()));
    s.push_str(&format!("pathwidth: {}\n", pw.width));
    s.push_str(&format!("witness_order: {}\n", comma_joined(pw.order.names().iter())));

    match good_order(&m) {
        Ok(order) => {
            let limit = ground_limit()?;
            check_ground_limit(m.n(), limit)?;
            let mut store = Store::new(order);
            let mut max_width = 0usize;
            for target in [
                BuildTarget::zdd_independents(),
                BuildTarget::zdd_bases(),
                BuildTarget::bdd_independents(),
                BuildTarget::bdd_bases(),
            ] {
                let d = build_dd_limited(&m, &mut store, target, limit)?;
                max_width = max_width.max(store.width(&d));
            }
            let bound = pw.width + 1;
            let pass = max_width <= bound;
            s.push_str(&format!("max_diagram_width: {max_width}\n"));
            s.push_str(&format!("width_bound: {bound}\n"));
            s.push_str(&format!("verdict: {}\n", if pass { "pass" } else { "fail" }));
            Ok(CmdOut::checked(s, pass))
        }
        Err(AnalysisError::UnsupportedClass(_)) => {
            s.push_str("width_check: skipped (no order-optimality theorem for this class)\n");
            Ok(CmdOut::ok(s))
        }
        Err(other) => Err(other.into()),
    }
}

/// `rank`: rank and independence of one subset, answered by walking the
/// independence ZDD, with the number of nodes each walk visited.
pub fn cmd_rank(spec_path: &Path, set: Option<&str>) -> Result<CmdOut, CliError> {
    let loaded = spec::load(spec_path)?;
    let (m, order) = loaded.matroid()?;
    let limit = ground_limit()?;
    check_ground_limit(m.n(), limit)?;
    let mut store = Store::new(order);
    let diagram = build_dd_limited(&m, &mut store, BuildTarget::zdd_independents(), limit)?;

    let names: Vec<&str> = set
        .unwrap_or("")
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let mask = store.order().mask_of(names)?;

    let rank = zdd_rank(&store, &diagram, mask)?;
    let independent = zdd_independence(&store, &diagram, mask)?;

    let mut s = String::new();
    s.push_str(&format!("set: {}\n", store.order().format_subset(mask)));
    s.push_str(&format!("rank: {}\n", rank.value));
    s.push_str(&format!("rank_visits: {}\n", rank.visits));
    s.push_str(&format!("independent: {}\n", if independent.value { "yes" } else { "no" }));
    s.push_str(&format!("independence_visits: {}\n", independent.visits));
    Ok(CmdOut::ok(s))
}
