use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use spgraph_core::oracle::{census, GraphClass, LabeledGraph};
use spgraph_core::ring::BigFloat;
use spgraph_core::series::{CoeffText, SeriesDoc};
use spgraph_core::systems::{
    c4_network_system, girth_network_system, solve_class, triangle_network_system, SeriesDomain,
    SystemSpec,
};
use spgraph_core::verify::{run_suite, Check, Suite, VerifyConfig, VerifyReport};

use crate::config::{read_input, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{emit, Document};
use crate::tables::{self, FamilyArg, LevelArg, SubgraphArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ClassArg {
    Triangle,
    C4,
    Girth,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    #[arg(long, value_enum)]
    pub class: Option<ClassArg>,
    /// Girth for `--class girth`.
    #[arg(long, required_if_eq("class", "girth"))]
    pub k: Option<u32>,
    /// Load the system from a JSON document instead.
    #[arg(long, value_name = "FILE", conflicts_with = "class")]
    pub system: Option<PathBuf>,
}

impl SystemArgs {
    pub fn spec(&self) -> CliResult<SystemSpec> {
        if let Some(path) = &self.system {
            return load_system(path);
        }
        match self.class {
            Some(ClassArg::Triangle) => Ok(triangle_network_system()),
            Some(ClassArg::C4) => Ok(c4_network_system()),
            Some(ClassArg::Girth) => {
                let k = self.k.ok_or_else(|| CliError::Usage("--class girth needs --k".into()))?;
                girth_network_system(k).map_err(|e| CliError::Usage(e.to_string()))
            }
            None => Err(CliError::Usage("one of --class or --system is required".into())),
        }
    }
}

pub fn load_system(path: &Path) -> CliResult<SystemSpec> {
    let text = read_input(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    SystemSpec::from_json(&value).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum RingArg {
    Rational,
    /// Binary floats at the working precision.
    Float,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// x-order of the output; defaults to `--series-order`.
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum, default_value_t = RingArg::Rational)]
    pub ring: RingArg,
}

#[derive(Debug, Serialize)]
struct SolveDoc {
    class: String,
    order: usize,
    ring: String,
    networks: BTreeMap<String, SeriesDoc>,
    series: BTreeMap<String, SeriesDoc>,
}

fn solve_with<R: CoeffText>(spec: &SystemSpec, order: usize) -> CliResult<SolveDoc> {
    let (nets, class) = solve_class(spec, &SeriesDomain::<R>::new(0), order)?;
    let networks: BTreeMap<String, SeriesDoc> = nets
        .names
        .iter()
        .zip(&nets.series)
        .map(|(n, s)| (n.clone(), s.truncate(order).to_doc()))
        .collect();
    let series: BTreeMap<String, SeriesDoc> = [
        ("B", &class.blocks.b),
        ("C_pointed", &class.c_pointed),
        ("C", &class.c),
        ("G", &class.g),
    ]
    .into_iter()
    .map(|(n, s)| (n.to_string(), s.truncate(order).to_doc()))
    .collect();
    let ring = series["B"].ring.clone();
    Ok(SolveDoc {
        class: spec.class.to_string(),
        order,
        ring,
        networks,
        series,
    })
}

pub fn solve(cfg: &RunConfig, args: &SolveArgs) -> CliResult<()> {
    let spec = args.system.spec()?;
    let order = args.order.unwrap_or(cfg.series_order);
    let doc = match args.ring {
        RingArg::Rational => solve_with::<BigRational>(&spec, order)?,
        RingArg::Float => solve_with::<BigFloat>(&spec, order)?,
    };
    let mut rows = Vec::new();
    for (group, map) in [("network", &doc.networks), ("series", &doc.series)] {
        for (name, s) in map {
            for (i, j, k, c) in &s.terms {
                rows.push(vec![
                    group.to_string(),
                    name.clone(),
                    i.to_string(),
                    j.to_string(),
                    k.to_string(),
                    c.clone(),
                ]);
            }
        }
    }
    emit(cfg, &Document::new(&doc, vec!["group", "name", "x", "y", "u", "coefficient"], rows))
}

pub fn dump_system(cfg: &RunConfig, args: &SystemArgs) -> CliResult<()> {
    let spec = args.spec()?;
    let json = spec.to_json();
    let rows = json["nodes"]
        .as_array()
        .map(|nodes| {
            nodes
                .iter()
                .enumerate()
                .map(|(i, n)| vec![i.to_string(), n.to_string()])
                .collect()
        })
        .unwrap_or_default();
    emit(cfg, &Document::new(&json, vec!["node", "expression"], rows))
}

#[derive(Debug, Clone, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: usize,
    /// `connectivity/family`, e.g. `two_connected/sp_triangle_free`.
    #[arg(long, default_value = "connected/sp")]
    pub class: String,
    /// Pattern graph as `n; a-b,c-d,...` with 1-based vertices.
    #[arg(long, default_value = "3; 1-2,1-3,2-3")]
    pub pattern: String,
}

pub fn run_census(cfg: &RunConfig, args: &CensusArgs) -> CliResult<()> {
    let class: GraphClass = args.class.parse().map_err(|e: spgraph_core::Error| CliError::Usage(e.to_string()))?;
    let pattern: LabeledGraph = args
        .pattern
        .parse()
        .map_err(|e: spgraph_core::Error| CliError::Usage(e.to_string()))?;
    let c = census(args.n, class, &pattern, cfg.oracle_n_cap).map_err(|e| match e {
        spgraph_core::Error::OracleCap { .. } | spgraph_core::Error::DisconnectedPattern => {
            CliError::Usage(e.to_string())
        }
        e => CliError::Numeric(e),
    })?;
    let rows = c
        .distribution
        .iter()
        .map(|(k, v)| vec![k.to_string(), v.to_string()])
        .collect();
    emit(cfg, &Document::new(&c, vec!["copies", "graphs"], rows))
}

pub fn constants(cfg: &RunConfig, family: FamilyArg) -> CliResult<()> {
    let report = tables::constants(family, &cfg.tolerances)?;
    emit(cfg, &report.document())?;
    verdict(report.failed())
}

pub fn moments(cfg: &RunConfig, level: LevelArg, subgraph: SubgraphArg) -> CliResult<()> {
    let report = tables::moments(level, subgraph, &cfg.tolerances)?;
    emit(cfg, &report.document())?;
    verdict(report.failed())
}

fn verdict(failed: usize) -> CliResult<()> {
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Verification { failed })
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Exact-coefficient, oracle and property checks (the default).
    #[arg(long, conflicts_with = "full")]
    pub fast: bool,
    /// Adds every numeric constant.
    #[arg(long)]
    pub full: bool,
    /// Use this triangle system in the exact expansion check.
    #[arg(long, value_name = "FILE")]
    pub triangle_system: Option<PathBuf>,
    /// Order of the girth-4 versus triangle-free comparison.
    #[arg(long, default_value_t = 20)]
    pub girth_order: usize,
    /// Random samples per algebraic property.
    #[arg(long, default_value_t = 24)]
    pub samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
}

fn check_line(c: &Check) -> String {
    format!(
        "[{:>3}] {:<52} {:<24} {:<24} {:<10} {}",
        c.criterion,
        c.name,
        c.expected,
        c.got,
        c.tolerance.map(|t| format!("{t:e}")).unwrap_or_else(|| "-".into()),
        if c.passed { "ok" } else { "FAIL" }
    )
}

fn report_document(report: &VerifyReport) -> Document {
    let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
    let rows = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.criterion.clone(),
                c.name.clone(),
                c.expected.clone(),
                c.got.clone(),
                opt(c.difference),
                opt(c.tolerance),
                c.passed.to_string(),
            ]
        })
        .collect();
    Document::new(
        report,
        vec!["criterion", "check", "expected", "got", "difference", "tolerance", "passed"],
        rows,
    )
}

pub fn verify(cfg: &RunConfig, args: &VerifyArgs) -> CliResult<()> {
    let suite = if args.full { Suite::Full } else { Suite::Fast };
    let vcfg = VerifyConfig {
        precision_digits: cfg.precision_digits,
        oracle_n_cap: cfg.oracle_n_cap,
        girth_order: args.girth_order,
        samples: args.samples,
        seed: args.seed,
        tolerances: cfg.tolerances.clone(),
        triangle_system: args.triangle_system.as_deref().map(load_system).transpose()?,
    };
    println!(
        "[{:>3}] {:<52} {:<24} {:<24} {:<10} status",
        "#", "check", "expected", "got", "tolerance"
    );
    let report = run_suite(suite, &vcfg, |checks| {
        for c in checks {
            println!("{}", check_line(c));
        }
    })?;
    let failed = report.failures().count();
    println!();
    for (criterion, ok) in report.by_criterion() {
        println!("criterion {criterion}: {}", if ok { "PASS" } else { "FAIL" });
    }
    if cfg.output.is_some() {
        emit(cfg, &report_document(&report))?;
    }
    verdict(failed)
}
