//! Command-line front end: builds operators, runs named check suites, prints
//! operators and kernel tables, emits JSON or text reports.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.

mod ops;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ops::{build_expr, build_operator, BuildCtx, DynOp};
use serde::Deserialize;
use spinfold_core::fold::{
    fold, fold_double, table_from_json_exact, table_from_json_float, FoldingConstants,
};
use spinfold_core::ino::Kernel;
use spinfold_core::scalar::Exact;
use spinfold_core::suite::{run_suite, Boundary, Field, Model, SuiteConfig, SuiteReport};
use spinfold_core::verify::{self, GridSpec, SearchModel};
use spinfold_core::{Error, Geometry, Rows};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "spinfold",
    about = "Spin-chain folding maps, boundary charges and symmetry verification",
    version
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Default, Clone)]
struct GlobalOpts {
    /// TOML config file; command-line flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Model family.
    #[arg(long, global = true, value_enum)]
    model: Option<ModelArg>,
    /// Boundary under test.
    #[arg(long, global = true, value_enum)]
    boundary: Option<BoundaryArg>,
    /// Chain size parameter (full line has 2L sites, half line L).
    #[arg(long = "L", global = true)]
    l: Option<u32>,
    /// Coupling λ, `p/q` or decimal.
    #[arg(long, global = true)]
    lambda: Option<String>,
    /// Boundary field μ, `p/q` or decimal.
    #[arg(long, global = true)]
    mu: Option<String>,
    /// Inverse length scale κ of the long-range kernels.
    #[arg(long, global = true)]
    kappa: Option<f64>,
    /// Edge window (sites counted as truncation edge).
    #[arg(long, global = true)]
    edge_window: Option<u32>,
    /// Float tolerance for identity checks.
    #[arg(long, global = true)]
    tol_identity: Option<f64>,
    /// Float tolerance for long-range edge residuals.
    #[arg(long, global = true)]
    tol_edge: Option<f64>,
    /// Coefficient field.
    #[arg(long, global = true, value_enum)]
    field: Option<FieldArg>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report format.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Double-row family for operator ids (xxx or ino).
    #[arg(long, global = true, value_enum)]
    kind: Option<KindArg>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum ModelArg {
    Xxx,
    Ino,
    DoubleXxx,
    DoubleIno,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum BoundaryArg {
    Bulk,
    Magnetic,
    Open,
    Diagonal,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum FieldArg {
    Exact,
    Float,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum FormatArg {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum KindArg {
    Xxx,
    Ino,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the named check suite for the selected model and boundary.
    Verify {
        /// Check-id filter ("all" runs everything); "search" additionally
        /// runs the folding-constant rediscovery.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Fold a full-line operator onto the half line and print it.
    Fold {
        /// Operator id (see `print --help` for the registry).
        operator: Vec<String>,
        /// Constant table preset: xxx-magnetic, all-ones, ino-magnetic[+|-].
        #[arg(long, conflicts_with = "table")]
        preset: Option<String>,
        /// JSON file with an explicit constant table.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Compare against `[scalar*]<operator-id>` and print the difference report.
        #[arg(long)]
        diff: Option<String>,
        /// Accept a leftover multiple of the identity in --diff.
        #[arg(long)]
        allow_constant: bool,
    },
    /// Run one algebra-relation suite.
    Relations {
        #[arg(value_enum)]
        algebra: AlgebraArg,
    },
    /// Print an operator with term count, support histogram and hermiticity.
    Print {
        operator: Vec<String>,
        /// Also dump the dense matrix (state dimension up to 16).
        #[arg(long)]
        matrix: bool,
    },
    /// Dump the long-range kernels (z, p, w, w', w'') as CSV.
    Kernels {
        #[arg(long, default_value_t = -8, allow_hyphen_values = true)]
        zmin: i64,
        #[arg(long, default_value_t = 8, allow_hyphen_values = true)]
        zmax: i64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum AlgebraArg {
    Yangian,
    TwistedPlus,
    TwistedMinus,
    Diagonal,
}

/// TOML mirror of the run configuration.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    model: Option<String>,
    boundary: Option<String>,
    l: Option<u32>,
    lambda: Option<String>,
    mu: Option<String>,
    kappa: Option<f64>,
    edge_window: Option<u32>,
    tol_identity: Option<f64>,
    tol_edge: Option<f64>,
    field: Option<String>,
    seed: Option<u64>,
    format: Option<String>,
    kind: Option<String>,
}

/// Fully resolved configuration, after file merge and defaults.
struct RunCfg {
    model: Model,
    boundary: Boundary,
    l: u32,
    lambda: String,
    mu: String,
    kappa: Option<f64>,
    edge_window: u32,
    tol_identity: f64,
    tol_edge: f64,
    field: Field,
    seed: u64,
    format: FormatArg,
    kind: Option<KindArg>,
    threads: usize,
}

fn parse_enum<T: ValueEnum>(s: &str, what: &str) -> Result<T, Error> {
    T::from_str(s, true).map_err(|_| Error::Parse(format!("bad {what} `{s}` in config file")))
}

fn resolve_config(opts: &GlobalOpts) -> Result<RunCfg, Error> {
    let file: FileConfig = match &opts.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            toml::from_str(&text).map_err(|e| Error::Parse(format!("bad config file: {e}")))?
        }
        None => FileConfig::default(),
    };
    let model = match (&opts.model, &file.model) {
        (Some(m), _) => *m,
        (None, Some(s)) => parse_enum::<ModelArg>(s, "model")?,
        _ => ModelArg::Xxx,
    };
    let boundary = match (&opts.boundary, &file.boundary) {
        (Some(b), _) => *b,
        (None, Some(s)) => parse_enum::<BoundaryArg>(s, "boundary")?,
        _ => BoundaryArg::Bulk,
    };
    let field = match (&opts.field, &file.field) {
        (Some(f), _) => *f,
        (None, Some(s)) => parse_enum::<FieldArg>(s, "field")?,
        _ => {
            if matches!(model, ModelArg::Ino | ModelArg::DoubleIno) {
                FieldArg::Float
            } else {
                FieldArg::Exact
            }
        }
    };
    let format = match (&opts.format, &file.format) {
        (Some(f), _) => *f,
        (None, Some(s)) => parse_enum::<FormatArg>(s, "format")?,
        _ => FormatArg::Text,
    };
    let kind = match (&opts.kind, &file.kind) {
        (Some(k), _) => Some(*k),
        (None, Some(s)) => Some(parse_enum::<KindArg>(s, "kind")?),
        _ => None,
    };
    let threads = std::env::var("SPINFOLD_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        });
    Ok(RunCfg {
        model: match model {
            ModelArg::Xxx => Model::Xxx,
            ModelArg::Ino => Model::Ino,
            ModelArg::DoubleXxx => Model::DoubleXxx,
            ModelArg::DoubleIno => Model::DoubleIno,
        },
        boundary: match boundary {
            BoundaryArg::Bulk => Boundary::Bulk,
            BoundaryArg::Magnetic => Boundary::Magnetic,
            BoundaryArg::Open => Boundary::Open,
            BoundaryArg::Diagonal => Boundary::Diagonal,
        },
        l: opts.l.or(file.l).unwrap_or(4),
        lambda: opts
            .lambda
            .clone()
            .or(file.lambda)
            .unwrap_or_else(|| "1".to_string()),
        mu: opts
            .mu
            .clone()
            .or(file.mu)
            .unwrap_or_else(|| "0".to_string()),
        kappa: opts.kappa.or(file.kappa),
        edge_window: opts.edge_window.or(file.edge_window).unwrap_or(2),
        tol_identity: opts
            .tol_identity
            .or(file.tol_identity)
            .unwrap_or(verify::TOL_IDENTITY),
        tol_edge: opts.tol_edge.or(file.tol_edge).unwrap_or(verify::TOL_EDGE),
        field: match field {
            FieldArg::Exact => Field::Exact,
            FieldArg::Float => Field::Float,
        },
        seed: opts.seed.or(file.seed).unwrap_or(0),
        format,
        kind,
        threads,
    })
}

impl RunCfg {
    fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            model: self.model,
            boundary: self.boundary,
            l: self.l,
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
            kappa: self.kappa,
            field: self.field,
            edge_window: self.edge_window,
            tol_identity: self.tol_identity,
            tol_edge: self.tol_edge,
            seed: self.seed,
        }
    }

    fn build_ctx(&self) -> BuildCtx {
        let double_ino = match self.kind {
            Some(KindArg::Ino) => true,
            Some(KindArg::Xxx) => false,
            None => self.model == Model::DoubleIno || self.model == Model::Ino,
        };
        BuildCtx {
            l: self.l,
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
            kappa: self.kappa,
            exact: self.field == Field::Exact,
            double_ino,
        }
    }
}

fn print_report(report: &SuiteReport, format: FormatArg) {
    match format {
        FormatArg::Json => {
            for check in &report.checks {
                println!("{}", serde_json::to_string(check).expect("serializable"));
            }
        }
        FormatArg::Text => {
            let width = report
                .checks
                .iter()
                .map(|c| c.check.len())
                .max()
                .unwrap_or(10);
            for c in &report.checks {
                let verdict = if c.pass { "ok" } else { "FAILED" };
                let expected = if c.expected_fail {
                    " (expected-fail)"
                } else {
                    ""
                };
                let max_i = match &c.max_interior {
                    serde_json::Value::String(s) => s.clone(),
                    v => format!("{v}"),
                };
                let constant = c
                    .constant
                    .map(|(re, im)| format!(" const=({re},{im})"))
                    .unwrap_or_default();
                let witness = c
                    .witness
                    .as_ref()
                    .map(|w| format!(" witness: {w}"))
                    .unwrap_or_default();
                println!(
                    "{verdict:6} {:width$}  {:13} max_interior={max_i}{constant}{witness}{expected}",
                    c.check, c.status,
                );
            }
            let n_pass = report.checks.iter().filter(|c| c.pass).count();
            println!("{n_pass}/{} checks passed", report.checks.len());
        }
    }
}

fn load_table_arg(
    cfg: &RunCfg,
    preset: &Option<String>,
    table: &Option<PathBuf>,
) -> Result<serde_json::Value, Error> {
    if let Some(path) = table {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        return serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("bad table file: {e}")));
    }
    let name = preset.as_deref().unwrap_or("all-ones");
    let lambda = Exact::real(spinfold_core::scalar::parse_rational(&cfg.lambda)?);
    let mu = Exact::real(spinfold_core::scalar::parse_rational(&cfg.mu)?);
    let t = match name {
        "all-ones" => FoldingConstants::<Exact>::all_ones(),
        "xxx-magnetic" => FoldingConstants::xxx_magnetic(&lambda, &mu)?,
        "ino-magnetic" | "ino-magnetic+" => FoldingConstants::<Exact>::ino_magnetic(true),
        "ino-magnetic-" => FoldingConstants::<Exact>::ino_magnetic(false),
        other => return Err(Error::Parse(format!("unknown preset `{other}`"))),
    };
    Ok(t.to_json())
}

fn fold_dyn(op: &DynOp, table_json: &serde_json::Value) -> Result<DynOp, Error> {
    Ok(match op {
        DynOp::Exact(o) => {
            let t = table_from_json_exact(table_json)?;
            if o.chain().rows == Rows::Two {
                DynOp::Exact(fold_double(o, &t)?)
            } else {
                DynOp::Exact(fold(o, &t)?)
            }
        }
        DynOp::Float(o) => {
            let t = table_from_json_float(table_json)?;
            if o.chain().rows == Rows::Two {
                DynOp::Float(fold_double(o, &t)?)
            } else {
                DynOp::Float(fold(o, &t)?)
            }
        }
    })
}

fn cmd_verify(cfg: &RunCfg, suite: &str) -> Result<bool, Error> {
    if suite == "search" {
        return cmd_search(cfg);
    }
    let filter = if suite == "all" { None } else { Some(suite) };
    let report = run_suite(&cfg.suite_config(), filter, cfg.threads)?;
    print_report(&report, cfg.format);
    Ok(report.all_pass())
}

fn cmd_search(cfg: &RunCfg) -> Result<bool, Error> {
    use num_traits::ToPrimitive;
    let lambda = spinfold_core::scalar::parse_rational(&cfg.lambda)?
        .to_f64()
        .unwrap_or(1.0);
    let mu = spinfold_core::scalar::parse_rational(&cfg.mu)?
        .to_f64()
        .unwrap_or(1.0);
    let (model, free, grid, mu_eff) = match cfg.model {
        Model::Xxx => (
            SearchModel::XxxMagnetic,
            vec![verify::parse_k_entry("z+")?],
            GridSpec {
                min: -2.0,
                max: 2.0,
                step: 0.01,
            },
            if mu == 0.0 { lambda } else { mu },
        ),
        Model::Ino => (
            SearchModel::InoMagnetic,
            vec![verify::parse_k_entry("+-")?, verify::parse_k_entry("-+")?],
            GridSpec {
                min: -3.0,
                max: 3.0,
                step: 0.25,
            },
            mu,
        ),
        _ => {
            return Err(Error::InvalidParameter(
                "constant search is defined for the single-row models".into(),
            ))
        }
    };
    let kappa = cfg.kappa.unwrap_or(1.0);
    let outcome = verify::search_folding_constants(
        model,
        cfg.l.min(4),
        lambda,
        mu_eff,
        kappa,
        &free,
        cfg.edge_window,
        grid,
    )?;
    match cfg.format {
        FormatArg::Json => println!("{}", serde_json::to_string(&outcome).expect("serializable")),
        FormatArg::Text => {
            println!("free entries: {}", outcome.free.join(", "));
            for c in outcome.candidates.iter().take(10) {
                let vals: Vec<String> = c.values.iter().map(|v| format!("{v:+.3}")).collect();
                println!("  ({})  residual {:.3e}", vals.join(", "), c.residual);
            }
        }
    }
    Ok(true)
}

fn cmd_relations(cfg: &RunCfg, algebra: AlgebraArg) -> Result<bool, Error> {
    // Relation suites are the `relations:`-prefixed checks of the matching
    // model/boundary suite.
    let mut sc = cfg.suite_config();
    sc.boundary = match algebra {
        AlgebraArg::Yangian => Boundary::Bulk,
        AlgebraArg::TwistedPlus => Boundary::Magnetic,
        AlgebraArg::TwistedMinus => Boundary::Open,
        AlgebraArg::Diagonal => Boundary::Diagonal,
    };
    match (algebra, sc.model) {
        (AlgebraArg::Diagonal, Model::Xxx) => sc.model = Model::DoubleXxx,
        (AlgebraArg::Diagonal, Model::Ino) => sc.model = Model::DoubleIno,
        (AlgebraArg::Diagonal, _) => {}
        (_, Model::DoubleXxx | Model::DoubleIno) => {
            return Err(Error::InvalidParameter(format!(
                "relations {algebra:?} needs a single-row model"
            )))
        }
        _ => {}
    }
    if sc.boundary == Boundary::Magnetic && sc.mu_f64()? == 0.0 {
        return Err(Error::InvalidParameter(
            "relations twisted-plus needs mu != 0".into(),
        ));
    }
    let report = run_suite(&sc, Some("relations:"), cfg.threads)?;
    print_report(&report, cfg.format);
    Ok(report.all_pass())
}

fn cmd_fold(
    cfg: &RunCfg,
    operator: &[String],
    preset: &Option<String>,
    table: &Option<PathBuf>,
    diff: &Option<String>,
    allow_constant: bool,
) -> Result<bool, Error> {
    let id = operator.join(" ");
    if id.is_empty() {
        return Err(Error::InvalidParameter("fold needs an operator id".into()));
    }
    let ctx = cfg.build_ctx();
    let op = build_operator(&ctx, &id)?;
    if op.chain().geometry != Geometry::FullLine {
        return Err(Error::WrongGeometry {
            expected: "a full-line operator to fold",
            got: op.chain(),
        });
    }
    let table_json = load_table_arg(cfg, preset, table)?;
    let folded = fold_dyn(&op, &table_json)?;
    println!("{}", folded.render(verify::TOL_REPORT));
    if let Some(expr) = diff {
        let rhs = build_expr(&ctx, expr)?;
        let report = match folded.sub(&rhs)? {
            DynOp::Exact(d) => verify::classify(&d, 0, cfg.tol_identity),
            DynOp::Float(d) => verify::classify(&d, 0, cfg.tol_identity),
        };
        let pass = matches!(
            report.status,
            verify::ResidualStatus::ExactZero | verify::ResidualStatus::ConstantOnly
        ) && (allow_constant || report.status == verify::ResidualStatus::ExactZero);
        match cfg.format {
            FormatArg::Json => {
                let json = serde_json::json!({
                    "check": format!("fold:{id} vs {expr}"),
                    "status": format!("{:?}", report.status),
                    "max_interior": report.max_interior,
                    "constant": report.constant,
                    "witness": report.witness,
                    "params": {"allow_constant": allow_constant},
                    "elapsed_ms": 0,
                });
                println!("{json}");
            }
            FormatArg::Text => {
                let c = report
                    .constant
                    .map(|(re, im)| format!(" constant=({re},{im})"))
                    .unwrap_or_default();
                println!("diff: {:?}{c}", report.status);
            }
        }
        return Ok(pass);
    }
    Ok(true)
}

fn cmd_print(cfg: &RunCfg, operator: &[String], matrix: bool) -> Result<bool, Error> {
    let id = operator.join(" ");
    if id.is_empty() {
        return Err(Error::InvalidParameter("print needs an operator id".into()));
    }
    let op = build_operator(&cfg.build_ctx(), &id)?;
    println!("{}", op.render(verify::TOL_REPORT));
    println!("terms: {}", op.n_terms());
    let hist: Vec<String> = op
        .support_histogram()
        .iter()
        .map(|(k, n)| format!("{k}-site: {n}"))
        .collect();
    println!(
        "support: {}",
        if hist.is_empty() {
            "empty".to_string()
        } else {
            hist.join(", ")
        }
    );
    println!("hermitian: {}", op.is_hermitian(cfg.tol_identity));
    if matrix {
        let dense = match &op {
            ops::DynOp::Exact(o) => spinfold_core::oracle::to_matrix_capped(o, 4)?,
            ops::DynOp::Float(o) => spinfold_core::oracle::to_matrix_capped(o, 4)?,
        };
        print!("{}", dense.ascii_dump());
    }
    Ok(true)
}

fn cmd_kernels(cfg: &RunCfg, zmin: i64, zmax: i64) -> Result<bool, Error> {
    let kappa = cfg
        .kappa
        .ok_or_else(|| Error::InvalidParameter("kernels needs --kappa".into()))?;
    let k = spinfold_core::ino::KernelSet { kappa };
    println!("z,p,w,w_prime,w_double_prime");
    for z in zmin..=zmax {
        let p = match k.eval(Kernel::P, z) {
            Ok(v) => format!("{v}"),
            Err(_) => String::new(),
        };
        println!(
            "{z},{p},{},{},{}",
            k.eval(Kernel::W, z).unwrap(),
            k.eval(Kernel::WPrime, z).unwrap(),
            k.eval(Kernel::WDoublePrime, z).unwrap()
        );
    }
    Ok(true)
}

fn run() -> Result<bool, Error> {
    let cli = Cli::parse();
    let cfg = resolve_config(&cli.opts)?;
    match &cli.cmd {
        Cmd::Verify { suite } => cmd_verify(&cfg, suite),
        Cmd::Fold {
            operator,
            preset,
            table,
            diff,
            allow_constant,
        } => cmd_fold(&cfg, operator, preset, table, diff, *allow_constant),
        Cmd::Relations { algebra } => cmd_relations(&cfg, *algebra),
        Cmd::Print { operator, matrix } => cmd_print(&cfg, operator, *matrix),
        Cmd::Kernels { zmin, zmax } => cmd_kernels(&cfg, *zmin, *zmax),
    }
}

fn main() -> ExitCode {
    // Die quietly on closed pipes (e.g. `spinfold ... | head`), like any
    // well-behaved filter.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
