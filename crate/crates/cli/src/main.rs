//! `latslice` command-line interface: exact lattice point counts, sections,
//! projections, minima, and the inequality check/sweep/fuzz harness.
//!
//! Exit codes: 0 when every verdict holds or is inapplicable, 2 when any
//! check fails, 1 on usage or configuration errors.

mod config;
mod run;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::Config;

#[derive(Parser)]
#[command(name = "latslice", version, about = "Exact lattice point counting and slicing-inequality harness")]
struct Cli {
    /// Key-value config file; command-line flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Count lattice points of a body.
    Count(CommonArgs),
    /// Count one hyperplane section, or scan all levels of a normal.
    Section(CommonArgs),
    /// Count the lattice projection and the projected lattice points.
    Project(CommonArgs),
    /// Successive minima and a gauge-short basis.
    Minima(CommonArgs),
    /// Polar body.
    Polar(CommonArgs),
    /// Run one named inequality check.
    Check {
        check_id: String,
        #[command(flatten)]
        args: CommonArgs,
    },
    /// Run a check across parameter ranges (k/h/m/seed), in parallel.
    Sweep {
        check_id: String,
        #[command(flatten)]
        args: CommonArgs,
    },
    /// Random search for extremal ratio instances.
    Fuzz {
        target: String,
        #[command(flatten)]
        args: CommonArgs,
    },
    /// Exploratory ball slicing-ratio scan over a lattice.
    ScanSlicing(CommonArgs),
    /// Print the effective configuration in canonical key-value form.
    DumpConfig(CommonArgs),
}

#[derive(Args, Default)]
struct CommonArgs {
    /// Body family: T_k, K_h, Q_k, cube, shrunk_cube, cross_h, slab,
    /// cube_section_u, random_sym.
    #[arg(long)]
    family: Option<String>,
    /// Ambient dimension (default 3 for families).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "k")]
    k: Option<i64>,
    #[arg(long = "h")]
    h: Option<i64>,
    #[arg(long = "m")]
    m: Option<i64>,
    /// Inclusive sweep range `a..b` for k.
    #[arg(long, value_name = "A..B")]
    k_range: Option<String>,
    #[arg(long, value_name = "A..B")]
    h_range: Option<String>,
    #[arg(long, value_name = "A..B")]
    m_range: Option<String>,
    #[arg(long, value_name = "A..B")]
    seed_range: Option<String>,
    /// Comma-separated radii (vol_approx, scan-slicing).
    #[arg(long = "r", value_name = "R1,R2,...")]
    r: Option<String>,
    /// Integer normal vector, comma-separated.
    #[arg(long, value_name = "C1,C2,...")]
    normal: Option<String>,
    /// Section level (omit to scan all levels).
    #[arg(long)]
    level: Option<i64>,
    /// Integer direction for projections, comma-separated.
    #[arg(long = "v", value_name = "C1,C2,...")]
    v: Option<String>,
    /// Rational translate, comma-separated `p/q` entries.
    #[arg(long = "t", value_name = "Q1,Q2,...")]
    t: Option<String>,
    /// Dimension of the coordinate subspace span{e1..e_k} (brunn).
    #[arg(long)]
    subspace_dim: Option<usize>,
    /// Sup-norm bound for normal searches (default 3).
    #[arg(long)]
    normal_bound: Option<i64>,
    /// Cap for brute-force facet/vertex enumeration (default 6).
    #[arg(long)]
    dim_cap: Option<usize>,
    /// Seed for random families; mandatory for them.
    #[arg(long)]
    seed: Option<u64>,
    /// Fuzz budget / trial count.
    #[arg(long)]
    budget: Option<u64>,
    /// Output path (default stdout).
    #[arg(long)]
    out: Option<String>,
    /// Output format: json (JSON-lines) or csv.
    #[arg(long)]
    format: Option<String>,
    /// Worker threads for sweeps (default 1).
    #[arg(long)]
    jobs: Option<usize>,
    /// Vertex list literal: `(1,0);(0,1);...` with rational entries.
    #[arg(long)]
    body_vertices: Option<String>,
    /// Half-space rows: `(a1,a2|b);...` meaning `a . x <= b`.
    #[arg(long)]
    body_halfspaces: Option<String>,
    /// Centered ball with this rational squared radius (needs --n).
    #[arg(long)]
    body_ball: Option<String>,
    /// Lattice: `Z<n>`, `D4`, or a `(col);(col)` basis literal.
    #[arg(long)]
    lattice_basis: Option<String>,
}

impl CommonArgs {
    /// Layer these flags over `cfg` (flags win).
    fn apply(&self, cfg: &mut Config) -> Result<(), String> {
        let mut set = |key: &str, value: Option<String>| -> Result<(), String> {
            if let Some(v) = value {
                cfg.set(key, &v)?;
            }
            Ok(())
        };
        set("family", self.family.clone())?;
        set("n", self.n.map(|v| v.to_string()))?;
        set("k", self.k.map(|v| v.to_string()))?;
        set("h", self.h.map(|v| v.to_string()))?;
        set("m", self.m.map(|v| v.to_string()))?;
        set("k_range", self.k_range.clone())?;
        set("h_range", self.h_range.clone())?;
        set("m_range", self.m_range.clone())?;
        set("seed_range", self.seed_range.clone())?;
        set("r", self.r.clone())?;
        set("normal", self.normal.clone())?;
        set("level", self.level.map(|v| v.to_string()))?;
        set("v", self.v.clone())?;
        set("t", self.t.clone())?;
        set("subspace_dim", self.subspace_dim.map(|v| v.to_string()))?;
        set("normal_bound", self.normal_bound.map(|v| v.to_string()))?;
        set("dim_cap", self.dim_cap.map(|v| v.to_string()))?;
        set("seed", self.seed.map(|v| v.to_string()))?;
        set("budget", self.budget.map(|v| v.to_string()))?;
        set("out", self.out.clone())?;
        set("format", self.format.clone())?;
        set("jobs", self.jobs.map(|v| v.to_string()))?;
        set("body_vertices", self.body_vertices.clone())?;
        set("body_halfspaces", self.body_halfspaces.clone())?;
        set("body_ball", self.body_ball.clone())?;
        set("lattice_basis", self.lattice_basis.clone())?;
        Ok(())
    }
}

fn build_config(cli: &Cli) -> Result<Config, String> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("config {}: {e}", path.display()))?;
            Config::from_kv(&text)?
        }
        None => Config::default(),
    };
    match &cli.command {
        None => {
            if cfg.command.is_empty() {
                return Err("field command: give a subcommand or a config with `command`".into());
            }
        }
        Some(cmd) => {
            let (name, args) = match cmd {
                Command::Count(a) => ("count", a),
                Command::Section(a) => ("section", a),
                Command::Project(a) => ("project", a),
                Command::Minima(a) => ("minima", a),
                Command::Polar(a) => ("polar", a),
                Command::Check { check_id, args } => {
                    cfg.check_id = Some(check_id.clone());
                    ("check", args)
                }
                Command::Sweep { check_id, args } => {
                    cfg.check_id = Some(check_id.clone());
                    ("sweep", args)
                }
                Command::Fuzz { target, args } => {
                    cfg.target = Some(target.clone());
                    ("fuzz", args)
                }
                Command::ScanSlicing(a) => ("scan-slicing", a),
                Command::DumpConfig(a) => ("", a),
            };
            // dump-config keeps whatever command the file declared
            if !name.is_empty() {
                cfg.command = name.to_string();
            }
            args.apply(&mut cfg)?;
        }
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    if matches!(cli.command, Some(Command::DumpConfig(_))) {
        print!("{}", cfg.to_kv());
        return ExitCode::SUCCESS;
    }
    let out = match run::run(&cfg) {
        Ok(out) => out,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let emit = |out: &run::RunOutput| -> Result<(), String> {
        match (cfg.format_or_default(), &cfg.out) {
            ("json", None) => {
                let stdout = std::io::stdout();
                run::write_json_lines(&mut stdout.lock(), out).map_err(|e| e.to_string())
            }
            ("json", Some(path)) => {
                let mut f = fs::File::create(path).map_err(|e| format!("out {path}: {e}"))?;
                run::write_json_lines(&mut f, out).map_err(|e| e.to_string())
            }
            ("csv", None) => run::write_csv(std::io::stdout().lock(), out),
            ("csv", Some(path)) => {
                let f = fs::File::create(path).map_err(|e| format!("out {path}: {e}"))?;
                run::write_csv(f, out)
            }
            (other, _) => Err(format!("field format: unknown format {other:?}")),
        }
    };
    if let Err(msg) = emit(&out) {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    if out.fails > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
