//! `steen`: command-line front end for the workbench.
//!
//! Exit status: 0 when everything requested holds, 1 when a check fails,
//! 2 on usage, parse or precondition errors.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use steen_core::catalogue::{get_module, names, recipe};
use steen_core::milnor::{set_degree_cap, SubalgebraSpec};
use steen_core::module::{compare_range, from_json, trivial_module, parse_module, to_json, write_module, FiniteModule};
use steen_core::obstruction::{obstruction_report, Conclusion};
use steen_core::resolution::{emit_chart, ext_chart, minimal_resolution, ChartFormat};
use steen_core::suite::{run_criterion, run_suite};
use steen_core::unstable::{bso3, bsu3, parse_poly_module, truncate_quotient};

#[derive(Parser)]
#[command(name = "steen", version, about = "Steenrod algebra and Joker module workbench")]
struct Cli {
    /// Degree cap for computations in the whole Steenrod algebra.
    #[arg(long, global = true, env = "STEEN_DEGREE_CAP", default_value_t = 64)]
    degree_cap: u32,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "STEEN_THREADS", default_value_t = 0)]
    threads: usize,
    /// Directory for files written with a relative `--out`.
    #[arg(long, global = true, env = "STEEN_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,
    /// Print modules as JSON instead of the text format.
    #[arg(long, global = true, env = "STEEN_JSON")]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalogue names with their recipes.
    List,
    /// Print a catalogue module (or module file) as a table.
    Show { module: String },
    /// Check a module file against the Adem relations.
    Validate { file: PathBuf },
    /// The dual module.
    Dual { module: String },
    /// The k-fold double.
    Double { module: String, k: u32 },
    /// Tensor product with the Cartan formula.
    Tensor { left: String, right: String },
    /// Minimal resolution, printed as differentials.
    Resolve {
        module: String,
        #[command(flatten)]
        range: Range,
    },
    /// Ext chart of a minimal resolution.
    Chart {
        module: String,
        #[command(flatten)]
        range: Range,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, env = "STEEN_FORMAT", default_value_t = Format::Text)]
        format: Format,
    },
    /// Truncated quotient of a characteristic-class algebra, compared with
    /// the matching Joker.
    Unstable {
        /// `bso3`, `bsu3`, or a file with `polygen`/`rel` lines.
        which: String,
        /// Top degree kept (defaults: 6 for bso3, 12 for bsu3).
        #[arg(long)]
        cap: Option<u32>,
        /// Algebra for the action (defaults: A(1) for bso3, A(2) for bsu3).
        #[arg(long)]
        algebra: Option<String>,
    },
    /// The non-realizability report for Joker(n).
    Obstruction {
        n: u32,
        /// Only the machine-readable term records.
        #[arg(long)]
        records: bool,
    },
    /// Run the verification suite.
    VerifySuite {
        #[arg(value_enum)]
        suite: Suite,
        /// Run only these criteria (e.g. `--only 4 --only C05`).
        #[arg(long)]
        only: Vec<String>,
    },
}

#[derive(clap::Args)]
struct Range {
    /// `A(n)` or `A`; defaults to the module's own algebra.
    #[arg(long, env = "STEEN_ALGEBRA")]
    algebra: Option<String>,
    #[arg(long, env = "STEEN_SMAX", default_value_t = 8)]
    smax: u32,
    /// Top internal degree; defaults to 20 above the bottom class.
    #[arg(long, env = "STEEN_TMAX")]
    tmax: Option<i32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    };
    // a closed pipe (`steen list | head`) is not an error
    let mut stdout = io::stdout().lock();
    match stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        _ => code,
    }
}

fn run(cli: Cli, o: &mut String) -> Result<ExitCode> {
    set_degree_cap(cli.degree_cap);
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .context("configuring worker threads")?;
    }
    let json = cli.json;
    let print_module = |o: &mut String, m: &FiniteModule| {
        if json {
            o.push_str(&to_json(m));
            o.push('\n');
        } else {
            o.push_str(&write_module(m));
        }
    };
    match &cli.command {
        Command::List => {
            for name in names() {
                writeln!(o, "{name:<12} {}", recipe(&name)?)?;
            }
        }
        Command::Show { module } => {
            let m = load(module)?;
            if cli.json {
                writeln!(o, "{}", to_json(&m))?;
            } else {
                write!(o, "{m}")?;
            }
        }
        Command::Validate { file } => {
            let m = read_module_file(file)?;
            let report = m.validate();
            writeln!(o, "{report}")?;
            if !report.valid {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Dual { module } => print_module(o, &load(module)?.dualize()?),
        Command::Double { module, k } => print_module(o, &load(module)?.double(*k)?),
        Command::Tensor { left, right } => print_module(o, &load(left)?.tensor(&load(right)?)?),
        Command::Resolve { module, range } => {
            let m = load(module)?;
            let (spec, s_max, t_max) = range.resolve(&m)?;
            let r = minimal_resolution(spec, &m, s_max, t_max)?;
            write!(o, "{}", r.dump())?;
        }
        Command::Chart {
            module,
            range,
            out,
            format,
        } => {
            let m = load(module)?;
            let (spec, s_max, t_max) = range.resolve(&m)?;
            let r = minimal_resolution(spec, &m, s_max, t_max)?;
            let format = match format {
                Format::Text => ChartFormat::Text,
                Format::Svg => ChartFormat::Svg,
            };
            let chart = emit_chart(&ext_chart(&r), format);
            match out {
                Some(path) => {
                    let path = match (&cli.output_dir, path.is_relative()) {
                        (Some(dir), true) => dir.join(path),
                        _ => path.clone(),
                    };
                    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
                    }
                    fs::write(&path, chart).with_context(|| format!("writing {}", path.display()))?;
                }
                None => write!(o, "{chart}")?,
            }
        }
        Command::Unstable { which, cap, algebra } => return unstable(o, which, *cap, algebra.as_deref()),
        Command::Obstruction { n, records } => {
            let report = obstruction_report(*n)?;
            if *records {
                write!(o, "{}", report.records())?;
            } else {
                write!(o, "{report}")?;
            }
            if report.conclusion != Conclusion::NonRealizable {
                return Ok(ExitCode::from(1));
            }
        }
        Command::VerifySuite { suite: Suite::Paper, only } => {
            let results = if only.is_empty() {
                run_suite()
            } else {
                let mut out = Vec::new();
                for id in only {
                    let n: u32 = id
                        .trim_start_matches(['C', 'c'])
                        .parse()
                        .with_context(|| format!("bad criterion `{id}`"))?;
                    out.push(run_criterion(n).with_context(|| format!("no criterion {id}"))?);
                }
                out
            };
            for c in &results {
                writeln!(o, "{c}")?;
            }
            let passed = results.iter().filter(|c| c.passed).count();
            writeln!(o, "{passed}/{} passed", results.len())?;
            if passed != results.len() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

impl Range {
    fn resolve(&self, m: &FiniteModule) -> Result<(SubalgebraSpec, u32, i32)> {
        let spec = match &self.algebra {
            Some(a) => a.parse()?,
            None => m.algebra(),
        };
        let t_max = self.tmax.unwrap_or(m.min_degree().unwrap_or(0) + 20);
        Ok((spec, self.smax, t_max))
    }
}

fn unstable(o: &mut String, which: &str, cap: Option<u32>, algebra: Option<&str>) -> Result<ExitCode> {
    let (poly, default_cap, default_spec, reference) = match which {
        "bso3" => (bso3(), 6, SubalgebraSpec::An(1), Some(("joker0", 2))),
        "bsu3" => (bsu3(), 12, SubalgebraSpec::An(2), Some(("joker(2)0", 4))),
        path => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            let p = parse_poly_module(&text)?;
            let cap = p.degree_cap();
            (p, cap, SubalgebraSpec::full(), None)
        }
    };
    let cap = cap.unwrap_or(default_cap);
    let spec = match algebra {
        Some(a) => a.parse()?,
        None => default_spec,
    };
    let m = truncate_quotient(&poly, spec, cap)?;
    write!(o, "{m}")?;
    if let Some((name, shift)) = reference {
        let target = get_module(name)?.shift(shift);
        let lo = target.min_degree().unwrap_or(0);
        let hi = (cap as i32).min(target.max_degree().unwrap_or(0));
        let verdict = compare_range(&m, &target, lo, hi)?;
        let ok = verdict.is_isomorphic();
        writeln!(o, 
            "degrees {lo}..{hi}: {} {name}[{shift}]",
            if ok { "isomorphic to" } else { "NOT isomorphic to" }
        )?;
        if !ok {
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// `sphere` (the unit module over A), a catalogue name, or a path to a module file (`.json` or text).
fn load(spec: &str) -> Result<FiniteModule> {
    if spec == "sphere" {
        return Ok(trivial_module(SubalgebraSpec::full(), 0).renamed("sphere"));
    }
    let path = Path::new(spec);
    if path.exists() {
        let m = read_module_file(path)?;
        return m.validated().with_context(|| format!("{spec} is not a module"));
    }
    match get_module(spec) {
        Ok(m) => Ok(m),
        Err(e) => bail!("{e} (and no file named `{spec}`)"),
    }
}

fn read_module_file(path: &Path) -> Result<FiniteModule> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let m = if path.extension().is_some_and(|e| e == "json") {
        from_json(&text)
    } else {
        parse_module(&text)
    }
    .with_context(|| format!("parsing {}", path.display()))?;
    Ok(m)
}
