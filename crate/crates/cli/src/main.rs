use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num::{BigInt, ToPrimitive, Zero};
use stratvol::complex::{parse_chain, parse_complex, write_chain, write_complex, ComplexFile, DeltaComplex};
use stratvol::corner::{bijection_report, build_corner};
use stratvol::morse::{
    check_bound, count_trajectories, count_trajectories_recursive, parse_flow, validate_flow, FlowGraph, VolumeSpec,
    RATIO_TOLERANCE,
};
use stratvol::strat::{parse_poset, Stratification};
use stratvol::stratified::{check_conditions, essential_part, localize, Subcomplex};
use stratvol::{Error, Rational};

#[derive(Parser)]
#[command(
    name = "stratvol",
    version,
    about = "Essential stratified norms and broken-trajectory bounds"
)]
struct Cli {
    /// Report style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Count broken trajectories of maximal length, two independent ways.
    Trajectories { flow: PathBuf },
    /// Check that the mod-2 differential squares to zero, and optionally the
    /// Euler characteristic.
    ValidateFlow {
        flow: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        euler: Option<i64>,
    },
    /// Compare the number of broken trajectories with a simplicial volume.
    #[command(group(ArgGroup::new("volume").required(true).args(["simplicial_volume", "surface_genus", "hyperbolic_volume"])))]
    CheckBound {
        flow: PathBuf,
        /// Simplicial volume as an exact rational, e.g. `4` or `7/2`.
        #[arg(long)]
        simplicial_volume: Option<Rational>,
        /// Genus of a closed orientable surface.
        #[arg(long)]
        surface_genus: Option<u64>,
        /// Volume of a closed hyperbolic manifold; needs `--dim`.
        #[arg(long, requires = "dim")]
        hyperbolic_volume: Option<f64>,
        #[arg(long, requires = "hyperbolic_volume")]
        dim: Option<usize>,
    },
    /// Verify the essential-simplex / strata-chain bijection for the corner
    /// `[0,∞)ⁿ`.
    Corner {
        n: usize,
        /// Write the triangulated corner with its strata to this file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Essential stratified norm of a chain on a stratified complex.
    Norm { complex: PathBuf, chain: PathBuf },
    /// Replace a relative cycle by a cycle in the class `h` with the same
    /// essential part.
    Localize {
        complex: PathBuf,
        c_rel: PathBuf,
        h: PathBuf,
        /// `strata:<name>,...` or `simplices:<id>,...`; empty by default.
        #[arg(long)]
        subcomplex: Option<String>,
        /// Write the localized cycle to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Count strictly increasing chains in a poset.
    CountChains {
        poset: PathBuf,
        #[arg(long)]
        length: usize,
        /// Only chains whose labels are pairwise distinct.
        #[arg(long)]
        distinct_labels: bool,
    },
}

/// Exit status of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    Success,
    Failure,
}

/// A report: one record per line, rendered as prose or as `kind key=value`.
struct Report {
    format: Format,
    lines: Vec<String>,
}

impl Report {
    fn new(format: Format) -> Self {
        Self {
            format,
            lines: Vec::new(),
        }
    }

    fn line(&mut self, plain: impl Into<String>, kind: &str, fields: &[(&str, &dyn Display)]) {
        match self.format {
            Format::Plain => self.lines.push(plain.into()),
            Format::Records => {
                let mut out = kind.to_string();
                for (k, v) in fields {
                    out.push_str(&format!(" {k}={}", v.to_string().replace(' ', "_")));
                }
                self.lines.push(out);
            }
        }
    }

    fn print(&self) {
        for l in &self.lines {
            println!("{l}");
        }
    }
}

/// Failure before any verdict: unreadable input, bad syntax, invalid
/// arguments.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<Verdict, InputError>;

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), InputError> {
    std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: stratvol::Result<T>) -> Result<T, InputError> {
    r.map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_flow(path: &Path) -> Result<FlowGraph, InputError> {
    with_path(path, parse_flow(&read(path)?))
}

fn load_stratified(path: &Path) -> Result<(DeltaComplex, Stratification), InputError> {
    let ComplexFile { complex, strata } = with_path(path, parse_complex(&read(path)?))?;
    let strata = strata.ok_or_else(|| InputError(format!("{}: no `stratum` lines", path.display())))?;
    Ok((complex, strata))
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Success
    } else {
        Verdict::Failure
    }
}

fn trajectories(r: &mut Report, flow: &Path) -> Outcome {
    let g = load_flow(flow)?;
    let direct = count_trajectories(&g);
    let recursive = count_trajectories_recursive(&g);
    let mut tops: Vec<_> = direct.per_top.iter().zip(&recursive.per_top).collect();
    tops.sort_by(|a, b| a.0 .0.cmp(&b.0 .0));
    for ((name, d), (_, rec)) in tops {
        r.line(
            format!("from {name}: {d} (recursion {rec})"),
            "top",
            &[("point", name), ("direct", d), ("recursive", rec)],
        );
    }
    let agree = direct == recursive;
    r.line(
        format!("total {}", direct.total),
        "total",
        &[
            ("direct", &direct.total),
            ("recursive", &recursive.total),
            ("agree", &agree),
        ],
    );
    if !agree {
        r.line(
            format!("counting methods disagree: recursion gives {}", recursive.total),
            "mismatch",
            &[("recursive", &recursive.total)],
        );
    }
    Ok(verdict(agree))
}

fn validate(r: &mut Report, flow: &Path, euler: Option<i64>) -> Outcome {
    let g = load_flow(flow)?;
    let report = validate_flow(&g, euler);
    let mut witnesses = report.square_witnesses.clone();
    witnesses.sort();
    for (p, hits) in &witnesses {
        let hits = hits.join(",");
        r.line(
            format!("d2({p}) = {} (mod 2), expected 0", hits.replace(',', " + ")),
            "square-witness",
            &[("point", p), ("nonzero", &hits)],
        );
    }
    let square = if report.square_zero() { "ok" } else { "FAILED" };
    r.line(
        format!("d2 = 0: {square}"),
        "square",
        &[("passed", &report.square_zero())],
    );
    match report.expected_euler {
        Some(e) => r.line(
            format!(
                "euler characteristic {} (expected {e}): {}",
                report.euler_characteristic,
                if report.euler_matches() { "ok" } else { "FAILED" }
            ),
            "euler",
            &[
                ("value", &report.euler_characteristic),
                ("expected", &e),
                ("passed", &report.euler_matches()),
            ],
        ),
        None => r.line(
            format!("euler characteristic {}", report.euler_characteristic),
            "euler",
            &[("value", &report.euler_characteristic)],
        ),
    }
    r.line(
        if report.passed() { "PASS" } else { "FAIL" },
        "verdict",
        &[("passed", &report.passed())],
    );
    Ok(verdict(report.passed()))
}

/// Exact for small denominators, otherwise a decimal approximation.
fn show(q: &Rational) -> String {
    if q.denom() <= &BigInt::from(1_000_000) {
        q.to_string()
    } else {
        format!("{:.12}", q.to_f64().unwrap_or(f64::NAN))
    }
}

fn bound(r: &mut Report, flow: &Path, spec: VolumeSpec) -> Outcome {
    let g = load_flow(flow)?;
    let b = check_bound(&g, &spec)?;
    let status = if b.satisfied() { "SATISFIED" } else { "VIOLATED" };
    r.line(
        format!("broken trajectories {}", b.total),
        "total",
        &[("value", &b.total)],
    );
    let volume = show(&b.simplicial_volume);
    let tolerance = if b.tolerance.is_zero() {
        "0".to_string()
    } else {
        format!("{RATIO_TOLERANCE:e}")
    };
    let plain = if b.tolerance.is_zero() {
        format!("simplicial volume {volume}")
    } else {
        format!("simplicial volume {volume} (tolerance {tolerance})")
    };
    r.line(plain, "volume", &[("value", &volume), ("tolerance", &tolerance)]);
    r.line(status, "verdict", &[("status", &status)]);
    Ok(verdict(b.satisfied()))
}

fn corner(r: &mut Report, n: usize, export: Option<&Path>) -> Outcome {
    let c = build_corner(n)?;
    if let Some(path) = export {
        write(path, &write_complex(&c.complex, Some(&c.strata)))?;
    }
    let b = bijection_report(&c)?;
    for (s, strata) in &b.pairs {
        let names: Vec<&str> = strata.iter().map(|&t| c.strata.name(t)).collect();
        let id = c.complex.id(s.carrier());
        let vertices: Vec<String> = s
            .vertex_faces(&c.complex)
            .iter()
            .map(|&f| c.complex.id(f).to_string())
            .collect();
        let vertices = vertices.join(",");
        let chain = names.join(">");
        r.line(
            format!("essential on {id} at {vertices}: {}", names.join(" > ")),
            "essential",
            &[("carrier", &id), ("vertices", &vertices), ("strata", &chain)],
        );
    }
    r.line(
        format!("subdivided simplices {}", b.subdivided_simplices),
        "subdivided",
        &[("count", &b.subdivided_simplices)],
    );
    r.line(
        format!("essential {} = chains {}", b.essential_count, b.chain_count),
        "bijection",
        &[
            ("essential", &b.essential_count),
            ("chains", &b.chain_count),
            ("injective", &b.injective),
            ("surjective", &b.surjective),
            ("holds", &b.holds()),
        ],
    );
    Ok(verdict(b.holds()))
}

fn norm(r: &mut Report, complex: &Path, chain: &Path) -> Outcome {
    let (k, strata) = load_stratified(complex)?;
    let c = with_path(chain, parse_chain(&k, &read(chain)?))?;
    let report = check_conditions(&k, &c, &strata);
    for w in report.failures() {
        let carrier = k.id(w.simplex.carrier());
        r.line(
            format!(
                "{} condition fails on a simplex carried by {carrier}: {}",
                w.condition, w.detail
            ),
            "violation",
            &[
                ("condition", &w.condition),
                ("carrier", &carrier),
                ("detail", &w.detail),
            ],
        );
    }
    if !report.all_passed() {
        r.line("FAIL", "verdict", &[("passed", &false)]);
        return Ok(Verdict::Failure);
    }
    let essential = essential_part(&k, &c, &strata);
    r.line(
        format!("essential simplices {} of {}", essential.len(), c.len()),
        "essential",
        &[("count", &essential.len()), ("terms", &c.len())],
    );
    let value = essential.l1_norm();
    r.line(format!("essential norm {value}"), "norm", &[("value", &value)]);
    Ok(Verdict::Success)
}

fn parse_subcomplex(k: &DeltaComplex, strata: &Stratification, spec: Option<&str>) -> Result<Subcomplex, InputError> {
    let Some(spec) = spec else {
        return Ok(Subcomplex::empty());
    };
    let (kind, list) = spec
        .split_once(':')
        .ok_or_else(|| InputError(format!("`{spec}`: expected `strata:<names>` or `simplices:<ids>`")))?;
    let items: Vec<&str> = list.split(',').filter(|s| !s.is_empty()).collect();
    match kind {
        "strata" => Ok(Subcomplex::from_strata(k, strata, &items)?),
        "simplices" => {
            let cells = items
                .iter()
                .map(|id| k.resolve(id))
                .collect::<stratvol::Result<Vec<_>>>()?;
            Ok(Subcomplex::closure(k, cells))
        }
        _ => Err(InputError(format!("`{kind}`: expected `strata` or `simplices`"))),
    }
}

fn localize_cmd(
    r: &mut Report,
    complex: &Path,
    c_rel: &Path,
    h: &Path,
    subcomplex: Option<&str>,
    emit: Option<&Path>,
) -> Outcome {
    let (k, strata) = load_stratified(complex)?;
    let rel = with_path(c_rel, parse_chain(&k, &read(c_rel)?))?;
    let class = with_path(h, parse_chain(&k, &read(h)?))?;
    let a = parse_subcomplex(&k, &strata, subcomplex)?;
    let out = match localize(&k, &strata, &a, &rel, &class) {
        Ok(out) => out,
        Err(e @ (Error::ClassMismatch(_) | Error::ConditionsFailed(_) | Error::ChainBound { .. })) => {
            r.line(format!("FAIL: {e}"), "verdict", &[("passed", &false), ("reason", &e)]);
            return Ok(Verdict::Failure);
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = emit {
        write(path, &write_chain(&k, &out.cycle))?;
    }
    r.line(
        format!(
            "subcomplex chain {} terms, filler {} terms",
            out.extension.c_a.len(),
            out.extension.filler.len()
        ),
        "extension",
        &[
            ("c_a", &out.extension.c_a.len()),
            ("filler", &out.extension.filler.len()),
        ],
    );
    r.line(
        format!("output terms {}", out.cycle.len()),
        "cycle",
        &[("terms", &out.cycle.len())],
    );
    let checks: [(&str, bool); 4] = [
        ("cycle", out.is_cycle),
        ("class preserved", out.class_preserved),
        ("added simplices non-essential", out.added_non_essential),
        ("essential part unchanged", out.essential_matches),
    ];
    for (name, ok) in checks {
        let key = name.replace(' ', "-");
        r.line(
            format!("{name}: {}", if ok { "ok" } else { "FAILED" }),
            "check",
            &[("name", &key), ("passed", &ok)],
        );
    }
    r.line(
        format!("essential norm {} -> {}", out.norm_before, out.norm_after),
        "norm",
        &[("before", &out.norm_before), ("after", &out.norm_after)],
    );
    Ok(verdict(out.all_hold()))
}

fn count_chains(r: &mut Report, poset: &Path, length: usize, distinct: bool) -> Outcome {
    let p = with_path(poset, parse_poset(&read(poset)?))?;
    let n = p.count_chains(length, distinct);
    let what = if distinct {
        "chains with distinct labels"
    } else {
        "chains"
    };
    r.line(
        format!("{what} of length {length}: {n}"),
        "chains",
        &[("length", &length), ("distinct_labels", &distinct), ("count", &n)],
    );
    Ok(Verdict::Success)
}

fn run(cli: &Cli, r: &mut Report) -> Outcome {
    match &cli.command {
        Command::Trajectories { flow } => trajectories(r, flow),
        Command::ValidateFlow { flow, euler } => validate(r, flow, *euler),
        Command::CheckBound {
            flow,
            simplicial_volume,
            surface_genus,
            hyperbolic_volume,
            dim,
        } => {
            let spec = match (simplicial_volume, surface_genus, hyperbolic_volume, dim) {
                (Some(v), _, _, _) => VolumeSpec::Simplicial(v.clone()),
                (_, Some(g), _, _) => VolumeSpec::SurfaceGenus(*g),
                (_, _, Some(v), Some(d)) => VolumeSpec::Hyperbolic { volume: *v, dim: *d },
                _ => return Err(InputError("no volume given".into())),
            };
            bound(r, flow, spec)
        }
        Command::Corner { n, export } => corner(r, *n, export.as_deref()),
        Command::Norm { complex, chain } => norm(r, complex, chain),
        Command::Localize {
            complex,
            c_rel,
            h,
            subcomplex,
            emit,
        } => localize_cmd(r, complex, c_rel, h, subcomplex.as_deref(), emit.as_deref()),
        Command::CountChains {
            poset,
            length,
            distinct_labels,
        } => count_chains(r, poset, *length, *distinct_labels),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report::new(cli.format);
    match run(&cli, &mut report) {
        Ok(v) => {
            report.print();
            match v {
                Verdict::Success => ExitCode::SUCCESS,
                Verdict::Failure => ExitCode::from(1),
            }
        }
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
