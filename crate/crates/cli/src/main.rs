mod cache;
mod suites;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jacobiws::conway::{check_convolution_identity, WeightSystem};
use jacobiws::deframing::decompose;
use jacobiws::diagram::{
    enumerate_ccds, enumerate_chinese_characters, enumerate_chord_diagrams, parse_diagram, Diagram, DiagramError,
};
use jacobiws::hopf::{check_degree, expand_cc, model_presentation, AlgebraSpace, DiagramComb, HopfError, Model};
use jacobiws::lie::{highest_weight_poly_comb, knn, validate_spec, AlgebraSpec, Evaluator, LieError, Tables, Verma};
use jacobiws::linear::{LinComb, Rational};
use num_traits::Signed;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use suites::{build_tower, model_for, Verifier};
use thiserror::Error;

/// Largest degree accepted by any subcommand.
const DEGREE_CAP: usize = 7;
/// Largest degree for which the full CCD model may be requested explicitly.
const FULL_CAP: usize = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("diagram: {0}")]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("cache: {0}")]
    Cache(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    /// full CCD model up to degree 4, chord model above
    Auto,
    Full,
    Chord,
}

#[derive(Parser)]
#[command(name = "jacobiws", version, about = "Exact computations with Jacobi diagrams and weight systems")]
struct Cli {
    /// Directory for memoized quotient bases (also JACOBIWS_CACHE).
    #[arg(long, global = true, env = "JACOBIWS_CACHE")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, global = true, value_enum, default_value = "auto")]
    model: ModelArg,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Print wall-clock timings in reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Chord,
    Ccd,
    Cc,
}

#[derive(Subcommand)]
enum Command {
    /// List diagrams of a degree up to isomorphism.
    Enumerate {
        #[arg(value_enum)]
        kind: Kind,
        n: usize,
        /// Chinese characters only: drop those containing a chord component.
        #[arg(long)]
        chordless: bool,
    },
    /// Dimension of the diagram algebra in one degree or up to --max-degree.
    Dim {
        n: Option<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Dump the relations presenting one degree.
    Relations { n: usize },
    /// Express a diagram in the quotient basis.
    Reduce(DiagramArgs),
    /// Split a diagram into its kernel part and the pieces of each I^n_k.
    Deframe(DiagramArgs),
    #[command(subcommand)]
    Ws(WsCommand),
    #[command(subcommand)]
    Lie(LieCommand),
    /// Run a verification suite.
    Verify {
        /// hopf, deframing, conway, mmr-sl2, gl11, classical-osp12 or all
        suite: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
}

#[derive(Args)]
struct DiagramArgs {
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    diagram: PathBuf,
}

#[derive(Subcommand)]
enum WsCommand {
    /// Evaluate a weight system (conway, conway-bar, knn-sl2, knn-osp12) on a diagram.
    Eval {
        name: Option<String>,
        degree: Option<usize>,
        file: Option<PathBuf>,
        #[arg(long = "name")]
        name_flag: Option<String>,
        #[arg(long = "degree")]
        degree_flag: Option<usize>,
        #[arg(long = "diagram")]
        diagram_flag: Option<PathBuf>,
    },
    /// Check sum_i c_i c̄_(n-i) = counit in degrees 0..=N.
    CheckConvolution {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EvalMode {
    Pbw,
    KLambda,
}

#[derive(Subcommand)]
enum LieCommand {
    /// Evaluate the weight system of an algebra on a diagram.
    Eval {
        algebra: Option<String>,
        file: Option<PathBuf>,
        #[arg(long = "algebra")]
        algebra_flag: Option<String>,
        #[arg(long = "diagram")]
        diagram_flag: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "pbw")]
        mode: EvalMode,
        /// Evaluate k(λ) at this point, e.g. `--lambda 1/2` or `--lambda 1,2`.
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<String>>,
    },
    /// Check the structural identities of an algebra spec.
    Validate {
        algebra: Option<String>,
        #[arg(long = "algebra")]
        algebra_flag: Option<String>,
    },
    /// Check that STU relations evaluate to zero.
    CheckStu {
        algebra: Option<String>,
        #[arg(long = "algebra")]
        algebra_flag: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
}

struct Ctx {
    format: Format,
    forced: Option<Model>,
    cache_dir: Option<PathBuf>,
    seed: u64,
    timing: bool,
}

impl Ctx {
    fn space(&self, n: usize) -> Result<AlgebraSpace, CliError> {
        check_cap(n)?;
        cache::load_or_build(self.cache_dir.as_deref(), n, model_for(n, self.forced))
    }
}

fn check_cap(n: usize) -> Result<(), CliError> {
    if n > DEGREE_CAP {
        return Err(CliError::Usage(format!("degree {n} exceeds the cap of {DEGREE_CAP}")));
    }
    Ok(())
}

fn either<T>(pos: Option<T>, flag: Option<T>, what: &str) -> Result<T, CliError> {
    match (pos, flag) {
        (Some(_), Some(_)) => Err(CliError::Usage(format!("{what} given twice"))),
        (Some(x), None) | (None, Some(x)) => Ok(x),
        (None, None) => Err(CliError::Usage(format!("missing {what}"))),
    }
}

fn read_diagram(path: &Path) -> Result<Diagram, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_diagram(&text)?)
}

/// The diagram as a combination of CCDs, with its degree checked against `degree`.
fn diagram_comb(path: &Path, degree: Option<usize>) -> Result<(usize, DiagramComb), CliError> {
    let d = read_diagram(path)?;
    let n = d.degree();
    if let Some(m) = degree {
        if m != n {
            return Err(CliError::Usage(format!("--degree {m} but the diagram has degree {n}")));
        }
    }
    let v = match d {
        Diagram::Ccd(c) => DiagramComb::basis(c.key()),
        Diagram::Cc(c) => expand_cc(&c),
    };
    check_degree(&v, n)?;
    Ok((n, v))
}

fn load_algebra(src: &str) -> Result<AlgebraSpec, CliError> {
    if let Some(name) = src.strip_prefix("builtin:") {
        return AlgebraSpec::builtin(name).ok_or_else(|| CliError::Usage(format!("unknown builtin algebra `{name}`")));
    }
    let path = Path::new(src);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        return Ok(AlgebraSpec::parse(&text)?);
    }
    AlgebraSpec::builtin(src).ok_or_else(|| CliError::Usage(format!("no algebra file or builtin named `{src}`")))
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.trim().parse().map_err(|_| CliError::Usage(format!("`{s}` is not a rational number")))
}

/// `coeff*KEY ± coeff*KEY ...`, or `0`.
fn comb_text<K: Ord + Clone + Display>(v: &LinComb<K>) -> String {
    let mut s = String::new();
    for (k, c) in v.iter() {
        if s.is_empty() {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        s.push_str(&format!("{}*{k}", c.abs()));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn print_comb<K: Ord + Clone + Display>(format: Format, label: Option<&str>, v: &LinComb<K>) {
    match format {
        Format::Text => match label {
            Some(l) => println!("{l}: {}", comb_text(v)),
            None => println!("{}", comb_text(v)),
        },
        Format::Tsv => {
            for (k, c) in v.iter() {
                match label {
                    Some(l) => println!("{l}\t{k}\t{c}"),
                    None => println!("{k}\t{c}"),
                }
            }
        }
    }
}

fn enumerate(ctx: &Ctx, kind: Kind, n: usize, chordless: bool) -> Result<(), CliError> {
    check_cap(n)?;
    if chordless && kind != Kind::Cc {
        return Err(CliError::Usage("--chordless applies to `cc` only".into()));
    }
    let listing: Vec<(String, usize, usize, String)> = match kind {
        Kind::Chord => enumerate_chord_diagrams(n)
            .into_iter()
            .map(|d| (d.key().to_string(), d.legs(), d.trivalent(), Diagram::Ccd(d).serialize()))
            .collect(),
        Kind::Ccd => enumerate_ccds(n)
            .into_iter()
            .map(|d| (d.key().to_string(), d.legs(), d.trivalent(), Diagram::Ccd(d).serialize()))
            .collect(),
        Kind::Cc => enumerate_chinese_characters(n, chordless)
            .into_iter()
            .map(|d| (d.key().to_string(), d.legs(), d.trivalent(), Diagram::Cc(d).serialize()))
            .collect(),
    };
    for (key, legs, tri, text) in &listing {
        match ctx.format {
            Format::Text => {
                println!("# key {key}");
                print!("{text}");
                if !text.ends_with('\n') {
                    println!();
                }
                println!();
            }
            Format::Tsv => println!("{key}\t{legs}\t{tri}"),
        }
    }
    match ctx.format {
        Format::Text => println!("count {}", listing.len()),
        Format::Tsv => println!("count\t{}", listing.len()),
    }
    Ok(())
}

fn dim(ctx: &Ctx, n: Option<usize>, max: Option<usize>) -> Result<(), CliError> {
    let degrees: Vec<usize> = match (n, max) {
        (Some(n), None) => vec![n],
        (None, Some(m)) => (0..=m).collect(),
        _ => return Err(CliError::Usage("give either a degree or --max-degree".into())),
    };
    let last = *degrees.last().unwrap();
    check_cap(last)?;
    let tower = build_tower_for(ctx, &degrees)?;
    for (n, space) in degrees.iter().zip(tower) {
        match ctx.format {
            Format::Text => println!("dim A_{n} = {}", space.dim()),
            Format::Tsv => println!("{n}\t{}", space.dim()),
        }
    }
    Ok(())
}

fn build_tower_for(ctx: &Ctx, degrees: &[usize]) -> Result<Vec<AlgebraSpace>, CliError> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = degrees.iter().map(|&n| scope.spawn(move || ctx.space(n))).collect();
        handles.into_iter().map(|h| h.join().expect("space builder panicked")).collect()
    })
}

fn relations(ctx: &Ctx, n: usize) -> Result<(), CliError> {
    check_cap(n)?;
    let model = model_for(n, ctx.forced);
    let (ambient, rels) = model_presentation(n, model);
    if ctx.format == Format::Text {
        println!("# degree {n} model {}: {} generators, {} relations", model.name(), ambient.len(), rels.len());
    }
    for (i, r) in rels.iter().enumerate() {
        print_comb(ctx.format, (ctx.format == Format::Tsv).then(|| i.to_string()).as_deref(), r);
    }
    Ok(())
}

fn reduce(ctx: &Ctx, args: &DiagramArgs) -> Result<(), CliError> {
    let (n, v) = diagram_comb(&args.diagram, args.degree)?;
    let space = ctx.space(n)?;
    let coords = space.reduce(&v)?;
    print_comb(ctx.format, None, &space.space.from_coords(&coords));
    Ok(())
}

fn deframe(ctx: &Ctx, args: &DiagramArgs) -> Result<(), CliError> {
    let (n, v) = diagram_comb(&args.diagram, args.degree)?;
    let space = ctx.space(n)?;
    let dec = decompose(n, &v, &space)?;
    let basis = |x: &DiagramComb| -> Result<DiagramComb, CliError> { Ok(space.space.from_coords(&space.reduce(x)?)) };
    print_comb(ctx.format, Some("phi"), &basis(&dec.phi)?);
    print_comb(ctx.format, Some("kernel"), &basis(&dec.kernel_part)?);
    for (k, part) in &dec.invariant_parts {
        print_comb(ctx.format, Some(&format!("I^{n}_{k}")), &basis(part)?);
    }
    Ok(())
}

fn weight_system(ctx: &Ctx, name: &str, n: usize) -> Result<WeightSystem, CliError> {
    let space = std::sync::Arc::new(ctx.space(n)?);
    Ok(match name {
        "conway" => jacobiws::conway::conway(space)?,
        "conway-bar" => jacobiws::conway::conway_bar(space)?,
        _ => match name.strip_prefix("knn-") {
            Some(alg) => knn(space, &load_algebra(alg)?, None)?,
            None => {
                return Err(CliError::Usage(format!(
                    "unknown weight system `{name}`; expected conway, conway-bar or knn-ALGEBRA"
                )))
            }
        },
    })
}

fn run_ws(ctx: &Ctx, cmd: WsCommand) -> Result<(), CliError> {
    match cmd {
        WsCommand::Eval { name, degree, file, name_flag, degree_flag, diagram_flag } => {
            let name = either(name, name_flag, "weight system name")?;
            let degree = match (degree, degree_flag) {
                (Some(_), Some(_)) => return Err(CliError::Usage("degree given twice".into())),
                (a, b) => a.or(b),
            };
            let path = either(file, diagram_flag, "diagram file")?;
            let (n, v) = diagram_comb(&path, degree)?;
            let ws = weight_system(ctx, &name, n)?;
            println!("{}", ws.eval(&v)?);
        }
        WsCommand::CheckConvolution { max_degree } => {
            check_cap(max_degree)?;
            let tower = build_tower(max_degree, ctx.forced, ctx.cache_dir.as_ref())?;
            let mut ok = true;
            for n in 0..=max_degree {
                let rep = check_convolution_identity(n, &tower)?;
                ok &= rep.passes();
                let status = if rep.passes() { "PASS" } else { "FAIL" };
                match ctx.format {
                    Format::Text => println!("{status} degree {n}: {} basis vectors", rep.values.len()),
                    Format::Tsv => println!("{status}\t{n}\t{}", rep.values.len()),
                }
            }
            if !ok {
                return Err(CliError::Verification("convolution identity".into()));
            }
        }
    }
    Ok(())
}

fn run_lie(ctx: &Ctx, cmd: LieCommand) -> Result<(), CliError> {
    match cmd {
        LieCommand::Eval { algebra, file, algebra_flag, diagram_flag, mode, lambda } => {
            let spec = load_algebra(&either(algebra, algebra_flag, "algebra")?)?;
            let (n, v) = diagram_comb(&either(file, diagram_flag, "diagram file")?, None)?;
            match (mode, lambda) {
                (EvalMode::Pbw, None) => {
                    let mut ev = Evaluator::new(&spec);
                    let w = ev.eval_comb(&v)?;
                    println!("{}", ev.display(&w));
                }
                (mode, lambda) => {
                    if mode == EvalMode::Pbw {
                        return Err(CliError::Usage("--lambda needs --mode k-lambda".into()));
                    }
                    let mut verma = Verma::new(&spec, 2 * n)?;
                    let p = highest_weight_poly_comb(&v, &mut verma, &Tables::new(&spec))?;
                    match lambda {
                        None => println!("{p}"),
                        Some(qs) => {
                            let point = qs.iter().map(|q| parse_rational(q)).collect::<Result<Vec<_>, _>>()?;
                            if point.len() != p.nvars() {
                                return Err(CliError::Usage(format!("λ has {} coordinates, expected {}", point.len(), p.nvars())));
                            }
                            println!("{}", p.eval(&point));
                        }
                    }
                }
            }
        }
        LieCommand::Validate { algebra, algebra_flag } => {
            let spec = load_algebra(&either(algebra, algebra_flag, "algebra")?)?;
            let rep = validate_spec(&spec);
            for c in &rep.checks {
                let status = if c.violation.is_none() { "PASS" } else { "FAIL" };
                let detail = c.violation.as_deref().unwrap_or("");
                match ctx.format {
                    Format::Text if detail.is_empty() => println!("{status} {}", c.name),
                    Format::Text => println!("{status} {}: {detail}", c.name),
                    Format::Tsv => println!("{status}\t{}\t{detail}", c.name),
                }
            }
            if !rep.passed() {
                return Err(CliError::Verification(format!("{} is not a valid algebra", spec.name)));
            }
        }
        LieCommand::CheckStu { algebra, algebra_flag, max_degree } => {
            check_cap(max_degree)?;
            let spec = load_algebra(&either(algebra, algebra_flag, "algebra")?)?;
            let reports: Vec<_> = std::thread::scope(|scope| {
                let handles: Vec<_> = (1..=max_degree)
                    .map(|n| {
                        let spec = &spec;
                        scope.spawn(move || jacobiws::lie::check_stu_invariance(spec, n))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("STU check panicked")).collect()
            });
            let mut ok = true;
            for rep in reports {
                ok &= rep.passed();
                let status = if rep.passed() { "PASS" } else { "FAIL" };
                match ctx.format {
                    Format::Text => {
                        println!("{status} degree {}: {} relations, {} failures", rep.degree, rep.relations, rep.failures.len())
                    }
                    Format::Tsv => println!("{status}\t{}\t{}\t{}", rep.degree, rep.relations, rep.failures.len()),
                }
            }
            if !ok {
                return Err(CliError::Verification("STU relations do not vanish".into()));
            }
        }
    }
    Ok(())
}

fn verify(ctx: &Ctx, suite: &str, max_degree: usize) -> Result<(), CliError> {
    check_cap(max_degree)?;
    let mut v = Verifier::new(max_degree, ctx.seed, ctx.forced, ctx.cache_dir.clone());
    v.run(suite)?;
    for l in &v.lines {
        let status = if l.pass { "PASS" } else { "FAIL" };
        let degree = l.degree.map_or("-".to_string(), |d| d.to_string());
        let timing = if ctx.timing { format!(" ({:.2}s)", l.secs) } else { String::new() };
        match ctx.format {
            Format::Text => println!("{status} {} {} n={degree} count={}: {}{timing}", l.suite, l.check, l.count, l.detail),
            Format::Tsv => {
                let secs = if ctx.timing { format!("\t{:.3}", l.secs) } else { String::new() };
                println!("{status}\t{}\t{}\t{degree}\t{}\t{}{secs}", l.suite, l.check, l.count, l.detail)
            }
        }
    }
    if !v.passed() {
        let failed = v.lines.iter().filter(|l| !l.pass).count();
        return Err(CliError::Verification(format!("{failed} of {} checks failed", v.lines.len())));
    }
    if ctx.format == Format::Text {
        println!("all {} checks passed", v.lines.len());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let forced = match cli.model {
        ModelArg::Auto => None,
        ModelArg::Full => Some(Model::Full),
        ModelArg::Chord => Some(Model::Chord),
    };
    let ctx = Ctx { format: cli.format, forced, cache_dir: cli.cache_dir, seed: cli.seed, timing: cli.timing };
    let max_requested = match &cli.command {
        Command::Dim { n, max_degree } => n.or(*max_degree),
        Command::Verify { max_degree, .. } => Some(*max_degree),
        Command::Ws(WsCommand::CheckConvolution { max_degree }) => Some(*max_degree),
        _ => None,
    };
    if forced == Some(Model::Full) && max_requested.is_some_and(|n| n > FULL_CAP) {
        return Err(CliError::Usage(format!("--model full is capped at degree {FULL_CAP}")));
    }
    match cli.command {
        Command::Enumerate { kind, n, chordless } => enumerate(&ctx, kind, n, chordless),
        Command::Dim { n, max_degree } => dim(&ctx, n, max_degree),
        Command::Relations { n } => relations(&ctx, n),
        Command::Reduce(args) => reduce(&ctx, &args),
        Command::Deframe(args) => deframe(&ctx, &args),
        Command::Ws(cmd) => run_ws(&ctx, cmd),
        Command::Lie(cmd) => run_lie(&ctx, cmd),
        Command::Verify { suite, max_degree } => verify(&ctx, &suite, max_degree),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use jacobiws::linear::int;

    #[test]
    fn comb_formatting() {
        let v = LinComb::from_terms([("a", int(-1)), ("b", Rational::new(3.into(), 2.into())), ("c", int(-2))]);
        assert_eq!(comb_text(&v), "-1*a + 3/2*b - 2*c");
        assert_eq!(comb_text(&LinComb::<&str>::new()), "0");
    }

    #[test]
    fn cli_parses() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
