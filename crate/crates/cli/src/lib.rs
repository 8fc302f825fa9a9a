//! The `elusive` command-line tool.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use elusive_core::autgroup::{self, diag_top_generators, full_generators, wreath_generators, Automorphism};
use elusive_core::codes::{setwise_stabiliser, Code};
use elusive_core::constructions::{
    parity_code, perm_code, product_code, rep_code, BlockParity, PermCodeSpec, PermSource,
};
use elusive_core::elusive::{neighbour_degree_profile, verify_elusive};
use elusive_core::io::{parse_automorphism_list, CodeFile};
use elusive_core::lemmas::{run_suite, Suite};
use elusive_core::search::{search_elusive, Outcome, SearchOptions};
use elusive_core::{Caps, Error};

pub mod props;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "elusive", version, about = "Codes in Hamming graphs and elusive pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code and write it as a code file.
    Construct(ConstructArgs),
    /// Print the minimum distance of a code.
    Mindist { file: PathBuf },
    /// Print the covering radius of a code.
    CoveringRadius { file: PathBuf },
    /// Write the neighbour set Γ_1(C) as a code file.
    Neighbours {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Histogram of the number of codeword-neighbours of each vertex of Γ_1(C).
    Profile { file: PathBuf },
    /// Decide whether (C, X) is an elusive pair.
    Verify(VerifyArgs),
    /// Exhaustive search for an elusive pair with parameters (m, q, δ).
    Search(SearchArgs),
    /// Run one of the lemma batteries.
    Lemmas {
        #[arg(long, value_enum)]
        suite: SuiteName,
    },
    /// Randomised property checks with a fixed seed.
    Props {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(subcommand)]
    family: Family,
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// C(S_q)
    Sym { q: usize },
    /// C(A_q)
    Alt { q: usize },
    /// C(A_q) for the odd coset of A_q
    Oddcoset { q: usize },
    /// Prod(C, l)
    Prod { file: PathBuf, l: usize },
    /// C(q, l), or C'(q, l) with --odd
    Parity {
        q: usize,
        l: usize,
        #[arg(long)]
        odd: bool,
    },
    /// Rep(m, q)
    Rep { m: usize, q: usize },
    /// Union of two codes in the same Hamming graph
    Union { a: PathBuf, b: PathBuf },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    file: PathBuf,
    /// `diag-top`, `wreath`, `full`, `stabiliser`, or an automorphism-list file.
    #[arg(long)]
    group: String,
    #[arg(long, value_enum)]
    expect: Option<Expect>,
    /// Write the report here and each image of C to `<output>.image<k>`.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Expect {
    Elusive,
    NotElusive,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    no_parity_filter: bool,
    /// Test every code through vertex 0 instead of one per equivalence class.
    #[arg(long)]
    no_pruning: bool,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    max_size: Option<usize>,
    #[arg(long)]
    node_limit: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteName {
    Same,
    Act,
    Partition,
    Neigh,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) => EXIT_RESOURCE,
        Error::Invariant(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let caps = Caps::from_env();
    match dispatch(cli.command, &caps, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read_code(path: &Path) -> elusive_core::Result<Code> {
    Ok(CodeFile::read(path)?.code)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> elusive_core::Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(command: Command, caps: &Caps, out: &mut dyn Write) -> elusive_core::Result<i32> {
    match command {
        Command::Construct(args) => {
            let file = construct(args.family, caps)?;
            emit(out, args.output.as_deref(), &file.render())?;
        }
        Command::Mindist { file } => {
            writeln!(out, "{}", read_code(&file)?.min_distance()?)?;
        }
        Command::CoveringRadius { file } => {
            writeln!(out, "{}", read_code(&file)?.covering_radius(caps.vertices)?)?;
        }
        Command::Neighbours { file, output } => {
            let code = read_code(&file)?;
            let gamma = Code::from_set(&code.neighbour_set())?;
            let file = CodeFile::new(gamma).with_comment(format!("neighbour set of {}", file.display()));
            emit(out, output.as_deref(), &file.render())?;
        }
        Command::Profile { file } => {
            let profile = neighbour_degree_profile(&read_code(&file)?);
            for (degree, count) in profile.histogram() {
                writeln!(out, "{degree} {count}")?;
            }
        }
        Command::Verify(args) => return verify(args, caps, out),
        Command::Search(args) => {
            let options = SearchOptions {
                parity_filter: !args.no_parity_filter,
                pruning: !args.no_pruning,
                threads: args.threads,
                max_size: args.max_size,
                node_limit: args.node_limit,
                caps: *caps,
                ..SearchOptions::default()
            };
            let cert = search_elusive(args.m, args.q, args.delta, &options)?;
            emit(out, args.output.as_deref(), &cert.render())?;
            if cert.outcome == Outcome::Aborted {
                return Ok(EXIT_RESOURCE);
            }
        }
        Command::Lemmas { suite } => {
            let suite = match suite {
                SuiteName::Same => Suite::Same,
                SuiteName::Act => Suite::Act,
                SuiteName::Partition => Suite::Partition,
                SuiteName::Neigh => Suite::Neigh,
            };
            let report = run_suite(suite)?;
            out.write_all(report.render().as_bytes())?;
            if !report.passed() {
                return Ok(EXIT_FAIL);
            }
        }
        Command::Props { seed, cases } => {
            let report = props::run_properties(seed, cases);
            out.write_all(report.render().as_bytes())?;
            if !report.passed() {
                return Ok(EXIT_FAIL);
            }
        }
    }
    Ok(EXIT_OK)
}

fn construct(family: Family, caps: &Caps) -> elusive_core::Result<CodeFile> {
    let perm = |q: usize, source: PermSource| -> elusive_core::Result<CodeFile> {
        let spec = PermCodeSpec::new(q, source);
        let comment = format!("{} (permutation code)", spec.family_name());
        Ok(CodeFile::new(perm_code(&spec, caps.group)?).with_comment(comment))
    };
    match family {
        Family::Sym { q } => perm(q, PermSource::Symmetric),
        Family::Alt { q } => perm(q, PermSource::Alternating),
        Family::Oddcoset { q } => perm(q, PermSource::OddCoset),
        Family::Prod { file, l } => {
            let base = read_code(&file)?;
            let code = product_code(&base, l, caps.vertices)?;
            Ok(CodeFile::new(code).with_comment(format!("Prod({}, {l})", file.display())))
        }
        Family::Parity { q, l, odd } => {
            let (parity, name) = if odd {
                (BlockParity::Odd, "C'")
            } else {
                (BlockParity::Even, "C")
            };
            let code = parity_code(q, l, parity, caps.vertices)?;
            Ok(CodeFile::new(code).with_comment(format!("{name}({q}, {l})")))
        }
        Family::Rep { m, q } => Ok(CodeFile::new(rep_code(m, q)?).with_comment(format!("Rep({m}, {q})"))),
        Family::Union { a, b } => {
            let code = read_code(&a)?.union(&read_code(&b)?)?;
            Ok(CodeFile::new(code).with_comment(format!("union of {} and {}", a.display(), b.display())))
        }
    }
}

/// Generators for a group preset, or the automorphisms listed in a file.
fn group_generators(spec: &str, code: &Code, caps: &Caps) -> elusive_core::Result<Vec<Automorphism>> {
    let (m, q) = (code.m(), code.q());
    match spec {
        "diag-top" => diag_top_generators(m, q),
        "wreath" => {
            if m % q != 0 {
                return Err(Error::Parameter(format!("wreath preset needs q | m, got m={m}, q={q}")));
            }
            wreath_generators(&diag_top_generators(q, q)?, q, q, m / q)
        }
        "full" => full_generators(m, q),
        "stabiliser" => {
            let full = autgroup::full_group(m, q, caps.group)?;
            let stab = setwise_stabiliser(&full, &code.neighbour_set())?;
            Ok(stab.elements().unwrap_or_default().to_vec())
        }
        path => {
            let gens = parse_automorphism_list(&fs::read_to_string(path)?, q)?;
            if gens.iter().any(|x| x.m() != m) {
                return Err(Error::Parameter(format!(
                    "automorphisms in {path} do not act on H({m}, {q})"
                )));
            }
            Ok(gens)
        }
    }
}

fn verify(args: VerifyArgs, caps: &Caps, out: &mut dyn Write) -> elusive_core::Result<i32> {
    let code = read_code(&args.file)?;
    let gens = group_generators(&args.group, &code, caps)?;
    let report = verify_elusive(&code, &gens, caps)?;
    let text = report.render();
    match &args.output {
        Some(path) => {
            fs::write(path, &text)?;
            for (k, image) in report.images.iter().enumerate() {
                let mut name = path.clone().into_os_string();
                name.push(format!(".image{k}"));
                CodeFile::new(image.clone())
                    .with_comment(format!("image {k} of {}", args.file.display()))
                    .write(Path::new(&name))?;
            }
        }
        None => out.write_all(text.as_bytes())?,
    }
    let ok = match args.expect {
        None => true,
        Some(Expect::Elusive) => report.is_elusive,
        Some(Expect::NotElusive) => !report.is_elusive,
    };
    Ok(if ok { EXIT_OK } else { EXIT_FAIL })
}
