//! The `kanforge` command line.
//!
//! Exit codes: 0 success, 1 mathematical failure (a check fails, no
//! isomorphism, a construction's precondition does not hold), 2 usage
//! error, 3 I/O or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::algebra::Algebra;
use crate::constructions::Construction;
use crate::corpus::{self, CorpusError};
use crate::io::{self, ReadError};
use crate::morphisms::{find_isomorphism, Signature};
use crate::varieties::{check_variety, is_in, Variety};
use crate::verify::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "kanforge", version, about = "Check, construct and compare finite KAN-algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an algebra against a variety's axioms.
    Check {
        file: PathBuf,
        #[arg(long)]
        variety: Variety,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build a derived algebra: kalman, monteiro, center-slice, diamond, box, theta.
    Apply {
        construction: Construction,
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Search for an isomorphism between two algebras.
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        /// lattice, or a variety name; defaults to every symbol both carry.
        #[arg(long)]
        signature: Option<Signature>,
    },
    /// Run every applicable theorem check for the strongest variety.
    Verify { file: PathBuf },
    /// Enumerate posets, or algebras of a variety on small lattices.
    Enumerate(EnumerateArgs),
    /// Print the Hasse diagram in DOT.
    ExportDot { file: PathBuf },
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    /// Use the lattice of this algebra file.
    #[arg(long, required_unless_present = "posets", conflicts_with = "posets")]
    lattice: Option<PathBuf>,
    /// Use the down-set lattices of all posets with N elements.
    #[arg(long, value_name = "N")]
    posets: Option<usize>,
    #[arg(long)]
    variety: Option<Variety>,
    /// Print only the number of results.
    #[arg(long)]
    count_only: bool,
    /// Write each algebra to DIR/NAME.alg instead of stdout.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &Path) -> Result<Algebra, i32> {
        io::read_file(path).map_err(|e| {
            let _ = writeln!(self.err, "error: {e}");
            match e {
                ReadError::Io(_) | ReadError::Parse(_) => EXIT_IO,
            }
        })
    }

    fn fail(&mut self, code: i32, msg: impl std::fmt::Display) -> i32 {
        let _ = writeln!(self.err, "error: {msg}");
        code
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Output goes to the given writers, so the binary and tests share it.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { out, err };
    let code = match cli.command {
        Command::Check { file, variety, json } => check(&mut io, &file, variety, json),
        Command::Apply { construction, file, out } => apply(&mut io, construction, &file, out.as_deref()),
        Command::Iso { file1, file2, signature } => iso(&mut io, &file1, &file2, signature),
        Command::Verify { file } => match io.read(&file) {
            Ok(a) => {
                let r = verify(&a);
                let _ = write!(io.out, "{r}");
                if r.passed() { EXIT_OK } else { EXIT_FAIL }
            }
            Err(code) => code,
        },
        Command::Enumerate(args) => enumerate(&mut io, args),
        Command::ExportDot { file } => match io.read(&file) {
            Ok(a) => {
                let _ = io.out.write_all(io::export_dot(&a).as_bytes());
                EXIT_OK
            }
            Err(code) => code,
        },
    };
    let _ = io.out.flush();
    code
}

fn check(io: &mut Io<'_>, file: &Path, variety: Variety, json: bool) -> i32 {
    let a = match io.read(file) {
        Ok(a) => a,
        Err(code) => return code,
    };
    match check_variety(&a, variety) {
        Ok(r) => {
            if json {
                let _ = writeln!(io.out, "{}", r.to_json());
            } else {
                let _ = write!(io.out, "{r}");
            }
            if r.verdict { EXIT_OK } else { EXIT_FAIL }
        }
        Err(e) => io.fail(EXIT_FAIL, e),
    }
}

fn apply(io: &mut Io<'_>, c: Construction, file: &Path, out: Option<&Path>) -> i32 {
    let a = match io.read(file) {
        Ok(a) => a,
        Err(code) => return code,
    };
    let built = match c.apply(&a) {
        Ok(b) => b.algebra,
        Err(e) => return io.fail(EXIT_FAIL, e),
    };
    let text = io::print(&built);
    match out {
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => io.fail(EXIT_IO, format!("{}: {e}", path.display())),
        },
        None => {
            let _ = io.out.write_all(text.as_bytes());
            EXIT_OK
        }
    }
}

fn iso(io: &mut Io<'_>, f1: &Path, f2: &Path, sig: Option<Signature>) -> i32 {
    let (a, b) = match (io.read(f1), io.read(f2)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    let sig = sig.unwrap_or_else(|| Signature::common(&a, &b));
    match find_isomorphism(&a, &b, sig) {
        Ok(Some(m)) => {
            let _ = write!(io.out, "{}", m.render());
            EXIT_OK
        }
        Ok(None) => {
            let _ = writeln!(io.out, "not isomorphic");
            EXIT_FAIL
        }
        Err(e) => io.fail(EXIT_FAIL, e),
    }
}

fn corpus_code(e: &CorpusError) -> i32 {
    match e {
        CorpusError::Io(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

fn enumerate(io: &mut Io<'_>, args: EnumerateArgs) -> i32 {
    let lattices = match (&args.lattice, args.posets) {
        (Some(path), _) => match io.read(path) {
            Ok(a) => vec![(a.name().to_string(), a.lattice().clone())],
            Err(code) => return code,
        },
        (None, Some(n)) => match corpus::enumerate_posets(n) {
            Ok(posets) if args.variety.is_none() => {
                if args.count_only {
                    let _ = writeln!(io.out, "{}", posets.len());
                } else {
                    for (i, p) in posets.iter().enumerate() {
                        let _ = writeln!(io.out, "p{n}_{i}: {}", p.describe());
                    }
                }
                return EXIT_OK;
            }
            Ok(posets) => posets
                .iter()
                .enumerate()
                .map(|(i, p)| (format!("p{n}_{i}"), corpus::downset_lattice(p)))
                .collect(),
            Err(e) => return io.fail(corpus_code(&e), e),
        },
        (None, None) => unreachable!("clap requires one source"),
    };
    let Some(variety) = args.variety else {
        return io.fail(EXIT_USAGE, "--variety is required with --lattice");
    };
    let mut found = Vec::new();
    for (stem, lat) in lattices {
        let algebras = match variety {
            Variety::Pdl | Variety::Stone => {
                let a = Algebra::new("lattice", lat);
                if is_in(&a, variety) { vec![a] } else { Vec::new() }
            }
            _ => match corpus::enumerate_operator_pairs(&lat, variety) {
                Ok(v) => v,
                Err(e) => return io.fail(corpus_code(&e), e),
            },
        };
        for (i, a) in algebras.into_iter().enumerate() {
            found.push(a.with_name(format!("{stem}_{variety}{i}")));
        }
    }
    if args.count_only {
        let _ = writeln!(io.out, "{}", found.len());
        return EXIT_OK;
    }
    match &args.out {
        Some(dir) => {
            if let Err(e) = std::fs::create_dir_all(dir) {
                return io.fail(EXIT_IO, format!("{}: {e}", dir.display()));
            }
            for a in &found {
                let path = dir.join(format!("{}.alg", a.name()));
                if let Err(e) = std::fs::write(&path, io::print(a)) {
                    return io.fail(EXIT_IO, format!("{}: {e}", path.display()));
                }
            }
            let _ = writeln!(io.out, "wrote {} algebras to {}", found.len(), dir.display());
        }
        None => {
            for (i, a) in found.iter().enumerate() {
                if i > 0 {
                    let _ = writeln!(io.out);
                }
                let _ = write!(io.out, "{}", io::print(a));
            }
        }
    }
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("kanforge").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&[]).0, EXIT_USAGE);
        assert_eq!(run_str(&["check", "x.alg", "--variety", "ring"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["enumerate", "--variety", "kan"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["apply", "frobnicate", "x.alg"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn missing_file_exits_3() {
        let (code, _, err) = run_str(&["check", "/nonexistent/nosuch.alg", "--variety", "kan"]);
        assert_eq!(code, EXIT_IO);
        assert!(err.contains("nosuch.alg"));
    }

    #[test]
    fn poset_listing() {
        let (code, out, _) = run_str(&["enumerate", "--posets", "3", "--count-only"]);
        assert_eq!((code, out.as_str()), (0, "5\n"));
        let (_, out, _) = run_str(&["enumerate", "--posets", "2"]);
        assert_eq!(out.lines().count(), 2);
        assert_eq!(run_str(&["enumerate", "--posets", "9"]).0, if std::env::var(corpus::SIZE_ENV).is_ok() { 0 } else { EXIT_USAGE });
    }

    #[test]
    fn enumerate_algebras_over_posets() {
        let (code, out, _) = run_str(&["enumerate", "--posets", "2", "--variety", "skanc"]);
        assert_eq!(code, 0);
        let a = crate::io::parse(&out).unwrap();
        assert_eq!(a.name(), "p2_1_skanc0");
        let chain = crate::fixtures::example_3_3();
        assert!(find_isomorphism(&a, &chain, Signature::KANC).unwrap().is_some());
    }
}
