//! The `tapecalc` command-line driver. [`run`] does all the work and
//! returns the exit code with the text for stdout and stderr, so the
//! binary is a thin wrapper.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use tapecalc::base::boolean::BoolFns;
use tapecalc::base::diagram::{CircuitTerm, Diagrams, Signature};
use tapecalc::base::free_monoid::{FreeMonoid, Point, Word};
use tapecalc::boolcirc::{
    and_p_or, compare_kleisli, encode, eval_pb, pb_signature, tape_semantics, to_bool_tape, KleisliMap, Verdict,
};
use tapecalc::dsl::{parse_circuit, parse_tape};
use tapecalc::error::{Error, Result};
use tapecalc::json::matrix_to_json;
use tapecalc::laws::{run_suite, SUITES};
use tapecalc::prob::{parse_prob, rat, Rational, Subdist};
use tapecalc::stmat::StochMatrix;
use tapecalc::tape::{Tape, TapeTerm};

#[derive(Debug, Parser)]
#[command(name = "tapecalc", version, about = "Probabilistic tape diagrams compiled to stochastic matrices")]
pub struct Cli {
    /// Signature JSON used by parse, typecheck and compile
    #[arg(long, global = true, value_name = "FILE")]
    pub sig: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a circuit or tape and print it fully parenthesised
    Parse(Source),
    /// Print the type of a circuit or tape
    Typecheck(Source),
    /// Compile a tape (or the encoding of a circuit) to a stochastic matrix
    Compile {
        #[command(flatten)]
        src: Source,
        /// Emit the matrix as JSON, to OUT or to stdout
        #[arg(long, value_name = "OUT", num_args = 0..=1, default_missing_value = "-")]
        json: Option<String>,
        /// Replace circuits by their truth tables before compiling
        #[arg(long)]
        tables: bool,
        #[arg(long)]
        decimal: bool,
    },
    /// Evaluate a probabilistic circuit or tape on Boolean inputs
    Eval {
        #[command(flatten)]
        src: Source,
        /// A single input, top wire first (`i:bits` picks summand i)
        #[arg(long, value_name = "BITS")]
        input: Option<String>,
        #[arg(long)]
        decimal: bool,
    },
    /// Decide whether two circuits or tapes have the same semantics
    Equiv {
        /// A file name or a term
        left: String,
        /// A file name or a term
        right: String,
        #[arg(long)]
        decimal: bool,
    },
    /// Encode a probabilistic circuit as a tape
    Encode(Source),
    /// Reproduce a worked example: `matrices` or `andor`
    Demo {
        name: String,
        /// Bias used by `andor`
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long)]
        decimal: bool,
    },
    /// Run a randomised law suite
    Randcheck {
        #[arg(long, value_name = "NAME")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        iters: usize,
    },
}

#[derive(Debug, Args)]
pub struct Source {
    /// The term itself; use -f to read it from a file
    pub term: Option<String>,
    #[arg(short = 'f', value_name = "FILE", conflicts_with = "term")]
    pub file: Option<PathBuf>,
    /// Read the input as a tape
    #[arg(long, conflicts_with = "circuit")]
    pub tape: bool,
    /// Read the input as a circuit
    #[arg(long)]
    pub circuit: bool,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli).unwrap_or_else(Outcome::error),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

enum Term {
    Circuit(CircuitTerm),
    Tape(Tape<Diagrams>),
}

const TAPE_KEYWORDS: [&str; 7] = ["idT", "id0", "symT", "merge", "init", "split", "kill"];

fn looks_like_tape(src: &str) -> bool {
    src.contains('[')
        || src
            .split(|c: char| !c.is_ascii_alphanumeric())
            .any(|w| TAPE_KEYWORDS.contains(&w))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn load_signature(cli: &Cli) -> Result<Signature> {
    match &cli.sig {
        Some(path) => Signature::from_json(&read_file(path)?),
        None => Ok(pb_signature()),
    }
}

fn source_text(src: &Source) -> Result<String> {
    match (&src.term, &src.file) {
        (Some(t), None) => Ok(t.clone()),
        (None, Some(f)) => read_file(f),
        _ => Err(Error::Invalid("give a term or -f FILE".into())),
    }
}

fn parse_term(sig: &Signature, text: &str, force_tape: bool, force_circuit: bool) -> Result<Term> {
    let tape = force_tape || (!force_circuit && looks_like_tape(text));
    Ok(if tape {
        Term::Tape(parse_tape(sig, text)?)
    } else {
        Term::Circuit(parse_circuit(text)?)
    })
}

fn load(cli: &Cli, src: &Source) -> Result<(Signature, Term)> {
    let sig = load_signature(cli)?;
    let text = source_text(src)?;
    let term = parse_term(&sig, &text, src.tape, src.circuit)?;
    Ok((sig, term))
}

/// The tape of a term; circuits go through the encoding, which needs the
/// probabilistic Boolean signature.
fn as_tape(sig: &Signature, term: Term) -> Result<Tape<Diagrams>> {
    match term {
        Term::Tape(t) => Ok(t),
        Term::Circuit(c) if c.any_gen(&|g| g.prob.is_some()) => encode(&c),
        Term::Circuit(c) => Ok(TapeTerm::Lift(sig.circuit(c)?)),
    }
}

/// Semantics over the Boolean signature.
fn semantics(term: &Term) -> Result<KleisliMap> {
    match term {
        Term::Circuit(c) => eval_pb(c),
        Term::Tape(t) => tape_semantics(&to_bool_tape(t)?),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let out = match &cli.command {
        Command::Parse(src) => match load(cli, src)?.1 {
            Term::Circuit(c) => format!("{c}\n"),
            Term::Tape(t) => format!("{t}\n"),
        },
        Command::Typecheck(src) => {
            let (sig, term) = load(cli, src)?;
            match term {
                Term::Circuit(c) => {
                    let (dom, cod) = sig.type_of(&c)?;
                    format!("{dom} → {cod}\n")
                }
                Term::Tape(t) => format!("{}\n", t.typecheck(&Diagrams::new(sig))?),
            }
        }
        Command::Compile {
            src,
            json,
            tables,
            decimal,
        } => {
            let (sig, term) = load(cli, src)?;
            let tape = as_tape(&sig, term)?;
            let (rendered, value) = if *tables {
                let m = to_bool_tape(&tape)?.compile(&BoolFns)?;
                (m.render(*decimal), matrix_to_json(&BoolFns, &m))
            } else {
                let base = Diagrams::new(sig);
                let m = tape.compile(&base)?;
                (m.render(*decimal), matrix_to_json(&base, &m))
            };
            match json.as_deref() {
                None => rendered,
                Some("-") => format!("{}\n", serde_json::to_string_pretty(&value).expect("JSON values print")),
                Some(path) => {
                    fs::write(path, serde_json::to_string_pretty(&value).expect("JSON values print"))
                        .map_err(|e| Error::Invalid(format!("cannot write {path}: {e}")))?;
                    format!("wrote {path}\n")
                }
            }
        }
        Command::Eval { src, input, decimal } => {
            let text = source_text(src)?;
            let term = parse_term(&pb_signature(), &text, src.tape, src.circuit)?;
            let k = semantics(&term)?;
            match input {
                Some(bits) => format!("{}\n", k.render_dist(k.apply(k.parse_input(bits)?), *decimal)),
                None if k.iter().count() == 1 => {
                    let (_, d) = k.iter().next().expect("one input");
                    format!("{}\n", k.render_dist(d, *decimal))
                }
                None => k.render(*decimal),
            }
        }
        Command::Equiv { left, right, decimal } => return equiv(left, right, *decimal),
        Command::Encode(src) => {
            let text = source_text(src)?;
            let c = parse_circuit(&text)?;
            let t = encode(&c)?;
            let ty = t.typecheck(&tapecalc::boolcirc::b_base())?;
            format!("{t}\n: {ty}\n")
        }
        Command::Demo { name, p, decimal } => demo(name, p, *decimal)?,
        Command::Randcheck { suite, seed, iters } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Error::Invalid(format!("unknown suite `{suite}`; expected one of {}", SUITES.join(", "))));
            }
            let report = run_suite(suite, *seed, *iters)?;
            return Ok(Outcome {
                code: if report.ok() { 0 } else { 1 },
                stdout: format!("{report}\n"),
                stderr: String::new(),
            });
        }
    };
    Ok(Outcome::ok(out))
}

fn term_or_file(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        read_file(path)
    } else {
        Ok(arg.to_string())
    }
}

fn equiv(left: &str, right: &str, decimal: bool) -> Result<Outcome> {
    let sig = pb_signature();
    let l = parse_term(&sig, &term_or_file(left)?, false, false)?;
    let r = parse_term(&sig, &term_or_file(right)?, false, false)?;
    let (kl, kr) = (semantics(&l)?, semantics(&r)?);
    Ok(match compare_kleisli(&kl, &kr)? {
        Verdict::Equivalent => Outcome::ok("equivalent\n".into()),
        Verdict::Distinct(cx) => Outcome {
            code: 1,
            stdout: format!(
                "not equivalent\non input {}: left gives {}, right gives {}\n",
                kl.format_elem(&cx.input, false),
                kl.render_dist(&cx.left, decimal),
                kr.render_dist(&cx.right, decimal)
            ),
            stderr: String::new(),
        },
    })
}

fn words(cells: &[&[(&str, Rational)]]) -> Vec<Subdist<Word>> {
    cells
        .iter()
        .map(|c| Subdist::from_weights(c.iter().map(|(w, p)| (Word::new(*w), p.clone()))).expect("example weights"))
        .collect()
}

/// The matrices `M : 2 → 2` and `N : 2 → 3` over the free monoid on
/// `{a, b, c}`.
pub fn example_matrices() -> (StochMatrix<Point, Word>, StochMatrix<Point, Word>) {
    let m = StochMatrix::new(
        &FreeMonoid,
        vec![Point; 2],
        vec![Point; 2],
        vec![
            words(&[&[("a", rat(1, 2))], &[("c", rat(1, 1))]]),
            words(&[&[("ab", rat(1, 2))], &[]]),
        ],
    )
    .expect("example matrix");
    let n = StochMatrix::new(
        &FreeMonoid,
        vec![Point; 2],
        vec![Point; 3],
        vec![
            words(&[&[("a", rat(1, 2))], &[("c", rat(1, 2))]]),
            words(&[&[("ab", rat(1, 3))], &[]]),
            words(&[&[], &[("", rat(1, 3))]]),
        ],
    )
    .expect("example matrix");
    (m, n)
}

fn demo(name: &str, p: &str, decimal: bool) -> Result<String> {
    match name {
        "matrices" => {
            let (m, n) = example_matrices();
            let mn = m.compose(&FreeMonoid, &n)?;
            Ok(format!(
                "M =\n{}\nN =\n{}\nM ; N =\n{}",
                m.render(decimal),
                n.render(decimal),
                mn.render(decimal)
            ))
        }
        "andor" => {
            let p = parse_prob(p)?;
            let t = and_p_or(&p)?;
            let base = tapecalc::boolcirc::b_base();
            let m = t.compile(&base)?;
            let k = tape_semantics(&to_bool_tape(&t)?)?;
            Ok(format!(
                "tape: {t}\ntype: {}\nmatrix:\n{}semantics (inputs x y, top wire first):\n{}",
                t.typecheck(&base)?,
                m.render(decimal),
                k.render(decimal)
            ))
        }
        _ => Err(Error::Invalid(format!("unknown demo `{name}`; expected matrices or andor"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Outcome {
        run(std::iter::once("tapecalc").chain(args.iter().copied()))
    }

    #[test]
    fn classification() {
        assert!(looks_like_tape("[ and ] ; [ not ]"));
        assert!(looks_like_tape("split 1/2 A"));
        assert!(looks_like_tape("(id0 + kill A)"));
        assert!(!looks_like_tape("flip 1/2 ; not"));
        assert!(!looks_like_tape("(id A * sym A A)"));
    }

    #[test]
    fn parse_and_typecheck() {
        assert_eq!(cli(&["parse", "split 1/2 A"]).stdout, "split 1/2 A\n");
        assert_eq!(cli(&["parse", "not ; copy * id A"]).stdout, "(not ; (copy * id A))\n");
        assert_eq!(cli(&["typecheck", "copy ; and"]).stdout, "A → A\n");
        assert_eq!(cli(&["typecheck", "split 1/2 A ; [ not ] + kill A"]).stdout, "A → A\n");
        assert_eq!(cli(&["typecheck", "--tape", "idT 1"]).stdout, "1 → 1\n");
        let bad = cli(&["parse", "split 3/2 A"]);
        assert_eq!(bad.code, 2);
        assert!(bad.stderr.contains("1:7"), "{}", bad.stderr);
    }

    #[test]
    fn eval_inputs() {
        assert_eq!(cli(&["eval", "flip 1/2 ; not"]).stdout, "{1: 1/2, 0: 1/2}\n");
        assert_eq!(cli(&["eval", "and", "--input", "11"]).stdout, "{1: 1}\n");
        assert_eq!(cli(&["eval", "and"]).stdout.lines().count(), 4);
        assert_eq!(cli(&["eval", "and", "--input", "1"]).code, 2);
        assert_eq!(cli(&["eval", "--decimal", "flip 1/4"]).stdout, "{1: 1/4 (≈0.2500), 0: 3/4 (≈0.7500)}\n");
    }

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(cli(&["bogus"]).code, 2);
        assert_eq!(cli(&["parse"]).code, 2);
        assert_eq!(cli(&["randcheck", "--suite", "nope"]).code, 2);
        assert_eq!(cli(&["demo", "nope"]).code, 2);
        assert_eq!(cli(&["--help"]).code, 0);
    }
}
