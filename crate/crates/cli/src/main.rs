use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sinkext_core::certificate::{parse_certificate, verify_certificate};
use sinkext_core::classify::{
    classify_1sink, classify_nsink, embedding_obstruction, fmt_set, k0_matrix, k0_presentation, prim_skeleton,
    saturated_hereditary_subsets, ClassifyError, Mode, Verdict,
};
use sinkext_core::extension::{
    apply_move, extension_to_dot, parse_extension, serialize_extension, simplify, wojciech_vector, ExtensionError,
    Move, SinkExtension,
};
use sinkext_core::fixtures;
use sinkext_core::graph::{maximal_tails, vertex_matrix, ENUMERATION_BOUND};
use sinkext_core::ids::EdgeId;
use sinkext_core::vector::parse_vector;

#[derive(Parser)]
#[command(name = "sinkext", version, about = "Sink extensions of directed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the extension clauses.
    Validate { file: PathBuf },
    /// Wojciech vector of every sink.
    Wojciech { file: PathBuf },
    /// Collapse every exit path into a single edge.
    Simplify { file: PathBuf },
    /// Boundary outsplitting at an edge, optionally along a base path.
    Outsplit {
        file: PathBuf,
        #[arg(long)]
        edge: String,
        #[arg(long, value_delimiter = ',')]
        along: Vec<String>,
    },
    /// Attach a fresh sink, e.g. `--vector "w1:1 w3:2"`.
    Star {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Bring two extensions to a common simple extension.
    Classify {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value = "auto")]
        mode: Mode,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Replay a certificate against two extensions.
    Verify {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Cokernel of `[Aᵗ−I ; Wᵗ]` for a 1-sink extension.
    K0 { file: PathBuf },
    /// Saturated hereditary vertex subsets of the whole graph.
    Ideals { file: PathBuf },
    /// Maximal tails of the base together with the sink sets.
    Prim { file: PathBuf },
    /// Maximal tails of the base graph.
    Tails { file: PathBuf },
    /// Lattice necessity test on the Wojciech gap of two 1-sink extensions.
    Obstruct { first: PathBuf, second: PathBuf },
    /// Graphviz rendering.
    Dot { file: PathBuf },
    /// List the bundled fixtures, or write them to a directory.
    Fixtures {
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

/// A failed command. Negative answers are reported on stdout, usage and
/// parse errors on stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn negative(message: impl ToString) -> Self {
        Failure { code: 1, message: message.to_string() }
    }

    fn usage(message: impl ToString) -> Self {
        Failure { code: 2, message: message.to_string() }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|err| Failure::usage(format!("{}: {err}", path.display())))
}

fn load(path: &Path) -> Result<SinkExtension, Failure> {
    let text = read(path)?;
    parse_extension(&text).map_err(|err| {
        let message = format!("{}: {err}", path.display());
        match err {
            ExtensionError::Invalid(_) => Failure::negative(message),
            _ => Failure::usage(message),
        }
    })
}

fn classify_failure(err: ClassifyError) -> Failure {
    Failure::negative(err)
}

fn edge(s: &str) -> Result<EdgeId, Failure> {
    EdgeId::new(s).map_err(|err| Failure::usage(format!("{s:?}: {err}")))
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Obstructed(_) => 1,
        Verdict::CandidateFound(_) | Verdict::Inconclusive(_) => 0,
    }
}

fn wojciech_lines(ext: &SinkExtension) -> String {
    let order = ext.base_vertices();
    let names: Vec<&str> = order.iter().map(|v| v.as_str()).collect();
    let mut out = format!("order: {}\n", names.join(" "));
    for (i, s) in ext.sinks().iter().enumerate() {
        let w = wojciech_vector(ext, i).expect("sink index in range");
        writeln!(out, "W[{}] {s}: {}", i + 1, w.format_dense(order)).unwrap();
    }
    out
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file } => {
            let ext = load(&file)?;
            let names: Vec<&str> = ext.sinks().iter().map(|s| s.as_str()).collect();
            Ok((
                format!(
                    "valid: true\nbase vertices: {}\nadded vertices: {}\nsinks: {}\n",
                    ext.base_vertices().len(),
                    ext.added_vertices().len(),
                    names.join(" ")
                ),
                0,
            ))
        }
        Command::Wojciech { file } => Ok((wojciech_lines(&load(&file)?), 0)),
        Command::Simplify { file } => Ok((serialize_extension(&simplify(&load(&file)?)), 0)),
        Command::Outsplit { file, edge: e, along } => {
            let ext = load(&file)?;
            let e = edge(&e)?;
            let m = if along.is_empty() {
                Move::Outsplit(e)
            } else {
                Move::OutsplitAlongPath(e, along.iter().map(|a| edge(a)).collect::<Result<_, _>>()?)
            };
            let out = apply_move(&ext, &m).map_err(Failure::negative)?;
            Ok((serialize_extension(&out), 0))
        }
        Command::Star { file, vector } => {
            let ext = load(&file)?;
            let m = parse_vector(&vector).map_err(Failure::usage)?;
            let out = apply_move(&ext, &Move::Star(m)).map_err(Failure::negative)?;
            Ok((serialize_extension(&out), 0))
        }
        Command::Classify { first, second, mode, cert } => {
            let (e1, e2) = (load(&first)?, load(&second)?);
            let certificate = match mode {
                Mode::NSink => classify_nsink(&e1, &e2),
                other => classify_1sink(&e1, &e2, other),
            }
            .map_err(classify_failure)?;
            let mut out = format!("verdict: certificate\nmode: {}\n", certificate.mode);
            out.push_str(&wojciech_lines(&certificate.target));
            writeln!(out, "moves: {} + {}", certificate.trace1.len(), certificate.trace2.len()).unwrap();
            if let Some(path) = cert {
                fs::write(&path, certificate.serialize())
                    .map_err(|err| Failure::usage(format!("{}: {err}", path.display())))?;
                writeln!(out, "certificate: {}", path.display()).unwrap();
            }
            Ok((out, 0))
        }
        Command::Verify { first, second, cert } => {
            let (e1, e2) = (load(&first)?, load(&second)?);
            let text = read(&cert)?;
            let certificate =
                parse_certificate(&text).map_err(|err| Failure::usage(format!("{}: {err}", cert.display())))?;
            match verify_certificate(&e1, &e2, &certificate) {
                Ok(()) => Ok(("verified: true\n".into(), 0)),
                Err(reason) => Ok((format!("verified: false\nreason: {reason}\n"), 1)),
            }
        }
        Command::K0 { file } => {
            let ext = load(&file)?;
            let matrix = k0_matrix(&ext).map_err(classify_failure)?;
            let group = k0_presentation(&ext).map_err(classify_failure)?;
            Ok((format!("matrix:\n{}cokernel: {group}\n", matrix.labeled_rows()), 0))
        }
        Command::Ideals { file } => {
            let ext = load(&file)?;
            let sets = saturated_hereditary_subsets(ext.graph(), ENUMERATION_BOUND).map_err(Failure::negative)?;
            let mut out = format!("count: {}\n", sets.len());
            for s in &sets {
                writeln!(out, "{}", fmt_set(s)).unwrap();
            }
            Ok((out, 0))
        }
        Command::Prim { file } => {
            let ext = load(&file)?;
            let family = prim_skeleton(&ext);
            let mut out = String::new();
            for t in &family.tails {
                writeln!(out, "tail: {}", fmt_set(t)).unwrap();
            }
            for (s, up) in &family.sink_tails {
                writeln!(out, "sink {s}: {}", fmt_set(up)).unwrap();
            }
            Ok((out, 0))
        }
        Command::Tails { file } => {
            let ext = load(&file)?;
            let g = ext.base_graph();
            let mut out = format!("matrix:\n{}", vertex_matrix(&g).labeled_rows());
            for t in maximal_tails(&g) {
                writeln!(out, "tail: {}", fmt_set(&t)).unwrap();
            }
            Ok((out, 0))
        }
        Command::Obstruct { first, second } => {
            let (e1, e2) = (load(&first)?, load(&second)?);
            let report = embedding_obstruction(&e1, &e2).map_err(classify_failure)?;
            let ks: Vec<String> = report.kernel.iter().map(ToString::to_string).collect();
            let out = format!(
                "{}\nhypothesis: {}\nkernel: {}\n",
                report.verdict,
                if report.hypothesis_holds { "holds" } else { "fails" },
                if ks.is_empty() { "0".to_string() } else { ks.join(" ") }
            );
            Ok((out, verdict_code(&report.verdict)))
        }
        Command::Dot { file } => Ok((extension_to_dot(&load(&file)?), 0)),
        Command::Fixtures { write } => {
            let mut out = String::new();
            for (name, _) in fixtures::ALL {
                let ext = fixtures::load(name).expect("bundled fixture");
                match &write {
                    Some(dir) => {
                        fs::create_dir_all(dir).map_err(|err| Failure::usage(format!("{}: {err}", dir.display())))?;
                        let path = dir.join(fixtures::file_name(name));
                        fs::write(&path, serialize_extension(&ext))
                            .map_err(|err| Failure::usage(format!("{}: {err}", path.display())))?;
                        writeln!(out, "{}", path.display()).unwrap();
                    }
                    None => writeln!(out, "{name}").unwrap(),
                }
            }
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((report, code)) => {
            print!("{report}");
            ExitCode::from(code)
        }
        Err(Failure { code: 1, message }) => {
            println!("rejected: {message}");
            ExitCode::from(1)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
