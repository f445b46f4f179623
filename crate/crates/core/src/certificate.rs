//! Replayable witnesses that two extensions are related by moves.
//!
//! ```text
//! certificate v1
//! mode <mode>
//! base <sha256 of the serialised base graph>
//! trace 1
//! <move>*
//! end
//! trace 2
//! <move>*
//! end
//! F
//! <extension document>
//! end
//! ```

use std::fmt::Write as _;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::classify::{apply_a_minus_i, Mode};
use crate::extension::{
    apply_move, canonically_equal, is_forest_extension, parse_extension, parse_move, serialize_extension, simplify,
    wojciech_vectors, ExtensionError, Move, MoveTrace, SinkExtension, Violation,
};
use crate::graph::{serialize_graph, Graph};
use crate::ids::EdgeId;
use crate::vector::VertexVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub mode: Mode,
    pub base_hash: String,
    pub trace1: MoveTrace,
    pub trace2: MoveTrace,
    /// The common simple extension both traces end at.
    pub target: SinkExtension,
}

/// Lower-case hex SHA-256 of [`serialize_graph`].
pub fn base_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(serialize_graph(g).as_bytes()))
}

impl Certificate {
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "certificate v1").unwrap();
        writeln!(out, "mode {}", self.mode).unwrap();
        writeln!(out, "base {}", self.base_hash).unwrap();
        for (i, trace) in [&self.trace1, &self.trace2].into_iter().enumerate() {
            writeln!(out, "trace {}", i + 1).unwrap();
            for m in trace.moves() {
                writeln!(out, "{m}").unwrap();
            }
            writeln!(out, "end").unwrap();
        }
        writeln!(out, "F").unwrap();
        out.push_str(&serialize_extension(&self.target));
        writeln!(out, "end").unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct CertificateError {
    pub line: usize,
    pub message: String,
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last: usize,
}

impl<'a> Lines<'a> {
    /// Next non-blank line with its 1-based number, trimmed.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            self.last = i + 1;
            let line = raw.trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), CertificateError> {
        let last = self.last;
        self.next()
            .ok_or_else(|| CertificateError { line: last + 1, message: format!("expected {what}, found end of input") })
    }

    fn keyword(&mut self, key: &str) -> Result<(usize, &'a str), CertificateError> {
        let (line, text) = self.expect(key)?;
        let rest = if text == key {
            ""
        } else {
            text.strip_prefix(key)
                .and_then(|r| r.strip_prefix(char::is_whitespace))
                .ok_or_else(|| CertificateError { line, message: format!("expected {key:?}, found {text:?}") })?
        };
        Ok((line, rest.trim()))
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate, CertificateError> {
    let mut lines = Lines { inner: text.lines().enumerate().peekable(), last: 0 };
    let err = |line: usize, message: String| CertificateError { line, message };
    let (line, version) = lines.keyword("certificate")?;
    if version != "v1" {
        return Err(err(line, format!("unsupported certificate version {version:?}")));
    }
    let (line, mode) = lines.keyword("mode")?;
    let mode: Mode = mode.parse().map_err(|m| err(line, m))?;
    let (line, base_hash) = lines.keyword("base")?;
    if base_hash.len() != 64 || !base_hash.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b)) {
        return Err(err(line, format!("bad base hash {base_hash:?}")));
    }
    let mut traces = Vec::with_capacity(2);
    for index in 1..=2 {
        let (line, n) = lines.keyword("trace")?;
        if n != index.to_string() {
            return Err(err(line, format!("expected trace {index}, found trace {n}")));
        }
        let mut trace = MoveTrace::new();
        loop {
            let (line, text) = lines.expect("a move or end")?;
            if text == "end" {
                break;
            }
            trace.push(parse_move(text).map_err(|m| err(line, m))?);
        }
        traces.push(trace);
    }
    let (line, rest) = lines.keyword("F")?;
    if !rest.is_empty() {
        return Err(err(line, format!("unexpected text after F: {rest:?}")));
    }
    let start = line;
    let mut body = String::new();
    loop {
        let (_, text) = lines.expect("extension lines or end")?;
        if text == "end" {
            break;
        }
        body.push_str(text);
        body.push('\n');
    }
    let target = parse_extension(&body).map_err(|e| match e {
        ExtensionError::Parse(p) => err(start + p.line, p.kind.to_string()),
        other => err(start, other.to_string()),
    })?;
    if let Some((line, text)) = lines.next() {
        return Err(err(line, format!("trailing content {text:?}")));
    }
    let trace2 = traces.pop().expect("two traces");
    let trace1 = traces.pop().expect("two traces");
    Ok(Certificate { mode, base_hash: base_hash.to_string(), trace1, trace2, target })
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("base hash mismatch: certificate has {found}, base graph hashes to {expected}")]
    BaseHash { expected: String, found: String },
    #[error("target is not an extension of the same base graph")]
    TargetBase,
    #[error("trace {trace}, move {index}: {source}")]
    Replay { trace: usize, index: usize, source: ExtensionError },
    #[error("trace {trace}, move {index}: result is not an extension: {}", render(.violations))]
    Intermediate { trace: usize, index: usize, violations: Vec<Violation> },
    #[error("trace {trace}, move {index}: Wojciech vector of sink {sink} is {found}, expected {expected}")]
    WojciechUpdate { trace: usize, index: usize, sink: usize, expected: VertexVector, found: VertexVector },
    #[error("trace {trace}: simplified result has Wojciech vectors {found}, target has {expected}")]
    WojciechMismatch { trace: usize, expected: String, found: String },
    #[error("trace {trace}: simplified result is not canonically equal to the target")]
    NotCanonical { trace: usize },
}

fn render(vs: &[Violation]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn render_ws(ws: &[VertexVector]) -> String {
    ws.iter().map(|w| format!("[{w}]")).collect::<Vec<_>>().join(" ")
}

/// The sink reached from the range of boundary edge `e` in a forest extension.
fn sink_below(ext: &SinkExtension, e: &EdgeId) -> Option<usize> {
    let g = ext.graph();
    let below = g.descendants([g.range(e).ok()?]);
    ext.sinks().iter().position(|s| below.contains(s))
}

/// Predicted Wojciech vectors after an outsplitting move on a forest extension.
fn predicted(ext: &SinkExtension, m: &Move) -> Option<(usize, VertexVector)> {
    let g = ext.base_graph();
    let (e, visits): (&EdgeId, Vec<_>) = match m {
        Move::Outsplit(e) => (e, vec![ext.graph().source(e).ok()?.clone()]),
        Move::OutsplitAlongPath(e, alpha) => {
            (e, alpha.iter().map(|a| g.range(a).cloned()).collect::<Result<_, _>>().ok()?)
        }
        _ => return None,
    };
    let k = sink_below(ext, e)?;
    let mut n = VertexVector::new();
    for v in &visits {
        n.add_to(v, &BigInt::from(1));
    }
    let before = crate::extension::wojciech_vector(ext, k).ok()?;
    Some((k, &before + &apply_a_minus_i(&g, &n)))
}

/// Replays both traces, rechecking every intermediate extension and the
/// Wojciech update of each outsplitting of a forest extension, and
/// compares the simplified results with the target.
pub fn verify_certificate(first: &SinkExtension, second: &SinkExtension, cert: &Certificate) -> Result<(), Rejection> {
    let g = first.base_graph();
    let expected = base_hash(&g);
    if cert.base_hash != expected {
        return Err(Rejection::BaseHash { expected, found: cert.base_hash.clone() });
    }
    if second.base_graph() != g {
        return Err(Rejection::BaseHash { expected, found: base_hash(&second.base_graph()) });
    }
    if cert.target.base_graph() != g {
        return Err(Rejection::TargetBase);
    }
    let target_ws = wojciech_vectors(&cert.target);
    for (t, (start, trace)) in [(first, &cert.trace1), (second, &cert.trace2)].into_iter().enumerate() {
        let trace_no = t + 1;
        let mut current = start.clone();
        for (index, m) in trace.moves().iter().enumerate() {
            let prediction = if is_forest_extension(&current) { predicted(&current, m) } else { None };
            let next =
                apply_move(&current, m).map_err(|source| Rejection::Replay { trace: trace_no, index, source })?;
            let violations = next.violations();
            if !violations.is_empty() {
                return Err(Rejection::Intermediate { trace: trace_no, index, violations });
            }
            if let Some((sink, expected)) = prediction {
                let found = crate::extension::wojciech_vector(&next, sink).expect("sink index");
                if found != expected {
                    return Err(Rejection::WojciechUpdate { trace: trace_no, index, sink, expected, found });
                }
            }
            current = next;
        }
        let result = simplify(&current);
        let ws = wojciech_vectors(&result);
        if ws != target_ws {
            return Err(Rejection::WojciechMismatch {
                trace: trace_no,
                expected: render_ws(&target_ws),
                found: render_ws(&ws),
            });
        }
        if !canonically_equal(&result, &cert.target) {
            return Err(Rejection::NotCanonical { trace: trace_no });
        }
    }
    Ok(())
}
