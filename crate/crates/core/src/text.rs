//! Line-oriented document lexer shared by the graph and extension formats.
//!
//! ```text
//! # comment
//! v <vertex-id> [base|ext]
//! e <edge-id> <source-id> <range-id> [base|ext]
//! sink <vertex-id>
//! ```

use thiserror::Error;

use crate::ids::{EdgeId, IdError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("bad identifier: {0}")]
    BadId(#[from] IdError),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge {0}")]
    DuplicateEdge(EdgeId),
    #[error("edge {edge} has dangling endpoint {vertex}")]
    DanglingEndpoint { edge: EdgeId, vertex: VertexId },
    #[error("role tag not allowed in a plain graph document")]
    UnexpectedTag,
    #[error("sink declaration not allowed in a plain graph document")]
    UnexpectedSink,
    #[error("sink {0} declared twice")]
    DuplicateSink(VertexId),
    #[error("sink {0} is not a declared vertex")]
    UnknownSink(VertexId),
}

/// A parse failure, tagged with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: impl Into<ParseErrorKind>) -> Self {
        Self { line, kind: kind.into() }
    }
}

/// Membership tag of a vertex or edge in an extension document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Base,
    Ext,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Base => "base",
            Role::Ext => "ext",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Record {
    Vertex { id: VertexId, role: Option<Role> },
    Edge { id: EdgeId, source: VertexId, range: VertexId, role: Option<Role> },
    Sink { id: VertexId },
}

fn role(token: &str, line: usize) -> Result<Role, ParseError> {
    match token {
        "base" => Ok(Role::Base),
        "ext" => Ok(Role::Ext),
        other => Err(ParseError::new(
            line,
            ParseErrorKind::Malformed(format!("unknown role {other:?}, expected base or ext")),
        )),
    }
}

/// Splits a document into records, dropping blank lines and comments.
pub(crate) fn lex(text: &str) -> Result<Vec<(usize, Record)>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&keyword, args)) = tokens.split_first() else {
            continue;
        };
        let vid = |s: &str| VertexId::new(s).map_err(|err| ParseError::new(line, err));
        let eid = |s: &str| EdgeId::new(s).map_err(|err| ParseError::new(line, err));
        let record = match (keyword, args) {
            ("v", [id]) => Record::Vertex { id: vid(id)?, role: None },
            ("v", [id, tag]) => Record::Vertex { id: vid(id)?, role: Some(role(tag, line)?) },
            ("e", [id, s, r]) => Record::Edge { id: eid(id)?, source: vid(s)?, range: vid(r)?, role: None },
            ("e", [id, s, r, tag]) => {
                Record::Edge { id: eid(id)?, source: vid(s)?, range: vid(r)?, role: Some(role(tag, line)?) }
            }
            ("sink", [id]) => Record::Sink { id: vid(id)? },
            _ => return Err(ParseError::new(line, ParseErrorKind::Malformed(content.trim().to_string()))),
        };
        out.push((line, record));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let recs = lex("# header\n\nv a   # trailing\ne x a a ext\nsink a\n").unwrap();
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[0].0, 3);
        assert!(matches!(recs[1].1, Record::Edge { role: Some(Role::Ext), .. }));
    }

    #[test]
    fn malformed_lines_report_line_number() {
        let err = lex("v a\nv\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = lex("v a\ne x a\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = lex("v a maybe\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Malformed(_)));
    }
}
