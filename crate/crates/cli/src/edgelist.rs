//! Edge-list and node-set file parsing.
//!
//! Edge lists are whitespace-separated `src dst` lines; `#` starts a comment,
//! blank lines are skipped, and an optional third column (connectome edge
//! weights) is accepted and ignored — only the structure matters. Labels are
//! arbitrary tokens, mapped to indices in first-appearance order. Parsing is
//! total: a malformed line is a positioned error, never a silent skip.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}:{line}: unknown node label {label:?}")]
    UnknownLabel {
        path: PathBuf,
        line: usize,
        label: String,
    },
}

#[derive(Debug, Clone)]
pub struct ParsedGraph {
    /// Index-to-label, in first-appearance order.
    pub labels: Vec<String>,
    pub index: HashMap<String, usize>,
    /// Directed state edges as (from, to) index pairs, deduplicated.
    pub edges: Vec<(usize, usize)>,
}

impl ParsedGraph {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

pub fn parse_edge_list(path: &Path) -> Result<ParsedGraph, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() < 2 || tokens.len() > 3 {
            return Err(FileError::Parse {
                path: path.to_path_buf(),
                line: lineno + 1,
                message: format!(
                    "expected `src dst [weight]`, found {} token(s)",
                    tokens.len()
                ),
            });
        }
        let mut intern = |token: &str| -> usize {
            if let Some(&id) = index.get(token) {
                id
            } else {
                let id = labels.len();
                labels.push(token.to_owned());
                index.insert(token.to_owned(), id);
                id
            }
        };
        let from = intern(tokens[0]);
        let to = intern(tokens[1]);
        edges.insert((from, to));
    }
    Ok(ParsedGraph {
        labels,
        index,
        edges: edges.into_iter().collect(),
    })
}

/// Node-set files: one label per line, comments and blanks as above. Labels
/// must exist in the graph; file order is preserved.
pub fn parse_node_set(path: &Path, graph: &ParsedGraph) -> Result<Vec<usize>, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 1 {
            return Err(FileError::Parse {
                path: path.to_path_buf(),
                line: lineno + 1,
                message: format!("expected one label per line, found {}", tokens.len()),
            });
        }
        match graph.index.get(tokens[0]) {
            Some(&id) => out.push(id),
            None => {
                return Err(FileError::UnknownLabel {
                    path: path.to_path_buf(),
                    line: lineno + 1,
                    label: tokens[0].to_owned(),
                })
            }
        }
    }
    Ok(out)
}
