//! The JSON presentation format.
//!
//! ```json
//! {"type":"sft","alphabet":["0","1"],"forbidden":[["1","1"]]}
//! {"type":"sft_matrix","adjacency":[[1,1],[1,0]]}
//! {"type":"sofic","states":["a","b"],"edges":[["a","a","0"],["a","b","1"],["b","a","0"]]}
//! {"type":"finite","alphabet":["0","1"],"points":[{"pre":["1"],"per":["0"]}]}
//! ```
//!
//! Unknown fields are rejected. A finite point list is closed under the shift
//! on load. Sofic files may carry an optional `alphabet` fixing label order.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::shift::{Alphabet, Edge, EventuallyPeriodicPoint, ShiftPresentation, SoficGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFile {
    pub pre: Vec<String>,
    pub per: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PresentationFile {
    Sft {
        alphabet: Vec<String>,
        forbidden: Vec<Vec<String>>,
    },
    SftMatrix {
        adjacency: Vec<Vec<u8>>,
    },
    Sofic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet: Option<Vec<String>>,
        states: Vec<String>,
        edges: Vec<(String, String, String)>,
    },
    Finite {
        alphabet: Vec<String>,
        points: Vec<PointFile>,
    },
}

impl PresentationFile {
    pub fn into_presentation(self) -> Result<ShiftPresentation> {
        match self {
            PresentationFile::Sft { alphabet, forbidden } => {
                let alphabet = Alphabet::new(alphabet)?;
                let words = forbidden
                    .iter()
                    .map(|w| alphabet.parse_word(w))
                    .collect::<Result<Vec<_>>>()?;
                ShiftPresentation::sft(alphabet, words)
            }
            PresentationFile::SftMatrix { adjacency } => {
                let adjacency = adjacency
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|v| match v {
                                0 => Ok(false),
                                1 => Ok(true),
                                _ => Err(Error::InvalidPresentation(
                                    "adjacency entries must be 0 or 1".into(),
                                )),
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                ShiftPresentation::sft_matrix(adjacency)
            }
            PresentationFile::Sofic {
                alphabet,
                states,
                edges,
            } => {
                let graph = match alphabet {
                    None => SoficGraph::from_named(&states, &edges)?,
                    Some(names) => {
                        let alphabet = Alphabet::new(names)?;
                        let lookup = |s: &str| {
                            states.iter().position(|t| t == s).ok_or_else(|| {
                                Error::InvalidPresentation(format!("unknown state `{s}`"))
                            })
                        };
                        let edges = edges
                            .iter()
                            .map(|(f, t, l)| {
                                Ok(Edge {
                                    from: lookup(f)?,
                                    to: lookup(t)?,
                                    label: alphabet
                                        .index_of(l)
                                        .ok_or_else(|| Error::UnknownSymbol(l.clone()))?,
                                })
                            })
                            .collect::<Result<Vec<_>>>()?;
                        SoficGraph::new(states, &alphabet, edges)?
                    }
                };
                Ok(ShiftPresentation::sofic(graph))
            }
            PresentationFile::Finite { alphabet, points } => {
                let alphabet = Alphabet::new(alphabet)?;
                let mut closed = BTreeSet::new();
                for p in &points {
                    let mut x = EventuallyPeriodicPoint::new(
                        alphabet.parse_word(&p.pre)?,
                        alphabet.parse_word(&p.per)?,
                    )?;
                    while closed.insert(x.clone()) {
                        x = x.shift();
                    }
                }
                ShiftPresentation::finite(alphabet, closed)
            }
        }
    }

    pub fn from_presentation(p: &ShiftPresentation) -> Self {
        let names = |a: &Alphabet| a.symbols().to_vec();
        match p {
            ShiftPresentation::Sft(s) => PresentationFile::Sft {
                alphabet: names(&s.alphabet),
                forbidden: s.forbidden().map(|w| s.alphabet.names(w)).collect(),
            },
            ShiftPresentation::SftMatrix(m) => PresentationFile::SftMatrix {
                adjacency: m
                    .adjacency()
                    .iter()
                    .map(|r| r.iter().map(|&b| b as u8).collect())
                    .collect(),
            },
            ShiftPresentation::Sofic(g) => PresentationFile::Sofic {
                alphabet: Some(names(&g.alphabet)),
                states: g.states().to_vec(),
                edges: g
                    .edges()
                    .iter()
                    .map(|e| {
                        (
                            g.states()[e.from].clone(),
                            g.states()[e.to].clone(),
                            g.alphabet.symbol(e.label).to_string(),
                        )
                    })
                    .collect(),
            },
            ShiftPresentation::Finite(f) => PresentationFile::Finite {
                alphabet: names(&f.alphabet),
                points: f
                    .points()
                    .map(|x| PointFile {
                        pre: f.alphabet.names(x.preperiod()),
                        per: f.alphabet.names(x.period()),
                    })
                    .collect(),
            },
        }
    }
}

pub fn parse_presentation(text: &str) -> Result<ShiftPresentation> {
    let file: PresentationFile = serde_json::from_str(text).map_err(|e| locate(text, e))?;
    file.into_presentation()
}

/// Errors raised on buffered tagged content carry no position; point them
/// at the first occurrence of the quoted name they mention, if any.
fn locate(text: &str, e: serde_json::Error) -> Error {
    if e.line() != 0 {
        return e.into();
    }
    let message = e.to_string();
    let position = message
        .split('`')
        .nth(1)
        .and_then(|name| text.find(&format!("\"{name}\"")))
        .map(|offset| {
            let before = &text[..offset];
            let line = before.matches('\n').count() + 1;
            let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            (line, column)
        });
    let (line, column) = position.unwrap_or((1, 1));
    Error::Parse { line, column, message }
}

pub fn load_presentation(path: impl AsRef<Path>) -> Result<ShiftPresentation> {
    parse_presentation(&std::fs::read_to_string(path)?)
}

/// Compact JSON with fixed key order; equal presentations give equal bytes.
pub fn canonical_json(p: &ShiftPresentation) -> String {
    serde_json::to_string(&PresentationFile::from_presentation(p)).expect("serializable")
}

pub fn pretty_json(p: &ShiftPresentation) -> String {
    serde_json::to_string_pretty(&PresentationFile::from_presentation(p)).expect("serializable")
}

/// Hex SHA-256 of the canonical JSON.
pub fn content_hash(p: &ShiftPresentation) -> String {
    hex::encode(Sha256::digest(canonical_json(p).as_bytes()))
}
