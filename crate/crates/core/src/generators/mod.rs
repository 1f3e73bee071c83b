//! Corpus production: exhaustive connected cubic graphs, seeded random cubic
//! graphs, named fixtures and bridged gadget chains.

mod exhaustive;
mod gadget;
mod named;
mod random;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{to_graph6, Graph};

pub use exhaustive::{enumerate_cubic_connected, MAX_EXHAUSTIVE_VERTICES};
pub use gadget::{gadget, gadget_chain};
pub use named::{named_graph, NAMED_GRAPHS};
pub use random::{random_connected_cubic, random_cubic, MAX_PAIRING_ATTEMPTS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("cubic graphs need an even order of at least 4, got {0}")]
    InvalidOrder(usize),
    #[error("order {n} exceeds the limit of {max} for this generator")]
    TooLarge { n: usize, max: usize },
    #[error("no simple pairing found after {0} attempts")]
    RejectionBudget(usize),
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("gadget chains need k >= 1")]
    EmptyChain,
}

/// What to generate. Serialized inside run configurations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum CorpusSpec {
    /// All connected cubic graphs for every even order in `min_n..=max_n`.
    Exhaustive {
        min_n: usize,
        max_n: usize,
    },
    /// `count` graphs on `n` vertices from consecutive seeds starting at `seed`.
    Random {
        n: usize,
        count: usize,
        seed: u64,
        #[serde(default)]
        connected: bool,
    },
    Named {
        names: Vec<String>,
    },
    GadgetChain {
        k: usize,
    },
    /// Explicit graph6 strings.
    Graphs {
        graph6: Vec<String>,
    },
    /// Concatenation of several corpora.
    Union {
        parts: Vec<CorpusSpec>,
    },
}

impl CorpusSpec {
    pub fn generate(&self) -> Result<Vec<Graph>, GeneratorError> {
        match self {
            CorpusSpec::Exhaustive { min_n, max_n } => {
                let mut out = Vec::new();
                for n in (*min_n.max(&4)..=*max_n).filter(|n| n % 2 == 0) {
                    out.extend(enumerate_cubic_connected(n)?);
                }
                Ok(out)
            }
            CorpusSpec::Random {
                n,
                count,
                seed,
                connected,
            } => (0..*count as u64)
                .map(|i| {
                    let s = seed.wrapping_add(i);
                    if *connected {
                        random_connected_cubic(*n, s)
                    } else {
                        random_cubic(*n, s)
                    }
                })
                .collect(),
            CorpusSpec::Named { names } => names.iter().map(|s| named_graph(s)).collect(),
            CorpusSpec::GadgetChain { k } => Ok(vec![gadget_chain(*k)?]),
            CorpusSpec::Graphs { graph6 } => graph6
                .iter()
                .map(|s| crate::graph::parse_graph6(s).map_err(|e| GeneratorError::UnknownName(format!("{s}: {e}"))))
                .collect(),
            CorpusSpec::Union { parts } => {
                let mut out = Vec::new();
                for p in parts {
                    out.extend(p.generate()?);
                }
                Ok(out)
            }
        }
    }
}

/// Newline-terminated graph6 lines, the `gen` output format.
pub fn to_graph6_lines(graphs: &[Graph]) -> String {
    graphs.iter().map(|g| to_graph6(g) + "\n").collect()
}
