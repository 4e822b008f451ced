use thiserror::Error;

/// Everything that can go wrong while building or analysing a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid node name `{0}` (expected [A-Za-z0-9_]+)")]
    InvalidName(String),
    #[error("node `{0}` is used but never declared")]
    UndeclaredNode(String),
    #[error("node `{0}` is declared more than once")]
    DuplicateDeclaration(String),
    #[error("node `{node}` lists child `{child}` more than once")]
    DuplicateChild { node: String, child: String },
    #[error("node `{0}` is not reachable from the point")]
    NotAccessible(String),
    #[error("no node named `{0}` in this graph")]
    UnknownNode(String),
    #[error("graph has a directed cycle through `{0}`")]
    CyclicGraph(String),
    #[error("map does not cover node `{0}` or maps it outside the target graph")]
    IncompleteMap(String),
    #[error("relation is not a bisimulation between the two graphs")]
    NotABisimulation,
    #[error("variable `{0}` is used but never defined")]
    UndefinedVariable(String),
    #[error("no `root <var>` line in the system")]
    NoRoot,
    #[error("witness does not cover singleton `{0}`")]
    NotTotal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
