use thiserror::Error;

/// A single failed globular relation, reported by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobularDefect {
    /// Dimension of the offending cell.
    pub dim: usize,
    pub cell: String,
    /// `"ss=st"` or `"ts=tt"`.
    pub relation: &'static str,
}

impl std::fmt::Display for GlobularDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails at dimension {} on `{}`", self.relation, self.dim, self.cell)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {dim} out of range (truncation {truncation})")]
    DimOutOfRange { dim: usize, truncation: usize },

    #[error("cell `{name}` in dimension {dim} is not declared")]
    MissingCell { dim: usize, name: String },

    #[error("cell `{name}` declared twice in dimension {dim}")]
    DuplicateCell { dim: usize, name: String },

    #[error("{map} has no entry for cell `{cell}` in dimension {dim}")]
    MissingEntry { map: String, dim: usize, cell: String },

    #[error("globular relations violated: {}", list_defects(.0))]
    GlobularViolation(Vec<GlobularDefect>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("table shape violated at k={position}: {detail}")]
    ShapeViolation { position: usize, detail: String },

    #[error("index {index} out of range 1..={width}")]
    IndexOutOfRange { index: usize, width: usize },

    #[error(
        "`{left}` and `{right}` are not composable for *^{i}_{j}: source `{left_boundary}` vs target `{right_boundary}`"
    )]
    NotComposable {
        i: usize,
        j: usize,
        left: String,
        right: String,
        left_boundary: String,
        right_boundary: String,
    },

    #[error("inverse tables are absent")]
    InversesAbsent,

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not abelian: {0}")]
    NotAbelian(String),

    #[error("gluing equation {index} fails: {detail}")]
    GluingViolation { index: usize, detail: String },

    #[error("points are not natural: {0}")]
    NotNatural(String),

    #[error("invalid operation table: {0}")]
    InvalidTable(String),

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("invalid presheaf: {0}")]
    InvalidPresheaf(String),

    #[error("invalid axiom flags: {0}")]
    InvalidFlags(String),

    #[error("structure mismatch: {0}")]
    Mismatch(String),
}

fn list_defects(defects: &[GlobularDefect]) -> String {
    defects
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
