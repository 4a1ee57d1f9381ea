use alloc::vec::Vec;

use crate::model::SpecViolation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("ring needs at least 3 sites, got {n_sites}")]
    InvalidSize { n_sites: usize },

    #[error("invalid ring specification: {}", join_violations(.0))]
    InvalidSpec(Vec<SpecViolation>),

    #[error("excitation number {excitations} is outside 0..={n_sites} (or the operation's narrower range)")]
    InvalidExcitation { excitations: usize, n_sites: usize },

    #[error("analytic eigenstates require uniform couplings and no site disorder")]
    RequiresUniform,

    #[error("momentum label {q} is not valid for an {parity} excitation number on a {n_sites}-site ring")]
    InvalidLabel { q: usize, parity: &'static str, n_sites: usize },

    #[error("momentum labels must be pairwise distinct")]
    DuplicateLabel,

    #[error("site occupation must be strictly ascending and within 1..={n_sites}")]
    InvalidOccupation { n_sites: usize },

    #[error("manifolds are not an adjacent (n, n+1) pair of opposite label parity")]
    InvalidManifoldPair,

    #[error("operation expects a {expected}-excitation state, got {found}")]
    InvalidManifold { expected: usize, found: usize },

    #[error("label sum difference is not a multiple of 2N; the closed form does not apply")]
    SelectionRuleViolated,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: |H[{row}][{col}] - conj(H[{col}][{row}])| = {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("Jacobi eigensolver did not converge in {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("no accidental level: N = {n_sites} is not of the form 4l + 2")]
    NoAccidentalLevel { n_sites: usize },

    #[error("cluster tracking ambiguous: width {width:e} vs separation {separation:e}; disorder too strong")]
    TrackingAmbiguous { width: f64, separation: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

fn join_violations(v: &[SpecViolation]) -> alloc::string::String {
    use alloc::string::ToString;
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
