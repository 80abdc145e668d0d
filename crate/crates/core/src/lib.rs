//! Finite ring workbench.
//!
//! Small rings are built compositionally (integers mod n, matrix and
//! triangular rings, products, quotients, corners, subrings, group rings),
//! their elements are classified exhaustively, ring-level properties around
//! clean and nil-clean decompositions are decided from element definitions,
//! and a suite of verifiers cross-checks the known characterizations of
//! those properties on concrete rings.

pub mod constructors;
pub mod corpus;
pub mod elements;
pub mod expr;
pub mod group;
pub mod report;
pub mod ring;
pub mod structure;
pub mod theorems;

pub use constructors::{
    make_corner, make_group_ring, make_matrix_ring, make_product, make_quotient, make_subring,
    make_upper_triangular, make_zmod, Embedded, GroupRing, Limits, Quotient,
};
pub use elements::{Commuting, Decomposition, DecompositionKind, ElementClass};
pub use expr::{
    parse_elem_ref, parse_group_expr, parse_ring_expr, ElemRef, GroupExpr, ParseError, RingExpr,
    Subject,
};
pub use group::{is_2_group, make_cyclic_group, make_group_product, FiniteGroup};
pub use ring::{
    verify_axioms, Axiom, AxiomReport, Coverage, Elem, ElementSet, FiniteRing, RingId, RingTables,
    TableError,
};
pub use structure::{Check, Ideal, Property, PropertyReport};
pub use theorems::{TheoremId, TheoremVerdict};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    Table(#[from] TableError),
    #[error("axiom violated: {axiom} (witness {witness:?})")]
    Axiom { axiom: Axiom, witness: [usize; 3] },
    #[error("the zero ring is not supported")]
    ZeroRing,
    #[error("bad labels: {0}")]
    Labels(String),
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("element index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("no element labelled {0:?}")]
    UnknownLabel(String),
    #[error("requested order {requested} exceeds the size cap of {cap}")]
    SizeCap { requested: u128, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not idempotent")]
    NotIdempotent(String),
    #[error("not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("ideal is not nil: {0} is not nilpotent")]
    NotNil(String),
    #[error("subring generated by {0} has no identity")]
    NoIdentity(String),
    #[error("invalid group table: {0}")]
    Group(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
