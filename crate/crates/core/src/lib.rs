//! Graph-side theory and SDP-side numerics for standard quadratic programs of
//! Motzkin–Straus type.
//!
//! The library has two halves that deliberately do not trust each other:
//!
//! * a combinatorial half ([`graph`], [`stability`], [`msform`],
//!   [`convergence`]) that computes stability numbers, critical edges and twin
//!   pairs exactly, and turns them into finite-convergence verdicts for the
//!   Lasserre hierarchy of a given quadratic form;
//! * a numerical half ([`sdp`], [`sos`]) that assembles the hierarchy levels
//!   as semidefinite programs, solves them with an embedded interior-point
//!   method, and extracts sum-of-squares certificates that can be re-verified
//!   symbolically (exactly, in rational arithmetic, where the certificate is
//!   rational).
//!
//! Cross-checking the two halves against each other on small graphs is the
//! point of the crate; neither half ever reuses the other's intermediate
//! results.

#![forbid(unsafe_code)]

pub mod convergence;
pub mod graph;
pub mod msform;
pub mod poly;
pub mod scalar;
pub mod sdp;
pub mod sos;
pub mod stability;

pub use graph::{Graph, GraphError, LabelMap, VertexSet};
pub use msform::{KktReport, QuadForm, SimplexPoint};
pub use convergence::{decide_ms, decide_ms_b, decide_ms_e, Status, Verdict};
pub use sos::{
    solve_level, sweep_levels, verify_certificate, HierarchyResult, SosCertificate,
};
