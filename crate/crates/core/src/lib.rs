//! Finite graphs as a preordered commutative semiring.
//!
//! Join and disjunctive product act as addition and multiplication, graph
//! homomorphisms give the preorder. On top of that this crate provides
//! blowup and fractionalization, a homomorphism search engine, semiring
//! families of graphs with their F-number invariants, the fractional
//! chromatic number (exact), the Lovász number of the complement (SDP
//! enclosure), Haemers minrank over small finite fields, and two-sided
//! bounds on Shannon capacity and communication rates.

pub mod capacity;
pub mod checks;
pub mod clique;
pub mod error;
pub mod expr;
pub mod families;
pub mod fractional;
pub mod gf;
pub mod graph;
pub mod hom;
pub mod ops;
pub mod rational;
pub mod simplex;
pub mod theta;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::Graph;
pub use expr::{eval_str, parse_expr, GraphExpr};
pub use rational::Rational;
pub use hom::{Answer, HomResult, HomWitness, SearchConfig};
pub use vertex_set::VertexSet;
