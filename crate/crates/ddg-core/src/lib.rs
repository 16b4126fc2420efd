//! Exact classification toolkit for proper divisible design graphs (DDGs).
//!
//! A DDG is a k-regular graph whose vertex set splits into `m` classes of
//! size `n` such that same-class vertex pairs have `lambda1` common
//! neighbours and cross-class pairs have `lambda2`. The crate covers the
//! whole pipeline: screening feasible parameter tuples, enumerating quotient
//! matrices of the canonical partition, completing adjacency matrices with
//! isomorph rejection, a library of constructions with bundled ingredients,
//! and catalog emission.

pub mod canon;
pub mod catalog;
pub mod constructions;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod ops;
pub mod params;
pub mod quotient;

pub use canon::{certificate, Certificate};
pub use graph::{ClassPartition, Graph, GraphError};
pub use params::{feasible_parameters, FeasibleTuple, ParamSet, SpectrumProfile};
pub use quotient::{enumerate_quotients, quotient_of, QuotientMatrix};
