//! Tree-pair diagram algebra and geodesic word length for the generalized
//! Thompson's groups F(p+1), together with two independent oracles used to
//! verify the metric: exact enumeration of Cayley-graph balls and exact
//! rational piecewise-linear map semantics.
//!
//! The crate is organized as pure operations over immutable values:
//!
//! - [`tree`]: (p+1)-ary trees, parsing, leaf intervals.
//! - [`words`]: generator letters, words, presentation relators.
//! - [`diagram`]: tree-pair diagrams, products, reduction, generators.
//! - [`classify`]: caret numbering and the refined caret type system.
//! - [`metric`]: the caret-pair weight table and the word-length function,
//!   plus the subtree/minimality predicates and length-change predictions.
//! - [`plmap`]: exact rational piecewise-linear homeomorphisms of [0,1].
//! - [`cayley`]: breadth-first ball enumeration, distance maps, dead-end
//!   search by definition, geodesics, fellow-traveller divergence.
//! - [`families`]: seesaw words and dead ends: constructors, verifiers and
//!   the structural dead-end recognizer.

pub mod cayley;
pub mod classify;
pub mod diagram;
pub mod error;
pub mod families;
pub mod metric;
pub mod plmap;
pub mod tree;
pub mod words;

pub use diagram::{
    evaluate_word, letter_diagram, make_generator, make_infinite_generator, TreePairDiagram,
};
pub use error::{Error, Result};
pub use tree::{GroupParams, Tree};
pub use words::{GeneratorLetter, GroupWord};
