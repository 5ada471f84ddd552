//! Exact combinatorics for the Higman–Thompson groups V(n,r).
//!
//! Group elements are paired forest diagrams ([`PairedDiagram`]) kept in
//! fully reduced form. [`cantor`] gives the same elements as prefix
//! substitutions of r copies of the n-ary Cantor set and as exact
//! piecewise-linear maps; it does not share code with the diagram calculus
//! and is used to cross-check it. [`operad`] presents the same groups through
//! the PROP of the cube-cutting operad and its groupoid of fractions.
//!
//! ```
//! use htgroups::{parse_diagram, to_prefix_map};
//!
//! let x = parse_diagram("(*,(*,*));[1,2,3];((*,*),*)", 2).unwrap();
//! let square = x.multiply(&x).unwrap();
//! assert_eq!(square.to_string(), "(*,(*,(*,*)));[1,2,3,4];(((*,*),*),*)");
//! let composed = to_prefix_map(&x).compose(&to_prefix_map(&x)).unwrap();
//! assert!(to_prefix_map(&square).equivalent(&composed));
//! ```

pub mod cantor;
pub mod cli;
pub mod diagram;
pub mod dot;
pub mod error;
pub mod forest;
pub mod operad;
pub mod perm;
pub mod suites;
pub mod text;

pub use cantor::{eval_pl, from_prefix_map, to_prefix_map, NAdic, PrefixMap};
pub use diagram::PairedDiagram;
pub use dot::render_dot;
pub use error::{Error, Result};
pub use forest::{count_trees, enumerate_forests, Digit, Forest, LeafAddress, Tree};
pub use operad::{Cuboid, CutSpec, CutTree, Fraction, PropMorphism};
pub use perm::Permutation;
pub use text::{parse_diagram, parse_forest, parse_morphism};
