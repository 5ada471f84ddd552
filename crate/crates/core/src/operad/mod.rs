//! Cube-cutting operads, the PROP of the one-dimensional one, and its
//! groupoid of fractions.

mod cube;
mod fraction;
mod prop;

pub use cube::{factorize, independence_check, Cuboid, CutNode, CutSpec, CutTree};
pub use fraction::{diagram_to_fraction, fraction_to_diagram, Fraction};
pub use prop::{
    check_cancellative, check_cancellative_with, enumerate_morphisms, prop_compose, square_fill, CancellationBound,
    CancellationReport, Counterexample, PropMorphism,
};
