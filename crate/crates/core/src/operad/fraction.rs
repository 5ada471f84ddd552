//! Spans of PROP morphisms as morphisms of the groupoid of fractions.

use crate::diagram::PairedDiagram;
use crate::error::{Error, Result};
use crate::operad::prop::{square_fill, PropMorphism};

/// The groupoid morphism `numerator ∘ denominator⁻¹ : r → s`, where
/// `denominator: m → r` and `numerator: m → s` share their source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    denominator: PropMorphism,
    numerator: PropMorphism,
}

impl Fraction {
    pub fn new(denominator: PropMorphism, numerator: PropMorphism) -> Result<Self> {
        if denominator.arity() != numerator.arity() {
            return Err(Error::ArityMismatch { expected: denominator.arity(), found: numerator.arity() });
        }
        if denominator.source() != numerator.source() {
            return Err(Error::BoundaryMismatch(format!(
                "span legs have sources {} and {}",
                denominator.source(),
                numerator.source()
            )));
        }
        Ok(Fraction { denominator, numerator })
    }

    pub fn identity(arity: usize, object: usize) -> Result<Self> {
        let id = PropMorphism::identity(arity, object)?;
        Ok(Fraction { denominator: id.clone(), numerator: id })
    }

    pub fn denominator(&self) -> &PropMorphism {
        &self.denominator
    }

    pub fn numerator(&self) -> &PropMorphism {
        &self.numerator
    }

    pub fn source(&self) -> usize {
        self.denominator.target()
    }

    pub fn target(&self) -> usize {
        self.numerator.target()
    }

    pub fn inverse(&self) -> Self {
        Fraction { denominator: self.numerator.clone(), numerator: self.denominator.clone() }
    }

    /// `self` followed by `then`, via a square filling of the middle cospan.
    pub fn multiply(&self, then: &Fraction) -> Result<Fraction> {
        if self.target() != then.source() {
            return Err(Error::BoundaryMismatch(format!(
                "fraction into {} followed by fraction out of {}",
                self.target(),
                then.source()
            )));
        }
        let (u, v) = square_fill(&self.numerator, &then.denominator)?;
        Fraction::new(self.denominator.compose(&u)?, then.numerator.compose(&v)?)
    }

    /// The paired diagram `(forest of p, π_q ∘ π_p⁻¹, forest of q)`, reduced.
    pub fn to_diagram(&self) -> Result<PairedDiagram> {
        if self.source() != self.target() {
            return Err(Error::BoundaryMismatch(format!(
                "fraction {} -> {} is not an automorphism",
                self.source(),
                self.target()
            )));
        }
        let perm = self.numerator.permutation().compose(&self.denominator.permutation().inverse());
        Ok(PairedDiagram::new(self.denominator.forest().clone(), perm, self.numerator.forest().clone())?.reduce())
    }

    /// A section of [`to_diagram`](Self::to_diagram): the domain forest with
    /// inputs in order over the codomain forest with the matching.
    pub fn from_diagram(d: &PairedDiagram) -> Self {
        Fraction {
            denominator: PropMorphism::from_forest(d.domain().clone()),
            numerator: PropMorphism::new(d.permutation().clone(), d.codomain().clone())
                .expect("a diagram's matching fits its codomain"),
        }
    }
}

pub fn fraction_to_diagram(x: &Fraction) -> Result<PairedDiagram> {
    x.to_diagram()
}

pub fn diagram_to_fraction(d: &PairedDiagram) -> Fraction {
    Fraction::from_diagram(d)
}
