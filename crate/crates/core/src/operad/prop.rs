//! The PROP of the one-dimensional cube-cutting operad.
//!
//! A morphism `m → r` is normalized to a permutation of the `m` inputs
//! followed by a forest with `r` roots and `m` leaves: input `i` is fed to
//! leaf `π(i)`. Splitting the forest at its roots recovers the sequence of
//! `r` operations.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::forest::{enumerate_forests, Forest, Tree};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropMorphism {
    perm: Permutation,
    forest: Forest,
}

impl PropMorphism {
    pub fn new(perm: Permutation, forest: Forest) -> Result<Self> {
        if perm.len() != forest.leaf_count() {
            return Err(Error::LeafCountMismatch(format!(
                "permutation of {} inputs for a forest with {} leaves",
                perm.len(),
                forest.leaf_count()
            )));
        }
        Ok(PropMorphism { perm, forest })
    }

    /// A pure forest, inputs in leaf order.
    pub fn from_forest(forest: Forest) -> Self {
        PropMorphism { perm: Permutation::identity(forest.leaf_count()), forest }
    }

    /// The identity of object `objects`.
    pub fn identity(arity: usize, objects: usize) -> Result<Self> {
        Ok(PropMorphism::from_forest(Forest::trivial(arity, objects)?))
    }

    pub fn arity(&self) -> usize {
        self.forest.arity()
    }

    pub fn source(&self) -> usize {
        self.perm.len()
    }

    pub fn target(&self) -> usize {
        self.forest.roots()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn forest(&self) -> &Forest {
        &self.forest
    }

    /// `self ∘ first`: the roots of `first` are the inputs of `self`.
    pub fn compose(&self, first: &PropMorphism) -> Result<PropMorphism> {
        if self.arity() != first.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: first.arity() });
        }
        if first.target() != self.source() {
            return Err(Error::BoundaryMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source(),
                self.target(),
                first.source(),
                first.target()
            )));
        }
        let outer_inv = self.perm.inverse();
        let grafts: Vec<Tree> = (0..self.source()).map(|k| first.forest.trees()[outer_inv.apply(k)].clone()).collect();
        let forest = self.forest.graft_all(&grafts)?;

        let mut offsets = Vec::with_capacity(grafts.len());
        let mut acc = 0;
        for t in &grafts {
            offsets.push(acc);
            acc += t.leaf_count();
        }
        // leaf of `first` -> (its tree, position inside that tree)
        let mut location = Vec::with_capacity(first.source());
        for (t, tree) in first.forest.trees().iter().enumerate() {
            location.extend((0..tree.leaf_count()).map(|p| (t, p)));
        }
        let images = (0..first.source())
            .map(|i| {
                let (t, p) = location[first.perm.apply(i)];
                offsets[self.perm.apply(t)] + p
            })
            .collect();
        PropMorphism::new(Permutation::from_images(images)?, forest)
    }
}

/// `g ∘ f`.
pub fn prop_compose(g: &PropMorphism, f: &PropMorphism) -> Result<PropMorphism> {
    g.compose(f)
}

/// Complete the cospan `f: a → c ← b : g` to a commuting square: returns
/// `u: d → a` and `v: d → b` with `f ∘ u = g ∘ v`. Both composites carry the
/// join of the two forests, so for pure forests the square is minimal.
pub fn square_fill(f: &PropMorphism, g: &PropMorphism) -> Result<(PropMorphism, PropMorphism)> {
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), found: g.arity() });
    }
    if f.target() != g.target() {
        return Err(Error::BoundaryMismatch(format!("targets {} and {} differ", f.target(), g.target())));
    }
    let n = f.arity();
    let join = f.forest.join(&g.forest)?;
    let leg = |h: &PropMorphism| -> Result<PropMorphism> {
        let residual = h.forest.residual(&join)?;
        let trees = (0..h.source()).map(|t| residual[h.perm.apply(t)].clone()).collect();
        Ok(PropMorphism::from_forest(Forest::new(n, trees)?))
    };
    let u = leg(f)?;
    let v_pure = leg(g)?;
    let via_f = f.compose(&u)?;
    let via_g = g.compose(&v_pure)?;
    let perm = via_g.perm.inverse().compose(&via_f.perm);
    let v = PropMorphism::new(perm, v_pure.forest)?;
    debug_assert_eq!(f.compose(&u)?, g.compose(&v)?);
    Ok((u, v))
}

/// Limits of the exhaustive cancellation check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CancellationBound {
    pub arity: usize,
    pub max_carets: usize,
    pub max_source: usize,
}

/// Every morphism with target ≥ 1, at most `max_carets` carets and at most
/// `max_source` inputs.
pub fn enumerate_morphisms(bound: CancellationBound) -> Vec<PropMorphism> {
    let n = bound.arity;
    let mut out = Vec::new();
    for target in 1..=bound.max_source {
        for carets in 0..=bound.max_carets {
            let source = target + carets * (n - 1);
            if source > bound.max_source {
                break;
            }
            let perms = Permutation::all(source);
            for forest in enumerate_forests(n, target, carets) {
                for perm in &perms {
                    out.push(PropMorphism { perm: perm.clone(), forest: forest.clone() });
                }
            }
        }
    }
    out
}

/// `(a, f, g)` with `f ≠ g` but equal composites.
pub type Counterexample = (PropMorphism, PropMorphism, PropMorphism);

#[derive(Clone, Debug, Default)]
pub struct CancellationReport {
    pub morphisms: usize,
    /// Composites `a ∘ f` examined.
    pub right_checks: usize,
    /// Composites `f ∘ a` examined.
    pub left_checks: usize,
    /// `a ∘ f = a ∘ g` with `f ≠ g`.
    pub right_failures: Vec<Counterexample>,
    /// `f ∘ a = g ∘ a` with `f ≠ g`.
    pub left_failures: Vec<Counterexample>,
    /// Right failures for which no enumerated `b` has `f ∘ b = g ∘ b`.
    pub equalization_failures: usize,
}

impl CancellationReport {
    pub fn is_cancellative(&self) -> bool {
        self.right_failures.is_empty() && self.left_failures.is_empty()
    }

    pub fn satisfies_equalization(&self) -> bool {
        self.equalization_failures == 0
    }
}

pub fn check_cancellative(bound: CancellationBound) -> CancellationReport {
    check_cancellative_with(bound, &|g, f| g.compose(f))
}

/// The cancellation check with a caller-supplied composition `(g, f) ↦ g ∘ f`.
pub fn check_cancellative_with(
    bound: CancellationBound,
    compose: &dyn Fn(&PropMorphism, &PropMorphism) -> Result<PropMorphism>,
) -> CancellationReport {
    let all = enumerate_morphisms(bound);
    let mut homs: HashMap<(usize, usize), Vec<&PropMorphism>> = HashMap::new();
    for m in &all {
        homs.entry((m.source(), m.target())).or_default().push(m);
    }
    let mut report = CancellationReport { morphisms: all.len(), ..Default::default() };

    for a in &all {
        // a ∘ f for every f landing in the source of a
        for (&(_, y), fs) in homs.iter().filter(|(&(_, y), _)| y == a.source()) {
            debug_assert_eq!(y, a.source());
            let mut seen: HashMap<PropMorphism, &PropMorphism> = HashMap::new();
            for &f in fs {
                let Ok(af) = compose(a, f) else { continue };
                report.right_checks += 1;
                if let Some(&g) = seen.get(&af) {
                    report.right_failures.push((a.clone(), f.clone(), g.clone()));
                } else {
                    seen.insert(af, f);
                }
            }
        }
        // f ∘ a for every f leaving the target of a
        for (&(x, _), fs) in homs.iter().filter(|(&(x, _), _)| x == a.target()) {
            debug_assert_eq!(x, a.target());
            let mut seen: HashMap<PropMorphism, &PropMorphism> = HashMap::new();
            for &f in fs {
                let Ok(fa) = compose(f, a) else { continue };
                report.left_checks += 1;
                if let Some(&g) = seen.get(&fa) {
                    report.left_failures.push((a.clone(), f.clone(), g.clone()));
                } else {
                    seen.insert(fa, f);
                }
            }
        }
    }

    for (_, f, g) in &report.right_failures {
        let equalized = all
            .iter()
            .filter(|b| b.target() == f.source())
            .any(|b| matches!((compose(f, b), compose(g, b)), (Ok(x), Ok(y)) if x == y));
        if !equalized {
            report.equalization_failures += 1;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_forest, parse_morphism};

    fn m(s: &str) -> PropMorphism {
        parse_morphism(s, 2).unwrap()
    }

    #[test]
    fn identity_laws() {
        let f = m("[3,1,2];(*,*),*");
        assert_eq!(PropMorphism::identity(2, 2).unwrap().compose(&f).unwrap(), f);
        assert_eq!(f.compose(&PropMorphism::identity(2, 3).unwrap()).unwrap(), f);
    }

    #[test]
    fn pure_forests_compose_by_grafting() {
        let g = PropMorphism::from_forest(parse_forest("(*,*),*", 2).unwrap());
        let f = PropMorphism::from_forest(parse_forest("*,(*,*),*", 2).unwrap());
        let gf = g.compose(&f).unwrap();
        assert_eq!(gf.forest(), &parse_forest("(*,(*,*)),*", 2).unwrap());
        assert!(gf.permutation().is_identity());
        assert_eq!(gf.source(), 4);
    }

    #[test]
    fn permutations_route_trees() {
        // the outer permutation swaps which root of f lands on which leaf
        let g = m("[2,1];(*,*)");
        let f = PropMorphism::from_forest(parse_forest("(*,*),*", 2).unwrap());
        let gf = g.compose(&f).unwrap();
        assert_eq!(gf.to_string(), "[2,3,1];(*,(*,*))");
    }

    #[test]
    fn boundary_mismatch() {
        let f = m("[1,2];*,*");
        let g = m("[1,2,3];*,*,*");
        assert!(matches!(g.compose(&f), Err(Error::BoundaryMismatch(_))));
        assert!(square_fill(&f, &g).is_err());
    }

    #[test]
    fn square_fill_examples() {
        let f = m("[2,1,3];(*,*),*");
        let (u, v) = square_fill(&f, &f).unwrap();
        assert_eq!(u, PropMorphism::identity(2, 3).unwrap());
        assert_eq!(v, u);

        let a = parse_forest("((*,*),*)", 2).unwrap();
        let b = parse_forest("(*,(*,*))", 2).unwrap();
        let (u, v) = square_fill(&PropMorphism::from_forest(a.clone()), &PropMorphism::from_forest(b.clone())).unwrap();
        let join = a.join(&b).unwrap();
        assert_eq!(u.forest().trees(), &a.residual(&join).unwrap()[..]);
        assert_eq!(v.forest().trees(), &b.residual(&join).unwrap()[..]);
    }

    #[test]
    fn enumeration_size() {
        let all = enumerate_morphisms(CancellationBound { arity: 2, max_carets: 2, max_source: 4 });
        assert_eq!(all.len(), 251);
    }
}
