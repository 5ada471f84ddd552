//! Elements of V(n,r) as paired forest diagrams.
//!
//! A diagram `(F₋, σ, F₊)` matches leaf `i` of the domain forest `F₋` with
//! leaf `σ(i)` of the codomain forest `F₊`. Two diagrams are equivalent when
//! they are related by expansions (grafting the same tree on a matched pair of
//! leaves) and reductions (the inverse). Every public group operation returns
//! the fully reduced representative, which is unique.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::forest::{Forest, ForestCounter, LeafAddress, Tree};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairedDiagram {
    domain: Forest,
    perm: Permutation,
    codomain: Forest,
}

impl PairedDiagram {
    /// Assemble a diagram without reducing it.
    pub fn new(domain: Forest, perm: Permutation, codomain: Forest) -> Result<Self> {
        if domain.arity() != codomain.arity() {
            return Err(Error::ArityMismatch { expected: domain.arity(), found: codomain.arity() });
        }
        if domain.roots() != codomain.roots() {
            return Err(Error::RootMismatch { expected: domain.roots(), found: codomain.roots() });
        }
        let (l, m) = (domain.leaf_count(), codomain.leaf_count());
        if l != m || perm.len() != l {
            return Err(Error::LeafCountMismatch(format!(
                "domain has {l} leaves, codomain has {m}, permutation has size {}",
                perm.len()
            )));
        }
        Ok(PairedDiagram { domain, perm, codomain })
    }

    pub fn identity(arity: usize, roots: usize) -> Result<Self> {
        let trivial = Forest::trivial(arity, roots)?;
        Ok(PairedDiagram { domain: trivial.clone(), perm: Permutation::identity(roots), codomain: trivial })
    }

    pub fn arity(&self) -> usize {
        self.domain.arity()
    }

    pub fn roots(&self) -> usize {
        self.domain.roots()
    }

    pub fn leaf_count(&self) -> usize {
        self.perm.len()
    }

    pub fn domain(&self) -> &Forest {
        &self.domain
    }

    pub fn codomain(&self) -> &Forest {
        &self.codomain
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    /// Pairs `(address of domain leaf i, address of codomain leaf σ(i))`.
    pub fn matched_addresses(&self) -> Vec<(LeafAddress, LeafAddress)> {
        let dom = self.domain.leaf_addresses();
        let cod = self.codomain.leaf_addresses();
        dom.into_iter().enumerate().map(|(i, u)| (u, cod[self.perm.apply(i)].clone())).collect()
    }

    fn check_same_group(&self, other: &PairedDiagram) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: other.arity() });
        }
        if self.roots() != other.roots() {
            return Err(Error::RootMismatch { expected: self.roots(), found: other.roots() });
        }
        Ok(())
    }

    /// Graft `tree` on domain leaf `leaf` and on its matched codomain leaf.
    pub fn expand(&self, leaf: usize, tree: &Tree) -> Result<Self> {
        let l = self.leaf_count();
        if leaf >= l {
            return Err(Error::IndexOutOfRange { index: leaf, size: l });
        }
        let mut trees = vec![Tree::Leaf; l];
        trees[leaf] = tree.clone();
        self.expand_domain_leaves(&trees)
    }

    /// Simultaneous expansion: `trees[i]` is grafted on domain leaf `i` and on
    /// codomain leaf `σ(i)`. The j-th new domain leaf under leaf `i` is
    /// matched with the j-th new codomain leaf under `σ(i)`.
    pub fn expand_domain_leaves(&self, trees: &[Tree]) -> Result<Self> {
        let l = self.leaf_count();
        if trees.len() != l {
            return Err(Error::LeafCountMismatch(format!("{} trees for {l} leaves", trees.len())));
        }
        let inv = self.perm.inverse();
        let cod_trees: Vec<Tree> = (0..l).map(|b| trees[inv.apply(b)].clone()).collect();
        let domain = self.domain.graft_all(trees)?;
        let codomain = self.codomain.graft_all(&cod_trees)?;

        let offsets = |ts: &[Tree]| {
            let mut acc = 0;
            ts.iter()
                .map(|t| {
                    let start = acc;
                    acc += t.leaf_count();
                    start
                })
                .collect::<Vec<_>>()
        };
        let dom_off = offsets(trees);
        let cod_off = offsets(&cod_trees);
        let mut images = vec![0; domain.leaf_count()];
        for (a, t) in trees.iter().enumerate() {
            let b = self.perm.apply(a);
            for j in 0..t.leaf_count() {
                images[dom_off[a] + j] = cod_off[b] + j;
            }
        }
        Ok(PairedDiagram { domain, perm: Permutation::from_images(images)?, codomain })
    }

    /// Like [`expand_domain_leaves`](Self::expand_domain_leaves), with the
    /// trees indexed by codomain leaf.
    pub fn expand_codomain_leaves(&self, trees: &[Tree]) -> Result<Self> {
        let l = self.leaf_count();
        if trees.len() != l {
            return Err(Error::LeafCountMismatch(format!("{} trees for {l} leaves", trees.len())));
        }
        let by_domain: Vec<Tree> = (0..l).map(|a| trees[self.perm.apply(a)].clone()).collect();
        self.expand_domain_leaves(&by_domain)
    }

    /// The unique fully reduced representative.
    pub fn reduce(&self) -> Self {
        let n = self.arity();
        let mut dom = self.domain.leaf_addresses();
        let mut cod = self.codomain.leaf_addresses();
        let mut perm: Vec<usize> = self.perm.images().to_vec();
        let mut changed = false;
        while let Some((i, k)) = find_reducible(n, &dom, &perm, &cod) {
            contract(n, &mut dom, &mut perm, &mut cod, i, k);
            changed = true;
        }
        if !changed {
            return self.clone();
        }
        let roots = self.roots();
        PairedDiagram {
            domain: Forest::from_cover(n, roots, &dom).expect("contraction keeps the domain cover complete"),
            perm: Permutation::from_images(perm).expect("contraction keeps the matching bijective"),
            codomain: Forest::from_cover(n, roots, &cod).expect("contraction keeps the codomain cover complete"),
        }
    }

    /// Whether no matched pair of elementary carets is left.
    pub fn is_reduced(&self) -> bool {
        let dom = self.domain.leaf_addresses();
        let cod = self.codomain.leaf_addresses();
        find_reducible(self.arity(), &dom, self.perm.images(), &cod).is_none()
    }

    /// The product `self ∘ other`: `other` acts first, then `self`.
    ///
    /// The codomain of `other` and the domain of `self` are both expanded to
    /// their join, after which the middle forests coincide and the matchings
    /// compose.
    pub fn multiply(&self, other: &PairedDiagram) -> Result<Self> {
        self.check_same_group(other)?;
        let middle = other.codomain.join(&self.domain)?;
        let first = other.expand_codomain_leaves(&other.codomain.residual(&middle)?)?;
        let second = self.expand_domain_leaves(&self.domain.residual(&middle)?)?;
        debug_assert_eq!(first.codomain, second.domain);
        let perm = second.perm.compose(&first.perm);
        Ok(PairedDiagram { domain: first.domain, perm, codomain: second.codomain }.reduce())
    }

    pub fn invert(&self) -> Self {
        PairedDiagram { domain: self.codomain.clone(), perm: self.perm.inverse(), codomain: self.domain.clone() }
            .reduce()
    }

    /// Whether both diagrams represent the same group element.
    pub fn equivalent(&self, other: &PairedDiagram) -> bool {
        self.arity() == other.arity() && self.roots() == other.roots() && self.reduce() == other.reduce()
    }

    /// Membership in F(n,r): the reduced matching is the identity.
    pub fn is_in_f(&self) -> bool {
        self.reduce().perm.is_identity()
    }

    /// Membership in T(n,r): the reduced matching is a cyclic rotation.
    pub fn is_in_t(&self) -> bool {
        self.reduce().perm.is_rotation()
    }

    /// The image under V(n,r) → V(n,r+1): one extra fixed bare root.
    pub fn stabilize(&self) -> Self {
        let n = self.arity();
        let push_leaf = |f: &Forest| {
            let mut trees = f.trees().to_vec();
            trees.push(Tree::Leaf);
            Forest::new(n, trees).expect("appending a leaf keeps the forest valid")
        };
        let mut images = self.perm.images().to_vec();
        images.push(images.len());
        PairedDiagram {
            domain: push_leaf(&self.domain),
            perm: Permutation::from_images(images).expect("fixed point extension"),
            codomain: push_leaf(&self.codomain),
        }
        .reduce()
    }

    /// The isomorphism V(n,r) → V(n,r+n-1) splitting the last root into its
    /// `n` children.
    pub fn periodicity_iso(&self) -> Self {
        let n = self.arity();
        let mut d = self.reduce();
        if d.domain.trees().last().is_some_and(Tree::is_leaf) {
            d = d.expand(d.leaf_count() - 1, &Tree::caret(n)).expect("last leaf exists");
        }
        if d.codomain.trees().last().is_some_and(Tree::is_leaf) {
            let a = d.perm.inverse().apply(d.leaf_count() - 1);
            d = d.expand(a, &Tree::caret(n)).expect("matched leaf exists");
        }
        let split = |f: &Forest| {
            let mut trees = f.trees().to_vec();
            match trees.pop() {
                Some(Tree::Node(children)) => trees.extend(children),
                _ => unreachable!("last root carries a caret"),
            }
            Forest::new(n, trees).expect("splitting a root keeps the forest valid")
        };
        PairedDiagram { domain: split(&d.domain), perm: d.perm.clone(), codomain: split(&d.codomain) }.reduce()
    }

    /// Inverse of [`periodicity_iso`](Self::periodicity_iso): the last `n`
    /// roots are joined under a new caret. Needs at least `n` roots.
    pub fn periodicity_inverse(&self) -> Result<Self> {
        let n = self.arity();
        if self.roots() < n {
            return Err(Error::OutOfRange(format!("need at least {n} roots to merge, have {}", self.roots())));
        }
        let merge = |f: &Forest| {
            let mut trees = f.trees().to_vec();
            let tail = trees.split_off(trees.len() - n);
            trees.push(Tree::Node(tail));
            Forest::new(n, trees).expect("merging roots keeps the forest valid")
        };
        Ok(PairedDiagram { domain: merge(&self.domain), perm: self.perm.clone(), codomain: merge(&self.codomain) }
            .reduce())
    }

    /// Deterministic random element: both forests uniform among `carets`-caret
    /// forests, the matching uniform; returned reduced.
    pub fn random(arity: usize, roots: usize, carets: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(arity, roots, carets, &mut rng)
    }

    pub fn random_with<R: Rng + ?Sized>(arity: usize, roots: usize, carets: usize, rng: &mut R) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidArity(arity));
        }
        if roots == 0 {
            return Err(Error::NoRoots);
        }
        let mut counter = ForestCounter::new(arity);
        let domain = counter.sample(roots, carets, rng);
        let codomain = counter.sample(roots, carets, rng);
        let perm = Permutation::random(domain.leaf_count(), rng);
        Ok(PairedDiagram { domain, perm, codomain }.reduce())
    }
}

/// `block` is `w0, w1, .., w(n-1)` for a common parent `w`.
fn is_sibling_block(block: &[LeafAddress]) -> bool {
    let Some((parent, 0)) = block[0].split_last() else {
        return false;
    };
    block.iter().enumerate().skip(1).all(|(j, a)| {
        a.root == parent.root
            && a.word.len() == parent.word.len() + 1
            && a.word[..parent.word.len()] == parent.word[..]
            && a.word[parent.word.len()] as usize == j
    })
}

fn find_reducible(n: usize, dom: &[LeafAddress], perm: &[usize], cod: &[LeafAddress]) -> Option<(usize, usize)> {
    let l = perm.len();
    if l < n {
        return None;
    }
    (0..=l - n).find_map(|i| {
        let k = perm[i];
        let ok = k + n <= l
            && (1..n).all(|j| perm[i + j] == k + j)
            && is_sibling_block(&dom[i..i + n])
            && is_sibling_block(&cod[k..k + n]);
        ok.then_some((i, k))
    })
}

fn contract(
    n: usize,
    dom: &mut Vec<LeafAddress>,
    perm: &mut Vec<usize>,
    cod: &mut Vec<LeafAddress>,
    i: usize,
    k: usize,
) {
    let shift = n - 1;
    let dom_parent = dom[i].split_last().expect("sibling block").0;
    let cod_parent = cod[k].split_last().expect("sibling block").0;
    dom.splice(i..i + n, [dom_parent]);
    cod.splice(k..k + n, [cod_parent]);
    let old = std::mem::take(perm);
    *perm = old
        .iter()
        .enumerate()
        .filter(|&(a, _)| a <= i || a >= i + n)
        .map(|(_, &v)| if v <= k { v } else { v - shift })
        .collect();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_diagram;

    fn d(s: &str) -> PairedDiagram {
        parse_diagram(s, 2).unwrap()
    }

    #[test]
    fn identity_is_trivial() {
        let id = PairedDiagram::identity(2, 1).unwrap();
        assert_eq!(id.to_string(), "*;[1];*");
        assert_eq!(id.invert(), id);
    }

    #[test]
    fn expand_identity() {
        let id = PairedDiagram::identity(2, 1).unwrap();
        let e = id.expand(0, &Tree::caret(2)).unwrap();
        assert_eq!(e, d("(*,*);[1,2];(*,*)"));
        assert_eq!(e.reduce(), id);
        assert!(id.expand(1, &Tree::caret(2)).is_err());
    }

    #[test]
    fn expand_renumbers_matching() {
        let x = d("(*,(*,*));[3,1,2];((*,*),*)");
        let e = x.expand(1, &Tree::caret(2)).unwrap();
        assert_eq!(e.leaf_count(), 4);
        assert_eq!(e.to_string(), "(*,((*,*),*));[4,1,2,3];(((*,*),*),*)");
        assert_eq!(e.reduce(), x.reduce());
    }

    #[test]
    fn reduce_cancels_matched_carets() {
        assert_eq!(d("(*,*);[1,2];(*,*)").reduce(), PairedDiagram::identity(2, 1).unwrap());
        // order-reversing match does not cancel
        assert!(d("(*,*);[2,1];(*,*)").is_reduced());
    }

    #[test]
    fn multiply_example() {
        let x = d("(*,(*,*));[1,2,3];((*,*),*)");
        assert_eq!(x.multiply(&x).unwrap(), d("(*,(*,(*,*)));[1,2,3,4];(((*,*),*),*)"));
        let id = PairedDiagram::identity(2, 1).unwrap();
        assert_eq!(x.multiply(&id).unwrap(), x);
        assert_eq!(x.multiply(&x.invert()).unwrap(), id);
    }

    #[test]
    fn multiply_rejects_other_groups() {
        let a = PairedDiagram::identity(2, 1).unwrap();
        assert!(a.multiply(&PairedDiagram::identity(2, 2).unwrap()).is_err());
        assert!(a.multiply(&PairedDiagram::identity(3, 1).unwrap()).is_err());
    }

    #[test]
    fn equality_and_membership() {
        let id = PairedDiagram::identity(2, 1).unwrap();
        let swap = d("(*,*);[2,1];(*,*)");
        assert!(!id.equivalent(&swap));
        assert!(swap.equivalent(&swap.expand(1, &Tree::caret(2)).unwrap()));
        assert!(id.is_in_f());
        assert!(!swap.is_in_f());
        assert!(swap.is_in_t());
        assert!(!d("((*,*),*);[2,1,3];((*,*),*)").is_in_t());
    }

    #[test]
    fn stabilize_and_periodicity_identity() {
        let id = PairedDiagram::identity(3, 2).unwrap();
        assert_eq!(id.stabilize(), PairedDiagram::identity(3, 3).unwrap());
        assert_eq!(PairedDiagram::identity(2, 1).unwrap().periodicity_iso(), PairedDiagram::identity(2, 2).unwrap());
        assert!(PairedDiagram::identity(3, 2).unwrap().periodicity_inverse().is_err());
    }

    #[test]
    fn random_is_deterministic() {
        let a = PairedDiagram::random(3, 2, 5, 11).unwrap();
        assert_eq!(a, PairedDiagram::random(3, 2, 5, 11).unwrap());
        assert!(a.is_reduced());
        assert_eq!(PairedDiagram::random(2, 1, 0, 3).unwrap(), PairedDiagram::identity(2, 1).unwrap());
    }
}
