//! Ordered n-ary rooted trees and forests.
//!
//! Leaves are numbered left to right in depth-first order, roots in sequence
//! order. Every leaf also has an address: the index of its root together with
//! the word of child positions leading to it. The addresses of a forest form a
//! complete prefix-free cover of the r-fold n-ary address space, which is the
//! bridge to the prefix-map semantics in [`crate::cantor`].

use std::collections::HashMap;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// A single letter of an address word, in `0..n`.
pub type Digit = u32;

/// An ordered tree. The arity is fixed by the containing [`Forest`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Node(Vec<Tree>),
}

impl Tree {
    /// A single caret: one internal node with `n` leaf children.
    pub fn caret(n: usize) -> Tree {
        Tree::Node(vec![Tree::Leaf; n])
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(children) => children.iter().map(Tree::leaf_count).sum(),
        }
    }

    /// Number of internal vertices.
    pub fn caret_count(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(children) => 1 + children.iter().map(Tree::caret_count).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(children) => 1 + children.iter().map(Tree::depth).max().unwrap_or(0),
        }
    }

    /// Whether every internal node has exactly `n` children.
    pub fn has_arity(&self, n: usize) -> bool {
        match self {
            Tree::Leaf => true,
            Tree::Node(children) => children.len() == n && children.iter().all(|c| c.has_arity(n)),
        }
    }

    /// Child count of the first internal node in preorder, if any.
    pub fn first_arity(&self) -> Option<usize> {
        match self {
            Tree::Leaf => None,
            Tree::Node(children) => Some(children.len()),
        }
    }

    /// Address words of the leaves, in left-to-right order.
    pub fn leaf_words(&self) -> Vec<Vec<Digit>> {
        let mut out = Vec::with_capacity(self.leaf_count());
        let mut prefix = Vec::new();
        self.collect_words(&mut prefix, &mut out);
        out
    }

    fn collect_words(&self, prefix: &mut Vec<Digit>, out: &mut Vec<Vec<Digit>>) {
        match self {
            Tree::Leaf => out.push(prefix.clone()),
            Tree::Node(children) => {
                for (d, child) in children.iter().enumerate() {
                    prefix.push(d as Digit);
                    child.collect_words(prefix, out);
                    prefix.pop();
                }
            }
        }
    }

    /// The subtree reached by following `word` from the root.
    pub fn subtree(&self, word: &[Digit]) -> Option<&Tree> {
        let mut at = self;
        for &d in word {
            match at {
                Tree::Leaf => return None,
                Tree::Node(children) => at = children.get(d as usize)?,
            }
        }
        Some(at)
    }

    /// Replace leaf `index` (0-based, depth-first) by `tree`. Returns the
    /// unconsumed index when the leaf lies beyond this tree.
    fn graft_at(&self, index: usize, tree: &Tree) -> std::result::Result<Tree, usize> {
        match self {
            Tree::Leaf if index == 0 => Ok(tree.clone()),
            Tree::Leaf => Err(index - 1),
            Tree::Node(children) => {
                let mut rest = index;
                for (pos, child) in children.iter().enumerate() {
                    match child.graft_at(rest, tree) {
                        Ok(grafted) => {
                            let mut new_children = children.clone();
                            new_children[pos] = grafted;
                            return Ok(Tree::Node(new_children));
                        }
                        Err(r) => rest = r,
                    }
                }
                Err(rest)
            }
        }
    }

    fn join(&self, other: &Tree) -> Tree {
        match (self, other) {
            (Tree::Leaf, t) | (t, Tree::Leaf) => t.clone(),
            (Tree::Node(a), Tree::Node(b)) => Tree::Node(a.iter().zip(b).map(|(x, y)| x.join(y)).collect()),
        }
    }

    fn refines(&self, coarser: &Tree) -> bool {
        match (self, coarser) {
            (_, Tree::Leaf) => true,
            (Tree::Leaf, Tree::Node(_)) => false,
            (Tree::Node(a), Tree::Node(b)) => a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.refines(y)),
        }
    }

    fn collect_residual(&self, finer: &Tree, out: &mut Vec<Tree>) -> Result<()> {
        match (self, finer) {
            (Tree::Leaf, t) => {
                out.push(t.clone());
                Ok(())
            }
            (Tree::Node(a), Tree::Node(b)) if a.len() == b.len() => {
                for (x, y) in a.iter().zip(b) {
                    x.collect_residual(y, out)?;
                }
                Ok(())
            }
            _ => Err(Error::NotARefinement),
        }
    }
}

/// Address of a leaf: a root index (0-based) and a word over `0..n`.
///
/// The derived ordering is (root, lexicographic word), which on the leaves of
/// a forest coincides with the depth-first leaf order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafAddress {
    pub root: usize,
    pub word: Vec<Digit>,
}

impl LeafAddress {
    pub fn new(root: usize, word: Vec<Digit>) -> Self {
        LeafAddress { root, word }
    }

    pub fn is_prefix_of(&self, other: &LeafAddress) -> bool {
        self.root == other.root && other.word.starts_with(&self.word)
    }

    /// `self` followed by `suffix`.
    pub fn extended(&self, suffix: &[Digit]) -> LeafAddress {
        let mut word = self.word.clone();
        word.extend_from_slice(suffix);
        LeafAddress { root: self.root, word }
    }

    /// The address with its last letter removed, together with that letter.
    pub fn split_last(&self) -> Option<(LeafAddress, Digit)> {
        let (&last, init) = self.word.split_last()?;
        Some((LeafAddress::new(self.root, init.to_vec()), last))
    }
}

/// An ordered sequence of `r ≥ 1` trees of a common arity `n ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest {
    arity: usize,
    trees: Vec<Tree>,
}

impl Forest {
    pub fn new(arity: usize, trees: Vec<Tree>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidArity(arity));
        }
        if trees.is_empty() {
            return Err(Error::NoRoots);
        }
        if let Some(bad) = trees.iter().find(|t| !t.has_arity(arity)) {
            return Err(Error::ArityMismatch { expected: arity, found: find_bad_arity(bad, arity).unwrap_or(arity) });
        }
        Ok(Forest { arity, trees })
    }

    /// The forest of `roots` bare leaves.
    pub fn trivial(arity: usize, roots: usize) -> Result<Self> {
        Forest::new(arity, vec![Tree::Leaf; roots])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn roots(&self) -> usize {
        self.trees.len()
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.trees
    }

    pub fn leaf_count(&self) -> usize {
        self.trees.iter().map(Tree::leaf_count).sum()
    }

    pub fn caret_count(&self) -> usize {
        self.trees.iter().map(Tree::caret_count).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.trees.iter().all(Tree::is_leaf)
    }

    /// Addresses of all leaves in depth-first order.
    pub fn leaf_addresses(&self) -> Vec<LeafAddress> {
        self.trees
            .iter()
            .enumerate()
            .flat_map(|(root, t)| t.leaf_words().into_iter().map(move |w| LeafAddress::new(root, w)))
            .collect()
    }

    /// Replace leaf `leaf` (0-based) by `tree`.
    pub fn graft(&self, leaf: usize, tree: &Tree) -> Result<Forest> {
        if !tree.has_arity(self.arity) {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: find_bad_arity(tree, self.arity).unwrap_or(self.arity),
            });
        }
        let mut rest = leaf;
        for (pos, t) in self.trees.iter().enumerate() {
            match t.graft_at(rest, tree) {
                Ok(grafted) => {
                    let mut trees = self.trees.clone();
                    trees[pos] = grafted;
                    return Ok(Forest { arity: self.arity, trees });
                }
                Err(r) => rest = r,
            }
        }
        Err(Error::IndexOutOfRange { index: leaf, size: self.leaf_count() })
    }

    /// Graft one tree onto every leaf at once; `trees[i]` goes on leaf `i`.
    pub fn graft_all(&self, trees: &[Tree]) -> Result<Forest> {
        if trees.len() != self.leaf_count() {
            return Err(Error::LeafCountMismatch(format!("{} trees for {} leaves", trees.len(), self.leaf_count())));
        }
        let mut iter = trees.iter();
        let grafted = self.trees.iter().map(|t| graft_each(t, &mut iter)).collect();
        Forest::new(self.arity, grafted)
    }

    fn check_compatible(&self, other: &Forest) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        if self.roots() != other.roots() {
            return Err(Error::RootMismatch { expected: self.roots(), found: other.roots() });
        }
        Ok(())
    }

    /// Least common refinement: the union of the carets of both forests.
    pub fn join(&self, other: &Forest) -> Result<Forest> {
        self.check_compatible(other)?;
        let trees = self.trees.iter().zip(&other.trees).map(|(a, b)| a.join(b)).collect();
        Ok(Forest { arity: self.arity, trees })
    }

    /// Whether every caret of `coarser` is a caret of `self` at the same address.
    pub fn refines(&self, coarser: &Forest) -> bool {
        self.arity == coarser.arity
            && self.roots() == coarser.roots()
            && self.trees.iter().zip(&coarser.trees).all(|(a, b)| a.refines(b))
    }

    /// For each leaf of `self`, the subtree of `finer` hanging at that leaf's
    /// address. Grafting them back with [`Forest::graft_all`] yields `finer`.
    pub fn residual(&self, finer: &Forest) -> Result<Vec<Tree>> {
        self.check_compatible(finer)?;
        let mut out = Vec::with_capacity(self.leaf_count());
        for (a, b) in self.trees.iter().zip(&finer.trees) {
            a.collect_residual(b, &mut out)?;
        }
        Ok(out)
    }

    /// Rebuild the forest whose leaf addresses are exactly `cover`.
    ///
    /// Fails unless `cover` is a complete prefix-free cover of the address
    /// space of every root. The order of `cover` is irrelevant.
    pub fn from_cover(arity: usize, roots: usize, cover: &[LeafAddress]) -> Result<Forest> {
        if arity < 2 {
            return Err(Error::InvalidArity(arity));
        }
        if roots == 0 {
            return Err(Error::NoRoots);
        }
        let mut per_root: Vec<Vec<&[Digit]>> = vec![Vec::new(); roots];
        for a in cover {
            let slot = per_root.get_mut(a.root).ok_or(Error::IndexOutOfRange { index: a.root, size: roots })?;
            slot.push(&a.word);
        }
        let trees = per_root
            .iter()
            .enumerate()
            .map(|(root, words)| tree_from_words(arity, root, words, 0))
            .collect::<Result<Vec<_>>>()?;
        Ok(Forest { arity, trees })
    }
}

fn graft_each<'a>(tree: &Tree, trees: &mut impl Iterator<Item = &'a Tree>) -> Tree {
    match tree {
        Tree::Leaf => trees.next().cloned().unwrap_or(Tree::Leaf),
        Tree::Node(children) => Tree::Node(children.iter().map(|c| graft_each(c, trees)).collect()),
    }
}

fn find_bad_arity(tree: &Tree, n: usize) -> Option<usize> {
    match tree {
        Tree::Leaf => None,
        Tree::Node(children) if children.len() != n => Some(children.len()),
        Tree::Node(children) => children.iter().find_map(|c| find_bad_arity(c, n)),
    }
}

fn tree_from_words(n: usize, root: usize, words: &[&[Digit]], depth: usize) -> Result<Tree> {
    let describe = |w: &[Digit]| {
        let digits: Vec<String> = w.iter().map(|d| d.to_string()).collect();
        format!("root {} word [{}]", root + 1, digits.join(" "))
    };
    match words {
        [] => return Err(Error::InvalidCover(format!("no address covers root {}", root + 1))),
        [w] if w.len() == depth => return Ok(Tree::Leaf),
        _ => {}
    }
    if let Some(w) = words.iter().find(|w| w.len() == depth) {
        return Err(Error::InvalidCover(format!("{} overlaps another address", describe(w))));
    }
    let mut buckets: Vec<Vec<&[Digit]>> = vec![Vec::new(); n];
    for w in words {
        let d = w[depth] as usize;
        if d >= n {
            return Err(Error::InvalidCover(format!("{} uses digit {d} >= arity {n}", describe(w))));
        }
        buckets[d].push(w);
    }
    let children = buckets
        .iter()
        .enumerate()
        .map(|(d, b)| {
            if b.is_empty() {
                let mut hole = words[0][..depth].to_vec();
                hole.push(d as Digit);
                Err(Error::InvalidCover(format!("{} is not covered", describe(&hole))))
            } else {
                tree_from_words(n, root, b, depth + 1)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Tree::Node(children))
}

/// All n-ary trees with exactly `carets` internal vertices.
pub fn enumerate_trees(arity: usize, carets: usize) -> Vec<Tree> {
    if carets == 0 {
        return vec![Tree::Leaf];
    }
    tree_sequences(arity, arity, carets - 1).into_iter().map(Tree::Node).collect()
}

fn tree_sequences(arity: usize, len: usize, carets: usize) -> Vec<Vec<Tree>> {
    if len == 0 {
        return if carets == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=carets {
        let heads = enumerate_trees(arity, first);
        let tails = tree_sequences(arity, len - 1, carets - first);
        for head in &heads {
            for tail in &tails {
                let mut seq = Vec::with_capacity(len);
                seq.push(head.clone());
                seq.extend(tail.iter().cloned());
                out.push(seq);
            }
        }
    }
    out
}

/// All (n,r)-forests with exactly `carets` internal vertices, sorted by their
/// printed form.
pub fn enumerate_forests(arity: usize, roots: usize, carets: usize) -> Vec<Forest> {
    if arity < 2 || roots == 0 {
        return Vec::new();
    }
    let mut forests: Vec<Forest> =
        tree_sequences(arity, roots, carets).into_iter().map(|trees| Forest { arity, trees }).collect();
    forests.sort_by_cached_key(|f| f.to_string());
    forests
}

/// Memoized exact counts of trees and forests by caret number.
#[derive(Debug)]
pub struct ForestCounter {
    arity: usize,
    memo: HashMap<(usize, usize), BigUint>,
}

impl ForestCounter {
    pub fn new(arity: usize) -> Self {
        ForestCounter { arity, memo: HashMap::new() }
    }

    /// Trees with `carets` internal vertices.
    pub fn trees(&mut self, carets: usize) -> BigUint {
        if carets == 0 {
            BigUint::one()
        } else {
            self.forests(self.arity, carets - 1)
        }
    }

    /// Ordered sequences of `roots` trees with `carets` internal vertices in total.
    pub fn forests(&mut self, roots: usize, carets: usize) -> BigUint {
        if roots == 0 {
            return if carets == 0 { BigUint::one() } else { BigUint::zero() };
        }
        if let Some(v) = self.memo.get(&(roots, carets)) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for first in 0..=carets {
            total += self.trees(first) * self.forests(roots - 1, carets - first);
        }
        self.memo.insert((roots, carets), total.clone());
        total
    }

    /// A uniformly random forest with `roots` roots and `carets` carets.
    pub fn sample<R: Rng + ?Sized>(&mut self, roots: usize, carets: usize, rng: &mut R) -> Forest {
        let trees = self.sample_sequence(roots, carets, rng);
        Forest { arity: self.arity, trees }
    }

    fn sample_sequence<R: Rng + ?Sized>(&mut self, len: usize, carets: usize, rng: &mut R) -> Vec<Tree> {
        if len == 0 {
            return Vec::new();
        }
        let mut pick = rng.gen_biguint_below(&self.forests(len, carets));
        let mut first = carets;
        for t in 0..=carets {
            let weight = self.trees(t) * self.forests(len - 1, carets - t);
            if pick < weight {
                first = t;
                break;
            }
            pick -= weight;
        }
        let mut seq = Vec::with_capacity(len);
        seq.push(self.sample_tree(first, rng));
        seq.extend(self.sample_sequence(len - 1, carets - first, rng));
        seq
    }

    fn sample_tree<R: Rng + ?Sized>(&mut self, carets: usize, rng: &mut R) -> Tree {
        if carets == 0 {
            Tree::Leaf
        } else {
            Tree::Node(self.sample_sequence(self.arity, carets - 1, rng))
        }
    }
}

/// Number of n-ary trees with `leaves` leaves; zero unless `leaves ≡ 1 (mod n-1)`.
pub fn count_trees(arity: usize, leaves: usize) -> BigUint {
    if arity < 2 || leaves == 0 || !(leaves - 1).is_multiple_of(arity - 1) {
        return BigUint::zero();
    }
    ForestCounter::new(arity).trees((leaves - 1) / (arity - 1))
}

/// Number of (n,r)-forests with `carets` carets.
pub fn count_forests(arity: usize, roots: usize, carets: usize) -> BigUint {
    if arity < 2 || roots == 0 {
        return BigUint::zero();
    }
    ForestCounter::new(arity).forests(roots, carets)
}

/// A uniformly random (n,r)-forest with the given number of carets.
pub fn random_forest<R: Rng + ?Sized>(arity: usize, roots: usize, carets: usize, rng: &mut R) -> Result<Forest> {
    if arity < 2 {
        return Err(Error::InvalidArity(arity));
    }
    if roots == 0 {
        return Err(Error::NoRoots);
    }
    Ok(ForestCounter::new(arity).sample(roots, carets, rng))
}
