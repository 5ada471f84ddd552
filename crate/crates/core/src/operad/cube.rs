//! Cube-cutting operads: iterated equal subdivisions of the unit k-cube.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forest::Tree;

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Whether `n₁^r₁⋯n_k^r_k = n₁^s₁⋯n_k^s_k` forces `r = s`, i.e. whether the
/// prime-exponent vectors of the numbers are linearly independent over ℚ.
pub fn independence_check(numbers: &[u64]) -> bool {
    if numbers.iter().any(|&n| n < 2) {
        return false;
    }
    let factored: Vec<Vec<(u64, u32)>> = numbers.iter().map(|&n| factorize(n)).collect();
    let mut primes: Vec<u64> = factored.iter().flatten().map(|&(p, _)| p).collect();
    primes.sort_unstable();
    primes.dedup();
    let rows: Vec<Vec<BigRational>> = factored
        .iter()
        .map(|f| {
            primes
                .iter()
                .map(|p| {
                    let e = f.iter().find(|(q, _)| q == p).map_or(0, |&(_, e)| e);
                    BigRational::from_integer(BigInt::from(e))
                })
                .collect()
        })
        .collect();
    rank(rows) == numbers.len()
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = &rows[i][c] / &rows[r][c];
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &factor * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Independence data `N₁, …, N_k`, one set of allowed part counts per axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CutSpec {
    sets: Vec<Vec<u64>>,
}

impl CutSpec {
    pub fn new(sets: Vec<Vec<u64>>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidCut("dimension must be at least 1".into()));
        }
        let mut normalized = Vec::with_capacity(sets.len());
        for (axis, mut set) in sets.into_iter().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() || set.iter().any(|&n| n < 2) {
                return Err(Error::InvalidCut(format!("axis {} needs part counts >= 2", axis + 1)));
            }
            if !independence_check(&set) {
                return Err(Error::InvalidCut(format!("part counts {set:?} on axis {} are not independent", axis + 1)));
            }
            normalized.push(set);
        }
        Ok(CutSpec { sets: normalized })
    }

    /// `k = 1`, `N = {n}`: the operad behind V(n,r).
    pub fn interval(n: u64) -> Result<Self> {
        CutSpec::new(vec![vec![n]])
    }

    pub fn dimension(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<u64>] {
        &self.sets
    }

    pub fn allows(&self, axis: usize, parts: usize) -> bool {
        self.sets.get(axis).is_some_and(|s| s.contains(&(parts as u64)))
    }
}

/// A node splits its box along `axis` (0-based) into `parts.len()` equal slabs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CutNode {
    Leaf,
    Split { axis: usize, parts: Vec<CutNode> },
}

impl CutNode {
    pub fn leaf_count(&self) -> usize {
        match self {
            CutNode::Leaf => 1,
            CutNode::Split { parts, .. } => parts.iter().map(CutNode::leaf_count).sum(),
        }
    }

    fn validate(&self, spec: &CutSpec) -> Result<()> {
        match self {
            CutNode::Leaf => Ok(()),
            CutNode::Split { axis, parts } => {
                if !spec.allows(*axis, parts.len()) {
                    return Err(Error::InvalidCut(format!(
                        "split into {} along axis {} is not allowed",
                        parts.len(),
                        axis + 1
                    )));
                }
                parts.iter().try_for_each(|p| p.validate(spec))
            }
        }
    }

    fn graft_at(&self, index: usize, inner: &CutNode) -> std::result::Result<CutNode, usize> {
        match self {
            CutNode::Leaf if index == 0 => Ok(inner.clone()),
            CutNode::Leaf => Err(index - 1),
            CutNode::Split { axis, parts } => {
                let mut rest = index;
                for (pos, child) in parts.iter().enumerate() {
                    match child.graft_at(rest, inner) {
                        Ok(g) => {
                            let mut parts = parts.clone();
                            parts[pos] = g;
                            return Ok(CutNode::Split { axis: *axis, parts });
                        }
                        Err(r) => rest = r,
                    }
                }
                Err(rest)
            }
        }
    }

    fn collect_boxes(&self, within: Cuboid, out: &mut Vec<Cuboid>) {
        match self {
            CutNode::Leaf => out.push(within),
            CutNode::Split { axis, parts } => {
                let (a, b) = within.sides[*axis].clone();
                let step = (&b - &a) / BigRational::from_integer(BigInt::from(parts.len()));
                for (i, child) in parts.iter().enumerate() {
                    let mut piece = within.clone();
                    let lo = &a + &step * BigRational::from_integer(BigInt::from(i));
                    piece.sides[*axis] = (lo.clone(), lo + &step);
                    child.collect_boxes(piece, out);
                }
            }
        }
    }
}

/// An operation of the cube-cutting operad with its independence data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CutTree {
    spec: CutSpec,
    root: CutNode,
}

impl CutTree {
    pub fn new(spec: CutSpec, root: CutNode) -> Result<Self> {
        root.validate(&spec)?;
        Ok(CutTree { spec, root })
    }

    /// The identity operation.
    pub fn leaf(spec: CutSpec) -> Self {
        CutTree { spec, root: CutNode::Leaf }
    }

    pub fn spec(&self) -> &CutSpec {
        &self.spec
    }

    pub fn root(&self) -> &CutNode {
        &self.root
    }

    /// Number of inputs.
    pub fn arity(&self) -> usize {
        self.root.leaf_count()
    }

    /// The k = 1 cut tree of an n-ary tree.
    pub fn from_tree(tree: &Tree, n: u64) -> Result<Self> {
        fn convert(t: &Tree) -> CutNode {
            match t {
                Tree::Leaf => CutNode::Leaf,
                Tree::Node(children) => CutNode::Split { axis: 0, parts: children.iter().map(convert).collect() },
            }
        }
        CutTree::new(CutSpec::interval(n)?, convert(tree))
    }

    /// The tree underlying a one-dimensional cut tree.
    pub fn to_tree(&self) -> Option<Tree> {
        fn convert(c: &CutNode) -> Tree {
            match c {
                CutNode::Leaf => Tree::Leaf,
                CutNode::Split { parts, .. } => Tree::Node(parts.iter().map(convert).collect()),
            }
        }
        (self.spec.dimension() == 1).then(|| convert(&self.root))
    }

    /// The tiling of the unit cube, boxes in depth-first order.
    pub fn boxes(&self) -> Vec<Cuboid> {
        let mut out = Vec::with_capacity(self.arity());
        self.root.collect_boxes(Cuboid::unit(self.spec.dimension()), &mut out);
        out
    }

    /// Operadic composition `self ∘_slot inner`: `inner` rescaled into box `slot` (0-based).
    pub fn compose(&self, slot: usize, inner: &CutTree) -> Result<CutTree> {
        if self.spec != inner.spec {
            return Err(Error::InvalidCut("operands have different dimension data".into()));
        }
        let root = self
            .root
            .graft_at(slot, &inner.root)
            .map_err(|_| Error::IndexOutOfRange { index: slot, size: self.arity() })?;
        Ok(CutTree { spec: self.spec.clone(), root })
    }
}

/// A rational `p/q` as `(p, q)`.
pub type Ratio = (i64, i64);

/// An axis-aligned box `∏ [aᵢ, bᵢ]` with exact rational corners.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cuboid {
    pub sides: Vec<(BigRational, BigRational)>,
}

impl Cuboid {
    pub fn unit(dimension: usize) -> Self {
        Cuboid { sides: vec![(BigRational::zero(), BigRational::one()); dimension] }
    }

    /// Sides as `((p, q), (p', q'))` meaning `[p/q, p'/q']`.
    pub fn from_fractions(sides: &[(Ratio, Ratio)]) -> Self {
        let r = |(p, q): (i64, i64)| BigRational::new(BigInt::from(p), BigInt::from(q));
        Cuboid { sides: sides.iter().map(|&(a, b)| (r(a), r(b))).collect() }
    }

    pub fn volume(&self) -> BigRational {
        self.sides.iter().fold(BigRational::one(), |v, (a, b)| v * (b - a))
    }

    pub fn interiors_disjoint(&self, other: &Cuboid) -> bool {
        self.sides.iter().zip(&other.sides).any(|((a, b), (c, d))| b <= c || d <= a)
    }

    /// `self` mapped affinely into `target`, viewing `self` inside the unit cube.
    pub fn rescaled_into(&self, target: &Cuboid) -> Cuboid {
        let sides = self
            .sides
            .iter()
            .zip(&target.sides)
            .map(|((a, b), (lo, hi))| {
                let w = hi - lo;
                (lo + a * &w, lo + b * &w)
            })
            .collect();
        Cuboid { sides }
    }
}

fn write_ratio(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    let sign = if r.is_negative() { "-" } else { "" };
    write!(f, "{sign}{}/{}", r.numer().abs(), r.denom())
}

impl fmt::Display for Cuboid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.sides.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            f.write_str("[")?;
            write_ratio(f, a)?;
            f.write_str(",")?;
            write_ratio(f, b)?;
            f.write_str("]")?;
        }
        Ok(())
    }
}
