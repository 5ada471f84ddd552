//! Group elements acting on r copies of the n-ary Cantor set.
//!
//! A [`PrefixMap`] is a finite list of rules `u ↦ v` whose domains and whose
//! codomains each form a complete prefix-free address cover; it sends every
//! infinite word `u·w` to `v·w`. The same data read as n-adic intervals gives
//! an exact piecewise-linear bijection of r unit intervals ([`eval_pl`]).
//! Nothing here goes through [`PairedDiagram::reduce`] or
//! [`PairedDiagram::multiply`], so it serves as an independent oracle for the
//! diagram calculus.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::diagram::PairedDiagram;
use crate::error::{Error, Result};
use crate::forest::{Digit, Forest, LeafAddress};
use crate::perm::Permutation;
use crate::text::format_word;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrefixMap {
    arity: usize,
    roots: usize,
    rules: Vec<(LeafAddress, LeafAddress)>,
}

impl PrefixMap {
    /// Validates that both sides of `rules` are complete prefix-free covers.
    pub fn new(arity: usize, roots: usize, mut rules: Vec<(LeafAddress, LeafAddress)>) -> Result<Self> {
        let dom: Vec<LeafAddress> = rules.iter().map(|(u, _)| u.clone()).collect();
        let cod: Vec<LeafAddress> = rules.iter().map(|(_, v)| v.clone()).collect();
        Forest::from_cover(arity, roots, &dom)?;
        Forest::from_cover(arity, roots, &cod)?;
        rules.sort();
        Ok(PrefixMap { arity, roots, rules })
    }

    pub fn identity(arity: usize, roots: usize) -> Result<Self> {
        let rules = (0..roots).map(|j| (LeafAddress::new(j, vec![]), LeafAddress::new(j, vec![]))).collect();
        PrefixMap::new(arity, roots, rules)
    }

    /// Rule `u_i ↦ v_σ(i)` for every domain leaf `i`.
    pub fn from_diagram(d: &PairedDiagram) -> Self {
        let mut rules = d.matched_addresses();
        rules.sort();
        PrefixMap { arity: d.arity(), roots: d.roots(), rules }
    }

    /// The reduced diagram with this prefix map.
    pub fn to_diagram(&self) -> Result<PairedDiagram> {
        let dom: Vec<LeafAddress> = self.rules.iter().map(|(u, _)| u.clone()).collect();
        let mut cod: Vec<LeafAddress> = self.rules.iter().map(|(_, v)| v.clone()).collect();
        let domain = Forest::from_cover(self.arity, self.roots, &dom)?;
        cod.sort();
        let codomain = Forest::from_cover(self.arity, self.roots, &cod)?;
        let images = self.rules.iter().map(|(_, v)| cod.binary_search(v).expect("codomain address present")).collect();
        Ok(PairedDiagram::new(domain, Permutation::from_images(images)?, codomain)?.reduce())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn roots(&self) -> usize {
        self.roots
    }

    /// Rules sorted by domain address.
    pub fn rules(&self) -> &[(LeafAddress, LeafAddress)] {
        &self.rules
    }

    pub fn max_depth(&self) -> usize {
        self.rules.iter().map(|(u, _)| u.word.len()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        let mut rules: Vec<_> = self.rules.iter().map(|(u, v)| (v.clone(), u.clone())).collect();
        rules.sort();
        PrefixMap { arity: self.arity, roots: self.roots, rules }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &PrefixMap) -> Result<Self> {
        if self.arity != first.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: first.arity });
        }
        if self.roots != first.roots {
            return Err(Error::RootMismatch { expected: self.roots, found: first.roots });
        }
        let mut rules = Vec::new();
        for (u, v) in &first.rules {
            for (s, t) in &self.rules {
                if s.is_prefix_of(v) {
                    rules.push((u.clone(), t.extended(&v.word[s.word.len()..])));
                    break;
                } else if v.is_prefix_of(s) {
                    rules.push((u.extended(&s.word[v.word.len()..]), t.clone()));
                }
            }
        }
        rules.sort();
        Ok(PrefixMap { arity: self.arity, roots: self.roots, rules })
    }

    /// Fully merged form: `n` sibling rules `w·j ↦ z·j` collapse to `w ↦ z`.
    pub fn canonical(&self) -> Self {
        let n = self.arity;
        let mut rules = self.rules.clone();
        loop {
            let found = (0..rules.len().saturating_sub(n - 1)).find(|&i| {
                let block = &rules[i..i + n];
                let (Some((du, 0)), Some((dv, 0))) = (block[0].0.split_last(), block[0].1.split_last()) else {
                    return false;
                };
                block.iter().enumerate().all(|(j, (u, v))| {
                    u.split_last() == Some((du.clone(), j as Digit)) && v.split_last() == Some((dv.clone(), j as Digit))
                })
            });
            match found {
                None => break,
                Some(i) => {
                    let (du, _) = rules[i].0.split_last().expect("checked");
                    let (dv, _) = rules[i].1.split_last().expect("checked");
                    rules.splice(i..i + n, [(du, dv)]);
                }
            }
        }
        PrefixMap { arity: self.arity, roots: self.roots, rules }
    }

    /// Equality as maps of the Cantor set.
    pub fn equivalent(&self, other: &PrefixMap) -> bool {
        self.arity == other.arity && self.roots == other.roots && self.canonical().rules == other.canonical().rules
    }

    /// Image of a finite word, `u·w ↦ v·w`.
    pub fn apply(&self, a: &LeafAddress) -> Result<LeafAddress> {
        if a.root >= self.roots {
            return Err(Error::IndexOutOfRange { index: a.root, size: self.roots });
        }
        if let Some(d) = a.word.iter().find(|&&d| d as usize >= self.arity) {
            return Err(Error::OutOfRange(format!("digit {d} is not below arity {}", self.arity)));
        }
        self.rules
            .iter()
            .find(|(u, _)| u.is_prefix_of(a))
            .map(|(u, v)| v.extended(&a.word[u.word.len()..]))
            .ok_or_else(|| Error::InsufficientDepth(format!("{}:{}", a.root + 1, format_word(&a.word, self.arity))))
    }
}

impl fmt::Display for PrefixMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (u, v)) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        Ok(())
    }
}

pub fn to_prefix_map(d: &PairedDiagram) -> PrefixMap {
    PrefixMap::from_diagram(d)
}

pub fn from_prefix_map(pm: &PrefixMap) -> Result<PairedDiagram> {
    pm.to_diagram()
}

/// A point `p / nᵉ` of the closed interval `[0, 1]` of component `component`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NAdic {
    arity: usize,
    component: usize,
    numerator: BigUint,
    exponent: u32,
}

impl NAdic {
    /// Normalizes so that `n ∤ p` unless `e = 0`.
    pub fn new(arity: usize, component: usize, numerator: BigUint, exponent: u32) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidArity(arity));
        }
        let base = BigUint::from(arity);
        if numerator > Pow::pow(&base, exponent) {
            return Err(Error::OutOfRange(format!("{numerator}/{arity}^{exponent} exceeds 1")));
        }
        let (mut p, mut e) = (numerator, exponent);
        while e > 0 && (&p % &base).is_zero() {
            p /= &base;
            e -= 1;
        }
        Ok(NAdic { arity, component, numerator: p, exponent: e })
    }

    /// Fails when `value` is outside `[0, 1]` or its denominator does not
    /// divide a power of `n`.
    pub fn from_ratio(arity: usize, component: usize, value: &BigRational) -> Result<Self> {
        if value.is_negative() || *value > BigRational::one() {
            return Err(Error::OutOfRange(format!("{value} is not in [0, 1]")));
        }
        let base = BigInt::from(arity);
        let den = value.denom().clone();
        // every prime factor of the denominator must divide n
        let mut rest = den.clone();
        while !rest.is_one() {
            let g = rest.gcd(&base);
            if g.is_one() {
                return Err(Error::OutOfRange(format!("{value} is not {arity}-adic")));
            }
            rest /= g;
        }
        let mut power = BigInt::one();
        let mut e = 0u32;
        while !(&power % &den).is_zero() {
            power *= &base;
            e += 1;
        }
        let p = value.numer() * (&power / &den);
        NAdic::new(arity, component, p.to_biguint().expect("non-negative"), e)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn component(&self) -> usize {
        self.component
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn to_ratio(&self) -> BigRational {
        let den = Pow::pow(&BigInt::from(self.arity), self.exponent);
        BigRational::new(BigInt::from(self.numerator.clone()), den)
    }

    /// Parse `p/b^e`, `p/q` or `p`; the value must be n-adic.
    pub fn parse(s: &str, arity: usize, component: usize) -> Result<Self> {
        let bad = |m: &str| Error::Parse { offset: 0, message: format!("'{s}': {m}") };
        let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad("expected integers"));
        let value = match s.split_once('/') {
            None => BigRational::from_integer(int(s)?),
            Some((p, q)) => {
                let den = match q.split_once('^') {
                    None => int(q)?,
                    Some((b, e)) => {
                        let e: u32 = e.trim().parse().map_err(|_| bad("bad exponent"))?;
                        Pow::pow(&int(b)?, e)
                    }
                };
                if den.is_zero() {
                    return Err(bad("zero denominator"));
                }
                BigRational::new(int(p)?, den)
            }
        };
        NAdic::from_ratio(arity, component, &value)
    }
}

impl fmt::Display for NAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}^{}", self.numerator, self.arity, self.exponent)
    }
}

/// Left endpoint and length of the n-adic interval of an address.
pub fn cylinder(arity: usize, a: &LeafAddress) -> (BigRational, BigRational) {
    let base = BigInt::from(arity);
    let mut num = BigInt::zero();
    for &d in &a.word {
        num = num * &base + BigInt::from(d);
    }
    let den = Pow::pow(&base, a.word.len());
    (BigRational::new(num, den.clone()), BigRational::new(BigInt::one(), den))
}

/// One affine piece of the PL map: `[start, start+len)` of the domain
/// component onto the codomain interval, with slope `n^slope_exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlPiece {
    pub domain_component: usize,
    pub domain_start: BigRational,
    pub domain_len: BigRational,
    pub codomain_component: usize,
    pub codomain_start: BigRational,
    pub codomain_len: BigRational,
    pub slope_exponent: i64,
}

impl PlPiece {
    pub fn slope(&self) -> BigRational {
        &self.codomain_len / &self.domain_len
    }
}

pub fn pl_pieces(d: &PairedDiagram) -> Vec<PlPiece> {
    let n = d.arity();
    d.matched_addresses()
        .into_iter()
        .map(|(u, v)| {
            let (ds, dl) = cylinder(n, &u);
            let (cs, cl) = cylinder(n, &v);
            PlPiece {
                domain_component: u.root,
                domain_start: ds,
                domain_len: dl,
                codomain_component: v.root,
                codomain_start: cs,
                codomain_len: cl,
                slope_exponent: u.word.len() as i64 - v.word.len() as i64,
            }
        })
        .collect()
}

/// Exact value of the PL map at `x`. Intervals are left-closed; the point 1
/// belongs to the last interval of its component.
pub fn eval_pl(d: &PairedDiagram, x: &NAdic) -> Result<NAdic> {
    if x.component >= d.roots() {
        return Err(Error::IndexOutOfRange { index: x.component, size: d.roots() });
    }
    if x.arity != d.arity() {
        return Err(Error::ArityMismatch { expected: d.arity(), found: x.arity });
    }
    let xr = x.to_ratio();
    let one = BigRational::one();
    let piece = pl_pieces(d)
        .into_iter()
        .filter(|p| p.domain_component == x.component)
        .find(|p| {
            let end = &p.domain_start + &p.domain_len;
            xr >= p.domain_start && (xr < end || (xr == one && end == one))
        })
        .expect("the domain intervals of a component tile [0, 1]");
    let y = &piece.codomain_start + (&xr - &piece.domain_start) * piece.slope();
    NAdic::from_ratio(d.arity(), piece.codomain_component, &y)
}

/// The point `0.d₁d₂…d_L` in base n of component `root`.
pub fn word_value(arity: usize, a: &LeafAddress) -> NAdic {
    let (start, _) = cylinder(arity, a);
    NAdic::from_ratio(arity, a.root, &start).expect("word values lie in [0, 1)")
}

/// Inverse of [`word_value`] at a fixed depth; `None` if `x` needs more digits.
pub fn value_word(x: &NAdic, depth: usize) -> Option<LeafAddress> {
    if x.exponent as usize > depth || x.to_ratio() >= BigRational::one() {
        return None;
    }
    let base = BigUint::from(x.arity);
    let mut p = &x.numerator * Pow::pow(&base, depth - x.exponent as usize);
    let mut word = vec![0; depth];
    for slot in word.iter_mut().rev() {
        let (q, r) = p.div_rem(&base);
        *slot = r.to_u32().expect("digit below arity");
        p = q;
    }
    Some(LeafAddress::new(x.component, word))
}
