use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A bijection of `{0, .., len-1}` in one-line notation: `images[i]` is the
/// image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Permutation { images: (0..len).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            match seen.get_mut(i) {
                Some(s) if !*s => *s = true,
                Some(_) => return Err(Error::NotAPermutation(format!("image {} repeated", i + 1))),
                None => return Err(Error::NotAPermutation(format!("image {} exceeds size {}", i + 1, images.len()))),
            }
        }
        Ok(Permutation { images })
    }

    /// Uniformly random permutation.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..len).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    /// The rotation `i ↦ i + shift (mod len)`.
    pub fn rotation(len: usize, shift: usize) -> Self {
        Permutation { images: (0..len).map(|i| (i + shift) % len.max(1)).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Whether this is a power of the standard cycle `i ↦ i+1 (mod len)`.
    pub fn is_rotation(&self) -> bool {
        let len = self.images.len();
        match self.images.first() {
            None => true,
            Some(&shift) => self.images.iter().enumerate().all(|(i, &j)| j == (i + shift) % len),
        }
    }

    /// All permutations of `len` elements in lexicographic order.
    pub fn all(len: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(len);
        let mut used = vec![false; len];
        fill_all(len, &mut current, &mut used, &mut out);
        out
    }
}

fn fill_all(len: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
    if current.len() == len {
        out.push(Permutation { images: current.clone() });
        return;
    }
    for i in 0..len {
        if !used[i] {
            used[i] = true;
            current.push(i);
            fill_all(len, current, used, out);
            current.pop();
            used[i] = false;
        }
    }
}
