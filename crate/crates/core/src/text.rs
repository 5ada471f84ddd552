//! Text grammar for forests, permutations, diagrams, PROP morphisms and
//! cut trees.
//!
//! ```text
//! forest   := tree { "," tree }
//! tree     := "*" | "(" tree { "," tree } ")"
//! perm     := "[" int { "," int } "]"          one-line notation, 1-based
//! diagram  := forest ";" perm ";" forest
//! morphism := perm ";" forest
//! cuttree  := "*" | "(" axis "," parts ":" cuttree { "," cuttree } ")"
//! ```
//!
//! Whitespace is insignificant. The arity is taken from the first internal
//! node and must agree everywhere; the caller supplies a fallback for inputs
//! without internal nodes. Printing is strict: no whitespace at all.

use std::fmt;

use crate::diagram::PairedDiagram;
use crate::error::{Error, Result};
use crate::forest::{Digit, Forest, LeafAddress, Tree};
use crate::operad::{CutNode, CutSpec, CutTree, PropMorphism};
use crate::perm::Permutation;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    arity: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0, arity: None }
    }

    fn error<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => self.error(self.pos, format!("expected '{}', found '{}'", byte as char, b as char)),
            None => self.error(self.pos, format!("expected '{}', found end of input", byte as char)),
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(b) => self.error(self.pos, format!("unexpected trailing '{}'", b as char)),
        }
    }

    fn integer(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error(start, "expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| self.error(start, "integer too large"))
    }

    fn tree(&mut self) -> Result<Tree> {
        match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                Ok(Tree::Leaf)
            }
            Some(b'(') => {
                let start = self.pos;
                self.pos += 1;
                let mut children = vec![self.tree()?];
                while self.eat(b',') {
                    children.push(self.tree()?);
                }
                self.expect(b')')?;
                self.check_arity(start, children.len())?;
                Ok(Tree::Node(children))
            }
            Some(b) => self.error(self.pos, format!("expected '*' or '(', found '{}'", b as char)),
            None => self.error(self.pos, "expected a tree, found end of input"),
        }
    }

    fn check_arity(&self, offset: usize, count: usize) -> Result<()> {
        if count < 2 {
            return self.error(offset, format!("a caret needs at least 2 children, found {count}"));
        }
        Ok(())
    }

    /// Arity of this node; the first node seen fixes it for the whole input.
    fn settle_arity(&mut self, tree: &Tree, offset: usize) -> Result<()> {
        fn walk(t: &Tree, arity: &mut Option<usize>) -> std::result::Result<(), (usize, usize)> {
            if let Tree::Node(children) = t {
                match *arity {
                    None => *arity = Some(children.len()),
                    Some(n) if n != children.len() => return Err((n, children.len())),
                    _ => {}
                }
                for c in children {
                    walk(c, arity)?;
                }
            }
            Ok(())
        }
        walk(tree, &mut self.arity)
            .or_else(|(n, m)| self.error(offset, format!("arity inconsistency: caret with {m} children, expected {n}")))
    }

    fn forest_trees(&mut self) -> Result<Vec<Tree>> {
        let mut trees = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let t = self.tree()?;
            self.settle_arity(&t, start)?;
            trees.push(t);
            if !self.eat(b',') {
                return Ok(trees);
            }
        }
    }

    fn permutation(&mut self) -> Result<Permutation> {
        self.skip_ws();
        let start = self.pos;
        self.expect(b'[')?;
        let mut images = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            let v = self.integer()?;
            if v == 0 {
                return self.error(at, "permutation entries are 1-based");
            }
            images.push(v - 1);
            if !self.eat(b',') {
                break;
            }
        }
        self.expect(b']')?;
        Permutation::from_images(images).or_else(|e| self.error(start, e.to_string()))
    }

    fn forest(&mut self, default_arity: usize) -> Result<Forest> {
        let trees = self.forest_trees()?;
        Forest::new(self.arity.unwrap_or(default_arity), trees)
    }
}

pub fn parse_forest(s: &str, default_arity: usize) -> Result<Forest> {
    let mut p = Parser::new(s);
    let trees = p.forest_trees()?;
    p.finish()?;
    Forest::new(p.arity.unwrap_or(default_arity), trees)
}

pub fn parse_tree(s: &str) -> Result<Tree> {
    let mut p = Parser::new(s);
    let t = p.tree()?;
    p.settle_arity(&t, 0)?;
    p.finish()?;
    Ok(t)
}

pub fn parse_permutation(s: &str) -> Result<Permutation> {
    let mut p = Parser::new(s);
    let perm = p.permutation()?;
    p.finish()?;
    Ok(perm)
}

/// Parse `forest ; perm ; forest`.
pub fn parse_diagram(s: &str, default_arity: usize) -> Result<PairedDiagram> {
    let mut p = Parser::new(s);
    let dom = p.forest_trees()?;
    p.expect(b';')?;
    p.skip_ws();
    let perm_at = p.pos;
    let perm = p.permutation()?;
    p.expect(b';')?;
    let cod = p.forest_trees()?;
    p.finish()?;
    let n = p.arity.unwrap_or(default_arity);
    let (dom, cod) = (Forest::new(n, dom)?, Forest::new(n, cod)?);
    if dom.roots() != cod.roots() {
        return Err(Error::RootMismatch { expected: dom.roots(), found: cod.roots() });
    }
    if dom.leaf_count() != perm.len() || cod.leaf_count() != perm.len() {
        return p.error(
            perm_at,
            format!(
                "permutation size {} does not match leaf counts {} and {}",
                perm.len(),
                dom.leaf_count(),
                cod.leaf_count()
            ),
        );
    }
    PairedDiagram::new(dom, perm, cod)
}

/// The arity fixed by the first internal node of a forest, diagram or
/// morphism string, if it has one.
pub fn inferred_arity(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    let open = bytes.iter().position(|&b| b == b'(')?;
    let mut depth = 0usize;
    let mut count = 1;
    for &b in &bytes[open + 1..] {
        match b {
            b'(' => depth += 1,
            b')' if depth == 0 => return Some(count),
            b')' => depth -= 1,
            b',' if depth == 0 => count += 1,
            _ => {}
        }
    }
    None
}

/// Parse `perm ; forest`.
pub fn parse_morphism(s: &str, default_arity: usize) -> Result<PropMorphism> {
    let mut p = Parser::new(s);
    let perm = p.permutation()?;
    p.expect(b';')?;
    let forest = p.forest(default_arity)?;
    p.finish()?;
    PropMorphism::new(perm, forest)
}

/// Parse a word: digits `0..n`, either one character each or separated by
/// whitespace or commas. The empty string and `ε` denote the empty word.
pub fn parse_word(s: &str, arity: usize) -> Result<Vec<Digit>> {
    let s = s.trim();
    if s.is_empty() || s == "ε" {
        return Ok(Vec::new());
    }
    let separated = s.contains(|c: char| c.is_whitespace() || c == ',');
    let tokens: Vec<(usize, &str)> = if separated {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| (t.as_ptr() as usize - s.as_ptr() as usize, t))
            .collect()
    } else if arity <= 10 {
        s.char_indices().map(|(i, c)| (i, &s[i..i + c.len_utf8()])).collect()
    } else {
        vec![(0, s)]
    };
    tokens
        .into_iter()
        .map(|(offset, t)| match t.parse::<u32>() {
            Ok(d) if (d as usize) < arity => Ok(d),
            _ => Err(Error::Parse { offset, message: format!("'{t}' is not a digit below {arity}") }),
        })
        .collect()
}

/// Inverse of [`parse_word`]: compact for arity ≤ 10, space separated otherwise.
pub fn format_word(word: &[Digit], arity: usize) -> String {
    let digits: Vec<String> = word.iter().map(|d| d.to_string()).collect();
    digits.join(if arity <= 10 { "" } else { " " })
}

/// Parse independence data: one group per axis, axes separated by `;`,
/// members by `,`. `"2;3"` is N₁ = {2}, N₂ = {3}.
pub fn parse_cut_spec(s: &str) -> Result<CutSpec> {
    let mut sets = Vec::new();
    let mut offset = 0;
    for group in s.split(';') {
        let mut set = Vec::new();
        for item in group.split(',') {
            let t = item.trim();
            match t.parse::<u64>() {
                Ok(v) => set.push(v),
                Err(_) => return Err(Error::Parse { offset, message: format!("'{t}' is not an integer") }),
            }
        }
        sets.push(set);
        offset += group.len() + 1;
    }
    CutSpec::new(sets)
}

pub fn parse_cut_tree(s: &str, spec: &CutSpec) -> Result<CutTree> {
    let mut p = Parser::new(s);
    let root = cut_node(&mut p)?;
    p.finish()?;
    CutTree::new(spec.clone(), root)
}

fn cut_node(p: &mut Parser<'_>) -> Result<CutNode> {
    match p.peek() {
        Some(b'*') => {
            p.pos += 1;
            Ok(CutNode::Leaf)
        }
        Some(b'(') => {
            p.pos += 1;
            p.skip_ws();
            let axis_at = p.pos;
            let axis = p.integer()?;
            if axis == 0 {
                return p.error(axis_at, "axes are 1-based");
            }
            p.expect(b',')?;
            p.skip_ws();
            let parts_at = p.pos;
            let parts = p.integer()?;
            p.expect(b':')?;
            let mut children = vec![cut_node(p)?];
            while p.eat(b',') {
                children.push(cut_node(p)?);
            }
            p.expect(b')')?;
            if children.len() != parts {
                return p.error(parts_at, format!("node declares {parts} parts but has {} children", children.len()));
            }
            Ok(CutNode::Split { axis: axis - 1, parts: children })
        }
        Some(b) => p.error(p.pos, format!("expected '*' or '(', found '{}'", b as char)),
        None => p.error(p.pos, "expected a cut tree, found end of input"),
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => f.write_str("*"),
            Tree::Node(children) => {
                f.write_str("(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.trees().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.images().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for PairedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.domain(), self.permutation(), self.codomain())
    }
}

impl fmt::Display for PropMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.permutation(), self.forest())
    }
}

/// `root:word`, root 1-based; digits printed compactly.
impl fmt::Display for LeafAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: Vec<String> = self.word.iter().map(|d| d.to_string()).collect();
        let compact = self.word.iter().all(|&d| d < 10);
        write!(f, "{}:{}", self.root + 1, digits.join(if compact { "" } else { " " }))
    }
}

impl fmt::Display for CutNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutNode::Leaf => f.write_str("*"),
            CutNode::Split { axis, parts } => {
                write!(f, "({},{}:", axis + 1, parts.len())?;
                for (i, c) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for CutTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root())
    }
}
