//! Graphviz rendering of paired diagrams: the domain forest grows downwards,
//! the codomain forest grows upwards below it, and dashed edges join matched
//! leaves.

use std::fmt::Write;

use crate::diagram::PairedDiagram;
use crate::forest::{Forest, Tree};

struct Emitter {
    out: String,
    prefix: char,
    next: usize,
    leaves: Vec<String>,
}

impl Emitter {
    fn new(prefix: char) -> Self {
        Emitter { out: String::new(), prefix, next: 0, leaves: Vec::new() }
    }

    fn tree(&mut self, t: &Tree, upward: bool) -> String {
        let id = format!("{}{}", self.prefix, self.next);
        self.next += 1;
        match t {
            Tree::Leaf => {
                let label = self.leaves.len() + 1;
                writeln!(self.out, "  {id} [label=\"{label}\"];").unwrap();
                self.leaves.push(id.clone());
            }
            Tree::Node(children) => {
                writeln!(self.out, "  {id} [label=\"\", shape=point, width=0.08];").unwrap();
                for c in children {
                    let child = self.tree(c, upward);
                    if upward {
                        writeln!(self.out, "  {child} -> {id};").unwrap();
                    } else {
                        writeln!(self.out, "  {id} -> {child};").unwrap();
                    }
                }
            }
        }
        id
    }

    fn forest(&mut self, f: &Forest, upward: bool) {
        for t in f.trees() {
            self.tree(t, upward);
        }
    }
}

pub fn render_dot(d: &PairedDiagram) -> String {
    let mut dom = Emitter::new('d');
    dom.forest(d.domain(), false);
    let mut cod = Emitter::new('c');
    cod.forest(d.codomain(), true);

    let mut out = String::new();
    writeln!(out, "digraph diagram {{").unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10, width=0.25, fixedsize=true];").unwrap();
    writeln!(out, "  edge [arrowhead=none];").unwrap();
    out.push_str(&dom.out);
    out.push_str(&cod.out);
    for (i, leaf) in dom.leaves.iter().enumerate() {
        let target = &cod.leaves[d.permutation().apply(i)];
        writeln!(out, "  {leaf} -> {target} [style=dashed];").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
