//! Seeded property suites over the whole calculus. Each suite checks a set
//! of named laws and counts passes and failures per law.
//!
//! Trial `i` of a run with master seed `s` draws from the ChaCha8 stream `i`
//! of seed `s`, so results do not depend on evaluation order.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cantor::{eval_pl, to_prefix_map, value_word, word_value};
use crate::diagram::PairedDiagram;
use crate::error::Result;
use crate::forest::{random_forest, LeafAddress, Tree};
use crate::operad::{check_cancellative, diagram_to_fraction, square_fill, CancellationBound, Fraction, PropMorphism};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    GroupAxioms,
    Oracle,
    Confluence,
    Cancellative,
    Fractions,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::GroupAxioms, Suite::Oracle, Suite::Confluence, Suite::Cancellative, Suite::Fractions];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GroupAxioms => "group-axioms",
            Suite::Oracle => "oracle",
            Suite::Confluence => "confluence",
            Suite::Cancellative => "cancellative",
            Suite::Fractions => "fractions",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub arity: usize,
    pub roots: usize,
    pub trials: usize,
    pub seed: u64,
    /// Upper bound on the caret count of each random element.
    pub max_carets: usize,
    /// Expansion sequences per diagram in the confluence suite.
    pub expansions: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { arity: 2, roots: 1, trials: 100, seed: 7, max_carets: 8, expansions: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// Printed witness of the first failure.
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub config: SuiteConfig,
    pub laws: Vec<LawResult>,
}

impl SuiteReport {
    fn new(suite: Suite, config: SuiteConfig) -> Self {
        SuiteReport { suite, config, laws: Vec::new() }
    }

    fn record(&mut self, name: &'static str, ok: bool, witness: impl FnOnce() -> String) {
        let pos = match self.laws.iter().position(|l| l.name == name) {
            Some(p) => p,
            None => {
                self.laws.push(LawResult { name, passed: 0, failed: 0, first_failure: None });
                self.laws.len() - 1
            }
        };
        let law = &mut self.laws[pos];
        if ok {
            law.passed += 1;
        } else {
            law.failed += 1;
            if law.first_failure.is_none() {
                law.first_failure = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.failed == 0)
    }

    pub fn failures(&self) -> usize {
        self.laws.iter().map(|l| l.failed).sum()
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        for law in &self.laws {
            writeln!(f, "law {} passed={} failed={}", law.name, law.passed, law.failed)?;
            if let Some(w) = &law.first_failure {
                writeln!(f, "  first failure: {w}")?;
            }
        }
        write!(
            f,
            "suite {} arity={} roots={} trials={} seed={}: {}",
            self.suite.name(),
            c.arity,
            c.roots,
            c.trials,
            c.seed,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// A random reduced element with a uniformly chosen caret budget.
pub fn random_element<R: Rng + ?Sized>(cfg: &SuiteConfig, rng: &mut R) -> PairedDiagram {
    let carets = rng.gen_range(0..=cfg.max_carets);
    PairedDiagram::random_with(cfg.arity, cfg.roots, carets, rng).expect("suite parameters validated")
}

fn random_tree<R: Rng + ?Sized>(arity: usize, max_carets: usize, rng: &mut R) -> Tree {
    let carets = rng.gen_range(1..=max_carets.max(1));
    random_forest(arity, 1, carets, rng).expect("valid arity").into_trees().remove(0)
}

/// Random expansions applied in sequence.
pub fn random_expansions<R: Rng + ?Sized>(d: &PairedDiagram, steps: usize, rng: &mut R) -> PairedDiagram {
    let mut e = d.clone();
    for _ in 0..steps {
        let leaf = rng.gen_range(0..e.leaf_count());
        let tree = random_tree(d.arity(), 2, rng);
        e = e.expand(leaf, &tree).expect("leaf index in range");
    }
    e
}

fn random_morphism<R: Rng + ?Sized>(arity: usize, target: usize, max_carets: usize, rng: &mut R) -> PropMorphism {
    let carets = rng.gen_range(0..=max_carets);
    let forest = random_forest(arity, target, carets, rng).expect("valid parameters");
    let perm = Permutation::random(forest.leaf_count(), rng);
    PropMorphism::new(perm, forest).expect("sizes agree")
}

/// A random span `r ← m → r`.
fn random_fraction<R: Rng + ?Sized>(cfg: &SuiteConfig, rng: &mut R) -> Fraction {
    let carets = rng.gen_range(0..=cfg.max_carets.min(6));
    let leg = |rng: &mut R| {
        let forest = random_forest(cfg.arity, cfg.roots, carets, rng).expect("valid parameters");
        let perm = Permutation::random(forest.leaf_count(), rng);
        PropMorphism::new(perm, forest).expect("sizes agree")
    };
    let p = leg(rng);
    let q = leg(rng);
    Fraction::new(p, q).expect("legs share their source")
}

fn random_f_element<R: Rng + ?Sized>(cfg: &SuiteConfig, rng: &mut R) -> PairedDiagram {
    let carets = rng.gen_range(0..=cfg.max_carets);
    let dom = random_forest(cfg.arity, cfg.roots, carets, rng).expect("valid parameters");
    let cod = random_forest(cfg.arity, cfg.roots, carets, rng).expect("valid parameters");
    let l = dom.leaf_count();
    PairedDiagram::new(dom, Permutation::identity(l), cod).expect("same leaf count").reduce()
}

fn random_t_element<R: Rng + ?Sized>(cfg: &SuiteConfig, rng: &mut R) -> PairedDiagram {
    let carets = rng.gen_range(0..=cfg.max_carets);
    let dom = random_forest(cfg.arity, cfg.roots, carets, rng).expect("valid parameters");
    let cod = random_forest(cfg.arity, cfg.roots, carets, rng).expect("valid parameters");
    let l = dom.leaf_count();
    let shift = rng.gen_range(0..l);
    PairedDiagram::new(dom, Permutation::rotation(l, shift), cod).expect("same leaf count").reduce()
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    PairedDiagram::identity(cfg.arity, cfg.roots)?;
    Ok(match suite {
        Suite::GroupAxioms => group_axioms(cfg),
        Suite::Oracle => oracle(cfg),
        Suite::Confluence => confluence(cfg),
        Suite::Cancellative => cancellative(cfg),
        Suite::Fractions => fractions(cfg),
    })
}

fn group_axioms(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::GroupAxioms, *cfg);
    let id = PairedDiagram::identity(cfg.arity, cfg.roots).expect("validated");
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, trial);
        let a = random_element(cfg, &mut rng);
        let b = random_element(cfg, &mut rng);
        let c = random_element(cfg, &mut rng);
        let mul = |x: &PairedDiagram, y: &PairedDiagram| x.multiply(y).expect("same group");
        let witness = || format!("a={a} b={b} c={c}");

        let ab_c = mul(&mul(&a, &b), &c);
        let a_bc = mul(&a, &mul(&b, &c));
        report.record("associativity", ab_c == a_bc, witness);
        report.record("identity", mul(&a, &id) == a && mul(&id, &a) == a, witness);
        let inv = a.invert();
        report.record("inverse", mul(&a, &inv) == id && mul(&inv, &a) == id, witness);
        report.record("double_inverse", inv.invert() == a, witness);
        report.record("canonical_products", ab_c.is_reduced() && a_bc.is_reduced(), witness);

        let (f, g) = (random_f_element(cfg, &mut rng), random_f_element(cfg, &mut rng));
        report.record("f_closure", mul(&f, &g).is_in_f() && f.invert().is_in_f(), || format!("f={f} g={g}"));
        let (s, t) = (random_t_element(cfg, &mut rng), random_t_element(cfg, &mut rng));
        report.record("t_closure", s.is_in_t() && mul(&s, &t).is_in_t() && s.invert().is_in_t(), || {
            format!("s={s} t={t}")
        });
    }
    report
}

fn oracle(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Oracle, *cfg);
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, trial);
        let x = random_element(cfg, &mut rng);
        // every other pair is equal by construction
        let y = if trial % 2 == 0 {
            let steps = rng.gen_range(1..=3);
            random_expansions(&x, steps, &mut rng)
        } else {
            random_element(cfg, &mut rng)
        };
        let (px, py) = (to_prefix_map(&x), to_prefix_map(&y));
        let witness = || format!("x={x} y={y}");
        report.record("equal_agrees_with_prefix_maps", x.equivalent(&y) == px.equivalent(&py), witness);
        if trial % 2 == 0 {
            report.record("expansion_is_equal", x.equivalent(&y), witness);
        }

        let z = random_element(cfg, &mut rng);
        let pz = to_prefix_map(&z);
        let product = x.multiply(&z).expect("same group");
        let composed = px.compose(&pz).expect("same group");
        report.record("multiply_is_composition", to_prefix_map(&product).equivalent(&composed), || {
            format!("x={x} z={z}")
        });
        report.record("invert_is_inverse_map", to_prefix_map(&x.invert()).equivalent(&px.inverse()), witness);
        report.record("prefix_map_round_trip", py.to_diagram().map(|d| d == y.reduce()).unwrap_or(false), witness);

        // PL evaluation at a point deep enough for every rule
        let depth = px.max_depth() + rng.gen_range(0..3);
        let word: Vec<u32> = (0..depth).map(|_| rng.gen_range(0..cfg.arity as u32)).collect();
        let point = LeafAddress::new(rng.gen_range(0..cfg.roots), word);
        let image = px.apply(&point).expect("deep enough");
        let value = eval_pl(&x, &word_value(cfg.arity, &point)).expect("valid component");
        let expected = word_value(cfg.arity, &image);
        report.record(
            "eval_matches_word_action",
            value == expected && value_word(&value, image.word.len()) == Some(image.clone()),
            || format!("x={x} point={point}"),
        );
    }
    report
}

fn confluence(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Confluence, *cfg);
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, trial);
        let d = random_element(cfg, &mut rng);
        report.record("random_elements_reduced", d.is_reduced(), || format!("d={d}"));
        for _ in 0..cfg.expansions {
            let steps = rng.gen_range(1..=4);
            let e = random_expansions(&d, steps, &mut rng);
            let r = e.reduce();
            report.record("expansions_reduce_back", r == d, || format!("d={d} expanded={e}"));
            report.record("reduce_never_grows", r.leaf_count() <= e.leaf_count(), || format!("e={e}"));
        }
    }
    report
}

fn cancellative(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Cancellative, *cfg);
    let bound = CancellationBound { arity: cfg.arity, max_carets: 2, max_source: 4 };
    let exhaustive = check_cancellative(bound);
    let first = |v: &[crate::operad::Counterexample]| {
        v.first().map(|(a, f, g)| format!("a={a} f={f} g={g}")).unwrap_or_default()
    };
    report.record("right_cancellation", exhaustive.right_failures.is_empty(), || first(&exhaustive.right_failures));
    report.record("left_cancellation", exhaustive.left_failures.is_empty(), || first(&exhaustive.left_failures));
    report.record("equalization", exhaustive.satisfies_equalization(), String::new);

    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, trial);
        let f = random_morphism(cfg.arity, cfg.roots, 3, &mut rng);
        let g = random_morphism(cfg.arity, cfg.roots, 3, &mut rng);
        let (u, v) = square_fill(&f, &g).expect("cospan");
        let fu = f.compose(&u).expect("composable");
        let gv = g.compose(&v).expect("composable");
        let join = f.forest().join(g.forest()).expect("same shape");
        report.record("square_fill_commutes", fu == gv, || format!("f={f} g={g}"));
        report.record("square_fill_is_join", fu.forest() == &join, || format!("f={f} g={g}"));
    }
    report
}

fn fractions(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Fractions, *cfg);
    let id = PairedDiagram::identity(cfg.arity, cfg.roots).expect("validated");
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, trial);
        let a = random_fraction(cfg, &mut rng);
        let b = random_fraction(cfg, &mut rng);
        let da = a.to_diagram().expect("automorphism");
        let db = b.to_diagram().expect("automorphism");
        let witness =
            || format!("a=({} | {}) b=({} | {})", a.denominator(), a.numerator(), b.denominator(), b.numerator());

        let ab = a.multiply(&b).expect("composable");
        report.record("isomorphism", ab.to_diagram().ok() == db.multiply(&da).ok(), witness);
        let unit = Fraction::identity(cfg.arity, cfg.roots).expect("validated");
        report.record("identity", a.multiply(&unit).and_then(|x| x.to_diagram()).ok() == Some(da.clone()), witness);
        report.record(
            "inverse",
            a.multiply(&a.inverse()).and_then(|x| x.to_diagram()).ok() == Some(id.clone()),
            witness,
        );
        report.record("diagram_round_trip", diagram_to_fraction(&da).to_diagram().ok() == Some(da.clone()), witness);

        // precomposing both legs with the same morphism is an expansion
        let g = random_morphism(cfg.arity, a.denominator().source(), 2, &mut rng);
        let expanded = Fraction::new(
            a.denominator().compose(&g).expect("composable"),
            a.numerator().compose(&g).expect("composable"),
        )
        .expect("span");
        report.record("expansion_invariance", expanded.to_diagram().ok() == Some(da.clone()), witness);

        let h = random_morphism(cfg.arity, cfg.roots, 2, &mut rng);
        let g2 = random_morphism(cfg.arity, h.source(), 2, &mut rng);
        let f2 = random_morphism(cfg.arity, g2.source(), 2, &mut rng);
        let left = h.compose(&g2.compose(&f2).expect("composable")).expect("composable");
        let right = h.compose(&g2).expect("composable").compose(&f2).expect("composable");
        report.record("prop_associativity", left == right, || format!("h={h} g={g2} f={f2}"));
    }
    report
}
