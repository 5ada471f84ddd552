//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line; any failure makes the binary
//! exit non-zero.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use htgroups::cli::run;
use htgroups::forest::enumerate_trees;
use htgroups::operad::{check_cancellative, independence_check, CancellationBound, Cuboid, CutNode, CutSpec, CutTree};
use htgroups::suites::{random_element, run_suite, trial_rng, Suite, SuiteConfig};
use htgroups::text::{parse_cut_spec, parse_cut_tree};
use htgroups::{count_trees, parse_diagram, PairedDiagram};
use num_bigint::BigUint;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const GROUPS: [(usize, usize); 5] = [(2, 1), (2, 2), (3, 1), (3, 2), (4, 3)];

fn cfg(arity: usize, roots: usize, trials: usize) -> SuiteConfig {
    SuiteConfig { arity, roots, trials, ..SuiteConfig::default() }
}

fn suite_over(suite: Suite, groups: &[(usize, usize)], trials: usize) -> Outcome {
    let mut checks = 0;
    for &(n, r) in groups {
        let report = run_suite(suite, &cfg(n, r, trials)).map_err(|e| e.to_string())?;
        if !report.passed() {
            return Err(format!("n={n} r={r}\n{report}"));
        }
        checks += report.laws.iter().map(|l| l.passed).sum::<usize>();
    }
    Ok(format!("{checks} checks"))
}

fn group_axioms() -> Outcome {
    let start = Instant::now();
    let summary = suite_over(Suite::GroupAxioms, &GROUPS, 500)?;
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{summary} in {:.2}s", elapsed.as_secs_f64()))
}

fn oracle() -> Outcome {
    suite_over(Suite::Oracle, &GROUPS, 500)
}

fn confluence() -> Outcome {
    suite_over(Suite::Confluence, &GROUPS, 200)
}

fn d(s: &str) -> PairedDiagram {
    parse_diagram(s, 2).expect("golden input parses")
}

fn expect_eq(what: &str, got: String, want: &str) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, want {want}"))
    }
}

fn golden_examples() -> Outcome {
    // product example, n = 2, r = 1
    let x = d("((*,*),*);[1,2,3];(*,(*,*))");
    let y = d("(*,*);[2,1];(*,*)");
    let w = d("(*,(*,*));[3,1,2];((*,*),*)");
    let result = "((*,*),*);[3,1,2];((*,*),*)";
    if !y.equivalent(&w) {
        return Err("expanded swap is not equal to the swap".into());
    }
    expect_eq("x then y", y.multiply(&x).map_err(|e| e.to_string())?.to_string(), result)?;
    expect_eq("x then w", w.multiply(&x).map_err(|e| e.to_string())?.to_string(), result)?;
    let id = PairedDiagram::identity(2, 1).map_err(|e| e.to_string())?;
    expect_eq("x times identity", x.multiply(&id).map_err(|e| e.to_string())?.to_string(), &x.to_string())?;

    // 8 -> 6 leaf reduction, n = 3, r = 2
    let before =
        parse_diagram("(*,*,*),((*,*,*),*,*);[4,2,1,5,6,7,3,8];(*,*,*),(*,(*,*,*),*)", 3).map_err(|e| e.to_string())?;
    let after = before.reduce();
    expect_eq("reduction", after.to_string(), "(*,*,*),(*,*,*);[4,2,1,5,3,6];(*,*,*),(*,*,*)")?;
    if before.leaf_count() != 8 || after.leaf_count() != 6 {
        return Err("leaf counts are not 8 -> 6".into());
    }
    Ok("product and reduction reproduced".into())
}

fn periodicity() -> Outcome {
    let mut pairs = 0;
    for n in [2, 3] {
        for r in [1, 2] {
            let c = SuiteConfig { max_carets: 6, ..cfg(n, r, 200) };
            for trial in 0..c.trials {
                let mut rng = trial_rng(c.seed, trial);
                let a = random_element(&c, &mut rng);
                let b = random_element(&c, &mut rng);
                let ab = a.multiply(&b).map_err(|e| e.to_string())?;
                let image = ab.periodicity_iso();
                let product = a.periodicity_iso().multiply(&b.periodicity_iso()).map_err(|e| e.to_string())?;
                if image != product {
                    return Err(format!("not a homomorphism at a={a} b={b}"));
                }
                if image.roots() != r + n - 1 {
                    return Err(format!("image of {ab} has {} roots", image.roots()));
                }
                let back = image.periodicity_inverse().map_err(|e| e.to_string())?;
                if back != ab {
                    return Err(format!("round trip of {ab} gave {back}"));
                }
                let stable = a.stabilize().multiply(&b.stabilize()).map_err(|e| e.to_string())?;
                if stable != ab.stabilize() || (a != b && a.stabilize() == b.stabilize()) {
                    return Err(format!("stabilization fails at a={a} b={b}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn cancellation() -> Outcome {
    let report = check_cancellative(CancellationBound { arity: 2, max_carets: 2, max_source: 4 });
    if !report.is_cancellative() {
        return Err(format!(
            "{} right and {} left failures, first {:?}",
            report.right_failures.len(),
            report.left_failures.len(),
            report.right_failures.first().or(report.left_failures.first())
        ));
    }
    let fill = run_suite(Suite::Cancellative, &cfg(2, 2, 500)).map_err(|e| e.to_string())?;
    let commutes = fill.law("square_fill_commutes").ok_or("missing square_fill law")?;
    if !fill.passed() || commutes.passed != 500 {
        return Err(fill.to_string());
    }
    Ok(format!(
        "{} morphisms, {} composites, {} cospans",
        report.morphisms,
        report.right_checks + report.left_checks,
        commutes.passed
    ))
}

fn fractions() -> Outcome {
    let groups: Vec<_> = [2, 3].iter().flat_map(|&n| [(n, 1), (n, 2)]).collect();
    let mut pairs = 0;
    for &(n, r) in &groups {
        let report = run_suite(Suite::Fractions, &cfg(n, r, 200)).map_err(|e| e.to_string())?;
        let iso = report.law("isomorphism").ok_or("missing isomorphism law")?;
        if !report.passed() || iso.passed != 200 {
            return Err(format!("n={n} r={r}\n{report}"));
        }
        pairs += iso.passed;
    }
    Ok(format!("{pairs} pairs"))
}

fn counting() -> Outcome {
    let mut cases = 0;
    for n in [2usize, 3, 4] {
        for carets in 0..=6 {
            let leaves = 1 + carets * (n - 1);
            let enumerated = enumerate_trees(n, carets).len();
            let counted = count_trees(n, leaves);
            if counted != BigUint::from(enumerated) {
                return Err(format!("n={n} leaves={leaves}: count {counted}, enumeration {enumerated}"));
            }
            cases += 1;
        }
        // leaf counts no tree reaches
        for leaves in 2..=(1 + 6 * (n - 1)) {
            if (leaves - 1) % (n - 1) != 0 && count_trees(n, leaves) != BigUint::from(0u32) {
                return Err(format!("n={n} leaves={leaves} is unreachable but counted"));
            }
        }
    }
    if count_trees(2, 5) != BigUint::from(14u32) || count_trees(3, 5) != BigUint::from(3u32) {
        return Err("count_trees(2,5) or count_trees(3,5) is off".into());
    }
    Ok(format!("{cases} cases"))
}

fn tiling() -> Outcome {
    let spec = parse_cut_spec("2;3").map_err(|e| e.to_string())?;
    let want = vec![
        Cuboid::from_fractions(&[((0, 1), (1, 2)), ((0, 1), (1, 1))]),
        Cuboid::from_fractions(&[((1, 2), (1, 1)), ((0, 1), (1, 3))]),
        Cuboid::from_fractions(&[((1, 2), (1, 1)), ((1, 3), (2, 3))]),
        Cuboid::from_fractions(&[((1, 2), (1, 1)), ((2, 3), (1, 1))]),
    ];
    let parsed = parse_cut_tree("(1,2:*,(2,3:*,*,*))", &spec).map_err(|e| e.to_string())?;
    if parsed.boxes() != want {
        return Err(format!("parsed tree gives {:?}", parsed.boxes()));
    }
    let split = |axis, parts| CutNode::Split { axis, parts: vec![CutNode::Leaf; parts] };
    let outer = CutTree::new(spec.clone(), split(0, 2)).map_err(|e| e.to_string())?;
    let inner = CutTree::new(spec, split(1, 3)).map_err(|e| e.to_string())?;
    let composed = outer.compose(1, &inner).map_err(|e| e.to_string())?;
    if composed.boxes() != want {
        return Err(format!("composition gives {:?}", composed.boxes()));
    }
    let _ = CutSpec::interval(2).map_err(|e| e.to_string())?;
    Ok("4 boxes".into())
}

fn brute_dependent(a: u64, b: u64) -> bool {
    (1..=6u32).any(|i| (1..=6u32).any(|j| (a as u128).pow(i) == (b as u128).pow(j)))
}

fn independence() -> Outcome {
    let mut pairs = 0;
    for a in 2..=12u64 {
        for b in a + 1..=12 {
            let fast = independence_check(&[a, b]);
            if fast == brute_dependent(a, b) {
                return Err(format!("{{{a},{b}}}: independence_check says {fast}"));
            }
            pairs += 1;
        }
    }
    if !independence_check(&[2, 6]) || independence_check(&[2, 4]) {
        return Err("{2,6} or {2,4} misclassified".into());
    }
    Ok(format!("{pairs} pairs"))
}

fn round_trips() -> Outcome {
    let mut elements = 0;
    for (k, &(n, r)) in GROUPS.iter().enumerate() {
        let c = SuiteConfig { seed: 11 + k as u64, ..cfg(n, r, 200) };
        for trial in 0..c.trials {
            let x = random_element(&c, &mut trial_rng(c.seed, trial));
            let printed = x.to_string();
            let parsed = parse_diagram(&printed, n).map_err(|e| format!("{printed}: {e}"))?;
            if parsed != x || parsed.to_string() != printed {
                return Err(format!("{printed} did not survive"));
            }
            elements += 1;
        }
    }
    let invocations: [&[&str]; 4] = [
        &["htgroups", "random", "--arity", "3", "--roots", "2", "--carets", "5", "--seed", "42"],
        &["htgroups", "check", "--suite", "oracle", "--arity", "2", "--roots", "2", "--trials", "20"],
        &["htgroups", "mul", "(*,*);[2,1];(*,*)", "((*,*),*);[1,2,3];(*,(*,*))"],
        &["htgroups", "dot", "((*,*),*);[3,1,2];((*,*),*)"],
    ];
    for args in invocations {
        let first = run(args.iter().copied());
        let second = run(args.iter().copied());
        if first.code != 0 || first != second {
            return Err(format!("{args:?} is not stable: {first:?} vs {second:?}"));
        }
    }
    Ok(format!("{elements} elements, {} invocations", invocations.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("group axioms", group_axioms),
        ("prefix-map oracle", oracle),
        ("confluence", confluence),
        ("golden examples", golden_examples),
        ("periodicity", periodicity),
        ("cancellative fractions", cancellation),
        ("operad group isomorphism", fractions),
        ("tree counting", counting),
        ("k=2 tiling", tiling),
        ("independence", independence),
        ("round trips", round_trips),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL\n{why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
