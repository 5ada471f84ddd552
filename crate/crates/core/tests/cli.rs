use std::process::Command;

use htgroups::cli::run;

fn ok(args: &[&str]) -> String {
    let mut argv = vec!["htgroups"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn code(args: &[&str]) -> i32 {
    let mut argv = vec!["htgroups"];
    argv.extend_from_slice(args);
    run(argv).code
}

#[test]
fn arithmetic_subcommands() {
    assert_eq!(ok(&["reduce", "(*,(*,*));[3,1,2];((*,*),*)"]), "(*,*);[2,1];(*,*)\n");
    assert_eq!(ok(&["mul", "(*,*);[2,1];(*,*)", "((*,*),*);[1,2,3];(*,(*,*))"]), "((*,*),*);[3,1,2];((*,*),*)\n");
    assert_eq!(ok(&["inv", "((*,*),*);[1,2,3];(*,(*,*))"]), "(*,(*,*));[1,2,3];((*,*),*)\n");
    assert_eq!(ok(&["eq", "(*,*);[2,1];(*,*)", "(*,(*,*));[3,1,2];((*,*),*)"]), "true\n");
    assert_eq!(ok(&["eq", "(*,*);[2,1];(*,*)", "*;[1];*"]), "false\n");
}

#[test]
fn mul_folds_left_to_right() {
    let x = "(*,(*,*));[1,2,3];((*,*),*)";
    let cube = ok(&["mul", x, x, x]);
    let square = ok(&["mul", x, x]);
    assert_eq!(cube, ok(&["mul", square.trim(), x]));
}

#[test]
fn actions() {
    let x = "((*,*),*);[1,2,3];(*,(*,*))";
    assert_eq!(ok(&["act", "--word", "01", x]), "1:10\n");
    assert_eq!(ok(&["act", "--word", "0011", x]), "1:011\n");
    assert_eq!(ok(&["eval", "--rational", "1/4", x]), "1:1/2^1\n");
    assert_eq!(ok(&["eval", "--rational", "3/4", "(*,*);[2,1];(*,*)"]), "1:1/2^2\n");
    assert_eq!(code(&["act", "--word", "0", x]), 1);
    assert_eq!(code(&["eval", "--rational", "1/3", x]), 1);
    assert_eq!(code(&["act", "--word", "1", "--component", "2", x]), 1);
}

#[test]
fn structure_subcommands() {
    assert_eq!(ok(&["member", "(*,*);[2,1];(*,*)"]), "F false\nT true\n");
    assert_eq!(ok(&["periodicity", "(*,*);[2,1];(*,*)"]), "*,*;[2,1];*,*\n");
    assert_eq!(ok(&["periodicity", "--inverse", "*,*;[2,1];*,*"]), "(*,*);[2,1];(*,*)\n");
    assert_eq!(ok(&["stabilize", "(*,*);[2,1];(*,*)"]), "(*,*),*;[2,1,3];(*,*),*\n");
    assert_eq!(ok(&["rules", "((*,*),*);[3,1,2];((*,*),*)"]), "1:00 -> 1:1\n1:01 -> 1:00\n1:1 -> 1:01\n");
    assert_eq!(ok(&["count", "--arity", "2", "--leaves", "5"]), "14\n");
    assert_eq!(ok(&["count", "--arity", "3", "--leaves", "4"]), "0\n");
    assert_eq!(ok(&["independent", "2", "6"]), "true\n");
    assert_eq!(ok(&["independent", "2", "4"]), "false\n");
    assert_eq!(ok(&["prop", "compose", "[2,1];(*,*)", "[1,2,3];(*,*),*"]), "[2,3,1];(*,(*,*))\n");
    assert_eq!(
        ok(&["boxes", "--dims", "2;3", "(1,2:*,(2,3:*,*,*))"]),
        "[0/1,1/2]x[0/1,1/1]\n[1/2,1/1]x[0/1,1/3]\n[1/2,1/1]x[1/3,2/3]\n[1/2,1/1]x[2/3,1/1]\n"
    );
}

#[test]
fn trivial_operands_use_the_arity_flag() {
    assert_eq!(ok(&["reduce", "*;[1];*"]), "*;[1];*\n");
    assert_eq!(ok(&["reduce", "--arity", "3", "*,*;[2,1];*,*"]), "*,*;[2,1];*,*\n");
    // an operand with a caret fixes the arity for the trivial one
    assert_eq!(ok(&["mul", "*;[1];*", "(*,*,*);[3,1,2];(*,*,*)"]), "(*,*,*);[3,1,2];(*,*,*)\n");
}

#[test]
fn random_is_seeded() {
    let args = ["random", "--arity", "3", "--roots", "2", "--carets", "5", "--seed", "42"];
    assert_eq!(
        ok(&args),
        "*,((*,((*,*,(*,*,*)),*,*),*),*,*);[6,4,2,8,11,5,9,7,1,12,10,3];*,(*,*,((*,(*,*,*),*),(*,*,*),*))\n"
    );
    assert_eq!(
        ok(&["random", "--arity", "2", "--roots", "1", "--carets", "4"]),
        "(*,(*,(*,(*,*))));[2,1,4,5,3];(*,((*,*),(*,*)))\n"
    );
}

#[test]
fn dot_golden() {
    assert_eq!(ok(&["dot", "((*,*),*);[3,1,2];((*,*),*)"]), include_str!("golden/product.dot"));
}

#[test]
fn check_reports_and_exit_codes() {
    let out = ok(&["check", "--suite", "confluence", "--arity", "3", "--roots", "2", "--trials", "10"]);
    assert!(out.ends_with("suite confluence arity=3 roots=2 trials=10 seed=7: PASS\n"));
    assert!(out.lines().filter(|l| l.starts_with("law ")).all(|l| l.ends_with("failed=0")));
    assert_eq!(code(&["check", "--suite", "nope"]), 1);
    assert_eq!(code(&["check", "--suite", "oracle", "--arity", "1"]), 1);
}

#[test]
fn errors_exit_one() {
    assert_eq!(code(&["reduce", "(*,*);[1];(*,*)"]), 1);
    assert_eq!(code(&["mul", "(*,*);[2,1];(*,*)"]), 1);
    assert_eq!(code(&["eq", "(*,*);[2,1];(*,*)", "*,*;[2,1];*,*"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["reduce", "--bogus", "*;[1];*"]), 1);
    assert_eq!(code(&["independent", "1", "2"]), 1);
    assert_eq!(code(&["count", "--arity", "1", "--leaves", "3"]), 1);
    assert_eq!(code(&["periodicity", "--inverse", "(*,*);[2,1];(*,*)"]), 1);
    let out = run(["htgroups", "reduce", "(*,x)"]);
    assert!(out.stderr.starts_with("error: "), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert!(ok(&["--help"]).contains("periodicity"));
}

#[test]
fn binary_output_is_byte_stable() {
    let exe = env!("CARGO_BIN_EXE_htgroups");
    let args = ["check", "--suite", "group-axioms", "--arity", "2", "--roots", "2", "--trials", "25", "--seed", "3"];
    let a = Command::new(exe).args(args).output().unwrap();
    let b = Command::new(exe).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8(a.stdout).unwrap(), ok(&args));

    let bad = Command::new(exe).args(["inv", "(*"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
}
