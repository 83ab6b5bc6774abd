//! End-to-end tests of the command-line surface: golden documents,
//! round-trips, exit codes, and worker determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_deckrecon"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("deckrecon-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

const STANDARD_F1: &str = "version 1\nkind multiset\nn 2\ncounts 0 2 2 2\n";
const STANDARD_F2: &str = "version 1\nkind multiset\nn 2\ncounts 1 1 1 3\n";

#[test]
fn formula_golden_output() {
    let out = run(&["formula", "--n", "10"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "version 1\nkind formula\nn 10\nt 2\nr 8\n");
}

#[test]
fn formula_predicate_table() {
    let out = run(&["formula", "--n", "10", "--table"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("predicate 8 true\n"));
    assert!(text.contains("predicate 9 false\n"));
    assert!(text.contains("predicate 12 false\n"));
}

#[test]
fn witness_golden_output() {
    let out = run(&["witness", "--n", "4", "--k", "3"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "version 1\nkind witness\nn 4\nk 3\n\
         a_elements 0 2 4 7 8 9\nb_elements 0 2 4 7 10 11\n\
         non_translate true\nindist_level 2\nblock_structure_ok true\nsound true\n"
    );
}

#[test]
fn witness_out_files_round_trip_through_distnum() {
    let base = std::env::temp_dir().join(format!("deckrecon-wit-{}", std::process::id()));
    let out = run(&[
        "witness",
        "--n",
        "5",
        "--k",
        "3",
        "--out",
        base.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let a_path = format!("{}.a", base.display());
    let b_path = format!("{}.b", base.display());
    let a_text = std::fs::read_to_string(&a_path).unwrap();
    assert!(a_text.starts_with("version 1\nkind set\nn 5\n"));

    let dist = run(&["distnum", "--a", &a_path, "--b", &b_path]);
    assert!(dist.status.success());
    assert!(stdout_of(&dist).contains("\nresult 3\n"));

    std::fs::remove_file(a_path).ok();
    std::fs::remove_file(b_path).ok();
}

#[test]
fn distnum_fourier_golden() {
    let a = temp_file("d1a.ms", STANDARD_F1);
    let b = temp_file("d1b.ms", STANDARD_F2);
    let out = run(&[
        "distnum",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "version 1\nkind distnum\nmethod fourier\nn 2\nresult 3\n\
         witness 1 2 3\nproduct_left -8\nproduct_right 8\n"
    );
}

#[test]
fn distnum_methods_agree() {
    let a = temp_file("d2a.ms", STANDARD_F1);
    let b = temp_file("d2b.ms", STANDARD_F2);
    let deck = run(&[
        "distnum",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
        "--method",
        "deck",
    ]);
    assert!(deck.status.success());
    assert!(stdout_of(&deck).contains("\nresult 3\n"));
}

#[test]
fn distnum_translates_report_infinity() {
    let a = temp_file("d3a.ms", "version 1\nkind multiset\nn 2\ncounts 4 1 2 3\n");
    let b = temp_file("d3b.ms", "version 1\nkind multiset\nn 2\ncounts 1 4 3 2\n");
    let out = run(&[
        "distnum",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("\nresult infinity\n"));
    assert!(text.contains("\nshift 1\n"));
}

#[test]
fn distnum_capped_scan_reports_unknown() {
    let a = temp_file("d4a.ms", STANDARD_F1);
    let b = temp_file("d4b.ms", STANDARD_F2);
    let out = run(&[
        "distnum",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
        "--max-k",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("\nresult unknown\n"));
    assert!(text.contains("\nindistinguishable_through 2\n"));
}

#[test]
fn distnum_deck_method_refuses_large_instances() {
    // Equal multisets on Z_2^8: the deck scan hits the size guard at level 4
    // before it can certify anything.
    let counts: Vec<String> = (0..256).map(|i| ((i % 3) + 1).to_string()).collect();
    let doc = format!(
        "version 1\nkind multiset\nn 8\ncounts {}\n",
        counts.join(" ")
    );
    let a = temp_file("d5a.ms", &doc);
    let b = temp_file("d5b.ms", &doc);
    let out = run(&[
        "distnum",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
        "--method",
        "deck",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn deck_golden_output() {
    let t = temp_file("deck.set", "version 1\nkind set\nn 2\nelements 0 1 2\n");
    let out = run(&["deck", "--in", t.to_str().unwrap(), "--k", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "version 1\nkind deck\nn 2\nk 2\nsize 3\ntotal 3\n\
         entry 1 2 0 1\nentry 1 2 0 2\nentry 1 2 0 3\n"
    );
}

#[test]
fn deck_rejects_oversized_level() {
    let t = temp_file("deckbig.set", "version 1\nkind set\nn 2\nelements 0 1 2\n");
    let out = run(&["deck", "--in", t.to_str().unwrap(), "--k", "4"]);
    assert_eq!(out.status.code(), Some(1)); // k exceeds the set size
}

#[test]
fn wht_golden_output() {
    let f = temp_file("wht.ms", STANDARD_F1);
    let out = run(&["wht", "--in", f.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "version 1\nkind spectrum\nn 2\nvalues 6 -2 -2 -2\n"
    );
}

#[test]
fn wht_accepts_set_documents() {
    let f = temp_file("whtset.set", "version 1\nkind set\nn 2\nelements 0 3\n");
    let out = run(&["wht", "--in", f.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "version 1\nkind spectrum\nn 2\nvalues 2 0 0 2\n"
    );
}

#[test]
fn exhaustive_golden_output() {
    let out = run(&["exhaustive", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "version 1\nkind exhaustive\nn 2\nr 2\nformula_r 2\nclass_count 7\n\
         extremal_count 3\n\
         extremal_pair 2 2 0 1 2 0 2\n\
         extremal_pair 2 2 0 1 2 0 3\n\
         extremal_pair 2 2 0 2 2 0 3\n"
    );
}

#[test]
fn exhaustive_is_deterministic_across_worker_counts() {
    let one = run(&["exhaustive", "--n", "3", "--workers", "1"]);
    let four = run(&["exhaustive", "--n", "3", "--workers", "4"]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(stdout_of(&one), stdout_of(&four));

    let via_env = binary()
        .args(["exhaustive", "--n", "3"])
        .env("DECKRECON_WORKERS", "2")
        .output()
        .unwrap();
    assert!(via_env.status.success());
    assert_eq!(stdout_of(&via_env), stdout_of(&one));
}

#[test]
fn exhaustive_n4_is_deterministic_at_full_scale() {
    let one = run(&["exhaustive", "--n", "4", "--workers", "1"]);
    let two = run(&["exhaustive", "--n", "4", "--workers", "2"]);
    assert!(one.status.success() && two.status.success());
    let text = stdout_of(&one);
    assert_eq!(text, stdout_of(&two));
    assert!(text.contains("\nr 3\n"));
    assert!(text.contains("\nclass_count 4336\n"));
}

#[test]
fn deck_rejects_multiset_documents() {
    let f = temp_file("deckms.ms", STANDARD_F1);
    let out = run(&["deck", "--in", f.to_str().unwrap(), "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn distnum_deck_method_capped_reports_unknown() {
    // Equal multisets on Z_2^8 with the scan capped below the guard
    // threshold: the deck method can finish and reports unknown.
    let counts: Vec<String> = (0..256).map(|i| ((i % 3) + 1).to_string()).collect();
    let doc = format!(
        "version 1\nkind multiset\nn 8\ncounts {}\n",
        counts.join(" ")
    );
    let a = temp_file("d6a.ms", &doc);
    let b = temp_file("d6b.ms", &doc);
    let out = run(&[
        "distnum",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
        "--method",
        "deck",
        "--max-k",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("\nresult unknown\n"));
    assert!(text.contains("\nindistinguishable_through 2\n"));
}

#[test]
fn exhaustive_rejects_large_n_with_exit_3() {
    let out = run(&["exhaustive", "--n", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn standard_golden_output() {
    let out = run(&[
        "standard", "--k", "3", "--a", "0", "--b", "1", "--coeffs", "1,1",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "version 1\nkind standard\nk 3\na 0\nb 1\ncoeffs 1 1\n\
         f1_counts 0 2 2 2\nf2_counts 1 1 1 3\n\
         spectrum1 6 -2 -2 -2\nspectrum2 6 -2 -2 2\n\
         distnum 3\nwitness 1 2 3\n"
    );
}

#[test]
fn classify_golden_output() {
    let a = temp_file("c1a.ms", STANDARD_F1);
    let b = temp_file("c1b.ms", STANDARD_F2);
    let out = run(&[
        "classify",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "version 1\nkind classification\nn 2\nk 3\ntheta_cols 1 2\n\
         z1 0\nz2 0\na 0\nb 1\ncoeffs 1 1\n"
    );
}

#[test]
fn classify_failure_exits_4() {
    let a = temp_file("c2a.set", "version 1\nkind set\nn 2\nelements 0 1\n");
    let b = temp_file("c2b.set", "version 1\nkind set\nn 2\nelements 0 3\n");
    let out = run(&[
        "classify",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["formula"]).status.code(), Some(1)); // missing --n
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["formula", "--n", "0"]).status.code(), Some(1));
    assert_eq!(
        run(&["distnum", "--a", "/nonexistent/x", "--b", "/nonexistent/y"])
            .status
            .code(),
        Some(1)
    );
    let bad = temp_file("bad.ms", "version 1\nkind multiset\nn 2\ncounts 1 2\n");
    let ok = temp_file("ok.ms", STANDARD_F1);
    assert_eq!(
        run(&[
            "distnum",
            "--a",
            bad.to_str().unwrap(),
            "--b",
            ok.to_str().unwrap()
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn infeasible_witness_parameters_exit_1() {
    let out = run(&["witness", "--n", "3", "--k", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("2^(n+1-k) = 2 < k = 3"), "stderr: {err}");
}

#[test]
fn help_and_version_exit_0() {
    assert!(run(&["--help"]).status.success());
    assert!(run(&["--version"]).status.success());
}
