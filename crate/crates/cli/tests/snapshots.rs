//! Byte-exact snapshots of the CLI: every documented example, every output
//! format, and every error path, pinned against the in-process entry point.

use schrod_cli::{run, Outcome};

fn exec(args: &[&str]) -> Outcome {
    let mut argv = vec!["schrod"];
    argv.extend_from_slice(args);
    run(argv)
}

/// Assert a successful run with exactly this stdout and nothing on stderr.
fn ok(args: &[&str], stdout: &str) {
    let outcome = exec(args);
    assert_eq!(outcome.code, 0, "stderr: {}", outcome.stderr);
    assert_eq!(outcome.stdout, stdout);
    assert!(outcome.stderr.is_empty(), "stderr: {}", outcome.stderr);
}

/// Assert a failed run with this exit code and this exact stderr.
fn err(args: &[&str], code: i32, stderr: &str) {
    let outcome = exec(args);
    assert_eq!(outcome.code, code, "stdout: {}", outcome.stdout);
    assert_eq!(outcome.stderr, stderr);
    assert!(outcome.stdout.is_empty(), "stdout: {}", outcome.stdout);
}

#[test]
fn normalize_examples() {
    ok(&["normalize", "p*q"], "q*p + z\n");
    ok(&["normalize", "h"], "h\n");
    ok(&["normalize", "p*q - q*p - z"], "0\n");
    ok(&["normalize", "q*p*q"], "q^2*p + q*z\n");
    ok(&["normalize", "2*q*3 + (-1/2)*h"], "6*q - 1/2*h\n");
}

#[test]
fn normalize_localized() {
    ok(
        &["normalize", "e*q^-1", "--mode", "at_q"],
        "q^-1*e - q^-2*p + q^-3*z\n",
    );
    ok(&["normalize", "p*q^-1", "--mode", "at_q"], "q^-1*p - q^-2*z\n");
    ok(&["normalize", "p*f^-1", "--mode", "at_f"], "f^-1*p + q*f^-2\n");
    ok(&["normalize", "h*f^-1", "--mode", "at_f"], "f^-1*h + 2*f^-1\n");
    // Negative exponents are rejected without the matching localization.
    err(
        &["normalize", "e*q^-1"],
        2,
        "error: negative exponent -1 on generator q is not allowed in mode none\n",
    );
}

#[test]
fn theta_examples() {
    ok(&["theta", "p", "--u", "q", "--x", "1/2"], "p + 1/2*q^-1*z\n");
    ok(&["theta", "z", "--u", "f", "--x", "7"], "z\n");
    ok(&["theta", "q", "--u", "q", "--x", "0"], "q\n");
    ok(&["theta", "e", "--u", "f", "--x", "1"], "e + f^-1*h\n");
}

#[test]
fn act_examples() {
    let b_half = &[
        "act", "p", "--family", "B_q", "--lambda", "-1/2", "--c", "1", "--x", "1/2", "--on",
        "0,0",
    ];
    ok(b_half, "1/2·v(-1,0)\n");
    ok(
        &[
            "act", "z", "--family", "B_q", "--lambda", "-1/2", "--c", "1", "--x", "1/2",
            "--on", "3,0",
        ],
        "1·v(3,0)\n",
    );
    // A localized element acting through the inverse shift.
    ok(
        &[
            "act", "q^-1", "--family", "B_q", "--lambda", "1/2", "--c", "1", "--x", "1/3",
            "--mode", "at_q", "--on", "2,1",
        ],
        "1·v(1,1)\n",
    );
}

#[test]
fn act_error_paths() {
    err(
        &[
            "act", "q^-1", "--family", "N", "--lambda", "1/2", "--c", "1", "--on", "1,0",
            "--mode", "at_q",
        ],
        2,
        "error: negative power of q cannot act on this module family\n",
    );
    err(
        &["act", "p", "--family", "M", "--lambda", "0", "--c", "1", "--on", "-1,0"],
        2,
        "error: v(-1,0) is not a basis vector of VermaQuotientM\n",
    );
    err(
        &[
            "act", "p", "--family", "M", "--lambda", "0", "--c", "1", "--x", "1/2", "--on",
            "0,0",
        ],
        2,
        "error: --x applies to the B_q family only\n",
    );
    err(
        &["act", "p", "--family", "M", "--lambda", "0", "--c", "1.5", "--on", "0,0"],
        2,
        "error: --c: \"1.5\" is not an exact rational (use integers or \"p/q\"; floats are rejected)\n",
    );
}

#[test]
fn verify_all_suites_text() {
    ok(
        &[
            "verify", "--suite", "all", "--family", "B_q", "--lambda", "3/2", "--c", "2",
            "--x", "1/3", "--i-min", "-8", "--i-max", "8",
        ],
        "axioms: PASS (pairs=15, vectors=51, violations=0)\n\
         theta: PASS (u=q, hom_pairs=126, additivity_checks=42, violations=0)\n\
         twist-coherence: PASS (checks=306, composition_checks=0, mismatches=0)\n\
         shift-iso: PASS (n=1, verified=true)\n\
         simplicity: PASS (starts=51, interior_strata=1, failures=0)\n\
         verify: PASS\n",
    );
}

#[test]
fn verify_single_suites() {
    ok(
        &[
            "verify", "--suite", "shift-iso", "--family", "B_q", "--lambda", "1/2", "--c",
            "1", "--x", "1/3", "--x2", "4/3",
        ],
        "shift-iso: PASS (n=1, verified=true)\nverify: PASS\n",
    );
    ok(
        &[
            "verify", "--suite", "theta", "--family", "B_q", "--lambda", "1/2", "--c", "1",
            "--x", "1/3",
        ],
        "theta: PASS (u=q, hom_pairs=126, additivity_checks=42, violations=0)\nverify: PASS\n",
    );
}

#[test]
fn verify_simplicity_flags_untwisted() {
    let outcome = exec(&[
        "verify", "--suite", "simplicity", "--family", "B_q", "--lambda", "-1/2", "--c", "1",
        "--x", "0", "--i-min", "-12", "--i-max", "12",
    ]);
    assert_eq!(outcome.code, 1, "a failed verification exits 1");
    assert_eq!(
        outcome.stdout,
        "simplicity: FAIL (starts=25, interior_strata=21, failures=13)\nverify: FAIL\n"
    );
}

#[test]
fn verify_parameter_errors() {
    err(
        &["verify", "--suite", "axioms", "--family", "B_q", "--lambda", "1/2", "--c", "0",
          "--x", "1/3"],
        2,
        "error: invalid module parameters: central charge c must be non-zero\n",
    );
    err(
        &["verify", "--suite", "theta", "--samples", "4"],
        2,
        "error: --samples must be at least 5: certifying a degree-4 polynomial identity needs 5 distinct points\n",
    );
    err(
        &[
            "verify", "--suite", "axioms", "--family", "N", "--lambda", "1/2", "--c", "1",
            "--i-min", "3", "--i-max", "-3",
        ],
        2,
        "error: --i-min 3 exceeds --i-max -3\n",
    );
}

#[test]
fn verify_json_format() {
    ok(
        &[
            "verify", "--suite", "axioms", "--family", "N", "--lambda", "1/2", "--c", "1",
            "--i-min", "-3", "--i-max", "3", "--format", "json",
        ],
        r#"{
  "pass": true,
  "suites": [
    {
      "pass": true,
      "report": {
        "module": {
          "c": "1",
          "family": "TopRowN",
          "lambda": "1/2",
          "x": "0"
        },
        "pairs_checked": 15,
        "vectors_checked": 8,
        "violations": [],
        "window": {
          "i_max": 3,
          "i_min": -3
        }
      },
      "suite": "axioms"
    }
  ]
}
"#,
    );
}

#[test]
fn classify_text_both_verdicts() {
    ok(
        &["classify", "--lambda", "1/2", "--c", "1", "--x", "1/3", "--x2", "4/3"],
        "left: TwistedB_q(lambda=1/2, c=1, x=1/3)\n\
         right: TwistedB_q(lambda=1/2, c=1, x=4/3)\n\
         isomorphic: true\n\
         reason: ShiftEquivalent\n\
         shift: 1\n\
         witness_verified: true\n",
    );
    ok(
        &["classify", "--lambda", "1/2", "--c", "1", "--x", "1/3", "--c2", "2", "--x2", "1/3"],
        "left: TwistedB_q(lambda=1/2, c=1, x=1/3)\n\
         right: TwistedB_q(lambda=1/2, c=2, x=1/3)\n\
         isomorphic: false\n\
         reason: DistinctCentralCharge\n",
    );
}

#[test]
fn classify_json() {
    ok(
        &[
            "classify", "--lambda", "1/2", "--c", "1", "--x", "1/3", "--x2", "4/3",
            "--format", "json",
        ],
        r#"{
  "isomorphic": true,
  "left": {
    "c": "1",
    "family": "TwistedB_q",
    "lambda": "1/2",
    "x": "1/3"
  },
  "reason": "ShiftEquivalent",
  "right": {
    "c": "1",
    "family": "TwistedB_q",
    "lambda": "1/2",
    "x": "4/3"
  },
  "shift": 1,
  "witness_verified": true
}
"#,
    );
}

#[test]
fn diagram_json() {
    ok(
        &[
            "diagram", "--family", "B_q", "--lambda", "1/2", "--c", "1", "--x", "1/3",
            "--i-min", "-3", "--i-max", "3", "--axioms",
        ],
        r#"{
  "family": "TwistedB_q",
  "lambda": "1/2",
  "c": "1",
  "x": "1/3",
  "window": {
    "i_min": -3,
    "i_max": 3
  },
  "weights": [
    {
      "weight": "19/6",
      "dim": 2,
      "complete": false
    },
    {
      "weight": "13/6",
      "dim": 2,
      "complete": false
    },
    {
      "weight": "7/6",
      "dim": 2,
      "complete": true
    },
    {
      "weight": "1/6",
      "dim": 2,
      "complete": true
    },
    {
      "weight": "-5/6",
      "dim": 2,
      "complete": true
    },
    {
      "weight": "-11/6",
      "dim": 2,
      "complete": true
    },
    {
      "weight": "-17/6",
      "dim": 2,
      "complete": true
    },
    {
      "weight": "-23/6",
      "dim": 2,
      "complete": false
    },
    {
      "weight": "-29/6",
      "dim": 2,
      "complete": false
    }
  ],
  "axioms": {
    "pass": true,
    "violations": 0
  }
}
"#,
    );
}

#[test]
fn output_file_redirects_stdout() {
    let path = std::env::temp_dir().join("schrod-snapshot-out.txt");
    let path_str = path.to_str().unwrap();
    let outcome = exec(&["normalize", "p*q", "--out", path_str]);
    assert_eq!(outcome.code, 0, "stderr: {}", outcome.stderr);
    assert!(outcome.stdout.is_empty(), "stdout: {}", outcome.stdout);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "q*p + z\n");
    std::fs::remove_file(&path).ok();
}

#[test]
fn parse_errors_carry_byte_positions() {
    err(
        &["normalize", "q + "],
        2,
        "error: syntax error at byte 4: expected a factor, found end of input\n",
    );
    err(
        &["normalize", "q ** p"],
        2,
        "error: syntax error at byte 3: expected a number, '(', or a generator (one of q f p e h z), found '*'\n",
    );
    err(
        &["normalize", "1/0"],
        2,
        "error: syntax error at byte 3: denominator must be non-zero\n",
    );
}

#[test]
fn help_version_and_usage_errors() {
    let help = exec(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("Usage: schrod <COMMAND>"));

    let sub_help = exec(&["verify", "--help"]);
    assert_eq!(sub_help.code, 0);
    assert!(sub_help.stdout.contains("--suite"));

    let version = exec(&["--version"]);
    assert_eq!(version.code, 0);
    assert_eq!(version.stdout, "schrod 0.1.0\n");

    let unknown = exec(&["normalize", "h", "--bogus"]);
    assert_eq!(unknown.code, 2);
    assert!(unknown.stderr.contains("unexpected argument"));

    let no_args = exec(&[]);
    assert_eq!(no_args.code, 2);
    assert!(no_args.stderr.contains("Usage"));
}
