use hyperballean_cli::{run_with_base, Outcome};
use serde_json::Value;

fn run(args: &[&str]) -> Outcome {
    let mut argv = vec!["hyperballean"];
    argv.extend_from_slice(args);
    run_with_base(argv, None)
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn dist_example() {
    let v = json(&["dist", "--group", "Z", "--sub", "2Z", "--sub", "3Z"]);
    assert_eq!(v["mu"], 3);
    assert!((v["log"].as_f64().unwrap() - 3f64.ln()).abs() < 1e-12);
    assert!((v["base"].as_f64().unwrap() - std::f64::consts::E).abs() < 1e-12);
}

#[test]
fn dist_infinite_and_base_override() {
    let v = json(&["dist", "--group", "Z", "--sub", "2Z", "--sub", "0Z"]);
    assert_eq!(v["mu"], "inf");
    assert_eq!(v["log"], "inf");

    let out = run_with_base(
        [
            "hyperballean",
            "dist",
            "--group",
            "Z",
            "--sub",
            "2Z",
            "--sub",
            "8Z",
        ],
        Some("2".into()),
    );
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["mu"], 4);
    assert_eq!(v["log"].as_f64().unwrap(), 2.0);

    let out = run_with_base(
        [
            "hyperballean",
            "dist",
            "--group",
            "Z",
            "--sub",
            "2Z",
            "--sub",
            "8Z",
        ],
        Some("0.5".into()),
    );
    assert_eq!(out.code, 2);
}

#[test]
fn dist_is_symmetric() {
    let cases: &[(&str, &str, &str)] = &[
        ("Z", "4Z", "6Z"),
        ("Z^2", "span[(2,4),(0,6)]", "span[(1,1)]"),
        ("Z^2", "span[(3,0),(0,5)]", "span[(2,1),(1,3)]"),
        ("Z(12)", "gen{2}", "gen{3}"),
        ("Z(2)+Z(4)", "gen{(1,0)}", "gen{(0,1)}"),
        ("Z(3^inf)", "H_1@3", "H_4@3"),
        ("Z(3^inf)", "H_1@3", "whole@3"),
    ];
    for (g, a, b) in cases {
        let x = json(&["dist", "--group", g, "--sub", a, "--sub", b]);
        let y = json(&["dist", "--group", g, "--sub", b, "--sub", a]);
        for key in ["mu", "log", "base", "commensurable"] {
            assert_eq!(x[key], y[key], "{g} {a} {b} {key}");
        }
    }
}

#[test]
fn printed_subgroups_reparse() {
    let cases: &[(&str, &str)] = &[
        ("Z", "6Z"),
        ("Z", "-6Z"),
        ("Z", "0Z"),
        ("Z^2", "span[(2,4)]"),
        ("Z^2", "span[(4,2),(6,0),(0,10)]"),
        ("Z^2", "0"),
        ("Z^3", "span[(1,2,3),(4,5,6)]"),
        ("Z(12)", "gen{8,6}"),
        ("Z(12)", "{0}"),
        ("Z(2)+Z(4)", "gen{(1,2),(0,2)}"),
        ("Z(3)xZ(9)", "gen{(1,3)}"),
        ("Z(2^inf)", "H_3@2"),
        ("Z(2^inf)", "whole@2"),
        ("Z(5^inf)", "H_0"),
    ];
    for (g, s) in cases {
        let first = json(&["dist", "--group", g, "--sub", s, "--sub", s]);
        assert_eq!(first["mu"], 1, "{g} {s}");
        let printed = first["subs"][0].as_str().unwrap().to_string();
        let again = json(&["dist", "--group", g, "--sub", &printed, "--sub", &printed]);
        assert_eq!(again["subs"][0].as_str().unwrap(), printed, "{g} {s}");
        // Canonical forms of the same subgroup compare equal.
        let cross = json(&["dist", "--group", g, "--sub", s, "--sub", &printed]);
        assert_eq!(cross["mu"], 1);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    let out = run(&["dist", "--group", "Z", "--sub", "2Z"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("exactly two"));
    assert_eq!(
        run(&["dist", "--group", "Z", "--sub", "2Q", "--sub", "3Z"]).code,
        2
    );
    // Parses, but does not fit the group.
    assert_eq!(
        run(&["dist", "--group", "Z", "--sub", "H_2@3", "--sub", "3Z"]).code,
        1
    );
    assert_eq!(
        run(&[
            "dist",
            "--group",
            "Z^2",
            "--sub",
            "span[(1,2,3)]",
            "--sub",
            "0"
        ])
        .code,
        1
    );
    assert_eq!(
        run(&["dist", "--group", "Z(2)xZ(3)", "--sub", "0", "--sub", "0"]).code,
        1
    );
    assert_eq!(run(&["ball", "--family", "LZ-exp", "--n", "5"]).code, 2);
    assert_eq!(run(&["verify", "--suite", "nope"]).code, 2);
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify"));
}

#[test]
fn ball_families() {
    let v = json(&["ball", "--family", "LZ-exp", "--n", "13", "--m", "4"]);
    assert_eq!(v["members"], serde_json::json!(["13Z"]));
    let v = json(&["ball", "--family", "LZ-exp", "--n", "2", "--m", "1"]);
    assert!(v["size"].as_u64().unwrap() > 1);
    let v = json(&["ball", "--family", "LZ-log", "--n", "6", "--K", "2"]);
    let members: Vec<&str> = v["members"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert!(members.contains(&"6Z") && members.contains(&"3Z") && members.contains(&"12Z"));
    assert!(!members.contains(&"5Z"));
    let v = json(&[
        "ball", "--family", "prufer", "--p", "3", "--n", "2", "--K", "9",
    ]);
    assert_eq!(v["size"], 5);
}

#[test]
fn saturate_and_component() {
    let v = json(&["saturate", "--group", "Z^2", "--sub", "span[(2,4)]"]);
    assert_eq!(v["saturation"], "span[(1,2)]");
    assert_eq!(v["index"], 2);
    let v = json(&["component", "--group", "Z^2", "--sub", "span[(2,4)]"]);
    assert_eq!(v["component_size"], "omega");
    let v = json(&["component", "--group", "Z^2", "--sub", "0"]);
    assert_eq!(v["component_size"], "1");
    let v = json(&["component", "--group", "Z(12)"]);
    assert_eq!(v["count"], "1");
    let v = json(&["component", "--group", "Z"]);
    assert_eq!(v["count"], "2");
    let v = json(&["component", "--exp-cardinality", "omega"]);
    assert!(v["count"].is_string());
}

#[test]
fn profile_example() {
    let dir = std::env::temp_dir().join(format!("hb-profile-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("prufer23.json");
    std::fs::write(&path, r#"{"divisible": {"prufer": {"2": 1, "3": 1}}}"#).unwrap();
    let v = json(&["profile", "--descriptor", path.to_str().unwrap()]);
    assert_eq!(v["asdim"]["kind"], "finite");
    assert_eq!(v["asdim"]["n"], 2);
    assert_eq!(v["iso_points"]["size"], "1");
    std::fs::remove_dir_all(&dir).ok();

    let v = json(&["profile", "--descriptor", r#"{"free_rank": 1}"#]);
    assert_eq!(v["asdim"]["kind"], "infinite");
    let out = run(&["profile", "--descriptor", r#"{"free_rank": -1}"#]);
    assert_eq!(out.code, 1);
    let out = run(&["profile", "--descriptor", "/nonexistent/descriptor.json"]);
    assert_eq!(out.code, 2);
}

#[test]
fn exp_ball_and_mu() {
    let v = json(&[
        "exp-ball", "--group", "Z(12)", "--center", "{0}", "--radius", "1",
    ]);
    assert_eq!(v["size"], 7);
    let v = json(&[
        "exp-ball", "--group", "Z", "--center", "{0,10}", "--radius", "1", "--member", "{1,9}",
    ]);
    assert_eq!(v["member"], true);
    let v = json(&[
        "exp-ball", "--group", "Z", "--center", "{0,10}", "--radius", "1", "--member", "{1}",
    ]);
    assert_eq!(v["member"], false);
    let v = json(&[
        "exp-ball",
        "--group",
        "Z",
        "--center",
        "{0}",
        "--radius",
        "2,-2",
        "--translates",
    ]);
    assert_eq!(v["size"], 3);

    let v = json(&["mu", "--group", "Z", "--set", "{0}", "--set", "{0,1,2}"]);
    assert_eq!(v["mu"], 3);
    let v = json(&[
        "mu", "--group", "Z(12)", "--set", "{0,4,8}", "--set", "{0,6}",
    ]);
    assert_eq!(v["mu"], 3);
}

#[test]
fn verify_example() {
    let v = json(&[
        "verify",
        "--suite",
        "iota",
        "--primes",
        "2,3",
        "--max-coord",
        "8",
    ]);
    assert_eq!(v["violations"], 0);
    assert!(v["samples"].as_u64().unwrap() > 0);
    let again = json(&[
        "verify",
        "--suite",
        "iota",
        "--primes",
        "2,3",
        "--max-coord",
        "8",
    ]);
    assert_eq!(v, again);
}
