use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn rootoidlab(args: &[&str]) -> Output {
    rootoidlab_env(args, &[])
}

fn rootoidlab_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rootoidlab"));
    cmd.args(args).env_remove("ROOTOIDLAB_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("rootoidlab runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Word length of a reduced word label, `1` being the empty word.
fn word_length(label: &str) -> usize {
    if label == "1" {
        0
    } else {
        label.chars().count()
    }
}

#[test]
fn build_writes_a_canonical_protorootoid() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a2.json");
    let o = rootoidlab(&["build", path_str(&data("a2.json")), "-o", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["kind"], "protorootoid");
    assert_eq!(doc["morphisms"].as_array().unwrap().len(), 6);
    assert_eq!(doc["grounds"]["W"].as_array().unwrap().len(), 3);

    let o = rootoidlab(&["build", path_str(&data("plane.json"))]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["objects"].as_array().unwrap().len(), 6);
}

#[test]
fn build_rejects_an_asymmetric_matrix() {
    let o = rootoidlab(&["build", path_str(&data("asymmetric.json"))]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("coxeter matrix not symmetric"));
}

#[test]
fn malformed_files_report_the_position() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        "{\"kind\": \"coxeter\",\n \"matrix\": [[1, 3], [3, 1]],\n \"extra\": 1}\n",
    )
    .unwrap();
    let o = rootoidlab(&["build", path_str(&bad)]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("field `extra`"), "{err}");

    std::fs::write(
        &bad,
        "{\"kind\": \"arrangement\", \"dim\": 2,\n \"normals\": [[1, 0], [0, true]]}",
    )
    .unwrap();
    let o = rootoidlab(&["build", path_str(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(
        stderr(&o).contains("field `normals[1][1]`"),
        "{}",
        stderr(&o)
    );

    std::fs::write(
        &bad,
        "{\"kind\": \"coxeter\",\n \"matrix\": [[1, 3], [3, 1]\n",
    )
    .unwrap();
    let o = rootoidlab(&["build", path_str(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    std::fs::write(&bad, "{\"kind\": \"tree\"}").unwrap();
    assert_eq!(code(&rootoidlab(&["classify", path_str(&bad)])), 2);

    let missing = dir.path().join("missing.json");
    let o = rootoidlab(&["abridge", path_str(&missing)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("cannot read"));
}

#[test]
fn unresolved_labels_are_errors() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(data("zero_cocycle.json"))
        .unwrap()
        .replace("\"x\": \"y\"", "\"x\": \"z\"");
    std::fs::write(&bad, text).unwrap();
    let o = rootoidlab(&["build", path_str(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("`z`"), "{}", stderr(&o));
}

#[test]
fn classify_reports_principal_rootoids() {
    let o = rootoidlab(&["classify", path_str(&data("a2.json"))]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(
        text.lines().next(),
        Some("principal rootoid; complete; simple generators: r,s")
    );
    assert!(text.contains("rootoid: true") && text.contains("semilocal criterion: holds"));

    let o = rootoidlab(&["classify", path_str(&data("a1_signed.json"))]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("principal rootoid; complete; simple generators: s\n"));
}

#[test]
fn classify_rejects_the_non_simplicial_arrangement() {
    let o = rootoidlab(&["classify", path_str(&data("non_simplicial.json"))]);
    assert_eq!(code(&o), 1);
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert!(first.starts_with("not a rootoid: weak order at"), "{first}");
    assert!(first.contains("have no meet"));
}

#[test]
fn classify_rejects_a_zero_cocycle() {
    let o = rootoidlab(&["classify", path_str(&data("zero_cocycle.json"))]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not faithful"));
}

#[test]
fn classify_json_mirrors_the_report() {
    let o = rootoidlab(&["classify", "--json", path_str(&data("b2.json"))]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for flag in [
        "connected",
        "complete",
        "principal",
        "regular",
        "faithful",
        "rootoid",
    ] {
        assert_eq!(doc[flag], true, "{flag}");
    }
    assert_eq!(doc["simply_connected"], false);
    assert_eq!(doc["simple_morphisms"], serde_json::json!(["r", "s"]));
    assert!(doc["rootoid_failure"].is_null());

    let o = rootoidlab(&["classify", "--json", path_str(&data("zero_cocycle.json"))]);
    assert_eq!(code(&o), 1);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["faithful"], false);
    assert!(doc["rootoid_failure"]
        .as_str()
        .unwrap()
        .contains("not faithful"));
}

#[test]
fn classify_flags_agree_across_modes() {
    let plain = rootoidlab(&["classify", path_str(&data("b2.json"))]);
    let exhaustive = rootoidlab(&["classify", "--exhaustive-jop", path_str(&data("b2.json"))]);
    assert_eq!(code(&exhaustive), 0);
    assert_eq!(
        stdout(&plain).lines().next(),
        stdout(&exhaustive).lines().next()
    );

    let abridged = rootoidlab(&["classify", "--abridge-first", path_str(&data("b2.json"))]);
    assert_eq!(code(&abridged), 0);
    assert!(stdout(&abridged).contains("longest elements: W=rsrs"));
}

#[test]
fn export_a2_weak_order_as_dot() {
    let o = rootoidlab(&["export", path_str(&data("a2.json")), "--what", "weak-order"]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph \"W\" {") && dot.trim_end().ends_with('}'));
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    assert_eq!(nodes, 6);
    // Hasse diagram of the hexagon: two chains of length three.
    assert_eq!(edges, 6);
    assert!(dot.contains("n0 [label=\"1\\n{}\"]"));

    let o = rootoidlab(&[
        "export",
        path_str(&data("a2.json")),
        "--what",
        "hasse",
        "--object",
        "W",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn export_trivial_groupoid_is_a_single_node() {
    let o = rootoidlab(&["export", path_str(&data("trivial.json"))]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 1);
    assert!(!dot.contains("->"));
}

#[test]
fn export_b2_root_table() {
    let o = rootoidlab(&["export", path_str(&data("b2.json")), "--what", "root-table"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').collect())
        .collect();
    assert_eq!(rows.len(), 8);
    for row in &rows {
        assert_eq!(
            row[3].parse::<usize>().unwrap(),
            word_length(row[0]),
            "{row:?}"
        );
        let members = row[4].trim_matches(|c| c == '{' || c == '}');
        let count = if members.is_empty() {
            0
        } else {
            members.split(',').count()
        };
        assert_eq!(count, word_length(row[0]));
    }
}

#[test]
fn export_unknown_object_fails() {
    let o = rootoidlab(&["export", path_str(&data("a2.json")), "--object", "nowhere"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown object `nowhere`"));
}

#[test]
fn check_identity_morphism() {
    let a2 = data("a2.json");
    let o = rootoidlab(&[
        "check-morphism",
        path_str(&a2),
        path_str(&a2),
        path_str(&data("a2_identity.json")),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for grade in ["in_prd", "in_rd", "in_Rd", "in_RdE"] {
        assert!(stdout(&o).contains(&format!("{grade}: true\n")), "{grade}");
    }
}

#[test]
fn check_corrupted_morphism() {
    let a2 = data("a2.json");
    let o = rootoidlab(&[
        "check-morphism",
        path_str(&a2),
        path_str(&a2),
        path_str(&data("a2_corrupted.json")),
    ]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(
        text.contains("in_prd: false") && text.contains("witness in_prd:"),
        "{text}"
    );
}

#[test]
fn check_morphism_between_non_rootoids() {
    let z = data("zero_cocycle.json");
    let o = rootoidlab(&[
        "check-morphism",
        path_str(&z),
        path_str(&z),
        path_str(&data("zero_cocycle_identity.json")),
    ]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(
        text.starts_with("in_prd: true\n") && text.contains("not a rootoid"),
        "{text}"
    );
}

#[test]
fn check_morphism_elaboration_failure() {
    let z = data("zero_cocycle.json");
    let o = rootoidlab(&[
        "check-morphism",
        path_str(&z),
        path_str(&z),
        path_str(&data("a2_identity.json")),
    ]);
    assert_eq!(code(&o), 2);
    let o = rootoidlab(&[
        "check-morphism",
        path_str(&data("asymmetric.json")),
        path_str(&z),
        path_str(&data("a2_identity.json")),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn cover_morphism_is_in_rde() {
    let dir = TempDir::new().unwrap();
    let (up, f) = (dir.path().join("cover.json"), dir.path().join("f.json"));
    let a2 = data("a2.json");
    let o = rootoidlab(&[
        "cover",
        path_str(&a2),
        "-o",
        path_str(&up),
        "--morphism",
        path_str(&f),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = rootoidlab(&["check-morphism", path_str(&up), path_str(&a2), path_str(&f)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("in_RdE: true"));

    let o = rootoidlab(&["classify", path_str(&up)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("simply_connected: true"));
}

#[test]
fn budget_caps_enumeration() {
    let o = rootoidlab_env(
        &["cover", path_str(&data("a2.json"))],
        &[("ROOTOIDLAB_BUDGET", "10")],
    );
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("budget"));
    let o = rootoidlab_env(&["coxeter", "--type", "A3"], &[("ROOTOIDLAB_BUDGET", "10")]);
    assert_eq!(code(&o), 2);
    let o = rootoidlab_env(
        &["coxeter", "--type", "A2"],
        &[("ROOTOIDLAB_BUDGET", "many")],
    );
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("ROOTOIDLAB_BUDGET"));
    let o = rootoidlab_env(
        &["coxeter", "--type", "F4"],
        &[("ROOTOIDLAB_BUDGET", "1152")],
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("order: 1152\n"));
}

#[test]
fn abridge_keeps_coxeter_systems_fixed() {
    let dir = TempDir::new().unwrap();
    let built = dir.path().join("built.json");
    let o = rootoidlab(&["build", path_str(&data("a2.json")), "-o", path_str(&built)]);
    assert_eq!(code(&o), 0);
    let o = rootoidlab(&["abridge", path_str(&data("a2.json"))]);
    assert_eq!(code(&o), 0);
    let abridged: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        abridged["cocycle"],
        serde_json::from_str::<serde_json::Value>(&std::fs::read_to_string(&built).unwrap())
            .unwrap()["cocycle"]
    );

    let o = rootoidlab(&[
        "classify",
        path_str(&data("zero_cocycle.json")),
        "--abridge-first",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn coxeter_named_types() {
    for (kind, order, reflections) in [
        ("A3", 24, 6),
        ("B3", 48, 9),
        ("D4", 192, 12),
        ("F4", 1152, 24),
        ("H3", 120, 15),
        ("I2(7)", 14, 7),
    ] {
        let o = rootoidlab(&["coxeter", "--type", kind]);
        assert_eq!(code(&o), 0, "{kind}: {}", stderr(&o));
        let text = stdout(&o);
        assert!(
            text.starts_with(&format!("order: {order}\nreflections: {reflections}\n")),
            "{kind}: {text}"
        );
        assert!(!text.contains("false"), "{kind}");
    }
    let o = rootoidlab(&["coxeter", "--type", "Q2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn coxeter_subgroup_and_cutoff() {
    let o = rootoidlab(&["coxeter", "--type", "B2", "--subgroup", "r,srs"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(
        text.contains("subgroup order: 4") && text.contains("order reflected: true"),
        "{text}"
    );

    let o = rootoidlab(&[
        "coxeter",
        "--matrix",
        "[[1,\"inf\"],[\"inf\",1]]",
        "--labels",
        "a,b",
        "--cutoff",
        "3",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(
        text.starts_with("elements of length at most 3: 7\n") && text.contains("truncated: true"),
        "{text}"
    );

    let o = rootoidlab(&["coxeter", "--matrix", "[[1,0],[0,1]]"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("cutoff"));

    let o = rootoidlab(&["coxeter", "--matrix", "[[1,3],[2,1]]"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("coxeter matrix not symmetric"));
}

#[test]
fn coxeter_output_matches_build() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a2.json");
    let o = rootoidlab(&["coxeter", "--type", "A2", "-o", path_str(&out)]);
    assert_eq!(code(&o), 0);
    let built = rootoidlab(&["build", path_str(&data("a2.json"))]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), stdout(&built));
}

#[test]
fn arrangement_command() {
    let o = rootoidlab(&["arrangement", "--normals", "1,0;0,1;1,1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(
        text.starts_with("chambers: 6\n")
            && text.contains("simplicial: true")
            && text.contains("rootoid: true")
    );

    let o = rootoidlab(&["arrangement", "--normals", "1,0,0;0,1,0;0,0,1;1,1,1"]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(
        text.contains("simplicial: false") && text.contains("not a rootoid"),
        "{text}"
    );

    let o = rootoidlab(&["arrangement", "--normals", "1,a"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&rootoidlab(&[])), 2);
    assert_eq!(
        code(&rootoidlab(&["export", "x.json", "--what", "poster"])),
        2
    );
}

#[test]
fn pipeline_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str| {
        let built = dir.path().join(format!("{name}.json"));
        let b = rootoidlab(&[
            "build",
            path_str(&data("plane.json")),
            "-o",
            path_str(&built),
        ]);
        assert_eq!(code(&b), 0);
        let c = rootoidlab(&["classify", path_str(&built)]);
        let e = rootoidlab(&["export", path_str(&built), "--what", "weak-order"]);
        let t = rootoidlab(&["export", path_str(&built), "--what", "root-table"]);
        (std::fs::read(&built).unwrap(), c.stdout, e.stdout, t.stdout)
    };
    assert_eq!(run("first"), run("second"));

    let direct = rootoidlab(&["export", path_str(&data("plane.json"))]);
    let (_, _, via_build, _) = run("third");
    assert_eq!(direct.stdout, via_build);
}
