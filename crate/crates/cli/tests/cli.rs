use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const STAR: &str = "\
# star with an active center
nodes 9
edge 0 1
edge 0 2
edge 0 3
edge 0 4
edge 0 5
edge 0 6
edge 0 7
edge 0 8
init 0 1
target 1
";

const IDENTITY: &str = "\
inputs 2
gate 0 INPUT
gate 1 INPUT
output 0 0
output 1 1
";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_majnet")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn star_with_blocks(blocks: &str) -> String {
    format!("{STAR}{blocks}")
}

#[test]
fn synchronous_star_flips_with_period_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "star.net", STAR);
    let o = run(&["simulate", s(&f), "--steps", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "t=0 100000000\nt=1 011111111\nt=2 100000000\n");
}

#[test]
fn all_zero_network_is_a_fixed_point() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "zero.net", "nodes 3\nedge 0 1\nedge 1 2\n");
    let o = run(&["simulate", s(&f), "--until-cycle"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("cycle transient=0 period=1\n"), "{}", stdout(&o));
}

#[test]
fn clock_runs_two_full_periods_into_a_trace_file() {
    let dir = TempDir::new().unwrap();
    let net = dir.path().join("clock.net");
    assert!(run(&["compile", "clock", "--out", s(&net)]).status.success());
    assert!(fs::read_to_string(&net).unwrap().starts_with("nodes 12\n"));
    let trace = dir.path().join("clock.trace");
    let o = run(&["simulate", s(&net), "--steps", "6", "--trace", s(&trace)]);
    assert!(o.status.success());
    let lines: Vec<String> = fs::read_to_string(&trace).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.len(), 7);
    let bits = |l: &str| l.split_once(' ').unwrap().1.to_string();
    for t in 0..=3 {
        assert_eq!(bits(&lines[t]), bits(&lines[t + 3]));
    }
    assert_ne!(bits(&lines[0]), bits(&lines[1]));
}

#[test]
fn star_predictions_follow_the_update_order() {
    let dir = TempDir::new().unwrap();
    let leaves_first: String = (1..9).map(|v| format!("block {v} {v}\n")).collect::<String>() + "block 0 9\n";
    let seq = write(&dir, "seq.net", &star_with_blocks(&leaves_first));
    assert_eq!(stdout(&run(&["predict", s(&seq)])), "YES t=1\n");

    let center_first: String = (1..9).map(|v| format!("block {v} 2\n")).collect();
    let two = write(&dir, "two.net", &star_with_blocks(&center_first));
    let o = run(&["predict", s(&two)]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("NO "), "{}", stdout(&o));

    let zero = write(&dir, "zero.net", "nodes 3\nedge 0 1\nedge 1 2\ntarget 2\n");
    assert_eq!(stdout(&run(&["predict", s(&zero)])), "NO transient=0 period=1\n");
}

#[test]
fn conditional_prediction_reports_its_completion() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "path.net", "nodes 3\nedge 0 1\nedge 1 2\ntarget 1\n");
    let o = run(&["predict", s(&f), "--mode", "conditional", "--free", "0,2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "YES t=1\ncompletion 101\n");
}

#[test]
fn bseq_on_the_identity_answers_no() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "id.circ", IDENTITY);
    let net = dir.path().join("id.net");
    let wit = dir.path().join("id.wit");
    let o = run(&["compile", "bseq", s(&c), "--input", "10", "--target", "1", "--out", s(&net), "--witness", s(&wit)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&run(&["predict", s(&net)])).starts_with("NO "));
    let v = run(&["verify", s(&wit), s(&c), s(&net), "--samples", "4"]);
    assert!(v.status.success(), "{}", stdout(&v));
}

#[test]
fn portion_third_on_a_four_regular_graph_needs_two_clique_neighbors() {
    let dir = TempDir::new().unwrap();
    let mut k5 = String::from("nodes 5\n");
    for u in 0..5 {
        for v in u + 1..5 {
            k5.push_str(&format!("edge {u} {v}\n"));
        }
    }
    let f = write(&dir, "k5.net", &k5);
    let wit = dir.path().join("p.wit");
    let out = dir.path().join("p.net");
    let o = run(&["compile", "portion", s(&f), "-p", "1/3", "--out", s(&out), "--witness", s(&wit)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(fs::read_to_string(&wit).unwrap().contains("max_clique_neighbors 2\n"));
    // 5 originals plus a clique of max(2, 3 + 1) = 4 per vertex
    assert!(fs::read_to_string(&out).unwrap().starts_with("nodes 25\n"));
    let v = run(&["verify", s(&wit), s(&f), s(&out)]);
    assert!(v.status.success(), "{}", stdout(&v));
}

#[test]
fn verify_passes_on_the_clock_and_fails_with_code_4_on_a_bad_witness() {
    let dir = TempDir::new().unwrap();
    let net = dir.path().join("clock.net");
    let wit = dir.path().join("clock.wit");
    assert!(run(&["compile", "clock", "--out", s(&net), "--witness", s(&wit)]).status.success());
    let o = run(&["verify", s(&wit), "-", s(&net), "--steps", "100"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("sample 0 pass"));

    let text = fs::read_to_string(&wit).unwrap();
    let (head, tail) = text.split_once("[observe]\n").unwrap();
    let mut rows: Vec<&str> = tail.lines().collect();
    // give the first two observed vertices each other's labels
    let (a, b) = (rows[0].split_once(' ').unwrap(), rows[1].split_once(' ').unwrap());
    let swapped = [format!("{} {}", a.0, b.1), format!("{} {}", b.0, a.1)];
    rows[0] = &swapped[0];
    rows[1] = &swapped[1];
    let bad = write(&dir, "bad.wit", &format!("{head}[observe]\n{}\n", rows.join("\n")));
    let o = run(&["verify", s(&bad), "-", s(&net)]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("diverges at t="), "{}", stderr(&o));
}

#[test]
fn missing_file_exits_with_code_1() {
    let o = run(&["simulate", "/nonexistent/x.net", "--steps", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_with_code_2_and_name_the_line() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.net", "nodes 2\nedge 0 1\nedge 1 0\n");
    let o = run(&["simulate", s(&f), "--steps", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.net:3:"), "{}", stderr(&o));
}

#[test]
fn invalid_instances_exit_with_code_2() {
    let dir = TempDir::new().unwrap();
    // the target starts active
    let f = write(&dir, "on.net", "nodes 2\nedge 0 1\ninit 1 1\ntarget 1\n");
    assert_eq!(run(&["predict", s(&f)]).status.code(), Some(2));
    let g = write(&dir, "notarget.net", "nodes 2\nedge 0 1\n");
    assert_eq!(run(&["predict", s(&g)]).status.code(), Some(2));
    assert_eq!(run(&["simulate"]).status.code(), Some(2));
}

#[test]
fn budget_overrun_exits_with_code_3() {
    let dir = TempDir::new().unwrap();
    let net = dir.path().join("clock.net");
    assert!(run(&["compile", "clock", "--out", s(&net)]).status.success());
    let o = run(&["simulate", s(&net), "--until-cycle", "--max-configs", "2"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn compiled_files_round_trip_through_the_parsers() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "star.net", STAR);
    for (kind, extra) in [("eventual", ["--vertex", "1"]), ("full", ["--vertex", "1"])] {
        let out = dir.path().join(format!("{kind}.net"));
        let wit = dir.path().join(format!("{kind}.wit"));
        let o = run(&["compile", kind, s(&f), extra[0], extra[1], "--out", s(&out), "--witness", s(&wit)]);
        assert!(o.status.success(), "{kind}: {}", stderr(&o));
        let text = fs::read_to_string(&out).unwrap();
        let again = majnet::formats::write_network(&majnet::formats::parse_network(&text).unwrap());
        assert_eq!(again, text);
        let v = run(&["verify", s(&wit), s(&f), s(&out), "--samples", "8"]);
        assert!(v.status.success(), "{kind}: {}", stdout(&v));
    }
}

#[test]
fn circuit_compilers_verify() {
    let dir = TempDir::new().unwrap();
    let swap = write(
        &dir,
        "swap.circ",
        "inputs 2\ngate 0 INPUT\ngate 1 INPUT\ngate 2 NOT 0\ngate 3 NOT 1\ngate 4 AND 2 3\ngate 5 OR 0 1\noutput 0 4\noutput 1 5\n",
    );
    let mono = dir.path().join("mono.circ");
    let mono_w = dir.path().join("mono.wit");
    assert!(run(&["compile", "monotone", s(&swap), "--out", s(&mono), "--witness", s(&mono_w)]).status.success());
    assert!(run(&["verify", s(&mono_w), s(&swap), s(&mono)]).status.success());
    for kind in ["flatten", "gates"] {
        let out = dir.path().join(kind);
        let wit = dir.path().join(format!("{kind}.wit"));
        let o = run(&["compile", kind, s(&mono), "--out", s(&out), "--witness", s(&wit)]);
        assert!(o.status.success(), "{kind}: {}", stderr(&o));
        let v = run(&["verify", s(&wit), s(&mono), s(&out)]);
        assert!(v.status.success(), "{kind}: {}", stdout(&v));
    }
}

#[test]
fn machine_compiles_and_verifies() {
    let dir = TempDir::new().unwrap();
    let tm = write(
        &dir,
        "flip.tm",
        "states 2\nsymbols _ a b\ninput a b\nblank _\nstart 0\naccept 1\n\
         delta 0 a 0 b R\ndelta 0 b 0 a R\ndelta 0 _ 1 _ S\nword a b\n",
    );
    let out = dir.path().join("flip.circ");
    let wit = dir.path().join("flip.wit");
    let o = run(&["compile", "tm", s(&tm), "--input", "a,b,a", "-K", "2", "--out", s(&out), "--witness", s(&wit)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(fs::read_to_string(&wit).unwrap().contains("cells 6\n"));
    let v = run(&["verify", s(&wit), s(&tm), s(&out), "--steps", "20"]);
    assert!(v.status.success(), "{}", stdout(&v));
}

#[test]
fn amplify_and_clocked_compilers_verify() {
    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "pair.net", "nodes 2\nedge 0 1\nblock 1 2\ninit 0 1\n");
    let out = dir.path().join("amp.net");
    let wit = dir.path().join("amp.wit");
    assert!(run(&["compile", "amplify", s(&pair), "-k", "2", "--out", s(&out), "--witness", s(&wit)]).status.success());
    assert!(fs::read_to_string(&out).unwrap().starts_with("nodes 10\n"));
    assert!(run(&["verify", s(&wit), s(&pair), s(&out)]).status.success());

    let clocked = write(&dir, "clocked.net", "nodes 3\nedge 0 1\nedge 1 2\nblock 1 2\nblock 2 3\nclock 1 U01\n");
    let out = dir.path().join("plain.net");
    let wit = dir.path().join("plain.wit");
    let o = run(&["compile", "clocked", s(&clocked), "--out", s(&out), "--witness", s(&wit)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = run(&["verify", s(&wit), s(&clocked), s(&out)]);
    assert!(v.status.success(), "{}", stdout(&v));
}
