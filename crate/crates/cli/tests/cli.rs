use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use teamsem::model::{StructureFile, TeamFile};

fn teamsem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teamsem"))
        .args(args)
        .env_remove("TEAMSEM_LIMITS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

struct Files(tempfile::TempDir);

impl Files {
    fn new() -> Files {
        let dir = tempfile::tempdir().unwrap();
        let files = [
            ("m2.json", r#"{"domain":["0","1"]}"#),
            (
                "fig1.json",
                r#"{"domain":["0","1","2"],"relations":{"R":{"arity":2,"tuples":[["0","0"],["0","1"],["0","2"],["1","1"],["1","2"]]}}}"#,
            ),
            (
                "fds.json",
                r#"{"universe":["x","y","z"],"fds":[{"lhs":["x"],"rhs":["y"]},{"lhs":["y"],"rhs":["z"]}]}"#,
            ),
            ("mvd_xyz.json", r#"{"universe":["x","y","z"],"mvds":[{"lhs":["x"],"rhs":["y","z"]}]}"#),
            ("mvd_xy.json", r#"{"universe":["x","y","z"],"mvds":[{"lhs":["x"],"rhs":["y"]}]}"#),
            ("diag.json", r#"{"vars":["x","y"],"rows":[["0","0"],["1","1"]]}"#),
            ("square.json", r#"{"vars":["x","y"],"rows":[["0","0"],["0","1"],["1","0"],["1","1"]]}"#),
        ];
        for (name, text) in files {
            fs::write(dir.path().join(name), text).unwrap();
        }
        Files(dir)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn arg(&self, name: &str) -> String {
        path_str(&self.path(name))
    }
}

fn path_str(p: &Path) -> String {
    p.to_str().unwrap().to_string()
}

#[test]
fn signaling_and_figure1_sentences_fail() {
    let f = Files::new();
    let out = teamsem(&["eval", &f.arg("m2.json"), "--unit-team", "forall x exists y/(x) x=y"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).trim(), "not satisfied");
    let out = teamsem(&["eval", &f.arg("m2.json"), "--unit-team", "forall x exists z exists y/(x) x=y"]);
    assert_eq!(code(&out), 0);
    let out = teamsem(&["eval", &f.arg("fig1.json"), "--unit-team", "Q[exists_eq_1] x exists y/(x) R(x,y)"]);
    assert_eq!(code(&out), 1);
    let out = teamsem(&[
        "eval",
        &f.arg("fig1.json"),
        "--unit-team",
        "--define",
        "s=sher(exists_eq_1,exists)",
        "Q[s] x y R(x,y)",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn empty_team_satisfies_everything() {
    let f = Files::new();
    for phi in ["R(x,y) & !R(x,y)", "!dep(;x)", "forall z exists w/(z) (w=z & !w=z)", "!x=x"] {
        let out = teamsem(&["eval", &f.arg("fig1.json"), "--empty-team", phi]);
        assert_eq!(code(&out), 0, "{phi}");
    }
}

#[test]
fn empty_and_unit_teams_differ() {
    let f = Files::new();
    let phi = "forall y !dep(;y)";
    assert_eq!(code(&teamsem(&["eval", &f.arg("m2.json"), "--empty-team", phi])), 0);
    assert_eq!(code(&teamsem(&["eval", &f.arg("m2.json"), "--unit-team", phi])), 1);
}

#[test]
fn team_files_and_json_round_trip() {
    let f = Files::new();
    let out = teamsem(&["--json", "eval", &f.arg("fig1.json"), "--team", &f.arg("diag.json"), "!R(x,y)"]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], false);
    let team: TeamFile = serde_json::from_value(report["team"].clone()).unwrap();
    let original = TeamFile::from_json(&fs::read_to_string(f.path("diag.json")).unwrap()).unwrap();
    let m = StructureFile::from_json(&fs::read_to_string(f.path("fig1.json")).unwrap()).unwrap().build().unwrap();
    assert_eq!(team.build(&m).unwrap(), original.build(&m).unwrap());
}

#[test]
fn witnesses_are_printed() {
    let f = Files::new();
    let out = teamsem(&["eval", &f.arg("fig1.json"), "--unit-team", "--witness", "exists y Q[exists_eq_1] x/(y) R(x,y)"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("witness:"));
    assert!(stdout(&out).contains("ε ↦ {0}"), "{}", stdout(&out));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let f = Files::new();
    let out = teamsem(&["eval", &f.arg("m2.json"), "--unit-team", "exists y (x=y"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position"), "{err}");
    assert!(err.contains('^'), "{err}");
    assert_eq!(code(&teamsem(&["eval", &f.arg("m2.json"), "x=x"])), 2);
    assert_eq!(code(&teamsem(&["eval", &f.arg("missing.json"), "--unit-team", "x=x"])), 2);
}

#[test]
fn inference_commands() {
    let f = Files::new();
    let out = teamsem(&["imply", &f.arg("fds.json"), "x -> z", "--method", "armstrong", "--trace"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("[transitivity"));
    assert_eq!(code(&teamsem(&["imply", &f.arg("fds.json"), "z -> x", "--method", "armstrong"])), 1);
    assert_eq!(code(&teamsem(&["imply", &f.arg("mvd_xy.json"), "x ->> z", "--method", "bfh"])), 0);
    assert_eq!(code(&teamsem(&["imply", &f.arg("mvd_xy.json"), "x ->> z", "--method", "armstrong"])), 2);
    assert_eq!(code(&teamsem(&["imply", &f.arg("mvd_xy.json"), "x ->> q", "--method", "bfh"])), 2);
}

#[test]
fn semantic_countermodel_is_a_team_file() {
    let f = Files::new();
    let out = teamsem(&["--json", "imply", &f.arg("mvd_xyz.json"), "x ->> y", "--method", "semantic"]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let team: TeamFile = serde_json::from_value(report["countermodel"].clone()).unwrap();
    let m = teamsem::model::Structure::with_size(2);
    let t = team.build(&m).unwrap();
    let mvd = |rhs: &[&str]| teamsem::deps::Mvd::new(&["x"], rhs, &["x", "y", "z"]).unwrap();
    assert!(teamsem::deps::team_satisfies_mvd(&t, &mvd(&["y", "z"])).unwrap());
    assert!(!teamsem::deps::team_satisfies_mvd(&t, &mvd(&["y"])).unwrap());
    let out = teamsem(&["imply", &f.arg("mvd_xy.json"), "x ->> z", "--method", "semantic"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("valid up to bounds"));
}

#[test]
fn semantic_values() {
    let f = Files::new();
    let out_path = f.path("value.json");
    let out = teamsem(&["semvalue", &f.arg("m2.json"), "dep(;x)", "--out", &path_str(&out_path)]);
    assert_eq!(code(&out), 0);
    let teams: Vec<TeamFile> = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(teams.len(), 3);
    let out = teamsem(&["--json", "semvalue", &f.arg("m2.json"), "x=x"]);
    let teams: Vec<TeamFile> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(teams.len(), 4);
    let big = teamsem(&["semvalue", &f.arg("fig1.json"), "R(x,y) | x=z"]);
    assert_eq!(code(&big), 3);
}

#[test]
fn limits_from_the_environment() {
    let f = Files::new();
    let out = Command::new(env!("CARGO_BIN_EXE_teamsem"))
        .args(["semvalue", &f.arg("m2.json"), "x=x"])
        .env("TEAMSEM_LIMITS", "max_semantic_value_cells=1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_teamsem"))
        .args(["semvalue", &f.arg("m2.json"), "x=x"])
        .env("TEAMSEM_LIMITS", "bogus=1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert_eq!(code(&teamsem(&["eval", &f.arg("fig1.json"), "--unit-team", "--max-domain", "2", "x=x"])), 3);
}

#[test]
fn builtin_suite() {
    let all = teamsem(&["paper-suite"]);
    assert_eq!(code(&all), 0);
    assert_eq!(stdout(&all), stdout(&teamsem(&["paper-suite"])));
    let fig1 = teamsem(&["paper-suite", "--filter", "fig1"]);
    assert_eq!(code(&fig1), 0);
    let lines: Vec<String> = stdout(&fig1).lines().map(String::from).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[..3].iter().all(|l| l.starts_with("PASS [fig1]")));
    assert_eq!(lines[3], "3 of 3 checks passed");
    let mvd = teamsem(&["paper-suite", "--filter", "mvd"]);
    let text = stdout(&mvd);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).all(|l| l.starts_with("PASS [mvd]")));
    assert_eq!(code(&teamsem(&["paper-suite", "--filter", "nothing"])), 2);
    let json: serde_json::Value = serde_json::from_str(&stdout(&teamsem(&["--json", "paper-suite"]))).unwrap();
    assert_eq!(json["passed"], json["total"]);
}

#[test]
fn quantifier_tables_round_trip() {
    let f = Files::new();
    let out = teamsem(&["--json", "quant", "show", "exists_geq_2", "--size", "3"]);
    assert_eq!(code(&out), 0);
    let mut table: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(table["sets"].as_array().unwrap().len(), 4);
    table["name"] = "mine".into();
    let path = f.path("mine.json");
    fs::write(&path, table.to_string()).unwrap();
    let three = r#"{"domain":["0","1","2"],"relations":{"P":{"arity":1,"tuples":[["0"],["2"]]}}}"#;
    fs::write(f.path("p3.json"), three).unwrap();
    let q = path_str(&path);
    let eval = |phi: &str| code(&teamsem(&["eval", &f.arg("p3.json"), "--unit-team", "--quantifier", &q, phi]));
    assert_eq!(eval("Q[mine] x P(x)"), 0);
    assert_eq!(eval("Q[mine] x !P(x)"), 1);
    let sher = teamsem(&["--json", "quant", "sher", "exists_eq_1", "exists", "--size", "2"]);
    let table: serde_json::Value = serde_json::from_str(&stdout(&sher)).unwrap();
    assert_eq!(table["arity"], 2);
    assert_eq!(code(&teamsem(&["quant", "branch", "exists_eq_1", "exists", "--size", "2"])), 2);
    assert_eq!(code(&teamsem(&["quant", "product", "exists", "forall", "--size", "2"])), 0);
}

#[test]
fn sher_search_reports_without_failing() {
    let out = teamsem(&["quant", "sher-search", "--quantifiers", "exists,exists_eq_1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("cases checked"));
}

#[test]
fn join_check() {
    let f = Files::new();
    let out = teamsem(&["join-check", &f.arg("diag.json"), "--rhs", "x"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("not lossless"));
    assert_eq!(code(&teamsem(&["join-check", &f.arg("square.json"), "--rhs", "x"])), 0);
    assert_eq!(code(&teamsem(&["join-check", &f.arg("diag.json"), "--lhs", "x", "--rhs", "y"])), 0);
    assert_eq!(code(&teamsem(&["join-check", &f.arg("diag.json"), "--rhs", "w"])), 2);
}
