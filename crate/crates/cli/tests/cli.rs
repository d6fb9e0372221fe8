use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cubeknot::format::{parse_file, serialize_cube, serialize_grid, Diagram};
use cubeknot::fixtures;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubeknot"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env("CUBEKNOT_THREADS", "1").output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn homology_of_unknot_cube() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "u2.cube", &serialize_cube(&fixtures::u2()));
    let o = run(&["homology", f.to_str().unwrap(), "--axis", "y", "--variant", "tilde", "--normalize"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let body: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, ["M=0 A=0 dim=1", "M=-1 A=-1 dim=2", "M=-2 A=-2 dim=1"]);
    assert!(out.starts_with("# cube homology variant=tilde axis=y normalize=true hash="));
    assert_eq!(out, stdout(&run(&["homology", f.to_str().unwrap(), "--axis", "y", "--normalize"])));
}

#[test]
fn commute_writes_a_valid_cube() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "u2.cube", &serialize_cube(&fixtures::u2()));
    let out = dir.path().join("moved.cube");
    let o = run(&["move", f.to_str().unwrap(), "--commute", "x", "0", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(matches!(parse_file(&out).unwrap(), Diagram::Cube(c) if c.is_valid()));
    assert_eq!(run(&["validate", out.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn validate_names_the_crossing_condition() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixtures::surgery4_grid();
    let c = cubeknot::lifting::stack_cube(&g, &fixtures::SURGERY_LEVELS_YZ).unwrap();
    let f = write(dir.path(), "bad.cube", &serialize_cube(&c));
    let o = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("crossing condition: yz-projection"), "{}", stdout(&o));
}

#[test]
fn parse_errors_exit_one_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "x.cube", "cubeknot v2\n");
    let svg = dir.path().join("x.svg");
    let o = run(&["render", f.to_str().unwrap(), "-o", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!svg.exists());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn illegal_move_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "u2.cube", &serialize_cube(&fixtures::u2()));
    let o = run(&["move", f.to_str().unwrap(), "--commute", "x", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "t.grid", &serialize_grid(&fixtures::gt5_grid().reversed()));
    let o = run(&["lift", f.to_str().unwrap(), "--budget", "1", "--no-surgery"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn lift_project_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.grid", &serialize_grid(&fixtures::surgery4_grid()));
    let cube = dir.path().join("s.cube");
    let o = run(&["lift", f.to_str().unwrap(), "-o", cube.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&cube).unwrap().starts_with("# lift: size 4"));
    let o = run(&["project", cube.to_str().unwrap(), "--plane", "xy"]);
    assert_eq!(stdout(&o), serialize_grid(&fixtures::surgery4_grid()));
}

#[test]
fn grid_homology_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "gt5.grid", &serialize_grid(&fixtures::gt5_grid()));
    let o = run(&["gridhomology", f.to_str().unwrap(), "--normalize"]);
    let total: usize = stdout(&o)
        .lines()
        .filter_map(|l| l.rsplit_once("dim=").map(|(_, d)| d.parse::<usize>().unwrap()))
        .sum();
    assert_eq!(total, 48);
    let hat = stdout(&run(&["gridhomology", f.to_str().unwrap(), "--variant", "filtered-hat"]));
    assert!(hat.lines().skip(1).all(|l| l.contains("A=*")));
    let svg = stdout(&run(&["render", f.to_str().unwrap()]));
    assert!(svg.starts_with("<svg"));
    let u = write(dir.path(), "u2.cube", &serialize_cube(&fixtures::u2()));
    let svg = stdout(&run(&["render", u.to_str().unwrap(), "--plane", "yz"]));
    assert!(svg.contains("plane yz"));
}

#[test]
fn minus_homology_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "u2.cube", &serialize_cube(&fixtures::u2()));
    assert_eq!(run(&["homology", f.to_str().unwrap(), "--variant", "minus"]).status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("checks passed"));
}
