use std::process::{Command, Output};

fn hypderiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypderiv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_the_value_first() {
    let o = hypderiv(&["eval", "--upper", "1,1", "--lower", "2", "--z", "0.5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("value: 1.38629436111989"));
    assert!(out.contains("convergence: InsideUnitDisk"));
}

#[test]
fn eval_rejects_a_singular_lower_parameter() {
    let o = hypderiv(&["eval", "--upper", "0.5", "--lower", "-1", "--z", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("SingularLowerParameter"));
}

#[test]
fn eval_outside_the_disk_exits_3() {
    let o = hypderiv(&["eval", "--upper", "1,1", "--lower", "2", "--z", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn table1_is_csv_with_blank_cells() {
    let o = hypderiv(&["table1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(!out.contains('\r'));
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[1], "1,16.2802578209098,,16.2802578209098");
    assert_eq!(lines[5], "5,27.4105535888826,27.4105535888826,27.4105535888826");
    assert_eq!(lines[7], "7,41.6637846070299,41.6637846070299,");
}

#[test]
fn figure1_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("hypderiv-fig-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig.csv");
    let o =
        hypderiv(&["figure1", "--c-min", "1.5", "--c-max", "2.5", "--step", "0.5", "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines[0], "c,f_L,f_R1,f_R2,f_R1-f_R2");
    assert!(lines[2].starts_with("2,3.39340187542396,,3.39340187542396,"), "{}", lines[2]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn figure1_rejects_an_empty_range() {
    assert_eq!(hypderiv(&["figure1", "--c-min", "2", "--c-max", "1"]).status.code(), Some(2));
    assert_eq!(hypderiv(&["figure1", "--step", "-0.1"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(hypderiv(&["verify", "--identity", "Th1-2", "--trials", "50", "--seed", "0"]).status.code(), Some(0));
    assert_eq!(hypderiv(&["verify", "--identity", "nonsense"]).status.code(), Some(2));
    assert_eq!(hypderiv(&["verify", "--identity", "Th1-2", "--tol", "1e-300"]).status.code(), Some(1));
}

#[test]
fn verify_is_deterministic_across_runs_and_schedules() {
    let dir = std::env::temp_dir().join(format!("hypderiv-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.csv"), dir.join("b.csv"));
    let first = hypderiv(&["verify", "--identity", "all", "--trials", "5", "--csv", a.to_str().unwrap()]);
    let second =
        hypderiv(&["verify", "--identity", "all", "--trials", "5", "--sequential", "--csv", b.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn list_names_every_entry() {
    let out = stdout(&hypderiv(&["list"]));
    assert_eq!(out.lines().count(), 37);
    assert!(out.lines().any(|l| l.starts_with("Co2-6-exceptional")));
}

#[test]
fn dump_expr_prints_both_sides() {
    let o =
        hypderiv(&["dump-expr", "--identity", "Co2-5", "--n", "1", "--a", "1", "--b", "1", "--c", "2", "--z", "0.5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("# lhs"));
    assert!(out.contains("pfq 2 1 2 1 ; 3 z"), "{out}");
    // d/dz[-(1-z) ln(1-z) / z] = (ln(1-z) + z) / z^2
    let want = ((0.5f64).ln() + 0.5) / 0.25;
    let lhs: f64 = out.lines().find_map(|l| l.strip_prefix("lhs: ")).unwrap().parse().unwrap();
    let rhs: f64 = out.lines().find_map(|l| l.strip_prefix("rhs: ")).unwrap().parse().unwrap();
    assert!((lhs - want).abs() < 1e-13, "{lhs} vs {want}");
    assert!((rhs - want).abs() < 1e-13, "{rhs} vs {want}");
}
