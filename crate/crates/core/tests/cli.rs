use std::io::Write;
use std::process::{Command, Output};

fn hydra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hydra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn member_reports_the_obstruction() {
    let o = hydra(&[
        "member",
        "--group",
        "hydra2",
        "--subgroup",
        "r=1,0",
        "[t^-1,a2^-2 t^-1 a2^2]",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("1/2 not integral"), "{}", stdout(&o));
}

#[test]
fn member_and_express() {
    let o = hydra(&["member", "(a1 t)^2 (a2 t)^-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Member: h1^2 h2^-1\n");
    let o = hydra(&["express", "(a1 t)^2 (a2 t)^-1"]);
    assert_eq!(stdout(&o), "h1^2 h2^-1\n");
    let o = hydra(&["express", "a1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn hnn_and_amalgam() {
    let o = hydra(&["hnn-decide", "--group", "hydra2", "[p, a1 t]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Trivial\n");
    let o = hydra(&["hnn-decide", "--order", "rtl", "[p, a1]"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NonTrivial\n");
    let o = hydra(&["amalgam-decide", "(a1 t) (~a1 ~t)^-1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn normalize_equal_pieces() {
    assert_eq!(stdout(&hydra(&["normalize", "t a2 a1"])), "(1, a2 a1)\n");
    let o = hydra(&["equal", "t a2 a1", "a2 t"]);
    assert_eq!(
        (o.status.code(), stdout(&o)),
        (Some(0), "true\n".to_string())
    );
    let o = hydra(&["equal", "t", "a1"]);
    assert_eq!(
        (o.status.code(), stdout(&o)),
        (Some(1), "false\n".to_string())
    );
    let o = hydra(&["pieces", "a1 a2^-1 a1^2 a2 a1^-1 a2 a1^2 a2^-2"]);
    assert_eq!(
        stdout(&o),
        "(a1 a2^-1)(a1^2)(a2 a1^-1)(a2 a1^2 a2^-1)(a2^-1)\n"
    );
}

#[test]
fn error_exit_codes() {
    let o = hydra(&["member", "a1 (t"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("byte"));
    assert!(stdout(&o).is_empty());
    assert_eq!(hydra(&["member", "a3"]).status.code(), Some(2));
    assert_eq!(
        hydra(&["--group", "hydra0", "normalize", "t"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hydra(&["--max-length", "50", "normalize", "t^-100 a2 t^100"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        hydra(&["scan-quotients", "a1", "--n-max", "7"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn undecided_exit_code() {
    let g = "(a1 t)^3 (a3 t)^-1";
    let o = hydra(&["--group", "hydra3", "--window", "0", "member", g]);
    assert_eq!(o.status.code(), Some(4), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("Undecided"));
    let o = hydra(&["--group", "hydra3", "member", g]);
    assert_eq!(stdout(&o), "Member: h1^3 h3^-1\n");
}

#[test]
fn scan_summary_block() {
    let o = hydra(&[
        "scan-quotients",
        "--subgroup",
        "r=1,0",
        "--n-max",
        "3",
        "[t^-1,a2^-2 t^-1 a2^2]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "degree=1 homs=1 separating=0\ndegree=2 homs=4 separating=0\ndegree=3 homs=24 separating=0\n"
    );
    let o = hydra(&["scan-quotients", "--n-max", "3", "a1"]);
    let out = stdout(&o);
    assert!(out.contains("membership: NonMember"), "{out}");
    assert!(out.lines().any(|l| l.starts_with("separating degree=")));
}

#[test]
fn verify_paper_passes() {
    let o = hydra(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("passed=13 total=13\n"));
    let o = hydra(&["verify-paper", "--filter", "phi"]);
    assert_eq!(
        stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(),
        5
    );
}

#[test]
fn spec_files() {
    let dir = std::env::temp_dir().join(format!("hydra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.toml");
    let canonical = "k = 2\nw2 = \"a1^2\"\nr = [1, 1]\n";
    std::fs::File::create(&path)
        .unwrap()
        .write_all(canonical.as_bytes())
        .unwrap();
    let p = path.to_str().unwrap();

    let o = hydra(&["spec-validate", p]);
    assert_eq!(
        (o.status.code(), stdout(&o)),
        (Some(0), canonical.to_string())
    );

    let o = hydra(&["--group", p, "member", "a2 t a1 t"]);
    assert_eq!(stdout(&o), "Member: h2 h1\n");

    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "k = 2\nw2 = \"a2\"\n").unwrap();
    assert_eq!(
        hydra(&["spec-validate", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let a = hydra(&["oracle-dump", "--bound", "3"]);
    let b = hydra(&["oracle-dump", "--bound", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 1 + 4 + 12 + 36);
    let d = hydra(&["distortion-table", "--bound", "3"]);
    assert_eq!(stdout(&d), "length count min_ambient max_ambient compressed\n0 1 0 0 0\n1 4 2 3 0\n2 12 2 7 0\n3 36 3 12 0\n");
}
