use std::io::Write;

use assert_cmd::Command;

fn bin() -> Command {
    Command::cargo_bin("lcpindex").unwrap()
}

fn file_with(bytes: &[u8]) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(bytes).unwrap();
    f
}

fn stream(script: &str, extra: &[&str]) -> String {
    let out = bin().args(extra).arg("stream").write_stdin(script).output().unwrap();
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn index_banana() {
    let f = file_with(b"banana");
    bin()
        .arg("index")
        .arg(f.path())
        .args(["-q", "ana", "-q", "nan", "-q", "x"])
        .assert()
        .success()
        .stdout("2 1 3\n1 2\n0\n");
}

#[test]
fn index_empty_file() {
    let f = file_with(b"");
    bin().arg("index").arg(f.path()).args(["-q", "a"]).assert().success().stdout("0\n");
}

#[test]
fn index_verify_and_bound() {
    let bytes: Vec<u8> = (0..1024u32).map(|i| b"abc"[(i * i % 7 % 3) as usize]).collect();
    let f = file_with(&bytes);
    bin().args(["--verify", "index"]).arg(f.path()).assert().success();
    bin()
        .args(["--verify", "--verify-limit", "100", "index"])
        .arg(f.path())
        .assert()
        .failure();
}

#[test]
fn sort_banana() {
    let f = file_with(b"banana");
    bin()
        .args(["--verify", "sort"])
        .arg(f.path())
        .assert()
        .success()
        .stdout("6 5 3 1 0 4 2\n0 1 3 0 0 2\n");
}

#[test]
fn stream_examples() {
    assert_eq!(stream("P a\nP b\nQ b\n", &[]), "1 0\n");
    assert_eq!(stream("P a\nD\nA\n", &[]), "0\n");
    assert_eq!(stream("D\n", &[]), "ERR underflow\n");
    assert_eq!(stream("P a\nP n\nP a\nP n\nP a\nP b\nA\nL\nV\n", &[]), "6 5 3 1 0 4 2\n0 1 3 0 0 2\nOK\n");
    assert!(stream("X\n", &[]).starts_with("ERR"));
    assert_eq!(stream("P 7\nP 300000\nQ 300000 7\n", &["--tokens"]), "1 0\n");
}

#[test]
fn stream_is_deterministic() {
    let mut script = String::new();
    for i in 0..300u32 {
        if i % 7 == 3 {
            script.push_str("D\n");
        } else {
            script.push_str(&format!("P {}\n", (b'a' + (i * 31 % 3) as u8) as char));
        }
        if i % 50 == 0 {
            script.push_str("Q ab\nS\n");
        }
    }
    script.push_str("A\nL\nV\nS\n");
    let a = stream(&script, &["--verify"]);
    assert_eq!(a, stream(&script, &["--verify"]));
    assert!(!a.contains("ERR"));
}

#[test]
fn rejects_small_branching() {
    bin().args(["--bucket-b", "4", "stream"]).write_stdin("").assert().failure();
    assert_eq!(stream("P a\nA\n", &["--bucket-b", "5"]), "1 0\n");
}

#[test]
fn bench_report_is_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let stats = dir.path().join("stats.json");
    let out = bin()
        .args(["--stats"])
        .arg(&stats)
        .args(["bench", "--workload", "random,ab", "--log-sizes", "10,8"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    for pair in lines.chunks(2) {
        assert!(pair[0]["n"].as_u64() < pair[1]["n"].as_u64());
        for r in pair {
            let s = &r["stats"]["steps"];
            assert!(s["p999"].as_u64().unwrap() > 0);
            assert!(s["total"].as_u64() >= s["max"].as_u64());
        }
    }
    let file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(stats).unwrap()).unwrap();
    assert_eq!(file.as_array().unwrap().len(), 4);
}
