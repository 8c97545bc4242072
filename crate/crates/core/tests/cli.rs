use std::io::{BufRead, BufReader, Write};
use std::process::{Command, Stdio};
use std::sync::mpsc;
use std::time::Duration;

const BIN: &str = env!("CARGO_BIN_EXE_tempomatch");
const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{GOLDEN}/{name}")).unwrap()
}

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn example_zone_block() {
    let word = format!("{GOLDEN}/example_word.txt");
    for algorithm in ["fjs", "brute"] {
        let (code, out, err) = run(
            &["-e", "(ab)%(0,2)", "-i", &word, "--algorithm", algorithm],
            "",
        );
        assert_eq!(code, 0, "{err}");
        assert_eq!(out, golden("example_zones.txt"));
    }
    let (code, out, _) = run(&["-e", "(ab)%(0,2)"], &golden("example_word.txt"));
    assert_eq!((code, out), (0, golden("example_zones.txt")));
}

#[test]
fn automaton_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ab.json");
    let ta =
        tempomatch::automata::compile_tre(&tempomatch::automata::parse_tre("(ab)%(0,2)").unwrap());
    std::fs::write(&path, tempomatch::automata::to_json(&ta)).unwrap();
    let (code, out, _) = run(&["-f", path.to_str().unwrap()], &golden("example_word.txt"));
    assert_eq!((code, out), (0, golden("example_zones.txt")));

    std::fs::write(&path, "{\"alphabet\": 3}").unwrap();
    assert_eq!(run(&["-f", path.to_str().unwrap()], "").0, 2);
    assert_eq!(run(&["-f", "/nonexistent/pattern.json"], "").0, 2);
}

#[test]
fn exit_codes() {
    let (code, out, _) = run(&["-e", "ab"], "");
    assert_eq!((code, out.as_str()), (0, ""));
    assert_eq!(run(&["-f", "pat.json", "-e", "ab"], "").0, 1);
    assert_eq!(run(&[], "").0, 1);
    assert_eq!(run(&["--no-such-flag"], "").0, 1);
    let (code, out, _) = run(&["--help"], "");
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
    let (code, _, err) = run(&["-e", "a|"], "");
    assert_eq!(code, 2);
    assert!(err.contains("position 3"), "{err}");
    let (code, _, err) = run(&["-e", "a"], "a 1\n\nb 0.5\n");
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
    let (code, _, err) = run(&["-e", "a"], "a 1\nb x\n");
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(run(&["-e", "a", "-i", "/nonexistent/log.txt"], "").0, 2);
    assert_eq!(run(&["generate", "--count", "0"], "").0, 1);
}

#[test]
fn quiet_stats_and_first_match() {
    let word = "a 1\na 2\na 3\n";
    let (code, out, err) = run(&["-e", "a", "-q", "--stats"], word);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let stats = err.lines().next().unwrap();
    let fields: Vec<&str> = stats
        .split(' ')
        .map(|f| f.split('=').next().unwrap())
        .collect();
    assert_eq!(
        fields,
        ["trials", "gate_skipped", "events", "zones", "time_ms"]
    );
    assert!(err.contains("zones=3\n"), "{err}");
    let (_, out, _) = run(&["-e", "a", "--quit-on-first-match"], word);
    assert_eq!(
        out,
        "0 <= t < 1\n1 < t' <= 2\n0 < t' - t <= 2\n=============================\n"
    );
}

#[test]
fn generator_golden_and_round_trip() {
    let (code, out, _) = run(&["generate", "--count", "6", "--seed", "7"], "");
    assert_eq!(code, 0);
    assert_eq!(out, golden("gear_6_seed7.txt"));
    let (_, long, _) = run(&["generate", "--count", "2000", "--seed", "7"], "");
    assert!(long.starts_with(&out));
    let w = tempomatch::word::read_word(long.as_bytes()).unwrap();
    assert_eq!(w.len(), 2000);
}

#[test]
fn algorithms_print_identical_output() {
    let (_, log, _) = run(&["generate", "--count", "3000", "--seed", "4"], "");
    let gear = tempomatch::cli::GEAR_TRE;
    let (_, fjs, _) = run(&["-e", gear], &log);
    let (_, brute, _) = run(&["-e", gear, "--algorithm", "brute"], &log);
    assert!(!fjs.is_empty());
    assert_eq!(fjs, brute);
}

#[test]
fn zones_appear_while_input_stalls() {
    let mut child = Command::new(BIN)
        .args(["-e", "(ab)%(0,2)"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut stdin = child.stdin.take().unwrap();
    let stdout = child.stdout.take().unwrap();
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        for line in BufReader::new(stdout).lines() {
            if tx.send(line.unwrap()).is_err() {
                break;
            }
        }
    });
    // the event at 1.7 closes the zone's end segment; the log then stalls
    stdin.write_all(b"a 0.5\nb 1.0\na 1.7\n").unwrap();
    stdin.flush().unwrap();
    let block: Vec<String> = (0..4)
        .map(|_| {
            rx.recv_timeout(Duration::from_secs(10))
                .expect("zone printed before end of input")
        })
        .collect();
    assert_eq!(block.join("\n") + "\n", golden("example_zones.txt"));
    stdin.write_all(b"b 4.0\n").unwrap();
    drop(stdin);
    assert!(child.wait().unwrap().success());
    assert!(rx.recv_timeout(Duration::from_secs(10)).is_err());
}
