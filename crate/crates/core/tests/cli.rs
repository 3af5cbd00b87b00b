use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value as Json;

use tandem::ltss::LtssResult;
use tandem::oracle::validate_tandem;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn tandem(args: &[&str], stdin: &[u8]) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tandem"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn positions(json: &Json) -> Vec<usize> {
    json.as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap() as usize)
        .collect()
}

fn result_from_json(json: &Json) -> LtssResult {
    LtssResult {
        length: json["length"].as_u64().unwrap() as usize,
        split: json["split"].as_u64().unwrap() as usize,
        witness: json["witness"].as_str().unwrap().as_bytes().to_vec(),
        first_occurrence: positions(&json["occ1"]),
        second_occurrence: positions(&json["occ2"]),
    }
}

#[test]
fn json_output_round_trips() {
    for f in ["AGCGAACGGGTA", "ABABABBA", "A", "GATTACAGATTACA"] {
        let run = tandem(&["--format", "json", "ltss"], format!("{f}\n").as_bytes());
        assert_eq!(run.code, 0, "{}", run.stderr);
        let json: Json = serde_json::from_str(&run.stdout).unwrap();
        assert!(
            validate_tandem(f.as_bytes(), &result_from_json(&json)),
            "{f}"
        );
        for key in ["matches", "lambdaMax", "extractMins", "transfers"] {
            assert!(json["stats"].get(key).is_some(), "missing stats.{key}");
        }
    }
}

#[test]
fn text_report_of_the_running_example() {
    let run = tandem(&["ltss"], b"AGCGAACGGGTA\n");
    assert_eq!(run.code, 0);
    let lines: Vec<&str> = run.stdout.lines().collect();
    assert_eq!(&lines[..2], ["length=4", "split=5"]);
    assert!(lines[2].starts_with("witness="));
    assert!(lines[3].starts_with("occ1=") && lines[4].starts_with("occ2="));
}

#[test]
fn enumerated_witnesses_are_all_valid() {
    let run = tandem(
        &["--format", "json", "--enumerate", "50", "ltss"],
        b"AGCGAACGGGTA",
    );
    let json: Json = serde_json::from_str(&run.stdout).unwrap();
    let all = json["witnesses"].as_array().unwrap();
    assert!(!all.is_empty());
    for w in all {
        let r = LtssResult {
            length: 4,
            split: 5,
            witness: w["witness"].as_str().unwrap().as_bytes().to_vec(),
            first_occurrence: positions(&w["occ1"]),
            second_occurrence: positions(&w["occ2"]),
        };
        assert!(validate_tandem(b"AGCGAACGGGTA", &r));
    }
    assert!(all.iter().any(|w| w["witness"] == "ACGA"
        && positions(&w["occ1"]) == [1, 3, 4, 5]
        && positions(&w["occ2"]) == [6, 7, 8, 12]));
}

#[test]
fn fasta_and_file_input() {
    let run = tandem(&["--length-only", "ltss"], b">seq1\nAGCG\nAACGGGTA\n");
    assert_eq!((run.code, run.stdout.as_str()), (0, "4\n"));

    let dir = std::env::temp_dir().join(format!("tandem-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("input.txt");
    std::fs::write(&path, "AGCGAACGGGTA\n").unwrap();
    let run = tandem(&["--length-only", "ltss", path.to_str().unwrap()], b"");
    assert_eq!((run.code, run.stdout.as_str()), (0, "4\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_agrees_with_the_oracle() {
    assert_eq!(tandem(&["--verify", "ltss"], b"AGCGAACGGGTA").code, 0);
    assert_eq!(
        tandem(&["--verify", "lcss", "AGCG", "AACGGGTA"], b"").code,
        0
    );
    assert_eq!(
        tandem(
            &["--verify", "lis", "8", "2", "1", "6", "5", "4", "3", "6", "5", "4"],
            b""
        )
        .code,
        0
    );
}

#[test]
fn input_errors_exit_with_status_2() {
    let cases: [(&[&str], &[u8]); 5] = [
        (&["ltss"], b"AG CG\n"),
        (&["ltss"], b">only header\n"),
        (&["ltss"], b">a\nAC\n>b\nGT\n"),
        (&["lis", "3", "-1"], b""),
        (&["ltss", "/nonexistent/tandem/input"], b""),
    ];
    for (args, stdin) in cases {
        let run = tandem(args, stdin);
        assert_eq!(run.code, 2, "{args:?}");
        assert!(run.stdout.is_empty());
        assert!(run.stderr.starts_with("error:"), "{}", run.stderr);
    }
}
