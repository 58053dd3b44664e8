use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surreal_cli::{reparse, Options, Session, Step, VERBS};

const GOLDEN_SCRIPT: &str = "tests/golden/session.txt";
const GOLDEN_OUTPUT: &str = "tests/golden/session.out";

fn surreal(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_surreal"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn golden_transcript_is_reproduced_byte_for_byte() {
    let first = surreal(&["--batch", GOLDEN_SCRIPT, "--echo"], None);
    let second = surreal(&["--batch", GOLDEN_SCRIPT, "--echo"], None);
    assert_eq!(first.stdout, second.stdout);
    let expected =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join(GOLDEN_OUTPUT)).unwrap();
    assert_eq!(stdout(&first), expected);
    // The script ends with deliberate errors.
    assert_eq!(first.status.code(), Some(1));
}

#[test]
fn golden_script_covers_every_verb() {
    let script =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join(GOLDEN_SCRIPT)).unwrap();
    let mut session = Session::new(Options::default());
    let mut verbs = Vec::new();
    for line in script.lines() {
        match session.execute(line) {
            Step::Record(r) => verbs.push(r.verb),
            Step::Skip => {}
            Step::Quit => {
                verbs.push("quit".to_string());
                break;
            }
        }
    }
    assert!(verbs.len() >= 40, "{} commands", verbs.len());
    for (verb, _) in VERBS {
        assert!(
            verbs.iter().any(|v| v == verb),
            "golden script never uses `{verb}`"
        );
    }
}

#[test]
fn valid_batch_exits_zero_with_one_record_per_command() {
    let o = surreal(
        &["--batch", "-", "--json"],
        Some("1 + 1\n# comment\n\n:sign 3/4\n:cmp w, 1\n"),
    );
    assert_eq!(o.status.code(), Some(0));
    let records = json_lines(&o);
    assert_eq!(records.len(), 3);
    assert_eq!(records[1]["verb"], "sign");
    assert_eq!(records[1]["value"], "+-+");
    for r in &records {
        assert_eq!(r["ok"], true);
        assert!(r["micros"].is_u64());
    }
}

#[test]
fn cut_violation_is_an_error_record_and_exit_one() {
    let o = surreal(&["--batch", "-", "--json"], Some("1\n{1 | 0}\n2\n"));
    assert_eq!(o.status.code(), Some(1));
    let records = json_lines(&o);
    assert_eq!(records.len(), 3);
    assert_eq!(records[1]["ok"], false);
    assert_eq!(records[1]["code"], "E102");
    assert!(records[1]["error"].as_str().unwrap().contains("{1 | 0}"));
    assert_eq!(records[2]["value"], "2");
}

#[test]
fn fail_fast_stops_at_the_first_error() {
    let o = surreal(&["--batch", "-", "--fail-fast"], Some("1\nz\n2\n"));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "1\nerror[E101]: unbound variable `z`\n");
}

#[test]
fn check_on_the_inverse_omega_spec_file_passes() {
    let o = surreal(
        &["--batch", "-", "--json"],
        Some(":check @fixtures/inverse_omega.spec\n:check @fixtures/integer_inverse_omega.spec\n"),
    );
    assert_eq!(o.status.code(), Some(0));
    let records = json_lines(&o);
    assert_eq!(records[0]["value"], "group initiality: pass");
    assert!(records[0]["witness"].is_null());
    assert_eq!(
        records[1]["witness"],
        "member w^(-1) has prefix 1/2 outside"
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(surreal(&["--bogus"], None).status.code(), Some(2));
    assert_eq!(
        surreal(&["--batch", "no/such/file"], None).status.code(),
        Some(2)
    );
    assert_eq!(surreal(&["--fuel", "0"], None).status.code(), Some(2));
    assert_eq!(
        surreal(&["--rank-bound", "99"], None).status.code(),
        Some(2)
    );
}

#[test]
fn flags_change_printing_and_budgets() {
    let o = surreal(&["--unicode"], Some("w^(w) + w\n:rank w\n"));
    assert_eq!(stdout(&o), "ω^(ω) + ω\nω\n");
    let o = surreal(
        &["--rank-bound", "3"],
        Some(":oracle 1/8, 1\n:oracle 1, 2\n"),
    );
    assert!(stdout(&o).starts_with("error[E105]"), "{}", stdout(&o));
    assert_eq!(o.status.code(), Some(1));
    let o = surreal(&[], Some(":quit\n1 +\n"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> String {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..4) {
            0 => "w".to_string(),
            1 => rng.gen_range(-9..10).to_string(),
            2 => format!("{}/{}", rng.gen_range(-9..10), 1 << rng.gen_range(0..4)),
            _ => format!("{}/{}", rng.gen_range(1..7), rng.gen_range(1..7)),
        };
    }
    let a = random_expr(rng, depth - 1);
    let b = random_expr(rng, depth - 1);
    match rng.gen_range(0..6) {
        0 => format!("{a} + {b}"),
        1 => format!("{a} - ({b})"),
        2 => format!("({a})*({b})"),
        3 => format!("w^({a})"),
        4 => format!("-({a})"),
        _ => format!("w^({})*({b})", rng.gen_range(-3..4)),
    }
}

#[test]
fn printed_values_reparse_to_the_same_number() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    let mut session = Session::new(Options::default());
    let mut checked = 0;
    for _ in 0..2000 {
        let e = random_expr(&mut rng, 3);
        let Step::Record(r) = session.execute(&e) else {
            panic!("{e}")
        };
        let Ok(reply) = r.result else { continue };
        let Step::Record(back) = session.execute(&format!(":cmp {}, {e}", reply.value)) else {
            panic!()
        };
        assert_eq!(
            back.result.unwrap().value,
            "=",
            "{e} printed as {}",
            reply.value
        );
        let x = reparse(&reply.value).unwrap();
        let Step::Record(again) = session.execute(&format!(":eval {}", reply.value)) else {
            panic!()
        };
        assert_eq!(again.result.unwrap().value, reply.value);
        assert_eq!(x.to_string(), reply.value);
        checked += 1;
    }
    assert!(checked > 1500, "{checked}");
}
