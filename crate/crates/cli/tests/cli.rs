use std::io::Write;
use std::process::{Command, Output, Stdio};

fn linkset(args: &[&str], dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkset"))
        .args(args)
        .current_dir(dir)
        .env_remove("LINKSET_LEXICON")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn run_fixtures_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = linkset(&["run", "--task", "1", "--fixtures"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("strict 100.00%"), "{}", stdout(&o));
    let csv = std::fs::read_to_string(dir.path().join("task1.csv")).unwrap();
    assert_eq!(csv, "story_id,input,expected,answer,status\n1,\"Where is Mary?\",office,office,passed\n");

    let o = linkset(&["score", "task1.csv"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("1 questions: 1 passed"));
}

#[test]
fn threshold_sets_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let o = linkset(&["run", "--task", "5", "--fixtures", "--min-accuracy", "1.0"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = linkset(&["run", "--task", "5", "--fixtures", "--min-accuracy", "0.8"], dir.path());
    assert!(o.status.success());
}

#[test]
fn data_directory_runs_each_split() {
    let dir = tempfile::tempdir().unwrap();
    let story = "1 Mary went to the kitchen.\n2 Where is Mary?\tkitchen\t1\n";
    std::fs::write(dir.path().join("qa1_single-supporting-fact_train.txt"), story).unwrap();
    std::fs::write(dir.path().join("qa1_single-supporting-fact_test.txt"), story).unwrap();
    let o = linkset(&["run", "--task", "1", "--data", ".", "--out", "r.csv"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("task 1 (train)") && text.contains("task 1 (test)"), "{text}");
    assert!(dir.path().join("r_train.csv").exists());
    assert!(dir.path().join("r_test.csv").exists());
}

#[test]
fn run_needs_data_or_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let o = linkset(&["run", "--task", "1"], dir.path());
    assert!(!o.status.success());
}

#[test]
fn generate_english_and_french() {
    let dir = tempfile::tempdir().unwrap();
    let o = linkset(&["generate", "--pred", "speak", "--ops", "future,negative,passive,perfect,progressive"], dir.path());
    assert_eq!(stdout(&o), "won't have been being spoken\n");
    let o = linkset(&["generate", "--lang", "fr", "--pred", "parler", "--ops", "future,1"], dir.path());
    assert_eq!(stdout(&o), "parlerai\n");
    let o = linkset(&["generate", "--lang", "fr", "--pred", "parler", "--ops", "past"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn repl_answers_in_sentences() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_linkset"))
        .arg("repl")
        .env_remove("LINKSET_LEXICON")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"Mary went to the kitchen.\nWhere is Mary?\nMary zorbled.\n")
        .unwrap();
    let out = stdout(&child.wait_with_output().unwrap());
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "In the kitchen.");
    assert!(lines[1].starts_with("error: unknown word `zorbled`"));
}

#[test]
fn lexicon_check_lists_missing_words() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("t.txt"), "1 Mary zorbled to the kitchen.\n2 Where is Mary?\tkitchen\t1\n").unwrap();
    let o = linkset(&["lexicon-check", "--task", "1", "--data", "t.txt"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l == "zorbled"));
    let o = linkset(&["lexicon-check", "--task", "5", "--fixtures"], dir.path());
    assert!(o.status.success());
}

#[test]
fn lexicon_override_is_used() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.lex"), "sense a referent {noun} \"x\"\n").unwrap();
    let o = linkset(&["--lexicon", "bad.lex", "generate", "--pred", "speak"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}
