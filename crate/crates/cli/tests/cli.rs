//! Black-box tests of the `chronotag` binary: exit codes, file outputs,
//! manifest contents and determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn chronotag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chronotag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(path: &Path, content: &str) {
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    fs::write(path, content).unwrap();
}

const EX2: &str = "before <TIMEX2 VAL=\"1999-W23\">the week of <TIMEX2 VAL=\"1999-06-07\">the seventh</TIMEX2> until <TIMEX2 VAL=\"1999-06-11\">the eleventh</TIMEX2> </TIMEX2>\n";

#[test]
fn convert_directory_of_valid_files_exits_zero() {
    let dir = TempDir::new().unwrap();
    let src = dir.path().join("src");
    write(&src.join("a.sgm"), "on <TIMEX2 VAL=\"1999-06-07\">Monday</TIMEX2>\n");
    write(&src.join("b.sgm"), "by <TIMEX2 VAL=\"2000\">next year</TIMEX2>\n");
    write(&src.join("c.sgm"), "at <TIMEX2 VAL=\"T09:30\">9:30 am</TIMEX2>\n");
    let out = dir.path().join("out");

    let result = chronotag(&["convert", "--out", out.to_str().unwrap(), src.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    for name in ["a.tml", "b.tml", "c.tml", "manifest.jsonl"] {
        assert!(out.join(name).is_file(), "missing {name}");
    }
}

#[test]
fn convert_nested_example_yields_three_timex3() {
    let dir = TempDir::new().unwrap();
    let src = dir.path().join("src");
    write(&src.join("ex2.sgm"), EX2);
    let out = dir.path().join("out");
    let result = chronotag(&["convert", "--out", out.to_str().unwrap(), src.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0));
    let tml = fs::read_to_string(out.join("ex2.tml")).unwrap();
    assert_eq!(tml.matches("<TIMEX3 ").count(), 3);
}

#[test]
fn convert_records_failures_and_exits_one() {
    let dir = TempDir::new().unwrap();
    let src = dir.path().join("src");
    write(&src.join("good.sgm"), "on <TIMEX2 VAL=\"1999\">Monday</TIMEX2>\n");
    write(&src.join("crossing.sgm"), "text </TIMEX2> more\n");
    let out = dir.path().join("out");
    let result = chronotag(&["convert", "--out", out.to_str().unwrap(), src.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(1));

    let manifest = fs::read_to_string(out.join("manifest.jsonl")).unwrap();
    let records = chronotag_cli::manifest::parse_jsonl(&manifest).unwrap();
    assert_eq!(records.len(), 2);
    let failed = records.iter().find(|r| r.input.ends_with("crossing.sgm")).unwrap();
    assert_eq!(failed.status, "failed");
    assert!(failed.reason.as_deref().unwrap().contains("malformed markup"));
    assert!(out.join("good.tml").is_file());
    assert!(!out.join("crossing.tml").exists());
}

#[test]
fn convert_is_deterministic_across_runs_and_jobs() {
    let dir = TempDir::new().unwrap();
    let src = dir.path().join("src");
    write(&src.join("ex2.sgm"), EX2);
    write(
        &src.join("more.sgm"),
        "<TIMEX2 VAL=\"2012-03-20\">The Tuesday after the party</TIMEX2> and \
         <TIMEX2 VAL=\"P20D\">twenty days later than the termination notice's delivery</TIMEX2>\n",
    );
    write(&src.join("plain.sgm"), "no annotations at all\n");

    let mut snapshots = Vec::new();
    for jobs in ["1", "3"] {
        for _ in 0..2 {
            let out = TempDir::new().unwrap();
            let result = chronotag(&[
                "convert",
                "--jobs",
                jobs,
                "--out",
                out.path().to_str().unwrap(),
                src.to_str().unwrap(),
            ]);
            assert_eq!(result.status.code(), Some(0));
            let mut snapshot = String::new();
            let mut names: Vec<_> = fs::read_dir(out.path())
                .unwrap()
                .map(|e| e.unwrap().file_name().into_string().unwrap())
                .collect();
            names.sort();
            for name in names {
                snapshot.push_str(&name);
                snapshot.push('\n');
                let body = fs::read_to_string(out.path().join(&name)).unwrap();
                // Manifest records carry absolute input paths; keep only
                // the per-document shape for comparison across temp dirs.
                for line in body.lines() {
                    let normalized = line
                        .split("\"input\":")
                        .last()
                        .unwrap()
                        .split("/")
                        .last()
                        .unwrap_or(line);
                    snapshot.push_str(normalized);
                    snapshot.push('\n');
                }
            }
            snapshots.push(snapshot);
        }
    }
    assert!(snapshots.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn convert_standoff_pair() {
    let dir = TempDir::new().unwrap();
    let src = dir.path().join("src");
    write(&src.join("doc1.sgm"), "plan for the next month or so, they said");
    write(
        &src.join("doc1.apf.xml"),
        r#"<source_file><timex2 ID="T1" VAL="FUTURE_REF" ANCHOR_VAL="2005-02-23T10:49:00" ANCHOR_DIR="AFTER">
<timex2_mention ID="T1-1"><extent><charseq START="9" END="28">the next month or so</charseq></extent></timex2_mention>
</timex2></source_file>"#,
    );
    let out = dir.path().join("out");
    let result = chronotag(&[
        "convert",
        "--format",
        "standoff",
        "--out",
        out.to_str().unwrap(),
        src.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    let tml = fs::read_to_string(out.join("doc1.tml")).unwrap();
    assert!(tml.contains("value=\"FUTURE_REF\""));
    assert!(tml.contains(">the next month or so</TIMEX3>"));
}

#[test]
fn convert_flags_change_behavior() {
    let dir = TempDir::new().unwrap();
    let src = dir.path().join("src");
    write(&src.join("t.sgm"), "<TIMEX2 VAL=\"2012-03-20\">The Tuesday after the party</TIMEX2>\n");

    // Default: signalled expansion with a typed link.
    let out1 = dir.path().join("out1");
    chronotag(&["convert", "--out", out1.to_str().unwrap(), src.to_str().unwrap()]);
    let tml = fs::read_to_string(out1.join("t.tml")).unwrap();
    assert!(tml.contains("relType=\"AFTER\""));

    // --untyped-tlinks blanks the relation.
    let out2 = dir.path().join("out2");
    chronotag(&[
        "convert",
        "--untyped-tlinks",
        "--out",
        out2.to_str().unwrap(),
        src.to_str().unwrap(),
    ]);
    let tml = fs::read_to_string(out2.join("t.tml")).unwrap();
    assert!(tml.contains("<TLINK"));
    assert!(!tml.contains("relType"));

    // A replacement lexicon without "after" leaves nothing to split on.
    let lex = dir.path().join("signals.tsv");
    fs::write(&lex, "since\tmonosemous\t1\n").unwrap();
    let out3 = dir.path().join("out3");
    chronotag(&[
        "convert",
        "--signal-lexicon",
        lex.to_str().unwrap(),
        "--out",
        out3.to_str().unwrap(),
        src.to_str().unwrap(),
    ]);
    let tml = fs::read_to_string(out3.join("t.tml")).unwrap();
    assert!(!tml.contains("<SIGNAL"));
    assert!(tml.contains(">The Tuesday after the party</TIMEX3>"));

    // --dct marks the matching timex as the creation time.
    let out4 = dir.path().join("out4");
    chronotag(&[
        "convert",
        "--dct",
        "2012-03-20",
        "--out",
        out4.to_str().unwrap(),
        src.to_str().unwrap(),
    ]);
    let tml = fs::read_to_string(out4.join("t.tml")).unwrap();
    assert!(tml.contains("functionInDocument=\"CREATION_TIME\""));

    // --trim-cutoff raises the bar for trimming: a nine-token annotation
    // maps whole when the cutoff exceeds it.
    write(
        &src.join("long.sgm"),
        "<TIMEX2 VAL=\"P20D\">twenty days later than the termination notice's delivery</TIMEX2>\n",
    );
    let out5 = dir.path().join("out5");
    chronotag(&[
        "convert",
        "--trim-cutoff",
        "20",
        "--out",
        out5.to_str().unwrap(),
        src.to_str().unwrap(),
    ]);
    let tml = fs::read_to_string(out5.join("long.tml")).unwrap();
    assert!(tml.contains(">twenty days later than the termination notice's delivery</TIMEX3>"));
}

#[test]
fn bad_usage_exits_two() {
    let result = chronotag(&["convert", "--out"]);
    assert_eq!(result.status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let src = dir.path().join("s.sgm");
    fs::write(&src, "x").unwrap();
    let result = chronotag(&[
        "convert",
        "--trim-cutoff",
        "1",
        "--out",
        dir.path().join("o").to_str().unwrap(),
        src.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn stats_tabulates_types() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("corpus");
    write(
        &corpus.join("a.tml"),
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<TimeML>\
         <TIMEX3 tid=\"t1\" type=\"DATE\" value=\"1999\">1999</TIMEX3> and \
         <TIMEX3 tid=\"t2\" type=\"DATE\" value=\"2000\">2000</TIMEX3> for \
         <TIMEX3 tid=\"t3\" type=\"DURATION\" value=\"P90D\">90 days</TIMEX3></TimeML>\n",
    );
    let result = chronotag(&["stats", corpus.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0));
    let stdout = String::from_utf8(result.stdout).unwrap();
    let row = stdout.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(&cells[cells.len() - 5..], &["2", "1", "0", "0", "3"]);
}

#[test]
fn stats_on_converted_nested_example_counts_two_dates() {
    let dir = TempDir::new().unwrap();
    let src = dir.path().join("src");
    write(
        &src.join("ex7.sgm"),
        "<TIMEX2 VAL=\"1999-W23\">the week of <TIMEX2 VAL=\"1999-06-07\">the seventh</TIMEX2> </TIMEX2>\n",
    );
    let out = dir.path().join("out");
    chronotag(&["convert", "--out", out.to_str().unwrap(), src.to_str().unwrap()]);
    let result = chronotag(&["stats", out.to_str().unwrap()]);
    let stdout = String::from_utf8(result.stdout).unwrap();
    let row = stdout.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(&cells[cells.len() - 5..], &["2", "0", "0", "0", "2"]);
}

#[test]
fn stats_reports_parse_failures_but_prints_partial() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("corpus");
    write(
        &corpus.join("good.tml"),
        "<TimeML><TIMEX3 tid=\"t1\" type=\"SET\" value=\"XXXX\">summers</TIMEX3></TimeML>",
    );
    write(&corpus.join("broken.tml"), "<TimeML><TIMEX3 tid=");
    let result = chronotag(&["stats", corpus.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(1));
    let stdout = String::from_utf8(result.stdout).unwrap();
    assert!(stdout.lines().nth(1).unwrap().split_whitespace().any(|c| c == "1"));
    let stderr = String::from_utf8(result.stderr).unwrap();
    assert!(stderr.contains("broken.tml"));
}

#[test]
fn stats_empty_corpus_is_all_zero() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("corpus");
    fs::create_dir_all(&corpus).unwrap();
    let result = chronotag(&["stats", corpus.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0));
    let stdout = String::from_utf8(result.stdout).unwrap();
    let cells: Vec<&str> = stdout.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(&cells[cells.len() - 5..], &["0", "0", "0", "0", "0"]);
}

const GOLD_THURSDAY: &str = "<TimeML>see you <TIMEX3 tid=\"t1\" type=\"DATE\" value=\"1999-06-10\">next Thursday</TIMEX3> then</TimeML>";
const SYS_THURSDAY: &str = "<TimeML>see you next <TIMEX3 tid=\"t1\" type=\"DATE\" value=\"1999-06-10\">Thursday</TIMEX3> then</TimeML>";

#[test]
fn score_identical_dirs_is_perfect() {
    let dir = TempDir::new().unwrap();
    let gold = dir.path().join("gold");
    write(&gold.join("d.tml"), GOLD_THURSDAY);
    let result = chronotag(&["score", gold.to_str().unwrap(), gold.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0));
    let stdout = String::from_utf8(result.stdout).unwrap();
    assert!(stdout.contains("entity_strict\t1.0000\t1.0000\t1.0000"));
    assert!(stdout.contains("token\t1.0000\t1.0000\t1.0000"));
}

#[test]
fn score_subspan_pair_matches_hand_counts() {
    let dir = TempDir::new().unwrap();
    let gold = dir.path().join("gold");
    let sys = dir.path().join("sys");
    write(&gold.join("d.tml"), GOLD_THURSDAY);
    write(&sys.join("d.tml"), SYS_THURSDAY);
    let result = chronotag(&["score", gold.to_str().unwrap(), sys.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0));
    let stdout = String::from_utf8(result.stdout).unwrap();
    assert!(stdout.contains("entity_strict\t0.0000\t0.0000\t0.0000\t0\t1\t1"));
    assert!(stdout.contains("token\t1.0000\t0.5000\t0.6667\t1\t0\t1"));
}

#[test]
fn score_skips_unpaired_and_handles_empty() {
    let dir = TempDir::new().unwrap();
    let gold = dir.path().join("gold");
    let sys = dir.path().join("sys");
    write(&gold.join("only_gold.tml"), GOLD_THURSDAY);
    fs::create_dir_all(&sys).unwrap();
    let result = chronotag(&["score", gold.to_str().unwrap(), sys.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0));
    let stderr = String::from_utf8(result.stderr).unwrap();
    assert!(stderr.contains("only in gold"));
    let stdout = String::from_utf8(result.stdout).unwrap();
    assert!(stdout.contains("entity_strict\t0.0000\t0.0000\t0.0000\t0\t0\t0"));
}
