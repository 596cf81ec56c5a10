//! The `score` subcommand: micro-averaged extent scoring of aligned
//! gold/system TimeML directories.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Result;

use chronotag_core::model::TimeMlDocument;
use chronotag_core::score::{render_table, score_corpus, Regime, ScoreReport};
use chronotag_core::timeml::parse_timeml;

use crate::cli::{RegimeArg, ScoreArgs};
use crate::corpus;
use crate::EXIT_OK;

fn load_dir(dir: &Path) -> Result<BTreeMap<String, TimeMlDocument>> {
    let files = corpus::collect_files(std::slice::from_ref(&dir.to_path_buf()), corpus::timeml_file)?;
    let mut docs = BTreeMap::new();
    for file in files {
        let name = file
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default()
            .to_string();
        match std::fs::read_to_string(&file) {
            Ok(text) => match parse_timeml(&text) {
                Ok(doc) => {
                    docs.insert(name, doc);
                }
                Err(e) => eprintln!("score: skipping {}: {e}", file.display()),
            },
            Err(e) => eprintln!("score: skipping {}: {e}", file.display()),
        }
    }
    Ok(docs)
}

/// Pair gold and system documents by file name; unpaired files are reported
/// and skipped.
pub fn aligned_pairs<'a>(
    gold: &'a BTreeMap<String, TimeMlDocument>,
    sys: &'a BTreeMap<String, TimeMlDocument>,
) -> Vec<(&'a TimeMlDocument, &'a TimeMlDocument)> {
    let mut pairs = Vec::new();
    for (name, gold_doc) in gold {
        match sys.get(name) {
            Some(sys_doc) => pairs.push((gold_doc, sys_doc)),
            None => eprintln!("score: {name} present only in gold; skipped"),
        }
    }
    for name in sys.keys() {
        if !gold.contains_key(name) {
            eprintln!("score: {name} present only in system; skipped");
        }
    }
    pairs
}

pub fn score_pairs(
    pairs: &[(&TimeMlDocument, &TimeMlDocument)],
    regime: Regime,
) -> Result<ScoreReport> {
    // Pairs whose texts differ cannot be compared; report and skip them so
    // one bad file does not abort a corpus score.
    let mut usable = Vec::new();
    for (gold, sys) in pairs {
        if gold.text == sys.text {
            usable.push((*gold, *sys));
        } else {
            eprintln!("score: text mismatch between a gold/system pair; skipped");
        }
    }
    Ok(score_corpus(usable, regime).expect("texts were checked"))
}

pub fn run(args: &ScoreArgs) -> Result<i32> {
    let gold = load_dir(&args.gold)?;
    let sys = load_dir(&args.sys)?;
    let pairs = aligned_pairs(&gold, &sys);

    let regimes: &[Regime] = match args.regime {
        RegimeArg::Entity => &[Regime::EntityStrict],
        RegimeArg::Token => &[Regime::Token],
        RegimeArg::Both => &[Regime::EntityStrict, Regime::Token],
    };
    let mut reports = Vec::new();
    for regime in regimes {
        reports.push(score_pairs(&pairs, *regime)?);
    }
    print!("{}", render_table(&reports));
    for report in &reports {
        println!("{}", report.tsv_row());
    }
    Ok(EXIT_OK)
}
