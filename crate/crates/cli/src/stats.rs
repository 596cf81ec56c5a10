//! The `stats` subcommand: timex type distribution over TimeML corpora.

use std::path::PathBuf;

use anyhow::Result;

use chronotag_core::model::TimexType;
use chronotag_core::timeml::parse_timeml;

use crate::corpus;
use crate::{EXIT_DOC_FAILED, EXIT_OK};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TypeCounts {
    pub date: usize,
    pub duration: usize,
    pub time: usize,
    pub set: usize,
}

impl TypeCounts {
    pub fn add(&mut self, t: TimexType) {
        match t {
            TimexType::Date => self.date += 1,
            TimexType::Duration => self.duration += 1,
            TimexType::Time => self.time += 1,
            TimexType::Set => self.set += 1,
        }
    }

    pub fn absorb(&mut self, other: &TypeCounts) {
        self.date += other.date;
        self.duration += other.duration;
        self.time += other.time;
        self.set += other.set;
    }

    pub fn total(&self) -> usize {
        self.date + self.duration + self.time + self.set
    }
}

/// Count timex types over one corpus (all `.tml` files under `input`).
/// Returns the counts and the number of files that failed to parse.
pub fn corpus_counts(input: &PathBuf) -> Result<(TypeCounts, usize)> {
    let files = corpus::collect_files(std::slice::from_ref(input), corpus::timeml_file)?;
    let mut counts = TypeCounts::default();
    let mut failures = 0usize;
    for file in files {
        let text = match std::fs::read_to_string(&file) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("stats: {}: {e}", file.display());
                failures += 1;
                continue;
            }
        };
        match parse_timeml(&text) {
            Ok(doc) => {
                for t3 in &doc.timex3s {
                    counts.add(t3.ttype);
                }
            }
            Err(e) => {
                eprintln!("stats: {}: {e}", file.display());
                failures += 1;
            }
        }
    }
    Ok((counts, failures))
}

pub fn render_row(name: &str, c: &TypeCounts) -> String {
    format!(
        "{:<28} {:>7} {:>7} {:>7} {:>7} {:>8}",
        name,
        c.date,
        c.duration,
        c.time,
        c.set,
        c.total()
    )
}

pub fn run(inputs: &[PathBuf]) -> Result<i32> {
    println!(
        "{:<28} {:>7} {:>7} {:>7} {:>7} {:>8}",
        "Corpus", "DATE", "DUR.", "TIME", "SET", "Total"
    );
    let mut grand = TypeCounts::default();
    let mut failures = 0usize;
    for input in inputs {
        let (counts, failed) = corpus_counts(input)?;
        failures += failed;
        grand.absorb(&counts);
        println!("{}", render_row(&input.display().to_string(), &counts));
    }
    if inputs.len() > 1 {
        println!("{}", render_row("Total", &grand));
    }
    Ok(if failures > 0 { EXIT_DOC_FAILED } else { EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_align_counts() {
        let mut counts = TypeCounts::default();
        counts.add(TimexType::Date);
        counts.add(TimexType::Date);
        counts.add(TimexType::Duration);
        let row = render_row("corpus", &counts);
        assert!(row.contains('2'));
        assert!(row.ends_with("       3"));
    }
}
