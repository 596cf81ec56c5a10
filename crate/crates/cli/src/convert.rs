//! The `convert` subcommand: batch TIMEX2 → TimeML conversion.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use anyhow::{Context, Result};

use chronotag_core::lexicon::SignalLexicon;
use chronotag_core::model::Document;
use chronotag_core::tag::TagCache;
use chronotag_core::timeml::serialize;
use chronotag_core::transduce::{convert_document, ConversionConfig};
use chronotag_core::validate::validate;

use crate::cli::{ConvertArgs, SourceFormat};
use crate::corpus;
use crate::manifest::{path_counts, warning_records, DocumentRecord, RunManifest};
use crate::{EXIT_DOC_FAILED, EXIT_OK};

pub fn run(args: &ConvertArgs) -> Result<i32> {
    let keep: fn(&Path) -> bool = match args.format {
        SourceFormat::Inline => corpus::inline_source,
        SourceFormat::Standoff => corpus::standoff_annotation,
    };
    let files = corpus::collect_files(&args.inputs, keep)?;
    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating output directory {}", args.out.display()))?;

    let lexicon = match &args.signal_lexicon {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading signal lexicon {}", path.display()))?;
            SignalLexicon::parse(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?
        }
        None => SignalLexicon::default(),
    };
    let cfg = ConversionConfig {
        trim_cutoff: args.trim_cutoff as usize,
        untyped_tlinks: args.untyped_tlinks,
        ..ConversionConfig::default()
    };

    // Output names collide when inputs from different directories share a
    // stem; disambiguate deterministically in input order.
    let output_names = assign_output_names(&files);

    let jobs = (args.jobs as usize).min(files.len().max(1));
    let records = convert_all(&files, &output_names, args, &cfg, &lexicon, jobs)?;

    let manifest = RunManifest {
        format: match args.format {
            SourceFormat::Inline => "inline".into(),
            SourceFormat::Standoff => "standoff".into(),
        },
        out_dir: args.out.display().to_string(),
        trim_cutoff: cfg.trim_cutoff,
        untyped_tlinks: cfg.untyped_tlinks,
        documents: records,
    };
    fs::write(args.out.join("manifest.jsonl"), manifest.to_jsonl())
        .with_context(|| "writing manifest.jsonl")?;

    eprintln!(
        "converted {}/{} documents; {} TIMEX2 -> {} TIMEX3 ({} dropped, accounted in manifest)",
        manifest.converted_count(),
        manifest.documents.len(),
        manifest.total_timex2(),
        manifest.total_timex3(),
        manifest.total_dropped(),
    );
    Ok(if manifest.failed_count() > 0 {
        EXIT_DOC_FAILED
    } else {
        EXIT_OK
    })
}

fn assign_output_names(files: &[PathBuf]) -> Vec<String> {
    let mut used: BTreeMap<String, usize> = BTreeMap::new();
    files
        .iter()
        .map(|f| {
            let base = corpus::doc_name(f);
            let n = used.entry(base.clone()).or_insert(0);
            *n += 1;
            if *n == 1 {
                format!("{base}.tml")
            } else {
                format!("{base}-{n}.tml")
            }
        })
        .collect()
}

fn convert_all(
    files: &[PathBuf],
    output_names: &[String],
    args: &ConvertArgs,
    cfg: &ConversionConfig,
    lexicon: &SignalLexicon,
    jobs: usize,
) -> Result<Vec<DocumentRecord>> {
    let results: Mutex<Vec<(usize, DocumentRecord)>> = Mutex::new(Vec::with_capacity(files.len()));
    let indexed: Vec<(usize, &PathBuf)> = files.iter().enumerate().collect();

    std::thread::scope(|scope| {
        for chunk in indexed.chunks(files.len().div_ceil(jobs).max(1)) {
            let results = &results;
            scope.spawn(move || {
                // One tag cache per worker keeps results deterministic
                // without shared state.
                let mut cache = TagCache::new();
                for (index, path) in chunk {
                    let record =
                        convert_one(path, &output_names[*index], args, cfg, lexicon, &mut cache);
                    results.lock().unwrap().push((*index, record));
                }
            });
        }
    });

    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(i, _)| *i);
    Ok(results.into_iter().map(|(_, r)| r).collect())
}

fn convert_one(
    input: &Path,
    output_name: &str,
    args: &ConvertArgs,
    cfg: &ConversionConfig,
    lexicon: &SignalLexicon,
    cache: &mut TagCache,
) -> DocumentRecord {
    let loaded: Result<Document> = match args.format {
        SourceFormat::Inline => corpus::load_inline(input, args.dct.as_deref()),
        SourceFormat::Standoff => corpus::load_standoff(input, args.dct.as_deref()),
    };
    let doc = match loaded {
        Ok(doc) => doc,
        Err(e) => return DocumentRecord::failed(input, format!("{e:#}")),
    };

    let (out_doc, report) = convert_document(&doc, cfg, lexicon, cache);
    let violations = validate(&out_doc);

    let mut record = DocumentRecord {
        input: input.display().to_string(),
        output: None,
        status: "converted".into(),
        reason: None,
        timex2_nodes: doc.timex2_node_count(),
        timex3: out_doc.timex3s.len(),
        events: out_doc.events.len(),
        signals: out_doc.signals.len(),
        tlinks: out_doc.tlinks.len(),
        paths: path_counts(&report),
        dropped: report.dropped_total(),
        warnings: warning_records(&report),
    };

    if violations.is_empty() {
        let xml = match serialize(&out_doc) {
            Ok(xml) => xml,
            Err(e) => {
                record.status = "failed".into();
                record.reason = Some(format!("serialize: {e}"));
                return record;
            }
        };
        let out_path = args.out.join(output_name);
        match fs::write(&out_path, xml) {
            Ok(()) => record.output = Some(out_path.display().to_string()),
            Err(e) => {
                record.status = "failed".into();
                record.reason = Some(format!("writing {}: {e}", out_path.display()));
            }
        }
    } else {
        // Violations are data: report them next to where the output would
        // have gone, one `code<TAB>id<TAB>message` line each. Any stale
        // output from an earlier run must not outlive its failure.
        let base = output_name.strip_suffix(".tml").unwrap_or(output_name);
        let report_path = args.out.join(format!("{base}.violations.tsv"));
        let _ = fs::remove_file(args.out.join(output_name));
        let body: String = violations.iter().map(|v| v.tsv_line() + "\n").collect();
        let _ = fs::write(&report_path, body);
        record.status = "failed".into();
        record.reason = Some(format!(
            "validation: {} violation(s), see {}",
            violations.len(),
            report_path.display()
        ));
    }
    record
}
