//! Plain-text and CSV renderings of the analysis reports. JSON output is the
//! serde form of the report types.

use std::fmt::Write as _;

use serde::Serialize;

use crate::analysis::{BaseEvidenceReport, HypothesisScore, PrevalenceReport};
use crate::corpus::{Finding, ValidationReport, TRANSCRIPTION_NOTES};

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types serialize");
    out.push('\n');
    out
}

/// Builds CSV text from string rows.
pub fn csv_rows<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    for row in rows {
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("UTF-8 fields")
}

pub fn prevalence_text(p: &PrevalenceReport) -> String {
    let mut out = String::new();
    let total = p.total_inscriptions;
    let _ = writeln!(
        out,
        "catalog listings: {} (corpus total {total})",
        p.total_records
    );
    for g in &p.sections {
        let indent = if g.group.len() > 1 { "  " } else { "" };
        let _ = writeln!(
            out,
            "{indent}section {}: {} ({} of {total})",
            g.group, g.count, g.share.percent
        );
    }
    let _ = writeln!(
        out,
        "score marks 1-9: {} ({} of {total}); published {}",
        p.score_1_to_9_count, p.score_1_to_9_share.percent, p.published_score_1_to_9
    );
    let _ = writeln!(
        out,
        "comb listings: {} ({} of {total}); published {}",
        p.comb_count, p.comb_share.percent, p.published_comb_count
    );
    if !p.notes.is_empty() {
        let _ = writeln!(out, "discrepancies:");
        for note in &p.notes {
            let _ = writeln!(out, "  {note}");
        }
    }
    let _ = writeln!(out, "value lists:");
    for l in &p.lists {
        let _ = writeln!(out, "  {}({}): {}", l.section, l.value, l.count);
    }
    let _ = writeln!(out, "sites:");
    for s in &p.sites {
        let _ = writeln!(out, "  {} ({}): {}", s.site, s.name, s.count);
    }
    let _ = writeln!(out, "published figures, not recomputable from the catalog:");
    for f in &p.unrecomputable {
        let _ = writeln!(out, "  {}: {}", f.label, f.value);
    }
    out
}

pub fn base_text(b: &BaseEvidenceReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "score inscriptions: {}", b.score_records);
    let _ = writeln!(out, "longest row histogram:");
    for r in &b.histogram {
        let _ = writeln!(out, "  {:>3}: {}", r.run, r.records);
    }
    let _ = writeln!(out, "max single-row count: {}", b.max_run);
    let _ = writeln!(
        out,
        "rows exceeding 9: {} (published: {})",
        b.rows_exceeding_nine, b.published_rows_exceeding_nine
    );
    for r in &b.long_runs {
        let _ = writeln!(
            out,
            "  {}: {} strokes in {} row(s)",
            r.id, r.strokes, r.rows
        );
    }
    if b.rows_exceeding_nine != b.published_rows_exceeding_nine {
        let _ = writeln!(
            out,
            "note: counted {} against {} published; the difference holds only if some of these \
             inscriptions span several rows, and the catalog records no layout",
            b.rows_exceeding_nine, b.published_rows_exceeding_nine
        );
    }
    if b.multi_row_records > 0 {
        let _ = writeln!(
            out,
            "note: {} multi-row inscription(s) split evenly across rows",
            b.multi_row_records
        );
    }
    let _ = writeln!(out, "verdict: {}", b.verdict);
    out
}

pub fn stats_csv(p: &PrevalenceReport, b: &BaseEvidenceReport) -> String {
    let mut rows: Vec<[String; 5]> = Vec::new();
    let mut push = |report: &str, group: &str, key: String, count: usize, percent: &str| {
        rows.push([
            report.to_owned(),
            group.to_owned(),
            key,
            count.to_string(),
            percent.to_owned(),
        ])
    };
    push(
        "prevalence",
        "total",
        "listings".into(),
        p.total_records,
        "",
    );
    for g in &p.sections {
        push(
            "prevalence",
            "section",
            g.group.clone(),
            g.count,
            &g.share.percent,
        );
    }
    for l in &p.lists {
        push(
            "prevalence",
            "list",
            format!("{}({})", l.section, l.value),
            l.count,
            "",
        );
    }
    for s in &p.sites {
        push("prevalence", "site", s.site.clone(), s.count, "");
    }
    push(
        "prevalence",
        "score-1-to-9",
        "counted".into(),
        p.score_1_to_9_count,
        &p.score_1_to_9_share.percent,
    );
    push(
        "prevalence",
        "score-1-to-9",
        "published".into(),
        p.published_score_1_to_9,
        "",
    );
    push(
        "prevalence",
        "comb",
        "counted".into(),
        p.comb_count,
        &p.comb_share.percent,
    );
    push(
        "prevalence",
        "comb",
        "published".into(),
        p.published_comb_count,
        "",
    );
    push_base_rows(b, &mut push);
    csv_rows(&["report", "group", "key", "count", "percent"], rows)
}

fn push_base_rows(b: &BaseEvidenceReport, push: &mut impl FnMut(&str, &str, String, usize, &str)) {
    push(
        "base",
        "score-records",
        "counted".into(),
        b.score_records,
        "",
    );
    for r in &b.histogram {
        push("base", "run", r.run.to_string(), r.records, "");
    }
    push("base", "max-run", "counted".into(), b.max_run as usize, "");
    push(
        "base",
        "rows-exceeding-9",
        "counted".into(),
        b.rows_exceeding_nine,
        "",
    );
    push(
        "base",
        "rows-exceeding-9",
        "published".into(),
        b.published_rows_exceeding_nine,
        "",
    );
}

pub fn base_csv(b: &BaseEvidenceReport) -> String {
    let mut rows: Vec<[String; 5]> = Vec::new();
    let mut push = |report: &str, group: &str, key: String, count: usize, percent: &str| {
        rows.push([
            report.to_owned(),
            group.to_owned(),
            key,
            count.to_string(),
            percent.to_owned(),
        ])
    };
    push_base_rows(b, &mut push);
    csv_rows(&["report", "group", "key", "count", "percent"], rows)
}

pub fn scores_text(scores: &[HypothesisScore]) -> String {
    let mut out = String::new();
    let width = scores
        .iter()
        .map(|s| s.name.len())
        .max()
        .unwrap_or(0)
        .max(10);
    let _ = writeln!(
        out,
        "{:<4}  {:<width$}  {:>10}  {:>10}  {:>4}  {:>12}  {:>12}",
        "rank", "hypothesis", "collisions", "unattested", "gaps", "claimed 9/19", "derived 9/19"
    );
    for (i, s) in scores.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:<4}  {:<width$}  {:>10}  {:>10}  {:>4}  {:>12}  {:>12}",
            i + 1,
            s.name,
            s.collision_count,
            s.unattested_predicted_forms.len(),
            s.coverage_gaps.len(),
            format!("{}/{}", s.dearth.claimed_9, s.dearth.claimed_19),
            format!("{}/{}", s.dearth.derived_9, s.dearth.derived_19),
        );
    }
    for s in scores {
        if !s.collisions.is_empty() {
            let pairs: Vec<String> = s
                .collisions
                .iter()
                .map(|c| format!("{}={}", c.first, c.second))
                .collect();
            let _ = writeln!(out, "{} collisions: {}", s.name, pairs.join(" "));
        }
        if !s.unattested_predicted_forms.is_empty() {
            let _ = writeln!(
                out,
                "{} predicts forms absent from the corpus: {}",
                s.name,
                s.unattested_predicted_forms.join(" ")
            );
        }
        if !s.coverage_gaps.is_empty() {
            let gaps: Vec<String> = s.coverage_gaps.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "{} cannot write: {}", s.name, gaps.join(" "));
        }
    }
    out
}

pub fn scores_csv(scores: &[HypothesisScore]) -> String {
    let rows = scores.iter().enumerate().map(|(i, s)| {
        [
            (i + 1).to_string(),
            s.name.clone(),
            s.collision_count.to_string(),
            s.unattested_predicted_forms.len().to_string(),
            s.coverage_gaps.len().to_string(),
            s.dearth.claimed_9.to_string(),
            s.dearth.claimed_19.to_string(),
            s.dearth.derived_9.to_string(),
            s.dearth.derived_19.to_string(),
        ]
    });
    csv_rows(
        &[
            "rank",
            "hypothesis",
            "collisions",
            "unattested_forms",
            "coverage_gaps",
            "claimed_9",
            "claimed_19",
            "derived_9",
            "derived_19",
        ],
        rows,
    )
}

pub fn validation_text(report: &ValidationReport) -> String {
    let mut out = String::new();
    for f in &report.findings {
        let _ = writeln!(out, "{f}");
    }
    let count = |pred: fn(&Finding) -> bool| report.findings.iter().filter(|f| pred(f)).count();
    let _ = writeln!(
        out,
        "summary: {} duplicate-in-list, {} cross-listed, {} value-mismatch, {} out-of-range",
        count(|f| matches!(f, Finding::DuplicateInList { .. })),
        count(|f| matches!(f, Finding::CrossListed { .. })),
        count(|f| matches!(f, Finding::ValueMismatch { .. })),
        count(|f| matches!(f, Finding::OutOfRange { .. })),
    );
    let _ = writeln!(out, "transcription notes:");
    for (subject, note) in TRANSCRIPTION_NOTES {
        let _ = writeln!(out, "  {subject}: {note}");
    }
    out
}

pub fn validation_csv(report: &ValidationReport) -> String {
    let rows = report.findings.iter().map(|f| {
        let (kind, id, detail) = match f {
            Finding::DuplicateInList {
                id,
                list,
                occurrences,
            } => ("duplicate-in-list", id, format!("{list} x{occurrences}")),
            Finding::CrossListed { id, lists } => ("cross-listed", id, lists.join(" ")),
            Finding::ValueMismatch {
                id,
                claimed,
                derived,
                ..
            } => {
                let derived: Vec<String> = derived.iter().map(u64::to_string).collect();
                (
                    "value-mismatch",
                    id,
                    format!("claimed {claimed}; reads {}", derived.join(" ")),
                )
            }
            Finding::OutOfRange { id, detail, .. } => ("out-of-range", id, detail.clone()),
        };
        [kind.to_owned(), id.clone(), detail]
    });
    csv_rows(&["finding", "id", "detail"], rows)
}
