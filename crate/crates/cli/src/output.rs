use std::fmt::Write as _;

use clap::ValueEnum;
use mirrormap_core::checker::{BatchReport, CheckReport, Verdict, Witness};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// JSON document
    #[default]
    Report,
    /// Aligned text for humans
    Table,
    /// One row per check and index
    Csv,
}

pub fn render_report(report: &CheckReport, format: Format) -> String {
    match format {
        Format::Report => json(report),
        Format::Table => table(std::slice::from_ref(report), None),
        Format::Csv => csv(std::slice::from_ref(report)),
    }
}

pub fn render_batch(batch: &BatchReport, format: Format) -> String {
    match format {
        Format::Report => json(batch),
        Format::Table => table(&batch.reports, Some(batch)),
        Format::Csv => csv(&batch.reports),
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn verdict_word(v: &Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail { .. } => "fail",
        Verdict::Skipped { .. } => "skipped",
    }
}

fn witness_text(w: &Witness) -> String {
    let mut parts = Vec::new();
    if let Some(i) = &w.index {
        parts.push(format!("index {i}"));
    }
    if let Some(k) = &w.exponent {
        parts.push(format!("at {k:?}"));
    }
    if let Some(c) = &w.coefficient {
        parts.push(format!("coefficient {c}"));
    }
    if let Some(d) = &w.detail {
        parts.push(d.clone());
    }
    parts.join(", ")
}

fn status_word(r: &CheckReport) -> String {
    format!("{:?}", r.status).to_lowercase()
}

fn table(reports: &[CheckReport], batch: Option<&BatchReport>) -> String {
    let mut out = String::new();
    for r in reports {
        let label = r.label.as_deref().unwrap_or("(unlabelled)");
        let _ = writeln!(out, "{label}: {} (P = {}, {} ms)", status_word(r), r.precision, r.timing_ms);
        if let Some(e) = &r.error {
            let _ = writeln!(out, "  error: {e}");
        }
        if let Some(b) = &r.bounds {
            let _ = writeln!(out, "  d = {} ({} exponents)", b.d, b.count);
        }
        for c in &r.checks {
            let extra = match &c.verdict {
                Verdict::Pass => String::new(),
                Verdict::Fail { witness } => format!("  {}", witness_text(witness)),
                Verdict::Skipped { reason } => format!("  {reason}"),
            };
            let _ = writeln!(out, "  {:<22}{}{extra}", c.check.name(), verdict_word(&c.verdict));
        }
        for w in &r.warnings {
            let _ = writeln!(out, "  warning: {w}");
        }
        for n in &r.notes {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    if let Some(b) = batch {
        let _ = writeln!(out, "{}", b.summary);
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv(reports: &[CheckReport]) -> String {
    let mut out = String::from("label,status,check,index,verdict,exponent,coefficient,detail\n");
    let mut row = |cells: [&str; 8]| {
        let cells: Vec<String> = cells.iter().map(|c| csv_field(c)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    };
    for r in reports {
        let label = r.label.clone().unwrap_or_default();
        let status = status_word(r);
        if let Some(e) = &r.error {
            row([&label, &status, "", "", "", "", "", e]);
        }
        for c in &r.checks {
            let entries: Vec<(&str, &Verdict)> = if c.per_index.is_empty() {
                vec![("", &c.verdict)]
            } else {
                c.per_index.iter().map(|v| (v.index.as_str(), &v.verdict)).collect()
            };
            for (index, v) in entries {
                let (exponent, coefficient, detail) = match v {
                    Verdict::Fail { witness } => (
                        witness.exponent.as_ref().map(|k| format!("{k:?}")).unwrap_or_default(),
                        witness.coefficient.clone().unwrap_or_default(),
                        witness.detail.clone().unwrap_or_default(),
                    ),
                    Verdict::Skipped { reason } => (String::new(), String::new(), reason.clone()),
                    Verdict::Pass => Default::default(),
                };
                row([&label, &status, c.check.name(), index, verdict_word(v), &exponent, &coefficient, &detail]);
            }
        }
    }
    out
}
