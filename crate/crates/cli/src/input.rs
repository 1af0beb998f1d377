//! The line-oriented input document.
//!
//! ```text
//! # comment
//! label: quintic
//! precision: 6
//! checks: naive-integrality, log-positivity
//! d: 25
//! dprime: 30
//! sampling-denominator: 60
//! groups:
//! 1 0 0 0
//! 0 1 0 0
//!
//! -1 -1 0 0
//! ```
//!
//! Header lines are `key: value`. After `groups:` every non-blank line is one
//! vector (integers separated by spaces or commas) and blank lines separate
//! groups.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use mirrormap_core::checker::{CheckKind, CheckRequest};
use mirrormap_core::{Rational, VectorConfig};
use num_rational::Rational64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InputDocument {
    pub label: Option<String>,
    pub precision: Option<usize>,
    pub checks: Option<Vec<CheckKind>>,
    pub d: Option<Rational64>,
    pub dprime: Option<Rational64>,
    pub sampling_denominator: Option<i64>,
    pub groups: Vec<Vec<Vec<i64>>>,
}

fn parse_bound(line: usize, value: &str) -> Result<Rational64, ParseError> {
    value
        .trim()
        .parse::<Rational64>()
        .map_err(|_| err(line, format!("expected an integer or fraction, got '{}'", value.trim())))
}

pub fn format_bound(b: Rational64) -> String {
    if b.is_integer() {
        b.to_integer().to_string()
    } else {
        b.to_string()
    }
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut doc = InputDocument::default();
        let mut in_groups = false;
        let mut current: Vec<Vec<i64>> = Vec::new();
        let mut width: Option<(usize, usize)> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if in_groups {
                if content.is_empty() {
                    if !current.is_empty() {
                        doc.groups.push(std::mem::take(&mut current));
                    }
                    continue;
                }
                let mut v = Vec::new();
                for (f, tok) in content.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).enumerate() {
                    v.push(
                        tok.parse::<i64>()
                            .map_err(|_| err(line, format!("field {}: '{tok}' is not an integer", f + 1)))?,
                    );
                }
                match width {
                    None => width = Some((v.len(), line)),
                    Some((w, first)) if w != v.len() => {
                        return Err(err(
                            line,
                            format!("vector has {} entries but the vector on line {first} has {w}", v.len()),
                        ))
                    }
                    _ => {}
                }
                current.push(v);
                continue;
            }
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once(':') else {
                return Err(err(line, format!("expected 'key: value', got '{content}'")));
            };
            let value = value.trim();
            match key.trim() {
                "label" => doc.label = Some(value.to_string()),
                "precision" => {
                    let p = value.parse::<usize>().ok().filter(|&p| p >= 1);
                    doc.precision = Some(p.ok_or_else(|| err(line, format!("precision must be a positive integer, got '{value}'")))?);
                }
                "checks" => {
                    let checks = parse_checks(value).map_err(|m| err(line, m))?;
                    doc.checks = Some(checks);
                }
                "d" => doc.d = Some(parse_bound(line, value)?),
                "dprime" => doc.dprime = Some(parse_bound(line, value)?),
                "sampling-denominator" => {
                    let q = value.parse::<i64>().ok().filter(|&q| q >= 1);
                    doc.sampling_denominator =
                        Some(q.ok_or_else(|| err(line, format!("sampling denominator must be a positive integer, got '{value}'")))?);
                }
                "groups" => {
                    if !value.is_empty() {
                        return Err(err(line, "vectors start on the line after 'groups:'"));
                    }
                    in_groups = true;
                }
                other => return Err(err(line, format!("unknown key '{other}'"))),
            }
        }
        if !current.is_empty() {
            doc.groups.push(current);
        }
        if !in_groups {
            return Err(err(text.lines().count().max(1), "missing 'groups:' section"));
        }
        if doc.groups.is_empty() {
            return Err(err(text.lines().count().max(1), "no vectors given"));
        }
        Ok(doc)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(l) = &self.label {
            let _ = writeln!(out, "label: {l}");
        }
        if let Some(p) = self.precision {
            let _ = writeln!(out, "precision: {p}");
        }
        if let Some(cs) = &self.checks {
            let names: Vec<&str> = cs.iter().map(|c| c.name()).collect();
            let _ = writeln!(out, "checks: {}", names.join(", "));
        }
        if let Some(d) = self.d {
            let _ = writeln!(out, "d: {}", format_bound(d));
        }
        if let Some(d) = self.dprime {
            let _ = writeln!(out, "dprime: {}", format_bound(d));
        }
        if let Some(q) = self.sampling_denominator {
            let _ = writeln!(out, "sampling-denominator: {q}");
        }
        out.push_str("groups:\n");
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for v in g {
                let row: Vec<String> = v.iter().map(i64::to_string).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
        out
    }

    pub fn from_request(req: &CheckRequest) -> Self {
        InputDocument {
            label: req.label.clone(),
            precision: Some(req.precision),
            checks: Some(req.checks.iter().copied().collect()),
            d: req.d,
            dprime: req.dprime,
            sampling_denominator: req.sampling_denominator,
            groups: req.config.groups().to_vec(),
        }
    }

    /// Validates the vectors and fills unset fields from `default_precision`
    /// and all checks.
    pub fn to_request(&self, default_precision: usize) -> Result<CheckRequest, mirrormap_core::Error> {
        let config = VectorConfig::new(self.groups.clone())?;
        let mut req = CheckRequest::new(config, self.precision.unwrap_or(default_precision));
        req.label = self.label.clone();
        if let Some(cs) = &self.checks {
            req.checks = cs.iter().copied().collect::<BTreeSet<_>>();
        }
        req.d = self.d;
        req.dprime = self.dprime;
        req.sampling_denominator = self.sampling_denominator;
        Ok(req)
    }
}

/// Names may include the shorthands `all` and `conjectures`; duplicates
/// are dropped.
pub fn parse_checks(s: &str) -> Result<Vec<CheckKind>, String> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let add: Vec<CheckKind> = match tok {
            "all" => CheckKind::ALL.to_vec(),
            "conjectures" => CheckKind::CONJECTURES.to_vec(),
            name => vec![name.parse()?],
        };
        for c in add {
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    if out.is_empty() {
        return Err("no checks named".into());
    }
    Ok(out)
}

/// Coefficients travel as `n/d` strings.
pub fn format_rational(q: &Rational) -> String {
    mirrormap_core::exactmath::format_rational(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUINTIC: &str = "\
# the quintic threefold
label: quintic
precision: 6
checks: naive-integrality, log-positivity
groups:
1 0 0 0
0 1 0 0
0 0 1 0
0 0 0 1
-1 -1 -1 -1
";

    #[test]
    fn parses_headers_and_groups() {
        let doc = InputDocument::parse(QUINTIC).unwrap();
        assert_eq!(doc.label.as_deref(), Some("quintic"));
        assert_eq!(doc.precision, Some(6));
        assert_eq!(doc.checks, Some(vec![CheckKind::NaiveIntegrality, CheckKind::LogPositivity]));
        assert_eq!(doc.groups.len(), 1);
        assert_eq!(doc.groups[0][4], vec![-1, -1, -1, -1]);
    }

    #[test]
    fn blank_lines_split_groups() {
        let doc = InputDocument::parse("groups:\n1, 0\n0, 1\n\n\n-1 -1\n").unwrap();
        assert_eq!(doc.groups, vec![vec![vec![1, 0], vec![0, 1]], vec![vec![-1, -1]]]);
        assert_eq!(doc.precision, None);
    }

    #[test]
    fn ragged_vectors_point_at_the_line() {
        let e = InputDocument::parse("precision: 3\ngroups:\n1 0\n0 1 2\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("line 3"), "{e}");
        let e = InputDocument::parse("groups:\n1 x\n").unwrap_err();
        assert_eq!((e.line, e.message.as_str()), (2, "field 2: 'x' is not an integer"));
    }

    #[test]
    fn header_errors() {
        assert_eq!(InputDocument::parse("precision: 0\ngroups:\n1\n").unwrap_err().line, 1);
        assert!(InputDocument::parse("colour: red\ngroups:\n1\n").unwrap_err().message.contains("unknown key"));
        assert!(InputDocument::parse("checks: fano, nope\ngroups:\n1\n").is_err());
        assert!(InputDocument::parse("precision: 3\n").unwrap_err().message.contains("groups"));
    }

    #[test]
    fn request_roundtrip() {
        let doc = InputDocument::parse(QUINTIC).unwrap();
        let mut req = doc.to_request(10).unwrap();
        req.d = Some(Rational64::new(7, 2));
        req.sampling_denominator = Some(60);
        let text = InputDocument::from_request(&req).to_text();
        let again = InputDocument::parse(&text).unwrap().to_request(1).unwrap();
        assert_eq!(again, req);
    }
}
