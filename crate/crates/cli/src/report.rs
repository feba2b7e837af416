use std::fmt::Write as _;

use imcalc::{CheckReport, Tag};
use serde::Serialize;

use crate::error::CliError;

#[derive(Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Serialize, Debug)]
pub struct ReportDocument {
    pub mode: &'static str,
    pub k: Option<usize>,
    pub algebroid: AlgebroidSummary,
    pub passed: bool,
    pub verdicts: Vec<Verdict>,
    pub witnesses: Vec<Witness>,
    pub oracle: Option<OracleSummary>,
}

#[derive(Serialize, Debug)]
pub struct AlgebroidSummary {
    pub name: String,
    pub base: Vec<String>,
    pub frame: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct Verdict {
    pub tag: &'static str,
    pub scope: String,
    pub status: Status,
}

#[derive(Serialize, Debug)]
pub struct Witness {
    pub tag: &'static str,
    pub scope: String,
    /// One-based indices.
    pub frames: Vec<usize>,
    pub residuals: Vec<Residual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct Residual {
    pub basis: String,
    pub value: String,
}

#[derive(Serialize, Debug)]
pub struct OracleSummary {
    pub agree: bool,
    pub verdicts: Vec<OracleVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct OracleVerdict {
    pub check: &'static str,
    pub passed: bool,
}

/// Accumulates verdicts and witnesses in a fixed order.
#[derive(Default)]
pub struct Builder {
    pub verdicts: Vec<Verdict>,
    pub witnesses: Vec<Witness>,
}

impl Builder {
    /// One verdict per tag, in the order given, and the witnesses carrying
    /// those tags.
    pub fn add(&mut self, scope: &str, tags: &[Tag], report: &CheckReport) {
        for &tag in tags {
            self.verdicts.push(Verdict {
                tag: tag.as_str(),
                scope: scope.to_string(),
                status: Status::of(!report.has(tag)),
            });
        }
        for v in report.violations().iter().filter(|v| tags.contains(&v.tag)) {
            self.witnesses.push(Witness {
                tag: v.tag.as_str(),
                scope: scope.to_string(),
                frames: v.one_based(),
                residuals: v
                    .residuals
                    .iter()
                    .map(|(basis, p)| Residual {
                        basis: basis.clone(),
                        value: p.to_string(),
                    })
                    .collect(),
                note: v.note.clone(),
            });
        }
    }

    pub fn skip(&mut self, scope: &str, tags: &[Tag]) {
        for &tag in tags {
            self.verdicts.push(Verdict {
                tag: tag.as_str(),
                scope: scope.to_string(),
                status: Status::Skipped,
            });
        }
    }

    pub fn failed(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Fail)
    }

    /// Witnesses sorted by frame indices, then tag, then scope.
    pub fn sorted_witnesses(mut self) -> (Vec<Verdict>, Vec<Witness>) {
        self.witnesses
            .sort_by(|a, b| (&a.frames, a.tag, &a.scope).cmp(&(&b.frames, b.tag, &b.scope)));
        (self.verdicts, self.witnesses)
    }
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let a = &self.algebroid;
        let k = self.k.map(|k| format!(" (k = {k})")).unwrap_or_default();
        let _ = writeln!(s, "mode: {}{k}", self.mode);
        let _ = writeln!(
            s,
            "algebroid: {} with frame ({}) over ({})",
            a.name,
            a.frame.join(", "),
            a.base.join(", ")
        );
        for v in &self.verdicts {
            let _ = writeln!(s, "  {:<14} {:<24} {}", v.tag, v.scope, v.status.as_str());
        }
        if !self.witnesses.is_empty() {
            let _ = writeln!(s, "witnesses:");
            for w in &self.witnesses {
                let frames: Vec<String> = w.frames.iter().map(usize::to_string).collect();
                let _ = write!(s, "  {} [{}] ({})", w.tag, w.scope, frames.join(","));
                for r in &w.residuals {
                    let _ = write!(s, " {}: {}", r.basis, r.value);
                }
                if let Some(n) = &w.note {
                    let _ = write!(s, " ({n})");
                }
                s.push('\n');
            }
        }
        if let Some(o) = &self.oracle {
            let parts: Vec<String> = o
                .verdicts
                .iter()
                .map(|v| format!("{} {}", v.check, Status::of(v.passed).as_str()))
                .collect();
            let agree = if o.agree { "agree" } else { "disagree" };
            let _ = write!(s, "oracle: {agree} ({})", parts.join(", "));
            if let Some(n) = &o.note {
                let _ = write!(s, "; {n}");
            }
            s.push('\n');
        }
        let _ = writeln!(s, "result: {}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: ErrorDetail<'a>,
}

#[derive(Serialize)]
struct ErrorDetail<'a> {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    offset: Option<usize>,
    message: String,
}

pub fn error_json(e: &CliError) -> String {
    let body = ErrorBody {
        error: ErrorDetail {
            kind: e.kind(),
            field: e.field(),
            offset: e.offset(),
            message: e.to_string(),
        },
    };
    let mut s = serde_json::to_string_pretty(&body).expect("error serializes");
    s.push('\n');
    s
}
