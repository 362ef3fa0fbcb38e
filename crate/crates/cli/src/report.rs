//! Reports as JSON or text, and the exit code they map to.

use serde::Serialize;
use serde_json::{json, Value};

use segal_abacus::{CheckReport, Verdict};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VACUOUS: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn verdict_name(r: &CheckReport) -> &'static str {
    if r.is_vacuous() {
        return "vacuous";
    }
    match r.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Precondition => "precondition",
    }
}

pub fn exit_code(r: &CheckReport) -> i32 {
    if r.is_vacuous() {
        return EXIT_VACUOUS;
    }
    match r.verdict {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Precondition => EXIT_INVALID,
    }
}

/// The worst of several exit codes: fail, then invalid, then vacuous.
pub fn combine(codes: impl IntoIterator<Item = i32>) -> i32 {
    let rank = |c: i32| match c {
        EXIT_FAIL => 3,
        EXIT_INVALID => 2,
        EXIT_VACUOUS => 1,
        _ => 0,
    };
    codes
        .into_iter()
        .max_by_key(|&c| rank(c))
        .unwrap_or(EXIT_PASS)
}

#[derive(Serialize)]
struct CoverageJson<'a> {
    family: &'a str,
    checked: usize,
    failed: usize,
    skipped: usize,
}

pub fn report_json(r: &CheckReport) -> Value {
    let coverage: Vec<CoverageJson> = r
        .coverage
        .iter()
        .map(|c| CoverageJson {
            family: &c.family,
            checked: c.checked,
            failed: c.failed,
            skipped: c.skipped,
        })
        .collect();
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|w| json!({"instance": w.instance, "elements": w.elements}))
        .collect();
    json!({
        "name": r.name,
        "verdict": verdict_name(r),
        "checked": r.checked(),
        "failures": r.failures(),
        "coverage": coverage,
        "witnesses": witnesses,
        "notes": r.notes,
    })
}

pub fn report_text(r: &CheckReport) -> String {
    let mut out = format!(
        "{}: {} ({} checked, {} failed)\n",
        r.name,
        verdict_name(r),
        r.checked(),
        r.failures()
    );
    for w in &r.witnesses {
        out.push_str(&format!("  witness {}", w.instance));
        if !w.elements.is_empty() {
            out.push_str(&format!(" [{}]", w.elements.join(", ")));
        }
        out.push('\n');
    }
    for n in &r.notes {
        out.push_str(&format!("  note {n}\n"));
    }
    out
}

pub fn render(value: &Value, text: impl FnOnce() -> String, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}
