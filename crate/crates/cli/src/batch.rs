use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{analyze_text, Options};

/// Analyze every non-blank, non-comment line; output order follows input
/// order whatever the scheduling.
pub fn run_batch(input: &str, n: Option<usize>, options: &Options) -> Vec<Value> {
    let lines: Vec<(usize, &str)> = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    lines
        .par_iter()
        .map(|&(line, text)| match analyze_text(text, n, options) {
            Ok(report) => {
                let mut value = serde_json::to_value(report).expect("report serializes");
                value["line"] = json!(line);
                value
            }
            Err(e) => json!({ "line": line, "input": text, "error": e.to_string() }),
        })
        .collect()
}

pub fn to_jsonl(records: &[Value]) -> String {
    records.iter().map(|r| format!("{r}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skips_comments_and_reports_errors() {
        let text = "# header\ns1^-3 s2^-3 s1^-3 s2^-3\n\ns1^x\n";
        let records = run_batch(text, Some(3), &Options::default());
        assert_eq!(records.len(), 2);
        assert_eq!(records[0]["line"], 2);
        assert_eq!(records[0]["schema"], "braidvol.report/1");
        assert_eq!(records[1]["line"], 4);
        assert!(records[1]["error"].is_string());
    }

    #[test]
    fn empty_input_gives_no_records() {
        assert!(run_batch("", None, &Options::default()).is_empty());
    }
}
