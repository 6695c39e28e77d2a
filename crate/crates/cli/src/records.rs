//! Line-delimited output records.
//!
//! One JSON object per line. Field order is the declaration order below and
//! never changes, so record files diff cleanly.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "kebab-case")]
pub enum Record {
    /// Outcome of a search. `trace` is the text form of the proof.
    Proof {
        goal: String,
        theory: String,
        found: bool,
        steps: Option<usize>,
        states: usize,
        depth: usize,
        trace: Option<String>,
    },
    /// A pass/fail check. `degree` and `input` locate a failure.
    Check {
        subject: String,
        check: String,
        pass: bool,
        degree: Option<usize>,
        input: Option<String>,
        detail: String,
    },
    /// A computed value.
    Value { subject: String, key: String, value: String },
}

impl Record {
    pub fn check(subject: &str, check: &str, pass: bool, detail: impl Into<String>) -> Record {
        Record::Check {
            subject: subject.into(),
            check: check.into(),
            pass,
            degree: None,
            input: None,
            detail: detail.into(),
        }
    }

    pub fn value(subject: &str, key: &str, value: impl Into<String>) -> Record {
        Record::Value { subject: subject.into(), key: key.into(), value: value.into() }
    }

    pub fn passed(&self) -> bool {
        match self {
            Record::Proof { found, .. } => *found,
            Record::Check { pass, .. } => *pass,
            Record::Value { .. } => true,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    /// Human-readable form.
    pub fn to_text(&self) -> String {
        match self {
            Record::Proof { goal, theory, found: true, trace: Some(t), .. } => {
                format!("# {goal} ({theory})\n{}", t.trim_end())
            }
            Record::Proof { goal, theory, states, depth, .. } => {
                format!("# {goal} ({theory}): not found within budget ({states} states, depth {depth})")
            }
            Record::Check { subject, check, pass, degree, input, detail } => {
                let mut s = format!("{} {subject} {check}", if *pass { "PASS" } else { "FAIL" });
                if let Some(i) = input {
                    s.push_str(&format!(" at {i}"));
                }
                if let Some(d) = degree {
                    s.push_str(&format!(" h^{d}"));
                }
                if !detail.is_empty() {
                    s.push_str(&format!(": {detail}"));
                }
                s
            }
            Record::Value { subject, key, value } if value.contains('\n') => {
                format!("{subject} {key}:\n{}", value.trim_end())
            }
            Record::Value { subject, key, value } => format!("{subject} {key}: {value}"),
        }
    }
}

pub fn parse_records(text: &str) -> Result<Vec<Record>, serde_json::Error> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_round_trip_with_fixed_field_order() {
        let recs = vec![
            Record::Proof {
                goal: "g".into(),
                theory: "base".into(),
                found: true,
                steps: Some(1),
                states: 3,
                depth: 1,
                trace: Some("@theory base\n".into()),
            },
            Record::check("m", "assoc", false, "x\ty"),
            Record::value("m", "k", "v"),
        ];
        let text: String = recs.iter().map(|r| r.to_line() + "\n").collect();
        assert_eq!(parse_records(&text).unwrap(), recs);
        let first = text.lines().next().unwrap();
        let keys = ["record", "goal", "theory", "found", "steps", "states", "depth", "trace"];
        let pos: Vec<usize> = keys.iter().map(|k| first.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }
}
