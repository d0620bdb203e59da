//! Text dump of a search result:
//!
//! ```text
//! path 0 17 42 1
//! cost 1.4142
//! optimal 0
//! improve 0.0031 57 1.52
//! improve 0.0104 230 1.4142
//! ```
//!
//! Runs without a solution write only a `# outcome <kind>` comment.

use std::fmt::Write as _;
use std::time::Duration;

use crate::geometry::LocationId;
use crate::scenarios::ParseError;
use crate::search::{SearchOutcome, SearchReport};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolutionDump {
    pub path: Vec<LocationId>,
    pub cost: Option<f64>,
    pub optimal: bool,
    /// `(elapsed seconds, iteration, cost)`
    pub improvements: Vec<(f64, u64, f64)>,
}

pub fn format_solution(report: &SearchReport) -> String {
    let mut out = String::new();
    match &report.outcome {
        SearchOutcome::Solution {
            path,
            cost,
            proven_optimal,
        } => {
            out.push_str("path");
            for v in path {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
            writeln!(out, "cost {cost}").unwrap();
            writeln!(out, "optimal {}", u8::from(*proven_optimal)).unwrap();
        }
        other => writeln!(out, "# outcome {}", other.kind()).unwrap(),
    }
    for imp in &report.improvements {
        writeln!(
            out,
            "improve {} {} {}",
            imp.elapsed.as_secs_f64(),
            imp.iteration,
            imp.cost
        )
        .unwrap();
    }
    out
}

fn bad(line: usize, message: &str) -> ParseError {
    ParseError::Malformed {
        line,
        message: message.to_string(),
    }
}

pub fn parse_solution(text: &str) -> Result<SolutionDump, ParseError> {
    let mut dump = SolutionDump::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        let mut parts = content.split_whitespace();
        let Some(keyword) = parts.next() else {
            continue;
        };
        let fields: Vec<&str> = parts.collect();
        match keyword {
            "path" => {
                dump.path = fields
                    .iter()
                    .map(|f| {
                        f.parse::<u32>()
                            .map(LocationId)
                            .map_err(|_| bad(line, "bad location id"))
                    })
                    .collect::<Result<_, _>>()?;
            }
            "cost" => {
                let [c] = fields[..] else {
                    return Err(bad(line, "`cost` expects one value"));
                };
                dump.cost = Some(c.parse().map_err(|_| bad(line, "bad cost"))?);
            }
            "optimal" => {
                dump.optimal = match fields[..] {
                    ["0"] => false,
                    ["1"] => true,
                    _ => return Err(bad(line, "`optimal` expects 0 or 1")),
                }
            }
            "improve" => {
                let [t, it, c] = fields[..] else {
                    return Err(bad(line, "`improve` expects three values"));
                };
                dump.improvements.push((
                    t.parse().map_err(|_| bad(line, "bad time"))?,
                    it.parse().map_err(|_| bad(line, "bad iteration"))?,
                    c.parse().map_err(|_| bad(line, "bad cost"))?,
                ));
            }
            other => return Err(bad(line, &format!("unknown record `{other}`"))),
        }
    }
    Ok(dump)
}

impl SolutionDump {
    pub fn elapsed(&self) -> Vec<Duration> {
        self.improvements
            .iter()
            .map(|&(t, _, _)| Duration::from_secs_f64(t))
            .collect()
    }
}
