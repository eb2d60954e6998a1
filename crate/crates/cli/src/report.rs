//! Line-oriented reports: a header, one record per check sorted by id, a
//! summary, and an optional timing section.

use std::fmt::Write as _;
use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// Holds modulo admitted axiom steps.
    Axiom,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Axiom => "axiom",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Record {
    pub id: String,
    pub anchor: String,
    pub verdict: Verdict,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct Summary {
    pub records: usize,
    pub pass: usize,
    pub fail: usize,
    pub axiom: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    /// `key=value` pairs describing the run, in order.
    pub header: Vec<(String, String)>,
    pub records: Vec<Record>,
    /// Extra deterministic lines (per-step replay records), printed after the
    /// summary.
    pub details: Vec<String>,
    pub total: Duration,
}

impl Report {
    pub fn sort(&mut self) {
        self.records.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary {
            records: self.records.len(),
            ..Summary::default()
        };
        for r in &self.records {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Axiom => s.axiom += 1,
            }
        }
        s
    }

    pub fn failures(&self) -> usize {
        self.summary().fail
    }

    pub fn get(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }

    /// The report text. Everything before the `[timing]` line is
    /// deterministic for a fixed configuration.
    pub fn render(&self, timing: bool) -> String {
        let mut out = String::from("report");
        for (k, v) in &self.header {
            write!(out, " {k}={v}").unwrap();
        }
        out.push('\n');
        for r in &self.records {
            writeln!(
                out,
                "record id={} anchor={:?} verdict={} detail={:?}",
                r.id,
                r.anchor,
                r.verdict.as_str(),
                r.detail
            )
            .unwrap();
        }
        let s = self.summary();
        writeln!(out, "summary records={} pass={} fail={} axiom={}", s.records, s.pass, s.fail, s.axiom).unwrap();
        for l in &self.details {
            writeln!(out, "{l}").unwrap();
        }
        if timing {
            out.push_str("[timing]\n");
            for r in &self.records {
                writeln!(out, "time id={} ms={}", r.id, r.elapsed.as_millis()).unwrap();
            }
            writeln!(out, "time total ms={}", self.total.as_millis()).unwrap();
        }
        out
    }
}

/// The deterministic part of a rendered report.
pub fn strip_timing(text: &str) -> &str {
    match text.find("[timing]\n") {
        Some(k) => &text[..k],
        None => text,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, verdict: Verdict, ms: u64) -> Record {
        Record {
            id: id.into(),
            anchor: "a".into(),
            verdict,
            detail: "d \"q\"".into(),
            elapsed: Duration::from_millis(ms),
        }
    }

    #[test]
    fn summary_matches_records() {
        let mut r = Report {
            header: vec![("suite".into(), "x".into())],
            records: vec![rec("b", Verdict::Fail, 3), rec("a", Verdict::Pass, 1), rec("c", Verdict::Axiom, 2)],
            ..Report::default()
        };
        r.sort();
        let s = r.summary();
        assert_eq!((s.records, s.pass, s.fail, s.axiom), (3, 1, 1, 1));
        let text = r.render(true);
        assert!(text.starts_with("report suite=x\nrecord id=a "));
        assert!(text.contains("detail=\"d \\\"q\\\"\""));
        let mut slow = r.clone();
        slow.records[0].elapsed = Duration::from_secs(9);
        assert_eq!(strip_timing(&text), strip_timing(&slow.render(true)));
        assert_eq!(strip_timing(&text), r.render(false));
    }
}
