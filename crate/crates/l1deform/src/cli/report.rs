use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, o: Status) -> Status {
        use Status::*;
        match (self, o) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Item {
    pub name: String,
    pub expected: String,
    pub computed: String,
}

impl Item {
    /// An empty expectation marks a value that is reported, not checked.
    pub fn is_informational(&self) -> bool {
        self.expected.is_empty()
    }

    pub fn matches(&self) -> bool {
        self.is_informational() || self.expected == self.computed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub params: BTreeMap<String, String>,
    pub items: Vec<Item>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report { check: check.into(), status: Status::Inconclusive, params: BTreeMap::new(), items: Vec::new(), reason: None }
    }

    pub fn param(mut self, k: &str, v: impl Display) -> Self {
        self.params.insert(k.into(), v.to_string());
        self
    }

    pub fn item(&mut self, name: impl Into<String>, expected: impl Display, computed: impl Display) {
        self.items.push(Item { name: name.into(), expected: expected.to_string(), computed: computed.to_string() });
    }

    /// Pass iff there is at least one checked item and every pair matches.
    pub fn finish(mut self) -> Self {
        let checked = self.items.iter().any(|i| !i.is_informational());
        self.status = if checked && self.items.iter().all(Item::matches) { Status::Pass } else { Status::Fail };
        self
    }

    pub fn inconclusive(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Inconclusive;
        self.reason = Some(reason.into());
        self
    }

    pub fn failed(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Fail;
        self.reason = Some(reason.into());
        self
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| !i.matches())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Tsv,
}

fn params_line(r: &Report) -> String {
    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

fn table(r: &Report, out: &mut String) {
    let _ = writeln!(out, "{} [{}] {}", r.check, r.status, params_line(r));
    if let Some(reason) = &r.reason {
        let _ = writeln!(out, "  reason: {reason}");
    }
    let w0 = r.items.iter().map(|i| i.name.len()).max().unwrap_or(0).max(4);
    let w1 = r.items.iter().map(|i| i.expected.len()).max().unwrap_or(0).max(8);
    let w2 = r.items.iter().map(|i| i.computed.len()).max().unwrap_or(0).max(8);
    for i in &r.items {
        let mark = match (i.is_informational(), i.matches()) {
            (true, _) => "",
            (false, true) => "ok",
            (false, false) => "MISMATCH",
        };
        let line = format!("  {:<w0$}  {:<w1$}  {:<w2$}  {mark}", i.name, i.expected, i.computed);
        let _ = writeln!(out, "{}", line.trim_end());
    }
}

fn tsv(r: &Report, out: &mut String) {
    let clean = |s: &str| s.replace(['\t', '\n'], " ");
    for i in &r.items {
        let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}", r.check, r.status, clean(&i.name), clean(&i.expected), clean(&i.computed), i.matches());
    }
    if r.items.is_empty() {
        let _ = writeln!(out, "{}\t{}\t\t\t\t", r.check, r.status);
    }
}

/// Renders reports; a single report is a JSON object, several are an
/// array.
pub fn render(reports: &[Report], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Table => reports.iter().for_each(|r| table(r, &mut out)),
        Format::Tsv => {
            out.push_str("check\tstatus\tname\texpected\tcomputed\tmatch\n");
            reports.iter().for_each(|r| tsv(r, &mut out));
        }
        Format::Json => {
            let s = match reports {
                [r] => serde_json::to_string_pretty(r),
                rs => serde_json::to_string_pretty(rs),
            };
            out.push_str(&s.expect("reports serialize"));
            out.push('\n');
        }
    }
    out
}

pub fn overall(reports: &[Report]) -> Status {
    reports.iter().map(|r| r.status).fold(Status::Pass, Status::combine)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_from_items() {
        let mut r = Report::new("x");
        r.item("a", "1/2", "1/2");
        assert_eq!(r.clone().finish().status, Status::Pass);
        r.item("b", "0", "1");
        let r = r.finish();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.mismatches().count(), 1);
        assert_eq!(Report::new("y").finish().status, Status::Fail);
        let mut info = Report::new("z");
        info.item("v", "", "3");
        assert_eq!(info.clone().finish().status, Status::Fail);
        info.item("w", "1", "1");
        assert_eq!(info.finish().status, Status::Pass);
    }

    #[test]
    fn combine_order() {
        assert_eq!(Status::Pass.combine(Status::Inconclusive), Status::Inconclusive);
        assert_eq!(Status::Inconclusive.combine(Status::Fail), Status::Fail);
        assert_eq!(overall(&[]), Status::Pass);
    }

    #[test]
    fn json_schema() {
        let mut r = Report::new("c").param("N", 32);
        r.item("v", "-1/3", "-1/3");
        let v: serde_json::Value = serde_json::from_str(&render(&[r.finish()], Format::Json)).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["check", "items", "params", "status"]);
        assert_eq!(v["status"], "pass");
        assert_eq!(v["items"][0]["computed"], "-1/3");
    }
}
