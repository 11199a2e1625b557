//! Deterministic scenario reports: every claim carries a provenance tag
//! (computed | certified | evidence | theorem-cited) and a status. A report
//! passes when no line failed; theorem-cited conclusions are never
//! counted as computed results.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    Certified,
    Evidence,
    TheoremCited,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Cited,
    Note,
}

#[derive(Clone, Debug, Serialize)]
pub struct Line {
    pub claim: String,
    pub provenance: Provenance,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scenario: String,
    pub params: BTreeMap<String, String>,
    pub lines: Vec<Line>,
    pub passed: bool,
}

impl Report {
    pub fn new(scenario: &str) -> Self {
        Report {
            scenario: scenario.to_string(),
            params: BTreeMap::new(),
            lines: vec![],
            passed: true,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn push(
        &mut self,
        provenance: Provenance,
        ok: bool,
        claim: impl Into<String>,
        detail: Option<serde_json::Value>,
    ) {
        let status = if ok { Status::Pass } else { Status::Fail };
        if !ok {
            self.passed = false;
        }
        self.lines.push(Line {
            claim: claim.into(),
            provenance,
            status,
            detail,
        });
    }

    pub fn computed(&mut self, ok: bool, claim: impl Into<String>) {
        self.push(Provenance::Computed, ok, claim, None);
    }

    pub fn certified(
        &mut self,
        ok: bool,
        claim: impl Into<String>,
        detail: Option<serde_json::Value>,
    ) {
        self.push(Provenance::Certified, ok, claim, detail);
    }

    pub fn evidence(
        &mut self,
        ok: bool,
        claim: impl Into<String>,
        detail: Option<serde_json::Value>,
    ) {
        self.push(Provenance::Evidence, ok, claim, detail);
    }

    /// A conclusion imported from the paper's cited theorems; the computed
    /// premises appear as their own lines.
    pub fn cited(&mut self, claim: impl Into<String>) {
        self.lines.push(Line {
            claim: claim.into(),
            provenance: Provenance::TheoremCited,
            status: Status::Cited,
            detail: None,
        });
    }

    pub fn note(&mut self, claim: impl Into<String>) {
        self.lines.push(Line {
            claim: claim.into(),
            provenance: Provenance::Computed,
            status: Status::Note,
            detail: None,
        });
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario: {}\n", self.scenario));
        for (k, v) in &self.params {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        for line in &self.lines {
            let status = match line.status {
                Status::Pass => "PASS ",
                Status::Fail => "FAIL ",
                Status::Cited => "CITED",
                Status::Note => "NOTE ",
            };
            let prov = match line.provenance {
                Provenance::Computed => "computed",
                Provenance::Certified => "certified",
                Provenance::Evidence => "evidence",
                Provenance::TheoremCited => "theorem-cited",
            };
            out.push_str(&format!("[{status}] ({prov}) {}\n", line.claim));
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }

    pub fn render(&self, format: &str) -> String {
        match format {
            "json" => self.to_json(),
            _ => self.to_text(),
        }
    }
}
