//! Machine-readable check reports, shared by the verifiers and the
//! example suites and emitted as JSON by the CLI.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One checked identity: which identity, at which index assignment, and
/// the residual when it failed.
#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub id: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub indices: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub title: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub items: Vec<CheckItem>,
    pub passed: bool,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), notes: Vec::new(), items: Vec::new(), passed: true }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn pass(&mut self, id: impl Into<String>, indices: impl Into<String>) {
        self.items.push(CheckItem {
            id: id.into(),
            indices: indices.into(),
            status: Status::Pass,
            residual: None,
        });
    }

    pub fn fail(
        &mut self,
        id: impl Into<String>,
        indices: impl Into<String>,
        residual: Option<String>,
    ) {
        self.passed = false;
        self.items.push(CheckItem {
            id: id.into(),
            indices: indices.into(),
            status: Status::Fail,
            residual,
        });
    }

    pub fn skip(&mut self, id: impl Into<String>, indices: impl Into<String>) {
        self.items.push(CheckItem {
            id: id.into(),
            indices: indices.into(),
            status: Status::Skipped,
            residual: None,
        });
    }

    pub fn absorb(&mut self, other: Report) {
        self.passed &= other.passed;
        self.notes.extend(other.notes);
        self.items.extend(other.items);
    }

    /// Count of items with the given status.
    pub fn count(&self, status: Status) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }
}
