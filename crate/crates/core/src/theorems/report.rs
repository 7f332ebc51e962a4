//! Verification records and reports.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::field::{Elem, Field};
use crate::quadform::{BrauerClass, WittClass};

/// Claim identifiers accepted by the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    Prop1,
    Prop2,
    Thm1,
    Cor1,
    Cor2,
    Thm2,
    Cor3,
    Cor4,
    Thm3,
    Thm4,
    Remark2,
    Remark3,
    Example1,
}

impl Claim {
    pub const ALL: [Claim; 13] = [
        Claim::Prop1,
        Claim::Prop2,
        Claim::Thm1,
        Claim::Cor1,
        Claim::Cor2,
        Claim::Thm2,
        Claim::Cor3,
        Claim::Cor4,
        Claim::Thm3,
        Claim::Thm4,
        Claim::Remark2,
        Claim::Remark3,
        Claim::Example1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Claim::Prop1 => "prop1",
            Claim::Prop2 => "prop2",
            Claim::Thm1 => "thm1",
            Claim::Cor1 => "cor1",
            Claim::Cor2 => "cor2",
            Claim::Thm2 => "thm2",
            Claim::Cor3 => "cor3",
            Claim::Cor4 => "cor4",
            Claim::Thm3 => "thm3",
            Claim::Thm4 => "thm4",
            Claim::Remark2 => "remark2",
            Claim::Remark3 => "remark3",
            Claim::Example1 => "example1",
        }
    }
}

impl std::str::FromStr for Claim {
    type Err = String;
    fn from_str(s: &str) -> Result<Claim, String> {
        Claim::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| format!("unknown claim `{s}`"))
    }
}

impl std::fmt::Display for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Claim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Ordered string key/value pairs, serialized as a JSON object.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(pub Vec<(String, String)>);

impl Params {
    pub fn new() -> Params {
        Params(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Params {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

/// A comparable summary of a form: exact dimension, Arf class, Clifford
/// class and radical dimension. Fields a claim does not predict are `None`
/// on both sides.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Record {
    pub dim: Option<usize>,
    pub arf: Option<String>,
    pub arf_bit: Option<u8>,
    pub clifford: Option<String>,
    pub radical_dim: Option<usize>,
}

impl Record {
    pub fn witt(w: &WittClass) -> Record {
        Record {
            dim: Some(w.dim + w.radical_dim),
            arf: Some(w.field.format(w.arf)),
            arf_bit: Some(w.arf_bit()),
            clifford: None,
            radical_dim: Some(w.radical_dim),
        }
    }

    pub fn arf_only(f: &Field, arf: Elem) -> Record {
        Record { arf: Some(f.format(arf)), arf_bit: Some(f.absolute_trace(arf).0 as u8), ..Record::default() }
    }

    pub fn with_clifford(mut self, f: &Field, c: &BrauerClass) -> Record {
        self.clifford = Some(c.format(f));
        self
    }

    /// Keeps only the fields that are set in `like`.
    pub fn project(&self, like: &Record) -> Record {
        Record {
            dim: like.dim.and(self.dim),
            arf: like.arf.as_ref().and(self.arf.clone()),
            arf_bit: like.arf_bit.and(self.arf_bit),
            clifford: like.clifford.as_ref().and(self.clifford.clone()),
            radical_dim: like.radical_dim.and(self.radical_dim),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    DocumentedDiscrepancy,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub claim: Claim,
    pub params: Params,
    pub predicted: Record,
    pub computed: Record,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Params>,
    /// Wall time in milliseconds; left out unless timings were requested,
    /// so that reports are reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<f64>,
}

impl Report {
    /// Pass iff the records agree on every predicted field.
    pub fn compare(claim: Claim, params: Params, predicted: Record, computed: Record) -> Report {
        let computed = computed.project(&predicted);
        let verdict = if computed == predicted { Verdict::Pass } else { Verdict::Fail };
        Report { claim, params, predicted, computed, verdict, note: None, details: None, ms: None }
    }

    pub fn failure(claim: Claim, params: Params, predicted: Record, error: String) -> Report {
        Report {
            claim,
            params,
            predicted,
            computed: Record::default(),
            verdict: Verdict::Fail,
            note: Some(error),
            details: None,
            ms: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Report {
        let note = note.into();
        self.note = Some(match self.note.take() {
            Some(old) => format!("{old}; {note}"),
            None => note,
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}
