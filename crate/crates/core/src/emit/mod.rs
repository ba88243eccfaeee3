//! Human-readable proofs rendered from a witness's derivation, and the
//! versioned JSON witness format.
//!
//! Rendering is presentation only: every formula shown is printed from the
//! witness or from facts stored in its derivation, never recomputed.

mod json;
mod markup;
mod proof;

use std::fmt;

use thiserror::Error;

pub use json::{deserialize_witness, serialize_witness, SCHEMA};
pub use proof::render_proof;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProofFormat {
    Text,
    Latex,
}

impl std::str::FromStr for ProofFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<ProofFormat, String> {
        match s {
            "text" => Ok(ProofFormat::Text),
            "latex" => Ok(ProofFormat::Latex),
            other => Err(format!("unknown proof format {other:?}, expected text or latex")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectionKind {
    Claim,
    Recentering,
    Algebra,
    FixEps,
    DeltaChoice,
    BoundChain,
    Conclusion,
}

impl SectionKind {
    fn title(self) -> &'static str {
        match self {
            SectionKind::Claim => "Claim",
            SectionKind::Recentering => "Recentering",
            SectionKind::Algebra => "Algebra",
            SectionKind::FixEps => "Setup",
            SectionKind::DeltaChoice => "Choice",
            SectionKind::BoundChain => "Bound chain",
            SectionKind::Conclusion => "Conclusion",
        }
    }
}

/// Rendered lines of one proof section, already in the document's format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub kind: SectionKind,
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofDocument {
    pub format: ProofFormat,
    pub sections: Vec<Section>,
    /// Notes on corrected constants, referenced as `[n]` from the steps.
    pub erratum_footnotes: Vec<String>,
}

impl ProofDocument {
    pub fn section(&self, kind: SectionKind) -> Option<&Section> {
        self.sections.iter().find(|s| s.kind == kind)
    }

    pub fn render(&self) -> String {
        match self.format {
            ProofFormat::Text => self.render_text(),
            ProofFormat::Latex => self.render_latex(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            if s.kind == SectionKind::BoundChain {
                out.push_str("Bound chain.\n");
                for (i, line) in s.lines.iter().enumerate() {
                    out.push_str(&format!("  {}. {line}\n", i + 1));
                }
            } else {
                for line in &s.lines {
                    out.push_str(line);
                    out.push('\n');
                }
            }
            out.push('\n');
        }
        if !self.erratum_footnotes.is_empty() {
            out.push_str("Notes.\n");
            for (i, note) in self.erratum_footnotes.iter().enumerate() {
                out.push_str(&format!("  [{}] {note}\n", i + 1));
            }
            out.push('\n');
        }
        out.pop();
        out
    }

    fn render_latex(&self) -> String {
        let mut out = String::from("\\documentclass{article}\n\\usepackage{amsmath}\n\\begin{document}\n\n");
        for s in &self.sections {
            out.push_str(&format!("\\paragraph{{{}.}}\n", s.kind.title()));
            if s.kind == SectionKind::BoundChain {
                out.push_str("\\begin{enumerate}\n");
                for line in &s.lines {
                    out.push_str(&format!("\\item {line}\n"));
                }
                out.push_str("\\end{enumerate}\n");
            } else {
                for line in &s.lines {
                    out.push_str(line);
                    out.push('\n');
                }
            }
            out.push('\n');
        }
        if !self.erratum_footnotes.is_empty() {
            out.push_str("\\paragraph{Notes.}\n\\begin{enumerate}\n");
            for note in &self.erratum_footnotes {
                out.push_str(&format!("\\item {note}\n"));
            }
            out.push_str("\\end{enumerate}\n\n");
        }
        out.push_str("\\end{document}\n");
        out
    }
}

impl fmt::Display for ProofDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmitError {
    #[error("schema mismatch: expected {expected:?}, found {found:?}")]
    SchemaMismatch { expected: String, found: String },
    #[error("malformed witness document: {0}")]
    Malformed(String),
    #[error("derivation node {rule} lacks the fact {key:?}")]
    InconsistentDerivation { rule: &'static str, key: &'static str },
}
