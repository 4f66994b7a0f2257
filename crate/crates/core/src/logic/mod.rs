//! First-order Boolean algebra with a unary predicate `P`, read over the
//! powerset of a small finite set with `P` interpreted as a family.
//!
//! Universal sentences define closed classes of families. For a family
//! outside such a class, [`certify_exclusion`] produces a basic
//! neighborhood that contains the family and misses the class.

mod normal;
mod parser;
mod semantics;
mod syntax;

use crate::error::{Error, Result};

pub use normal::{to_universal, universal_form, Literal, UniversalForm};
pub use parser::parse_sentence;
pub use semantics::{
    certify_exclusion, check_collection, defined_class, defined_masks, eval, holds, Assignment,
    Certificate, CollectionReport, Structure, MAX_CLASS_N, MAX_STRUCTURE_N,
};
pub use syntax::{Formula, Term};

/// The sentence corpus shipped with the crate.
pub const CORPUS: &str = include_str!("../../corpus/sentences.txt");

/// A sentence read from a corpus, with the line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub line: usize,
    pub text: String,
    pub formula: Formula,
}

/// Reads one sentence per line; blank lines and `#` comments are skipped.
/// Syntax errors report the line within the whole text.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let formula = parse_sentence(body).map_err(|e| match e {
            Error::Syntax { column, message, .. } => Error::Syntax {
                line: i + 1,
                column: column + raw.find(body).unwrap_or(0),
                message,
            },
            other => other,
        })?;
        out.push(CorpusEntry {
            line: i + 1,
            text: body.to_string(),
            formula,
        });
    }
    Ok(out)
}
