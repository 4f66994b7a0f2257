//! Loading arguments that name either a file or an inline value.

use std::fs;
use std::path::Path;

use serde_json::Value;
use topcube::cube::{Clopen, Constraint, Neighborhood};
use topcube::families::AdBound;
use topcube::logic::{parse_corpus, parse_sentence, CorpusEntry, CORPUS};
use topcube::{Error, FamilyOracle, FiniteFamily, Result};

/// Inline JSON when the argument starts like JSON, otherwise a file path.
pub fn json(arg: &str) -> Result<Value> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with(['{', '[', '"']) || trimmed.parse::<f64>().is_ok() {
        arg.to_string()
    } else {
        read(arg)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read {path}: {e}")))
}

pub fn parse<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    Ok(serde_json::from_value(json(arg)?)?)
}

pub fn family(arg: &str) -> Result<FiniteFamily> {
    FiniteFamily::from_json(&json(arg)?)
}

/// `cofinite` names the cofinite topology on ℕ; anything else is a listed family.
pub fn oracle(arg: &str) -> Result<FamilyOracle> {
    if arg == "cofinite" {
        return Ok(FamilyOracle::cofinite_topology());
    }
    Ok(family(arg)?.into())
}

pub fn clopen<S: Constraint>(arg: &str) -> Result<Clopen<S>> {
    Neighborhood::from_json(&json(arg)?)
}

pub fn nbhd<S: Constraint>(arg: &str) -> Result<Neighborhood<S>> {
    clopen(arg)?.into_basic()
}

/// `omega` or a finite cardinal.
pub fn ad_bound(arg: &str) -> Result<AdBound> {
    if arg == "omega" {
        return Ok(AdBound::Omega);
    }
    arg.parse()
        .map(AdBound::Finite)
        .map_err(|_| Error::Validation(format!("λ must be `omega` or a number, got `{arg}`")))
}

pub fn sentence(arg: &str) -> Result<topcube::logic::Formula> {
    parse_sentence(arg)
}

/// `corpus` for the bundled sentences, an existing file, or literal text.
pub fn sentences(arg: &str) -> Result<Vec<CorpusEntry>> {
    if arg == "corpus" {
        parse_corpus(CORPUS)
    } else if Path::new(arg).is_file() {
        parse_corpus(&read(arg)?)
    } else {
        parse_corpus(arg)
    }
}
