//! JSON solution documents.
//!
//! Coefficients are exact rationals written as decimal integer strings.
//! Serialization is canonical: terms sorted by degree then lexicographically,
//! reduced fractions with positive denominators, pretty-printed with a
//! trailing newline. Parsing a canonical document and writing it back gives
//! the same bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use kv_core::{DufloSeries, LieElt, Rational, TAutElt, Word};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_VERSION: &str = "1";

/// Which equations the stored automorphism is meant to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocVariant {
    SolKV,
    KV,
    KRV,
}

impl DocVariant {
    pub fn name(self) -> &'static str {
        match self {
            DocVariant::SolKV => "SolKV",
            DocVariant::KV => "KV",
            DocVariant::KRV => "KRV",
        }
    }
}

impl fmt::Display for DocVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DocVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "SolKV" => Ok(DocVariant::SolKV),
            "KV" => Ok(DocVariant::KV),
            "KRV" => Ok(DocVariant::KRV),
            other => Err(format!(
                "unknown variant {other:?} (expected SolKV, KV or KRV)"
            )),
        }
    }
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: unsupported format version {found:?}")]
    Version { field: String, found: String },
    #[error("{field}: not a Lyndon word: {word:?}")]
    NotLyndon { field: String, word: String },
    #[error("{field}: word {word:?} exceeds cap {cap}")]
    WordTooLong {
        field: String,
        word: String,
        cap: usize,
    },
    #[error("{field}: duplicate word {word:?}")]
    DuplicateWord { field: String, word: String },
    #[error("{field}: duplicate Duflo index {k}")]
    DuplicateIndex { field: String, k: usize },
    #[error("{field}: Duflo index {k} outside 2..={cap}")]
    DufloIndex { field: String, k: usize, cap: usize },
    #[error("{field}: zero denominator")]
    ZeroDenominator { field: String },
    #[error("{field}: not an integer: {value:?}")]
    Integer { field: String, value: String },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: String,
    cap: usize,
    f1: Vec<RawTerm>,
    f2: Vec<RawTerm>,
    duflo: Vec<RawDuflo>,
    variant: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    word: String,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDuflo {
    k: usize,
    num: String,
    den: String,
}

/// A validated document: exponents in the Lyndon basis, the stated Duflo
/// coefficients, and the intended variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionDocument {
    pub cap: usize,
    pub f1: LieElt,
    pub f2: LieElt,
    pub duflo: BTreeMap<usize, Rational>,
    pub variant: DocVariant,
}

impl SolutionDocument {
    /// The identity automorphism, a solution at level 1.
    pub fn seed() -> Self {
        SolutionDocument::from_automorphism(&TAutElt::identity(1), None, DocVariant::SolKV)
    }

    pub fn from_automorphism(
        f: &TAutElt,
        duflo: Option<&DufloSeries>,
        variant: DocVariant,
    ) -> Self {
        SolutionDocument {
            cap: f.cap(),
            f1: f.f1().clone(),
            f2: f.f2().clone(),
            duflo: duflo
                .map(|d| d.iter().map(|(k, c)| (k, c.clone())).collect())
                .unwrap_or_default(),
            variant,
        }
    }

    /// The normalized automorphism with these exponents.
    pub fn automorphism(&self) -> TAutElt {
        TAutElt::new(self.f1.clone(), self.f2.clone()).expect("exponents share the cap")
    }

    pub fn to_json(&self) -> String {
        let raw = RawDocument {
            format_version: FORMAT_VERSION.to_string(),
            cap: self.cap,
            f1: raw_terms(&self.f1),
            f2: raw_terms(&self.f2),
            duflo: self
                .duflo
                .iter()
                .map(|(&k, c)| RawDuflo {
                    k,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
            variant: self.variant.name().to_string(),
        };
        let mut s = serde_json::to_string_pretty(&raw).expect("plain data serializes");
        s.push('\n');
        s
    }
}

fn raw_terms(e: &LieElt) -> Vec<RawTerm> {
    e.terms()
        .map(|(w, c)| RawTerm {
            word: w.to_string(),
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect()
}

fn parse_int(field: String, value: &str) -> Result<BigInt, DocumentError> {
    BigInt::from_str(value).map_err(|_| DocumentError::Integer {
        field,
        value: value.to_string(),
    })
}

fn parse_fraction(field: &str, num: &str, den: &str) -> Result<Rational, DocumentError> {
    let n = parse_int(format!("{field}.num"), num)?;
    let d = parse_int(format!("{field}.den"), den)?;
    if d.is_zero() {
        return Err(DocumentError::ZeroDenominator {
            field: format!("{field}.den"),
        });
    }
    Ok(Rational::new(n, d))
}

fn parse_terms(name: &str, cap: usize, raw: &[RawTerm]) -> Result<LieElt, DocumentError> {
    let mut seen = BTreeSet::new();
    let mut terms = Vec::new();
    for (i, t) in raw.iter().enumerate() {
        let field = format!("{name}[{i}]");
        let word: Word = match t.word.parse() {
            Ok(w) if !t.word.is_empty() && t.word != "1" => w,
            _ => {
                return Err(DocumentError::NotLyndon {
                    field: format!("{field}.word"),
                    word: t.word.clone(),
                })
            }
        };
        if !word.is_lyndon() {
            return Err(DocumentError::NotLyndon {
                field: format!("{field}.word"),
                word: t.word.clone(),
            });
        }
        if word.len() > cap {
            return Err(DocumentError::WordTooLong {
                field: format!("{field}.word"),
                word: t.word.clone(),
                cap,
            });
        }
        if !seen.insert(word) {
            return Err(DocumentError::DuplicateWord {
                field: format!("{field}.word"),
                word: t.word.clone(),
            });
        }
        terms.push((word, parse_fraction(&field, &t.num, &t.den)?));
    }
    Ok(LieElt::from_lyndon_terms(cap, terms).expect("words checked above"))
}

pub fn parse_document(text: &str) -> Result<SolutionDocument, DocumentError> {
    let raw: RawDocument = serde_json::from_str(text)?;
    if raw.format_version != FORMAT_VERSION {
        return Err(DocumentError::Version {
            field: "format_version".into(),
            found: raw.format_version,
        });
    }
    if raw.cap == 0 || raw.cap > kv_core::word::MAX_WORD_LEN {
        return Err(DocumentError::Invalid {
            field: "cap".into(),
            message: format!(
                "cap {} outside 1..={}",
                raw.cap,
                kv_core::word::MAX_WORD_LEN
            ),
        });
    }
    let variant = raw
        .variant
        .parse()
        .map_err(|message| DocumentError::Invalid {
            field: "variant".into(),
            message,
        })?;
    let f1 = parse_terms("f1", raw.cap, &raw.f1)?;
    let f2 = parse_terms("f2", raw.cap, &raw.f2)?;
    let mut duflo = BTreeMap::new();
    for (i, d) in raw.duflo.iter().enumerate() {
        let field = format!("duflo[{i}]");
        if !(2..=raw.cap).contains(&d.k) {
            return Err(DocumentError::DufloIndex {
                field: format!("{field}.k"),
                k: d.k,
                cap: raw.cap,
            });
        }
        let c = parse_fraction(&field, &d.num, &d.den)?;
        if duflo.insert(d.k, c).is_some() {
            return Err(DocumentError::DuplicateIndex {
                field: format!("{field}.k"),
                k: d.k,
            });
        }
    }
    duflo.retain(|_, c| !c.is_zero());
    Ok(SolutionDocument {
        cap: raw.cap,
        f1,
        f2,
        duflo,
        variant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEED: &str =
        r#"{"format_version":"1","cap":1,"f1":[],"f2":[],"duflo":[],"variant":"SolKV"}"#;

    #[test]
    fn seed_parses_to_identity() {
        let doc = parse_document(SEED).unwrap();
        assert_eq!(doc, SolutionDocument::seed());
        assert!(doc.automorphism().is_identity());
    }

    #[test]
    fn canonical_roundtrip() {
        let text = SolutionDocument::seed().to_json();
        assert_eq!(parse_document(&text).unwrap().to_json(), text);
    }

    #[test]
    fn rejects_bad_documents() {
        let word = SEED.replace(r#""f1":[]"#, r#""f1":[{"word":"yx","num":"1","den":"1"}]"#);
        let word = word.replace(r#""cap":1"#, r#""cap":2"#);
        let err = parse_document(&word).unwrap_err().to_string();
        assert!(err.contains("not a Lyndon word"), "{err}");

        let den = SEED.replace(r#""f1":[]"#, r#""f1":[{"word":"y","num":"1","den":"0"}]"#);
        let err = parse_document(&den).unwrap_err().to_string();
        assert!(err.contains("zero denominator"), "{err}");

        let dup = SEED.replace(
            r#""f1":[]"#,
            r#""f1":[{"word":"y","num":"1","den":"2"},{"word":"y","num":"1","den":"3"}]"#,
        );
        let err = parse_document(&dup).unwrap_err().to_string();
        assert!(err.contains("duplicate word"), "{err}");

        let err = parse_document("{not json").unwrap_err().to_string();
        assert!(err.contains("malformed JSON"), "{err}");
    }
}
