//! On-disk algebra descriptions.
//!
//! ```json
//! {"ring": "Z/9", "kind": "quaternion", "a": "2", "b": "5"}
//! {"ring": "Q", "kind": "doubled", "base": {"kind": "quaternion", "a": "-1", "b": "-1"}, "lambda": "-1"}
//! ```

use std::path::Path;

use cayley_core::{AlgebraKind, AlgebraSpec, Error, RingSpec};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub ring: String,
    #[serde(flatten)]
    pub kind: KindFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KindFile {
    M2,
    Quaternion { a: String, b: String },
    Zorn,
    Doubled { base: BaseFile, lambda: String },
}

/// The base of a doubling: an associative kind over the outer ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BaseFile {
    M2,
    Quaternion { a: String, b: String },
}

fn param(ring: RingSpec, field: &str, s: &str) -> Result<cayley_core::RingElem, Error> {
    ring.parse_elem(s).map_err(|e| Error::InvalidAlgebra {
        field: field.into(),
        reason: e.to_string(),
    })
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("algebra file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        AlgebraFile::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain strings serialize")
    }

    /// Validates the description and builds the algebra.
    pub fn to_spec(&self) -> Result<AlgebraSpec, Error> {
        let ring: RingSpec = self
            .ring
            .parse()
            .map_err(|e: Error| Error::InvalidAlgebra {
                field: "ring".into(),
                reason: e.to_string(),
            })?;
        match &self.kind {
            KindFile::M2 => Ok(AlgebraSpec::m2(ring)),
            KindFile::Zorn => Ok(AlgebraSpec::zorn(ring)),
            KindFile::Quaternion { a, b } => {
                AlgebraSpec::quaternion(ring, param(ring, "a", a)?, param(ring, "b", b)?)
            }
            KindFile::Doubled { base, lambda } => {
                let base = match base {
                    BaseFile::M2 => AlgebraSpec::m2(ring),
                    BaseFile::Quaternion { a, b } => AlgebraSpec::quaternion(
                        ring,
                        param(ring, "base.a", a)?,
                        param(ring, "base.b", b)?,
                    )
                    .map_err(|e| match e {
                        Error::InvalidAlgebra { field, reason } => Error::InvalidAlgebra {
                            field: format!("base.{field}"),
                            reason,
                        },
                        other => other,
                    })?,
                };
                AlgebraSpec::doubled(base, param(ring, "lambda", lambda)?)
            }
        }
    }

    pub fn from_spec(spec: &AlgebraSpec) -> Self {
        let kind = match spec.kind() {
            AlgebraKind::M2 => KindFile::M2,
            AlgebraKind::Zorn => KindFile::Zorn,
            AlgebraKind::Quaternion { a, b } => KindFile::Quaternion {
                a: a.to_string(),
                b: b.to_string(),
            },
            AlgebraKind::Doubled { base, lambda } => KindFile::Doubled {
                base: match base.as_ref() {
                    AlgebraKind::Quaternion { a, b } => BaseFile::Quaternion {
                        a: a.to_string(),
                        b: b.to_string(),
                    },
                    _ => BaseFile::M2,
                },
                lambda: lambda.to_string(),
            },
        };
        AlgebraFile {
            ring: spec.ring().to_string(),
            kind,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLES: [&str; 4] = [
        r#"{"ring": "Z/9", "kind": "quaternion", "a": "2", "b": "5"}"#,
        r#"{"ring": "F2", "kind": "zorn"}"#,
        r#"{"ring": "Q", "kind": "doubled", "base": {"kind": "quaternion", "a": "-1", "b": "-1"}, "lambda": "-1"}"#,
        r#"{"ring": "Z", "kind": "m2"}"#,
    ];

    #[test]
    fn samples_parse_and_round_trip() {
        for text in SAMPLES {
            let file = AlgebraFile::parse(text).unwrap();
            let again = AlgebraFile::parse(&file.to_json()).unwrap();
            assert_eq!(file, again);
            let spec = file.to_spec().unwrap();
            assert_eq!(AlgebraFile::from_spec(&spec), file);
        }
    }

    #[test]
    fn serialized_key_order() {
        let file = AlgebraFile::parse(SAMPLES[0]).unwrap();
        assert_eq!(
            file.to_json(),
            r#"{"ring":"Z/9","kind":"quaternion","a":"2","b":"5"}"#
        );
    }

    #[test]
    fn validation_names_the_field() {
        let field_of = |text: &str| match AlgebraFile::parse(text).unwrap().to_spec() {
            Err(Error::InvalidAlgebra { field, .. }) => field,
            other => panic!("expected a validation error, got {other:?}"),
        };
        assert_eq!(field_of(r#"{"ring": "F4", "kind": "m2"}"#), "ring");
        assert_eq!(
            field_of(r#"{"ring": "F5", "kind": "quaternion", "a": "0", "b": "1"}"#),
            "a"
        );
        assert_eq!(
            field_of(r#"{"ring": "F5", "kind": "quaternion", "a": "1", "b": "x"}"#),
            "b"
        );
        assert_eq!(
            field_of(r#"{"ring": "Q", "kind": "doubled", "base": {"kind": "m2"}, "lambda": "0"}"#),
            "lambda"
        );
        assert_eq!(
            field_of(
                r#"{"ring": "Q", "kind": "doubled", "base": {"kind": "quaternion", "a": "1", "b": "0"}, "lambda": "1"}"#
            ),
            "base.b"
        );
        assert!(AlgebraFile::parse(r#"{"ring": "Q", "kind": "sedenion"}"#).is_err());
        assert!(AlgebraFile::parse(r#"{"ring": "Q"}"#).is_err());
    }
}
