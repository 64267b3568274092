//! JSON scheme documents.
//!
//! ```json
//! {
//!   "players":  [{"label": "P1", "dim": 3}, ...],
//!   "encoding": {"builtin": "cgl23"}
//!             | {"threshold": {"t": 2, "n": 3, "q": 3}}
//!             | {"matrix": {"rows": 27, "cols": 3, "entries": [[re, im], ...]}}
//!             | {"kraus": [{"rows": .., "cols": .., "entries": [...]}, ...]},
//!   "access":   [["P1", "P2"], ...],
//!   "ensemble": [{"p": 0.5, "amplitudes": [[re, im], ...]}, ...]
//! }
//! ```
//!
//! `players` and `access` may be omitted for `builtin` and `threshold`
//! encodings, in which case the generator's own values are used. A `kraus`
//! encoding is dilated with an extra player `env`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::access::AccessStructure;
use crate::error::{QssError, Result};
use crate::linalg::{ComplexMatrix, StateVector, SubsystemLayout};
use crate::schemes::{cgl23_scheme, dilated_scheme, threshold_scheme, EncodingIsometry, SchemeSpec, SecretEnsemble};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub players: Option<Vec<PlayerDoc>>,
    pub encoding: EncodingDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub access: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<Vec<EnsembleItemDoc>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerDoc {
    pub label: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EncodingDoc {
    Builtin(String),
    Threshold(ThresholdDoc),
    Matrix(MatrixDoc),
    Kraus(Vec<MatrixDoc>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdDoc {
    pub t: usize,
    pub n: usize,
    pub q: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleItemDoc {
    pub p: f64,
    pub amplitudes: Vec<[f64; 2]>,
}

fn complex(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

fn pairs(zs: &[Complex64]) -> Vec<[f64; 2]> {
    zs.iter().map(|z| [z.re, z.im]).collect()
}

impl MatrixDoc {
    fn to_matrix(&self, field: &str) -> Result<ComplexMatrix> {
        ComplexMatrix::new(self.rows, self.cols, complex(&self.entries)).map_err(|e| e.context(field))
    }

    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), entries: pairs(m.data()) }
    }
}

pub fn parse_document(text: &str) -> Result<SchemeDocument> {
    serde_json::from_str(text).map_err(|e| QssError::Parse(e.to_string()))
}

pub fn load_scheme_str(text: &str) -> Result<SchemeSpec> {
    load_scheme(&parse_document(text)?)
}

fn players_layout(players: &[PlayerDoc]) -> Result<SubsystemLayout> {
    for (i, p) in players.iter().enumerate() {
        if p.dim == 0 {
            return Err(QssError::input(format!("players[{i}].dim must be at least 1")));
        }
    }
    SubsystemLayout::new(players.iter().map(|p| (p.label.clone(), p.dim))).map_err(|e| e.context("players"))
}

fn access_structure(players: &[String], access: &[Vec<String>]) -> Result<AccessStructure> {
    AccessStructure::new(players.to_vec(), access.to_vec()).map_err(|e| e.context("access"))
}

fn ensemble(items: &[EnsembleItemDoc], dim: usize) -> Result<SecretEnsemble> {
    let mut out = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let state = StateVector::new(complex(&item.amplitudes)).map_err(|e| e.context(format!("ensemble[{i}]")))?;
        out.push((item.p, state));
    }
    SecretEnsemble::new(dim, out).map_err(|e| e.context("ensemble"))
}

/// Validates a document into a scheme.
pub fn load_scheme(doc: &SchemeDocument) -> Result<SchemeSpec> {
    let mut scheme = match &doc.encoding {
        EncodingDoc::Builtin(name) => match name.as_str() {
            "cgl23" => cgl23_scheme(),
            other => return Err(QssError::input(format!("encoding.builtin: unknown scheme '{other}'"))),
        },
        EncodingDoc::Threshold(t) => threshold_scheme(t.t, t.n, t.q).map_err(|e| e.context("encoding.threshold"))?,
        EncodingDoc::Matrix(m) => {
            let players =
                doc.players.as_deref().ok_or_else(|| QssError::input("players: required for a matrix encoding"))?;
            let layout = players_layout(players)?;
            let access =
                doc.access.as_deref().ok_or_else(|| QssError::input("access: required for a matrix encoding"))?;
            let matrix = m.to_matrix("encoding.matrix")?;
            let encoding = EncodingIsometry::new(matrix, layout.clone()).map_err(|e| e.context("encoding.matrix"))?;
            let labels: Vec<String> = layout.labels().iter().map(|s| s.to_string()).collect();
            let gamma = access_structure(&labels, access)?;
            let d = encoding.secret_dim();
            SchemeSpec::new("custom", SecretEnsemble::uniform_basis(d), encoding, gamma)?
        }
        EncodingDoc::Kraus(components) => {
            let players =
                doc.players.as_deref().ok_or_else(|| QssError::input("players: required for a kraus encoding"))?;
            let layout = players_layout(players)?;
            let access =
                doc.access.as_deref().ok_or_else(|| QssError::input("access: required for a kraus encoding"))?;
            let mats = components
                .iter()
                .enumerate()
                .map(|(i, c)| c.to_matrix(&format!("encoding.kraus[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let labels: Vec<String> = layout.labels().iter().map(|s| s.to_string()).collect();
            let gamma = access_structure(&labels, access)?;
            let d = mats.first().map_or(0, ComplexMatrix::cols);
            dilated_scheme("custom", &mats, &layout, &gamma, SecretEnsemble::uniform_basis(d.max(1)))?
        }
    };

    if matches!(doc.encoding, EncodingDoc::Builtin(_) | EncodingDoc::Threshold(_)) {
        if let Some(players) = &doc.players {
            let layout = players_layout(players)?;
            if layout.dims() != scheme.encoding().output_layout().dims() {
                return Err(QssError::input(format!(
                    "players: dimensions {:?} do not match the generator's {:?}",
                    layout.dims(),
                    scheme.encoding().output_layout().dims()
                )));
            }
            let labels: Vec<String> = players.iter().map(|p| p.label.clone()).collect();
            scheme = scheme.relabeled(&labels)?;
        }
        if let Some(access) = &doc.access {
            let gamma = access_structure(scheme.players(), access)?;
            scheme = SchemeSpec::new(
                scheme.name().to_string(),
                scheme.default_ensemble().clone(),
                scheme.encoding().clone(),
                gamma,
            )?;
        }
    }
    if let Some(items) = &doc.ensemble {
        let e = ensemble(items, scheme.secret_dim())?;
        scheme = scheme.with_default_ensemble(e)?;
    }
    if let Some(name) = &doc.name {
        scheme = scheme.with_name(name.clone());
    }
    Ok(scheme)
}

impl SchemeDocument {
    /// Explicit-matrix document describing `scheme`.
    pub fn from_scheme(scheme: &SchemeSpec) -> Self {
        let layout = scheme.encoding().output_layout();
        Self {
            name: Some(scheme.name().to_string()),
            players: Some(layout.parts().iter().map(|(l, d)| PlayerDoc { label: l.clone(), dim: *d }).collect()),
            encoding: EncodingDoc::Matrix(MatrixDoc::from_matrix(scheme.encoding().matrix())),
            access: Some(scheme.gamma().minimal_authorized().to_vec()),
            ensemble: Some(
                scheme
                    .default_ensemble()
                    .items()
                    .iter()
                    .map(|(p, s)| EnsembleItemDoc { p: *p, amplitudes: pairs(s.amplitudes()) })
                    .collect(),
            ),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_reference() {
        let s = load_scheme_str(r#"{"encoding": {"builtin": "cgl23"}}"#).unwrap();
        assert_eq!(s, cgl23_scheme());
        assert!(load_scheme_str(r#"{"encoding": {"builtin": "nope"}}"#).is_err());
    }

    #[test]
    fn explicit_matrix_matches_builtin() {
        let cgl = cgl23_scheme();
        let text = SchemeDocument::from_scheme(&cgl).to_json();
        let loaded = load_scheme_str(&text).unwrap();
        assert_eq!(loaded.encoding().matrix(), cgl.encoding().matrix());
        assert_eq!(loaded.with_name("cgl23"), cgl);
    }

    #[test]
    fn non_isometry_names_dilation() {
        let text = r#"{
            "players": [{"label": "P1", "dim": 2}],
            "encoding": {"matrix": {"rows": 2, "cols": 2, "entries": [[1,0],[1,0],[0,0],[1,0]]}},
            "access": [["P1"]]
        }"#;
        match load_scheme_str(text) {
            Err(QssError::Encoding(msg)) => assert!(msg.contains("kraus")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_dim_is_parse_error() {
        let text = r#"{"players": [{"label": "P1"}], "encoding": {"builtin": "cgl23"}}"#;
        assert!(matches!(load_scheme_str(text), Err(QssError::Parse(_))));
    }

    #[test]
    fn field_level_diagnostics() {
        let text = r#"{
            "players": [{"label": "P1", "dim": 2}],
            "encoding": {"matrix": {"rows": 2, "cols": 2, "entries": [[1,0],[0,0],[0,0],[1,0]]}},
            "access": [["P7"]]
        }"#;
        let err = load_scheme_str(text).unwrap_err().to_string();
        assert!(err.contains("access") && err.contains("P7"), "{err}");
        let text = r#"{"encoding": {"threshold": {"t": 2, "n": 3, "q": 3}},
                       "ensemble": [{"p": 0.4, "amplitudes": [[1,0],[0,0],[0,0]]}]}"#;
        assert!(load_scheme_str(text).unwrap_err().to_string().contains("sum"));
    }

    #[test]
    fn kraus_documents_are_dilated() {
        let text = r#"{
            "players": [{"label": "P1", "dim": 2}],
            "encoding": {"kraus": [
                {"rows": 2, "cols": 2, "entries": [[1,0],[0,0],[0,0],[0,0]]},
                {"rows": 2, "cols": 2, "entries": [[0,0],[0,0],[0,0],[1,0]]}
            ]},
            "access": [["P1"]]
        }"#;
        let s = load_scheme_str(text).unwrap();
        assert_eq!(s.players(), &["P1".to_string(), "env".to_string()]);
        assert_eq!(s.gamma().minimal_authorized(), &[vec!["P1".to_string()]]);
    }

    #[test]
    fn builtin_relabel_and_dims() {
        let text = r#"{"players": [{"label":"A","dim":3},{"label":"B","dim":3},{"label":"C","dim":3}],
                       "encoding": {"builtin": "cgl23"}}"#;
        let s = load_scheme_str(text).unwrap();
        assert_eq!(s.gamma().minimal_authorized()[0], vec!["A".to_string(), "B".to_string()]);
        let bad = r#"{"players": [{"label":"A","dim":2}], "encoding": {"builtin": "cgl23"}}"#;
        assert!(load_scheme_str(bad).is_err());
    }
}
