//! On-disk formats: the TOML model format, measure files, and helpers shared
//! by the CLI. Field names here are the format reference; see README.md.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::branched::{BranchedSurface, ModelError, PortKind, new_branched_surface};

/// Raw description of a branched surface, mirroring the model file layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
    #[serde(default)]
    pub sections: Vec<SectionSpecItem>,
    #[serde(default)]
    pub curves: Vec<CurveSpecItem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionSpecItem {
    pub name: String,
    pub genus: u32,
    #[serde(default)]
    pub ports: Vec<PortSpecItem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortSpecItem {
    pub name: String,
    /// "internal" or "peripheral".
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpecItem {
    pub name: String,
    /// Incident ports as "Section.port", in declaration order.
    pub ports: Vec<String>,
    /// Allowed pairs in resolution priority order.
    pub pairs: Vec<PairSpecItem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSpecItem {
    pub ends: [String; 2],
    #[serde(default)]
    pub flip: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("model file: {0}")]
    Model(#[from] toml::de::Error),
    #[error(transparent)]
    Invalid(#[from] ModelError),
    #[error("measure file: {0}")]
    Measure(String),
}

impl BranchedSurface {
    /// Inverse of construction: a description that rebuilds this surface.
    pub fn to_spec(&self) -> SurfaceSpec {
        let sections = self
            .sections()
            .iter()
            .map(|s| SectionSpecItem {
                name: s.name.clone(),
                genus: s.genus,
                ports: s
                    .ports
                    .iter()
                    .map(|pid| {
                        let p = self.port(*pid);
                        match &p.kind {
                            PortKind::Internal => PortSpecItem { name: p.name.clone(), kind: "internal".into(), slope: None },
                            PortKind::Peripheral(slope) => PortSpecItem {
                                name: p.name.clone(),
                                kind: "peripheral".into(),
                                slope: Some(slope.label().to_string()),
                            },
                        }
                    })
                    .collect(),
            })
            .collect();
        let curves = self
            .curves()
            .iter()
            .map(|c| CurveSpecItem {
                name: c.name.clone(),
                ports: c.incident.iter().map(|p| self.port_full_name(*p)).collect(),
                pairs: c
                    .pairs
                    .iter()
                    .map(|pr| PairSpecItem {
                        ends: [self.port_full_name(pr.ends.0), self.port_full_name(pr.ends.1)],
                        flip: pr.flip,
                    })
                    .collect(),
            })
            .collect();
        SurfaceSpec { name: self.name.clone(), meta: self.meta.clone(), sections, curves }
    }
}

pub fn parse_model(text: &str) -> Result<BranchedSurface, FormatError> {
    let spec: SurfaceSpec = toml::from_str(text)?;
    Ok(new_branched_surface(&spec)?)
}

pub fn serialize_model(bs: &BranchedSurface) -> String {
    toml::to_string(&bs.to_spec()).expect("model spec serializes")
}

/// Measure files are a flat TOML table of `section = weight` entries.
pub fn parse_measure_table(text: &str) -> Result<BTreeMap<String, u64>, FormatError> {
    toml::from_str(text).map_err(|e| FormatError::Measure(e.to_string()))
}

pub fn serialize_measure_table(weights: &BTreeMap<String, u64>) -> String {
    toml::to_string(weights).expect("measure table serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_rg, build_rgi};

    #[test]
    fn model_round_trip_is_identity() {
        for g in 1..=3 {
            let m = build_rg(g).unwrap();
            let text = serialize_model(&m.surface);
            let back = parse_model(&text).unwrap();
            assert_eq!(back, m.surface);
        }
        let m = build_rgi(2, 1, 3).unwrap();
        let back = parse_model(&serialize_model(&m.surface)).unwrap();
        assert_eq!(back, m.surface);
    }

    #[test]
    fn measure_table_round_trip() {
        let mut w = BTreeMap::new();
        w.insert("P".to_string(), 4u64);
        w.insert("A'".to_string(), 2u64);
        let text = serialize_measure_table(&w);
        assert_eq!(parse_measure_table(&text).unwrap(), w);
    }

    #[test]
    fn model_parse_reports_bad_toml() {
        assert!(matches!(parse_model("sections = 3"), Err(FormatError::Model(_))));
    }
}
