//! JSON file formats for images, maps and covers.
//!
//! Output is canonical: points in lexicographic order and map pairs ordered by domain point,
//! so that emitting a parsed canonical file reproduces it byte for byte.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digital::{DigitalImage, DigitalMap, LatticePoint};
use crate::oracle::CoverCertificate;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("image declares dimension {dim}, but point {index} has {found} coordinates")]
    Ragged {
        dim: usize,
        index: usize,
        found: usize,
    },
    #[error("image lists point {0} more than once")]
    DuplicatePoint(LatticePoint),
    #[error("image must have dimension at least 1 and at least one point")]
    EmptyImage,
    #[error("map sends {point} to {value}, which is not in the codomain")]
    TargetOutsideCodomain {
        point: LatticePoint,
        value: LatticePoint,
    },
    #[error("map pair source {0} is not in the domain")]
    SourceOutsideDomain(LatticePoint),
    #[error("map assigns {0} more than once")]
    DuplicateSource(LatticePoint),
    #[error("map gives no value at {0}")]
    MissingSource(LatticePoint),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageFile {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
}

impl ImageFile {
    pub fn from_image(x: &DigitalImage) -> Self {
        ImageFile {
            dim: x.dim(),
            points: x.points().iter().map(|p| p.coords().to_vec()).collect(),
        }
    }

    pub fn to_image(&self) -> Result<DigitalImage, FormatError> {
        if self.dim == 0 || self.points.is_empty() {
            return Err(FormatError::EmptyImage);
        }
        let mut seen = HashSet::new();
        let mut points = Vec::with_capacity(self.points.len());
        for (index, coords) in self.points.iter().enumerate() {
            if coords.len() != self.dim {
                return Err(FormatError::Ragged {
                    dim: self.dim,
                    index,
                    found: coords.len(),
                });
            }
            let p = LatticePoint::from_vec(coords.clone());
            if !seen.insert(p.clone()) {
                return Err(FormatError::DuplicatePoint(p));
            }
            points.push(p);
        }
        Ok(DigitalImage::new(self.dim, points).expect("validated above"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub domain: ImageFile,
    pub codomain: ImageFile,
    pub pairs: Vec<(Vec<i64>, Vec<i64>)>,
}

impl MapFile {
    pub fn from_map(f: &DigitalMap) -> Self {
        MapFile {
            domain: ImageFile::from_image(f.domain()),
            codomain: ImageFile::from_image(f.codomain()),
            pairs: f
                .pairs()
                .map(|(p, v)| (p.coords().to_vec(), v.coords().to_vec()))
                .collect(),
        }
    }

    pub fn to_map(&self) -> Result<DigitalMap, FormatError> {
        let domain = self.domain.to_image()?;
        let codomain = self.codomain.to_image()?;
        let mut values: Vec<Option<LatticePoint>> = vec![None; domain.len()];
        for (p, v) in &self.pairs {
            let p = LatticePoint::from_vec(p.clone());
            let v = LatticePoint::from_vec(v.clone());
            let i = domain
                .index_of(&p)
                .ok_or_else(|| FormatError::SourceOutsideDomain(p.clone()))?;
            if !codomain.contains(&v) {
                return Err(FormatError::TargetOutsideCodomain { point: p, value: v });
            }
            if values[i].replace(v).is_some() {
                return Err(FormatError::DuplicateSource(p));
            }
        }
        if let Some(i) = values.iter().position(Option::is_none) {
            return Err(FormatError::MissingSource(domain.point(i).clone()));
        }
        Ok(DigitalMap::from_fn(&domain, &codomain, |p| {
            values[domain.index_of(p).expect("domain point")]
                .clone()
                .expect("checked total")
        })
        .expect("validated above"))
    }
}

/// A cover together with the certificate of its verification.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub mode: String,
    pub k_domain: i64,
    pub k_codomain: i64,
    pub certificate: CoverCertificate,
    pub cover: MapFile,
}

/// Any of the file kinds, told apart by their fields.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum AnyFile {
    Cover(CoverFile),
    Map(MapFile),
    Image(ImageFile),
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))
}

pub fn emit<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}
