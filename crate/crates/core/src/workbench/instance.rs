use std::path::Path;

use serde::{Deserialize, Serialize};

use super::json::{digest, to_canonical_string, to_canonical_vec};
use super::{WbResult, WorkbenchError};
use crate::euclid::EuclideanPointSet;
use crate::linalg::norm;
use crate::sphere::{apply, north_pole, rotation_between, SphericalPointSet};

pub const SCHEMA_VERSION: u32 = 1;

/// Spherical points must have norm within this of 1 when loaded.
pub const LOAD_NORM_TOLERANCE: f64 = 1e-9;

/// Axes closer than this to the north pole are not rotated.
const AXIS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    Euclidean,
    Spherical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapSpec {
    pub axis: Vec<f64>,
    pub rho: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub generator: String,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Rows of the rotation applied on load to move the cap axis to the
    /// north pole.
    #[serde(default)]
    pub rotation: Option<Vec<Vec<f64>>>,
}

/// A point set on disk. For spherical instances `dim` is the sphere
/// dimension `d` and every point has `d + 1` coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub kind: InstanceKind,
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    #[serde(default)]
    pub cap: Option<CapSpec>,
    #[serde(default)]
    pub premise_radius: Option<f64>,
    pub metadata: Metadata,
}

impl InstanceFile {
    /// Parses and validates an instance. Spherical points are normalized and,
    /// when the cap axis is not the north pole, everything is rotated so that
    /// it is; the rotation is recorded in the metadata.
    pub fn from_json(text: &str) -> WbResult<Self> {
        let raw: InstanceFile = serde_json::from_str(text)?;
        raw.validated()
    }

    pub fn load(path: &Path) -> WbResult<Self> {
        Self::from_json(&read(path)?)
    }

    /// Digest of the file's canonical form, binding certificates to it.
    pub fn digest_of_text(text: &str) -> WbResult<String> {
        let raw: InstanceFile = serde_json::from_str(text)?;
        raw.digest()
    }

    pub fn digest(&self) -> WbResult<String> {
        Ok(digest(&to_canonical_vec(self)?))
    }

    pub fn to_json(&self) -> WbResult<String> {
        to_canonical_string(self)
    }

    pub fn save(&self, path: &Path) -> WbResult<()> {
        write(path, &self.to_json()?)
    }

    fn validated(mut self) -> WbResult<Self> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(WorkbenchError::Schema(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.points.is_empty() {
            return Err(WorkbenchError::Schema("instance has no points".into()));
        }
        let width = match self.kind {
            InstanceKind::Euclidean => self.dim,
            InstanceKind::Spherical => self.dim + 1,
        };
        if self.dim == 0 || (self.kind == InstanceKind::Spherical && self.dim < 2) {
            return Err(WorkbenchError::Schema(format!("invalid dim {}", self.dim)));
        }
        for (i, p) in self.points.iter().enumerate() {
            if p.len() != width {
                return Err(WorkbenchError::Schema(format!("point {i} has {} coordinates, expected {width}", p.len())));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(WorkbenchError::Schema(format!("point {i} has a non-finite coordinate")));
            }
        }
        if let Some(r) = self.premise_radius {
            if !(r > 0.0 && r.is_finite()) {
                return Err(WorkbenchError::Schema(format!("premise_radius {r} must be positive")));
            }
        }
        match self.kind {
            InstanceKind::Euclidean => {
                if self.cap.is_some() {
                    return Err(WorkbenchError::Schema("euclidean instances carry no cap".into()));
                }
            }
            InstanceKind::Spherical => {
                let c = SphericalPointSet::from_unit_vectors(self.points.clone(), LOAD_NORM_TOLERANCE)?;
                self.points = c.points().to_vec();
                if let Some(cap) = &self.cap {
                    if cap.axis.len() != width {
                        return Err(WorkbenchError::Schema(format!(
                            "cap axis has {} coordinates, expected {width}",
                            cap.axis.len()
                        )));
                    }
                    if (norm(&cap.axis) - 1.0).abs() > LOAD_NORM_TOLERANCE {
                        return Err(WorkbenchError::Schema("cap axis is not a unit vector".into()));
                    }
                    let north = north_pole(width);
                    let offset: f64 = cap.axis.iter().zip(&north).map(|(a, b)| (a - b).abs()).sum();
                    if offset > AXIS_TOLERANCE {
                        let rows = rotation_between(&cap.axis, &north)?;
                        self.points = SphericalPointSet::new(self.points.iter().map(|p| apply(&rows, p)).collect())?
                            .points()
                            .to_vec();
                        self.metadata.rotation = Some(rows);
                    }
                    self.cap = Some(CapSpec { axis: north, rho: cap.rho });
                }
            }
        }
        Ok(self)
    }

    pub fn euclidean_set(&self) -> WbResult<EuclideanPointSet> {
        self.expect_kind(InstanceKind::Euclidean)?;
        Ok(EuclideanPointSet::new(self.points.clone())?)
    }

    pub fn spherical_set(&self) -> WbResult<SphericalPointSet> {
        self.expect_kind(InstanceKind::Spherical)?;
        Ok(SphericalPointSet::new(self.points.clone())?)
    }

    /// Cap radius of a spherical instance.
    pub fn rho(&self) -> WbResult<f64> {
        self.cap.as_ref().map(|c| c.rho).ok_or_else(|| WorkbenchError::Schema("spherical instance has no cap".into()))
    }

    pub fn expect_kind(&self, kind: InstanceKind) -> WbResult<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(WorkbenchError::Usage(format!("expected a {kind:?} instance, found {:?}", self.kind)))
        }
    }
}

pub(super) fn read(path: &Path) -> WbResult<String> {
    std::fs::read_to_string(path).map_err(|source| WorkbenchError::Io { path: path.into(), source })
}

pub(super) fn write(path: &Path, text: &str) -> WbResult<()> {
    std::fs::write(path, text).map_err(|source| WorkbenchError::Io { path: path.into(), source })
}
