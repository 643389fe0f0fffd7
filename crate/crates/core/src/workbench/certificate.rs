use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::instance::{read, write, InstanceFile, InstanceKind, SCHEMA_VERSION};
use super::json::to_canonical_string;
use super::{WbResult, WorkbenchError};
use crate::euclid::{ball_in_hull, containment_radius};
use crate::oracles::{mc_cap_contained, mc_containment_radius, RandomSource};
use crate::pipeline::{select_spherical_with, CaseTag, SphericalCertificate, NORTHERN_MARGIN};
use crate::sphere::{largest_cap_about_axis, north_pole, spolar_empty, Cap};
use crate::steinitz::{
    select_auto, select_exact_with, select_greedy_with, Method, SelectionConfig, SteinitzCertificate,
};
use crate::PREMISE_TOLERANCE;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificatePayload {
    Euclidean(SteinitzCertificate),
    Spherical(SphericalCertificate),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerificationStatus {
    Passed,
    Failed,
}

/// Sample sizes and margins used by the independent checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleSettings {
    /// Random directions for the containment-radius estimate.
    pub directions: usize,
    /// Random points for the cap-membership check.
    pub samples: usize,
    pub seed: u64,
    /// The sampled cap is this much smaller than the claimed one.
    pub cap_margin: f64,
    /// Allowed gap between claimed and recomputed values.
    pub tolerance: f64,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self { directions: 10_000, samples: 100_000, seed: 0x5eed, cap_margin: 1e-6, tolerance: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub status: VerificationStatus,
    pub oracle: OracleSettings,
    /// The achieved radius or cap recomputed from the instance.
    pub recomputed: Option<f64>,
    /// Why verification failed.
    pub detail: Option<String>,
}

impl Verification {
    fn passed(oracle: OracleSettings, recomputed: f64) -> Self {
        Self { status: VerificationStatus::Passed, oracle, recomputed: Some(recomputed), detail: None }
    }

    fn failed(oracle: OracleSettings, recomputed: Option<f64>, detail: String) -> Self {
        Self { status: VerificationStatus::Failed, oracle, recomputed, detail: Some(detail) }
    }

    pub fn is_passed(&self) -> bool {
        self.status == VerificationStatus::Passed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema_version: u32,
    /// Digest of the canonical form of the instance file.
    pub instance_digest: String,
    pub payload: CertificatePayload,
    pub verification: Verification,
}

impl CertificateFile {
    pub fn from_json(text: &str) -> WbResult<Self> {
        let cert: CertificateFile = serde_json::from_str(text)?;
        if cert.schema_version != SCHEMA_VERSION {
            return Err(WorkbenchError::Schema(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                cert.schema_version
            )));
        }
        Ok(cert)
    }

    pub fn load(path: &Path) -> WbResult<Self> {
        Self::from_json(&read(path)?)
    }

    pub fn to_json(&self) -> WbResult<String> {
        to_canonical_string(self)
    }

    pub fn save(&self, path: &Path) -> WbResult<()> {
        write(path, &self.to_json()?)
    }
}

/// Runs the Euclidean selector on `instance` and verifies the result.
/// `method = None` picks the selector by instance size.
pub fn certify_euclidean(
    instance: &InstanceFile,
    digest: &str,
    method: Option<Method>,
    cfg: &SelectionConfig,
    oracle: OracleSettings,
) -> WbResult<CertificateFile> {
    let q = instance.euclidean_set()?;
    let cfg = SelectionConfig { premise_radius: instance.premise_radius.unwrap_or(1.0), ..cfg.clone() };
    let cert = match method {
        Some(Method::Exact) => select_exact_with(&q, &cfg)?,
        Some(Method::Greedy) => select_greedy_with(&q, &cfg)?,
        None => select_auto(&q, &cfg)?,
    };
    finish(instance, digest, CertificatePayload::Euclidean(cert), oracle)
}

/// Runs the spherical pipeline on `instance` and verifies the result.
pub fn certify_spherical(
    instance: &InstanceFile,
    digest: &str,
    cfg: &SelectionConfig,
    oracle: OracleSettings,
) -> WbResult<CertificateFile> {
    let c = instance.spherical_set()?;
    let cert = select_spherical_with(&c, instance.rho()?, cfg)?;
    finish(instance, digest, CertificatePayload::Spherical(cert), oracle)
}

fn finish(
    instance: &InstanceFile,
    digest: &str,
    payload: CertificatePayload,
    oracle: OracleSettings,
) -> WbResult<CertificateFile> {
    let mut file = CertificateFile {
        schema_version: SCHEMA_VERSION,
        instance_digest: digest.to_string(),
        payload,
        verification: Verification::failed(oracle, None, "not yet verified".into()),
    };
    file.verification = verify(instance, digest, &file, oracle)?;
    Ok(file)
}

/// Re-checks a certificate against its instance from scratch: digest,
/// premise, recomputed radius or cap, and the Monte-Carlo oracles. A bad
/// certificate yields a failed [`Verification`]; errors are reserved for
/// instances the checks cannot run on.
pub fn verify(
    instance: &InstanceFile,
    digest: &str,
    cert: &CertificateFile,
    oracle: OracleSettings,
) -> WbResult<Verification> {
    if cert.instance_digest != digest {
        return Ok(Verification::failed(
            oracle,
            None,
            format!("certificate is bound to {}, instance is {digest}", cert.instance_digest),
        ));
    }
    match &cert.payload {
        CertificatePayload::Euclidean(c) => verify_euclidean(instance, c, oracle),
        CertificatePayload::Spherical(c) => verify_spherical(instance, c, oracle),
    }
}

fn check_indices(indices: &[usize], n: usize, max_len: usize) -> Result<(), String> {
    if indices.is_empty() || indices.len() > max_len {
        return Err(format!("{} indices, expected between 1 and {max_len}", indices.len()));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err("indices are not strictly increasing".into());
    }
    if indices.iter().any(|&i| i >= n) {
        return Err(format!("index out of range for {n} points"));
    }
    Ok(())
}

fn verify_euclidean(
    instance: &InstanceFile,
    cert: &SteinitzCertificate,
    oracle: OracleSettings,
) -> WbResult<Verification> {
    if instance.kind != InstanceKind::Euclidean {
        return Ok(Verification::failed(oracle, None, "euclidean certificate for a spherical instance".into()));
    }
    let q = instance.euclidean_set()?;
    let d = q.dim();
    if let Err(msg) = check_indices(&cert.indices, q.len(), 2 * d) {
        return Ok(Verification::failed(oracle, None, msg));
    }
    let premise = instance.premise_radius.unwrap_or(1.0);
    if cert.premise_radius != premise || cert.cardinality_bound != 2 * d {
        return Ok(Verification::failed(oracle, None, "premise radius or cardinality bound altered".into()));
    }
    if !ball_in_hull(&q, premise, PREMISE_TOLERANCE)? {
        return Err(crate::Error::premise(format!("instance hull does not contain B(o, {premise})")).into());
    }
    let chosen = q.subset(&cert.indices)?;
    let recomputed = containment_radius(&chosen)?;
    let tol = oracle.tolerance * recomputed.abs().max(1.0);
    if (recomputed - cert.achieved_radius).abs() > tol {
        return Ok(Verification::failed(
            oracle,
            Some(recomputed),
            format!("claimed radius {} but the selection gives {recomputed}", cert.achieved_radius),
        ));
    }
    let mut rng = RandomSource::new(oracle.seed, 0);
    let estimate = mc_containment_radius(&chosen, oracle.directions, &mut rng);
    if estimate < cert.achieved_radius - tol {
        return Ok(Verification::failed(
            oracle,
            Some(recomputed),
            format!("random direction has support {estimate} below the claimed radius"),
        ));
    }
    Ok(Verification::passed(oracle, recomputed))
}

fn verify_spherical(
    instance: &InstanceFile,
    cert: &SphericalCertificate,
    oracle: OracleSettings,
) -> WbResult<Verification> {
    if instance.kind != InstanceKind::Spherical {
        return Ok(Verification::failed(oracle, None, "spherical certificate for a euclidean instance".into()));
    }
    let c = instance.spherical_set()?;
    let d = c.sphere_dim();
    let tol = oracle.tolerance;
    if cert.rho != instance.rho()? {
        return Ok(Verification::failed(oracle, None, "cap radius differs from the instance".into()));
    }
    let max_len = if cert.case_tag == CaseTag::FullSphere { d + 2 } else { 2 * d };
    if let Err(msg) = check_indices(&cert.indices, c.len(), max_len) {
        return Ok(Verification::failed(oracle, None, msg));
    }
    let north = north_pole(c.ambient_dim());
    if largest_cap_about_axis(&c, &north)? < cert.rho - PREMISE_TOLERANCE {
        return Err(crate::Error::premise("instance hull does not contain the cap").into());
    }
    let case = if spolar_empty(&c) {
        CaseTag::FullSphere
    } else if c.points().iter().all(|p| p[d] > NORTHERN_MARGIN) {
        CaseTag::Northern
    } else {
        CaseTag::General
    };
    let shifted = case == CaseTag::General && c.points().iter().any(|p| p[d] <= 0.0);
    if case != cert.case_tag || shifted != cert.polarity_center_shifted {
        return Ok(Verification::failed(oracle, None, "case classification does not match the instance".into()));
    }

    let chosen = c.subset(&cert.indices)?;
    let recomputed = largest_cap_about_axis(&chosen, &north)?;
    if (recomputed - cert.achieved_cap).abs() > tol {
        return Ok(Verification::failed(
            oracle,
            Some(recomputed),
            format!("claimed cap {} but the selection gives {recomputed}", cert.achieved_cap),
        ));
    }
    if cert.achieved_cap < cert.certified_cap - tol {
        return Ok(Verification::failed(oracle, Some(recomputed), "certified cap exceeds the achieved cap".into()));
    }
    match cert.case_tag {
        CaseTag::FullSphere => {
            if cert.certified_cap != PI {
                return Ok(Verification::failed(
                    oracle,
                    Some(recomputed),
                    "full-sphere certificate must certify π".into(),
                ));
            }
        }
        CaseTag::Northern | CaseTag::General => {
            let Some(r) = cert.internal_radius.filter(|r| *r > 0.0 && *r <= 1.0) else {
                return Ok(Verification::failed(
                    oracle,
                    Some(recomputed),
                    "internal radius missing or outside (0, 1]".into(),
                ));
            };
            if !cert.polarity_center_shifted && cert.certified_cap < r * cert.rho / 2.0 - 1e-12 {
                return Ok(Verification::failed(
                    oracle,
                    Some(recomputed),
                    "certified cap is below half the internal radius times ρ".into(),
                ));
            }
        }
    }
    let sampled = Cap::new(north, (cert.achieved_cap - oracle.cap_margin).clamp(0.0, PI))?;
    let mut rng = RandomSource::new(oracle.seed, 1);
    if !mc_cap_contained(&chosen, &sampled, oracle.samples, &mut rng) {
        return Ok(Verification::failed(oracle, Some(recomputed), "a sampled cap point lies outside the hull".into()));
    }
    Ok(Verification::passed(oracle, recomputed))
}
