use num::{BigInt, BigRational, BigUint, Signed, Zero};

use super::{count_trajectories, FlowGraph};
use crate::{Error, Rational, Result};

/// Volume of the ideal regular hyperbolic triangle.
pub const VOL_SIMPLEX_2: f64 = std::f64::consts::PI;
/// Volume of the ideal regular hyperbolic tetrahedron.
pub const VOL_SIMPLEX_3: f64 = 1.0149416064096536;
/// Slack allowed when comparing against a volume ratio computed in floating
/// point.
pub const RATIO_TOLERANCE: f64 = 1e-9;

/// How the simplicial volume of the underlying manifold is supplied.
#[derive(Clone, Debug, PartialEq)]
pub enum VolumeSpec {
    Simplicial(Rational),
    /// Closed orientable surface of the given genus.
    SurfaceGenus(u64),
    /// Closed hyperbolic manifold of dimension 2 or 3 with the given volume.
    Hyperbolic {
        volume: f64,
        dim: usize,
    },
}

/// Simplicial volume for `spec` on a manifold of dimension `dim`, with the
/// tolerance that applies to it.
pub fn simplicial_volume_of(spec: &VolumeSpec, dim: usize) -> Result<(Rational, Rational)> {
    let exact = |v: Rational| (v, Rational::zero());
    match spec {
        VolumeSpec::Simplicial(v) => {
            if v.is_negative() {
                return Err(Error::UnknownManifold(format!("negative simplicial volume {v}")));
            }
            Ok(exact(v.clone()))
        }
        VolumeSpec::SurfaceGenus(g) => {
            if dim != 2 {
                return Err(Error::UnknownManifold(format!(
                    "a surface genus needs a 2-dimensional flow graph, found dimension {dim}"
                )));
            }
            let v = if *g < 2 { 0 } else { 4 * g - 4 };
            Ok(exact(Rational::from_integer(BigInt::from(v))))
        }
        VolumeSpec::Hyperbolic { volume, dim: hdim } => {
            if *hdim != dim {
                return Err(Error::UnknownManifold(format!(
                    "hyperbolic dimension {hdim} differs from the flow graph dimension {dim}"
                )));
            }
            let simplex = match hdim {
                2 => VOL_SIMPLEX_2,
                3 => VOL_SIMPLEX_3,
                _ => {
                    return Err(Error::UnknownManifold(format!(
                        "no ideal simplex volume for dimension {hdim}; give the simplicial volume directly"
                    )))
                }
            };
            if !volume.is_finite() || *volume < 0.0 {
                return Err(Error::UnknownManifold(format!("invalid volume {volume}")));
            }
            let ratio = BigRational::from_float(volume / simplex).expect("finite ratio");
            let tol = BigRational::from_float(RATIO_TOLERANCE).expect("finite tolerance");
            Ok((ratio, tol))
        }
    }
}

/// Comparison of the broken-trajectory total with the simplicial volume.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub total: BigUint,
    pub simplicial_volume: Rational,
    pub tolerance: Rational,
}

impl BoundReport {
    /// `total ≥ volume − tolerance`.
    pub fn satisfied(&self) -> bool {
        Rational::from_integer(BigInt::from(self.total.clone())) + &self.tolerance >= self.simplicial_volume
    }
}

pub fn check_bound(g: &FlowGraph, spec: &VolumeSpec) -> Result<BoundReport> {
    let (simplicial_volume, tolerance) = simplicial_volume_of(spec, g.dim())?;
    Ok(BoundReport {
        total: count_trajectories(g).total,
        simplicial_volume,
        tolerance,
    })
}
