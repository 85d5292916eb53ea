//! GGX microfacet BRDF and its spherical Gaussian representation.
//!
//! The BRDF is factored as `f_r(i, v) = M(i, v) · D(h)`: `D` is the GGX
//! normal distribution and `M` collects Fresnel and shadowing. `M` is
//! Schlick Fresnel on `h·v` times the height-correlated Smith visibility
//! (which already contains the `1 / (4 n·i n·v)` denominator).

use std::f64::consts::PI;

use crate::error::{Degeneracy, Error, Result};
use crate::math::{Rgb, UnitVec3, Vec3};
use crate::sg::SphericalGaussian;

pub const MIN_ROUGHNESS: f64 = 0.02;
pub const MAX_ROUGHNESS: f64 = 1.0;

/// `h·v` at or below which the light-domain warp is treated as degenerate.
pub const GRAZING_EPSILON: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    /// GGX α, clamped to `[MIN_ROUGHNESS, MAX_ROUGHNESS]`.
    pub roughness: f64,
    /// Normal-incidence Fresnel reflectance (F0).
    pub specular: Rgb,
    pub diffuse: Rgb,
}

impl Material {
    pub fn new(roughness: f64, specular: Rgb, diffuse: Rgb) -> Result<Self> {
        if !roughness.is_finite() || roughness <= 0.0 {
            return Err(Error::invalid(format!(
                "roughness must be positive, got {roughness}"
            )));
        }
        for (name, c) in [("specular", specular), ("diffuse", diffuse)] {
            if !c.0.iter().all(|v| (0.0..=1.0).contains(v)) {
                return Err(Error::invalid(format!(
                    "{name} colour must lie in [0, 1], got {:?}",
                    c.0
                )));
            }
        }
        Ok(Material {
            roughness: roughness.clamp(MIN_ROUGHNESS, MAX_ROUGHNESS),
            specular,
            diffuse,
        })
    }
}

/// GGX normal distribution `α² / (π (1 − (1−α²) cos²θ)²)`.
pub fn ggx_ndf(cos_theta: f64, roughness: f64) -> f64 {
    let a2 = roughness * roughness;
    let d = 1.0 - (1.0 - a2) * cos_theta * cos_theta;
    a2 / (PI * d * d)
}

pub fn fresnel_schlick(f0: Rgb, cos_theta: f64) -> Rgb {
    let m = (1.0 - cos_theta.clamp(0.0, 1.0)).powi(5);
    f0.map(|f| f + (1.0 - f) * m)
}

/// Height-correlated Smith visibility `G₂ / (4 n·i n·v)` for GGX.
pub fn smith_visibility(n_dot_i: f64, n_dot_v: f64, roughness: f64) -> f64 {
    let a2 = roughness * roughness;
    let gv = n_dot_i * (n_dot_v * n_dot_v * (1.0 - a2) + a2).sqrt();
    let gi = n_dot_v * (n_dot_i * n_dot_i * (1.0 - a2) + a2).sqrt();
    0.5 / (gv + gi)
}

fn half_vector(i: UnitVec3, v: UnitVec3) -> Option<UnitVec3> {
    (i.get() + v.get()).normalized()
}

/// The Fresnel/shadowing factor `M(i, v)`; zero below either horizon.
pub fn fresnel_shadowing(i: UnitVec3, v: UnitVec3, n: UnitVec3, mat: &Material) -> Rgb {
    let n_i = n.dot(i);
    let n_v = n.dot(v);
    if n_i <= 0.0 || n_v <= 0.0 {
        return Rgb::BLACK;
    }
    let Some(h) = half_vector(i, v) else {
        return Rgb::BLACK;
    };
    fresnel_schlick(mat.specular, h.dot(v)) * smith_visibility(n_i, n_v, mat.roughness)
}

/// Specular BRDF `M(i, v) · D(h)`. `i` points toward the light.
pub fn brdf_eval(i: UnitVec3, v: UnitVec3, n: UnitVec3, mat: &Material) -> Rgb {
    let n_i = n.dot(i);
    let n_v = n.dot(v);
    if n_i <= 0.0 || n_v <= 0.0 {
        return Rgb::BLACK;
    }
    let Some(h) = half_vector(i, v) else {
        return Rgb::BLACK;
    };
    let d = ggx_ndf(n.dot(h), mat.roughness);
    fresnel_schlick(mat.specular, h.dot(v)) * (smith_visibility(n_i, n_v, mat.roughness) * d)
}

/// The GGX NDF as an SG about `n`: sharpness `2/α²`, amplitude `1/(πα²)`.
pub fn ndf_as_sg(n: UnitVec3, roughness: f64) -> SphericalGaussian {
    let a2 = roughness * roughness;
    SphericalGaussian {
        axis: n,
        sharpness: 2.0 / a2,
        amplitude: Rgb::splat(1.0 / (PI * a2)),
    }
}

/// Re-express an NDF lobe over half vectors as a lobe over light directions.
///
/// The axis becomes the mirror reflection of `v` about the NDF axis and the
/// sharpness is divided by the Jacobian `4|h·v|`, taken at the axis.
pub fn warp_ndf_to_light_domain(
    ndf: &SphericalGaussian,
    v: UnitVec3,
) -> std::result::Result<SphericalGaussian, Degeneracy> {
    let h = ndf.axis;
    let h_dot_v = h.dot(v);
    if h_dot_v <= GRAZING_EPSILON {
        return Err(Degeneracy::GrazingView);
    }
    let axis = (2.0 * h_dot_v * h.get() - v.get())
        .normalized()
        .ok_or(Degeneracy::GrazingView)?;
    Ok(SphericalGaussian {
        axis,
        sharpness: ndf.sharpness / (4.0 * h_dot_v),
        amplitude: ndf.amplitude,
    })
}

/// Sample a GGX half vector in the local frame (`+z` = normal) with density
/// `D(θ) cos θ` over the hemisphere.
pub fn ggx_sample_half_vector(roughness: f64, u1: f64, u2: f64) -> UnitVec3 {
    let a2 = roughness * roughness;
    // tan²θ = α² u1 / (1 − u1)  ⇔  cos²θ = (1 − u1) / (1 + (α² − 1) u1)
    let cos2 = ((1.0 - u1) / (1.0 + (a2 - 1.0) * u1)).clamp(0.0, 1.0);
    let cos_t = cos2.sqrt();
    let sin_t = (1.0 - cos2).max(0.0).sqrt();
    let (sp, cp) = (2.0 * PI * u2).sin_cos();
    Vec3::new(sin_t * cp, sin_t * sp, cos_t)
        .normalized()
        .unwrap_or(UnitVec3::Z)
}

/// Solid-angle density of [`ggx_sample_half_vector`].
pub fn ggx_half_vector_pdf(cos_theta: f64, roughness: f64) -> f64 {
    if cos_theta <= 0.0 {
        0.0
    } else {
        ggx_ndf(cos_theta, roughness) * cos_theta
    }
}
