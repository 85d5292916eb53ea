//! One-bounce glossy interreflection from a rectangular reflector.
//!
//! For a receiver point `x` and a distant light, the reflector is reduced to
//! its specular peak (the plane point whose half vector equals the plane
//! normal). Reflected radiance is gathered over a sampling disk around the
//! peak in closed form, turned into an ASG light seen from `x`, and finally
//! convolved with the receiver's NDF lobe.

use std::f64::consts::PI;

use crate::brdf::{self, Material};
use crate::error::Degeneracy;
use crate::math::{Rgb, UnitVec3, Vec3};
use crate::scene::{intersection_area_fraction, DirectionalLight, RectangleProxy};
use crate::sg::{self, AnisotropicSphericalGaussian, SphericalGaussian};

/// `i·n_r` at or below which a light cannot produce a specular peak.
pub const PEAK_COS_EPSILON: f64 = 1e-6;

/// Cross-product length below which the attenuation axes are degenerate.
pub const AXIS_EPSILON: f64 = 1e-6;

/// `|k|` below which the disk integral switches to its series expansion.
pub const K_SERIES_THRESHOLD: f64 = 1e-3;

/// Lower bound applied to the ASG light bandwidths.
pub const LIGHT_BANDWIDTH_FLOOR: f64 = 1e-2;

/// `−ln ε` for the ε = 0.05 support threshold of the ASG light, as tabulated.
pub const SUPPORT_LOG_THRESHOLD: f64 = 2.996;

/// Smallest projected axis length used when sizing the ASG light.
const MIN_AXIS_LENGTH: f64 = 1e-6;

/// Default sampling disk radius in scene units.
pub const DEFAULT_DISK_RADIUS: f64 = 0.5;

/// A receiver point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadingPoint {
    pub position: Vec3,
    pub normal: UnitVec3,
    /// Unit direction from the point toward the viewer.
    pub view: UnitVec3,
    pub material: Material,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecularPeak {
    pub position: Vec3,
    /// Mirror reflection of the light direction; points from the peak toward
    /// the shading point.
    pub reflected_dir: UnitVec3,
    /// `i·n_r`.
    pub cos_sigma: f64,
}

/// Disk in the reflector plane centred on the specular peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingDisk {
    pub center: Vec3,
    pub radius: f64,
    pub normal: UnitVec3,
    /// In-plane direction used when the attenuation axes are undefined.
    pub reference_tangent: UnitVec3,
}

impl SamplingDisk {
    pub fn around_peak(rect: &RectangleProxy, peak: &SpecularPeak, radius: f64) -> Self {
        SamplingDisk {
            center: peak.position,
            radius,
            normal: rect.normal,
            reference_tangent: rect.edge_u,
        }
    }

    /// [`attenuation_axes`] with the disk's own tangent as the fallback frame.
    pub fn attenuation_axes(&self, x: Vec3) -> AttenuationAxes {
        let axes = attenuation_axes(self.center, x, self.normal);
        if !axes.degenerate {
            return axes;
        }
        let v = self
            .normal
            .cross(self.reference_tangent)
            .normalized()
            .unwrap_or(axes.v);
        let u = self.normal.cross(v).normalized().unwrap_or(axes.u);
        AttenuationAxes {
            u,
            v,
            degenerate: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttenuationAxes {
    /// Representative attenuation axis, in the reflector plane.
    pub u: UnitVec3,
    /// In-plane axis perpendicular to the peak→x direction.
    pub v: UnitVec3,
    /// Set when the peak→x direction is parallel to the normal and a fixed
    /// in-plane pair was substituted.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskRadiance {
    pub peak_radiance: Rgb,
    pub k: f64,
    pub t: f64,
    pub area_fraction: f64,
    pub total: Rgb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShadingMode {
    /// Convolve the warped NDF lobe with the anisotropic light.
    #[default]
    Asg,
    /// Collapse the light to an SG and use the exact SG product integral.
    SgFast,
}

/// Locate the specular peak of `rect` for light direction `i` seen from `x`.
///
/// `None` when the light does not reach the front of the plane or when `x`
/// is not in front of it.
pub fn find_specular_peak(rect: &RectangleProxy, x: Vec3, i: UnitVec3) -> Option<SpecularPeak> {
    specular_peak(rect, x, i).ok()
}

fn specular_peak(
    rect: &RectangleProxy,
    x: Vec3,
    i: UnitVec3,
) -> Result<SpecularPeak, Degeneracy> {
    let cos_sigma = i.dot(rect.normal);
    if cos_sigma <= PEAK_COS_EPSILON {
        return Err(Degeneracy::LightBelowPlane);
    }
    let height = rect.plane_distance(x);
    if height <= 0.0 {
        return Err(Degeneracy::ReceiverBehindReflector);
    }
    let r = i.reflect_about(rect.normal);
    let position = x - r * (height / cos_sigma);
    Ok(SpecularPeak {
        position,
        reflected_dir: r,
        cos_sigma,
    })
}

/// `v = normalize(ŷx × n)`, `u = n × v`, where `ŷx` is the direction from the
/// peak to `x`.
pub fn attenuation_axes(peak: Vec3, x: Vec3, normal: UnitVec3) -> AttenuationAxes {
    let fallback = || {
        let (u, v) = normal.orthonormal_basis();
        AttenuationAxes {
            u,
            v,
            degenerate: true,
        }
    };
    let Some(yx) = (x - peak).normalized() else {
        return fallback();
    };
    let c = yx.cross(normal);
    if c.length() < AXIS_EPSILON {
        return fallback();
    }
    let v = c.normalized().expect("non-zero cross product");
    let u = normal.cross(v).normalized().expect("orthogonal unit vectors");
    AttenuationAxes {
        u,
        v,
        degenerate: false,
    }
}

/// Reflected radiance leaving the peak toward `x`, summed over lights.
///
/// Each light contributes `L · f_r(i, r) · (i·n_r)⁺`, with `f_r` the
/// reflector's BRDF and `r` the unit direction from the peak to `x`.
pub fn peak_radiance(
    rect: &RectangleProxy,
    peak: &SpecularPeak,
    x: Vec3,
    lights: &[DirectionalLight],
) -> Rgb {
    let Some(r) = (x - peak.position).normalized() else {
        return Rgb::BLACK;
    };
    lights
        .iter()
        .map(|light| {
            let cos_i = light.direction.dot(rect.normal);
            if cos_i <= 0.0 {
                return Rgb::BLACK;
            }
            let f = brdf::brdf_eval(light.direction, r, rect.normal, &rect.material);
            light.radiance * f * cos_i
        })
        .sum()
}

/// Falloff exponent of the fitted disk integrand: `0.288 cos σ / α² − 0.673`.
pub fn k_factor(cos_sigma: f64, roughness: f64) -> f64 {
    0.288 * cos_sigma / (roughness * roughness) - 0.673
}

/// Ratio `D(θ_h', α) / D(0, α)` for a disk point seen at angle `theta` from
/// the peak direction, with `θ_h' = −σ/2 + ½ atan(sec²σ tan θ + tan σ)`.
pub fn exact_integrand(theta: f64, sigma: f64, roughness: f64) -> f64 {
    let cos_s = sigma.cos();
    let theta_h = -0.5 * sigma + 0.5 * (theta.tan() / (cos_s * cos_s) + sigma.tan()).atan();
    let a2 = roughness * roughness;
    let c = theta_h.cos();
    let d = 1.0 - (1.0 - a2) * c * c;
    a2 * a2 / (d * d)
}

/// `e^{−k sin²θ} cos θ`.
pub fn fitted_integrand(theta: f64, k: f64) -> f64 {
    let s = theta.sin();
    (-k * s * s).exp() * theta.cos()
}

/// Squared sine of the cap aperture subtended by a disk of (unit-distance)
/// radius `disk_radius` viewed at angle σ: `1 − 1/(1 + r² cos²σ)`.
pub fn aperture_term(disk_radius: f64, cos_sigma: f64) -> f64 {
    let q = disk_radius * disk_radius * cos_sigma * cos_sigma;
    q / (1.0 + q)
}

/// `(π/k)(1 − e^{−kt})`, with a series expansion near `k = 0`.
pub fn disk_integral_factor(k: f64, t: f64) -> f64 {
    let kt = k * t;
    if k.abs() < K_SERIES_THRESHOLD {
        PI * t * (1.0 - kt / 2.0 + kt * kt / 6.0)
    } else {
        PI * -(-kt).exp_m1() / k
    }
}

/// Total radiance gathered from the sampling disk:
/// `ϱ · (π/k)(1 − e^{−kt}) · L_y`.
///
/// `disk_radius` is measured on the unit sphere around the receiver, i.e.
/// the disk radius divided by the receiver–peak distance.
pub fn integrate_disk_radiance(
    peak_radiance: Rgb,
    k: f64,
    disk_radius: f64,
    cos_sigma: f64,
    area_fraction: f64,
) -> DiskRadiance {
    let t = aperture_term(disk_radius, cos_sigma);
    let factor = disk_integral_factor(k, t) * area_fraction;
    let total = if area_fraction > 0.0 {
        (peak_radiance * factor).map(|c| c.max(0.0))
    } else {
        Rgb::BLACK
    };
    DiskRadiance {
        peak_radiance,
        k,
        t,
        area_fraction,
        total,
    }
}

/// Bandwidth at which the polar ASG falls to ε = 0.05 at angle `atan(a)`:
/// `(1 + 1/a²)(2.996 − ½ ln(1 + a²))`. Not floored.
pub fn bandwidth_for_axis_length(a: f64) -> f64 {
    let a2 = a * a;
    (1.0 + 1.0 / a2) * (SUPPORT_LOG_THRESHOLD - 0.5 * a2.ln_1p())
}

/// The ASG light together with whether a bandwidth hit the floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsgLight {
    pub asg: AnisotropicSphericalGaussian,
    /// Set when either bandwidth was raised to [`LIGHT_BANDWIDTH_FLOOR`]; the
    /// lobe shape is then unreliable.
    pub low_confidence: bool,
}

/// Fit an ASG to the disk as seen from `x`, scaled so its integral is
/// `total_radiance`.
pub fn build_asg_light(
    peak: &SpecularPeak,
    x: Vec3,
    disk: &SamplingDisk,
    total_radiance: Rgb,
) -> Result<AsgLight, Degeneracy> {
    let to_peak = peak.position - x;
    let distance = to_peak.length();
    let lobe = to_peak.normalized().ok_or(Degeneracy::CoincidentPeak)?;
    let yx = -lobe;
    let axes = disk.attenuation_axes(x);
    let tangent = axes.v;
    let bitangent = yx.cross(tangent).normalized().ok_or(Degeneracy::CoincidentPeak)?;

    let a_tangent = (disk.radius / distance).max(MIN_AXIS_LENGTH);
    let a_bitangent = (a_tangent * disk.normal.dot(yx).abs()).max(MIN_AXIS_LENGTH);
    let raw_lambda = bandwidth_for_axis_length(a_tangent);
    let raw_mu = bandwidth_for_axis_length(a_bitangent);
    let lambda = raw_lambda.max(LIGHT_BANDWIDTH_FLOOR);
    let mu = raw_mu.max(LIGHT_BANDWIDTH_FLOOR);
    let amplitude = total_radiance * ((lambda * mu).sqrt() / PI);

    Ok(AsgLight {
        asg: AnisotropicSphericalGaussian {
            lobe,
            tangent,
            bitangent,
            bandwidth_tangent: lambda,
            bandwidth_bitangent: mu,
            amplitude,
        },
        low_confidence: raw_lambda < LIGHT_BANDWIDTH_FLOOR || raw_mu < LIGHT_BANDWIDTH_FLOOR,
    })
}

/// Every intermediate quantity of one light's bounce off one rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BounceTrace {
    pub peak: SpecularPeak,
    pub disk: SamplingDisk,
    pub radiance: DiskRadiance,
    pub light: AsgLight,
    pub ndf_lobe: SphericalGaussian,
    /// `M(−r_y, v) · (−r_y·n_x)⁺` at the receiver.
    pub receiver_factor: Rgb,
    pub value: Rgb,
}

/// Run the approximation for a single light, keeping every stage.
pub fn trace_bounce(
    x: &ShadingPoint,
    rect: &RectangleProxy,
    light: &DirectionalLight,
    disk_radius: f64,
    mode: ShadingMode,
) -> Result<BounceTrace, Degeneracy> {
    let peak = specular_peak(rect, x.position, light.direction)?;
    let disk = SamplingDisk::around_peak(rect, &peak, disk_radius);
    let area_fraction = intersection_area_fraction(rect, &disk);
    if area_fraction <= 0.0 {
        return Err(Degeneracy::DiskMissesRectangle);
    }
    let distance = (peak.position - x.position).length();
    if distance <= 0.0 {
        return Err(Degeneracy::CoincidentPeak);
    }
    let l_y = peak_radiance(rect, &peak, x.position, std::slice::from_ref(light));
    let k = k_factor(peak.cos_sigma, rect.material.roughness);
    let radiance = integrate_disk_radiance(
        l_y,
        k,
        disk_radius / distance,
        peak.cos_sigma,
        area_fraction,
    );
    let asg_light = build_asg_light(&peak, x.position, &disk, radiance.total)?;

    let to_reflector = asg_light.asg.lobe;
    let cos_receiver = to_reflector.dot(x.normal);
    if cos_receiver <= 0.0 {
        return Err(Degeneracy::BelowReceiverHorizon);
    }
    let ndf = brdf::ndf_as_sg(x.normal, x.material.roughness);
    let ndf_lobe = brdf::warp_ndf_to_light_domain(&ndf, x.view)?;
    let product = match mode {
        ShadingMode::Asg => sg::convolve_sg_asg(&asg_light.asg, &ndf_lobe),
        ShadingMode::SgFast => {
            sg::sg_product_integral(&sg::asg_to_sg(&asg_light.asg), &ndf_lobe)
        }
    };
    let receiver_factor =
        brdf::fresnel_shadowing(to_reflector, x.view, x.normal, &x.material) * cos_receiver;
    Ok(BounceTrace {
        peak,
        disk,
        radiance,
        light: asg_light,
        ndf_lobe,
        receiver_factor,
        value: receiver_factor * product,
    })
}

/// Indirect specular radiance leaving `x` toward its viewer after one bounce
/// off `rect`. Each light is handled independently and the results summed;
/// degenerate configurations contribute zero.
pub fn shade_indirect_specular(
    x: &ShadingPoint,
    rect: &RectangleProxy,
    lights: &[DirectionalLight],
    disk_radius: f64,
    mode: ShadingMode,
) -> Rgb {
    lights
        .iter()
        .filter_map(|light| trace_bounce(x, rect, light, disk_radius, mode).ok())
        .map(|t| t.value)
        .sum()
}
