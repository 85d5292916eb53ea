//! Brute-force reference computations used to validate the closed forms.
//!
//! Nothing in here uses spherical Gaussians, specular peaks or sampling
//! disks: the one-bounce integrator evaluates the full GGX BRDF at both
//! bounce points, and the quadratures integrate over the whole sphere.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::brdf;
use crate::error::{Error, Result};
use crate::interreflect::{exact_integrand, fitted_integrand, k_factor, ShadingPoint};
use crate::math::{Rgb, UnitVec3, Vec3};
use crate::scene::{DirectionalLight, RectangleProxy};
use crate::sg::{self, AnisotropicSphericalGaussian, SphericalGaussian};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub sample_count: usize,
    /// `0` selects the deterministic Fibonacci lattice where applicable.
    pub seed: u64,
}

impl QuadratureSpec {
    pub fn new(sample_count: usize, seed: u64) -> Result<Self> {
        if sample_count == 0 {
            return Err(Error::invalid("sample count must be positive"));
        }
        Ok(QuadratureSpec { sample_count, seed })
    }

    pub fn lattice(sample_count: usize) -> Self {
        QuadratureSpec {
            sample_count: sample_count.max(1),
            seed: 0,
        }
    }
}

/// Stateless per-stream seed derivation (SplitMix64 finaliser).
pub fn mix_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Integrand of the one-bounce estimator at reflector point `y`, already
/// divided by the uniform area density (i.e. times the rectangle area).
fn one_bounce_sample(
    x: &ShadingPoint,
    rect: &RectangleProxy,
    lights: &[DirectionalLight],
    y: Vec3,
) -> Rgb {
    let d = x.position - y;
    let dist2 = d.length_squared();
    let Some(r) = d.normalized() else {
        return Rgb::BLACK;
    };
    let cos_reflector = r.dot(rect.normal);
    let to_reflector = -r;
    let cos_receiver = to_reflector.dot(x.normal);
    if cos_reflector <= 0.0 || cos_receiver <= 0.0 {
        return Rgb::BLACK;
    }
    let incoming: Rgb = lights
        .iter()
        .map(|l| {
            let c = l.direction.dot(rect.normal);
            if c <= 0.0 {
                Rgb::BLACK
            } else {
                l.radiance * brdf::brdf_eval(l.direction, r, rect.normal, &rect.material) * c
            }
        })
        .sum();
    if incoming.is_black() {
        return Rgb::BLACK;
    }
    let f_x = brdf::brdf_eval(to_reflector, x.view, x.normal, &x.material);
    incoming * f_x * (cos_receiver * cos_reflector / dist2 * rect.area())
}

/// Monte Carlo estimate of the one-bounce radiance leaving `x` toward its
/// viewer, by uniform area sampling of `rect`. No occlusion is modelled.
pub fn mc_one_bounce(
    x: &ShadingPoint,
    rect: &RectangleProxy,
    lights: &[DirectionalLight],
    spec: QuadratureSpec,
) -> Rgb {
    mc_one_bounce_stats(x, rect, lights, spec).mean
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: Rgb,
    /// Standard error of the mean, per channel.
    pub std_error: Rgb,
}

/// [`mc_one_bounce`] together with its sample standard error.
pub fn mc_one_bounce_stats(
    x: &ShadingPoint,
    rect: &RectangleProxy,
    lights: &[DirectionalLight],
    spec: QuadratureSpec,
) -> Estimate {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.sample_count.max(1);
    let mut sum = Rgb::BLACK;
    let mut sum_sq = Rgb::BLACK;
    for _ in 0..n {
        let s = (2.0 * rng.random::<f64>() - 1.0) * rect.half_extent_u;
        let t = (2.0 * rng.random::<f64>() - 1.0) * rect.half_extent_v;
        let f = one_bounce_sample(x, rect, lights, rect.point_at(s, t));
        sum += f;
        sum_sq += f * f;
    }
    let nf = n as f64;
    let mean = sum / nf;
    let var = (sum_sq / nf - mean * mean).map(|v| v.max(0.0));
    let std_error = if n > 1 {
        (var * (nf / (nf - 1.0)) / nf).map(f64::sqrt)
    } else {
        Rgb::BLACK
    };
    Estimate { mean, std_error }
}

/// The `i`-th of `n` Fibonacci lattice points on the unit sphere.
pub fn fibonacci_point(i: usize, n: usize) -> UnitVec3 {
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let phi = golden_angle * i as f64;
    Vec3::new(r * phi.cos(), r * phi.sin(), z)
        .normalized()
        .unwrap_or(UnitVec3::Z)
}

/// `4π · mean(f)` over the sphere: Fibonacci lattice when `seed == 0`,
/// otherwise uniform random directions from the seeded generator.
pub fn spherical_quadrature(f: impl Fn(UnitVec3) -> f64, spec: QuadratureSpec) -> f64 {
    let n = spec.sample_count.max(1);
    let mut sum = 0.0;
    if spec.seed == 0 {
        for i in 0..n {
            sum += f(fibonacci_point(i, n));
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        for _ in 0..n {
            let z = 1.0 - 2.0 * rng.random::<f64>();
            let phi = 2.0 * PI * rng.random::<f64>();
            let r = (1.0 - z * z).max(0.0).sqrt();
            let v = Vec3::new(r * phi.cos(), r * phi.sin(), z)
                .normalized()
                .unwrap_or(UnitVec3::Z);
            sum += f(v);
        }
    }
    4.0 * PI * sum / n as f64
}

/// Composite Simpson rule on `[a, b]` with `n` (rounded up to even) intervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = (n.max(2) + 1) & !1;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitErrorRow {
    pub theta: f64,
    pub exact: f64,
    pub fitted: f64,
}

/// Exact vs. fitted disk integrand at `theta_samples` angles `j·(π/2)/n`.
pub fn fit_error_report(sigma: f64, roughness: f64, theta_samples: usize) -> Vec<FitErrorRow> {
    let n = theta_samples.max(1);
    let k = k_factor(sigma.cos(), roughness);
    (0..n)
        .map(|j| {
            let theta = j as f64 * std::f64::consts::FRAC_PI_2 / n as f64;
            FitErrorRow {
                theta,
                exact: exact_integrand(theta, sigma, roughness),
                fitted: fitted_integrand(theta, k),
            }
        })
        .collect()
}

/// `√∫₀^θmax (exact − fitted)² dθ`.
pub fn fit_l2_error(sigma: f64, roughness: f64, theta_max: f64) -> f64 {
    let k = k_factor(sigma.cos(), roughness);
    simpson(
        |th| {
            let d = exact_integrand(th, sigma, roughness) - fitted_integrand(th, k);
            d * d
        },
        0.0,
        theta_max,
        20_000,
    )
    .sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvolutionErrorRow {
    pub lambda: f64,
    pub closed_form: f64,
    pub quadrature: f64,
    pub abs_error: f64,
    pub rel_error: f64,
}

/// Lattice size used by [`convolution_error_report`].
pub const CONVOLUTION_STUDY_SAMPLES: usize = 2_000_000;

/// SG⊗ASG closed form vs. quadrature for an isotropic ASG of bandwidth λ
/// about +z and an SG of sharpness 2λ about `normalize(0.5, 0, 1)`.
pub fn convolution_error_report(lambdas: &[f64]) -> Result<Vec<ConvolutionErrorRow>> {
    convolution_error_report_with(lambdas, QuadratureSpec::lattice(CONVOLUTION_STUDY_SAMPLES))
}

pub fn convolution_error_report_with(
    lambdas: &[f64],
    spec: QuadratureSpec,
) -> Result<Vec<ConvolutionErrorRow>> {
    let sg_axis = UnitVec3::new(0.5, 0.0, 1.0).expect("non-zero");
    lambdas
        .iter()
        .map(|&lambda| {
            let asg = AnisotropicSphericalGaussian::new(
                UnitVec3::Z,
                UnitVec3::X,
                UnitVec3::Y,
                lambda,
                lambda,
                Rgb::WHITE,
            )?;
            let sg = SphericalGaussian::new(sg_axis, 2.0 * lambda, Rgb::WHITE)?;
            let closed_form = sg::convolve_sg_asg(&asg, &sg)[0];
            let quadrature =
                spherical_quadrature(|v| asg.eval(v)[0] * sg.eval(v)[0], spec);
            let abs_error = (closed_form - quadrature).abs();
            Ok(ConvolutionErrorRow {
                lambda,
                closed_form,
                quadrature,
                abs_error,
                rel_error: abs_error / quadrature.abs(),
            })
        })
        .collect()
}

/// `%.9g`-style formatting: nine significant digits, `.` decimal separator.
pub fn format_sig9(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.8e}")
    }
}

pub fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(format_sig9).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn fit_error_csv(rows: &[FitErrorRow]) -> String {
    csv_string(
        &["theta", "exact", "fitted"],
        rows.iter().map(|r| vec![r.theta, r.exact, r.fitted]),
    )
}

pub fn convolution_error_csv(rows: &[ConvolutionErrorRow]) -> String {
    csv_string(
        &["lambda", "closed_form", "quadrature", "abs_error", "rel_error"],
        rows.iter().map(|r| {
            vec![r.lambda, r.closed_form, r.quadrature, r.abs_error, r.rel_error]
        }),
    )
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::File::create(path)
        .and_then(|mut f| f.write_all(text.as_bytes()))
        .map_err(|e| Error::io(path, e))
}
