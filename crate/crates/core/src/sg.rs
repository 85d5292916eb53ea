//! Spherical Gaussian (SG) and anisotropic spherical Gaussian (ASG) algebra.
//!
//! An SG is the isotropic lobe `a · exp(ν (v·p − 1))`. An ASG carries an
//! orthonormal frame `[z, x, y]` and two bandwidths:
//! `c · max(v·z, 0) · exp(−λ (v·x)² − μ (v·y)²)`.
//!
//! All functions here are pure. Amplitudes are RGB and every closed form is
//! linear in them.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::math::{Rgb, UnitVec3};

/// Smallest ASG bandwidth accepted at construction. The convolution and the
/// energy-preserving amplitude both divide by bandwidths.
pub const MIN_BANDWIDTH: f64 = 1e-4;

/// Below this ASG bandwidth the SG⊗ASG closed form is known to be inaccurate.
pub const CONVOLUTION_ACCURATE_BANDWIDTH: f64 = 50.0;

const ORTHONORMAL_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalGaussian {
    pub axis: UnitVec3,
    pub sharpness: f64,
    pub amplitude: Rgb,
}

impl SphericalGaussian {
    pub fn new(axis: UnitVec3, sharpness: f64, amplitude: Rgb) -> Result<Self> {
        if !(sharpness > 0.0 && sharpness.is_finite()) {
            return Err(Error::invalid(format!(
                "SG sharpness must be positive and finite, got {sharpness}"
            )));
        }
        check_amplitude(amplitude)?;
        Ok(SphericalGaussian {
            axis,
            sharpness,
            amplitude,
        })
    }

    pub fn eval(&self, v: UnitVec3) -> Rgb {
        eval_sg(self, v)
    }

    /// Exact integral over the sphere: `2π a / ν · (1 − e^{−2ν})`.
    pub fn integral(&self) -> Rgb {
        let nu = self.sharpness;
        self.amplitude * (2.0 * PI * (-(-2.0 * nu).exp_m1()) / nu)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnisotropicSphericalGaussian {
    pub lobe: UnitVec3,
    pub tangent: UnitVec3,
    pub bitangent: UnitVec3,
    pub bandwidth_tangent: f64,
    pub bandwidth_bitangent: f64,
    pub amplitude: Rgb,
}

impl AnisotropicSphericalGaussian {
    /// Validates the frame and raises bandwidths in `(0, MIN_BANDWIDTH)` to
    /// the floor. Non-positive bandwidths are rejected.
    pub fn new(
        lobe: UnitVec3,
        tangent: UnitVec3,
        bitangent: UnitVec3,
        bandwidth_tangent: f64,
        bandwidth_bitangent: f64,
        amplitude: Rgb,
    ) -> Result<Self> {
        for (name, d) in [
            ("lobe·tangent", lobe.dot(tangent)),
            ("lobe·bitangent", lobe.dot(bitangent)),
            ("tangent·bitangent", tangent.dot(bitangent)),
        ] {
            if d.abs() > ORTHONORMAL_TOLERANCE {
                return Err(Error::NotOrthonormal(format!("{name} = {d:e}")));
            }
        }
        for (name, b) in [("λ", bandwidth_tangent), ("μ", bandwidth_bitangent)] {
            if !(b > 0.0 && b.is_finite()) {
                return Err(Error::invalid(format!(
                    "ASG bandwidth {name} must be positive and finite, got {b}"
                )));
            }
        }
        check_amplitude(amplitude)?;
        Ok(AnisotropicSphericalGaussian {
            lobe,
            tangent,
            bitangent,
            bandwidth_tangent: bandwidth_tangent.max(MIN_BANDWIDTH),
            bandwidth_bitangent: bandwidth_bitangent.max(MIN_BANDWIDTH),
            amplitude,
        })
    }

    pub fn eval(&self, v: UnitVec3) -> Rgb {
        eval_asg(self, v)
    }

    pub fn integral(&self) -> Rgb {
        asg_integral(self)
    }
}

fn check_amplitude(a: Rgb) -> Result<()> {
    if a.is_finite() && a.is_non_negative() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "amplitude must be finite and non-negative, got {:?}",
            a.0
        )))
    }
}

pub fn eval_sg(sg: &SphericalGaussian, v: UnitVec3) -> Rgb {
    sg.amplitude * (sg.sharpness * (v.dot(sg.axis) - 1.0)).exp()
}

pub fn eval_asg(asg: &AnisotropicSphericalGaussian, v: UnitVec3) -> Rgb {
    let smooth = v.dot(asg.lobe).max(0.0);
    if smooth == 0.0 {
        return Rgb::BLACK;
    }
    let vx = v.dot(asg.tangent);
    let vy = v.dot(asg.bitangent);
    asg.amplitude
        * (smooth * (-asg.bandwidth_tangent * vx * vx - asg.bandwidth_bitangent * vy * vy).exp())
}

/// ASG in polar form. `theta`, `phi` and `eta` are the angles between the
/// evaluation direction and the lobe, tangent and bitangent axes.
pub fn eval_asg_polar(theta: f64, phi: f64, eta: f64, lambda: f64, mu: f64, c: Rgb) -> Rgb {
    let smooth = theta.cos().max(0.0);
    if smooth == 0.0 {
        return Rgb::BLACK;
    }
    let cp = phi.cos();
    let ce = eta.cos();
    c * (smooth * (-lambda * cp * cp - mu * ce * ce).exp())
}

/// `π / √(λμ) · c`, the large-bandwidth approximation of the ASG integral.
pub fn asg_integral(asg: &AnisotropicSphericalGaussian) -> Rgb {
    asg.amplitude * (PI / (asg.bandwidth_tangent * asg.bandwidth_bitangent).sqrt())
}

/// The ASG whose value at `p` approximates `∫ G_a · G_sg` when the SG is
/// centred on `p`.
///
/// An SG of sharpness `ν` behaves like an ASG with both bandwidths `ν/2`
/// near its axis (`e^{ν(v·p−1)} ≈ e^{−ν/2 |v−p|²}`), so the Gaussian product
/// rule is applied with `ν/2`. Both amplitudes multiply into the result.
pub fn convolved_asg(
    asg: &AnisotropicSphericalGaussian,
    sg: &SphericalGaussian,
) -> AnisotropicSphericalGaussian {
    let nu = 0.5 * sg.sharpness;
    let lambda = asg.bandwidth_tangent;
    let mu = asg.bandwidth_bitangent;
    let scale = PI / ((lambda + nu) * (mu + nu)).sqrt();
    AnisotropicSphericalGaussian {
        lobe: asg.lobe,
        tangent: asg.tangent,
        bitangent: asg.bitangent,
        bandwidth_tangent: (nu * lambda / (nu + lambda)).max(MIN_BANDWIDTH),
        bandwidth_bitangent: (nu * mu / (nu + mu)).max(MIN_BANDWIDTH),
        amplitude: asg.amplitude * sg.amplitude * scale,
    }
}

/// Product integral `∫ G_a(v) G_sg(v) dv`, evaluated in closed form.
///
/// Accuracy degrades when either ASG bandwidth is below
/// [`CONVOLUTION_ACCURATE_BANDWIDTH`]; the function still returns a value.
pub fn convolve_sg_asg(asg: &AnisotropicSphericalGaussian, sg: &SphericalGaussian) -> Rgb {
    eval_asg(&convolved_asg(asg, sg), sg.axis)
}

/// Collapse an ASG into an SG on the same lobe with sharpness `2λ`, where
/// `λ` is the larger of the two bandwidths.
pub fn asg_to_sg(asg: &AnisotropicSphericalGaussian) -> SphericalGaussian {
    let lambda = asg.bandwidth_tangent.max(asg.bandwidth_bitangent);
    SphericalGaussian {
        axis: asg.lobe,
        sharpness: 2.0 * lambda,
        amplitude: asg.amplitude,
    }
}

/// Exact `∫ G1 G2 dv = 4π a1 a2 e^{−(ν1+ν2)} sinh(‖ν1p1+ν2p2‖)/‖ν1p1+ν2p2‖`.
pub fn sg_product_integral(a: &SphericalGaussian, b: &SphericalGaussian) -> Rgb {
    let sum = a.axis * a.sharpness + b.axis * b.sharpness;
    let r = sum.length();
    let total = a.sharpness + b.sharpness;
    // sinh(r)/r · e^{-total} = (e^{r-total} - e^{-r-total}) / (2r)
    let value = if r < 1e-4 {
        let r2 = r * r;
        (-total).exp() * (1.0 + r2 / 6.0 + r2 * r2 / 120.0)
    } else {
        ((r - total).exp() * -(-2.0 * r).exp_m1()) / (2.0 * r)
    };
    a.amplitude * b.amplitude * (4.0 * PI * value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::Vec3;

    fn z_asg(lambda: f64, mu: f64) -> AnisotropicSphericalGaussian {
        AnisotropicSphericalGaussian::new(
            UnitVec3::Z,
            UnitVec3::X,
            UnitVec3::Y,
            lambda,
            mu,
            Rgb::WHITE,
        )
        .unwrap()
    }

    #[test]
    fn sg_at_axis_is_amplitude() {
        let sg = SphericalGaussian::new(UnitVec3::Z, 37.0, Rgb::new(0.2, 0.5, 3.0)).unwrap();
        assert_eq!(sg.eval(UnitVec3::Z), Rgb::new(0.2, 0.5, 3.0));
    }

    #[test]
    fn sg_perpendicular_unit_sharpness() {
        let sg = SphericalGaussian::new(UnitVec3::Z, 1.0, Rgb::WHITE).unwrap();
        let v = sg.eval(UnitVec3::X);
        for c in v.0 {
            assert!((c - (-1.0f64).exp()).abs() < 1e-15);
        }
        assert!((v[0] - 0.367879).abs() < 1e-6);
    }

    #[test]
    fn flat_sg_is_constant() {
        let sg = SphericalGaussian::new(UnitVec3::Z, 1e-12, Rgb::WHITE).unwrap();
        for v in [UnitVec3::X, -UnitVec3::Z, UnitVec3::new(1.0, 2.0, -3.0).unwrap()] {
            assert!((sg.eval(v)[0] - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn sg_rejects_bad_sharpness() {
        assert!(SphericalGaussian::new(UnitVec3::Z, 0.0, Rgb::WHITE).is_err());
        assert!(SphericalGaussian::new(UnitVec3::Z, f64::NAN, Rgb::WHITE).is_err());
        assert!(SphericalGaussian::new(UnitVec3::Z, 1.0, Rgb::new(-1.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn asg_special_directions() {
        let asg = z_asg(3.0, 7.0);
        assert_eq!(asg.eval(UnitVec3::Z), Rgb::WHITE);
        assert_eq!(asg.eval(-UnitVec3::Z), Rgb::BLACK);
        assert_eq!(asg.eval(UnitVec3::new(0.2, 0.1, -0.5).unwrap()), Rgb::BLACK);
        assert_eq!(asg.eval(UnitVec3::X), Rgb::BLACK);
    }

    #[test]
    fn asg_construction_checks() {
        let skew = UnitVec3::new(1.0, 0.0, 0.01).unwrap();
        assert!(matches!(
            AnisotropicSphericalGaussian::new(UnitVec3::Z, skew, UnitVec3::Y, 1.0, 1.0, Rgb::WHITE),
            Err(Error::NotOrthonormal(_))
        ));
        assert!(AnisotropicSphericalGaussian::new(
            UnitVec3::Z,
            UnitVec3::X,
            UnitVec3::Y,
            0.0,
            1.0,
            Rgb::WHITE
        )
        .is_err());
        let floored = z_asg(1e-9, 2.0);
        assert_eq!(floored.bandwidth_tangent, MIN_BANDWIDTH);
        assert_eq!(floored.bandwidth_bitangent, 2.0);
    }

    #[test]
    fn polar_form_special_angles() {
        let c = Rgb::new(1.0, 2.0, 3.0);
        let half = std::f64::consts::FRAC_PI_2;
        let at_lobe = eval_asg_polar(0.0, half, half, 5.0, 9.0, c);
        for ch in 0..3 {
            assert!((at_lobe[ch] - c[ch]).abs() < 1e-12);
        }
        assert!(eval_asg_polar(half, 0.3, 0.4, 5.0, 9.0, c).max_component() < 1e-15);
    }

    #[test]
    fn asg_integral_closed_form() {
        assert!((asg_integral(&z_asg(100.0, 100.0))[0] - PI / 100.0).abs() < 1e-15);
        assert!((asg_integral(&z_asg(400.0, 100.0))[0] - PI / 200.0).abs() < 1e-15);
        assert!((PI / 100.0 - 0.0314159).abs() < 1e-7);
        assert!((PI / 200.0 - 0.0157080).abs() < 1e-7);
    }

    #[test]
    fn convolution_at_lobe_axis() {
        // ν = 100 acts as bandwidth 50: π / √((100+50)(100+50)) = π/150.
        let asg = z_asg(100.0, 100.0);
        let sg = SphericalGaussian::new(UnitVec3::Z, 100.0, Rgb::WHITE).unwrap();
        let h = convolve_sg_asg(&asg, &sg);
        assert!((h[0] - PI / 150.0).abs() < 1e-15);
    }

    #[test]
    fn convolution_behind_lobe_is_zero() {
        let asg = z_asg(100.0, 100.0);
        let sg = SphericalGaussian::new(UnitVec3::new(0.3, 0.0, -1.0).unwrap(), 100.0, Rgb::WHITE)
            .unwrap();
        assert_eq!(convolve_sg_asg(&asg, &sg), Rgb::BLACK);
    }

    #[test]
    fn convolution_scales_with_amplitudes() {
        let mut asg = z_asg(60.0, 80.0);
        let sg = SphericalGaussian::new(UnitVec3::new(0.1, 0.2, 1.0).unwrap(), 90.0, Rgb::WHITE)
            .unwrap();
        let base = convolve_sg_asg(&asg, &sg);
        asg.amplitude = Rgb::new(2.0, 3.0, 0.5);
        let scaled = convolve_sg_asg(&asg, &sg);
        for ch in 0..3 {
            assert!((scaled[ch] - base[ch] * asg.amplitude[ch]).abs() <= 1e-15 * scaled[ch].abs());
        }
    }

    #[test]
    fn asg_to_sg_uses_larger_bandwidth() {
        let sg = asg_to_sg(&z_asg(100.0, 100.0));
        assert_eq!(sg.axis, UnitVec3::Z);
        assert_eq!(sg.sharpness, 200.0);
        assert_eq!(sg.amplitude, Rgb::WHITE);
        assert_eq!(asg_to_sg(&z_asg(25.0, 100.0)).sharpness, 200.0);
        assert_eq!(sg.eval(UnitVec3::Z), z_asg(100.0, 100.0).eval(UnitVec3::Z));
    }

    #[test]
    fn asg_to_sg_integral_gap() {
        // λ=100, μ=25: the SG keeps the narrow axis only, so its energy is
        // smaller than the ASG's by √(λ/μ) = 2 (up to e^{-400}).
        let asg = z_asg(100.0, 25.0);
        let ratio = asg_integral(&asg)[0] / asg_to_sg(&asg).integral()[0];
        assert!((ratio - 2.0).abs() < 1e-12, "ratio {ratio}");
    }

    #[test]
    fn sg_product_collinear_and_antipodal() {
        let a = SphericalGaussian::new(UnitVec3::Z, 100.0, Rgb::WHITE).unwrap();
        let v = sg_product_integral(&a, &a)[0];
        let expect = PI / 100.0 * -(-400.0f64).exp_m1();
        assert!((v - expect).abs() < 1e-15);
        assert!((v - 0.0314159).abs() < 1e-7);

        let nu = 3.0;
        let p = SphericalGaussian::new(UnitVec3::Z, nu, Rgb::WHITE).unwrap();
        let q = SphericalGaussian::new(-UnitVec3::Z, nu, Rgb::WHITE).unwrap();
        let anti = sg_product_integral(&p, &q)[0];
        assert!((anti - 4.0 * PI * (-2.0 * nu).exp()).abs() < 1e-15);
    }

    #[test]
    fn sg_product_series_branch_is_continuous() {
        let nu = 0.75;
        let p = SphericalGaussian::new(UnitVec3::Z, nu, Rgb::WHITE).unwrap();
        // ‖ν p1 + ν p2‖ = 2ν sin(δ/2) straddling the 1e-4 switch
        for target in [0.99e-4, 1.01e-4] {
            let delta = 2.0 * (target / (2.0 * nu)).asin();
            let q = SphericalGaussian::new(
                UnitVec3::new(delta.sin(), 0.0, -delta.cos()).unwrap(),
                nu,
                Rgb::WHITE,
            )
            .unwrap();
            let r = (p.axis * nu + q.axis * nu).length();
            let exact = 4.0 * PI * (-2.0 * nu).exp() * r.sinh() / r;
            let got = sg_product_integral(&p, &q)[0];
            assert!(((got - exact) / exact).abs() < 1e-12);
        }
    }

    #[test]
    fn sg_integral_closed_form() {
        let sg = SphericalGaussian::new(UnitVec3::Z, 100.0, Rgb::WHITE).unwrap();
        assert!((sg.integral()[0] - 0.0628318).abs() < 1e-6);
    }

    #[test]
    fn sg_and_asg_peak_on_axis() {
        let sg = SphericalGaussian::new(UnitVec3::Z, 5.0, Rgb::WHITE).unwrap();
        let asg = z_asg(5.0, 11.0);
        for (x, y) in [(0.1, 0.0), (0.0, 0.1), (0.3, -0.2)] {
            let v = Vec3::new(x, y, 1.0).normalized().unwrap();
            assert!(sg.eval(v)[0] < 1.0);
            assert!(asg.eval(v)[0] < 1.0);
        }
    }
}
