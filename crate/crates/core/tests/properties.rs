use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;

use interreflect::brdf::{self, Material};
use interreflect::interreflect::{
    attenuation_axes, disk_integral_factor, exact_integrand, find_specular_peak, fitted_integrand,
    shade_indirect_specular, SamplingDisk, ShadingMode, ShadingPoint, K_SERIES_THRESHOLD,
};
use interreflect::math::{Rgb, UnitVec3, Vec3};
use interreflect::oracle::{mc_one_bounce, QuadratureSpec};
use interreflect::scene::{intersection_area_fraction, DirectionalLight, RectangleProxy};
use interreflect::sg::{self, AnisotropicSphericalGaussian, SphericalGaussian};

fn unit() -> impl Strategy<Value = UnitVec3> {
    (-1.0f64..1.0, 0.0..2.0 * PI).prop_map(|(z, phi)| {
        let r = (1.0 - z * z).sqrt();
        UnitVec3::new(r * phi.cos(), r * phi.sin(), z).unwrap()
    })
}

fn point(extent: f64) -> impl Strategy<Value = Vec3> {
    (-extent..extent, -extent..extent, -extent..extent).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn rotate(v: Vec3, axis: UnitVec3, angle: f64) -> Vec3 {
    let k = axis.get();
    v * angle.cos() + k.cross(v) * angle.sin() + k * (k.dot(v) * (1.0 - angle.cos()))
}

fn glossy(alpha: f64) -> Material {
    Material::new(alpha, Rgb::new(0.9, 0.6, 0.3), Rgb::BLACK).unwrap()
}

/// Floor reflector, a receiver above it facing sideways and a sun.
fn bounce_setup(
    alpha_r: f64,
    alpha_x: f64,
    x_offset: (f64, f64),
    light: (f64, f64),
) -> (RectangleProxy, ShadingPoint, DirectionalLight) {
    let floor = RectangleProxy::new(
        3,
        Vec3::new(0.0, 0.0, 1.0),
        Vec3::new(0.0, 1.0, 0.0),
        Vec3::new(1.0, 0.0, 0.0),
        (1.5, 1.2),
        glossy(alpha_r),
    )
    .unwrap();
    let x = ShadingPoint {
        position: Vec3::new(x_offset.0, 0.5 + x_offset.1, 0.0),
        normal: UnitVec3::Z,
        view: UnitVec3::new(0.1, 0.4, 1.0).unwrap(),
        material: glossy(alpha_x),
    };
    let sun = DirectionalLight::new(Vec3::new(light.0, 1.0, light.1), Rgb::new(1.0, 2.0, 0.5)).unwrap();
    (floor, x, sun)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn unit_vectors_have_unit_norm(v in point(100.0)) {
        if let Some(u) = v.normalized() {
            prop_assert!((u.get().length() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn asg_polar_matches_cartesian(v in unit(), lambda in 1e-3f64..2000.0, mu in 1e-3f64..2000.0) {
        let asg = AnisotropicSphericalGaussian::new(
            UnitVec3::Z, UnitVec3::X, UnitVec3::Y, lambda, mu, Rgb::new(0.3, 1.0, 7.0),
        ).unwrap();
        let theta = v.dot(UnitVec3::Z).clamp(-1.0, 1.0).acos();
        let phi = v.dot(UnitVec3::X).clamp(-1.0, 1.0).acos();
        let eta = v.dot(UnitVec3::Y).clamp(-1.0, 1.0).acos();
        let polar = sg::eval_asg_polar(theta, phi, eta, lambda, mu, asg.amplitude);
        let cart = sg::eval_asg(&asg, v);
        for c in 0..3 {
            prop_assert!((polar[c] - cart[c]).abs() <= 1e-9);
        }
    }

    #[test]
    fn lobes_are_bounded_by_their_amplitude(axis in unit(), v in unit(), nu in 1e-3f64..5000.0, lambda in 1e-3f64..5000.0, mu in 1e-3f64..5000.0) {
        let amp = Rgb::new(0.2, 1.0, 3.0);
        let g = SphericalGaussian::new(axis, nu, amp).unwrap();
        let (t, b) = axis.orthonormal_basis();
        let a = AnisotropicSphericalGaussian::new(axis, t, b, lambda, mu, amp).unwrap();
        for value in [sg::eval_sg(&g, v), sg::eval_asg(&a, v)] {
            prop_assert!(value.is_non_negative());
            for c in 0..3 {
                prop_assert!(value[c] <= amp[c] * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn convolution_scales_with_either_amplitude(p in unit(), lambda in 1.0f64..500.0, mu in 1.0f64..500.0, nu in 1.0f64..500.0, s in 1e-3f64..1e3) {
        let asg = AnisotropicSphericalGaussian::new(UnitVec3::Z, UnitVec3::X, UnitVec3::Y, lambda, mu, Rgb::new(1.0, 0.5, 0.25)).unwrap();
        let g = SphericalGaussian::new(p, nu, Rgb::new(0.7, 0.8, 0.9)).unwrap();
        let base = sg::convolve_sg_asg(&asg, &g);
        let scaled_asg = AnisotropicSphericalGaussian { amplitude: asg.amplitude * s, ..asg };
        let scaled_sg = SphericalGaussian { amplitude: g.amplitude * s, ..g };
        for out in [sg::convolve_sg_asg(&scaled_asg, &g), sg::convolve_sg_asg(&asg, &scaled_sg)] {
            for c in 0..3 {
                prop_assert!((out[c] - s * base[c]).abs() <= 1e-12 * (s * base[c]).abs() + 1e-300);
            }
        }
    }

    #[test]
    fn product_integral_is_symmetric(a in unit(), b in unit(), n1 in 1e-3f64..800.0, n2 in 1e-3f64..800.0) {
        let g1 = SphericalGaussian::new(a, n1, Rgb::WHITE).unwrap();
        let g2 = SphericalGaussian::new(b, n2, Rgb::splat(2.0)).unwrap();
        let x = sg::sg_product_integral(&g1, &g2)[0];
        let y = sg::sg_product_integral(&g2, &g1)[0];
        prop_assert!(x >= 0.0 && x.is_finite());
        prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1e-300));
    }

    #[test]
    fn warp_reflects_view_and_keeps_amplitude(n in unit(), v in unit(), alpha in 0.02f64..1.0) {
        prop_assume!(n.dot(v) > 1e-3);
        let ndf = brdf::ndf_as_sg(n, alpha);
        let warped = brdf::warp_ndf_to_light_domain(&ndf, v).unwrap();
        prop_assert_eq!(warped.amplitude, ndf.amplitude);
        prop_assert!((warped.axis.dot(n) - v.dot(n)).abs() <= 1e-9);
        prop_assert!((warped.sharpness - ndf.sharpness / (4.0 * n.dot(v))).abs() <= 1e-9 * warped.sharpness);
    }

    #[test]
    fn peak_half_vector_is_the_normal(n in unit(), e in unit(), i in unit(), c in point(5.0), s in -3.0f64..3.0, t in -3.0f64..3.0, h in 0.01f64..5.0) {
        prop_assume!(n.cross(e).length() > 0.1 && i.dot(n) > 0.02);
        let rect = RectangleProxy::new(0, c, n.get(), e.get(), (1.0, 1.0), glossy(0.3)).unwrap();
        let x = rect.point_at(s, t) + rect.normal * h;
        let peak = find_specular_peak(&rect, x, i).unwrap();
        let half = (i.get() + (x - peak.position).normalized().unwrap().get()).normalized().unwrap();
        prop_assert!((half.get() - rect.normal.get()).max_abs_component() <= 1e-6);
        prop_assert!(rect.plane_distance(peak.position).abs() <= 1e-6);
    }

    #[test]
    fn attenuation_axes_are_orthonormal(n in unit(), peak in point(3.0), x in point(3.0)) {
        let axes = attenuation_axes(peak, x, n);
        for a in [axes.u, axes.v] {
            prop_assert!((a.get().length() - 1.0).abs() < 1e-9);
            prop_assert!(a.dot(n).abs() < 1e-9);
        }
        prop_assert!(axes.u.dot(axes.v).abs() < 1e-9);
    }

    #[test]
    fn area_fraction_is_a_fraction(s in -4.0f64..4.0, t in -4.0f64..4.0, r in 1e-3f64..3.0, hu in 0.05f64..2.0, hv in 0.05f64..2.0) {
        let rect = RectangleProxy::new(0, Vec3::new(0.3, -1.0, 2.0), Vec3::new(0.2, 1.0, -0.1), Vec3::new(1.0, 0.0, 0.4), (hu, hv), glossy(0.3)).unwrap();
        let disk = SamplingDisk { center: rect.point_at(s, t), radius: r, normal: rect.normal, reference_tangent: rect.edge_u };
        let f = intersection_area_fraction(&rect, &disk);
        prop_assert!((0.0..=1.0).contains(&f));
        let farther = SamplingDisk { center: rect.point_at(s + s.signum() * 0.3, t), ..disk };
        prop_assert!(intersection_area_fraction(&rect, &farther) <= f + 1e-12);
    }

    #[test]
    fn integrand_identities(theta in 0.0f64..FRAC_PI_2, sigma in 0.0f64..1.5, alpha in 0.02f64..1.0, k in 0.0f64..200.0) {
        prop_assert!((exact_integrand(0.0, sigma, alpha) - 1.0).abs() < 1e-12);
        prop_assert!(fitted_integrand(theta, k) <= 1.0);
    }

    #[test]
    fn disk_factor_is_continuous_at_series_switch(t in 1e-4f64..1.0, sign in prop::sample::select(vec![-1.0, 1.0])) {
        let a = disk_integral_factor(sign * K_SERIES_THRESHOLD * (1.0 - 1e-9), t);
        let b = disk_integral_factor(sign * K_SERIES_THRESHOLD * (1.0 + 1e-9), t);
        prop_assert!((a - b).abs() <= 1e-6 * b.abs());
        prop_assert!(a > 0.0);
    }

    #[test]
    fn shading_is_linear_in_light(ar in 0.05f64..1.0, ax in 0.1f64..1.0, ox in -0.5f64..0.5, oy in 0.0f64..1.0, lx in -0.5f64..0.5, lz in 0.1f64..1.5, s in 1e-3f64..1e3) {
        let (rect, x, sun) = bounce_setup(ar, ax, (ox, oy), (lx, lz));
        for mode in [ShadingMode::Asg, ShadingMode::SgFast] {
            let one = shade_indirect_specular(&x, &rect, &[sun], 0.5, mode);
            let many = shade_indirect_specular(&x, &rect, &[sun.scaled(s)], 0.5, mode);
            prop_assert!(one.is_finite() && one.is_non_negative());
            for c in 0..3 {
                prop_assert!((many[c] - s * one[c]).abs() <= 1e-9 * (s * one[c]).abs() + 1e-300);
            }
        }
    }

    #[test]
    fn shading_is_invariant_under_rigid_motion(axis in unit(), angle in 0.0f64..2.0 * PI, shift in point(10.0), ar in 0.05f64..0.8, ox in -0.5f64..0.5, lx in -0.5f64..0.5, lz in 0.1f64..1.5) {
        let (rect, x, sun) = bounce_setup(ar, 0.3, (ox, 0.2), (lx, lz));
        let rot = |v: Vec3| rotate(v, axis, angle);
        let rect2 = RectangleProxy::new(rect.id, rot(rect.center) + shift, rot(rect.normal.get()), rot(rect.edge_u.get()), (rect.half_extent_u, rect.half_extent_v), rect.material).unwrap();
        let x2 = ShadingPoint {
            position: rot(x.position) + shift,
            normal: rot(x.normal.get()).normalized().unwrap(),
            view: rot(x.view.get()).normalized().unwrap(),
            material: x.material,
        };
        let sun2 = DirectionalLight::new(rot(sun.direction.get()), sun.radiance).unwrap();
        let a = shade_indirect_specular(&x, &rect, &[sun], 0.5, ShadingMode::Asg);
        let b = shade_indirect_specular(&x2, &rect2, &[sun2], 0.5, ShadingMode::Asg);
        for c in 0..3 {
            prop_assert!((a[c] - b[c]).abs() <= 1e-6 * a[c].abs().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reference_is_deterministic_and_linear(seed in any::<u64>(), s in 0.01f64..100.0, ox in -0.5f64..0.5) {
        let (rect, x, sun) = bounce_setup(0.3, 0.3, (ox, 0.3), (0.2, 0.8));
        let spec = QuadratureSpec::new(512, seed).unwrap();
        let a = mc_one_bounce(&x, &rect, &[sun], spec);
        prop_assert_eq!(a, mc_one_bounce(&x, &rect, &[sun], spec));
        let b = mc_one_bounce(&x, &rect, &[sun.scaled(s)], spec);
        for c in 0..3 {
            prop_assert!((b[c] - s * a[c]).abs() <= 1e-12 * (s * a[c]).abs() + 1e-300);
        }
    }
}
