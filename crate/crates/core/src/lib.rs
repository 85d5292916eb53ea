//! Real-time style approximation of one-bounce glossy interreflection.
//!
//! Scene geometry is represented by rectangle proxies lit by distant lights.
//! For each receiver point and reflector the crate locates the specular peak,
//! integrates the reflected radiance over a sampling disk in closed form,
//! fits an anisotropic spherical Gaussian light to it and convolves that
//! light with the receiver's GGX lobe expressed as a spherical Gaussian.
//!
//! A brute-force Monte Carlo integrator and spherical quadratures live in
//! [`oracle`] so each approximation layer can be checked independently.
//!
//! ```
//! use interreflect::prelude::*;
//!
//! let floor = RectangleProxy::new(
//!     0,
//!     Vec3::ZERO,
//!     Vec3::new(0.0, 1.0, 0.0),
//!     Vec3::new(1.0, 0.0, 0.0),
//!     (2.0, 2.0),
//!     Material::new(0.1, Rgb::splat(0.9), Rgb::BLACK).unwrap(),
//! )
//! .unwrap();
//! let wall_point = ShadingPoint {
//!     position: Vec3::new(0.0, 0.6, -1.0),
//!     normal: UnitVec3::Z,
//!     view: UnitVec3::new(0.0, 0.2, 1.0).unwrap(),
//!     material: Material::new(0.2, Rgb::splat(0.9), Rgb::BLACK).unwrap(),
//! };
//! let sun = DirectionalLight::new(Vec3::new(0.0, 1.0, 1.0), Rgb::splat(3.0)).unwrap();
//! let l = shade_indirect_specular(&wall_point, &floor, &[sun], 0.5, ShadingMode::Asg);
//! assert!(l.max_component() > 0.0);
//! ```

pub mod brdf;
pub mod camera;
pub mod cli;
pub mod error;
pub mod image;
pub mod interreflect;
pub mod math;
pub mod oracle;
pub mod render;
pub mod scene;
pub mod sg;

pub use error::{Degeneracy, Error, Result};

pub mod prelude {
    pub use crate::brdf::Material;
    pub use crate::camera::Camera;
    pub use crate::image::{image_metrics, write_image, Image};
    pub use crate::interreflect::{
        shade_indirect_specular, ShadingMode, ShadingPoint, DEFAULT_DISK_RADIUS,
    };
    pub use crate::math::{Rgb, UnitVec3, Vec3};
    pub use crate::render::{render, RenderMode, RenderParams};
    pub use crate::scene::{load_scene, DirectionalLight, RectangleProxy, Scene};
    pub use crate::sg::{AnisotropicSphericalGaussian, SphericalGaussian};
}
