//! Locate the mirror point of a sun on a floor as seen from a wall point,
//! and the attenuation frame built around it.

use interreflect::brdf::Material;
use interreflect::interreflect::{find_specular_peak, SamplingDisk};
use interreflect::math::{Rgb, UnitVec3, Vec3};
use interreflect::scene::RectangleProxy;

fn main() -> interreflect::Result<()> {
    let floor = RectangleProxy::new(
        0,
        Vec3::new(0.0, 0.0, 1.0),
        Vec3::new(0.0, 1.0, 0.0),
        Vec3::new(1.0, 0.0, 0.0),
        (2.0, 2.0),
        Material::new(0.2, Rgb::splat(0.9), Rgb::BLACK)?,
    )?;
    let x = Vec3::new(0.0, 1.0, 0.0);
    for elevation in [20.0f64, 35.0, 50.0, 70.0] {
        let e = elevation.to_radians();
        let sun = UnitVec3::new(0.0, e.sin(), e.cos()).expect("non-zero");
        let Some(peak) = find_specular_peak(&floor, x, sun) else {
            println!("{elevation:>4}°  no peak");
            continue;
        };
        let u = SamplingDisk::around_peak(&floor, &peak, 0.5).attenuation_axes(x).u.get();
        println!(
            "{elevation:>4}°  peak ({:.3}, {:.3}, {:.3})  cos σ {:.3}  u ({:.2}, {:.2}, {:.2})",
            peak.position.x, peak.position.y, peak.position.z, peak.cos_sigma, u.x, u.y, u.z
        );
    }
    Ok(())
}
