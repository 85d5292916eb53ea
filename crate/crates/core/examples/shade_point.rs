//! Shade one wall point lit only by its reflection in a glossy floor, and
//! compare both approximations with the Monte Carlo integral.

use interreflect::brdf::Material;
use interreflect::interreflect::{shade_indirect_specular, trace_bounce, ShadingMode, ShadingPoint, DEFAULT_DISK_RADIUS};
use interreflect::math::{Rgb, UnitVec3, Vec3};
use interreflect::oracle::{mc_one_bounce_stats, QuadratureSpec};
use interreflect::scene::{DirectionalLight, RectangleProxy};

fn main() -> interreflect::Result<()> {
    let floor = RectangleProxy::new(
        0,
        Vec3::new(0.0, 0.0, 1.5),
        Vec3::new(0.0, 1.0, 0.0),
        Vec3::new(1.0, 0.0, 0.0),
        (1.5, 1.0),
        Material::new(0.1, Rgb::splat(0.9), Rgb::BLACK)?,
    )?;
    let sun = DirectionalLight::new(Vec3::new(0.0, 1.0, 1.0), Rgb::WHITE)?;
    let x = ShadingPoint {
        position: Vec3::new(0.0, 1.2, 0.0),
        normal: UnitVec3::Z,
        view: UnitVec3::new(0.0, 0.0, 1.0).expect("non-zero"),
        material: Material::new(0.3, Rgb::splat(0.9), Rgb::BLACK)?,
    };

    let trace = trace_bounce(&x, &floor, &sun, DEFAULT_DISK_RADIUS, ShadingMode::Asg).expect("regular configuration");
    println!("peak          {:?}", trace.peak.position);
    println!("disk total    {:.5}", trace.radiance.total[0]);
    println!("ASG λ, μ      {:.2}, {:.2}", trace.light.asg.bandwidth_tangent, trace.light.asg.bandwidth_bitangent);

    let asg = shade_indirect_specular(&x, &floor, &[sun], DEFAULT_DISK_RADIUS, ShadingMode::Asg);
    let fast = shade_indirect_specular(&x, &floor, &[sun], DEFAULT_DISK_RADIUS, ShadingMode::SgFast);
    let mc = mc_one_bounce_stats(&x, &floor, &[sun], QuadratureSpec::new(200_000, 1)?);
    println!("ASG           {:.5}", asg[0]);
    println!("SG fast       {:.5}", fast[0]);
    println!("Monte Carlo   {:.5} ± {:.5}", mc.mean[0], mc.std_error[0]);
    Ok(())
}
