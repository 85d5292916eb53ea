//! Spherical Gaussian building blocks: evaluation, integrals, convolution
//! and the product integral.

use interreflect::math::{Rgb, UnitVec3};
use interreflect::oracle::{spherical_quadrature, QuadratureSpec};
use interreflect::sg::{self, AnisotropicSphericalGaussian, SphericalGaussian};

fn main() -> interreflect::Result<()> {
    let lobe = SphericalGaussian::new(UnitVec3::Z, 40.0, Rgb::WHITE)?;
    println!("SG(ν=40) integral        {:.6}", lobe.integral()[0]);

    let asg = AnisotropicSphericalGaussian::new(UnitVec3::Z, UnitVec3::X, UnitVec3::Y, 80.0, 20.0, Rgb::WHITE)?;
    let numeric = spherical_quadrature(|v| asg.eval(v)[0], QuadratureSpec::lattice(1_000_000));
    println!("ASG(80, 20) integral     {:.6} (quadrature {:.6})", sg::asg_integral(&asg)[0], numeric);

    let tilted = SphericalGaussian::new(UnitVec3::from_spherical(8f64.to_radians(), 0.3), 160.0, Rgb::WHITE)?;
    let closed = sg::convolve_sg_asg(&asg, &tilted)[0];
    let numeric = spherical_quadrature(|v| asg.eval(v)[0] * tilted.eval(v)[0], QuadratureSpec::lattice(1_000_000));
    println!("SG⊗ASG                   {closed:.6e} (quadrature {numeric:.6e})");

    let collapsed = sg::asg_to_sg(&asg);
    println!("ASG→SG sharpness         {}", collapsed.sharpness);
    let product = sg::sg_product_integral(&collapsed, &tilted)[0];
    println!("SG·SG product integral   {product:.6e}");
    Ok(())
}
