//! Closed-form SG⊗ASG convolution against quadrature over a bandwidth sweep.

use interreflect::oracle::{convolution_error_csv, convolution_error_report_with, QuadratureSpec};

fn main() -> interreflect::Result<()> {
    let rows = convolution_error_report_with(&[10.0, 25.0, 50.0, 100.0, 200.0], QuadratureSpec::lattice(500_000))?;
    print!("{}", convolution_error_csv(&rows));
    Ok(())
}
