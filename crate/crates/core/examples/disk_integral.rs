//! Fitted falloff around the specular peak and the closed-form disk
//! integral it yields, across roughness.

use interreflect::interreflect::{aperture_term, disk_integral_factor, k_factor};
use interreflect::oracle::fit_l2_error;

fn main() {
    let sigma = 30f64.to_radians();
    let t = aperture_term(0.5, sigma.cos());
    println!("aperture t = {t:.4}");
    println!("{:>6} {:>9} {:>10} {:>10}", "α", "k", "factor", "L2 fit");
    for alpha in [0.05, 0.1, 0.2, 0.3, 0.5, 0.8] {
        let k = k_factor(sigma.cos(), alpha);
        println!(
            "{alpha:>6} {k:>9.3} {:>10.5} {:>10.5}",
            disk_integral_factor(k, t),
            fit_l2_error(sigma, alpha, std::f64::consts::FRAC_PI_4)
        );
    }
}
