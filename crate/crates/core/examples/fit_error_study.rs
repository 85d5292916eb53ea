//! Exact vs. fitted disk integrand for one configuration, as CSV on stdout.

use interreflect::oracle::{fit_error_csv, fit_error_report};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("number"));
    let sigma = args.next().unwrap_or(30f64.to_radians());
    let roughness = args.next().unwrap_or(0.1);
    print!("{}", fit_error_csv(&fit_error_report(sigma, roughness, 32)));
}
