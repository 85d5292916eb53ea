//! Indirect-only approximation of the single-reflector scene against the
//! Monte Carlo reference, with image error metrics.

use interreflect::image::relative_luminance_rmse;
use interreflect::prelude::*;

fn main() -> interreflect::Result<()> {
    let scene = load_scene(concat!(env!("CARGO_MANIFEST_DIR"), "/scenes/single_reflector.toml"))?;
    let params = RenderParams { spp: 1024, indirect_only: true, ..RenderParams::default() };
    let reference = render(&scene, RenderMode::Reference, &params);
    for mode in [RenderMode::ApproxAsg, RenderMode::ApproxSg] {
        let approx = render(&scene, mode, &params);
        let m = image_metrics(&approx, &reference)?;
        println!(
            "{:<10} luminance RMSE {:.4e}  relative {:.3}  max |Δ| {:.4e}",
            mode.name(),
            m.rmse_luminance,
            relative_luminance_rmse(&approx, &reference)?,
            m.max_abs
        );
    }
    Ok(())
}
