//! Render the bundled Cornell-style box in every mode and write PPMs to the
//! directory given as the first argument (default: the system temp dir).

use std::path::PathBuf;
use std::time::Instant;

use interreflect::prelude::*;

fn main() -> interreflect::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let scene = load_scene(concat!(env!("CARGO_MANIFEST_DIR"), "/scenes/cornell.toml"))?;
    let params = RenderParams { spp: 256, ..RenderParams::default() };
    for mode in [RenderMode::ApproxAsg, RenderMode::ApproxSg, RenderMode::Reference] {
        let start = Instant::now();
        let img = render(&scene, mode, &params);
        let path = out.join(format!("cornell_{}.ppm", mode.name()));
        write_image(&img, &path)?;
        println!("{:<11} {:>8.1?}  {}", mode.name(), start.elapsed(), path.display());
    }
    Ok(())
}
