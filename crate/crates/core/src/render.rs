//! Forward CPU renderer: direct lighting plus one-bounce indirect specular.

use rayon::prelude::*;

use crate::brdf;
use crate::image::Image;
use crate::interreflect::{self, ShadingMode, ShadingPoint, DEFAULT_DISK_RADIUS};
use crate::math::{Rgb, UnitVec3};
use crate::oracle::{self, QuadratureSpec};
use crate::scene::{occluded, query_proxies, ray_scene_intersect, Scene};

/// Offset along the normal for shadow-ray origins.
const SHADOW_BIAS: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    ApproxAsg,
    ApproxSg,
    Reference,
}

impl RenderMode {
    pub fn name(self) -> &'static str {
        match self {
            RenderMode::ApproxAsg => "approx-asg",
            RenderMode::ApproxSg => "approx-sg",
            RenderMode::Reference => "reference",
        }
    }
}

impl std::str::FromStr for RenderMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "approx-asg" => Ok(RenderMode::ApproxAsg),
            "approx-sg" => Ok(RenderMode::ApproxSg),
            "reference" => Ok(RenderMode::Reference),
            _ => Err(format!(
                "unknown mode {s:?} (expected approx-asg, approx-sg or reference)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderParams {
    pub disk_radius: f64,
    /// Samples per pixel and reflector for the reference integrator.
    pub spp: usize,
    pub seed: u64,
    pub indirect_only: bool,
}

impl Default for RenderParams {
    fn default() -> Self {
        RenderParams {
            disk_radius: DEFAULT_DISK_RADIUS,
            spp: 4096,
            seed: 0,
            indirect_only: false,
        }
    }
}

/// Direct lighting at a surface point: Lambert diffuse plus GGX specular,
/// with a shadow ray per light.
pub fn direct_lighting(scene: &Scene, x: &ShadingPoint) -> Rgb {
    let origin = x.position + x.normal * SHADOW_BIAS;
    scene
        .lights
        .iter()
        .filter_map(|light| {
            let cos = light.direction.dot(x.normal);
            if cos <= 0.0 || occluded(scene, origin, light.direction, f64::INFINITY) {
                return None;
            }
            let diffuse = x.material.diffuse * std::f64::consts::FRAC_1_PI;
            let spec = brdf::brdf_eval(light.direction, x.view, x.normal, &x.material);
            Some(light.radiance * (diffuse + spec) * cos)
        })
        .sum()
}

/// One-bounce indirect specular at `x` summed over every candidate reflector.
pub fn indirect_specular(
    scene: &Scene,
    x: &ShadingPoint,
    mode: RenderMode,
    params: &RenderParams,
    pixel_index: u64,
) -> Rgb {
    query_proxies(scene, x.position)
        .into_iter()
        .map(|rect| match mode {
            RenderMode::ApproxAsg => interreflect::shade_indirect_specular(
                x,
                rect,
                &scene.lights,
                params.disk_radius,
                ShadingMode::Asg,
            ),
            RenderMode::ApproxSg => interreflect::shade_indirect_specular(
                x,
                rect,
                &scene.lights,
                params.disk_radius,
                ShadingMode::SgFast,
            ),
            RenderMode::Reference => {
                let stream = pixel_index.wrapping_mul(1 << 20) ^ rect.id as u64;
                let spec = QuadratureSpec {
                    sample_count: params.spp.max(1),
                    seed: oracle::mix_seed(params.seed, stream),
                };
                oracle::mc_one_bounce(x, rect, &scene.lights, spec)
            }
        })
        .sum()
}

fn shade_pixel(scene: &Scene, mode: RenderMode, params: &RenderParams, px: usize, py: usize) -> Rgb {
    let Some(x) = primary_hit(scene, px, py) else {
        return scene.background;
    };
    let pixel_index = (py * scene.camera.width + px) as u64;
    let indirect = indirect_specular(scene, &x, mode, params, pixel_index);
    if params.indirect_only {
        indirect
    } else {
        direct_lighting(scene, &x) + indirect
    }
}

/// Render the scene. Rows are shaded in parallel; every pixel's random
/// stream is derived from `(seed, pixel)` so the output does not depend on
/// the thread count.
pub fn render(scene: &Scene, mode: RenderMode, params: &RenderParams) -> Image {
    let (w, h) = (scene.camera.width, scene.camera.height);
    let mut img = Image::new(w, h);
    img.pixels
        .par_chunks_mut(w)
        .enumerate()
        .for_each(|(py, row)| {
            for (px, out) in row.iter_mut().enumerate() {
                *out = shade_pixel(scene, mode, params, px, py);
            }
        });
    img
}

/// Shading point seen by the camera through pixel `(px, py)`, if any.
pub fn primary_hit(scene: &Scene, px: usize, py: usize) -> Option<ShadingPoint> {
    let dir: UnitVec3 = scene.camera.ray_direction(px, py);
    let hit = ray_scene_intersect(scene, scene.camera.position, dir)?;
    let rect = scene.rectangle(hit.rect_id)?;
    Some(ShadingPoint {
        position: hit.point,
        normal: hit.normal,
        view: -dir,
        material: rect.material,
    })
}
