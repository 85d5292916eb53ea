//! TOML scene files.
//!
//! ```toml
//! background = [0.0, 0.0, 0.0]
//!
//! [camera]
//! position = [0.0, 1.0, 3.5]
//! look_at = [0.0, 1.0, 0.0]
//! up = [0.0, 1.0, 0.0]
//! vfov_deg = 40.0
//! width = 64
//! height = 64
//!
//! [[light]]
//! direction = [0.3, 1.0, 0.5]   # toward the light, need not be normalised
//! radiance = [3.0, 3.0, 3.0]
//!
//! [[rectangle]]
//! id = 0                        # optional, defaults to the list index
//! center = [0.0, 0.0, 0.0]
//! normal = [0.0, 1.0, 0.0]
//! edge_u = [1.0, 0.0, 0.0]
//! half_extents = [1.0, 1.0]
//! material = { roughness = 0.1, specular = [0.9, 0.9, 0.9], diffuse = [0.1, 0.1, 0.1] }
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::brdf::Material;
use crate::camera::Camera;
use crate::error::{Error, Result};
use crate::math::{Rgb, Vec3};

use super::{DirectionalLight, RectangleProxy, Scene};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    #[serde(default)]
    background: [f64; 3],
    camera: CameraEntry,
    #[serde(default, rename = "light")]
    lights: Vec<LightEntry>,
    #[serde(default, rename = "rectangle")]
    rectangles: Vec<RectangleEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CameraEntry {
    position: [f64; 3],
    look_at: [f64; 3],
    #[serde(default = "default_up")]
    up: [f64; 3],
    vfov_deg: f64,
    width: usize,
    height: usize,
}

fn default_up() -> [f64; 3] {
    [0.0, 1.0, 0.0]
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LightEntry {
    direction: [f64; 3],
    radiance: [f64; 3],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RectangleEntry {
    id: Option<u32>,
    center: [f64; 3],
    normal: [f64; 3],
    edge_u: [f64; 3],
    half_extents: [f64; 2],
    material: MaterialEntry,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MaterialEntry {
    roughness: f64,
    specular: [f64; 3],
    #[serde(default)]
    diffuse: [f64; 3],
}

fn vec3(a: [f64; 3]) -> Vec3 {
    Vec3::new(a[0], a[1], a[2])
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Parse scene text. `path` is only used in error messages.
pub fn parse_scene(text: &str, path: &Path) -> Result<Scene> {
    let raw: SceneFile = toml::from_str(text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.span().map(|s| line_of(text, s.start)).unwrap_or(0),
        message: e.message().to_string(),
    })?;
    build(raw).map_err(|e| match e {
        Error::InvalidParameter(message) | Error::NotOrthonormal(message) => Error::InvalidScene {
            path: path.to_path_buf(),
            message,
        },
        other => other,
    })
}

pub fn load_scene(path: impl AsRef<Path>) -> Result<Scene> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(PathBuf::from(path), e))?;
    parse_scene(&text, path)
}

fn build(raw: SceneFile) -> Result<Scene> {
    let c = raw.camera;
    let up = vec3(c.up)
        .normalized()
        .ok_or_else(|| Error::invalid("camera up vector is zero"))?;
    let camera = Camera::new(
        vec3(c.position),
        vec3(c.look_at),
        up,
        c.vfov_deg,
        c.width,
        c.height,
    )?;
    let lights = raw
        .lights
        .into_iter()
        .map(|l| DirectionalLight::new(vec3(l.direction), Rgb(l.radiance)))
        .collect::<Result<Vec<_>>>()?;
    let rectangles = raw
        .rectangles
        .into_iter()
        .enumerate()
        .map(|(index, r)| {
            let material = Material::new(
                r.material.roughness,
                Rgb(r.material.specular),
                Rgb(r.material.diffuse),
            )?;
            RectangleProxy::new(
                r.id.unwrap_or(index as u32),
                vec3(r.center),
                vec3(r.normal),
                vec3(r.edge_u),
                (r.half_extents[0], r.half_extents[1]),
                material,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Scene::new(rectangles, lights, camera, Rgb(raw.background))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[camera]
position = [0.0, 1.0, 4.0]
look_at = [0.0, 0.0, 0.0]
vfov_deg = 45
width = 16
height = 8

[[light]]
direction = [0.0, 2.0, 0.0]
radiance = [1.0, 2.0, 3.0]

[[rectangle]]
center = [0.0, 0.0, 0.0]
normal = [0.0, 1.0, 0.0]
edge_u = [1.0, 0.0, 0.0]
half_extents = [1.0, 2.0]
material = { roughness = 0.2, specular = [0.5, 0.5, 0.5] }
"#;

    #[test]
    fn parses_minimal_scene() {
        let s = parse_scene(MINIMAL, Path::new("min.toml")).unwrap();
        assert_eq!(s.camera.width, 16);
        assert_eq!(s.lights.len(), 1);
        assert!((s.lights[0].direction.get().y - 1.0).abs() < 1e-15);
        assert_eq!(s.rectangles[0].id, 0);
        assert_eq!(s.rectangles[0].half_extent_v, 2.0);
        assert_eq!(s.rectangles[0].material.diffuse, Rgb::BLACK);
        assert_eq!(s.background, Rgb::BLACK);
    }

    #[test]
    fn syntax_error_reports_line() {
        let bad = MINIMAL.replace("vfov_deg = 45", "vfov_deg = = 45");
        match parse_scene(&bad, Path::new("bad.toml")) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_key_rejected() {
        let bad = MINIMAL.replace("width = 16", "width = 16\nzoom = 2");
        assert!(matches!(
            parse_scene(&bad, Path::new("bad.toml")),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn invalid_values_name_the_file() {
        let bad = MINIMAL.replace("half_extents = [1.0, 2.0]", "half_extents = [1.0, -2.0]");
        match parse_scene(&bad, Path::new("neg.toml")) {
            Err(Error::InvalidScene { path, .. }) => assert_eq!(path, Path::new("neg.toml")),
            other => panic!("expected invalid scene, got {other:?}"),
        }
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            load_scene("/nonexistent/scene.toml"),
            Err(Error::Io { .. })
        ));
    }
}
