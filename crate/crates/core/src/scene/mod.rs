//! Rectangle-proxy scenes: proxies, distant lights, visibility queries and
//! the disk/rectangle overlap estimate.

mod file;

pub use file::{load_scene, parse_scene};

use std::f64::consts::PI;

use crate::brdf::Material;
use crate::camera::Camera;
use crate::error::{Error, Result};
use crate::interreflect::SamplingDisk;
use crate::math::{Rgb, UnitVec3, Vec3};

/// Minimum ray parameter accepted by [`ray_scene_intersect`].
pub const RAY_EPSILON: f64 = 1e-5;

/// Distance from a rectangle's plane within which a point counts as lying on
/// its surface.
pub const SURFACE_EPSILON: f64 = 1e-4;

const FRAME_TOLERANCE: f64 = 1e-6;

/// A planar reflector: centre, orthonormal frame `{edge_u, edge_v, normal}`
/// and half extents along the two edges.
#[derive(Debug, Clone, PartialEq)]
pub struct RectangleProxy {
    pub id: u32,
    pub center: Vec3,
    pub normal: UnitVec3,
    pub edge_u: UnitVec3,
    pub edge_v: UnitVec3,
    pub half_extent_u: f64,
    pub half_extent_v: f64,
    pub material: Material,
}

impl RectangleProxy {
    /// Builds a proxy from a normal and an approximate first edge. The edge is
    /// projected into the plane; `edge_v = normal × edge_u`.
    pub fn new(
        id: u32,
        center: Vec3,
        normal: Vec3,
        edge_u: Vec3,
        half_extents: (f64, f64),
        material: Material,
    ) -> Result<Self> {
        let normal = normal
            .normalized()
            .ok_or_else(|| Error::invalid(format!("rectangle {id}: zero normal")))?;
        let edge_u = (edge_u - normal * normal.dot(edge_u))
            .normalized()
            .ok_or_else(|| {
                Error::invalid(format!("rectangle {id}: edge_u is parallel to the normal"))
            })?;
        let edge_v = normal
            .cross(edge_u)
            .normalized()
            .expect("cross of orthogonal unit vectors");
        let (hu, hv) = half_extents;
        if !(hu > 0.0 && hv > 0.0 && hu.is_finite() && hv.is_finite()) {
            return Err(Error::invalid(format!(
                "rectangle {id}: half extents must be positive, got ({hu}, {hv})"
            )));
        }
        if !center.is_finite() {
            return Err(Error::invalid(format!("rectangle {id}: non-finite centre")));
        }
        let rect = RectangleProxy {
            id,
            center,
            normal,
            edge_u,
            edge_v,
            half_extent_u: hu,
            half_extent_v: hv,
            material,
        };
        debug_assert!(rect.frame_error() < FRAME_TOLERANCE);
        Ok(rect)
    }

    /// Largest deviation of the frame from orthonormality.
    pub fn frame_error(&self) -> f64 {
        let n = self.normal;
        let u = self.edge_u;
        let v = self.edge_v;
        [
            n.dot(u).abs(),
            n.dot(v).abs(),
            u.dot(v).abs(),
            (n.get().length() - 1.0).abs(),
            (u.get().length() - 1.0).abs(),
            (v.get().length() - 1.0).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn area(&self) -> f64 {
        4.0 * self.half_extent_u * self.half_extent_v
    }

    /// Signed distance of `p` from the plane, positive on the normal side.
    pub fn plane_distance(&self, p: Vec3) -> f64 {
        self.normal.dot(p - self.center)
    }

    /// Coordinates of `p` (projected onto the plane) along `edge_u`, `edge_v`.
    pub fn local_coords(&self, p: Vec3) -> (f64, f64) {
        let d = p - self.center;
        (self.edge_u.dot(d), self.edge_v.dot(d))
    }

    /// World position of local plane coordinates.
    pub fn point_at(&self, s: f64, t: f64) -> Vec3 {
        self.center + self.edge_u * s + self.edge_v * t
    }

    pub fn contains_local(&self, s: f64, t: f64, slack: f64) -> bool {
        s.abs() <= self.half_extent_u + slack && t.abs() <= self.half_extent_v + slack
    }

    /// Whether `p` lies on the rectangle's surface (within [`SURFACE_EPSILON`]).
    pub fn surface_contains(&self, p: Vec3) -> bool {
        if self.plane_distance(p).abs() > SURFACE_EPSILON {
            return false;
        }
        let (s, t) = self.local_coords(p);
        self.contains_local(s, t, SURFACE_EPSILON)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionalLight {
    /// Unit direction toward the light.
    pub direction: UnitVec3,
    pub radiance: Rgb,
}

impl DirectionalLight {
    pub fn new(direction: Vec3, radiance: Rgb) -> Result<Self> {
        let direction = direction
            .normalized()
            .ok_or_else(|| Error::invalid("light direction must be non-zero"))?;
        if !radiance.is_finite() || !radiance.is_non_negative() {
            return Err(Error::invalid(format!(
                "light radiance must be finite and non-negative, got {:?}",
                radiance.0
            )));
        }
        Ok(DirectionalLight {
            direction,
            radiance,
        })
    }

    pub fn scaled(&self, s: f64) -> Self {
        DirectionalLight {
            direction: self.direction,
            radiance: self.radiance * s,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub rectangles: Vec<RectangleProxy>,
    pub lights: Vec<DirectionalLight>,
    pub camera: Camera,
    pub background: Rgb,
}

impl Scene {
    /// Rectangles are kept sorted by id so every query sees a fixed order.
    pub fn new(
        mut rectangles: Vec<RectangleProxy>,
        lights: Vec<DirectionalLight>,
        camera: Camera,
        background: Rgb,
    ) -> Result<Self> {
        rectangles.sort_by_key(|r| r.id);
        if let Some(w) = rectangles.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::invalid(format!("duplicate rectangle id {}", w[0].id)));
        }
        camera.validate()?;
        if !background.is_finite() || !background.is_non_negative() {
            return Err(Error::invalid("background radiance must be finite and non-negative"));
        }
        Ok(Scene {
            rectangles,
            lights,
            camera,
            background,
        })
    }

    pub fn rectangle(&self, id: u32) -> Option<&RectangleProxy> {
        self.rectangles
            .binary_search_by_key(&id, |r| r.id)
            .ok()
            .map(|i| &self.rectangles[i])
    }
}

/// Fraction of the sampling disk covered by the rectangle.
///
/// The overlap is approximated by the area of the disk's bounding square
/// clipped to the rectangle, divided by the disk area, and clamped to 1.
/// The disk is assumed to lie in the rectangle's plane.
pub fn intersection_area_fraction(rect: &RectangleProxy, disk: &SamplingDisk) -> f64 {
    let r = disk.radius;
    let (cx, cy) = rect.local_coords(disk.center);
    let overlap = |c: f64, half: f64| ((c + r).min(half) - (c - r).max(-half)).max(0.0);
    let area = overlap(cx, rect.half_extent_u) * overlap(cy, rect.half_extent_v);
    if area <= 0.0 {
        return 0.0;
    }
    (area / (PI * r * r)).min(1.0)
}

/// Every rectangle that could reflect light onto `x`: all proxies except
/// those whose surface contains `x`, in id order.
pub fn query_proxies(scene: &Scene, x: Vec3) -> Vec<&RectangleProxy> {
    scene
        .rectangles
        .iter()
        .filter(|r| !r.surface_contains(x))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hit {
    pub rect_id: u32,
    pub t: f64,
    pub point: Vec3,
    /// Surface normal flipped to face the ray origin.
    pub normal: UnitVec3,
}

pub fn intersect_rectangle(rect: &RectangleProxy, origin: Vec3, dir: UnitVec3) -> Option<Hit> {
    let denom = rect.normal.dot(dir);
    if denom.abs() < 1e-12 {
        return None;
    }
    let t = rect.normal.dot(rect.center - origin) / denom;
    if !t.is_finite() || t <= RAY_EPSILON {
        return None;
    }
    let point = origin + dir * t;
    let (s, u) = rect.local_coords(point);
    if !rect.contains_local(s, u, 0.0) {
        return None;
    }
    let normal = if denom < 0.0 { rect.normal } else { -rect.normal };
    Some(Hit {
        rect_id: rect.id,
        t,
        point,
        normal,
    })
}

/// Nearest rectangle hit with `t > RAY_EPSILON`. Ties go to the lower id.
pub fn ray_scene_intersect(scene: &Scene, origin: Vec3, dir: UnitVec3) -> Option<Hit> {
    scene
        .rectangles
        .iter()
        .filter_map(|r| intersect_rectangle(r, origin, dir))
        .fold(None, |best: Option<Hit>, h| match best {
            Some(b) if b.t <= h.t => Some(b),
            _ => Some(h),
        })
}

/// Whether anything blocks the ray within `max_t`.
pub fn occluded(scene: &Scene, origin: Vec3, dir: UnitVec3, max_t: f64) -> bool {
    scene
        .rectangles
        .iter()
        .any(|r| intersect_rectangle(r, origin, dir).is_some_and(|h| h.t < max_t))
}
