use crate::error::{Error, Result};
use crate::math::{UnitVec3, Vec3};

/// Pinhole camera. Pixel `(0, 0)` is the top-left corner of the image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Camera {
    pub position: Vec3,
    pub look_at: Vec3,
    pub up: UnitVec3,
    pub vertical_fov_deg: f64,
    pub width: usize,
    pub height: usize,
}

impl Camera {
    pub fn new(
        position: Vec3,
        look_at: Vec3,
        up: UnitVec3,
        vertical_fov_deg: f64,
        width: usize,
        height: usize,
    ) -> Result<Self> {
        let cam = Camera {
            position,
            look_at,
            up,
            vertical_fov_deg,
            width,
            height,
        };
        cam.validate()?;
        Ok(cam)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.vertical_fov_deg > 0.0 && self.vertical_fov_deg < 180.0) {
            return Err(Error::invalid(format!(
                "vertical field of view must lie in (0, 180) degrees, got {}",
                self.vertical_fov_deg
            )));
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::invalid("image dimensions must be at least 1x1"));
        }
        let forward = (self.look_at - self.position)
            .normalized()
            .ok_or_else(|| Error::invalid("camera look_at coincides with its position"))?;
        if forward.cross(self.up).length() < 1e-9 {
            return Err(Error::invalid("camera up vector is parallel to the view direction"));
        }
        Ok(())
    }

    pub fn with_resolution(mut self, width: usize, height: usize) -> Result<Self> {
        self.width = width;
        self.height = height;
        self.validate()?;
        Ok(self)
    }

    /// Primary ray direction through the centre of pixel `(px, py)`.
    pub fn ray_direction(&self, px: usize, py: usize) -> UnitVec3 {
        let forward = (self.look_at - self.position)
            .normalized()
            .expect("validated camera");
        let right = forward.cross(self.up).normalized().expect("validated camera");
        let true_up = right.cross(forward);
        let half_h = (0.5 * self.vertical_fov_deg.to_radians()).tan();
        let half_w = half_h * self.width as f64 / self.height as f64;
        let sx = ((px as f64 + 0.5) / self.width as f64) * 2.0 - 1.0;
        let sy = 1.0 - ((py as f64 + 0.5) / self.height as f64) * 2.0;
        (forward.get() + right.get() * (sx * half_w) + true_up * (sy * half_h))
            .normalized()
            .expect("finite camera basis")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centre_pixel_looks_forward() {
        let cam = Camera::new(
            Vec3::new(0.0, 0.0, 5.0),
            Vec3::ZERO,
            UnitVec3::Y,
            60.0,
            3,
            3,
        )
        .unwrap();
        let d = cam.ray_direction(1, 1);
        assert!((d.get() - Vec3::new(0.0, 0.0, -1.0)).length() < 1e-12);
        // top row looks up, left column looks left
        assert!(cam.ray_direction(1, 0).get().y > 0.0);
        assert!(cam.ray_direction(0, 1).get().x < 0.0);
    }

    #[test]
    fn rejects_degenerate_cameras() {
        assert!(Camera::new(Vec3::ZERO, Vec3::ZERO, UnitVec3::Y, 45.0, 4, 4).is_err());
        assert!(Camera::new(Vec3::ZERO, Vec3::new(0.0, 1.0, 0.0), UnitVec3::Y, 45.0, 4, 4).is_err());
        assert!(Camera::new(Vec3::ZERO, Vec3::new(0.0, 0.0, 1.0), UnitVec3::Y, 180.0, 4, 4).is_err());
        assert!(Camera::new(Vec3::ZERO, Vec3::new(0.0, 0.0, 1.0), UnitVec3::Y, 45.0, 0, 4).is_err());
    }
}
