//! Linear RGB images, binary PPM I/O and error metrics.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::math::Rgb;

const GAMMA: f64 = 2.2;

#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    /// Row-major, top row first.
    pub pixels: Vec<Rgb>,
}

impl Image {
    pub fn new(width: usize, height: usize) -> Self {
        Image {
            width,
            height,
            pixels: vec![Rgb::BLACK; width * height],
        }
    }

    pub fn filled(width: usize, height: usize, c: Rgb) -> Self {
        Image {
            width,
            height,
            pixels: vec![c; width * height],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> Rgb {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, c: Rgb) {
        self.pixels[y * self.width + x] = c;
    }

    pub fn is_black(&self) -> bool {
        self.pixels.iter().all(|p| p.is_black())
    }

    /// Binary PPM (P6) with gamma-2.2 encoding of values clamped to `[0, 1]`.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.reserve(self.pixels.len() * 3);
        for p in &self.pixels {
            out.extend(p.0.iter().map(|&c| encode_channel(c)));
        }
        out
    }

    /// Decode a binary PPM written with 8-bit channels back to linear values.
    pub fn from_ppm(bytes: &[u8]) -> std::result::Result<Self, String> {
        let mut pos = 0;
        let mut fields = Vec::with_capacity(4);
        while fields.len() < 4 {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            let start = pos;
            while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if start == pos {
                return Err("truncated PPM header".into());
            }
            fields.push(String::from_utf8_lossy(&bytes[start..pos]).into_owned());
        }
        if fields[0] != "P6" {
            return Err(format!("unsupported PPM magic {:?}", fields[0]));
        }
        let parse = |s: &str, what: &str| {
            s.parse::<usize>()
                .map_err(|_| format!("bad PPM {what}: {s:?}"))
        };
        let width = parse(&fields[1], "width")?;
        let height = parse(&fields[2], "height")?;
        if parse(&fields[3], "maxval")? != 255 {
            return Err("only 8-bit PPM files are supported".into());
        }
        // exactly one whitespace byte separates the header from the raster
        pos += 1;
        let need = width * height * 3;
        let data = bytes
            .get(pos..pos + need)
            .ok_or_else(|| "PPM raster is truncated".to_string())?;
        let pixels = data
            .chunks_exact(3)
            .map(|c| Rgb([decode_channel(c[0]), decode_channel(c[1]), decode_channel(c[2])]))
            .collect();
        Ok(Image {
            width,
            height,
            pixels,
        })
    }
}

pub fn encode_channel(linear: f64) -> u8 {
    let c = if linear.is_nan() { 0.0 } else { linear.clamp(0.0, 1.0) };
    (255.0 * c.powf(1.0 / GAMMA)).round() as u8
}

pub fn decode_channel(byte: u8) -> f64 {
    (byte as f64 / 255.0).powf(GAMMA)
}

pub fn write_image(img: &Image, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::File::create(path)
        .and_then(|mut f| f.write_all(&img.to_ppm()))
        .map_err(|e| Error::io(path, e))
}

pub fn read_image(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    Image::from_ppm(&bytes).map_err(|message| Error::Parse {
        path: path.to_path_buf(),
        line: 0,
        message,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageMetrics {
    pub rmse: Rgb,
    pub rmse_luminance: f64,
    pub max_abs: f64,
}

impl ImageMetrics {
    pub fn csv(&self) -> String {
        crate::oracle::csv_string(
            &["rmse_r", "rmse_g", "rmse_b", "rmse_luminance", "max_abs"],
            [vec![
                self.rmse[0],
                self.rmse[1],
                self.rmse[2],
                self.rmse_luminance,
                self.max_abs,
            ]],
        )
    }
}

pub fn image_metrics(a: &Image, b: &Image) -> Result<ImageMetrics> {
    if a.width != b.width || a.height != b.height {
        return Err(Error::DimensionMismatch {
            a_width: a.width,
            a_height: a.height,
            b_width: b.width,
            b_height: b.height,
        });
    }
    let n = a.pixels.len().max(1) as f64;
    let mut sq = Rgb::BLACK;
    let mut sq_lum = 0.0;
    let mut max_abs: f64 = 0.0;
    for (pa, pb) in a.pixels.iter().zip(&b.pixels) {
        let d = *pa - *pb;
        sq += d * d;
        let dl = pa.luminance() - pb.luminance();
        sq_lum += dl * dl;
        max_abs = max_abs.max(d.map(f64::abs).max_component());
    }
    Ok(ImageMetrics {
        rmse: (sq / n).map(f64::sqrt),
        rmse_luminance: (sq_lum / n).sqrt(),
        max_abs,
    })
}

/// Luminance RMSE of `approx` against `reference`, divided by the RMS
/// luminance of `reference`.
pub fn relative_luminance_rmse(approx: &Image, reference: &Image) -> Result<f64> {
    let m = image_metrics(approx, reference)?;
    let n = reference.pixels.len().max(1) as f64;
    let rms_ref = (reference
        .pixels
        .iter()
        .map(|p| p.luminance().powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(if rms_ref > 0.0 {
        m.rmse_luminance / rms_ref
    } else if m.rmse_luminance == 0.0 {
        0.0
    } else {
        f64::INFINITY
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn black_pixel_ppm() {
        let bytes = Image::new(1, 1).to_ppm();
        let mut expect = b"P6\n1 1\n255\n".to_vec();
        expect.extend([0, 0, 0]);
        assert_eq!(bytes, expect);
    }

    #[test]
    fn gamma_endpoints() {
        assert_eq!(encode_channel(1.0), 255);
        assert_eq!(encode_channel(7.0), 255);
        assert_eq!(encode_channel(-1.0), 0);
        assert_eq!(encode_channel(0.5), 186);
        assert_eq!(encode_channel(f64::NAN), 0);
    }

    #[test]
    fn ppm_decodes_what_it_encodes() {
        let mut img = Image::new(3, 2);
        img.set(2, 1, Rgb::new(0.5, 1.0, 0.0));
        let back = Image::from_ppm(&img.to_ppm()).unwrap();
        assert_eq!(back.width, 3);
        assert_eq!(back.height, 2);
        assert_eq!(Image::from_ppm(&back.to_ppm()).unwrap(), back);
        assert!((back.get(2, 1)[0] - 0.5).abs() < 0.01);
        assert!(Image::from_ppm(b"P3\n1 1\n255\n000").is_err());
        assert!(Image::from_ppm(b"P6\n2 2\n255\n\0\0\0").is_err());
    }

    #[test]
    fn metrics_basics() {
        let a = Image::filled(4, 3, Rgb::new(0.2, 0.4, 0.6));
        let m = image_metrics(&a, &a).unwrap();
        assert_eq!(m.rmse, Rgb::BLACK);
        assert_eq!(m.rmse_luminance, 0.0);
        assert_eq!(m.max_abs, 0.0);

        let b = Image::filled(4, 3, Rgb::new(0.7, 0.9, 1.1));
        let m = image_metrics(&a, &b).unwrap();
        for c in 0..3 {
            assert!((m.rmse[c] - 0.5).abs() < 1e-12);
        }
        assert!((m.max_abs - 0.5).abs() < 1e-12);
        assert_eq!(m, image_metrics(&b, &a).unwrap());
        assert!(image_metrics(&a, &Image::new(3, 4)).is_err());
    }
}
