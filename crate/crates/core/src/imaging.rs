//! Color images as pure quaternion matrices, sampling masks and quality metrics.

use std::path::Path;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{check_same_shape, Error, Result};
use crate::matrix::{MaskMatrix, QuaternionMatrix};
use crate::quaternion::Quaternion;

/// 8-bit RGB image stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::BadLength {
                rows: height,
                cols: width,
                expected: width * height,
                got: pixels.len(),
            });
        }
        Ok(Self { width, height, pixels })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> [u8; 3]) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(y, x));
            }
        }
        Self { width, height, pixels }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// `(rows, cols)`, i.e. `(height, width)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn pixel(&self, row: usize, col: usize) -> [u8; 3] {
        self.pixels[row * self.width + col]
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    /// Reads any 8-bit image file, dropping alpha if present.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let img = image::open(path)?.to_rgb8();
        let (w, h) = img.dimensions();
        let pixels = img.pixels().map(|p| p.0).collect();
        Self::new(w as usize, h as usize, pixels)
    }

    pub fn save_png(&self, path: impl AsRef<Path>) -> Result<()> {
        let raw: Vec<u8> = self.pixels.iter().flatten().copied().collect();
        let buf = image::RgbImage::from_raw(self.width as u32, self.height as u32, raw).expect("buffer length matches");
        buf.save_with_format(path, image::ImageFormat::Png)?;
        Ok(())
    }

    /// Zeroes every pixel the mask marks as missing.
    pub fn masked(&self, mask: &MaskMatrix) -> Result<Self> {
        check_same_shape("RgbImage::masked", self.shape(), mask.shape())?;
        let pixels = self
            .pixels
            .iter()
            .zip(mask.as_slice())
            .map(|(&p, &keep)| if keep { p } else { [0; 3] })
            .collect();
        Ok(Self { pixels, ..*self })
    }
}

/// Encodes pixel `(R, G, B)` as `R i + G j + B k`.
pub fn image_to_quaternion(img: &RgbImage) -> QuaternionMatrix {
    QuaternionMatrix::from_fn(img.height, img.width, |i, j| {
        let [r, g, b] = img.pixel(i, j);
        Quaternion::pure(r as f64, g as f64, b as f64)
    })
}

fn to_channel(v: f64) -> u8 {
    if v.is_nan() {
        0
    } else {
        v.clamp(0.0, 255.0).round_ties_even() as u8
    }
}

/// Decodes the imaginary parts to 8-bit channels, clamping to `[0, 255]`.
/// The real part is discarded.
pub fn quaternion_to_image(a: &QuaternionMatrix) -> RgbImage {
    let pixels = a.as_slice().iter().map(|q| [to_channel(q.a1), to_channel(q.a2), to_channel(q.a3)]).collect();
    RgbImage {
        width: a.cols(),
        height: a.rows(),
        pixels,
    }
}

/// Mask with exactly `floor(sr * rows * cols)` observed entries at positions
/// drawn uniformly from a generator seeded with `seed`.
pub fn gen_mask(rows: usize, cols: usize, sr: f64, seed: u64) -> Result<MaskMatrix> {
    if !(0.0..=1.0).contains(&sr) {
        return Err(Error::InvalidParameter(format!("sampling rate must lie in [0, 1], got {sr}")));
    }
    let n = rows * cols;
    // absorb representation error such as 0.15 * 90000 = 13499.999...
    let count = ((sr * n as f64) * (1.0 + 1e-12)).floor().min(n as f64) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = vec![false; n];
    for idx in sample(&mut rng, n, count) {
        data[idx] = true;
    }
    MaskMatrix::from_vec(rows, cols, data)
}

/// Grayscale PNG: 255 for observed, 0 for missing.
pub fn save_mask_png(mask: &MaskMatrix, path: impl AsRef<Path>) -> Result<()> {
    let raw = mask.as_slice().iter().map(|&b| if b { 255 } else { 0 }).collect();
    let buf = image::GrayImage::from_raw(mask.cols() as u32, mask.rows() as u32, raw).expect("buffer length matches");
    buf.save_with_format(path, image::ImageFormat::Png)?;
    Ok(())
}

/// Reads a mask image; pixels brighter than mid-gray count as observed.
pub fn open_mask(path: impl AsRef<Path>) -> Result<MaskMatrix> {
    let img = image::open(path)?.to_luma8();
    let (w, h) = img.dimensions();
    let data = img.pixels().map(|p| p.0[0] >= 128).collect();
    MaskMatrix::from_vec(h as usize, w as usize, data)
}

fn channel_values(img: &RgbImage, c: usize) -> Vec<f64> {
    img.pixels.iter().map(|p| p[c] as f64).collect()
}

/// Peak signal-to-noise ratio in dB with peak 255. Identical images give
/// `f64::INFINITY`.
pub fn psnr(reference: &RgbImage, test: &RgbImage) -> Result<f64> {
    check_same_shape("psnr", reference.shape(), test.shape())?;
    let n = reference.pixels.len() * 3;
    if n == 0 {
        return Err(Error::InvalidParameter("psnr of an empty image".into()));
    }
    let sse: f64 = reference
        .pixels
        .iter()
        .zip(&test.pixels)
        .flat_map(|(a, b)| (0..3).map(move |c| a[c] as f64 - b[c] as f64))
        .map(|d| d * d)
        .sum();
    let mse = sse / n as f64;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (255.0 * 255.0 / mse).log10())
}

const SSIM_WINDOW: usize = 11;
const SSIM_SIGMA: f64 = 1.5;

fn gaussian_kernel(size: usize, sigma: f64) -> Vec<f64> {
    let c = (size as f64 - 1.0) / 2.0;
    let w: Vec<f64> = (0..size).map(|i| (-(i as f64 - c).powi(2) / (2.0 * sigma * sigma)).exp()).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|v| v / s).collect()
}

/// Separable "valid" filtering of a `rows x cols` plane.
fn filter_valid(plane: &[f64], rows: usize, cols: usize, kr: &[f64], kc: &[f64]) -> (Vec<f64>, usize, usize) {
    let out_c = cols - kc.len() + 1;
    let out_r = rows - kr.len() + 1;
    let mut tmp = vec![0.0; rows * out_c];
    for i in 0..rows {
        let row = &plane[i * cols..(i + 1) * cols];
        for j in 0..out_c {
            tmp[i * out_c + j] = kc.iter().zip(&row[j..]).map(|(w, v)| w * v).sum();
        }
    }
    let mut out = vec![0.0; out_r * out_c];
    for i in 0..out_r {
        for (t, w) in kr.iter().enumerate() {
            let src = &tmp[(i + t) * out_c..(i + t + 1) * out_c];
            for (o, v) in out[i * out_c..(i + 1) * out_c].iter_mut().zip(src) {
                *o += w * v;
            }
        }
    }
    (out, out_r, out_c)
}

fn ssim_plane(a: &[f64], b: &[f64], rows: usize, cols: usize) -> f64 {
    const C1: f64 = (0.01 * 255.0) * (0.01 * 255.0);
    const C2: f64 = (0.03 * 255.0) * (0.03 * 255.0);
    let kr = gaussian_kernel(SSIM_WINDOW.min(rows), SSIM_SIGMA);
    let kc = gaussian_kernel(SSIM_WINDOW.min(cols), SSIM_SIGMA);
    let f = |p: &[f64]| filter_valid(p, rows, cols, &kr, &kc).0;

    let aa: Vec<f64> = a.iter().map(|v| v * v).collect();
    let bb: Vec<f64> = b.iter().map(|v| v * v).collect();
    let ab: Vec<f64> = a.iter().zip(b).map(|(x, y)| x * y).collect();
    let (mu_a, mu_b) = (f(a), f(b));
    let (e_aa, e_bb, e_ab) = (f(&aa), f(&bb), f(&ab));

    let n = mu_a.len();
    let mut total = 0.0;
    for k in 0..n {
        let (ma, mb) = (mu_a[k], mu_b[k]);
        let va = e_aa[k] - ma * ma;
        let vb = e_bb[k] - mb * mb;
        let cov = e_ab[k] - ma * mb;
        total += ((2.0 * ma * mb + C1) * (2.0 * cov + C2)) / ((ma * ma + mb * mb + C1) * (va + vb + C2));
    }
    total / n as f64
}

/// Mean structural similarity: per-channel SSIM with an 11x11 Gaussian
/// window (sigma 1.5) over the valid region, averaged over R, G and B.
/// Images smaller than the window use a window clipped to the image size.
pub fn ssim(reference: &RgbImage, test: &RgbImage) -> Result<f64> {
    check_same_shape("ssim", reference.shape(), test.shape())?;
    let (rows, cols) = reference.shape();
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter("ssim of an empty image".into()));
    }
    let mut sum = 0.0;
    for c in 0..3 {
        sum += ssim_plane(&channel_values(reference, c), &channel_values(test, c), rows, cols);
    }
    Ok(sum / 3.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricReport {
    pub psnr_db: f64,
    pub ssim: f64,
}

impl MetricReport {
    pub fn evaluate(reference: &RgbImage, test: &RgbImage) -> Result<Self> {
        Ok(Self {
            psnr_db: psnr(reference, test)?,
            ssim: ssim(reference, test)?,
        })
    }
}
