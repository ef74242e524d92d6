//! Deterministic rasterization of scene windows.
//!
//! Rendering samples the vector scene at output pixel centers, so zooming in
//! genuinely reveals detail and any two routes to the same window produce the
//! same bytes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::scene::{Cell, ColorClass, Scene, ShapeClass};
use crate::geom::BBox;
use crate::scalar::Scalar;

/// Minimum window area accepted by the renderer.
pub const MIN_RENDER_AREA: f64 = 1e-6;
/// Minimum output resolution per dimension.
pub const MIN_RENDER_PX: u32 = 16;

pub const BACKGROUND: [u8; 3] = [255, 255, 255];

/// Fraction of the region side occupied by the border ring.
const BORDER_FRAC: f64 = 0.12;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum DegenerateBox {
    #[error("window area {area} below minimum {MIN_RENDER_AREA}")]
    TinyArea { area: f64 },
    #[error("output resolution {w}x{h} below minimum {MIN_RENDER_PX}")]
    LowResolution { w: u32, h: u32 },
}

/// Where an image came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Provenance<S> {
    Original,
    Crop {
        /// 1-based index of the source image.
        source_index: usize,
        bbox_in_source: BBox<S>,
    },
}

/// Row-major RGB raster.
#[derive(Debug, Clone, PartialEq)]
pub struct Image<S> {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<u8>,
    pub provenance: Provenance<S>,
}

impl<S: Scalar> Image<S> {
    pub fn pixel(&self, x: u32, y: u32) -> [u8; 3] {
        let i = ((y * self.width + x) * 3) as usize;
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }
}

/// Rasterize the `window` of the virtual canvas at `out_w` x `out_h`.
pub fn render<S: Scalar>(
    scene: &Scene<S>,
    window: &BBox<S>,
    out_w: u32,
    out_h: u32,
) -> Result<Image<S>, DegenerateBox> {
    if out_w < MIN_RENDER_PX || out_h < MIN_RENDER_PX {
        return Err(DegenerateBox::LowResolution { w: out_w, h: out_h });
    }
    let area = window.area().as_f64();
    if area < MIN_RENDER_AREA {
        return Err(DegenerateBox::TinyArea { area });
    }

    let wx1 = window.x1.as_f64();
    let wy1 = window.y1.as_f64();
    let ww = window.width().as_f64();
    let wh = window.height().as_f64();

    let mut pixels = Vec::with_capacity((out_w * out_h * 3) as usize);
    for j in 0..out_h {
        let v = wy1 + (j as f64 + 0.5) / out_h as f64 * wh;
        for i in 0..out_w {
            let u = wx1 + (i as f64 + 0.5) / out_w as f64 * ww;
            let rgb = color_at(scene, u, v);
            pixels.extend_from_slice(&rgb);
        }
    }

    let provenance = if *window == BBox::unit() {
        Provenance::Original
    } else {
        Provenance::Crop {
            source_index: 1,
            bbox_in_source: *window,
        }
    };
    Ok(Image {
        width: out_w,
        height: out_h,
        pixels,
        provenance,
    })
}

/// Color of the canvas point `(u, v)` in relative coordinates.
pub fn color_at<S: Scalar>(scene: &Scene<S>, u: f64, v: f64) -> [u8; 3] {
    for cell in &scene.cells {
        let r = &cell.region;
        if u >= r.x1.as_f64() && u < r.x2.as_f64() && v >= r.y1.as_f64() && v < r.y2.as_f64() {
            return cell_color_at(cell, u, v);
        }
    }
    BACKGROUND
}

fn cell_color_at<S: Scalar>(cell: &Cell<S>, u: f64, v: f64) -> [u8; 3] {
    let r = &cell.region;
    let rx1 = r.x1.as_f64();
    let ry1 = r.y1.as_f64();
    let rw = r.width().as_f64();
    let rh = r.height().as_f64();
    let ring = rw.min(rh) * BORDER_FRAC;
    let inside_ring = u - rx1 < ring
        || v - ry1 < ring
        || rx1 + rw - u < ring
        || ry1 + rh - v < ring;
    if inside_ring {
        return cell.border_color.rgb();
    }

    let g = &cell.glyph_box;
    let gx1 = g.x1.as_f64();
    let gy1 = g.y1.as_f64();
    let gw = g.width().as_f64();
    let gh = g.height().as_f64();
    if u >= gx1 && u < gx1 + gw && v >= gy1 && v < gy1 + gh {
        // glyph-local coordinates in [0,1)
        let lx = (u - gx1) / gw;
        let ly = (v - gy1) / gh;
        if in_shape_ring(cell.glyph.shape, lx, ly) || in_digit(cell.glyph.digit, lx, ly) {
            return cell.glyph.color.rgb();
        }
    }
    BACKGROUND
}

fn in_shape_ring(shape: ShapeClass, lx: f64, ly: f64) -> bool {
    match shape {
        ShapeClass::Circle => {
            let d = ((lx - 0.5).powi(2) + (ly - 0.5).powi(2)).sqrt();
            (0.40..=0.48).contains(&d)
        }
        ShapeClass::Square => {
            let m = (lx - 0.5).abs().max((ly - 0.5).abs());
            (0.40..=0.48).contains(&m)
        }
        ShapeClass::Triangle => in_triangle(lx, ly, 1.0) && !in_triangle(lx, ly, 0.82),
    }
}

/// Upward triangle with vertices (0.5,0.04), (0.96,0.92), (0.04,0.92),
/// shrunk toward its centroid by `scale`.
fn in_triangle(lx: f64, ly: f64, scale: f64) -> bool {
    let cx = 0.5;
    let cy = (0.04 + 0.92 + 0.92) / 3.0;
    let verts = [(0.5, 0.04), (0.96, 0.92), (0.04, 0.92)]
        .map(|(x, y)| (cx + (x - cx) * scale, cy + (y - cy) * scale));
    let sign = |a: (f64, f64), b: (f64, f64), p: (f64, f64)| {
        (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0)
    };
    let p = (lx, ly);
    let d0 = sign(verts[0], verts[1], p);
    let d1 = sign(verts[1], verts[2], p);
    let d2 = sign(verts[2], verts[0], p);
    let has_neg = d0 < 0.0 || d1 < 0.0 || d2 < 0.0;
    let has_pos = d0 > 0.0 || d1 > 0.0 || d2 > 0.0;
    !(has_neg && has_pos)
}

/// Seven-segment layout: A top, B upper-right, C lower-right, D bottom,
/// E lower-left, F upper-left, G middle.
const SEGMENTS: [(f64, f64, f64, f64); 7] = [
    (0.10, 0.00, 0.90, 0.14), // A
    (0.86, 0.07, 1.00, 0.50), // B
    (0.86, 0.50, 1.00, 0.93), // C
    (0.10, 0.86, 0.90, 1.00), // D
    (0.00, 0.50, 0.14, 0.93), // E
    (0.00, 0.07, 0.14, 0.50), // F
    (0.10, 0.43, 0.90, 0.57), // G
];

const DIGIT_MASKS: [u8; 10] = [
    0b0111111, // 0: ABCDEF
    0b0000110, // 1: BC
    0b1011011, // 2: ABDEG
    0b1001111, // 3: ABCDG
    0b1100110, // 4: BCFG
    0b1101101, // 5: ACDFG
    0b1111101, // 6: ACDEFG
    0b0000111, // 7: ABC
    0b1111111, // 8
    0b1101111, // 9: ABCDFG
];

/// Digit strokes live in an inner window of the glyph box.
const DIGIT_BOX: (f64, f64, f64, f64) = (0.32, 0.26, 0.68, 0.74);

fn in_digit(digit: u8, lx: f64, ly: f64) -> bool {
    let (bx1, by1, bx2, by2) = DIGIT_BOX;
    if lx < bx1 || lx >= bx2 || ly < by1 || ly >= by2 {
        return false;
    }
    let dx = (lx - bx1) / (bx2 - bx1);
    let dy = (ly - by1) / (by2 - by1);
    let mask = DIGIT_MASKS[digit as usize % 10];
    SEGMENTS.iter().enumerate().any(|(k, &(x1, y1, x2, y2))| {
        mask & (1 << k) != 0 && dx >= x1 && dx < x2 && dy >= y1 && dy < y2
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthenv::scene::{generate_scene, Difficulty};

    #[test]
    fn full_frame_renders() {
        let scene: Scene<f64> = generate_scene(1, Difficulty::Easy);
        let img = render(&scene, &BBox::unit(), 64, 64).unwrap();
        assert_eq!(img.pixels.len(), 64 * 64 * 3);
        assert_eq!(img.provenance, Provenance::Original);
        // at least one non-background pixel
        assert!((0..64u32)
            .flat_map(|y| (0..64u32).map(move |x| (x, y)))
            .any(|(x, y)| img.pixel(x, y) != BACKGROUND));
    }

    #[test]
    fn render_is_deterministic() {
        let scene: Scene<f64> = generate_scene(9, Difficulty::Hard);
        let w = BBox::new(0.25, 0.25, 0.75, 0.75).unwrap();
        let a = render(&scene, &w, 32, 32).unwrap();
        let b = render(&scene, &w, 32, 32).unwrap();
        assert_eq!(a.pixels, b.pixels);
    }

    #[test]
    fn degenerate_cases_error() {
        let scene: Scene<f64> = generate_scene(2, Difficulty::Easy);
        let tiny = BBox::new(0.5, 0.5, 0.5004, 0.5004).unwrap();
        assert!(matches!(
            render(&scene, &tiny, 64, 64),
            Err(DegenerateBox::TinyArea { .. })
        ));
        assert!(matches!(
            render(&scene, &BBox::unit(), 8, 64),
            Err(DegenerateBox::LowResolution { .. })
        ));
    }

    #[test]
    fn zoom_reveals_detail() {
        // the target region must contain more glyph-colored pixels when
        // rendered as its own window than inside the full frame
        let scene: Scene<f64> = generate_scene(4, Difficulty::Hard);
        let target = scene.target();
        let full = render(&scene, &BBox::unit(), 64, 64).unwrap();
        let tight = render(&scene, &target.region, 64, 64).unwrap();
        let count_ink = |img: &Image<f64>| {
            (0..64u32)
                .flat_map(|y| (0..64u32).map(move |x| (x, y)))
                .filter(|&(x, y)| img.pixel(x, y) == target.glyph.color.rgb())
                .count()
        };
        assert!(count_ink(&tight) > count_ink(&full));
    }

    #[test]
    fn digits_have_distinct_masks() {
        for a in 0..10 {
            for b in (a + 1)..10 {
                assert_ne!(DIGIT_MASKS[a], DIGIT_MASKS[b]);
            }
        }
    }
}
