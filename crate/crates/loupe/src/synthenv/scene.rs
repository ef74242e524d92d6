//! Procedural generation of zoom-required visual-search scenes.
//!
//! A scene is a vector description of a large virtual canvas dotted with
//! small bordered cells, each holding a colored glyph (a digit drawn inside
//! a shape outline). Exactly one cell is the target; the question names it
//! through its unique border color. Whether an attribute is decodable at a
//! given window/resolution is a pure function of geometry, so difficulty is
//! provable rather than estimated.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geom::BBox;
use crate::scalar::Scalar;

/// Virtual canvas side in pixels. Region/glyph sizes below are in these units.
pub const CANVAS_SIZE: u32 = 4096;
/// Output side used when rendering a full view by default.
pub const BASE_RENDER_PX: u32 = 448;
/// A glyph is decodable once its rendered bounding box reaches this many pixels.
pub const GLYPH_LEGIBLE_PX: f64 = 12.0;
/// A cell's border color is resolvable once the cell region renders this large.
pub const BORDER_LEGIBLE_PX: f64 = 12.0;
/// Glyph footprint cap as a fraction of the canvas side.
pub const MAX_GLYPH_FRAC: f64 = 0.08;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Difficulty {
    Easy,
    Medium,
    Hard,
}

impl Difficulty {
    pub const ALL: [Difficulty; 3] = [Difficulty::Easy, Difficulty::Medium, Difficulty::Hard];

    pub fn as_str(&self) -> &'static str {
        match self {
            Difficulty::Easy => "easy",
            Difficulty::Medium => "medium",
            Difficulty::Hard => "hard",
        }
    }
}

impl std::str::FromStr for Difficulty {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "easy" => Ok(Difficulty::Easy),
            "medium" => Ok(Difficulty::Medium),
            "hard" => Ok(Difficulty::Hard),
            other => Err(format!("unknown difficulty: {other}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorClass {
    Red,
    Green,
    Blue,
    Yellow,
}

impl ColorClass {
    pub const ALL: [ColorClass; 4] = [
        ColorClass::Red,
        ColorClass::Green,
        ColorClass::Blue,
        ColorClass::Yellow,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ColorClass::Red => "red",
            ColorClass::Green => "green",
            ColorClass::Blue => "blue",
            ColorClass::Yellow => "yellow",
        }
    }

    pub fn rgb(&self) -> [u8; 3] {
        match self {
            ColorClass::Red => [200, 30, 30],
            ColorClass::Green => [30, 160, 60],
            ColorClass::Blue => [30, 60, 200],
            ColorClass::Yellow => [220, 190, 30],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeClass {
    Circle,
    Square,
    Triangle,
}

impl ShapeClass {
    pub const ALL: [ShapeClass; 3] = [ShapeClass::Circle, ShapeClass::Square, ShapeClass::Triangle];

    pub fn name(&self) -> &'static str {
        match self {
            ShapeClass::Circle => "circle",
            ShapeClass::Square => "square",
            ShapeClass::Triangle => "triangle",
        }
    }
}

/// What the scene's question asks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuestionKind {
    Digit,
    Color,
    Shape,
}

/// The drawn symbol: a digit rendered inside a shape outline, in one color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlyphSpec {
    pub digit: u8,
    pub color: ColorClass,
    pub shape: ShapeClass,
}

/// The attribute a question can ask about, as a closed value space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttrValue {
    Digit(u8),
    Color(ColorClass),
    Shape(ShapeClass),
}

impl AttrValue {
    pub fn canonical_text(&self) -> String {
        match self {
            AttrValue::Digit(d) => d.to_string(),
            AttrValue::Color(c) => c.name().to_string(),
            AttrValue::Shape(s) => s.name().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell<S> {
    /// Cell footprint on the canvas, relative coordinates.
    pub region: BBox<S>,
    pub glyph: GlyphSpec,
    /// Bounding box of the drawn glyph, relative to the canvas.
    pub glyph_box: BBox<S>,
    /// Color of the ring drawn on the region perimeter.
    pub border_color: ColorClass,
    /// Projection of the glyph onto the scene's question kind.
    pub attribute: AttrValue,
    pub is_target: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene<S> {
    pub seed: u64,
    pub canvas_size: u32,
    pub cells: Vec<Cell<S>>,
    pub target_cell: usize,
    pub distractor_count: usize,
    pub difficulty: Difficulty,
    pub question_kind: QuestionKind,
    /// Border color carried only by the target; the question's locating cue.
    pub cue_color: ColorClass,
}

impl<S: Scalar> Scene<S> {
    pub fn target(&self) -> &Cell<S> {
        &self.cells[self.target_cell]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QAPair<S> {
    pub question: String,
    pub answer: String,
    pub target_region: BBox<S>,
}

struct DifficultyParams {
    glyph_px: (f64, f64),
    region_px: f64,
    distractors: usize,
}

fn params_for(difficulty: Difficulty) -> DifficultyParams {
    match difficulty {
        // Glyph sizes are picked so that, at a 448 px render of the 4096 px
        // canvas, easy targets are decodable at the full frame, medium ones
        // after one halving zoom and hard ones only after two.
        Difficulty::Easy => DifficultyParams {
            glyph_px: (120.0, 200.0),
            region_px: 256.0,
            distractors: 5,
        },
        Difficulty::Medium => DifficultyParams {
            glyph_px: (60.0, 100.0),
            region_px: 128.0,
            distractors: 10,
        },
        Difficulty::Hard => DifficultyParams {
            glyph_px: (30.0, 48.0),
            region_px: 64.0,
            distractors: 15,
        },
    }
}

fn difficulty_tag(difficulty: Difficulty) -> u64 {
    match difficulty {
        Difficulty::Easy => 0x45,
        Difficulty::Medium => 0x4d,
        Difficulty::Hard => 0x48,
    }
}

fn mix_seed(seed: u64, tag: u64) -> u64 {
    // splitmix64 finalizer over the (seed, tag) pair
    let mut z = seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministically generate a scene from `(seed, difficulty)`.
pub fn generate_scene<S: Scalar>(seed: u64, difficulty: Difficulty) -> Scene<S> {
    let p = params_for(difficulty);
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, difficulty_tag(difficulty)));
    let canvas = CANVAS_SIZE as f64;

    let question_kind = *[QuestionKind::Digit, QuestionKind::Color, QuestionKind::Shape]
        .choose(&mut rng)
        .unwrap();
    let cue_color = *ColorClass::ALL.choose(&mut rng).unwrap();

    let n = p.distractors + 1;
    let target_cell = rng.gen_range(0..n);
    let region_side = p.region_px / canvas;
    let margin = 0.01 + region_side / 2.0;

    let mut placed: Vec<(f64, f64)> = Vec::with_capacity(n);
    let mut cells = Vec::with_capacity(n);
    for i in 0..n {
        let (cx, cy) = loop {
            let cx = rng.gen_range(margin..1.0 - margin);
            let cy = rng.gen_range(margin..1.0 - margin);
            // keep one region side of clearance between cell centers
            let clear = placed
                .iter()
                .all(|&(px, py)| (px - cx).abs().max((py - cy).abs()) > 2.0 * region_side);
            if clear {
                break (cx, cy);
            }
        };
        placed.push((cx, cy));

        let glyph_side = rng.gen_range(p.glyph_px.0..=p.glyph_px.1) / canvas;
        debug_assert!(glyph_side <= MAX_GLYPH_FRAC);
        let digit = rng.gen_range(0..10u8);
        let color = *ColorClass::ALL.choose(&mut rng).unwrap();
        let shape = *ShapeClass::ALL.choose(&mut rng).unwrap();
        let is_target = i == target_cell;
        let border_color = if is_target {
            cue_color
        } else {
            *ColorClass::ALL
                .iter()
                .filter(|c| **c != cue_color)
                .copied()
                .collect::<Vec<_>>()
                .choose(&mut rng)
                .unwrap()
        };
        let glyph = GlyphSpec { digit, color, shape };
        let attribute = match question_kind {
            QuestionKind::Digit => AttrValue::Digit(digit),
            QuestionKind::Color => AttrValue::Color(color),
            QuestionKind::Shape => AttrValue::Shape(shape),
        };
        let half_r = region_side / 2.0;
        let half_g = glyph_side / 2.0;
        cells.push(Cell {
            region: BBox::from_f64(cx - half_r, cy - half_r, cx + half_r, cy + half_r)
                .expect("placed region is valid"),
            glyph,
            glyph_box: BBox::from_f64(cx - half_g, cy - half_g, cx + half_g, cy + half_g)
                .expect("glyph box is valid"),
            border_color,
            attribute,
            is_target,
        });
    }

    let scene = Scene {
        seed,
        canvas_size: CANVAS_SIZE,
        cells,
        target_cell,
        distractor_count: n - 1,
        difficulty,
        question_kind,
        cue_color,
    };
    debug_assert_eq!(scene.cells.iter().filter(|c| c.is_target).count(), 1);
    scene
}

/// Build the question/answer pair for a scene.
///
/// The question names the target through its border color, which is unique
/// in the scene by construction.
pub fn make_qa<S: Scalar>(scene: &Scene<S>) -> QAPair<S> {
    let cue = scene.cue_color.name();
    let question = match scene.question_kind {
        QuestionKind::Digit => {
            format!("What digit is shown inside the {cue}-bordered box?")
        }
        QuestionKind::Color => {
            format!("What color is the symbol inside the {cue}-bordered box?")
        }
        QuestionKind::Shape => {
            format!("What shape outlines the symbol inside the {cue}-bordered box?")
        }
    };
    let target = scene.target();
    QAPair {
        question,
        answer: target.attribute.canonical_text(),
        target_region: target.region,
    }
}

/// Trim, casefold and collapse internal whitespace.
pub fn normalize_answer(s: &str) -> String {
    s.split_whitespace()
        .map(|w| w.to_lowercase())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Exact match on normalized text.
pub fn verify_answer<S: Scalar>(_scene: &Scene<S>, qa: &QAPair<S>, answer_text: &str) -> bool {
    normalize_answer(answer_text) == normalize_answer(&qa.answer)
}

fn rendered_px(extent: f64, window_extent: f64, out_px: u32) -> f64 {
    extent / window_extent * out_px as f64
}

/// Whether the target glyph is decodable in `window` rendered at `out_w`
/// square pixels: its bounding-box footprint inside the window must reach
/// [`GLYPH_LEGIBLE_PX`] in both dimensions. Pure geometry, no pixels.
pub fn legibility_oracle<S: Scalar>(scene: &Scene<S>, window: &BBox<S>, out_w: u32) -> bool {
    let glyph = &scene.target().glyph_box;
    let Some(inter) = glyph.intersection(window) else {
        return false;
    };
    let w_px = rendered_px(inter.width().as_f64(), window.width().as_f64(), out_w);
    let h_px = rendered_px(inter.height().as_f64(), window.height().as_f64(), out_w);
    w_px >= GLYPH_LEGIBLE_PX && h_px >= GLYPH_LEGIBLE_PX
}

/// Whether `cell`'s border color can be told apart in `window` at `out_w`:
/// the cell region must render at [`BORDER_LEGIBLE_PX`] in both dimensions
/// and intersect the window at all.
pub fn cell_resolvable<S: Scalar>(cell: &Cell<S>, window: &BBox<S>, out_w: u32) -> bool {
    let Some(inter) = cell.region.intersection(window) else {
        return false;
    };
    let w_px = rendered_px(inter.width().as_f64(), window.width().as_f64(), out_w);
    let h_px = rendered_px(inter.height().as_f64(), window.height().as_f64(), out_w);
    w_px >= BORDER_LEGIBLE_PX && h_px >= BORDER_LEGIBLE_PX
}

/// Smallest number of nested `zoom_scale` halvings of the full frame after
/// which the target glyph becomes decodable, assuming each window fully
/// contains the glyph (the best case).
pub fn required_zoom_depth<S: Scalar>(scene: &Scene<S>, zoom_scale: f64, out_w: u32) -> u32 {
    let g = scene.target().glyph_box;
    let side = g.width().as_f64().min(g.height().as_f64());
    let mut window = 1.0;
    for depth in 0..32 {
        if rendered_px(side, window, out_w) >= GLYPH_LEGIBLE_PX {
            return depth;
        }
        window *= zoom_scale;
    }
    32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let a: Scene<f64> = generate_scene(7, Difficulty::Hard);
        let b: Scene<f64> = generate_scene(7, Difficulty::Hard);
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn exactly_one_target() {
        for seed in 0..50 {
            let scene: Scene<f64> = generate_scene(seed, Difficulty::Hard);
            assert_eq!(scene.cells.iter().filter(|c| c.is_target).count(), 1);
            assert!(scene.cells[scene.target_cell].is_target);
            assert_eq!(scene.distractor_count, scene.cells.len() - 1);
        }
    }

    #[test]
    fn question_is_deterministic_and_answer_matches_target() {
        let scene: Scene<f64> = generate_scene(41, Difficulty::Medium);
        let qa1 = make_qa(&scene);
        let qa2 = make_qa(&scene);
        assert_eq!(qa1.question, qa2.question);
        assert_eq!(qa1.answer, scene.target().attribute.canonical_text());
        assert_eq!(qa1.target_region, scene.target().region);
    }

    #[test]
    fn cue_is_unique_per_scene() {
        for seed in 0..200 {
            for difficulty in Difficulty::ALL {
                let scene: Scene<f64> = generate_scene(seed, difficulty);
                let matches = scene
                    .cells
                    .iter()
                    .filter(|c| c.border_color == scene.cue_color)
                    .count();
                assert_eq!(matches, 1, "seed {seed} {difficulty:?}");
            }
        }
    }

    #[test]
    fn verify_answer_normalizes() {
        let scene: Scene<f64> = generate_scene(3, Difficulty::Easy);
        let mut qa = make_qa(&scene);
        qa.answer = "3".to_string();
        assert!(verify_answer(&scene, &qa, "3"));
        assert!(verify_answer(&scene, &qa, "  3 "));
        assert!(!verify_answer(&scene, &qa, "8"));
        qa.answer = "Red Circle".to_string();
        assert!(verify_answer(&scene, &qa, " red   circle "));
    }

    #[test]
    fn hard_scenes_need_two_zooms() {
        for seed in 0..100 {
            let scene: Scene<f64> = generate_scene(seed, Difficulty::Hard);
            assert!(!legibility_oracle(&scene, &BBox::unit(), BASE_RENDER_PX));
            assert!(legibility_oracle(
                &scene,
                &scene.target().region,
                BASE_RENDER_PX
            ));
            assert_eq!(required_zoom_depth(&scene, 0.5, BASE_RENDER_PX), 2);
        }
    }

    #[test]
    fn medium_scenes_need_one_zoom() {
        for seed in 0..100 {
            let scene: Scene<f64> = generate_scene(seed, Difficulty::Medium);
            assert!(!legibility_oracle(&scene, &BBox::unit(), BASE_RENDER_PX));
            assert_eq!(required_zoom_depth(&scene, 0.5, BASE_RENDER_PX), 1);
        }
    }

    #[test]
    fn easy_scenes_are_legible_at_full_frame() {
        for seed in 0..100 {
            let scene: Scene<f64> = generate_scene(seed, Difficulty::Easy);
            assert!(legibility_oracle(&scene, &BBox::unit(), BASE_RENDER_PX));
        }
    }

    #[test]
    fn legibility_false_on_disjoint_window() {
        let scene: Scene<f64> = generate_scene(11, Difficulty::Hard);
        let t = scene.target().region;
        // a window strictly to one side of the target
        let window = if t.x2 < 0.5 {
            BBox::new(0.9, 0.9, 1.0, 1.0).unwrap()
        } else {
            BBox::new(0.0, 0.0, 0.05, 0.05).unwrap()
        };
        assert!(!legibility_oracle(&scene, &window, BASE_RENDER_PX));
    }

    #[test]
    fn border_resolution_depends_on_zoom() {
        let scene: Scene<f64> = generate_scene(5, Difficulty::Hard);
        let target = scene.target();
        assert!(!cell_resolvable(target, &BBox::unit(), BASE_RENDER_PX));
        let half = BBox::new(
            (target.region.x1 - 0.2).max(0.0),
            (target.region.y1 - 0.2).max(0.0),
            (target.region.x1 + 0.3).min(1.0),
            (target.region.y1 + 0.3).min(1.0),
        )
        .unwrap();
        assert!(cell_resolvable(target, &half, BASE_RENDER_PX));
    }
}
