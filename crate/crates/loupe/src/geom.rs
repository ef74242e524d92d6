//! Axis-aligned boxes in relative `[0,1]` coordinates of a stated reference image.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum BoxError {
    #[error("coordinate outside [0,1]")]
    OutOfRange,
    #[error("empty box: x1 >= x2 or y1 >= y2")]
    Empty,
}

/// Axis-aligned box. Invariant: `0 <= x1 < x2 <= 1` and `0 <= y1 < y2 <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox<S> {
    pub x1: S,
    pub y1: S,
    pub x2: S,
    pub y2: S,
}

impl<S: Scalar> BBox<S> {
    pub fn new(x1: S, y1: S, x2: S, y2: S) -> Result<Self, BoxError> {
        let zero = S::zero();
        let one = S::one();
        for c in [x1, y1, x2, y2] {
            if !(c >= zero && c <= one) {
                return Err(BoxError::OutOfRange);
            }
        }
        if !(x1 < x2 && y1 < y2) {
            return Err(BoxError::Empty);
        }
        Ok(Self { x1, y1, x2, y2 })
    }

    /// The full `[0,1]^2` frame.
    pub fn unit() -> Self {
        Self {
            x1: S::zero(),
            y1: S::zero(),
            x2: S::one(),
            y2: S::one(),
        }
    }

    pub fn from_f64(x1: f64, y1: f64, x2: f64, y2: f64) -> Result<Self, BoxError> {
        Self::new(
            S::from_f64_lossy(x1),
            S::from_f64_lossy(y1),
            S::from_f64_lossy(x2),
            S::from_f64_lossy(y2),
        )
    }

    pub fn width(&self) -> S {
        self.x2 - self.x1
    }

    pub fn height(&self) -> S {
        self.y2 - self.y1
    }

    pub fn area(&self) -> S {
        self.width() * self.height()
    }

    pub fn center(&self) -> (S, S) {
        let half = S::from_f64_lossy(0.5);
        ((self.x1 + self.x2) * half, (self.y1 + self.y2) * half)
    }

    pub fn contains_point(&self, x: S, y: S) -> bool {
        x >= self.x1 && x < self.x2 && y >= self.y1 && y < self.y2
    }

    pub fn contains_box(&self, other: &Self) -> bool {
        self.x1 <= other.x1 && self.y1 <= other.y1 && self.x2 >= other.x2 && self.y2 >= other.y2
    }

    pub fn intersection(&self, other: &Self) -> Option<Self> {
        let x1 = self.x1.max(other.x1);
        let y1 = self.y1.max(other.y1);
        let x2 = self.x2.min(other.x2);
        let y2 = self.y2.min(other.y2);
        if x1 < x2 && y1 < y2 {
            Some(Self { x1, y1, x2, y2 })
        } else {
            None
        }
    }

    pub fn intersection_area(&self, other: &Self) -> S {
        let w = (self.x2.min(other.x2) - self.x1.max(other.x1)).max(S::zero());
        let h = (self.y2.min(other.y2) - self.y1.max(other.y1)).max(S::zero());
        w * h
    }

    pub fn union_area(&self, other: &Self) -> S {
        self.area() + other.area() - self.intersection_area(other)
    }

    /// Map `child`, given relative to this box, into this box's frame.
    ///
    /// With parent `(px1,py1,px2,py2)` and child `(cx1,cy1,cx2,cy2)` the
    /// result is `(px1+cx1*w, py1+cy1*h, px1+cx2*w, py1+cy2*h)` where
    /// `w = px2-px1`, `h = py2-py1`. Composing with the unit box is exact.
    pub fn compose(&self, child: &Self) -> Self {
        let w = self.width();
        let h = self.height();
        let one = S::one();
        let out = Self {
            x1: (self.x1 + child.x1 * w).min(one),
            y1: (self.y1 + child.y1 * h).min(one),
            x2: (self.x2.min(self.x1 + child.x2 * w)).min(one),
            y2: (self.y2.min(self.y1 + child.y2 * h)).min(one),
        };
        debug_assert!(out.x1 < out.x2 && out.y1 < out.y2);
        out
    }
}
