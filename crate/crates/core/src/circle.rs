//! The circle group: characters and the equispaced trapezoid rule.

use std::f64::consts::PI;

use crate::group::{GroupPoint, GroupTag, QuadLayout, QuadratureRule};
use crate::linalg::C64;

/// A point of the circle, stored as an angle wrapped into `[-pi, pi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CirclePoint {
    theta: f64,
}

impl CirclePoint {
    pub fn new(theta: f64) -> Self {
        CirclePoint { theta: wrap(theta) }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

fn wrap(theta: f64) -> f64 {
    let t = (theta + PI).rem_euclid(2.0 * PI) - PI;
    // rem_euclid can round up to exactly 2pi
    if t >= PI {
        t - 2.0 * PI
    } else {
        t
    }
}

/// The character `e^{i n theta}`.
pub fn circle_rep_eval(n: i32, theta: f64) -> C64 {
    if n == 0 {
        return C64::new(1.0, 0.0);
    }
    // reduce the phase first so large |n| keeps full accuracy
    let phase = (n as f64 * theta).rem_euclid(2.0 * PI);
    C64::new(phase.cos(), phase.sin())
}

/// Equispaced rule with `4B + 1` nodes, exact for `e^{in theta}`, `|n| <= 4B`.
pub fn circle_quadrature(b: u32) -> QuadratureRule {
    circle_quadrature_with_exactness(4 * b)
}

/// Equispaced rule with `exactness + 1` nodes.
pub fn circle_quadrature_with_exactness(exactness: u32) -> QuadratureRule {
    let n = exactness as usize + 1;
    let nodes = (0..n)
        .map(|k| GroupPoint::Circle(CirclePoint::new(2.0 * PI * k as f64 / n as f64)))
        .collect();
    QuadratureRule {
        group: GroupTag::Circle,
        nodes,
        weights: vec![1.0 / n as f64; n],
        exactness,
        layout: QuadLayout::Circle { count: n },
        raw_mass: None,
    }
}
