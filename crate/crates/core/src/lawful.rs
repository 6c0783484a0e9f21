//! Interpolating rules versus compressing rules.
//!
//! Any finite list of points lies on some polynomial curve, but describing
//! that curve costs as much as listing the points. A bit string is called
//! lawful only when a program much shorter than the string produces it.

use alloc::vec::Vec;
use core::fmt;

use crate::bits::{gamma_len, Bits, Program};
use crate::complexity::{complexity_upper, ExhaustiveTable};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LawError {
    Empty,
    NotFinite { index: usize },
    /// Points `index` and `index + 1` coincide, or are too close to get
    /// distinct parameter values.
    ZeroChord { index: usize },
    ZeroPrecision,
    EmptyData,
}

impl fmt::Display for LawError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawError::Empty => f.write_str("point set is empty"),
            LawError::NotFinite { index } => write!(f, "point {} is not finite", index + 1),
            LawError::ZeroChord { index } => {
                write!(f, "points {} and {} coincide", index + 1, index + 2)
            }
            LawError::ZeroPrecision => f.write_str("precision must be at least 1 bit"),
            LawError::EmptyData => f.write_str("data must be non-empty"),
        }
    }
}

/// Points in the order they were jotted down.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self, LawError> {
        if points.is_empty() {
            return Err(LawError::Empty);
        }
        if let Some(index) = points.iter().position(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(LawError::NotFinite { index });
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A parametric polynomial curve through every point, in order.
/// Coefficients are in Newton form over `nodes`, which holds the knots in
/// Leja order (each node as far as possible from the ones before it).
#[derive(Debug, Clone, PartialEq)]
pub struct CurveDescription {
    /// Parameter value of each point, in jotting order.
    pub knots: Vec<f64>,
    pub nodes: Vec<f64>,
    pub x_coeffs: Vec<f64>,
    pub y_coeffs: Vec<f64>,
}

impl CurveDescription {
    pub fn eval(&self, t: f64) -> Point {
        Point { x: newton_eval(&self.nodes, &self.x_coeffs, t), y: newton_eval(&self.nodes, &self.y_coeffs, t) }
    }

    pub fn coefficient_count(&self) -> usize {
        self.x_coeffs.len() + self.y_coeffs.len()
    }

    /// Largest distance between the curve at a knot and the matching point.
    pub fn max_residual(&self, points: &PointSet) -> f64 {
        self.knots
            .iter()
            .zip(points.points())
            .map(|(&t, p)| {
                let c = self.eval(t);
                libm::hypot(c.x - p.x, c.y - p.y)
            })
            .fold(0.0, f64::max)
    }

    /// `n` evenly spaced samples of the curve over `[0, 1]`.
    pub fn samples(&self, n: usize) -> Vec<(f64, Point)> {
        (0..n)
            .map(|i| {
                let t = if n <= 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
                (t, self.eval(t))
            })
            .collect()
    }
}

/// Indices of `t` in Leja order, starting from the largest magnitude.
fn leja_order(t: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = Vec::with_capacity(t.len());
    let mut score: Vec<f64> = t.iter().map(|v| v.abs()).collect();
    let mut used = alloc::vec![false; t.len()];
    for _ in 0..t.len() {
        let next = (0..t.len())
            .filter(|&i| !used[i])
            .fold(None, |best: Option<usize>, i| match best {
                Some(b) if score[b] >= score[i] => Some(b),
                _ => Some(i),
            })
            .expect("one left");
        used[next] = true;
        order.push(next);
        for i in 0..t.len() {
            let d = (t[i] - t[next]).abs();
            score[i] = if order.len() == 1 { d } else { score[i] * d };
        }
    }
    order
}

fn divided_differences(t: &[f64], v: &[f64]) -> Vec<f64> {
    let mut c = v.to_vec();
    for j in 1..t.len() {
        for i in (j..t.len()).rev() {
            c[i] = (c[i] - c[i - 1]) / (t[i] - t[i - j]);
        }
    }
    c
}

fn newton_eval(t: &[f64], c: &[f64], at: f64) -> f64 {
    let mut acc = 0.0;
    for i in (0..c.len()).rev() {
        acc = acc * (at - t[i]) + c[i];
    }
    acc
}

/// Chordal knots normalised to `[0, 1]`, then Newton interpolation of
/// `x(t)` and `y(t)`.
pub fn interpolate(points: &PointSet) -> Result<CurveDescription, LawError> {
    let p = points.points();
    let mut knots = Vec::with_capacity(p.len());
    knots.push(0.0);
    for i in 1..p.len() {
        let chord = libm::hypot(p[i].x - p[i - 1].x, p[i].y - p[i - 1].y);
        let t = knots[i - 1] + chord;
        if !(t > knots[i - 1]) {
            return Err(LawError::ZeroChord { index: i - 1 });
        }
        knots.push(t);
    }
    let total = *knots.last().expect("non-empty");
    if total > 0.0 {
        for k in knots.iter_mut() {
            *k /= total;
        }
        for i in 1..knots.len() {
            if !(knots[i] > knots[i - 1]) {
                return Err(LawError::ZeroChord { index: i - 1 });
            }
        }
    }
    let order = leja_order(&knots);
    let nodes: Vec<f64> = order.iter().map(|&i| knots[i]).collect();
    let xs: Vec<f64> = order.iter().map(|&i| p[i].x).collect();
    let ys: Vec<f64> = order.iter().map(|&i| p[i].y).collect();
    Ok(CurveDescription {
        x_coeffs: divided_differences(&nodes, &xs),
        y_coeffs: divided_differences(&nodes, &ys),
        nodes,
        knots,
    })
}

/// Header: gamma-coded coefficient count per axis and precision.
pub fn header_bits(points: usize, precision_bits: u32) -> usize {
    gamma_len(points as u64) + gamma_len(precision_bits as u64)
}

/// `coefficients × precision + header`.
pub fn describe_size(curve: &CurveDescription, precision_bits: u32) -> Result<usize, LawError> {
    if precision_bits == 0 {
        return Err(LawError::ZeroPrecision);
    }
    Ok(curve.coefficient_count() * precision_bits as usize + header_bits(curve.knots.len(), precision_bits))
}

/// A ratio `num/den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threshold {
    pub num: u64,
    pub den: u64,
}

impl Threshold {
    pub const HALF: Threshold = Threshold { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Option<Self> {
        (den > 0).then_some(Threshold { num, den })
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for Threshold {
    fn default() -> Self {
        Threshold::HALF
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lawfulness {
    Lawful,
    /// No short enough rule was found; says nothing about longer searches.
    LawlessAtBudget,
}

impl Lawfulness {
    pub fn as_str(self) -> &'static str {
        match self {
            Lawfulness::Lawful => "LAWFUL",
            Lawfulness::LawlessAtBudget => "LAWLESS_AT_BUDGET",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawVerdict {
    pub raw_size: usize,
    pub rule_size_upper: usize,
    pub rule: Program,
    pub ratio: f64,
    pub threshold: Threshold,
    pub verdict: Lawfulness,
}

/// Compare the shortest rule found for `data` with `data` itself. The table,
/// when given, adds every program up to its length bound to the search.
pub fn classify(
    data: &Bits,
    table: Option<&ExhaustiveTable>,
    threshold: Threshold,
) -> Result<LawVerdict, LawError> {
    if data.is_empty() {
        return Err(LawError::EmptyData);
    }
    let bound = complexity_upper(data, table);
    let raw = data.len();
    let rule_size = bound.value;
    // rule/raw ≤ num/den, in integers
    let lawful = (rule_size as u128) * (threshold.den as u128) <= (threshold.num as u128) * (raw as u128);
    Ok(LawVerdict {
        raw_size: raw,
        rule_size_upper: rule_size,
        rule: bound.witness,
        ratio: rule_size as f64 / raw as f64,
        threshold,
        verdict: if lawful { Lawfulness::Lawful } else { Lawfulness::LawlessAtBudget },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn set(p: &[(f64, f64)]) -> PointSet {
        PointSet::new(p.iter().map(|&(x, y)| Point { x, y }).collect()).unwrap()
    }

    #[test]
    fn single_point() {
        let s = set(&[(0.0, 0.0)]);
        let c = interpolate(&s).unwrap();
        assert_eq!(c.knots, vec![0.0]);
        assert_eq!(c.eval(0.7), Point { x: 0.0, y: 0.0 });
        assert_eq!(describe_size(&c, 32).unwrap(), 64 + header_bits(1, 32));
    }

    #[test]
    fn two_points_linear() {
        let c = interpolate(&set(&[(0.0, 0.0), (1.0, 1.0)])).unwrap();
        assert_eq!(c.knots, vec![0.0, 1.0]);
        for t in [0.0, 0.25, 0.5, 1.0] {
            let p = c.eval(t);
            assert!((p.x - t).abs() < 1e-12 && (p.y - t).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_chord_rejected() {
        let r = interpolate(&set(&[(0.0, 0.0), (1.0, 2.0), (1.0, 2.0)]));
        assert_eq!(r, Err(LawError::ZeroChord { index: 1 }));
    }

    #[test]
    fn classify_examples() {
        let v = classify(&Bits::repeat(false, 1024), None, Threshold::HALF).unwrap();
        assert!(v.rule_size_upper <= 36 && v.ratio <= 0.04);
        assert_eq!(v.verdict, Lawfulness::Lawful);
        let v = classify(&"0".parse().unwrap(), None, Threshold::HALF).unwrap();
        assert!(v.ratio >= 1.0);
        assert_eq!(v.verdict, Lawfulness::LawlessAtBudget);
        assert_eq!(classify(&Bits::new(), None, Threshold::HALF), Err(LawError::EmptyData));
    }
}
