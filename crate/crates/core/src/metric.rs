//! The frame-generalized Minkowski distance family in `n ≥ 2` dimensions.
//!
//! A [`MetricSpec`] fixes `n` linearly independent unit vectors `v_i` (the
//! [`Frame`]), positive weights `λ_i` and an exponent `p ∈ (0, ∞]`. The
//! distance between `x` and `y` is
//!
//! ```text
//! d(x, y) = ( Σ_i (λ_i |⟨v_i, x − y⟩|)^p )^(1/p)        (finite p)
//! d(x, y) = max_i λ_i |⟨v_i, x − y⟩|                    (p = ∞)
//! ```
//!
//! Each `|⟨v_i, x − y⟩|` is the Euclidean distance from `y` to the
//! hyperplane through `x` with normal `v_i` (see [`HyperplaneSpec`]). With
//! the identity frame and unit weights the family reduces to the textbook
//! `ℓp` distance. For `p ≥ 1` (and `p = ∞`) the distance is a metric; for
//! `0 < p < 1` it is still evaluated, and [`MetricSpec::is_metric`] reports
//! `false`.

use std::fmt;

use crate::error::{GeomError, Result};
use crate::linalg::determinant;
use crate::tol::{EPS_INDEP, EPS_UNIT};
use crate::vec2::Vec2;

/// A point (or vector) in `R^n`, `n ≥ 2`, with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(GeomError::DimensionTooSmall(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite("point coordinates"));
        }
        Ok(Self { coords })
    }

    pub fn origin(dim: usize) -> Self {
        assert!(dim >= 2, "dimension must be at least 2");
        Self {
            coords: vec![0.0; dim],
        }
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn scaled(&self, k: f64) -> Point {
        Point {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// The planar view of a 2-D point.
    pub fn to_vec2(&self) -> Option<Vec2> {
        match self.coords.as_slice() {
            [x, y] => Some(Vec2::new(*x, *y)),
            _ => None,
        }
    }
}

impl From<Vec2> for Point {
    fn from(v: Vec2) -> Self {
        Point {
            coords: vec![v.x, v.y],
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Coordinatewise sum `p + by`.
pub fn translate(p: &Point, by: &Point) -> Result<Point> {
    check_dim(p.dim(), by.dim())?;
    Ok(Point {
        coords: p.coords.iter().zip(&by.coords).map(|(a, b)| a + b).collect(),
    })
}

/// The exponent `p` of the family. `Infinity` is evaluated directly as a
/// maximum rather than as a large finite power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Accepts any `p > 0`; `f64::INFINITY` maps to [`Exponent::Infinity`].
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if p.is_finite() && p > 0.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(GeomError::InvalidExponent(p))
        }
    }

    /// `p` as a float, `f64::INFINITY` for the maximum member.
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    pub fn is_metric(self) -> bool {
        match self {
            Exponent::Finite(p) => p >= 1.0,
            Exponent::Infinity => true,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// `n` linearly independent unit vectors with their cached determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    rows: Vec<Vec<f64>>,
    det: f64,
}

/// Validate (and optionally normalize) the rows of a frame.
///
/// Checks run in this order: zero rows, linear independence (on the
/// length-normalized rows, so the test is scale free), then unit length
/// when `normalize` is off.
pub fn validate_frame(rows: Vec<Vec<f64>>, normalize: bool) -> Result<Frame> {
    let n = rows.len();
    if n < 2 {
        return Err(GeomError::DimensionTooSmall(n));
    }
    for row in &rows {
        check_dim(n, row.len())?;
        if row.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite("frame vectors"));
        }
    }
    let lengths: Vec<f64> = rows.iter().map(|r| euclidean_length(r)).collect();
    if let Some(row) = lengths.iter().position(|&l| l < EPS_INDEP) {
        return Err(GeomError::ZeroVector { row });
    }
    let unit_rows: Vec<Vec<f64>> = rows
        .iter()
        .zip(&lengths)
        .map(|(r, l)| r.iter().map(|c| c / l).collect())
        .collect();
    let unit_det = determinant(&unit_rows);
    if unit_det.abs() <= EPS_INDEP {
        return Err(GeomError::DependentFrame { det: unit_det });
    }
    if normalize {
        return Ok(Frame {
            rows: unit_rows,
            det: unit_det,
        });
    }
    if let Some(row) = lengths.iter().position(|l| (l - 1.0).abs() > EPS_UNIT) {
        return Err(GeomError::NotUnit {
            row,
            length: lengths[row],
        });
    }
    let det = determinant(&rows);
    Ok(Frame { rows, det })
}

impl Frame {
    /// The standard basis of `R^n`.
    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 2, "dimension must be at least 2");
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Frame { rows, det: 1.0 }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    #[inline]
    pub fn det(&self) -> f64 {
        self.det
    }

    /// `|⟨v_i, u⟩|` for every frame vector.
    pub fn projections(&self, u: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|r| dot(r, u).abs()).collect()
    }
}

/// Frame, weights and exponent: one member of the distance family.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpec {
    frame: Frame,
    weights: Vec<f64>,
    exponent: Exponent,
}

impl MetricSpec {
    pub fn new(frame: Frame, weights: Vec<f64>, exponent: Exponent) -> Result<Self> {
        check_dim(frame.dim(), weights.len())?;
        for &w in &weights {
            if !w.is_finite() {
                return Err(GeomError::NonFinite("weights"));
            }
            if w <= 0.0 {
                return Err(GeomError::NonPositive {
                    name: "weight",
                    value: w,
                });
            }
        }
        Ok(Self {
            frame,
            weights,
            exponent,
        })
    }

    /// All weights equal to 1.
    pub fn unweighted(frame: Frame, exponent: Exponent) -> Self {
        let weights = vec![1.0; frame.dim()];
        Self {
            frame,
            weights,
            exponent,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn is_metric(&self) -> bool {
        self.exponent.is_metric()
    }

    /// Same frame and weights, different exponent.
    pub fn with_exponent(&self, exponent: Exponent) -> Self {
        Self {
            frame: self.frame.clone(),
            weights: self.weights.clone(),
            exponent,
        }
    }

    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        check_dim(self.dim(), x.dim())?;
        check_dim(self.dim(), y.dim())?;
        Ok(self.distance_coords(x.coords(), y.coords()))
    }

    /// Distance on raw coordinate slices. Lengths must equal `self.dim()`;
    /// this is only checked in debug builds.
    pub fn distance_coords(&self, x: &[f64], y: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(y.len(), self.dim());
        self.combine_with(|row| {
            row.iter()
                .zip(x.iter().zip(y))
                .map(|(v, (a, b))| v * (a - b))
                .sum::<f64>()
        })
    }

    /// The induced norm, `distance(x, 0)`.
    pub fn norm(&self, x: &Point) -> Result<f64> {
        check_dim(self.dim(), x.dim())?;
        Ok(self.norm_coords(x.coords()))
    }

    pub fn norm_coords(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        self.combine_with(|row| dot(row, x))
    }

    /// The weighted projections `λ_i |⟨v_i, x − y⟩|`.
    pub fn weighted_projections(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.frame
            .projections(&diff)
            .into_iter()
            .zip(&self.weights)
            .map(|(t, w)| w * t)
            .collect()
    }

    /// `σ = max_i λ_i |⟨v_i, x − y⟩|`, which equals the `p = ∞` distance.
    pub fn max_projection(&self, x: &[f64], y: &[f64]) -> f64 {
        self.weighted_projections(x, y)
            .into_iter()
            .fold(0.0, f64::max)
    }

    /// Ratio of this distance to the Euclidean distance along any line with
    /// the given direction.
    pub fn line_scale_factor(&self, direction: &Point) -> Result<f64> {
        check_dim(self.dim(), direction.dim())?;
        let len = euclidean_length(direction.coords());
        if len < EPS_INDEP {
            return Err(GeomError::ZeroVector { row: 0 });
        }
        Ok(self.norm_coords(direction.coords()) / len)
    }

    /// Evaluate the family on the signed inner products produced by
    /// `signed_projection(row)` for each frame row.
    #[inline]
    fn combine_with(&self, signed_projection: impl Fn(&[f64]) -> f64) -> f64 {
        const STACK: usize = 8;
        let n = self.dim();
        let mut stack = [0.0f64; STACK];
        let mut heap;
        let terms: &mut [f64] = if n <= STACK {
            &mut stack[..n]
        } else {
            heap = vec![0.0; n];
            &mut heap
        };
        for ((t, row), w) in terms.iter_mut().zip(&self.frame.rows).zip(&self.weights) {
            *t = w * signed_projection(row).abs();
        }
        combine(terms, self.exponent)
    }
}

/// `(Σ t_i^p)^(1/p)` for nonnegative terms, or their maximum for `p = ∞`.
///
/// Finite `p` is evaluated as `σ (Σ (t_i/σ)^p)^(1/p)` with `σ = max t_i`,
/// which cannot overflow or underflow for large `p`.
pub(crate) fn combine(terms: &[f64], exponent: Exponent) -> f64 {
    let sigma = terms.iter().copied().fold(0.0, f64::max);
    match exponent {
        Exponent::Infinity => sigma,
        Exponent::Finite(p) if p == 1.0 => terms.iter().sum(),
        Exponent::Finite(p) => {
            if sigma == 0.0 {
                return 0.0;
            }
            let s: f64 = terms.iter().map(|t| (t / sigma).powf(p)).sum();
            sigma * s.powf(1.0 / p)
        }
    }
}

/// A hyperplane through `anchor` with unit normal `normal`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperplaneSpec {
    anchor: Point,
    normal: Vec<f64>,
}

impl HyperplaneSpec {
    pub fn new(anchor: Point, normal: Vec<f64>) -> Result<Self> {
        check_dim(anchor.dim(), normal.len())?;
        if normal.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite("hyperplane normal"));
        }
        let length = euclidean_length(&normal);
        if (length - 1.0).abs() > EPS_UNIT {
            return Err(GeomError::NotUnit { row: 0, length });
        }
        Ok(Self { anchor, normal })
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    /// Euclidean distance from `y` to the hyperplane.
    pub fn distance_to(&self, y: &Point) -> Result<f64> {
        check_dim(self.anchor.dim(), y.dim())?;
        Ok(self
            .normal
            .iter()
            .zip(self.anchor.coords().iter().zip(y.coords()))
            .map(|(v, (a, b))| v * (a - b))
            .sum::<f64>()
            .abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantMode {
    /// Arbitrary independent vectors; each projection is divided by the
    /// vector's Euclidean length.
    Prime,
    /// Unit vectors; coefficients `μ_i` multiply the `p`-th powers.
    DoublePrime,
}

/// The two alternative parameterizations of the family.
///
/// `Prime` is invariant under rescaling any frame vector by a nonzero
/// factor. `DoublePrime` with `p = ∞` does not depend on the coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct VariantSpec {
    mode: VariantMode,
    rows: Vec<Vec<f64>>,
    coeffs: Vec<f64>,
    exponent: Exponent,
}

impl VariantSpec {
    pub fn new(
        mode: VariantMode,
        rows: Vec<Vec<f64>>,
        coeffs: Vec<f64>,
        exponent: Exponent,
    ) -> Result<Self> {
        let frame = validate_frame(rows.clone(), mode == VariantMode::Prime)?;
        check_dim(frame.dim(), coeffs.len())?;
        for &c in &coeffs {
            if !(c.is_finite() && c > 0.0) {
                return Err(GeomError::NonPositive {
                    name: "coefficient",
                    value: c,
                });
            }
        }
        Ok(Self {
            mode,
            rows,
            coeffs,
            exponent,
        })
    }

    pub fn mode(&self) -> VariantMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        check_dim(self.dim(), x.dim())?;
        check_dim(self.dim(), y.dim())?;
        let diff: Vec<f64> = x.coords().iter().zip(y.coords()).map(|(a, b)| a - b).collect();
        let terms: Vec<f64> = self
            .rows
            .iter()
            .zip(&self.coeffs)
            .map(|(row, &c)| {
                let proj = dot(row, &diff).abs();
                match self.mode {
                    VariantMode::Prime => c * proj / euclidean_length(row),
                    VariantMode::DoublePrime => match self.exponent {
                        // μ_i^(1/p) |⟨v_i, x−y⟩| raised to p gives μ_i |…|^p
                        Exponent::Finite(p) => c.powf(1.0 / p) * proj,
                        Exponent::Infinity => proj,
                    },
                }
            })
            .collect();
        Ok(combine(&terms, self.exponent))
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn euclidean_length(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(GeomError::DimensionMismatch { expected, found })
    }
}
