//! Pinching constants of the one-parameter metrics: global curvature extrema,
//! the planes attaining them, and the comparison against the extrema over
//! natural planes only.

use crate::curvature::BergerPlane;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PinchingError {
    #[error("parameter outside the positively curved range (0, 4/3)")]
    OutOfRange,
}

/// Curvature value of the interior critical planes, (16t^2 - 8t + 4)/(11t + 1).
pub fn alpha(t: f64) -> f64 {
    (16.0 * t * t - 8.0 * t + 4.0) / (11.0 * t + 1.0)
}

/// Which kind of 2-plane attains an extremum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlaneClass {
    Vertical,
    Vertizontal,
    Horizontal,
    CriticalMixed,
}

impl PlaneClass {
    pub fn label(self) -> &'static str {
        match self {
            PlaneClass::Vertical => "vertical",
            PlaneClass::Vertizontal => "vertizontal",
            PlaneClass::Horizontal => "horizontal",
            PlaneClass::CriticalMixed => "critical-mixed",
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Extrema {
    pub min: f64,
    pub min_class: PlaneClass,
    pub max: f64,
    pub max_class: PlaneClass,
}

fn check(t: f64) -> Result<(), PinchingError> {
    if t > 0.0 && t < 4.0 / 3.0 {
        Ok(())
    } else {
        Err(PinchingError::OutOfRange)
    }
}

/// Global sectional curvature extrema of the one-parameter metric.
pub fn extrema(t: f64) -> Result<Extrema, PinchingError> {
    check(t)?;
    let (min, min_class) = if t <= 4.0 / 5.0 {
        (t, PlaneClass::Vertizontal)
    } else if t <= 1.0 {
        (alpha(t), PlaneClass::CriticalMixed)
    } else {
        (4.0 - 3.0 * t, PlaneClass::Horizontal)
    };
    let (max, max_class) = if t <= 1.0 / 3.0 {
        (1.0 / t, PlaneClass::Vertical)
    } else if t <= 1.0 {
        (4.0 - 3.0 * t, PlaneClass::Horizontal)
    } else {
        (alpha(t), PlaneClass::CriticalMixed)
    };
    Ok(Extrema { min, min_class, max, max_class })
}

/// Pinching constant delta(t) = min sec / max sec.
pub fn pinching_delta(t: f64) -> Result<f64, PinchingError> {
    let e = extrema(t)?;
    Ok(e.min / e.max)
}

/// Pinching constant computed over natural planes only (vertical,
/// vertizontal, horizontal).  Differs from the true constant exactly where an
/// interior critical plane binds.
pub fn natural_delta(t: f64) -> Result<f64, PinchingError> {
    check(t)?;
    let vals = [1.0 / t, t, 4.0 - 3.0 * t];
    let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(min / max)
}

/// An interior critical plane of the mixed-plane curvature function, given by
/// horizontal coefficients (r, s) against unit vertical legs.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CriticalPlane {
    pub r: f64,
    pub s: f64,
    pub value: f64,
}

impl CriticalPlane {
    /// Reduced-coordinate realization with vertical legs along the second and
    /// third vertical directions.  The slot of the second horizontal
    /// coefficient depends on the fiber dimension.
    pub fn plane(&self, fiber_dim: u8) -> BergerPlane {
        let mut b = [0.0; 6];
        b[2] = 1.0;
        b[if fiber_dim == 3 { 4 } else { 5 }] = self.s;
        BergerPlane { a: [0.0, 1.0, 0.0, self.r], b }
    }
}

/// The interior critical planes at parameter t (up to the sign and rotation
/// symmetries of the family).  The first family, with opposite horizontal
/// signs, exists only for t < 1/2 and has value 4(1 - t); the second, with
/// equal signs, exists for all t and has value alpha(t).
pub fn critical_planes(t: f64) -> Result<Vec<CriticalPlane>, PinchingError> {
    check(t)?;
    let mut out = Vec::new();
    if t < 0.5 {
        let r = (1.0 - 2.0 * t).sqrt();
        out.push(CriticalPlane { r, s: -r, value: 4.0 * (1.0 - t) });
    }
    let r = ((4.0 * t + 1.0) / 7.0).sqrt();
    out.push(CriticalPlane { r, s: r, value: alpha(t) });
    Ok(out)
}

/// Everything the pinching report prints for one parameter value.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PinchingReport {
    pub t: f64,
    pub min: f64,
    pub max: f64,
    pub min_class: PlaneClass,
    pub max_class: PlaneClass,
    pub delta: f64,
    pub natural_delta: f64,
}

pub fn report(t: f64) -> Result<PinchingReport, PinchingError> {
    let e = extrema(t)?;
    Ok(PinchingReport {
        t,
        min: e.min,
        max: e.max,
        min_class: e.min_class,
        max_class: e.max_class,
        delta: e.min / e.max,
        natural_delta: natural_delta(t)?,
    })
}
