//! Fall times, the limiting wave speed and the scaling function `G(d/l)`.
//!
//! Deep in the chain every rod starts with the same angular velocity `Ω`, so
//! every rod takes the same time `T` to reach its neighbour and the wave moves
//! at `v = d / T`. Written in scaling form, `v = sqrt(g l) · G(d/l)` with
//!
//! ```text
//! G(x) = x / (k [K(k) - F((π - β₁)/2, k)])
//! k²   = 2(1 - f₊²) / [(1 - cos β₁) f₊² + 2(1 - f₊²)]
//! ```
//!
//! [`scaling_g`] evaluates this dimensionless form directly; [`limiting_solution`]
//! goes through `Ω`, `T` and `v` in physical units, and the two are kept as
//! independent routes to the same number.
//!
//! The closed-spacing (`G ≈ 1/x`) and wide-spacing asymptotes are separate
//! functions and are never substituted for the exact value.

use crate::chain::{
    collision_angle, collision_factors, limiting_omega, ChainGeometry, CollisionAngle,
    CollisionFactors,
};
use crate::elliptic::{fall_time_from_gap, tail_from_sin_cos, Modulus};
use crate::error::{Error, Result};
use crate::real::Real;

/// Translationally invariant state of the wave far from the first rod.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSolution<T> {
    /// Limiting starting angular velocity `Ω`.
    pub omega_limit: T,
    /// Elliptic modulus `k` of the limiting fall.
    pub modulus: T,
    /// Time for one rod to fall from vertical to its neighbour.
    pub fall_time: T,
    /// Wave speed `d / T`.
    pub speed: T,
    /// Scaling function `G(d/l)`.
    pub scaling_g: T,
}

// sin and cos of β₁/2
fn half_angle<T: Real>(angle: &CollisionAngle<T>) -> (T, T) {
    let half = T::lit(0.5);
    (
        (half * angle.one_minus_cos()).sqrt(),
        (half * (T::one() + angle.cos())).sqrt(),
    )
}

/// Time for a rod leaving the vertical at `omega_i` to reach the tilt `β₁`.
///
/// `T = 2 / sqrt(a + c) · [K(k) - F((π - β₁)/2, k)]` with `a = ω_i² + 2g/l`, `c = 2g/l`.
pub fn fall_time<T: Real>(omega_i: T, geom: &ChainGeometry<T>) -> Result<T> {
    if !(omega_i > T::zero()) || !omega_i.is_finite() {
        return Err(Error::EquilibriumStart {
            omega: omega_i.as_f64(),
        });
    }
    let (half_sin, half_cos) = half_angle(&collision_angle(geom));
    fall_time_from_gap(half_sin, half_cos, omega_i * omega_i, geom.gravity_rate())
}

/// Modulus of the limiting fall as a function of `d/l` alone, with `k'²` formed
/// without cancellation.
pub fn scaling_modulus<T: Real>(x: T) -> Result<Modulus<T>> {
    let angle = CollisionAngle::from_ratio(x)?;
    let factors = collision_factors(&angle);
    modulus_for(&angle, &factors)
}

fn modulus_for<T: Real>(
    angle: &CollisionAngle<T>,
    factors: &CollisionFactors<T>,
) -> Result<Modulus<T>> {
    let recoil = angle.one_minus_cos() * factors.f_plus * factors.f_plus;
    let deficit = T::lit(2.0) * factors.one_minus_f_plus_sq();
    let total = recoil + deficit;
    Modulus::from_parameters(deficit / total, recoil / total)
}

/// Exact scaling function `G(x)` for `0 < x < 1`, in dimensionless form.
///
/// Errors only if `k'²` underflows, which no `f64` ratio below 1 reaches; callers
/// that hit it should fall back to [`scaling_g_wide`].
pub fn scaling_g<T: Real>(x: T) -> Result<T> {
    let angle = CollisionAngle::from_ratio(x)?;
    let m = modulus_for(&angle, &collision_factors(&angle))?;
    let (half_sin, half_cos) = half_angle(&angle);
    let tail = tail_from_sin_cos(half_cos, half_sin, &m);
    let g = x / (m.k() * tail);
    if g.is_finite() {
        Ok(g)
    } else {
        Err(Error::NonFinite {
            context: "scaling_g",
        })
    }
}

/// Close-spacing approximation `G ≈ 1/x`, meaningful for `x << 1`.
pub fn scaling_g_close<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero() && x < T::one()) {
        return Err(Error::OutsideRegime {
            ratio: x.as_f64(),
            regime: "close-spacing",
        });
    }
    Ok(x.recip())
}

/// Wide-spacing approximation `G ≈ -1 / [ln(1 + √2) + ln(1 - x)]` as `x -> 1`.
///
/// Only defined where the denominator is negative, i.e. `x > 1 - 1/(1 + √2)`.
/// This is the leading logarithmic term only; the exact `G` approaches it with
/// a relative error falling off like `1 / ln(1/(1 - x))`.
pub fn scaling_g_wide<T: Real>(x: T) -> Result<T> {
    let outside = Error::OutsideRegime {
        ratio: x.as_f64(),
        regime: "wide-spacing",
    };
    if !(x > T::zero() && x < T::one()) {
        return Err(outside);
    }
    let denominator = (T::one() + T::SQRT_2()).ln() + (-x).ln_1p();
    if !(denominator < T::zero()) {
        return Err(outside);
    }
    Ok(-denominator.recip())
}

/// Limiting solution for a physical chain.
pub fn limiting_solution<T: Real>(geom: &ChainGeometry<T>) -> Result<WaveSolution<T>> {
    geom.require_gravity()?;
    let omega_limit = limiting_omega(geom);
    let fall_time = fall_time(omega_limit, geom)?;
    let angle = collision_angle(geom);
    let modulus = modulus_for(&angle, &collision_factors(&angle))?.k();
    Ok(WaveSolution {
        omega_limit,
        modulus,
        fall_time,
        speed: geom.spacing() / fall_time,
        scaling_g: scaling_g(geom.ratio())?,
    })
}
