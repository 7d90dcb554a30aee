//! Chain configuration and the collision / recurrence algebra.
//!
//! A chain is a row of identical massless rods of length `l`, each topped by a
//! point mass `m` and pivoting without slipping about its foot. Neighbouring
//! pivots are `d` apart. Collisions are head-on, instantaneous and elastic, so
//! a collision conserves kinetic energy and angular momentum about the struck
//! rod's pivot, and a falling rod conserves mechanical energy.
//!
//! The mass cancels from every relation below. It is stored only so the
//! moment of inertia and energies can be reported.

use crate::error::{Error, Result};
use crate::real::Real;

/// Physical configuration of a uniform chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainGeometry<T> {
    rod_length: T,
    spacing: T,
    gravity: T,
    mass: T,
}

impl<T: Real> ChainGeometry<T> {
    /// Requires `0 < spacing < rod_length`, `gravity >= 0`, `mass > 0`.
    ///
    /// Zero gravity is admitted as the free-rotation limit; operations that need
    /// a self-sustaining wave reject it with [`Error::NoSustainedWave`].
    pub fn new(rod_length: T, spacing: T, gravity: T, mass: T) -> Result<Self> {
        positive("rod_length", rod_length)?;
        positive("mass", mass)?;
        if !(gravity >= T::zero()) || !gravity.is_finite() {
            return Err(Error::InvalidParameter {
                name: "gravity",
                value: gravity.as_f64(),
                reason: "must be finite and non-negative",
            });
        }
        if !(spacing > T::zero() && spacing < rod_length) {
            return Err(Error::DegenerateGeometry {
                spacing: spacing.as_f64(),
                rod_length: rod_length.as_f64(),
            });
        }
        Ok(Self {
            rod_length,
            spacing,
            gravity,
            mass,
        })
    }

    pub fn rod_length(&self) -> T {
        self.rod_length
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn gravity(&self) -> T {
        self.gravity
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    /// `d / l`, the only geometric quantity the dimensionless problem depends on.
    pub fn ratio(&self) -> T {
        self.spacing / self.rod_length
    }

    /// `I = m l²` about the pivot.
    pub fn moment_of_inertia(&self) -> T {
        self.mass * self.rod_length * self.rod_length
    }

    /// `2g / l`, the squared angular rate gained by falling through a unit drop in `cos θ`.
    pub fn gravity_rate(&self) -> T {
        (self.gravity + self.gravity) / self.rod_length
    }

    /// Same chain with a different point mass.
    pub fn with_mass(&self, mass: T) -> Result<Self> {
        Self::new(self.rod_length, self.spacing, self.gravity, mass)
    }

    /// Chain with rod length and spacing both multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Result<Self> {
        positive("scale factor", factor)?;
        Self::new(
            self.rod_length * factor,
            self.spacing * factor,
            self.gravity,
            self.mass,
        )
    }

    pub(crate) fn require_gravity(&self) -> Result<()> {
        if self.gravity > T::zero() {
            Ok(())
        } else {
            Err(Error::NoSustainedWave)
        }
    }
}

fn positive<T: Real>(name: &'static str, value: T) -> Result<()> {
    if value > T::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: value.as_f64(),
            reason: "must be finite and positive",
        })
    }
}

/// Tilt from the vertical at which a falling rod meets its neighbour,
/// `β₁ = arcsin(d / l)`, kept together with its sine and cosine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionAngle<T> {
    beta: T,
    sin: T,
    cos: T,
}

impl<T: Real> CollisionAngle<T> {
    /// From the spacing ratio `x = d / l`, which must lie in `(0, 1)`.
    ///
    /// The cosine is taken as `sqrt((1 - x)(1 + x))`, which stays accurate as `x -> 1`.
    pub fn from_ratio(x: T) -> Result<Self> {
        if !(x > T::zero() && x < T::one()) {
            return Err(Error::DegenerateGeometry {
                spacing: x.as_f64(),
                rod_length: 1.0,
            });
        }
        Ok(Self {
            beta: x.asin(),
            sin: x,
            cos: ((T::one() - x) * (T::one() + x)).sqrt(),
        })
    }

    /// From the angle itself, which must lie in `(0, π/2)`.
    pub fn from_radians(beta: T) -> Result<Self> {
        if !(beta > T::zero() && beta < T::FRAC_PI_2()) {
            return Err(Error::InvalidParameter {
                name: "beta1",
                value: beta.as_f64(),
                reason: "must lie strictly between 0 and pi/2",
            });
        }
        let (sin, cos) = beta.sin_cos();
        Ok(Self { beta, sin, cos })
    }

    pub fn radians(&self) -> T {
        self.beta
    }

    pub fn sin(&self) -> T {
        self.sin
    }

    pub fn cos(&self) -> T {
        self.cos
    }

    pub fn cos_sq(&self) -> T {
        self.cos * self.cos
    }

    /// `1 - cos β₁`, computed as `sin²β₁ / (1 + cos β₁)`.
    pub fn one_minus_cos(&self) -> T {
        self.sin * self.sin / (T::one() + self.cos)
    }
}

/// `β₁ = arcsin(d / l)` for a validated geometry.
pub fn collision_angle<T: Real>(geom: &ChainGeometry<T>) -> CollisionAngle<T> {
    CollisionAngle::from_ratio(geom.ratio()).expect("ChainGeometry guarantees 0 < d/l < 1")
}

/// Transfer factors `f± = 2 / (cos²β₁ ± 1/cos²β₁)`.
///
/// `f_plus` scales the angular velocity handed to the struck rod. The striker
/// keeps `omega_i_next / f_minus`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionFactors<T> {
    pub f_plus: T,
    pub f_minus: T,
    one_minus_f_plus_sq: T,
}

impl<T: Real> CollisionFactors<T> {
    /// `1 - f₊²` without cancellation; it is of order `β₁⁴` for close spacing.
    pub fn one_minus_f_plus_sq(&self) -> T {
        self.one_minus_f_plus_sq
    }
}

pub fn collision_factors<T: Real>(angle: &CollisionAngle<T>) -> CollisionFactors<T> {
    let c = angle.cos_sq();
    let s2 = angle.sin() * angle.sin();
    let two = T::lit(2.0);
    let one_plus_c_sq = T::one() + c * c;
    // 1 - f+ = (1 - c)² / (1 + c²) and 1 + f+ = (1 + c)² / (1 + c²), with 1 - c = sin²β₁
    let ratio = s2 * (T::one() + c) / one_plus_c_sq;
    CollisionFactors {
        f_plus: two * c / one_plus_c_sq,
        f_minus: -two * c / (s2 * (T::one() + c)),
        one_minus_f_plus_sq: ratio * ratio,
    }
}

/// Angular velocities right after a striker at `omega_f` hits a resting rod.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionOutcome<T> {
    /// Striker after impact; negative means it recoils.
    pub omega_b: T,
    /// Struck rod as it starts to move.
    pub omega_i_next: T,
}

impl<T: Real> CollisionOutcome<T> {
    /// Relative residual of `ω_f² = ω_b² + ω_i_next²`.
    pub fn kinetic_energy_residual(&self, omega_f: T) -> T {
        let before = omega_f * omega_f;
        let after = self.omega_b * self.omega_b + self.omega_i_next * self.omega_i_next;
        relative_gap(before, after)
    }

    /// Relative residual of `ω_f cos²β₁ = ω_b cos²β₁ + ω_i_next` about the struck pivot.
    pub fn angular_momentum_residual(&self, omega_f: T, angle: &CollisionAngle<T>) -> T {
        let c = angle.cos_sq();
        let before = omega_f * c;
        let after = self.omega_b * c + self.omega_i_next;
        let scale = before
            .abs()
            .max((self.omega_b * c).abs())
            .max(self.omega_i_next.abs());
        if scale == T::zero() {
            T::zero()
        } else {
            (before - after).abs() / scale
        }
    }
}

pub(crate) fn relative_gap<T: Real>(expected: T, actual: T) -> T {
    let scale = expected.abs().max(actual.abs());
    if scale == T::zero() {
        T::zero()
    } else {
        (expected - actual).abs() / scale
    }
}

/// Elastic head-on collision of a rod at `omega_f` with its resting neighbour.
pub fn collide<T: Real>(omega_f: T, angle: &CollisionAngle<T>) -> Result<CollisionOutcome<T>> {
    non_negative("omega_f", omega_f)?;
    let factors = collision_factors(angle);
    let omega_i_next = factors.f_plus * omega_f;
    Ok(CollisionOutcome {
        omega_b: omega_i_next / factors.f_minus,
        omega_i_next,
    })
}

fn non_negative<T: Real>(name: &'static str, value: T) -> Result<()> {
    if value >= T::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: value.as_f64(),
            reason: "must be finite and non-negative",
        })
    }
}

/// `(2g/l)(1 - cos β₁)`: squared angular velocity gained falling from vertical to `β₁`.
pub fn fall_energy_gain<T: Real>(geom: &ChainGeometry<T>) -> T {
    geom.gravity_rate() * collision_angle(geom).one_minus_cos()
}

/// Angular velocity just before impact for a rod that left the vertical at `omega_i`.
pub fn fall_exit_velocity<T: Real>(omega_i: T, geom: &ChainGeometry<T>) -> Result<T> {
    non_negative("omega_i", omega_i)?;
    Ok((omega_i * omega_i + fall_energy_gain(geom)).sqrt())
}

/// One step of `(ω^i_{k+1})² = f₊² (ω^i_k)² + b` with `b = (2g/l) f₊² (1 - cos β₁)`.
pub fn recurrence_step<T: Real>(omega_i_sq: T, geom: &ChainGeometry<T>) -> Result<T> {
    non_negative("omega_i_sq", omega_i_sq)?;
    let (r, b, _) = recurrence_coefficients(geom);
    Ok(r * omega_i_sq + b)
}

/// `(r, b, 1 - r)` of the squared-velocity recurrence.
pub(crate) fn recurrence_coefficients<T: Real>(geom: &ChainGeometry<T>) -> (T, T, T) {
    let factors = collision_factors(&collision_angle(geom));
    let r = factors.f_plus * factors.f_plus;
    (r, r * fall_energy_gain(geom), factors.one_minus_f_plus_sq())
}

/// Parameters of `a_k = r a_{k-1} + b`, evaluated at index `n` (1-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedProgression<T> {
    pub a1: T,
    pub r: T,
    pub b: T,
    pub n: usize,
}

/// Closed form `a_n = r^(n-1) a₁ + b (1 - r^(n-1)) / (1 - r)`.
pub fn mixed_progression<T: Real>(p: &MixedProgression<T>) -> Result<T> {
    if p.n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
            reason: "index starts at 1",
        });
    }
    if p.r == T::one() {
        return Err(Error::UnitRatio);
    }
    Ok(progression_term(p.a1, p.r, T::one() - p.r, p.b, p.n))
}

fn progression_term<T: Real>(a1: T, r: T, one_minus_r: T, b: T, n: usize) -> T {
    if n == 1 {
        return a1;
    }
    let rn = r.powf(T::from(n - 1).expect("index fits the scalar type"));
    rn * a1 + b * (T::one() - rn) / one_minus_r
}

/// Starting angular velocity of rod `k` (1-based) when rod 1 is pushed with `omega_1`.
pub fn omega_i_at<T: Real>(k: usize, omega_1: T, geom: &ChainGeometry<T>) -> Result<T> {
    if !(omega_1 > T::zero()) || !omega_1.is_finite() {
        return Err(Error::EquilibriumStart {
            omega: omega_1.as_f64(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            value: 0.0,
            reason: "rods are numbered from 1",
        });
    }
    let (r, b, one_minus_r) = recurrence_coefficients(geom);
    Ok(progression_term(omega_1 * omega_1, r, one_minus_r, b, k).sqrt())
}

/// Limiting starting velocity deep in the chain, the fixed point of the recurrence:
/// `Ω² = (2g/l)(1 - cos β₁) f₊² / (1 - f₊²)`.
pub fn limiting_omega<T: Real>(geom: &ChainGeometry<T>) -> T {
    let (_, b, one_minus_r) = recurrence_coefficients(geom);
    (b / one_minus_r).sqrt()
}
