//! Rod-by-rod simulation of the chain: push, fall, collide, repeat.
//!
//! Each rod's fall time comes from the elliptic closed form rather than from
//! time stepping. The simulator checks the recurrence and its limit, not the
//! elliptic reduction; that reduction has its own quadrature check.
//!
//! After a collision the striking rod's recoil `ω_b` is recorded and the rod
//! leaves the event loop.

use crate::chain::{
    collide, collision_angle, fall_exit_velocity, omega_i_at, relative_gap, ChainGeometry,
    CollisionOutcome,
};
use crate::error::{Error, Result};
use crate::real::Real;
use crate::wave::{fall_time, limiting_solution};

/// State of rod `index` over its fall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RodTrace<T> {
    pub index: usize,
    pub omega_i: T,
    pub omega_f: T,
    pub omega_b: T,
    pub fall_time: T,
    /// Time from the initial push until this rod strikes the next one.
    pub cumulative_time: T,
    /// `d / T_k`.
    pub instantaneous_speed: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationOptions<T> {
    pub max_rods: usize,
    /// Relative tolerance on `|v_k - v| / v` that declares convergence.
    pub tol: T,
    /// Stop at the first converged rod; otherwise always run `max_rods` rods.
    pub stop_at_convergence: bool,
}

impl<T: Real> Default for SimulationOptions<T> {
    fn default() -> Self {
        Self {
            max_rods: 1000,
            tol: T::lit(1e-9),
            stop_at_convergence: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult<T> {
    pub geometry: ChainGeometry<T>,
    pub omega_1: T,
    pub rods: Vec<RodTrace<T>>,
    /// First rod whose speed is within tolerance of the limiting speed.
    pub converged_at: Option<usize>,
    /// Speed of the last simulated rod.
    pub limiting_speed_estimate: T,
    /// Closed-form limiting speed the run was compared against.
    pub closed_form_speed: T,
}

/// Runs the chain from a push `omega_1` until convergence or `max_rods`.
pub fn simulate_chain<T: Real>(
    geom: &ChainGeometry<T>,
    omega_1: T,
    opts: &SimulationOptions<T>,
) -> Result<SimulationResult<T>> {
    if !(omega_1 > T::zero()) || !omega_1.is_finite() {
        return Err(Error::EquilibriumStart {
            omega: omega_1.as_f64(),
        });
    }
    if opts.max_rods == 0 {
        return Err(Error::InvalidParameter {
            name: "max_rods",
            value: 0.0,
            reason: "must be at least 1",
        });
    }
    if !(opts.tol > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: opts.tol.as_f64(),
            reason: "must be positive",
        });
    }
    let target = limiting_solution(geom)?.speed;
    let angle = collision_angle(geom);

    let mut rods = Vec::new();
    let mut converged_at = None;
    let mut omega_i = omega_1;
    let mut clock = T::zero();
    for index in 1..=opts.max_rods {
        let omega_f = fall_exit_velocity(omega_i, geom)?;
        let CollisionOutcome {
            omega_b,
            omega_i_next,
        } = collide(omega_f, &angle)?;
        let t_k = fall_time(omega_i, geom)?;
        clock = clock + t_k;
        let speed = geom.spacing() / t_k;
        rods.push(RodTrace {
            index,
            omega_i,
            omega_f,
            omega_b,
            fall_time: t_k,
            cumulative_time: clock,
            instantaneous_speed: speed,
        });
        if converged_at.is_none() && (speed - target).abs() <= opts.tol * target {
            converged_at = Some(index);
            if opts.stop_at_convergence {
                break;
            }
        }
        omega_i = omega_i_next;
    }

    let last = rods.last().expect("max_rods >= 1").instantaneous_speed;
    Ok(SimulationResult {
        geometry: *geom,
        omega_1,
        rods,
        converged_at,
        limiting_speed_estimate: last,
        closed_form_speed: target,
    })
}

/// Largest relative residuals found by [`verify_trace`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceReport<T> {
    pub rods_checked: usize,
    /// Simulated `ω^i_k` against the mixed-progression closed form.
    pub omega_i: T,
    /// `ω_f² = ω_b² + ω^i_{k+1}²` at each collision.
    pub kinetic_energy: T,
    /// `ω_f cos²β₁ = ω_b cos²β₁ + ω^i_{k+1}` at each collision.
    pub angular_momentum: T,
    /// Mechanical energy of the falling rod between leaving the vertical and impact.
    pub fall_energy: T,
}

impl<T: Real> TraceReport<T> {
    pub fn max_residual(&self) -> T {
        self.omega_i
            .max(self.kinetic_energy)
            .max(self.angular_momentum)
            .max(self.fall_energy)
    }

    pub fn within(&self, tol: T) -> bool {
        self.max_residual() <= tol
    }
}

/// Re-derives every rod of `result` from the closed forms and conservation laws.
///
/// The last rod's successor is not in the trace, so its struck velocity is
/// inferred from angular momentum and only energy is checked there.
pub fn verify_trace<T: Real>(
    result: &SimulationResult<T>,
    geom: &ChainGeometry<T>,
    omega_1: T,
) -> Result<TraceReport<T>> {
    if result.rods.is_empty() {
        return Err(Error::EmptyTrace);
    }
    if result.geometry != *geom {
        return Err(Error::MismatchedTrace { field: "geometry" });
    }
    if result.omega_1 != omega_1 {
        return Err(Error::MismatchedTrace { field: "omega_1" });
    }

    let angle = collision_angle(geom);
    let inertia = geom.moment_of_inertia();
    let weight_moment = geom.mass() * geom.gravity() * geom.rod_length();
    let half = T::lit(0.5);

    let mut report = TraceReport {
        rods_checked: result.rods.len(),
        omega_i: T::zero(),
        kinetic_energy: T::zero(),
        angular_momentum: T::zero(),
        fall_energy: T::zero(),
    };
    for (pos, rod) in result.rods.iter().enumerate() {
        let expected = omega_i_at(rod.index, omega_1, geom)?;
        report.omega_i = report.omega_i.max(relative_gap(expected, rod.omega_i));

        let start = half * inertia * rod.omega_i * rod.omega_i + weight_moment;
        let impact = half * inertia * rod.omega_f * rod.omega_f + weight_moment * angle.cos();
        report.fall_energy = report.fall_energy.max(relative_gap(start, impact));

        let omega_i_next = match result.rods.get(pos + 1) {
            Some(next) => next.omega_i,
            None => angle.cos_sq() * (rod.omega_f - rod.omega_b),
        };
        let outcome = CollisionOutcome {
            omega_b: rod.omega_b,
            omega_i_next,
        };
        report.kinetic_energy = report
            .kinetic_energy
            .max(outcome.kinetic_energy_residual(rod.omega_f));
        report.angular_momentum = report
            .angular_momentum
            .max(outcome.angular_momentum_residual(rod.omega_f, &angle));
    }
    Ok(report)
}
