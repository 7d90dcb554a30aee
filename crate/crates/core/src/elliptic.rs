//! Elliptic integrals of the first kind and the fall-time integral.
//!
//! ```text
//! F(φ, k) = ∫₀^φ dt / sqrt(1 - k² sin²t),   0 ≤ φ ≤ π/2,  0 ≤ k < 1
//! K(k)    = F(π/2, k)
//! ```
//!
//! `K` is evaluated with the arithmetic-geometric mean and `F` with Carlson's
//! symmetric integral `R_F`, so `F(π/2, k) = K(k)` compares two independent
//! routes. Both are checked against [`crate::quadrature`].
//!
//! As `k -> 1` the modulus itself carries no information about `1 - k²`, so
//! [`Modulus`] stores the complementary parameter `k'² = 1 - k²` alongside
//! `k²`. Callers that can form `k'²` without cancellation should use
//! [`Modulus::from_complement`] or [`Modulus::from_parameters`]; the `k`-based
//! constructor refuses moduli closer to 1 than [`near_singular_gap`].

use crate::error::{Error, Result};
use crate::quadrature::{self, Estimate, Tolerance};
use crate::real::Real;

/// Smallest `1 - k` accepted when the modulus is given directly:
/// `1e-12`, or machine epsilon for coarser types.
pub fn near_singular_gap<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon())
}

/// Modulus `k` with its complementary parameter `k'² = 1 - k²` held separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus<T> {
    k_sq: T,
    kc_sq: T,
}

impl<T: Real> Modulus<T> {
    /// From `k` in `[0, 1 - near_singular_gap)`.
    pub fn new(k: T) -> Result<Self> {
        let gap = near_singular_gap::<T>();
        if !(k >= T::zero()) || !(T::one() - k >= gap) {
            return Err(Error::ModulusOutOfRange {
                k: k.as_f64(),
                gap: gap.as_f64(),
            });
        }
        Ok(Self {
            k_sq: k * k,
            kc_sq: (T::one() - k) * (T::one() + k),
        })
    }

    /// From the complementary modulus `k' = sqrt(1 - k²)` in `(0, 1]`.
    pub fn from_complement(k_prime: T) -> Result<Self> {
        if !(k_prime > T::zero() && k_prime <= T::one()) {
            return Err(Error::InvalidParameter {
                name: "k_prime",
                value: k_prime.as_f64(),
                reason: "complementary modulus must lie in (0, 1]",
            });
        }
        Self::from_parameters(
            (T::one() - k_prime) * (T::one() + k_prime),
            k_prime * k_prime,
        )
    }

    /// From `k²` and `k'²`, which the caller computed so that they sum to one.
    pub fn from_parameters(k_sq: T, kc_sq: T) -> Result<Self> {
        if !(k_sq >= T::zero()) || !(kc_sq > T::zero()) || !(kc_sq <= T::one()) {
            return Err(Error::InvalidParameter {
                name: "k_prime_sq",
                value: kc_sq.as_f64(),
                reason: "complementary parameter must lie in (0, 1] (k' underflowed?)",
            });
        }
        let sum = k_sq + kc_sq;
        if (sum - T::one()).abs() > T::lit(16.0) * T::epsilon() {
            return Err(Error::InvalidParameter {
                name: "k_sq + k_prime_sq",
                value: sum.as_f64(),
                reason: "parameters must sum to one",
            });
        }
        Ok(Self { k_sq, kc_sq })
    }

    pub fn k(&self) -> T {
        self.k_sq.sqrt()
    }

    pub fn k_sq(&self) -> T {
        self.k_sq
    }

    pub fn complement(&self) -> T {
        self.kc_sq.sqrt()
    }

    pub fn complement_sq(&self) -> T {
        self.kc_sq
    }
}

/// Amplitude and modulus of an `F(φ, k)` evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticArgs<T> {
    pub phi: T,
    pub k: T,
}

/// Carlson's symmetric integral
/// `R_F(x, y, z) = ½ ∫₀^∞ dt / sqrt((t + x)(t + y)(t + z))` by duplication.
///
/// Arguments must be non-negative with at most one of them zero.
pub fn carlson_rf<T: Real>(x: T, y: T, z: T) -> T {
    let three = T::lit(3.0);
    let quarter = T::lit(0.25);
    let a0 = (x + y + z) / three;
    let q = (three * T::epsilon()).powf(T::lit(-1.0 / 6.0))
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let (mut xn, mut yn, mut zn, mut an) = (x, y, z, a0);
    let mut scale = T::one();
    for _ in 0..200 {
        if q * scale < an.abs() {
            break;
        }
        let (sx, sy, sz) = (xn.sqrt(), yn.sqrt(), zn.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        xn = (xn + lambda) * quarter;
        yn = (yn + lambda) * quarter;
        zn = (zn + lambda) * quarter;
        an = (an + lambda) * quarter;
        scale = scale * quarter;
    }
    let dx = (a0 - x) * scale / an;
    let dy = (a0 - y) * scale / an;
    let dz = -(dx + dy);
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    let series = T::one() - e2 / T::lit(10.0) + e3 / T::lit(14.0) + e2 * e2 / T::lit(24.0)
        - T::lit(3.0) * e2 * e3 / T::lit(44.0);
    series / an.sqrt()
}

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm<T: Real>(a: T, b: T) -> T {
    let (mut a, mut b) = (a, b);
    for _ in 0..64 {
        if (a - b).abs() <= T::lit(2.0) * T::epsilon() * a {
            break;
        }
        let next = T::lit(0.5) * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    T::lit(0.5) * (a + b)
}

/// `K` for a prepared modulus: `π / (2 AGM(1, k'))`.
pub fn elliptic_k<T: Real>(m: &Modulus<T>) -> T {
    T::FRAC_PI_2() / agm(T::one(), m.complement())
}

/// `F(φ, k) = sin φ · R_F(cos²φ, cos²φ + k'² sin²φ, 1)`.
pub fn elliptic_f<T: Real>(phi: T, m: &Modulus<T>) -> T {
    let (s, c) = phi.sin_cos();
    f_from_sin_cos(s, c, m)
}

fn f_from_sin_cos<T: Real>(s: T, c: T, m: &Modulus<T>) -> T {
    if s == T::zero() {
        return T::zero();
    }
    let c2 = c * c;
    s * carlson_rf(c2, c2 + m.complement_sq() * s * s, T::one())
}

/// `K(k) - F(φ, k) = ∫_φ^{π/2} dt / sqrt(1 - k² sin²t)` as a single `R_F` evaluation.
pub fn complementary_f<T: Real>(phi: T, m: &Modulus<T>) -> T {
    let (s, c) = phi.sin_cos();
    tail_from_sin_cos(s, c, m)
}

// With u = π/2 - t the tail becomes ∫₀^{π/2-φ} du / sqrt(k'² + k² sin²u),
// which is cos φ · R_F(k'² sin²φ, k'² + k² cos²φ, k'²).
pub(crate) fn tail_from_sin_cos<T: Real>(s: T, c: T, m: &Modulus<T>) -> T {
    if c <= T::zero() {
        return T::zero();
    }
    let kc2 = m.complement_sq();
    c * carlson_rf(kc2 * s * s, kc2 + m.k_sq() * c * c, kc2)
}

fn checked_amplitude<T: Real>(phi: T) -> Result<T> {
    let top = T::FRAC_PI_2();
    if !(phi >= T::zero()) || phi > top * (T::one() + T::epsilon()) {
        return Err(Error::AmplitudeOutOfRange { phi: phi.as_f64() });
    }
    Ok(phi.min(top))
}

/// Incomplete integral `F(φ, k)` with `0 ≤ φ ≤ π/2`, `0 ≤ k < 1 - near_singular_gap`.
pub fn incomplete_f<T: Real>(args: &EllipticArgs<T>) -> Result<T> {
    let phi = checked_amplitude(args.phi)?;
    let m = Modulus::new(args.k)?;
    Ok(elliptic_f(phi, &m))
}

/// Complete integral `K(k)`. Precision degrades like `ε / (1 - k)` close to the
/// `1 - 1e-12` limit; use [`complete_k_from_complement`] there.
pub fn complete_k<T: Real>(k: T) -> Result<T> {
    Ok(elliptic_k(&Modulus::new(k)?))
}

/// `K` given the complementary modulus `k'`; accurate for any `k'` in `(0, 1]`.
pub fn complete_k_from_complement<T: Real>(k_prime: T) -> Result<T> {
    Ok(elliptic_k(&Modulus::from_complement(k_prime)?))
}

/// Leading behaviour `K(k) ≈ ln(4 / k')` as `k' -> 0`.
pub fn complete_k_log_asymptotic<T: Real>(k_prime: T) -> Result<T> {
    if !(k_prime > T::zero()) || !k_prime.is_finite() {
        return Err(Error::InvalidParameter {
            name: "k_prime",
            value: k_prime.as_f64(),
            reason: "must be finite and positive",
        });
    }
    Ok((T::lit(4.0) / k_prime).ln())
}

/// `I(θ₀) = ∫₀^θ₀ dθ / sqrt(a - c cos θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FallIntegralArgs<T> {
    pub theta0: T,
    pub a: T,
    pub c: T,
}

impl<T: Real> FallIntegralArgs<T> {
    fn validate(&self) -> Result<()> {
        if !(self.c >= T::zero()) || !(self.c < self.a) || !self.a.is_finite() {
            return Err(Error::InvalidParameter {
                name: "c",
                value: self.c.as_f64(),
                reason: "need 0 <= c < a (c >= a means the rod never leaves the vertical)",
            });
        }
        if !(self.theta0 >= T::zero() && self.theta0 <= T::FRAC_PI_2()) {
            return Err(Error::InvalidParameter {
                name: "theta0",
                value: self.theta0.as_f64(),
                reason: "must lie in [0, pi/2]",
            });
        }
        Ok(())
    }
}

/// Closed form `I(θ₀) = 2 / sqrt(a + c) · [K(k) - F((π - θ₀)/2, k)]`, `k² = 2c / (a + c)`.
pub fn fall_time_integral<T: Real>(args: &FallIntegralArgs<T>) -> Result<T> {
    args.validate()?;
    let (half_sin, half_cos) = (T::lit(0.5) * args.theta0).sin_cos();
    fall_time_from_gap(half_sin, half_cos, args.a - args.c, args.c)
}

/// Closed form with `a - c` supplied directly, for callers whose `a - c` is
/// far below `c` and would not survive the subtraction. Takes `sin(θ₀/2)` and
/// `cos(θ₀/2)`.
pub(crate) fn fall_time_from_gap<T: Real>(half_sin: T, half_cos: T, gap: T, c: T) -> Result<T> {
    let sum = gap + c + c;
    let m = Modulus::from_parameters((c + c) / sum, gap / sum)?;
    // φ = (π - θ₀)/2 has sin φ = cos(θ₀/2) and cos φ = sin(θ₀/2)
    let value = T::lit(2.0) / sum.sqrt() * tail_from_sin_cos(half_cos, half_sin, &m);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite {
            context: "fall_time_integral",
        })
    }
}

/// Adaptive quadrature of the fall-time integrand, with its error estimate.
pub fn fall_time_quadrature<T: Real>(args: &FallIntegralArgs<T>) -> Result<Estimate<T>> {
    fall_time_quadrature_with(args, &Tolerance::default())
}

pub fn fall_time_quadrature_with<T: Real>(
    args: &FallIntegralArgs<T>,
    tol: &Tolerance<T>,
) -> Result<Estimate<T>> {
    args.validate()?;
    let (a, c) = (args.a, args.c);
    let gap = a - c;
    let two = T::lit(2.0);
    // a - c cos θ = (a - c) + 2c sin²(θ/2)
    quadrature::integrate(
        |theta: T| {
            let s = (theta / two).sin();
            T::one() / (gap + two * c * s * s).sqrt()
        },
        T::zero(),
        args.theta0,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    // 50-digit reference values
    const K_HALF_PARAMETER: f64 = 1.8540746773013719;

    #[test]
    fn complete_k_reference_values() {
        assert_eq!(complete_k(0.0).unwrap(), FRAC_PI_2);
        assert!(rel(complete_k(0.5f64.sqrt()).unwrap(), K_HALF_PARAMETER) < 1e-15);
        for (k, expected) in [
            (0.1, 1.5747455615173560),
            (0.5, 1.6857503548125960),
            (0.9, 2.2805491384227702),
            (0.99, 3.3566005233611924),
        ] {
            assert!(rel(complete_k(k).unwrap(), expected) < 2e-15, "k = {k}");
        }
    }

    #[test]
    fn incomplete_f_reference_values() {
        let f = |phi, k| incomplete_f(&EllipticArgs { phi, k }).unwrap();
        assert!(rel(f(FRAC_PI_3, 0.8), 1.1789022995388238) < 1e-15);
        assert!(rel(f(1.2, 0.99), 1.6480538781987344) < 1e-14);
        assert!(rel(f(0.3, 0.5), 0.30111597966406603) < 1e-15);
    }

    #[test]
    fn f_trivial_cases() {
        for phi in [0.0, 0.3, 1.0, FRAC_PI_2] {
            let f = incomplete_f(&EllipticArgs { phi, k: 0.0 }).unwrap();
            assert!((f - phi).abs() <= 4.0 * f64::EPSILON * phi);
        }
        assert_eq!(
            incomplete_f(&EllipticArgs { phi: 0.0, k: 0.7 }).unwrap(),
            0.0
        );
    }

    #[test]
    fn domain_errors() {
        assert!(complete_k(1.0).is_err());
        assert!(complete_k(-0.1).is_err());
        assert!(incomplete_f(&EllipticArgs { phi: 1.0, k: 1.0 }).is_err());
        assert!(incomplete_f(&EllipticArgs { phi: 1.6, k: 0.5 }).is_err());
        assert!(incomplete_f(&EllipticArgs { phi: -0.1, k: 0.5 }).is_err());
        assert!(complete_k_log_asymptotic(0.0).is_err());
        assert!(Modulus::from_complement(0.0).is_err());
        assert!(Modulus::from_parameters(0.5, 0.6).is_err());
    }

    #[test]
    fn near_singular_policy() {
        // 1 - k lands a hair above 1e-12 after rounding; it is accepted with a finite value
        let k: f64 = 1.0 - 1e-12;
        match complete_k(k) {
            Ok(v) => {
                assert!(v.is_finite());
                let exact = complete_k_from_complement(((1.0 - k) * (1.0 + k)).sqrt()).unwrap();
                assert!(rel(v, exact) < 1e-12);
            }
            Err(e) => assert!(matches!(e, Error::ModulusOutOfRange { .. })),
        }
        assert!(complete_k(1.0 - 1e-13).is_err());
        // the complementary route has no such limit
        assert!(complete_k_from_complement(1e-100f64).unwrap().is_finite());
    }

    #[test]
    fn log_asymptotic() {
        assert_eq!(complete_k_log_asymptotic(4.0).unwrap(), 0.0);
        assert!(rel(complete_k_log_asymptotic(1e-6).unwrap(), 15.201804919084165) < 1e-15);
        let kp: f64 = 1e-5;
        let exact = complete_k_from_complement(kp).unwrap();
        assert!(rel(complete_k_log_asymptotic(kp).unwrap(), exact) < 1e-6);

        let mut last = f64::INFINITY;
        for kp in [1e-3f64, 1e-5, 1e-7] {
            let diff = (complete_k_from_complement(kp).unwrap()
                - complete_k_log_asymptotic(kp).unwrap())
            .abs();
            assert!(diff < last);
            last = diff;
        }
    }

    #[test]
    fn routes_agree_at_quarter_turn() {
        for i in 0..=9 {
            let k = i as f64 / 10.0;
            let m = Modulus::new(k).unwrap();
            assert!(
                rel(elliptic_f(FRAC_PI_2, &m), elliptic_k(&m)) < 1e-13,
                "k = {k}"
            );
        }
        let m = Modulus::new(0.99).unwrap();
        assert!(rel(elliptic_f(FRAC_PI_2, &m), elliptic_k(&m)) < 1e-13);
    }

    #[test]
    fn tail_matches_difference() {
        for (phi, k) in [(0.2, 0.3), (1.0, 0.9), (1.5, 0.5), (0.7, 0.999)] {
            let m = Modulus::new(k).unwrap();
            let diff = elliptic_k(&m) - elliptic_f(phi, &m);
            assert!(rel(complementary_f(phi, &m), diff) < 1e-13);
        }
    }

    #[test]
    fn k_against_quadrature() {
        let k = 0.5f64.sqrt();
        let q = quadrature::integrate(
            |t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(),
            0.0,
            FRAC_PI_2,
            &Tolerance::default(),
        )
        .unwrap();
        assert!(rel(complete_k(k).unwrap(), q.value) < 1e-12);
    }

    #[test]
    fn fall_integral_examples() {
        let args = FallIntegralArgs {
            theta0: FRAC_PI_6,
            a: 4.0,
            c: 2.0,
        };
        let closed = fall_time_integral(&args).unwrap();
        assert!(rel(closed, 0.36236482169966689) < 1e-15);
        let quad = fall_time_quadrature(&args).unwrap();
        assert!(rel(closed, quad.value) < 1e-12);

        let args = FallIntegralArgs {
            theta0: 0.9,
            a: 3.0,
            c: 0.0,
        };
        assert!(rel(fall_time_integral(&args).unwrap(), 0.9 / 3f64.sqrt()) < 1e-15);

        let args = FallIntegralArgs {
            theta0: FRAC_PI_2,
            a: 1.0,
            c: 0.0,
        };
        assert!(rel(fall_time_quadrature(&args).unwrap().value, FRAC_PI_2) < 1e-15);

        let args = FallIntegralArgs {
            theta0: 0.0,
            a: 2.0,
            c: 1.0,
        };
        assert_eq!(fall_time_integral(&args).unwrap(), 0.0);
        assert_eq!(fall_time_quadrature(&args).unwrap().value, 0.0);

        assert!(fall_time_integral(&FallIntegralArgs {
            theta0: 0.5,
            a: 1.0,
            c: 1.0
        })
        .is_err());
        assert!(fall_time_integral(&FallIntegralArgs {
            theta0: PI,
            a: 2.0,
            c: 1.0
        })
        .is_err());
    }

    #[test]
    fn fall_integral_near_divergence() {
        let mut last = 0.0;
        for gap in [1e-2f64, 1e-4, 1e-6, 1e-8] {
            let args = FallIntegralArgs {
                theta0: 1.0,
                a: 1.0 + gap,
                c: 1.0,
            };
            let quad = fall_time_quadrature(&args).unwrap();
            let closed = fall_time_integral(&args).unwrap();
            assert!(quad.value > last);
            assert!((quad.value - closed).abs() <= quad.error.max(1e-11 * closed));
            last = quad.value;
        }
    }

    #[test]
    fn generic_f32() {
        let v = complete_k(0.5f32.sqrt()).unwrap();
        assert!(((v as f64) - K_HALF_PARAMETER).abs() < 1e-6);
        let args = FallIntegralArgs::<f32> {
            theta0: 0.5,
            a: 4.0,
            c: 2.0,
        };
        let closed = fall_time_integral(&args).unwrap();
        let quad = fall_time_quadrature(&args).unwrap().value;
        assert!((closed - quad).abs() / quad < 1e-5);
    }
}
