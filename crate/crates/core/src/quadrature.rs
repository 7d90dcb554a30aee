//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Used as the independent check on the elliptic closed forms, so it
//! deliberately shares no code with them. The error estimate is the raw
//! `|K15 - G7|` difference, which overstates the true error for smooth
//! integrands.

use crate::error::{Error, Result};
use crate::real::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes, last one at the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Stopping rule: accept once the summed error is below `max(absolute, relative * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    pub absolute: T,
    pub relative: T,
    pub max_intervals: usize,
}

impl<T: Real> Default for Tolerance<T> {
    /// `1e-12` absolute and `1e-11` relative, raised to `100 ε` for types too coarse for that.
    fn default() -> Self {
        let floor = T::lit(100.0) * T::epsilon();
        Self {
            absolute: T::lit(1e-12).max(floor),
            relative: T::lit(1e-11).max(floor),
            max_intervals: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

fn kronrod<T: Real, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> Segment<T> {
    let half = T::lit(0.5);
    let center = half * (lo + hi);
    let half_len = half * (hi - lo);
    let fc = f(center);
    let mut gauss = fc * T::lit(WG[3]);
    let mut kron = fc * T::lit(WGK[7]);
    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let pair = f(center - dx) + f(center + dx);
        kron = kron + T::lit(WGK[j]) * pair;
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * pair;
        }
    }
    Segment {
        lo,
        hi,
        value: kron * half_len,
        error: ((kron - gauss) * half_len).abs(),
    }
}

/// Integrates `f` over `[lo, hi]`, bisecting the worst segment until the tolerance is met.
pub fn integrate<T, F>(f: F, lo: T, hi: T, tol: &Tolerance<T>) -> Result<Estimate<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    if lo == hi {
        return Ok(Estimate {
            value: T::zero(),
            error: T::zero(),
            intervals: 0,
        });
    }
    let mut segments = vec![kronrod(&f, lo, hi)];
    loop {
        let value = segments.iter().fold(T::zero(), |acc, s| acc + s.value);
        let error = segments.iter().fold(T::zero(), |acc, s| acc + s.error);
        let estimate = Estimate {
            value,
            error,
            intervals: segments.len(),
        };
        if !value.is_finite() || !error.is_finite() {
            return Err(failure(estimate));
        }
        if error <= tol.absolute.max(tol.relative * value.abs()) {
            return Ok(estimate);
        }
        if segments.len() >= tol.max_intervals {
            return Err(failure(estimate));
        }
        let (worst, _) =
            segments
                .iter()
                .enumerate()
                .fold((0, T::neg_infinity()), |best, (i, s)| {
                    if s.error > best.1 {
                        (i, s.error)
                    } else {
                        best
                    }
                });
        let seg = segments.swap_remove(worst);
        let mid = T::lit(0.5) * (seg.lo + seg.hi);
        if !(mid > seg.lo.min(seg.hi) && mid < seg.lo.max(seg.hi)) {
            // cannot subdivide further at this precision
            segments.push(seg);
            let value = segments.iter().fold(T::zero(), |acc, s| acc + s.value);
            let error = segments.iter().fold(T::zero(), |acc, s| acc + s.error);
            return Err(failure(Estimate {
                value,
                error,
                intervals: segments.len(),
            }));
        }
        segments.push(kronrod(&f, seg.lo, mid));
        segments.push(kronrod(&f, mid, seg.hi));
    }
}

fn failure<T: Real>(e: Estimate<T>) -> Error {
    Error::QuadratureFailure {
        estimate: e.value.as_f64(),
        error: e.error.as_f64(),
        intervals: e.intervals,
    }
}
