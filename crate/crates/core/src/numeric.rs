//! Small numeric helpers used by the parametric evaluations.

/// Signed power `sgn(base) * |base|^exp`, with `signed_pow(0, e) = 0`.
///
/// Superquadric surface vectors raise sines and cosines to fractional
/// exponents; the signed form extends the first-octant formulas to the
/// mirrored octants while staying real-valued.
#[inline]
pub fn signed_pow(base: f64, exp: f64) -> f64 {
    if base == 0.0 {
        0.0
    } else if base < 0.0 {
        -(-base).powf(exp)
    } else {
        base.powf(exp)
    }
}

/// `|base|^exp`.
#[inline]
pub fn abs_pow(base: f64, exp: f64) -> f64 {
    base.abs().powf(exp)
}

/// Threshold below which a trig value is treated as an exact zero.
///
/// `cos(FRAC_PI_2)` evaluates to ~6.1e-17 in f64; raising that to a small
/// fractional exponent would leave visible residue on the seams, so values
/// this close to zero are snapped before exponentiation. Adjacent samples
/// are never closer than the 1e-9 step floor, so only the exact endpoint
/// parameters are affected.
pub const TRIG_SNAP: f64 = 1e-15;

/// Cosine with exact zero at odd multiples of pi/2.
#[inline]
pub fn snapped_cos(t: f64) -> f64 {
    let c = t.cos();
    if c.abs() < TRIG_SNAP {
        0.0
    } else {
        c
    }
}

/// Sine with exact zero at multiples of pi.
#[inline]
pub fn snapped_sin(t: f64) -> f64 {
    let s = t.sin();
    if s.abs() < TRIG_SNAP {
        0.0
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn signed_pow_mirrors_odd() {
        assert_eq!(signed_pow(-8.0, 1.0 / 3.0), -2.0);
        assert_eq!(signed_pow(8.0, 1.0 / 3.0), 2.0);
        assert_eq!(signed_pow(0.0, 0.3), 0.0);
        assert_eq!(signed_pow(-0.0, 0.3), 0.0);
    }

    #[test]
    fn signed_pow_zero_exponent_keeps_sign() {
        assert_eq!(signed_pow(0.5, 0.0), 1.0);
        assert_eq!(signed_pow(-0.5, 0.0), -1.0);
        // 0^0 stays 0 so seam components vanish for every exponent
        assert_eq!(signed_pow(0.0, 0.0), 0.0);
    }

    #[test]
    fn snapped_trig_is_exact_on_seams() {
        assert_eq!(snapped_cos(FRAC_PI_2), 0.0);
        assert_eq!(snapped_cos(-FRAC_PI_2), 0.0);
        assert_eq!(snapped_sin(PI), 0.0);
        assert_eq!(snapped_sin(0.0), 0.0);
        assert_eq!(snapped_cos(0.0), 1.0);
        assert_eq!(snapped_sin(FRAC_PI_2), 1.0);
    }
}
