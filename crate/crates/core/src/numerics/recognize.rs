//! Recovering small-height rationals from high-precision floats.

use rug::{Complex, Float, Integer, Rational};

use super::scalar::Gauss;

/// Simplest continued-fraction convergent `h/k` with `|x − h/k| <= tol` and
/// `k < 2^max_bits`, if any.
pub fn recognize_rational(x: &Float, tol: &Float, max_bits: u32) -> Option<Rational> {
    let prec = x.prec();
    if x.is_zero() {
        return Some(Rational::new());
    }
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (Integer::from(0), Integer::from(1));
    let (mut k0, mut k1) = (Integer::from(1), Integer::from(0));
    let mut rest = x.clone();
    for _ in 0..4 * max_bits {
        let a = rest.to_integer_round(rug::float::Round::Down)?.0;
        let h2 = Integer::from(&a * &h1) + &h0;
        let k2 = Integer::from(&a * &k1) + &k0;
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        if k1.significant_bits() > max_bits {
            return None;
        }
        let approx = Rational::from((h1.clone(), k1.clone()));
        let err = Float::with_val(prec, x - &approx).abs();
        if err <= *tol {
            return Some(approx);
        }
        let frac = Float::with_val(prec, &rest - &a);
        if frac.is_zero() {
            return None;
        }
        rest = frac.recip();
    }
    None
}

/// [`recognize_rational`] applied to both parts.
pub fn recognize_gauss(z: &Complex, tol: f64, max_bits: u32) -> Option<Gauss> {
    let prec = z.prec().0;
    let scale = Float::with_val(prec, z.abs_ref()).max(&Float::with_val(prec, 1));
    let t = scale * tol;
    Some(Gauss::new(recognize_rational(z.real(), &t, max_bits)?, recognize_rational(z.imag(), &t, max_bits)?))
}
