//! Field scalars in two arithmetic modes.
//!
//! [`Gauss`] is an exact complex rational (real and imaginary parts are
//! GMP rationals). [`rug::Complex`] is the floating mode; its precision is
//! fixed by the [`Context`] a computation runs in.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use super::linalg::{self, Matrix, NullVector};

/// Default working precision of the floating mode, in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// Arithmetic context shared by every value in one computation.
///
/// Exact values ignore the precision for their own arithmetic but use it
/// whenever they are handed to a floating routine (root finding, evaluation
/// of transcendental constants).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Context {
    pub precision: u32,
}

impl Default for Context {
    fn default() -> Self {
        Context { precision: DEFAULT_PRECISION }
    }
}

impl Context {
    pub fn new(precision: u32) -> Self {
        Context { precision }
    }

    /// Relative tolerance used to decide that a floating quantity vanishes.
    pub fn zero_tol(&self) -> f64 {
        2f64.powf(-(self.precision as f64) * 0.625)
    }

    /// Distance below which two computed roots are treated as one cluster.
    /// 1e-8 at 256 bits, scaled linearly in the exponent with precision.
    pub fn cluster_radius(&self) -> f64 {
        10f64.powf(-8.0 * self.precision as f64 / 256.0)
    }

    /// Residual tolerance for root refinement.
    pub fn root_tol(&self) -> f64 {
        2f64.powf(-(self.precision as f64) * 0.875)
    }
}

/// The arithmetic modes, as a runtime tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown arithmetic mode `{other}`")),
        }
    }
}

/// Operations the polynomial and linear-algebra kernel needs from a field.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn zero(ctx: &Context) -> Self;
    fn one(ctx: &Context) -> Self;
    fn from_gauss(ctx: &Context, value: &Gauss) -> Self;
    /// Principal logarithm of an exact constant, when representable.
    fn ln_of(ctx: &Context, value: &Gauss) -> Option<Self>;
    /// Brings a floating value into this mode (exactly representable in
    /// exact mode, since every binary float is a rational).
    fn from_complex_lossy(value: &Complex, ctx: &Context) -> Self;

    /// True only for an exactly zero value (in both modes).
    fn is_exact_zero(&self) -> bool;
    /// True when the value is zero relative to `scale`: exact zero in exact
    /// mode, below the context tolerance times `scale` in floating mode.
    fn is_negligible(&self, scale: f64, ctx: &Context) -> bool;
    fn modulus(&self) -> f64;
    fn to_complex(&self, precision: u32) -> Complex;
    fn conj(&self) -> Self;

    fn nullspace(matrix: &Matrix<Self>, ctx: &Context) -> NullVector<Self>;

    /// Canonical text form: `p/q` rationals in exact mode, decimals in
    /// floating mode. Complex values render as `re+imi`.
    fn render(&self) -> String;
}

/// Exact complex rational number.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gauss {
    pub re: Rational,
    pub im: Rational,
}

impl Gauss {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: impl Into<Rational>) -> Self {
        Gauss { re: re.into(), im: Rational::new() }
    }

    pub fn from_i64(v: i64) -> Self {
        Gauss::real(Rational::from(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Gauss::real(Rational::from((num, den)))
    }

    pub fn zero() -> Self {
        Gauss::default()
    }

    pub fn one() -> Self {
        Gauss::from_i64(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0().is_eq()
    }

    pub fn norm_sqr(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    pub fn recip(&self) -> Gauss {
        let n = self.norm_sqr();
        assert!(n.cmp0().is_ne(), "division by exact zero");
        Gauss { re: Rational::from(&self.re / &n), im: -Rational::from(&self.im / &n) }
    }

    pub fn pow(&self, k: u32) -> Gauss {
        let mut acc = Gauss::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn modulus(&self) -> f64 {
        let (re, im) = self.to_c64();
        re.hypot(im)
    }

    pub fn to_complex(&self, precision: u32) -> Complex {
        Complex::with_val(precision, (&self.re, &self.im))
    }

    /// Parses `"p/q"`, `"-3"`, `"0.25"`, `"1e-3"`.
    pub fn parse_real(text: &str) -> Result<Rational, String> {
        parse_rational(text)
    }
}

/// Parses an exact rational from `p/q`, integer or decimal (optionally with
/// exponent) notation.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let t = text.trim().replace('\u{2212}', "-");
    if t.is_empty() {
        return Err("empty rational literal".into());
    }
    if let Ok(r) = t.parse::<Rational>() {
        return Ok(r);
    }
    // decimal with optional exponent
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = t[pos + 1..].parse().map_err(|_| format!("bad exponent in `{text}`"))?;
            (&t[..pos], exp)
        }
        None => (t.as_str(), 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    if (int_part.is_empty() && frac_part.is_empty())
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(format!("`{text}` is not a rational literal"));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: Integer = all_digits.parse().map_err(|_| format!("bad literal `{text}`"))?;
    let scale = exponent - frac_part.len() as i32;
    let ten = Integer::from(10);
    let mut value = Rational::from(numer);
    if scale >= 0 {
        value *= Integer::from((&ten).pow(scale as u32));
    } else {
        value /= Integer::from((&ten).pow((-scale) as u32));
    }
    if neg {
        value = -value;
    }
    Ok(value)
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else if self.re.cmp0().is_eq() {
            write!(f, "{}i", self.im)
        } else if self.im.cmp0().is_lt() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for Gauss {
    type Output = Gauss;
    fn add(self, rhs: Gauss) -> Gauss {
        Gauss { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for Gauss {
    type Output = Gauss;
    fn sub(self, rhs: Gauss) -> Gauss {
        Gauss { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, rhs: Gauss) -> Gauss {
        if self.is_real() && rhs.is_real() {
            return Gauss::real(self.re * rhs.re);
        }
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        Gauss { re, im }
    }
}

impl Div for Gauss {
    type Output = Gauss;
    fn div(self, rhs: Gauss) -> Gauss {
        if rhs.is_real() {
            assert!(rhs.re.cmp0().is_ne(), "division by exact zero");
            return Gauss { re: self.re / &rhs.re, im: self.im / &rhs.re };
        }
        self * rhs.recip()
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -self.re, im: -self.im }
    }
}

impl Scalar for Gauss {
    const MODE: Mode = Mode::Exact;

    fn zero(_: &Context) -> Self {
        Gauss::zero()
    }

    fn one(_: &Context) -> Self {
        Gauss::one()
    }

    fn from_gauss(_: &Context, value: &Gauss) -> Self {
        value.clone()
    }

    fn ln_of(_: &Context, value: &Gauss) -> Option<Self> {
        // log 1 = 0 is the only rational logarithm of a rational argument
        (*value == Gauss::one()).then(Gauss::zero)
    }

    fn from_complex_lossy(value: &Complex, _ctx: &Context) -> Self {
        Gauss { re: value.real().to_rational().unwrap_or_default(), im: value.imag().to_rational().unwrap_or_default() }
    }

    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }

    fn is_negligible(&self, _scale: f64, _ctx: &Context) -> bool {
        self.is_zero()
    }

    fn modulus(&self) -> f64 {
        Gauss::modulus(self)
    }

    fn to_complex(&self, precision: u32) -> Complex {
        Gauss::to_complex(self, precision)
    }

    fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: -self.im.clone() }
    }

    fn nullspace(matrix: &Matrix<Self>, ctx: &Context) -> NullVector<Self> {
        linalg::nullspace_rref(matrix, ctx)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Complex {
    const MODE: Mode = Mode::Float;

    fn zero(ctx: &Context) -> Self {
        Complex::new(ctx.precision)
    }

    fn one(ctx: &Context) -> Self {
        Complex::with_val(ctx.precision, 1)
    }

    fn from_gauss(ctx: &Context, value: &Gauss) -> Self {
        value.to_complex(ctx.precision)
    }

    fn ln_of(ctx: &Context, value: &Gauss) -> Option<Self> {
        if value.is_zero() {
            return None;
        }
        Some(value.to_complex(ctx.precision).ln())
    }

    fn from_complex_lossy(value: &Complex, ctx: &Context) -> Self {
        Complex::with_val(ctx.precision, value)
    }

    fn is_exact_zero(&self) -> bool {
        self.real().is_zero() && self.imag().is_zero()
    }

    fn is_negligible(&self, scale: f64, ctx: &Context) -> bool {
        Scalar::modulus(self) <= ctx.zero_tol() * scale.max(f64::MIN_POSITIVE)
    }

    fn modulus(&self) -> f64 {
        Float::with_val(53, self.abs_ref()).to_f64()
    }

    fn to_complex(&self, precision: u32) -> Complex {
        Complex::with_val(precision, self)
    }

    fn conj(&self) -> Self {
        Complex::with_val(self.prec().0, self.conj_ref())
    }

    fn nullspace(matrix: &Matrix<Self>, ctx: &Context) -> NullVector<Self> {
        linalg::nullspace_householder(matrix, ctx)
    }

    fn render(&self) -> String {
        render_complex(self, 40)
    }
}

/// Decimal rendering of a floating complex with `digits` significant digits.
pub fn render_complex(z: &Complex, digits: usize) -> String {
    let re = render_float(z.real(), digits);
    if z.imag().is_zero() {
        return re;
    }
    let im = render_float(z.imag(), digits);
    if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

fn render_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, Some(digits))
}

/// Modulus of a floating complex as `f64`.
pub fn cabs(z: &Complex) -> f64 {
    Float::with_val(53, z.abs_ref()).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_field_ops() {
        let a = Gauss::new(Rational::from((1, 2)), Rational::from(1));
        let b = Gauss::new(Rational::from(3), Rational::from((-2, 3)));
        let q = a.clone() / b.clone();
        assert_eq!(q * b.clone(), a);
        assert_eq!((a.clone() - a.clone()), Gauss::zero());
        assert_eq!(a.clone() + (-a), Gauss::zero());
    }

    #[test]
    fn parse_literals() {
        assert_eq!(parse_rational("28/31").unwrap(), Rational::from((28, 31)));
        assert_eq!(parse_rational("-0.25").unwrap(), Rational::from((-1, 4)));
        assert_eq!(parse_rational("1e-3").unwrap(), Rational::from((1, 1000)));
        assert_eq!(parse_rational("2.5E2").unwrap(), Rational::from(250));
        assert_eq!(parse_rational("\u{2212}3").unwrap(), Rational::from(-3));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn gauss_display() {
        assert_eq!(Gauss::ratio(-28, 31).to_string(), "-28/31");
        let z = Gauss::new(Rational::from(1), Rational::from((-1, 2)));
        assert_eq!(z.to_string(), "1-1/2i");
        let w = Gauss::new(Rational::new(), Rational::from(2));
        assert_eq!(w.to_string(), "2i");
    }

    #[test]
    fn float_log_matches_exact_zero_log() {
        let ctx = Context::default();
        assert_eq!(<Gauss as Scalar>::ln_of(&ctx, &Gauss::one()), Some(Gauss::zero()));
        assert!(<Gauss as Scalar>::ln_of(&ctx, &Gauss::from_i64(3)).is_none());
        let l = <Complex as Scalar>::ln_of(&ctx, &Gauss::from_i64(3)).unwrap();
        assert!((cabs(&l) - 3f64.ln()).abs() < 1e-15);
    }
}
