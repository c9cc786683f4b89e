//! Exact rational angles, cyclotomic numbers, and their high-precision
//! floating images.

mod acomplex;
mod angle;
mod cyclo;

pub use acomplex::{bf_to_decimal, bf_to_f64, AComplex, DEFAULT_PREC};
pub use angle::Angle;
pub use cyclo::{cos_exact, root_of_unity, sin_exact, Cyclo, CONDUCTOR_BOUND};

/// Reduced rational numbers with positive denominator.
pub type Rational = num_rational::Ratio<i128>;

/// `to_float(x, prec)` as a free function.
pub fn to_float(x: &Cyclo, prec: usize) -> AComplex {
    x.to_float(prec)
}

/// The rational value of `x`, if it has one.
pub fn is_rational(x: &Cyclo) -> Option<Rational> {
    x.is_rational()
}

/// `angle(num, den)`: shorthand for [`Angle::new`].
pub fn angle(num: i64, den: i64) -> crate::Result<Angle> {
    Angle::new(num, den)
}
