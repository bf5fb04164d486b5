//! Scalar abstractions.
//!
//! Everything that only needs field arithmetic is written against [`Scalar`],
//! which is implemented for `f32`, `f64` and [`BigRational`]. The rational
//! instantiation is what the exact oracles in the test suites run on.
//! Operations that need `Γ`, real powers or adaptive truncation are bounded
//! by [`Real`] instead.

use std::fmt::{Debug, Display, LowerExp};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, Num, One, Signed, ToPrimitive, Zero};

/// Field-like scalar usable by the exact and floating-point paths alike.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + std::ops::Neg<Output = Self> + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    /// Converts an `f64`. For rationals the conversion is exact (binary fraction).
    fn from_real(x: f64) -> Self;

    fn to_real(&self) -> f64;

    /// `Some(n)` when the value is exactly the integer `n`.
    fn as_integer(&self) -> Option<i64>;

    fn is_finite_value(&self) -> bool {
        true
    }

    fn magnitude(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// `self^e`. Rationals only support integer exponents (or a unit base).
    fn try_pow(&self, e: &Self) -> Option<Self>;

    /// Sum of a sequence; floating-point types use compensated summation
    /// once the sequence is longer than [`COMPENSATED_SUM_THRESHOLD`].
    fn sum_seq(terms: &[Self]) -> Self {
        terms.iter().fold(Self::zero(), |acc, t| acc + t.clone())
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

pub const COMPENSATED_SUM_THRESHOLD: usize = 64;

/// Floating-point scalar with the special functions the float-only paths need.
pub trait Real: Scalar + Float + FloatConst + Display + LowerExp {
    fn gamma(self) -> Self;
    fn ln_gamma(self) -> Self;
}

/// Neumaier's variant of Kahan summation.
pub fn neumaier_sum<T: Float>(terms: &[T]) -> T {
    let mut sum = T::zero();
    let mut comp = T::zero();
    for &x in terms {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp = comp + ((sum - t) + x);
        } else {
            comp = comp + ((x - t) + sum);
        }
        sum = t;
    }
    sum + comp
}

fn integer_pow<T: Scalar>(base: &T, e: i64) -> T {
    let p = num_traits::pow::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        T::one() / p
    } else {
        p
    }
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_int(n: i64) -> Self {
                n as $t
            }

            fn from_real(x: f64) -> Self {
                x as $t
            }

            fn to_real(&self) -> f64 {
                *self as f64
            }

            fn as_integer(&self) -> Option<i64> {
                if self.is_finite() && self.fract() == 0.0 && self.abs() < 9.0e15 {
                    Some(*self as i64)
                } else {
                    None
                }
            }

            fn is_finite_value(&self) -> bool {
                self.is_finite()
            }

            fn magnitude(&self) -> Self {
                self.abs()
            }

            fn try_pow(&self, e: &Self) -> Option<Self> {
                match e.as_integer() {
                    Some(n) if n.abs() <= i32::MAX as i64 => Some(self.powi(n as i32)),
                    _ => Some(self.powf(*e)),
                }
            }

            fn sum_seq(terms: &[Self]) -> Self {
                if terms.len() > COMPENSATED_SUM_THRESHOLD {
                    neumaier_sum(terms)
                } else {
                    terms.iter().fold(0.0, |acc, &t| acc + t)
                }
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Real for f64 {
    fn gamma(self) -> Self {
        statrs::function::gamma::gamma(self)
    }

    fn ln_gamma(self) -> Self {
        statrs::function::gamma::ln_gamma(self)
    }
}

impl Real for f32 {
    fn gamma(self) -> Self {
        statrs::function::gamma::gamma(self as f64) as f32
    }

    fn ln_gamma(self) -> Self {
        statrs::function::gamma::ln_gamma(self as f64) as f32
    }
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_real(x: f64) -> Self {
        BigRational::from_float(x).expect("finite value")
    }

    fn to_real(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }

    fn try_pow(&self, e: &Self) -> Option<Self> {
        if let Some(n) = e.as_integer() {
            if self.is_zero() && n < 0 {
                return None;
            }
            Some(integer_pow(self, n))
        } else if self.is_one() {
            Some(Self::one())
        } else {
            None
        }
    }
}
