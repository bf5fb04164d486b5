//! Scalar building blocks: rising factorials and rising functions, the
//! fractional-sum kernel, generalized binomials, the discrete delta and the
//! Pochhammer symbol.
//!
//! Every gamma ratio is evaluated as a finite product, never as a quotient of
//! two gamma values, so nothing overflows for long grids. All functions except
//! [`rising_function`] are generic over [`Scalar`] and therefore also run in
//! exact rational arithmetic.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar, COMPENSATED_SUM_THRESHOLD};

/// Product of `factors`, split pairwise once the list is long enough that
/// sequential rounding error would accumulate linearly.
pub(crate) fn pairwise_product<T: Scalar>(factors: &[T]) -> T {
    if factors.len() <= COMPENSATED_SUM_THRESHOLD {
        factors.iter().fold(T::one(), |acc, f| acc * f.clone())
    } else {
        let (lo, hi) = factors.split_at(factors.len() / 2);
        pairwise_product(lo) * pairwise_product(hi)
    }
}

/// `z (z+1) ... (z+l-1)`, with the empty product equal to one.
pub fn rising_factorial<T: Scalar>(z: T, l: u64) -> T {
    let factors: Vec<T> = (0..l).map(|i| z.clone() + T::from_int(i as i64)).collect();
    pairwise_product(&factors)
}

/// Rising function `z^(μ) = Γ(z+μ)/Γ(z)` on the nonnegative integers.
///
/// `0^(μ)` is zero except for `μ = 0`, where it is one so that the leading
/// term of every series is the identity term.
pub fn rising_function<T: Real>(z: u64, mu: T) -> Result<T> {
    if !Float::is_finite(mu) {
        return Err(Error::Domain(format!("rising function exponent {mu} is not finite")));
    }
    if mu == T::zero() {
        return Ok(T::one());
    }
    if z == 0 {
        return Ok(T::zero());
    }
    if let Some(m) = mu.as_integer() {
        if m > 0 {
            return Ok(rising_factorial(T::from_int(z as i64), m as u64));
        }
        // Γ(z-n)/Γ(z) = 1 / ((z-n)(z-n+1)...(z-1))
        let n = -m;
        let low = z as i64 - n;
        if low <= 0 {
            return Err(Error::Pole(format!(
                "Γ(z+μ) has a pole at z = {z}, μ = {mu}"
            )));
        }
        return Ok(T::one() / rising_factorial(T::from_int(low), n as u64));
    }
    // Γ(μ+1) ∏_{i=1}^{z-1} (μ+i)/i
    let factors: Vec<T> = (1..z)
        .map(|i| {
            let i = T::from_int(i as i64);
            (mu + i) / i
        })
        .collect();
    Ok((mu + T::one()).gamma() * pairwise_product(&factors))
}

/// Fractional-sum kernel `Γ(n+ν-1) / (Γ(n) Γ(ν))` for `n ≥ 1`.
///
/// This is the weight `(n)^(ν-1)/Γ(ν)` that multiplies `f(s)` at lag
/// `n = t - ρ(s)`. The product form is entire in `ν`; in particular
/// `kernel(n, 0)` is one at `n = 1` and zero elsewhere.
pub fn kernel<T: Scalar>(n: u64, nu: T) -> T {
    debug_assert!(n >= 1, "kernel lag starts at 1");
    if n <= 1 {
        return if n == 1 { T::one() } else { T::zero() };
    }
    let factors: Vec<T> = (1..n)
        .map(|i| (nu.clone() + T::from_int(i as i64 - 1)) / T::from_int(i as i64))
        .collect();
    pairwise_product(&factors)
}

/// Kernel values for lags `1..=n_max`, built by the one-step recurrence
/// `kernel(n+1, ν) = kernel(n, ν) (ν+n-1)/n`. Index 0 holds lag 1.
pub fn kernel_column<T: Scalar>(n_max: usize, nu: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n_max);
    let mut value = T::one();
    for n in 1..=n_max {
        out.push(value.clone());
        let n_t = T::from_int(n as i64);
        value = value * (nu.clone() + n_t.clone() - T::one()) / n_t;
    }
    out
}

/// Generalized binomial coefficient `μ(μ-1)...(μ-k+1)/k!`.
pub fn gen_binomial<T: Scalar>(mu: T, k: u64) -> T {
    let factors: Vec<T> = (0..k)
        .map(|i| (mu.clone() - T::from_int(i as i64)) / T::from_int(i as i64 + 1))
        .collect();
    pairwise_product(&factors)
}

/// Discrete delta: one when `t == s`.
pub fn dirac_delta<T: Scalar>(t: i64, s: i64) -> T {
    if t == s {
        T::one()
    } else {
        T::zero()
    }
}

/// Rising Pochhammer symbol `(ρ)_k`.
pub fn pochhammer<T: Scalar>(rho: T, k: u64) -> T {
    rising_factorial(rho, k)
}

/// Argument pair of a rising function: a grid value and a real exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RisingArg<T> {
    base: u64,
    exponent: T,
}

impl<T: Real> RisingArg<T> {
    pub fn new(base: u64, exponent: T) -> Result<Self> {
        if !Float::is_finite(exponent) {
            return Err(Error::Domain("rising exponent must be finite".into()));
        }
        Ok(Self { base, exponent })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn exponent(&self) -> T {
        self.exponent
    }

    pub fn value(&self) -> Result<T> {
        rising_function(self.base, self.exponent)
    }
}

/// Normalization function `B(α)` of the Atangana–Baleanu operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `B ≡ 1`.
    #[default]
    One,
    /// `B(α) = 1 - α + α/Γ(α)`, evaluated as `1 - α + α²/Γ(α+1)` so that
    /// `B(0) = B(1) = 1` without touching the pole of `Γ` at zero.
    AbStandard,
}

impl Normalization {
    pub fn eval<T: Real>(self, alpha: T) -> T {
        match self {
            Normalization::One => T::one(),
            Normalization::AbStandard => {
                T::one() - alpha + alpha * alpha / (alpha + T::one()).gamma()
            }
        }
    }
}
