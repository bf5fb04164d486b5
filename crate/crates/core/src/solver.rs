//! Power-series solutions of `∇_0^{(-α,-μ)} x(t) = -A x(t) + b(t)`.
//!
//! With `b(t) = Σ_s b_s t^(sα)` and the ansatz `x(t) = Σ_s c_s t^(sα)`, the
//! monomial image of the iterated operator turns the equation into the
//! triangular recurrence
//!
//! ```text
//! (A + (B/(1-α))^μ) c_m = b_m - Σ_{k=1}^{m} d_k c_{m-k} Γ((m-k)α+1) / Γ(mα+1),
//! d_k = binom(-μ,k) B^μ α^k / (1-α)^{μ+k}.
//! ```

use num_traits::Float;

use crate::ab::AbConfig;
use crate::error::{Error, Result};
use crate::iterated::{iterated_left, IterOrder};
use crate::mittag_leffler::Truncation;
use crate::scalar::Real;
use crate::signal::Signal;
use crate::special_fn::{gen_binomial, rising_function};

/// Right-hand side `b(t) = Σ_s b_s t^(sα)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesRhs<T> {
    pub coeffs: Vec<T>,
    pub alpha: T,
}

impl<T: Real> SeriesRhs<T> {
    pub fn new(coeffs: Vec<T>, alpha: T) -> Result<Self> {
        if let Some(i) = coeffs.iter().position(|c| !Float::is_finite(*c)) {
            return Err(Error::Domain(format!("coefficient b_{i} is not finite")));
        }
        Ok(Self { coeffs, alpha })
    }

    pub fn eval(&self, t: u64) -> Result<T> {
        power_series(&self.coeffs, self.alpha, t).map(|(v, _)| v)
    }
}

/// Sum of `coeffs[s] t^(sα)` and its last term.
fn power_series<T: Real>(coeffs: &[T], alpha: T, t: u64) -> Result<(T, T)> {
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(s, c)| Ok(*c * rising_function(t, T::from_int(s as i64) * alpha)?))
        .collect::<Result<Vec<T>>>()?;
    Ok((T::sum_seq(&terms), terms.last().copied().unwrap_or_else(T::zero)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution<T> {
    pub coeffs: Vec<T>,
    pub alpha: T,
    pub mu: T,
    pub a: T,
}

impl<T> SeriesSolution<T> {
    pub fn n_terms(&self) -> usize {
        self.coeffs.len()
    }
}

/// Value of a truncated solution series at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionValue<T> {
    pub value: T,
    pub last_term: T,
    /// Whether the last retained term is below `tol` times the partial sum.
    pub trusted: bool,
}

/// `d_k = binom(-μ,k) B^μ α^k / (1-α)^{μ+k}`, the coefficients of the
/// iterated operator of order `(α, -μ)`.
fn operator_coefficients<T: Real>(alpha: T, mu: T, b: T, n: usize) -> Vec<T> {
    let base = Float::powf(b / (T::one() - alpha), mu);
    let q = alpha / (T::one() - alpha);
    (0..n)
        .map(|k| gen_binomial(-mu, k as u64) * base * Float::powi(q, k as i32))
        .collect()
}

pub fn solve_series<T: Real>(
    alpha: T,
    mu: T,
    a: T,
    rhs: &SeriesRhs<T>,
    cfg: &AbConfig<T>,
    n_terms: usize,
) -> Result<SeriesSolution<T>> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::Domain(format!("the series solver needs 0 < alpha < 1, got {alpha}")));
    }
    if !(mu > T::zero()) {
        return Err(Error::Domain(format!("difference order mu must be positive, got {mu}")));
    }
    if !Float::is_finite(a) {
        return Err(Error::Domain("A must be finite".into()));
    }
    if n_terms == 0 {
        return Err(Error::Domain("n_terms must be at least 1".into()));
    }
    if *cfg.alpha() != alpha {
        return Err(Error::AlphaMismatch(alpha.to_real(), cfg.alpha().to_real()));
    }
    if rhs.alpha != alpha {
        return Err(Error::AlphaMismatch(alpha.to_real(), rhs.alpha.to_real()));
    }
    let d = operator_coefficients(alpha, mu, *cfg.b_value(), n_terms);
    let denom = a + d[0];
    if denom == T::zero() {
        return Err(Error::DivisionByZero("A + (B/(1-alpha))^mu vanishes".into()));
    }
    let gamma_at = |m: usize| (T::from_int(m as i64) * alpha + T::one()).gamma();
    let mut c: Vec<T> = Vec::with_capacity(n_terms);
    for m in 0..n_terms {
        let b_m = rhs.coeffs.get(m).copied().unwrap_or_else(T::zero);
        let coupling: Vec<T> = (1..=m).map(|k| c[m - k] * d[k] * gamma_at(m - k)).collect();
        let c_m = (b_m - T::sum_seq(&coupling) / gamma_at(m)) / denom;
        if !Float::is_finite(c_m) {
            return Err(Error::NonFinite(m as i64));
        }
        c.push(c_m);
    }
    Ok(SeriesSolution { coeffs: c, alpha, mu, a })
}

pub fn evaluate_solution<T: Real>(sol: &SeriesSolution<T>, t: u64, tol: f64) -> Result<SolutionValue<T>> {
    let (value, last_term) = power_series(&sol.coeffs, sol.alpha, t)?;
    let trusted = Float::abs(last_term) <= T::from_real(tol) * Float::abs(value) || last_term == T::zero();
    Ok(SolutionValue { value, last_term, trusted })
}

/// Tabulates the truncated solution on `{0, …, t_max}`.
pub fn tabulate<T: Real>(sol: &SeriesSolution<T>, t_max: u64) -> Result<Signal<T>> {
    let values = (0..=t_max)
        .map(|t| power_series(&sol.coeffs, sol.alpha, t).map(|(v, _)| v))
        .collect::<Result<Vec<T>>>()?;
    Signal::new(0, values)
}

/// `max_{1 ≤ t ≤ t_max} |∇^{(-α,-μ)} x(t) + A x(t) - b(t)|` for the tabulated
/// solution.
pub fn residual<T: Real>(
    sol: &SeriesSolution<T>,
    rhs: &SeriesRhs<T>,
    cfg: &AbConfig<T>,
    t_max: u64,
    trunc: &Truncation,
) -> Result<T> {
    if t_max == 0 {
        return Err(Error::Domain("residual grid needs t_max >= 1".into()));
    }
    let x = tabulate(sol, t_max)?;
    let ord = IterOrder::new(sol.alpha, -sol.mu)?;
    let lhs = iterated_left(&x, &ord, cfg, trunc)?.values;
    let mut worst = T::zero();
    for t in 1..=t_max {
        let i = t as usize;
        let gap = Float::abs(lhs.values()[i] + sol.a * x.values()[i] - rhs.eval(t)?);
        worst = Float::max(worst, gap);
    }
    Ok(worst)
}
