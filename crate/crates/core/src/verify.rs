//! Executable identity checks grouped into suites.
//!
//! Each check evaluates both sides of an identity over a parameter sweep and
//! reports the largest gap against a fixed tolerance. Random test signals come
//! from a seeded ChaCha generator, so reports are reproducible.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ab::{
    ab_sum_left_signal, ab_sum_right_signal, abr_left, abr_left_signal, abr_right_signal, abr_series,
    inverse_relations_check, AbConfig,
};
use crate::error::{Error, Result};
use crate::iterated::{
    integration_by_parts_check, iterated, iterated_left, laplace_symbol, semigroup_compose, IterOrder, Side,
};
use crate::laplace::{
    closed_exp_monomial, closed_ml, closed_monomial, numeric_transform, rule_checks, signal_transform, Envelope,
    MlKind, Transformable,
};
use crate::mittag_leffler::{ml_column, ml_eval, ml_forward_identities, MlParams, Truncation};
use crate::nabla::{left_frac_sum_signal, right_frac_sum_signal};
use crate::scalar::Real;
use crate::signal::Signal;
use crate::solver::{residual, solve_series, tabulate, SeriesRhs};
use crate::special_fn::{rising_function, Normalization};

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub identity: String,
    pub params: Vec<(String, f64)>,
    pub max_gap: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    fn new(identity: impl Into<String>, params: &[(&str, f64)], max_gap: f64, tol: f64) -> Self {
        Self {
            identity: identity.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            max_gap,
            tol,
            pass: max_gap <= tol && max_gap.is_finite(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    FracSum,
    MittagLeffler,
    Ab,
    IteratedAbr,
    Semigroup,
    IntegrationByParts,
    Laplace,
    Transform,
    Solver,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 10] = [
        "frac-sum", "mittag-leffler", "ab", "iterated-abr", "semigroup", "ibp", "laplace", "transform", "solver", "all",
    ];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "frac-sum" => Suite::FracSum,
            "mittag-leffler" | "ml" => Suite::MittagLeffler,
            "ab" => Suite::Ab,
            "iterated-abr" => Suite::IteratedAbr,
            "semigroup" => Suite::Semigroup,
            "ibp" => Suite::IntegrationByParts,
            "laplace" => Suite::Laplace,
            "transform" => Suite::Transform,
            "solver" => Suite::Solver,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite {other:?}; expected one of {:?}", Suite::NAMES))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Suite::FracSum,
            Suite::MittagLeffler,
            Suite::Ab,
            Suite::IteratedAbr,
            Suite::Semigroup,
            Suite::IntegrationByParts,
            Suite::Laplace,
            Suite::Transform,
            Suite::Solver,
            Suite::All,
        ]
        .iter()
        .position(|s| s == self)
        .unwrap_or(0);
        f.write_str(Suite::NAMES[i])
    }
}

/// Settings shared by all suites. `alpha` restricts the sweeps that range
/// over the kernel order to a single value.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub alpha: Option<f64>,
    pub norm: Normalization,
    pub trunc: Truncation,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { alpha: None, norm: Normalization::One, trunc: Truncation::default(), seed: 2024 }
    }
}

impl SuiteConfig {
    fn alphas(&self, defaults: &[f64]) -> Vec<f64> {
        self.alpha.map(|a| vec![a]).unwrap_or_else(|| defaults.to_vec())
    }

    fn ab(&self, alpha: f64) -> Result<AbConfig<f64>> {
        AbConfig::new(alpha, self.norm)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

fn random_signal(rng: &mut ChaCha8Rng, a: i64, b: i64) -> Result<Signal<f64>> {
    Signal::from_fn(a, b, |_| rng.gen_range(-1.0..1.0))
}

fn max_gap(x: &Signal<f64>, y: &Signal<f64>, lo: i64, hi: i64) -> Result<f64> {
    x.max_gap_on(y, lo, hi)
}

fn relative_gap(x: &Signal<f64>, y: &Signal<f64>, lo: i64, hi: i64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for t in lo..=hi {
        let (u, v) = (x.value(t)?, y.value(t)?);
        worst = worst.max((u - v).abs() / v.abs().max(1.0));
    }
    Ok(worst)
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    match suite {
        Suite::FracSum => frac_sum_suite(cfg),
        Suite::MittagLeffler => mittag_leffler_suite(cfg),
        Suite::Ab => ab_suite(cfg),
        Suite::IteratedAbr => iterated_abr_suite(cfg),
        Suite::Semigroup => semigroup_suite(cfg),
        Suite::IntegrationByParts => ibp_suite(cfg),
        Suite::Laplace => laplace_suite(cfg),
        Suite::Transform => transform_suite(cfg),
        Suite::Solver => solver_suite(cfg),
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::FracSum,
                Suite::MittagLeffler,
                Suite::Ab,
                Suite::IteratedAbr,
                Suite::Semigroup,
                Suite::IntegrationByParts,
                Suite::Laplace,
                Suite::Transform,
                Suite::Solver,
            ] {
                all.extend(run_suite(s, cfg)?);
            }
            Ok(all)
        }
    }
}

fn frac_sum_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut rng = cfg.rng(1);
    let f = random_signal(&mut rng, 0, 31)?;
    let orders = [0.3, 0.5, 1.2];
    let (mut left, mut right): (f64, f64) = (0.0, 0.0);
    for &x in &orders {
        for &y in &orders {
            let composed = left_frac_sum_signal(&left_frac_sum_signal(&f, y)?, x)?;
            left = left.max(relative_gap(&composed, &left_frac_sum_signal(&f, x + y)?, 0, 31)?);
            let composed = right_frac_sum_signal(&right_frac_sum_signal(&f, y)?, x)?;
            right = right.max(relative_gap(&composed, &right_frac_sum_signal(&f, x + y)?, 0, 31)?);
        }
    }
    out.push(Check::new("left fractional sums compose additively", &[("grid", 32.0)], left, 1e-10));
    out.push(Check::new("right fractional sums compose additively", &[("grid", 32.0)], right, 1e-10));

    for &alpha in &[0.3f64, 0.5] {
        for &beta in &[0.0, 0.5, 1.0] {
            let scale = Real::gamma(beta + 1.0) / Real::gamma(beta + 1.0 + alpha);
            let mono = Signal::from_fn(0, 20, |t| rising_function(t as u64, beta).unwrap_or(0.0))?;
            let image = left_frac_sum_signal(&mono, alpha)?;
            let (mut l, mut r): (f64, f64) = (0.0, 0.0);
            let mirrored = right_frac_sum_signal(&mono.reflect(), alpha)?;
            for n in 1..=20i64 {
                let expected: f64 = scale * rising_function(n as u64, alpha + beta)?;
                l = l.max((image.value(n)? - expected).abs() / expected.abs());
                r = r.max((mirrored.value(20 - n)? - expected).abs() / expected.abs());
            }
            let params = [("alpha", alpha), ("beta", beta)];
            out.push(Check::new("power rule, left sum", &params, l, 1e-10));
            out.push(Check::new("power rule, right sum", &params, r, 1e-10));
        }
    }

    let running = Signal::from_fn(0, 31, |t| f.values()[1..=(t as usize)].iter().sum())?;
    out.push(Check::new(
        "order-one sum is the running sum",
        &[],
        max_gap(&left_frac_sum_signal(&f, 1.0)?, &running, 1, 31)?,
        1e-12,
    ));
    Ok(out)
}

fn mittag_leffler_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &lambda in &[-0.7f64, -0.3, 0.2, 0.7] {
        let p = MlParams::one(1.0, lambda)?;
        let mut worst: f64 = 0.0;
        for v in 0..=30u64 {
            let exact = (1.0 - lambda).powi(-(v as i32));
            worst = worst.max((ml_eval(&p, v, &cfg.trunc)?.value - exact).abs() / exact);
        }
        out.push(Check::new("alpha = 1 closed form (1-lambda)^-v", &[("lambda", lambda)], worst, 1e-10));
    }
    for &(alpha, beta, rho, lambda) in &[(0.3f64, 1.0, 1.0, -3.0 / 7.0), (0.5, 1.5, 2.0, 0.4), (0.8, 2.0, 0.5, -0.6)] {
        let p = MlParams::new(alpha, beta, rho, lambda)?;
        let mut gaps = [0.0f64; 4];
        let mut names = [""; 4];
        for v in 1..=20u64 {
            for (i, c) in ml_forward_identities(&p, v, 0.7, &cfg.trunc)?.into_iter().enumerate() {
                let scale = c.rhs.abs().max(1.0);
                gaps[i] = gaps[i].max(c.gap() / scale);
                names[i] = c.name;
            }
        }
        for (name, gap) in names.iter().zip(gaps) {
            let params = [("alpha", alpha), ("beta", beta), ("rho", rho), ("lambda", lambda)];
            out.push(Check::new(*name, &params, gap, 1e-10));
        }
    }
    Ok(out)
}

fn ab_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut rng = cfg.rng(2);
    for alpha in cfg.alphas(&[0.1, 0.2, 0.3, 0.45]) {
        let ab = cfg.ab(alpha)?;
        let f = random_signal(&mut rng, 0, 31)?;
        for c in inverse_relations_check(&f, &ab)?.checks {
            out.push(Check::new(c.name, &[("alpha", alpha), ("grid", 32.0)], c.max_gap, 1e-8));
        }
        let g = random_signal(&mut rng, 0, 15)?;
        let mut worst: f64 = 0.0;
        for t in 1..=15 {
            let s = abr_series(&g, &ab, t, &cfg.trunc)?;
            worst = worst.max((s.value - abr_left(&g, &ab, t)?).abs());
        }
        out.push(Check::new("ABR equals its fractional-sum series", &[("alpha", alpha), ("grid", 16.0)], worst, 1e-9));
    }
    Ok(out)
}

fn iterated_abr_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut rng = cfg.rng(3);
    for alpha in cfg.alphas(&[0.1, 0.25, 0.4]) {
        let ab = cfg.ab(alpha)?;
        let f = random_signal(&mut rng, 0, 7)?;
        let (mut diff_l, mut diff_r, mut sum_l, mut sum_r) = (f.clone(), f.clone(), f.clone(), f.clone());
        for n in 1..=3 {
            let nf = n as f64;
            diff_l = abr_left_signal(&diff_l, &ab)?;
            diff_r = abr_right_signal(&diff_r, &ab)?;
            sum_l = ab_sum_left_signal(&sum_l, &ab)?;
            sum_r = ab_sum_right_signal(&sum_r, &ab)?;
            let params = [("alpha", alpha), ("n", nf)];
            if alpha < 0.5 {
                let down = IterOrder::new(alpha, -nf)?;
                let l = iterated(&f, &down, &ab, &cfg.trunc, Side::Left)?.values;
                let r = iterated(&f, &down, &ab, &cfg.trunc, Side::Right)?.values;
                out.push(Check::new("iterated order -n equals n-fold left ABR", &params, max_gap(&l, &diff_l, 1, 7)?, 1e-8));
                out.push(Check::new("iterated order -n equals n-fold right ABR", &params, max_gap(&r, &diff_r, 0, 6)?, 1e-8));
            }
            let up = IterOrder::new(alpha, nf)?;
            let l = iterated(&f, &up, &ab, &cfg.trunc, Side::Left)?.values;
            let r = iterated(&f, &up, &ab, &cfg.trunc, Side::Right)?.values;
            out.push(Check::new("iterated order n equals n-fold left AB sum", &params, max_gap(&l, &sum_l, 0, 7)?, 1e-12));
            out.push(Check::new("iterated order n equals n-fold right AB sum", &params, max_gap(&r, &sum_r, 0, 7)?, 1e-12));
        }
    }
    let f = random_signal(&mut rng, 0, 7)?;
    let ab0 = AbConfig::unit(0.0)?;
    let mut worst: f64 = 0.0;
    for mu in [-1.5, -1.0, 0.5, 2.0] {
        let r = iterated_left(&f, &IterOrder::new(0.0, mu)?, &ab0, &cfg.trunc)?.values;
        worst = worst.max(max_gap(&r, &f, 0, 7)?);
    }
    out.push(Check::new("alpha = 0 gives the identity", &[], worst, 0.0));
    Ok(out)
}

fn semigroup_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut rng = cfg.rng(4);
    let exponents = [-1.5, -0.75, 0.0, 0.75, 1.5];
    for alpha in cfg.alphas(&[0.1, 0.25, 0.4]) {
        let ab = cfg.ab(alpha)?;
        let f = random_signal(&mut rng, 0, 15)?;
        for side in [Side::Left, Side::Right] {
            let mut worst: f64 = 0.0;
            for &mu in &exponents {
                for &nu in &exponents {
                    let (o1, o2, o12) = (IterOrder::new(alpha, mu)?, IterOrder::new(alpha, nu)?, IterOrder::new(alpha, mu + nu)?);
                    let composed = semigroup_compose(&f, &o1, &o2, &ab, &cfg.trunc, side)?.values;
                    let direct = iterated(&f, &o12, &ab, &cfg.trunc, side)?.values;
                    worst = worst.max(max_gap(&composed, &direct, 0, 15)?);
                }
            }
            let name = match side {
                Side::Left => "left iterated operators compose additively in mu",
                Side::Right => "right iterated operators compose additively in mu",
            };
            out.push(Check::new(name, &[("alpha", alpha), ("grid", 16.0)], worst, 1e-7));
        }
    }
    Ok(out)
}

fn ibp_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut rng = cfg.rng(5);
    for alpha in cfg.alphas(&[0.2, 0.4]) {
        let ab = cfg.ab(alpha)?;
        for &(mu, tol) in &[(1.0f64, 1e-9), (2.0, 1e-9), (-1.0, 1e-9), (1.3, 1e-7)] {
            if mu.fract() != 0.0 || mu < 0.0 {
                if alpha >= 0.5 {
                    continue;
                }
            }
            let ord = IterOrder::new(alpha, mu)?;
            let mut worst: f64 = 0.0;
            for _ in 0..20 {
                let f = random_signal(&mut rng, 0, 9)?;
                let g = random_signal(&mut rng, 0, 9)?;
                worst = worst.max(integration_by_parts_check(&f, &g, &ord, &ab, &cfg.trunc)?);
            }
            out.push(Check::new("summation by parts for iterated operators", &[("alpha", alpha), ("mu", mu)], worst, tol));
        }
    }
    Ok(out)
}

fn laplace_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let tol = 1e-10;
    for &z in &[0.5, 0.8, 1.2] {
        for &mu in &[0.5f64, 1.0, 2.0] {
            let env = Envelope::new(Real::gamma(mu).max(1.0), (mu - 1.0f64).max(0.0), 1.0)?;
            let p = numeric_transform(|t| rising_function(t as u64, mu - 1.0).unwrap_or(f64::NAN), 0, z, &env, tol, 1_000_000)?;
            let exact = closed_monomial(mu, z)?;
            let gap = (p.value - exact).abs();
            let within = if gap <= p.tail_bound + 1e-14 * exact.abs() { gap } else { f64::INFINITY };
            out.push(Check::new("transform of a rising power", &[("z", z), ("mu", mu)], within, 1e-8));

            let b = 1.5;
            let env = Envelope::new(Real::gamma(mu).max(1.0), mu.max(1.0), 1.0 / b)?;
            let p = numeric_transform(
                |t| rising_function(t as u64, mu - 1.0).unwrap_or(f64::NAN) * b.powi(-(t as i32)),
                0,
                z,
                &env,
                tol,
                1_000_000,
            )?;
            let gap = (p.value - closed_exp_monomial(mu, b, z)?).abs();
            let within = if gap <= p.tail_bound + 1e-14 { gap } else { f64::INFINITY };
            out.push(Check::new("transform of a damped rising power", &[("z", z), ("mu", mu), ("b", b)], within, 1e-8));
        }
        for alpha in cfg.alphas(&[0.3, 0.5]) {
            let lambda = -0.4;
            for (kind, beta, name) in [
                (MlKind::OneParameter, 1.0, "transform of E_alpha"),
                (MlKind::AlphaAlpha, alpha, "transform of E_alpha,alpha"),
            ] {
                let env = Envelope::new(4.0, 1.0, 1.0)?;
                let r = (1.0 - z as f64).abs();
                let n = env.horizon(r, tol)? as usize;
                let col = ml_column(&MlParams::two(alpha, beta, lambda)?, n)?;
                let observed = col.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                let sig = Signal::new(0, col)?;
                let p = signal_transform(&sig, z, &env, tol)?;
                let gap = (p.value - closed_ml(alpha, lambda, kind, z)?).abs();
                let within = if gap <= p.tail_bound + 1e-13 && observed <= 4.0 { gap } else { f64::INFINITY };
                out.push(Check::new(name, &[("z", z), ("alpha", alpha), ("lambda", lambda)], within, 1e-8));
            }
        }
        let one = |_: i64| 1.0;
        let wave = |t: i64| (0.7 * t as f64).sin();
        let lin = |t: i64| t as f64;
        let f = Transformable { origin: 0, f: &wave, env: Envelope::constant(1.0) };
        let g = Transformable { origin: 0, f: &lin, env: Envelope::new(1.0, 1.0, 1.0)? };
        let h = Transformable { origin: 0, f: &one, env: Envelope::constant(1.0) };
        for (x, y) in [(&f, &g), (&h, &h)] {
            for c in rule_checks(x, y, 0.6, z, 1e-8)? {
                out.push(Check::new(format!("transform rule: {}", c.rule), &[("z", z), ("nu", 0.6)], c.gap, c.tol));
            }
        }
    }
    Ok(out)
}

/// Transform of `iterated(f)` divided by the transform of `f`, for `f ≡ 1`.
///
/// The envelope of the iterated output is fitted on the computed horizon as
/// `max |g(m)| / (1+m)` with linear growth allowed beyond it; with
/// `|1 - z| ≤ 0.4` and 80 terms the neglected tail is far below the tolerance.
pub fn transform_ratio(ord: &IterOrder<f64>, ab: &AbConfig<f64>, z: f64, trunc: &Truncation) -> Result<(f64, f64)> {
    let horizon = 80;
    let f = Signal::constant(0, horizon, 1.0)?;
    let g = iterated_left(&f, ord, ab, trunc)?;
    let c = g.values.iter().map(|(t, v)| v.abs() / (1.0 + t as f64)).fold(0.0, f64::max);
    let env = Envelope::new(c.max(1e-300), 1.0, 1.0)?;
    let kg = signal_transform(&g.values, z, &env, 1e-12)?;
    let kf = signal_transform(&f, z, &Envelope::constant(1.0), 1e-12)?;
    Ok((kg.value / kf.value, laplace_symbol(ord, ab, z)?))
}

fn transform_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for alpha in cfg.alphas(&[0.3]) {
        let ab = cfg.ab(alpha)?;
        for &mu in &[1.0, 1.5, -1.0] {
            if alpha >= 0.5 && mu != 1.0 {
                continue;
            }
            for &z in &[0.6, 0.9, 1.3] {
                let (ratio, symbol) = transform_ratio(&IterOrder::new(alpha, mu)?, &ab, z, &cfg.trunc)?;
                out.push(Check::new(
                    "transform of iterated operator equals symbol times transform",
                    &[("alpha", alpha), ("mu", mu), ("z", z)],
                    (ratio - symbol).abs(),
                    1e-6,
                ));
            }
        }
    }
    Ok(out)
}

fn solver_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let ab = AbConfig::unit(0.3)?;
    let rhs = SeriesRhs::new(vec![1.0], 0.3)?;
    let sol = solve_series(0.3f64, 1.0, 1.0, &rhs, &ab, 25)?;
    let params = [("alpha", 0.3), ("mu", 1.0), ("A", 1.0), ("n_terms", 25.0)];
    out.push(Check::new("leading solution coefficient", &params, (sol.coeffs[0] - 0.7 / 1.7).abs(), 1e-7));
    out.push(Check::new("series solution residual", &params, residual(&sol, &rhs, &ab, 6, &cfg.trunc)?, 1e-6));
    let x = tabulate(&sol, 6)?;
    let abr = abr_left_signal(&x, &ab)?;
    let mut worst: f64 = 0.0;
    for t in 1..=6 {
        worst = worst.max((abr.value(t)? + x.value(t)? - 1.0).abs());
    }
    out.push(Check::new("first-order solution satisfies the ABR equation", &params, worst, 1e-6));

    let ab = AbConfig::unit(0.25)?;
    let rhs = SeriesRhs::new(vec![1.0, 0.5], 0.25)?;
    let sol = solve_series(0.25, 1.5, 2.0, &rhs, &ab, 30)?;
    out.push(Check::new(
        "series solution residual",
        &[("alpha", 0.25), ("mu", 1.5), ("A", 2.0), ("n_terms", 30.0)],
        residual(&sol, &rhs, &ab, 5, &cfg.trunc)?,
        1e-5,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        let cfg = SuiteConfig::default();
        for name in &Suite::NAMES[..9] {
            let suite: Suite = name.parse().unwrap();
            for c in run_suite(suite, &cfg).unwrap() {
                assert!(c.pass, "{name}: {c:?}");
            }
        }
    }

    #[test]
    fn standard_normalization_passes() {
        let cfg = SuiteConfig { norm: Normalization::AbStandard, ..Default::default() };
        for suite in [Suite::Ab, Suite::IteratedAbr, Suite::Transform] {
            for c in run_suite(suite, &cfg).unwrap() {
                assert!(c.pass, "{suite}: {c:?}");
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
