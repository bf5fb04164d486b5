use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use nabla_ab::ab::{
    ab_sum_left_signal, ab_sum_right_signal, abc_left_signal, abc_right_signal, abr_left_signal, abr_right_signal,
    AbConfig,
};
use nabla_ab::iterated::{iterated, IterOrder, IterRoute, Side};
use nabla_ab::laplace::{rule_checks, Envelope, Transformable};
use nabla_ab::mittag_leffler::{ml_eval, MlMethod, MlParams, Truncation};
use nabla_ab::nabla::{left_frac_sum_signal, right_frac_sum_signal};
use nabla_ab::solver::{evaluate_solution, residual, solve_series, SeriesRhs};
use nabla_ab::special_fn::Normalization;
use nabla_ab::verify::{run_suite, transform_ratio, Check, Suite, SuiteConfig};
use nabla_ab::Signal64;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::args::{ApplyArgs, BNorm, Cli, Command, Format, LaplaceArgs, MlArgs, Op, SideArg, SolveArgs, VerifyArgs};

#[derive(Debug)]
pub enum CliError {
    Lib(nabla_ab::Error),
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Lib(e) => (e.kind(), e.to_string()),
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::Io(m) => ("io", m.clone()),
        };
        json!({ "error": kind, "message": message })
    }
}

impl From<nabla_ab::Error> for CliError {
    fn from(e: nabla_ab::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

struct Context {
    trunc: Truncation,
    norm: Normalization,
}

/// Runs one subcommand; `Ok(false)` means a check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let ctx = Context {
        trunc: Truncation::new(cli.tol, cli.k_max)?,
        norm: match cli.b_norm {
            BNorm::One => Normalization::One,
            BNorm::AbStandard => Normalization::AbStandard,
        },
    };
    match &cli.command {
        Command::Apply(a) => apply(&ctx, a),
        Command::Ml(a) => ml(&ctx, a),
        Command::LaplaceCheck(a) => laplace_check(&ctx, a),
        Command::Solve(a) => solve(&ctx, a),
        Command::Verify(a) => verify(&ctx, a),
    }
}

fn print_json(value: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_signal(signal: &Signal64, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => signal.write_csv(File::create(p)?)?,
        None => signal.write_csv(io::stdout().lock())?,
    }
    Ok(())
}

fn route_name(route: IterRoute) -> &'static str {
    match route {
        IterRoute::Trivial => "trivial",
        IterRoute::Finite => "finite",
        IterRoute::Series => "series",
        IterRoute::GeneratingFunction => "generating-function",
        IterRoute::Convention => "convention",
    }
}

fn apply(ctx: &Context, args: &ApplyArgs) -> Result<bool> {
    let f = Signal64::read_csv(File::open(&args.input)?)?;
    let left = args.side == SideArg::Left;
    let mut meta = Map::new();
    meta.insert("op".into(), json!(format!("{:?}", args.op).to_lowercase()));
    meta.insert("side".into(), json!(if left { "left" } else { "right" }));
    meta.insert("alpha".into(), json!(args.alpha));

    let out = match args.op {
        Op::FracSum => {
            meta.insert("k_used".into(), Value::Null);
            meta.insert("tail_bound".into(), json!(0.0));
            if left {
                left_frac_sum_signal(&f, args.alpha)?
            } else {
                right_frac_sum_signal(&f, args.alpha)?
            }
        }
        Op::AbSum | Op::Abc | Op::Abr => {
            let cfg = AbConfig::new(args.alpha, ctx.norm)?;
            meta.insert("b".into(), json!(cfg.b_value()));
            meta.insert("k_used".into(), Value::Null);
            meta.insert("tail_bound".into(), json!(0.0));
            match (args.op, left) {
                (Op::AbSum, true) => ab_sum_left_signal(&f, &cfg)?,
                (Op::AbSum, false) => ab_sum_right_signal(&f, &cfg)?,
                (Op::Abc, true) => abc_left_signal(&f, &cfg)?,
                (Op::Abc, false) => abc_right_signal(&f, &cfg)?,
                (_, true) => abr_left_signal(&f, &cfg)?,
                (_, false) => abr_right_signal(&f, &cfg)?,
            }
        }
        Op::Iterated => {
            let cfg = AbConfig::new(args.alpha, ctx.norm)?;
            let ord = IterOrder::new(args.alpha, args.mu)?;
            let side = if left { Side::Left } else { Side::Right };
            let r = iterated(&f, &ord, &cfg, &ctx.trunc, side)?;
            meta.insert("mu".into(), json!(args.mu));
            meta.insert("b".into(), json!(cfg.b_value()));
            meta.insert("k_used".into(), json!(r.k_used));
            meta.insert("tail_bound".into(), json!(r.tail_bound));
            meta.insert("route".into(), json!(route_name(r.route)));
            r.values
        }
    };
    write_signal(&out, args.output.as_deref())?;
    let meta = Value::Object(meta);
    match &args.meta {
        Some(p) => serde_json::to_writer_pretty(File::create(p)?, &meta)?,
        None => eprintln!("{meta}"),
    }
    Ok(true)
}

fn ml(ctx: &Context, args: &MlArgs) -> Result<bool> {
    let p = MlParams::new(args.alpha, args.beta, args.rho, args.lambda)?;
    let r = ml_eval(&p, args.v, &ctx.trunc)?;
    print_json(&json!({
        "alpha": args.alpha,
        "beta": args.beta,
        "rho": args.rho,
        "lambda": args.lambda,
        "v": args.v,
        "value": r.value,
        "terms_used": r.terms_used,
        "tail_bound": r.tail_bound,
        "method": match r.method {
            MlMethod::Series => "series",
            MlMethod::GeneratingFunction => "generating-function",
        },
    }))?;
    Ok(true)
}

fn laplace_check(ctx: &Context, args: &LaplaceArgs) -> Result<bool> {
    let one = |_: i64| 1.0;
    let lin = |t: i64| t as f64;
    let wave = |t: i64| (0.7 * t as f64).sin();
    let pairs = [
        (
            "wave, linear",
            Transformable { origin: 0, f: &wave as &dyn Fn(i64) -> f64, env: Envelope::constant(1.0) },
            Transformable { origin: 0, f: &lin as &dyn Fn(i64) -> f64, env: Envelope::new(1.0, 1.0, 1.0)? },
        ),
        (
            "one, one",
            Transformable { origin: 0, f: &one as &dyn Fn(i64) -> f64, env: Envelope::constant(1.0) },
            Transformable { origin: 0, f: &one as &dyn Fn(i64) -> f64, env: Envelope::constant(1.0) },
        ),
    ];
    let mut rows = Vec::new();
    let mut all_pass = true;
    for &z in &args.z {
        for (label, f, g) in &pairs {
            for c in rule_checks(f, g, args.nu, z, args.check_tol)? {
                all_pass &= c.passed();
                rows.push(json!({
                    "rule": c.rule, "signals": label, "z": c.z, "lhs": c.lhs, "rhs": c.rhs,
                    "gap": c.gap, "tol": c.tol, "pass": c.passed(),
                }));
            }
        }
        if let Some(alpha) = args.alpha {
            let cfg = AbConfig::new(alpha, ctx.norm)?;
            let ord = IterOrder::new(alpha, args.mu)?;
            let (ratio, symbol) = transform_ratio(&ord, &cfg, z, &ctx.trunc)?;
            let gap = (ratio - symbol).abs();
            let pass = gap <= args.check_tol;
            all_pass &= pass;
            rows.push(json!({
                "rule": "iterated symbol", "signals": "one", "z": z, "alpha": alpha, "mu": args.mu,
                "lhs": ratio, "rhs": symbol, "gap": gap, "tol": args.check_tol, "pass": pass,
            }));
        }
    }
    print_json(&json!({ "checks": rows, "pass": all_pass }))?;
    Ok(all_pass)
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolveConfig {
    alpha: Option<f64>,
    mu: Option<f64>,
    #[serde(rename = "A")]
    a: Option<f64>,
    b_coeffs: Option<Vec<f64>>,
    n_terms: Option<usize>,
    t_max: Option<u64>,
    residual_tol: Option<f64>,
}

fn solve(ctx: &Context, args: &SolveArgs) -> Result<bool> {
    let file: SolveConfig = match &args.config {
        Some(p) => serde_json::from_reader(File::open(p)?)?,
        None => SolveConfig::default(),
    };
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| CliError::Usage(format!("missing {name}")));
    let alpha = need(args.alpha.or(file.alpha), "alpha")?;
    let mu = need(args.mu.or(file.mu), "mu")?;
    let a = need(args.coef_a.or(file.a), "A (--coef-a)")?;
    let b = args
        .b_coeffs
        .clone()
        .or(file.b_coeffs)
        .ok_or_else(|| CliError::Usage("missing b_coeffs".into()))?;
    let n_terms = args.n_terms.or(file.n_terms).unwrap_or(25);
    let t_max = args.t_max.or(file.t_max).unwrap_or(6);
    let res_tol = args.residual_tol.or(file.residual_tol).unwrap_or(1e-6);

    let cfg = AbConfig::new(alpha, ctx.norm)?;
    let rhs = SeriesRhs::new(b.clone(), alpha)?;
    let sol = solve_series(alpha, mu, a, &rhs, &cfg, n_terms)?;
    let gap = residual(&sol, &rhs, &cfg, t_max.max(1), &ctx.trunc)?;
    let pass = gap <= res_tol;
    let report = json!({ "max_gap": gap, "tol": res_tol, "pass": pass, "t_range": [1, t_max.max(1)] });

    let mut table = Vec::new();
    for t in 0..=t_max {
        let v = evaluate_solution(&sol, t, ctx.trunc.tol.max(1e-12))?;
        table.push((t, v));
    }
    match args.format {
        Format::Json => {
            let value = json!({
                "alpha": alpha, "mu": mu, "A": a, "b_coeffs": b, "n_terms": n_terms,
                "coefficients": sol.coeffs,
                "table": table.iter().map(|(t, v)| json!({
                    "t": t, "value": v.value, "last_term": v.last_term, "trusted": v.trusted,
                })).collect::<Vec<_>>(),
                "residual": report,
            });
            match &args.output {
                Some(p) => serde_json::to_writer_pretty(File::create(p)?, &value)?,
                None => print_json(&value)?,
            }
        }
        Format::Csv => {
            let mut text = String::from("t,value,trusted\n");
            for (t, v) in &table {
                text.push_str(&format!("{t},{},{}\n", v.value, v.trusted));
            }
            match &args.output {
                Some(p) => std::fs::write(p, text)?,
                None => io::stdout().lock().write_all(text.as_bytes())?,
            }
            eprintln!("{report}");
        }
    }
    Ok(pass)
}

fn check_json(c: &Check) -> Value {
    let params: Map<String, Value> = c.params.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    json!({ "identity": c.identity, "params": params, "max_gap": c.max_gap, "tol": c.tol, "pass": c.pass })
}

fn verify(ctx: &Context, args: &VerifyArgs) -> Result<bool> {
    let suite: Suite = args.suite.parse().map_err(|e: nabla_ab::Error| CliError::Usage(e.to_string()))?;
    let cfg = SuiteConfig { alpha: args.alpha, norm: ctx.norm, trunc: ctx.trunc.clone(), seed: args.seed };
    let checks = run_suite(suite, &cfg)?;
    let pass = checks.iter().all(|c| c.pass);
    let max_gap = checks.iter().map(|c| c.max_gap).fold(0.0, f64::max);
    print_json(&json!({
        "suite": suite.to_string(),
        "max_gap": max_gap,
        "pass": pass,
        "checks": checks.iter().map(check_json).collect::<Vec<_>>(),
    }))?;
    Ok(pass)
}
