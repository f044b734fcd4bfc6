//! Command-line driver. JSON goes to stdout, CSV to `--out`.
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use dbar::experiments::{self, GridValue};
use dbar::forms::{banach_norm, lp_norm, FormExpr, NormOptions, OneForm};
use dbar::geometry::{HartogsDomain, Point2, ProductDomain};
use dbar::hartogs::{self, HartogsForm};
use dbar::solver::{self, Method, ResidualGrid, SolutionField, SolverConfig};
use dbar::{Error, Result};

#[derive(Parser)]
#[command(name = "dbar", version, about = "Integral solutions of the Cauchy-Riemann equation on product domains")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Quadrature,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate u = T(f) at a point of D1 x D2.
    Solve {
        /// Product domain JSON file or inline (`{"factor1":{...},"factor2":{...}}`).
        #[arg(long)]
        domain: PathBuf,
        /// One-form JSON file or inline (`{"f1":[terms],"f2":[terms]}`).
        #[arg(long)]
        form: PathBuf,
        /// re1,im1,re2,im2
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Also write |Tf| on an interior grid as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Points per factor of the heatmap grid.
        #[arg(long, default_value_t = 8)]
        grid: usize,
    },
    /// Finite-difference dbar residual of Tf on an interior grid.
    Residual {
        /// Points per factor.
        #[arg(long, default_value_t = 8)]
        grid: usize,
        /// Finite-difference step.
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Product domain JSON; default is the bidisc.
        #[arg(long)]
        domain: Option<PathBuf>,
        /// One-form JSON; default is f^1 = dbar(|z1 z2|^2).
        #[arg(long)]
        form: Option<PathBuf>,
        /// Fail (exit 1) when the max error exceeds this.
        #[arg(long, default_value_t = 5e-3)]
        tol: f64,
        /// Residual map CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weighted Lp norms of a form on a product domain, or of alpha on the Hartogs triangle.
    Norms {
        #[arg(long)]
        p: f64,
        /// Exponent s of the weight |z2|^s.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        weight: f64,
        /// Truncation of the Hartogs triangle; 0 tests convergence at z2 = 0 instead.
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, conflicts_with = "alpha")]
        form: Option<PathBuf>,
        #[arg(long, conflicts_with = "alpha")]
        domain: Option<PathBuf>,
        /// Hartogs form JSON file or inline (`{"alpha1":[...],"alpha2":[...]}`).
        #[arg(long)]
        alpha: Option<PathBuf>,
    },
    /// The L1 counterexample table g^L = f^1 + ... + f^L.
    Counterexample {
        #[arg(long)]
        lmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the quadrature cross-check.
        #[arg(long)]
        no_quadrature: bool,
    },
    /// Data norms and solution norm for alpha on the Hartogs triangle.
    Hartogs {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = hartogs::DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// T(f) against the canonical solution for f = z1^k dz1bar.
    CompareCanonical {
        #[arg(long)]
        k: u32,
    },
    /// Quadrature against the exact one-variable transforms.
    OracleSuite {
        /// Per-case CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Outcome {
    Pass,
    Fail(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::DivergentWeight { .. } | Error::NonIntegrable { .. } | Error::LaurentPole { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

/// A JSON argument: inline when it starts with `{`, otherwise a file path.
fn read(path: &Path) -> Result<String> {
    if let Some(s) = path.to_str().filter(|s| s.trim_start().starts_with('{')) {
        return Ok(s.to_string());
    }
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_point(s: &str) -> Result<Point2> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number {t:?} in --point"))))
        .collect::<Result<_>>()?;
    match v[..] {
        [a, b, c, d] => Ok([Complex64::new(a, b), Complex64::new(c, d)]),
        _ => Err(Error::Parse("--point needs four numbers re1,im1,re2,im2".into())),
    }
}

fn print(v: serde_json::Value) {
    use std::io::Write;
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&v).expect("JSON values serialize"));
}

fn c(z: Complex64) -> serde_json::Value {
    json!([z.re, z.im])
}

fn fail_unless(ok: bool, msg: impl Into<String>) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(msg.into())
    }
}

fn run(cmd: Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::Solve { domain, form, point, method, out, grid } => {
            let domain = ProductDomain::from_json(&read(&domain)?)?;
            let f = OneForm::from_json(&read(&form)?, true)?;
            let z = parse_point(&point)?;
            let cfg = match method {
                MethodArg::Auto => SolverConfig::default(),
                MethodArg::Quadrature => SolverConfig { method: Method::Quadrature, ..Default::default() },
            };
            let t = solver::solve_t_terms(&f, &domain, z, &cfg)?;
            print(json!({
                "point": [c(z[0]), c(z[1])],
                "value": c(t.total()),
                "terms": {"k2_f2": c(t.k2_f2), "k1_f1": c(t.k1_f1), "tensor_d": c(t.tensor_d)},
            }));
            if let Some(path) = out {
                let field = SolutionField::new(f, domain, cfg)?;
                let pts = ResidualGrid::interior(&domain, grid, 0.05)?.points;
                let rows = pts.iter().map(|&z| Ok(GridValue::new(z, field.evaluate(z)?.norm()))).collect::<Result<Vec<_>>>()?;
                experiments::write_grid_csv(&rows, fs::File::create(path)?)?;
            }
            Ok(Outcome::Pass)
        }
        Cmd::Residual { grid, step, domain, form, tol, out } => {
            let domain = match domain {
                Some(p) => ProductDomain::from_json(&read(&p)?)?,
                None => ProductDomain::bidisc(),
            };
            let f = match form {
                Some(p) => OneForm::from_json(&read(&p)?, true)?,
                None => experiments::fk_form(1),
            };
            let field = SolutionField::new(f, domain, SolverConfig::default())?;
            let g = ResidualGrid::interior(&domain, grid, 0.1)?;
            let rep = solver::dbar_residual(&field, &g, step)?;
            if let Some(path) = out {
                let rows: Vec<GridValue> = rep.samples.iter().map(|s| GridValue::new(s.z, s.err1.max(s.err2))).collect();
                experiments::write_grid_csv(&rows, fs::File::create(path)?)?;
            }
            print(json!({
                "grid_n": rep.grid_n, "points": rep.points, "h": rep.h,
                "max_err": rep.max_err, "l2_err": rep.l2_err,
                "max_err_z1": rep.max_err_z1, "max_err_z2": rep.max_err_z2, "tol": tol,
            }));
            Ok(fail_unless(rep.max_err <= tol, format!("max residual {:e} > {tol:e}", rep.max_err)))
        }
        Cmd::Norms { p, weight, epsilon, form, domain, alpha } => {
            let opts = NormOptions::default();
            if let Some(a) = alpha {
                let a = HartogsForm::from_json(&read(&a)?)?;
                let dom = HartogsDomain::truncated(epsilon.unwrap_or(hartogs::DEFAULT_EPSILON))?;
                let n1 = lp_norm(&a.alpha1.into(), p, dom, weight, &opts)?;
                let n2 = lp_norm(&a.alpha2.into(), p, dom, weight, &opts)?;
                print(json!({"domain": "hartogs", "epsilon": dom.epsilon, "alpha1": n1, "alpha2": n2}));
            } else {
                let domain = match domain {
                    Some(path) => ProductDomain::from_json(&read(&path)?)?,
                    None => ProductDomain::bidisc(),
                };
                let f = match form {
                    Some(path) => OneForm::from_json(&read(&path)?, true)?,
                    None => return Err(Error::InvalidArgument("norms needs --form or --alpha".into())),
                };
                let d = f.script_d()?;
                let n1 = lp_norm(&f.f1, p, domain, weight, &opts)?;
                let n2 = lp_norm(&f.f2, p, domain, weight, &opts)?;
                let nd = lp_norm(&d, p, domain, weight, &opts)?;
                let mut out = json!({"domain": "product", "f1": n1, "f2": n2, "script_d": nd});
                if weight == 0.0 {
                    out["banach"] = serde_json::to_value(banach_norm(&f, p, &domain, &opts)?)?;
                }
                print(out);
            }
            Ok(Outcome::Pass)
        }
        Cmd::Counterexample { lmax, out, no_quadrature } => {
            let rows = experiments::counterexample_table(lmax, !no_quadrature)?;
            match out {
                Some(path) => experiments::write_csv(&rows, path)?,
                None => print(serde_json::to_value(&rows)?),
            }
            let monotone = rows.windows(2).filter(|w| w[0].l >= 2).all(|w| w[1].ratio > w[0].ratio);
            let bounded = rows.iter().all(|r| r.g_norm_l1 <= experiments::g_norm_limit());
            let agree = rows.iter().all(|r| r.max_rel_discrepancy().is_none_or(|d| d <= 1e-4));
            Ok(fail_unless(
                monotone && bounded && agree,
                format!("monotone={monotone} bounded={bounded} quadrature_agrees={agree}"),
            ))
        }
        Cmd::Hartogs { alpha, p, epsilon } => {
            let a = HartogsForm::from_json(&read(&alpha)?)?;
            let rep = hartogs::hartogs_report(&a, p, epsilon, &NormOptions::default())?;
            let mut v = serde_json::to_value(&rep)?;
            v["extra_condition"] = json!(a.extra_condition_holds());
            print(v);
            Ok(Outcome::Pass)
        }
        Cmd::CompareCanonical { k } => {
            if k == 0 {
                return Err(Error::InvalidArgument("k must be a positive integer".into()));
            }
            let w = hartogs::canonical_witness(k, Default::default())?;
            let f = OneForm::symbolic(FormExpr::mono(1.0, k, 0, 0, 0), FormExpr::zero());
            let samples: Vec<serde_json::Value> = [[0.0, 0.0], [0.5, 0.0], [0.3, -0.4], [-0.6, 0.2]]
                .iter()
                .map(|&[re, im]| {
                    let z = [Complex64::new(re, im), Complex64::new(0.2, 0.1)];
                    let (u, ucan) = hartogs::canonical_pair(k, z)?;
                    let t = solver::solve_t(&f, &ProductDomain::bidisc(), z, &SolverConfig::default())?;
                    Ok(json!({"z1": c(z[0]), "u": c(u), "u_can": c(ucan), "solver_u": c(t)}))
                })
                .collect::<Result<_>>()?;
            let c_h = hartogs::canonical_constant(Default::default())?;
            print(json!({"k": k, "witness": w, "samples": samples, "hartogs_c": c_h}));
            Ok(fail_unless(
                w.max_ucan_inner <= 1e-6 && w.u_inner_one.norm() > 1e-6,
                format!("max |<u_can, z1^m z2^n>| = {:e}, |<u, 1>| = {:e}", w.max_ucan_inner, w.u_inner_one.norm()),
            ))
        }
        Cmd::OracleSuite { out } => {
            let rep = experiments::oracle_suite()?;
            if let Some(path) = out {
                let mut w = csv::Writer::from_path(path)?;
                w.write_record(["kind", "k", "re", "im", "err_32", "err_64", "err_128", "err_256", "order", "pass"])?;
                for case in &rep.cases {
                    let mut rec = vec![
                        format!("{:?}", case.kind).to_lowercase(),
                        case.k.to_string(),
                        case.z[0].to_string(),
                        case.z[1].to_string(),
                    ];
                    rec.extend(case.errors.iter().map(|e| format!("{e:e}")));
                    rec.push(case.fit.order.map(|q| q.to_string()).unwrap_or_default());
                    rec.push(case.pass.to_string());
                    w.write_record(&rec)?;
                }
                w.flush()?;
            }
            print(serde_json::to_value(&rep)?);
            Ok(fail_unless(rep.pass, "oracle suite has failing cases"))
        }
    }
}
