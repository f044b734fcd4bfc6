//! Lᵖ, weighted Lᵖ and ℬ norms by tensor (product domains) or iterated
//! (Hartogs triangle) polar Gauss–Legendre quadrature.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Component, FormExpr, OneForm};
use crate::error::{Error, Result};
use crate::geometry::{
    factor_rule, hartogs_rule, product_rule, AreaResolution, DomainKind, HartogsDomain, Point2, ProductDomain,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Lp,
    LpWeighted,
    BanachB,
}

/// Result of a norm estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub kind: NormKind,
    pub p: f64,
    /// Exponent s of the |z₂|^s weight.
    pub weight_exp: f64,
    pub value: f64,
    pub est_error: f64,
    pub nodes_used: usize,
    /// Inner cutoff in |z₂| actually used, if any.
    pub truncation: Option<f64>,
}

/// Where a norm is taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormDomain {
    Product(ProductDomain),
    Hartogs(HartogsDomain),
}

impl From<ProductDomain> for NormDomain {
    fn from(d: ProductDomain) -> Self {
        NormDomain::Product(d)
    }
}

impl From<HartogsDomain> for NormDomain {
    fn from(d: HartogsDomain) -> Self {
        NormDomain::Hartogs(d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormOptions {
    pub resolution: AreaResolution,
    /// Also evaluate at `resolution.refined()` and report the difference.
    pub refine: bool,
    /// Coarse and fine |z₂| cutoffs for the convergence test near z₂ = 0.
    pub cutoffs: [f64; 2],
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions { resolution: AreaResolution::default(), refine: true, cutoffs: [1e-5, 1e-10] }
    }
}

const CHUNK: usize = 4096;

/// Σ w·f(z) over a node set. Chunks run in parallel and are combined in
/// order, so the result does not depend on scheduling.
pub fn integrate(f: &(dyn Fn(Point2) -> Result<Complex64> + Sync), nodes: &[(Point2, f64)]) -> Result<Complex64> {
    let parts: Vec<Result<Complex64>> = nodes
        .par_chunks(CHUNK)
        .map(|chunk| chunk.iter().try_fold(Complex64::new(0.0, 0.0), |acc, &(z, w)| Ok(acc + f(z)? * w)))
        .collect();
    parts.into_iter().sum()
}

fn power_integral(
    f: &(dyn Fn(Point2) -> Result<Complex64> + Sync),
    p: f64,
    weight_exp: f64,
    nodes: &[(Point2, f64)],
) -> Result<f64> {
    let term = |z: Point2, w: f64| -> Result<f64> {
        let v = f(z)?.norm();
        let weight = if weight_exp == 0.0 { 1.0 } else { z[1].norm().powf(weight_exp) };
        Ok(w * v.powf(p) * weight)
    };
    let parts: Vec<Result<f64>> =
        nodes.par_chunks(CHUNK).map(|chunk| chunk.iter().try_fold(0.0, |acc, &(z, w)| Ok(acc + term(z, w)?))).collect();
    parts.into_iter().sum()
}

/// ∫ |e|ᵖ|z₂|^s over a product domain, with each monomial split into its
/// z₁ and z₂ factors so the tensor grid costs one short dot product per node.
fn separated_power_integral(
    e: &FormExpr,
    p: f64,
    weight_exp: f64,
    d: &ProductDomain,
    res: AreaResolution,
    cutoff: Option<f64>,
) -> Result<(f64, usize)> {
    let r1 = factor_rule(&d.factor1, res, None);
    let r2 = factor_rule(&d.factor2, res, cutoff);
    let terms = e.terms();
    let nt = terms.len();
    if nt == 0 {
        return Ok((0.0, r1.len() * r2.len()));
    }
    let mut b = Vec::with_capacity(r2.len() * nt);
    for &(z2, _) in &r2 {
        for t in terms {
            if t.p2 < 0 && z2 == Complex64::new(0.0, 0.0) {
                return Err(Error::LaurentPole { power: t.p2 });
            }
            b.push(t.coef * z2.powi(t.p2) * z2.conj().powu(t.q2));
        }
    }
    let w2: Vec<f64> = r2.iter().map(|&(z2, w)| if weight_exp == 0.0 { w } else { w * z2.norm().powf(weight_exp) }).collect();
    let pow = |v: Complex64| -> f64 {
        if p == 2.0 {
            v.norm_sqr()
        } else if p == 1.0 {
            v.norm()
        } else {
            v.norm().powf(p)
        }
    };
    let parts: Vec<f64> = r1
        .par_chunks(16)
        .map(|chunk| {
            let mut a = vec![Complex64::new(0.0, 0.0); nt];
            let mut acc = 0.0;
            for &(z1, w1) in chunk {
                for (ai, t) in a.iter_mut().zip(terms) {
                    *ai = z1.powu(t.p1) * z1.conj().powu(t.q1);
                }
                let mut inner = 0.0;
                for (bj, &wj) in b.chunks_exact(nt).zip(&w2) {
                    let v: Complex64 = a.iter().zip(bj).map(|(x, y)| x * y).sum();
                    inner += wj * pow(v);
                }
                acc += w1 * inner;
            }
            acc
        })
        .collect();
    Ok((parts.into_iter().sum(), r1.len() * r2.len()))
}

/// What gets integrated: an opaque closure or a symbolic expression.
#[derive(Clone, Copy)]
enum Integrand<'a> {
    Closure(&'a (dyn Fn(Point2) -> Result<Complex64> + Sync)),
    Symbolic(&'a FormExpr),
}

fn integrand_power(
    f: Integrand<'_>,
    p: f64,
    weight_exp: f64,
    domain: &NormDomain,
    res: AreaResolution,
    cutoff: Option<f64>,
) -> Result<(f64, usize)> {
    match (f, domain) {
        (Integrand::Symbolic(e), NormDomain::Product(d)) => separated_power_integral(e, p, weight_exp, d, res, cutoff),
        (Integrand::Symbolic(e), _) => {
            let nodes = nodes_for(domain, res, cutoff);
            Ok((power_integral(&|z| e.eval(z), p, weight_exp, &nodes)?, nodes.len()))
        }
        (Integrand::Closure(g), _) => {
            let nodes = nodes_for(domain, res, cutoff);
            Ok((power_integral(g, p, weight_exp, &nodes)?, nodes.len()))
        }
    }
}

fn nodes_for(domain: &NormDomain, res: AreaResolution, cutoff: Option<f64>) -> Vec<(Point2, f64)> {
    match domain {
        NormDomain::Product(d) => product_rule(d, res, cutoff),
        NormDomain::Hartogs(h) => hartogs_rule(cutoff.unwrap_or(h.epsilon), res),
    }
}

/// Lᵖ norm of `g`, weighted by |z₂|^{weight_exp}.
pub fn lp_norm(g: &Component, p: f64, domain: impl Into<NormDomain>, weight_exp: f64, opts: &NormOptions) -> Result<NormReport> {
    match g {
        Component::Symbolic(e) => lp_norm_impl(Integrand::Symbolic(e), e.has_laurent(), p, domain.into(), weight_exp, opts),
        Component::Sampled(_) => lp_norm_fn(&|z| g.eval(z), false, p, domain, weight_exp, opts),
    }
}

/// Lᵖ norm of a closure. `singular_at_origin` flags integrands that may
/// blow up as z₂ → 0.
pub fn lp_norm_fn(
    f: &(dyn Fn(Point2) -> Result<Complex64> + Sync),
    singular_at_origin: bool,
    p: f64,
    domain: impl Into<NormDomain>,
    weight_exp: f64,
    opts: &NormOptions,
) -> Result<NormReport> {
    lp_norm_impl(Integrand::Closure(f), singular_at_origin, p, domain.into(), weight_exp, opts)
}

fn lp_norm_impl(
    f: Integrand<'_>,
    singular_at_origin: bool,
    p: f64,
    domain: NormDomain,
    weight_exp: f64,
    opts: &NormOptions,
) -> Result<NormReport> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidArgument(format!("norm exponent must be >= 1, got {p}")));
    }
    if !weight_exp.is_finite() {
        return Err(Error::InvalidArgument("weight exponent must be finite".into()));
    }
    let singular = singular_at_origin || weight_exp < 0.0;

    // Decide whether the integral needs the cutoff convergence test.
    let needs_cutoff = match &domain {
        NormDomain::Product(d) => {
            let f2 = &d.factor2;
            if singular && f2.closure_contains_origin() {
                if f2.kind() == DomainKind::PuncturedDisc && f2.is_centered_at_origin() {
                    true
                } else {
                    return Err(Error::InvalidArgument(
                        "negative weight or Laurent integrand needs a factor2 that excludes z2 = 0".into(),
                    ));
                }
            } else {
                false
            }
        }
        NormDomain::Hartogs(h) => singular && h.epsilon == 0.0,
    };

    let eval_at = |res: AreaResolution| -> Result<(f64, f64, usize, Option<f64>)> {
        if needs_cutoff {
            let [eps_coarse, eps_fine] = opts.cutoffs;
            let (coarse, n_coarse) = integrand_power(f, p, weight_exp, &domain, res, Some(eps_coarse))?;
            let (fine, n_fine) = integrand_power(f, p, weight_exp, &domain, res, Some(eps_fine))?;
            if (fine - coarse).abs() > 1e-3 * fine.abs().max(f64::MIN_POSITIVE) {
                return Err(Error::DivergentWeight { coarse, fine, eps_coarse, eps_fine });
            }
            let trunc_err = (fine.powf(1.0 / p) - coarse.powf(1.0 / p)).abs();
            Ok((fine, trunc_err, n_coarse + n_fine, Some(eps_fine)))
        } else {
            let (integral, n) = integrand_power(f, p, weight_exp, &domain, res, None)?;
            let trunc = match domain {
                NormDomain::Hartogs(h) if h.epsilon > 0.0 => Some(h.epsilon),
                _ => None,
            };
            Ok((integral, 0.0, n, trunc))
        }
    };

    let (mut integral, mut trunc_err, mut nodes_used, truncation) = eval_at(opts.resolution)?;
    let mut value = integral.max(0.0).powf(1.0 / p);
    let mut est_error = trunc_err;
    if opts.refine {
        let base = value;
        let (i2, t2, n2, _) = eval_at(opts.resolution.refined())?;
        integral = i2;
        trunc_err = t2;
        nodes_used += n2;
        value = integral.max(0.0).powf(1.0 / p);
        est_error = (value - base).abs() + trunc_err;
    }
    Ok(NormReport {
        kind: if weight_exp == 0.0 { NormKind::Lp } else { NormKind::LpWeighted },
        p,
        weight_exp,
        value,
        est_error,
        nodes_used,
        truncation,
    })
}

/// ‖f‖_ℬ = ‖f₁‖_p + ‖f₂‖_p + ‖𝒟f‖_p on a product domain.
pub fn banach_norm(f: &OneForm, p: f64, domain: &ProductDomain, opts: &NormOptions) -> Result<NormReport> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidArgument(format!("norm exponent must be >= 1, got {p}")));
    }
    let d = f.script_d()?;
    let mut total =
        NormReport { kind: NormKind::BanachB, p, weight_exp: 0.0, value: 0.0, est_error: 0.0, nodes_used: 0, truncation: None };
    for g in [&f.f1, &f.f2, &d] {
        if g.is_zero() {
            continue;
        }
        let r = lp_norm(g, p, *domain, 0.0, opts)?;
        total.value += r.value;
        total.est_error += r.est_error;
        total.nodes_used += r.nodes_used;
        total.truncation = total.truncation.or(r.truncation);
    }
    Ok(total)
}
