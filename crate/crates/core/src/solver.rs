//! The solution operator on a product domain D₁ × D₂,
//!
//! T(f) = K₂[f₂(z₁,·)](z₂) + K₁[f₁(·,z₂)](z₁) − (K₁⊗K₂)[𝒟f](z₁,z₂),
//!
//! its five-term boundary-integral variant, and finite-difference ∂̄
//! residuals.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Mutex;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cauchy::{cauchy_on_rule, monomial_transform, rule_for, Resolution};
use crate::error::{Error, Result};
use crate::forms::{dbar_fd, Component, FormExpr, MonomialTerm, OneForm, Var};
use crate::geometry::{factor_rule, AreaResolution, Circle, PlanarDomain, Point2, ProductDomain, SingularQuadRule};
use crate::quadrature::{gauss_legendre_interval, trapezoid_angles};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// How the one-variable transforms are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Closed forms for symbolic data on factors centred at 0, quadrature otherwise.
    #[default]
    Auto,
    /// Quadrature everywhere (still separating symbolic 𝒟f into 1D factors).
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub method: Method,
    /// 1D singular rules for the Cauchy transforms.
    pub resolution: Resolution,
    /// Per-factor rules of the 4D tensor quadrature used for sampled 𝒟f.
    pub tensor_resolution: Resolution,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { method: Method::Auto, resolution: Resolution::default(), tensor_resolution: Resolution::new(24, 48) }
    }
}

impl SolverConfig {
    pub fn quadrature() -> Self {
        SolverConfig { method: Method::Quadrature, ..Default::default() }
    }
}

/// Rejects symbolic forms that are not ∂̄-closed; sampled forms are trusted.
pub fn check_closed(f: &OneForm) -> Result<()> {
    match f.dbar_defect() {
        Ok(_) if f.is_closed()? => Ok(()),
        Ok(defect) => Err(Error::NotClosed { terms: defect.terms().len() }),
        Err(Error::SymbolicRequired) => {
            log::warn!("closedness of sampled form data is assumed, not checked");
            Ok(())
        }
        Err(e) => Err(e),
    }
}

/// The three terms of T(f) at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTerms {
    /// K₂[f₂(z₁,·)](z₂)
    pub k2_f2: Complex64,
    /// K₁[f₁(·,z₂)](z₁)
    pub k1_f1: Complex64,
    /// (K₁⊗K₂)[𝒟f](z), entering T with a minus sign
    pub tensor_d: Complex64,
}

impl TTerms {
    pub fn total(&self) -> Complex64 {
        self.k2_f2 + self.k1_f1 - self.tensor_d
    }
}

/// T(f)(z).
pub fn solve_t(f: &OneForm, domain: &ProductDomain, z: Point2, cfg: &SolverConfig) -> Result<Complex64> {
    Ok(solve_t_terms(f, domain, z, cfg)?.total())
}

/// T(f)(z), term by term.
pub fn solve_t_terms(f: &OneForm, domain: &ProductDomain, z: Point2, cfg: &SolverConfig) -> Result<TTerms> {
    domain.check_interior(z)?;
    check_closed(f)?;
    let d = f.script_d()?;
    let ev = Evaluator::new(domain, z, cfg);
    Ok(TTerms {
        k2_f2: ev.slice_transform(&f.f2, Var::Z2)?,
        k1_f1: ev.slice_transform(&f.f1, Var::Z1)?,
        tensor_d: ev.tensor_transform(&d)?,
    })
}

/// Lazily built per-point rules and monomial-transform caches.
struct Evaluator<'a> {
    domain: &'a ProductDomain,
    z: Point2,
    cfg: &'a SolverConfig,
    rules: [OnceLock<SingularQuadRule>; 2],
}

impl<'a> Evaluator<'a> {
    fn new(domain: &'a ProductDomain, z: Point2, cfg: &'a SolverConfig) -> Self {
        Evaluator { domain, z, cfg, rules: [OnceLock::new(), OnceLock::new()] }
    }

    fn factor(&self, j: usize) -> &PlanarDomain {
        if j == 0 {
            &self.domain.factor1
        } else {
            &self.domain.factor2
        }
    }

    fn rule(&self, j: usize) -> Result<&SingularQuadRule> {
        if let Some(r) = self.rules[j].get() {
            return Ok(r);
        }
        let r = rule_for(self.factor(j), self.z[j], self.cfg.resolution)?;
        Ok(self.rules[j].get_or_init(|| r))
    }

    fn closed_forms(&self, j: usize) -> bool {
        self.cfg.method == Method::Auto && self.factor(j).is_centered_at_origin()
    }

    /// K_j[ζ^a ζ̄^b](z_j).
    fn monomial(&self, j: usize, a: i32, b: u32) -> Result<Complex64> {
        if self.closed_forms(j) {
            if let Some(v) = monomial_transform(a, b, self.factor(j), self.z[j])? {
                return Ok(v);
            }
        }
        cauchy_on_rule(|w| Ok(w.powi(a) * w.conj().powu(b)), self.rule(j)?)
    }

    /// Transform in variable `var` of `g` with the other variable frozen at z.
    fn slice_transform(&self, g: &Component, var: Var) -> Result<Complex64> {
        if g.is_zero() {
            return Ok(ZERO);
        }
        let (j, other) = match var {
            Var::Z1 => (0, 1),
            Var::Z2 => (1, 0),
        };
        let z = self.z;
        let point = move |w: Complex64| if j == 0 { [w, z[1]] } else { [z[0], w] };
        match g {
            Component::Symbolic(e) if self.closed_forms(j) => {
                let mut acc = ZERO;
                for t in e.terms() {
                    let (a, b, frozen) = split_term(t, j, z[other])?;
                    acc += t.coef * frozen * self.monomial(j, a, b)?;
                }
                Ok(acc)
            }
            _ => cauchy_on_rule(|w| g.eval(point(w)), self.rule(j)?),
        }
    }

    fn tensor_transform(&self, d: &Component) -> Result<Complex64> {
        if d.is_zero() {
            return Ok(ZERO);
        }
        match d {
            Component::Symbolic(e) => {
                let mut cache: [HashMap<(i32, u32), Complex64>; 2] = [HashMap::new(), HashMap::new()];
                let mut acc = ZERO;
                for t in e.terms() {
                    let mut prod = t.coef;
                    for (j, key) in [(0, (t.p1 as i32, t.q1)), (1, (t.p2, t.q2))] {
                        let v = match cache[j].get(&key) {
                            Some(v) => *v,
                            None => {
                                let v = self.monomial(j, key.0, key.1)?;
                                cache[j].insert(key, v);
                                v
                            }
                        };
                        prod *= v;
                    }
                    acc += prod;
                }
                Ok(acc)
            }
            Component::Sampled(_) => {
                let res = self.cfg.tensor_resolution;
                let r1 = rule_for(&self.domain.factor1, self.z[0], res)?;
                let r2 = rule_for(&self.domain.factor2, self.z[1], res)?;
                let rows: Vec<Result<Complex64>> = r1
                    .nodes
                    .par_iter()
                    .zip(r1.weights.par_iter())
                    .map(|(&a, &wa)| {
                        let mut row = ZERO;
                        for (b, wb) in r2.iter() {
                            row += d.eval([a, b])? * wb / (b - self.z[1]);
                        }
                        Ok(row * wa / (a - self.z[0]))
                    })
                    .collect();
                let mut acc = ZERO;
                for r in rows {
                    acc += r?;
                }
                Ok(acc / (PI * PI))
            }
        }
    }
}

/// Splits a term into the exponents of variable `j` and the value of the
/// frozen other-variable factor.
fn split_term(t: &MonomialTerm, j: usize, other: Complex64) -> Result<(i32, u32, Complex64)> {
    if j == 0 {
        if t.p2 < 0 && other == ZERO {
            return Err(Error::LaurentPole { power: t.p2 });
        }
        Ok((t.p1 as i32, t.q1, other.powi(t.p2) * other.conj().powu(t.q2)))
    } else {
        Ok((t.p2, t.q2, other.powu(t.p1) * other.conj().powu(t.q1)))
    }
}

/// T(f) as an exact Laurent-monomial expression, for symbolic closed f on
/// factors centred at 0.
pub fn solve_symbolic(f: &OneForm, domain: &ProductDomain) -> Result<FormExpr> {
    use crate::cauchy::monomial_transform_terms;
    check_closed(f)?;
    let (Some(f1), Some(f2)) = (f.f1.as_symbolic(), f.f2.as_symbolic()) else {
        return Err(Error::SymbolicRequired);
    };
    let d = f.script_d()?;
    let d = d.as_symbolic().ok_or(Error::SymbolicRequired)?;
    let closed = |a: i32, b: u32, dom: &PlanarDomain| -> Result<Vec<crate::cauchy::ClosedTerm>> {
        monomial_transform_terms(a, b, dom)?.ok_or_else(|| Error::NotRepresentable("factor is not centred at the origin".into()))
    };
    let z1_power =
        |a: i32| -> Result<u32> { u32::try_from(a).map_err(|_| Error::NotRepresentable(format!("z1^{a} has a negative power"))) };
    let mut out = Vec::new();
    for t in f2.terms() {
        for c in closed(t.p2, t.q2, &domain.factor2)? {
            out.push(MonomialTerm::new(t.coef * c.coef, t.p1, t.q1, c.a, c.b));
        }
    }
    for t in f1.terms() {
        for c in closed(t.p1 as i32, t.q1, &domain.factor1)? {
            out.push(MonomialTerm::new(t.coef * c.coef, z1_power(c.a)?, c.b, t.p2, t.q2));
        }
    }
    for t in d.terms() {
        for c1 in closed(t.p1 as i32, t.q1, &domain.factor1)? {
            for c2 in closed(t.p2, t.q2, &domain.factor2)? {
                out.push(MonomialTerm::new(-t.coef * c1.coef * c2.coef, z1_power(c1.a)?, c1.b, c2.a, c2.b));
            }
        }
    }
    Ok(FormExpr::new(out))
}

/// u = T(f) as a memoizing pointwise field.
#[derive(Debug)]
pub struct SolutionField {
    form: OneForm,
    domain: ProductDomain,
    config: SolverConfig,
    cache: Mutex<HashMap<[u64; 4], Complex64>>,
}

impl SolutionField {
    pub fn new(form: OneForm, domain: ProductDomain, config: SolverConfig) -> Result<Self> {
        check_closed(&form)?;
        form.script_d()?;
        Ok(SolutionField { form, domain, config, cache: Mutex::new(HashMap::new()) })
    }

    pub fn form(&self) -> &OneForm {
        &self.form
    }

    pub fn domain(&self) -> &ProductDomain {
        &self.domain
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn evaluate(&self, z: Point2) -> Result<Complex64> {
        let key = [z[0].re.to_bits(), z[0].im.to_bits(), z[1].re.to_bits(), z[1].im.to_bits()];
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(*v);
        }
        let v = solve_t(&self.form, &self.domain, z, &self.config)?;
        self.cache.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }

    pub fn cached_points(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }
}

/// Resolution of the five-term boundary variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryConfig {
    /// Trapezoid nodes per boundary circle.
    pub n_bdry: usize,
    /// Singular area rules paired with the boundary integrals.
    pub area: Resolution,
    /// Trapezoid angles per factor in the 4D area term.
    pub n_angle: usize,
    /// Gauss–Legendre nodes in ρ and in each ψ piece of the 4D area term.
    pub n_radial: usize,
}

impl Default for BoundaryConfig {
    fn default() -> Self {
        BoundaryConfig { n_bdry: 256, area: Resolution::new(64, 128), n_angle: 64, n_radial: 16 }
    }
}

/// T(f)(z) through the five-term expression with boundary integrals over
/// D₁ × bD₂ and bD₁ × D₂ and the area term with kernel (ζ̄ⱼ − z̄ⱼ)/|ζ − z|⁴.
pub fn solve_t_boundary(f: &OneForm, domain: &ProductDomain, z: Point2, bcfg: &BoundaryConfig) -> Result<Complex64> {
    domain.check_interior(z)?;
    check_closed(f)?;
    if bcfg.n_bdry == 0 || bcfg.n_angle == 0 || bcfg.n_radial == 0 {
        return Err(Error::InvalidArgument("boundary resolution must be positive".into()));
    }
    if f.is_zero() {
        return Ok(ZERO);
    }
    let cfg = SolverConfig { method: Method::Quadrature, resolution: bcfg.area, ..Default::default() };
    let ev = Evaluator::new(domain, z, &cfg);
    let k2 = ev.slice_transform(&f.f2, Var::Z2)?;
    let k1 = ev.slice_transform(&f.f1, Var::Z1)?;
    let b2 = boundary_term(&f.f1, domain, z, 0, &ev, bcfg)?;
    let b1 = boundary_term(&f.f2, domain, z, 1, &ev, bcfg)?;
    let area = area_term(f, domain, z, bcfg)?;
    Ok(k2 + k1 + b2 + b1 + area)
}

/// (i/(2π²)) ∫_{D_j} ∮_{bD_k} g·(ζ̄_k − z̄_k)/((ζ_j − z_j)|ζ − z|²) dζ_k dA_j, k ≠ j.
fn boundary_term(
    g: &Component,
    domain: &ProductDomain,
    z: Point2,
    j: usize,
    ev: &Evaluator,
    bcfg: &BoundaryConfig,
) -> Result<Complex64> {
    if g.is_zero() {
        return Ok(ZERO);
    }
    let k = 1 - j;
    let other = if k == 0 { &domain.factor1 } else { &domain.factor2 };
    let mut circles: Vec<(Circle, f64)> = vec![(other.outer(), 1.0)];
    if let Some(h) = other.hole() {
        circles.push((h, -1.0));
    }
    let (angles, dphi) = trapezoid_angles(bcfg.n_bdry);
    let mut bnodes = Vec::with_capacity(circles.len() * angles.len());
    for (c, sign) in &circles {
        for &phi in &angles {
            let e = Complex64::from_polar(1.0, phi);
            // dζ = iρe^{iφ} dφ
            bnodes.push((c.center + c.radius * e, sign * Complex64::i() * c.radius * e * dphi));
        }
    }
    let rule = ev.rule(j)?;
    let rows: Vec<Result<Complex64>> = rule
        .nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(&a, &wa)| {
            let dj = a - z[j];
            let mut acc = ZERO;
            for &(b, db) in &bnodes {
                let dk = b - z[k];
                let mut p = [ZERO; 2];
                p[j] = a;
                p[k] = b;
                acc += g.eval(p)? * dk.conj() / (dj.norm_sqr() + dk.norm_sqr()) * db;
            }
            Ok(acc * wa / dj)
        })
        .collect();
    let mut acc = ZERO;
    for r in rows {
        acc += r?;
    }
    Ok(acc * Complex64::i() / (2.0 * PI * PI))
}

/// (1/π²) ∫∫ [f₁(ζ̄₁ − z̄₁) + f₂(ζ̄₂ − z̄₂)]/|ζ − z|⁴ dA₁ dA₂, with holes
/// handled by inclusion–exclusion.
fn area_term(f: &OneForm, domain: &ProductDomain, z: Point2, bcfg: &BoundaryConfig) -> Result<Complex64> {
    let integrand = |p: Point2| -> Result<Complex64> {
        let d1 = p[0] - z[0];
        let d2 = p[1] - z[1];
        let r2 = d1.norm_sqr() + d2.norm_sqr();
        Ok((f.f1.eval(p)? * d1.conj() + f.f2.eval(p)? * d2.conj()) / (r2 * r2))
    };
    let mut total = singular_4d(f, domain.factor1.outer(), domain.factor2.outer(), z, bcfg)?;
    let res = AreaResolution::new(2 * bcfg.n_radial, bcfg.n_angle);
    let disc_rule =
        |c: Circle| -> Result<Vec<(Complex64, f64)>> { Ok(factor_rule(&PlanarDomain::disc(c.center, c.radius)?, res, None)) };
    let pieces = [
        (domain.factor1.hole(), Some(domain.factor2.outer()), -1.0),
        (Some(domain.factor1.outer()), domain.factor2.hole(), -1.0),
        (domain.factor1.hole(), domain.factor2.hole(), 1.0),
    ];
    for (c1, c2, sign) in pieces {
        let (Some(c1), Some(c2)) = (c1, c2) else { continue };
        let (n1, n2) = (disc_rule(c1)?, disc_rule(c2)?);
        let rows: Vec<Result<Complex64>> = n1
            .par_iter()
            .map(|&(a, wa)| {
                let mut acc = ZERO;
                for &(b, wb) in &n2 {
                    acc += integrand([a, b])? * wb;
                }
                Ok(acc * wa)
            })
            .collect();
        for r in rows {
            total += sign * r?;
        }
    }
    Ok(total / (PI * PI))
}

/// ∫_{O₁×O₂} [f₁(ζ̄₁ − z̄₁) + f₂(ζ̄₂ − z̄₂)]/|ζ − z|⁴ over two full discs,
/// in coordinates ζⱼ = zⱼ + rⱼe^{iθⱼ}, r₁ = ρcosψ, r₂ = ρsinψ, where the
/// integrand becomes bounded.
fn singular_4d(f: &OneForm, o1: Circle, o2: Circle, z: Point2, bcfg: &BoundaryConfig) -> Result<Complex64> {
    let (angles, dt) = trapezoid_angles(bcfg.n_angle);
    let unit = gauss_legendre_interval(bcfg.n_radial, 0.0, 1.0);
    let rows: Vec<Result<Complex64>> = angles
        .par_iter()
        .map(|&t1| {
            let e1 = Complex64::from_polar(1.0, t1);
            let big1 = o1.ray_exit(z[0], t1);
            let mut row = ZERO;
            for &t2 in &angles {
                let e2 = Complex64::from_polar(1.0, t2);
                let big2 = o2.ray_exit(z[1], t2);
                let psi_star = big2.atan2(big1);
                for (lo, hi) in [(0.0, psi_star), (psi_star, FRAC_PI_2)] {
                    for &(s, ws) in &unit {
                        let psi = lo + (hi - lo) * s;
                        let (sn, cs) = psi.sin_cos();
                        let rho_max = if psi < psi_star { big1 / cs } else { big2 / sn };
                        let mut inner = ZERO;
                        for &(u, wu) in &unit {
                            let rho = rho_max * u;
                            let p = [z[0] + rho * cs * e1, z[1] + rho * sn * e2];
                            inner += (f.f1.eval(p)? * cs * e1.conj() + f.f2.eval(p)? * sn * e2.conj()) * wu;
                        }
                        row += inner * rho_max * cs * sn * ws * (hi - lo);
                    }
                }
            }
            Ok(row * dt * dt)
        })
        .collect();
    let mut acc = ZERO;
    for r in rows {
        acc += r?;
    }
    Ok(acc)
}

/// Interior evaluation grid: `n` points per factor, tensored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualGrid {
    pub n: usize,
    pub points: Vec<Point2>,
}

impl ResidualGrid {
    /// Per factor, `n` points on radii spread over the factor minus a
    /// `margin` band at every boundary and puncture, at golden-angle spacing.
    pub fn interior(domain: &ProductDomain, n: usize, margin: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("grid size must be positive".into()));
        }
        let f1 = factor_points(&domain.factor1, n, margin)?;
        let f2 = factor_points(&domain.factor2, n, margin)?;
        let points = f1.iter().flat_map(|&a| f2.iter().map(move |&b| [a, b])).collect();
        Ok(ResidualGrid { n, points })
    }
}

fn factor_points(d: &PlanarDomain, n: usize, margin: f64) -> Result<Vec<Complex64>> {
    let lo = match d.kind() {
        crate::geometry::DomainKind::Disc => 0.0,
        _ => d.r_inner() + margin,
    };
    let hi = d.r_outer() - margin;
    if hi.partial_cmp(&lo) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InvalidArgument(format!("margin {margin} leaves no interior in {d:?}")));
    }
    let golden = PI * (3.0 - 5f64.sqrt());
    Ok((0..n)
        .map(|j| {
            let r = lo + (hi - lo) * (j as f64 + 0.5) / n as f64;
            d.center() + Complex64::from_polar(r, 0.3 + golden * j as f64)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualSample {
    pub z: Point2,
    /// |∂u/∂z̄₁ − f₁|
    pub err1: f64,
    /// |∂u/∂z̄₂ − f₂|
    pub err2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub grid_n: usize,
    pub points: usize,
    pub h: f64,
    pub max_err: f64,
    pub l2_err: f64,
    pub max_err_z1: f64,
    pub max_err_z2: f64,
    pub samples: Vec<ResidualSample>,
}

/// Default finite-difference step: 1e-3 · min r_outer.
pub fn default_step(domain: &ProductDomain) -> f64 {
    1e-3 * domain.factor1.r_outer().min(domain.factor2.r_outer())
}

/// Compares central-difference ∂̄u with f on a grid, for u = T(f).
pub fn dbar_residual(field: &SolutionField, grid: &ResidualGrid, h: f64) -> Result<ResidualReport> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    let domain = field.domain();
    for z in &grid.points {
        for (j, d) in [&domain.factor1, &domain.factor2].into_iter().enumerate() {
            let min_distance = 5.0 * h;
            if !d.contains(z[j]) || d.clearance(z[j]) < min_distance {
                return Err(Error::GridTooCloseToBoundary { z: z[j], min_distance });
            }
        }
    }
    let form = field.form();
    let samples: Vec<Result<ResidualSample>> = grid
        .points
        .par_iter()
        .map(|&z| {
            let u = |w: Point2| field.evaluate(w);
            let e1 = (dbar_fd(&u, z, Var::Z1, h)? - form.f1.eval(z)?).norm();
            let e2 = (dbar_fd(&u, z, Var::Z2, h)? - form.f2.eval(z)?).norm();
            Ok(ResidualSample { z, err1: e1, err2: e2 })
        })
        .collect();
    let samples = samples.into_iter().collect::<Result<Vec<_>>>()?;
    let per_point = |s: &ResidualSample| s.err1.max(s.err2);
    Ok(ResidualReport {
        grid_n: grid.n,
        points: samples.len(),
        h,
        max_err: samples.iter().map(per_point).fold(0.0, f64::max),
        l2_err: samples.iter().map(|s| per_point(s).powi(2)).sum::<f64>().sqrt(),
        max_err_z1: samples.iter().map(|s| s.err1).fold(0.0, f64::max),
        max_err_z2: samples.iter().map(|s| s.err2).fold(0.0, f64::max),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn fk(k: u32) -> OneForm {
        OneForm::symbolic(FormExpr::mono(1.0, k, k - 1, k as i32, k), FormExpr::mono(1.0, k, k, k as i32, k - 1))
    }

    fn fk_exact(k: u32, z: Point2) -> Complex64 {
        let r = (z[0] * z[1]).norm_sqr();
        c((r.powi(k as i32) - 1.0) / k as f64, 0.0)
    }

    #[test]
    fn fk_closed_form() {
        let z = [c(0.5, 0.0), c(0.5, 0.0)];
        let v = solve_t(&fk(1), &ProductDomain::bidisc(), z, &SolverConfig::default()).unwrap();
        assert!((v - c(-0.9375, 0.0)).norm() < 1e-14);
        let z = [c(0.3, -0.2), c(-0.1, 0.6)];
        for k in [1, 2, 3, 5] {
            let auto = solve_t(&fk(k), &ProductDomain::bidisc(), z, &SolverConfig::default()).unwrap();
            assert!((auto - fk_exact(k, z)).norm() < 1e-13, "k={k}");
            let quad = solve_t(&fk(k), &ProductDomain::bidisc(), z, &SolverConfig::quadrature()).unwrap();
            assert!((quad - fk_exact(k, z)).norm() < 1e-6, "k={k}: {quad}");
        }
    }

    #[test]
    fn holomorphic_first_component() {
        // f = z₁² dz̄₁ → u = z₁²z̄₁ − z₁
        let f = OneForm::symbolic(FormExpr::mono(1.0, 2, 0, 0, 0), FormExpr::zero());
        let z = [c(0.5, 0.0), c(0.1, 0.7)];
        let v = solve_t(&f, &ProductDomain::bidisc(), z, &SolverConfig::default()).unwrap();
        assert!((v - c(-0.375, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn constant_on_punctured_factor() {
        let f = OneForm::symbolic(FormExpr::zero(), FormExpr::one());
        let z = [c(0.2, 0.0), c(0.0, 0.3)];
        for cfg in [SolverConfig::default(), SolverConfig::quadrature()] {
            let v = solve_t(&f, &ProductDomain::disc_times_punctured(), z, &cfg).unwrap();
            assert!((v - c(0.0, -0.3)).norm() < 1e-8);
        }
    }

    #[test]
    fn errors() {
        let dom = ProductDomain::bidisc();
        let cfg = SolverConfig::default();
        let bad = OneForm::symbolic(FormExpr::mono(1.0, 0, 0, 0, 1), FormExpr::zero());
        assert!(matches!(solve_t(&bad, &dom, [c(0.1, 0.0), c(0.1, 0.0)], &cfg), Err(Error::NotClosed { .. })));
        assert!(matches!(solve_t(&fk(1), &dom, [c(1.0, 0.0), c(0.1, 0.0)], &cfg), Err(Error::PointOnOrOutsideBoundary { .. })));
        let s = crate::forms::SampledFunction::new(|z| z[0], crate::forms::Smoothness::C1);
        let f = OneForm::new(s.into(), FormExpr::zero().into(), None).unwrap();
        assert_eq!(solve_t(&f, &dom, [c(0.1, 0.0), c(0.1, 0.0)], &cfg), Err(Error::MissingDerivativeData));
    }

    #[test]
    fn sampled_data_uses_tensor_quadrature() {
        // Sampled copy of f¹ with explicit 𝒟f = z₁z₂.
        let f1 = crate::forms::SampledFunction::new(|z| z[0] * z[1].norm_sqr(), crate::forms::Smoothness::C1);
        let f2 = crate::forms::SampledFunction::new(|z| z[1] * z[0].norm_sqr(), crate::forms::Smoothness::C1);
        let d = crate::forms::SampledFunction::new(|z| z[0] * z[1], crate::forms::Smoothness::C1);
        let f = OneForm::new(f1.into(), f2.into(), Some(d.into())).unwrap();
        let z = [c(0.2, 0.1), c(-0.3, 0.2)];
        let v = solve_t(&f, &ProductDomain::bidisc(), z, &SolverConfig::default()).unwrap();
        assert!((v - fk_exact(1, z)).norm() < 1e-8, "{v}");
    }

    #[test]
    fn symbolic_solution_matches_pointwise() {
        let dom = ProductDomain::new(PlanarDomain::unit_disc(), PlanarDomain::annulus(c(0.0, 0.0), 0.2, 1.0).unwrap());
        let f = fk(2).lincomb(c(1.0, 0.5), &OneForm::symbolic(FormExpr::zero(), FormExpr::mono(1.0, 1, 0, 0, 2)), c(-2.0, 0.0));
        let u = solve_symbolic(&f, &dom).unwrap();
        let z = [c(0.3, 0.1), c(0.0, -0.5)];
        let pointwise = solve_t(&f, &dom, z, &SolverConfig::default()).unwrap();
        assert!((u.eval(z).unwrap() - pointwise).norm() < 1e-13);
        let quad = solve_t(&f, &dom, z, &SolverConfig::quadrature()).unwrap();
        assert!((quad - pointwise).norm() < 1e-7);
        let want = FormExpr::new([MonomialTerm::new(c(0.5, 0.0), 2, 2, 2, 2), MonomialTerm::new(c(-0.5, 0.0), 0, 0, 0, 0)]);
        assert_eq!(solve_symbolic(&fk(2), &ProductDomain::bidisc()).unwrap(), want);
    }

    #[test]
    fn boundary_variant_agrees() {
        let dom = ProductDomain::bidisc();
        let z = [c(0.5, 0.0), c(0.5, 0.0)];
        let v = solve_t_boundary(&fk(1), &dom, z, &BoundaryConfig::default()).unwrap();
        assert!((v - c(-0.9375, 0.0)).norm() < 1e-3, "{v}");
        let f = OneForm::symbolic(FormExpr::mono(1.0, 1, 0, 0, 0), FormExpr::zero());
        let v = solve_t_boundary(&f, &dom, [c(0.0, 0.0), c(0.0, 0.0)], &BoundaryConfig::default()).unwrap();
        assert!((v - c(-1.0, 0.0)).norm() < 1e-3, "{v}");
        let v = solve_t_boundary(&OneForm::zero(), &dom, z, &BoundaryConfig::default()).unwrap();
        assert_eq!(v, ZERO);
    }

    #[test]
    fn boundary_variant_on_annulus() {
        let dom = ProductDomain::new(
            PlanarDomain::annulus(c(0.0, 0.0), 0.3, 1.0).unwrap(),
            PlanarDomain::disc(c(0.1, 0.0), 1.0).unwrap(),
        );
        let z = [c(0.1, 0.6), c(0.3, -0.2)];
        let f = fk(1);
        let want = solve_t(&f, &dom, z, &SolverConfig::default()).unwrap();
        let got = solve_t_boundary(&f, &dom, z, &BoundaryConfig::default()).unwrap();
        assert!((want - got).norm() < 1e-3, "{want} vs {got}");
    }

    #[test]
    fn residual_on_zero_form_is_zero() {
        let field = SolutionField::new(OneForm::zero(), ProductDomain::bidisc(), SolverConfig::default()).unwrap();
        let grid = ResidualGrid::interior(field.domain(), 4, 0.1).unwrap();
        let r = dbar_residual(&field, &grid, 1e-3).unwrap();
        assert_eq!(r.max_err, 0.0);
        assert_eq!(r.points, 16);
    }

    #[test]
    fn residual_grid_must_keep_clear_of_boundary() {
        let field = SolutionField::new(fk(1), ProductDomain::disc_times_punctured(), SolverConfig::default()).unwrap();
        let grid = ResidualGrid { n: 1, points: vec![[c(0.1, 0.0), c(0.003, 0.0)]] };
        assert!(matches!(dbar_residual(&field, &grid, 1e-3), Err(Error::GridTooCloseToBoundary { .. })));
        let grid = ResidualGrid::interior(field.domain(), 3, 0.05).unwrap();
        let r = dbar_residual(&field, &grid, 1e-3).unwrap();
        assert!(r.max_err < 1e-5);
        assert!(r.max_err >= r.l2_err / (r.points as f64).sqrt());
    }

    #[test]
    fn memoization_counts_points() {
        let field = SolutionField::new(fk(1), ProductDomain::bidisc(), SolverConfig::default()).unwrap();
        let z = [c(0.1, 0.2), c(0.3, 0.0)];
        let a = field.evaluate(z).unwrap();
        let b = field.evaluate(z).unwrap();
        assert_eq!(a, b);
        assert_eq!(field.cached_points(), 1);
    }
}
