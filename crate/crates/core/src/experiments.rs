//! Reproduction drivers: the L¹ counterexample gᴸ = Σ fᵏ, Lᵖ/ℬ bound
//! sweeps, the one-variable Cauchy Lᵖ property and the oracle convergence
//! suite, plus CSV/JSON emission.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cauchy::{cauchy_transform, exact_antiholo, exact_holo, monomial_transform_terms, Resolution};
use crate::convergence::{fit_order, ConvergenceFit};
use crate::error::{Error, Result};
use crate::forms::{banach_norm, lp_norm, lp_norm_fn, Component, FormExpr, MonomialTerm, NormOptions, OneForm, Var};
use crate::geometry::{AreaResolution, PlanarDomain, Point2, ProductDomain};
use crate::hartogs::HartogsForm;
use crate::quadrature::gauss_legendre_interval;
use crate::solver::{solve_symbolic, solve_t, SolutionField, SolverConfig};

/// fᵏ = ∂̄((1/k)|z₁z₂|^{2k}) = z₁ᵏz̄₁^{k−1}|z₂|^{2k} dz̄₁ + |z₁|^{2k}z₂ᵏz̄₂^{k−1} dz̄₂.
pub fn fk_form(k: u32) -> OneForm {
    assert!(k >= 1, "k must be positive");
    OneForm::symbolic(FormExpr::mono(1.0, k, k - 1, k as i32, k), FormExpr::mono(1.0, k, k, k as i32, k - 1))
}

/// gᴸ = f¹ + … + fᴸ.
pub fn g_l_form(l: u32) -> OneForm {
    let (mut a, mut b) = (FormExpr::zero(), FormExpr::zero());
    for k in 1..=l {
        let f = fk_form(k);
        a = &a + f.f1.as_symbolic().expect("symbolic");
        b = &b + f.f2.as_symbolic().expect("symbolic");
    }
    OneForm::symbolic(a, b)
}

/// H_L = 1 + 1/2 + … + 1/L.
pub fn harmonic(l: u32) -> f64 {
    (1..=l).map(|k| 1.0 / k as f64).sum()
}

/// T(gᴸ)(z) = Σ_{k≤L} (1/k)|z₁z₂|^{2k} − H_L, term by term.
pub fn tg_closed(l: u32, z: Point2) -> f64 {
    let t = (z[0] * z[1]).norm_sqr();
    (1..=l).map(|k| (t.powi(k as i32) - 1.0) / k as f64).sum()
}

/// T(gᴸ)(z) by linearity: the sum of the solver outputs for each fᵏ.
pub fn tg_solved(l: u32, z: Point2, cfg: &SolverConfig) -> Result<Complex64> {
    let d = ProductDomain::bidisc();
    (1..=l).map(|k| solve_t(&fk_form(k), &d, z, cfg)).sum()
}

/// ‖f₁ᵏ‖₁ = ‖f₂ᵏ‖₁ = 4π²/((2k+1)(2k+2)) on the bidisc.
pub fn fk_component_l1(k: u32) -> f64 {
    let k = k as f64;
    4.0 * PI * PI / ((2.0 * k + 1.0) * (2.0 * k + 2.0))
}

/// ‖gᴸ‖₁ = ‖g₁ᴸ‖₁ + ‖g₂ᴸ‖₁. The terms of each component share a phase, so
/// this is the sum of the per-term norms.
pub fn g_norm_closed(l: u32) -> f64 {
    (1..=l).map(|k| 2.0 * fk_component_l1(k)).sum()
}

/// sup_L ‖gᴸ‖₁ = 8π²(ln 2 − 1/2).
pub fn g_norm_limit() -> f64 {
    8.0 * PI * PI * (2f64.ln() - 0.5)
}

/// ‖T(gᴸ)‖₁ = π²H_L − Σ_{k≤L} π²/(k(k+1)²), since T(gᴸ) ≤ 0.
pub fn tg_norm_closed(l: u32) -> f64 {
    (1..=l).map(|k| PI * PI * (1.0 / k as f64 - 1.0 / (k as f64 * (k as f64 + 1.0).powi(2)))).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleRow {
    #[serde(rename = "L")]
    pub l: u32,
    #[serde(rename = "g_norm_L1")]
    pub g_norm_l1: f64,
    #[serde(rename = "Tg_norm_L1")]
    pub tg_norm_l1: f64,
    pub ratio: f64,
    #[serde(rename = "harmonic_HL")]
    pub harmonic_hl: f64,
    /// ‖gᴸ‖₁ by quadrature of the form itself.
    pub g_norm_quad: Option<f64>,
    /// ‖T(gᴸ)‖₁ by quadrature of the solver output.
    #[serde(rename = "Tg_norm_quad")]
    pub tg_norm_quad: Option<f64>,
}

impl CounterexampleRow {
    /// Largest relative gap between quadrature and closed form.
    pub fn max_rel_discrepancy(&self) -> Option<f64> {
        let g = (self.g_norm_quad? - self.g_norm_l1).abs() / self.g_norm_l1;
        let t = (self.tg_norm_quad? - self.tg_norm_l1).abs() / self.tg_norm_l1;
        Some(g.max(t))
    }
}

/// Rows L = 1..=l_max. With `cross_check`, both norms are also computed by
/// tensor Gauss–Legendre quadrature that is exact for the polynomial degree
/// of row L.
pub fn counterexample_table(l_max: u32, cross_check: bool) -> Result<Vec<CounterexampleRow>> {
    if l_max == 0 {
        return Err(Error::InvalidArgument("lmax must be at least 1".into()));
    }
    (1..=l_max)
        .into_par_iter()
        .map(|l| {
            let (g, t) = (g_norm_closed(l), tg_norm_closed(l));
            let (gq, tq) = if cross_check {
                let (a, b) = quadrature_norms(l)?;
                (Some(a), Some(b))
            } else {
                (None, None)
            };
            Ok(CounterexampleRow {
                l,
                g_norm_l1: g,
                tg_norm_l1: t,
                ratio: t / g,
                harmonic_hl: harmonic(l),
                g_norm_quad: gq,
                tg_norm_quad: tq,
            })
        })
        .collect()
}

fn quadrature_norms(l: u32) -> Result<(f64, f64)> {
    let d = ProductDomain::bidisc();
    let g = g_l_form(l);
    let u: Component = solve_symbolic(&g, &d)?.into();
    // Integrands are radial polynomials of degree 2L+1 in each |zⱼ|.
    let opts = NormOptions { resolution: AreaResolution::new(l as usize + 8, 4), refine: false, ..Default::default() };
    let gn = lp_norm(&g.f1, 1.0, d, 0.0, &opts)?.value + lp_norm(&g.f2, 1.0, d, 0.0, &opts)?.value;
    Ok((gn, lp_norm(&u, 1.0, d, 0.0, &opts)?.value))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationNormRow {
    #[serde(rename = "L")]
    pub l: u32,
    pub p: f64,
    /// ‖g₁ᴸ‖_p + ‖g₂ᴸ‖_p on the bidisc
    pub value: f64,
}

/// ‖g₁ᴸ‖_p + ‖g₂ᴸ‖_p. Both moduli depend only on (|z₁|, |z₂|), and
/// |g₁ᴸ| = |z₁||z₂|² Σ_{j<L} tʲ with t = |z₁z₂|², so the angular integrals
/// are done exactly and the radial square uses panels graded towards the
/// corner |z₁| = |z₂| = 1, where gᴸ concentrates.
pub fn truncation_norm(l: u32, p: f64) -> Result<f64> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidArgument(format!("norm exponent must be >= 1, got {p}")));
    }
    let mut radii: Vec<(f64, f64)> = gauss_legendre_interval(12, 0.0, 1e-10);
    let mut lo: f64 = 1e-10;
    while lo < 1.0 {
        let hi = (lo * 10.0).min(1.0);
        radii.extend(gauss_legendre_interval(12, lo, hi));
        lo = hi;
    }
    let radii: Vec<(f64, f64)> = radii.into_iter().map(|(s, w)| (1.0 - s, w)).collect();
    let integral: f64 = radii
        .par_iter()
        .map(|&(r1, w1)| {
            radii
                .iter()
                .map(|&(r2, w2)| {
                    let t = (r1 * r2).powi(2);
                    let s = (0..l).fold(0.0, |acc, _| acc * t + 1.0);
                    (r1 * r2 * r2 * s).powf(p) * r1 * r2 * w1 * w2
                })
                .sum::<f64>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    Ok(2.0 * (4.0 * PI * PI * integral).powf(1.0 / p))
}

pub fn truncation_norms(p: f64, ls: &[u32]) -> Result<Vec<TruncationNormRow>> {
    ls.iter().map(|&l| Ok(TruncationNormRow { l, p, value: truncation_norm(l, p)? })).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LpBoundReport {
    pub p: f64,
    /// ‖Tf‖_p at the refined grid
    pub tf_norm: f64,
    /// ‖Tf‖_p at the base grid
    pub tf_norm_coarse: f64,
    pub b_norm: f64,
    /// None when ‖f‖_ℬ = 0
    pub ratio: Option<f64>,
    pub ratio_coarse: Option<f64>,
    /// Tf came from the closed-form path rather than pointwise quadrature.
    pub symbolic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LpBoundOptions {
    /// Base polar grid per factor; the refined grid is 1.5× finer.
    pub resolution: AreaResolution,
    pub solver: SolverConfig,
}

impl Default for LpBoundOptions {
    fn default() -> Self {
        LpBoundOptions { resolution: AreaResolution::new(32, 32), solver: SolverConfig::default() }
    }
}

/// ‖Tf‖_p, ‖f‖_ℬ and their ratio.
pub fn lp_bound_report(f: &OneForm, domain: &ProductDomain, p: f64, opts: &LpBoundOptions) -> Result<LpBoundReport> {
    let b = banach_norm(f, p, domain, &NormOptions::default())?.value;
    let coarse = NormOptions { resolution: opts.resolution, refine: false, ..Default::default() };
    let fine = NormOptions { resolution: opts.resolution.refined(), ..coarse };
    let (tc, tf, symbolic) = match solve_symbolic(f, domain) {
        Ok(u) => {
            let g: Component = u.into();
            (lp_norm(&g, p, *domain, 0.0, &coarse)?.value, lp_norm(&g, p, *domain, 0.0, &fine)?.value, true)
        }
        Err(Error::SymbolicRequired | Error::NotRepresentable(_)) => {
            log::warn!("no closed form for Tf; sampling the pointwise solver on the norm grid");
            let field = SolutionField::new(f.clone(), *domain, opts.solver)?;
            let eval = |z: Point2| field.evaluate(z);
            (
                lp_norm_fn(&eval, false, p, *domain, 0.0, &coarse)?.value,
                lp_norm_fn(&eval, false, p, *domain, 0.0, &fine)?.value,
                false,
            )
        }
        Err(e) => return Err(e),
    };
    let ratio = |t: f64| (b > 0.0).then(|| t / b);
    Ok(LpBoundReport { p, tf_norm: tf, tf_norm_coarse: tc, b_norm: b, ratio: ratio(tf), ratio_coarse: ratio(tc), symbolic })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSweepEntry {
    pub trial: usize,
    pub form: serde_json::Value,
    pub report: LpBoundReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LpSweepMax {
    pub p: f64,
    pub max_ratio: f64,
    pub max_ratio_coarse: f64,
    /// |fine − coarse| / fine
    pub rel_change: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSweep {
    pub entries: Vec<LpSweepEntry>,
    pub maxima: Vec<LpSweepMax>,
}

impl LpSweep {
    /// Every ratio finite and every maximum within `tol` under refinement.
    pub fn is_stable(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| e.report.ratio.is_some_and(f64::is_finite)) && self.maxima.iter().all(|m| m.rel_change <= tol)
    }
}

/// Ratios ‖Tf‖_p/‖f‖_ℬ over `trials` random closed forms on `domain`.
pub fn lp_bound_sweep(trials: usize, ps: &[f64], seed: u64, domain: &ProductDomain, opts: &LpBoundOptions) -> Result<LpSweep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms: Vec<OneForm> = (0..trials).map(|_| random_closed_form(&mut rng)).collect();
    let mut entries = Vec::new();
    for (trial, f) in forms.iter().enumerate() {
        let form = serde_json::from_str(&f.to_json()?)?;
        for &p in ps {
            entries.push(LpSweepEntry {
                trial,
                form: serde_json::Value::clone(&form),
                report: lp_bound_report(f, domain, p, opts)?,
            });
        }
    }
    let maxima = ps
        .iter()
        .map(|&p| {
            let of_p = entries.iter().filter(|e| e.report.p == p);
            let max_ratio = of_p.clone().filter_map(|e| e.report.ratio).fold(0.0, f64::max);
            let max_ratio_coarse = of_p.filter_map(|e| e.report.ratio_coarse).fold(0.0, f64::max);
            let rel_change = if max_ratio > 0.0 { (max_ratio - max_ratio_coarse).abs() / max_ratio } else { 0.0 };
            LpSweepMax { p, max_ratio, max_ratio_coarse, rel_change }
        })
        .collect();
    Ok(LpSweep { entries, maxima })
}

fn random_coef(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// f = ∂̄g for g a sum of one to three monomials of partial degree ≤ 3;
/// never the zero form.
pub fn random_closed_form(rng: &mut impl Rng) -> OneForm {
    loop {
        let n = rng.gen_range(1..=3);
        let g = FormExpr::new((0..n).map(|_| {
            MonomialTerm::new(
                random_coef(rng),
                rng.gen_range(0..=3),
                rng.gen_range(0..=3),
                rng.gen_range(0..=3),
                rng.gen_range(0..=3),
            )
        }));
        let f = OneForm::symbolic(g.dbar(Var::Z1), g.dbar(Var::Z2));
        if !f.is_zero() {
            return f;
        }
    }
}

/// α = ∂̄g on ℍ with z₂ powers in −3..=3; never zero.
pub fn random_closed_hartogs(rng: &mut impl Rng) -> HartogsForm {
    loop {
        let n = rng.gen_range(1..=3);
        let g = FormExpr::new((0..n).map(|_| {
            MonomialTerm::new(
                random_coef(rng),
                rng.gen_range(0..=3),
                rng.gen_range(0..=3),
                rng.gen_range(-3..=3),
                rng.gen_range(0..=3),
            )
        }));
        let a = HartogsForm::new(g.dbar(Var::Z1), g.dbar(Var::Z2));
        if !a.is_zero() {
            return a;
        }
    }
}

/// K₁ applied to the z₁ dependence of `g`, with z₂ as a parameter.
pub fn k1_symbolic(g: &FormExpr, factor1: &PlanarDomain) -> Result<FormExpr> {
    let mut out = Vec::new();
    for t in g.terms() {
        let closed = monomial_transform_terms(t.p1 as i32, t.q1, factor1)?
            .ok_or_else(|| Error::NotRepresentable("factor is not centred at the origin".into()))?;
        for c in closed {
            let a = u32::try_from(c.a).map_err(|_| Error::NotRepresentable(format!("z1^{} has a negative power", c.a)))?;
            out.push(MonomialTerm::new(t.coef * c.coef, a, c.b, t.p2, t.q2));
        }
    }
    Ok(FormExpr::new(out))
}

/// ‖K₁g‖_p / ‖g‖_p on the bidisc; None when g = 0.
pub fn cauchy_lp_ratio(g: &FormExpr, p: f64, opts: &NormOptions) -> Result<Option<f64>> {
    let d = ProductDomain::bidisc();
    let den = lp_norm(&g.clone().into(), p, d, 0.0, opts)?.value;
    if den == 0.0 {
        return Ok(None);
    }
    let num = lp_norm(&k1_symbolic(g, &d.factor1)?.into(), p, d, 0.0, opts)?.value;
    Ok(Some(num / den))
}

/// Empirical stand-in for the Lᵖ bound on K₁ over product domains.
pub const CAUCHY_LP_BOUND: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CauchyLpReport {
    pub p: f64,
    pub trials: usize,
    pub ratios: Vec<f64>,
    pub max_ratio: Option<f64>,
    pub within_bound: bool,
}

/// Max of ‖K₁g‖_p/‖g‖_p over random single monomials g.
pub fn cauchy_lp_property(p: f64, trials: usize, seed: u64) -> Result<CauchyLpReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = NormOptions::default();
    let mut ratios = Vec::with_capacity(trials);
    for _ in 0..trials {
        let g = FormExpr::new([MonomialTerm::new(
            random_coef(&mut rng),
            rng.gen_range(0..=4),
            rng.gen_range(0..=4),
            rng.gen_range(0..=4),
            rng.gen_range(0..=4),
        )]);
        if let Some(r) = cauchy_lp_ratio(&g, p, &opts)? {
            ratios.push(r);
        }
    }
    let max_ratio = ratios.iter().copied().reduce(f64::max);
    Ok(CauchyLpReport { p, trials, within_bound: max_ratio.is_none_or(|m| m <= CAUCHY_LP_BOUND), ratios, max_ratio })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    /// g = ζ̄^{k−1}ζᵏ
    Antiholo,
    /// g = ζᵏ
    Holo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCase {
    pub kind: OracleKind,
    pub k: u32,
    pub z: [f64; 2],
    /// Relative errors, one per resolution.
    pub errors: Vec<f64>,
    pub fit: ConvergenceFit,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    /// n_r values; n_θ = 2n_r.
    pub resolutions: Vec<usize>,
    pub min_order: f64,
    pub max_final_error: f64,
    pub cases: Vec<OracleCase>,
    /// max |antiholo(1) − holo(1)| over random points
    pub identity_max_diff: f64,
    pub pass: bool,
}

pub const ORACLE_RESOLUTIONS: [usize; 4] = [32, 64, 128, 256];
pub const ORACLE_KS: [u32; 3] = [1, 2, 5];

pub fn oracle_points() -> [Complex64; 5] {
    [
        Complex64::new(0.3, 0.0),
        Complex64::new(0.6, 0.2),
        Complex64::new(0.0, -0.5),
        Complex64::new(-0.4, 0.4),
        Complex64::new(0.1, -0.7),
    ]
}

/// Numerical transforms against both exact oracles on the unit disc.
/// A case passes when its fitted order is ≥ 1.9 (or its errors reach the
/// round-off floor) and the errors at the two finest resolutions are ≤ 1e-4.
pub fn oracle_suite() -> Result<OracleReport> {
    const MIN_ORDER: f64 = 1.9;
    const MAX_ERR: f64 = 1e-4;
    let d = PlanarDomain::unit_disc();
    let mut specs = Vec::new();
    for kind in [OracleKind::Antiholo, OracleKind::Holo] {
        for k in ORACLE_KS {
            for z in oracle_points() {
                specs.push((kind, k, z));
            }
        }
    }
    let cases: Vec<OracleCase> = specs
        .into_par_iter()
        .map(|(kind, k, z)| {
            let exact = match kind {
                OracleKind::Antiholo => exact_antiholo(k, z)?,
                OracleKind::Holo => exact_holo(k, z)?,
            };
            let g = |w: Complex64| -> Result<Complex64> {
                Ok(match kind {
                    OracleKind::Antiholo => w.powu(k) * w.conj().powu(k - 1),
                    OracleKind::Holo => w.powu(k),
                })
            };
            let errors = ORACLE_RESOLUTIONS
                .iter()
                .map(|&n| Ok((cauchy_transform(g, &d, z, Resolution::new(n, 2 * n))? - exact).norm() / exact.norm().max(1e-300)))
                .collect::<Result<Vec<f64>>>()?;
            let ns: Vec<f64> = ORACLE_RESOLUTIONS.iter().map(|&n| n as f64).collect();
            let fit = fit_order(&ns, &errors);
            let pass = fit.passes(MIN_ORDER) && errors[errors.len() - 2..].iter().all(|&e| e <= MAX_ERR);
            Ok(OracleCase { kind, k, z: [z.re, z.im], errors, fit, pass })
        })
        .collect::<Result<_>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut identity_max_diff = 0.0f64;
    for _ in 0..10 {
        let z = Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..2.0 * PI));
        identity_max_diff = identity_max_diff.max((exact_antiholo(1, z)? - exact_holo(1, z)?).norm());
    }
    let pass = cases.iter().all(|c| c.pass) && identity_max_diff <= 1e-14;
    Ok(OracleReport {
        resolutions: ORACLE_RESOLUTIONS.to_vec(),
        min_order: MIN_ORDER,
        max_final_error: MAX_ERR,
        cases,
        identity_max_diff,
        pass,
    })
}

/// Writes serializable rows as CSV with a header.
pub fn write_csv<T: Serialize>(rows: &[T], path: impl AsRef<Path>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// One line of plot data: a point of ℂ² and a real value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridValue {
    pub re1: f64,
    pub im1: f64,
    pub re2: f64,
    pub im2: f64,
    pub value: f64,
}

impl GridValue {
    pub fn new(z: Point2, value: f64) -> Self {
        GridValue { re1: z[0].re, im1: z[0].im, re2: z[1].re, im2: z[1].im, value }
    }
}

/// Heatmap/residual data with header `re1,im1,re2,im2,value`.
pub fn write_grid_csv(rows: &[GridValue], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
