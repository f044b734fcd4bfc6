//! The ∂̄ problem on the Hartogs triangle ℍ, moved to 𝔻 × 𝔻* through
//! φ(z) = (z₁/z₂, z₂), plus the weighted norms and canonical solutions
//! used to compare against it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{dbar_fd, integrate, lp_norm, lp_norm_fn, FormExpr, MonomialTerm, NormOptions, NormReport, OneForm, Var};
use crate::geometry::{hartogs_rule, product_rule, AreaResolution, HartogsDomain, Point2, ProductDomain};
use crate::solver::{solve_symbolic, solve_t, solve_t_terms, SolverConfig, TTerms};

/// α = α₁dz̄₁ + α₂dz̄₂ on ℍ. Negative z₂ powers are allowed.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HartogsForm {
    pub alpha1: FormExpr,
    pub alpha2: FormExpr,
}

impl HartogsForm {
    pub fn new(alpha1: FormExpr, alpha2: FormExpr) -> Self {
        HartogsForm { alpha1, alpha2 }
    }

    /// dz̄₂
    pub fn dzbar2() -> Self {
        Self::new(FormExpr::zero(), FormExpr::one())
    }

    /// ∂α₁/∂z̄₂ − ∂α₂/∂z̄₁
    pub fn defect(&self) -> FormExpr {
        &self.alpha1.dbar(Var::Z2) - &self.alpha2.dbar(Var::Z1)
    }

    pub fn is_closed(&self) -> bool {
        FormExpr::cancels(&self.alpha1.dbar(Var::Z2), &self.alpha2.dbar(Var::Z1))
    }

    pub fn is_zero(&self) -> bool {
        self.alpha1.is_zero() && self.alpha2.is_zero()
    }

    /// z̄₁α₁ + z̄₂α₂ = 0, up to round-off.
    pub fn extra_condition_holds(&self) -> bool {
        let zb1 = FormExpr::mono(1.0, 0, 1, 0, 0);
        let zb2 = FormExpr::mono(1.0, 0, 0, 0, 1);
        FormExpr::cancels(&(&zb1 * &self.alpha1), &-(&zb2 * &self.alpha2))
    }

    /// Change of variables z = φ⁻¹(w) without the closedness gate:
    /// f₁ = w̄₂·α̃₁, f₂ = w̄₁·α̃₁ + α̃₂ with α̃ⱼ = αⱼ∘φ⁻¹.
    pub fn substitute(&self) -> OneForm {
        let a1 = compose_phi_inv(&self.alpha1);
        let a2 = compose_phi_inv(&self.alpha2);
        let wb1 = FormExpr::mono(1.0, 0, 1, 0, 0);
        let wb2 = FormExpr::mono(1.0, 0, 0, 0, 1);
        OneForm::symbolic(&wb2 * &a1, &(&wb1 * &a1) + &a2)
    }

    /// The pulled-back form on 𝔻 × 𝔻*; refuses non-closed α.
    pub fn pullback(&self) -> Result<OneForm> {
        if !self.is_closed() {
            let defect = self.defect();
            return Err(Error::NotClosed { terms: defect.terms().len() });
        }
        Ok(self.substitute())
    }

    /// Parses `{"alpha1":[terms...],"alpha2":[terms...]}`.
    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s)?;
        let obj = v.as_object().ok_or_else(|| Error::Parse("Hartogs form JSON must be a JSON object".into()))?;
        for key in obj.keys() {
            if key != "alpha1" && key != "alpha2" {
                return Err(Error::Parse(format!("unknown key {key:?} in Hartogs form JSON")));
            }
        }
        let part = |key: &str| match obj.get(key) {
            Some(t) => FormExpr::from_json_value(t, true),
            None => Ok(FormExpr::zero()),
        };
        Ok(Self::new(part("alpha1")?, part("alpha2")?))
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({"alpha1": self.alpha1.to_json_value(), "alpha2": self.alpha2.to_json_value()}).to_string()
    }
}

/// z₁ᵖz̄₁^q z₂ʳz̄₂ˢ ↦ w₁ᵖw̄₁^q w₂^{p+r}w̄₂^{q+s}.
fn compose_phi_inv(e: &FormExpr) -> FormExpr {
    FormExpr::new(e.terms().iter().map(|t| MonomialTerm::new(t.coef, t.p1, t.q1, t.p1 as i32 + t.p2, t.q1 + t.q2)))
}

/// v = T(f)∘φ for the pulled-back form f.
#[derive(Debug)]
pub struct HartogsSolution {
    pub form: OneForm,
    /// u = T(f) in the w variables, when it has a closed form.
    pub symbolic: Option<FormExpr>,
    config: SolverConfig,
}

impl HartogsSolution {
    pub fn new(alpha: &HartogsForm, config: SolverConfig) -> Result<Self> {
        let form = alpha.pullback()?;
        let symbolic = solve_symbolic(&form, &ProductDomain::disc_times_punctured()).ok();
        Ok(HartogsSolution { form, symbolic, config })
    }

    /// v(z) for z ∈ ℍ.
    pub fn eval(&self, z: Point2) -> Result<Complex64> {
        check_in_hartogs(z)?;
        let w = HartogsDomain::phi(z);
        ProductDomain::disc_times_punctured().check_interior(w)?;
        match &self.symbolic {
            Some(u) => u.eval(w),
            None => solve_t(&self.form, &ProductDomain::disc_times_punctured(), w, &self.config),
        }
    }

    /// The three operator terms at φ(z).
    pub fn terms(&self, z: Point2) -> Result<TTerms> {
        check_in_hartogs(z)?;
        solve_t_terms(&self.form, &ProductDomain::disc_times_punctured(), HartogsDomain::phi(z), &self.config)
    }
}

fn check_in_hartogs(z: Point2) -> Result<()> {
    if HartogsDomain::full().contains(z) {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("({}, {}) is not in the Hartogs triangle", z[0], z[1])))
    }
}

/// v(z) = T(pullback α)(φ(z)) by the pointwise solver.
pub fn solve_hartogs(alpha: &HartogsForm, z: Point2, config: &SolverConfig) -> Result<Complex64> {
    check_in_hartogs(z)?;
    let f = alpha.pullback()?;
    solve_t(&f, &ProductDomain::disc_times_punctured(), HartogsDomain::phi(z), config)
}

/// Weighted data norms and the solution norm on ℍ_ε.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HartogsReport {
    pub p: f64,
    pub epsilon: f64,
    /// ‖α₁‖ in Lᵖ_{−2}
    pub alpha1: NormReport,
    /// ‖α₂‖ in Lᵖ_{−2}
    pub alpha2: NormReport,
    /// ‖∂α₁/∂z̄₁‖ in Lᵖ_{−1}
    pub d11: NormReport,
    /// ‖∂α₁/∂z̄₂‖ in Lᵖ_{−1}
    pub d12: NormReport,
    /// ‖∂α₂/∂z̄₁‖ in Lᵖ_{−1}; equals `d12` for closed α
    pub d21: NormReport,
    /// ‖v‖ in Lᵖ(ℍ_ε)
    pub v_norm: NormReport,
    /// ‖v‖ over the sum of the four data norms α₁, α₂, ∂α₁/∂z̄₁, ∂α₁/∂z̄₂
    pub ratio: Option<f64>,
}

/// Default truncation of ℍ for reports.
pub const DEFAULT_EPSILON: f64 = 1e-4;

pub fn hartogs_report(alpha: &HartogsForm, p: f64, epsilon: f64, opts: &NormOptions) -> Result<HartogsReport> {
    let dom = HartogsDomain::truncated(epsilon)?;
    let norm = |e: &FormExpr, s: f64| lp_norm(&e.clone().into(), p, dom, s, opts);
    let solution = HartogsSolution::new(alpha, SolverConfig::default())?;
    let v = |z: Point2| solution.eval(z);
    let laurent = solution.symbolic.as_ref().is_none_or(|u| u.has_laurent());
    let report = HartogsReport {
        p,
        epsilon,
        alpha1: norm(&alpha.alpha1, -2.0)?,
        alpha2: norm(&alpha.alpha2, -2.0)?,
        d11: norm(&alpha.alpha1.dbar(Var::Z1), -1.0)?,
        d12: norm(&alpha.alpha1.dbar(Var::Z2), -1.0)?,
        d21: norm(&alpha.alpha2.dbar(Var::Z1), -1.0)?,
        v_norm: lp_norm_fn(&v, laurent, p, dom, 0.0, opts)?,
        ratio: None,
    };
    let data = report.alpha1.value + report.alpha2.value + report.d11.value + report.d12.value;
    Ok(HartogsReport { ratio: (data > 0.0).then(|| report.v_norm.value / data), ..report })
}

/// (u, u_can) on 𝔻² for f = z₁ᵏdz̄₁:
/// u = z₁ᵏz̄₁ − z₁^{k−1} and u_can = z₁ᵏz̄₁ − (k/(k+1))z₁^{k−1}.
pub fn canonical_pair(k: u32, z: Point2) -> Result<(Complex64, Complex64)> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be a positive integer".into()));
    }
    if !ProductDomain::bidisc().contains(z) {
        return Err(Error::OutOfDomain(format!("({}, {}) is not in the bidisc", z[0], z[1])));
    }
    let lead = z[0].powu(k) * z[0].conj();
    let low = z[0].powu(k - 1);
    Ok((lead - low, lead - low * (k as f64 / (k as f64 + 1.0))))
}

/// u_can for f = z₁ᵏdz̄₁ as an expression.
pub fn canonical_expr(k: u32) -> FormExpr {
    &FormExpr::mono(1.0, k, 1, 0, 0) - &FormExpr::mono(k as f64 / (k as f64 + 1.0), k - 1, 0, 0, 0)
}

/// ⟨f, g⟩ = ∫ f·ḡ dV over the bidisc.
pub fn bidisc_inner(f: &FormExpr, g: &FormExpr, res: AreaResolution) -> Result<Complex64> {
    let nodes = product_rule(&ProductDomain::bidisc(), res, None);
    integrate(&|z| Ok(f.eval(z)? * g.eval(z)?.conj()), &nodes)
}

/// Inner products showing u_can ⟂ holomorphic monomials while u is not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalWitness {
    pub k: u32,
    /// (m, n, |⟨u_can, z₁ᵐz₂ⁿ⟩|) for m, n ≤ 2
    pub ucan_inner: Vec<(u32, u32, f64)>,
    pub max_ucan_inner: f64,
    /// ⟨u, 1⟩; nonzero, so T(f) is not the canonical solution
    pub u_inner_one: Complex64,
}

pub fn canonical_witness(k: u32, res: AreaResolution) -> Result<CanonicalWitness> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be a positive integer".into()));
    }
    let ucan = canonical_expr(k);
    let mut ucan_inner = Vec::new();
    for m in 0..=2 {
        for n in 0..=2 {
            ucan_inner.push((m, n, bidisc_inner(&ucan, &FormExpr::mono(1.0, m, 0, n as i32, 0), res)?.norm()));
        }
    }
    let u = &FormExpr::mono(1.0, k, 1, 0, 0) - &FormExpr::mono(1.0, k - 1, 0, 0, 0);
    Ok(CanonicalWitness {
        k,
        max_ucan_inner: ucan_inner.iter().map(|t| t.2).fold(0.0, f64::max),
        ucan_inner,
        u_inner_one: bidisc_inner(&u, &FormExpr::one(), res)?,
    })
}

/// v_can = z̄₂ − c·z₂⁻¹ on ℍ.
pub fn hartogs_canonical(z: Point2, c: f64) -> Result<Complex64> {
    check_in_hartogs(z)?;
    Ok(z[1].conj() - c / z[1])
}

/// v_can as an expression.
pub fn hartogs_canonical_expr(c: f64) -> FormExpr {
    &FormExpr::mono(1.0, 0, 0, 0, 1) - &FormExpr::mono(c, 0, 0, -1, 0)
}

/// c = ⟨z̄₂, z₂⁻¹⟩ / ‖z₂⁻¹‖² on ℍ, by quadrature; the value making
/// z̄₂ − c·z₂⁻¹ orthogonal to z₂⁻¹.
pub fn canonical_constant(res: AreaResolution) -> Result<f64> {
    let nodes = hartogs_rule(0.0, res);
    let num = integrate(&|z| Ok(z[1].conj() * (1.0 / z[1]).conj()), &nodes)?;
    let den = integrate(&|z| Ok(Complex64::new((1.0 / z[1]).norm_sqr(), 0.0)), &nodes)?;
    Ok((num / den).re)
}

/// Interior points of ℍ with |z₂| ∈ [r_min, r_max] and |z₁| ≤ 0.7|z₂|.
pub fn hartogs_grid(n: usize, r_min: f64, r_max: f64) -> Vec<Point2> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let r2 = r_min + (r_max - r_min) * (i as f64 + 0.5) / n as f64;
        let z2 = Complex64::from_polar(r2, 0.4 + golden * i as f64);
        for j in 0..n {
            let r1 = 0.7 * r2 * (j as f64 + 0.5) / n as f64;
            out.push([Complex64::from_polar(r1, 1.1 + golden * j as f64), z2]);
        }
    }
    out
}

/// Max over `points` of |∂v/∂z̄₁ − α₁| and |∂v/∂z̄₂ − α₂| by central differences.
pub fn hartogs_residual(
    v: &dyn Fn(Point2) -> Result<Complex64>,
    alpha: &HartogsForm,
    points: &[Point2],
    h: f64,
) -> Result<(f64, f64)> {
    let mut worst = (0.0f64, 0.0f64);
    for &z in points {
        let e1 = (dbar_fd(v, z, Var::Z1, h)? - alpha.alpha1.eval(z)?).norm();
        let e2 = (dbar_fd(v, z, Var::Z2, h)? - alpha.alpha2.eval(z)?).norm();
        worst = (worst.0.max(e1), worst.1.max(e2));
    }
    Ok(worst)
}

/// One row of the truncation sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationRow {
    pub epsilon: f64,
    /// ‖v‖ in Lᵖ(ℍ_ε) for v = T(f)∘φ
    pub v_norm: f64,
    /// ‖v_can‖ᵖ in Lᵖ(ℍ_ε)
    pub v_can_pow: f64,
}

/// ‖v‖ and ‖v_can‖ᵖ on ℍ_ε for α = dz̄₂ over a list of truncations.
pub fn truncation_sweep(p: f64, epsilons: &[f64], c: f64, opts: &NormOptions) -> Result<Vec<TruncationRow>> {
    let solution = HartogsSolution::new(&HartogsForm::dzbar2(), SolverConfig::default())?;
    let v_can: crate::forms::Component = hartogs_canonical_expr(c).into();
    epsilons
        .iter()
        .map(|&eps| {
            let dom = HartogsDomain::truncated(eps)?;
            let v = lp_norm_fn(&|z| solution.eval(z), false, p, dom, 0.0, opts)?;
            let vc = lp_norm(&v_can, p, dom, 0.0, opts)?;
            Ok(TruncationRow { epsilon: eps, v_norm: v.value, v_can_pow: vc.value.powf(p) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pullback_of_dzbar2() {
        let f = HartogsForm::dzbar2().pullback().unwrap();
        assert!(f.f1.is_zero());
        assert_eq!(f.f2.as_symbolic().unwrap(), &FormExpr::one());
    }

    #[test]
    fn extra_condition_collapses_second_component() {
        let g = FormExpr::new([MonomialTerm::new(c(0.5, -1.0), 2, 1, -3, 2)]);
        let alpha = HartogsForm::new(&FormExpr::mono(1.0, 0, 0, 0, 1) * &g, -(&FormExpr::mono(1.0, 0, 1, 0, 0) * &g));
        assert!(alpha.extra_condition_holds());
        assert!(alpha.substitute().f2.is_zero());
        assert!(!HartogsForm::dzbar2().extra_condition_holds());
        assert!(HartogsForm::default().extra_condition_holds());
        assert!(HartogsForm::new(FormExpr::mono(1.0, 0, 0, 0, 1), -FormExpr::mono(1.0, 0, 1, 0, 0)).extra_condition_holds());
    }

    #[test]
    fn non_closed_alpha_is_refused() {
        let alpha = HartogsForm::new(FormExpr::mono(1.0, 0, 1, 0, 1), FormExpr::zero());
        assert!(matches!(alpha.pullback(), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn pullback_preserves_closedness() {
        // α = ∂̄g for g = z₁z̄₁² z₂^{-2} z̄₂
        let g = FormExpr::mono(1.0, 1, 2, -2, 1);
        let alpha = HartogsForm::new(g.dbar(Var::Z1), g.dbar(Var::Z2));
        assert!(alpha.is_closed());
        assert!(alpha.pullback().unwrap().is_closed().unwrap());
    }

    #[test]
    fn solve_dzbar2() {
        let cfg = SolverConfig::default();
        let v = solve_hartogs(&HartogsForm::dzbar2(), [c(0.1, 0.0), c(0.5, 0.0)], &cfg).unwrap();
        assert!((v - c(0.5, 0.0)).norm() < 1e-12);
        let v = solve_hartogs(&HartogsForm::default(), [c(0.1, 0.0), c(0.5, 0.0)], &cfg).unwrap();
        assert_eq!(v, c(0.0, 0.0));
        assert!(matches!(solve_hartogs(&HartogsForm::dzbar2(), [c(0.5, 0.0), c(0.1, 0.0)], &cfg), Err(Error::OutOfDomain(_))));
        let s = HartogsSolution::new(&HartogsForm::dzbar2(), cfg).unwrap();
        assert_eq!(s.symbolic.as_ref().unwrap(), &FormExpr::mono(1.0, 0, 0, 0, 1));
    }

    #[test]
    fn report_for_dzbar2() {
        let r = hartogs_report(&HartogsForm::dzbar2(), 2.0, 0.0, &NormOptions::default()).unwrap();
        assert_eq!(r.alpha1.value, 0.0);
        assert_relative_eq!(r.alpha2.value, PI, max_relative = 1e-8);
        assert_eq!(r.d11.value + r.d12.value + r.d21.value, 0.0);
        assert_relative_eq!(r.v_norm.value, (PI * PI / 3.0).sqrt(), max_relative = 1e-10);
        assert_relative_eq!(r.ratio.unwrap(), (PI * PI / 3.0).sqrt() / PI, max_relative = 1e-8);
        let z = hartogs_report(&HartogsForm::default(), 2.0, DEFAULT_EPSILON, &NormOptions::default()).unwrap();
        assert_eq!(z.v_norm.value, 0.0);
        assert_eq!(z.ratio, None);
        let r6 = hartogs_report(&HartogsForm::dzbar2(), 6.0, DEFAULT_EPSILON, &NormOptions::default()).unwrap();
        assert!(r6.v_norm.value.is_finite() && r6.alpha2.value.is_finite());
    }

    #[test]
    fn canonical_pairs() {
        let (u, uc) = canonical_pair(1, [c(0.0, 0.0), c(0.3, 0.2)]).unwrap();
        assert_eq!((u, uc), (c(-1.0, 0.0), c(-0.5, 0.0)));
        let (u, uc) = canonical_pair(2, [c(0.5, 0.0), c(0.0, 0.0)]).unwrap();
        assert_relative_eq!(u.re, -0.375);
        assert_relative_eq!(uc.re, 0.125 - 2.0 / 3.0 * 0.5, max_relative = 1e-15);
        assert!(canonical_pair(1, [c(1.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn canonical_orthogonality() {
        for k in [1, 2, 4] {
            let w = canonical_witness(k, AreaResolution::default()).unwrap();
            assert!(w.max_ucan_inner < 1e-12, "{w:?}");
            assert!(w.u_inner_one.norm() > 0.1 || k > 1);
        }
        // ⟨z₁z̄₁ − 1, 1⟩ = π²/2 − π²
        let w = canonical_witness(1, AreaResolution::default()).unwrap();
        assert_relative_eq!(w.u_inner_one.re, -PI * PI / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn hartogs_canonical_values() {
        assert_relative_eq!(hartogs_canonical([c(0.0, 0.0), c(0.5, 0.0)], 0.5).unwrap().re, -0.5);
        let z = [c(0.1, 0.0), c(1.0 - 1e-6, 0.0)];
        assert!(hartogs_canonical(z, 0.5).unwrap().norm() <= 1.5);
        assert_eq!(hartogs_canonical(z, 0.0).unwrap(), z[1].conj());
        assert!(hartogs_canonical([c(0.5, 0.0), c(0.1, 0.0)], 0.5).is_err());
        assert_relative_eq!(canonical_constant(AreaResolution::default()).unwrap(), 0.5, max_relative = 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"alpha1":[{"coef":[1,0],"p1":0,"q1":0,"p2":-1,"q2":1}],"alpha2":[]}"#;
        let a = HartogsForm::from_json(s).unwrap();
        assert_eq!(HartogsForm::from_json(&a.to_json()).unwrap(), a);
        assert!(HartogsForm::from_json(r#"{"f1":[]}"#).is_err());
    }
}
