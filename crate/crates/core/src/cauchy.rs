//! The planar solid Cauchy transform
//! K[g](z) = −(1/π) ∫_D g(ζ)/(ζ − z) dA(ζ),
//! by desingularized polar quadrature and by closed forms on monomials.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{build_singular_rule_with, DomainKind, PlanarDomain, SingularQuadRule};
use crate::quadrature::RadialRule;

/// Quadrature resolution for one Cauchy transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub n_r: usize,
    pub n_theta: usize,
    #[serde(default)]
    pub radial: RadialRule,
}

impl Default for Resolution {
    fn default() -> Self {
        Resolution { n_r: 128, n_theta: 256, radial: RadialRule::GaussPanels }
    }
}

impl Resolution {
    pub fn new(n_r: usize, n_theta: usize) -> Self {
        Resolution { n_r, n_theta, radial: RadialRule::default() }
    }

    pub fn doubled(&self) -> Self {
        Resolution { n_r: 2 * self.n_r, n_theta: 2 * self.n_theta, radial: self.radial }
    }
}

/// Builds the singular rule for `z` at this resolution.
pub fn rule_for(domain: &PlanarDomain, z: Complex64, res: Resolution) -> Result<SingularQuadRule> {
    build_singular_rule_with(domain, z, res.n_r, res.n_theta, res.radial)
}

/// K[g](z) on a prebuilt rule centred at `z`.
pub fn cauchy_on_rule(g: impl Fn(Complex64) -> Result<Complex64>, rule: &SingularQuadRule) -> Result<Complex64> {
    let z = rule.center.ok_or_else(|| Error::InvalidArgument("rule has no singular centre".into()))?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (zeta, w) in rule.iter() {
        acc += g(zeta)? * w / (zeta - z);
    }
    Ok(-acc / PI)
}

/// Quadrature approximation of K[g](z).
pub fn cauchy_transform(
    g: impl Fn(Complex64) -> Result<Complex64>,
    domain: &PlanarDomain,
    z: Complex64,
    res: Resolution,
) -> Result<Complex64> {
    cauchy_on_rule(g, &rule_for(domain, z, res)?)
}

/// K[g](z) at `res.doubled()`, with |K_doubled − K| as the error estimate.
pub fn cauchy_transform_with_error(
    g: impl Fn(Complex64) -> Result<Complex64>,
    domain: &PlanarDomain,
    z: Complex64,
    res: Resolution,
) -> Result<(Complex64, f64)> {
    let coarse = cauchy_transform(&g, domain, z, res)?;
    let fine = cauchy_transform(&g, domain, z, res.doubled())?;
    Ok((fine, (fine - coarse).norm()))
}

fn check_oracle_args(k: u32, z: Complex64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be a positive integer".into()));
    }
    if z.norm() >= 1.0 {
        return Err(Error::OutOfDomain(format!("|z| = {} is not < 1", z.norm())));
    }
    Ok(())
}

/// K[ζ̄^{k−1}ζᵏ](z) = (|z|^{2k} − 1)/k on the unit disc.
pub fn exact_antiholo(k: u32, z: Complex64) -> Result<Complex64> {
    check_oracle_args(k, z)?;
    Ok(Complex64::new((z.norm_sqr().powi(k as i32) - 1.0) / k as f64, 0.0))
}

/// K[ζᵏ](z) = zᵏz̄ − z^{k−1} on the unit disc.
pub fn exact_holo(k: u32, z: Complex64) -> Result<Complex64> {
    check_oracle_args(k, z)?;
    Ok(z.powu(k) * z.conj() - z.powu(k - 1))
}

/// One term `coef · z^a z̄^b` of a closed-form transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedTerm {
    pub coef: Complex64,
    pub a: i32,
    pub b: u32,
}

/// K[ζ^a ζ̄^b] as a Laurent polynomial in (z, z̄) on a domain centred at 0.
///
/// Stokes' theorem on the outer circle and on the hole (or a vanishing
/// circle around the puncture) gives
/// (z^a z̄^{b+1} − [a ≥ b+1] R^{2b+2} z^{a−b−1} − [a ≤ b] r^{2b+2} z^{a−b−1})/(b+1).
/// Returns `None` for off-centre domains.
pub fn monomial_transform_terms(a: i32, b: u32, domain: &PlanarDomain) -> Result<Option<Vec<ClosedTerm>>> {
    if !domain.is_centered_at_origin() {
        return Ok(None);
    }
    // |ζ|^{a+b} is area-integrable at 0 only if a + b > −2.
    if domain.kind() != DomainKind::Annulus && a + (b as i32) <= -2 {
        return Err(Error::NonIntegrable { a, b });
    }
    let b1 = b as f64 + 1.0;
    let shift = a - b as i32 - 1;
    let mut terms = vec![ClosedTerm { coef: Complex64::new(1.0 / b1, 0.0), a, b: b + 1 }];
    let radius = if a > b as i32 { domain.r_outer() } else { domain.r_inner() };
    if radius > 0.0 {
        let c = -radius.powi(2 * b as i32 + 2) / b1;
        terms.push(ClosedTerm { coef: Complex64::new(c, 0.0), a: shift, b: 0 });
    }
    Ok(Some(terms))
}

/// Evaluates `K[ζ^a ζ̄^b](z)` in closed form; `None` for off-centre domains.
pub fn monomial_transform(a: i32, b: u32, domain: &PlanarDomain, z: Complex64) -> Result<Option<Complex64>> {
    domain.check_interior(z)?;
    Ok(monomial_transform_terms(a, b, domain)?.map(|terms| terms.iter().map(|t| t.coef * z.powi(t.a) * z.conj().powu(t.b)).sum()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn one(_: Complex64) -> Result<Complex64> {
        Ok(c(1.0, 0.0))
    }

    #[test]
    fn oracle_values() {
        assert_eq!(exact_antiholo(1, c(0.0, 0.0)).unwrap(), c(-1.0, 0.0));
        assert_relative_eq!(exact_antiholo(2, c(0.5, 0.0)).unwrap().re, -0.46875);
        assert!(exact_antiholo(3, c(1.0 - 1e-12, 0.0)).unwrap().norm() < 1e-10);
        assert_eq!(exact_holo(1, c(0.0, 0.0)).unwrap(), c(-1.0, 0.0));
        assert_relative_eq!(exact_holo(2, c(0.5, 0.0)).unwrap().re, -0.375);
        assert_relative_eq!(exact_holo(1, c(0.0, 0.7)).unwrap().re, -0.51, epsilon = 1e-15);
        assert!(matches!(exact_holo(1, c(1.0, 0.0)), Err(Error::OutOfDomain(_))));
        assert!(exact_antiholo(0, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn quadrature_examples() {
        let d = PlanarDomain::unit_disc();
        let res = Resolution::default();
        let v = cauchy_transform(Ok, &d, c(0.0, 0.0), res).unwrap();
        assert!((v - c(-1.0, 0.0)).norm() < 1e-10);
        let v = cauchy_transform(one, &d, c(0.5, 0.0), Resolution::new(64, 128)).unwrap();
        assert!((v - c(0.5, 0.0)).norm() < 1e-4);
        let v = cauchy_transform(|z| Ok(z * z), &d, c(0.5, 0.0), res).unwrap();
        assert!((v - c(-0.375, 0.0)).norm() < 1e-10);
        assert!(matches!(cauchy_transform(one, &d, c(0.0, 1.0), res), Err(Error::PointOnOrOutsideBoundary { .. })));
    }

    #[test]
    fn closed_form_matches_oracles_and_quadrature() {
        let d = PlanarDomain::unit_disc();
        let z = c(0.3, -0.4);
        for k in 1..6 {
            let a = monomial_transform(k, k as u32 - 1, &d, z).unwrap().unwrap();
            assert!((a - exact_antiholo(k as u32, z).unwrap()).norm() < 1e-14);
            let h = monomial_transform(k, 0, &d, z).unwrap().unwrap();
            assert!((h - exact_holo(k as u32, z).unwrap()).norm() < 1e-14);
        }
        let ann = PlanarDomain::annulus(c(0.0, 0.0), 0.3, 1.2).unwrap();
        let pd = PlanarDomain::punctured_disc(c(0.0, 0.0), 0.9).unwrap();
        let z = c(0.5, 0.35);
        for (a, b) in [(0, 0), (1, 0), (0, 2), (3, 1), (2, 2), (-1, 0), (-1, 3), (-3, 1), (4, 0)] {
            for dom in [ann, pd] {
                let closed = match monomial_transform(a, b, &dom, z) {
                    Ok(v) => v.unwrap(),
                    Err(Error::NonIntegrable { .. }) => {
                        assert!(dom.kind() == DomainKind::PuncturedDisc && a + b as i32 <= -2);
                        continue;
                    }
                    Err(e) => panic!("{e}"),
                };
                // Laurent integrands are singular at 0, away from the rule centre.
                let (quad, tol) = if a >= 0 {
                    let g = |w: Complex64| Ok(w.powi(a) * w.conj().powu(b));
                    (cauchy_transform(g, &dom, z, Resolution::default()).unwrap(), 1e-7)
                } else {
                    (centred_oracle(a, b, &dom, z), 1e-4)
                };
                assert!((closed - quad).norm() < tol * (1.0 + closed.norm()), "a={a} b={b} {dom:?}: {closed} vs {quad}");
            }
        }
        let off = PlanarDomain::disc(c(0.1, 0.0), 1.0).unwrap();
        assert_eq!(monomial_transform(1, 0, &off, z).unwrap(), None);
    }

    /// Polar Gauss–Legendre about 0 (where ζ^a ζ̄^b may blow up) applied to
    /// (g(ζ) − g(z))/(ζ − z), plus g(z)·K[1](z).
    fn centred_oracle(a: i32, b: u32, dom: &PlanarDomain, z: Complex64) -> Complex64 {
        let g = |w: Complex64| w.powi(a) * w.conj().powu(b);
        let k1 = z.conj() - dom.r_inner().powi(2) / z;
        let (n_r, n_t) = (600, 1200);
        let mut acc = c(0.0, 0.0);
        for (r, wr) in crate::quadrature::gauss_legendre_interval(n_r, dom.r_inner(), dom.r_outer()) {
            for j in 0..n_t {
                let w = Complex64::from_polar(r, 2.0 * PI * (j as f64 + 0.5) / n_t as f64);
                acc += (g(w) - g(z)) / (w - z) * wr * r * 2.0 * PI / n_t as f64;
            }
        }
        -acc / PI + g(z) * k1
    }

    #[test]
    fn annulus_constant_transform() {
        // K[1] on an annulus centred at 0 is z̄ − r²/z.
        let ann = PlanarDomain::annulus(c(0.0, 0.0), 0.3, 1.0).unwrap();
        let z = c(0.2, 0.55);
        let v = cauchy_transform(one, &ann, z, Resolution::default()).unwrap();
        assert!((v - (z.conj() - 0.09 / z)).norm() < 1e-8);
    }

    #[test]
    fn error_estimate_is_small_for_smooth_data() {
        let d = PlanarDomain::unit_disc();
        let (v, err) = cauchy_transform_with_error(|z| Ok(z.conj() * z * z), &d, c(0.3, 0.0), Resolution::new(32, 64)).unwrap();
        assert!((v - exact_antiholo(2, c(0.3, 0.0)).unwrap()).norm() < 1e-8);
        assert!(err < 1e-6);
    }
}
