//! Planar domains, product domains, the Hartogs triangle and the quadrature
//! rules built on them.
//!
//! Every planar factor is a disc with an optional concentric hole: discs,
//! annuli and punctured discs. Area integrals over an annulus are taken as
//! the outer-disc integral minus the hole integral, which keeps every ray
//! from the evaluation point a single segment.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre_interval, trapezoid_angles, RadialRule};

/// A point of ℂ².
pub type Point2 = [Complex64; 2];

/// Evaluation points closer than this fraction of `r_outer` to a boundary
/// (or to a puncture) are rejected.
pub const MIN_INTERIOR_DISTANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    Disc,
    Annulus,
    PuncturedDisc,
}

/// A circle, used for the outer boundary and for annulus holes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
}

impl Circle {
    /// Distance from an interior point `z` to the circle along `e^{iθ}`.
    pub fn ray_exit(&self, z: Complex64, theta: f64) -> f64 {
        let d = z - self.center;
        let dir = Complex64::from_polar(1.0, theta);
        let b = (d.conj() * dir).re;
        let c = self.radius * self.radius - d.norm_sqr();
        -b + (b * b + c).max(0.0).sqrt()
    }

    pub fn point(&self, theta: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, theta)
    }
}

/// Disc, annulus or punctured disc in ℂ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPlanarDomain", into = "RawPlanarDomain")]
pub struct PlanarDomain {
    kind: DomainKind,
    center: Complex64,
    r_outer: f64,
    r_inner: f64,
}

#[derive(Serialize, Deserialize)]
struct RawPlanarDomain {
    kind: DomainKind,
    #[serde(default)]
    center: [f64; 2],
    r_outer: f64,
    #[serde(default)]
    r_inner: f64,
}

impl TryFrom<RawPlanarDomain> for PlanarDomain {
    type Error = Error;

    fn try_from(raw: RawPlanarDomain) -> Result<Self> {
        PlanarDomain::new(raw.kind, Complex64::new(raw.center[0], raw.center[1]), raw.r_outer, raw.r_inner)
    }
}

impl From<PlanarDomain> for RawPlanarDomain {
    fn from(d: PlanarDomain) -> Self {
        RawPlanarDomain { kind: d.kind, center: [d.center.re, d.center.im], r_outer: d.r_outer, r_inner: d.r_inner }
    }
}

impl PlanarDomain {
    pub fn new(kind: DomainKind, center: Complex64, r_outer: f64, r_inner: f64) -> Result<Self> {
        if !(r_outer.is_finite() && r_outer > 0.0) {
            return Err(Error::InvalidDomain(format!("r_outer must be positive, got {r_outer}")));
        }
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::InvalidDomain("center must be finite".into()));
        }
        match kind {
            DomainKind::Annulus if !(r_inner > 0.0 && r_inner < r_outer) => Err(Error::InvalidDomain(format!(
                "annulus needs 0 < r_inner < r_outer, got r_inner={r_inner}, r_outer={r_outer}"
            ))),
            DomainKind::Disc | DomainKind::PuncturedDisc if r_inner != 0.0 => {
                Err(Error::InvalidDomain(format!("{kind:?} must have r_inner = 0, got {r_inner}")))
            }
            _ => Ok(PlanarDomain { kind, center, r_outer, r_inner }),
        }
    }

    pub fn disc(center: Complex64, radius: f64) -> Result<Self> {
        Self::new(DomainKind::Disc, center, radius, 0.0)
    }

    pub fn annulus(center: Complex64, r_inner: f64, r_outer: f64) -> Result<Self> {
        Self::new(DomainKind::Annulus, center, r_outer, r_inner)
    }

    pub fn punctured_disc(center: Complex64, radius: f64) -> Result<Self> {
        Self::new(DomainKind::PuncturedDisc, center, radius, 0.0)
    }

    /// 𝔻
    pub fn unit_disc() -> Self {
        PlanarDomain { kind: DomainKind::Disc, center: Complex64::new(0.0, 0.0), r_outer: 1.0, r_inner: 0.0 }
    }

    /// 𝔻*
    pub fn punctured_unit_disc() -> Self {
        PlanarDomain { kind: DomainKind::PuncturedDisc, ..Self::unit_disc() }
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn r_outer(&self) -> f64 {
        self.r_outer
    }

    pub fn r_inner(&self) -> f64 {
        self.r_inner
    }

    pub fn outer(&self) -> Circle {
        Circle { center: self.center, radius: self.r_outer }
    }

    /// The removed hole of an annulus.
    pub fn hole(&self) -> Option<Circle> {
        (self.kind == DomainKind::Annulus).then_some(Circle { center: self.center, radius: self.r_inner })
    }

    pub fn puncture(&self) -> Option<Complex64> {
        (self.kind == DomainKind::PuncturedDisc).then_some(self.center)
    }

    pub fn is_centered_at_origin(&self) -> bool {
        self.center == Complex64::new(0.0, 0.0)
    }

    /// π(r_outer² − r_inner²); the puncture has measure zero.
    pub fn area(&self) -> f64 {
        PI * (self.r_outer * self.r_outer - self.r_inner * self.r_inner)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let d = (z - self.center).norm();
        match self.kind {
            DomainKind::Disc => d < self.r_outer,
            DomainKind::Annulus => d > self.r_inner && d < self.r_outer,
            DomainKind::PuncturedDisc => d > 0.0 && d < self.r_outer,
        }
    }

    /// Signed distance to the boundary circles (negative outside). The
    /// puncture is not counted; see [`PlanarDomain::puncture`].
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        let d = (z - self.center).norm();
        let outer = self.r_outer - d;
        match self.kind {
            DomainKind::Annulus => outer.min(d - self.r_inner),
            _ => outer,
        }
    }

    /// Smallest distance from `z` to anything excluded from the domain,
    /// including the puncture.
    pub fn clearance(&self, z: Complex64) -> f64 {
        let b = self.boundary_distance(z);
        match self.puncture() {
            Some(p) => b.min((z - p).norm()),
            None => b,
        }
    }

    /// Whether 0 lies in the closure of the domain.
    pub fn closure_contains_origin(&self) -> bool {
        let d = self.center.norm();
        match self.kind {
            DomainKind::Annulus => d >= self.r_inner && d <= self.r_outer,
            _ => d <= self.r_outer,
        }
    }

    /// Rejects points violating the interior-distance precondition.
    pub fn check_interior(&self, z: Complex64) -> Result<()> {
        let min_distance = MIN_INTERIOR_DISTANCE * self.r_outer;
        if let Some(p) = self.puncture() {
            if (z - p).norm() < min_distance {
                return Err(Error::PointAtPuncture(z));
            }
        }
        if !self.contains(z) || self.boundary_distance(z) < min_distance {
            return Err(Error::PointOnOrOutsideBoundary { z, min_distance });
        }
        Ok(())
    }
}

/// Product domain D₁ × D₂ ⊂ ℂ².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductDomain {
    pub factor1: PlanarDomain,
    pub factor2: PlanarDomain,
}

impl ProductDomain {
    pub fn new(factor1: PlanarDomain, factor2: PlanarDomain) -> Self {
        ProductDomain { factor1, factor2 }
    }

    /// 𝔻²
    pub fn bidisc() -> Self {
        Self::new(PlanarDomain::unit_disc(), PlanarDomain::unit_disc())
    }

    /// 𝔻 × 𝔻*
    pub fn disc_times_punctured() -> Self {
        Self::new(PlanarDomain::unit_disc(), PlanarDomain::punctured_unit_disc())
    }

    pub fn contains(&self, z: Point2) -> bool {
        self.factor1.contains(z[0]) && self.factor2.contains(z[1])
    }

    pub fn check_interior(&self, z: Point2) -> Result<()> {
        self.factor1.check_interior(z[0])?;
        self.factor2.check_interior(z[1])
    }

    pub fn volume(&self) -> f64 {
        self.factor1.area() * self.factor2.area()
    }

    pub fn swap(&self) -> Self {
        Self::new(self.factor2, self.factor1)
    }

    /// Parses `{"factor1": {...}, "factor2": {...}}` or a two-element array.
    pub fn from_json(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Named { factor1: PlanarDomain, factor2: PlanarDomain },
            Pair([PlanarDomain; 2]),
        }
        Ok(match serde_json::from_str::<Repr>(s)? {
            Repr::Named { factor1, factor2 } => Self::new(factor1, factor2),
            Repr::Pair([a, b]) => Self::new(a, b),
        })
    }
}

/// The Hartogs triangle ℍ = {|z₁| < |z₂| < 1}, optionally truncated to
/// ℍ_ε = {|z₁| < |z₂|, ε < |z₂| < 1}.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct HartogsDomain {
    pub epsilon: f64,
}

impl HartogsDomain {
    pub fn full() -> Self {
        HartogsDomain { epsilon: 0.0 }
    }

    pub fn truncated(epsilon: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::InvalidDomain(format!("truncation must lie in [0, 1), got {epsilon}")));
        }
        Ok(HartogsDomain { epsilon })
    }

    pub fn contains(&self, z: Point2) -> bool {
        let a = z[0].norm();
        let b = z[1].norm();
        a < b && b < 1.0 && b > self.epsilon
    }

    /// φ(z) = (z₁/z₂, z₂), mapping ℍ onto 𝔻 × 𝔻*.
    pub fn phi(z: Point2) -> Point2 {
        [z[0] / z[1], z[1]]
    }

    /// φ⁻¹(w) = (w₁w₂, w₂).
    pub fn phi_inv(w: Point2) -> Point2 {
        [w[0] * w[1], w[1]]
    }
}

/// Polar quadrature rule for area integrals against a 1/(ζ − z) kernel.
///
/// Nodes sit on rays from the singular centre, so the polar Jacobian
/// cancels the kernel. Weights carry the area element; hole contributions
/// of an annulus are negative.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularQuadRule {
    pub nodes: Vec<Complex64>,
    pub weights: Vec<f64>,
    pub center: Option<Complex64>,
    pub resolution: (usize, usize),
}

impl SingularQuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Desingularized rule on `domain` centred at the interior point `z`,
/// using the default radial rule.
pub fn build_singular_rule(domain: &PlanarDomain, z: Complex64, n_r: usize, n_theta: usize) -> Result<SingularQuadRule> {
    build_singular_rule_with(domain, z, n_r, n_theta, RadialRule::default())
}

pub fn build_singular_rule_with(
    domain: &PlanarDomain,
    z: Complex64,
    n_r: usize,
    n_theta: usize,
    radial: RadialRule,
) -> Result<SingularQuadRule> {
    if n_r == 0 || n_theta == 0 {
        return Err(Error::InvalidArgument("rule resolution must be positive".into()));
    }
    domain.check_interior(z)?;

    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    push_polar(&mut nodes, &mut weights, &domain.outer(), z, n_r, n_theta, radial, 1.0);
    if let Some(hole) = domain.hole() {
        push_polar(&mut nodes, &mut weights, &hole, hole.center, n_r, n_theta, radial, -1.0);
    }
    Ok(SingularQuadRule { nodes, weights, center: Some(z), resolution: (n_r, n_theta) })
}

/// Regular polar rule on a full disc (no singular point), centred at the
/// disc centre.
pub fn build_regular_rule(circle: &Circle, n_r: usize, n_theta: usize, radial: RadialRule) -> SingularQuadRule {
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    push_polar(&mut nodes, &mut weights, circle, circle.center, n_r, n_theta, radial, 1.0);
    SingularQuadRule { nodes, weights, center: None, resolution: (n_r, n_theta) }
}

#[allow(clippy::too_many_arguments)]
fn push_polar(
    nodes: &mut Vec<Complex64>,
    weights: &mut Vec<f64>,
    circle: &Circle,
    origin: Complex64,
    n_r: usize,
    n_theta: usize,
    radial: RadialRule,
    sign: f64,
) {
    let unit = radial.unit_nodes(n_r);
    let (angles, dt) = trapezoid_angles(n_theta);
    nodes.reserve(unit.len() * n_theta);
    weights.reserve(unit.len() * n_theta);
    for &theta in &angles {
        let reach = circle.ray_exit(origin, theta);
        let dir = Complex64::from_polar(1.0, theta);
        for &(s, w) in &unit {
            let r = reach * s;
            nodes.push(origin + dir * r);
            weights.push(sign * r * reach * w * dt);
        }
    }
}

/// Resolution of the regular (non-singular) rules used for norms and inner
/// products: `n_r` Gauss–Legendre nodes per radial interval, `n_theta`
/// trapezoid angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaResolution {
    pub n_r: usize,
    pub n_theta: usize,
}

impl Default for AreaResolution {
    fn default() -> Self {
        AreaResolution { n_r: 20, n_theta: 32 }
    }
}

impl AreaResolution {
    pub fn new(n_r: usize, n_theta: usize) -> Self {
        AreaResolution { n_r, n_theta }
    }

    /// One refinement step (×1.5 in each direction).
    pub fn refined(&self) -> Self {
        AreaResolution { n_r: (self.n_r * 3).div_ceil(2), n_theta: (self.n_theta * 3).div_ceil(2) }
    }
}

/// Radial nodes on `[a, b]`, with `dr` weights.
///
/// With `graded`, nodes are Gauss–Legendre in `t = ln r`, one panel per
/// decade, so they cluster geometrically towards `a`.
pub fn radial_nodes(a: f64, b: f64, n: usize, graded: bool) -> Vec<(f64, f64)> {
    if !graded || a <= 0.0 {
        return gauss_legendre_interval(n, a, b);
    }
    let (la, lb) = (a.ln(), b.ln());
    let panels = ((lb - la) / std::f64::consts::LN_10).ceil().max(1.0) as usize;
    let per = (n / 2).max(6);
    let h = (lb - la) / panels as f64;
    (0..panels)
        .flat_map(|j| gauss_legendre_interval(per, la + j as f64 * h, la + (j + 1) as f64 * h))
        .map(|(t, w)| {
            let r = t.exp();
            (r, w * r)
        })
        .collect()
}

/// Regular area rule on a planar factor, as `(node, weight)` pairs.
///
/// `cutoff` truncates a punctured disc to `cutoff < |ζ − c|` with graded
/// radial nodes; `None` integrates the full factor.
pub fn factor_rule(domain: &PlanarDomain, res: AreaResolution, cutoff: Option<f64>) -> Vec<(Complex64, f64)> {
    let (r_min, graded) = match (domain.kind(), cutoff) {
        (DomainKind::Annulus, _) => (domain.r_inner(), false),
        (DomainKind::PuncturedDisc, Some(eps)) if eps > 0.0 => (eps, true),
        _ => (0.0, false),
    };
    let radii = radial_nodes(r_min, domain.r_outer(), res.n_r, graded);
    polar_product(domain.center(), &radii, res.n_theta)
}

fn polar_product(center: Complex64, radii: &[(f64, f64)], n_theta: usize) -> Vec<(Complex64, f64)> {
    let (angles, dt) = trapezoid_angles(n_theta);
    let mut out = Vec::with_capacity(radii.len() * n_theta);
    for &theta in &angles {
        let dir = Complex64::from_polar(1.0, theta);
        for &(r, w) in radii {
            out.push((center + dir * r, w * r * dt));
        }
    }
    out
}

/// Tensor-product rule on a product domain.
pub fn product_rule(domain: &ProductDomain, res: AreaResolution, cutoff2: Option<f64>) -> Vec<(Point2, f64)> {
    let r1 = factor_rule(&domain.factor1, res, None);
    let r2 = factor_rule(&domain.factor2, res, cutoff2);
    let mut out = Vec::with_capacity(r1.len() * r2.len());
    for &(a, wa) in &r1 {
        for &(b, wb) in &r2 {
            out.push(([a, b], wa * wb));
        }
    }
    out
}

/// Rule on ℍ_ε, iterated as z₂ over {ε < |z₂| < 1} (graded when ε > 0)
/// and z₁ over the disc of radius |z₂|.
pub fn hartogs_rule(epsilon: f64, res: AreaResolution) -> Vec<(Point2, f64)> {
    let radii2 = radial_nodes(epsilon, 1.0, res.n_r, epsilon > 0.0);
    let outer2 = polar_product(Complex64::new(0.0, 0.0), &radii2, res.n_theta);
    let unit1 = polar_product(Complex64::new(0.0, 0.0), &gauss_legendre_interval(res.n_r, 0.0, 1.0), res.n_theta);
    let mut out = Vec::with_capacity(outer2.len() * unit1.len());
    for &(z2, w2) in &outer2 {
        let s = z2.norm();
        for &(u, w1) in &unit1 {
            out.push(([u * s, z2], w1 * s * s * w2));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn areas() {
        assert_relative_eq!(PlanarDomain::unit_disc().area(), PI);
        assert_relative_eq!(PlanarDomain::annulus(c(0.0, 0.0), 0.5, 1.0).unwrap().area(), 0.75 * PI);
        assert_relative_eq!(PlanarDomain::punctured_unit_disc().area(), PI);
    }

    #[test]
    fn invalid_domains_are_rejected() {
        assert!(PlanarDomain::disc(c(0.0, 0.0), 0.0).is_err());
        assert!(PlanarDomain::annulus(c(0.0, 0.0), 1.0, 0.5).is_err());
        assert!(PlanarDomain::annulus(c(0.0, 0.0), 0.0, 0.5).is_err());
        assert!(PlanarDomain::new(DomainKind::Disc, c(0.0, 0.0), 1.0, 0.3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"kind":"annulus","center":[0.5,-1],"r_outer":2,"r_inner":0.25}"#;
        let d: PlanarDomain = serde_json::from_str(s).unwrap();
        assert_eq!(d.kind(), DomainKind::Annulus);
        assert_eq!(d.center(), c(0.5, -1.0));
        let back: PlanarDomain = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
        let bad = r#"{"kind":"disc","center":[0,0],"r_outer":-1}"#;
        assert!(serde_json::from_str::<PlanarDomain>(bad).is_err());
    }

    #[test]
    fn product_domain_json_forms() {
        let named = r#"{"factor1":{"kind":"disc","r_outer":1},"factor2":{"kind":"punctured_disc","r_outer":1}}"#;
        let pair = r#"[{"kind":"disc","r_outer":1},{"kind":"punctured_disc","r_outer":1}]"#;
        assert_eq!(ProductDomain::from_json(named).unwrap(), ProductDomain::disc_times_punctured());
        assert_eq!(ProductDomain::from_json(pair).unwrap(), ProductDomain::disc_times_punctured());
    }

    #[test]
    fn singular_rule_weights_sum_to_area() {
        let d = PlanarDomain::unit_disc();
        let rule = build_singular_rule(&d, c(0.0, 0.0), 64, 64).unwrap();
        assert_relative_eq!(rule.weight_sum(), PI, max_relative = 1e-10);
        let rule = build_singular_rule(&d, c(0.5, 0.2), 32, 128).unwrap();
        assert_relative_eq!(rule.weight_sum(), PI, max_relative = 1e-10);
        let ann = PlanarDomain::annulus(c(0.2, 0.1), 0.3, 1.5).unwrap();
        let rule = build_singular_rule(&ann, c(1.0, 0.0), 16, 128).unwrap();
        assert_relative_eq!(rule.weight_sum(), ann.area(), max_relative = 1e-10);
    }

    #[test]
    fn singular_rule_errors() {
        let d = PlanarDomain::unit_disc();
        assert!(matches!(build_singular_rule(&d, c(1.0, 0.0), 8, 8), Err(Error::PointOnOrOutsideBoundary { .. })));
        assert!(matches!(build_singular_rule(&d, c(1.0 - 1e-8, 0.0), 8, 8), Err(Error::PointOnOrOutsideBoundary { .. })));
        let p = PlanarDomain::punctured_unit_disc();
        assert!(matches!(build_singular_rule(&p, c(0.0, 0.0), 8, 8), Err(Error::PointAtPuncture(_))));
        let a = PlanarDomain::annulus(c(0.0, 0.0), 0.5, 1.0).unwrap();
        assert!(build_singular_rule(&a, c(0.2, 0.0), 8, 8).is_err());
        assert!(build_singular_rule(&d, c(0.1, 0.0), 0, 8).is_err());
    }

    #[test]
    fn no_node_hits_the_singular_point() {
        let d = PlanarDomain::unit_disc();
        let z = c(-0.3, 0.6);
        for radial in [RadialRule::Midpoint, RadialRule::GaussPanels] {
            let rule = build_singular_rule_with(&d, z, 33, 17, radial).unwrap();
            assert!(rule.nodes.iter().all(|&n| (n - z).norm() > 0.0));
            assert!(rule.nodes.iter().all(|&n| d.contains(n) || (n.norm() - 1.0).abs() < 1e-12));
        }
    }

    #[test]
    fn regular_rules_integrate_area() {
        let res = AreaResolution::default();
        let ann = PlanarDomain::annulus(c(0.0, 0.0), 0.5, 1.0).unwrap();
        let s: f64 = factor_rule(&ann, res, None).iter().map(|p| p.1).sum();
        assert_relative_eq!(s, 0.75 * PI, max_relative = 1e-13);
        let s: f64 = factor_rule(&PlanarDomain::punctured_unit_disc(), res, Some(1e-6)).iter().map(|p| p.1).sum();
        assert_relative_eq!(s, PI * (1.0 - 1e-12), max_relative = 1e-12);
        let s: f64 = hartogs_rule(0.0, res).iter().map(|p| p.1).sum();
        assert_relative_eq!(s, PI * PI / 2.0, max_relative = 1e-13);
        let s: f64 = product_rule(&ProductDomain::bidisc(), AreaResolution::new(4, 4), None).iter().map(|p| p.1).sum();
        assert_relative_eq!(s, PI * PI, max_relative = 1e-13);
    }

    #[test]
    fn graded_radial_nodes_cluster_geometrically() {
        let nodes = radial_nodes(1e-8, 1.0, 12, true);
        let integral: f64 = nodes.iter().map(|(r, w)| w / r).sum();
        assert_relative_eq!(integral, 8.0 * std::f64::consts::LN_10, max_relative = 1e-12);
        assert!(nodes.iter().any(|(r, _)| *r < 1e-7));
    }

    #[test]
    fn hartogs_membership_and_phi() {
        let h = HartogsDomain::full();
        assert!(h.contains([c(0.1, 0.0), c(0.5, 0.0)]));
        assert!(!h.contains([c(0.5, 0.0), c(0.1, 0.0)]));
        assert!(!h.contains([c(0.0, 0.0), c(1.0, 0.0)]));
        let t = HartogsDomain::truncated(0.2).unwrap();
        assert!(!t.contains([c(0.0, 0.0), c(0.1, 0.0)]));
        let z = [c(0.1, -0.2), c(0.3, 0.4)];
        let w = HartogsDomain::phi(z);
        assert!(ProductDomain::disc_times_punctured().contains(w));
        let back = HartogsDomain::phi_inv(w);
        assert!((back[0] - z[0]).norm() < 1e-15 && (back[1] - z[1]).norm() < 1e-15);
    }
}
