//! Finite sums of Laurent monomials `c · z₁^{p1} z̄₁^{q1} z₂^{p2} z̄₂^{q2}`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;

/// Coefficients smaller than this in magnitude are dropped.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

/// Relative tolerance for identities that hold up to round-off (closedness, cancellation).
pub const IDENTITY_TOL: f64 = 1e-12;

/// Which complex variable a derivative acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Z1,
    Z2,
}

/// `coef · z₁^{p1} z̄₁^{q1} z₂^{p2} z̄₂^{q2}`; only the z₂ power may be negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonomialTerm {
    pub coef: Complex64,
    pub p1: u32,
    pub q1: u32,
    pub p2: i32,
    pub q2: u32,
}

impl MonomialTerm {
    pub fn new(coef: Complex64, p1: u32, q1: u32, p2: i32, q2: u32) -> Self {
        MonomialTerm { coef, p1, q1, p2, q2 }
    }

    fn key(&self) -> (u32, u32, i32, u32) {
        (self.p1, self.q1, self.p2, self.q2)
    }

    pub fn eval(&self, z: Point2) -> Result<Complex64> {
        if self.p2 < 0 && z[1] == Complex64::new(0.0, 0.0) {
            return Err(Error::LaurentPole { power: self.p2 });
        }
        Ok(self.coef * z[0].powu(self.p1) * z[0].conj().powu(self.q1) * z[1].powi(self.p2) * z[1].conj().powu(self.q2))
    }

    pub fn dbar(&self, var: Var) -> Option<MonomialTerm> {
        let q = match var {
            Var::Z1 => self.q1,
            Var::Z2 => self.q2,
        };
        if q == 0 {
            return None;
        }
        let mut t = *self;
        t.coef *= q as f64;
        match var {
            Var::Z1 => t.q1 -= 1,
            Var::Z2 => t.q2 -= 1,
        }
        Some(t)
    }

    fn times(&self, other: &MonomialTerm) -> MonomialTerm {
        MonomialTerm {
            coef: self.coef * other.coef,
            p1: self.p1 + other.p1,
            q1: self.q1 + other.q1,
            p2: self.p2 + other.p2,
            q2: self.q2 + other.q2,
        }
    }
}

/// Canonically ordered sum of monomial terms; the empty sum is zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FormExpr {
    terms: Vec<MonomialTerm>,
}

impl FormExpr {
    pub fn new(terms: impl IntoIterator<Item = MonomialTerm>) -> Self {
        let mut terms: Vec<MonomialTerm> = terms.into_iter().collect();
        terms.sort_by_key(|t| t.key());
        let mut merged: Vec<MonomialTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.key().cmp(&t.key()) == Ordering::Equal => last.coef += t.coef,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coef.norm() >= PRUNE_THRESHOLD);
        FormExpr { terms: merged }
    }

    pub fn zero() -> Self {
        FormExpr::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(c, 0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn monomial(coef: Complex64, p1: u32, q1: u32, p2: i32, q2: u32) -> Self {
        Self::new([MonomialTerm::new(coef, p1, q1, p2, q2)])
    }

    /// Real-coefficient monomial shorthand.
    pub fn mono(coef: f64, p1: u32, q1: u32, p2: i32, q2: u32) -> Self {
        Self::monomial(Complex64::new(coef, 0.0), p1, q1, p2, q2)
    }

    pub fn terms(&self) -> &[MonomialTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient magnitude; 0 for the zero expression.
    pub fn max_coef(&self) -> f64 {
        self.terms.iter().map(|t| t.coef.norm()).fold(0.0, f64::max)
    }

    /// `self` vanishes up to round-off relative to `scale`.
    pub fn is_negligible(&self, scale: f64) -> bool {
        self.max_coef() <= IDENTITY_TOL * scale.max(1.0)
    }

    /// `a − b` up to round-off: the difference is negligible against both sides.
    pub fn cancels(a: &FormExpr, b: &FormExpr) -> bool {
        (a - b).is_negligible(a.max_coef().max(b.max_coef()))
    }

    /// Whether any term carries a negative power of z₂.
    pub fn has_laurent(&self) -> bool {
        self.terms.iter().any(|t| t.p2 < 0)
    }

    pub fn eval(&self, z: Point2) -> Result<Complex64> {
        self.terms.iter().try_fold(Complex64::new(0.0, 0.0), |acc, t| Ok(acc + t.eval(z)?))
    }

    /// Conjugate Wirtinger derivative ∂/∂z̄ⱼ, exact term by term.
    pub fn dbar(&self, var: Var) -> FormExpr {
        FormExpr::new(self.terms.iter().filter_map(|t| t.dbar(var)))
    }

    pub fn scale(&self, c: Complex64) -> FormExpr {
        FormExpr::new(self.terms.iter().map(|t| MonomialTerm { coef: t.coef * c, ..*t }))
    }

    /// Exchanges the roles of z₁ and z₂.
    pub fn swap_variables(&self) -> Result<FormExpr> {
        self.terms
            .iter()
            .map(|t| {
                let p2 =
                    u32::try_from(t.p2).map_err(|_| Error::NotRepresentable("negative z2 power cannot move to z1".into()))?;
                Ok(MonomialTerm::new(t.coef, p2, t.q2, t.p1 as i32, t.q1))
            })
            .collect::<Result<Vec<_>>>()
            .map(FormExpr::new)
    }

    /// Parses the JSON term list `[{"coef":[re,im],"p1":..,"q1":..,"p2":..,"q2":..}, ...]`.
    ///
    /// Negative `p2` is accepted only with `allow_laurent`.
    pub fn from_json_value(v: &serde_json::Value, allow_laurent: bool) -> Result<FormExpr> {
        let raw: Vec<RawTerm> = serde_json::from_value(v.clone())?;
        raw.into_iter().map(|r| r.into_term(allow_laurent)).collect::<Result<Vec<_>>>().map(FormExpr::new)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw: Vec<RawTerm> = self
            .terms
            .iter()
            .map(|t| RawTerm { coef: [t.coef.re, t.coef.im], p1: t.p1 as i64, q1: t.q1 as i64, p2: t.p2 as i64, q2: t.q2 as i64 })
            .collect();
        serde_json::to_value(raw).expect("term list serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    coef: [f64; 2],
    #[serde(default)]
    p1: i64,
    #[serde(default)]
    q1: i64,
    #[serde(default)]
    p2: i64,
    #[serde(default)]
    q2: i64,
}

impl RawTerm {
    fn into_term(self, allow_laurent: bool) -> Result<MonomialTerm> {
        let nonneg = |name: &str, v: i64| -> Result<u32> {
            u32::try_from(v).map_err(|_| Error::Parse(format!("{name} must be a nonnegative integer, got {v}")))
        };
        let p1 = nonneg("p1", self.p1)?;
        let q1 = nonneg("q1", self.q1)?;
        let q2 = nonneg("q2", self.q2)?;
        let p2 = i32::try_from(self.p2).map_err(|_| Error::Parse(format!("p2 out of range: {}", self.p2)))?;
        if p2 < 0 && !allow_laurent {
            return Err(Error::Parse(format!("p2 = {p2} < 0 on a domain containing z2 = 0")));
        }
        Ok(MonomialTerm::new(Complex64::new(self.coef[0], self.coef[1]), p1, q1, p2, q2))
    }
}

impl Add for &FormExpr {
    type Output = FormExpr;
    fn add(self, rhs: &FormExpr) -> FormExpr {
        FormExpr::new(self.terms.iter().chain(rhs.terms.iter()).copied())
    }
}

impl Add for FormExpr {
    type Output = FormExpr;
    fn add(self, rhs: FormExpr) -> FormExpr {
        &self + &rhs
    }
}

impl Neg for &FormExpr {
    type Output = FormExpr;
    fn neg(self) -> FormExpr {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Neg for FormExpr {
    type Output = FormExpr;
    fn neg(self) -> FormExpr {
        -&self
    }
}

impl Sub for &FormExpr {
    type Output = FormExpr;
    fn sub(self, rhs: &FormExpr) -> FormExpr {
        self + &(-rhs)
    }
}

impl Sub for FormExpr {
    type Output = FormExpr;
    fn sub(self, rhs: FormExpr) -> FormExpr {
        &self - &rhs
    }
}

impl Mul for &FormExpr {
    type Output = FormExpr;
    fn mul(self, rhs: &FormExpr) -> FormExpr {
        FormExpr::new(self.terms.iter().flat_map(|a| rhs.terms.iter().map(move |b| a.times(b))))
    }
}

impl Mul for FormExpr {
    type Output = FormExpr;
    fn mul(self, rhs: FormExpr) -> FormExpr {
        &self * &rhs
    }
}

impl fmt::Display for FormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}+{}i)", t.coef.re, t.coef.im)?;
            for (name, pow) in [("z1", t.p1 as i64), ("zb1", t.q1 as i64), ("z2", t.p2 as i64), ("zb2", t.q2 as i64)] {
                if pow != 0 {
                    write!(f, "·{name}^{pow}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// f₁ᵏ = z̄₁^{k−1} z₁ᵏ z̄₂ᵏ z₂ᵏ
    fn f1k(k: u32) -> FormExpr {
        FormExpr::mono(1.0, k, k - 1, k as i32, k)
    }

    #[test]
    fn dbar_power_rule() {
        // ∂(z̄₁ z₂)/∂z̄₁ = z₂
        let e = FormExpr::mono(1.0, 0, 1, 1, 0);
        assert_eq!(e.dbar(Var::Z1), FormExpr::mono(1.0, 0, 0, 1, 0));
        // ∂(z₁³)/∂z̄₁ = 0
        assert!(FormExpr::mono(1.0, 3, 0, 0, 0).dbar(Var::Z1).is_zero());
        // ∂f₁²/∂z̄₂ = 2 z̄₁ z₁² z̄₂ z₂²
        assert_eq!(f1k(2).dbar(Var::Z2), FormExpr::mono(2.0, 2, 1, 2, 1));
    }

    #[test]
    fn canonical_order_merges_and_prunes() {
        let a = FormExpr::new([
            MonomialTerm::new(c(1.0, 0.0), 1, 0, 0, 0),
            MonomialTerm::new(c(2.0, 0.0), 0, 0, 0, 0),
            MonomialTerm::new(c(-1.0, 0.0), 1, 0, 0, 0),
            MonomialTerm::new(c(1e-17, 0.0), 0, 0, 3, 0),
        ]);
        assert_eq!(a, FormExpr::mono(2.0, 0, 0, 0, 0));
        let b = FormExpr::new([MonomialTerm::new(c(1.0, 0.0), 0, 0, 1, 0), MonomialTerm::new(c(1.0, 0.0), 0, 0, -1, 0)]);
        assert_eq!(b.terms()[0].p2, -1);
    }

    #[test]
    fn eval_examples() {
        // f₁¹ = z₁ z̄₂ z₂ at (0.5, 0.5i) → 0.125
        let v = f1k(1).eval([c(0.5, 0.0), c(0.0, 0.5)]).unwrap();
        assert!((v - c(0.125, 0.0)).norm() < 1e-15);
        let inv = FormExpr::mono(1.0, 0, 0, -1, 0);
        assert!((inv.eval([c(0.0, 0.0), c(0.5, 0.0)]).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
        assert_eq!(inv.eval([c(0.0, 0.0), c(0.0, 0.0)]), Err(Error::LaurentPole { power: -1 }));
    }

    #[test]
    fn arithmetic() {
        let x = FormExpr::mono(1.0, 1, 0, 0, 0);
        let y = FormExpr::mono(1.0, 0, 0, 0, 1);
        let prod = &(&x + &y) * &(&x - &y);
        assert_eq!(prod, &(&x * &x) - &(&y * &y));
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn json_parser_rejects_negative_powers() {
        let ok = serde_json::json!([{"coef":[1,0],"p1":1,"q1":0,"p2":-1,"q2":0}]);
        assert!(FormExpr::from_json_value(&ok, true).is_ok());
        assert!(FormExpr::from_json_value(&ok, false).is_err());
        for bad in [
            serde_json::json!([{"coef":[1,0],"p1":-1,"q1":0,"p2":0,"q2":0}]),
            serde_json::json!([{"coef":[1,0],"p1":0,"q1":-1,"p2":0,"q2":0}]),
            serde_json::json!([{"coef":[1,0],"p1":0,"q1":0,"p2":0,"q2":-2}]),
        ] {
            assert!(FormExpr::from_json_value(&bad, true).is_err());
        }
        let e = FormExpr::new([MonomialTerm::new(c(0.5, -2.0), 1, 2, -3, 4)]);
        assert_eq!(FormExpr::from_json_value(&e.to_json_value(), true).unwrap(), e);
    }

    #[test]
    fn swap_variables_rejects_laurent() {
        let e = FormExpr::mono(1.0, 1, 2, 3, 4);
        assert_eq!(e.swap_variables().unwrap(), FormExpr::mono(1.0, 3, 4, 1, 2));
        assert!(FormExpr::mono(1.0, 0, 0, -1, 0).swap_variables().is_err());
    }
}
