//! Functions and (0,1)-forms on ℂ², symbolic or sampled, with exact Wirtinger
//! calculus for the symbolic case and Lᵖ-type norms.

mod expr;
mod norms;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;

pub use expr::{FormExpr, MonomialTerm, Var, IDENTITY_TOL, PRUNE_THRESHOLD};
pub use norms::{banach_norm, integrate, lp_norm, lp_norm_fn, NormDomain, NormKind, NormOptions, NormReport};

/// Regularity hint carried by sampled data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Smoothness {
    C0,
    #[default]
    C1,
}

/// A black-box map ℂ² → ℂ. The evaluator must be deterministic.
#[derive(Clone)]
pub struct SampledFunction {
    eval: Arc<dyn Fn(Point2) -> Complex64 + Send + Sync>,
    pub smoothness: Smoothness,
}

impl SampledFunction {
    pub fn new(f: impl Fn(Point2) -> Complex64 + Send + Sync + 'static, smoothness: Smoothness) -> Self {
        SampledFunction { eval: Arc::new(f), smoothness }
    }

    pub fn eval(&self, z: Point2) -> Complex64 {
        (self.eval)(z)
    }
}

impl fmt::Debug for SampledFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledFunction").field("smoothness", &self.smoothness).finish_non_exhaustive()
    }
}

/// A coefficient function: exact expression or sampled data.
#[derive(Debug, Clone)]
pub enum Component {
    Symbolic(FormExpr),
    Sampled(SampledFunction),
}

impl Component {
    pub fn eval(&self, z: Point2) -> Result<Complex64> {
        match self {
            Component::Symbolic(e) => e.eval(z),
            Component::Sampled(s) => Ok(s.eval(z)),
        }
    }

    pub fn as_symbolic(&self) -> Option<&FormExpr> {
        match self {
            Component::Symbolic(e) => Some(e),
            Component::Sampled(_) => None,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Component::Symbolic(_))
    }

    /// Exact zero; sampled components are never treated as zero.
    pub fn is_zero(&self) -> bool {
        matches!(self, Component::Symbolic(e) if e.is_zero())
    }

    fn sampled_view(&self) -> SampledFunction {
        match self {
            Component::Sampled(s) => s.clone(),
            Component::Symbolic(e) => {
                let e = e.clone();
                SampledFunction::new(move |z| e.eval(z).unwrap_or(Complex64::new(f64::NAN, f64::NAN)), Smoothness::C1)
            }
        }
    }

    /// `a·self + b·other`, staying symbolic when both sides are.
    pub fn lincomb(&self, a: Complex64, other: &Component, b: Complex64) -> Component {
        match (self, other) {
            (Component::Symbolic(x), Component::Symbolic(y)) => Component::Symbolic(&x.scale(a) + &y.scale(b)),
            _ => {
                let (x, y) = (self.sampled_view(), other.sampled_view());
                let smoothness = x.smoothness.min_with(y.smoothness);
                Component::Sampled(SampledFunction::new(move |z| a * x.eval(z) + b * y.eval(z), smoothness))
            }
        }
    }

    /// Composition with the coordinate swap (z₁, z₂) ↦ (z₂, z₁).
    pub fn swapped(&self) -> Result<Component> {
        match self {
            Component::Symbolic(e) => Ok(Component::Symbolic(e.swap_variables()?)),
            Component::Sampled(s) => {
                let s2 = s.clone();
                Ok(Component::Sampled(SampledFunction::new(move |z| s2.eval([z[1], z[0]]), s.smoothness)))
            }
        }
    }
}

impl Smoothness {
    fn min_with(self, other: Smoothness) -> Smoothness {
        if self == Smoothness::C0 || other == Smoothness::C0 {
            Smoothness::C0
        } else {
            Smoothness::C1
        }
    }
}

impl From<FormExpr> for Component {
    fn from(e: FormExpr) -> Self {
        Component::Symbolic(e)
    }
}

impl From<SampledFunction> for Component {
    fn from(s: SampledFunction) -> Self {
        Component::Sampled(s)
    }
}

/// Central-difference conjugate Wirtinger derivative ½(∂/∂x + i∂/∂y) in
/// variable `var`, with step `h`.
pub fn dbar_fd(f: &dyn Fn(Point2) -> Result<Complex64>, z: Point2, var: Var, h: f64) -> Result<Complex64> {
    let j = match var {
        Var::Z1 => 0,
        Var::Z2 => 1,
    };
    let shifted = |d: Complex64| {
        let mut w = z;
        w[j] += d;
        f(w)
    };
    let dx = (shifted(Complex64::new(h, 0.0))? - shifted(Complex64::new(-h, 0.0))?) / (2.0 * h);
    let dy = (shifted(Complex64::new(0.0, h))? - shifted(Complex64::new(0.0, -h))?) / (2.0 * h);
    Ok(0.5 * (dx + Complex64::i() * dy))
}

/// f = f₁dz̄₁ + f₂dz̄₂ with optional explicit 𝒟f data.
#[derive(Debug, Clone)]
pub struct OneForm {
    pub f1: Component,
    pub f2: Component,
    explicit_d: Option<Component>,
}

impl OneForm {
    /// Builds a form, checking that explicit 𝒟f agrees with the exact value
    /// when both components are symbolic.
    pub fn new(f1: Component, f2: Component, explicit_d: Option<Component>) -> Result<Self> {
        let form = OneForm { f1, f2, explicit_d: None };
        let explicit_d = match (form.exact_d(), explicit_d) {
            (Some(exact), Some(Component::Symbolic(given))) => {
                if (&exact - &given).is_zero() {
                    None
                } else {
                    return Err(Error::InconsistentDerivative);
                }
            }
            (Some(_), Some(Component::Sampled(_))) => {
                return Err(Error::InvalidArgument("explicit D(f) for symbolic components must itself be symbolic".into()))
            }
            (_, d) => d,
        };
        Ok(OneForm { explicit_d, ..form })
    }

    pub fn symbolic(f1: FormExpr, f2: FormExpr) -> Self {
        OneForm { f1: f1.into(), f2: f2.into(), explicit_d: None }
    }

    pub fn zero() -> Self {
        Self::symbolic(FormExpr::zero(), FormExpr::zero())
    }

    pub fn is_symbolic(&self) -> bool {
        self.f1.is_symbolic() && self.f2.is_symbolic()
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero()
    }

    pub fn explicit_d(&self) -> Option<&Component> {
        self.explicit_d.as_ref()
    }

    fn symbolic_parts(&self) -> Option<(&FormExpr, &FormExpr)> {
        Some((self.f1.as_symbolic()?, self.f2.as_symbolic()?))
    }

    fn exact_d(&self) -> Option<FormExpr> {
        let (f1, f2) = self.symbolic_parts()?;
        Some((&f1.dbar(Var::Z2) + &f2.dbar(Var::Z1)).scale(Complex64::new(0.5, 0.0)))
    }

    /// ∂f₁/∂z̄₂ − ∂f₂/∂z̄₁; empty exactly when f is ∂̄-closed.
    pub fn dbar_defect(&self) -> Result<FormExpr> {
        let (f1, f2) = self.symbolic_parts().ok_or(Error::SymbolicRequired)?;
        Ok(&f1.dbar(Var::Z2) - &f2.dbar(Var::Z1))
    }

    /// Closedness up to round-off in the coefficients.
    pub fn is_closed(&self) -> Result<bool> {
        let (f1, f2) = self.symbolic_parts().ok_or(Error::SymbolicRequired)?;
        Ok(FormExpr::cancels(&f1.dbar(Var::Z2), &f2.dbar(Var::Z1)))
    }

    /// 𝒟f = ½(∂f₁/∂z̄₂ + ∂f₂/∂z̄₁).
    pub fn script_d(&self) -> Result<Component> {
        if let Some(d) = self.exact_d() {
            return Ok(Component::Symbolic(d));
        }
        self.explicit_d.clone().ok_or(Error::MissingDerivativeData)
    }

    /// Attaches a central-difference 𝒟f (step `h`) to a form with sampled
    /// components. Accuracy is O(h²) only for C¹ data.
    pub fn with_finite_difference_d(mut self, h: f64) -> Self {
        if self.is_symbolic() {
            return self;
        }
        let f1 = self.f1.clone();
        let f2 = self.f2.clone();
        let d = move |z: Point2| -> Complex64 {
            let a = dbar_fd(&|w| f1.eval(w), z, Var::Z2, h);
            let b = dbar_fd(&|w| f2.eval(w), z, Var::Z1, h);
            match (a, b) {
                (Ok(a), Ok(b)) => 0.5 * (a + b),
                _ => Complex64::new(f64::NAN, f64::NAN),
            }
        };
        self.explicit_d = Some(Component::Sampled(SampledFunction::new(d, Smoothness::C0)));
        self
    }

    /// `a·self + b·other`. Explicit 𝒟 data is combined when both sides carry it.
    pub fn lincomb(&self, a: Complex64, other: &OneForm, b: Complex64) -> OneForm {
        let f1 = self.f1.lincomb(a, &other.f1, b);
        let f2 = self.f2.lincomb(a, &other.f2, b);
        let explicit_d = if f1.is_symbolic() && f2.is_symbolic() {
            None
        } else {
            match (self.script_d(), other.script_d()) {
                (Ok(x), Ok(y)) => Some(x.lincomb(a, &y, b)),
                _ => None,
            }
        };
        OneForm { f1, f2, explicit_d }
    }

    pub fn scaled(&self, c: Complex64) -> OneForm {
        self.lincomb(c, &OneForm::zero(), Complex64::new(0.0, 0.0))
    }

    /// Pullback by σ(z₁, z₂) = (z₂, z₁): σ*f = (f₂∘σ)dz̄₁ + (f₁∘σ)dz̄₂.
    pub fn swap(&self) -> Result<OneForm> {
        Ok(OneForm {
            f1: self.f2.swapped()?,
            f2: self.f1.swapped()?,
            explicit_d: self.explicit_d.as_ref().map(Component::swapped).transpose()?,
        })
    }

    /// Parses `{"f1":[terms...],"f2":[terms...]}`; either key may be omitted.
    pub fn from_json(s: &str, allow_laurent: bool) -> Result<OneForm> {
        let v: serde_json::Value = serde_json::from_str(s)?;
        let obj = v.as_object().ok_or_else(|| Error::Parse("form JSON must be a JSON object".into()))?;
        for key in obj.keys() {
            if key != "f1" && key != "f2" {
                return Err(Error::Parse(format!("unknown key {key:?} in form JSON")));
            }
        }
        let part = |key: &str| match obj.get(key) {
            Some(t) => FormExpr::from_json_value(t, allow_laurent),
            None => Ok(FormExpr::zero()),
        };
        Ok(OneForm::symbolic(part("f1")?, part("f2")?))
    }

    pub fn to_json(&self) -> Result<String> {
        let (f1, f2) = self.symbolic_parts().ok_or(Error::SymbolicRequired)?;
        Ok(serde_json::json!({"f1": f1.to_json_value(), "f2": f2.to_json_value()}).to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn fk(k: u32) -> OneForm {
        OneForm::symbolic(FormExpr::mono(1.0, k, k - 1, k as i32, k), FormExpr::mono(1.0, k, k, k as i32, k - 1))
    }

    #[test]
    fn fk_forms_are_closed() {
        for k in [1, 2, 5] {
            assert!(fk(k).dbar_defect().unwrap().is_zero());
        }
        assert!(OneForm::symbolic(FormExpr::zero(), FormExpr::one()).is_closed().unwrap());
        // z̄₂ dz̄₁ has defect 1
        let f = OneForm::symbolic(FormExpr::mono(1.0, 0, 0, 0, 1), FormExpr::zero());
        assert_eq!(f.dbar_defect().unwrap(), FormExpr::one());
    }

    #[test]
    fn script_d_examples() {
        let d = fk(1).script_d().unwrap();
        assert_eq!(d.as_symbolic().unwrap(), &FormExpr::mono(1.0, 1, 0, 1, 0));
        let d = OneForm::symbolic(FormExpr::zero(), FormExpr::one()).script_d().unwrap();
        assert!(d.is_zero());
        let f = OneForm::symbolic(FormExpr::mono(1.0, 0, 0, 0, 1), FormExpr::mono(1.0, 0, 1, 0, 0));
        assert_eq!(f.script_d().unwrap().as_symbolic().unwrap(), &FormExpr::one());
    }

    #[test]
    fn sampled_forms_need_derivative_data() {
        let s = SampledFunction::new(|z| z[0], Smoothness::C1);
        let f = OneForm::new(s.clone().into(), FormExpr::zero().into(), None).unwrap();
        assert_eq!(f.script_d().unwrap_err(), Error::MissingDerivativeData);
        assert_eq!(f.dbar_defect().unwrap_err(), Error::SymbolicRequired);
        let g = f.with_finite_difference_d(1e-4);
        let d = g.script_d().unwrap().eval([c(0.1), c(0.2)]).unwrap();
        assert!(d.norm() < 1e-8);
    }

    #[test]
    fn explicit_d_must_match() {
        let f1 = FormExpr::mono(1.0, 1, 0, 1, 1);
        assert!(OneForm::new(f1.clone().into(), FormExpr::zero().into(), Some(FormExpr::mono(0.5, 1, 0, 1, 0).into())).is_ok());
        assert_eq!(
            OneForm::new(f1.into(), FormExpr::zero().into(), Some(FormExpr::one().into())).unwrap_err(),
            Error::InconsistentDerivative
        );
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let s = r#"{"f1":[{"coef":[1,0],"p1":1,"q1":0,"p2":1,"q2":1}],"f2":[{"coef":[1,0],"p1":1,"q1":1,"p2":1,"q2":0}]}"#;
        let f = OneForm::from_json(s, false).unwrap();
        assert!(f.is_closed().unwrap());
        let back = OneForm::from_json(&f.to_json().unwrap(), false).unwrap();
        assert_eq!(back.f1.as_symbolic(), f.f1.as_symbolic());
        assert!(OneForm::from_json(r#"{"f3":[]}"#, false).is_err());
        assert!(OneForm::from_json(r#"{"f2":[{"coef":[1,0],"p2":-1}]}"#, false).is_err());
        assert!(OneForm::from_json(r#"{"f2":[{"coef":[1,0],"p2":-1}]}"#, true).is_ok());
    }

    #[test]
    fn swap_and_lincomb() {
        let f = fk(2);
        let s = f.swap().unwrap();
        let z = [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.4)];
        let zs = [z[1], z[0]];
        assert!((s.f1.eval(z).unwrap() - f.f2.eval(zs).unwrap()).norm() < 1e-15);
        let g = f.lincomb(c(2.0), &fk(1), c(-1.0));
        assert!(g.is_closed().unwrap());
        let want = 2.0 * f.f1.eval(z).unwrap() - fk(1).f1.eval(z).unwrap();
        assert!((g.f1.eval(z).unwrap() - want).norm() < 1e-15);
    }
}
