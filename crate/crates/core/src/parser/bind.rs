use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Expr, ModelDefinition};
use crate::algebra::CanonicalPolynomial;
use crate::gaussian::{GaussianRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BindError {
    #[error("no value for parameter `{0}`")]
    MissingParameter(String),
    #[error("model has no parameter named `{0}`")]
    UnknownParameter(String),
    #[error("degenerate parameters: denominator `{denominator}` evaluates to zero")]
    DegenerateParameter { denominator: String },
}

/// Exact values for named parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParameterBinding {
    values: BTreeMap<String, Rational>,
}

impl ParameterBinding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: impl Into<String>, value: Rational) -> Self {
        self.set(name, value);
        self
    }

    pub fn set(&mut self, name: impl Into<String>, value: Rational) {
        self.values.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.values.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.values.iter()
    }
}

impl FromIterator<(String, Rational)> for ParameterBinding {
    fn from_iter<T: IntoIterator<Item = (String, Rational)>>(iter: T) -> Self {
        ParameterBinding { values: iter.into_iter().collect() }
    }
}

/// Substitutes parameter values and expands `H` into normal-ordered form.
///
/// Unbound parameters fall back to the defaults declared in the model file.
pub fn bind_and_expand(def: &ModelDefinition, binding: &ParameterBinding) -> Result<CanonicalPolynomial, BindError> {
    if let Some((name, _)) = binding.iter().find(|(name, _)| def.parameter_index(name).is_none()) {
        return Err(BindError::UnknownParameter(name.clone()));
    }
    let values = def
        .parameters
        .iter()
        .map(|p| {
            binding
                .get(&p.name)
                .or(p.default.as_ref())
                .cloned()
                .map(GaussianRational::real)
                .ok_or_else(|| BindError::MissingParameter(p.name.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Expander { def, values: &values }.expand(&def.hamiltonian)
}

struct Expander<'a> {
    def: &'a ModelDefinition,
    values: &'a [GaussianRational],
}

impl Expander<'_> {
    fn scalar(&self, value: GaussianRational) -> CanonicalPolynomial {
        CanonicalPolynomial::scalar(self.def.phase_space.clone(), value)
    }

    fn expand(&self, expr: &Expr) -> Result<CanonicalPolynomial, BindError> {
        let same = "operands share the model's phase space";
        Ok(match expr {
            Expr::Number(v) => self.scalar(GaussianRational::real(v.clone())),
            Expr::ImaginaryUnit => self.scalar(GaussianRational::i()),
            Expr::Param(idx) => self.scalar(self.values[*idx].clone()),
            Expr::Operator(idx) => CanonicalPolynomial::operator(self.def.phase_space.clone(), *idx),
            Expr::Neg(e) => self.expand(e)?.neg(),
            Expr::Add(a, b) => self.expand(a)?.add(&self.expand(b)?).expect(same),
            Expr::Sub(a, b) => self.expand(a)?.sub(&self.expand(b)?).expect(same),
            Expr::Mul(a, b) => self.expand(a)?.multiply(&self.expand(b)?).expect(same),
            Expr::Pow(e, k) => self.expand(e)?.pow(*k),
            Expr::Div(a, b) => {
                let den = self.evaluate_scalar(b)?;
                let inv =
                    den.inv().ok_or_else(|| BindError::DegenerateParameter { denominator: self.def.render_expr(b) })?;
                self.expand(a)?.scale(&inv)
            }
        })
    }

    /// Evaluates an operator-free subtree.
    fn evaluate_scalar(&self, expr: &Expr) -> Result<GaussianRational, BindError> {
        Ok(match expr {
            Expr::Number(v) => GaussianRational::real(v.clone()),
            Expr::ImaginaryUnit => GaussianRational::i(),
            Expr::Param(idx) => self.values[*idx].clone(),
            Expr::Operator(_) => unreachable!("the parser rejects operators in denominators"),
            Expr::Neg(e) => -self.evaluate_scalar(e)?,
            Expr::Add(a, b) => self.evaluate_scalar(a)? + self.evaluate_scalar(b)?,
            Expr::Sub(a, b) => self.evaluate_scalar(a)? - self.evaluate_scalar(b)?,
            Expr::Mul(a, b) => self.evaluate_scalar(a)? * self.evaluate_scalar(b)?,
            Expr::Pow(e, k) => self.evaluate_scalar(e)?.pow(*k),
            Expr::Div(a, b) => {
                let den = self.evaluate_scalar(b)?;
                if den.is_zero() {
                    return Err(BindError::DegenerateParameter { denominator: self.def.render_expr(b) });
                }
                self.evaluate_scalar(a)? / den
            }
        })
    }
}
