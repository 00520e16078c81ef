use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::PhaseSpace;
use crate::gaussian::{format_rational, Rational};

/// Expression tree of a Hamiltonian before parameter binding.
///
/// Parameters and operators are referenced by index into the owning
/// [`ModelDefinition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(Rational),
    ImaginaryUnit,
    Param(usize),
    Operator(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn contains_operator(&self) -> bool {
        match self {
            Expr::Operator(_) => true,
            Expr::Number(_) | Expr::ImaginaryUnit | Expr::Param(_) => false,
            Expr::Neg(e) | Expr::Pow(e, _) => e.contains_operator(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.contains_operator() || b.contains_operator()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameter {
    pub name: String,
    pub default: Option<Rational>,
}

/// A parsed model file: canonical pairs, parameters, and the Hamiltonian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelDefinition {
    pub phase_space: Arc<PhaseSpace>,
    pub parameters: Vec<Parameter>,
    pub hamiltonian: Expr,
}

impl ModelDefinition {
    pub fn parameter_index(&self, name: &str) -> Option<usize> {
        self.parameters.iter().position(|p| p.name == name)
    }

    /// Renders an expression with every compound subterm parenthesized.
    pub fn render_expr(&self, expr: &Expr) -> String {
        let mut out = String::new();
        self.write_expr(expr, &mut out);
        out
    }

    fn write_expr(&self, expr: &Expr, out: &mut String) {
        match expr {
            Expr::Number(v) => out.push_str(&decimal_string(v)),
            Expr::ImaginaryUnit => out.push('i'),
            Expr::Param(idx) => out.push_str(&self.parameters[*idx].name),
            Expr::Operator(idx) => out.push_str(self.phase_space.basis_name(*idx)),
            Expr::Neg(e) => {
                out.push_str("(-");
                self.write_expr(e, out);
                out.push(')');
            }
            Expr::Pow(e, k) => {
                let atomic = matches!(**e, Expr::Number(_) | Expr::ImaginaryUnit | Expr::Param(_) | Expr::Operator(_));
                if !atomic {
                    out.push('(');
                }
                self.write_expr(e, out);
                if !atomic {
                    out.push(')');
                }
                out.push_str(&format!("^{k}"));
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let op = match expr {
                    Expr::Add(..) => " + ",
                    Expr::Sub(..) => " - ",
                    Expr::Mul(..) => "*",
                    _ => "/",
                };
                out.push('(');
                self.write_expr(a, out);
                out.push_str(op);
                self.write_expr(b, out);
                out.push(')');
            }
        }
    }
}

/// Canonical text form, accepted back by [`super::parse_model`].
impl fmt::Display for ModelDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .phase_space
            .coordinates()
            .iter()
            .zip(self.phase_space.momenta())
            .map(|(q, p)| format!("{q}/{p}"))
            .collect();
        writeln!(f, "pairs: {}", pairs.join(", "))?;
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|p| match &p.default {
                Some(v) => format!("{}={}", p.name, format_rational(v)),
                None => p.name.clone(),
            })
            .collect();
        writeln!(f, "params: {}", params.join(", "))?;
        writeln!(f, "H = {}", self.render_expr(&self.hamiltonian))
    }
}

/// Exact decimal form of a rational whose denominator divides a power of ten.
/// Falls back to `p/q` otherwise (never produced by the lexer).
pub(crate) fn decimal_string(v: &Rational) -> String {
    let mut den = v.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("({})", format_rational(v));
    }
    let digits = twos.max(fives);
    let scaled = (v.abs() * Rational::from_integer(num_traits::pow(BigInt::from(10), digits))).to_integer();
    let sign = if v.is_negative() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{scaled}");
    }
    let s = format!("{:0>width$}", scaled.to_string(), width = digits + 1);
    let (whole, frac) = s.split_at(s.len() - digits);
    format!("{sign}{whole}.{frac}")
}
