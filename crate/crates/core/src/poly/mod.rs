//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials are sparse maps from monomials to nonzero rational
//! coefficients. Terms are kept in graded lexicographic order (total degree
//! first, then lexicographic with earlier variables more significant), which
//! fixes a canonical rendering and a canonical leading term.

mod gcd;
mod matrix;
mod parse;

pub use gcd::{exact_div, gcd, gcd_many, normalize};
pub use matrix::{rational_determinant, PolyMatrix};
pub use parse::{parse_polynomial, ParseError, ParseErrorKind};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{rational_to_f64, render_rational, Rational};

/// Errors raised by polynomial operations with declared contracts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// A point or image list has the wrong length.
    DimensionMismatch { expected: usize, got: usize },
    /// Variable index outside `0..variable_count`.
    IndexOutOfRange { index: usize, count: usize },
    /// Determinant of a non-square matrix was requested.
    NonSquareMatrix { rows: usize, cols: usize },
    /// Matrix entries disagree on the ambient variable count.
    MixedVariableCounts,
    /// `gcd_many` needs at least one input.
    EmptyInput,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            PolyError::IndexOutOfRange { index, count } => {
                write!(f, "variable index {index} out of range for {count} variables")
            }
            PolyError::NonSquareMatrix { rows, cols } => {
                write!(f, "determinant of non-square {rows}x{cols} matrix")
            }
            PolyError::MixedVariableCounts => write!(f, "matrix entries mix variable counts"),
            PolyError::EmptyInput => write!(f, "empty input"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Exponent vector, one entry per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// Constant monomial (all exponents zero).
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The monomial `x_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree: sum of exponents.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len(), "monomial length mismatch");
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other.divides(self)`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Renders `x1^2*x3`-style with the supplied names; constants render as `1`.
    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 1 {
                parts.push(names[i].clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", names[i], e));
            }
        }
        if parts.is_empty() {
            "1".to_owned()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order: degree first, then lexicographic on the
    /// exponent vector (earlier variables more significant).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// Invariants: no stored zero coefficients; every key has length
/// `variable_count`; term order is graded lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, value: Rational) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !value.is_zero() {
            p.terms.insert(Monomial::one(nvars), value);
        }
        p
    }

    /// The polynomial `x_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.terms.insert(Monomial::var(nvars, index), Rational::one());
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (mono, coeff) in terms {
            p.add_term(mono, coeff);
        }
        p
    }

    /// Parses `text` over the given variable names.
    pub fn parse(text: &str, variable_names: &[&str]) -> Result<Self, ParseError> {
        parse_polynomial(text, variable_names)
    }

    pub fn variable_count(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Least total degree among the terms, `None` for zero.
    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Graded-lex greatest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `coeff * mono` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        assert_eq!(mono.len(), self.nvars, "monomial length mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// `self * coeff * mono`.
    pub fn mul_term(&self, mono: &Monomial, coeff: &Rational) -> Polynomial {
        if coeff.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c * coeff))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (mono, coeff) in &self.terms {
            let mut value = coeff.clone();
            for (i, &e) in mono.exponents().iter().enumerate() {
                for _ in 0..e {
                    value *= &point[i];
                }
            }
            total += value;
        }
        Ok(total)
    }

    /// Approximate value at a floating-point point.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.nvars);
        let mut total = 0.0;
        for (mono, coeff) in &self.terms {
            let mut value = rational_to_f64(coeff);
            for (i, &e) in mono.exponents().iter().enumerate() {
                value *= point[i].powi(e as i32);
            }
            total += value;
        }
        total
    }

    /// Exact composite `self(images[0], ..., images[n-1])`.
    ///
    /// All images must share one ambient variable count, which becomes the
    /// variable count of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let out_vars = match images.first() {
            Some(first) => first.nvars,
            // A constant in zero variables stays constant.
            None => 0,
        };
        if images.iter().any(|p| p.nvars != out_vars) {
            return Err(PolyError::MixedVariableCounts);
        }

        // Cache powers of each image up to the largest exponent used.
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(out_vars), p.clone()])
            .collect();
        for (i, image) in images.iter().enumerate() {
            let max_e = self
                .terms
                .keys()
                .map(|m| m.exponents()[i])
                .max()
                .unwrap_or(0) as usize;
            while powers[i].len() <= max_e {
                let next = powers[i].last().unwrap().mul(image);
                powers[i].push(next);
            }
        }

        let mut out = Polynomial::zero(out_vars);
        for (mono, coeff) in &self.terms {
            let mut product = Polynomial::constant(out_vars, coeff.clone());
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e > 0 {
                    product = product.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&product);
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to `var_index`.
    pub fn partial(&self, var_index: usize) -> Result<Polynomial, PolyError> {
        if var_index >= self.nvars {
            return Err(PolyError::IndexOutOfRange {
                index: var_index,
                count: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (mono, coeff) in &self.terms {
            let e = mono.exponents()[var_index];
            if e == 0 {
                continue;
            }
            let mut exps = mono.exponents().to_vec();
            exps[var_index] -= 1;
            out.add_term(Monomial::new(exps), coeff * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Drops every term of total degree greater than `degree`.
    pub fn jet_truncate(&self, degree: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Views the polynomial in a larger ambient space; new trailing variables
    /// do not occur.
    pub fn extend_variables(&self, new_nvars: usize) -> Polynomial {
        assert!(new_nvars >= self.nvars);
        let mut out = Polynomial::zero(new_nvars);
        for (mono, coeff) in &self.terms {
            let mut exps = mono.exponents().to_vec();
            exps.resize(new_nvars, 0);
            out.add_term(Monomial::new(exps), coeff.clone());
        }
        out
    }

    /// Renames variables: old index `i` becomes `mapping[i]` in a space of
    /// `new_nvars` variables. The mapping must be injective on occurring
    /// variables.
    pub fn remap_variables(&self, mapping: &[usize], new_nvars: usize) -> Polynomial {
        assert_eq!(mapping.len(), self.nvars);
        let mut out = Polynomial::zero(new_nvars);
        for (mono, coeff) in &self.terms {
            let mut exps = vec![0u32; new_nvars];
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e > 0 {
                    exps[mapping[i]] += e;
                }
            }
            out.add_term(Monomial::new(exps), coeff.clone());
        }
        out
    }

    /// Indices of variables that actually occur.
    pub fn occurring_variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for mono in self.terms.keys() {
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(i, &s)| s.then_some(i))
            .collect()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponents()[var])
            .max()
            .unwrap_or(0)
    }

    /// Coefficients of `self` viewed as univariate in `var`; entry `k` is the
    /// coefficient of `var^k`, a polynomial with `var`-exponent zero.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![Polynomial::zero(self.nvars); deg + 1];
        for (mono, coeff) in &self.terms {
            let e = mono.exponents()[var] as usize;
            let mut exps = mono.exponents().to_vec();
            exps[var] = 0;
            coeffs[e].add_term(Monomial::new(exps), coeff.clone());
        }
        coeffs
    }

    /// Inverse of [`coefficients_in`]: rebuilds `sum coeffs[k] * var^k`.
    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (k, coeff) in coeffs.iter().enumerate() {
            for (mono, c) in &coeff.terms {
                let mut exps = mono.exponents().to_vec();
                exps[var] += k as u32;
                out.add_term(Monomial::new(exps), c.clone());
            }
        }
        out
    }

    /// Canonical text form over the given names; inverse of the parser.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (i, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            let magnitude = coeff.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if mono.is_constant() {
                out.push_str(&render_rational(&magnitude));
            } else if magnitude.is_one() {
                out.push_str(&mono.render(names));
            } else {
                out.push_str(&render_rational(&magnitude));
                out.push('*');
                out.push_str(&mono.render(names));
            }
        }
        out
    }
}

/// Default variable names `x1..xn`.
pub fn default_variable_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&default_variable_names(self.nvars)))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: Self) -> Polynomial {
        Polynomial::add(self, other)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: Self) -> Polynomial {
        Polynomial::sub(self, other)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: Self) -> Polynomial {
        Polynomial::mul(self, other)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rational, rational_frac};

    fn p(text: &str, vars: &[&str]) -> Polynomial {
        Polynomial::parse(text, vars).unwrap()
    }

    #[test]
    fn graded_lex_ordering() {
        let x1 = Monomial::new(vec![1, 0]);
        let x2 = Monomial::new(vec![0, 1]);
        let x1x2 = Monomial::new(vec![1, 1]);
        let x2sq = Monomial::new(vec![0, 2]);
        assert!(x1 > x2);
        assert!(x1x2 > x2sq);
        assert!(x2sq > x1);
    }

    #[test]
    fn evaluate_examples() {
        let q = p("x1^2 + x2", &["x1", "x2"]);
        assert_eq!(
            q.evaluate(&[rational(2), rational(3)]).unwrap(),
            rational(7)
        );
        assert_eq!(
            Polynomial::zero(2)
                .evaluate(&[rational(5), rational(-1)])
                .unwrap(),
            rational(0)
        );
        let prod = p("x1*x2", &["x1", "x2"]);
        assert_eq!(
            prod.evaluate(&[rational_frac(1, 2), rational(4)]).unwrap(),
            rational(2)
        );
        assert!(q.evaluate(&[rational(1)]).is_err());
    }

    #[test]
    fn substitute_examples() {
        let vars = ["x1", "x2"];
        let even = p("x2^2", &vars);
        let flipped = even
            .substitute(&[p("x1", &vars), p("-x2", &vars)])
            .unwrap();
        assert_eq!(flipped, even);

        let swap = p("x1", &vars)
            .substitute(&[p("x2", &vars), p("x1", &vars)])
            .unwrap();
        assert_eq!(swap, p("x2", &vars));

        let cubic = p("x2^3 + x1*x2", &vars);
        let image = cubic
            .substitute(&[p("x1", &vars), p("-x2", &vars)])
            .unwrap();
        assert_eq!(image, p("-x2^3 - x1*x2", &vars));
    }

    #[test]
    fn partial_examples() {
        let vars = ["x1", "x2"];
        assert_eq!(p("x1*x2", &vars).partial(0).unwrap(), p("x2", &vars));
        assert_eq!(p("5", &vars).partial(0).unwrap(), Polynomial::zero(2));
        assert_eq!(
            p("x2^3 + x1*x2", &vars).partial(1).unwrap(),
            p("3*x2^2 + x1", &vars)
        );
        assert!(p("x1", &vars).partial(2).is_err());
    }

    #[test]
    fn jet_truncate_examples() {
        let vars = ["x1", "x2"];
        let q = p("x2^3 + x1*x2", &vars);
        assert_eq!(q.jet_truncate(2), p("x1*x2", &vars));
        assert_eq!(p("x1", &vars).jet_truncate(0), Polynomial::zero(2));
        assert_eq!(q.jet_truncate(5), q);
    }

    #[test]
    fn render_is_canonical() {
        let vars = ["x1", "x2"];
        let q = p("3/2*x2 + x1^2", &vars);
        assert_eq!(q.to_string(), "x1^2 + 3/2*x2");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
        assert_eq!(p("-x2^3 - x1*x2", &vars).to_string(), "-x2^3 - x1*x2");
    }

    #[test]
    fn univariate_coefficient_round_trip() {
        let vars = ["x1", "x2"];
        let q = p("x1^2*x2^2 + 2*x2 - x1", &vars);
        let coeffs = q.coefficients_in(1);
        assert_eq!(Polynomial::from_coefficients_in(2, 1, &coeffs), q);
    }
}
