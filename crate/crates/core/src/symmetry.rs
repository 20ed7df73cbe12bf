//! Right symmetry groups of map-germs.
//!
//! A right symmetry of `f` is a diffeomorphism-germ `s` of the source with
//! `f o s = f`. Membership is an exact polynomial identity here, so
//! certificates are absolute: a failed check carries the graded-lex-least
//! differing monomial as a counterexample. The module also computes element
//! orders by exact composition, transports symmetries across right-left
//! equivalences, and ships a catalog of standard examples.

use std::fmt;

use num_traits::{One, Zero};

use crate::germ::{GermError, MapGerm};
use crate::poly::{default_variable_names, Monomial, PolyMatrix, Polynomial};
use crate::rational::{rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    DimensionMismatch { expected: usize, got: usize },
    /// Component fails to vanish at the origin.
    NotAGerm { component: usize },
    /// The linear part is singular, so this is not a local diffeomorphism.
    NotLocalDiffeo,
    /// The square `target o f = g o source` fails.
    EquivalenceDoesNotCommute,
    /// The supplied element is not a symmetry of `f`.
    NotASymmetry,
    /// Jet inversion failed to reach the requested degree.
    JetInversionFailed { cap: u32 },
    UnknownCatalogName(String),
    ParseFailure { component: usize, error: crate::poly::ParseError },
    Germ(GermError),
}

impl fmt::Display for SymmetryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetryError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            SymmetryError::NotAGerm { component } => {
                write!(f, "component {} does not fix the origin", component + 1)
            }
            SymmetryError::NotLocalDiffeo => {
                write!(f, "linear part is singular; not a local diffeomorphism")
            }
            SymmetryError::EquivalenceDoesNotCommute => {
                write!(f, "equivalence square does not commute")
            }
            SymmetryError::NotASymmetry => write!(f, "element is not a right symmetry"),
            SymmetryError::JetInversionFailed { cap } => {
                write!(f, "jet inversion failed at degree cap {cap}")
            }
            SymmetryError::UnknownCatalogName(name) => {
                write!(f, "unknown catalog name `{name}`")
            }
            SymmetryError::ParseFailure { component, error } => {
                write!(f, "component {}: {error}", component + 1)
            }
            SymmetryError::Germ(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SymmetryError {}

impl From<GermError> for SymmetryError {
    fn from(e: GermError) -> Self {
        SymmetryError::Germ(e)
    }
}

/// Polynomial diffeomorphism-germ of `(R^n, 0)`: fixes the origin and has an
/// invertible linear part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermDiffeo {
    dimension: usize,
    components: Vec<Polynomial>,
    linear_part_invertible: bool,
}

impl GermDiffeo {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, SymmetryError> {
        let dimension = components.len();
        for (i, c) in components.iter().enumerate() {
            if c.variable_count() != dimension {
                return Err(SymmetryError::DimensionMismatch {
                    expected: dimension,
                    got: c.variable_count(),
                });
            }
            if !c.constant_term().is_zero() {
                return Err(SymmetryError::NotAGerm { component: i });
            }
        }
        let linear = linear_part_matrix(&components);
        if crate::poly::rational_determinant(&linear).is_zero() {
            return Err(SymmetryError::NotLocalDiffeo);
        }
        Ok(GermDiffeo {
            dimension,
            components,
            linear_part_invertible: true,
        })
    }

    /// Parses components over the default names `x1..xn`.
    pub fn parse(components: &[&str]) -> Result<Self, SymmetryError> {
        let dimension = components.len();
        let names = default_variable_names(dimension);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut polys = Vec::with_capacity(dimension);
        for (i, text) in components.iter().enumerate() {
            let poly = Polynomial::parse(text, &refs)
                .map_err(|error| SymmetryError::ParseFailure { component: i, error })?;
            polys.push(poly);
        }
        GermDiffeo::new(polys)
    }

    pub fn identity(dimension: usize) -> Self {
        GermDiffeo {
            dimension,
            components: (0..dimension).map(|i| Polynomial::var(dimension, i)).collect(),
            linear_part_invertible: true,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn linear_part_invertible(&self) -> bool {
        self.linear_part_invertible
    }

    pub fn is_identity(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(i, c)| *c == Polynomial::var(self.dimension, i))
    }

    /// True when every component has degree at most one.
    pub fn is_linear(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.total_degree().unwrap_or(0) <= 1)
    }

    /// Composition `self o other`.
    pub fn compose(&self, other: &GermDiffeo) -> GermDiffeo {
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(other.components()).expect("dimensions agree"))
            .collect();
        GermDiffeo {
            dimension: self.dimension,
            components,
            linear_part_invertible: true,
        }
    }

    /// Composition truncated to a jet degree.
    fn compose_trunc(&self, other: &GermDiffeo, cap: u32) -> GermDiffeo {
        let components = self
            .components
            .iter()
            .map(|c| {
                c.substitute(other.components())
                    .expect("dimensions agree")
                    .jet_truncate(cap)
            })
            .collect();
        GermDiffeo {
            dimension: self.dimension,
            components,
            linear_part_invertible: true,
        }
    }

    /// Linear part as a rational matrix.
    pub fn linear_part(&self) -> Vec<Vec<Rational>> {
        linear_part_matrix(&self.components)
    }

    /// Symbolic determinant of the Jacobi matrix of the diffeomorphism.
    pub fn jacobian_determinant(&self) -> Polynomial {
        let n = self.dimension;
        let mut entries = Vec::with_capacity(n * n);
        for c in &self.components {
            for j in 0..n {
                entries.push(c.partial(j).expect("valid index"));
            }
        }
        PolyMatrix::new(n, n, entries)
            .expect("consistent")
            .determinant()
            .expect("square")
    }

    /// Inverse as a polynomial jet of degree `cap`; exact for linear maps.
    ///
    /// The iteration corrects the composite `self o inverse` one jet degree
    /// per step, so `cap` steps always suffice; the final composite is
    /// re-checked and a failure is reported rather than returned.
    pub fn invert_jet(&self, cap: u32) -> Result<GermDiffeo, SymmetryError> {
        let linear_inverse =
            invert_rational_matrix(&self.linear_part()).ok_or(SymmetryError::NotLocalDiffeo)?;
        let mut inverse = GermDiffeo {
            dimension: self.dimension,
            components: matrix_as_map(&linear_inverse),
            linear_part_invertible: true,
        };
        if self.is_linear() {
            return Ok(inverse);
        }
        let identity = GermDiffeo::identity(self.dimension);
        for _ in 0..=cap {
            let composite = self.compose_trunc(&inverse, cap);
            let error: Vec<Polynomial> = composite
                .components
                .iter()
                .zip(identity.components())
                .map(|(c, id)| c.sub(id))
                .collect();
            if error.iter().all(Polynomial::is_zero) {
                return Ok(inverse);
            }
            // inverse <- inverse - L^{-1} * error, truncated.
            let correction = apply_matrix(&linear_inverse, &error);
            inverse = GermDiffeo {
                dimension: self.dimension,
                components: inverse
                    .components
                    .iter()
                    .zip(&correction)
                    .map(|(c, delta)| c.sub(delta).jet_truncate(cap))
                    .collect(),
                linear_part_invertible: true,
            };
        }
        let composite = self.compose_trunc(&inverse, cap);
        if composite
            .components
            .iter()
            .zip(GermDiffeo::identity(self.dimension).components())
            .all(|(c, id)| c == id)
        {
            Ok(inverse)
        } else {
            Err(SymmetryError::JetInversionFailed { cap })
        }
    }
}

impl fmt::Display for GermDiffeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn linear_part_matrix(components: &[Polynomial]) -> Vec<Vec<Rational>> {
    let n = components.len();
    components
        .iter()
        .map(|c| {
            (0..n)
                .map(|j| c.coefficient(&Monomial::var(n, j)))
                .collect()
        })
        .collect()
}

fn matrix_as_map(matrix: &[Vec<Rational>]) -> Vec<Polynomial> {
    let n = matrix.len();
    matrix
        .iter()
        .map(|row| {
            let mut p = Polynomial::zero(n);
            for (j, entry) in row.iter().enumerate() {
                p.add_term(Monomial::var(n, j), entry.clone());
            }
            p
        })
        .collect()
}

fn apply_matrix(matrix: &[Vec<Rational>], vector: &[Polynomial]) -> Vec<Polynomial> {
    let nvars = vector[0].variable_count();
    matrix
        .iter()
        .map(|row| {
            let mut acc = Polynomial::zero(nvars);
            for (entry, p) in row.iter().zip(vector) {
                acc = acc.add(&p.scale(entry));
            }
            acc
        })
        .collect()
}

/// Gauss-Jordan inverse of a rational matrix.
fn invert_rational_matrix(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut work: Vec<Vec<Rational>> = matrix.to_vec();
    let mut inverse: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(pivot_row, col);
        inverse.swap(pivot_row, col);
        let pivot = work[col][col].clone();
        for c in 0..n {
            work[col][c] /= &pivot;
            inverse[col][c] /= &pivot;
        }
        for r in 0..n {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let factor = work[r][col].clone();
            for c in 0..n {
                let delta = &factor * &work[col][c];
                work[r][c] -= delta;
                let delta = &factor * &inverse[col][c];
                inverse[r][c] -= delta;
            }
        }
    }
    Some(inverse)
}

/// Least differing monomial between `f o s` and `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryCounterexample {
    pub component: usize,
    pub monomial: Monomial,
}

/// Outcome of an exact right-symmetry check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryCertificate {
    pub germ: MapGerm,
    pub element: GermDiffeo,
    pub verified: bool,
    /// Present exactly when not verified: the graded-lex-least monomial of
    /// the least-index component where `f o s` and `f` differ.
    pub counterexample: Option<SymmetryCounterexample>,
}

/// Compares `f o sigma` with `f` exactly.
pub fn check_right_symmetry(
    f: &MapGerm,
    sigma: &GermDiffeo,
) -> Result<SymmetryCertificate, SymmetryError> {
    if sigma.dimension() != f.source_dimension() {
        return Err(SymmetryError::DimensionMismatch {
            expected: f.source_dimension(),
            got: sigma.dimension(),
        });
    }
    for (index, component) in f.components().iter().enumerate() {
        let composed = component
            .substitute(sigma.components())
            .expect("dimensions agree");
        let difference = composed.sub(component);
        let least = difference.terms().next().map(|(m, _)| m.clone());
        if let Some(monomial) = least {
            return Ok(SymmetryCertificate {
                germ: f.clone(),
                element: sigma.clone(),
                verified: false,
                counterexample: Some(SymmetryCounterexample {
                    component: index,
                    monomial,
                }),
            });
        }
    }
    Ok(SymmetryCertificate {
        germ: f.clone(),
        element: sigma.clone(),
        verified: true,
        counterexample: None,
    })
}

/// Result of the exact order computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffeoOrder {
    Finite(u32),
    Undecided { cap: u32 },
}

impl fmt::Display for DiffeoOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffeoOrder::Finite(k) => write!(f, "{k}"),
            DiffeoOrder::Undecided { cap } => write!(f, "undecided at cap {cap}"),
        }
    }
}

/// Least `k <= cap` with `sigma^k = id`, by exact composition.
pub fn diffeo_order(sigma: &GermDiffeo, cap: u32) -> DiffeoOrder {
    let mut power = sigma.clone();
    for k in 1..=cap {
        if power.is_identity() {
            return DiffeoOrder::Finite(k);
        }
        power = sigma.compose(&power);
    }
    DiffeoOrder::Undecided { cap }
}

/// A right-left equivalence `target o f = g o source`.
#[derive(Debug, Clone)]
pub struct Equivalence {
    /// Source diffeomorphism (the conjugating map).
    pub source: GermDiffeo,
    /// Target diffeomorphism.
    pub target: GermDiffeo,
}

/// Default jet degree for polynomial inversion.
pub const DEFAULT_JET_CAP: u32 = 8;

/// Transports `sigma` in the right symmetry group of `f` to one of `g` along
/// an equivalence `target o f = g o source`.
///
/// The result is `source o sigma o source^{-1}`. For a linear source map the
/// inverse and hence the certificate are exact; otherwise the inverse is a
/// degree-`jet_cap` jet and the certificate compares jets to that degree.
pub fn conjugate_symmetry(
    sigma: &GermDiffeo,
    equivalence: &Equivalence,
    f: &MapGerm,
    g: &MapGerm,
    jet_cap: u32,
) -> Result<SymmetryCertificate, SymmetryError> {
    let psi = &equivalence.source;
    let tau = &equivalence.target;
    if psi.dimension() != f.source_dimension() {
        return Err(SymmetryError::DimensionMismatch {
            expected: f.source_dimension(),
            got: psi.dimension(),
        });
    }
    if tau.dimension() != f.target_dimension() {
        return Err(SymmetryError::DimensionMismatch {
            expected: f.target_dimension(),
            got: tau.dimension(),
        });
    }

    // The square must commute exactly: tau o f = g o psi.
    let left: Vec<Polynomial> = tau
        .components()
        .iter()
        .map(|c| c.substitute(f.components()).expect("dimensions agree"))
        .collect();
    let right: Vec<Polynomial> = g
        .components()
        .iter()
        .map(|c| c.substitute(psi.components()).expect("dimensions agree"))
        .collect();
    if left != right {
        return Err(SymmetryError::EquivalenceDoesNotCommute);
    }

    if !check_right_symmetry(f, sigma)?.verified {
        return Err(SymmetryError::NotASymmetry);
    }

    let psi_inverse = psi.invert_jet(jet_cap)?;
    let conjugated = if psi.is_linear() {
        // The inverse of a linear map is exact, so the conjugate is too.
        psi.compose(sigma).compose(&psi_inverse)
    } else {
        psi.compose_trunc(&sigma.compose_trunc(&psi_inverse, jet_cap), jet_cap)
    };

    if psi.is_linear() {
        check_right_symmetry(g, &conjugated)
    } else {
        // Jet-capped certificate.
        let mut verified = true;
        let mut counterexample = None;
        for (index, component) in g.components().iter().enumerate() {
            let composed = component
                .substitute(conjugated.components())
                .expect("dimensions agree")
                .jet_truncate(jet_cap);
            let difference = composed.sub(&component.jet_truncate(jet_cap));
            let least = difference.terms().next().map(|(m, _)| m.clone());
            if let Some(monomial) = least {
                verified = false;
                counterexample = Some(SymmetryCounterexample {
                    component: index,
                    monomial,
                });
                break;
            }
        }
        Ok(SymmetryCertificate {
            germ: g.clone(),
            element: conjugated,
            verified,
            counterexample,
        })
    }
}

/// A catalog entry: a germ, verified symmetry generators, and a description.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub germ: MapGerm,
    pub generators: Vec<GermDiffeo>,
    pub description: String,
}

/// Real and imaginary parts of `(x1 + i x2)^l`.
pub fn complex_power_components(l: u32) -> (Polynomial, Polynomial) {
    let x1 = Polynomial::var(2, 0);
    let x2 = Polynomial::var(2, 1);
    let mut real = Polynomial::one(2);
    let mut imag = Polynomial::zero(2);
    for _ in 0..l {
        let next_real = real.mul(&x1).sub(&imag.mul(&x2));
        let next_imag = real.mul(&x2).add(&imag.mul(&x1));
        real = next_real;
        imag = next_imag;
    }
    (real, imag)
}

/// The rotation by a quarter, half, or full turn is the only rational
/// rotation; other orders have irrational cosines.
fn rational_rotation(l: u32) -> Option<GermDiffeo> {
    match l {
        1 => Some(GermDiffeo::identity(2)),
        2 => Some(GermDiffeo::new(vec![
            Polynomial::var(2, 0).scale(&rational(-1)),
            Polynomial::var(2, 1).scale(&rational(-1)),
        ]).expect("valid")),
        4 => Some(GermDiffeo::new(vec![
            Polynomial::var(2, 1).scale(&rational(-1)),
            Polynomial::var(2, 0),
        ]).expect("valid")),
        _ => None,
    }
}

/// Looks up a catalog family by name: `fold`, `cusp`, `squares`,
/// `power_ell(l)`, or `dihedral(l)`.
pub fn symmetry_catalog(name: &str) -> Result<CatalogEntry, SymmetryError> {
    let trimmed = name.trim();
    if trimmed == "fold" {
        return Ok(CatalogEntry {
            name: "fold".into(),
            germ: MapGerm::parse(2, 2, &["x1", "x2^2"]).expect("valid"),
            generators: vec![GermDiffeo::parse(&["x1", "-x2"]).expect("valid")],
            description: "fold (x1, x2^2); right symmetry group Z/2Z generated by the \
                          fiberwise sign flip; group order 2"
                .into(),
        });
    }
    if trimmed == "cusp" {
        return Ok(CatalogEntry {
            name: "cusp".into(),
            germ: MapGerm::parse(2, 2, &["x1", "x2^3 + x1*x2"]).expect("valid"),
            generators: Vec::new(),
            description: "cusp (x1, x2^3 + x1*x2); right symmetry group is trivial, so no \
                          generators are listed"
                .into(),
        });
    }
    if trimmed == "squares" {
        return Ok(CatalogEntry {
            name: "squares".into(),
            germ: MapGerm::parse(2, 2, &["x1^2", "x2^2"]).expect("valid"),
            generators: vec![
                GermDiffeo::parse(&["-x1", "x2"]).expect("valid"),
                GermDiffeo::parse(&["x1", "-x2"]).expect("valid"),
            ],
            description: "coordinate squares (x1^2, x2^2); right symmetry group \
                          Z/2Z x Z/2Z generated by the two sign flips; group order 4"
                .into(),
        });
    }
    if let Some(l) = parse_family(trimmed, "power_ell") {
        let (real, imag) = complex_power_components(l);
        let germ = MapGerm::new(2, 2, vec![real, imag]).expect("valid");
        let (generators, note) = match rational_rotation(l) {
            Some(rotation) => (
                vec![rotation],
                format!("rotation by a 1/{l} turn generates the cyclic group of order {l}"),
            ),
            None => (
                Vec::new(),
                format!(
                    "the cyclic group of order {l} is generated by a rotation whose matrix \
                     has irrational entries; no exact rational generator exists, so none is \
                     listed"
                ),
            ),
        };
        return Ok(CatalogEntry {
            name: format!("power_ell({l})"),
            germ,
            generators,
            description: format!(
                "real and imaginary parts of z^{l}; right symmetry group Z/{l}Z; {note}"
            ),
        });
    }
    if let Some(l) = parse_family(trimmed, "dihedral") {
        let (real, _) = complex_power_components(l);
        let radius = Polynomial::parse("x1^2 + x2^2", &["x1", "x2"]).expect("valid");
        let germ = MapGerm::new(2, 2, vec![radius, real]).expect("valid");
        let mut generators = vec![GermDiffeo::parse(&["x1", "-x2"]).expect("valid")];
        let mut note = "the reflection across the x1-axis is always exact".to_owned();
        if let Some(rotation) = rational_rotation(l) {
            generators.push(rotation);
            note.push_str("; the rotation generator is rational for this order");
        } else {
            note.push_str(&format!(
                "; the order-{l} rotation has irrational matrix entries and is not listed"
            ));
        }
        return Ok(CatalogEntry {
            name: format!("dihedral({l})"),
            germ,
            generators,
            description: format!(
                "invariants (x1^2 + x2^2, Re((x1 + i*x2)^{l})) of the dihedral group of \
                 order {}; {note}",
                2 * l
            ),
        });
    }
    Err(SymmetryError::UnknownCatalogName(name.to_owned()))
}

fn parse_family(name: &str, family: &str) -> Option<u32> {
    let rest = name.strip_prefix(family)?;
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    let l: u32 = inner.trim().parse().ok()?;
    (l >= 1).then_some(l)
}

/// Representative entries of the five catalog families.
pub fn catalog_families() -> Vec<CatalogEntry> {
    ["fold", "cusp", "squares", "power_ell(4)", "dihedral(2)"]
        .iter()
        .map(|name| symmetry_catalog(name).expect("catalog names are valid"))
        .collect()
}

/// Checks the Jacobian equivariance identity for an equidimensional germ and
/// a verified symmetry: `(lambda o sigma) * det J(sigma) = +/- lambda` as an
/// exact polynomial identity, with `lambda` the normalized generator.
/// Returns the sign, or `None` when the identity fails.
pub fn jacobian_equivariance_sign(f: &MapGerm, sigma: &GermDiffeo) -> Option<i8> {
    let report = crate::germ::principality_report(f);
    let lambda = report.generator?;
    if lambda.is_zero() {
        return None;
    }
    let transported = lambda
        .substitute(sigma.components())
        .ok()?
        .mul(&sigma.jacobian_determinant());
    if transported == lambda {
        Some(1)
    } else if transported == lambda.neg() {
        Some(-1)
    } else {
        None
    }
}

/// `sigma` composed with itself `k` times.
pub fn diffeo_power(sigma: &GermDiffeo, k: u32) -> GermDiffeo {
    let mut power = GermDiffeo::identity(sigma.dimension());
    for _ in 0..k {
        power = sigma.compose(&power);
    }
    power
}
