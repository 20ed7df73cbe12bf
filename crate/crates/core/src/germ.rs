//! Map-germ analysis through the Jacobi ideal.
//!
//! For a polynomial map-germ `f : (R^n, 0) -> (R^m, 0)` the Jacobi ideal is
//! generated by all `min(n,m)`-minors of the Jacobi matrix. Principality of
//! that ideal in the local ring, together with a nowhere-dense singular locus,
//! characterizes the cofrontal (`n >= m`) and frontal (`n <= m`) germs, and
//! the minor quotients are Pluecker coordinates of the kernel field. Working
//! over `Q[x]` localized at the origin makes every step exact: a local unit is
//! a polynomial with nonzero constant term, and a nonzero polynomial has a
//! nowhere-dense zero set.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::poly::{exact_div, gcd_many, PolyError, PolyMatrix, Polynomial};
use crate::rational::{rational_to_f64, Rational};

/// Errors raised by germ construction and analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GermError {
    ComponentCount { expected: usize, got: usize },
    VariableCount { expected: usize, got: usize },
    /// Component does not vanish at the origin.
    NotAGerm { component: usize },
    /// Kernel cofactors need source dimension `m + 1`.
    NotCorankOne { n: usize, m: usize },
    /// The Jacobi ideal is not principal in the local ring.
    NotPrincipal,
    /// Principal with zero generator: the criterion's converse does not apply.
    ZeroGenerator,
    /// No base quotient divides every minor quotient in `Q[x]`.
    NonPolynomialSection,
    FiberDimsOutOfRange { fiber_dims: usize, n: usize },
    /// A component depends on a trailing fiber variable.
    DependsOnFiberVariable {
        component: usize,
        variable: usize,
        partial: Polynomial,
    },
    /// Lie-bracket sampling needs kernel rank at least two.
    RankOneKernel { n: usize, m: usize },
    /// A sample point lies on the singular locus.
    SingularSamplePoint { index: usize },
    SamplePointDimension { index: usize, expected: usize, got: usize },
    /// A component string failed to parse.
    ParseFailure { component: usize, error: crate::poly::ParseError },
    Poly(PolyError),
}

impl fmt::Display for GermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermError::ComponentCount { expected, got } => {
                write!(f, "expected {expected} components, got {got}")
            }
            GermError::VariableCount { expected, got } => {
                write!(f, "component over {got} variables, expected {expected}")
            }
            GermError::NotAGerm { component } => {
                write!(f, "component {} does not vanish at the origin", component + 1)
            }
            GermError::NotCorankOne { n, m } => {
                write!(f, "cofactor kernel field needs n = m + 1, got n = {n}, m = {m}")
            }
            GermError::NotPrincipal => write!(f, "Jacobi ideal not principal"),
            GermError::ZeroGenerator => {
                write!(f, "Jacobi ideal is (0): kernel field not certified by the criterion")
            }
            GermError::NonPolynomialSection => write!(
                f,
                "no minor quotient divides the others exactly; the Pluecker section is not polynomial"
            ),
            GermError::FiberDimsOutOfRange { fiber_dims, n } => {
                write!(f, "fiber dimension {fiber_dims} out of range for source dimension {n}")
            }
            GermError::DependsOnFiberVariable {
                component,
                variable,
                partial,
            } => write!(
                f,
                "component {} depends on fiber variable x{}: partial = {}",
                component + 1,
                variable + 1,
                partial
            ),
            GermError::RankOneKernel { n, m } => write!(
                f,
                "integrability sampling needs n - m >= 2 (rank-one kernels are always integrable), got n = {n}, m = {m}"
            ),
            GermError::SingularSamplePoint { index } => {
                write!(f, "sample point {index} lies on the singular locus")
            }
            GermError::SamplePointDimension {
                index,
                expected,
                got,
            } => write!(f, "sample point {index} has {got} coordinates, expected {expected}"),
            GermError::ParseFailure { component, error } => {
                write!(f, "component {}: {error}", component + 1)
            }
            GermError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for GermError {}

impl From<PolyError> for GermError {
    fn from(e: PolyError) -> Self {
        GermError::Poly(e)
    }
}

/// Polynomial map-germ `(R^n, 0) -> (R^m, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapGerm {
    n: usize,
    m: usize,
    components: Vec<Polynomial>,
}

impl MapGerm {
    pub fn new(n: usize, m: usize, components: Vec<Polynomial>) -> Result<Self, GermError> {
        if components.len() != m {
            return Err(GermError::ComponentCount {
                expected: m,
                got: components.len(),
            });
        }
        for (i, c) in components.iter().enumerate() {
            if c.variable_count() != n {
                return Err(GermError::VariableCount {
                    expected: n,
                    got: c.variable_count(),
                });
            }
            if !c.constant_term().is_zero() {
                return Err(GermError::NotAGerm { component: i });
            }
        }
        Ok(MapGerm { n, m, components })
    }

    /// Parses components over the default names `x1..xn`.
    pub fn parse(n: usize, m: usize, components: &[&str]) -> Result<Self, GermError> {
        let names = crate::poly::default_variable_names(n);
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut polys = Vec::with_capacity(components.len());
        for (i, text) in components.iter().enumerate() {
            let poly = Polynomial::parse(text, &name_refs)
                .map_err(|error| GermError::ParseFailure { component: i, error })?;
            polys.push(poly);
        }
        MapGerm::new(n, m, polys)
    }

    pub fn source_dimension(&self) -> usize {
        self.n
    }

    pub fn target_dimension(&self) -> usize {
        self.m
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// Jacobi matrix `(d f_i / d x_j)`, an `m x n` polynomial matrix.
    pub fn jacobi_matrix(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.m * self.n);
        for component in &self.components {
            for j in 0..self.n {
                entries.push(component.partial(j).expect("valid index"));
            }
        }
        PolyMatrix::new(self.m, self.n, entries).expect("consistent dimensions")
    }

    /// Views the same components in `n + extra` source variables.
    pub fn suspend(&self, extra: usize) -> MapGerm {
        MapGerm {
            n: self.n + extra,
            m: self.m,
            components: self
                .components
                .iter()
                .map(|c| c.extend_variables(self.n + extra))
                .collect(),
        }
    }

    /// Right-composition `self o phi` for a polynomial map of the source.
    pub fn compose_right(&self, phi: &[Polynomial]) -> Result<MapGerm, GermError> {
        let composed = self
            .components
            .iter()
            .map(|c| c.substitute(phi))
            .collect::<Result<Vec<_>, _>>()?;
        let n = phi.first().map(Polynomial::variable_count).unwrap_or(0);
        MapGerm::new(n, self.m, composed)
    }
}

/// Index set in the family Gamma: a strictly increasing choice of
/// `min(n, m)` column (or row) indices of the Jacobi matrix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet {
    columns: Vec<usize>,
}

impl IndexSet {
    pub fn new(columns: Vec<usize>) -> Self {
        assert!(columns.windows(2).all(|w| w[0] < w[1]), "indices must increase");
        IndexSet { columns }
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// All size-`size` subsets of `0..total` in lexicographic order.
pub fn index_sets(total: usize, size: usize) -> Vec<IndexSet> {
    let mut out = Vec::new();
    if size > total {
        return out;
    }
    let mut current: Vec<usize> = (0..size).collect();
    loop {
        out.push(IndexSet::new(current.clone()));
        // Advance to the next combination.
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + total - size {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..size {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// Minor determinants of the Jacobi matrix, one per index set in Gamma.
///
/// For `n >= m` the sets choose columns; for `n < m` they choose rows.
pub fn jacobi_minors(f: &MapGerm) -> BTreeMap<IndexSet, Polynomial> {
    let jac = f.jacobi_matrix();
    let (n, m) = (f.source_dimension(), f.target_dimension());
    let mut minors = BTreeMap::new();
    if n >= m {
        let all_rows: Vec<usize> = (0..m).collect();
        for set in index_sets(n, m) {
            let det = jac
                .submatrix(&all_rows, set.columns())
                .determinant()
                .expect("square");
            minors.insert(set, det);
        }
    } else {
        let all_cols: Vec<usize> = (0..n).collect();
        for set in index_sets(m, n) {
            let det = jac
                .submatrix(set.columns(), &all_cols)
                .determinant()
                .expect("square");
            minors.insert(set, det);
        }
    }
    minors
}

/// Minors, their gcd, quotients, and the principality decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    /// Minor determinants `D_I`.
    pub minors: BTreeMap<IndexSet, Polynomial>,
    /// Normalized gcd `g` of the minors; `D_I = k_I * g` exactly.
    pub gcd: Polynomial,
    /// Quotients `k_I`.
    pub quotients: BTreeMap<IndexSet, Polynomial>,
    /// Whether the Jacobi ideal is principal in the local ring.
    pub principal: bool,
    /// Lexicographically least index with a unit quotient, when one exists.
    pub base_index: Option<IndexSet>,
    /// The normalized generator, present exactly when principal.
    pub generator: Option<Polynomial>,
}

/// Computes the gcd of the Jacobi minors and decides principality.
///
/// Every element of the ideal generated by the quotients `k_I` in the local
/// ring has constant term a rational combination of the `k_I(0)`, so that
/// ideal contains a unit exactly when some `k_I(0)` is nonzero; in that case
/// the minor `D_{I_0}` generates the whole Jacobi ideal. The zero ideal is
/// principal trivially.
pub fn principality_report(f: &MapGerm) -> JacobiReport {
    let minors = jacobi_minors(f);
    let minor_list: Vec<Polynomial> = minors.values().cloned().collect();
    let g = gcd_many(&minor_list).expect("Gamma is nonempty");

    let nvars = f.source_dimension();
    let mut quotients = BTreeMap::new();
    if g.is_zero() {
        for set in minors.keys() {
            quotients.insert(set.clone(), Polynomial::zero(nvars));
        }
        return JacobiReport {
            minors,
            gcd: g.clone(),
            quotients,
            principal: true,
            base_index: None,
            generator: Some(g),
        };
    }

    for (set, minor) in &minors {
        let quotient = exact_div(minor, &g).expect("gcd divides every minor");
        quotients.insert(set.clone(), quotient);
    }
    let base_index = quotients
        .iter()
        .find(|(_, k)| !k.constant_term().is_zero())
        .map(|(set, _)| set.clone());
    let principal = base_index.is_some();
    JacobiReport {
        minors,
        gcd: g.clone(),
        quotients,
        principal,
        base_index,
        generator: principal.then_some(g),
    }
}

/// Classification outcome of the principality criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    Cofrontal,
    Frontal,
    /// Equidimensional germs are frontal and cofrontal simultaneously.
    Both,
    Indeterminate,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictKind::Cofrontal => write!(f, "cofrontal"),
            VerdictKind::Frontal => write!(f, "frontal"),
            VerdictKind::Both => write!(f, "both (n=m)"),
            VerdictKind::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

/// Verdict of [`classify_germ`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// True exactly when the ideal is principal with nonzero generator, i.e.
    /// the singular locus is the nowhere-dense zero set of a nonzero
    /// polynomial.
    pub fair: bool,
    pub reason: String,
}

/// Applies the principality criterion and reports the verdict.
pub fn classify_germ(f: &MapGerm) -> Verdict {
    let report = principality_report(f);
    classify_from_report(f, &report)
}

/// Same as [`classify_germ`] for a precomputed report.
pub fn classify_from_report(f: &MapGerm, report: &JacobiReport) -> Verdict {
    let (n, m) = (f.source_dimension(), f.target_dimension());
    if !report.principal {
        let certificate = if n > m {
            "; this certifies the germ is not a cofrontal"
        } else if n < m {
            "; this certifies the germ is not a frontal"
        } else {
            ""
        };
        return Verdict {
            kind: VerdictKind::Indeterminate,
            fair: false,
            reason: format!("Jacobi ideal not principal — not a fair cofrontal/frontal{certificate}"),
        };
    }
    let generator = report.generator.as_ref().expect("principal");
    if generator.is_zero() {
        return Verdict {
            kind: VerdictKind::Indeterminate,
            fair: false,
            reason: "Jacobi ideal is (0): the whole germ is singular, so principality alone \
                     does not decide the criterion (its converse needs a nowhere-dense \
                     singular locus)"
                .to_owned(),
        };
    }
    let kind = match n.cmp(&m) {
        std::cmp::Ordering::Greater => VerdictKind::Cofrontal,
        std::cmp::Ordering::Less => VerdictKind::Frontal,
        std::cmp::Ordering::Equal => VerdictKind::Both,
    };
    Verdict {
        kind,
        fair: true,
        reason: format!(
            "Jacobi ideal is principal with generator {generator}; a nonzero polynomial \
             has a nowhere-dense zero set"
        ),
    }
}

/// Signed maximal minors of the Jacobi matrix for `n = m + 1`: component `j`
/// is `(-1)^j` times the determinant of the matrix with column `j` deleted.
/// The matrix-vector product `J(f) * xi` vanishes identically.
pub fn kernel_cofactor_field(f: &MapGerm) -> Result<Vec<Polynomial>, GermError> {
    let (n, m) = (f.source_dimension(), f.target_dimension());
    if n != m + 1 {
        return Err(GermError::NotCorankOne { n, m });
    }
    let jac = f.jacobi_matrix();
    let all_rows: Vec<usize> = (0..m).collect();
    let mut field = Vec::with_capacity(n);
    for j in 0..n {
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let det = jac.submatrix(&all_rows, &cols).determinant().expect("square");
        field.push(if j % 2 == 0 { det } else { det.neg() });
    }
    Ok(field)
}

/// Kernel field as a section in Pluecker coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelField {
    /// Index whose quotient is the unit used for normalization.
    pub base_index: IndexSet,
    /// Normalized Pluecker coordinates `h_I` with `D_I = h_I * D_{I0}`
    /// exactly; the base entry is 1.
    pub section: BTreeMap<IndexSet, Polynomial>,
    /// For `n = m + 1`: a polynomial kernel vector, nonzero at the origin,
    /// obtained from the cofactor field by exact division by the generator
    /// and the base unit.
    pub cofactor_field: Option<Vec<Polynomial>>,
}

/// Builds the kernel-field section for a fair germ.
///
/// The quotients `k_I` are projective coordinates of the kernel plane; the
/// section is normalized by exact division by a unit quotient so the base
/// entry renders as 1. Candidate base indices are tried in lexicographic
/// order; if no unit quotient divides all the others in `Q[x]`, the section
/// exists only in the local ring and [`GermError::NonPolynomialSection`] is
/// returned.
pub fn pluecker_section(f: &MapGerm) -> Result<KernelField, GermError> {
    let report = principality_report(f);
    if !report.principal {
        return Err(GermError::NotPrincipal);
    }
    let generator = report.generator.as_ref().expect("principal");
    if generator.is_zero() {
        return Err(GermError::ZeroGenerator);
    }

    let candidates: Vec<&IndexSet> = report
        .quotients
        .iter()
        .filter(|(_, k)| !k.constant_term().is_zero())
        .map(|(set, _)| set)
        .collect();
    for base in candidates {
        let unit = &report.quotients[base];
        let mut section = BTreeMap::new();
        let mut all_exact = true;
        for (set, quotient) in &report.quotients {
            match exact_div(quotient, unit) {
                Some(h) => {
                    section.insert(set.clone(), h);
                }
                None => {
                    all_exact = false;
                    break;
                }
            }
        }
        if !all_exact {
            continue;
        }
        let cofactor_field = if f.source_dimension() == f.target_dimension() + 1 {
            let raw = kernel_cofactor_field(f)?;
            let mut normalized = Vec::with_capacity(raw.len());
            for xi in &raw {
                let over_generator =
                    exact_div(xi, generator).expect("generator divides every minor");
                let reduced = exact_div(&over_generator, unit)
                    .ok_or(GermError::NonPolynomialSection)?;
                normalized.push(reduced);
            }
            Some(normalized)
        } else {
            None
        };
        return Ok(KernelField {
            base_index: base.clone(),
            section,
            cofactor_field,
        });
    }
    Err(GermError::NonPolynomialSection)
}

/// Strips trailing fiber variables from an adapted germ.
///
/// Preconditions are checked exactly: every component must have identically
/// vanishing partials with respect to the last `fiber_dims` variables.
pub fn reduce_adapted(f: &MapGerm, fiber_dims: usize) -> Result<MapGerm, GermError> {
    let n = f.source_dimension();
    if fiber_dims > n {
        return Err(GermError::FiberDimsOutOfRange { fiber_dims, n });
    }
    let reduced_vars = n - fiber_dims;
    for (i, component) in f.components().iter().enumerate() {
        for v in reduced_vars..n {
            let partial = component.partial(v).expect("valid index");
            if !partial.is_zero() {
                return Err(GermError::DependsOnFiberVariable {
                    component: i,
                    variable: v,
                    partial,
                });
            }
        }
    }
    let components = f
        .components()
        .iter()
        .map(|c| {
            let mapping: Vec<usize> = (0..reduced_vars).chain(0..fiber_dims).collect();
            debug_assert_eq!(mapping.len(), n);
            c.remap_variables(&mapping, reduced_vars)
        })
        .collect();
    MapGerm::new(reduced_vars, f.target_dimension(), components)
}

/// Result of the numeric integrability diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrabilityReport {
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

const INTEGRABILITY_TOLERANCE: f64 = 1e-8;
const FD_STEP: f64 = 1e-5;

/// Numerically checks that Lie brackets of a local kernel frame stay in the
/// kernel of the Jacobi matrix at the sample points.
///
/// Diagnostic only: for a fair germ the kernel field is integrable off the
/// singular locus automatically, so this samples the plumbing rather than
/// proving a theorem. Rank-one kernels (`n - m = 1`) are always integrable
/// and are rejected.
pub fn integrability_sample_check(
    f: &MapGerm,
    sample_points: &[Vec<Rational>],
) -> Result<IntegrabilityReport, GermError> {
    let (n, m) = (f.source_dimension(), f.target_dimension());
    if n < m + 2 {
        return Err(GermError::RankOneKernel { n, m });
    }
    let report = principality_report(f);
    if !report.principal {
        return Err(GermError::NotPrincipal);
    }
    let generator = report.generator.as_ref().expect("principal");
    if generator.is_zero() {
        return Err(GermError::ZeroGenerator);
    }

    let jac = f.jacobi_matrix();
    let mut max_residual: f64 = 0.0;
    for (index, point) in sample_points.iter().enumerate() {
        if point.len() != n {
            return Err(GermError::SamplePointDimension {
                index,
                expected: n,
                got: point.len(),
            });
        }
        if generator.evaluate(point).expect("dimension checked").is_zero() {
            return Err(GermError::SingularSamplePoint { index });
        }
        let x0: Vec<f64> = point.iter().map(rational_to_f64).collect();

        // Chart choice: the column set with the largest minor at this point.
        let mut best: Option<(f64, Vec<usize>)> = None;
        for set in index_sets(n, m) {
            let sub: Vec<Vec<f64>> = (0..m)
                .map(|r| set.columns().iter().map(|&c| jac.entry(r, c).eval_f64(&x0)).collect())
                .collect();
            let det = det_f64(&sub).abs();
            if best.as_ref().map(|(b, _)| det > *b).unwrap_or(true) {
                best = Some((det, set.columns().to_vec()));
            }
        }
        let (best_det, chart) = best.expect("Gamma nonempty");
        if best_det < 1e-12 {
            return Err(GermError::SingularSamplePoint { index });
        }

        let frame_columns: Vec<usize> = (0..n).filter(|c| !chart.contains(c)).collect();
        let frame_at = |x: &[f64]| -> Option<Vec<Vec<f64>>> {
            let block: Vec<Vec<f64>> = (0..m)
                .map(|r| chart.iter().map(|&c| jac.entry(r, c).eval_f64(x)).collect())
                .collect();
            let mut vectors = Vec::with_capacity(frame_columns.len());
            for &j in &frame_columns {
                let rhs: Vec<f64> = (0..m).map(|r| -jac.entry(r, j).eval_f64(x)).collect();
                let weights = solve_f64(&block, &rhs)?;
                let mut v = vec![0.0; n];
                v[j] = 1.0;
                for (slot, &col) in chart.iter().enumerate() {
                    v[col] = weights[slot];
                }
                vectors.push(v);
            }
            Some(vectors)
        };

        let base_frame = frame_at(&x0).ok_or(GermError::SingularSamplePoint { index })?;
        let jac_at_x0: Vec<Vec<f64>> = (0..m)
            .map(|r| (0..n).map(|c| jac.entry(r, c).eval_f64(&x0)).collect())
            .collect();

        for a in 0..base_frame.len() {
            for b in a + 1..base_frame.len() {
                let bracket = lie_bracket(&frame_at, &x0, &base_frame[a], &base_frame[b], a, b)
                    .ok_or(GermError::SingularSamplePoint { index })?;
                for row in &jac_at_x0 {
                    let residual: f64 =
                        row.iter().zip(&bracket).map(|(j, v)| j * v).sum::<f64>().abs();
                    max_residual = max_residual.max(residual);
                }
            }
        }
    }
    Ok(IntegrabilityReport {
        samples: sample_points.len(),
        max_residual,
        tolerance: INTEGRABILITY_TOLERANCE,
        passed: max_residual <= INTEGRABILITY_TOLERANCE,
    })
}

/// Central-difference Lie bracket `[v_a, v_b] = (Dv_b) v_a - (Dv_a) v_b`.
fn lie_bracket<F>(
    frame_at: &F,
    x0: &[f64],
    va: &[f64],
    vb: &[f64],
    a: usize,
    b: usize,
) -> Option<Vec<f64>>
where
    F: Fn(&[f64]) -> Option<Vec<Vec<f64>>>,
{
    let n = x0.len();
    let displaced = |direction: &[f64], sign: f64| -> Vec<f64> {
        (0..n).map(|i| x0[i] + sign * FD_STEP * direction[i]).collect()
    };
    let b_plus = frame_at(&displaced(va, 1.0))?;
    let b_minus = frame_at(&displaced(va, -1.0))?;
    let a_plus = frame_at(&displaced(vb, 1.0))?;
    let a_minus = frame_at(&displaced(vb, -1.0))?;
    let mut bracket = vec![0.0; n];
    for i in 0..n {
        let d_vb_along_va = (b_plus[b][i] - b_minus[b][i]) / (2.0 * FD_STEP);
        let d_va_along_vb = (a_plus[a][i] - a_minus[a][i]) / (2.0 * FD_STEP);
        bracket[i] = d_vb_along_va - d_va_along_vb;
    }
    Some(bracket)
}

/// Determinant of a small dense matrix by LU with partial pivoting.
#[allow(clippy::needless_range_loop)] // split-borrow elimination kernel
fn det_f64(matrix: &[Vec<f64>]) -> f64 {
    let n = matrix.len();
    let mut m: Vec<Vec<f64>> = matrix.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap())
            .unwrap();
        if m[pivot_row][col] == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let factor = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= factor * m[col][c];
            }
        }
    }
    det
}

/// Solves a small dense linear system; `None` if effectively singular.
#[allow(clippy::needless_range_loop)] // split-borrow elimination kernel
fn solve_f64(matrix: &[Vec<f64>], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = matrix.len();
    let mut m: Vec<Vec<f64>> = matrix.to_vec();
    let mut b = rhs.to_vec();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&a, &c| m[a][col].abs().partial_cmp(&m[c][col].abs()).unwrap())?;
        if m[pivot_row][col].abs() < 1e-14 {
            return None;
        }
        m.swap(pivot_row, col);
        b.swap(pivot_row, col);
        for r in col + 1..n {
            let factor = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= factor * m[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for c in row + 1..n {
            acc -= m[row][c] * x[c];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}
