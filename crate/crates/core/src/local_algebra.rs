//! Truncated local-algebra dimensions and finiteness of reductions.
//!
//! For an equidimensional germ `f : (R^m, 0) -> (R^m, 0)` the local algebra is
//! the quotient of function-germs by the ideal pulled back from the maximal
//! ideal of the target. Its dimension is approximated from below degree by
//! degree: at degree `D` we compute `dim Q[x]/(I + m^{D+1})` with `I` the
//! ideal generated by the components, by exact row reduction on the monomial
//! basis. Two consecutive equal dimensions declare finiteness; running out of
//! budget reports an honest `Undecided`. A finite dimension bounds the number
//! of points in nearby fibers.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::germ::{reduce_adapted, GermError, MapGerm};
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalAlgebraError {
    /// The profile needs an equidimensional germ; reduce first.
    NotEquidimensional { n: usize, m: usize },
    /// Stabilization needs at least two degrees.
    CapTooSmall { cap: u32 },
    /// A bound was requested from an undecided report.
    Undecided { cap: u32 },
    Germ(GermError),
}

impl fmt::Display for LocalAlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalAlgebraError::NotEquidimensional { n, m } => write!(
                f,
                "local algebra needs n = m (reduce an adapted germ first), got n = {n}, m = {m}"
            ),
            LocalAlgebraError::CapTooSmall { cap } => {
                write!(f, "degree cap {cap} is too small; need at least 2")
            }
            LocalAlgebraError::Undecided { cap } => {
                write!(f, "dimension did not stabilize by degree {cap}")
            }
            LocalAlgebraError::Germ(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LocalAlgebraError {}

impl From<GermError> for LocalAlgebraError {
    fn from(e: GermError) -> Self {
        LocalAlgebraError::Germ(e)
    }
}

/// Outcome of the degree-by-degree semi-decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finiteness {
    /// Dimension stabilized over two consecutive degrees.
    Finite(usize),
    /// No stabilization within the cap.
    Undecided { cap: u32 },
}

/// Per-degree dimensions and the finiteness status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitenessReport {
    /// `(degree, dim Q[x]/(I + m^(degree+1)))`, in increasing degree, up to
    /// the stabilizing degree or the cap.
    pub dims_by_degree: Vec<(u32, usize)>,
    pub status: Finiteness,
    pub cap_used: u32,
}

/// Computes the truncated quotient dimension degree by degree until it
/// stabilizes or the cap is reached.
pub fn quotient_dimension_profile(
    f: &MapGerm,
    cap: u32,
) -> Result<FinitenessReport, LocalAlgebraError> {
    let (n, m) = (f.source_dimension(), f.target_dimension());
    if n != m {
        return Err(LocalAlgebraError::NotEquidimensional { n, m });
    }
    if cap < 2 {
        return Err(LocalAlgebraError::CapTooSmall { cap });
    }

    let mut dims = Vec::new();
    let mut previous: Option<usize> = None;
    for degree in 0..=cap {
        let dim = truncated_dimension(f, degree);
        dims.push((degree, dim));
        if previous == Some(dim) {
            return Ok(FinitenessReport {
                dims_by_degree: dims,
                status: Finiteness::Finite(dim),
                cap_used: cap,
            });
        }
        previous = Some(dim);
    }
    Ok(FinitenessReport {
        dims_by_degree: dims,
        status: Finiteness::Undecided { cap },
        cap_used: cap,
    })
}

/// Reduces an adapted germ and profiles its local algebra.
pub fn k_finiteness(
    f: &MapGerm,
    fiber_dims: usize,
    cap: u32,
) -> Result<FinitenessReport, LocalAlgebraError> {
    let reduced = reduce_adapted(f, fiber_dims)?;
    quotient_dimension_profile(&reduced, cap)
}

/// The number of points of nearby fibers is bounded by the stabilized
/// dimension; undecided reports carry no bound.
pub fn fiber_count_bound(report: &FinitenessReport) -> Result<usize, LocalAlgebraError> {
    match report.status {
        Finiteness::Finite(dim) => Ok(dim),
        Finiteness::Undecided { cap } => Err(LocalAlgebraError::Undecided { cap }),
    }
}

/// `dim Q[x]/(I + m^(degree+1))` by sparse echelon reduction keyed on
/// graded-lex leading monomials.
fn truncated_dimension(f: &MapGerm, degree: u32) -> usize {
    let nvars = f.source_dimension();
    let basis_size = monomial_count(nvars, degree);

    // Echelon rows of the subspace spanned by truncated multiples of the
    // components, keyed by their graded-lex leading monomial.
    let mut pivots: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for component in f.components() {
        if component.is_zero() {
            continue;
        }
        // Only multipliers that leave something after truncation matter.
        let low = component.lowest_degree().expect("nonzero");
        if low > degree {
            continue;
        }
        for multiplier in monomials_up_to(nvars, degree - low) {
            let product = component
                .mul_term(&multiplier, &Rational::one())
                .jet_truncate(degree);
            insert_echelon(&mut pivots, product);
        }
    }
    basis_size - pivots.len()
}

/// Reduces `row` against the pivots and stores it if independent.
fn insert_echelon(pivots: &mut BTreeMap<Monomial, Polynomial>, mut row: Polynomial) {
    loop {
        let Some((lead, coeff)) = row.leading_term().map(|(m, c)| (m.clone(), c.clone())) else {
            return;
        };
        match pivots.get(&lead) {
            Some(pivot) => {
                row = row.sub(&pivot.scale(&coeff));
            }
            None => {
                let inverse = Rational::one() / coeff;
                pivots.insert(lead, row.scale(&inverse));
                return;
            }
        }
    }
}

fn monomial_count(nvars: usize, degree: u32) -> usize {
    // C(degree + nvars, nvars)
    let mut count: u128 = 1;
    for i in 1..=nvars as u128 {
        count = count * (degree as u128 + i) / i;
    }
    count as usize
}

fn monomials_up_to(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    push_monomials(0, degree, &mut current, &mut out);
    out
}

fn push_monomials(slot: usize, budget: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if slot == current.len() {
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in 0..=budget {
        current[slot] = e;
        push_monomials(slot + 1, budget - e, current, out);
    }
    current[slot] = 0;
}
