//! Mapping-torus cofrontals: assembly, evaluation, fiber censuses, and
//! numeric first-return maps.
//!
//! A piece is an equidimensional germ `h` together with a finite-order
//! symmetry `sigma` of it and an invariant box domain; the mapping torus
//! glues `[0,1] x U` by `(0, x) ~ (1, sigma(x))` and sends `[t, x]` to
//! `h(x)`. Fibers over a regular value decompose into circles: each
//! `sigma`-orbit of size `p` in `h^{-1}(b)` is one circle wrapping the base
//! circle `p` times. For one-dimensional fibers the census is exact (Sturm
//! isolation); for two-dimensional fibers it is numeric with an exactness
//! cross-check against the local-algebra point bound.

pub mod flow;
mod interval;
mod newton;
mod sturm;

pub use flow::{
    default_fiber_samples, mapping_torus_atlas, mapping_torus_transversal, numeric_return_map,
    rk4_step, Chart, ChartedManifold, ReturnMapSample, Transition, Transversal,
};
pub use interval::{interval_eval, RatBox, RatInterval};
pub use sturm::{isolate_roots, RootEnclosure, RootIsolator, UniPoly};

use std::fmt;

use num_traits::Zero;

use crate::germ::MapGerm;
use crate::local_algebra::{quotient_dimension_profile, Finiteness, LocalAlgebraError};
use crate::poly::{default_variable_names, Polynomial};
use crate::rational::{rational_frac, rational_to_f64, Rational};
use crate::symmetry::{check_right_symmetry, diffeo_order, DiffeoOrder, GermDiffeo, SymmetryError};

#[derive(Debug, Clone)]
pub enum TorusError {
    PieceNotEquidimensional { piece: usize, n: usize, m: usize },
    SymmetryDimension { piece: usize, expected: usize, got: usize },
    BoxDimension { piece: usize, expected: usize, got: usize },
    /// Domain boxes must contain the origin in their interior.
    BoxMustContainOrigin { piece: usize },
    /// The candidate symmetry fails, with the least differing monomial.
    SymmetryRejected { piece: usize, component: usize, monomial: String },
    /// Symmetry order did not resolve within the cap.
    OrderUndecided { piece: usize, cap: u32 },
    /// The box is not invariant under the symmetry.
    BoxNotInvariant { piece: usize, detail: String },
    MixedTargetDimensions,
    EmptyTorus,
    PieceIndexOutOfRange { index: usize, count: usize },
    TimeOutsideUnitInterval { t: f64 },
    PointOutsideDomain,
    TargetDimension { expected: usize, got: usize },
    /// Census root finding is implemented for m <= 2 only.
    UnsupportedTargetDimension { m: usize },
    /// The fiber is not a finite point set (the shifted germ vanished).
    FiberNotFinite { piece: usize },
    /// K-finiteness is a precondition of the planar census.
    KFinitenessUndecided { piece: usize, cap: u32 },
    /// The numeric census found more roots than the local-algebra bound.
    CensusExceedsBound { piece: usize, found: usize, bound: usize },
    /// A symmetry image could not be matched to a root.
    OrbitMatchFailed { piece: usize },
    EmptyAtlas,
    ChartDimensionMismatch,
    TransitionInconsistent { transition: usize, detail: String },
    LeafExitsAtlas,
    NoReturnWithinBudget { steps: usize },
    TransversalTangency,
    LocalAlgebra(LocalAlgebraError),
    Symmetry(SymmetryError),
}

impl fmt::Display for TorusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusError::PieceNotEquidimensional { piece, n, m } => {
                write!(f, "piece {piece}: germ must be equidimensional, got n = {n}, m = {m}")
            }
            TorusError::SymmetryDimension { piece, expected, got } => {
                write!(f, "piece {piece}: symmetry has dimension {got}, expected {expected}")
            }
            TorusError::BoxDimension { piece, expected, got } => {
                write!(f, "piece {piece}: box has {got} intervals, expected {expected}")
            }
            TorusError::BoxMustContainOrigin { piece } => {
                write!(f, "piece {piece}: box must contain the origin in its interior")
            }
            TorusError::SymmetryRejected { piece, component, monomial } => write!(
                f,
                "piece {piece}: candidate symmetry fails on component {} at monomial {monomial}",
                component + 1
            ),
            TorusError::OrderUndecided { piece, cap } => {
                write!(f, "piece {piece}: symmetry order undecided at cap {cap}")
            }
            TorusError::BoxNotInvariant { piece, detail } => {
                write!(f, "piece {piece}: box not invariant under the symmetry ({detail})")
            }
            TorusError::MixedTargetDimensions => write!(f, "pieces disagree on the target dimension"),
            TorusError::EmptyTorus => write!(f, "a mapping torus needs at least one piece"),
            TorusError::PieceIndexOutOfRange { index, count } => {
                write!(f, "piece index {index} out of range for {count} pieces")
            }
            TorusError::TimeOutsideUnitInterval { t } => {
                write!(f, "time coordinate {t} outside [0, 1)")
            }
            TorusError::PointOutsideDomain => write!(f, "point outside the domain box"),
            TorusError::TargetDimension { expected, got } => {
                write!(f, "target value has {got} coordinates, expected {expected}")
            }
            TorusError::UnsupportedTargetDimension { m } => {
                write!(f, "census root finding supports m <= 2, got m = {m}")
            }
            TorusError::FiberNotFinite { piece } => {
                write!(f, "piece {piece}: fiber is not a finite point set")
            }
            TorusError::KFinitenessUndecided { piece, cap } => write!(
                f,
                "piece {piece}: local-algebra dimension undecided at cap {cap}; the planar census needs the bound"
            ),
            TorusError::CensusExceedsBound { piece, found, bound } => write!(
                f,
                "piece {piece}: numeric census found {found} roots, exceeding the local-algebra bound {bound}"
            ),
            TorusError::OrbitMatchFailed { piece } => {
                write!(f, "piece {piece}: could not match a symmetry image to a root")
            }
            TorusError::EmptyAtlas => write!(f, "atlas needs at least one chart"),
            TorusError::ChartDimensionMismatch => write!(f, "atlas dimensions are inconsistent"),
            TorusError::TransitionInconsistent { transition, detail } => {
                write!(f, "transition {transition} inconsistent: {detail}")
            }
            TorusError::LeafExitsAtlas => write!(f, "leaf exits the atlas"),
            TorusError::NoReturnWithinBudget { steps } => {
                write!(f, "no first return within {steps} steps")
            }
            TorusError::TransversalTangency => {
                write!(f, "vector field tangent to the transversal at a sample")
            }
            TorusError::LocalAlgebra(e) => write!(f, "{e}"),
            TorusError::Symmetry(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for TorusError {}

impl From<LocalAlgebraError> for TorusError {
    fn from(e: LocalAlgebraError) -> Self {
        TorusError::LocalAlgebra(e)
    }
}

impl From<SymmetryError> for TorusError {
    fn from(e: SymmetryError) -> Self {
        TorusError::Symmetry(e)
    }
}

/// Default cap for symmetry orders during assembly.
pub const DEFAULT_ORDER_CAP: u32 = 64;
/// Default degree cap for the local-algebra precondition of planar censuses.
pub const DEFAULT_DEGREE_CAP: u32 = 16;
/// Boundary proximity below which census roots are flagged.
const BOUNDARY_MARGIN_NUM: i64 = 1;
const BOUNDARY_MARGIN_DEN: i64 = 1000;
/// Numeric orbit-matching tolerance for planar censuses.
const NUMERIC_MATCH_TOLERANCE: f64 = 1e-6;

/// Input for one mapping-torus piece.
#[derive(Debug, Clone)]
pub struct PieceSpec {
    pub germ: MapGerm,
    pub symmetry: GermDiffeo,
    pub domain: RatBox,
}

/// Validated piece: `symmetry` is exactly in the right symmetry group of
/// `germ`, has the recorded finite order, and maps the domain box into
/// itself.
#[derive(Debug, Clone)]
pub struct TorusPiece {
    pub germ: MapGerm,
    pub symmetry: GermDiffeo,
    pub domain: RatBox,
    pub symmetry_order: u32,
}

/// Disjoint union of validated pieces.
#[derive(Debug, Clone)]
pub struct MappingTorusCofrontal {
    pieces: Vec<TorusPiece>,
    target_dimension: usize,
}

impl MappingTorusCofrontal {
    pub fn pieces(&self) -> &[TorusPiece] {
        &self.pieces
    }

    pub fn target_dimension(&self) -> usize {
        self.target_dimension
    }
}

/// Validates the gluing data and assembles the torus.
///
/// The polynomial identity `h o sigma = h` holds on all of the box once it
/// holds at all, so validation makes the construction total; box invariance
/// is checked at the vertices (exact witnesses) and by an interval-arithmetic
/// range bound (conservative).
pub fn assemble(
    specs: Vec<PieceSpec>,
    order_cap: u32,
) -> Result<MappingTorusCofrontal, TorusError> {
    if specs.is_empty() {
        return Err(TorusError::EmptyTorus);
    }
    let target_dimension = specs[0].germ.target_dimension();
    let mut pieces = Vec::with_capacity(specs.len());
    for (index, spec) in specs.into_iter().enumerate() {
        let m = spec.germ.target_dimension();
        let n = spec.germ.source_dimension();
        if n != m {
            return Err(TorusError::PieceNotEquidimensional { piece: index, n, m });
        }
        if m != target_dimension {
            return Err(TorusError::MixedTargetDimensions);
        }
        if spec.symmetry.dimension() != m {
            return Err(TorusError::SymmetryDimension {
                piece: index,
                expected: m,
                got: spec.symmetry.dimension(),
            });
        }
        if spec.domain.dimension() != m {
            return Err(TorusError::BoxDimension {
                piece: index,
                expected: m,
                got: spec.domain.dimension(),
            });
        }
        if !spec.domain.contains_origin_strictly() {
            return Err(TorusError::BoxMustContainOrigin { piece: index });
        }

        let certificate = check_right_symmetry(&spec.germ, &spec.symmetry)?;
        if let Some(counterexample) = certificate.counterexample {
            let names = default_variable_names(m);
            return Err(TorusError::SymmetryRejected {
                piece: index,
                component: counterexample.component,
                monomial: counterexample.monomial.render(&names),
            });
        }

        let symmetry_order = match diffeo_order(&spec.symmetry, order_cap) {
            DiffeoOrder::Finite(k) => k,
            DiffeoOrder::Undecided { cap } => {
                return Err(TorusError::OrderUndecided { piece: index, cap })
            }
        };

        check_box_invariance(index, &spec)?;

        pieces.push(TorusPiece {
            germ: spec.germ,
            symmetry: spec.symmetry,
            domain: spec.domain,
            symmetry_order,
        });
    }
    Ok(MappingTorusCofrontal {
        pieces,
        target_dimension,
    })
}

fn check_box_invariance(index: usize, spec: &PieceSpec) -> Result<(), TorusError> {
    // Exact vertex witnesses first.
    for vertex in spec.domain.vertices() {
        let image: Vec<Rational> = spec
            .symmetry
            .components()
            .iter()
            .map(|c| c.evaluate(&vertex).expect("dimensions agree"))
            .collect();
        if !spec.domain.contains_point(&image) {
            let rendered: Vec<String> =
                vertex.iter().map(crate::rational::render_rational).collect();
            return Err(TorusError::BoxNotInvariant {
                piece: index,
                detail: format!("vertex ({}) maps outside the box", rendered.join(", ")),
            });
        }
    }
    // Conservative interval range bound over the whole box.
    for (axis, component) in spec.symmetry.components().iter().enumerate() {
        let range = interval_eval(component, &spec.domain);
        if !spec.domain.interval(axis).contains_interval(&range) {
            return Err(TorusError::BoxNotInvariant {
                piece: index,
                detail: format!(
                    "interval bound for coordinate {} is [{}, {}], outside the box",
                    axis + 1,
                    crate::rational::render_rational(&range.lo),
                    crate::rational::render_rational(&range.hi)
                ),
            });
        }
    }
    Ok(())
}

/// Value of the torus map at `[t, x]`: `h_i(x)`, independent of `t`.
pub fn evaluate_point(
    torus: &MappingTorusCofrontal,
    piece_index: usize,
    t: f64,
    point: &[Rational],
) -> Result<Vec<Rational>, TorusError> {
    let piece = torus
        .pieces
        .get(piece_index)
        .ok_or(TorusError::PieceIndexOutOfRange {
            index: piece_index,
            count: torus.pieces.len(),
        })?;
    if !(0.0..1.0).contains(&t) {
        return Err(TorusError::TimeOutsideUnitInterval { t });
    }
    if !piece.domain.contains_point(point) {
        return Err(TorusError::PointOutsideDomain);
    }
    Ok(piece
        .germ
        .components()
        .iter()
        .map(|c| c.evaluate(point).expect("dimensions agree"))
        .collect())
}

/// Roots of one piece's fiber.
#[derive(Debug, Clone)]
pub enum PieceRoots {
    /// Exact rational enclosures (one-dimensional fibers).
    Exact(Vec<RootEnclosure>),
    /// Numeric points (two-dimensional fibers).
    Numeric(Vec<Vec<f64>>),
}

impl PieceRoots {
    pub fn len(&self) -> usize {
        match self {
            PieceRoots::Exact(roots) => roots.len(),
            PieceRoots::Numeric(roots) => roots.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Floating-point approximation of root `index`.
    pub fn approx(&self, index: usize) -> Vec<f64> {
        match self {
            PieceRoots::Exact(roots) => vec![roots[index].midpoint_f64()],
            PieceRoots::Numeric(roots) => roots[index].clone(),
        }
    }
}

/// One symmetry orbit of fiber roots; its size is the wrapping number of the
/// corresponding circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Root indices in cycle order.
    pub roots: Vec<usize>,
    pub wrapping: usize,
}

/// Census of one piece.
#[derive(Debug, Clone)]
pub struct PieceCensus {
    pub piece: usize,
    pub roots: PieceRoots,
    pub orbits: Vec<Orbit>,
    /// Indices of roots within 1/1000 of the box boundary; such roots may be
    /// artifacts of the fixed box rather than of a shrunk target
    /// neighborhood.
    pub near_boundary: Vec<usize>,
}

/// One fiber circle.
#[derive(Debug, Clone)]
pub struct Circle {
    pub piece: usize,
    pub representative: Vec<f64>,
    pub wrapping: usize,
}

/// Fiber decomposition over a target value.
#[derive(Debug, Clone)]
pub struct FiberCensus {
    pub target_value: Vec<Rational>,
    pub pieces: Vec<PieceCensus>,
    pub circles: Vec<Circle>,
    pub total_circles: usize,
}

/// Computes the fiber census over `b` with the default degree cap.
pub fn fiber_census(
    torus: &MappingTorusCofrontal,
    b: &[Rational],
) -> Result<FiberCensus, TorusError> {
    fiber_census_with_cap(torus, b, DEFAULT_DEGREE_CAP)
}

/// Fiber census with an explicit local-algebra degree cap (used by the
/// planar route's K-finiteness precondition).
pub fn fiber_census_with_cap(
    torus: &MappingTorusCofrontal,
    b: &[Rational],
    degree_cap: u32,
) -> Result<FiberCensus, TorusError> {
    let m = torus.target_dimension;
    if b.len() != m {
        return Err(TorusError::TargetDimension {
            expected: m,
            got: b.len(),
        });
    }
    let mut pieces = Vec::with_capacity(torus.pieces.len());
    let mut circles = Vec::new();
    for (index, piece) in torus.pieces.iter().enumerate() {
        let census = match m {
            1 => census_exact(index, piece, &b[0])?,
            2 => census_planar(index, piece, b, degree_cap)?,
            _ => return Err(TorusError::UnsupportedTargetDimension { m }),
        };
        for orbit in &census.orbits {
            circles.push(Circle {
                piece: index,
                representative: census.roots.approx(orbit.roots[0]),
                wrapping: orbit.wrapping,
            });
        }
        pieces.push(census);
    }
    let total_circles = circles.len();
    Ok(FiberCensus {
        target_value: b.to_vec(),
        pieces,
        circles,
        total_circles,
    })
}

/// Exact census for one-dimensional fibers: Sturm isolation of `h = b`,
/// orbit matching by interval images with refinement until unambiguous.
fn census_exact(
    index: usize,
    piece: &TorusPiece,
    b: &Rational,
) -> Result<PieceCensus, TorusError> {
    let shifted = piece.germ.components()[0].sub(&Polynomial::constant(1, b.clone()));
    let uni = UniPoly::from_polynomial(&shifted);
    let isolator = RootIsolator::new(&uni).ok_or(TorusError::FiberNotFinite { piece: index })?;
    let interval = piece.domain.interval(0);
    let width_target = rational_frac(1, 1 << 24);
    let mut roots = isolate_roots(&uni, &interval.lo, &interval.hi, &width_target)
        .ok_or(TorusError::FiberNotFinite { piece: index })?;

    let sigma = &piece.symmetry.components()[0];
    let mut permutation: Vec<usize> = Vec::new();
    for _round in 0..128 {
        match match_orbits_exact(sigma, &roots) {
            Some(assignment) => {
                permutation = assignment;
                break;
            }
            None => {
                roots = roots
                    .iter()
                    .map(|r| sturm::refine_further(&isolator.square_free, &isolator.chain, r))
                    .collect();
            }
        }
    }
    if permutation.len() != roots.len() {
        return Err(TorusError::OrbitMatchFailed { piece: index });
    }

    let orbits = cycles(&permutation);
    let margin = rational_frac(BOUNDARY_MARGIN_NUM, BOUNDARY_MARGIN_DEN);
    let near_boundary = roots
        .iter()
        .enumerate()
        .filter(|(_, root)| {
            &root.lo - &interval.lo < margin || &interval.hi - &root.hi < margin
        })
        .map(|(i, _)| i)
        .collect();
    Ok(PieceCensus {
        piece: index,
        roots: PieceRoots::Exact(roots),
        orbits,
        near_boundary,
    })
}

/// Matches each root to the enclosure containing its symmetry image; `None`
/// when an image interval overlaps more than one enclosure (refine and
/// retry).
fn match_orbits_exact(sigma: &Polynomial, roots: &[RootEnclosure]) -> Option<Vec<usize>> {
    let mut assignment = Vec::with_capacity(roots.len());
    for root in roots {
        let image = interval_eval(sigma, &RatBox::new(vec![root.as_interval()]));
        let mut hits = roots
            .iter()
            .enumerate()
            .filter(|(_, candidate)| candidate.as_interval().overlaps(&image));
        let first = hits.next()?;
        if hits.next().is_some() {
            return None;
        }
        assignment.push(first.0);
    }
    Some(assignment)
}

/// Numeric census for two-dimensional fibers: Newton roots cross-checked
/// against the local-algebra bound, orbits matched at 1e-6.
fn census_planar(
    index: usize,
    piece: &TorusPiece,
    b: &[Rational],
    degree_cap: u32,
) -> Result<PieceCensus, TorusError> {
    let profile = quotient_dimension_profile(&piece.germ, degree_cap)?;
    let bound = match profile.status {
        Finiteness::Finite(dim) => dim,
        Finiteness::Undecided { cap } => {
            return Err(TorusError::KFinitenessUndecided { piece: index, cap })
        }
    };

    let b_f64 = [rational_to_f64(&b[0]), rational_to_f64(&b[1])];
    let bounds = piece.domain.bounds_f64();
    let roots = newton::planar_roots(&piece.germ, &b_f64, &bounds);
    if roots.len() > bound {
        return Err(TorusError::CensusExceedsBound {
            piece: index,
            found: roots.len(),
            bound,
        });
    }

    let sigma = piece.symmetry.components();
    let mut permutation = Vec::with_capacity(roots.len());
    for root in &roots {
        let point = [root[0], root[1]];
        let image = [sigma[0].eval_f64(&point), sigma[1].eval_f64(&point)];
        let matched = roots.iter().position(|candidate| {
            (candidate[0] - image[0])
                .abs()
                .max((candidate[1] - image[1]).abs())
                < NUMERIC_MATCH_TOLERANCE
        });
        match matched {
            Some(target) => permutation.push(target),
            None => return Err(TorusError::OrbitMatchFailed { piece: index }),
        }
    }

    let orbits = cycles(&permutation);
    let margin = rational_to_f64(&rational_frac(BOUNDARY_MARGIN_NUM, BOUNDARY_MARGIN_DEN));
    let near_boundary = roots
        .iter()
        .enumerate()
        .filter(|(_, root)| {
            bounds
                .iter()
                .zip(root.iter())
                .any(|((lo, hi), v)| v - lo < margin || hi - v < margin)
        })
        .map(|(i, _)| i)
        .collect();
    Ok(PieceCensus {
        piece: index,
        roots: PieceRoots::Numeric(roots.into_iter().map(|r| r.to_vec()).collect()),
        orbits,
        near_boundary,
    })
}

/// Cycle decomposition of a permutation.
fn cycles(permutation: &[usize]) -> Vec<Orbit> {
    let mut visited = vec![false; permutation.len()];
    let mut orbits = Vec::new();
    for start in 0..permutation.len() {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut current = start;
        while !visited[current] {
            visited[current] = true;
            cycle.push(current);
            current = permutation[current];
        }
        let wrapping = cycle.len();
        orbits.push(Orbit {
            roots: cycle,
            wrapping,
        });
    }
    orbits
}

/// Comparison of a census before and after a random linear change of
/// coordinates of each piece.
#[derive(Debug, Clone)]
pub struct CensusComparison {
    pub original: FiberCensus,
    pub transformed: FiberCensus,
    pub consistent: bool,
    pub detail: String,
}

/// Re-runs the census after precomposing each piece with a random invertible
/// monomial change of coordinates (signed rational scalings composed with a
/// coordinate permutation, so boxes stay axis-aligned), conjugating the
/// symmetry accordingly, and checks that circle counts and wrapping multisets
/// are unchanged.
pub fn census_vs_construction(
    torus: &MappingTorusCofrontal,
    b: &[Rational],
    degree_cap: u32,
    seed: u64,
) -> Result<CensusComparison, TorusError> {
    let original = fiber_census_with_cap(torus, b, degree_cap)?;

    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let scales = [
        rational_frac(1, 1),
        rational_frac(-1, 1),
        rational_frac(2, 1),
        rational_frac(-2, 1),
        rational_frac(1, 2),
        rational_frac(-1, 2),
        rational_frac(3, 2),
        rational_frac(-2, 3),
    ];

    let mut transformed_specs = Vec::with_capacity(torus.pieces.len());
    for piece in &torus.pieces {
        let m = piece.germ.target_dimension();
        // Random permutation (identity or a transposition for small m) and
        // random nonzero diagonal.
        let mut perm: Vec<usize> = (0..m).collect();
        if m >= 2 && next() % 2 == 0 {
            let a = (next() as usize) % m;
            let mut b_idx = (next() as usize) % m;
            if a == b_idx {
                b_idx = (b_idx + 1) % m;
            }
            perm.swap(a, b_idx);
        }
        let diag: Vec<Rational> = (0..m)
            .map(|_| scales[(next() as usize) % scales.len()].clone())
            .collect();

        // L_i(x) = diag_i * x_{perm(i)}.
        let change: Vec<Polynomial> = (0..m)
            .map(|i| Polynomial::var(m, perm[i]).scale(&diag[i]))
            .collect();
        let change_diffeo = GermDiffeo::new(change.clone())?;
        let inverse = change_diffeo
            .invert_jet(1)
            .expect("monomial matrices invert exactly");

        let germ = piece.germ.compose_right(&change).map_err(|_| {
            TorusError::PieceNotEquidimensional {
                piece: 0,
                n: m,
                m,
            }
        })?;
        let symmetry = inverse.compose(&piece.symmetry).compose(&change_diffeo);

        // The transformed box is the preimage: coordinate perm(i) gets the
        // old interval i scaled by 1/diag_i.
        let mut intervals = vec![RatInterval::point(Rational::zero()); m];
        for i in 0..m {
            let reciprocal = Rational::from_integer(1.into()) / &diag[i];
            intervals[perm[i]] = piece.domain.interval(i).scale(&reciprocal);
        }
        transformed_specs.push(PieceSpec {
            germ,
            symmetry,
            domain: RatBox::new(intervals),
        });
    }
    let transformed_torus = assemble(transformed_specs, DEFAULT_ORDER_CAP)?;
    let transformed = fiber_census_with_cap(&transformed_torus, b, degree_cap)?;

    let consistent = censuses_agree(&original, &transformed);
    let detail = if consistent {
        format!(
            "{} circles in both censuses with matching wrapping multisets",
            original.total_circles
        )
    } else {
        "circle counts or wrapping multisets differ".to_owned()
    };
    Ok(CensusComparison {
        original,
        transformed,
        consistent,
        detail,
    })
}

fn censuses_agree(a: &FiberCensus, b: &FiberCensus) -> bool {
    if a.total_circles != b.total_circles || a.pieces.len() != b.pieces.len() {
        return false;
    }
    a.pieces.iter().zip(&b.pieces).all(|(x, y)| {
        let mut wx: Vec<usize> = x.orbits.iter().map(|o| o.wrapping).collect();
        let mut wy: Vec<usize> = y.orbits.iter().map(|o| o.wrapping).collect();
        wx.sort_unstable();
        wy.sort_unstable();
        wx == wy && x.roots.len() == y.roots.len()
    })
}
