//! Charted manifolds, leaf tracing, and numeric first-return maps.
//!
//! A manifold is a finite atlas of boxes with a polynomial vector field and a
//! polynomial target map per chart, glued by polynomial transition maps that
//! fire when an integrated point leaves its box. Leaves are traced by
//! classical fixed-step fourth-order Runge-Kutta; the first return to a
//! transversal slice is detected by a sign change and sharpened by bisection
//! in the step time. Deviations are measured in the slice coordinates, which
//! is where the return map lives.


use crate::poly::Polynomial;
use crate::rational::{rational, rational_frac, Rational};
use crate::symmetry::{diffeo_power, GermDiffeo};

use super::interval::{RatBox, RatInterval};
use super::{TorusError, TorusPiece};

/// Consistency tolerance for transition sampling.
const TRANSITION_TOLERANCE: f64 = 1e-10;
/// Bisection window for crossing times.
const CROSSING_TOLERANCE: f64 = 1e-9;
/// Minimum transversal speed of the field at slice crossings.
const TANGENCY_FLOOR: f64 = 1e-12;

/// One chart: a box domain, the vector field, and the target map on it.
#[derive(Debug, Clone)]
pub struct Chart {
    pub domain: RatBox,
    pub vector_field: Vec<Polynomial>,
    pub target_map: Vec<Polynomial>,
}

/// Polynomial gluing map between two charts, applied when a traced point
/// leaves the source box and the image lands in the target box.
#[derive(Debug, Clone)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub map: Vec<Polynomial>,
}

/// Validated atlas.
#[derive(Debug, Clone)]
pub struct ChartedManifold {
    charts: Vec<Chart>,
    transitions: Vec<Transition>,
}

impl ChartedManifold {
    /// Validates dimensions and samples every transition for consistency:
    /// the differential must intertwine the vector fields and the target
    /// maps must agree, within `1e-10`, at points of the sampled overlap.
    pub fn new(charts: Vec<Chart>, transitions: Vec<Transition>) -> Result<Self, TorusError> {
        let first = charts.first().ok_or(TorusError::EmptyAtlas)?;
        let dim = first.domain.dimension();
        let target_dim = first.target_map.len();
        for chart in &charts {
            let consistent = chart.domain.dimension() == dim
                && chart.vector_field.len() == dim
                && chart.target_map.len() == target_dim
                && chart
                    .vector_field
                    .iter()
                    .chain(&chart.target_map)
                    .all(|p| p.variable_count() == dim);
            if !consistent {
                return Err(TorusError::ChartDimensionMismatch);
            }
        }
        for transition in &transitions {
            if transition.from >= charts.len()
                || transition.to >= charts.len()
                || transition.map.len() != dim
                || transition.map.iter().any(|p| p.variable_count() != dim)
            {
                return Err(TorusError::ChartDimensionMismatch);
            }
        }
        let manifold = ChartedManifold { charts, transitions };
        manifold.validate_transitions()?;
        Ok(manifold)
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn dimension(&self) -> usize {
        self.charts[0].domain.dimension()
    }

    #[allow(clippy::needless_range_loop)]
    fn validate_transitions(&self) -> Result<(), TorusError> {
        let dim = self.dimension();
        let mut rng = Xorshift::new(0x5eed_c0f0);
        for (index, transition) in self.transitions.iter().enumerate() {
            let from = &self.charts[transition.from];
            let to = &self.charts[transition.to];
            let bounds = from.domain.bounds_f64();
            // Symbolic differential of the transition map.
            let jacobian: Vec<Vec<Polynomial>> = transition
                .map
                .iter()
                .map(|c| (0..dim).map(|j| c.partial(j).expect("valid")).collect())
                .collect();
            let mut checked = 0;
            for _ in 0..400 {
                if checked >= 25 {
                    break;
                }
                let point: Vec<f64> = bounds
                    .iter()
                    .map(|(lo, hi)| lo + rng.unit() * (hi - lo))
                    .collect();
                let image: Vec<f64> = transition.map.iter().map(|c| c.eval_f64(&point)).collect();
                if !to.domain.contains_f64(&image) {
                    continue;
                }
                checked += 1;
                // Field intertwining: D(map) . F_from = F_to o map.
                for row in 0..dim {
                    let pushed: f64 = (0..dim)
                        .map(|col| {
                            jacobian[row][col].eval_f64(&point)
                                * from.vector_field[col].eval_f64(&point)
                        })
                        .sum();
                    let expected = to.vector_field[row].eval_f64(&image);
                    if (pushed - expected).abs() > TRANSITION_TOLERANCE {
                        return Err(TorusError::TransitionInconsistent {
                            transition: index,
                            detail: format!(
                                "vector field mismatch {:.3e} at a sampled overlap point",
                                (pushed - expected).abs()
                            ),
                        });
                    }
                }
                for (a, b) in from.target_map.iter().zip(&to.target_map) {
                    let here = a.eval_f64(&point);
                    let there = b.eval_f64(&image);
                    if (here - there).abs() > TRANSITION_TOLERANCE {
                        return Err(TorusError::TransitionInconsistent {
                            transition: index,
                            detail: format!(
                                "target map mismatch {:.3e} at a sampled overlap point",
                                (here - there).abs()
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Axis-aligned affine slice `{x[coord] = value}` in one chart, with a
/// center point fixing coordinates on the slice; sample points and return
/// points are expressed as offsets from the center in the remaining
/// coordinates.
#[derive(Debug, Clone)]
pub struct Transversal {
    pub chart: usize,
    pub coord: usize,
    pub value: f64,
    pub center: Vec<f64>,
}

impl Transversal {
    /// Full chart point for slice offsets.
    pub fn embed(&self, offsets: &[f64]) -> Vec<f64> {
        let dim = self.center.len();
        debug_assert_eq!(offsets.len(), dim - 1);
        let mut point = self.center.clone();
        point[self.coord] = self.value;
        let mut k = 0;
        for (j, slot) in point.iter_mut().enumerate() {
            if j != self.coord {
                *slot += offsets[k];
                k += 1;
            }
        }
        point
    }

    /// Slice offsets of a full chart point.
    pub fn extract(&self, point: &[f64]) -> Vec<f64> {
        point
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != self.coord)
            .map(|(j, v)| v - self.center[j])
            .collect()
    }
}

/// Samples of a numeric first-return map compared against a reference germ.
#[derive(Debug, Clone)]
pub struct ReturnMapSample {
    /// Slice offsets of the start points.
    pub transversal_points: Vec<Vec<f64>>,
    /// Slice offsets of the numeric first returns.
    pub images: Vec<Vec<f64>>,
    pub reference: GermDiffeo,
    pub deviations: Vec<f64>,
    /// Sup over samples of the slice-coordinate distance between the numeric
    /// return and the reference image.
    pub max_deviation: f64,
}

/// Traces leaves of the chart fields from transversal samples to their first
/// return and compares with the reference map.
pub fn numeric_return_map(
    manifold: &ChartedManifold,
    transversal: &Transversal,
    reference: &GermDiffeo,
    samples: &[Vec<f64>],
    steps: usize,
    step_size: f64,
) -> Result<ReturnMapSample, TorusError> {
    let dim = manifold.dimension();
    if transversal.chart >= manifold.charts.len()
        || transversal.coord >= dim
        || transversal.center.len() != dim
        || reference.dimension() != dim - 1
    {
        return Err(TorusError::ChartDimensionMismatch);
    }

    let mut images = Vec::with_capacity(samples.len());
    let mut deviations = Vec::with_capacity(samples.len());
    let mut max_deviation: f64 = 0.0;
    for offsets in samples {
        let return_point = trace_first_return(manifold, transversal, offsets, steps, step_size)?;
        let returned_offsets = transversal.extract(&return_point);
        let reference_offsets: Vec<f64> = reference
            .components()
            .iter()
            .map(|c| c.eval_f64(offsets))
            .collect();
        let deviation = returned_offsets
            .iter()
            .zip(&reference_offsets)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        max_deviation = max_deviation.max(deviation);
        deviations.push(deviation);
        images.push(returned_offsets);
    }
    Ok(ReturnMapSample {
        transversal_points: samples.to_vec(),
        images,
        reference: reference.clone(),
        deviations,
        max_deviation,
    })
}

fn trace_first_return(
    manifold: &ChartedManifold,
    transversal: &Transversal,
    offsets: &[f64],
    steps: usize,
    step_size: f64,
) -> Result<Vec<f64>, TorusError> {
    let start = transversal.embed(offsets);
    let mut chart_index = transversal.chart;
    if !manifold.charts[chart_index].domain.contains_f64(&start) {
        return Err(TorusError::LeafExitsAtlas);
    }
    let speed = manifold.charts[chart_index].vector_field[transversal.coord].eval_f64(&start);
    if speed.abs() < TANGENCY_FLOOR {
        return Err(TorusError::TransversalTangency);
    }

    let mut point = start;
    let mut previous_s: Option<f64> = Some(0.0);
    for _ in 0..steps {
        let chart = &manifold.charts[chart_index];
        let next = rk4_step(&chart.vector_field, &point, step_size);
        if chart.domain.contains_f64(&next) {
            if chart_index == transversal.chart {
                let s = next[transversal.coord] - transversal.value;
                if let Some(prev) = previous_s {
                    if prev * s < 0.0 {
                        let crossing =
                            bisect_crossing(&chart.vector_field, &point, step_size, transversal);
                        let speed = chart.vector_field[transversal.coord].eval_f64(&crossing);
                        if speed.abs() < TANGENCY_FLOOR {
                            return Err(TorusError::TransversalTangency);
                        }
                        return Ok(crossing);
                    }
                }
                previous_s = Some(s);
            }
            point = next;
        } else {
            // Leaving the box: find a transition whose image re-enters.
            let mut moved = false;
            for transition in &manifold.transitions {
                if transition.from != chart_index {
                    continue;
                }
                let image: Vec<f64> = transition.map.iter().map(|c| c.eval_f64(&next)).collect();
                if manifold.charts[transition.to].domain.contains_f64(&image) {
                    chart_index = transition.to;
                    point = image;
                    previous_s = (chart_index == transversal.chart)
                        .then(|| point[transversal.coord] - transversal.value);
                    moved = true;
                    break;
                }
            }
            if !moved {
                return Err(TorusError::LeafExitsAtlas);
            }
        }
    }
    Err(TorusError::NoReturnWithinBudget { steps })
}

/// Bisection in step time over one RK4 step bracketing the sign change.
fn bisect_crossing(
    field: &[Polynomial],
    from: &[f64],
    step_size: f64,
    transversal: &Transversal,
) -> Vec<f64> {
    let s_at = |tau: f64| -> f64 {
        if tau == 0.0 {
            from[transversal.coord] - transversal.value
        } else {
            rk4_step(field, from, tau)[transversal.coord] - transversal.value
        }
    };
    let mut lo = 0.0;
    let mut hi = step_size;
    let sign_lo = s_at(0.0) >= 0.0;
    while hi - lo > CROSSING_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if (s_at(mid) >= 0.0) == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    rk4_step(field, from, hi)
}

/// One classical fourth-order Runge-Kutta step.
pub fn rk4_step(field: &[Polynomial], point: &[f64], h: f64) -> Vec<f64> {
    let dim = point.len();
    let eval = |p: &[f64]| -> Vec<f64> { field.iter().map(|c| c.eval_f64(p)).collect() };
    let shift = |p: &[f64], k: &[f64], factor: f64| -> Vec<f64> {
        (0..dim).map(|i| p[i] + factor * k[i]).collect()
    };
    let k1 = eval(point);
    let k2 = eval(&shift(point, &k1, h / 2.0));
    let k3 = eval(&shift(point, &k2, h / 2.0));
    let k4 = eval(&shift(point, &k3, h));
    (0..dim)
        .map(|i| point[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}

/// Two-chart atlas of the mapping torus of a validated piece.
///
/// Coordinates are `(t, fiber)`; chart boxes cover `t` in `[0, 5/8]` and
/// `[1/2, 9/8]`, glued by the identity on the shared band and by
/// `(t - 1, sigma(fiber))` across the wrap, so that the forward first-return
/// map of the `t`-direction field on the slice `t = 1/2` realizes the gluing
/// symmetry itself. The backward wrap uses `sigma^(order-1)`, the exact
/// inverse.
pub fn mapping_torus_atlas(piece: &TorusPiece) -> Result<ChartedManifold, TorusError> {
    let fiber_dim = piece.germ.source_dimension();
    let dim = fiber_dim + 1;
    let lift_map: Vec<usize> = (1..=fiber_dim).collect();

    let lift = |p: &Polynomial| p.remap_variables(&lift_map, dim);
    let target: Vec<Polynomial> = piece.germ.components().iter().map(&lift).collect();
    let sigma_lifted: Vec<Polynomial> = piece.symmetry.components().iter().map(&lift).collect();
    let sigma_inverse = diffeo_power(&piece.symmetry, piece.symmetry_order - 1);
    let sigma_inverse_lifted: Vec<Polynomial> =
        sigma_inverse.components().iter().map(&lift).collect();

    let mut field = vec![Polynomial::zero(dim); dim];
    field[0] = Polynomial::one(dim);

    let t_var = Polynomial::var(dim, 0);
    let one = Polynomial::one(dim);
    let fiber_vars: Vec<Polynomial> = (1..dim).map(|j| Polynomial::var(dim, j)).collect();

    let chart_box = |t_lo: Rational, t_hi: Rational| -> RatBox {
        let mut intervals = vec![RatInterval::new(t_lo, t_hi)];
        intervals.extend(piece.domain.intervals().iter().cloned());
        RatBox::new(intervals)
    };
    let charts = vec![
        Chart {
            domain: chart_box(rational(0), rational_frac(5, 8)),
            vector_field: field.clone(),
            target_map: target.clone(),
        },
        Chart {
            domain: chart_box(rational_frac(1, 2), rational_frac(9, 8)),
            vector_field: field,
            target_map: target,
        },
    ];

    let identity_map: Vec<Polynomial> = std::iter::once(t_var.clone())
        .chain(fiber_vars.iter().cloned())
        .collect();
    let wrap_forward: Vec<Polynomial> = std::iter::once(t_var.sub(&one))
        .chain(sigma_lifted.iter().cloned())
        .collect();
    let wrap_backward: Vec<Polynomial> = std::iter::once(t_var.add(&one))
        .chain(sigma_inverse_lifted.iter().cloned())
        .collect();

    ChartedManifold::new(
        charts,
        vec![
            Transition { from: 0, to: 1, map: identity_map.clone() },
            Transition { from: 1, to: 0, map: identity_map },
            Transition { from: 1, to: 0, map: wrap_forward },
            Transition { from: 0, to: 1, map: wrap_backward },
        ],
    )
}

/// The canonical transversal of a mapping-torus atlas: the slice `t = 1/2`
/// in chart 0, centered on the zero section.
pub fn mapping_torus_transversal(piece: &TorusPiece) -> Transversal {
    let dim = piece.germ.source_dimension() + 1;
    let mut center = vec![0.0; dim];
    center[0] = 0.5;
    Transversal {
        chart: 0,
        coord: 0,
        value: 0.5,
        center,
    }
}

/// Default fiber sample offsets inside the piece domain (five diagonal
/// patterns at half, quarter, and eighth of the inradius).
pub fn default_fiber_samples(domain: &RatBox) -> Vec<Vec<f64>> {
    let widths: Vec<f64> = domain
        .bounds_f64()
        .iter()
        .map(|(lo, hi)| lo.abs().min(*hi))
        .collect();
    [0.5, -0.5, 0.25, -0.25, 0.125]
        .iter()
        .map(|pattern| widths.iter().map(|w| pattern * w).collect())
        .collect()
}

/// Deterministic xorshift generator for overlap sampling.
struct Xorshift {
    state: u64,
}

impl Xorshift {
    fn new(seed: u64) -> Self {
        Xorshift {
            state: seed.max(1),
        }
    }

    fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}
