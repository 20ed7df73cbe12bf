//! Grid-seeded Newton iteration for planar polynomial systems.
//!
//! Solves `h(x) = b` for `h : R^2 -> R^2` inside a box: Newton from a
//! deterministic seed grid, convergence to residual ~1e-12, deduplication at
//! the census tolerance. Root counts are cross-checked by the caller against
//! the local-algebra bound.

use crate::germ::MapGerm;
use crate::poly::Polynomial;

/// Deduplication radius shared with the orbit matching.
pub const DEDUP_RADIUS: f64 = 1e-6;

const GRID: usize = 17;
const MAX_ITERATIONS: usize = 60;
const RESIDUAL_TARGET: f64 = 1e-12;
const BOX_MARGIN: f64 = 1e-9;

/// All roots of `h(x) = b` found inside the box, deduplicated and sorted.
pub fn planar_roots(h: &MapGerm, b: &[f64; 2], bounds: &[(f64, f64)]) -> Vec<[f64; 2]> {
    debug_assert_eq!(h.source_dimension(), 2);
    debug_assert_eq!(h.target_dimension(), 2);
    let partials: Vec<[Polynomial; 2]> = h
        .components()
        .iter()
        .map(|c| [c.partial(0).expect("valid"), c.partial(1).expect("valid")])
        .collect();
    let components = h.components();

    let mut roots: Vec<[f64; 2]> = Vec::new();
    for i in 0..GRID {
        for j in 0..GRID {
            let fx = (i as f64 + 0.5) / GRID as f64;
            let fy = (j as f64 + 0.5) / GRID as f64;
            let seed = [
                bounds[0].0 + fx * (bounds[0].1 - bounds[0].0),
                bounds[1].0 + fy * (bounds[1].1 - bounds[1].0),
            ];
            if let Some(root) = newton(components, &partials, b, seed, bounds) {
                if !roots
                    .iter()
                    .any(|r| (r[0] - root[0]).abs().max((r[1] - root[1]).abs()) < DEDUP_RADIUS)
                {
                    roots.push(root);
                }
            }
        }
    }
    roots.sort_by(|a, b| {
        a[0].partial_cmp(&b[0])
            .unwrap()
            .then(a[1].partial_cmp(&b[1]).unwrap())
    });
    roots
}

fn newton(
    components: &[Polynomial],
    partials: &[[Polynomial; 2]],
    b: &[f64; 2],
    seed: [f64; 2],
    bounds: &[(f64, f64)],
) -> Option<[f64; 2]> {
    let mut x = seed;
    let span = (bounds[0].1 - bounds[0].0).max(bounds[1].1 - bounds[1].0);
    for _ in 0..MAX_ITERATIONS {
        let residual = [
            components[0].eval_f64(&x) - b[0],
            components[1].eval_f64(&x) - b[1],
        ];
        if residual[0].abs().max(residual[1].abs()) < RESIDUAL_TARGET {
            let inside = x[0] >= bounds[0].0 - BOX_MARGIN
                && x[0] <= bounds[0].1 + BOX_MARGIN
                && x[1] >= bounds[1].0 - BOX_MARGIN
                && x[1] <= bounds[1].1 + BOX_MARGIN;
            return inside.then_some(x);
        }
        let jac = [
            [partials[0][0].eval_f64(&x), partials[0][1].eval_f64(&x)],
            [partials[1][0].eval_f64(&x), partials[1][1].eval_f64(&x)],
        ];
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det.abs() < 1e-14 {
            return None;
        }
        let step = [
            (residual[0] * jac[1][1] - residual[1] * jac[0][1]) / det,
            (residual[1] * jac[0][0] - residual[0] * jac[1][0]) / det,
        ];
        x = [x[0] - step[0], x[1] - step[1]];
        // Diverging iterates are abandoned early.
        if (x[0] - seed[0]).abs() + (x[1] - seed[1]).abs() > 8.0 * span {
            return None;
        }
    }
    None
}
