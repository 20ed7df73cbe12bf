//! Report types shared by the text and structured output paths.
//!
//! The structured form mirrors the module report types field for field, with
//! polynomials and rationals rendered as canonical strings; re-parsing and
//! re-serializing a structured report is byte-identical.

use serde::{Deserialize, Serialize};

use cofront_core::germ::{KernelField, Verdict};
use cofront_core::local_algebra::{Finiteness, FinitenessReport};
use cofront_core::rational::render_rational;
use cofront_core::symmetry::{CatalogEntry, DiffeoOrder, SymmetryCertificate};
use cofront_core::torus::{FiberCensus, PieceRoots, ReturnMapSample};
use cofront_core::{poly::default_variable_names, MapGerm};

use crate::input::render_poly;

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct IndexedPoly {
    pub index: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct VerdictReport {
    pub kind: String,
    pub fair: bool,
    pub reason: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct KernelFieldReport {
    pub base_index: Vec<usize>,
    pub section: Vec<IndexedPoly>,
    /// Normalized kernel vector, present when the source dimension exceeds
    /// the target dimension by one.
    pub vector: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct FinitenessOut {
    pub dims_by_degree: Vec<[usize; 2]>,
    pub status: String,
    pub cap: usize,
    pub fiber_count_bound: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct AnalyzeReport {
    pub input: String,
    pub n: usize,
    pub m: usize,
    pub components: Vec<String>,
    pub minors: Vec<IndexedPoly>,
    pub gcd: String,
    pub quotients: Vec<IndexedPoly>,
    pub principal: bool,
    pub base_index: Option<Vec<usize>>,
    pub generator: Option<String>,
    pub verdict: VerdictReport,
    pub kernel_field: Option<KernelFieldReport>,
    pub kernel_field_note: Option<String>,
    pub finiteness: Option<FinitenessOut>,
    pub finiteness_note: Option<String>,
}

pub fn verdict_report(verdict: &Verdict) -> VerdictReport {
    VerdictReport {
        kind: verdict.kind.to_string(),
        fair: verdict.fair,
        reason: verdict.reason.clone(),
    }
}

pub fn jacobi_entries(
    map: &std::collections::BTreeMap<cofront_core::IndexSet, cofront_core::Polynomial>,
) -> Vec<IndexedPoly> {
    map.iter()
        .map(|(set, poly)| IndexedPoly {
            index: set.columns().to_vec(),
            value: render_poly(poly),
        })
        .collect()
}

pub fn kernel_field_report(field: &KernelField) -> KernelFieldReport {
    KernelFieldReport {
        base_index: field.base_index.columns().to_vec(),
        section: jacobi_entries(&field.section),
        vector: field
            .cofactor_field
            .as_ref()
            .map(|vs| vs.iter().map(render_poly).collect()),
    }
}

pub fn finiteness_out(report: &FinitenessReport) -> FinitenessOut {
    let (status, bound) = match report.status {
        Finiteness::Finite(dim) => (format!("finite({dim})"), Some(dim)),
        Finiteness::Undecided { cap } => (format!("undecided({cap})"), None),
    };
    FinitenessOut {
        dims_by_degree: report
            .dims_by_degree
            .iter()
            .map(|&(degree, dim)| [degree as usize, dim])
            .collect(),
        status,
        cap: report.cap_used as usize,
        fiber_count_bound: bound,
    }
}

pub fn analyze_text(report: &AnalyzeReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "germ {}: n={}, m={}\n",
        report.input, report.n, report.m
    ));
    for (i, component) in report.components.iter().enumerate() {
        out.push_str(&format!("  f{} = {}\n", i + 1, component));
    }
    out.push_str("minors:\n");
    for entry in &report.minors {
        out.push_str(&format!("  D{:?} = {}\n", entry.index, entry.value));
    }
    out.push_str(&format!("gcd of minors: {}\n", report.gcd));
    match (&report.generator, report.principal) {
        (Some(generator), _) if generator != "0" => {
            out.push_str(&format!(
                "principal: yes (base index {:?})\n",
                report.base_index.as_ref().expect("principal nonzero")
            ));
            out.push_str(&format!(
                "verdict: {}; fair: {}\n",
                report.verdict.kind,
                if report.verdict.fair { "yes" } else { "no" }
            ));
            out.push_str(&format!("jacobian: {generator}\n"));
        }
        (Some(_zero), _) => {
            out.push_str("principal: yes (zero ideal)\n");
            out.push_str(&format!(
                "verdict: {}; fair: {}\n",
                report.verdict.kind,
                if report.verdict.fair { "yes" } else { "no" }
            ));
            out.push_str("jacobi ideal: (0)\n");
        }
        (None, _) => {
            out.push_str("principal: no\n");
            out.push_str(&format!(
                "verdict: {}; fair: {}\n",
                report.verdict.kind,
                if report.verdict.fair { "yes" } else { "no" }
            ));
            out.push_str("jacobi ideal: not principal\n");
        }
    }
    out.push_str(&format!("reason: {}\n", report.verdict.reason));
    if let Some(field) = &report.kernel_field {
        out.push_str(&format!("kernel field (base {:?}):\n", field.base_index));
        for entry in &field.section {
            out.push_str(&format!("  h{:?} = {}\n", entry.index, entry.value));
        }
        if let Some(vector) = &field.vector {
            out.push_str(&format!("  kernel vector: ({})\n", vector.join(", ")));
        }
    } else if let Some(note) = &report.kernel_field_note {
        out.push_str(&format!("kernel field: {note}\n"));
    }
    if let Some(finiteness) = &report.finiteness {
        match finiteness.fiber_count_bound {
            Some(bound) => {
                out.push_str(&format!(
                    "QF-dim: {bound} (stabilized; fiber count bound {bound})\n"
                ));
            }
            None => {
                out.push_str(&format!("QF-dim: {}\n", finiteness.status));
            }
        }
        let dims: Vec<String> = finiteness
            .dims_by_degree
            .iter()
            .map(|[degree, dim]| format!("{degree}:{dim}"))
            .collect();
        out.push_str(&format!("  dims by degree: {}\n", dims.join(" ")));
    } else if let Some(note) = &report.finiteness_note {
        out.push_str(&format!("QF-dim: {note}\n"));
    }
    out
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct SymmetryReport {
    pub germ: Vec<String>,
    pub sigma: Vec<String>,
    pub verified: bool,
    pub counterexample: Option<CounterexampleOut>,
    pub order: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CounterexampleOut {
    pub component: usize,
    pub monomial: String,
}

pub fn symmetry_report(
    germ: &MapGerm,
    certificate: &SymmetryCertificate,
    order: &DiffeoOrder,
) -> SymmetryReport {
    let names = default_variable_names(germ.source_dimension());
    SymmetryReport {
        germ: germ.components().iter().map(render_poly).collect(),
        sigma: certificate
            .element
            .components()
            .iter()
            .map(render_poly)
            .collect(),
        verified: certificate.verified,
        counterexample: certificate.counterexample.as_ref().map(|c| CounterexampleOut {
            component: c.component,
            monomial: c.monomial.render(&names),
        }),
        order: order.to_string(),
    }
}

pub fn symmetry_text(report: &SymmetryReport) -> String {
    if report.verified {
        format!("verified; order {}\n", report.order)
    } else {
        let counterexample = report.counterexample.as_ref().expect("failed check");
        format!(
            "failed at monomial {} (component {})\n",
            counterexample.monomial,
            counterexample.component + 1
        )
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CensusReport {
    pub target_value: Vec<String>,
    pub pieces: Vec<PieceCensusOut>,
    pub circles: Vec<CircleOut>,
    pub total_circles: usize,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct PieceCensusOut {
    pub piece: usize,
    pub roots: Vec<String>,
    pub orbits: Vec<OrbitOut>,
    pub near_boundary: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct OrbitOut {
    pub roots: Vec<usize>,
    pub wrapping: usize,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CircleOut {
    pub piece: usize,
    pub representative: Vec<f64>,
    pub wrapping: usize,
}

pub fn census_report(census: &FiberCensus) -> CensusReport {
    CensusReport {
        target_value: census.target_value.iter().map(render_rational).collect(),
        pieces: census
            .pieces
            .iter()
            .map(|piece| PieceCensusOut {
                piece: piece.piece,
                roots: match &piece.roots {
                    PieceRoots::Exact(enclosures) => enclosures
                        .iter()
                        .map(|e| {
                            if e.is_exact() {
                                render_rational(&e.lo)
                            } else {
                                format!("[{}, {}]", render_rational(&e.lo), render_rational(&e.hi))
                            }
                        })
                        .collect(),
                    PieceRoots::Numeric(points) => points
                        .iter()
                        .map(|point| {
                            let coords: Vec<String> =
                                point.iter().map(|v| format!("{v:.9}")).collect();
                            format!("({})", coords.join(", "))
                        })
                        .collect(),
                },
                orbits: piece
                    .orbits
                    .iter()
                    .map(|orbit| OrbitOut {
                        roots: orbit.roots.clone(),
                        wrapping: orbit.wrapping,
                    })
                    .collect(),
                near_boundary: piece.near_boundary.clone(),
            })
            .collect(),
        circles: census
            .circles
            .iter()
            .map(|circle| CircleOut {
                piece: circle.piece,
                representative: circle.representative.clone(),
                wrapping: circle.wrapping,
            })
            .collect(),
        total_circles: census.total_circles,
    }
}

pub fn census_text(report: &CensusReport) -> String {
    let mut out = String::new();
    let noun = if report.total_circles == 1 { "circle" } else { "circles" };
    if report.total_circles == 1 {
        out.push_str(&format!(
            "census over b = ({}): 1 circle, wrapping {}\n",
            report.target_value.join(", "),
            report.circles[0].wrapping
        ));
    } else {
        out.push_str(&format!(
            "census over b = ({}): {} {noun}\n",
            report.target_value.join(", "),
            report.total_circles
        ));
    }
    for piece in &report.pieces {
        out.push_str(&format!(
            "  piece {}: {} fiber points\n",
            piece.piece,
            piece.roots.len()
        ));
        for root in &piece.roots {
            out.push_str(&format!("    root {root}\n"));
        }
        if !piece.near_boundary.is_empty() {
            out.push_str(&format!(
                "    warning: roots {:?} lie within 1/1000 of the box boundary\n",
                piece.near_boundary
            ));
        }
    }
    for (k, circle) in report.circles.iter().enumerate() {
        let coords: Vec<String> = circle
            .representative
            .iter()
            .map(|v| format!("{v:.6}"))
            .collect();
        out.push_str(&format!(
            "  circle {}: piece {}, wrapping {}, representative ({})\n",
            k + 1,
            circle.piece,
            circle.wrapping,
            coords.join(", ")
        ));
    }
    out
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ReturnMapReport {
    pub piece: usize,
    pub reference: Vec<String>,
    pub step_size: f64,
    pub samples: Vec<ReturnSampleOut>,
    pub max_deviation: f64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ReturnSampleOut {
    pub start: Vec<f64>,
    pub image: Vec<f64>,
    pub deviation: f64,
}

pub fn return_map_report(piece: usize, step_size: f64, run: &ReturnMapSample) -> ReturnMapReport {
    ReturnMapReport {
        piece,
        reference: run.reference.components().iter().map(render_poly).collect(),
        step_size,
        samples: run
            .transversal_points
            .iter()
            .zip(&run.images)
            .zip(&run.deviations)
            .map(|((start, image), &deviation)| ReturnSampleOut {
                start: start.clone(),
                image: image.clone(),
                deviation,
            })
            .collect(),
        max_deviation: run.max_deviation,
    }
}

pub fn return_map_text(report: &ReturnMapReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "return map for piece {} against gluing symmetry ({})\n",
        report.piece,
        report.reference.join(", ")
    ));
    for sample in &report.samples {
        let start: Vec<String> = sample.start.iter().map(|v| format!("{v:.6}")).collect();
        let image: Vec<String> = sample.image.iter().map(|v| format!("{v:.6}")).collect();
        out.push_str(&format!(
            "  ({}) -> ({}), deviation {:.3e}\n",
            start.join(", "),
            image.join(", "),
            sample.deviation
        ));
    }
    out.push_str(&format!(
        "max deviation: {:.3e} at step size {:.1e}\n",
        report.max_deviation, report.step_size
    ));
    out
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CatalogReport {
    pub entries: Vec<CatalogEntryOut>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CatalogEntryOut {
    pub name: String,
    pub germ: Vec<String>,
    pub generators: Vec<Vec<String>>,
    pub description: String,
}

pub fn catalog_entry_out(entry: &CatalogEntry) -> CatalogEntryOut {
    CatalogEntryOut {
        name: entry.name.clone(),
        germ: entry.germ.components().iter().map(render_poly).collect(),
        generators: entry
            .generators
            .iter()
            .map(|g| g.components().iter().map(render_poly).collect())
            .collect(),
        description: entry.description.clone(),
    }
}

pub fn catalog_text(report: &CatalogReport) -> String {
    let mut out = String::new();
    for entry in &report.entries {
        out.push_str(&format!("{}: germ ({})\n", entry.name, entry.germ.join(", ")));
        if entry.generators.is_empty() {
            out.push_str("  generators: none\n");
        } else {
            for generator in &entry.generators {
                out.push_str(&format!("  generator: ({})\n", generator.join(", ")));
            }
        }
        out.push_str(&format!("  {}\n", entry.description));
    }
    out
}
