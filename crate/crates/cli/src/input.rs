//! File schemas consumed by the command line.
//!
//! Germ files are single JSON objects `{ "n", "m", "components" }` with
//! component polynomials over the variables `x1..xn`. Symmetry jobs add a
//! candidate diffeomorphism, torus specs list pieces with a symmetry and a
//! per-variable rational interval box.

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use cofront_core::poly::default_variable_names;
use cofront_core::rational::parse_rational;
use cofront_core::symmetry::GermDiffeo;
use cofront_core::torus::{PieceSpec, RatBox, RatInterval};
use cofront_core::{MapGerm, Polynomial};

#[derive(Debug, Deserialize)]
pub struct GermFile {
    pub n: usize,
    pub m: usize,
    pub components: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct SymmetryJobFile {
    pub germ: GermFile,
    pub sigma: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct TorusPieceFile {
    pub germ: GermFile,
    pub symmetry: Vec<String>,
    /// Per-variable `[lo, hi]` rational interval strings.
    #[serde(rename = "box")]
    pub domain: Vec<[String; 2]>,
}

#[derive(Debug, Deserialize)]
pub struct TorusFile {
    pub pieces: Vec<TorusPieceFile>,
}

pub fn load_germ_file(path: &std::path::Path) -> Result<MapGerm> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let file: GermFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    germ_from_file(&file).with_context(|| format!("in {}", path.display()))
}

pub fn germ_from_file(file: &GermFile) -> Result<MapGerm> {
    let refs: Vec<String> = file.components.clone();
    let components: Vec<&str> = refs.iter().map(String::as_str).collect();
    MapGerm::parse(file.n, file.m, &components).map_err(|e| anyhow::anyhow!("{e}"))
}

pub fn load_symmetry_job(path: &std::path::Path) -> Result<(MapGerm, GermDiffeo)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let file: SymmetryJobFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    let germ = germ_from_file(&file.germ)?;
    let sigma = diffeo_from_strings(&file.sigma)?;
    Ok((germ, sigma))
}

pub fn diffeo_from_strings(components: &[String]) -> Result<GermDiffeo> {
    let refs: Vec<&str> = components.iter().map(String::as_str).collect();
    GermDiffeo::parse(&refs).map_err(|e| anyhow::anyhow!("{e}"))
}

pub fn load_torus_file(path: &std::path::Path) -> Result<Vec<PieceSpec>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let file: TorusFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    let mut specs = Vec::with_capacity(file.pieces.len());
    for (index, piece) in file.pieces.iter().enumerate() {
        let germ = germ_from_file(&piece.germ)
            .with_context(|| format!("piece {index} germ"))?;
        let symmetry = diffeo_from_strings(&piece.symmetry)
            .with_context(|| format!("piece {index} symmetry"))?;
        let mut intervals = Vec::with_capacity(piece.domain.len());
        for (axis, [lo, hi]) in piece.domain.iter().enumerate() {
            let lo = parse_rational(lo)
                .with_context(|| format!("piece {index} box axis {axis} lower bound"))?;
            let hi = parse_rational(hi)
                .with_context(|| format!("piece {index} box axis {axis} upper bound"))?;
            if lo > hi {
                bail!("piece {index} box axis {axis}: bounds out of order");
            }
            intervals.push(RatInterval::new(lo, hi));
        }
        specs.push(PieceSpec {
            germ,
            symmetry,
            domain: RatBox::new(intervals),
        });
    }
    Ok(specs)
}

/// Comma-separated rational tuple, e.g. `1/4` or `1/4,-3/2`.
pub fn parse_rational_tuple(text: &str) -> Result<Vec<cofront_core::Rational>> {
    text.split(',')
        .map(|entry| parse_rational(entry).map_err(|e| anyhow::anyhow!("{e}")))
        .collect()
}

/// Renders a polynomial over `x1..xn`; shared by every report.
pub fn render_poly(p: &Polynomial) -> String {
    p.render(&default_variable_names(p.variable_count()))
}
