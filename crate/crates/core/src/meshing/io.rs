//! Text mesh reader.
//!
//! Format: line 1 holds `dim nv ne`; then nv vertex coordinate lines (dim
//! whitespace-separated decimals each); then ne element lines of dim+1
//! zero-based vertex indices. Boundary faces are deduced from incidence.

use super::{Point, SimplicialMesh};
use crate::error::{Error, Result};
use std::path::Path;

pub fn read_mesh_file(path: impl AsRef<Path>) -> Result<SimplicialMesh> {
    let text = std::fs::read_to_string(path)?;
    parse_mesh(&text)
}

pub fn parse_mesh(text: &str) -> Result<SimplicialMesh> {
    let mut tokens = text.split_whitespace();
    let mut next = |what: &str| {
        tokens
            .next()
            .ok_or_else(|| Error::Parse(format!("unexpected end of mesh file, expected {what}")))
    };
    let dim: usize = parse_tok(next("dim")?, "dim")?;
    let nv: usize = parse_tok(next("vertex count")?, "vertex count")?;
    let ne: usize = parse_tok(next("element count")?, "element count")?;
    if dim != 1 && dim != 2 {
        return Err(Error::Parse(format!("unsupported dimension {dim}")));
    }
    let mut vertices: Vec<Point> = Vec::with_capacity(nv);
    for i in 0..nv {
        let x: f64 = parse_tok(next("coordinate")?, &format!("vertex {i} x"))?;
        let y: f64 = if dim == 2 {
            parse_tok(next("coordinate")?, &format!("vertex {i} y"))?
        } else {
            0.0
        };
        vertices.push([x, y]);
    }
    let mut elements = Vec::with_capacity(ne);
    for e in 0..ne {
        let mut el = Vec::with_capacity(dim + 1);
        for _ in 0..=dim {
            let v: usize = parse_tok(next("vertex index")?, &format!("element {e}"))?;
            el.push(v);
        }
        elements.push(el);
    }
    if tokens.next().is_some() {
        return Err(Error::Parse("trailing tokens after element list".into()));
    }
    SimplicialMesh::from_cells(dim, vertices, elements)
}

fn parse_tok<T: std::str::FromStr>(tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("invalid token '{tok}' for {what}")))
}
