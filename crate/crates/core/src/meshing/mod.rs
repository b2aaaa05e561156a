//! Simplicial meshes of intervals (d = 1) and polygonal domains via
//! structured triangulations (d = 2), with face connectivity, outward
//! normals and the geometry metrics the error constants depend on.

mod io;

pub use io::{parse_mesh, read_mesh_file};

use crate::error::{Error, Result};
use std::collections::HashMap;

/// Spatial point; 1D meshes use the first component only.
pub type Point = [f64; 2];

/// A mesh face: a point in 1D, an edge in 2D. Edge vertex ids are stored in
/// ascending order, which fixes a parametrization shared by both adjacent
/// elements.
#[derive(Debug, Clone)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub boundary: bool,
}

/// Per-element face record with the outward unit normal.
#[derive(Debug, Clone)]
pub struct ElementFace {
    pub face: usize,
    pub normal: [f64; 2],
}

#[derive(Debug, Clone)]
pub struct SimplicialMesh {
    pub dim: usize,
    pub vertices: Vec<Point>,
    /// d+1 vertex ids per simplex, oriented to positive volume.
    pub elements: Vec<Vec<usize>>,
    pub faces: Vec<Face>,
    /// Per element: d+1 faces, local face i opposite local vertex i.
    pub element_faces: Vec<Vec<ElementFace>>,
    /// Per face: the 1 or 2 adjacent elements.
    pub face_elements: Vec<Vec<usize>>,
}

/// Geometry metrics: mesh size, per-element diameters and inradii.
#[derive(Debug, Clone)]
pub struct MeshMetrics {
    pub h: f64,
    pub h_per_element: Vec<f64>,
    pub rho_per_element: Vec<f64>,
    pub rho_min: f64,
    pub quasi_uniformity: f64,
}

/// Affine map data x = v0 + J x̂ from the reference simplex.
#[derive(Debug, Clone, Copy)]
pub struct ElemGeom {
    pub v0: Point,
    pub j: [[f64; 2]; 2],
    pub det_j: f64,
    pub inv_j: [[f64; 2]; 2],
    pub h: f64,
    pub measure: f64,
}

impl ElemGeom {
    pub fn to_physical(&self, xhat: Point) -> Point {
        [
            self.v0[0] + self.j[0][0] * xhat[0] + self.j[0][1] * xhat[1],
            self.v0[1] + self.j[1][0] * xhat[0] + self.j[1][1] * xhat[1],
        ]
    }

    pub fn to_reference(&self, x: Point) -> Point {
        let dx = [x[0] - self.v0[0], x[1] - self.v0[1]];
        [
            self.inv_j[0][0] * dx[0] + self.inv_j[0][1] * dx[1],
            self.inv_j[1][0] * dx[0] + self.inv_j[1][1] * dx[1],
        ]
    }

    /// Physical gradient from a reference gradient: J^{-T} ∇̂.
    pub fn grad_to_physical(&self, ghat: [f64; 2]) -> [f64; 2] {
        [
            self.inv_j[0][0] * ghat[0] + self.inv_j[1][0] * ghat[1],
            self.inv_j[0][1] * ghat[0] + self.inv_j[1][1] * ghat[1],
        ]
    }
}

/// Uniform partition of [a, b] into n intervals.
pub fn build_interval_mesh(a: f64, b: f64, n: usize) -> Result<SimplicialMesh> {
    if n == 0 || !(a < b) {
        return Err(Error::InvalidArgument(format!(
            "interval mesh needs a < b and n >= 1, got a = {a}, b = {b}, n = {n}"
        )));
    }
    let vertices: Vec<Point> = (0..=n)
        .map(|i| [a + (b - a) * i as f64 / n as f64, 0.0])
        .collect();
    let elements: Vec<Vec<usize>> = (0..n).map(|i| vec![i, i + 1]).collect();
    SimplicialMesh::from_cells(1, vertices, elements)
}

/// Unit square split into an n×n grid of cells, each cut into two triangles
/// by the same diagonal (lower-left to upper-right).
pub fn build_unit_square_mesh(n: usize) -> Result<SimplicialMesh> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "unit square mesh needs n >= 1".into(),
        ));
    }
    let idx = |i: usize, j: usize| j * (n + 1) + i;
    let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
    for j in 0..=n {
        for i in 0..=n {
            vertices.push([i as f64 / n as f64, j as f64 / n as f64]);
        }
    }
    let mut elements = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            elements.push(vec![idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
            elements.push(vec![idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
        }
    }
    SimplicialMesh::from_cells(2, vertices, elements)
}

impl SimplicialMesh {
    /// Builds connectivity from raw cells, fixing orientation and checking
    /// conformity.
    pub fn from_cells(
        dim: usize,
        vertices: Vec<Point>,
        mut elements: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidArgument(format!(
                "only d = 1, 2 supported, got {dim}"
            )));
        }
        for (e, el) in elements.iter_mut().enumerate() {
            if el.len() != dim + 1 {
                return Err(Error::Geometry(format!(
                    "element {e} has {} vertices, expected {}",
                    el.len(),
                    dim + 1
                )));
            }
            if el.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::Geometry(format!(
                    "element {e} references a missing vertex"
                )));
            }
            let vol = signed_volume(dim, &vertices, el);
            if vol.abs() < 1e-300 {
                return Err(Error::Geometry(format!("element {e} is degenerate")));
            }
            if vol < 0.0 {
                el.swap(dim - 1, dim);
            }
        }

        // face key: ascending vertex tuple
        let mut face_map: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut faces: Vec<Face> = Vec::new();
        let mut face_elements: Vec<Vec<usize>> = Vec::new();
        let mut element_faces: Vec<Vec<ElementFace>> = Vec::with_capacity(elements.len());

        for (e, el) in elements.iter().enumerate() {
            let mut efs = Vec::with_capacity(dim + 1);
            for local in 0..=dim {
                let mut fv: Vec<usize> = el
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != local)
                    .map(|(_, &v)| v)
                    .collect();
                fv.sort_unstable();
                let fid = *face_map.entry(fv.clone()).or_insert_with(|| {
                    faces.push(Face {
                        vertices: fv,
                        boundary: true,
                    });
                    face_elements.push(Vec::new());
                    faces.len() - 1
                });
                if face_elements[fid].len() >= 2 {
                    return Err(Error::Geometry(format!(
                        "face {fid} is shared by more than two elements"
                    )));
                }
                face_elements[fid].push(e);
                let normal = outward_normal(dim, &vertices, el, local);
                efs.push(ElementFace { face: fid, normal });
            }
            element_faces.push(efs);
        }
        for (fid, adj) in face_elements.iter().enumerate() {
            faces[fid].boundary = adj.len() == 1;
        }

        Ok(SimplicialMesh {
            dim,
            vertices,
            elements,
            faces,
            element_faces,
            face_elements,
        })
    }

    pub fn n_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn interior_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&f| !self.faces[f].boundary)
    }

    pub fn boundary_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&f| self.faces[f].boundary)
    }

    pub fn element_measure(&self, e: usize) -> f64 {
        signed_volume(self.dim, &self.vertices, &self.elements[e]).abs()
    }

    pub fn domain_measure(&self) -> f64 {
        (0..self.n_elements()).map(|e| self.element_measure(e)).sum()
    }

    pub fn face_measure(&self, f: usize) -> f64 {
        if self.dim == 1 {
            1.0
        } else {
            let v = &self.faces[f].vertices;
            dist(self.vertices[v[0]], self.vertices[v[1]])
        }
    }

    pub fn element_diameter(&self, e: usize) -> f64 {
        let el = &self.elements[e];
        let mut h: f64 = 0.0;
        for i in 0..el.len() {
            for jj in i + 1..el.len() {
                h = h.max(dist(self.vertices[el[i]], self.vertices[el[jj]]));
            }
        }
        h
    }

    /// Inradius: half length in 1D, area/semiperimeter in 2D.
    pub fn element_inradius(&self, e: usize) -> f64 {
        if self.dim == 1 {
            0.5 * self.element_measure(e)
        } else {
            let el = &self.elements[e];
            let per: f64 = (0..3)
                .map(|i| dist(self.vertices[el[i]], self.vertices[el[(i + 1) % 3]]))
                .sum();
            2.0 * self.element_measure(e) / per
        }
    }

    pub fn metrics(&self) -> MeshMetrics {
        let h_per_element: Vec<f64> = (0..self.n_elements())
            .map(|e| self.element_diameter(e))
            .collect();
        let rho_per_element: Vec<f64> = (0..self.n_elements())
            .map(|e| self.element_inradius(e))
            .collect();
        let h = h_per_element.iter().cloned().fold(0.0, f64::max);
        let h_min = h_per_element.iter().cloned().fold(f64::INFINITY, f64::min);
        let rho_min = rho_per_element.iter().cloned().fold(f64::INFINITY, f64::min);
        MeshMetrics {
            h,
            h_per_element,
            rho_per_element,
            rho_min,
            quasi_uniformity: h / h_min,
        }
    }

    pub fn element_geometry(&self, e: usize) -> ElemGeom {
        let el = &self.elements[e];
        let v0 = self.vertices[el[0]];
        let mut j = [[0.0; 2]; 2];
        if self.dim == 1 {
            j[0][0] = self.vertices[el[1]][0] - v0[0];
            j[1][1] = 1.0;
        } else {
            for c in 0..2 {
                j[c][0] = self.vertices[el[1]][c] - v0[c];
                j[c][1] = self.vertices[el[2]][c] - v0[c];
            }
        }
        let det_j = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let inv_j = [
            [j[1][1] / det_j, -j[0][1] / det_j],
            [-j[1][0] / det_j, j[0][0] / det_j],
        ];
        ElemGeom {
            v0,
            j,
            det_j,
            inv_j,
            h: self.element_diameter(e),
            measure: self.element_measure(e),
        }
    }

    /// Uniform refinement: every element splits into 2^d children.
    /// Structured families reproduce themselves with h exactly halved.
    pub fn refine_uniform(&self) -> SimplicialMesh {
        if self.dim == 1 {
            // rebuild from sorted cut points so the result matches a direct
            // construction for uniform meshes
            let mut cuts: Vec<f64> = Vec::with_capacity(2 * self.n_elements() + 1);
            for el in &self.elements {
                let (a, b) = (self.vertices[el[0]][0], self.vertices[el[1]][0]);
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                cuts.push(a);
                cuts.push(0.5 * (a + b));
                cuts.push(b);
            }
            cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
            cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-14 * (1.0 + x.abs()));
            let vertices: Vec<Point> = cuts.iter().map(|&x| [x, 0.0]).collect();
            let elements: Vec<Vec<usize>> =
                (0..vertices.len() - 1).map(|i| vec![i, i + 1]).collect();
            return SimplicialMesh::from_cells(1, vertices, elements).unwrap();
        }
        // red refinement: 4 children per triangle through edge midpoints
        let mut vertices = self.vertices.clone();
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, vertices: &mut Vec<Point>| -> usize {
            let key = (a.min(b), a.max(b));
            *midpoint.entry(key).or_insert_with(|| {
                let pa = vertices[a];
                let pb = vertices[b];
                vertices.push([0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])]);
                vertices.len() - 1
            })
        };
        let mut elements = Vec::with_capacity(4 * self.n_elements());
        for el in &self.elements {
            let (a, b, c) = (el[0], el[1], el[2]);
            let mab = mid(a, b, &mut vertices);
            let mbc = mid(b, c, &mut vertices);
            let mca = mid(c, a, &mut vertices);
            elements.push(vec![a, mab, mca]);
            elements.push(vec![mab, b, mbc]);
            elements.push(vec![mca, mbc, c]);
            elements.push(vec![mab, mbc, mca]);
        }
        SimplicialMesh::from_cells(2, vertices, elements).unwrap()
    }
}

fn signed_volume(dim: usize, vertices: &[Point], el: &[usize]) -> f64 {
    if dim == 1 {
        vertices[el[1]][0] - vertices[el[0]][0]
    } else {
        let a = vertices[el[0]];
        let b = vertices[el[1]];
        let c = vertices[el[2]];
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
    }
}

fn outward_normal(dim: usize, vertices: &[Point], el: &[usize], local: usize) -> [f64; 2] {
    if dim == 1 {
        // face opposite local vertex `local` is the other endpoint
        let other = el[1 - local];
        let own = el[local];
        let s = (vertices[other][0] - vertices[own][0]).signum();
        [s, 0.0]
    } else {
        // ccw triangle: face i is edge (v_{i+1}, v_{i+2}); outward normal of
        // a ccw-directed edge (a→b) is (dy, −dx)/len
        let a = vertices[el[(local + 1) % 3]];
        let b = vertices[el[(local + 2) % 3]];
        let dx = b[0] - a[0];
        let dy = b[1] - a[1];
        let len = (dx * dx + dy * dy).sqrt();
        [dy / len, -dx / len]
    }
}

fn dist(a: Point, b: Point) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn interval_mesh_two_cells() {
        let m = build_interval_mesh(0.0, 1.0, 2).unwrap();
        assert_eq!(m.n_elements(), 2);
        assert_eq!(m.n_faces(), 3);
        let interior: Vec<usize> = m.interior_faces().collect();
        assert_eq!(interior.len(), 1);
        let f = interior[0];
        assert_eq!(m.face_elements[f].len(), 2);
        assert_abs_diff_eq!(m.vertices[m.faces[f].vertices[0]][0], 0.5);
    }

    #[test]
    fn interval_mesh_single_cell() {
        let m = build_interval_mesh(0.0, 1.0, 1).unwrap();
        assert_eq!(m.n_elements(), 1);
        assert_eq!(m.boundary_faces().count(), 2);
        assert_eq!(m.interior_faces().count(), 0);
    }

    #[test]
    fn interval_metrics() {
        let m = build_interval_mesh(0.0, 1.0, 4).unwrap();
        let metrics = m.metrics();
        assert_relative_eq!(metrics.h, 0.25, max_relative = 1e-14);
        for rho in &metrics.rho_per_element {
            assert_relative_eq!(*rho, 0.125, max_relative = 1e-14);
        }
        assert_relative_eq!(metrics.quasi_uniformity, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_bad_interval_arguments() {
        assert!(build_interval_mesh(0.0, 1.0, 0).is_err());
        assert!(build_interval_mesh(1.0, 0.0, 4).is_err());
    }

    #[test]
    fn unit_square_n1() {
        let m = build_unit_square_mesh(1).unwrap();
        assert_eq!(m.n_elements(), 2);
        assert_eq!(m.interior_faces().count(), 1);
        assert_eq!(m.boundary_faces().count(), 4);
    }

    #[test]
    fn unit_square_n2_euler_count() {
        let m = build_unit_square_mesh(2).unwrap();
        assert_eq!(m.n_elements(), 8);
        let nb = m.boundary_faces().count();
        assert_eq!(nb, 8);
        // each triangle has 3 edges, interior edges shared by 2:
        // faces = (3·8 + boundary)/2
        assert_eq!(m.n_faces(), (3 * 8 + nb) / 2);
        assert_eq!(m.n_faces(), 16);
    }

    #[test]
    fn unit_square_n4_metrics() {
        let m = build_unit_square_mesh(4).unwrap();
        let metrics = m.metrics();
        assert_relative_eq!(metrics.h, 2f64.sqrt() / 4.0, max_relative = 1e-14);
        assert_relative_eq!(metrics.quasi_uniformity, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn measures_sum_to_domain() {
        let m = build_unit_square_mesh(5).unwrap();
        assert_abs_diff_eq!(m.domain_measure(), 1.0, epsilon = 1e-12);
        let m1 = build_interval_mesh(-1.0, 3.0, 7).unwrap();
        assert_abs_diff_eq!(m1.domain_measure(), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn normals_are_opposite_on_shared_faces() {
        for m in [build_unit_square_mesh(3).unwrap(), build_interval_mesh(0.0, 1.0, 3).unwrap()] {
            for f in m.interior_faces() {
                let adj = &m.face_elements[f];
                let n: Vec<[f64; 2]> = adj
                    .iter()
                    .map(|&e| {
                        m.element_faces[e]
                            .iter()
                            .find(|ef| ef.face == f)
                            .unwrap()
                            .normal
                    })
                    .collect();
                assert_abs_diff_eq!(n[0][0] + n[1][0], 0.0, epsilon = 1e-14);
                assert_abs_diff_eq!(n[0][1] + n[1][1], 0.0, epsilon = 1e-14);
                let len = (n[0][0].powi(2) + n[0][1].powi(2)).sqrt();
                assert_abs_diff_eq!(len, 1.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn refine_interval_matches_direct_construction() {
        let m = build_interval_mesh(0.0, 1.0, 2).unwrap().refine_uniform();
        let direct = build_interval_mesh(0.0, 1.0, 4).unwrap();
        assert_eq!(m.n_elements(), direct.n_elements());
        for (a, b) in m.vertices.iter().zip(&direct.vertices) {
            assert_abs_diff_eq!(a[0], b[0], epsilon = 1e-14);
        }
        for (a, b) in m.elements.iter().zip(&direct.elements) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn refine_square_counts_and_h() {
        let m = build_unit_square_mesh(1).unwrap();
        let r = m.refine_uniform();
        assert_eq!(r.n_elements(), 8);
        assert_relative_eq!(
            r.metrics().h,
            m.metrics().h / 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn refine_preserves_domain_boundary() {
        let m = build_unit_square_mesh(2).unwrap();
        let r = m.refine_uniform();
        // all refined boundary vertices still lie on the unit square boundary
        let mut on_boundary = vec![false; r.vertices.len()];
        for f in r.boundary_faces() {
            for &v in &r.faces[f].vertices {
                on_boundary[v] = true;
            }
        }
        for (v, &flag) in on_boundary.iter().enumerate() {
            if flag {
                let [x, y] = r.vertices[v];
                let on = x.abs() < 1e-14
                    || (x - 1.0).abs() < 1e-14
                    || y.abs() < 1e-14
                    || (y - 1.0).abs() < 1e-14;
                assert!(on, "vertex {v} at ({x}, {y}) flagged boundary");
            }
        }
        // original boundary vertices stay boundary vertices
        let mut orig_boundary = vec![false; m.vertices.len()];
        for f in m.boundary_faces() {
            for &v in &m.faces[f].vertices {
                orig_boundary[v] = true;
            }
        }
        for (v, &flag) in orig_boundary.iter().enumerate() {
            if flag {
                assert!(on_boundary[v]);
            }
        }
    }

    #[test]
    fn conformity_rejected_for_overshared_face() {
        // three intervals all claiming the same face {1}
        let vertices = vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]];
        let elements = vec![vec![0, 1], vec![1, 2], vec![1, 3]];
        assert!(SimplicialMesh::from_cells(1, vertices, elements).is_err());
    }
}
