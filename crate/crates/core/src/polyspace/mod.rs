//! Polynomial spaces P_k on reference simplexes and faces, quadrature, and
//! local L² projections.

mod quad;

pub use quad::{gauss_legendre, QuadratureRule};

use crate::error::{Error, Result};
use crate::meshing::{ElemGeom, Point, SimplicialMesh};
use nalgebra::{DMatrix, DVector};

/// Basis of P_k on the reference simplex. Monomials are ordered by total
/// degree, so the leading C(k−1+d, d) functions of the orthonormal variant
/// span P_{k−1}.
#[derive(Debug, Clone)]
pub struct ElementBasis {
    pub space_dim: usize,
    pub degree: usize,
    pub dim: usize,
    powers: Vec<[usize; 2]>,
    /// Row i holds the monomial coefficients of basis function i.
    coeffs: DMatrix<f64>,
}

fn monomial_powers(d: usize, k: usize) -> Vec<[usize; 2]> {
    let mut powers = Vec::new();
    for total in 0..=k {
        if d == 1 {
            powers.push([total, 0]);
        } else {
            for b in 0..=total {
                powers.push([total - b, b]);
            }
        }
    }
    powers
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product::<f64>().max(1.0)
}

/// Exact integral of x^a y^b over the reference simplex.
fn reference_monomial_integral(d: usize, a: usize, b: usize) -> f64 {
    if d == 1 {
        1.0 / (a as f64 + 1.0)
    } else {
        factorial(a) * factorial(b) / factorial(a + b + 2)
    }
}

impl ElementBasis {
    /// Raw monomial basis 1, x, y, x², ...
    pub fn monomial(space_dim: usize, degree: usize) -> Self {
        let powers = monomial_powers(space_dim, degree);
        let dim = powers.len();
        ElementBasis {
            space_dim,
            degree,
            dim,
            powers,
            coeffs: DMatrix::identity(dim, dim),
        }
    }

    /// Monomials orthonormalized on the reference simplex (Gram–Schmidt via
    /// the exact Gram matrix and its Cholesky factor).
    pub fn orthonormal(space_dim: usize, degree: usize) -> Self {
        let powers = monomial_powers(space_dim, degree);
        let dim = powers.len();
        let mut gram = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                gram[(i, j)] = reference_monomial_integral(
                    space_dim,
                    powers[i][0] + powers[j][0],
                    powers[i][1] + powers[j][1],
                );
            }
        }
        let chol = gram
            .cholesky()
            .expect("reference Gram matrix must be positive definite");
        // A = L^{-1}: solve L A = I
        let coeffs = chol.l().solve_lower_triangular(&DMatrix::identity(dim, dim)).unwrap();
        ElementBasis {
            space_dim,
            degree,
            dim,
            powers,
            coeffs,
        }
    }

    /// Basis values at reference points: dim × npts.
    pub fn eval(&self, pts: &[Point]) -> DMatrix<f64> {
        let mono = self.eval_monomials(pts);
        &self.coeffs * mono
    }

    /// Reference-gradient components of all basis functions: one dim × npts
    /// matrix per direction.
    pub fn eval_grad(&self, pts: &[Point]) -> [DMatrix<f64>; 2] {
        let n = pts.len();
        let mut gx = DMatrix::zeros(self.dim, n);
        let mut gy = DMatrix::zeros(self.dim, n);
        for (m, &[a, b]) in self.powers.iter().enumerate() {
            for (p, pt) in pts.iter().enumerate() {
                if a > 0 {
                    gx[(m, p)] = a as f64 * pt[0].powi(a as i32 - 1) * pt[1].powi(b as i32);
                }
                if b > 0 {
                    gy[(m, p)] = b as f64 * pt[0].powi(a as i32) * pt[1].powi(b as i32 - 1);
                }
            }
        }
        [&self.coeffs * gx, &self.coeffs * gy]
    }

    fn eval_monomials(&self, pts: &[Point]) -> DMatrix<f64> {
        let n = pts.len();
        let mut vals = DMatrix::zeros(self.dim, n);
        for (m, &[a, b]) in self.powers.iter().enumerate() {
            for (p, pt) in pts.iter().enumerate() {
                vals[(m, p)] = pt[0].powi(a as i32) * pt[1].powi(b as i32);
            }
        }
        vals
    }

    /// Number of functions of total degree ≤ deg (a leading sub-basis).
    pub fn subspace_dim(&self, deg: isize) -> usize {
        if deg < 0 {
            return 0;
        }
        self.powers
            .iter()
            .filter(|p| (p[0] + p[1]) as isize <= deg)
            .count()
    }
}

/// Basis of P_k on a face: constants at points (d = 1) and orthonormal
/// polynomials of the canonical edge parameter s ∈ [0,1] (d = 2). Edge
/// parametrization runs from the lower to the higher global vertex id, so
/// both adjacent elements see identical values.
#[derive(Debug, Clone)]
pub struct FaceBasis {
    pub space_dim: usize,
    pub degree: usize,
    pub dim: usize,
    line: Option<ElementBasis>,
}

impl FaceBasis {
    pub fn new(space_dim: usize, degree: usize) -> Self {
        if space_dim == 1 {
            FaceBasis {
                space_dim,
                degree,
                dim: 1,
                line: None,
            }
        } else {
            let line = ElementBasis::orthonormal(1, degree);
            FaceBasis {
                space_dim,
                degree,
                dim: line.dim,
                line: Some(line),
            }
        }
    }

    /// Values at face parameters: dim × npts.
    pub fn eval(&self, s: &[f64]) -> DMatrix<f64> {
        match &self.line {
            None => DMatrix::from_element(1, s.len(), 1.0),
            Some(basis) => {
                let pts: Vec<Point> = s.iter().map(|&si| [si, 0.0]).collect();
                basis.eval(&pts)
            }
        }
    }
}

/// Gram matrix of the basis under (·,·)_K.
pub fn local_mass(
    geom: &ElemGeom,
    basis: &ElementBasis,
    quad: &QuadratureRule,
) -> DMatrix<f64> {
    let vals = basis.eval(&quad.points);
    let mut mass = DMatrix::zeros(basis.dim, basis.dim);
    for p in 0..quad.len() {
        let w = quad.weights[p] * geom.det_j.abs();
        for i in 0..basis.dim {
            for j in 0..basis.dim {
                mass[(i, j)] += w * vals[(i, p)] * vals[(j, p)];
            }
        }
    }
    mass
}

/// Matrices G_c with (G_c)_{ij} = ∫_K φ_i ∂_c φ_j dx for each direction c.
pub fn local_gradmass(
    geom: &ElemGeom,
    basis: &ElementBasis,
    quad: &QuadratureRule,
) -> [DMatrix<f64>; 2] {
    let vals = basis.eval(&quad.points);
    let [gx, gy] = basis.eval_grad(&quad.points);
    let mut out = [
        DMatrix::zeros(basis.dim, basis.dim),
        DMatrix::zeros(basis.dim, basis.dim),
    ];
    for p in 0..quad.len() {
        let w = quad.weights[p] * geom.det_j.abs();
        for j in 0..basis.dim {
            let g = geom.grad_to_physical([gx[(j, p)], gy[(j, p)]]);
            for i in 0..basis.dim {
                out[0][(i, j)] += w * vals[(i, p)] * g[0];
                out[1][(i, j)] += w * vals[(i, p)] * g[1];
            }
        }
    }
    out
}

/// Face data seen from one element: quadrature in the canonical face
/// parametrization together with element- and face-basis values there.
pub struct FaceCoupling {
    /// ⟨μ_ℓ, φ_i⟩_F: face-basis × element-basis Gram matrix on the face.
    pub trace: DMatrix<f64>,
    /// ⟨φ_i, φ_j⟩_F: element-basis Gram matrix on the face.
    pub elem_mass: DMatrix<f64>,
    /// |F| (1 for a point face).
    pub measure: f64,
}

/// Couplings between an element and one of its faces.
pub fn face_coupling(
    mesh: &SimplicialMesh,
    elem: usize,
    local_face: usize,
    ebasis: &ElementBasis,
    fbasis: &FaceBasis,
    face_points: &[f64],
    face_weights: &[f64],
) -> FaceCoupling {
    let geom = mesh.element_geometry(elem);
    let fid = mesh.element_faces[elem][local_face].face;
    let fverts = &mesh.faces[fid].vertices;
    let measure = mesh.face_measure(fid);

    let (spts, sweights): (Vec<f64>, Vec<f64>) = if mesh.dim == 1 {
        (vec![0.0], vec![1.0])
    } else {
        (face_points.to_vec(), face_weights.iter().map(|w| w * measure).collect())
    };

    // physical points of the canonical parametrization, then element
    // reference coordinates
    let refpts: Vec<Point> = spts
        .iter()
        .map(|&s| {
            let x = if mesh.dim == 1 {
                mesh.vertices[fverts[0]]
            } else {
                let a = mesh.vertices[fverts[0]];
                let b = mesh.vertices[fverts[1]];
                [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]
            };
            geom.to_reference(x)
        })
        .collect();

    let evals = ebasis.eval(&refpts);
    let fvals = fbasis.eval(&spts);

    let mut trace = DMatrix::zeros(fbasis.dim, ebasis.dim);
    let mut elem_mass = DMatrix::zeros(ebasis.dim, ebasis.dim);
    for p in 0..spts.len() {
        let w = sweights[p];
        for l in 0..fbasis.dim {
            for i in 0..ebasis.dim {
                trace[(l, i)] += w * fvals[(l, p)] * evals[(i, p)];
            }
        }
        for i in 0..ebasis.dim {
            for j in 0..ebasis.dim {
                elem_mass[(i, j)] += w * evals[(i, p)] * evals[(j, p)];
            }
        }
    }
    FaceCoupling {
        trace,
        elem_mass,
        measure,
    }
}

/// L² projection of `f` onto P_k(K): Galerkin orthogonality against the
/// basis.
pub fn l2_project_element(
    f: &dyn Fn(Point) -> f64,
    mesh: &SimplicialMesh,
    elem: usize,
    basis: &ElementBasis,
    quad: &QuadratureRule,
) -> DVector<f64> {
    let geom = mesh.element_geometry(elem);
    let vals = basis.eval(&quad.points);
    let mut rhs = DVector::zeros(basis.dim);
    for p in 0..quad.len() {
        let x = geom.to_physical(quad.points[p]);
        let w = quad.weights[p] * geom.det_j.abs();
        let fx = f(x);
        for i in 0..basis.dim {
            rhs[i] += w * fx * vals[(i, p)];
        }
    }
    let mass = local_mass(&geom, basis, quad);
    mass.cholesky()
        .expect("element mass matrix must be positive definite")
        .solve(&rhs)
}

/// L² projection of `f` onto P_k(F) in the canonical face parametrization.
pub fn l2_project_face(
    f: &dyn Fn(Point) -> f64,
    mesh: &SimplicialMesh,
    face: usize,
    fbasis: &FaceBasis,
    face_points: &[f64],
    face_weights: &[f64],
) -> DVector<f64> {
    let fverts = &mesh.faces[face].vertices;
    if mesh.dim == 1 {
        let x = mesh.vertices[fverts[0]];
        return DVector::from_element(1, f(x));
    }
    let a = mesh.vertices[fverts[0]];
    let b = mesh.vertices[fverts[1]];
    let measure = mesh.face_measure(face);
    let fvals = fbasis.eval(face_points);
    let mut rhs = DVector::zeros(fbasis.dim);
    let mut mass = DMatrix::zeros(fbasis.dim, fbasis.dim);
    for (p, &s) in face_points.iter().enumerate() {
        let x = [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
        let w = face_weights[p] * measure;
        let fx = f(x);
        for l in 0..fbasis.dim {
            rhs[l] += w * fx * fvals[(l, p)];
            for m in 0..fbasis.dim {
                mass[(l, m)] += w * fvals[(l, p)] * fvals[(m, p)];
            }
        }
    }
    mass.cholesky()
        .expect("face mass matrix must be positive definite")
        .solve(&rhs)
}

/// Evaluates a coefficient vector of the basis at reference points.
pub fn eval_coeffs(basis: &ElementBasis, coeffs: &[f64], pts: &[Point]) -> Vec<f64> {
    let vals = basis.eval(pts);
    (0..pts.len())
        .map(|p| (0..basis.dim).map(|i| coeffs[i] * vals[(i, p)]).sum())
        .collect()
}

/// Quadrature exactness used for assembling degree-k spaces; also serves
/// the degree k+1 postprocessing.
pub fn assembly_exactness(k: usize) -> usize {
    2 * k + 2
}

pub fn check_positive_definite(m: &DMatrix<f64>) -> Result<()> {
    m.clone()
        .cholesky()
        .map(|_| ())
        .ok_or_else(|| Error::Configuration("matrix is not positive definite".into()))
}
