//! Algebraic curvature operators and the algebra on them.
//!
//! Operators are symmetric N×N matrices in the wedge basis of [`crate::lie`],
//! with the Frobenius inner product ⟨R,S⟩ = Σ R_ab S_ab, so ‖Id‖² = N.

use std::ops::Deref;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{same_dim, Error, Result};
use crate::lie::{
    adjoint_rotation, pair_count, pairs0, rank0, signed_rank0, structure_constants, Bivector,
    Sp1Basis,
};

const SYMMETRY_TOL: f64 = 1e-12;
const BIANCHI_TOL: f64 = 1e-10;
const PURE_TOL: f64 = 1e-12;
const ZERO_NORM: f64 = 1e-14;

/// Element of S²(Λ²ℝⁿ), not necessarily satisfying the Bianchi identity.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricOperator {
    pub dim: usize,
    pub mat: DMatrix<f64>,
}

impl SymmetricOperator {
    pub fn new(dim: usize, mat: DMatrix<f64>) -> Result<Self> {
        let size = pair_count(dim);
        if mat.nrows() != size || mat.ncols() != size {
            return Err(Error::DimensionMismatch { left: mat.nrows().max(mat.ncols()), right: size });
        }
        let asym = (&mat - mat.transpose()).amax();
        if asym > SYMMETRY_TOL * mat.amax().max(1.0) {
            return Err(Error::Argument(format!("operator is not symmetric (defect {asym:.3e})")));
        }
        Ok(Self { dim, mat })
    }

    pub(crate) fn new_unchecked(dim: usize, mat: DMatrix<f64>) -> Self {
        Self { dim, mat }
    }

    pub fn zeros(dim: usize) -> Self {
        let size = pair_count(dim);
        Self { dim, mat: DMatrix::zeros(size, size) }
    }

    pub fn size(&self) -> usize {
        self.mat.nrows()
    }

    pub fn dot(&self, other: &SymmetricOperator) -> f64 {
        self.mat.dot(&other.mat)
    }

    pub fn norm(&self) -> f64 {
        self.mat.norm()
    }

    pub fn apply(&self, v: &Bivector) -> Result<Bivector> {
        same_dim(self.dim, v.dim)?;
        Ok(Bivector { dim: self.dim, coords: &self.mat * &v.coords })
    }

    /// ⟨R(e_a∧e_b), e_c∧e_d⟩ for arbitrary 0-based indices.
    pub fn rm(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        match (signed_rank0(a, b, self.dim), signed_rank0(c, d, self.dim)) {
            (Some((r, s)), Some((q, t))) => s * t * self.mat[(r, q)],
            _ => 0.0,
        }
    }
}

/// Symmetric operator satisfying the first Bianchi identity.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureOperator {
    op: SymmetricOperator,
}

impl Deref for CurvatureOperator {
    type Target = SymmetricOperator;

    fn deref(&self) -> &SymmetricOperator {
        &self.op
    }
}

impl CurvatureOperator {
    pub fn new(dim: usize, mat: DMatrix<f64>) -> Result<Self> {
        Self::from_symmetric(SymmetricOperator::new(dim, mat)?)
    }

    pub fn from_symmetric(op: SymmetricOperator) -> Result<Self> {
        let defect = bianchi_map(&op).norm();
        if defect > BIANCHI_TOL * op.norm().max(1.0) {
            return Err(Error::Argument(format!(
                "operator violates the Bianchi identity (defect {defect:.3e})"
            )));
        }
        Ok(Self { op })
    }

    pub(crate) fn new_unchecked(dim: usize, mat: DMatrix<f64>) -> Self {
        Self { op: SymmetricOperator { dim, mat } }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { op: SymmetricOperator::zeros(dim) }
    }

    pub fn identity(dim: usize) -> Self {
        let size = pair_count(dim);
        Self::new_unchecked(dim, DMatrix::identity(size, size))
    }

    pub fn as_symmetric(&self) -> &SymmetricOperator {
        &self.op
    }

    pub fn into_symmetric(self) -> SymmetricOperator {
        self.op
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new_unchecked(self.dim, &self.mat * c)
    }

    pub fn add(&self, other: &CurvatureOperator) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        Ok(Self::new_unchecked(self.dim, &self.mat + &other.mat))
    }

    pub fn sub(&self, other: &CurvatureOperator) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        Ok(Self::new_unchecked(self.dim, &self.mat - &other.mat))
    }

    /// Zero-pad into dimension n ≥ dim.
    pub fn embed(&self, n: usize) -> Result<Self> {
        if n < self.dim {
            return Err(Error::Argument(format!("cannot embed dim {} into {n}", self.dim)));
        }
        let map: Vec<usize> = pairs0(self.dim).into_iter().map(|(i, j)| rank0(i, j, n)).collect();
        let size = pair_count(n);
        let mut mat = DMatrix::zeros(size, size);
        for (a, &ra) in map.iter().enumerate() {
            for (b, &rb) in map.iter().enumerate() {
                mat[(ra, rb)] = self.mat[(a, b)];
            }
        }
        Ok(Self::new_unchecked(n, mat))
    }
}

/// The Bianchi map b; its image is Λ⁴ and it is the orthogonal projection onto it.
pub fn bianchi_map(s: &SymmetricOperator) -> SymmetricOperator {
    let n = s.dim;
    let mut out = SymmetricOperator::zeros(n);
    let m = &s.mat;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let (ij, kl) = (rank0(i, j, n), rank0(k, l, n));
                    let (ik, jl) = (rank0(i, k, n), rank0(j, l, n));
                    let (il, jk) = (rank0(i, l, n), rank0(j, k, n));
                    let c = (m[(ij, kl)] - m[(ik, jl)] + m[(il, jk)]) / 3.0;
                    for (a, b, v) in [(ij, kl, c), (ik, jl, -c), (il, jk, c)] {
                        out.mat[(a, b)] = v;
                        out.mat[(b, a)] = v;
                    }
                }
            }
        }
    }
    out
}

/// Orthogonal projection of a symmetric operator onto the curvature operators.
pub fn bianchi_project(s: &SymmetricOperator) -> CurvatureOperator {
    let b = bianchi_map(s);
    CurvatureOperator::new_unchecked(s.dim, &s.mat - b.mat)
}

/// Ric_ab = Σ_i ⟨R(e_a∧e_i), e_b∧e_i⟩.
pub fn ricci(r: &SymmetricOperator) -> DMatrix<f64> {
    let n = r.dim;
    DMatrix::from_fn(n, n, |a, b| (0..n).map(|i| r.rm(a, i, b, i)).sum())
}

pub fn scalar(r: &SymmetricOperator) -> f64 {
    ricci(r).trace()
}

/// (A∧B)(v∧w) = ½(Av∧Bw + Bv∧Aw) for n×n matrices A, B.
pub fn wedge_product(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<SymmetricOperator> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::Argument("wedge factors must be square".into()));
    }
    same_dim(a.nrows(), b.nrows())?;
    let n = a.nrows();
    let pairs = pairs0(n);
    let size = pairs.len();
    let mut mat = DMatrix::zeros(size, size);
    for (c, &(i, j)) in pairs.iter().enumerate() {
        for (r, &(k, l)) in pairs.iter().enumerate() {
            mat[(r, c)] = 0.5
                * (a[(k, i)] * b[(l, j)] - a[(l, i)] * b[(k, j)] + b[(k, i)] * a[(l, j)]
                    - b[(l, i)] * a[(k, j)]);
        }
    }
    Ok(SymmetricOperator { dim: n, mat })
}

/// A∧id as a curvature operator, for symmetric A.
pub fn wedge_identity(a: &DMatrix<f64>) -> Result<CurvatureOperator> {
    let id = DMatrix::identity(a.nrows(), a.nrows());
    let s = wedge_product(a, &id)?;
    Ok(CurvatureOperator { op: s })
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub scal: f64,
    #[serde(skip)]
    pub ricci0: DMatrix<f64>,
    #[serde(skip)]
    pub identity_part: CurvatureOperator,
    #[serde(skip)]
    pub ricci_part: CurvatureOperator,
    #[serde(skip)]
    pub weyl: CurvatureOperator,
    pub identity_norm: f64,
    pub ricci_norm: f64,
    pub weyl_norm: f64,
    pub angle: f64,
}

/// R = scal/(n(n−1))·Id + 2/(n−2)·Ric₀∧id + W.
pub fn decompose(r: &CurvatureOperator) -> Result<DecompositionReport> {
    let n = r.dim;
    if n < 4 {
        return Err(Error::UnsupportedDimension { n, reason: "Weyl decomposition needs n >= 4" });
    }
    let ric = ricci(r);
    let scal = ric.trace();
    let ricci0 = &ric - DMatrix::<f64>::identity(n, n) * (scal / n as f64);
    let identity_part = CurvatureOperator::identity(n).scale(scal / (n * (n - 1)) as f64);
    let ricci_part = wedge_identity(&ricci0)?.scale(2.0 / (n - 2) as f64);
    let weyl = CurvatureOperator::new_unchecked(n, &r.mat - &identity_part.mat - &ricci_part.mat);
    let angle = if r.norm() > ZERO_NORM { angle_to_identity(r)? } else { 0.0 };
    Ok(DecompositionReport {
        scal,
        identity_norm: identity_part.norm(),
        ricci_norm: ricci_part.norm(),
        weyl_norm: weyl.norm(),
        ricci0,
        identity_part,
        ricci_part,
        weyl,
        angle,
    })
}

pub fn weyl_part(r: &CurvatureOperator) -> Result<CurvatureOperator> {
    Ok(decompose(r)?.weyl)
}

/// R#S via the structure constants of so(n).
pub fn sharp(r: &SymmetricOperator, s: &SymmetricOperator) -> Result<SymmetricOperator> {
    same_dim(r.dim, s.dim)?;
    let sc = structure_constants(r.dim);
    let size = sc.size();
    let rm = r.mat.as_slice();
    let sm = s.mat.as_slice();
    let mut out = DMatrix::zeros(size, size);
    for g in 0..size {
        let tg = sc.into_target(g);
        for d in g..size {
            let td = sc.into_target(d);
            let mut acc = 0.0;
            for &(mu, nu, c) in tg {
                let rrow = &rm[mu * size..(mu + 1) * size];
                let srow = &sm[nu * size..(nu + 1) * size];
                let mut inner = 0.0;
                for &(al, be, c2) in td {
                    let x = rrow[al];
                    if x != 0.0 {
                        inner += c2 * x * srow[be];
                    }
                }
                acc += c * inner;
            }
            out[(g, d)] = 0.5 * acc;
            out[(d, g)] = 0.5 * acc;
        }
    }
    Ok(SymmetricOperator { dim: r.dim, mat: out })
}

/// The n×n matrix of sectional values ⟨R(e_i∧e_j), e_i∧e_j⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternativeOperator {
    pub dim: usize,
    pub tilde: DMatrix<f64>,
}

impl AlternativeOperator {
    pub fn from_operator(r: &SymmetricOperator) -> Self {
        let n = r.dim;
        let mut tilde = DMatrix::zeros(n, n);
        for (k, (i, j)) in pairs0(n).into_iter().enumerate() {
            tilde[(i, j)] = r.mat[(k, k)];
            tilde[(j, i)] = r.mat[(k, k)];
        }
        Self { dim: n, tilde }
    }

    pub fn new(tilde: DMatrix<f64>) -> Result<Self> {
        if !tilde.is_square() {
            return Err(Error::Argument("alternative operator must be square".into()));
        }
        if (&tilde - tilde.transpose()).amax() > SYMMETRY_TOL * tilde.amax().max(1.0) {
            return Err(Error::Argument("alternative operator must be symmetric".into()));
        }
        if tilde.diagonal().amax() != 0.0 {
            return Err(Error::Argument("alternative operator must have zero diagonal".into()));
        }
        Ok(Self { dim: tilde.nrows(), tilde })
    }

    /// The pure curvature operator with these diagonal entries.
    pub fn to_operator(&self) -> CurvatureOperator {
        let d = DVector::from_iterator(
            pair_count(self.dim),
            pairs0(self.dim).into_iter().map(|(i, j)| self.tilde[(i, j)]),
        );
        CurvatureOperator::new_unchecked(self.dim, DMatrix::from_diagonal(&d))
    }

    /// Alternative operator of R# for the pure operator R: R̃² with its diagonal removed.
    pub fn sharp(&self) -> Self {
        let mut sq = &self.tilde * &self.tilde;
        sq.fill_diagonal(0.0);
        Self { dim: self.dim, tilde: sq }
    }

    pub fn column_sums(&self) -> DVector<f64> {
        DVector::from_iterator(self.dim, self.tilde.column_iter().map(|c| c.sum()))
    }
}

pub fn is_pure(r: &SymmetricOperator) -> bool {
    let mut off = r.mat.clone();
    off.fill_diagonal(0.0);
    off.amax() < PURE_TOL
}

/// R#R for an operator diagonal in the wedge basis.
pub fn sharp_pure(r: &CurvatureOperator) -> Result<CurvatureOperator> {
    if !is_pure(r) {
        return Err(Error::Precondition("sharp_pure needs a diagonal operator".into()));
    }
    Ok(AlternativeOperator::from_operator(r).sharp().to_operator())
}

/// R#R, taking the diagonal shortcut when it applies.
pub fn sharp_square(r: &CurvatureOperator) -> CurvatureOperator {
    sharp_pure(r).unwrap_or_else(|_| {
        let s = sharp(r, r).expect("same dimension");
        CurvatureOperator { op: s }
    })
}

/// Q(R,S) = ½(RS + SR) + R#S.
pub fn q_map(r: &CurvatureOperator, s: &CurvatureOperator) -> Result<CurvatureOperator> {
    same_dim(r.dim, s.dim)?;
    let rs = &r.mat * &s.mat;
    let sym = (&rs + rs.transpose()) * 0.5;
    let sh = sharp(r, s)?;
    Ok(CurvatureOperator::new_unchecked(r.dim, sym + sh.mat))
}

/// Q(R) = R² + R#.
pub fn q(r: &CurvatureOperator) -> CurvatureOperator {
    let sh = sharp_square(r);
    CurvatureOperator::new_unchecked(r.dim, &r.mat * &r.mat + &sh.mat)
}

/// P(R) = ⟨Q(R), R⟩.
pub fn potential(r: &CurvatureOperator) -> f64 {
    q(r).dot(r)
}

/// P(R)/‖R‖³.
pub fn potential_normalized(r: &CurvatureOperator) -> Result<f64> {
    let norm = r.norm();
    if norm <= ZERO_NORM {
        return Err(Error::Degenerate("potential of the zero operator".into()));
    }
    Ok(potential(r) / norm.powi(3))
}

/// tri(R,S,T) = ⟨Q(R,S), T⟩, fully symmetric.
pub fn tri(r: &CurvatureOperator, s: &CurvatureOperator, t: &CurvatureOperator) -> Result<f64> {
    same_dim(r.dim, t.dim)?;
    Ok(q_map(r, s)?.dot(t))
}

pub fn angle_to_identity(r: &SymmetricOperator) -> Result<f64> {
    let norm = r.norm();
    if norm <= ZERO_NORM {
        return Err(Error::Degenerate("angle of the zero operator".into()));
    }
    let size = r.size() as f64;
    let cos = r.mat.trace() / (norm * size.sqrt());
    Ok(cos.clamp(-1.0, 1.0).acos())
}

/// g.R with g.R(v∧w, x∧y) = R(gv∧gw, gx∧gy).
pub fn rotate(g: &DMatrix<f64>, r: &CurvatureOperator) -> Result<CurvatureOperator> {
    same_dim(g.nrows(), r.dim)?;
    let a = adjoint_rotation(g)?;
    Ok(CurvatureOperator::new_unchecked(r.dim, a.transpose() * &r.mat * &a))
}

/// Same action on a symmetric operator.
pub fn rotate_symmetric(g: &DMatrix<f64>, s: &SymmetricOperator) -> Result<SymmetricOperator> {
    same_dim(g.nrows(), s.dim)?;
    let a = adjoint_rotation(g)?;
    Ok(SymmetricOperator { dim: s.dim, mat: a.transpose() * &s.mat * &a })
}

/// Norm of Rm as a (4,0)-tensor; each wedge pair appears four times in the full sum.
pub fn tensor_norm(r: &SymmetricOperator) -> f64 {
    2.0 * r.norm()
}

/// Matrix of an so(4) operator in the orthonormal frame (i₊, j₊, k₊, i₋, j₋, k₋)/√2.
pub fn sp1_blocks(r: &SymmetricOperator) -> Result<DMatrix<f64>> {
    if r.dim != 4 {
        return Err(Error::UnsupportedDimension { n: r.dim, reason: "sp(1) blocks exist in n = 4" });
    }
    let f = Sp1Basis::new().frame();
    Ok(f.transpose() * &r.mat * &f)
}

/// Inverse of [`sp1_blocks`].
pub fn from_sp1_blocks(m: &DMatrix<f64>) -> Result<SymmetricOperator> {
    same_dim(m.nrows(), 6)?;
    let f = Sp1Basis::new().frame();
    SymmetricOperator::new(4, &f * m * f.transpose())
}
