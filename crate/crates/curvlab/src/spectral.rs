//! Weyl bases, the Hessian of the potential at a Weyl operator, spectra and
//! dimension counts of the invariant decompositions.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::curvature::{
    bianchi_map, q_map, ricci, weyl_part, CurvatureOperator, SymmetricOperator,
};
use crate::error::{Error, Result};
use crate::lie::{pair_count, pairs0, rank0, signed_rank0, structure_constants, Bivector, Sp1Basis};

const RANK_TOL: f64 = 1e-8;

/// Length of the coordinate vector of a symmetric N×N matrix.
pub fn sym_len(size: usize) -> usize {
    size * (size + 1) / 2
}

/// Upper-triangle coordinates with off-diagonal entries weighted by √2,
/// so the Euclidean dot product equals the Frobenius inner product.
pub fn sym_to_vec(m: &DMatrix<f64>) -> DVector<f64> {
    let size = m.nrows();
    let mut out = DVector::zeros(sym_len(size));
    let mut k = 0;
    for a in 0..size {
        out[k] = m[(a, a)];
        k += 1;
        for b in a + 1..size {
            out[k] = std::f64::consts::SQRT_2 * m[(a, b)];
            k += 1;
        }
    }
    out
}

pub fn vec_to_sym(v: &DVector<f64>, size: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(size, size);
    let mut k = 0;
    for a in 0..size {
        m[(a, a)] = v[k];
        k += 1;
        for b in a + 1..size {
            let x = v[k] * std::f64::consts::FRAC_1_SQRT_2;
            m[(a, b)] = x;
            m[(b, a)] = x;
            k += 1;
        }
    }
    m
}

/// dim Weyl_n = (n−3)/2·C(n+2,3), zero below n = 4.
pub fn weyl_dim_formula(n: usize) -> usize {
    if n < 4 {
        return 0;
    }
    (n - 3) * binomial(n + 2, 3) / 2
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Orthonormal basis of the Weyl operators in dimension n.
#[derive(Debug, Clone)]
pub struct WeylBasis {
    pub dim: usize,
    /// Columns are symmetric-coordinate vectors of the basis operators.
    pub coords: DMatrix<f64>,
}

impl WeylBasis {
    pub fn len(&self) -> usize {
        self.coords.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.ncols() == 0
    }

    pub fn operator(&self, i: usize) -> CurvatureOperator {
        let m = vec_to_sym(&self.coords.column(i).into_owned(), pair_count(self.dim));
        CurvatureOperator::new_unchecked(self.dim, m)
    }

    pub fn vectors(&self) -> Vec<CurvatureOperator> {
        (0..self.len()).map(|i| self.operator(i)).collect()
    }

    pub fn gram_defect(&self) -> f64 {
        let k = self.len();
        (self.coords.tr_mul(&self.coords) - DMatrix::<f64>::identity(k, k)).amax()
    }
}

// Classical Gram–Schmidt with one reorthogonalization pass; returns accepted columns.
fn orthonormalize(candidates: impl Iterator<Item = DVector<f64>>, len: usize, cap: usize) -> DMatrix<f64> {
    let mut basis = DMatrix::zeros(len, cap.max(1));
    let mut count = 0;
    for mut v in candidates {
        let start = v.norm();
        if start < RANK_TOL {
            continue;
        }
        for _ in 0..2 {
            if count == 0 {
                break;
            }
            let q = basis.columns(0, count);
            let c = q.tr_mul(&v);
            v -= q * c;
        }
        let norm = v.norm();
        if norm > 1e-6 * start.max(1e-300) && norm > RANK_TOL {
            if count == basis.ncols() {
                basis = basis.insert_columns(count, cap.max(1), 0.0);
            }
            basis.set_column(count, &(v / norm));
            count += 1;
        }
    }
    basis.columns(0, count).into_owned()
}

pub(crate) fn build_weyl_basis(n: usize) -> WeylBasis {
    let size = pair_count(n);
    let len = sym_len(size);
    let candidates = (0..size).flat_map(move |a| (a..size).map(move |b| (a, b))).map(move |(a, b)| {
        let mut s = SymmetricOperator::zeros(n);
        s.mat[(a, b)] = 1.0;
        s.mat[(b, a)] = 1.0;
        let r = crate::curvature::bianchi_project(&s);
        let w = weyl_part(&r).expect("n >= 4");
        sym_to_vec(&w.mat)
    });
    let coords = if n < 4 {
        DMatrix::zeros(len, 0)
    } else {
        orthonormalize(candidates, len, weyl_dim_formula(n))
    };
    WeylBasis { dim: n, coords }
}

/// Orthonormal Weyl basis from projecting the standard symmetric basis.
pub fn weyl_basis(n: usize) -> Result<WeylBasis> {
    if !(5..=12).contains(&n) {
        return Err(Error::UnsupportedDimension { n, reason: "Weyl basis is built for 5 <= n <= 12" });
    }
    Ok(build_weyl_basis(n))
}

fn is_weyl(w: &CurvatureOperator) -> bool {
    ricci(w).amax() < 1e-10 && bianchi_map(w).norm() < 1e-10
}

/// Matrix of F(W) = Q(W₀, W) on the span of `basis`.
pub fn hessian_matrix(w0: &CurvatureOperator, basis: &WeylBasis) -> Result<DMatrix<f64>> {
    crate::error::same_dim(w0.dim, basis.dim)?;
    if !is_weyl(w0) {
        return Err(Error::Argument("hessian base point must be a Weyl operator".into()));
    }
    let images: Vec<DVector<f64>> = (0..basis.len())
        .into_par_iter()
        .map(|i| {
            let f = q_map(w0, &basis.operator(i)).expect("same dimension");
            sym_to_vec(&f.mat)
        })
        .collect();
    let f = DMatrix::from_columns(&images);
    let h = basis.coords.tr_mul(&f);
    Ok((&h + h.transpose()) * 0.5)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
    pub spread: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub clusters: Vec<Cluster>,
    pub residual: f64,
    pub cluster_tol: f64,
    /// Eigenvectors as columns, sorted like the clusters.
    #[serde(skip)]
    pub vectors: DMatrix<f64>,
}

impl SpectralReport {
    pub fn size(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).sum()
    }

    /// Multiplicity of the cluster within `tol` of `value`, zero if none.
    pub fn multiplicity_of(&self, value: f64, tol: f64) -> usize {
        self.clusters.iter().filter(|c| (c.value - value).abs() <= tol).map(|c| c.multiplicity).sum()
    }

    /// Orthonormal eigenvector columns of the cluster at position `index`.
    pub fn cluster_vectors(&self, index: usize) -> DMatrix<f64> {
        let start: usize = self.clusters[..index].iter().map(|c| c.multiplicity).sum();
        self.vectors.columns(start, self.clusters[index].multiplicity).into_owned()
    }
}

/// Eigen-decomposition with eigenvalues grouped into clusters, in descending order.
///
/// Neighbouring eigenvalues join a cluster when their gap, relative to the
/// spectral radius, is at most `cluster_tol`.
pub fn eigen_report(m: &DMatrix<f64>, cluster_tol: f64) -> Result<SpectralReport> {
    if !m.is_square() {
        return Err(Error::Argument("matrix must be square".into()));
    }
    let asym = (m - m.transpose()).amax();
    if asym > 1e-10 * m.amax().max(1.0) {
        return Err(Error::Argument(format!("matrix is not symmetric (defect {asym:.3e})")));
    }
    // nalgebra's QR iteration leaves residuals near 1e-7 on clustered spectra;
    // repeating it on the nearly diagonal VᵀMV recovers full accuracy.
    let mut eig = SymmetricEigen::new(m.clone());
    let floor = 1e-13 * m.amax().max(1.0);
    for _ in 0..4 {
        if (m * &eig.eigenvectors - &eig.eigenvectors * DMatrix::from_diagonal(&eig.eigenvalues)).amax() <= floor {
            break;
        }
        let rotated = eig.eigenvectors.tr_mul(&(m * &eig.eigenvectors));
        let next = SymmetricEigen::new((&rotated + rotated.transpose()) * 0.5);
        // the QR sweep can break down on an almost diagonal input
        if next.eigenvalues.iter().any(|x| !x.is_finite()) {
            break;
        }
        eig = SymmetricEigen { eigenvectors: &eig.eigenvectors * next.eigenvectors, eigenvalues: next.eigenvalues };
    }
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), m.nrows(), |r, c| eig.eigenvectors[(r, order[c])]);

    let mut residual: f64 = 0.0;
    for (c, &lambda) in values.iter().enumerate() {
        let v = vectors.column(c);
        residual = residual.max((m * v - v * lambda).norm());
    }

    let scale = values.iter().fold(0.0f64, |a, &x| a.max(x.abs())).max(f64::MIN_POSITIVE);
    let mut clusters: Vec<Cluster> = Vec::new();
    let mut members: Vec<f64> = Vec::new();
    let flush = |members: &mut Vec<f64>, clusters: &mut Vec<Cluster>| {
        if members.is_empty() {
            return;
        }
        let mean = members.iter().sum::<f64>() / members.len() as f64;
        let spread = members.first().unwrap() - members.last().unwrap();
        clusters.push(Cluster { value: mean, multiplicity: members.len(), spread });
        members.clear();
    };
    for &x in &values {
        if let Some(&last) = members.last() {
            if (last - x) / scale > cluster_tol {
                flush(&mut members, &mut clusters);
            }
        }
        members.push(x);
    }
    flush(&mut members, &mut clusters);
    Ok(SpectralReport { clusters, residual, cluster_tol, vectors })
}

/// Symmetric coordinates of [ad_{b_α}, W] for every basis bivector b_α.
pub fn orbit_tangent_vectors(w: &SymmetricOperator) -> DMatrix<f64> {
    let n = w.dim;
    let sc = structure_constants(n);
    let cols: Vec<DVector<f64>> = (0..pair_count(n))
        .map(|a| {
            let ad = sc.ad(&Bivector::unit(n, a)).expect("same dimension");
            sym_to_vec(&(&ad * &w.mat - &w.mat * &ad))
        })
        .collect();
    DMatrix::from_columns(&cols)
}

fn numerical_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    sv.iter().filter(|&&s| s > tol).count()
}

/// Orthonormal basis (columns) of the column span of `m`.
pub(crate) fn column_space(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    if m.ncols() == 0 {
        return DMatrix::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > tol).collect();
    DMatrix::from_fn(m.nrows(), keep.len(), |r, c| u[(r, keep[c])])
}

/// Dimension of the tangent space of the SO(n)-orbit through W.
pub fn orbit_tangent_dim(w: &SymmetricOperator) -> usize {
    numerical_rank(&orbit_tangent_vectors(w), RANK_TOL)
}

/// Orthonormal basis of the orbit tangent space, in symmetric coordinates.
pub fn orbit_tangent_basis(w: &SymmetricOperator) -> DMatrix<f64> {
    column_space(&orbit_tangent_vectors(w), RANK_TOL)
}

// Φ(e_a∧e_b ⊗ e_c) = e_a∧e_b∧e_c, domain index rank(a,b)·k + c.
fn phi_matrix(k: usize) -> DMatrix<f64> {
    let triples: Vec<(usize, usize, usize)> = (0..k)
        .flat_map(|a| (a + 1..k).flat_map(move |b| (b + 1..k).map(move |c| (a, b, c))))
        .collect();
    let index = |x: usize, y: usize, z: usize| -> Option<(usize, f64)> {
        let mut v = [x, y, z];
        if x == y || y == z || x == z {
            return None;
        }
        let mut sign = 1.0;
        for i in 0..3 {
            for j in 0..2 - i {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        triples.iter().position(|&t| t == (v[0], v[1], v[2])).map(|p| (p, sign))
    };
    let mut m = DMatrix::zeros(triples.len(), pair_count(k) * k);
    for (r, (a, b)) in pairs0(k).into_iter().enumerate() {
        for c in 0..k {
            if let Some((p, s)) = index(a, b, c) {
                m[(p, r * k + c)] = s;
            }
        }
    }
    m
}

// ι(x) = Σ_i e_i∧x ⊗ e_i, as columns for x = e_j.
fn vector_embedding(k: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(pair_count(k) * k, k);
    for j in 0..k {
        for i in 0..k {
            if let Some((r, s)) = signed_rank0(i, j, k) {
                m[(r * k + i, j)] += s;
            }
        }
    }
    m
}

fn null_space(m: &DMatrix<f64>) -> DMatrix<f64> {
    let cols = m.ncols();
    if m.nrows() == 0 {
        return DMatrix::identity(cols, cols);
    }
    let eig = SymmetricEigen::new(m.tr_mul(m));
    let keep: Vec<usize> = (0..cols).filter(|&i| eig.eigenvalues[i].abs() < RANK_TOL).collect();
    DMatrix::from_fn(cols, keep.len(), |r, c| eig.eigenvectors[(r, keep[c])])
}

/// X_k, the orthogonal complement of ι(ℝᵏ) inside ker Φ.
pub fn x_space(k: usize) -> DMatrix<f64> {
    let ker = null_space(&phi_matrix(k));
    let iota = column_space(&vector_embedding(k), RANK_TOL);
    let reduced = &ker - &iota * iota.tr_mul(&ker);
    column_space(&reduced, 1e-6)
}

/// dim X_k = k·C(k,2) − C(k,3) − k.
pub fn x_dim_formula(k: usize) -> usize {
    k * binomial(k, 2) - binomial(k, 3) - k
}

/// Named dimension with its numeric and closed-form values.
#[derive(Debug, Clone, Serialize)]
pub struct DimensionEntry {
    pub name: String,
    pub numeric: usize,
    pub formula: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionTable {
    pub n: usize,
    pub k: usize,
    pub entries: Vec<DimensionEntry>,
    /// Sum of the SO(k)×SO(l) list of Weyl_n summands.
    pub split_sum: usize,
    /// Sum of the finer Pin(2)·SU(2)₊×SO(n−4) list, when k = 4.
    pub pin_sum: Option<usize>,
    pub weyl_numeric: usize,
}

impl DimensionTable {
    pub fn consistent(&self) -> bool {
        self.entries.iter().all(|e| e.numeric == e.formula)
            && self.split_sum == self.weyl_numeric
            && self.pin_sum.is_none_or(|s| s == self.weyl_numeric)
    }
}

fn weyl_rank(n: usize) -> usize {
    build_weyl_basis(n).len()
}

fn x_rank(k: usize) -> usize {
    if k < 2 {
        return 0;
    }
    x_space(k).ncols()
}

/// sp(1)± ⊗ ℝ⁴ as columns in the Λ²(ℝ⁴)⊗ℝ⁴ coordinates.
fn sp1_tensor_r4(plus: bool) -> DMatrix<f64> {
    let s = Sp1Basis::new();
    let gens = if plus { [&s.i_plus, &s.j_plus, &s.k_plus] } else { [&s.i_minus, &s.j_minus, &s.k_minus] };
    let mut m = DMatrix::zeros(24, 12);
    for (g, b) in gens.iter().enumerate() {
        for c in 0..4 {
            for r in 0..6 {
                m[(r * 4 + c, g * 4 + c)] = b.coords[r];
            }
        }
    }
    m
}

/// Dimension of X₄ ∩ (sp(1)± ⊗ ℝ⁴).
pub fn x4_half_dim(plus: bool) -> usize {
    let x4 = x_space(4);
    let half = column_space(&sp1_tensor_r4(plus), RANK_TOL);
    let joined = DMatrix::from_columns(
        &x4.column_iter().chain(half.column_iter()).map(|c| c.into_owned()).collect::<Vec<_>>(),
    );
    x4.ncols() + half.ncols() - numerical_rank(&joined, 1e-6)
}

fn s2_0(m: usize) -> usize {
    (m * (m + 1) / 2).saturating_sub(1)
}

/// Dimension counts for the splitting ℝⁿ = ℝᵏ ⊕ ℝˡ.
pub fn decomposition_dims(n: usize, k: usize) -> Result<DimensionTable> {
    if k < 3 || k + 3 > n {
        return Err(Error::Argument(format!("need 3 <= k <= n - 3, got n = {n}, k = {k}")));
    }
    let l = n - k;
    let phi = phi_matrix(k);
    let phi_rank = numerical_rank(&phi, RANK_TOL);
    let iota_rank = numerical_rank(&vector_embedding(k), RANK_TOL);
    let (xk, xl) = (x_rank(k), x_rank(l));
    let (wk, wl) = (weyl_rank(k), weyl_rank(l));
    let weyl_numeric = weyl_rank(n);

    let mut entries = vec![
        DimensionEntry { name: format!("Lambda3(R^{k})"), numeric: phi_rank, formula: binomial(k, 3) },
        DimensionEntry { name: format!("R^{k}"), numeric: iota_rank, formula: k },
        DimensionEntry { name: format!("X_{k}"), numeric: xk, formula: x_dim_formula(k) },
        DimensionEntry { name: format!("X_{l}"), numeric: xl, formula: x_dim_formula(l) },
        DimensionEntry { name: format!("Weyl_{k}"), numeric: wk, formula: weyl_dim_formula(k) },
        DimensionEntry { name: format!("Weyl_{l}"), numeric: wl, formula: weyl_dim_formula(l) },
        DimensionEntry { name: format!("Weyl_{n}"), numeric: weyl_numeric, formula: weyl_dim_formula(n) },
    ];

    let split_sum = 1
        + wk
        + wl
        + k * l
        + s2_0(k)
        + s2_0(l)
        + s2_0(k) * s2_0(l)
        + binomial(k, 2) * binomial(l, 2)
        + xk * l
        + xl * k;

    let pin_sum = if k == 4 {
        let plus = x4_half_dim(true);
        let minus = x4_half_dim(false);
        entries.push(DimensionEntry { name: "X_4^+".into(), numeric: plus, formula: 8 });
        entries.push(DimensionEntry { name: "X_4^-".into(), numeric: minus, formula: 8 });
        let pairs_l = binomial(l, 2);
        let parts = [
            1,                  // W_{S^4 x S^l}
            5,                  // Weyl_4^+
            2,                  // Weyl_4^{-,1}
            2,                  // Weyl_4^{-,2}
            1,                  // W_CP2
            wl,                 // Weyl_l
            4 * l,              // orbit tangent of W_{S^4 x S^l}
            3,                  // S^2_1
            6,                  // S^2_2
            s2_0(l),            // S^2_0(R^l)
            3 * s2_0(l),        // S^2_1 ⊗ S^2_0(R^l)
            6 * s2_0(l),        // S^2_2 ⊗ S^2_0(R^l)
            3 * pairs_l,        // Λ²₊ ⊗ Λ²(R^l)
            plus * l,           // X_4^+ ⊗ R^l
            (minus / 2) * l,    // X_4^{-,1} ⊗ R^l
            (minus / 2) * l,    // X_4^{-,2} ⊗ R^l
            4 * xl,             // R^4 ⊗ X_l
            pairs_l,            // Λ²_{-,1} ⊗ Λ²(R^l)
            2 * pairs_l,        // Λ²_{-,2} ⊗ Λ²(R^l)
        ];
        Some(parts.iter().sum())
    } else {
        None
    };

    Ok(DimensionTable { n, k, entries, split_sum, pin_sum, weyl_numeric })
}

/// Hessian eigenvalues at W_CP2 in units of √(3/2), with multiplicities for m = n − 4.
///
/// ⅓ sits on S²₁ ⊕ S²₁⊗S²₀(ℝᵐ) ⊕ Λ²₋⊗Λ²(ℝᵐ) and −⅙ on the matching S²₂ and
/// second Λ²₋ pieces; the remaining zero multiplicity fills up dim Weyl_n.
pub fn hessian_prediction(n: usize) -> Vec<(f64, usize)> {
    let m = n.saturating_sub(4);
    let nonzero = [
        (1.0, 1),
        (0.5, 4 * m + 2),
        (1.0 / 3.0, m * (2 * m + 1)),
        (-1.0 / 6.0, 2 * m * (2 * m + 1)),
        (-0.5, 4 * m),
        (-1.0, 2),
    ];
    let used: usize = nonzero.iter().map(|&(_, k)| k).sum();
    let mut out: Vec<(f64, usize)> = nonzero.to_vec();
    out.insert(3, (0.0, weyl_dim_formula(n) - used));
    out.retain(|&(_, k)| k > 0);
    out
}

/// Trace of F(W) = Q(W₀, W) restricted to the span of orthonormal columns.
pub fn restricted_trace(w0: &CurvatureOperator, coords: &DMatrix<f64>) -> f64 {
    let size = pair_count(w0.dim);
    (0..coords.ncols())
        .map(|i| {
            let c = coords.column(i).into_owned();
            let w = CurvatureOperator::new_unchecked(w0.dim, vec_to_sym(&c, size));
            q_map(w0, &w).expect("same dimension").dot(&w)
        })
        .sum()
}

/// Weyl₄ padded into dimension n, in symmetric coordinates.
pub fn embedded_weyl4(n: usize) -> Result<DMatrix<f64>> {
    if n < 4 {
        return Err(Error::Argument("embedding needs n >= 4".into()));
    }
    let w4 = build_weyl_basis(4);
    let size = pair_count(n);
    let cols: Vec<DVector<f64>> = (0..w4.len())
        .map(|i| sym_to_vec(&w4.operator(i).embed(n).expect("n >= 4").mat))
        .collect();
    let mut m = DMatrix::zeros(sym_len(size), cols.len());
    for (i, c) in cols.iter().enumerate() {
        m.set_column(i, c);
    }
    Ok(m)
}

/// Rank of the kernel position e_a∧e_b (0-based), exposed for report labels.
pub fn pair_label(n: usize, rank: usize) -> String {
    let (i, j) = pairs0(n)[rank];
    debug_assert_eq!(rank0(i, j, n), rank);
    format!("e{}^e{}", i + 1, j + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{sphere_product, theta_kl, w_cp2, LAMBDA_CRIT};
    use crate::sample;

    #[test]
    fn symmetric_coordinates_are_isometric() {
        let mut rng = sample::rng(1);
        let a = sample::symmetric_matrix(&mut rng, 10);
        let b = sample::symmetric_matrix(&mut rng, 10);
        assert!((sym_to_vec(&a).dot(&sym_to_vec(&b)) - a.dot(&b)).abs() < 1e-12);
        assert!((vec_to_sym(&sym_to_vec(&a), 10) - a).amax() < 1e-15);
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dim_formula(5), 35);
        assert_eq!(weyl_dim_formula(6), 84);
        assert_eq!(weyl_dim_formula(11), 1144);
        for n in [4, 5, 6, 7] {
            let b = build_weyl_basis(n);
            assert_eq!(b.len(), weyl_dim_formula(n), "n = {n}");
            assert!(b.gram_defect() < 1e-10);
            for i in 0..b.len() {
                let w = b.operator(i);
                assert!(ricci(&w).amax() < 1e-10);
                assert!(bianchi_map(&w).norm() < 1e-10);
            }
        }
        assert!(weyl_basis(4).is_err());
        assert!(weyl_basis(13).is_err());
    }

    #[test]
    fn eigen_report_clusters() {
        let m = DMatrix::from_diagonal(&DVector::from_row_slice(&[1.0, 1.0, 2.0]));
        let r = eigen_report(&m, 1e-6).unwrap();
        assert_eq!(
            r.clusters.iter().map(|c| (c.value, c.multiplicity)).collect::<Vec<_>>(),
            vec![(2.0, 1), (1.0, 2)]
        );
        let bad = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(eigen_report(&bad, 1e-6).is_err());
    }

    #[test]
    fn cluster_projectors_are_orthogonal() {
        let mut rng = sample::rng(2);
        let q = sample::rotation(&mut rng, 6);
        let d = DMatrix::from_diagonal(&DVector::from_row_slice(&[3.0, 3.0, 1.0, 1.0, 1.0, -2.0]));
        let m = &q * d * q.transpose();
        let r = eigen_report(&((&m + m.transpose()) * 0.5), 1e-8).unwrap();
        assert_eq!(r.clusters.len(), 3);
        let projectors: Vec<DMatrix<f64>> = (0..3)
            .map(|i| {
                let v = r.cluster_vectors(i);
                &v * v.transpose()
            })
            .collect();
        for (i, p) in projectors.iter().enumerate() {
            assert!((p * p - p).amax() < 1e-8);
            for other in &projectors[i + 1..] {
                assert!((p * other).amax() < 1e-8);
            }
        }
    }

    #[test]
    fn orbit_tangent_dims() {
        assert_eq!(orbit_tangent_dim(&CurvatureOperator::identity(6)), 0);
        for (k, l) in [(3, 3), (3, 4), (5, 4)] {
            let w = weyl_part(&sphere_product(k, l).unwrap()).unwrap();
            assert_eq!(orbit_tangent_dim(&w), k * l);
        }
        // SO(n) has dimension n(n−1)/2, the stabilizer SU(2)₊·Pin(2)×SO(n−4) has 4 + C(n−4, 2)
        for n in [5, 6, 8] {
            let expected = pair_count(n) - 4 - binomial(n - 4, 2);
            assert_eq!(orbit_tangent_dim(&w_cp2(n).unwrap()), expected);
        }
    }

    #[test]
    fn hessian_small_dimension() {
        let n = 6;
        let basis = weyl_basis(n).unwrap();
        let w = w_cp2(n).unwrap();
        let h = hessian_matrix(&w, &basis).unwrap();
        let r = eigen_report(&h, 1e-8).unwrap();
        assert!(r.residual < 1e-8);
        assert!((r.clusters[0].value - LAMBDA_CRIT).abs() < 1e-10);
        assert_eq!(r.clusters[0].multiplicity, 1);
        // trace over all of Weyl_n vanishes
        assert!(h.trace().abs() < 1e-8);
        assert!(hessian_matrix(&CurvatureOperator::identity(n), &basis).is_err());
    }

    #[test]
    fn product_weyl_is_eigenvector() {
        let (k, l) = (3, 4);
        let n = k + l;
        let w = weyl_part(&sphere_product(k, l).unwrap()).unwrap();
        let w = w.scale(1.0 / w.norm());
        let f = q_map(&w, &w).unwrap();
        assert!((&f.mat - &w.mat * theta_kl(k, l)).amax() < 1e-10);
        let basis = weyl_basis(n).unwrap();
        let h = hessian_matrix(&w, &basis).unwrap();
        let x = basis.coords.tr_mul(&sym_to_vec(&w.mat));
        assert!((&h * &x - &x * theta_kl(k, l)).norm() < 1e-10);
    }

    #[test]
    fn x_space_dimensions() {
        assert_eq!(x_dim_formula(4), 16);
        assert_eq!(x_dim_formula(5), 35);
        for k in 3..7 {
            assert_eq!(x_space(k).ncols(), x_dim_formula(k), "k = {k}");
        }
        assert_eq!(x4_half_dim(true), 8);
        assert_eq!(x4_half_dim(false), 8);
        // φ∘ι = 0
        let prod = phi_matrix(5) * vector_embedding(5);
        assert!(prod.amax() < 1e-14);
    }

    #[test]
    fn decomposition_tables() {
        let t = decomposition_dims(9, 4).unwrap();
        assert!(t.consistent(), "{t:?}");
        let t = decomposition_dims(8, 3).unwrap();
        assert!(t.consistent(), "{t:?}");
        assert!(decomposition_dims(6, 4).is_err());
    }

    #[test]
    fn prediction_matches_small_spectra() {
        for n in [5, 6, 7] {
            let h = hessian_matrix(&w_cp2(n).unwrap(), &weyl_basis(n).unwrap()).unwrap();
            let r = eigen_report(&h, 1e-8).unwrap();
            let got: Vec<(f64, usize)> =
                r.clusters.iter().map(|c| (c.value / LAMBDA_CRIT, c.multiplicity)).collect();
            let want = hessian_prediction(n);
            assert_eq!(got.len(), want.len());
            for (g, w) in got.iter().zip(&want) {
                assert!((g.0 - w.0).abs() < 1e-10 && g.1 == w.1, "n = {n}: {got:?}");
            }
        }
        assert_eq!(hessian_prediction(11).iter().map(|p| p.1).sum::<usize>(), 1144);
    }

    #[test]
    fn trace_on_embedded_weyl4() {
        let n = 7;
        let coords = embedded_weyl4(n).unwrap();
        assert_eq!(coords.ncols(), 10);
        assert!(restricted_trace(&w_cp2(n).unwrap(), &coords).abs() < 1e-10);
    }
}
