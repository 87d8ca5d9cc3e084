//! The coordinate model of so(n) as bivectors.
//!
//! Basis elements are e_i∧e_j with i < j, ordered lexicographically. The
//! basis is orthonormal, and a bivector corresponds to the skew matrix
//! E_ij − E_ji, so the bracket is the matrix commutator.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};

use crate::error::{same_dim, Error, Result};

/// Number of basis bivectors in dimension n.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

// 0-based position of e_i∧e_j, 0-based i < j.
#[inline]
pub(crate) fn rank0(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// 0-based (i, j) pairs in basis order.
pub(crate) fn pairs0(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// Coefficient and position of e_a∧e_b for arbitrary 0-based a, b.
#[inline]
pub(crate) fn signed_rank0(a: usize, b: usize, n: usize) -> Option<(usize, f64)> {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => Some((rank0(a, b, n), 1.0)),
        std::cmp::Ordering::Greater => Some((rank0(b, a, n), -1.0)),
        std::cmp::Ordering::Equal => None,
    }
}

/// A basis label e_i∧e_j with 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WedgeIndex {
    pub i: usize,
    pub j: usize,
}

impl WedgeIndex {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= j || j > n {
            return Err(Error::Argument(format!(
                "wedge index ({i},{j}) needs 1 <= i < j <= {n}"
            )));
        }
        Ok(Self { i, j })
    }

    pub fn rank(&self, n: usize) -> usize {
        rank0(self.i - 1, self.j - 1, n)
    }
}

/// Linear position of e_i∧e_j (1-based indices) in the lexicographic basis.
pub fn wedge_rank(i: usize, j: usize, n: usize) -> Result<usize> {
    Ok(WedgeIndex::new(i, j, n)?.rank(n))
}

/// Inverse of [`wedge_rank`].
pub fn wedge_index(rank: usize, n: usize) -> Result<WedgeIndex> {
    if rank >= pair_count(n) {
        return Err(Error::Argument(format!(
            "rank {rank} out of range for n = {n}"
        )));
    }
    let mut r = rank;
    for i in 0..n {
        let row = n - i - 1;
        if r < row {
            return Ok(WedgeIndex { i: i + 1, j: i + r + 2 });
        }
        r -= row;
    }
    unreachable!("rank checked against pair_count")
}

/// An element of Λ²(ℝⁿ) in the wedge basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Bivector {
    pub dim: usize,
    pub coords: DVector<f64>,
}

impl Bivector {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, coords: DVector::zeros(pair_count(dim)) }
    }

    pub fn from_coords(dim: usize, coords: DVector<f64>) -> Result<Self> {
        same_dim(coords.len(), pair_count(dim))?;
        Ok(Self { dim, coords })
    }

    /// e_i∧e_j with 1-based indices.
    pub fn basis(dim: usize, i: usize, j: usize) -> Result<Self> {
        let r = wedge_rank(i, j, dim)?;
        let mut b = Self::zeros(dim);
        b.coords[r] = 1.0;
        Ok(b)
    }

    pub fn unit(dim: usize, rank: usize) -> Self {
        let mut b = Self::zeros(dim);
        b.coords[rank] = 1.0;
        b
    }

    /// v∧w for two vectors of ℝⁿ.
    pub fn wedge(v: &DVector<f64>, w: &DVector<f64>) -> Result<Self> {
        same_dim(v.len(), w.len())?;
        let n = v.len();
        let coords = DVector::from_iterator(
            pair_count(n),
            pairs0(n).into_iter().map(|(i, j)| v[i] * w[j] - v[j] * w[i]),
        );
        Ok(Self { dim: n, coords })
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.coords.dot(&other.coords)
    }

    pub fn norm(&self) -> f64 {
        self.coords.norm()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { dim: self.dim, coords: &self.coords * c }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        Ok(Self { dim: self.dim, coords: &self.coords + &other.coords })
    }

    /// Skew matrix Σ c_ij (E_ij − E_ji).
    pub fn to_skew(&self) -> DMatrix<f64> {
        let n = self.dim;
        let mut m = DMatrix::zeros(n, n);
        for (r, (i, j)) in pairs0(n).into_iter().enumerate() {
            m[(i, j)] = self.coords[r];
            m[(j, i)] = -self.coords[r];
        }
        m
    }

    /// Inverse of [`Bivector::to_skew`]; reads the strict upper triangle.
    pub fn from_skew(m: &DMatrix<f64>) -> Self {
        let n = m.nrows();
        let coords = DVector::from_iterator(
            pair_count(n),
            pairs0(n).into_iter().map(|(i, j)| 0.5 * (m[(i, j)] - m[(j, i)])),
        );
        Self { dim: n, coords }
    }

    /// Zero-pad into a larger dimension, keeping e_i∧e_j labels.
    pub fn embed(&self, n: usize) -> Result<Self> {
        if n < self.dim {
            return Err(Error::Argument(format!("cannot embed dim {} into {n}", self.dim)));
        }
        let mut out = Self::zeros(n);
        for (r, (i, j)) in pairs0(self.dim).into_iter().enumerate() {
            out.coords[rank0(i, j, n)] = self.coords[r];
        }
        Ok(out)
    }
}

/// Sparse bracket table of so(n): [b_α, b_β] = c·b_γ with c = ±1.
#[derive(Debug)]
pub struct StructureConstants {
    pub dim: usize,
    size: usize,
    by_pair: Vec<Option<(usize, f64)>>,
    by_target: Vec<Vec<(usize, usize, f64)>>,
}

impl StructureConstants {
    fn build(n: usize) -> Self {
        let size = pair_count(n);
        let pairs = pairs0(n);
        let mut by_pair = vec![None; size * size];
        let mut by_target = vec![Vec::new(); size];
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(p, q)) in pairs.iter().enumerate() {
                if let Some((g, c)) = basis_bracket(i, j, p, q, n) {
                    by_pair[a * size + b] = Some((g, c));
                    by_target[g].push((a, b, c));
                }
            }
        }
        Self { dim: n, size, by_pair, by_target }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// [b_α, b_β] as (γ, coefficient), or None when the bracket vanishes.
    pub fn get(&self, alpha: usize, beta: usize) -> Option<(usize, f64)> {
        self.by_pair[alpha * self.size + beta]
    }

    /// All ordered (α, β, c) with [b_α, b_β] = c·b_γ.
    pub fn into_target(&self, gamma: usize) -> &[(usize, usize, f64)] {
        &self.by_target[gamma]
    }

    /// Number of nonzero entries c^γ_{αβ}.
    pub fn nonzero_count(&self) -> usize {
        self.by_pair.iter().filter(|e| e.is_some()).count()
    }

    pub fn bracket(&self, u: &Bivector, v: &Bivector) -> Result<Bivector> {
        same_dim(u.dim, self.dim)?;
        same_dim(v.dim, self.dim)?;
        let mut out = Bivector::zeros(self.dim);
        for (g, list) in self.by_target.iter().enumerate() {
            out.coords[g] = list.iter().map(|&(a, b, c)| c * u.coords[a] * v.coords[b]).sum();
        }
        Ok(out)
    }

    /// Matrix of w ↦ [v, w].
    pub fn ad(&self, v: &Bivector) -> Result<DMatrix<f64>> {
        same_dim(v.dim, self.dim)?;
        let mut m = DMatrix::zeros(self.size, self.size);
        for (g, list) in self.by_target.iter().enumerate() {
            for &(a, b, c) in list {
                m[(g, b)] += c * v.coords[a];
            }
        }
        Ok(m)
    }
}

// ad_{e_i∧e_j}(e_p∧e_q) = δ_jp e_i∧e_q + δ_iq e_j∧e_p + δ_jq e_p∧e_i + δ_ip e_q∧e_j.
// Two distinct basis pairs sharing exactly one index give a single term.
fn basis_bracket(i: usize, j: usize, p: usize, q: usize, n: usize) -> Option<(usize, f64)> {
    let mut acc: Option<(usize, f64)> = None;
    let mut push = |a: usize, b: usize| {
        if let Some((g, c)) = signed_rank0(a, b, n) {
            acc = Some(match acc {
                Some((g0, c0)) if g0 == g => (g, c0 + c),
                Some(_) => unreachable!("basis bracket has one term"),
                None => (g, c),
            });
        }
    };
    if j == p {
        push(i, q);
    }
    if i == q {
        push(j, p);
    }
    if j == q {
        push(p, i);
    }
    if i == p {
        push(q, j);
    }
    acc.filter(|&(_, c)| c != 0.0)
}

/// Shared, lazily built structure constants for dimension n ≥ 2.
pub fn structure_constants(n: usize) -> Arc<StructureConstants> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<StructureConstants>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(sc) = cache.lock().expect("structure constant cache").get(&n) {
        return Arc::clone(sc);
    }
    let built = Arc::new(StructureConstants::build(n));
    let mut guard = cache.lock().expect("structure constant cache");
    Arc::clone(guard.entry(n).or_insert(built))
}

pub fn bracket(u: &Bivector, v: &Bivector) -> Result<Bivector> {
    same_dim(u.dim, v.dim)?;
    structure_constants(u.dim).bracket(u, v)
}

/// The two sp(1) ideals of so(4).
#[derive(Debug, Clone)]
pub struct Sp1Basis {
    pub i_plus: Bivector,
    pub j_plus: Bivector,
    pub k_plus: Bivector,
    pub i_minus: Bivector,
    pub j_minus: Bivector,
    pub k_minus: Bivector,
}

impl Sp1Basis {
    pub fn new() -> Self {
        // coordinates in (e12, e13, e14, e23, e24, e34)
        let b = |c: [f64; 6]| Bivector { dim: 4, coords: DVector::from_row_slice(&c) };
        Self {
            i_plus: b([1.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
            j_plus: b([0.0, 1.0, 0.0, 0.0, -1.0, 0.0]),
            k_plus: b([0.0, 0.0, -1.0, -1.0, 0.0, 0.0]),
            i_minus: b([1.0, 0.0, 0.0, 0.0, 0.0, -1.0]),
            j_minus: b([0.0, 1.0, 0.0, 0.0, 1.0, 0.0]),
            k_minus: b([0.0, 0.0, 1.0, -1.0, 0.0, 0.0]),
        }
    }

    /// Generators in the order (i₊, j₊, k₊, i₋, j₋, k₋).
    pub fn generators(&self) -> [&Bivector; 6] {
        [&self.i_plus, &self.j_plus, &self.k_plus, &self.i_minus, &self.j_minus, &self.k_minus]
    }

    /// Orthogonal change of basis whose columns are the generators over √2.
    pub fn frame(&self) -> DMatrix<f64> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut m = DMatrix::zeros(6, 6);
        for (c, g) in self.generators().iter().enumerate() {
            m.set_column(c, &(&g.coords * s));
        }
        m
    }
}

impl Default for Sp1Basis {
    fn default() -> Self {
        Self::new()
    }
}

pub(crate) fn check_orthogonal(g: &DMatrix<f64>, tol: f64) -> Result<()> {
    if !g.is_square() {
        return Err(Error::Argument("rotation must be square".into()));
    }
    let n = g.nrows();
    let defect = (g.transpose() * g - DMatrix::<f64>::identity(n, n)).amax();
    if defect > tol {
        return Err(Error::Argument(format!("matrix is not orthogonal (defect {defect:.3e})")));
    }
    Ok(())
}

/// Matrix of v∧w ↦ gv∧gw in the wedge basis.
pub fn adjoint_rotation(g: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_orthogonal(g, 1e-10)?;
    Ok(wedge_square(g))
}

// Λ²g for any square g; entry (kl, ij) = g_ki g_lj − g_li g_kj.
pub(crate) fn wedge_square(g: &DMatrix<f64>) -> DMatrix<f64> {
    let n = g.nrows();
    let pairs = pairs0(n);
    let size = pairs.len();
    let mut a = DMatrix::zeros(size, size);
    for (c, &(i, j)) in pairs.iter().enumerate() {
        for (r, &(k, l)) in pairs.iter().enumerate() {
            a[(r, c)] = g[(k, i)] * g[(l, j)] - g[(l, i)] * g[(k, j)];
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(wedge_rank(1, 2, 4).unwrap(), 0);
        assert_eq!(wedge_rank(3, 4, 4).unwrap(), 5);
        assert_eq!(wedge_rank(2, 5, 11).unwrap(), 12);
        assert!(wedge_rank(2, 2, 4).is_err());
        assert!(wedge_rank(0, 2, 4).is_err());
        assert!(wedge_rank(3, 5, 4).is_err());
    }

    #[test]
    fn rank_matches_enumeration_and_inverts() {
        for n in 2..=12 {
            let mut expected = 0;
            for i in 1..=n {
                for j in i + 1..=n {
                    let r = wedge_rank(i, j, n).unwrap();
                    assert_eq!(r, expected);
                    assert_eq!(wedge_index(r, n).unwrap(), WedgeIndex { i, j });
                    expected += 1;
                }
            }
            assert_eq!(expected, pair_count(n));
            assert!(wedge_index(expected, n).is_err());
        }
    }

    #[test]
    fn bracket_examples() {
        let e12 = Bivector::basis(4, 1, 2).unwrap();
        let e23 = Bivector::basis(4, 2, 3).unwrap();
        let e34 = Bivector::basis(4, 3, 4).unwrap();
        let e13 = Bivector::basis(4, 1, 3).unwrap();
        assert_eq!(bracket(&e12, &e23).unwrap(), e13);
        assert_eq!(bracket(&e12, &e34).unwrap().norm(), 0.0);
        assert!(bracket(&e12, &Bivector::zeros(5)).is_err());
    }

    #[test]
    fn bracket_is_matrix_commutator() {
        for n in 3..=7 {
            let pairs = pairs0(n);
            for a in 0..pairs.len() {
                for b in 0..pairs.len() {
                    let u = Bivector::unit(n, a);
                    let v = Bivector::unit(n, b);
                    let (su, sv) = (u.to_skew(), v.to_skew());
                    let expected = Bivector::from_skew(&(&su * &sv - &sv * &su));
                    let got = bracket(&u, &v).unwrap();
                    assert!((got.coords - expected.coords).amax() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn structure_constant_counts() {
        // so(3): [e12,e13], [e12,e23], [e13,e23] up to order
        let sc = structure_constants(3);
        let mut triples = 0;
        for a in 0..3 {
            for b in a + 1..3 {
                let (_, c) = sc.get(a, b).unwrap();
                assert!(c == 1.0 || c == -1.0);
                triples += 1;
            }
        }
        assert_eq!(triples, 3);

        for n in [4, 7, 11] {
            let sc = structure_constants(n);
            let pairs = pairs0(n);
            let mut sharing = 0;
            for (a, &(i, j)) in pairs.iter().enumerate() {
                for (b, &(p, q)) in pairs.iter().enumerate() {
                    let shared = [i == p, i == q, j == p, j == q].iter().filter(|&&x| x).count();
                    if shared == 1 {
                        sharing += 1;
                    }
                    match (sc.get(a, b), sc.get(b, a)) {
                        (Some((g1, c1)), Some((g2, c2))) => {
                            assert_eq!(g1, g2);
                            assert_eq!(c1, -c2);
                        }
                        (None, None) => {}
                        _ => panic!("antisymmetry broken"),
                    }
                }
            }
            assert_eq!(sc.nonzero_count(), sharing);
            for g in 0..pairs.len() {
                assert_eq!(sc.into_target(g).len(), 2 * (n - 2));
            }
        }
    }

    #[test]
    fn sp1_relations() {
        let s = Sp1Basis::new();
        let close = |a: &Bivector, b: &Bivector| (&a.coords - &b.coords).amax() < 1e-14;
        for (x, y, z) in [
            (&s.i_plus, &s.j_plus, &s.k_plus),
            (&s.j_plus, &s.k_plus, &s.i_plus),
            (&s.k_plus, &s.i_plus, &s.j_plus),
            (&s.i_minus, &s.j_minus, &s.k_minus),
            (&s.j_minus, &s.k_minus, &s.i_minus),
            (&s.k_minus, &s.i_minus, &s.j_minus),
        ] {
            assert!(close(&bracket(x, y).unwrap(), &z.scale(2.0)));
        }
        for p in &s.generators()[..3] {
            for m in &s.generators()[3..] {
                assert!(bracket(p, m).unwrap().norm() < 1e-14);
            }
        }
        let f = s.frame();
        assert!((f.transpose() * &f - DMatrix::<f64>::identity(6, 6)).amax() < 1e-14);
    }

    #[test]
    fn reflection_swaps_ideals() {
        let g = DMatrix::from_diagonal(&DVector::from_row_slice(&[1.0, 1.0, 1.0, -1.0]));
        let a = adjoint_rotation(&g).unwrap();
        let s = Sp1Basis::new();
        let pl = [&s.i_plus, &s.j_plus, &s.k_plus];
        let mi = [&s.i_minus, &s.j_minus, &s.k_minus];
        for (p, m) in pl.iter().zip(mi.iter()) {
            let image = &a * &p.coords;
            // g maps each plus generator to ± the matching minus generator
            let c = image.dot(&m.coords) / 2.0;
            assert!((c.abs() - 1.0).abs() < 1e-14);
            assert!((&image - &m.coords * c).amax() < 1e-14);
        }
    }

    #[test]
    fn adjoint_rotation_rejects_non_orthogonal() {
        let g = DMatrix::from_element(3, 3, 1.0);
        assert!(adjoint_rotation(&g).is_err());
        let id = DMatrix::<f64>::identity(5, 5);
        assert_eq!(adjoint_rotation(&id).unwrap(), DMatrix::<f64>::identity(10, 10));
    }

    #[test]
    fn embed_keeps_labels() {
        let e34 = Bivector::basis(4, 3, 4).unwrap().embed(7).unwrap();
        assert_eq!(e34, Bivector::basis(7, 3, 4).unwrap());
    }
}
