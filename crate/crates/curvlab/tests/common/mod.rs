//! Test-side oracles built from n×n skew matrices, independent of the library's
//! structure-constant tables.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

/// 0-based (i, j), i < j, in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub fn skew_of(n: usize, coords: &DVector<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for (r, (i, j)) in pairs(n).into_iter().enumerate() {
        m[(i, j)] += coords[r];
        m[(j, i)] -= coords[r];
    }
    m
}

pub fn coords_of(m: &DMatrix<f64>) -> DVector<f64> {
    let n = m.nrows();
    DVector::from_iterator(n * (n - 1) / 2, pairs(n).into_iter().map(|(i, j)| m[(i, j)]))
}

/// ad_X on Λ² for the skew matrix X, via [X, Y] = XY − YX.
pub fn ad(x: &DMatrix<f64>) -> DMatrix<f64> {
    let n = x.nrows();
    let size = n * (n - 1) / 2;
    let mut out = DMatrix::zeros(size, size);
    for (c, _) in pairs(n).iter().enumerate() {
        let mut e = DVector::zeros(size);
        e[c] = 1.0;
        let y = skew_of(n, &e);
        out.set_column(c, &coords_of(&(x * &y - &y * x)));
    }
    out
}

pub fn basis_ads(n: usize) -> Vec<DMatrix<f64>> {
    let size = n * (n - 1) / 2;
    (0..size)
        .map(|a| {
            let mut e = DVector::zeros(size);
            e[a] = 1.0;
            ad(&skew_of(n, &e))
        })
        .collect()
}

/// (R#S)(v, w) = −½ tr(ad_v R ad_w S), symmetrized in R and S.
pub fn sharp(n: usize, r: &DMatrix<f64>, s: &DMatrix<f64>) -> DMatrix<f64> {
    let ads = basis_ads(n);
    let size = ads.len();
    let rs: Vec<DMatrix<f64>> = ads.iter().map(|a| a * r).collect();
    let ss: Vec<DMatrix<f64>> = ads.iter().map(|a| a * s).collect();
    DMatrix::from_fn(size, size, |v, w| {
        let one = (&rs[v] * &ss[w]).trace();
        let two = (&ss[v] * &rs[w]).trace();
        -0.25 * (one + two)
    })
}

/// Q(R) = R² + R#R.
pub fn q(n: usize, r: &DMatrix<f64>) -> DMatrix<f64> {
    r * r + sharp(n, r, r)
}

pub fn potential_normalized(n: usize, r: &DMatrix<f64>) -> f64 {
    q(n, r).dot(r) / r.norm().powi(3)
}

/// Ric_ik = Σ_j ⟨R(e_i∧e_j), e_k∧e_j⟩.
pub fn ricci(n: usize, r: &DMatrix<f64>) -> DMatrix<f64> {
    let index = |a: usize, b: usize| -> Option<(usize, f64)> {
        if a == b {
            return None;
        }
        let (i, j, s) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
        let rank = pairs(n).iter().position(|&p| p == (i, j)).unwrap();
        Some((rank, s))
    };
    DMatrix::from_fn(n, n, |i, k| {
        (0..n)
            .filter_map(|j| match (index(i, j), index(k, j)) {
                (Some((a, s)), Some((b, t))) => Some(s * t * r[(a, b)]),
                _ => None,
            })
            .sum()
    })
}

/// (h∧id)(e_i∧e_j) = ½(he_i∧e_j + e_i∧he_j).
pub fn wedge_identity(h: &DMatrix<f64>) -> DMatrix<f64> {
    let n = h.nrows();
    let p = pairs(n);
    let size = p.len();
    let mut out = DMatrix::zeros(size, size);
    for (c, &(i, j)) in p.iter().enumerate() {
        // he_i∧e_j + e_i∧he_j as a skew matrix: Σ_k h_ki (E_kj − E_jk) + h_kj (E_ik − E_ki)
        let mut m = DMatrix::zeros(n, n);
        for k in 0..n {
            m[(k, j)] += h[(k, i)];
            m[(j, k)] -= h[(k, i)];
            m[(i, k)] += h[(k, j)];
            m[(k, i)] -= h[(k, j)];
        }
        out.set_column(c, &(coords_of(&m) * 0.5));
    }
    out
}

/// D²_vR = [R, ad_{Rv}].
pub fn d2(n: usize, r: &DMatrix<f64>, v: &DVector<f64>) -> DMatrix<f64> {
    let a = ad(&skew_of(n, &(r * v)));
    r * &a - &a * r
}

pub fn adjugate3(x: &DMatrix<f64>) -> DMatrix<f64> {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| x[(r0, c0)] * x[(r1, c1)] - x[(r0, c1)] * x[(r1, c0)];
    DMatrix::from_row_slice(
        3,
        3,
        &[
            c(1, 2, 1, 2),
            -c(0, 2, 1, 2),
            c(0, 1, 1, 2),
            -c(1, 2, 0, 2),
            c(0, 2, 0, 2),
            -c(0, 1, 0, 2),
            c(1, 2, 0, 1),
            -c(0, 2, 0, 1),
            c(0, 1, 0, 1),
        ],
    )
}

/// Orthonormal frame of Λ²₊ ⊕ Λ²₋ in dimension 4, as columns in lex coordinates.
pub fn self_dual_frame() -> DMatrix<f64> {
    // lex order: 12 13 14 23 24 34
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_column_slice(
        6,
        6,
        &[
            s, 0.0, 0.0, 0.0, 0.0, s, //
            0.0, s, 0.0, 0.0, -s, 0.0, //
            0.0, 0.0, s, s, 0.0, 0.0, //
            s, 0.0, 0.0, 0.0, 0.0, -s, //
            0.0, s, 0.0, 0.0, s, 0.0, //
            0.0, 0.0, s, -s, 0.0, 0.0,
        ],
    )
}

/// θ_{k,l} = √2·√((k−1)/k·(l−1)/l·(n−1)/(n−2)).
pub fn theta(k: usize, l: usize) -> f64 {
    let (k, l) = (k as f64, l as f64);
    let n = k + l;
    2f64.sqrt() * ((k - 1.0) / k * (l - 1.0) / l * (n - 1.0) / (n - 2.0)).sqrt()
}

pub fn weyl_dim(n: usize) -> usize {
    n * (n + 1) * (n + 2) * (n - 3) / 12
}
