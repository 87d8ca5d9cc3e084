//! Curvature operators of the model spaces.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::curvature::{ricci, CurvatureOperator};
use crate::error::{same_dim, Error, Result};
use crate::lie::{pair_count, pairs0, rank0, wedge_square};

/// √(3/2), the potential of W_CP2 and the critical Einstein constant.
pub const LAMBDA_CRIT: f64 = 1.224_744_871_391_589;

/// A named model operator, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelSpec {
    Sphere { n: usize },
    SphereProduct { k: usize, l: usize },
    Cpn { n_half: usize },
    WCp2Embedded { n: usize },
    RLambda { lambda: f64, n: usize, phi: f64 },
    CritSym { n: usize },
    CritCp2 { n: usize },
}

impl ModelSpec {
    pub fn build(&self) -> Result<CurvatureOperator> {
        match *self {
            ModelSpec::Sphere { n } => Ok(sphere(n)),
            ModelSpec::SphereProduct { k, l } => sphere_product(k, l),
            ModelSpec::Cpn { n_half } => cpn(n_half),
            ModelSpec::WCp2Embedded { n } => w_cp2(n),
            ModelSpec::RLambda { lambda, n, phi } => r_lambda(lambda, n, phi, None),
            ModelSpec::CritSym { n } => crit_sym(n),
            ModelSpec::CritCp2 { n } => crit_cp2(n),
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            ModelSpec::Sphere { n }
            | ModelSpec::WCp2Embedded { n }
            | ModelSpec::RLambda { n, .. }
            | ModelSpec::CritSym { n }
            | ModelSpec::CritCp2 { n } => n,
            ModelSpec::SphereProduct { k, l } => k + l,
            ModelSpec::Cpn { n_half } => 2 * n_half,
        }
    }
}

/// Round sphere with sectional curvature 1.
pub fn sphere(n: usize) -> CurvatureOperator {
    CurvatureOperator::identity(n)
}

/// S^k × S^l with the Einstein product metric of constant k − 1.
pub fn sphere_product(k: usize, l: usize) -> Result<CurvatureOperator> {
    if k < 2 || l < 2 {
        return Err(Error::Argument(format!("sphere product needs k, l >= 2, got ({k}, {l})")));
    }
    let n = k + l;
    let second = (k - 1) as f64 / (l - 1) as f64;
    let diag = DVector::from_iterator(
        pair_count(n),
        pairs0(n).into_iter().map(|(i, j)| match (i < k, j < k) {
            (true, true) => 1.0,
            (false, false) => second,
            _ => 0.0,
        }),
    );
    Ok(CurvatureOperator::new_unchecked(n, DMatrix::from_diagonal(&diag)))
}

/// Complex structure with J e_k = e_{m+k} on ℝ^{2m}.
pub fn complex_structure(m: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * m, 2 * m);
    for k in 0..m {
        j[(m + k, k)] = 1.0;
        j[(k, m + k)] = -1.0;
    }
    j
}

/// Fubini–Study curvature operator of ℂP^m, holomorphic curvature 4.
///
/// In operator form R = Id + Λ²J + 2 ω⊗ω with ω = Σ e_k∧Je_k, which reproduces
/// the four cases of the entrywise description.
pub fn cpn(m: usize) -> Result<CurvatureOperator> {
    if m == 0 {
        return Err(Error::Argument("complex dimension must be at least 1".into()));
    }
    let n = 2 * m;
    let size = pair_count(n);
    let mut omega = DVector::zeros(size);
    for k in 0..m {
        omega[rank0(k, m + k, n)] = 1.0;
    }
    let mat = DMatrix::identity(size, size)
        + wedge_square(&complex_structure(m))
        + &omega * omega.transpose() * 2.0;
    Ok(CurvatureOperator::new_unchecked(n, mat))
}

/// Unit Weyl operator of ℂP² in the rotated convention, padded into dimension n.
pub fn w_cp2(n: usize) -> Result<CurvatureOperator> {
    if n < 4 {
        return Err(Error::Argument(format!("W_CP2 needs n >= 4, got {n}")));
    }
    #[rustfmt::skip]
    let entries = [
         2.0,  0.0,  0.0,  0.0,  0.0, -2.0,
         0.0, -1.0,  0.0,  0.0, -1.0,  0.0,
         0.0,  0.0, -1.0,  1.0,  0.0,  0.0,
         0.0,  0.0,  1.0, -1.0,  0.0,  0.0,
         0.0, -1.0,  0.0,  0.0, -1.0,  0.0,
        -2.0,  0.0,  0.0,  0.0,  0.0,  2.0,
    ];
    let m = DMatrix::from_row_slice(6, 6, &entries) / (2.0 * 6f64.sqrt());
    CurvatureOperator::new_unchecked(4, m).embed(n)
}

/// λ̄·Id + cos φ·W_CP2 + sin φ·W₁ with λ̄ = λ/(n−1).
pub fn r_lambda(
    lambda: f64,
    n: usize,
    phi: f64,
    extra: Option<&CurvatureOperator>,
) -> Result<CurvatureOperator> {
    if !(lambda > 0.0) {
        return Err(Error::Argument(format!("lambda must be positive, got {lambda}")));
    }
    if !(0.0..=FRAC_PI_2 + 1e-15).contains(&phi) {
        return Err(Error::Argument(format!("phi must lie in [0, pi/2], got {phi}")));
    }
    let w = w_cp2(n)?;
    let mut mat = DMatrix::identity(pair_count(n), pair_count(n)) * (lambda / (n - 1) as f64)
        + &w.mat * phi.cos();
    if let Some(w1) = extra {
        same_dim(w1.dim, n)?;
        if (w1.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::Argument("extra Weyl term must have unit norm".into()));
        }
        if w1.dot(&w).abs() > 1e-10 {
            return Err(Error::Argument("extra Weyl term must be orthogonal to W_CP2".into()));
        }
        if ricci(w1).amax() > 1e-10 {
            return Err(Error::Argument("extra term is not a Weyl operator".into()));
        }
        mat += &w1.mat * phi.sin();
    }
    Ok(CurvatureOperator::new_unchecked(n, mat))
}

/// √(3/2)/(n−1)·Id + W_CP2.
pub fn crit_cp2(n: usize) -> Result<CurvatureOperator> {
    r_lambda(LAMBDA_CRIT, n, 0.0, None)
}

/// Factor sizes (⌈n/2⌉, ⌊n/2⌋) of the symmetric critical product.
pub fn crit_split(n: usize) -> (usize, usize) {
    (n.div_ceil(2), n / 2)
}

/// ‖W̃‖² for the Weyl part of sphere_product(k, l).
pub fn sphere_product_weyl_norm_sq(k: usize, l: usize) -> f64 {
    let (kf, lf) = (k as f64, l as f64);
    let n = kf + lf;
    kf * lf / 2.0 * (kf - 1.0) / (lf - 1.0) * (n - 2.0) / (n - 1.0)
}

/// S^⌈n/2⌉ × S^⌊n/2⌋ rescaled so its Weyl part has unit norm.
pub fn crit_sym(n: usize) -> Result<CurvatureOperator> {
    if n < 4 {
        return Err(Error::Argument(format!("critical product needs n >= 4, got {n}")));
    }
    let (k, l) = crit_split(n);
    let r = sphere_product(k, l)?;
    Ok(r.scale(1.0 / sphere_product_weyl_norm_sq(k, l).sqrt()))
}

/// Einstein constant of the rescaled critical product.
pub fn crit_sym_einstein_constant(n: usize) -> f64 {
    let nf = n as f64;
    if n.is_multiple_of(2) {
        (2.0 * (nf - 1.0) * (nf - 2.0)).sqrt() / nf
    } else {
        (2.0 * (nf - 1.0) * (nf - 3.0) / ((nf + 1.0) * (nf - 2.0))).sqrt()
    }
}

/// θ_{k,l} = √2·√((k−1)/k·(l−1)/l·(n−1)/(n−2)), the potential of the unit Weyl part.
pub fn theta_kl(k: usize, l: usize) -> f64 {
    let (kf, lf) = (k as f64, l as f64);
    let n = kf + lf;
    (2.0 * (kf - 1.0) / kf * (lf - 1.0) / lf * (n - 1.0) / (n - 2.0)).sqrt()
}

/// θ for the symmetric critical split.
pub fn theta_n(n: usize) -> f64 {
    let (k, l) = crit_split(n);
    theta_kl(k, l)
}

/// Closed interval of intermediate Einstein constants, possibly empty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn is_empty(&self) -> bool {
        self.lower > self.upper
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// [λ_sym, √(3/2)]; empty from n = 12 on.
pub fn intermediate_range(n: usize) -> Result<Interval> {
    if n < 5 {
        return Err(Error::Argument(format!("intermediate range needs n >= 5, got {n}")));
    }
    Ok(Interval { lower: crit_sym_einstein_constant(n), upper: LAMBDA_CRIT })
}

/// α_n, the angle of the critical ℂP² operator to the identity: cos² = 3n/(7n−4).
pub fn alpha_n(n: usize) -> f64 {
    let nf = n as f64;
    (3.0 * nf / (7.0 * nf - 4.0)).sqrt().acos()
}

/// β_n, the angle of the critical product to the identity.
pub fn beta_n(n: usize) -> f64 {
    let nf = n as f64;
    let cos2 = if n.is_multiple_of(2) {
        (nf - 2.0) / (2.0 * (nf - 1.0))
    } else {
        nf * (nf - 3.0) / (2.0 * (nf * nf - 2.0 * nf - 1.0))
    };
    cos2.sqrt().acos()
}

/// cos² of the angle of λ̄Id + W to the identity for a unit Weyl W.
pub fn cos2_angle_r_lambda(lambda: f64, n: usize) -> f64 {
    let nf = n as f64;
    lambda * lambda * nf / (lambda * lambda * nf + 2.0 * (nf - 1.0))
}
