//! The algebraic symmetry operator D²_vR = [R, ad_{Rv}] and the lower bound G.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::curvature::{CurvatureOperator, SymmetricOperator};
use crate::error::{same_dim, Error, Result};
use crate::lie::{structure_constants, Bivector};
use crate::models::r_lambda;

#[derive(Debug, Clone)]
pub struct SymmetryEvaluation {
    pub direction: Bivector,
    pub operator: SymmetricOperator,
    pub norm: f64,
}

fn commutator_with_ad(r: &SymmetricOperator, x: &Bivector) -> DMatrix<f64> {
    let ad = structure_constants(r.dim).ad(x).expect("dimension checked by caller");
    &r.mat * &ad - &ad * &r.mat
}

fn evaluation(direction: &Bivector, mat: DMatrix<f64>) -> SymmetryEvaluation {
    let operator = SymmetricOperator::new_unchecked(direction.dim, mat);
    let norm = operator.norm();
    SymmetryEvaluation { direction: direction.clone(), operator, norm }
}

/// D²_vR = R∘ad_{Rv} − ad_{Rv}∘R.
pub fn d2(r: &CurvatureOperator, v: &Bivector) -> Result<SymmetryEvaluation> {
    same_dim(r.dim, v.dim)?;
    let rv = r.apply(v)?;
    Ok(evaluation(v, commutator_with_ad(r, &rv)))
}

/// D²_v(R,S) = ½([R, ad_{Sv}] + [S, ad_{Rv}]).
pub fn d2_mixed(r: &CurvatureOperator, s: &CurvatureOperator, v: &Bivector) -> Result<SymmetryEvaluation> {
    same_dim(r.dim, s.dim)?;
    same_dim(r.dim, v.dim)?;
    let sv = s.apply(v)?;
    let rv = r.apply(v)?;
    let mat = (commutator_with_ad(r, &sv) + commutator_with_ad(s, &rv)) * 0.5;
    Ok(evaluation(v, mat))
}

/// ‖D²_v R^φ_{λ,n}‖ evaluated numerically.
pub fn d2_family_norm(lambda: f64, n: usize, phi: f64, v: &Bivector) -> Result<f64> {
    let r = r_lambda(lambda, n, phi, None)?;
    Ok(d2(&r, v)?.norm)
}

/// Closed-form value of ‖D²_{e_i∧e_j} R^φ_{λ,n}‖ for 1-based i < j.
pub fn d2_family_table(lambda: f64, n: usize, phi: f64, i: usize, j: usize) -> Result<f64> {
    crate::lie::WedgeIndex::new(i, j, n)?;
    let lbar = lambda / (n - 1) as f64;
    let c = phi.cos();
    Ok(match (i, j) {
        (1, 2) | (3, 4) => 0.0,
        (_, j) if j <= 4 => 2f64.sqrt() * c * (c / 2.0 - 3.0 * lbar / 6f64.sqrt()).abs(),
        (i, _) if i <= 4 => c * lbar,
        _ => 0.0,
    })
}

/// Reading of the ‖R^φ‖ term inside the second square root of G.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormTerm {
    /// λn/(2(n−1)) as printed.
    AsPrinted,
    /// λ²n/(2(n−1)), the value of ‖λ̄Id‖².
    Squared,
}

/// G(λ, ψ, φ) for dimension n, with the printed norm term.
pub fn g_lower_bound(lambda: f64, psi: f64, phi: f64, n: usize) -> f64 {
    g_lower_bound_with(lambda, psi, phi, n, NormTerm::AsPrinted)
}

pub fn g_lower_bound_with(lambda: f64, psi: f64, phi: f64, n: usize, term: NormTerm) -> f64 {
    let nf = n as f64;
    let lbar = lambda / (nf - 1.0);
    let (cpsi, spsi) = (psi.cos(), psi.sin());
    let (cphi, sphi) = (phi.cos(), phi.sin());
    let mixed = cphi / 2.0 - 3.0 * lbar / 6f64.sqrt();
    let first = (2.0 * cpsi.powi(4) * cphi * cphi * mixed * mixed
        + cpsi * cpsi * spsi * spsi * cphi * cphi * lbar * lbar)
        .sqrt();
    let lam = match term {
        NormTerm::AsPrinted => lambda,
        NormTerm::Squared => lambda * lambda,
    };
    let norm = (lam * nf / (2.0 * (nf - 1.0)) + cphi * cphi).sqrt();
    first - 0.5 * sphi * (norm + sphi)
}

/// Smallest φ in (0, π/2] at which G changes sign, located by scan and bisection.
pub fn g_sign_change(lambda: f64, psi: f64, n: usize, term: NormTerm) -> Option<f64> {
    let g = |phi: f64| g_lower_bound_with(lambda, psi, phi, n, term);
    if g(0.0) <= 0.0 {
        return None;
    }
    let steps = 2000;
    let h = PI / 2.0 / steps as f64;
    let mut lo = 0.0;
    for k in 1..=steps {
        let hi = k as f64 * h;
        if g(hi) <= 0.0 {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..100 {
                let m = 0.5 * (a + b);
                if g(m) > 0.0 {
                    a = m;
                } else {
                    b = m;
                }
            }
            return Some(0.5 * (a + b));
        }
        lo = hi;
    }
    None
}

/// ∫₀^ψ sin^m(θ) dθ by the reduction formula.
pub fn sin_power_integral(m: u32, psi: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&psi) {
        return Err(Error::Domain(format!("psi = {psi} outside [0, pi]")));
    }
    let (s, c) = (psi.sin(), psi.cos());
    let mut even = psi;
    let mut odd = 1.0 - c;
    if m == 0 {
        return Ok(even);
    }
    if m == 1 {
        return Ok(odd);
    }
    let mut last = 0.0;
    for k in 2..=m {
        let kf = k as f64;
        let prev = if k % 2 == 0 { even } else { odd };
        let next = (kf - 1.0) / kf * prev - c * s.powi(k as i32 - 1) / kf;
        if k % 2 == 0 {
            even = next;
        } else {
            odd = next;
        }
        last = next;
    }
    Ok(last)
}

/// Volume of the unit sphere S^m ⊂ ℝ^{m+1}.
pub fn sphere_volume(m: u32) -> f64 {
    let h = (m as f64 + 1.0) / 2.0;
    2.0 * PI.powf(h) / gamma(h)
}

/// Volume of the unit ball in ℝ^n.
pub fn ball_volume(n: u32) -> f64 {
    let h = n as f64 / 2.0;
    PI.powf(h) / gamma(h + 1.0)
}
