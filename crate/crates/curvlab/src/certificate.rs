//! The explicit α₀ certificate for n = 10, 11: averaged |∇Rm|² lower bound
//! against the potential-angle upper bound just past the critical ℂP² angle.

use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{alpha_n, crit_sym_einstein_constant, LAMBDA_CRIT};
use crate::shi::shi_constants;
use crate::symmetry::{ball_volume, g_lower_bound, g_lower_bound_with, sin_power_integral, sphere_volume, NormTerm};

/// Quoted values of the published chain (computed there for n = 11).
pub mod quoted {
    pub const G: f64 = 0.303088;
    pub const C: f64 = 1035846.0;
    pub const R: f64 = 5.86e-7;
    pub const LHS: f64 = 2.86e-15;
    pub const RHS: f64 = 2.6e-15;
    pub const EPSILON: f64 = 1.015e-15;
    pub const PHI0: f64 = 1e-6;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Quoted G and C fed through the displayed formulas.
    PaperConstants,
    /// G and C evaluated from their defining formulas.
    Recomputed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// lhs ≥ rhs at the quoted α₀.
    Holds,
    /// Quoted constants do not give lhs ≥ rhs at the quoted α₀.
    FailsAtPaperConstants,
    /// Quoted α₀ fails, but a smaller positive margin ε_max is certified.
    HoldsWithRecomputedConstants,
    Inconclusive,
}

/// The three terms of (G²/13 − GCr/14 + C²r²/60)·r².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LhsTerms {
    pub square: f64,
    pub cross: f64,
    pub tail: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub n: usize,
    pub mode: Mode,
    pub lambda0: f64,
    pub kappa0: f64,
    pub phi0: f64,
    pub g_recomputed: f64,
    pub g_quoted: f64,
    pub c_recomputed: f64,
    pub c_quoted: f64,
    /// G and C actually used in this mode.
    pub g_used: f64,
    pub c_used: f64,
    /// r = 2G/C with the constants in use.
    pub r: f64,
    pub r_quoted: f64,
    pub sphere_volume: f64,
    pub cap_integral: f64,
    pub ball_volume: f64,
    pub prefactor: f64,
    pub terms: LhsTerms,
    pub lhs_bound: f64,
    /// prefactor·4G⁴/(1365C²), the same bound after substituting r = 2G/C.
    pub lhs_closed_form: f64,
    pub identity_defect: f64,
    /// The bound with the quoted r instead of 2G/C.
    pub lhs_at_quoted_r: f64,
    pub lhs_quoted: f64,
    pub epsilon_quoted: f64,
    /// rhs at α₀ = αₙ + ε_quoted, including the factor 8.
    pub rhs_bound: f64,
    /// The same expression without the factor 8.
    pub rhs_bracket: f64,
    pub rhs_quoted: f64,
    /// Largest ε with rhs(αₙ + ε) ≤ lhs_bound.
    pub alpha0_margin: f64,
    pub verdict: Verdict,
    pub flags: Vec<String>,
}

/// κ₀ = √((7n−4)/(4(n−1))).
pub fn kappa0(n: usize) -> f64 {
    let nf = n as f64;
    ((7.0 * nf - 4.0) / (4.0 * (nf - 1.0))).sqrt()
}

/// 4·vol(S^{n−2})·Sn(n−2, π/4)/vol(B₁ⁿ).
pub fn prefactor(n: usize) -> Result<f64> {
    let m = n as u32 - 2;
    Ok(4.0 * sphere_volume(m) * sin_power_integral(m, FRAC_PI_4)? / ball_volume(n as u32))
}

/// 8(√(3/2) − √(2(n−1)/n)·cot(αₙ + ε)), written without cancellation.
pub fn rhs_bound(n: usize, epsilon: f64) -> f64 {
    8.0 * rhs_bracket(n, epsilon)
}

pub fn rhs_bracket(n: usize, epsilon: f64) -> f64 {
    let nf = n as f64;
    let a = alpha_n(n);
    (2.0 * (nf - 1.0) / nf).sqrt() * epsilon.sin() / (a.sin() * (a + epsilon).sin())
}

/// Largest ε ≥ 0 with rhs_bound(n, ε) ≤ value.
pub fn epsilon_for(n: usize, value: f64) -> f64 {
    if !(value > 0.0) {
        return 0.0;
    }
    let nf = n as f64;
    let a = alpha_n(n);
    let q = value * a.sin() / (8.0 * (2.0 * (nf - 1.0) / nf).sqrt());
    // sin ε = q sin(α + ε)  ⇒  tan ε = q sin α / (1 − q cos α)
    (q * a.sin()).atan2(1.0 - q * a.cos())
}

fn lhs_terms(g: f64, c: f64, r: f64) -> LhsTerms {
    LhsTerms { square: g * g / 13.0 * r * r, cross: -g * c * r / 14.0 * r * r, tail: c * c * r * r / 60.0 * r * r }
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

pub fn alpha0_certificate(n: usize, mode: Mode) -> Result<Certificate> {
    if n != 10 && n != 11 {
        return Err(Error::UnsupportedDimension { n, reason: "the certificate is stated for n = 10, 11" });
    }
    let lambda0 = crit_sym_einstein_constant(n);
    let kappa0 = kappa0(n);
    let phi0 = quoted::PHI0;
    let g_recomputed = g_lower_bound(lambda0, FRAC_PI_4, phi0, n);
    let c_recomputed = (2.0 * kappa0 - lambda0).powf(2.5) * shi_constants(n)?.c3;
    let (g_used, c_used) = match mode {
        Mode::PaperConstants => (quoted::G, quoted::C),
        Mode::Recomputed => (g_recomputed, c_recomputed),
    };
    let r = 2.0 * g_used / c_used;
    let m = n as u32 - 2;
    let sv = sphere_volume(m);
    let cap = sin_power_integral(m, FRAC_PI_4)?;
    let bv = ball_volume(n as u32);
    let pre = 4.0 * sv * cap / bv;
    let terms = lhs_terms(g_used, c_used, r);
    let lhs_bound = pre * (terms.square + terms.cross + terms.tail);
    let lhs_closed_form = pre * 4.0 * g_used.powi(4) / (1365.0 * c_used * c_used);
    let identity_defect = relative(lhs_bound, lhs_closed_form);
    let at_quoted = lhs_terms(g_used, c_used, quoted::R);
    let lhs_at_quoted_r = pre * (at_quoted.square + at_quoted.cross + at_quoted.tail);
    let rhs = rhs_bound(n, quoted::EPSILON);
    let bracket = rhs_bracket(n, quoted::EPSILON);
    let margin = epsilon_for(n, lhs_bound);

    let mut flags = Vec::new();
    if n == 10 {
        flags.push("quoted constants were derived for n = 11".to_string());
    }
    if relative(g_recomputed, quoted::G) > 1e-3 {
        flags.push(format!("G recomputes to {g_recomputed:.7}, quoted {}", quoted::G));
    }
    let g_squared = g_lower_bound_with(lambda0, FRAC_PI_4, quoted::PHI0, n, NormTerm::Squared);
    flags.push(format!("with lambda squared in the norm term G would be {g_squared:.7}"));
    if relative(c_recomputed, quoted::C) > 1e-3 {
        flags.push(format!("C recomputes to {c_recomputed:.2}, quoted {}", quoted::C));
    }
    if relative(r, quoted::R) > 1e-2 {
        flags.push(format!("r = 2G/C is {r:.4e}, quoted {:.3e}", quoted::R));
    }
    if lhs_bound < quoted::LHS {
        flags.push(format!("lhs evaluates to {lhs_bound:.3e}, below the quoted {:.2e}", quoted::LHS));
    }
    if relative(rhs, quoted::RHS) > 0.1 {
        flags.push(format!(
            "rhs with factor 8 is {rhs:.3e}, quoted {:.1e}; without the factor it is {bracket:.3e}",
            quoted::RHS
        ));
    }
    if lhs_bound < rhs {
        flags.push(format!("lhs < rhs at the quoted margin {:.3e}; certified margin is {margin:.3e}", quoted::EPSILON));
    }

    let finite = [g_used, c_used, r, pre, lhs_bound, rhs, margin].iter().all(|x| x.is_finite());
    let verdict = if !finite || !(lhs_bound > 0.0) || identity_defect > 1e-12 {
        Verdict::Inconclusive
    } else if lhs_bound >= rhs {
        Verdict::Holds
    } else {
        match mode {
            Mode::PaperConstants => Verdict::FailsAtPaperConstants,
            Mode::Recomputed if margin > 0.0 => Verdict::HoldsWithRecomputedConstants,
            Mode::Recomputed => Verdict::Inconclusive,
        }
    };

    Ok(Certificate {
        n,
        mode,
        lambda0,
        kappa0,
        phi0,
        g_recomputed,
        g_quoted: quoted::G,
        c_recomputed,
        c_quoted: quoted::C,
        g_used,
        c_used,
        r,
        r_quoted: quoted::R,
        sphere_volume: sv,
        cap_integral: cap,
        ball_volume: bv,
        prefactor: pre,
        terms,
        lhs_bound,
        lhs_closed_form,
        identity_defect,
        lhs_at_quoted_r,
        lhs_quoted: quoted::LHS,
        epsilon_quoted: quoted::EPSILON,
        rhs_bound: rhs,
        rhs_bracket: bracket,
        rhs_quoted: quoted::RHS,
        alpha0_margin: margin,
        verdict,
        flags,
    })
}

/// √(2(n−1)/n)·cot(αₙ) equals √(3/2) at the critical angle.
pub fn critical_cancellation(n: usize) -> f64 {
    let nf = n as f64;
    (2.0 * (nf - 1.0) / nf).sqrt() / alpha_n(n).tan() - LAMBDA_CRIT
}
