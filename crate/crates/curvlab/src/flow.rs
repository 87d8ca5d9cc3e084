//! Normalized gradient flow of the potential on the unit Weyl sphere, and the
//! one-parameter profile of the potential away from W_CP2.

use std::io::Write;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::curvature::{bianchi_map, q, ricci, weyl_part, CurvatureOperator};
use crate::error::{Error, Result};
use crate::lie::pair_count;
use crate::models::{theta_n, w_cp2};
use crate::spectral::{orbit_tangent_vectors, sym_to_vec, vec_to_sym};

const WEYL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub potential: f64,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct FlowState {
    pub w: CurvatureOperator,
    pub t: f64,
    pub potential: f64,
    pub history: Option<Vec<TrajectoryPoint>>,
}

fn check_weyl(w: &CurvatureOperator) -> Result<()> {
    if w.dim < 4 {
        return Err(Error::UnsupportedDimension { n: w.dim, reason: "Weyl operators need n >= 4" });
    }
    let scale = w.norm().max(1.0);
    if ricci(w).amax() > WEYL_TOL * scale || bianchi_map(w).norm() > WEYL_TOL * scale {
        return Err(Error::Argument("operator is not Weyl".into()));
    }
    Ok(())
}

// Weyl part of Q(W) and the residual ‖Q(W) − P(W)W‖ on the unit sphere.
fn weyl_gradient(w: &CurvatureOperator) -> (CurvatureOperator, f64) {
    let qw = weyl_part(&q(w)).expect("dimension checked");
    let p = qw.dot(w);
    (qw, p)
}

impl FlowState {
    /// Starts the flow at W/‖W‖; records history when `record` is set.
    pub fn new(w: &CurvatureOperator, record: bool) -> Result<Self> {
        check_weyl(w)?;
        let norm = w.norm();
        if norm < 1e-14 {
            return Err(Error::Degenerate("flow from the zero operator".into()));
        }
        let w = w.scale(1.0 / norm);
        let (qw, p) = weyl_gradient(&w);
        let history = record.then(|| vec![TrajectoryPoint { t: 0.0, potential: p, residual: residual_of(&qw, &w, p) }]);
        Ok(FlowState { w, t: 0.0, potential: p, history })
    }

    pub fn residual(&self) -> f64 {
        let (qw, p) = weyl_gradient(&self.w);
        residual_of(&qw, &self.w, p)
    }

    /// dt = 1/(10‖Q(W)‖).
    pub fn auto_dt(&self) -> f64 {
        let (qw, _) = weyl_gradient(&self.w);
        0.1 / qw.norm().max(1e-12)
    }
}

fn residual_of(qw: &CurvatureOperator, w: &CurvatureOperator, p: f64) -> f64 {
    (&qw.mat - &w.mat * p).norm()
}

fn tangent_field(w: &DMatrix<f64>, dim: usize) -> DMatrix<f64> {
    let op = CurvatureOperator::new_unchecked(dim, w.clone());
    let (qw, p) = weyl_gradient(&op);
    &qw.mat - w * p
}

/// One RK4 step of Ẇ = Q(W) − ⟨Q(W),W⟩W followed by renormalization.
pub fn flow_step(state: &FlowState, dt: f64) -> Result<FlowState> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Argument(format!("flow step needs dt > 0, got {dt}")));
    }
    let dim = state.w.dim;
    let w0 = &state.w.mat;
    let k1 = tangent_field(w0, dim);
    let k2 = tangent_field(&(w0 + &k1 * (dt / 2.0)), dim);
    let k3 = tangent_field(&(w0 + &k2 * (dt / 2.0)), dim);
    let k4 = tangent_field(&(w0 + &k3 * dt), dim);
    let next = w0 + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
    let next = (&next + next.transpose()) * 0.5;
    let w = CurvatureOperator::new_unchecked(dim, &next / next.norm());
    let (qw, p) = weyl_gradient(&w);
    let t = state.t + dt;
    let history = state.history.as_ref().map(|h| {
        let mut h = h.clone();
        h.push(TrajectoryPoint { t, potential: p, residual: residual_of(&qw, &w, p) });
        h
    });
    Ok(FlowState { w, t, potential: p, history })
}

#[derive(Debug, Clone, Copy)]
pub struct FlowOptions {
    /// Fixed step; `None` uses the auto-scaled step at every iteration.
    pub dt: Option<f64>,
    pub max_steps: usize,
    /// Stop once ‖Q(W) − P(W)W‖ drops below this.
    pub residual_tol: f64,
    /// Record every k-th step in the history (0 disables recording).
    pub record_every: usize,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions { dt: None, max_steps: 200_000, residual_tol: 1e-8, record_every: 0 }
    }
}

#[derive(Debug, Clone)]
pub struct FlowOutcome {
    pub state: FlowState,
    pub steps: usize,
    pub converged: bool,
    pub residual: f64,
    /// Largest single-step drop of the potential, zero for a monotone run.
    pub max_decrease: f64,
    pub trajectory: Vec<TrajectoryPoint>,
}

/// Integrates the flow until the fixed-point residual falls below the tolerance.
pub fn run_flow(w: &CurvatureOperator, options: &FlowOptions) -> Result<FlowOutcome> {
    if let Some(dt) = options.dt {
        if !(dt > 0.0) {
            return Err(Error::Argument(format!("flow step needs dt > 0, got {dt}")));
        }
    }
    let mut state = FlowState::new(w, false)?;
    let mut trajectory = Vec::new();
    let mut residual = state.residual();
    let record = |traj: &mut Vec<TrajectoryPoint>, s: &FlowState, r: f64| {
        traj.push(TrajectoryPoint { t: s.t, potential: s.potential, residual: r });
    };
    if options.record_every > 0 {
        record(&mut trajectory, &state, residual);
    }
    let mut max_decrease: f64 = 0.0;
    let mut steps = 0;
    while residual >= options.residual_tol && steps < options.max_steps {
        let dt = options.dt.unwrap_or_else(|| state.auto_dt());
        let next = flow_step(&state, dt)?;
        max_decrease = max_decrease.max(state.potential - next.potential);
        state = next;
        steps += 1;
        residual = state.residual();
        if options.record_every > 0 && (steps % options.record_every == 0 || residual < options.residual_tol) {
            record(&mut trajectory, &state, residual);
        }
    }
    Ok(FlowOutcome { converged: residual < options.residual_tol, state, steps, residual, max_decrease, trajectory })
}

/// CSV with columns t, P, residual.
pub fn write_trajectory_csv<W: Write>(points: &[TrajectoryPoint], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["t", "P", "residual"])?;
    for p in points {
        writer.write_record([format!("{:.12e}", p.t), format!("{:.15e}", p.potential), format!("{:.6e}", p.residual)])?;
    }
    writer.flush()?;
    Ok(())
}

/// Orthogonal complement of ℝW_CP2 ⊕ (orbit tangent at W_CP2) inside the Weyl operators.
#[derive(Debug, Clone)]
pub struct AdmissibleProjector {
    pub dim: usize,
    /// Orthonormal columns spanning the excluded space.
    pub excluded: DMatrix<f64>,
    pub center: CurvatureOperator,
}

impl AdmissibleProjector {
    pub fn new(n: usize) -> Result<Self> {
        let center = w_cp2(n)?;
        let tangent = orbit_tangent_vectors(&center);
        let c = sym_to_vec(&center.mat);
        let mut cols: Vec<DVector<f64>> = vec![c];
        cols.extend(tangent.column_iter().map(|v| v.into_owned()));
        let excluded = crate::spectral::column_space(&DMatrix::from_columns(&cols), 1e-8);
        Ok(AdmissibleProjector { dim: n, excluded, center })
    }

    pub fn excluded_dim(&self) -> usize {
        self.excluded.ncols()
    }

    /// Norm of the component of W in the excluded space.
    pub fn violation(&self, w: &CurvatureOperator) -> f64 {
        self.excluded.tr_mul(&sym_to_vec(&w.mat)).norm()
    }

    pub fn project(&self, w: &CurvatureOperator) -> Result<CurvatureOperator> {
        crate::error::same_dim(self.dim, w.dim)?;
        let v = sym_to_vec(&w.mat);
        let rest = &v - &self.excluded * self.excluded.tr_mul(&v);
        Ok(CurvatureOperator::new_unchecked(self.dim, vec_to_sym(&rest, pair_count(self.dim))))
    }

    /// Unit admissible direction from a random Weyl sample.
    pub fn sample(&self, rng: &mut crate::sample::SeededRng) -> CurvatureOperator {
        loop {
            let w = self.project(&crate::sample::unit_weyl(rng, self.dim)).expect("same dimension");
            let norm = w.norm();
            if norm > 1e-3 {
                return w.scale(1.0 / norm);
            }
        }
    }
}

/// α and γ of the profile f(φ) = cos³φ + 3α cosφ sin²φ + γ sin³φ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileCoefficients {
    pub alpha: f64,
    pub gamma: f64,
}

impl ProfileCoefficients {
    /// α = √(2/3)⟨Q(W), W_CP2⟩, γ = √(2/3)P(W) for a unit admissible W.
    pub fn of(w: &CurvatureOperator, projector: &AdmissibleProjector) -> Result<Self> {
        crate::error::same_dim(projector.dim, w.dim)?;
        check_weyl(w)?;
        if (w.norm() - 1.0).abs() > 1e-8 {
            return Err(Error::Argument("profile direction must have unit norm".into()));
        }
        let violation = projector.violation(w);
        if violation > 1e-8 {
            return Err(Error::Argument(format!(
                "direction is not orthogonal to W_CP2 and its orbit tangent (component {violation:.3e})"
            )));
        }
        let qw = q(w);
        let s = (2.0f64 / 3.0).sqrt();
        Ok(ProfileCoefficients { alpha: s * qw.dot(&projector.center), gamma: s * qw.dot(w) })
    }

    pub fn f(&self, phi: f64) -> f64 {
        let (s, c) = phi.sin_cos();
        c.powi(3) + 3.0 * c * s * s * self.alpha + s.powi(3) * self.gamma
    }

    pub fn f_prime(&self, phi: f64) -> f64 {
        let (s, c) = phi.sin_cos();
        -3.0 * c * c * s - 3.0 * self.alpha * s.powi(3) + 6.0 * self.alpha * c * c * s + 3.0 * s * s * c * self.gamma
    }
}

/// √(2/3)·P(cosφ·W_CP2 + sinφ·W) for a unit admissible W.
pub fn f_profile(w: &CurvatureOperator, projector: &AdmissibleProjector, phi: f64) -> Result<f64> {
    Ok(ProfileCoefficients::of(w, projector)?.f(phi))
}

/// γ ≤ √(1−2α)(1+α).
pub fn gamma_bound(alpha: f64) -> Result<f64> {
    if !(alpha <= 0.5) {
        return Err(Error::Domain(format!("gamma bound needs alpha <= 1/2, got {alpha}")));
    }
    Ok((1.0 - 2.0 * alpha).sqrt() * (1.0 + alpha))
}

/// Upper bound for f′(φ)/(3 sinφ) at φ = π/6.
pub fn g1(alpha: f64) -> Result<f64> {
    Ok(0.75 * (3.0 * alpha - 1.0) + 3f64.sqrt() / 4.0 * gamma_bound(alpha)? - alpha)
}

/// Upper bound for f(π/6).
pub fn g2(alpha: f64) -> Result<f64> {
    Ok((3.0 * 3f64.sqrt() / 8.0) * (1.0 + alpha) + gamma_bound(alpha)? / 8.0)
}

/// α maximizing cos³γ + 3α cosγ sin²γ + sin³γ·√(1−2α)(1+α) over α ≤ 1/3.
pub fn neighborhood_maximizer(gamma: f64) -> f64 {
    let cot2 = (gamma.cos() / gamma.sin()).powi(2);
    // α/√(1−2α) = cotγ, solved for α
    let free = -cot2 + (cot2 * cot2 + cot2).sqrt();
    free.min(1.0 / 3.0)
}

fn check_neighborhood(n: usize, gamma: f64) -> Result<()> {
    if n < 5 {
        return Err(Error::UnsupportedDimension { n, reason: "neighborhood bounds need n >= 5" });
    }
    if !(gamma > 0.0 && gamma <= std::f64::consts::FRAC_PI_6) {
        return Err(Error::Domain(format!("neighborhood angle must lie in (0, pi/6], got {gamma}")));
    }
    Ok(())
}

/// 1 − bound, evaluated without cancellation: 1 − cos³γ = 2sin²(γ/2)(1 + cosγ + cos²γ).
pub fn neighborhood_deficit(n: usize, gamma: f64) -> Result<f64> {
    check_neighborhood(n, gamma)?;
    let alpha = neighborhood_maximizer(gamma);
    let (s, c) = gamma.sin_cos();
    let half = (gamma / 2.0).sin();
    let one_minus_c3 = 2.0 * half * half * (1.0 + c + c * c);
    Ok(one_minus_c3 - 3.0 * alpha * c * s * s - s.powi(3) * gamma_bound(alpha)?)
}

/// max over α ≤ 1/3 of the profile bound at angle γ, in units where f(0) = 1.
pub fn neighborhood_potential_bound(n: usize, gamma: f64) -> Result<f64> {
    check_neighborhood(n, gamma)?;
    let alpha = neighborhood_maximizer(gamma);
    let (s, c) = gamma.sin_cos();
    Ok(c.powi(3) + 3.0 * alpha * c * s * s + s.powi(3) * gamma_bound(alpha)?)
}

/// √(2/3)·θₙ, the normalized potential of the critical product the bound must stay under.
pub fn neighborhood_threshold(n: usize) -> f64 {
    (2.0f64 / 3.0).sqrt() * theta_n(n)
}
