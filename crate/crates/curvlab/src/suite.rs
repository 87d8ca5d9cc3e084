//! The verification suite behind `curvlab verify`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::time::Instant;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{alpha0_certificate, Mode, Verdict};
use crate::curvature::{
    bianchi_map, bianchi_project, decompose, q, rotate, sharp, sharp_pure, sp1_blocks, tri, weyl_part,
    CurvatureOperator,
};
use crate::error::{Error, Result};
use crate::flow::{
    neighborhood_deficit, neighborhood_potential_bound, neighborhood_threshold, run_flow, AdmissibleProjector,
    FlowOptions, ProfileCoefficients,
};
use crate::lie::{pair_count, Bivector};
use crate::models::{cpn, sphere_product, theta_kl, w_cp2, LAMBDA_CRIT};
use crate::sample::{self, SeededRng};
use crate::shi::table_cells;
use crate::spectral::{
    decomposition_dims, eigen_report, hessian_matrix, hessian_prediction, orbit_tangent_dim, weyl_basis,
};
use crate::symmetry::{d2, d2_family_norm, d2_family_table, g_lower_bound};

pub const DIM_RANGE: std::ops::RangeInclusive<usize> = 4..=12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Differs from a published value while the recomputed chain is consistent.
    Flag,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: &'static str,
    pub dim: Option<usize>,
    pub expected: f64,
    pub computed: f64,
    pub tolerance: f64,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub flag: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub summary: Summary,
    pub checks: Vec<CheckRecord>,
    pub runtime_seconds: f64,
}

impl SuiteReport {
    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_markdown(&self) -> String {
        let s = &self.summary;
        let mut out = format!(
            "# curvlab verification\n\nseed {}, dims {:?}: {} pass, {} flag, {} fail\n\n",
            self.seed, self.dims, s.pass, s.flag, s.fail
        );
        out.push_str("| status | check | n | expected | computed | tol | detail |\n|---|---|---|---|---|---|---|\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "| {:?} | {} | {} | {:.6e} | {:.6e} | {:.0e} | {} |",
                c.status,
                c.name,
                c.dim.map(|d| d.to_string()).unwrap_or_default(),
                c.expected,
                c.computed,
                c.tolerance,
                c.detail.replace('|', "/")
            );
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["status", "name", "anchor", "dim", "expected", "computed", "tolerance", "detail"])?;
        for c in &self.checks {
            w.write_record([
                format!("{:?}", c.status).to_lowercase(),
                c.name.clone(),
                c.anchor.to_string(),
                c.dim.map(|d| d.to_string()).unwrap_or_default(),
                format!("{:e}", c.expected),
                format!("{:e}", c.computed),
                format!("{:e}", c.tolerance),
                c.detail.clone(),
            ])?;
        }
        crate::io::finish_csv(w)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub dims: Vec<usize>,
    pub seed: u64,
    /// Replaces every per-check tolerance when set.
    pub tol: Option<f64>,
    pub jobs: Option<usize>,
    /// Random samples per randomized check.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { dims: vec![4, 5, 6], seed: 0, tol: None, jobs: None, samples: 20 }
    }
}

struct Ctx {
    seed: u64,
    tol: Option<f64>,
    samples: usize,
}

impl Ctx {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn rng(&self, name: &str, n: usize) -> SeededRng {
        // stable per-check stream, independent of scheduling
        let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x1000_0000_01b3));
        sample::rng(self.seed ^ h ^ ((n as u64) << 48))
    }
}

fn record(
    name: &str,
    anchor: &'static str,
    dim: Option<usize>,
    expected: f64,
    computed: f64,
    tolerance: f64,
    detail: String,
) -> CheckRecord {
    let ok = (computed - expected).abs() <= tolerance;
    CheckRecord {
        name: name.to_string(),
        anchor,
        dim,
        expected,
        computed,
        tolerance,
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
    }
}

fn flag_if_fail(mut r: CheckRecord) -> CheckRecord {
    if r.status == Status::Fail {
        r.status = Status::Flag;
    }
    r
}

fn error_record(name: &str, dim: Option<usize>, e: &Error) -> CheckRecord {
    CheckRecord {
        name: name.to_string(),
        anchor: "plumbing",
        dim,
        expected: 0.0,
        computed: f64::NAN,
        tolerance: 0.0,
        status: Status::Fail,
        detail: e.to_string(),
    }
}

type CheckFn = fn(&Ctx, usize) -> Result<Vec<CheckRecord>>;

fn applicable(name: &str, n: usize) -> bool {
    match name {
        "cpn-spectrum" => n.is_multiple_of(2),
        "einstein-blocks" => n == 4,
        "d2-table" | "hessian" => n >= 5,
        "dimension-table" => n >= 6,
        "flow" => (5..=8).contains(&n),
        "admissible-alpha" | "neighborhood" | "certificate" => n == 10 || n == 11,
        "shi-table" => (8..=11).contains(&n),
        _ => true,
    }
}

const CHECKS: [(&str, CheckFn); 18] = [
    ("bianchi-idempotent", check_bianchi),
    ("decomposition", check_decomposition),
    ("bw-identity", check_bw),
    ("sharp-pure", check_sharp_pure),
    ("einstein-blocks", check_einstein_blocks),
    ("equivariance", check_equivariance),
    ("tri-symmetry", check_tri),
    ("potentials", check_potentials),
    ("symmetric-space", check_symmetric_space),
    ("cpn-spectrum", check_cpn),
    ("d2-table", check_d2_table),
    ("hessian", check_hessian),
    ("dimension-table", check_dimensions),
    ("flow", check_flow),
    ("admissible-alpha", check_admissible),
    ("neighborhood", check_neighborhood),
    ("shi-table", check_shi),
    ("certificate", check_certificate),
];

/// Runs every applicable check for every requested dimension.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    if config.dims.is_empty() {
        return Err(Error::Argument("no dimensions requested".into()));
    }
    if let Some(&bad) = config.dims.iter().find(|d| !DIM_RANGE.contains(d)) {
        return Err(Error::UnsupportedDimension { n: bad, reason: "suite dimensions must lie in 4..=12" });
    }
    if config.jobs == Some(0) {
        return Err(Error::Argument("jobs must be at least 1".into()));
    }
    let mut dims = config.dims.clone();
    dims.sort_unstable();
    dims.dedup();
    let ctx = Ctx { seed: config.seed, tol: config.tol, samples: config.samples.max(1) };
    let tasks: Vec<(&str, CheckFn, usize)> = dims
        .iter()
        .flat_map(|&n| CHECKS.iter().filter(move |(name, _)| applicable(name, n)).map(move |&(name, f)| (name, f, n)))
        .collect();

    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Argument(e.to_string()))?;
    let results: Vec<Vec<CheckRecord>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(name, f, n)| f(&ctx, n).unwrap_or_else(|e| vec![error_record(name, Some(n), &e)]))
            .collect()
    });
    let checks: Vec<CheckRecord> = results.into_iter().flatten().collect();
    let mut summary = Summary::default();
    for c in &checks {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Flag => summary.flag += 1,
            Status::Fail => summary.fail += 1,
        }
    }
    Ok(SuiteReport { seed: config.seed, dims, summary, checks, runtime_seconds: start.elapsed().as_secs_f64() })
}

fn max_over<F: FnMut(&mut SeededRng) -> Result<f64>>(ctx: &Ctx, name: &str, n: usize, mut f: F) -> Result<f64> {
    let mut rng = ctx.rng(name, n);
    let mut worst: f64 = 0.0;
    for _ in 0..ctx.samples {
        worst = worst.max(f(&mut rng)?);
    }
    Ok(worst)
}

fn check_bianchi(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let worst = max_over(ctx, "bianchi", n, |rng| {
        let r = sample::curvature(rng, n);
        Ok((&bianchi_project(&r).mat - &r.mat).amax().max(bianchi_map(&r).mat.amax()))
    })?;
    Ok(vec![record("bianchi-idempotent", "curvature-identities", Some(n), 0.0, worst, ctx.tol(1e-12), String::new())])
}

fn check_decomposition(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let worst = max_over(ctx, "decomposition", n, |rng| {
        let r = sample::curvature(rng, n);
        let d = decompose(&r)?;
        let sum = &d.identity_part.mat + &d.ricci_part.mat + &d.weyl.mat;
        Ok((sum - &r.mat)
            .amax()
            .max(d.identity_part.dot(&d.ricci_part).abs())
            .max(d.identity_part.dot(&d.weyl).abs())
            .max(d.ricci_part.dot(&d.weyl).abs()))
    })?;
    Ok(vec![record("decomposition", "curvature-identities", Some(n), 0.0, worst, ctx.tol(1e-10), String::new())])
}

fn check_bw(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let id = CurvatureOperator::identity(n);
    let general = max_over(ctx, "bw", n, |rng| {
        let r = sample::curvature(rng, n);
        let d = decompose(&r)?;
        let lhs = &r.mat + sharp(&r, &id)?.mat;
        let rhs = &d.identity_part.mat * (n - 1) as f64 + &d.ricci_part.mat * ((n - 2) as f64 / 2.0);
        Ok((lhs - rhs).amax())
    })?;
    let weyl = max_over(ctx, "bw-weyl", n, |rng| {
        let w = sample::unit_weyl(rng, n);
        Ok((&w.mat + sharp(&w, &id)?.mat).amax())
    })?;
    let tol = ctx.tol(1e-9);
    Ok(vec![
        record("bw-identity", "curvature-identities", Some(n), 0.0, general, tol, String::new()),
        record("bw-identity-weyl", "curvature-identities", Some(n), 0.0, weyl, tol, "W + W#Id".into()),
    ])
}

fn check_sharp_pure(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let worst = max_over(ctx, "sharp-pure", n, |rng| {
        let r = sample::pure_curvature(rng, n);
        Ok((&sharp_pure(&r)?.mat - &sharp(&r, &r)?.mat).amax())
    })?;
    Ok(vec![record("sharp-pure", "sharp", Some(n), 0.0, worst, ctx.tol(1e-10), String::new())])
}

fn check_einstein_blocks(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let worst = max_over(ctx, "einstein-blocks", n, |rng| {
        let a = sample::symmetric_matrix(rng, 3);
        let mut c = sample::symmetric_matrix(rng, 3);
        c += DMatrix::identity(3, 3) * ((a.trace() - c.trace()) / 3.0);
        let mut m = DMatrix::zeros(6, 6);
        m.view_mut((0, 0), (3, 3)).copy_from(&a);
        m.view_mut((3, 3), (3, 3)).copy_from(&c);
        let r = crate::curvature::from_sp1_blocks(&m)?;
        let sh = sp1_blocks(&sharp(&r, &r)?)?;
        let adj = |x: &DMatrix<f64>| adjugate3(x);
        Ok((sh.view((0, 0), (3, 3)) - adj(&a) * 2.0)
            .amax()
            .max((sh.view((3, 3), (3, 3)) - adj(&c) * 2.0).amax())
            .max(sh.view((0, 3), (3, 3)).amax()))
    })?;
    Ok(vec![record("einstein-blocks", "sharp", Some(n), 0.0, worst, ctx.tol(1e-12), "R# = 2 adj per block".into())])
}

fn adjugate3(x: &DMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(3, 3, |i, j| {
        // cofactor of (j, i)
        let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
        let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
        let minor = x[(rows[0], cols[0])] * x[(rows[1], cols[1])] - x[(rows[0], cols[1])] * x[(rows[1], cols[0])];
        if (i + j) % 2 == 0 {
            minor
        } else {
            -minor
        }
    })
}

fn check_equivariance(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let worst = max_over(ctx, "equivariance", n, |rng| {
        let g = sample::rotation(rng, n);
        let r = sample::curvature(rng, n);
        let s = sample::curvature(rng, n);
        let v = sample::bivector(rng, n);
        let (gr, gs) = (rotate(&g, &r)?, rotate(&g, &s)?);
        let q_err = (&q(&gr).mat - &rotate(&g, &q(&r))?.mat).amax();
        let sharp_err = (&sharp(&gr, &gs)?.mat
            - &rotate(&g, &CurvatureOperator::new_unchecked(n, sharp(&r, &s)?.mat))?.mat)
            .amax();
        // D²_v(g.R) = g.D²_{Av}(R)
        let a = crate::lie::adjoint_rotation(&g)?;
        let av = Bivector::from_coords(n, &a * &v.coords)?;
        let lhs = d2(&gr, &v)?.operator.mat.clone();
        let rhs = rotate(&g, &CurvatureOperator::new_unchecked(n, d2(&r, &av)?.operator.mat.clone()))?.mat.clone();
        let scale = r.norm() * r.norm() * v.norm();
        Ok(q_err.max(sharp_err).max((lhs - rhs).amax() / scale.max(1.0)))
    })?;
    Ok(vec![record("equivariance", "curvature-identities", Some(n), 0.0, worst, ctx.tol(1e-9), "Q, sharp, D2".into())])
}

fn check_tri(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let worst = max_over(ctx, "tri", n, |rng| {
        let (r, s, t) = (sample::curvature(rng, n), sample::curvature(rng, n), sample::curvature(rng, n));
        let base = tri(&r, &s, &t)?;
        let perms = [tri(&s, &r, &t)?, tri(&t, &s, &r)?, tri(&r, &t, &s)?, tri(&s, &t, &r)?, tri(&t, &r, &s)?];
        Ok(perms.iter().map(|p| (p - base).abs()).fold(0.0, f64::max) / base.abs().max(1.0))
    })?;
    Ok(vec![record("tri-symmetry", "curvature-identities", Some(n), 0.0, worst, ctx.tol(1e-9), String::new())])
}

fn check_potentials(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let tol = ctx.tol(1e-10);
    let w = w_cp2(n)?;
    let mut out = vec![record(
        "potential-wcp2",
        "model-potentials",
        Some(n),
        LAMBDA_CRIT,
        crate::curvature::potential_normalized(&w)?,
        tol,
        String::new(),
    )];
    let mut worst: f64 = 0.0;
    for k in 2..=n / 2 {
        let l = n - k;
        let wk = weyl_part(&sphere_product(k, l)?)?;
        worst = worst.max((crate::curvature::potential_normalized(&wk)? - theta_kl(k, l)).abs());
    }
    if n >= 4 {
        out.push(record("potential-products", "model-potentials", Some(n), 0.0, worst, tol, "all k + l = n".into()));
    }
    Ok(out)
}

fn check_symmetric_space(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let mut models = Vec::new();
    for k in 2..=n / 2 {
        models.push(sphere_product(k, n - k)?);
    }
    if n.is_multiple_of(2) {
        models.push(cpn(n / 2)?);
    }
    let mut worst: f64 = 0.0;
    for r in &models {
        for a in 0..pair_count(n) {
            worst = worst.max(d2(r, &Bivector::unit(n, a))?.norm);
        }
    }
    Ok(vec![record(
        "symmetric-space",
        "symmetry-operator",
        Some(n),
        0.0,
        worst,
        ctx.tol(1e-10),
        "D2 vanishes on products and CPn".into(),
    )])
}

fn check_cpn(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let m = n / 2;
    let r = cpn(m)?;
    let report = eigen_report(&r.mat, 1e-8)?;
    let want = [(2.0 * m as f64 + 2.0, 1), (2.0, m * m - 1), (0.0, m * (m - 1))];
    let want: Vec<(f64, usize)> = want.into_iter().filter(|&(_, k)| k > 0).collect();
    let mut err: f64 = if report.clusters.len() == want.len() { 0.0 } else { f64::INFINITY };
    for (c, &(v, k)) in report.clusters.iter().zip(&want) {
        if c.multiplicity != k {
            err = f64::INFINITY;
        }
        err = err.max((c.value - v).abs());
    }
    let found: Vec<String> = report.clusters.iter().map(|c| format!("{:.3}x{}", c.value, c.multiplicity)).collect();
    Ok(vec![record("cpn-spectrum", "model-spectra", Some(n), 0.0, err, ctx.tol(1e-10), found.join(" "))])
}

fn check_d2_table(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let mut rng = ctx.rng("d2-table", n);
    use rand::Rng;
    let mut worst: f64 = 0.0;
    for _ in 0..ctx.samples.min(20) {
        let lambda = rng.gen_range(0.2..2.0);
        let phi = rng.gen_range(0.0..FRAC_PI_2);
        for i in 1..=n {
            for j in i + 1..=n {
                let numeric = d2_family_norm(lambda, n, phi, &Bivector::basis(n, i, j)?)?;
                worst = worst.max((numeric - d2_family_table(lambda, n, phi, i, j)?).abs());
            }
        }
    }
    Ok(vec![record("d2-table", "symmetry-operator", Some(n), 0.0, worst, ctx.tol(1e-10), String::new())])
}

fn check_hessian(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let tol = ctx.tol(1e-8);
    let w = w_cp2(n)?;
    let basis = weyl_basis(n)?;
    let h = hessian_matrix(&w, &basis)?;
    let report = eigen_report(&h, 1e-8)?;
    let want = hessian_prediction(n);
    let got: Vec<(f64, usize)> = report.clusters.iter().map(|c| (c.value / LAMBDA_CRIT, c.multiplicity)).collect();
    let mut value_err: f64 = if got.len() == want.len() { 0.0 } else { f64::INFINITY };
    let mut mult_ok = got.len() == want.len();
    for (g, w) in got.iter().zip(&want) {
        value_err = value_err.max((g.0 - w.0).abs());
        mult_ok &= g.1 == w.1;
    }
    let listing: Vec<String> = got.iter().map(|(v, k)| format!("{v:.6}x{k}")).collect();
    let half = report.multiplicity_of(0.5 * LAMBDA_CRIT, 1e-6);
    let third = report.multiplicity_of(LAMBDA_CRIT / 3.0, 1e-6);
    Ok(vec![
        record("hessian-eigenvalues", "hessian-spectrum", Some(n), 0.0, value_err, tol, listing.join(" ")),
        record(
            "hessian-multiplicities",
            "hessian-spectrum",
            Some(n),
            1.0,
            if mult_ok { 1.0 } else { 0.0 },
            0.0,
            format!("third-eigenvalue multiplicity {third}"),
        ),
        record(
            "hessian-size",
            "hessian-spectrum",
            Some(n),
            crate::spectral::weyl_dim_formula(n) as f64,
            report.size() as f64,
            0.0,
            String::new(),
        ),
        record(
            "hessian-orbit-tangent",
            "hessian-spectrum",
            Some(n),
            orbit_tangent_dim(&w) as f64,
            half as f64,
            0.0,
            "half-eigenspace vs orbit tangent".into(),
        ),
        record("hessian-trace", "hessian-spectrum", Some(n), 0.0, h.trace(), tol, String::new()),
        record("hessian-residual", "hessian-spectrum", Some(n), 0.0, report.residual, tol, String::new()),
    ])
}

fn check_dimensions(_ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let mut ks = vec![3];
    if n >= 7 {
        ks.push(4);
    }
    for k in ks {
        let t = decomposition_dims(n, k)?;
        let detail: Vec<String> = t.entries.iter().map(|e| format!("{}={}", e.name, e.numeric)).collect();
        out.push(record(
            &format!("dimension-table-k{k}"),
            "decompositions",
            Some(n),
            1.0,
            if t.consistent() { 1.0 } else { 0.0 },
            0.0,
            detail.join(" "),
        ));
    }
    Ok(out)
}

fn check_flow(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let mut rng = ctx.rng("flow", n);
    let w = sample::unit_weyl(&mut rng, n);
    let options = FlowOptions { residual_tol: 1e-8, max_steps: 100_000, ..FlowOptions::default() };
    let out = run_flow(&w, &options)?;
    let p = out.state.potential;
    let mut named = vec![(LAMBDA_CRIT, "W_CP2".to_string())];
    for k in 2..=n / 2 {
        named.push((theta_kl(k, n - k), format!("S{k}xS{}", n - k)));
    }
    let near = named.iter().find(|(v, _)| (v - p).abs() < 1e-6).map(|(_, s)| s.clone());
    let detail = format!(
        "{} steps, terminal P {p:.10} ({})",
        out.steps,
        near.unwrap_or_else(|| "uncatalogued critical value".into())
    );
    let mut records = vec![
        record("flow-monotone", "potential-flow", Some(n), 0.0, out.max_decrease.max(0.0), ctx.tol(1e-12), String::new()),
        record("flow-converged", "potential-flow", Some(n), 0.0, out.residual, 1e-8, detail),
    ];
    if !out.converged {
        records[1] = flag_if_fail(records[1].clone());
    }
    Ok(records)
}

fn check_admissible(ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let proj = AdmissibleProjector::new(n)?;
    let worst = max_over(ctx, "admissible", n, |rng| {
        let w = proj.sample(rng);
        Ok(ProfileCoefficients::of(&w, &proj)?.alpha)
    })?;
    let excess = (worst - 1.0 / 3.0).max(0.0);
    Ok(vec![record(
        "admissible-alpha",
        "potential-profile",
        Some(n),
        0.0,
        excess,
        ctx.tol(1e-8),
        format!("max alpha {worst:.6}"),
    )])
}

fn check_neighborhood(_ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let (gamma, quoted) = if n == 11 { (0.13, 0.9934) } else { (0.26, 0.9796) };
    let bound = neighborhood_potential_bound(n, gamma)?;
    let threshold = neighborhood_threshold(n);
    let deficit = neighborhood_deficit(n, 1e-6)? * LAMBDA_CRIT;
    Ok(vec![
        record("neighborhood-bound", "potential-profile", Some(n), quoted, bound, 5e-4, format!("gamma {gamma}")),
        record(
            "neighborhood-strict",
            "potential-profile",
            Some(n),
            1.0,
            if bound < threshold { 1.0 } else { 0.0 },
            0.0,
            format!("{bound:.6} < {threshold:.6}"),
        ),
        flag_if_fail(record(
            "small-angle-deficit",
            "potential-profile",
            Some(n),
            2.66e-15,
            deficit,
            1e-16,
            "deficit at gamma = 1e-6, times sqrt(3/2)".into(),
        )),
    ])
}

fn check_shi(_ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let mut out: Vec<CheckRecord> = table_cells()
        .into_iter()
        .filter(|c| c.n == n)
        .map(|c| {
            let r = CheckRecord {
                name: format!("shi-c{}", c.order),
                anchor: "shi-table",
                dim: Some(n),
                expected: c.published,
                computed: c.formula,
                tolerance: 0.03 * c.published,
                status: if c.dominated() { Status::Pass } else { Status::Fail },
                detail: "0.97 published <= formula <= published".into(),
            };
            flag_if_fail(r)
        })
        .collect();
    if n == 11 {
        let c = alpha0_certificate(11, Mode::Recomputed)?;
        out.push(record("shi-certificate-c", "shi-table", Some(n), 1035846.0, c.c_recomputed, 1035.846, String::new()));
        out.push(flag_if_fail(record(
            "g-lower-bound",
            "symmetry-operator",
            Some(n),
            0.303088,
            g_lower_bound(crate::models::crit_sym_einstein_constant(11), PI / 4.0, 1e-6, 11),
            1e-6,
            String::new(),
        )));
    }
    Ok(out)
}

fn check_certificate(_ctx: &Ctx, n: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for mode in [Mode::PaperConstants, Mode::Recomputed] {
        let c = alpha0_certificate(n, mode)?;
        let label = match mode {
            Mode::PaperConstants => "quoted",
            Mode::Recomputed => "recomputed",
        };
        out.push(record(
            &format!("certificate-{label}-identity"),
            "certificate",
            Some(n),
            0.0,
            c.identity_defect,
            1e-12,
            format!("verdict {:?}, margin {:.3e}", c.verdict, c.alpha0_margin),
        ));
        let mut status = if c.verdict == Verdict::Holds { Status::Pass } else { Status::Flag };
        if c.verdict == Verdict::Inconclusive {
            status = Status::Fail;
        }
        out.push(CheckRecord {
            name: format!("certificate-{label}-inequality"),
            anchor: "certificate",
            dim: Some(n),
            expected: c.rhs_bound,
            computed: c.lhs_bound,
            tolerance: 0.0,
            status,
            detail: c.flags.join("; "),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoke_run_is_clean_and_deterministic() {
        let config = SuiteConfig { dims: vec![4, 5], seed: 7, samples: 5, ..SuiteConfig::default() };
        let a = run_suite(&config).unwrap();
        assert!(!a.has_failures(), "{}", a.to_markdown());
        let b = run_suite(&SuiteConfig { jobs: Some(1), ..config }).unwrap();
        assert_eq!(a.checks, b.checks);
        assert!(a.checks.iter().any(|c| c.name == "einstein-blocks"));
        assert!(a.to_csv().unwrap().lines().count() == a.checks.len() + 1);
    }

    #[test]
    fn rejects_bad_dimensions() {
        let config = SuiteConfig { dims: vec![3], ..SuiteConfig::default() };
        assert!(matches!(run_suite(&config), Err(Error::UnsupportedDimension { .. })));
        let config = SuiteConfig { dims: vec![13], ..SuiteConfig::default() };
        assert!(run_suite(&config).is_err());
    }

    #[test]
    fn known_mismatches_are_flags() {
        let config = SuiteConfig { dims: vec![10], samples: 3, ..SuiteConfig::default() };
        let r = run_suite(&config).unwrap();
        assert!(!r.has_failures(), "{}", r.to_markdown());
        let flagged: Vec<&str> =
            r.checks.iter().filter(|c| c.status == Status::Flag).map(|c| c.name.as_str()).collect();
        assert!(flagged.contains(&"shi-c3"));
        assert!(flagged.contains(&"certificate-quoted-inequality"));
    }
}
