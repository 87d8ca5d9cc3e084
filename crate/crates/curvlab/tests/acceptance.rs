//! One line per acceptance criterion. Criteria whose published values cannot be
//! reproduced are reported as FAIL with the reason and do not abort the run;
//! any other failure exits non-zero.

mod common;

use std::f64::consts::FRAC_PI_2;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use curvlab::certificate::{alpha0_certificate, Mode};
use curvlab::curvature::{sharp, sharp_pure, weyl_part, CurvatureOperator};
use curvlab::flow::{neighborhood_potential_bound, neighborhood_threshold};
use curvlab::lie::Bivector;
use curvlab::models::{cpn, r_lambda, sphere_product, w_cp2};
use curvlab::sample;
use curvlab::shi::{shi_constants, table_cells};
use curvlab::spectral::{eigen_report, hessian_matrix, orbit_tangent_dim, weyl_basis};
use curvlab::suite::{run_suite, Status, SuiteConfig};
use curvlab::symmetry::{d2_family_norm, d2_family_table};

/// Criteria that compare against published numbers this implementation does not reproduce.
const DOCUMENTED: [(usize, &str); 2] = [
    (7, "three published Shi cells are not within 3% above the closed form"),
    (9, "the displayed right-hand side carries a factor 8 the quoted 2.6e-15 omits"),
];

type Check = Box<dyn Fn() -> Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn timed<F: FnOnce() -> Outcome>(limit: Duration, f: F) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if took > limit {
        o.pass = false;
    }
    o.detail = format!("{} ({:.2}s, limit {}s)", o.detail, took.as_secs_f64(), limit.as_secs());
    o
}

fn cpn_spectrum() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut counts_ok = true;
    for m in 2..=4usize {
        let report = eigen_report(&cpn(m).unwrap().mat, 1e-9).unwrap();
        let want = [((2 * m + 2) as f64, 1), (2.0, m * m - 1), (0.0, m * (m - 1))];
        counts_ok &= report.clusters.len() == 3;
        for (c, (v, k)) in report.clusters.iter().zip(want) {
            counts_ok &= c.multiplicity == k;
            worst = worst.max((c.value - v).abs()).max(c.spread);
        }
    }
    outcome(counts_ok && worst < 1e-10, format!("n_half 2..4, max eigenvalue error {worst:.1e}"))
}

fn potentials() -> Outcome {
    let mut cp2: f64 = 0.0;
    for n in 4..=11 {
        let w = w_cp2(n).unwrap();
        cp2 = cp2.max((common::potential_normalized(n, &w.mat) - 1.5f64.sqrt()).abs());
    }
    let mut products: f64 = 0.0;
    for k in 2..=9 {
        for l in k..=9 {
            let w = weyl_part(&sphere_product(k, l).unwrap()).unwrap();
            let p = curvlab::curvature::potential_normalized(&w).unwrap();
            products = products.max((p - common::theta(k, l)).abs());
        }
    }
    // the product check uses the library potential; cross-check one case with the oracle
    let w = weyl_part(&sphere_product(3, 5).unwrap()).unwrap();
    let cross = (common::potential_normalized(8, &w.mat) - common::theta(3, 5)).abs();
    let worst = cp2.max(products).max(cross);
    outcome(worst < 1e-10, format!("W_CP2 error {cp2:.1e}, products error {products:.1e}"))
}

fn sharp_equivalence() -> Outcome {
    let mut rng = sample::rng(0);
    let mut pure: f64 = 0.0;
    let mut oracle: f64 = 0.0;
    for n in 4..=8 {
        for i in 0..500 {
            let r = sample::pure_curvature(&mut rng, n);
            let fast = sharp_pure(&r).unwrap();
            let full = sharp(&r, &r).unwrap();
            pure = pure.max((&fast.mat - &full.mat).amax() / r.mat.amax().powi(2));
            if i < 10 {
                oracle = oracle.max((&full.mat - common::sharp(n, &r.mat, &r.mat)).amax() / r.mat.amax().powi(2));
            }
        }
        for _ in 0..5 {
            let r = sample::curvature(&mut rng, n);
            let s = sample::curvature(&mut rng, n);
            let lib = sharp(&r, &s).unwrap();
            oracle = oracle.max((&lib.mat - common::sharp(n, &r.mat, &s.mat)).amax());
        }
    }
    // dimension 4 Einstein operators: block diagonal in Λ²₊ ⊕ Λ²₋ with equal traces
    let frame = common::self_dual_frame();
    let mut blocks: f64 = 0.0;
    for _ in 0..100 {
        let a = sample::symmetric_matrix(&mut rng, 3);
        let mut c = sample::symmetric_matrix(&mut rng, 3);
        c += DMatrix::identity(3, 3) * ((a.trace() - c.trace()) / 3.0);
        let mut block = DMatrix::zeros(6, 6);
        block.view_mut((0, 0), (3, 3)).copy_from(&a);
        block.view_mut((3, 3), (3, 3)).copy_from(&c);
        let r = CurvatureOperator::new(4, &frame * block * frame.transpose()).unwrap();
        let sh = frame.transpose() * sharp(&r, &r).unwrap().mat * &frame;
        blocks = blocks
            .max((sh.view((0, 0), (3, 3)) - common::adjugate3(&a) * 2.0).amax())
            .max((sh.view((3, 3), (3, 3)) - common::adjugate3(&c) * 2.0).amax())
            .max(sh.view((0, 3), (3, 3)).amax());
    }
    outcome(
        pure < 1e-10 && oracle < 1e-10 && blocks < 1e-12,
        format!("pure path {pure:.1e}, trace oracle {oracle:.1e}, 4D blocks {blocks:.1e}"),
    )
}

fn bw_identity() -> Outcome {
    let mut rng = sample::rng(0);
    let mut worst: f64 = 0.0;
    let mut weyl: f64 = 0.0;
    for n in 4..=8 {
        let id = CurvatureOperator::identity(n);
        let size = n * (n - 1) / 2;
        for _ in 0..200 {
            let alpha: f64 = rng.gen_range(-2.0..2.0);
            let mut h = sample::symmetric_matrix(&mut rng, n);
            h -= DMatrix::identity(n, n) * (h.trace() / n as f64);
            let w = sample::unit_weyl(&mut rng, n);
            let ric_part = common::wedge_identity(&h);
            let r = DMatrix::identity(size, size) * alpha + &ric_part + &w.mat;
            let r = CurvatureOperator::new(n, r).unwrap();
            let lhs = &r.mat + sharp(&r, &id).unwrap().mat;
            let rhs = DMatrix::identity(size, size) * (alpha * (n - 1) as f64) + &ric_part * ((n - 2) as f64 / 2.0);
            worst = worst.max((lhs - rhs).amax());
            let ric = common::ricci(n, &w.mat).amax();
            weyl = weyl.max((&w.mat + sharp(&w, &id).unwrap().mat).amax()).max(ric);
        }
    }
    outcome(worst < 1e-9 && weyl < 1e-9, format!("residual {worst:.1e}, W + W#Id {weyl:.1e}"))
}

fn hessian_table() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for n in [10usize, 11] {
        let start = Instant::now();
        let w = w_cp2(n).unwrap();
        let basis = weyl_basis(n).unwrap();
        let report = eigen_report(&hessian_matrix(&w, &basis).unwrap(), 1e-8).unwrap();
        let m = n - 4;
        let unit = 1.5f64.sqrt();
        let values = [1.0, 0.5, 1.0 / 3.0, 0.0, -1.0 / 6.0, -0.5, -1.0];
        let mut mults = [1, 4 * m + 2, m * (2 * m + 1), 0, 2 * m * (2 * m + 1), 4 * m, 2];
        mults[3] = common::weyl_dim(n) - mults.iter().sum::<usize>();
        let mut err: f64 = 0.0;
        let ok = report.clusters.len() == 7
            && report.clusters.iter().zip(values.iter().zip(mults)).all(|(c, (&v, k))| {
                err = err.max((c.value - unit * v).abs()).max(c.spread);
                c.multiplicity == k
            });
        let total: usize = report.clusters.iter().map(|c| c.multiplicity).sum();
        // orbit tangent rank from the oracle brackets
        let ads = common::basis_ads(n);
        let tangent = DMatrix::from_columns(
            &ads.iter().map(|a| DVector::from_column_slice((&w.mat * a - a * &w.mat).as_slice())).collect::<Vec<_>>(),
        );
        let sv = tangent.singular_values();
        let rank = sv.iter().filter(|&&s| s > 1e-9 * sv.max()).count();
        let half = report.multiplicity_of(0.5 * unit, 1e-6);
        let n_ok = ok && err < 1e-8 && total == common::weyl_dim(n) && half == rank && rank == orbit_tangent_dim(&w);
        pass &= n_ok && start.elapsed() < Duration::from_secs(300);
        notes.push(format!(
            "n={n}: size {total}, cluster error {err:.1e}, half-space {half} = orbit rank {rank}, {:.1}s",
            start.elapsed().as_secs_f64()
        ));
    }
    outcome(pass, notes.join("; "))
}

fn d2_tables() -> Outcome {
    let mut rng = sample::rng(0);
    let mut table: f64 = 0.0;
    let mut oracle: f64 = 0.0;
    for n in [5usize, 6, 8, 11] {
        for _ in 0..20 {
            let lambda = rng.gen_range(0.1..2.5);
            let phi = rng.gen_range(0.0..FRAC_PI_2);
            let r = r_lambda(lambda, n, phi, None).unwrap();
            for i in 1..=n {
                for j in i + 1..=n {
                    let v = Bivector::basis(n, i, j).unwrap();
                    let closed = d2_family_table(lambda, n, phi, i, j).unwrap();
                    table = table.max((d2_family_norm(lambda, n, phi, &v).unwrap() - closed).abs());
                    oracle = oracle.max((common::d2(n, &r.mat, &v.coords).norm() - closed).abs());
                }
            }
        }
    }
    let mut symmetric: f64 = 0.0;
    for n in 4..=9 {
        for k in 2..=n / 2 {
            let r = sphere_product(k, n - k).unwrap();
            for a in 0..n * (n - 1) / 2 {
                symmetric = symmetric.max(common::d2(n, &r.mat, &Bivector::unit(n, a).coords).norm());
            }
        }
    }
    let worst = table.max(oracle);
    outcome(
        worst < 1e-10 && symmetric < 1e-10,
        format!("table error {table:.1e}, oracle error {oracle:.1e}, products {symmetric:.1e}"),
    )
}

fn shi_constants_check() -> Outcome {
    let mut formula: f64 = 0.0;
    for n in 8..=11 {
        let r = (n as f64).sqrt();
        let c = shi_constants(n).unwrap();
        let c1 = (33.0 * (6.25 + r)).sqrt();
        let (alpha, beta) = (12.5 + 2.0 * r, 35.0 + 4.0 * r);
        let c2 = (33.0 * beta * (1.0 + (12.0 + 2.0 * r) * (25.0 + 4.0 * r))
            + 1089.0 * (24.0 + 9.0 * r).powi(2) * alpha * alpha / (272.0 + 32.0 * r))
            .sqrt();
        formula = formula.max((c.c1 / c1 - 1.0).abs()).max((c.c2 / c2 - 1.0).abs());
    }
    let cells = table_cells();
    let bad: Vec<String> = cells
        .iter()
        .filter(|c| !(c.formula <= c.published && c.formula >= 0.97 * c.published))
        .map(|c| format!("C{}({})={:.2} vs {}", c.order, c.n, c.formula, c.published))
        .collect();
    let (kappa, lambda) = ((73.0f64 / 40.0).sqrt(), (40.0f64 / 27.0).sqrt());
    let big = (2.0 * kappa - lambda).powf(2.5) * shi_constants(11).unwrap().c3;
    let big_ok = (big / 1035846.0 - 1.0).abs() < 1e-3;
    outcome(
        formula < 1e-12 && bad.is_empty() && big_ok,
        format!("C = {big:.2}; {} of 12 cells in range; outside: {}", 12 - bad.len(), bad.join(", ")),
    )
}

fn neighborhood() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for (n, gamma, quoted) in [(11usize, 0.13, 0.9934), (10, 0.26, 0.9796)] {
        let bound = neighborhood_potential_bound(n, gamma).unwrap();
        let threshold = (2..=n / 2).map(|k| common::theta(k, n - k)).fold(0.0, f64::max) * (2.0f64 / 3.0).sqrt();
        pass &= (bound - quoted).abs() < 5e-4 && bound < threshold;
        pass &= (neighborhood_threshold(n) - threshold).abs() < 1e-12;
        notes.push(format!("n={n}: {bound:.6} vs quoted {quoted}, threshold {threshold:.6}"));
    }
    outcome(pass, notes.join("; "))
}

fn certificate() -> Outcome {
    let quoted = alpha0_certificate(11, Mode::PaperConstants).unwrap();
    let rec = alpha0_certificate(11, Mode::Recomputed).unwrap();
    let rhs_ok = (quoted.rhs_bound / 2.6e-15 - 1.0).abs() < 0.1;
    let chain = (rec.r * rec.c_used / (2.0 * rec.g_used) - 1.0).abs();
    let closed = (rec.lhs_closed_form / rec.lhs_bound - 1.0).abs();
    let flagged = rec.flags.iter().any(|f| f.starts_with("G ")) && rec.flags.iter().any(|f| f.starts_with("lhs "));
    let chain_ok = chain < 1e-12 && closed < 1e-12 && flagged;
    outcome(
        rhs_ok && chain_ok,
        format!(
            "quoted-constant rhs {:.4e} vs 2.6e-15 (bracket without the 8: {:.4e}); recomputed chain defect {:.1e}, \
             closed form {closed:.1e}, discrepancies flagged {flagged}",
            quoted.rhs_bound,
            quoted.rhs_bracket,
            chain.max(rec.identity_defect)
        ),
    )
}

fn property_suite() -> Outcome {
    let report = run_suite(&SuiteConfig { dims: (4..=11).collect(), seed: 0, ..SuiteConfig::default() }).unwrap();
    let wanted = ["bianchi-idempotent", "equivariance", "tri-symmetry", "flow-monotone"];
    let mut missing = Vec::new();
    for name in wanted {
        let hits: Vec<_> = report.checks.iter().filter(|c| c.name == name).collect();
        if hits.is_empty() || hits.iter().any(|c| c.status != Status::Pass) {
            missing.push(name);
        }
    }
    let s = report.summary;
    outcome(
        missing.is_empty() && s.fail == 0,
        format!("{} pass, {} flag, {} fail; property checks not passing: {:?}", s.pass, s.flag, s.fail, missing),
    )
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("CPn spectrum", Box::new(|| timed(Duration::from_secs(1), cpn_spectrum))),
        ("model potentials", Box::new(potentials)),
        ("sharp oracle equivalence", Box::new(|| timed(Duration::from_secs(30), sharp_equivalence))),
        ("BW identity", Box::new(bw_identity)),
        ("Hessian table", Box::new(hessian_table)),
        ("D2 tables", Box::new(d2_tables)),
        ("Shi constants", Box::new(shi_constants_check)),
        ("neighborhood bounds", Box::new(neighborhood)),
        ("certificate", Box::new(certificate)),
        ("property suite", Box::new(|| timed(Duration::from_secs(900), property_suite))),
    ];
    let mut unexpected = Vec::new();
    for (i, (title, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        let o = check();
        let known = DOCUMENTED.iter().find(|(k, _)| *k == id);
        let note = match (o.pass, known) {
            (false, Some((_, why))) => format!(" [known: {why}]"),
            (false, None) => {
                unexpected.push(id);
                String::new()
            }
            _ => String::new(),
        };
        println!("criterion {id:>2} {} {title}: {}{note}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
