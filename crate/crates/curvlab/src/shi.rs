//! Explicit Shi-type constants bounding |∇ᵏRm| on Einstein manifolds with bounded curvature.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiConstants {
    pub n: usize,
    /// 12.5 + 2√n
    pub alpha: f64,
    /// 35 + 4√n
    pub beta: f64,
    /// 47.5 + 4√n
    pub gamma: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub c1: f64,
    pub c2: f64,
    /// Third constant in its stated closed form.
    pub c3: f64,
    /// √2·A3 from the proof; differs from `c3` in one coefficient.
    pub c3_proof: f64,
}

impl ShiConstants {
    pub fn get(&self, order: u8) -> Option<f64> {
        match order {
            1 => Some(self.c1),
            2 => Some(self.c2),
            3 => Some(self.c3),
            _ => None,
        }
    }
}

pub fn shi_constants(n: usize) -> Result<ShiConstants> {
    if n < 2 {
        return Err(Error::Argument(format!("Shi constants need n >= 2, got {n}")));
    }
    let r = (n as f64).sqrt();
    let alpha = 12.5 + 2.0 * r;
    let beta = 35.0 + 4.0 * r;
    let gamma = 47.5 + 4.0 * r;

    let a1 = (33.0 * alpha).sqrt();
    let a1_sq = a1 * a1;
    let a2 = (33.0 * beta
        + 33.0 * (24.0 + 4.0 * r) * alpha * beta
        + 1089.0 * (24.0 + 9.0 * r).powi(2) * alpha * alpha / (272.0 + 32.0 * r))
        .sqrt();
    let a2_sq = a2 * a2;
    let p = 95.0 + 8.0 * r;
    let a3 = (a1_sq * a2_sq * (41.0 + 14.0 * r).powi(2) / (92.0 + 8.0 * r)
        + p * (34.0 + 4.0 * r) * a2_sq
        + p * (24.0 + 2.0 * r) * a1_sq
        + p * ((24.0 + 9.0 * r) * a1_sq).powi(2) / (544.0 + 64.0 * r)
        + 33.0 * p)
        .sqrt();

    let c1 = (33.0 * (6.25 + r)).sqrt();
    let bracket = 1.0 + (12.0 + 2.0 * r) * (25.0 + 4.0 * r);
    let c2 = (33.0 * beta * bracket + 33f64.powi(2) * (24.0 + 9.0 * r).powi(2) * alpha * alpha / (272.0 + 32.0 * r))
        .sqrt();
    let k = 25.0 + 4.0 * r;
    let m = (41.0 + 14.0 * r).powi(2);
    let s = (24.0 + 9.0 * r).powi(2) * alpha * alpha;
    let c3 = (33.0 * p * (24.0 + 2.0 * r) * k
        + 1089.0 * beta * bracket * k * m / (92.0 + 8.0 * r)
        + 33f64.powi(2) * k * s * m / ((92.0 + 8.0 * r) * (272.0 + 32.0 * r))
        + 66.0 * p * (34.0 + 4.0 * r) * beta * bracket
        + 1089.0 * p * s * (69.0 + 8.0 * r) / (272.0 + 32.0 * r)
        + 66.0 * p)
        .sqrt();

    Ok(ShiConstants {
        n,
        alpha,
        beta,
        gamma,
        a1,
        a2,
        a3,
        c1,
        c2,
        c3,
        c3_proof: std::f64::consts::SQRT_2 * a3,
    })
}

/// (2K − λ)^{1+k/2}·C_k(n), the bound on |∇ᵏRm| for Ric = λg and |Rm| ≤ K.
pub fn derivative_bound(n: usize, k_bound: f64, lambda: f64, order: u8) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Argument(format!("Einstein constant must be positive, got {lambda}")));
    }
    if lambda > k_bound {
        return Err(Error::Argument(format!("need lambda <= K, got lambda = {lambda}, K = {k_bound}")));
    }
    let c = shi_constants(n)?
        .get(order)
        .ok_or_else(|| Error::Argument(format!("derivative order must be 1, 2 or 3, got {order}")))?;
    Ok((2.0 * k_bound - lambda).powf(1.0 + order as f64 / 2.0) * c)
}

/// Published rounded-up constants for 8 ≤ n ≤ 11.
pub const PUBLISHED_TABLE: [(usize, [f64; 3]); 4] = [
    (11, [18.0, 2050.0, 385661.0]),
    (10, [18.0, 1990.0, 367142.0]),
    (9, [18.0, 1920.0, 348265.0]),
    (8, [18.0, 1850.0, 328939.0]),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableCell {
    pub n: usize,
    pub order: u8,
    pub formula: f64,
    pub published: f64,
}

impl TableCell {
    /// 0.97·published ≤ formula ≤ published.
    pub fn dominated(&self) -> bool {
        self.formula <= self.published && self.formula >= 0.97 * self.published
    }
}

pub fn table_cells() -> Vec<TableCell> {
    PUBLISHED_TABLE
        .iter()
        .flat_map(|&(n, row)| {
            let c = shi_constants(n).expect("n >= 2");
            (1..=3u8).map(move |order| TableCell {
                n,
                order,
                formula: c.get(order).expect("order in range"),
                published: row[order as usize - 1],
            })
        })
        .collect()
}
