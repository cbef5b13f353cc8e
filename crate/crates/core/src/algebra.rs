//! Parameter arithmetic for CEM structures: the special-metric table and the
//! matching of `J_α` against the family `J_{a,b}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::product::{AlphaParam, CemParam};

/// Tolerance of the matching equations.
pub const MATCH_EQ_TOL: f64 = 1e-10;
/// Tolerance of the Reeb-block comparison after a match.
pub const MATCH_BLOCK_TOL: f64 = 1e-12;

/// Factor dimensions `2n₁+1` and `2n₂+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimPair {
    pub n1: usize,
    pub n2: usize,
}

impl DimPair {
    pub fn new(n1: usize, n2: usize) -> Self {
        Self { n1, n2 }
    }

    pub fn total(&self) -> usize {
        self.n1 + self.n2
    }

    /// Complex dimension of `S₁ × S₂`.
    pub fn dim_c(&self) -> usize {
        self.total() + 1
    }
}

/// Which special-metric conditions `(J_{a,b}, g_{a,b})` satisfies.
///
/// `None` marks a case the classification theorem does not decide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialMetricVerdict {
    pub balanced: Option<bool>,
    pub lck: bool,
    pub vaisman_if_lck: bool,
    pub skt: bool,
    pub k_gauduchon: BTreeMap<usize, Option<bool>>,
    pub astheno: Option<bool>,
}

/// `n₁(n₁−1) + 2a n₁n₂ + n₂(n₂−1)(a²+b²)`.
pub fn gauduchon_polynomial(d: DimPair, ab: &CemParam) -> f64 {
    let (n1, n2) = (d.n1 as f64, d.n2 as f64);
    n1 * (n1 - 1.0) + 2.0 * ab.a * n1 * n2 + n2 * (n2 - 1.0) * (ab.a * ab.a + ab.b * ab.b)
}

fn polynomial_vanishes(d: DimPair, ab: &CemParam) -> bool {
    let (n1, n2) = (d.n1 as f64, d.n2 as f64);
    let scale = n1 * n1 + (2.0 * ab.a * n1 * n2).abs() + n2 * n2 * (ab.a * ab.a + ab.b * ab.b);
    gauduchon_polynomial(d, ab).abs() <= 1e-12 * scale.max(1.0)
}

/// The case analysis of the classification theorem for `k = 1..=kmax`.
pub fn classify_special_metrics(d: DimPair, ab: &CemParam, kmax: usize) -> Result<SpecialMetricVerdict> {
    let total = d.total();
    if kmax > total {
        return Err(Error::KOutOfRange { k: kmax, max: total });
    }
    let lck = (d.n1 == 0 && d.n2 >= 1) || (d.n2 == 0 && d.n1 >= 1);
    let skt = matches!((d.n1, d.n2), (1, 0) | (0, 1)) || (ab.a == 0.0 && d.n1 == 1 && d.n2 == 1);
    let vanishes = polynomial_vanishes(d, ab);
    let astheno = (total >= 2).then_some(vanishes);
    let k_gauduchon = (1..=kmax)
        .map(|k| {
            let v = match k {
                1 => astheno,
                _ if total >= 3 => Some(total == k || vanishes),
                _ => None,
            };
            (k, v)
        })
        .collect();
    Ok(SpecialMetricVerdict {
        balanced: (total >= 1).then_some(false),
        lck,
        vaisman_if_lck: lck,
        skt,
        k_gauduchon,
        astheno,
    })
}

/// The quartic `(Im α)⁴ + (2(Re α)² − 1)(Im α)² + (Re α)⁴` with the bounds
/// its vanishing would force.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MatchResidual {
    pub value: f64,
    /// `|Im α| ≤ 1`.
    pub im_bound: bool,
    /// `(Re α)² ≤ 1/4`.
    pub re_bound: bool,
}

pub fn cem_match_residual(alpha: &AlphaParam) -> MatchResidual {
    let (a2, b2) = (alpha.a * alpha.a, alpha.b * alpha.b);
    MatchResidual {
        value: b2 * b2 + (2.0 * a2 - 1.0) * b2 + a2 * a2,
        im_bound: alpha.b.abs() <= 1.0,
        re_bound: a2 <= 0.25,
    }
}

/// Residuals of the matching system at `(a, b)`, in the order
/// `Re(α)b + a Im(α)`, `Im(α) − b|α|²`, `b − (a²+b²)Im(α)`.
pub fn match_equations(alpha: &AlphaParam, ab: &CemParam) -> [f64; 3] {
    let (ra, ia) = (alpha.a, alpha.b);
    let (a, b) = (ab.a, ab.b);
    [
        ra * b + a * ia,
        ia - b * (ra * ra + ia * ia),
        b - (a * a + b * b) * ia,
    ]
}

/// Solves the matching system by `b = Im α/|α|²`, `a = −Re(α) b/Im(α)` and
/// returns the pair only if every equation holds and the Reeb blocks agree.
pub fn cem_match_solve(alpha: &AlphaParam) -> Option<CemParam> {
    let norm2 = alpha.a * alpha.a + alpha.b * alpha.b;
    let b = alpha.b / norm2;
    let a = -alpha.a * b / alpha.b;
    let ab = CemParam::new(a, b).ok()?;
    let scale = 1.0 + norm2 + 1.0 / norm2;
    let eqs_ok = match_equations(alpha, &ab).iter().all(|r| r.abs() <= MATCH_EQ_TOL * scale);
    let block = (alpha.reeb_block() - ab.reeb_block()).abs().max();
    (eqs_ok && block <= MATCH_BLOCK_TOL * scale).then_some(ab)
}
