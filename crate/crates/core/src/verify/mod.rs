//! Haar sampling, statistical distances and verification reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::Complex;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::combinatorics::Staircase;
use crate::error::{Error, Result};
use crate::gt_paths::RemovalDistribution;
use crate::rep_kernel::linalg::{CMat, CVec};

pub mod suites;

pub type Stream = ChaCha20Rng;

/// Independent deterministic stream number `stream` derived from `seed`.
pub fn rng_stream(seed: u64, stream: u64) -> Stream {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMat {
    CMat::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-random element of `SU(d)`: QR of a complex Gaussian matrix with the
/// diagonal of `R` made positive, then rescaled to unit determinant.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMat {
    let z = gaussian_matrix(d, d, rng);
    let qr = z.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = CMat::from_diagonal(&CVec::from_iterator(
        d,
        (0..d).map(|i| {
            let x = r[(i, i)];
            if x.norm() > 0.0 {
                x / x.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        }),
    ));
    let mut u = q * phases;
    let det = u.determinant();
    let fix = Complex64::from_polar(1.0, -det.arg() / d as f64);
    u *= fix;
    u
}

/// Haar-random pure state `|ψ⟩⟨ψ|` on `C^dim`.
pub fn random_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMat {
    let mut v = CVec::from_fn(dim, |_, _| gaussian(rng));
    let n = v.norm();
    v /= Complex64::new(n, 0.0);
    &v * v.adjoint()
}

/// Random full-rank density matrix `G G† / tr(G G†)`.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMat {
    let g = gaussian_matrix(dim, dim, rng);
    let rho = &g * g.adjoint();
    let t = rho.trace();
    rho / t
}

/// `½ Σ |p − q|` between an empirical histogram and an exact distribution.
pub fn tv_distance(empirical: &BTreeMap<Staircase, u64>, exact: &RemovalDistribution) -> Result<f64> {
    let exact = exact.to_f64();
    if let Some(k) = empirical.keys().find(|k| !exact.contains_key(*k)) {
        return Err(Error::Validation(format!("sample {k} outside the exact support")));
    }
    let n: u64 = empirical.values().sum();
    if n == 0 {
        return Err(Error::Validation("empty histogram".into()));
    }
    Ok(0.5
        * exact
            .iter()
            .map(|(k, p)| (empirical.get(k).copied().unwrap_or(0) as f64 / n as f64 - p).abs())
            .sum::<f64>())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    /// Passes when `value ≤ threshold`.
    Residual,
    /// Passes when `value ≥ threshold`.
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub value: f64,
    pub threshold: f64,
    pub kind: CaseKind,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<Case>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        VerificationReport { suite: suite.into(), seed, cases: Vec::new() }
    }

    pub fn residual(&mut self, id: impl Into<String>, value: f64, threshold: f64) -> bool {
        let passed = value.is_finite() && value <= threshold;
        self.cases.push(Case { id: id.into(), value, threshold, kind: CaseKind::Residual, passed });
        passed
    }

    pub fn at_least(&mut self, id: impl Into<String>, value: f64, threshold: f64) -> bool {
        let passed = value.is_finite() && value >= threshold;
        self.cases.push(Case { id: id.into(), value, threshold, kind: CaseKind::Lower, passed });
        passed
    }

    pub fn check(&mut self, id: impl Into<String>, ok: bool) -> bool {
        self.residual(id, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn worst(&self) -> Option<&Case> {
        self.cases.iter().find(|c| !c.passed).or_else(|| {
            self.cases
                .iter()
                .filter(|c| c.kind == CaseKind::Residual && c.threshold > 0.0)
                .max_by(|a, b| (a.value / a.threshold).total_cmp(&(b.value / b.threshold)))
        })
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self.cases.iter().map(|c| c.id.len()).max().unwrap_or(4).max(4);
        let _ = writeln!(out, "suite {} (seed {})", self.suite, self.seed);
        for c in &self.cases {
            let op = match c.kind {
                CaseKind::Residual => "<=",
                CaseKind::Lower => ">=",
            };
            let _ = writeln!(
                out,
                "  {:<width$}  {:>12.4e} {op} {:<10.3e} {}",
                c.id,
                c.value,
                c.threshold,
                if c.passed { "pass" } else { "FAIL" }
            );
        }
        out
    }
}
