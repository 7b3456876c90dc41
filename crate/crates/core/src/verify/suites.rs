//! Desk-scale invariant suites behind `verify`.

use std::collections::BTreeMap;

use super::{gaussian_matrix, random_density, random_pure_state, rng_stream, tv_distance, VerificationReport};
use crate::applications::{
    clone_pure, purity_amplification_choi, symmetrization_oracle, symmetrize, werner_clone_oracle,
};
use crate::channels::{
    apply_channel, check_symmetries, enumerate_extremal_specs, extremal_choi, factored_channel, irrep_channel, Channel,
    ExtremalSpec, IrrepForm,
};
use crate::combinatorics::{dim_gl_irrep, dim_perm_irrep, enumerate_partitions, lr_coeff, lr_product, sym_dim, LrQuery, Staircase};
use crate::error::{Error, Result};
use crate::gt_paths::{exact_removal_distribution, next_step_distribution, sample_remove_box, HookWalkMode};
use crate::rep_kernel::linalg::{frobenius, kron, kron_power, ptrace_second, vec_rm};
use crate::streaming::{predicted_peak_live_dim, streamed_apply, StreamOptions};

/// Knobs shared by every suite.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random unitaries or states per randomized case.
    pub trials: usize,
    /// Threshold for deterministic numerical identities.
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 1, trials: 5, tol: 1e-8 }
    }
}

pub const SUITES: [&str; 7] =
    ["combinatorics", "sampling", "vectorization", "factorization", "irrep-forms", "streaming", "applications"];

pub fn run_suite(name: &str, cfg: SuiteConfig) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new(name, cfg.seed);
    match name {
        "combinatorics" => combinatorics(&mut rep)?,
        "sampling" => sampling(&mut rep, cfg)?,
        "vectorization" => vectorization(&mut rep, cfg),
        "factorization" => factorization(&mut rep, cfg)?,
        "irrep-forms" => irrep_forms(&mut rep, cfg)?,
        "streaming" => streaming(&mut rep, cfg)?,
        "applications" => applications(&mut rep, cfg)?,
        other => return Err(Error::Parse(format!("unknown suite {other:?}; known: {}", SUITES.join(", ")))),
    }
    Ok(rep)
}

pub fn run_all(cfg: SuiteConfig) -> Result<Vec<VerificationReport>> {
    SUITES.iter().map(|s| run_suite(s, cfg)).collect()
}

fn combinatorics(rep: &mut VerificationReport) -> Result<()> {
    for d in 1..=3usize {
        for m in 0..=5 {
            let total: u64 = enumerate_partitions(m, d).iter().map(|l| Ok(dim_perm_irrep(l)? * dim_gl_irrep(l))).sum::<Result<u64>>()?;
            rep.check(format!("schur-weyl m={m} d={d}"), total == (d as u64).pow(m as u32));
        }
    }
    for d in 2..=3 {
        let parts: Vec<Staircase> = (0..=3).flat_map(|s| enumerate_partitions(s, d)).collect();
        let mut ok = true;
        for l in &parts {
            for m in &parts {
                for n in &parts {
                    let q = |a: &Staircase, b: &Staircase, c: &Staircase| lr_coeff(&LrQuery::new(a.clone(), b.clone(), c.clone()));
                    let base = q(l, m, n)?;
                    ok &= q(m, l, n)? == base && q(m, &n.dual(), &l.dual())? == base && q(&l.dual(), &m.dual(), &n.dual())? == base;
                }
            }
        }
        rep.check(format!("lr-symmetries d={d}"), ok);
    }
    Ok(())
}

fn sampling(rep: &mut VerificationReport, cfg: SuiteConfig) -> Result<()> {
    for m in 1..=6 {
        let mut ok = true;
        for lambda in enumerate_partitions(m, m) {
            let exact = exact_removal_distribution(&lambda)?;
            ok &= next_step_distribution(&lambda, HookWalkMode::Alg1)? == exact;
            ok &= next_step_distribution(&lambda, HookWalkMode::Alg3)? == exact;
        }
        rep.check(format!("alg1=alg3=exact m={m}"), ok);
    }
    // At 1e5 samples the TV distance on ≤ 3 outcomes exceeds 0.01 with probability far below 1e-3.
    for (i, shape) in [&[3i64, 1, 0][..], &[4, 2, 1]].into_iter().enumerate() {
        let lambda = Staircase::new(shape.to_vec())?;
        let exact = exact_removal_distribution(&lambda)?;
        for (j, mode) in [HookWalkMode::Alg1, HookWalkMode::Alg3].into_iter().enumerate() {
            let mut rng = rng_stream(cfg.seed, (2 * i + j) as u64);
            let mut hist: BTreeMap<Staircase, u64> = BTreeMap::new();
            for _ in 0..100_000 {
                *hist.entry(sample_remove_box(&lambda, &mut rng, mode)?).or_default() += 1;
            }
            rep.residual(format!("tv {lambda} {mode:?}"), tv_distance(&hist, &exact)?, 0.01);
        }
    }
    Ok(())
}

fn vectorization(rep: &mut VerificationReport, cfg: SuiteConfig) {
    let mut worst = 0.0f64;
    for t in 0..cfg.trials.max(1) {
        let mut rng = rng_stream(cfg.seed, t as u64);
        let (a_dim, b_dim) = (2 + t % 2, 3);
        let mm = gaussian_matrix(b_dim, a_dim, &mut rng);
        let a = gaussian_matrix(a_dim, a_dim, &mut rng);
        let b = gaussian_matrix(b_dim, b_dim, &mut rng);
        let v = vec_rm(&mm);
        let lhs = ptrace_second(&(&v * v.adjoint() * kron(&b, &a.transpose())), b_dim, a_dim);
        worst = worst.max(frobenius(&(lhs - &mm * &a * mm.adjoint() * &b)) / frobenius(&mm).powi(2).max(1.0));
    }
    rep.residual("trace-vectorization", worst, 1e-12);
}

fn factorization(rep: &mut VerificationReport, cfg: SuiteConfig) -> Result<()> {
    for (m, n, d) in [(1, 1, 2), (2, 1, 2), (1, 2, 2), (2, 2, 2)] {
        let (mut fact, mut sym) = (0.0f64, 0.0f64);
        for (i, spec) in enumerate_extremal_specs(m, n, d)?.iter().enumerate() {
            let choi = extremal_choi(spec)?;
            fact = fact.max(factored_channel(spec)?.distance(&choi));
            sym = sym.max(check_symmetries(&choi, cfg.trials, &mut rng_stream(cfg.seed, i as u64))?.worst());
        }
        rep.residual(format!("factored=extremal ({m},{n},{d})"), fact, cfg.tol);
        rep.residual(format!("symmetries ({m},{n},{d})"), sym, cfg.tol);
    }
    Ok(())
}

fn irrep_forms(rep: &mut VerificationReport, cfg: SuiteConfig) -> Result<()> {
    let d = 2;
    let parts: Vec<Staircase> = (0..=2).flat_map(|s| enumerate_partitions(s, d)).collect();
    let mut worst = 0.0f64;
    for (i, lambda) in parts.iter().enumerate() {
        for mu in &parts {
            for (gamma, mult) in lr_product(&lambda.dual(), mu)? {
                let g = gaussian_matrix(mult as usize, 1, &mut rng_stream(cfg.seed, i as u64));
                let psi: Vec<_> = g.iter().map(|z| z / g.norm()).collect();
                let build = |form| -> Result<_> { Ok(irrep_channel(lambda, mu, &gamma, &psi, form)?.superop()?.to_choi()) };
                let choi = build(IrrepForm::Choi)?;
                worst = worst.max(choi.distance(&build(IrrepForm::EmbedTrace)?)).max(choi.distance(&build(IrrepForm::Sandwich)?));
            }
        }
    }
    rep.residual("three forms agree d=2", worst, cfg.tol);
    Ok(())
}

fn streaming(rep: &mut VerificationReport, cfg: SuiteConfig) -> Result<()> {
    for (m, n, d) in [(2, 1, 2), (1, 2, 2), (2, 2, 2)] {
        let mut worst = 0.0f64;
        for (i, spec) in enumerate_extremal_specs(m, n, d)?.iter().enumerate() {
            let rho = random_density(d.pow(m as u32), &mut rng_stream(cfg.seed, i as u64));
            let out = streamed_apply(spec, &rho, StreamOptions::exact())?.output;
            let want = apply_channel(&factored_channel(spec)?, &rho)?;
            worst = worst.max(frobenius(&(out - want)));
        }
        rep.residual(format!("exact stream = factored ({m},{n},{d})"), worst, cfg.tol);
    }
    for m in 1..=5 {
        let spec = ExtremalSpec::symmetrization(m, 2)?;
        let rho = random_density(1 << m, &mut rng_stream(cfg.seed, 100 + m as u64));
        let peak = streamed_apply(&spec, &rho, StreamOptions::exact())?.ledger.peak_live_dim;
        rep.check(format!("peak = prediction m={m}"), peak == predicted_peak_live_dim(m, m, 2));
        if m >= 4 {
            rep.check(format!("peak {peak} < 2^{m}"), peak < 1 << m);
        }
    }
    Ok(())
}

fn applications(rep: &mut VerificationReport, cfg: SuiteConfig) -> Result<()> {
    let mut worst = 0.0f64;
    for t in 0..cfg.trials.max(1) {
        let rho = random_density(8, &mut rng_stream(cfg.seed, t as u64));
        let out = symmetrize(&rho, 3, 2, StreamOptions::exact())?.output;
        worst = worst.max(frobenius(&(out - symmetrization_oracle(&rho, 3, 2))));
    }
    rep.residual("symmetrize = m!-average m=3", worst, 1e-9);
    for (m, n) in [(1, 2), (2, 3)] {
        let psi = random_pure_state(2, &mut rng_stream(cfg.seed, 50 + m as u64));
        let res = clone_pure(&psi, m, n, StreamOptions::exact())?;
        let want = sym_dim(m, 2) as f64 / sym_dim(n, 2) as f64;
        rep.residual(format!("clone fidelity {m}→{n}"), (res.fidelity.unwrap_or(f64::NAN) - want).abs(), 1e-10);
        let oracle = werner_clone_oracle(&kron_power(&psi, m), m, n, 2);
        rep.residual(format!("clone = Werner {m}→{n}"), frobenius(&(res.output - oracle)), cfg.tol);
    }
    let (streamed, direct) = purity_amplification_choi(3, 2)?;
    rep.residual("purity streamed = direct m=3", streamed.distance(&direct), cfg.tol);
    Ok(())
}
