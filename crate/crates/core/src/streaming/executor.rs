use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::path::{embedding_isometry, PathState};
use crate::channels::ExtremalSpec;
use crate::combinatorics::{dim_gl_irrep, dim_perm_irrep, enumerate_partitions, remove_corners, Staircase};
use crate::error::{Error, Result};
use crate::gt_paths::sample_gt_path_counted;
use crate::rep_kernel::linalg::{c, eye, kron, ptrace_second, CMat};
use crate::rep_kernel::simple_cg_canonical;
use crate::verify::rng_stream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StreamMode {
    /// Sum every measurement branch and every emission path with its weight.
    Exact,
    /// Average independent trajectories with sampled branches.
    Sample,
}

impl std::str::FromStr for StreamMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(StreamMode::Exact),
            "sample" => Ok(StreamMode::Sample),
            other => Err(Error::Parse(format!("unknown stream mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamOptions {
    pub mode: StreamMode,
    pub trajectories: usize,
    pub seed: u64,
}

impl StreamOptions {
    pub fn exact() -> Self {
        StreamOptions { mode: StreamMode::Exact, trajectories: 1, seed: 0 }
    }

    pub fn sample(trajectories: usize, seed: u64) -> Self {
        StreamOptions { mode: StreamMode::Sample, trajectories, seed }
    }
}

/// Structural counts of one pass through the schedule.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceLedger {
    /// Simple CG transforms on a `C^d` site: consumption steps plus box-adding embedding steps.
    pub num_simple_cg: usize,
    /// Simple CG transforms on a `C̄^d` site during the path embedding.
    pub num_simple_dual_cg: usize,
    /// Inverse simple CG transforms emitting output sites.
    pub num_inverse_cg: usize,
    /// Largest `dim Q ⊗ site` touched by a single operation.
    pub peak_live_dim: usize,
    pub classical_samples: usize,
    pub r: usize,
    pub r_prime: usize,
}

impl ResourceLedger {
    fn touch(&mut self, q_dim: usize, d: usize) {
        self.peak_live_dim = self.peak_live_dim.max(q_dim * d);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Consume,
    Embed,
    Emit,
}

/// One step of the schedule: an operation on the Q register and a single site.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleStep {
    pub phase: Phase,
    pub site: usize,
    /// Largest `dim Q ⊗ site` over the branches executing this step.
    pub live_dim: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub steps: Vec<ScheduleStep>,
}

impl Schedule {
    /// Input sites consumed once each in increasing order, then embedding steps,
    /// then output sites emitted once each in decreasing order; no consume or
    /// emit step exceeds `cap`. Embedding steps are sized by the resource path.
    pub fn validate(&self, m: usize, n: usize, cap: usize) -> Result<()> {
        let mut phase_rank = 0;
        let (mut consumed, mut emitted) = (0, n);
        for s in &self.steps {
            let rank = match s.phase {
                Phase::Consume => 0,
                Phase::Embed => 1,
                Phase::Emit => 2,
            };
            if rank < phase_rank {
                return Err(Error::Internal(format!("phase {:?} out of order", s.phase)));
            }
            phase_rank = rank;
            match s.phase {
                Phase::Consume => {
                    if s.site != consumed {
                        return Err(Error::Internal(format!("consumed site {} before site {consumed}", s.site)));
                    }
                    consumed += 1;
                }
                Phase::Emit => {
                    if emitted == 0 || s.site != emitted - 1 {
                        return Err(Error::Internal(format!("emitted site {} out of order", s.site)));
                    }
                    emitted -= 1;
                }
                Phase::Embed => {}
            }
            if s.phase != Phase::Embed && s.live_dim > cap {
                return Err(Error::Internal(format!("step {s:?} exceeds live cap {cap}")));
            }
        }
        if consumed != m || emitted != 0 {
            return Err(Error::Internal(format!("schedule consumed {consumed}/{m} and left {emitted} of {n} unemitted")));
        }
        Ok(())
    }

    fn record(&mut self, phase: Phase, site: usize, live_dim: usize) {
        match self.steps.iter_mut().find(|s| s.phase == phase && s.site == site && phase != Phase::Embed) {
            Some(s) => s.live_dim = s.live_dim.max(live_dim),
            None => self.steps.push(ScheduleStep { phase, site, live_dim }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StreamOutput {
    pub output: CMat,
    pub ledger: ResourceLedger,
    pub schedule: Schedule,
}

/// Unnormalized branch states keyed by the current Q-register label.
type Branches = BTreeMap<Staircase, CMat>;

fn merge(into: &mut Branches, label: Staircase, state: CMat) {
    match into.get_mut(&label) {
        Some(acc) => *acc += state,
        None => {
            into.insert(label, state);
        }
    }
}

fn pick<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    let mut u = rng.random::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        if u < *w {
            return i;
        }
        u -= w;
    }
    weights.iter().rposition(|w| *w > 0.0).unwrap_or(0)
}

struct Executor<'a> {
    spec: &'a ExtremalSpec,
    resources: BTreeMap<Staircase, PathState>,
    ledger: ResourceLedger,
    schedule: Schedule,
}

impl<'a> Executor<'a> {
    fn d(&self) -> usize {
        self.spec.d
    }

    /// Feeds input site `t` into every branch; children are the simple CG blocks.
    fn consume_step(&mut self, t: usize, branches: Branches) -> Vec<(Staircase, CMat)> {
        let d = self.d();
        let rest = d.pow((self.spec.m - t - 1) as u32);
        let mut out = Vec::new();
        let mut live = 0;
        for (nu, sigma) in branches {
            let cg = simple_cg_canonical(&nu, false);
            live = live.max(dim_gl_irrep(&nu) as usize * d);
            self.ledger.touch(dim_gl_irrep(&nu) as usize, d);
            for blk in &cg.layout {
                let w = kron(&cg.block_rows(blk), &eye(rest));
                self.ledger.r = self.ledger.r.max(blk.label.length());
                out.push((blk.label.clone(), &w * &sigma * w.adjoint()));
            }
        }
        self.schedule.record(Phase::Consume, t, live);
        out
    }

    /// `Σ_λ` of the path-embedded, site-traced branch states, keyed by `μ_λ`.
    fn embed(&mut self, lam: &Staircase, sigma: &CMat) -> Result<(Staircase, CMat)> {
        let d = self.d();
        let state = self.resource(lam)?;
        let iota = embedding_isometry(&state)?;
        let dm = dim_gl_irrep(state.base()) as usize;
        let sites = iota.nrows() / dm;
        let (k, l) = (state.k(), state.l());
        self.ledger.num_simple_cg = self.ledger.num_simple_cg.max(self.spec.m.saturating_sub(1) + k);
        self.ledger.num_simple_dual_cg = self.ledger.num_simple_dual_cg.max(l);
        for (p, a) in state.amplitudes() {
            if a.norm() == 0.0 {
                continue;
            }
            for (i, nu) in p.steps()[..p.steps().len() - 1].iter().enumerate() {
                let live = dim_gl_irrep(nu) as usize * d;
                self.ledger.touch(dim_gl_irrep(nu) as usize, d);
                self.schedule.record(Phase::Embed, i, live);
            }
        }
        Ok((state.base().clone(), ptrace_second(&(&iota * sigma * iota.adjoint()), dm, sites)))
    }

    fn resource(&mut self, lam: &Staircase) -> Result<PathState> {
        if let Some(s) = self.resources.get(lam) {
            return Ok(s.clone());
        }
        let a = self.spec.assignment(lam).ok_or_else(|| Error::Spec(format!("no assignment for {lam}")))?;
        let s = PathState::for_triple(&a.lambda, &a.mu, &a.gamma)?;
        self.resources.insert(lam.clone(), s.clone());
        Ok(s)
    }

    /// One inverse CG step `Q_ν → Q_ν' ⊗ site`, emitting output site `|ν'|`.
    fn emit_step(&mut self, nu: &Staircase, child: &Staircase, sigma: &CMat) -> CMat {
        let d = self.d();
        let cg = simple_cg_canonical(child, false);
        let rows = cg.block_rows(cg.block(nu, 0).expect("child reachable"));
        let emitted = d.pow((self.spec.n - nu.positive_size()) as u32);
        let w = kron(&rows.adjoint(), &eye(emitted));
        let site = child.positive_size();
        self.ledger.touch(dim_gl_irrep(child) as usize, d);
        self.ledger.r_prime = self.ledger.r_prime.max(nu.length());
        self.schedule.record(Phase::Emit, site, dim_gl_irrep(child) as usize * d);
        &w * sigma * w.adjoint()
    }

    fn run_exact(&mut self, input: &CMat) -> Result<CMat> {
        let (m, n, d) = (self.spec.m, self.spec.n, self.d());
        let mut branches = Branches::from([(Staircase::zero(d), input.clone())]);
        for t in 0..m {
            let mut next = Branches::new();
            for (label, s) in self.consume_step(t, branches) {
                merge(&mut next, label, s);
            }
            branches = next;
        }
        let mut outputs = Branches::new();
        for (lam, sigma) in &branches {
            let (mu, tau) = self.embed(lam, sigma)?;
            merge(&mut outputs, mu, tau);
        }
        for step in (0..n).rev() {
            let mut next = Branches::new();
            for (nu, sigma) in &outputs {
                let p_nu = dim_perm_irrep(nu)? as f64;
                for child in remove_corners(nu) {
                    let weight = dim_perm_irrep(&child)? as f64 / p_nu;
                    let out = self.emit_step(nu, &child, sigma) * c(weight, 0.0);
                    merge(&mut next, child, out);
                }
            }
            debug_assert!(next.keys().all(|k| k.positive_size() == step));
            outputs = next;
        }
        self.ledger.num_inverse_cg = n.saturating_sub(1);
        outputs.remove(&Staircase::zero(d)).ok_or_else(|| Error::Internal("emission did not reach ∅".into()))
    }

    fn run_trajectory<R: Rng + ?Sized>(&mut self, input: &CMat, rng: &mut R) -> Result<CMat> {
        let (m, d) = (self.spec.m, self.d());
        let mut label = Staircase::zero(d);
        let mut sigma = input.clone();
        for t in 0..m {
            let children = self.consume_step(t, Branches::from([(label, sigma)]));
            let weights: Vec<f64> = children.iter().map(|(_, s)| s.trace().re.max(0.0)).collect();
            let i = pick(&weights, rng);
            self.ledger.classical_samples += 1;
            let (l, s) = children.into_iter().nth(i).unwrap();
            let norm = weights[i];
            if norm <= 0.0 {
                return Err(Error::Internal("sampled a zero-probability branch".into()));
            }
            label = l;
            sigma = s / c(norm, 0.0);
        }
        let (mu, mut tau) = self.embed(&label, &sigma)?;
        let (path, draws) = sample_gt_path_counted(&mu, rng)?;
        self.ledger.classical_samples += draws;
        let steps = path.steps();
        for i in (1..steps.len()).rev() {
            tau = self.emit_step(&steps[i], &steps[i - 1], &tau);
        }
        self.ledger.num_inverse_cg = self.spec.n.saturating_sub(1);
        Ok(tau)
    }
}

/// Runs the streaming schedule with resource states synthesized for every
/// multiplicity-free assignment.
pub fn streamed_apply(spec: &ExtremalSpec, input: &CMat, opts: StreamOptions) -> Result<StreamOutput> {
    streamed_apply_with(spec, input, opts, &BTreeMap::new())
}

/// As [`streamed_apply`], with explicit resource states for some input labels.
pub fn streamed_apply_with(
    spec: &ExtremalSpec,
    input: &CMat,
    opts: StreamOptions,
    resources: &BTreeMap<Staircase, PathState>,
) -> Result<StreamOutput> {
    spec.validate()?;
    let (m, n, d) = (spec.m, spec.n, spec.d);
    let din = d.pow(m as u32);
    if input.shape() != (din, din) {
        return Err(Error::Shape(format!("input must be {din}x{din}, got {:?}", input.shape())));
    }
    for (lam, state) in resources {
        let a = spec.assignment(lam).ok_or_else(|| Error::Spec(format!("resource for unknown label {lam}")))?;
        state.validate()?;
        if state.end() != lam || state.base() != &a.mu {
            return Err(Error::Spec(format!("resource state for {lam} must run {} → {lam}", a.mu)));
        }
    }
    let mut exec = Executor { spec, resources: resources.clone(), ledger: ResourceLedger::default(), schedule: Schedule::default() };
    let output = match opts.mode {
        StreamMode::Exact => exec.run_exact(input)?,
        StreamMode::Sample => {
            if opts.trajectories == 0 {
                return Err(Error::Validation("sample mode needs at least one trajectory".into()));
            }
            let dout = d.pow(n as u32);
            let mut acc = CMat::zeros(dout, dout);
            for t in 0..opts.trajectories {
                let mut rng = rng_stream(opts.seed, t as u64);
                acc += exec.run_trajectory(input, &mut rng)?;
            }
            acc / c(opts.trajectories as f64, 0.0)
        }
    };
    exec.schedule.validate(m, n, d.pow(m.max(n) as u32))?;
    Ok(StreamOutput { output, ledger: exec.ledger, schedule: exec.schedule })
}

/// `d · max dim Q_ν` over labels held together with a site while consuming
/// `m` sites and emitting `n`.
pub fn predicted_peak_live_dim(m: usize, n: usize, d: usize) -> usize {
    (0..m.max(n))
        .filter(|&t| t < m || t < n)
        .flat_map(|t| enumerate_partitions(t, d))
        .map(|nu| dim_gl_irrep(&nu) as usize * d)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{apply_channel, enumerate_extremal_specs, factored_channel, Superop};
    use crate::rep_kernel::linalg::frobenius;
    use crate::verify::{random_density, rng_stream};

    #[test]
    fn exact_mode_matches_factored_channel() {
        let mut rng = rng_stream(1, 0);
        for (m, n, d) in [(1, 1, 2), (2, 1, 2), (1, 2, 2), (2, 2, 2)] {
            for spec in enumerate_extremal_specs(m, n, d).unwrap() {
                let want = factored_channel(&spec).unwrap();
                let streamed = Superop::from_fn(d.pow(m as u32), d.pow(n as u32), |x| {
                    Ok(streamed_apply(&spec, x, StreamOptions::exact())?.output)
                })
                .unwrap()
                .to_choi();
                assert!(streamed.distance(&want) < 1e-8, "{spec:?}");
                let rho = random_density(d.pow(m as u32), &mut rng);
                let out = streamed_apply(&spec, &rho, StreamOptions::exact()).unwrap().output;
                assert!(frobenius(&(out - apply_channel(&want, &rho).unwrap())) < 1e-10);
            }
        }
    }

    #[test]
    fn symmetrization_ledger() {
        let spec = ExtremalSpec::symmetrization(4, 2).unwrap();
        let rho = random_density(16, &mut rng_stream(2, 0));
        let out = streamed_apply(&spec, &rho, StreamOptions::exact()).unwrap();
        let l = &out.ledger;
        assert_eq!((l.num_simple_cg, l.num_simple_dual_cg, l.num_inverse_cg), (3, 0, 3));
        assert_eq!(l.peak_live_dim, 8);
        assert_eq!(predicted_peak_live_dim(4, 4, 2), 8);
        assert_eq!(l.classical_samples, 0);
        assert!(out.schedule.steps.iter().all(|s| s.live_dim <= 8));

        let id = ExtremalSpec::symmetrization(1, 2).unwrap();
        let rho = random_density(2, &mut rng_stream(3, 0));
        let out = streamed_apply(&id, &rho, StreamOptions::exact()).unwrap();
        assert!(frobenius(&(out.output - &rho)) < 1e-12);
        let l = &out.ledger;
        assert_eq!((l.num_simple_cg, l.num_simple_dual_cg, l.num_inverse_cg, l.classical_samples), (0, 0, 0, 0));
    }

    #[test]
    fn peak_matches_prediction() {
        for m in 1..=6 {
            let spec = ExtremalSpec::symmetrization(m, 2).unwrap();
            let rho = random_density(1 << m, &mut rng_stream(4, m as u64));
            let out = streamed_apply(&spec, &rho, StreamOptions::exact()).unwrap();
            assert_eq!(out.ledger.peak_live_dim, predicted_peak_live_dim(m, m, 2), "m={m}");
            if m >= 4 {
                assert!(out.ledger.peak_live_dim < 1 << m);
            }
        }
    }

    #[test]
    fn cloning_ledger() {
        let spec = ExtremalSpec::cloning(1, 3, 2).unwrap();
        let rho = random_density(2, &mut rng_stream(5, 0));
        let out = streamed_apply(&spec, &rho, StreamOptions::exact()).unwrap();
        assert_eq!(out.ledger.num_inverse_cg, 2);
        assert_eq!(out.ledger.num_simple_dual_cg, 2);
        assert!((out.output.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sample_mode_converges_and_is_reproducible() {
        let spec = ExtremalSpec::symmetrization(3, 2).unwrap();
        let rho = random_density(8, &mut rng_stream(6, 0));
        let exact = streamed_apply(&spec, &rho, StreamOptions::exact()).unwrap().output;
        let a = streamed_apply(&spec, &rho, StreamOptions::sample(2000, 9)).unwrap();
        let b = streamed_apply(&spec, &rho, StreamOptions::sample(2000, 9)).unwrap();
        assert_eq!(a.output, b.output);
        assert!(frobenius(&(a.output - &exact)) < 0.05);
        assert!(a.ledger.classical_samples > 0);
        assert!(streamed_apply(&spec, &rho, StreamOptions::sample(0, 1)).is_err());
        assert!(streamed_apply(&spec, &random_density(4, &mut rng_stream(7, 0)), StreamOptions::exact()).is_err());
    }

    #[test]
    fn schedule_validator_rejects_disorder() {
        let bad = Schedule {
            steps: vec![
                ScheduleStep { phase: Phase::Consume, site: 1, live_dim: 2 },
                ScheduleStep { phase: Phase::Consume, site: 0, live_dim: 2 },
            ],
        };
        assert!(bad.validate(2, 0, 4).is_err());
        let bad = Schedule { steps: vec![ScheduleStep { phase: Phase::Emit, site: 0, live_dim: 2 }] };
        assert!(bad.validate(0, 2, 4).is_err());
        let big = Schedule { steps: vec![ScheduleStep { phase: Phase::Consume, site: 0, live_dim: 9 }] };
        assert!(big.validate(1, 0, 4).is_err());
    }
}
