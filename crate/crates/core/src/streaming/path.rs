use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{dim_gl_irrep, lr_coeff, LrQuery, Staircase};
use crate::error::{Error, Result};
use crate::gt_paths::{enumerate_paths, GtPath};
use crate::rep_kernel::linalg::{eye, kron, CMat, ONE, ZERO};
use crate::rep_kernel::{general_cg_canonical, schur_transform, simple_cg_canonical};

/// A normalized superposition of paths `μ → λ` with `k` additions then `l` removals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathState {
    base: Staircase,
    k: usize,
    l: usize,
    #[serde(with = "amplitude_list")]
    amplitudes: BTreeMap<GtPath, Complex64>,
}

mod amplitude_list {
    use std::collections::BTreeMap;

    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::gt_paths::GtPath;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        path: GtPath,
        amplitude: [f64; 2],
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<GtPath, Complex64>, s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|(p, a)| Entry { path: p.clone(), amplitude: [a.re, a.im] })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<GtPath, Complex64>, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        Ok(entries.into_iter().map(|e| (e.path, Complex64::new(e.amplitude[0], e.amplitude[1]))).collect())
    }
}

impl PathState {
    pub fn new(base: Staircase, k: usize, l: usize, amplitudes: BTreeMap<GtPath, Complex64>) -> Result<Self> {
        let state = PathState { base, k, l, amplitudes };
        state.validate()?;
        Ok(state)
    }

    pub fn single(path: GtPath) -> Self {
        let (base, k, l) = (path.start().clone(), path.k(), path.l());
        PathState { base, k, l, amplitudes: BTreeMap::from([(path, ONE)]) }
    }

    pub fn validate(&self) -> Result<()> {
        let first = self.amplitudes.keys().next().ok_or_else(|| Error::Validation("empty path state".into()))?;
        let end = first.end();
        for p in self.amplitudes.keys() {
            if p.start() != &self.base || p.k() != self.k || p.l() != self.l || p.end() != end {
                return Err(Error::Validation(format!("path {:?} does not match {} → {end} with k={}, l={}", p.steps(), self.base, self.k, self.l)));
            }
        }
        let norm: f64 = self.amplitudes.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Validation(format!("path amplitudes have norm {norm}")));
        }
        Ok(())
    }

    pub fn base(&self) -> &Staircase {
        &self.base
    }

    pub fn end(&self) -> &Staircase {
        self.amplitudes.keys().next().expect("validated state is nonempty").end()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn amplitudes(&self) -> &BTreeMap<GtPath, Complex64> {
        &self.amplitudes
    }

    /// Resource state realizing `Φ_{λ,μ}^{γ}` for a multiplicity-free triple.
    ///
    /// With a unique path the state is that path; otherwise the amplitudes are
    /// the overlaps of the path embeddings with `|first GT vector of γ̄⟩ ⊗ ι_{μ,γ̄}^λ`.
    pub fn for_triple(lambda: &Staircase, mu: &Staircase, gamma: &Staircase) -> Result<Self> {
        let gbar = gamma.dual();
        let c = lr_coeff(&LrQuery::new(mu.clone(), gbar.clone(), lambda.clone()))?;
        if c != 1 {
            return Err(Error::Spec(format!(
                "{lambda} appears {c} times in {mu} ⊗ {gbar}; pass an explicit path state"
            )));
        }
        let (k, l) = (gbar.positive_size(), gbar.negative_size());
        let paths = enumerate_paths(mu, k, l).remove(lambda).unwrap_or_default();
        if paths.len() == 1 {
            return Ok(PathState::single(paths.into_iter().next().unwrap()));
        }
        let d = lambda.d();
        let (dl, dm) = (dim_gl_irrep(lambda) as usize, dim_gl_irrep(mu) as usize);
        let schur = schur_transform(k, l, d)?;
        let block = schur.iso.block(&gbar, 0).ok_or_else(|| Error::Internal(format!("no block {gbar}")))?;
        let project = kron(&eye(dm), &schur.iso.block_rows(block));
        let cg = general_cg_canonical(mu, false, &gbar, false)?;
        let target = cg.block_rows(cg.block(lambda, 0).unwrap()).adjoint();
        let mut amplitudes = BTreeMap::new();
        for p in paths {
            let z = &project * path_operator(&p)?;
            let a = (z.adjoint() * &target).trace() / dl as f64;
            amplitudes.insert(p, a);
        }
        PathState::new(mu.clone(), k, l, amplitudes)
    }
}

/// `ι_p: Q_λ → Q_μ ⊗ (C^d)^{⊗k} ⊗ (C̄^d)^{⊗l}`, composed from inverse simple CG
/// transforms from the end of the path back to its start.
pub fn path_operator(path: &GtPath) -> Result<CMat> {
    let steps = path.steps();
    let d = path.d();
    let total = steps.len() - 1;
    let mut op = eye(dim_gl_irrep(path.end()) as usize);
    for i in (0..total).rev() {
        let cg = simple_cg_canonical(&steps[i], i >= path.k());
        let block = cg
            .block(&steps[i + 1], 0)
            .ok_or_else(|| Error::Internal(format!("{} not reachable from {}", steps[i + 1], steps[i])))?;
        let tail = d.pow((total - i - 1) as u32);
        op = kron(&cg.block_rows(block).adjoint(), &eye(tail)) * op;
    }
    Ok(op)
}

/// `Σ_p a_p ι_p`.
pub fn embedding_isometry(state: &PathState) -> Result<CMat> {
    let mut out: Option<CMat> = None;
    for (p, a) in &state.amplitudes {
        if *a == ZERO {
            continue;
        }
        let term = path_operator(p)? * *a;
        out = Some(match out {
            Some(acc) => acc + term,
            None => term,
        });
    }
    out.ok_or_else(|| Error::Validation("path state has no nonzero amplitude".into()))
}

/// `ι ρ ι†` on `Q_μ ⊗ (C^d)^{⊗k} ⊗ (C̄^d)^{⊗l}`.
pub fn path_embedding(state: &PathState, input: &CMat) -> Result<CMat> {
    state.validate()?;
    let iota = embedding_isometry(state)?;
    if input.nrows() != iota.ncols() || input.ncols() != iota.ncols() {
        return Err(Error::Shape(format!(
            "input is {}x{}, Q_{} has dimension {}",
            input.nrows(),
            input.ncols(),
            state.end(),
            iota.ncols()
        )));
    }
    Ok(&iota * input * iota.adjoint())
}
