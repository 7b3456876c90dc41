//! State symmetrization, symmetric cloning and purity amplification, each run
//! through the streamed executor, with dense reference implementations.

use serde::{Deserialize, Serialize};

use crate::channels::{extremal_choi, ChoiMatrix, ExtremalSpec, Superop};
use crate::combinatorics::sym_dim;
use crate::error::{Error, Result};
use crate::io::MatrixFile;
use crate::rep_kernel::linalg::{c, eye, frobenius, kron, kron_power, min_eigenvalue, CMat};
use crate::streaming::{streamed_apply, ResourceLedger, StreamOptions};

#[derive(Clone, Debug)]
pub struct AppResult {
    pub output: CMat,
    pub ledger: ResourceLedger,
    pub fidelity: Option<f64>,
}

/// Serializable form of [`AppResult`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AppRecord {
    pub output: MatrixFile,
    pub ledger: ResourceLedger,
    pub fidelity: Option<f64>,
}

impl AppResult {
    pub fn record(&self) -> AppRecord {
        AppRecord { output: MatrixFile::from_matrix(&self.output), ledger: self.ledger.clone(), fidelity: self.fidelity }
    }
}

fn check_density(rho: &CMat, dim: usize, what: &str) -> Result<()> {
    if rho.shape() != (dim, dim) {
        return Err(Error::Shape(format!("{what} must be {dim}x{dim}, got {:?}", rho.shape())));
    }
    if frobenius(&(rho - rho.adjoint())) > 1e-10 || (rho.trace().re - 1.0).abs() > 1e-10 || min_eigenvalue(rho) < -1e-10 {
        return Err(Error::Validation(format!("{what} is not a density matrix")));
    }
    Ok(())
}

fn run(spec: &ExtremalSpec, rho: &CMat, opts: StreamOptions) -> Result<(CMat, ResourceLedger)> {
    let out = streamed_apply(spec, rho, opts)?;
    Ok((out.output, out.ledger))
}

/// All permutations of `0..m` in lexicographic order.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..m).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..m).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..m).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Basis index permutation `x ↦ σ·x` on `(C^d)^{⊗m}`.
fn index_map(sigma: &[usize], d: usize) -> Vec<usize> {
    let m = sigma.len();
    (0..d.pow(m as u32))
        .map(|x| {
            let mut digits = vec![0; m];
            let mut y = x;
            for k in (0..m).rev() {
                digits[k] = y % d;
                y /= d;
            }
            let mut moved = vec![0; m];
            for (s, &t) in sigma.iter().enumerate() {
                moved[t] = digits[s];
            }
            moved.iter().fold(0, |acc, &v| acc * d + v)
        })
        .collect()
}

/// `(1/m!) Σ_σ σ ρ σ†` by reindexing.
pub fn symmetrization_oracle(rho: &CMat, m: usize, d: usize) -> CMat {
    let dim = d.pow(m as u32);
    let perms = permutations(m);
    let mut out = CMat::zeros(dim, dim);
    for sigma in &perms {
        let map = index_map(sigma, d);
        for i in 0..dim {
            for j in 0..dim {
                out[(map[i], map[j])] += rho[(i, j)];
            }
        }
    }
    out / c(perms.len() as f64, 0.0)
}

/// Projector onto the symmetric subspace of `(C^d)^{⊗n}`.
pub fn sym_projector(n: usize, d: usize) -> CMat {
    let dim = d.pow(n as u32);
    let perms = permutations(n);
    let mut p = CMat::zeros(dim, dim);
    for sigma in &perms {
        for (x, y) in index_map(sigma, d).into_iter().enumerate() {
            p[(y, x)] += c(1.0, 0.0);
        }
    }
    p / c(perms.len() as f64, 0.0)
}

/// `(d[m]/d[n]) Π_sym^n (ρ ⊗ 1^{⊗(n−m)}) Π_sym^n`.
pub fn werner_clone_oracle(rho: &CMat, m: usize, n: usize, d: usize) -> CMat {
    let p = sym_projector(n, d);
    let ratio = sym_dim(m, d) as f64 / sym_dim(n, d) as f64;
    &p * kron(rho, &eye(d.pow((n - m) as u32))) * &p * c(ratio, 0.0)
}

/// `(1−α) ψ + (α/d) 1`.
pub fn depolarized(psi: &CMat, alpha: f64) -> CMat {
    let d = psi.nrows();
    psi * c(1.0 - alpha, 0.0) + eye(d) * c(alpha / d as f64, 0.0)
}

fn fidelity_with(target: &CMat, out: &CMat) -> f64 {
    (target * out).trace().re
}

pub fn symmetrize(rho: &CMat, m: usize, d: usize, opts: StreamOptions) -> Result<AppResult> {
    check_density(rho, d.pow(m as u32), "input")?;
    let (output, ledger) = run(&ExtremalSpec::symmetrization(m, d)?, rho, opts)?;
    Ok(AppResult { output, ledger, fidelity: None })
}

/// Clones a state supported on the symmetric subspace of `(C^d)^{⊗m}`.
pub fn clone(rho: &CMat, m: usize, n: usize, d: usize, opts: StreamOptions) -> Result<AppResult> {
    if m == 0 || m >= n {
        return Err(Error::Validation(format!("cloning needs 0 < m < n, got m={m}, n={n}")));
    }
    check_density(rho, d.pow(m as u32), "input")?;
    let p = sym_projector(m, d);
    let residual = frobenius(&(&p * rho * &p - rho));
    if residual > 1e-8 {
        return Err(Error::Validation(format!("input is not supported on the symmetric subspace (residual {residual:.2e})")));
    }
    let (output, ledger) = run(&ExtremalSpec::cloning(m, n, d)?, rho, opts)?;
    Ok(AppResult { output, ledger, fidelity: None })
}

/// Clones `ψ^{⊗m}` and reports `tr[ψ^{⊗n} Φ(ψ^{⊗m})]`.
pub fn clone_pure(psi: &CMat, m: usize, n: usize, opts: StreamOptions) -> Result<AppResult> {
    let d = psi.nrows();
    check_density(psi, d, "ψ")?;
    let mut res = clone(&kron_power(psi, m), m, n, d, opts)?;
    res.fidelity = Some(fidelity_with(&kron_power(psi, n), &res.output));
    Ok(res)
}

pub fn purity_amplify(rho: &CMat, m: usize, d: usize, opts: StreamOptions) -> Result<AppResult> {
    check_density(rho, d.pow(m as u32), "input")?;
    let (output, ledger) = run(&ExtremalSpec::purity_amplification(m, d)?, rho, opts)?;
    Ok(AppResult { output, ledger, fidelity: None })
}

/// Purifies `m` copies of `(1−α)ψ + (α/d)1` and reports `⟨ψ|out|ψ⟩`.
pub fn purity_amplify_depolarized(psi: &CMat, alpha: f64, m: usize, opts: StreamOptions) -> Result<AppResult> {
    let d = psi.nrows();
    check_density(psi, d, "ψ")?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Validation(format!("α = {alpha} outside [0, 1]")));
    }
    let mut res = purity_amplify(&kron_power(&depolarized(psi, alpha), m), m, d, opts)?;
    res.fidelity = Some(fidelity_with(psi, &res.output));
    Ok(res)
}

/// Choi matrix of the streamed purity amplification channel, for comparison
/// with the block construction.
pub fn purity_amplification_choi(m: usize, d: usize) -> Result<(ChoiMatrix, ChoiMatrix)> {
    let spec = ExtremalSpec::purity_amplification(m, d)?;
    let streamed = Superop::from_fn(d.pow(m as u32), d, |x| Ok(streamed_apply(&spec, x, StreamOptions::exact())?.output))?;
    Ok((streamed.to_choi(), extremal_choi(&spec)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::check_symmetries;
    use crate::combinatorics::{first_descent_removal, Staircase};
    use crate::rep_kernel::linalg::{ptrace_first, ptrace_second, ONE};
    use crate::verify::{random_density, random_pure_state, rng_stream};

    fn ket(bits: &[usize], d: usize) -> CMat {
        let idx = bits.iter().fold(0, |a, &b| a * d + b);
        let mut v = CMat::zeros(d.pow(bits.len() as u32), 1);
        v[(idx, 0)] = ONE;
        v
    }

    #[test]
    fn permutations_and_projector() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0).len(), 1);
        let p = sym_projector(3, 2);
        assert!(frobenius(&(&p * &p - &p)) < 1e-12);
        assert!((p.trace().re - 4.0).abs() < 1e-12);
    }

    #[test]
    fn two_site_symmetrization() {
        let v = ket(&[0, 1], 2);
        let rho = &v * v.adjoint();
        let out = symmetrize(&rho, 2, 2, StreamOptions::exact()).unwrap().output;
        let swapped = ket(&[1, 0], 2);
        let want = (&rho + &swapped * swapped.adjoint()) * c(0.5, 0.0);
        assert!(frobenius(&(out - want)) < 1e-12);
    }

    #[test]
    fn symmetrize_matches_oracle_and_fixes_symmetric_states() {
        let mut rng = rng_stream(11, 0);
        let rho = random_density(16, &mut rng);
        let res = symmetrize(&rho, 4, 2, StreamOptions::exact()).unwrap();
        assert!(frobenius(&(&res.output - symmetrization_oracle(&rho, 4, 2))) < 1e-9);
        assert!(res.ledger.peak_live_dim < 16);
        let sym = res.output.clone();
        let again = symmetrize(&sym, 4, 2, StreamOptions::exact()).unwrap().output;
        assert!(frobenius(&(again - sym)) < 1e-10);
    }

    #[test]
    fn cloning_fidelities() {
        let mut rng = rng_stream(12, 0);
        for (m, n, want) in [(1, 2, 2.0 / 3.0), (2, 3, 0.75), (1, 3, 0.5)] {
            let psi = random_pure_state(2, &mut rng);
            let res = clone_pure(&psi, m, n, StreamOptions::exact()).unwrap();
            assert!((res.fidelity.unwrap() - want).abs() < 1e-10, "{m}→{n}");
            let oracle = werner_clone_oracle(&kron_power(&psi, m), m, n, 2);
            assert!(frobenius(&(&res.output - oracle)) < 1e-8);
        }
        let v = ket(&[0, 1], 2);
        assert!(clone(&(&v * v.adjoint()), 2, 3, 2, StreamOptions::exact()).is_err());
        assert!(clone(&random_pure_state(2, &mut rng), 2, 2, 2, StreamOptions::exact()).is_err());
    }

    #[test]
    fn purity_amplification_properties() {
        assert_eq!(
            first_descent_removal(&Staircase::new(vec![4, 2, 1]).unwrap()).unwrap(),
            Staircase::new(vec![3, 2, 1]).unwrap()
        );
        let mut rng = rng_stream(13, 0);
        let rho = random_density(2, &mut rng);
        let out = purity_amplify(&rho, 1, 2, StreamOptions::exact()).unwrap().output;
        assert!(frobenius(&(out - &rho)) < 1e-12);

        let (streamed, direct) = purity_amplification_choi(3, 2).unwrap();
        assert!(streamed.distance(&direct) < 1e-8);
        assert!(check_symmetries(&direct, 5, &mut rng).unwrap().passed(1e-8));

        // Two copies: the γ_min channel is the averaged partial trace, so there is no gain.
        for d in [2, 3] {
            let rho = random_density(d * d, &mut rng);
            let out = purity_amplify(&rho, 2, d, StreamOptions::exact()).unwrap().output;
            let marginal = (ptrace_first(&rho, d, d) + ptrace_second(&rho, d, d)) * c(0.5, 0.0);
            assert!(frobenius(&(out - marginal)) < 1e-12);
        }

        let psi = random_pure_state(2, &mut rng);
        let single = 1.0 - 0.3 + 0.15;
        let f = purity_amplify_depolarized(&psi, 0.3, 3, StreamOptions::exact()).unwrap().fidelity.unwrap();
        assert!(f > single, "{f}");
    }
}
