//! Choi matrices, Liouville superoperators and the symmetric channel classes.

mod extremal;
mod irrep;
mod uss;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use extremal::{
    block_decompose_choi, block_decompose_choi_tol, enumerate_extremal_specs, enumerate_extremal_triples,
    equivariant_choi, extremal_choi, factored_channel, Assignment, BlockDecomposition, BlockKey, ExtremalSpec,
    ExtremalTriple,
};
pub use irrep::{irrep_channel, IrrepChannel, IrrepForm};
pub use uss::{dual_uss_channel, uss_channel, DualUssChannel, UssChannel};

use crate::error::{Error, Result};
use crate::rep_kernel::linalg::{eye, frobenius, kron, kron_power, min_eigenvalue, ptrace_second, CMat, ZERO};
use crate::rep_kernel::permutation_operator;
use crate::verify::haar_unitary;

/// A linear map on matrices, given by its action.
pub trait Channel {
    fn in_dim(&self) -> usize;
    fn out_dim(&self) -> usize;
    fn apply(&self, rho: &CMat) -> Result<CMat>;

    fn superop(&self) -> Result<Superop> {
        Superop::from_fn(self.in_dim(), self.out_dim(), |x| self.apply(x))
    }

    fn choi(&self) -> Result<ChoiMatrix> {
        Ok(self.superop()?.to_choi())
    }
}

fn check_square(rho: &CMat, dim: usize) -> Result<()> {
    if rho.nrows() != dim || rho.ncols() != dim {
        return Err(Error::Shape(format!("expected {dim}x{dim} input, got {}x{}", rho.nrows(), rho.ncols())));
    }
    Ok(())
}

/// Liouville matrix `S` with `vec(Φ(X)) = S vec(X)` in row-major vectorization.
#[derive(Clone, Debug)]
pub struct Superop {
    pub matrix: CMat,
    pub in_dim: usize,
    pub out_dim: usize,
}

impl Superop {
    pub fn from_fn<F>(in_dim: usize, out_dim: usize, f: F) -> Result<Self>
    where
        F: Fn(&CMat) -> Result<CMat>,
    {
        let mut matrix = CMat::zeros(out_dim * out_dim, in_dim * in_dim);
        let mut unit = CMat::zeros(in_dim, in_dim);
        for i in 0..in_dim {
            for j in 0..in_dim {
                unit[(i, j)] = crate::rep_kernel::linalg::ONE;
                let y = f(&unit)?;
                unit[(i, j)] = ZERO;
                if y.shape() != (out_dim, out_dim) {
                    return Err(Error::Shape(format!("map returned {:?}, expected {out_dim}x{out_dim}", y.shape())));
                }
                for a in 0..out_dim {
                    for b in 0..out_dim {
                        matrix[(a * out_dim + b, i * in_dim + j)] = y[(a, b)];
                    }
                }
            }
        }
        Ok(Superop { matrix, in_dim, out_dim })
    }

    pub fn identity(dim: usize) -> Self {
        Superop { matrix: eye(dim * dim), in_dim: dim, out_dim: dim }
    }

    /// `X ↦ V X V†`.
    pub fn conjugation(v: &CMat) -> Self {
        Superop { matrix: kron(v, &v.map(|z| z.conj())), in_dim: v.ncols(), out_dim: v.nrows() }
    }

    /// `self ∘ before`.
    pub fn after(&self, before: &Superop) -> Result<Superop> {
        if before.out_dim != self.in_dim {
            return Err(Error::Shape(format!("cannot compose {} -> {} after {} -> {}", self.in_dim, self.out_dim, before.in_dim, before.out_dim)));
        }
        Ok(Superop { matrix: &self.matrix * &before.matrix, in_dim: before.in_dim, out_dim: self.out_dim })
    }

    pub fn from_choi(choi: &ChoiMatrix) -> Self {
        let (din, dout) = (choi.in_dim, choi.out_dim);
        let c = &choi.matrix;
        let matrix = CMat::from_fn(dout * dout, din * din, |r, col| {
            let (a, b) = (r / dout, r % dout);
            let (i, j) = (col / din, col % din);
            c[(i * dout + a, j * dout + b)]
        });
        Superop { matrix, in_dim: din, out_dim: dout }
    }

    pub fn to_choi(&self) -> ChoiMatrix {
        let (din, dout) = (self.in_dim, self.out_dim);
        let s = &self.matrix;
        let matrix = CMat::from_fn(din * dout, din * dout, |r, col| {
            let (i, a) = (r / dout, r % dout);
            let (j, b) = (col / dout, col % dout);
            s[(a * dout + b, i * din + j)]
        });
        ChoiMatrix { matrix, in_dim: din, out_dim: dout, sites: None }
    }
}

impl Channel for Superop {
    fn in_dim(&self) -> usize {
        self.in_dim
    }

    fn out_dim(&self) -> usize {
        self.out_dim
    }

    fn apply(&self, rho: &CMat) -> Result<CMat> {
        check_square(rho, self.in_dim)?;
        let v = crate::rep_kernel::vec(rho);
        crate::rep_kernel::unvec(&(&self.matrix * v), self.out_dim, self.out_dim)
    }

    fn superop(&self) -> Result<Superop> {
        Ok(self.clone())
    }
}

/// Local dimension and site counts of a channel from `m` to `n` qudits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sites {
    pub m: usize,
    pub n: usize,
    pub d: usize,
}

/// `C = Σ |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`, input factor first.
#[derive(Clone, Debug)]
pub struct ChoiMatrix {
    pub matrix: CMat,
    pub in_dim: usize,
    pub out_dim: usize,
    pub sites: Option<Sites>,
}

impl ChoiMatrix {
    pub fn new(matrix: CMat, in_dim: usize, out_dim: usize) -> Result<Self> {
        let n = in_dim * out_dim;
        if matrix.shape() != (n, n) {
            return Err(Error::Shape(format!("Choi matrix must be {n}x{n}, got {:?}", matrix.shape())));
        }
        Ok(ChoiMatrix { matrix, in_dim, out_dim, sites: None })
    }

    pub fn with_sites(mut self, m: usize, n: usize, d: usize) -> Result<Self> {
        if d.pow(m as u32) != self.in_dim || d.pow(n as u32) != self.out_dim {
            return Err(Error::Shape(format!("dimensions {}→{} do not match m={m}, n={n}, d={d}", self.in_dim, self.out_dim)));
        }
        self.sites = Some(Sites { m, n, d });
        Ok(self)
    }

    pub fn identity(dim: usize) -> Self {
        Superop::identity(dim).to_choi()
    }

    /// `ρ ↦ tr(ρ) 1/out`.
    pub fn depolarizing(in_dim: usize, out_dim: usize) -> Self {
        let matrix = eye(in_dim * out_dim) / crate::rep_kernel::linalg::c(out_dim as f64, 0.0);
        ChoiMatrix { matrix, in_dim, out_dim, sites: None }
    }

    pub fn hermiticity_defect(&self) -> f64 {
        frobenius(&(&self.matrix - self.matrix.adjoint()))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.matrix)
    }

    /// `‖tr_out C − 1_in‖_F`.
    pub fn tp_defect(&self) -> f64 {
        frobenius(&(ptrace_second(&self.matrix, self.in_dim, self.out_dim) - eye(self.in_dim)))
    }

    pub fn is_cptp(&self, tol: f64) -> bool {
        self.hermiticity_defect() < tol && self.min_eigenvalue() > -tol && self.tp_defect() < tol
    }

    pub fn distance(&self, other: &ChoiMatrix) -> f64 {
        frobenius(&(&self.matrix - &other.matrix))
    }
}

impl Channel for ChoiMatrix {
    fn in_dim(&self) -> usize {
        self.in_dim
    }

    fn out_dim(&self) -> usize {
        self.out_dim
    }

    fn apply(&self, rho: &CMat) -> Result<CMat> {
        apply_channel(self, rho)
    }

    fn superop(&self) -> Result<Superop> {
        Ok(Superop::from_choi(self))
    }

    fn choi(&self) -> Result<ChoiMatrix> {
        Ok(self.clone())
    }
}

/// `Φ(ρ) = tr_in[C (ρᵀ ⊗ 1)]`.
pub fn apply_channel(choi: &ChoiMatrix, rho: &CMat) -> Result<CMat> {
    check_square(rho, choi.in_dim)?;
    let dout = choi.out_dim;
    let mut out = CMat::zeros(dout, dout);
    for i in 0..choi.in_dim {
        for j in 0..choi.in_dim {
            let r = rho[(i, j)];
            if r != ZERO {
                out += choi.matrix.view((i * dout, j * dout), (dout, dout)) * r;
            }
        }
    }
    Ok(out)
}

/// Commutation residuals of a Choi matrix with the symmetry group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub trials: usize,
    pub unitary_residual: f64,
    pub permutation_residual: f64,
}

impl SymmetryReport {
    pub fn worst(&self) -> f64 {
        self.unitary_residual.max(self.permutation_residual)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.worst() < tol
    }
}

fn commutator_norm(a: &CMat, b: &CMat) -> f64 {
    frobenius(&(a * b - b * a))
}

/// Tests `[Ū^{⊗m} ⊗ U^{⊗n}, C] = 0` on `trials` Haar unitaries and `[σ̄ ⊗ τ, C] = 0`
/// on adjacent transpositions of inputs and outputs.
pub fn check_symmetries<R: Rng + ?Sized>(choi: &ChoiMatrix, trials: usize, rng: &mut R) -> Result<SymmetryReport> {
    let Sites { m, n, d } = choi.sites.ok_or_else(|| Error::Shape("Choi matrix has no site structure".into()))?;
    let mut unitary_residual: f64 = 0.0;
    for _ in 0..trials {
        let u = haar_unitary(d, rng);
        let w = kron(&kron_power(&u.map(|z| z.conj()), m), &kron_power(&u, n));
        unitary_residual = unitary_residual.max(commutator_norm(&w, &choi.matrix));
    }
    let mut permutation_residual: f64 = 0.0;
    let (din, dout) = (choi.in_dim, choi.out_dim);
    for (sites, input) in [(m, true), (n, false)] {
        for k in 0..sites.saturating_sub(1) {
            let mut sigma: Vec<usize> = (0..sites).collect();
            sigma.swap(k, k + 1);
            let p = permutation_operator(&sigma, d, 0)?;
            let op = if input { kron(&p, &eye(dout)) } else { kron(&eye(din), &p) };
            permutation_residual = permutation_residual.max(commutator_norm(&op, &choi.matrix));
        }
    }
    Ok(SymmetryReport { trials, unitary_residual, permutation_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep_kernel::linalg::{c, ptrace_first, vec_rm};
    use crate::verify::{random_density, rng_stream};

    fn omega(d: usize) -> CMat {
        let v = vec_rm(&eye(d));
        &v * v.adjoint() / c(d as f64, 0.0)
    }

    #[test]
    fn apply_examples() {
        let mut rng = rng_stream(1, 0);
        let rho = random_density(2, &mut rng);
        let id = ChoiMatrix::identity(2);
        assert!(frobenius(&(apply_channel(&id, &rho).unwrap() - &rho)) < 1e-14);

        let adj = ChoiMatrix::new((eye(4) - omega(2)) * c(2.0 / 3.0, 0.0), 2, 2).unwrap();
        let mut zero = CMat::zeros(2, 2);
        zero[(0, 0)] = c(1.0, 0.0);
        let out = apply_channel(&adj, &zero).unwrap();
        assert!((out[(0, 0)].re - 1.0 / 3.0).abs() < 1e-14 && (out[(1, 1)].re - 2.0 / 3.0).abs() < 1e-14);
        assert!(adj.is_cptp(1e-12));

        let dep = ChoiMatrix::depolarizing(4, 2);
        let out = apply_channel(&dep, &random_density(4, &mut rng)).unwrap();
        assert!(frobenius(&(out - eye(2) / c(2.0, 0.0))) < 1e-14);
        assert!(apply_channel(&dep, &eye(3)).is_err());
    }

    #[test]
    fn superop_choi_round_trip() {
        let mut rng = rng_stream(2, 0);
        let v = crate::verify::gaussian_matrix(3, 2, &mut rng);
        let s = Superop::conjugation(&v);
        let choi = s.to_choi();
        let back = Superop::from_choi(&choi);
        assert!(frobenius(&(back.matrix - &s.matrix)) < 1e-14);
        let rho = random_density(2, &mut rng);
        let want = &v * &rho * v.adjoint();
        assert!(frobenius(&(s.apply(&rho).unwrap() - &want)) < 1e-13);
        assert!(frobenius(&(apply_channel(&choi, &rho).unwrap() - &want)) < 1e-13);
        let f = Superop::from_fn(2, 3, |x| Ok(&v * x * v.adjoint())).unwrap();
        assert!(frobenius(&(f.matrix - s.matrix)) < 1e-14);
    }

    #[test]
    fn symmetry_checks() {
        let mut rng = rng_stream(3, 0);
        let id = ChoiMatrix::identity(2).with_sites(1, 1, 2).unwrap();
        let r = check_symmetries(&id, 5, &mut rng).unwrap();
        assert!(r.passed(1e-12), "{r:?}");

        // ρ ↦ tr_2 ρ ⊗ |0⟩⟨0| is neither permutation invariant nor equivariant.
        let mut fixed = CMat::zeros(2, 2);
        fixed[(0, 0)] = c(1.0, 0.0);
        let bad = Superop::from_fn(4, 4, |x| Ok(kron(&ptrace_second(x, 2, 2), &fixed)))
            .unwrap()
            .to_choi()
            .with_sites(2, 2, 2)
            .unwrap();
        let r = check_symmetries(&bad, 3, &mut rng).unwrap();
        assert!(r.permutation_residual > 0.1 && r.unitary_residual > 0.1);

        let swap_trace = Superop::from_fn(4, 2, |x| Ok(ptrace_first(x, 2, 2))).unwrap().to_choi().with_sites(2, 1, 2).unwrap();
        let r = check_symmetries(&swap_trace, 3, &mut rng).unwrap();
        assert!(r.unitary_residual < 1e-12 && r.permutation_residual > 0.1);
    }
}
