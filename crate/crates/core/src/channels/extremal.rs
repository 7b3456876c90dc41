use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::irrep::{irrep_channel, IrrepForm};
use super::uss::{dual_uss_channel, uss_channel};
use super::{Channel, ChoiMatrix, Sites, Superop};
use crate::combinatorics::{
    dim_gl_irrep, dim_perm_irrep, enumerate_partitions, first_descent_removal, lr_coeff, lr_product, LrQuery,
    Staircase,
};
use crate::error::{Error, Result};
use crate::rep_kernel::linalg::{c, frobenius, kron, CMat, ONE};
use crate::rep_kernel::{general_cg_canonical, schur_transform, BlockIsometry};

/// `(γ, λ̄, μ)`.
pub type BlockKey = (Staircase, Staircase, Staircase);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assignment {
    pub lambda: Staircase,
    pub mu: Staircase,
    pub gamma: Staircase,
    #[serde(with = "crate::io::complex_vec")]
    pub psi: Vec<Complex64>,
}

/// One `(μ_λ, γ_λ, ψ_λ)` per input label `λ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalSpec {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub assignments: Vec<Assignment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalTriple {
    pub lambda: Staircase,
    pub mu: Staircase,
    pub gamma: Staircase,
    pub mult: u64,
}

fn unit(k: usize, len: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); len];
    v[k] = ONE;
    v
}

impl ExtremalSpec {
    pub fn sites(&self) -> Sites {
        Sites { m: self.m, n: self.n, d: self.d }
    }

    pub fn assignment(&self, lambda: &Staircase) -> Option<&Assignment> {
        self.assignments.iter().find(|a| &a.lambda == lambda)
    }

    pub fn validate(&self) -> Result<()> {
        let (m, n, d) = (self.m, self.n, self.d);
        if d == 0 {
            return Err(Error::Validation("d must be positive".into()));
        }
        let mut want = enumerate_partitions(m, d);
        let mut have: Vec<Staircase> = self.assignments.iter().map(|a| a.lambda.clone()).collect();
        want.sort();
        have.sort();
        if want != have {
            return Err(Error::Validation(format!(
                "spec must assign every partition of {m} with at most {d} rows exactly once"
            )));
        }
        let outputs = enumerate_partitions(n, d);
        for a in &self.assignments {
            if !outputs.contains(&a.mu) {
                return Err(Error::Validation(format!("μ = {} is not a partition of {n} with at most {d} rows", a.mu)));
            }
            if a.gamma.d() != d {
                return Err(Error::Validation(format!("γ = {} has the wrong length", a.gamma)));
            }
            let mult = lr_coeff(&LrQuery::new(a.lambda.dual(), a.mu.clone(), a.gamma.clone()))?;
            if mult == 0 {
                return Err(Error::Spec(format!("γ = {} is not in {} ⊗ {}", a.gamma, a.lambda.dual(), a.mu)));
            }
            if a.psi.len() as u64 != mult {
                return Err(Error::Validation(format!(
                    "ψ for λ = {} has length {}, multiplicity is {mult}",
                    a.lambda,
                    a.psi.len()
                )));
            }
            let norm: f64 = a.psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-10 {
                return Err(Error::Validation(format!("ψ for λ = {} has norm {norm}", a.lambda)));
            }
        }
        Ok(())
    }

    fn build(m: usize, n: usize, d: usize, pick: impl Fn(&Staircase) -> Result<(Staircase, Staircase)>) -> Result<Self> {
        let mut assignments = Vec::new();
        for lambda in enumerate_partitions(m, d) {
            let (mu, gamma) = pick(&lambda)?;
            assignments.push(Assignment { lambda, mu, gamma, psi: vec![ONE] });
        }
        let spec = ExtremalSpec { m, n, d, assignments };
        spec.validate()?;
        Ok(spec)
    }

    /// `μ_λ = λ`, `γ_λ = ∅`: the permutation symmetrization channel.
    pub fn symmetrization(m: usize, d: usize) -> Result<Self> {
        Self::build(m, m, d, |l| Ok((l.clone(), Staircase::zero(d))))
    }

    /// `μ_λ = λ + (n−m) boxes in row 1`, `γ_λ = (n−m, 0, …)`. On the symmetric
    /// sector this is the optimal symmetric cloner.
    pub fn cloning(m: usize, n: usize, d: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::Validation(format!("cloning needs 0 < m < n, got m={m}, n={n}")));
        }
        let extra = (n - m) as i64;
        Self::build(m, n, d, |l| {
            let mut mu = l.entries().to_vec();
            mu[0] += extra;
            Ok((Staircase::new(mu)?, Staircase::from_parts(&[extra], d)?))
        })
    }

    /// `μ_λ = □`, `γ_λ` the dual of `λ` with its first-descent box removed.
    pub fn purity_amplification(m: usize, d: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Validation("purity amplification needs m ≥ 1".into()));
        }
        Self::build(m, 1, d, |l| Ok((Staircase::single_box(d), first_descent_removal(l)?.dual())))
    }

    /// `(γ, λ̄, μ) ↦ |ψ⟩⟨ψ|`.
    pub fn blocks(&self) -> BTreeMap<BlockKey, CMat> {
        self.assignments
            .iter()
            .map(|a| {
                let v = CMat::from_column_slice(a.psi.len(), 1, &a.psi);
                ((a.gamma.clone(), a.lambda.dual(), a.mu.clone()), &v * v.adjoint())
            })
            .collect()
    }
}

/// All `(λ, μ, γ)` with `λ ⊢_d m`, `μ ⊢_d n` and `c_{λ̄,μ}^γ ≥ 1`.
pub fn enumerate_extremal_triples(m: usize, n: usize, d: usize) -> Result<Vec<ExtremalTriple>> {
    let mut out = Vec::new();
    for lambda in enumerate_partitions(m, d) {
        for mu in enumerate_partitions(n, d) {
            for (gamma, mult) in lr_product(&lambda.dual(), &mu)? {
                out.push(ExtremalTriple { lambda: lambda.clone(), mu: mu.clone(), gamma, mult });
            }
        }
    }
    Ok(out)
}

/// Every extremal spec whose `ψ_λ` are standard basis vectors of the multiplicity spaces.
pub fn enumerate_extremal_specs(m: usize, n: usize, d: usize) -> Result<Vec<ExtremalSpec>> {
    let triples = enumerate_extremal_triples(m, n, d)?;
    let mut specs = vec![Vec::<Assignment>::new()];
    for lambda in enumerate_partitions(m, d) {
        let options: Vec<Assignment> = triples
            .iter()
            .filter(|t| t.lambda == lambda)
            .flat_map(|t| {
                (0..t.mult as usize).map(move |k| Assignment {
                    lambda: t.lambda.clone(),
                    mu: t.mu.clone(),
                    gamma: t.gamma.clone(),
                    psi: unit(k, t.mult as usize),
                })
            })
            .collect();
        specs = specs
            .into_iter()
            .flat_map(|partial| {
                options.iter().map(move |o| {
                    let mut p = partial.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect();
    }
    Ok(specs.into_iter().map(|assignments| ExtremalSpec { m, n, d, assignments }).collect())
}

/// Rows of `conj(U_Sch^m) ⊗ U_Sch^n` belonging to `P̄_λ ⊗ Q̄_λ ⊗ P_μ ⊗ Q_μ`, one matrix per path pair.
fn sector_rows(sites: Sites, lambda: &Staircase, mu: &Staircase) -> Result<Vec<CMat>> {
    let sm = schur_transform(sites.m, 0, sites.d)?;
    let sn = schur_transform(sites.n, 0, sites.d)?;
    let rows_of = |iso: &BlockIsometry, label: &Staircase| -> Vec<CMat> {
        iso.layout.iter().filter(|b| &b.label == label).map(|b| iso.block_rows(b)).collect()
    };
    let left: Vec<CMat> = rows_of(&sm.iso, lambda).into_iter().map(|r| r.map(|z| z.conj())).collect();
    let right = rows_of(&sn.iso, mu);
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in &left {
        for r in &right {
            out.push(kron(l, r));
        }
    }
    Ok(out)
}

fn check_sites(sites: Sites) -> Result<()> {
    let total = (sites.d as u128).pow((sites.m + sites.n) as u32);
    if total > crate::rep_kernel::dense_limit() as u128 {
        return Err(Error::Resource(format!("d^(m+n) = {total} exceeds the dense limit")));
    }
    Ok(())
}

/// `I† [⊕ 1_{P̄_λ} ⊗ (1/dim P_μ) 1_{P_μ} ⊗ (dim Q_λ / dim Q_γ) 1_{Q_γ} ⊗ M_{γ,λ̄,μ}] I`.
pub fn equivariant_choi(sites: Sites, blocks: &BTreeMap<BlockKey, CMat>) -> Result<ChoiMatrix> {
    check_sites(sites)?;
    let din = sites.d.pow(sites.m as u32);
    let dout = sites.d.pow(sites.n as u32);
    let mut choi = CMat::zeros(din * dout, din * dout);
    for ((gamma, lambda_bar, mu), mblock) in blocks {
        let lambda = lambda_bar.dual();
        let cg = general_cg_canonical(&lambda, true, mu, false)?;
        let mult = cg.multiplicity_of(gamma);
        if mult == 0 || mblock.shape() != (mult, mult) {
            return Err(Error::Spec(format!("block ({gamma}, {lambda_bar}, {mu}) does not match multiplicity {mult}")));
        }
        let factor = dim_gl_irrep(&lambda) as f64 / (dim_perm_irrep(mu)? as f64 * dim_gl_irrep(gamma) as f64);
        let cg_rows: Vec<CMat> = (0..mult).map(|j| cg.block_rows(cg.block(gamma, j).unwrap())).collect();
        for pair in sector_rows(sites, &lambda, mu)? {
            let ys: Vec<CMat> = cg_rows.iter().map(|g| g * &pair).collect();
            for (j, yj) in ys.iter().enumerate() {
                for (k, yk) in ys.iter().enumerate() {
                    let w = mblock[(j, k)] * factor;
                    if w.norm() > 0.0 {
                        choi += yj.adjoint() * yk * w;
                    }
                }
            }
        }
    }
    ChoiMatrix::new(choi, din, dout)?.with_sites(sites.m, sites.n, sites.d)
}

pub fn extremal_choi(spec: &ExtremalSpec) -> Result<ChoiMatrix> {
    spec.validate()?;
    equivariant_choi(spec.sites(), &spec.blocks())
}

#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub blocks: BTreeMap<BlockKey, CMat>,
    /// `‖C − reconstruction‖_F`.
    pub residual: f64,
}

impl BlockDecomposition {
    /// `Σ_{μ,γ} tr M_{γ,λ̄,μ}` for each input label `λ`.
    pub fn lambda_traces(&self) -> BTreeMap<Staircase, f64> {
        let mut out = BTreeMap::new();
        for ((_, lambda_bar, _), m) in &self.blocks {
            *out.entry(lambda_bar.dual()).or_insert(0.0) += m.trace().re;
        }
        out
    }
}

pub fn block_decompose_choi(choi: &ChoiMatrix) -> Result<BlockDecomposition> {
    block_decompose_choi_tol(choi, 1e-8)
}

/// Extracts `M_{γ,λ̄,μ}` by tracing out the identity factors; fails when the
/// off-block part exceeds `tol · max(1, ‖C‖_F)`.
pub fn block_decompose_choi_tol(choi: &ChoiMatrix, tol: f64) -> Result<BlockDecomposition> {
    let sites = choi.sites.ok_or_else(|| Error::Shape("Choi matrix has no site structure".into()))?;
    check_sites(sites)?;
    let mut blocks = BTreeMap::new();
    for lambda in enumerate_partitions(sites.m, sites.d) {
        let norm = 1.0 / (dim_perm_irrep(&lambda)? as f64 * dim_gl_irrep(&lambda) as f64);
        for mu in enumerate_partitions(sites.n, sites.d) {
            let cg = general_cg_canonical(&lambda, true, &mu, false)?;
            let pairs = sector_rows(sites, &lambda, &mu)?;
            for gamma in cg.labels() {
                let mult = cg.multiplicity_of(&gamma);
                let cg_rows: Vec<CMat> = (0..mult).map(|j| cg.block_rows(cg.block(&gamma, j).unwrap())).collect();
                let mut mblock = CMat::zeros(mult, mult);
                for pair in &pairs {
                    let ys: Vec<CMat> = cg_rows.iter().map(|g| g * pair).collect();
                    for (j, yj) in ys.iter().enumerate() {
                        let left = yj * &choi.matrix;
                        for (k, yk) in ys.iter().enumerate() {
                            mblock[(j, k)] += (&left * yk.adjoint()).trace();
                        }
                    }
                }
                blocks.insert((gamma, lambda.dual(), mu.clone()), mblock * c(norm, 0.0));
            }
        }
    }
    let rebuilt = equivariant_choi(sites, &blocks)?;
    let residual = frobenius(&(&choi.matrix - &rebuilt.matrix));
    if residual > tol * frobenius(&choi.matrix).max(1.0) {
        return Err(Error::NotEquivariant(format!("off-block residual {residual:.3e} exceeds tolerance")));
    }
    Ok(BlockDecomposition { blocks, residual })
}

/// `Φ_USS^{n*} ∘ (⊕_λ Φ_{λ,μ_λ}^{γ_λ,ψ_λ}) ∘ Φ_USS^m` as composed dense maps.
pub fn factored_channel(spec: &ExtremalSpec) -> Result<ChoiMatrix> {
    spec.validate()?;
    let (m, n, d) = (spec.m, spec.n, spec.d);
    let uss = uss_channel(m, 0, d)?;
    let dual = dual_uss_channel(n, 0, d)?;
    let mut layers = Vec::new();
    for a in &spec.assignments {
        let src = uss.block(&a.lambda).ok_or_else(|| Error::Internal(format!("no block {}", a.lambda)))?.clone();
        let dst = dual.block(&a.mu).ok_or_else(|| Error::Internal(format!("no block {}", a.mu)))?.clone();
        let ch = irrep_channel(&a.lambda, &a.mu, &a.gamma, &a.psi, IrrepForm::EmbedTrace)?;
        layers.push((src, dst, ch));
    }
    let middle = Superop::from_fn(uss.out_dim(), dual.in_dim(), |x| {
        let mut out = CMat::zeros(dual.in_dim(), dual.in_dim());
        for (src, dst, ch) in &layers {
            let xb = x.view((src.offset, src.offset), (src.size, src.size)).into_owned();
            let y = ch.apply(&xb)?;
            let mut view = out.view_mut((dst.offset, dst.offset), (dst.size, dst.size));
            view += y;
        }
        Ok(out)
    })?;
    let total = dual.superop()?.after(&middle)?.after(&uss.superop()?)?;
    total.to_choi().with_sites(m, n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::check_symmetries;
    use crate::rep_kernel::linalg::{eye, min_eigenvalue, vec_rm};
    use crate::verify::{gaussian_matrix, haar_unitary, random_density, rng_stream};

    fn sc(v: &[i64]) -> Staircase {
        Staircase::new(v.to_vec()).unwrap()
    }

    #[test]
    fn triples_examples() {
        let t = enumerate_extremal_triples(1, 1, 2).unwrap();
        let got: Vec<_> = t.iter().map(|t| (t.gamma.clone(), t.mult)).collect();
        assert_eq!(got, vec![(sc(&[1, -1]), 1), (sc(&[0, 0]), 1)]);
        let t = enumerate_extremal_triples(1, 2, 2).unwrap();
        assert_eq!(t.len(), 3);
        for x in &t {
            assert!(x.mu == sc(&[2, 0]) || x.mu == sc(&[1, 1]));
            assert_eq!(lr_coeff(&LrQuery::new(x.lambda.dual(), x.mu.clone(), x.gamma.clone())).unwrap(), x.mult);
        }
        let t = enumerate_extremal_triples(2, 0, 2).unwrap();
        assert!(t.iter().all(|x| x.mu.is_zero()));
    }

    #[test]
    fn single_qubit_extremal_channels() {
        let specs = enumerate_extremal_specs(1, 1, 2).unwrap();
        assert_eq!(specs.len(), 2);
        let adj = extremal_choi(&specs[0]).unwrap();
        let v = vec_rm(&eye(2));
        let want = (eye(4) - &v * v.adjoint() * c(0.5, 0.0)) * c(2.0 / 3.0, 0.0);
        assert!(frobenius(&(adj.matrix.clone() - want)) < 1e-12);
        let id = extremal_choi(&specs[1]).unwrap();
        assert!(frobenius(&(id.matrix.clone() - ChoiMatrix::identity(2).matrix)) < 1e-12);
        let dec = block_decompose_choi(&id).unwrap();
        for ((gamma, _, _), m) in &dec.blocks {
            let want = if gamma.is_zero() { 1.0 } else { 0.0 };
            assert!((m[(0, 0)].re - want).abs() < 1e-12);
        }
    }

    #[test]
    fn round_trip_and_linearity() {
        for (m, n, d) in [(2, 1, 2), (1, 2, 2), (2, 2, 2)] {
            let specs = enumerate_extremal_specs(m, n, d).unwrap();
            for spec in &specs {
                let choi = extremal_choi(spec).unwrap();
                assert!(choi.is_cptp(1e-9), "{spec:?}");
                let dec = block_decompose_choi(&choi).unwrap();
                let want = spec.blocks();
                for (key, blk) in &dec.blocks {
                    let expected = want.get(key).cloned().unwrap_or_else(|| CMat::zeros(blk.nrows(), blk.ncols()));
                    assert!(frobenius(&(blk - expected)) < 1e-9);
                }
            }
            let (a, b) = (extremal_choi(&specs[0]).unwrap(), extremal_choi(specs.last().unwrap()).unwrap());
            let mix = ChoiMatrix { matrix: (&a.matrix + &b.matrix) * c(0.5, 0.0), ..a.clone() };
            let dec = block_decompose_choi(&mix).unwrap();
            let (da, db) = (block_decompose_choi(&a).unwrap(), block_decompose_choi(&b).unwrap());
            for (key, blk) in &dec.blocks {
                let avg = (&da.blocks[key] + &db.blocks[key]) * c(0.5, 0.0);
                assert!(frobenius(&(blk - avg)) < 1e-10);
            }
        }
    }

    #[test]
    fn twirled_random_channel_decomposes() {
        let mut rng = rng_stream(11, 0);
        let (m, n, d) = (2, 1, 2);
        let (din, dout) = (4, 2);
        let kraus: Vec<CMat> = (0..3).map(|_| gaussian_matrix(dout, din, &mut rng)).collect();
        let s: CMat = kraus.iter().map(|k| k.adjoint() * k).sum();
        let (vals, vecs) = crate::rep_kernel::linalg::eigh(&s);
        let inv_sqrt = &vecs * CMat::from_diagonal(&vals.iter().map(|x| c(x.powf(-0.5), 0.0)).collect::<Vec<_>>().into()) * vecs.adjoint();
        let kraus: Vec<CMat> = kraus.iter().map(|k| k * &inv_sqrt).collect();
        let raw = Superop::from_fn(din, dout, |x| Ok(kraus.iter().map(|k| k * x * k.adjoint()).sum())).unwrap().to_choi();
        assert!(raw.is_cptp(1e-10));
        let swap_in = kron(&crate::rep_kernel::permutation_operator(&[1, 0], d, 0).unwrap(), &eye(dout));
        let mut acc = CMat::zeros(din * dout, din * dout);
        let trials = 200;
        for _ in 0..trials {
            let u = haar_unitary(d, &mut rng);
            let w = kron(&crate::rep_kernel::linalg::kron_power(&u.map(|z| z.conj()), m), &crate::rep_kernel::linalg::kron_power(&u, n));
            let rot = &w * &raw.matrix * w.adjoint();
            acc += &rot + &swap_in * &rot * &swap_in;
        }
        acc /= c(2.0 * trials as f64, 0.0);
        let twirled = ChoiMatrix::new(acc, din, dout).unwrap().with_sites(m, n, d).unwrap();
        let dec = block_decompose_choi_tol(&twirled, 1.0).unwrap();
        for blk in dec.blocks.values() {
            assert!(min_eigenvalue(blk) > -1e-10);
        }
        for t in dec.lambda_traces().values() {
            assert!((t - 1.0).abs() < 1e-3);
        }
        assert!(block_decompose_choi(&twirled).is_err());
    }

    #[test]
    fn spec_constructors_and_validation() {
        let sym = ExtremalSpec::symmetrization(3, 2).unwrap();
        assert_eq!(sym.assignments.len(), 2);
        let cl = ExtremalSpec::cloning(1, 3, 2).unwrap();
        assert_eq!(cl.assignments[0].mu, sc(&[3, 0]));
        assert_eq!(cl.assignments[0].gamma, sc(&[2, 0]));
        let pa = ExtremalSpec::purity_amplification(3, 2).unwrap();
        assert_eq!(pa.assignment(&sc(&[2, 1])).unwrap().gamma, sc(&[-1, -1]));
        assert_eq!(pa.assignment(&sc(&[3, 0])).unwrap().gamma, sc(&[0, -2]));
        assert!(ExtremalSpec::cloning(2, 2, 2).is_err());

        let mut bad = sym.clone();
        bad.assignments[1].gamma = sc(&[2, -2]);
        assert!(matches!(bad.validate(), Err(Error::Spec(_))));
        let mut bad = sym.clone();
        bad.assignments.pop();
        assert!(bad.validate().is_err());
        let mut bad = sym.clone();
        bad.assignments[0].psi[0] = c(0.5, 0.0);
        assert!(bad.validate().is_err());

        let text = crate::io::to_json(&cl).unwrap();
        assert!(text.contains("\"psi\":[[1.0000000000000000e0,0.0]]"));
        assert_eq!(crate::io::from_json::<ExtremalSpec>(&text).unwrap(), cl);
    }

    #[test]
    fn factored_identity_small() {
        let mut rng = rng_stream(12, 0);
        for (m, n, d) in [(1, 1, 2), (2, 1, 2), (1, 2, 2)] {
            for spec in enumerate_extremal_specs(m, n, d).unwrap() {
                let direct = extremal_choi(&spec).unwrap();
                let factored = factored_channel(&spec).unwrap();
                assert!(direct.distance(&factored) < 1e-8, "{spec:?}");
                assert!(check_symmetries(&direct, 3, &mut rng).unwrap().passed(1e-8));
            }
        }
        let rho = random_density(2, &mut rng);
        let id = factored_channel(&ExtremalSpec::symmetrization(1, 2).unwrap()).unwrap();
        assert!(frobenius(&(super::super::apply_channel(&id, &rho).unwrap() - rho)) < 1e-12);
    }
}
