use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_square, Channel, ChoiMatrix, Superop};
use crate::combinatorics::{dim_gl_irrep, lr_coeff, LrQuery, Staircase};
use crate::error::{Error, Result};
use crate::rep_kernel::linalg::{c, isometry_defect, kron, ptrace_second, CMat};
use crate::rep_kernel::general_cg_canonical;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IrrepForm {
    Choi,
    EmbedTrace,
    Sandwich,
}

impl FromStr for IrrepForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "choi" => Ok(IrrepForm::Choi),
            "embed-trace" => Ok(IrrepForm::EmbedTrace),
            "sandwich" => Ok(IrrepForm::Sandwich),
            other => Err(Error::Parse(format!("unknown irrep channel form {other:?}"))),
        }
    }
}

/// `Φ_{λ,μ}^{γ,ψ}: Q_λ → Q_μ` in the canonical bases.
#[derive(Clone, Debug)]
pub struct IrrepChannel {
    pub lambda: Staircase,
    pub mu: Staircase,
    pub gamma: Staircase,
    pub form: IrrepForm,
    superop: Superop,
}

impl Channel for IrrepChannel {
    fn in_dim(&self) -> usize {
        self.superop.in_dim
    }

    fn out_dim(&self) -> usize {
        self.superop.out_dim
    }

    fn apply(&self, rho: &CMat) -> Result<CMat> {
        check_square(rho, self.in_dim())?;
        self.superop.apply(rho)
    }

    fn superop(&self) -> Result<Superop> {
        Ok(self.superop.clone())
    }
}

/// A three-index tensor `t[i][j][k]` stored flat.
struct Tensor3 {
    dims: [usize; 3],
    data: Vec<Complex64>,
}

impl Tensor3 {
    fn from_fn(dims: [usize; 3], f: impl Fn(usize, usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dims.iter().product());
        for i in 0..dims[0] {
            for j in 0..dims[1] {
                for k in 0..dims[2] {
                    data.push(f(i, j, k));
                }
            }
        }
        Tensor3 { dims, data }
    }

    fn at(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.data[(i * self.dims[1] + j) * self.dims[2] + k]
    }
}

/// Invariant tensors `T1_j[a,b,c]` in `Q̄_λ ⊗ Q_μ ⊗ Q̄_γ`, from the rows of the `(γ, j)` blocks of `Q̄_λ ⊗ Q_μ`.
fn choi_tensors(lambda: &Staircase, mu: &Staircase, gamma: &Staircase) -> Result<Vec<Tensor3>> {
    let cg = general_cg_canonical(lambda, true, mu, false)?;
    let (dl, dm, dg) = dims(lambda, mu, gamma);
    Ok((0..cg.multiplicity_of(gamma))
        .map(|j| {
            let rows = cg.block_rows(cg.block(gamma, j).unwrap());
            Tensor3::from_fn([dl, dm, dg], |a, b, cc| rows[(cc, a * dm + b)].conj())
        })
        .collect())
}

fn dims(lambda: &Staircase, mu: &Staircase, gamma: &Staircase) -> (usize, usize, usize) {
    (dim_gl_irrep(lambda) as usize, dim_gl_irrep(mu) as usize, dim_gl_irrep(gamma) as usize)
}

fn check_alignment(overlap: &CMat, what: &str) -> Result<()> {
    let defect = isometry_defect(overlap);
    if defect > 1e-8 {
        return Err(Error::Internal(format!("{what} multiplicity bases are not related by a unitary ({defect:.2e})")));
    }
    Ok(())
}

/// Builds `Φ_{λ,μ}^{γ,ψ}` for `γ ∈ λ̄ ⊗ μ` and a unit `ψ ∈ C^{c_{λ̄,μ}^γ}`.
///
/// Each form uses its own Clebsch–Gordan transform; the multiplicity bases of
/// the embed-trace and sandwich forms are matched to the Choi form through the
/// overlaps of the corresponding invariant tensors.
pub fn irrep_channel(
    lambda: &Staircase,
    mu: &Staircase,
    gamma: &Staircase,
    psi: &[Complex64],
    form: IrrepForm,
) -> Result<IrrepChannel> {
    if lambda.d() != mu.d() || mu.d() != gamma.d() {
        return Err(Error::Validation("λ, μ, γ must share d".into()));
    }
    let mult = lr_coeff(&LrQuery::new(lambda.dual(), mu.clone(), gamma.clone()))? as usize;
    if mult == 0 {
        return Err(Error::Spec(format!("γ = {gamma} is not in {} ⊗ {mu}", lambda.dual())));
    }
    if psi.len() != mult {
        return Err(Error::Validation(format!("ψ has length {}, multiplicity is {mult}", psi.len())));
    }
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Validation(format!("ψ has norm {norm}")));
    }
    let (dl, dm, dg) = dims(lambda, mu, gamma);
    let t1 = choi_tensors(lambda, mu, gamma)?;
    let superop = match form {
        IrrepForm::Choi => {
            let mut v = CMat::zeros(dl * dm, dg);
            for (t, &p) in t1.iter().zip(psi) {
                v += CMat::from_fn(dl * dm, dg, |r, cc| t.at(r / dm, r % dm, cc)) * p;
            }
            let choi = &v * v.adjoint() * c(dl as f64 / dg as f64, 0.0);
            Superop::from_choi(&ChoiMatrix::new(choi, dl, dm)?)
        }
        IrrepForm::EmbedTrace => {
            // ι_k: Q_λ → Q_μ ⊗ Q̄_γ with T1_j[a,b,c] = s Σ_k A_jk T2_k[b,c,a].
            let cg = general_cg_canonical(mu, false, gamma, true)?;
            let iotas: Vec<CMat> = (0..cg.multiplicity_of(lambda))
                .map(|k| cg.block_rows(cg.block(lambda, k).unwrap()).adjoint())
                .collect();
            if iotas.len() != mult {
                return Err(Error::Internal(format!("{lambda} appears {} times in {mu} ⊗ {}", iotas.len(), gamma.dual())));
            }
            let s = (dg as f64 / dl as f64).sqrt();
            let a = CMat::from_fn(mult, mult, |j, k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for x in 0..dl {
                    for b in 0..dm {
                        for cc in 0..dg {
                            acc += iotas[k][(b * dg + cc, x)].conj() * t1[j].at(x, b, cc);
                        }
                    }
                }
                acc / (s * dl as f64)
            });
            check_alignment(&a, "embed-trace")?;
            let mut iota = CMat::zeros(dm * dg, dl);
            for (k, ik) in iotas.iter().enumerate() {
                let phi: Complex64 = (0..mult).map(|j| psi[j] * a[(j, k)]).sum();
                iota += ik * phi;
            }
            Superop::from_fn(dl, dm, |x| Ok(ptrace_second(&(&iota * x * iota.adjoint()), dm, dg)))?
        }
        IrrepForm::Sandwich => {
            // ι_k: Q_μ → Q_λ ⊗ Q_γ with T1_j[a,b,c] = s' Σ_k B_jk conj(T3_k[a,c,b]).
            let cg = general_cg_canonical(lambda, false, gamma, false)?;
            let iotas: Vec<CMat> = (0..cg.multiplicity_of(mu))
                .map(|k| cg.block_rows(cg.block(mu, k).unwrap()).adjoint())
                .collect();
            if iotas.len() != mult {
                return Err(Error::Internal(format!("{mu} appears {} times in {lambda} ⊗ {gamma}", iotas.len())));
            }
            let s = (dg as f64 / dm as f64).sqrt();
            let b = CMat::from_fn(mult, mult, |j, k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for x in 0..dl {
                    for y in 0..dm {
                        for cc in 0..dg {
                            acc += iotas[k][(x * dg + cc, y)] * t1[j].at(x, y, cc);
                        }
                    }
                }
                acc / (s * dm as f64)
            });
            check_alignment(&b, "sandwich")?;
            let mut iota = CMat::zeros(dl * dg, dm);
            for (k, ik) in iotas.iter().enumerate() {
                let phi: Complex64 = (0..mult).map(|j| psi[j] * b[(j, k)]).sum();
                iota += ik * phi.conj();
            }
            let one = crate::rep_kernel::linalg::eye(dg);
            let scale = c(dl as f64 / dm as f64, 0.0);
            Superop::from_fn(dl, dm, |x| Ok(iota.adjoint() * kron(x, &one) * &iota * scale))?
        }
    };
    Ok(IrrepChannel { lambda: lambda.clone(), mu: mu.clone(), gamma: gamma.clone(), form, superop })
}
