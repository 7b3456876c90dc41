use std::sync::Arc;

use super::{check_square, Channel, Superop};
use crate::combinatorics::{dim_gl_irrep, Staircase};
use crate::error::Result;
use crate::rep_kernel::linalg::{c, kron, CMat};
use crate::rep_kernel::{schur_transform, Block, SchurTransform};

/// Unitary Schur sampling: Schur transform, record `γ`, discard the path register.
/// Output lives on `⊕_γ Q_γ` flattened in canonical label order.
#[derive(Clone, Debug)]
pub struct UssChannel {
    schur: Arc<SchurTransform>,
    layout: Vec<Block>,
}

/// `σ_γ ↦ U_Sch† (1_{P_γ}/dim P_γ ⊗ σ_γ) U_Sch`.
#[derive(Clone, Debug)]
pub struct DualUssChannel(UssChannel);

pub fn uss_channel(m: usize, n: usize, d: usize) -> Result<UssChannel> {
    let schur = schur_transform(m, n, d)?;
    let mut layout = Vec::new();
    let mut offset = 0;
    for gamma in schur.paths.keys() {
        let size = dim_gl_irrep(gamma) as usize;
        layout.push(Block { label: gamma.clone(), multiplicity: 0, offset, size });
        offset += size;
    }
    Ok(UssChannel { schur, layout })
}

pub fn dual_uss_channel(m: usize, n: usize, d: usize) -> Result<DualUssChannel> {
    Ok(DualUssChannel(uss_channel(m, n, d)?))
}

impl UssChannel {
    pub fn layout(&self) -> &[Block] {
        &self.layout
    }

    pub fn block(&self, gamma: &Staircase) -> Option<&Block> {
        self.layout.iter().find(|b| &b.label == gamma)
    }

    pub fn schur(&self) -> &SchurTransform {
        &self.schur
    }

    fn flat_dim(&self) -> usize {
        self.layout.last().map_or(0, |b| b.offset + b.size)
    }

    /// Each Schur block embedded into the flattened output, with its label.
    fn embeddings(&self) -> impl Iterator<Item = (&Staircase, CMat)> + '_ {
        let iso = &self.schur.iso;
        iso.layout.iter().map(move |b| {
            let flat = self.block(&b.label).expect("label in layout");
            let mut e = CMat::zeros(self.flat_dim(), iso.matrix.ncols());
            e.rows_mut(flat.offset, flat.size).copy_from(&iso.block_rows(b));
            (&b.label, e)
        })
    }

    /// `⊕_γ dim P_γ · 1_{Q_γ}`; `tr[Φ(A)† B] = tr[A† Φ*(W B)]` for block-diagonal `B`.
    pub fn weight_operator(&self) -> CMat {
        let mut w = CMat::zeros(self.flat_dim(), self.flat_dim());
        for b in &self.layout {
            let p = self.schur.path_dim(&b.label) as f64;
            for i in b.rows() {
                w[(i, i)] = c(p, 0.0);
            }
        }
        w
    }
}

impl Channel for UssChannel {
    fn in_dim(&self) -> usize {
        self.schur.iso.matrix.ncols()
    }

    fn out_dim(&self) -> usize {
        self.flat_dim()
    }

    fn apply(&self, rho: &CMat) -> Result<CMat> {
        check_square(rho, self.in_dim())?;
        let u = &self.schur.iso.matrix;
        let y = u * rho * u.adjoint();
        let mut out = CMat::zeros(self.flat_dim(), self.flat_dim());
        for b in &self.schur.iso.layout {
            let flat = self.block(&b.label).expect("label in layout");
            let mut view = out.view_mut((flat.offset, flat.offset), (flat.size, flat.size));
            view += y.view((b.offset, b.offset), (b.size, b.size));
        }
        Ok(out)
    }

    fn superop(&self) -> Result<Superop> {
        let mut matrix = CMat::zeros(self.flat_dim().pow(2), self.in_dim().pow(2));
        for (_, e) in self.embeddings() {
            matrix += kron(&e, &e.map(|z| z.conj()));
        }
        Ok(Superop { matrix, in_dim: self.in_dim(), out_dim: self.out_dim() })
    }
}

impl DualUssChannel {
    pub fn layout(&self) -> &[Block] {
        self.0.layout()
    }

    pub fn block(&self, gamma: &Staircase) -> Option<&Block> {
        self.0.block(gamma)
    }
}

impl Channel for DualUssChannel {
    fn in_dim(&self) -> usize {
        self.0.out_dim()
    }

    fn out_dim(&self) -> usize {
        self.0.in_dim()
    }

    fn apply(&self, sigma: &CMat) -> Result<CMat> {
        check_square(sigma, self.in_dim())?;
        let iso = &self.0.schur.iso;
        let mut big = CMat::zeros(iso.matrix.nrows(), iso.matrix.nrows());
        for b in &iso.layout {
            let flat = self.0.block(&b.label).expect("label in layout");
            let p = self.0.schur.path_dim(&b.label) as f64;
            let blk = sigma.view((flat.offset, flat.offset), (flat.size, flat.size)) / c(p, 0.0);
            big.view_mut((b.offset, b.offset), (b.size, b.size)).copy_from(&blk);
        }
        Ok(iso.matrix.adjoint() * big * &iso.matrix)
    }

    fn superop(&self) -> Result<Superop> {
        let mut matrix = CMat::zeros(self.out_dim().pow(2), self.in_dim().pow(2));
        for (label, e) in self.0.embeddings() {
            let p = self.0.schur.path_dim(label) as f64;
            let et = e.adjoint();
            matrix += kron(&et, &et.map(|z| z.conj())) / c(p, 0.0);
        }
        Ok(Superop { matrix, in_dim: self.in_dim(), out_dim: self.out_dim() })
    }
}
