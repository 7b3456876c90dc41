//! Irrep realizations, Clebsch–Gordan transforms and the mixed Schur transform.

pub mod cg;
pub mod linalg;
pub mod realization;
pub mod schur;

use serde::{Deserialize, Serialize};

use crate::combinatorics::Staircase;
use linalg::CMat;

pub use cg::{general_cg, general_cg_canonical, simple_cg, simple_cg_canonical};
pub use linalg::{unvec_rm as unvec, vec_rm as vec};
pub use realization::{canonical_realization, intertwiner, GenRep, IrrepRealization};
pub use schur::{dense_limit, permutation_operator, schur_transform, SchurTransform};

/// One `(label, multiplicity)` block of a [`BlockIsometry`] and its row range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub label: Staircase,
    pub multiplicity: usize,
    pub offset: usize,
    pub size: usize,
}

impl Block {
    pub fn rows(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.size
    }
}

/// A dense isometry whose rows are grouped into labelled blocks.
#[derive(Clone, Debug)]
pub struct BlockIsometry {
    pub matrix: CMat,
    pub layout: Vec<Block>,
}

impl BlockIsometry {
    pub fn block(&self, label: &Staircase, multiplicity: usize) -> Option<&Block> {
        self.layout.iter().find(|b| &b.label == label && b.multiplicity == multiplicity)
    }

    /// Rows of one block as a `size × cols` matrix.
    pub fn block_rows(&self, block: &Block) -> CMat {
        self.matrix.rows(block.offset, block.size).into_owned()
    }

    pub fn multiplicity_of(&self, label: &Staircase) -> usize {
        self.layout.iter().filter(|b| &b.label == label).count()
    }

    /// Distinct labels in layout order.
    pub fn labels(&self) -> Vec<Staircase> {
        let mut out: Vec<Staircase> = Vec::new();
        for b in &self.layout {
            if !out.contains(&b.label) {
                out.push(b.label.clone());
            }
        }
        out
    }

    pub fn isometry_defect(&self) -> f64 {
        linalg::isometry_defect(&self.matrix)
    }
}
