//! Simple, dual and general Clebsch–Gordan transforms.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use super::linalg::{eye, max_abs, CMat, CVec};
use super::realization::{
    canonical_realization, casimir_value, highest_weight_space, intertwiner, intertwiner_with_hw, simple_blocks,
    IrrepRealization,
};
use super::{Block, BlockIsometry};
use crate::combinatorics::{dim_gl_irrep, lr_product, Staircase};
use crate::error::{Error, Result};

/// Decomposes `Q_ν ⊗ C^d` (or `Q_ν ⊗ C̄^d`) into canonical realizations, blocks
/// in increasing row order of the moved box.
pub fn simple_cg(nu: &IrrepRealization, dual: bool) -> Result<BlockIsometry> {
    let blocks = simple_blocks(nu, dual)?;
    let total = nu.dim() * nu.d();
    let mut matrix = CMat::zeros(total, total);
    let mut layout = Vec::new();
    let mut offset = 0;
    let site = if dual {
        super::GenRep::dual_defining(nu.d())
    } else {
        super::GenRep::defining(nu.d())
    };
    let v = nu.generators().tensor(&site);
    for b in blocks {
        let canon = canonical_realization(&b.label);
        let t = intertwiner(&canon, &v.restrict(&b.basis))?;
        let rows = (&b.basis * t).adjoint();
        let size = rows.nrows();
        matrix.rows_mut(offset, size).copy_from(&rows);
        layout.push(Block { label: b.label, multiplicity: 0, offset, size });
        offset += size;
    }
    Ok(BlockIsometry { matrix, layout })
}

type SimpleKey = (Staircase, bool);

/// Cached [`simple_cg`] of the canonical realization of `nu`.
pub fn simple_cg_canonical(nu: &Staircase, dual: bool) -> Arc<BlockIsometry> {
    static CACHE: OnceLock<Mutex<HashMap<SimpleKey, Arc<BlockIsometry>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (nu.clone(), dual);
    if let Some(hit) = cache.lock().expect("cache lock").get(&key) {
        return hit.clone();
    }
    let built = Arc::new(simple_cg(&canonical_realization(nu), dual).expect("simple CG construction"));
    cache.lock().expect("cache lock").entry(key).or_insert(built).clone()
}

/// Decomposes `Q_λ ⊗ Q_μ` into `⊕_γ Q_γ ⊗ C^{c_{λμ}^γ}`. Blocks are ordered by
/// label, then by multiplicity index; the multiplicity basis is the canonical
/// orthonormal basis of the highest-weight space of weight `γ`.
pub fn general_cg(lambda: &IrrepRealization, mu: &IrrepRealization) -> Result<BlockIsometry> {
    if lambda.d() != mu.d() {
        return Err(Error::Shape("general_cg needs equal d".into()));
    }
    let v = lambda.generators().tensor(mu.generators());
    let total = v.dim();
    let mut matrix = CMat::zeros(total, total);
    let mut layout = Vec::new();
    let mut offset = 0;
    for (gamma, mult) in lr_product(lambda.label(), mu.label())? {
        let hws = highest_weight_space(&v, gamma.entries());
        if hws.ncols() as u64 != mult {
            return Err(Error::Internal(format!(
                "{gamma} in {}⊗{}: highest-weight space has dimension {}, LR coefficient is {mult}",
                lambda.label(),
                mu.label(),
                hws.ncols()
            )));
        }
        let canon = canonical_realization(&gamma);
        let dim = dim_gl_irrep(&gamma) as usize;
        let mut e0 = CVec::zeros(dim);
        e0[0] = Complex64::new(1.0, 0.0);
        let expected_casimir = casimir_value(&gamma);
        for j in 0..hws.ncols() {
            let hw = hws.column(j).into_owned();
            // The canonical basis starts at its highest-weight vector, so the
            // intertwiner composed with the embedding sends e0 to `hw`.
            let t_big = intertwiner_into(&canon, &e0, &v, &hw)?;
            let rows = t_big.adjoint();
            let restricted = v.restrict(&t_big);
            let cas = restricted.casimir() - eye(dim) * Complex64::new(expected_casimir, 0.0);
            if max_abs(&cas) > 1e-8 {
                return Err(Error::Internal(format!("copy of {gamma} fails the Casimir check")));
            }
            matrix.rows_mut(offset, dim).copy_from(&rows);
            layout.push(Block { label: gamma.clone(), multiplicity: j, offset, size: dim });
            offset += dim;
        }
    }
    if offset != total {
        return Err(Error::Internal(format!("general CG blocks cover {offset} of {total} rows")));
    }
    Ok(BlockIsometry { matrix, layout })
}

type PairKey = (Staircase, bool, Staircase, bool);

/// Cached [`general_cg`] of canonical realizations, each optionally replaced by its conjugate.
pub fn general_cg_canonical(a: &Staircase, a_conj: bool, b: &Staircase, b_conj: bool) -> Result<Arc<BlockIsometry>> {
    static CACHE: OnceLock<Mutex<HashMap<PairKey, Arc<BlockIsometry>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (a.clone(), a_conj, b.clone(), b_conj);
    if let Some(hit) = cache.lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let side = |x: &Staircase, conj: bool| {
        let r = canonical_realization(x);
        if conj {
            Arc::new(IrrepRealization::conjugate(&r))
        } else {
            r
        }
    };
    let built = Arc::new(general_cg(&side(a, a_conj), &side(b, b_conj))?);
    Ok(cache.lock().expect("cache lock").entry(key).or_insert(built).clone())
}

/// Isometric intertwiner from `a` into the big representation `v`, sending `ha` to `hv`.
fn intertwiner_into(a: &IrrepRealization, ha: &CVec, v: &super::GenRep, hv: &CVec) -> Result<CMat> {
    // Sweep inside `v` from `hv`; the resulting basis spans the copy generated by `hv`.
    let sub = super::realization::sweep_basis(v, hv, a.dim())?;
    let restricted = v.restrict(&sub);
    let h_sub = sub.adjoint() * hv;
    let t = intertwiner_with_hw(a.generators(), ha, &restricted, &h_sub)?;
    Ok(sub * t)
}
