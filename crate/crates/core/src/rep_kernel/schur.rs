//! Partially transposed permutation operators and the mixed Schur transform.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::cg::simple_cg_canonical;
use super::linalg::{eye, kron, CMat, ONE};
use super::{Block, BlockIsometry};
use crate::combinatorics::{dim_gl_irrep, Staircase};
use crate::error::{Error, Result};
use crate::gt_paths::GtPath;

/// Largest dense dimension the kernel will build; `SCHURCHAN_DENSE_LIMIT` overrides the default 4096.
pub fn dense_limit() -> usize {
    std::env::var("SCHURCHAN_DENSE_LIMIT").ok().and_then(|s| s.parse().ok()).unwrap_or(4096)
}

/// The operator of `σ ∈ S_m` on `(C^d)^{⊗m}` (site `s` moves to position `σ(s)`),
/// partially transposed on the last `transposed_tail` sites.
pub fn permutation_operator(sigma: &[usize], d: usize, transposed_tail: usize) -> Result<CMat> {
    let m = sigma.len();
    let mut seen = vec![false; m];
    for &s in sigma {
        if s >= m || seen[s] {
            return Err(Error::Validation(format!("{sigma:?} is not a permutation")));
        }
        seen[s] = true;
    }
    if transposed_tail > m {
        return Err(Error::Validation(format!("tail {transposed_tail} exceeds {m} sites")));
    }
    let dim = d.pow(m as u32);
    let digits = |mut x: usize| {
        let mut v = vec![0; m];
        for k in (0..m).rev() {
            v[k] = x % d;
            x /= d;
        }
        v
    };
    let index = |v: &[usize]| v.iter().fold(0, |acc, &x| acc * d + x);
    let mut out = CMat::zeros(dim, dim);
    for col in 0..dim {
        let input = digits(col);
        let mut output = vec![0; m];
        for (s, &x) in input.iter().enumerate() {
            output[sigma[s]] = x;
        }
        let (mut row_d, mut col_d) = (output, input);
        for k in m - transposed_tail..m {
            std::mem::swap(&mut row_d[k], &mut col_d[k]);
        }
        out[(index(&row_d), index(&col_d))] = ONE;
    }
    Ok(out)
}

/// `U_Sch` on `(C^d)^{⊗m} ⊗ (C̄^d)^{⊗n}` with blocks `(γ, path index)` of size `dim Q_γ`,
/// labels in canonical order and paths in lexicographic row order.
#[derive(Debug)]
pub struct SchurTransform {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub iso: BlockIsometry,
    pub paths: BTreeMap<Staircase, Vec<GtPath>>,
}

impl SchurTransform {
    pub fn path_dim(&self, gamma: &Staircase) -> usize {
        self.paths.get(gamma).map_or(0, Vec::len)
    }

    /// Row range of `P_γ ⊗ Q_γ`.
    pub fn label_range(&self, gamma: &Staircase) -> Option<std::ops::Range<usize>> {
        let blocks: Vec<&Block> = self.iso.layout.iter().filter(|b| &b.label == gamma).collect();
        let first = blocks.first()?;
        let last = blocks.last()?;
        Some(first.offset..last.offset + last.size)
    }
}

/// Builds the mixed Schur transform by iterating simple and then dual simple CG transforms.
pub fn schur_transform(m: usize, n: usize, d: usize) -> Result<Arc<SchurTransform>> {
    type Cache = Mutex<HashMap<(usize, usize, usize), Arc<SchurTransform>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("cache lock").get(&(m, n, d)) {
        return Ok(hit.clone());
    }
    let total = (d as u128).pow((m + n) as u32);
    if total > dense_limit() as u128 {
        return Err(Error::Resource(format!("d^(m+n) = {total} exceeds the dense limit {}", dense_limit())));
    }
    let built = Arc::new(build(m, n, d)?);
    Ok(cache.lock().expect("cache lock").entry((m, n, d)).or_insert(built).clone())
}

fn build(m: usize, n: usize, d: usize) -> Result<SchurTransform> {
    let mut current: Vec<(Vec<Staircase>, CMat)> = vec![(vec![Staircase::zero(d)], eye(1))];
    for step in 0..m + n {
        let dual = step >= m;
        let mut next = Vec::new();
        for (prefix, rows) in current {
            let nu = prefix.last().unwrap();
            let cg = simple_cg_canonical(nu, dual);
            let lifted = &cg.matrix * kron(&rows, &eye(d));
            for blk in &cg.layout {
                let mut p = prefix.clone();
                p.push(blk.label.clone());
                next.push((p, lifted.rows(blk.offset, blk.size).into_owned()));
            }
        }
        current = next;
    }
    let mut grouped: BTreeMap<Staircase, Vec<(GtPath, CMat)>> = BTreeMap::new();
    for (steps, rows) in current {
        let path = GtPath::new(steps, m, n)?;
        grouped.entry(path.end().clone()).or_default().push((path, rows));
    }
    let dim = d.pow((m + n) as u32);
    let mut matrix = CMat::zeros(dim, dim);
    let mut layout = Vec::new();
    let mut paths = BTreeMap::new();
    let mut offset = 0;
    for (gamma, mut entries) in grouped {
        entries.sort_by_key(|(p, _)| p.rows());
        let size = dim_gl_irrep(&gamma) as usize;
        for (idx, (_, rows)) in entries.iter().enumerate() {
            matrix.rows_mut(offset, size).copy_from(rows);
            layout.push(Block { label: gamma.clone(), multiplicity: idx, offset, size });
            offset += size;
        }
        paths.insert(gamma, entries.into_iter().map(|(p, _)| p).collect());
    }
    debug_assert_eq!(offset, dim);
    Ok(SchurTransform { m, n, d, iso: BlockIsometry { matrix, layout }, paths })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gt_paths::enumerate_paths;
    use crate::rep_kernel::linalg::{exp_i_hermitian, kron_power, log_unitary, max_abs, max_imag, trace};
    use crate::rep_kernel::realization::canonical_realization;
    use crate::verify::{haar_unitary, rng_stream};

    fn sc(v: &[i64]) -> Staircase {
        Staircase::new(v.to_vec()).unwrap()
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(permutation_operator(&[0, 1, 2], 2, 0).unwrap(), eye(8));
        let swap = permutation_operator(&[1, 0], 2, 0).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(swap[(j * 2 + i, i * 2 + j)], ONE);
            }
        }
        let pt = permutation_operator(&[1, 0], 2, 1).unwrap();
        let mut want = CMat::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                want[(i * 3, j * 3)] = ONE;
            }
        }
        assert_eq!(pt, want);
        assert!((trace(&pt).re - 2.0).abs() < 1e-15);
        assert!(permutation_operator(&[0, 0], 2, 0).is_err());
        assert!(permutation_operator(&[0, 1], 2, 3).is_err());
    }

    #[test]
    fn layouts() {
        let t = schur_transform(2, 0, 2).unwrap();
        let dims: Vec<_> = t.paths.iter().map(|(g, p)| (g.clone(), p.len(), dim_gl_irrep(g))).collect();
        assert_eq!(dims, vec![(sc(&[2, 0]), 1, 3), (sc(&[1, 1]), 1, 1)]);
        let t = schur_transform(3, 0, 2).unwrap();
        let dims: Vec<_> = t.paths.iter().map(|(g, p)| (g.clone(), p.len(), dim_gl_irrep(g))).collect();
        assert_eq!(dims, vec![(sc(&[3, 0]), 1, 4), (sc(&[2, 1]), 2, 2)]);
        let t = schur_transform(1, 1, 2).unwrap();
        let dims: Vec<_> = t.paths.iter().map(|(g, p)| (g.clone(), p.len(), dim_gl_irrep(g))).collect();
        assert_eq!(dims, vec![(sc(&[1, -1]), 1, 3), (sc(&[0, 0]), 1, 1)]);
        assert_eq!(t.paths, enumerate_paths(&Staircase::zero(2), 1, 1));
    }

    #[test]
    fn unitary_real_and_intertwining() {
        let mut rng = rng_stream(5, 0);
        for (m, n, d) in [(2, 0, 2), (3, 0, 2), (1, 1, 2), (2, 1, 2), (1, 2, 3), (2, 2, 2), (3, 0, 3)] {
            let t = schur_transform(m, n, d).unwrap();
            assert!(t.iso.isometry_defect() < 1e-10);
            assert!(max_imag(&t.iso.matrix) < 1e-10);
            for _ in 0..5 {
                let u = haar_unitary(d, &mut rng);
                let h = log_unitary(&u);
                let big = kron(&kron_power(&u, m), &kron_power(&u.map(|x| x.conj()), n));
                let lhs = &t.iso.matrix * big;
                let mut block_action = CMat::zeros(lhs.nrows(), lhs.nrows());
                for b in &t.iso.layout {
                    let r = exp_i_hermitian(&canonical_realization(&b.label).generators().action(&h));
                    block_action.view_mut((b.offset, b.offset), (b.size, b.size)).copy_from(&r);
                }
                let rhs = block_action * &t.iso.matrix;
                assert!(max_abs(&(lhs - rhs)) < 1e-8, "({m},{n},{d})");
            }
        }
    }

    #[test]
    fn permutations_act_on_path_register_only() {
        for (m, d) in [(3, 2), (4, 2), (3, 3)] {
            let t = schur_transform(m, 0, d).unwrap();
            for k in 0..m - 1 {
                let mut sigma: Vec<usize> = (0..m).collect();
                sigma.swap(k, k + 1);
                let pi = permutation_operator(&sigma, d, 0).unwrap();
                let conj = &t.iso.matrix * pi * t.iso.matrix.adjoint();
                for a in &t.iso.layout {
                    for b in &t.iso.layout {
                        let blk = conj.view((a.offset, b.offset), (a.size, b.size)).into_owned();
                        if a.label != b.label {
                            assert!(max_abs(&blk) < 1e-10);
                        } else {
                            let s = blk[(0, 0)];
                            assert!(max_abs(&(blk - eye(a.size) * s)) < 1e-10);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dense_limit_is_enforced() {
        assert!(schur_transform(13, 0, 2).is_err());
    }
}
