//! Concrete realizations of `gl(d)` irreps and intertwiners between them.
//!
//! Every realization stores the images of the `d²` generators `E_ij`. The
//! canonical realization of a label is built along the lexicographically
//! smallest GT path: the highest-weight vector of the new block is isolated by
//! the split Casimir, and the rest of the basis is generated by applying simple
//! lowering operators in breadth-first order with Gram–Schmidt. The procedure
//! only uses the representation itself, so two equivalent realizations produce
//! bases related by their unique intertwiner.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use super::linalg::{canonical_span_basis, eigh, eye, fix_phase_mat, fix_phase_vec, kron, max_abs, null_space, CMat, CVec, Sparse, ZERO};
use crate::combinatorics::{add_boxes, dim_gl_irrep, remove_boxes, Staircase};
use crate::error::{Error, Result};
use crate::gt_paths::first_path;

/// Generator images `E_ij` of a `gl(d)` representation, stored at index `i·d + j`.
#[derive(Clone, Debug)]
pub struct GenRep {
    d: usize,
    gens: Vec<CMat>,
}

impl GenRep {
    pub fn new(d: usize, gens: Vec<CMat>) -> Result<Self> {
        if gens.len() != d * d {
            return Err(Error::Shape(format!("expected {} generators, got {}", d * d, gens.len())));
        }
        let n = gens[0].nrows();
        if gens.iter().any(|g| g.nrows() != n || g.ncols() != n) {
            return Err(Error::Shape("generator images must be square and equal-sized".into()));
        }
        Ok(GenRep { d, gens })
    }

    fn unit(d: usize, i: usize, j: usize) -> CMat {
        let mut m = CMat::zeros(d, d);
        m[(i, j)] = Complex64::new(1.0, 0.0);
        m
    }

    /// The defining representation on `C^d`.
    pub fn defining(d: usize) -> Self {
        let gens = (0..d * d).map(|k| Self::unit(d, k / d, k % d)).collect();
        GenRep { d, gens }
    }

    /// The dual representation on `C̄^d`, `E_ij ↦ −e_ji`.
    pub fn dual_defining(d: usize) -> Self {
        GenRep::defining(d).dual()
    }

    pub fn trivial(d: usize) -> Self {
        GenRep { d, gens: vec![CMat::zeros(1, 1); d * d] }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.gens[0].nrows()
    }

    pub fn gen(&self, i: usize, j: usize) -> &CMat {
        &self.gens[i * self.d + j]
    }

    pub fn generators(&self) -> &[CMat] {
        &self.gens
    }

    pub fn tensor(&self, other: &GenRep) -> GenRep {
        let ia = eye(self.dim());
        let ib = eye(other.dim());
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| kron(a, &ib) + kron(&ia, b)).collect();
        GenRep { d: self.d, gens }
    }

    /// Contragredient representation `E_ij ↦ −E_ijᵀ`.
    pub fn dual(&self) -> GenRep {
        GenRep { d: self.d, gens: self.gens.iter().map(|g| -g.transpose()).collect() }
    }

    /// `B† E_ij B` for an orthonormal basis `B` of an invariant subspace.
    pub fn restrict(&self, basis: &CMat) -> GenRep {
        let bd = basis.adjoint();
        GenRep { d: self.d, gens: self.gens.iter().map(|g| &bd * Sparse::from_dense(g).mul_mat(basis)).collect() }
    }

    /// Weight of each coordinate, read off the diagonal of `E_ii`.
    pub fn weights(&self) -> Vec<Vec<i64>> {
        (0..self.dim())
            .map(|k| (0..self.d).map(|i| self.gen(i, i)[(k, k)].re.round() as i64).collect())
            .collect()
    }

    fn weight_coords(&self, weight: &[i64]) -> Vec<usize> {
        self.weights().iter().enumerate().filter(|(_, w)| w.as_slice() == weight).map(|(k, _)| k).collect()
    }

    /// Largest deviation from diagonal among the `E_ii`.
    pub fn weight_offdiagonal(&self) -> f64 {
        (0..self.d)
            .map(|i| {
                let mut g = self.gen(i, i).clone();
                g.fill_diagonal(ZERO);
                max_abs(&g)
            })
            .fold(0.0, f64::max)
    }

    /// `max ‖[E_ij, E_kl] − δ_jk E_il + δ_li E_kj‖`.
    pub fn commutator_defect(&self) -> f64 {
        let d = self.d;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let a = self.gen(i, j);
                        let b = self.gen(k, l);
                        let mut r = a * b - b * a;
                        if j == k {
                            r -= self.gen(i, l);
                        }
                        if l == i {
                            r += self.gen(k, j);
                        }
                        worst = worst.max(max_abs(&r));
                    }
                }
            }
        }
        worst
    }

    /// Quadratic Casimir `Σ E_ij E_ji`.
    pub fn casimir(&self) -> CMat {
        let d = self.d;
        let mut acc = CMat::zeros(self.dim(), self.dim());
        for i in 0..d {
            for j in 0..d {
                acc += self.gen(i, j) * self.gen(j, i);
            }
        }
        acc
    }

    /// Image `Σ h_ij E_ij` of a Lie-algebra element given as a `d×d` matrix.
    pub fn action(&self, h: &CMat) -> CMat {
        let mut acc = CMat::zeros(self.dim(), self.dim());
        for i in 0..self.d {
            for j in 0..self.d {
                acc += self.gen(i, j) * h[(i, j)];
            }
        }
        acc
    }

    fn raising(&self, i: usize) -> &CMat {
        self.gen(i, i + 1)
    }

    fn lowering(&self, i: usize) -> &CMat {
        self.gen(i + 1, i)
    }
}

/// Eigenvalue of `Σ E_ij ⊗ e_ji` on the block of `ν ⊗ (site)` labelled by moving row `row`.
pub fn split_casimir_eigenvalue(nu: &Staircase, row: usize, dual: bool) -> f64 {
    let d = nu.d() as i64;
    let r = row as i64;
    let v = nu.entries()[row];
    if dual {
        -(v - r - 1 + d) as f64
    } else {
        (v - r) as f64
    }
}

/// Value of the quadratic Casimir on the irrep `γ`.
pub fn casimir_value(gamma: &Staircase) -> f64 {
    let d = gamma.d() as i64;
    gamma
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &g)| g * (g + d + 1 - 2 * (i as i64 + 1)))
        .sum::<i64>() as f64
}

/// Orthonormal, canonically ordered basis of the highest-weight vectors of weight `weight`.
pub fn highest_weight_space(rep: &GenRep, weight: &[i64]) -> CMat {
    let coords = rep.weight_coords(weight);
    let n = rep.dim();
    if coords.is_empty() {
        return CMat::zeros(n, 0);
    }
    let d = rep.d();
    let rows = (d - 1) * n;
    let mut stacked = CMat::zeros(rows.max(1), coords.len());
    for i in 0..d.saturating_sub(1) {
        let r = rep.raising(i);
        for (col, &k) in coords.iter().enumerate() {
            for row in 0..n {
                stacked[(i * n + row, col)] = r[(row, k)];
            }
        }
    }
    let ns = null_space(&stacked, 1e-9);
    let mut full = CMat::zeros(n, ns.ncols());
    for (col_idx, &k) in coords.iter().enumerate() {
        for j in 0..ns.ncols() {
            full[(k, j)] = ns[(col_idx, j)];
        }
    }
    canonical_span_basis(&full, 1e-8)
}

/// One Gram–Schmidt step of the lowering-operator sweep, replayable on an equivalent representation.
#[derive(Clone, Debug)]
struct SweepStep {
    source: usize,
    lowering: usize,
    coeffs: Vec<Complex64>,
    norm: f64,
}

/// Orthonormal basis generated from `hw` by simple lowering operators, breadth first.
fn lowering_sweep(rep: &GenRep, hw: &CVec, target_dim: usize) -> Result<(CMat, Vec<SweepStep>)> {
    let mut basis: Vec<CVec> = vec![hw.clone()];
    let mut steps = Vec::new();
    let lowering: Vec<Sparse> = (0..rep.d() - 1).map(|i| Sparse::from_dense(rep.lowering(i))).collect();
    let mut idx = 0;
    while idx < basis.len() && basis.len() < target_dim {
        for (i, low) in lowering.iter().enumerate() {
            if basis.len() == target_dim {
                break;
            }
            let mut w = low.mul_vec(&basis[idx]);
            let mut coeffs = vec![ZERO; basis.len()];
            for _ in 0..2 {
                for (k, b) in basis.iter().enumerate() {
                    let ov = b.dotc(&w);
                    coeffs[k] += ov;
                    w -= b * ov;
                }
            }
            let norm = w.norm();
            if norm > 1e-7 {
                w /= Complex64::new(norm, 0.0);
                basis.push(w);
                steps.push(SweepStep { source: idx, lowering: i, coeffs, norm });
            }
        }
        idx += 1;
    }
    if basis.len() != target_dim {
        return Err(Error::Internal(format!("lowering sweep found {} vectors, expected {target_dim}", basis.len())));
    }
    Ok((CMat::from_columns(&basis), steps))
}

pub(crate) fn sweep_basis(rep: &GenRep, hw: &CVec, target_dim: usize) -> Result<CMat> {
    lowering_sweep(rep, hw, target_dim).map(|(b, _)| b)
}

fn replay_sweep(rep: &GenRep, hw: &CVec, steps: &[SweepStep]) -> CMat {
    let lowering: Vec<Sparse> = (0..rep.d() - 1).map(|i| Sparse::from_dense(rep.lowering(i))).collect();
    let mut basis: Vec<CVec> = vec![hw.clone()];
    for s in steps {
        let mut w = lowering[s.lowering].mul_vec(&basis[s.source]);
        for (k, coef) in s.coeffs.iter().enumerate() {
            w -= &basis[k] * *coef;
        }
        w /= Complex64::new(s.norm, 0.0);
        basis.push(w);
    }
    CMat::from_columns(&basis)
}

/// Intertwiner `T` from `a` to `b` with `T·h_a = h_b` for the given highest-weight vectors.
pub(crate) fn intertwiner_with_hw(a: &GenRep, ha: &CVec, b: &GenRep, hb: &CVec) -> Result<CMat> {
    if a.dim() != b.dim() {
        return Err(Error::Internal(format!("cannot intertwine dimensions {} and {}", a.dim(), b.dim())));
    }
    let (basis_a, steps) = lowering_sweep(a, ha, a.dim())?;
    let basis_b = replay_sweep(b, hb, &steps);
    let t = &basis_b * basis_a.adjoint();
    let mut worst: f64 = 0.0;
    for (ga, gb) in a.generators().iter().zip(b.generators()) {
        worst = worst.max(max_abs(&(&t * ga - gb * &t)));
    }
    let iso = max_abs(&(t.adjoint() * &t - eye(a.dim())));
    if worst > 1e-8 || iso > 1e-8 {
        return Err(Error::Internal(format!(
            "intertwiner residual {worst:.2e}, isometry defect {iso:.2e}"
        )));
    }
    Ok(t)
}

/// A concrete model of `Q_γ^d`.
#[derive(Debug)]
pub struct IrrepRealization {
    label: Staircase,
    gens: GenRep,
    origin: Origin,
    embedding: OnceLock<CMat>,
}

#[derive(Debug)]
enum Origin {
    Trivial,
    Step { parent: Arc<IrrepRealization>, rows: CMat },
    Conjugate(Arc<IrrepRealization>),
    Given(CMat),
}

impl IrrepRealization {
    /// A user-supplied realization; `embedding` maps the abstract space into a tensor space.
    pub fn from_generators(label: Staircase, gens: GenRep, embedding: CMat) -> Result<Self> {
        if gens.d() != label.d() || gens.dim() != embedding.ncols() {
            return Err(Error::Shape("realization data do not match the label".into()));
        }
        Ok(IrrepRealization { label, gens, origin: Origin::Given(embedding), embedding: OnceLock::new() })
    }

    /// The contragredient realization, labelled `γ̄`.
    pub fn conjugate(this: &Arc<IrrepRealization>) -> IrrepRealization {
        IrrepRealization {
            label: this.label.dual(),
            gens: this.gens.dual(),
            origin: Origin::Conjugate(this.clone()),
            embedding: OnceLock::new(),
        }
    }

    pub fn label(&self) -> &Staircase {
        &self.label
    }

    pub fn d(&self) -> usize {
        self.label.d()
    }

    pub fn dim(&self) -> usize {
        self.gens.dim()
    }

    pub fn generators(&self) -> &GenRep {
        &self.gens
    }

    /// Numbers of `C^d` and `C̄^d` tensor factors of the embedding space.
    pub fn tensor_shape(&self) -> (usize, usize) {
        match &self.origin {
            Origin::Conjugate(p) => {
                let (a, b) = p.tensor_shape();
                (b, a)
            }
            _ => (self.label.positive_size(), self.label.negative_size()),
        }
    }

    /// Isometry from the abstract space into `(C^d)^{⊗a} ⊗ (C̄^d)^{⊗b}`
    /// (for a conjugate realization the factor order is reversed with respect to its parent).
    pub fn embedding(&self) -> &CMat {
        self.embedding.get_or_init(|| match &self.origin {
            Origin::Trivial => eye(1),
            Origin::Step { parent, rows } => kron(parent.embedding(), &eye(self.d())) * rows.adjoint(),
            Origin::Conjugate(p) => p.embedding().map(|x| x.conj()),
            Origin::Given(e) => e.clone(),
        })
    }
}

fn canonical_cache() -> &'static Mutex<HashMap<Staircase, Arc<IrrepRealization>>> {
    static CACHE: OnceLock<Mutex<HashMap<Staircase, Arc<IrrepRealization>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `γ`-block of `ν ⊗ (site)` with its lowering-sweep basis.
pub(crate) struct SimpleBlock {
    pub label: Staircase,
    pub basis: CMat,
}

/// Spectral decomposition of `Q_ν ⊗ C^d` (or `⊗ C̄^d`) into its blocks, each with
/// its lowering-sweep basis in the coordinates of the product space.
pub(crate) fn simple_blocks(nu: &IrrepRealization, dual: bool) -> Result<Vec<SimpleBlock>> {
    let d = nu.d();
    let site = if dual { GenRep::dual_defining(d) } else { GenRep::defining(d) };
    let v = nu.generators().tensor(&site);
    let mut omega = CMat::zeros(v.dim(), v.dim());
    for i in 0..d {
        for j in 0..d {
            omega += kron(nu.generators().gen(i, j), site.gen(j, i));
        }
    }
    let (vals, vecs) = eigh(&omega);
    let targets: Vec<(usize, Staircase)> = (0..d)
        .filter_map(|row| {
            let mut e = nu.label().entries().to_vec();
            e[row] += if dual { -1 } else { 1 };
            Staircase::new(e).ok().map(|s| (row, s))
        })
        .collect();
    debug_assert_eq!(
        targets.iter().map(|t| t.1.clone()).collect::<Vec<_>>(),
        if dual { remove_boxes(nu.label()) } else { add_boxes(nu.label()) }
    );
    let predicted: Vec<f64> = targets.iter().map(|(row, _)| split_casimir_eigenvalue(nu.label(), *row, dual)).collect();
    for (a, pa) in predicted.iter().enumerate() {
        for pb in &predicted[a + 1..] {
            if (pa - pb).abs() < 1.0 {
                return Err(Error::Internal(format!("degenerate split Casimir eigenvalues {pa} and {pb}")));
            }
        }
    }
    let mut out = Vec::new();
    let mut covered = 0;
    for ((_, gamma), pred) in targets.into_iter().zip(predicted) {
        let idx: Vec<usize> = (0..vals.len()).filter(|&k| (vals[k] - pred).abs() < 0.5).collect();
        let dim = dim_gl_irrep(&gamma) as usize;
        if idx.len() != dim {
            return Err(Error::Internal(format!(
                "split Casimir eigenspace {pred} has dimension {}, expected {dim} for {gamma}",
                idx.len()
            )));
        }
        covered += dim;
        let proj_basis = CMat::from_fn(v.dim(), idx.len(), |r, col| vecs[(r, idx[col])]);
        let coords = v.weight_coords(gamma.entries());
        let projector = &proj_basis * proj_basis.adjoint();
        let restricted = CMat::from_fn(coords.len(), coords.len(), |a, b| projector[(coords[a], coords[b])]);
        let (pv, pvec) = eigh(&restricted);
        let top: Vec<usize> = (0..pv.len()).filter(|&k| pv[k] > 0.5).collect();
        if top.len() != 1 {
            return Err(Error::Internal(format!("{gamma} block has {} highest-weight vectors", top.len())));
        }
        let mut hw = CVec::zeros(v.dim());
        for (a, &k) in coords.iter().enumerate() {
            hw[k] = pvec[(a, top[0])];
        }
        fix_phase_vec(&mut hw);
        let (basis, _) = lowering_sweep(&v, &hw, dim)?;
        out.push(SimpleBlock { label: gamma, basis });
    }
    if covered != v.dim() {
        return Err(Error::Internal(format!("blocks cover {covered} of {} dimensions", v.dim())));
    }
    Ok(out)
}

/// The deterministic model of `Q_γ^d` built along the lexicographically smallest GT path.
pub fn canonical_realization(gamma: &Staircase) -> Arc<IrrepRealization> {
    if let Some(r) = canonical_cache().lock().expect("cache lock").get(gamma) {
        return r.clone();
    }
    let built = Arc::new(build_canonical(gamma).expect("canonical realization construction"));
    canonical_cache().lock().expect("cache lock").entry(gamma.clone()).or_insert(built).clone()
}

fn build_canonical(gamma: &Staircase) -> Result<IrrepRealization> {
    let d = gamma.d();
    if gamma.is_zero() {
        return Ok(IrrepRealization {
            label: gamma.clone(),
            gens: GenRep::trivial(d),
            origin: Origin::Trivial,
            embedding: OnceLock::new(),
        });
    }
    let path = first_path(gamma);
    let n = path.steps().len();
    let parent = canonical_realization(&path.steps()[n - 2]);
    let dual = path.is_removal(n - 1);
    let block = simple_blocks(&parent, dual)?
        .into_iter()
        .find(|b| &b.label == gamma)
        .ok_or_else(|| Error::Internal(format!("{gamma} missing from its parent's decomposition")))?;
    let site = if dual { GenRep::dual_defining(d) } else { GenRep::defining(d) };
    let v = parent.generators().tensor(&site);
    let gens = v.restrict(&block.basis);
    Ok(IrrepRealization {
        label: gamma.clone(),
        gens,
        origin: Origin::Step { parent, rows: block.basis.adjoint() },
        embedding: OnceLock::new(),
    })
}

/// The unique-up-to-phase intertwiner `T` with `T E_ij^{(a)} = E_ij^{(b)} T`,
/// phase-fixed so its lexicographically first significant entry is real positive.
pub fn intertwiner(a: &IrrepRealization, b: &GenRep) -> Result<CMat> {
    let ha = highest_weight_space(a.generators(), a.label().entries());
    let hb = highest_weight_space(b, a.label().entries());
    if ha.ncols() != 1 || hb.ncols() != 1 || a.dim() != b.dim() {
        return Err(Error::Validation(format!(
            "intertwiner space is not one-dimensional ({} and {} highest-weight vectors, dims {} and {})",
            ha.ncols(),
            hb.ncols(),
            a.dim(),
            b.dim()
        )));
    }
    let mut t = intertwiner_with_hw(a.generators(), &ha.column(0).into_owned(), b, &hb.column(0).into_owned())?;
    fix_phase_mat(&mut t);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_staircases;
    use crate::rep_kernel::linalg::{isometry_defect, max_imag, vec_rm};

    const TOL: f64 = 1e-10;

    fn sc(v: &[i64]) -> Staircase {
        Staircase::new(v.to_vec()).unwrap()
    }

    #[test]
    fn defining_and_dual_satisfy_relations() {
        for d in 1..=3 {
            assert!(GenRep::defining(d).commutator_defect() < 1e-14);
            assert!(GenRep::dual_defining(d).commutator_defect() < 1e-14);
            assert!(GenRep::defining(d).tensor(&GenRep::dual_defining(d)).commutator_defect() < 1e-14);
        }
    }

    #[test]
    fn canonical_realizations_are_valid() {
        for d in 1..=3 {
            for (m, n) in [(0, 0), (1, 0), (2, 0), (3, 0), (0, 2), (2, 1), (2, 2)] {
                for g in enumerate_staircases(m, n, d) {
                    let r = canonical_realization(&g);
                    assert_eq!(r.dim() as u64, dim_gl_irrep(&g));
                    assert!(r.generators().commutator_defect() < TOL, "{g}");
                    assert!(r.generators().weight_offdiagonal() < TOL, "{g}");
                    assert!(max_imag(&CMat::from_columns(r.generators().generators().iter().map(vec_rm).collect::<Vec<_>>().as_slice())) < TOL);
                    let e = r.embedding();
                    assert!(isometry_defect(e) < TOL);
                    assert!(max_imag(e) < TOL);
                    let c = r.generators().casimir();
                    assert!(max_abs(&(c - eye(r.dim()) * Complex64::new(casimir_value(&g), 0.0))) < 1e-9);
                }
            }
        }
    }

    #[test]
    fn defining_realization_is_identity() {
        let r = canonical_realization(&sc(&[1, 0, 0]));
        assert!(max_abs(&(r.embedding() - eye(3))) < 1e-14);
    }

    #[test]
    fn symmetric_square_embedding() {
        let r = canonical_realization(&sc(&[2, 0]));
        let e = r.embedding();
        let proj = e * e.adjoint();
        let mut sym = CMat::zeros(4, 4);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let vecs = [[1.0, 0.0, 0.0, 0.0], [0.0, s, s, 0.0], [0.0, 0.0, 0.0, 1.0]];
        for v in vecs {
            let v = CVec::from_iterator(4, v.iter().map(|&x| Complex64::new(x, 0.0)));
            sym += &v * v.adjoint();
        }
        assert!(max_abs(&(proj - sym)) < 1e-12);
    }

    #[test]
    fn adjoint_embedding_is_traceless_part() {
        let r = canonical_realization(&sc(&[1, -1]));
        let e = r.embedding();
        assert_eq!(e.ncols(), 3);
        let omega = vec_rm(&eye(2)) / Complex64::new(2f64.sqrt(), 0.0);
        assert!((e.adjoint() * &omega).norm() < 1e-12);
    }

    #[test]
    fn casimir_eigenvalues_separate() {
        let nu = sc(&[2, 1, 0]);
        let vals: Vec<f64> = (0..3).map(|r| split_casimir_eigenvalue(&nu, r, false)).collect();
        assert_eq!(vals, vec![2.0, 0.0, -2.0]);
        assert_eq!(split_casimir_eigenvalue(&sc(&[1, 0]), 0, true), -2.0);
        assert_eq!(split_casimir_eigenvalue(&sc(&[1, 0]), 1, true), 0.0);
    }

    #[test]
    fn intertwiner_examples() {
        let r = canonical_realization(&sc(&[2, 0]));
        let t = intertwiner(&r, r.generators()).unwrap();
        assert!(max_abs(&(t - eye(3))) < 1e-12);

        let perm = CMat::from_fn(3, 3, |i, j| if i + j == 2 { Complex64::new(1.0, 0.0) } else { ZERO });
        let other = r.generators().restrict(&perm);
        let t = intertwiner(&r, &other).unwrap();
        assert!(max_abs(&(t.adjoint() * &t - eye(3))) < 1e-12);
        for (ga, gb) in r.generators().generators().iter().zip(other.generators()) {
            assert!(max_abs(&(&t * ga - gb * &t)) < 1e-10);
        }
        assert!(max_abs(&(&t - &perm.transpose())) < 1e-12);

        let singlet_rep = canonical_realization(&sc(&[1, 1]));
        let v = GenRep::defining(2).tensor(&GenRep::defining(2));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = CMat::from_column_slice(4, 1, &[ZERO, Complex64::new(s, 0.0), Complex64::new(-s, 0.0), ZERO]);
        let t = intertwiner(&singlet_rep, &v.restrict(&singlet)).unwrap();
        assert!((t[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        let reducible = v.clone();
        assert!(intertwiner(&singlet_rep, &reducible).is_err());
    }
}
