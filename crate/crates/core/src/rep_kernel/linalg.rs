//! Dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// `a ⊗ a ⊗ … ⊗ a` with `times` factors; the empty product is `[1]`.
pub fn kron_power(a: &CMat, times: usize) -> CMat {
    (0..times).fold(eye(1), |acc, _| kron(&acc, a))
}

/// Trace over the second factor of `C^{da} ⊗ C^{db}`.
pub fn ptrace_second(rho: &CMat, da: usize, db: usize) -> CMat {
    assert_eq!(rho.nrows(), da * db);
    CMat::from_fn(da, da, |i, j| (0..db).map(|k| rho[(i * db + k, j * db + k)]).sum())
}

/// Trace over the first factor of `C^{da} ⊗ C^{db}`.
pub fn ptrace_first(rho: &CMat, da: usize, db: usize) -> CMat {
    assert_eq!(rho.nrows(), da * db);
    CMat::from_fn(db, db, |i, j| (0..da).map(|k| rho[(k * db + i, k * db + j)]).sum())
}

/// Row-major vectorization `vec(M) = Σ M_ij |i⟩|j⟩`.
pub fn vec_rm(m: &CMat) -> CVec {
    CVec::from_fn(m.nrows() * m.ncols(), |k, _| m[(k / m.ncols(), k % m.ncols())])
}

pub fn unvec_rm(v: &CVec, rows: usize, cols: usize) -> Result<CMat> {
    if v.len() != rows * cols {
        return Err(Error::Shape(format!("vector of length {} cannot be {rows}x{cols}", v.len())));
    }
    Ok(CMat::from_fn(rows, cols, |i, j| v[i * cols + j]))
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn max_imag(m: &CMat) -> f64 {
    m.iter().map(|x| x.im.abs()).fold(0.0, f64::max)
}

pub fn trace(m: &CMat) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn eigh(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let herm = (m + m.adjoint()).scale(0.5);
    let eig = herm.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMat::from_fn(n, n, |r, col| eig.eigenvectors[(r, order[col])]);
    (values, vectors)
}

pub fn min_eigenvalue(m: &CMat) -> f64 {
    eigh(m).0.first().copied().unwrap_or(0.0)
}

/// Orthonormal basis of `{x : M x = 0}` from the small eigenvalues of `M†M`.
pub fn null_space(m: &CMat, tol: f64) -> CMat {
    let (vals, vecs) = eigh(&(m.adjoint() * m));
    let keep: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] < tol).collect();
    CMat::from_fn(m.ncols(), keep.len(), |r, col| vecs[(r, keep[col])])
}

/// Multiplies `v` by a phase so its first entry with modulus above `1e-8` is real positive.
pub fn fix_phase_vec(v: &mut CVec) {
    if let Some(x) = v.iter().find(|x| x.norm() > 1e-8) {
        let ph = x.conj() / x.norm();
        v.iter_mut().for_each(|y| *y *= ph);
    }
}

/// Multiplies `m` by a phase so its lexicographically-first entry with modulus above `1e-8` is real positive.
pub fn fix_phase_mat(m: &mut CMat) {
    let first = (0..m.nrows())
        .flat_map(|r| (0..m.ncols()).map(move |col| (r, col)))
        .map(|(r, col)| m[(r, col)])
        .find(|x| x.norm() > 1e-8);
    if let Some(x) = first {
        let ph = x.conj() / x.norm();
        m.iter_mut().for_each(|y| *y *= ph);
    }
}

/// A basis-independent orthonormal basis of the column span of `n`:
/// reduced row echelon form in coordinate order, then Gram–Schmidt and phase fixing.
pub fn canonical_span_basis(n: &CMat, tol: f64) -> CMat {
    let mut rows: Vec<CVec> = (0..n.ncols()).map(|j| n.column(j).into_owned()).collect();
    let mut pivot_row = 0;
    let dim = n.nrows();
    for col in 0..dim {
        if pivot_row == rows.len() {
            break;
        }
        let best = (pivot_row..rows.len()).max_by(|&a, &b| rows[a][col].norm().total_cmp(&rows[b][col].norm()));
        let Some(best) = best else { break };
        if rows[best][col].norm() < tol {
            continue;
        }
        rows.swap(pivot_row, best);
        let p = rows[pivot_row][col];
        rows[pivot_row] /= p;
        for r in 0..rows.len() {
            if r != pivot_row {
                let f = rows[r][col];
                if f.norm() > 0.0 {
                    let pr = rows[pivot_row].clone();
                    rows[r] -= pr * f;
                }
            }
        }
        pivot_row += 1;
    }
    let mut basis: Vec<CVec> = Vec::new();
    for mut v in rows.into_iter().take(pivot_row) {
        for _ in 0..2 {
            for b in &basis {
                let ov = b.dotc(&v);
                v -= b * ov;
            }
        }
        let nv = v.norm();
        v /= Complex64::from(nv);
        fix_phase_vec(&mut v);
        basis.push(v);
    }
    if basis.is_empty() {
        return CMat::zeros(dim, 0);
    }
    CMat::from_columns(&basis)
}

/// Nonzero entries of a dense matrix, for products with mostly-zero generators.
pub struct Sparse {
    rows: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl Sparse {
    pub fn from_dense(m: &CMat) -> Self {
        let mut entries = Vec::new();
        for col in 0..m.ncols() {
            for row in 0..m.nrows() {
                let z = m[(row, col)];
                if z != ZERO {
                    entries.push((row, col, z));
                }
            }
        }
        Sparse { rows: m.nrows(), entries }
    }

    pub fn mul_mat(&self, x: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows, x.ncols());
        for j in 0..x.ncols() {
            for &(r, col, z) in &self.entries {
                out[(r, j)] += z * x[(col, j)];
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &CVec) -> CVec {
        let mut out = CVec::zeros(self.rows);
        for &(r, col, z) in &self.entries {
            out[r] += z * x[col];
        }
        out
    }
}

/// `exp(i H)` for Hermitian `H`.
pub fn exp_i_hermitian(h: &CMat) -> CMat {
    let (vals, vecs) = eigh(h);
    let phases = CMat::from_diagonal(&CVec::from_iterator(vals.len(), vals.iter().map(|&t| c(t.cos(), t.sin()))));
    &vecs * phases * vecs.adjoint()
}

/// Hermitian `H` with `exp(i H) = U` for unitary `U`, via the complex Schur form.
pub fn log_unitary(u: &CMat) -> CMat {
    let (q, t) = nalgebra::linalg::Schur::new(u.clone()).unpack();
    let n = u.nrows();
    let angles = CMat::from_diagonal(&CVec::from_iterator(n, (0..n).map(|i| c(t[(i, i)].arg(), 0.0))));
    let h = &q * angles * q.adjoint();
    (&h + h.adjoint()).scale(0.5)
}

/// `‖M†M − 1‖_max`.
pub fn isometry_defect(m: &CMat) -> f64 {
    max_abs(&(m.adjoint() * m - eye(m.ncols())))
}
