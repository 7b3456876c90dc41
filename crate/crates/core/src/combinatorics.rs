//! Staircase arithmetic, irrep dimensions and Littlewood-Richardson coefficients.
//!
//! A staircase of depth `d` is a weakly decreasing vector of `d` signed
//! integers. Staircases with nonnegative entries are partitions. Staircases
//! compare lexicographically *descending*: `(2,0) < (1,1)` under [`Ord`], so
//! sorted collections and `BTreeMap` keys come out in the canonical layout
//! order used by every block isometry in the crate.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Staircase(Vec<i64>);

impl Staircase {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return validation("staircase needs at least one row");
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return validation(format!("entries {entries:?} are not weakly decreasing"));
        }
        Ok(Staircase(entries))
    }

    /// Pads a partition with zeros up to `d` rows.
    pub fn from_parts(parts: &[i64], d: usize) -> Result<Self> {
        if parts.len() > d {
            return validation(format!("{parts:?} has more than {d} rows"));
        }
        let mut v = parts.to_vec();
        v.resize(d, 0);
        Staircase::new(v)
    }

    pub fn zero(d: usize) -> Self {
        Staircase(vec![0; d])
    }

    /// The defining representation `(1,0,…,0)`.
    pub fn single_box(d: usize) -> Self {
        let mut v = vec![0; d];
        v[0] = 1;
        Staircase(v)
    }

    /// The dual of the defining representation `(0,…,0,-1)`.
    pub fn dual_box(d: usize) -> Self {
        let mut v = vec![0; d];
        v[d - 1] = -1;
        Staircase(v)
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_partition(&self) -> bool {
        self.0[self.d() - 1] >= 0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Number of boxes in the positive part.
    pub fn positive_size(&self) -> usize {
        self.0.iter().filter(|&&x| x > 0).sum::<i64>() as usize
    }

    /// Number of boxes in the negative part.
    pub fn negative_size(&self) -> usize {
        (-self.0.iter().filter(|&&x| x < 0).sum::<i64>()) as usize
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn length(&self) -> usize {
        self.0.iter().filter(|&&x| x != 0).count()
    }

    /// `γ̄ = (−γ_d, …, −γ_1)`.
    pub fn dual(&self) -> Self {
        Staircase(self.0.iter().rev().map(|&x| -x).collect())
    }

    pub fn shifted(&self, k: i64) -> Self {
        Staircase(self.0.iter().map(|&x| x + k).collect())
    }

    /// True when `self ⊢_d (m, n)`.
    pub fn is_mixed_of(&self, m: usize, n: usize) -> bool {
        let a = self.positive_size();
        let b = self.negative_size();
        a <= m && b <= n && m - a == n - b
    }

    fn with_row(&self, i: usize, delta: i64) -> Option<Self> {
        let mut v = self.0.clone();
        v[i] += delta;
        if v.windows(2).all(|w| w[0] >= w[1]) {
            Some(Staircase(v))
        } else {
            None
        }
    }

    /// Row index whose entry differs between `self` and `other`, with the signed difference.
    pub fn single_row_difference(&self, other: &Staircase) -> Option<(usize, i64)> {
        if self.d() != other.d() {
            return None;
        }
        let diffs: Vec<(usize, i64)> = self
            .0
            .iter()
            .zip(&other.0)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, (a, b))| (i, b - a))
            .collect();
        match diffs.as_slice() {
            [(i, delta)] if delta.abs() == 1 => Some((*i, *delta)),
            _ => None,
        }
    }
}

impl Ord for Staircase {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Staircase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<i64>> for Staircase {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Staircase::new(v)
    }
}

impl From<Staircase> for Vec<i64> {
    fn from(s: Staircase) -> Self {
        s.0
    }
}

impl fmt::Display for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Staircase {
    type Err = Error;
    /// Parses `"3,1,0"` or `"(3,1,0)"`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let entries = trimmed
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Staircase::new(entries)
    }
}

/// `ν +_d □` in increasing row order.
pub fn add_boxes(nu: &Staircase) -> Vec<Staircase> {
    (0..nu.d()).filter_map(|i| nu.with_row(i, 1)).collect()
}

/// `ν +_d □̄`: every single-entry decrement that stays weakly decreasing,
/// in increasing row order. Entries may become negative.
pub fn remove_boxes(nu: &Staircase) -> Vec<Staircase> {
    (0..nu.d()).filter_map(|i| nu.with_row(i, -1)).collect()
}

/// Removable corners of a partition: decrements that stay a partition.
pub fn remove_corners(lambda: &Staircase) -> Vec<Staircase> {
    remove_boxes(lambda).into_iter().filter(Staircase::is_partition).collect()
}

fn require_partition(lambda: &Staircase) -> Result<()> {
    if lambda.is_partition() {
        Ok(())
    } else {
        validation(format!("{lambda} has negative entries"))
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Hook-length formula for the symmetric-group irrep of shape `lambda`.
pub fn dim_perm_irrep(lambda: &Staircase) -> Result<u64> {
    require_partition(lambda)?;
    let rows = lambda.entries();
    let m = lambda.positive_size();
    let mut hooks = BigUint::one();
    for (i, &len) in rows.iter().enumerate() {
        for j in 0..len as usize {
            let arm = len as usize - j - 1;
            let leg = rows[i + 1..].iter().filter(|&&r| r as usize > j).count();
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    let dim = factorial(m) / hooks;
    dim.to_u64().ok_or_else(|| Error::Resource(format!("dim P of {lambda} overflows u64")))
}

/// Weyl dimension formula `∏_{i<j} (γ_i − γ_j + j − i)/(j − i)`.
pub fn dim_gl_irrep(gamma: &Staircase) -> u64 {
    let g = gamma.entries();
    let d = g.len();
    let mut acc = BigRational::one();
    for i in 0..d {
        for j in i + 1..d {
            let num = g[i] - g[j] + (j - i) as i64;
            acc *= BigRational::new(num.into(), ((j - i) as i64).into());
        }
    }
    debug_assert!(acc.is_integer());
    acc.to_integer().to_u64().expect("Weyl dimension fits in u64")
}

/// `binomial(k + d − 1, k)`, the dimension of the symmetric subspace.
pub fn sym_dim(k: usize, d: usize) -> u64 {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(d + i) / BigUint::from(i + 1);
    }
    acc.to_u64().expect("symmetric dimension fits in u64")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrQuery {
    pub lambda: Staircase,
    pub mu: Staircase,
    pub gamma: Staircase,
    pub d: usize,
}

impl LrQuery {
    pub fn new(lambda: Staircase, mu: Staircase, gamma: Staircase) -> Self {
        let d = lambda.d();
        LrQuery { lambda, mu, gamma, d }
    }
}

/// Multiplicity of `Q_γ` inside `Q_λ ⊗ Q_μ`.
pub fn lr_coeff(q: &LrQuery) -> Result<u64> {
    if q.lambda.d() != q.d || q.mu.d() != q.d || q.gamma.d() != q.d {
        return Err(Error::Shape(format!(
            "lr query mixes depths: {} {} {} with d={}",
            q.lambda, q.mu, q.gamma, q.d
        )));
    }
    let s = -q.lambda.entries()[q.d - 1].min(0);
    let t = -q.mu.entries()[q.d - 1].min(0);
    let lam = q.lambda.shifted(s);
    let mu = q.mu.shifted(t);
    let gam = q.gamma.shifted(s + t);
    if !gam.is_partition() || gam.total() != lam.total() + mu.total() {
        return Ok(0);
    }
    Ok(lr_partitions(gam.entries(), lam.entries(), mu.entries()))
}

/// Counts LR tableaux of skew shape `outer/inner` with content `content`.
fn lr_partitions(outer: &[i64], inner: &[i64], content: &[i64]) -> u64 {
    if outer.iter().zip(inner).any(|(o, i)| o < i) {
        return 0;
    }
    let cells: Vec<(usize, usize)> = (0..outer.len())
        .flat_map(|r| (inner[r] as usize..outer[r] as usize).rev().map(move |c| (r, c)))
        .collect();
    let width = outer.first().copied().unwrap_or(0) as usize;
    let mut grid = vec![vec![0u8; width]; outer.len()];
    let content: Vec<i64> = content.iter().copied().filter(|&x| x > 0).collect();
    let mut counts = vec![0i64; content.len() + 1];
    let ctx = LrCtx { inner, outer, content: &content, cells: &cells };
    lr_fill(&ctx, 0, &mut grid, &mut counts)
}

struct LrCtx<'a> {
    inner: &'a [i64],
    outer: &'a [i64],
    content: &'a [i64],
    cells: &'a [(usize, usize)],
}

fn lr_fill(ctx: &LrCtx<'_>, pos: usize, grid: &mut [Vec<u8>], counts: &mut [i64]) -> u64 {
    if pos == ctx.cells.len() {
        return 1;
    }
    let (r, c) = ctx.cells[pos];
    let mut hi = ctx.content.len() as u8;
    if c + 1 < ctx.outer[r] as usize {
        hi = hi.min(grid[r][c + 1]);
    }
    let mut lo = 1u8;
    if r > 0 && c >= ctx.inner[r - 1] as usize {
        lo = grid[r - 1][c] + 1;
    }
    let mut total = 0;
    for v in lo..=hi {
        let vi = v as usize;
        if counts[vi] + 1 > ctx.content[vi - 1] {
            continue;
        }
        if vi > 1 && counts[vi] + 1 > counts[vi - 1] {
            continue;
        }
        counts[vi] += 1;
        grid[r][c] = v;
        total += lr_fill(ctx, pos + 1, grid, counts);
        counts[vi] -= 1;
    }
    grid[r][c] = 0;
    total
}

/// All `γ` with nonzero `c_{λ,μ}^γ`, with their multiplicities, in canonical order.
pub fn lr_product(lambda: &Staircase, mu: &Staircase) -> Result<Vec<(Staircase, u64)>> {
    let d = lambda.d();
    if mu.d() != d {
        return Err(Error::Shape(format!("{lambda} and {mu} have different depths")));
    }
    let s = -lambda.entries()[d - 1].min(0);
    let t = -mu.entries()[d - 1].min(0);
    let lam = lambda.shifted(s);
    let mu_shift = mu.shifted(t);
    let size = (lam.total() + mu_shift.total()) as usize;
    let mut out = Vec::new();
    for gam in enumerate_partitions(size, d) {
        if gam.entries().iter().zip(lam.entries()).any(|(g, l)| g < l) {
            continue;
        }
        let c = lr_partitions(gam.entries(), lam.entries(), mu_shift.entries());
        if c > 0 {
            out.push((gam.shifted(-(s + t)), c));
        }
    }
    Ok(out)
}

/// Partitions of `m` with at most `d` rows, lexicographically descending.
pub fn enumerate_partitions(m: usize, d: usize) -> Vec<Staircase> {
    fn rec(rem: i64, max: i64, rows_left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rows_left == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in (0..=max.min(rem)).rev() {
            if v * rows_left as i64 >= rem {
                cur.push(v);
                rec(rem - v, v, rows_left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(m as i64, m as i64, d, &mut Vec::new(), &mut out);
    out.into_iter().map(Staircase).collect()
}

/// All `γ ⊢_d (m, n)`, lexicographically descending.
pub fn enumerate_staircases(m: usize, n: usize, d: usize) -> Vec<Staircase> {
    let mut out = Vec::new();
    for k in 0..=m.min(n) {
        for alpha in enumerate_partitions(m - k, d) {
            for beta in enumerate_partitions(n - k, d) {
                let la = alpha.length();
                let lb = beta.length();
                if la + lb > d {
                    continue;
                }
                let mut v = alpha.entries().to_vec();
                for (i, b) in beta.entries().iter().enumerate() {
                    v[d - 1 - i] -= b;
                }
                out.push(Staircase(v));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Removes the box at the first row `i` with `λ_i > λ_{i+1}` (the last row
/// counts as descending when nonzero).
pub fn first_descent_removal(lambda: &Staircase) -> Result<Staircase> {
    require_partition(lambda)?;
    let v = lambda.entries();
    let d = v.len();
    for i in 0..d {
        let next = if i + 1 < d { v[i + 1] } else { 0 };
        if v[i] > next {
            return Ok(lambda.with_row(i, -1).expect("descent row is removable"));
        }
    }
    validation("cannot remove a box from the empty partition")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(v: &[i64]) -> Staircase {
        Staircase::new(v.to_vec()).unwrap()
    }

    /// Counts standard Young tableaux by removing the largest entry recursively.
    fn syt_count(shape: &[i64]) -> u64 {
        if shape.iter().all(|&x| x == 0) {
            return 1;
        }
        let mut total = 0;
        for i in 0..shape.len() {
            let next = shape.get(i + 1).copied().unwrap_or(0);
            if shape[i] > next {
                let mut s = shape.to_vec();
                s[i] -= 1;
                total += syt_count(&s);
            }
        }
        total
    }

    /// Weight multiset of Q_λ for GL(d): semistandard tableaux contents.
    fn ssyt_weights(shape: &[i64], d: usize) -> Vec<Vec<i64>> {
        let cells: Vec<(usize, usize)> =
            (0..shape.len()).flat_map(|r| (0..shape[r] as usize).map(move |c| (r, c))).collect();
        let mut grid = vec![vec![0usize; shape.first().copied().unwrap_or(0) as usize]; shape.len()];
        let mut out = Vec::new();
        fn rec(
            cells: &[(usize, usize)],
            pos: usize,
            grid: &mut Vec<Vec<usize>>,
            d: usize,
            out: &mut Vec<Vec<i64>>,
        ) {
            if pos == cells.len() {
                let mut w = vec![0i64; d];
                for (r, c) in cells {
                    w[grid[*r][*c]] += 1;
                }
                out.push(w);
                return;
            }
            let (r, c) = cells[pos];
            let lo_row = if c > 0 { grid[r][c - 1] } else { 0 };
            let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 0 };
            for v in lo_row.max(lo_col)..d {
                grid[r][c] = v;
                rec(cells, pos + 1, grid, d, out);
            }
        }
        rec(&cells, 0, &mut grid, d, &mut out);
        out
    }

    /// Character-based oracle: multiplicity of γ in λ⊗μ by peeling dominant weights.
    fn lr_by_characters(lam: &[i64], mu: &[i64], gam: &[i64], d: usize) -> i64 {
        use std::collections::BTreeMap;
        let mut prod: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for a in ssyt_weights(lam, d) {
            for b in ssyt_weights(mu, d) {
                let w: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                *prod.entry(w).or_default() += 1;
            }
        }
        let mut mult = 0;
        loop {
            let top = prod
                .iter()
                .filter(|(w, c)| **c != 0 && w.windows(2).all(|p| p[0] >= p[1]))
                .map(|(w, _)| w.clone())
                .max();
            let Some(top) = top else { break };
            let c = prod[&top];
            if top == gam {
                mult = c;
            }
            for w in ssyt_weights(&top, d) {
                *prod.entry(w).or_default() -= c;
            }
        }
        mult
    }

    #[test]
    fn add_boxes_examples() {
        assert_eq!(
            add_boxes(&sc(&[2, 1, 0, -1])),
            vec![sc(&[3, 1, 0, -1]), sc(&[2, 2, 0, -1]), sc(&[2, 1, 1, -1]), sc(&[2, 1, 0, 0])]
        );
        assert_eq!(add_boxes(&sc(&[0, 0])), vec![sc(&[1, 0])]);
        assert_eq!(add_boxes(&sc(&[1, 1])), vec![sc(&[2, 1])]);
    }

    #[test]
    fn remove_examples() {
        assert_eq!(remove_boxes(&sc(&[2, 1])), vec![sc(&[1, 1]), sc(&[2, 0])]);
        assert_eq!(remove_corners(&sc(&[1, 0])), vec![sc(&[0, 0])]);
        assert_eq!(remove_boxes(&sc(&[1, 0])), vec![sc(&[0, 0]), sc(&[1, -1])]);
        assert_eq!(
            remove_boxes(&sc(&[5, 3, 3, 2])),
            vec![sc(&[4, 3, 3, 2]), sc(&[5, 3, 2, 2]), sc(&[5, 3, 3, 1])]
        );
    }

    #[test]
    fn add_remove_adjoint() {
        for s in enumerate_staircases(3, 2, 3) {
            for t in add_boxes(&s) {
                assert!(remove_boxes(&t).contains(&s));
            }
            for t in remove_boxes(&s) {
                assert!(add_boxes(&t).contains(&s));
            }
        }
    }

    #[test]
    fn hook_length_matches_syt() {
        assert_eq!(dim_perm_irrep(&sc(&[2, 1])).unwrap(), 2);
        assert_eq!(dim_perm_irrep(&sc(&[3, 1])).unwrap(), 3);
        assert_eq!(dim_perm_irrep(&sc(&[5, 0])).unwrap(), 1);
        for m in 0..=8 {
            for lam in enumerate_partitions(m, 4) {
                assert_eq!(dim_perm_irrep(&lam).unwrap(), syt_count(lam.entries()), "{lam}");
            }
        }
        assert!(dim_perm_irrep(&sc(&[1, -1])).is_err());
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(dim_gl_irrep(&sc(&[1, 0])), 2);
        assert_eq!(dim_gl_irrep(&sc(&[2, 1])), 2);
        assert_eq!(dim_gl_irrep(&sc(&[1, -1])), 3);
        for lam in enumerate_partitions(4, 3) {
            assert_eq!(dim_gl_irrep(&lam) as usize, ssyt_weights(lam.entries(), 3).len());
            assert_eq!(dim_gl_irrep(&lam), dim_gl_irrep(&lam.shifted(-2)));
        }
    }

    #[test]
    fn symmetric_dimensions() {
        assert_eq!(sym_dim(2, 2), 3);
        assert_eq!(sym_dim(1, 5), 5);
        assert_eq!(sym_dim(3, 2), 4);
        assert_eq!(sym_dim(0, 3), 1);
    }

    #[test]
    fn lr_examples() {
        let q = |a: &[i64], b: &[i64], c: &[i64]| lr_coeff(&LrQuery::new(sc(a), sc(b), sc(c))).unwrap();
        assert_eq!(q(&[1, 0], &[1, 0], &[2, 0]), 1);
        assert_eq!(q(&[1, 0], &[1, 0], &[1, 1]), 1);
        assert_eq!(q(&[2, 1, 0], &[2, 1, 0], &[3, 2, 1]), 2);
        assert_eq!(q(&[1, 0], &[0, -1], &[0, 0]), 1);
        assert_eq!(q(&[1, 0], &[0, -1], &[1, -1]), 1);
        assert!(lr_coeff(&LrQuery { lambda: sc(&[1, 0]), mu: sc(&[1, 0]), gamma: sc(&[2, 0]), d: 3 }).is_err());
    }

    #[test]
    fn lr_matches_character_oracle() {
        for d in 1..=3 {
            for a in 0..=3 {
                for b in 0..=3 {
                    for lam in enumerate_partitions(a, d) {
                        for mu in enumerate_partitions(b, d) {
                            for gam in enumerate_partitions(a + b, d) {
                                let got = lr_coeff(&LrQuery::new(lam.clone(), mu.clone(), gam.clone())).unwrap();
                                let want = lr_by_characters(lam.entries(), mu.entries(), gam.entries(), d);
                                assert_eq!(got as i64, want, "{lam} {mu} {gam}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lr_dimension_sum() {
        for lam in enumerate_staircases(2, 1, 3) {
            for mu in enumerate_staircases(1, 1, 3) {
                let total: u64 =
                    lr_product(&lam, &mu).unwrap().iter().map(|(g, c)| c * dim_gl_irrep(g)).sum();
                assert_eq!(total, dim_gl_irrep(&lam) * dim_gl_irrep(&mu));
            }
        }
    }

    #[test]
    fn single_box_multiplicity_free() {
        for nu in enumerate_staircases(2, 2, 3) {
            let bx = Staircase::single_box(3);
            for (g, c) in lr_product(&nu, &bx).unwrap() {
                assert_eq!(c, 1);
                assert!(add_boxes(&nu).contains(&g));
            }
            assert_eq!(lr_product(&nu, &bx).unwrap().len(), add_boxes(&nu).len());
        }
    }

    #[test]
    fn staircase_enumeration() {
        assert_eq!(enumerate_staircases(2, 0, 2), vec![sc(&[2, 0]), sc(&[1, 1])]);
        assert_eq!(enumerate_staircases(1, 1, 2), vec![sc(&[1, -1]), sc(&[0, 0])]);
        assert_eq!(enumerate_staircases(3, 0, 2), vec![sc(&[3, 0]), sc(&[2, 1])]);
        for s in enumerate_staircases(3, 2, 3) {
            assert!(s.is_mixed_of(3, 2));
        }
    }

    #[test]
    fn schur_weyl_count() {
        for d in 1..=3usize {
            for m in 0..=6usize {
                let total: u64 = enumerate_partitions(m, d)
                    .iter()
                    .map(|l| dim_perm_irrep(l).unwrap() * dim_gl_irrep(l))
                    .sum();
                assert_eq!(total, (d as u64).pow(m as u32));
            }
        }
    }

    #[test]
    fn descent_rule() {
        assert_eq!(first_descent_removal(&sc(&[4, 2, 1])).unwrap(), sc(&[3, 2, 1]));
        assert_eq!(first_descent_removal(&sc(&[2, 2, 0])).unwrap(), sc(&[2, 1, 0]));
        assert_eq!(first_descent_removal(&sc(&[1, 1, 1])).unwrap(), sc(&[1, 1, 0]));
        assert!(first_descent_removal(&sc(&[0, 0])).is_err());
    }

    #[test]
    fn ordering_and_parsing() {
        let mut v = vec![sc(&[1, 1]), sc(&[2, 0])];
        v.sort();
        assert_eq!(v, vec![sc(&[2, 0]), sc(&[1, 1])]);
        assert_eq!("(2,1,-1)".parse::<Staircase>().unwrap(), sc(&[2, 1, -1]));
        assert!("1,2".parse::<Staircase>().is_err());
        let json = serde_json::to_string(&sc(&[1, 0, -2])).unwrap();
        assert_eq!(json, "[1,0,-2]");
        assert_eq!(serde_json::from_str::<Staircase>(&json).unwrap(), sc(&[1, 0, -2]));
    }
}
