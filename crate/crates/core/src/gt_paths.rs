//! Gelfand-Tsetlin paths and uniform sampling of GT basis vectors.
//!
//! A path `ν^0 → … → ν^{k+l}` adds one box per step for the first `k` steps
//! and removes one box per step for the remaining `l`. Paths starting at the
//! empty staircase index the GT basis of the permutation-side irreps.
//!
//! The hook walks move to a uniformly chosen cell in the current hook, i.e.
//! strictly right in the same row or strictly down in the same column.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{add_boxes, dim_perm_irrep, remove_boxes, remove_corners, Staircase};
use crate::error::{validation, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Staircase>", into = "Vec<Staircase>")]
pub struct GtPath {
    steps: Vec<Staircase>,
    k: usize,
    l: usize,
}

impl GtPath {
    pub fn new(steps: Vec<Staircase>, k: usize, l: usize) -> Result<Self> {
        if steps.len() != k + l + 1 {
            return validation(format!("path of {} steps cannot have k={k}, l={l}", steps.len()));
        }
        let d = steps[0].d();
        for (i, w) in steps.windows(2).enumerate() {
            if w[1].d() != d {
                return validation("path mixes depths");
            }
            let ok = if i < k { add_boxes(&w[0]).contains(&w[1]) } else { remove_boxes(&w[0]).contains(&w[1]) };
            if !ok {
                return validation(format!("invalid step {} -> {} at position {i}", w[0], w[1]));
            }
        }
        Ok(GtPath { steps, k, l })
    }

    /// Infers `k` and `l` from the step directions.
    pub fn from_steps(steps: Vec<Staircase>) -> Result<Self> {
        if steps.is_empty() {
            return validation("empty path");
        }
        let k = steps
            .windows(2)
            .take_while(|w| w[1].total() == w[0].total() + 1)
            .count();
        let l = steps.len() - 1 - k;
        GtPath::new(steps, k, l)
    }

    pub fn trivial(mu: Staircase) -> Self {
        GtPath { steps: vec![mu], k: 0, l: 0 }
    }

    pub fn steps(&self) -> &[Staircase] {
        &self.steps
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn d(&self) -> usize {
        self.steps[0].d()
    }

    pub fn start(&self) -> &Staircase {
        &self.steps[0]
    }

    pub fn end(&self) -> &Staircase {
        self.steps.last().expect("paths are nonempty")
    }

    /// Row index of the box moved at each step.
    pub fn rows(&self) -> Vec<usize> {
        self.steps
            .windows(2)
            .map(|w| w[0].single_row_difference(&w[1]).expect("validated path").0)
            .collect()
    }

    /// Whether step `i` (1-based, producing `ν^i`) removes a box.
    pub fn is_removal(&self, i: usize) -> bool {
        i > self.k
    }
}

impl TryFrom<Vec<Staircase>> for GtPath {
    type Error = Error;
    fn try_from(v: Vec<Staircase>) -> Result<Self> {
        GtPath::from_steps(v)
    }
}

impl From<GtPath> for Vec<Staircase> {
    fn from(p: GtPath) -> Self {
        p.steps
    }
}

fn next_layer(s: &Staircase, adding: bool) -> Vec<Staircase> {
    if adding {
        add_boxes(s)
    } else {
        remove_boxes(s)
    }
}

/// All paths `μ → λ` with `k` additions then `l` removals, grouped by endpoint.
/// Within a group paths are ordered lexicographically by their row sequence.
pub fn enumerate_paths(mu: &Staircase, k: usize, l: usize) -> BTreeMap<Staircase, Vec<GtPath>> {
    fn rec(cur: &mut Vec<Staircase>, k: usize, l: usize, out: &mut BTreeMap<Staircase, Vec<GtPath>>) {
        let done = cur.len() - 1;
        if done == k + l {
            let end = cur.last().unwrap().clone();
            out.entry(end).or_default().push(GtPath { steps: cur.clone(), k, l });
            return;
        }
        for next in next_layer(cur.last().unwrap(), done < k) {
            cur.push(next);
            rec(cur, k, l, out);
            cur.pop();
        }
    }
    let mut out = BTreeMap::new();
    rec(&mut vec![mu.clone()], k, l, &mut out);
    out
}

/// Path counts `dim P_{μ→λ}^{k,l,d}` for every reachable `λ`.
pub fn count_paths(mu: &Staircase, k: usize, l: usize) -> BTreeMap<Staircase, u64> {
    let mut layer: BTreeMap<Staircase, u64> = BTreeMap::from([(mu.clone(), 1)]);
    for step in 0..k + l {
        let mut next = BTreeMap::new();
        for (s, c) in &layer {
            for t in next_layer(s, step < k) {
                *next.entry(t).or_insert(0) += c;
            }
        }
        layer = next;
    }
    layer
}

/// `dim P_γ^{m,n,d}`: number of empty-based paths with `m` additions and `n` removals.
pub fn dim_path_space(gamma: &Staircase, m: usize, n: usize) -> u64 {
    count_paths(&Staircase::zero(gamma.d()), m, n).get(gamma).copied().unwrap_or(0)
}

/// The lexicographically smallest path `∅ → γ` (positive boxes first).
pub fn first_path(gamma: &Staircase) -> GtPath {
    let k = gamma.positive_size();
    let l = gamma.negative_size();
    let d = gamma.d();
    let mut steps = vec![Staircase::zero(d)];
    for step in 0..k + l {
        let cur = steps.last().unwrap();
        let remaining_k = k.saturating_sub(step + 1);
        let remaining_l = k + l - step - 1 - remaining_k;
        let next = next_layer(cur, step < k)
            .into_iter()
            .find(|cand| count_paths(cand, remaining_k, remaining_l).contains_key(gamma))
            .expect("γ is reachable from ∅");
        steps.push(next);
    }
    GtPath { steps, k, l }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovalDistribution {
    pub entries: BTreeMap<Staircase, BigRational>,
}

impl RemovalDistribution {
    pub fn probability(&self, mu: &Staircase) -> BigRational {
        self.entries.get(mu).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn to_f64(&self) -> BTreeMap<Staircase, f64> {
        use num_traits::ToPrimitive;
        self.entries.iter().map(|(k, v)| (k.clone(), v.to_f64().unwrap_or(f64::NAN))).collect()
    }
}

fn nonempty_partition(lambda: &Staircase) -> Result<()> {
    if !lambda.is_partition() {
        return validation(format!("{lambda} is not a partition"));
    }
    if lambda.is_zero() {
        return validation("cannot remove a box from the empty partition");
    }
    Ok(())
}

/// `P(μ) = dim P_μ / dim P_λ` over the removable corners of `λ`.
pub fn exact_removal_distribution(lambda: &Staircase) -> Result<RemovalDistribution> {
    nonempty_partition(lambda)?;
    let total = BigRational::from_integer(dim_perm_irrep(lambda)?.into());
    let mut entries = BTreeMap::new();
    for mu in remove_corners(lambda) {
        let p = BigRational::from_integer(dim_perm_irrep(&mu)?.into()) / &total;
        entries.insert(mu, p);
    }
    Ok(RemovalDistribution { entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HookWalkMode {
    Alg1,
    Alg3,
}

impl std::str::FromStr for HookWalkMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alg1" => Ok(HookWalkMode::Alg1),
            "alg3" => Ok(HookWalkMode::Alg3),
            _ => Err(Error::Parse(format!("unknown mode {s:?}, expected alg1 or alg3"))),
        }
    }
}

fn rows_of(lambda: &Staircase) -> Vec<usize> {
    lambda.entries().iter().filter(|&&x| x > 0).map(|&x| x as usize).collect()
}

fn column_length(rows: &[usize], j: usize) -> usize {
    rows.iter().filter(|&&r| r > j).count()
}

fn remove_in_row(lambda: &Staircase, row: usize) -> Staircase {
    let mut v = lambda.entries().to_vec();
    v[row] -= 1;
    Staircase::new(v).expect("corner removal keeps the staircase valid")
}

/// Row and column groups of the squashed diagram.
struct Squashed {
    /// Group sizes `v(k)` and first row of each row group.
    v: Vec<usize>,
    row_start: Vec<usize>,
    /// Group sizes `w(l)`.
    w: Vec<usize>,
    /// Squashed row lengths `ν_k`.
    nu: Vec<usize>,
}

impl Squashed {
    fn new(rows: &[usize]) -> Self {
        let mut v = Vec::new();
        let mut row_start = Vec::new();
        for (i, &r) in rows.iter().enumerate() {
            if i == 0 || rows[i - 1] != r {
                v.push(0);
                row_start.push(i);
            }
            *v.last_mut().unwrap() += 1;
        }
        let cols: Vec<usize> = (0..rows[0]).map(|j| column_length(rows, j)).collect();
        let mut w = Vec::new();
        let mut col_end = Vec::new();
        for (j, &c) in cols.iter().enumerate() {
            if j == 0 || cols[j - 1] != c {
                w.push(0);
                col_end.push(j);
            }
            *w.last_mut().unwrap() += 1;
            *col_end.last_mut().unwrap() = j;
        }
        let nu = row_start
            .iter()
            .map(|&i| col_end.iter().filter(|&&e| e < rows[i]).count())
            .collect();
        Squashed { v, row_start, w, nu }
    }

    fn moves(&self, k: usize, l: usize) -> Vec<((usize, usize), usize)> {
        let mut out: Vec<((usize, usize), usize)> = (l + 1..self.nu[k]).map(|l2| ((k, l2), self.w[l2])).collect();
        out.extend((k + 1..self.v.len()).filter(|&k2| self.nu[k2] > l).map(|k2| ((k2, l), self.v[k2])));
        out
    }

    fn last_row(&self, k: usize) -> usize {
        self.row_start[k] + self.v[k] - 1
    }
}

/// The removal distribution induced by the hook walk, computed exactly.
pub fn next_step_distribution(lambda: &Staircase, mode: HookWalkMode) -> Result<RemovalDistribution> {
    nonempty_partition(lambda)?;
    let rows = rows_of(lambda);
    let m: usize = rows.iter().sum();
    let corners: Vec<usize> = (0..rows.len()).filter(|&i| i + 1 == rows.len() || rows[i + 1] < rows[i]).collect();
    let zero = || vec![BigRational::zero(); corners.len()];
    let mut start = zero();
    match mode {
        HookWalkMode::Alg1 => {
            let mut dist: Vec<Vec<Vec<BigRational>>> = rows.iter().map(|&r| vec![Vec::new(); r]).collect();
            for i in (0..rows.len()).rev() {
                for j in (0..rows[i]).rev() {
                    let hook: Vec<(usize, usize)> = (j + 1..rows[i])
                        .map(|j2| (i, j2))
                        .chain((i + 1..rows.len()).filter(|&i2| rows[i2] > j).map(|i2| (i2, j)))
                        .collect();
                    let mut p = zero();
                    if hook.is_empty() {
                        let c = corners.iter().position(|&c| c == i).expect("hookless cell is a corner");
                        p[c] = BigRational::one();
                    } else {
                        let weight = BigRational::new(1.into(), (hook.len() as i64).into());
                        for (a, b) in hook {
                            for (acc, x) in p.iter_mut().zip(&dist[a][b]) {
                                *acc += x * &weight;
                            }
                        }
                    }
                    for (acc, x) in start.iter_mut().zip(&p) {
                        *acc += x;
                    }
                    dist[i][j] = p;
                }
            }
            let norm = BigRational::new(1.into(), (m as i64).into());
            for x in start.iter_mut() {
                *x *= &norm;
            }
        }
        HookWalkMode::Alg3 => {
            let sq = Squashed::new(&rows);
            let mut dist: Vec<Vec<Vec<BigRational>>> = sq.nu.iter().map(|&r| vec![Vec::new(); r]).collect();
            for k in (0..sq.v.len()).rev() {
                for l in (0..sq.nu[k]).rev() {
                    let moves = sq.moves(k, l);
                    let mut p = zero();
                    if moves.is_empty() {
                        let row = sq.last_row(k);
                        let c = corners.iter().position(|&c| c == row).expect("terminal block ends at a corner");
                        p[c] = BigRational::one();
                    } else {
                        let total: usize = moves.iter().map(|(_, wt)| wt).sum();
                        for ((a, b), wt) in moves {
                            let f = BigRational::new((wt as i64).into(), (total as i64).into());
                            for (acc, x) in p.iter_mut().zip(&dist[a][b]) {
                                *acc += x * &f;
                            }
                        }
                    }
                    let f = BigRational::new(((sq.v[k] * sq.w[l]) as i64).into(), (m as i64).into());
                    for (acc, x) in start.iter_mut().zip(&p) {
                        *acc += x * &f;
                    }
                    dist[k][l] = p;
                }
            }
        }
    }
    let entries = corners
        .iter()
        .zip(start)
        .filter(|(_, p)| !p.is_zero())
        .map(|(&row, p)| (remove_in_row(lambda, row), p))
        .collect();
    Ok(RemovalDistribution { entries })
}

fn pick_weighted<R: Rng + ?Sized>(rng: &mut R, weights: &[usize]) -> usize {
    let total: usize = weights.iter().sum();
    let mut u = rng.random_range(0..total);
    for (i, &w) in weights.iter().enumerate() {
        if u < w {
            return i;
        }
        u -= w;
    }
    unreachable!("draw below total weight")
}

/// Samples one box removal; also returns the number of random draws used.
pub fn sample_remove_box_counted<R: Rng + ?Sized>(
    lambda: &Staircase,
    rng: &mut R,
    mode: HookWalkMode,
) -> Result<(Staircase, usize)> {
    nonempty_partition(lambda)?;
    let rows = rows_of(lambda);
    let mut draws = 1;
    let row = match mode {
        HookWalkMode::Alg1 => {
            let m: usize = rows.iter().sum();
            let mut idx = rng.random_range(0..m);
            let mut i = 0;
            while idx >= rows[i] {
                idx -= rows[i];
                i += 1;
            }
            let mut j = idx;
            loop {
                let arm = rows[i] - j - 1;
                let leg = column_length(&rows, j) - i - 1;
                if arm + leg == 0 {
                    break i;
                }
                draws += 1;
                let h = rng.random_range(0..arm + leg);
                if h < arm {
                    j += h + 1;
                } else {
                    i += h - arm + 1;
                }
            }
        }
        HookWalkMode::Alg3 => {
            let sq = Squashed::new(&rows);
            let cells: Vec<(usize, usize)> =
                (0..sq.v.len()).flat_map(|k| (0..sq.nu[k]).map(move |l| (k, l))).collect();
            let weights: Vec<usize> = cells.iter().map(|&(k, l)| sq.v[k] * sq.w[l]).collect();
            let (mut k, mut l) = cells[pick_weighted(rng, &weights)];
            loop {
                let moves = sq.moves(k, l);
                if moves.is_empty() {
                    break sq.last_row(k);
                }
                draws += 1;
                let ws: Vec<usize> = moves.iter().map(|(_, w)| *w).collect();
                (k, l) = moves[pick_weighted(rng, &ws)].0;
            }
        }
    };
    Ok((remove_in_row(lambda, row), draws))
}

pub fn sample_remove_box<R: Rng + ?Sized>(lambda: &Staircase, rng: &mut R, mode: HookWalkMode) -> Result<Staircase> {
    sample_remove_box_counted(lambda, rng, mode).map(|(mu, _)| mu)
}

/// Replays an explicit hook walk given as 1-based `(row, column)` cells and
/// returns the partition with the final corner removed.
pub fn walk_endpoint(lambda: &Staircase, walk: &[(usize, usize)]) -> Result<Staircase> {
    nonempty_partition(lambda)?;
    let rows = rows_of(lambda);
    let inside = |(i, j): (usize, usize)| i >= 1 && j >= 1 && i <= rows.len() && j <= rows[i - 1];
    let Some(&first) = walk.first() else {
        return validation("empty walk");
    };
    if !inside(first) {
        return validation(format!("cell {first:?} outside the diagram"));
    }
    for w in walk.windows(2) {
        let ((i, j), (i2, j2)) = (w[0], w[1]);
        let hook_move = (i2 == i && j2 > j) || (j2 == j && i2 > i);
        if !inside(w[1]) || !hook_move {
            return validation(format!("{:?} -> {:?} is not a hook move", w[0], w[1]));
        }
    }
    let (i, j) = *walk.last().unwrap();
    let corner = j == rows[i - 1] && (i == rows.len() || rows[i] < j);
    if !corner {
        return validation(format!("walk ends at ({i},{j}), which is not a corner"));
    }
    Ok(remove_in_row(lambda, i - 1))
}

/// Uniformly random GT path `∅ → λ` by repeated squashed hook walks;
/// also returns the number of random draws used.
pub fn sample_gt_path_counted<R: Rng + ?Sized>(lambda: &Staircase, rng: &mut R) -> Result<(GtPath, usize)> {
    if !lambda.is_partition() {
        return validation(format!("{lambda} is not a partition"));
    }
    let mut rev = vec![lambda.clone()];
    let mut draws = 0;
    while !rev.last().unwrap().is_zero() {
        let (mu, n) = sample_remove_box_counted(rev.last().unwrap(), rng, HookWalkMode::Alg3)?;
        draws += n;
        rev.push(mu);
    }
    rev.reverse();
    let k = rev.len() - 1;
    Ok((GtPath { steps: rev, k, l: 0 }, draws))
}

pub fn sample_gt_path<R: Rng + ?Sized>(lambda: &Staircase, rng: &mut R) -> Result<GtPath> {
    sample_gt_path_counted(lambda, rng).map(|(p, _)| p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_partitions, enumerate_staircases, lr_coeff, LrQuery};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn sc(v: &[i64]) -> Staircase {
        Staircase::new(v.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn path_enumeration_examples() {
        let paths = enumerate_paths(&sc(&[0, 0]), 3, 0);
        assert_eq!(paths[&sc(&[3, 0])].len(), 1);
        assert_eq!(paths[&sc(&[2, 1])].len(), 2);
        assert_eq!(paths[&sc(&[2, 1])][0].rows(), vec![0, 0, 1]);
        assert_eq!(paths[&sc(&[2, 1])][1].rows(), vec![0, 1, 0]);

        for n in 2..=5i64 {
            for m in 1..n {
                let mut start = vec![0; 3];
                start[0] = n;
                let p = enumerate_paths(&sc(&start), 0, (n - m) as usize);
                let mut end = vec![0; 3];
                end[0] = m;
                assert_eq!(p[&sc(&end)].len(), 1);
            }
        }
        let id = enumerate_paths(&sc(&[4, 2, 1]), 0, 0);
        assert_eq!(id[&sc(&[4, 2, 1])], vec![GtPath::trivial(sc(&[4, 2, 1]))]);
    }

    #[test]
    fn mixed_path_shape() {
        // ∅ → (1,0,0,0) → (2,0,0,0) → (2,1,0,0) → (2,1,0,−1)
        let p = GtPath::from_steps(vec![
            sc(&[0, 0, 0, 0]),
            sc(&[1, 0, 0, 0]),
            sc(&[2, 0, 0, 0]),
            sc(&[2, 1, 0, 0]),
            sc(&[2, 1, 0, -1]),
        ])
        .unwrap();
        assert_eq!((p.k(), p.l()), (3, 1));
        let all = enumerate_paths(&sc(&[0, 0, 0, 0]), 3, 1);
        assert!(all[&sc(&[2, 1, 0, -1])].contains(&p));
        assert_eq!(first_path(&sc(&[2, 1, 0, -1])).rows(), vec![0, 0, 1, 3]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<GtPath>(&s).unwrap(), p);
    }

    #[test]
    fn counts_agree_with_enumeration_and_hooks() {
        for d in 1..=3 {
            for (k, l) in [(2, 1), (3, 0), (1, 2), (2, 2)] {
                let e = enumerate_paths(&Staircase::zero(d), k, l);
                let c = count_paths(&Staircase::zero(d), k, l);
                assert_eq!(e.len(), c.len());
                for (g, ps) in &e {
                    assert_eq!(ps.len() as u64, c[g]);
                }
            }
            for lam in enumerate_partitions(5, d) {
                assert_eq!(dim_path_space(&lam, 5, 0), dim_perm_irrep(&lam).unwrap());
            }
        }
    }

    #[test]
    fn path_count_lr_identity() {
        for d in 1..=3usize {
            for k in 0..=2 {
                for l in 0..=2 {
                    for mu in enumerate_staircases(1, 1, d) {
                        for (lam, count) in count_paths(&mu, k, l) {
                            let expected: u64 = enumerate_staircases(k, l, d)
                                .iter()
                                .map(|g| {
                                    dim_path_space(g, k, l)
                                        * lr_coeff(&LrQuery::new(mu.clone(), g.clone(), lam.clone())).unwrap()
                                })
                                .sum();
                            assert_eq!(count, expected, "{mu} -> {lam} k={k} l={l}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exact_distribution_examples() {
        let dist = exact_removal_distribution(&sc(&[3, 1])).unwrap();
        assert_eq!(dist.probability(&sc(&[2, 1])), q(2, 3));
        assert_eq!(dist.probability(&sc(&[3, 0])), q(1, 3));
        let dist = exact_removal_distribution(&sc(&[4, 0])).unwrap();
        assert_eq!(dist.entries.len(), 1);
        assert_eq!(dist.probability(&sc(&[3, 0])), q(1, 1));
        let dist = exact_removal_distribution(&sc(&[2, 1])).unwrap();
        assert_eq!(dist.probability(&sc(&[2, 0])), q(1, 2));
        assert_eq!(dist.probability(&sc(&[1, 1])), q(1, 2));
        assert!(exact_removal_distribution(&sc(&[0, 0])).is_err());
    }

    #[test]
    fn walks_reproduce_exact_distribution() {
        let d21 = next_step_distribution(&sc(&[2, 1]), HookWalkMode::Alg1).unwrap();
        assert_eq!(d21.probability(&sc(&[2, 0])), q(1, 2));
        assert_eq!(d21.probability(&sc(&[1, 1])), q(1, 2));
        for mode in [HookWalkMode::Alg1, HookWalkMode::Alg3] {
            let d = next_step_distribution(&sc(&[6]), mode).unwrap();
            assert_eq!(d.probability(&sc(&[5])), q(1, 1));
        }
        for m in 1..=6 {
            for lam in enumerate_partitions(m, 4) {
                let exact = exact_removal_distribution(&lam).unwrap();
                assert_eq!(next_step_distribution(&lam, HookWalkMode::Alg1).unwrap(), exact, "{lam}");
                assert_eq!(next_step_distribution(&lam, HookWalkMode::Alg3).unwrap(), exact, "{lam}");
            }
        }
    }

    #[test]
    fn squashed_diagram_of_example_shape() {
        let sq = Squashed::new(&[5, 3, 3, 2]);
        assert_eq!(sq.v, vec![1, 2, 1]);
        assert_eq!(sq.w, vec![2, 1, 2]);
        assert_eq!(sq.nu, vec![3, 2, 1]);
    }

    #[test]
    fn example_walk() {
        let lam = sc(&[5, 3, 3, 2]);
        assert_eq!(walk_endpoint(&lam, &[(1, 2), (3, 2), (3, 3)]).unwrap(), sc(&[5, 3, 2, 2]));
        assert!(walk_endpoint(&lam, &[(1, 2), (2, 3)]).is_err());
        assert!(walk_endpoint(&lam, &[(1, 2), (3, 2)]).is_err());
    }

    #[test]
    fn single_row_sampling_is_deterministic() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for mode in [HookWalkMode::Alg1, HookWalkMode::Alg3] {
            for _ in 0..20 {
                assert_eq!(sample_remove_box(&sc(&[4, 0]), &mut rng, mode).unwrap(), sc(&[3, 0]));
            }
        }
        let p = sample_gt_path(&sc(&[2, 0]), &mut rng).unwrap();
        assert_eq!(p.steps(), &[sc(&[0, 0]), sc(&[1, 0]), sc(&[2, 0])]);
        assert!(sample_remove_box(&sc(&[0, 0]), &mut rng, HookWalkMode::Alg1).is_err());
    }

    #[test]
    fn sampled_paths_are_uniform() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let n = 100_000;
        let mut first = 0usize;
        let paths = &enumerate_paths(&sc(&[0, 0]), 3, 0)[&sc(&[2, 1])];
        for _ in 0..n {
            if sample_gt_path(&sc(&[2, 1]), &mut rng).unwrap() == paths[0] {
                first += 1;
            }
        }
        assert!((first as f64 / n as f64 - 0.5).abs() < 0.01);
    }
}
