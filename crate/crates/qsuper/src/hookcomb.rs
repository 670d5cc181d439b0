//! Hook partitions, hook semistandard tableaux and the dimension counts
//! built from them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A partition stored as weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct HookPartition {
    parts: Vec<usize>,
}

impl HookPartition {
    /// Trailing zeros are trimmed; panics if `parts` is not weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts must be weakly decreasing");
        HookPartition { parts }
    }

    pub fn empty() -> Self {
        HookPartition { parts: Vec::new() }
    }

    /// The rectangle `(width^height)`.
    pub fn rectangle(width: usize, height: usize) -> Self {
        if width == 0 {
            return Self::empty();
        }
        HookPartition { parts: vec![width; height] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `λ_i` with 1-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let w = self.part(1);
        let parts = (1..=w).map(|i| self.parts.iter().filter(|&&p| p >= i).count()).collect();
        HookPartition { parts }
    }

    /// `λ_{k+1} <= l`.
    pub fn is_hook(&self, k: usize, l: usize) -> bool {
        self.part(k + 1) <= l
    }

    /// Young diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &HookPartition) -> bool {
        other.parts.iter().enumerate().all(|(i, &p)| self.part(i + 1) >= p)
    }
}

impl fmt::Display for HookPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A weight `(x_1..x_m; y_1..y_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightVector {
    pub entries: Vec<i64>,
    pub even_len: usize,
}

/// All partitions of `size` with `λ_{k+1} <= l`, lexicographically descending.
pub fn enumerate_hook_partitions(k: usize, l: usize, size: usize) -> Vec<HookPartition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    partitions_rec(size, size, &mut cur, &mut |p| {
        let hp = HookPartition { parts: p.to_vec() };
        if hp.is_hook(k, l) {
            out.push(hp);
        }
    });
    out
}

fn partitions_rec(rem: usize, max: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if rem == 0 {
        f(cur);
        return;
    }
    for p in (1..=rem.min(max)).rev() {
        cur.push(p);
        partitions_rec(rem - p, p, cur, f);
        cur.pop();
    }
}

/// `λ^♮ = (λ_1..λ_m; <λ'_1 - m>..<λ'_n - m>)`.
pub fn lambda_natural(lambda: &HookPartition, m: usize, n: usize) -> Result<WeightVector> {
    if !lambda.is_hook(m, n) {
        return Err(Error::NotHook(format!("{lambda} is not ({m},{n})-hook")));
    }
    let t = lambda.transpose();
    let mut entries: Vec<i64> = (1..=m).map(|i| lambda.part(i) as i64).collect();
    entries.extend((1..=n).map(|j| (t.part(j) as i64 - m as i64).max(0)));
    Ok(WeightVector { entries, even_len: m })
}

/// Number of `(k,l)`-hook semistandard tableaux of shape `λ`.
///
/// Letters `1..=k` are even and `k+1..=k+l` odd. Entries weakly increase
/// along rows and down columns; even letters strictly increase down columns
/// and odd letters strictly increase along rows.
pub fn hook_tableaux_dim(lambda: &HookPartition, k: usize, l: usize) -> Result<u64> {
    if !lambda.is_hook(k, l) {
        return Err(Error::NotHook(format!("{lambda} is not ({k},{l})-hook")));
    }
    let cells: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = lambda.parts().iter().map(|&len| vec![0; len]).collect();
    Ok(fill(&cells, 0, &mut grid, k, k + l))
}

fn fill(cells: &[(usize, usize)], idx: usize, grid: &mut [Vec<usize>], k: usize, n: usize) -> u64 {
    if idx == cells.len() {
        return 1;
    }
    let (r, c) = cells[idx];
    let mut total = 0;
    for x in 1..=n {
        let odd = x > k;
        if c > 0 {
            let left = grid[r][c - 1];
            if x < left || (odd && x == left) {
                continue;
            }
        }
        if r > 0 {
            let up = grid[r - 1][c];
            if x < up || (!odd && x == up) {
                continue;
            }
        }
        grid[r][c] = x;
        total += fill(cells, idx + 1, grid, k, n);
    }
    grid[r][c] = 0;
    total
}

/// `Σ_{λ ∈ Λ_{k|l} ∩ Λ_{r|s}, |λ| = size} dim L^{k|l}_λ · dim L^{r|s}_λ`.
pub fn howe_dim_sum(k: usize, l: usize, r: usize, s: usize, size: usize) -> u64 {
    howe_table(k, l, r, s, size, None).total
}

/// The same sum restricted to `λ ⊇ ((n+1)^{m+1})`.
pub fn kernel_dim_prediction(k: usize, l: usize, r: usize, s: usize, m: usize, n: usize, size: usize) -> u64 {
    let lc = HookPartition::rectangle(n + 1, m + 1);
    howe_table(k, l, r, s, size, Some(&lc)).total
}

/// Number of `(k+l) x (r+s)` grids of nonnegative integers summing to `size`,
/// with cells of odd parity restricted to `{0, 1}`.
pub fn supermatrix_monomial_count(k: usize, l: usize, r: usize, s: usize, size: usize) -> u64 {
    let even = k * r + l * s;
    let odd = k * s + l * r;
    let mut total = 0u64;
    for j in 0..=odd.min(size) {
        total += binomial(odd as u64, j as u64) * multichoose(even as u64, (size - j) as u64);
    }
    total
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Number of multisets of size `k` from `n` items.
fn multichoose(n: u64, k: u64) -> u64 {
    if n == 0 {
        return (k == 0) as u64;
    }
    binomial(n + k - 1, k)
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeRow {
    pub shape: HookPartition,
    pub dim_left: u64,
    pub dim_right: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HoweParams {
    pub k: usize,
    pub l: usize,
    pub r: usize,
    pub s: usize,
}

/// JSON-ready table `{params, size, partitions:[{shape, dim_left, dim_right}], total}`.
#[derive(Clone, Debug, Serialize)]
pub struct HoweTable {
    pub params: HoweParams,
    pub size: usize,
    pub partitions: Vec<ShapeRow>,
    pub total: u64,
}

/// Per-shape breakdown of the Howe sum, optionally restricted to shapes containing `min_shape`.
pub fn howe_table(
    k: usize,
    l: usize,
    r: usize,
    s: usize,
    size: usize,
    min_shape: Option<&HookPartition>,
) -> HoweTable {
    let mut partitions = Vec::new();
    let mut total = 0;
    for lam in enumerate_hook_partitions(k, l, size) {
        if !lam.is_hook(r, s) || min_shape.is_some_and(|mu| !lam.contains(mu)) {
            continue;
        }
        let dl = hook_tableaux_dim(&lam, k, l).unwrap();
        let dr = hook_tableaux_dim(&lam, r, s).unwrap();
        total += dl * dr;
        partitions.push(ShapeRow { shape: lam, dim_left: dl, dim_right: dr });
    }
    HoweTable { params: HoweParams { k, l, r, s }, size, partitions, total }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(p: &[usize]) -> HookPartition {
        HookPartition::new(p.to_vec())
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_hook_partitions(1, 1, 2), vec![hp(&[2]), hp(&[1, 1])]);
        assert!(enumerate_hook_partitions(0, 0, 1).is_empty());
        assert_eq!(enumerate_hook_partitions(0, 0, 0), vec![HookPartition::empty()]);
        assert_eq!(enumerate_hook_partitions(2, 0, 2), vec![hp(&[2]), hp(&[1, 1])]);
        assert_eq!(enumerate_hook_partitions(2, 0, 3), vec![hp(&[3]), hp(&[2, 1])]);
    }

    #[test]
    fn natural_weight_examples() {
        assert_eq!(lambda_natural(&hp(&[2, 1]), 1, 1).unwrap().entries, vec![2, 1]);
        assert_eq!(lambda_natural(&HookPartition::empty(), 2, 3).unwrap().entries, vec![0; 5]);
        assert_eq!(lambda_natural(&hp(&[1, 1, 1]), 1, 1).unwrap().entries, vec![1, 2]);
        assert!(lambda_natural(&hp(&[2, 2]), 1, 1).is_err());
    }

    #[test]
    fn tableaux_examples() {
        assert_eq!(hook_tableaux_dim(&hp(&[2]), 1, 1).unwrap(), 2);
        for (k, l) in [(1, 0), (0, 1), (2, 3)] {
            assert_eq!(hook_tableaux_dim(&hp(&[1]), k, l).unwrap(), (k + l) as u64);
        }
        assert_eq!(hook_tableaux_dim(&hp(&[1, 1]), 1, 1).unwrap(), 2);
        assert!(hook_tableaux_dim(&hp(&[2, 2]), 1, 1).is_err());
    }

    #[test]
    fn sum_examples() {
        assert_eq!(howe_dim_sum(1, 1, 1, 1, 2), 8);
        assert_eq!(howe_dim_sum(2, 1, 0, 2, 0), 1);
        assert_eq!(howe_dim_sum(1, 0, 1, 0, 3), 1);
        assert_eq!(supermatrix_monomial_count(1, 1, 1, 1, 2), 8);
        assert_eq!(supermatrix_monomial_count(2, 1, 1, 2, 0), 1);
        for n in 0..6 {
            assert_eq!(supermatrix_monomial_count(1, 0, 1, 0, n), 1);
        }
        assert_eq!(supermatrix_monomial_count(2, 0, 2, 0, 3), 20);
    }

    #[test]
    fn kernel_prediction_examples() {
        assert_eq!(kernel_dim_prediction(2, 0, 2, 0, 1, 0, 2), 1);
        assert_eq!(kernel_dim_prediction(1, 1, 1, 1, 0, 1, 2), 4);
        assert_eq!(kernel_dim_prediction(2, 1, 1, 1, 1, 1, 3), 0);
    }
}
