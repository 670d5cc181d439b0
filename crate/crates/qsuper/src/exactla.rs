//! Dense exact linear algebra over `Z[q, q^-1]`.
//!
//! Ranks and kernels are taken over the fraction field `Q(q)` (generic `q`)
//! using fraction-free Bareiss elimination. The pivot in each column is the
//! first nonzero entry from the top among the rows not yet used, and columns
//! are processed left to right, so results are deterministic.

use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::Laurent;

pub type CoeffVector = Vec<Laurent>;

#[derive(Clone, PartialEq, Eq)]
pub struct CoeffMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Laurent>,
}

impl CoeffMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CoeffMatrix { rows, cols, entries: vec![Laurent::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Laurent::one());
        }
        m
    }

    /// Build from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Laurent>>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            entries.extend(r);
        }
        Ok(CoeffMatrix { rows: n, cols, entries })
    }

    /// Build from column vectors of a common length `rows`.
    pub fn from_columns(rows: usize, columns: &[CoeffVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Laurent) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Laurent) {
        self.entries[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Laurent] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Laurent::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &CoeffMatrix) -> Result<CoeffMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Laurent]) -> Result<CoeffVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Laurent::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, x) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    o.add_mul(a, x);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &CoeffMatrix) -> Result<CoeffMatrix> {
        self.check_same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(CoeffMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &CoeffMatrix) -> Result<CoeffMatrix> {
        self.check_same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(CoeffMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: &Laurent) -> CoeffMatrix {
        let entries = self.entries.iter().map(|a| a * c).collect();
        CoeffMatrix { rows: self.rows, cols: self.cols, entries }
    }

    fn check_same_shape(&self, other: &CoeffMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Kronecker product `self ⊗ other` (no super signs).
    pub fn kron(&self, other: &CoeffMatrix) -> CoeffMatrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Stack `others` below `self`.
    pub fn vstack(blocks: &[&CoeffMatrix]) -> Result<CoeffMatrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch("vstack with unequal widths".into()));
            }
            entries.extend(b.entries.iter().cloned());
            rows += b.rows;
        }
        Ok(CoeffMatrix { rows, cols, entries })
    }

    /// Bareiss forward elimination: returns the echelon rows (only the `rank`
    /// nonzero ones) and their pivot columns.
    fn echelon(&self) -> (Vec<Vec<Laurent>>, Vec<usize>) {
        let mut a: Vec<Vec<Laurent>> = (0..self.rows)
            .map(|i| self.row(i).to_vec())
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let n = a.len();
        let mut pivots = Vec::new();
        let mut prev = Laurent::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (top, rest) = a.split_at_mut(r + 1);
            let prow = &top[r];
            let piv = &prow[c];
            let same = piv == &prev;
            for row in rest.iter_mut() {
                let lead = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let x = &row[j];
                    let pj = &prow[j];
                    if lead.is_zero() {
                        if x.is_zero() || same {
                            continue;
                        }
                        let t = piv * x;
                        row[j] = t.div_exact(&prev).expect("Bareiss division is exact");
                    } else {
                        let mut t = if x.is_zero() { Laurent::zero() } else { piv * x };
                        if !pj.is_zero() {
                            t -= &(&lead * pj);
                        }
                        row[j] = if prev.is_one() {
                            t
                        } else {
                            t.div_exact(&prev).expect("Bareiss division is exact")
                        };
                    }
                }
            }
            prev = piv.clone();
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    /// Rank over `Q(q)`.
    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Right kernel over `Q(q)`, one vector per non-pivot column, with
    /// denominators cleared. Each vector `v` satisfies `M v = 0` exactly.
    pub fn nullspace(&self) -> Vec<CoeffVector> {
        let (u, pivots) = self.echelon();
        let r = pivots.len();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let scale = if r == 0 { Laurent::one() } else { u[r - 1][pivots[r - 1]].clone() };
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Laurent::zero(); self.cols];
            v[f] = scale.clone();
            for i in (0..r).rev() {
                let pc = pivots[i];
                let mut acc = Laurent::zero();
                for j in pc + 1..self.cols {
                    if !u[i][j].is_zero() && !v[j].is_zero() {
                        acc.add_mul(&u[i][j], &v[j]);
                    }
                }
                v[pc] = (-acc).div_exact(&u[i][pc]).expect("back substitution is exact");
            }
            out.push(normalize(v, f));
        }
        out
    }
}

/// Remove a common factor: divide by the free-variable entry if it divides
/// every coordinate, otherwise by the integer content.
fn normalize(v: CoeffVector, f: usize) -> CoeffVector {
    let lead = v[f].clone();
    if let Some(w) = v.iter().map(|x| x.div_exact(&lead)).collect::<Option<Vec<_>>>() {
        return w;
    }
    use num_integer::Integer;
    let mut g = num_bigint::BigInt::from(0);
    for x in &v {
        for (_, c) in x.terms() {
            g = g.gcd(c);
        }
    }
    let g = Laurent::from_int(g);
    v.iter().map(|x| x.div_exact(&g).unwrap()).collect()
}

/// Rank over `Q(q)`.
pub fn rank(m: &CoeffMatrix) -> usize {
    m.rank()
}

/// Right kernel basis of `m`.
pub fn nullspace(m: &CoeffMatrix) -> Vec<CoeffVector> {
    m.nullspace()
}

/// Dimension of the span of `vectors`; all must share one length.
pub fn column_span_dim(vectors: &[CoeffVector]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    // Rank is transpose-invariant, so the vectors can be used as rows.
    let m = CoeffMatrix::from_rows(first.len(), vectors.to_vec())?;
    Ok(m.rank())
}

impl fmt::Debug for CoeffMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CoeffMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Laurent {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> CoeffMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        CoeffMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|s| l(s)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(CoeffMatrix::identity(2).rank(), 2);
        assert_eq!(mat(&[&["q", "1"], &["q^2", "q"]]).rank(), 1);
        assert_eq!(mat(&[&["q - q^-1", "0"], &["0", "0"]]).rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(CoeffMatrix::identity(3).nullspace().is_empty());
        let ns = mat(&[&["q", "-1"]]).nullspace();
        assert_eq!(ns.len(), 1);
        // proportional to (1, q)
        assert_eq!(&ns[0][0] * &l("q"), ns[0][1]);
        assert_eq!(CoeffMatrix::zeros(2, 2).nullspace().len(), 2);
    }

    #[test]
    fn span_examples() {
        let v = |a: &str, b: &str| vec![l(a), l(b)];
        assert_eq!(column_span_dim(&[v("1", "0"), v("0", "1")]).unwrap(), 2);
        assert_eq!(column_span_dim(&[v("q", "q^2"), v("1", "q")]).unwrap(), 1);
        assert_eq!(column_span_dim(&[]).unwrap(), 0);
        assert!(column_span_dim(&[v("1", "0"), vec![l("1")]]).is_err());
    }

    #[test]
    fn non_unit_pivots() {
        let m = mat(&[
            &["q + 1", "2", "q^2", "0"],
            &["q - q^-1", "q", "1", "3"],
            &["2*q^2 + q - 1 - q^-1", "q^2 + 2", "q^3 + q^2 + 1", "3*q"],
        ]);
        // third row = q*(first) + (second) ... check rank and kernel identity
        let ns = m.nullspace();
        assert_eq!(m.rank() + ns.len(), 4);
        for v in &ns {
            assert!(m.mul_vec(v).unwrap().iter().all(Laurent::is_zero));
        }
    }
}
