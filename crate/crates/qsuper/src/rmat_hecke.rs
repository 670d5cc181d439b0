//! R-matrices of the natural module `V^{m|n}`, the braiding `Ř = P∘R`,
//! its eigenvectors, and the Hecke algebra acting on tensor powers.
//!
//! `V^{⊗r}` has basis `v_{x_1}⊗…⊗v_{x_r}`, indexed in base `m+n` with the
//! first slot most significant. The matrix of `R` has row `(a,c)` and column
//! `(b,d)` holding `R^{ac}_{bd}`, i.e. `R = Σ R^{ac}_{bd} e_ab ⊗ e_cd`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{CoeffMatrix, CoeffVector};
use crate::laurent::Laurent;
use crate::parity::{sign, IndexSet};
use crate::qalgebra::{AlgebraPresentation, Family, NCElement, Word};

fn pair(n: usize, a: usize, b: usize) -> usize {
    (a - 1) * n + (b - 1)
}

fn check_dim(m: usize, n: usize) -> Result<IndexSet> {
    if m + n == 0 {
        return Err(Error::EmptyIndexSet("I_{0|0}".into()));
    }
    Ok(IndexSet::new(m, n))
}

/// `R` on `V^{m|n} ⊗ V^{m|n}`.
pub fn r_matrix(m: usize, n: usize) -> Result<CoeffMatrix> {
    let set = check_dim(m, n)?;
    let d = set.len();
    let mut r = CoeffMatrix::zeros(d * d, d * d);
    for a in set.iter() {
        for b in set.iter() {
            let i = pair(d, a, b);
            if a == b {
                r.set(i, i, set.q(a, 1));
            } else {
                r.set(i, i, Laurent::one());
            }
            if a < b {
                r.set(i, pair(d, b, a), &set.q(b, 1) - &set.q(b, -1));
            }
        }
    }
    Ok(r)
}

/// `R^{-1}`.
pub fn r_inverse_matrix(m: usize, n: usize) -> Result<CoeffMatrix> {
    let set = check_dim(m, n)?;
    let d = set.len();
    let mut r = CoeffMatrix::zeros(d * d, d * d);
    for a in set.iter() {
        for b in set.iter() {
            let i = pair(d, a, b);
            if a == b {
                r.set(i, i, set.q(a, -1));
            } else {
                r.set(i, i, Laurent::one());
            }
            if a < b {
                r.set(i, pair(d, b, a), -(&set.q(b, 1) - &set.q(b, -1)));
            }
        }
    }
    Ok(r)
}

/// `Ř` on `V^{k|l} ⊗ V^{k|l}` from its action on basis vectors:
/// `v_i⊗v_j ↦ (-1)^{[i][j]} v_j⊗v_i` for `i<j`, `(-1)^{[i]} q_i v_i⊗v_i` for
/// `i=j`, and `(-1)^{[i][j]} v_j⊗v_i + (q-q^{-1}) v_i⊗v_j` for `i>j`.
pub fn rcheck_operator(k: usize, l: usize) -> Result<CoeffMatrix> {
    let set = check_dim(k, l)?;
    let d = set.len();
    let mut out = CoeffMatrix::zeros(d * d, d * d);
    for i in set.iter() {
        for j in set.iter() {
            let col = pair(d, i, j);
            let s = sign((set.par(i) * set.par(j)) as u32);
            if i == j {
                out.set(col, col, &sign(set.par(i) as u32) * &set.q(i, 1));
            } else {
                out.set(pair(d, j, i), col, s);
                if i > j {
                    out.set(col, col, Laurent::q_minus_qinv());
                }
            }
        }
    }
    Ok(out)
}

/// `Ř` computed as the graded flip composed with `R` acting through
/// `(A⊗B)(u⊗w) = (-1)^{[B][u]} Au⊗Bw`.
pub fn rcheck_via_flip(k: usize, l: usize) -> Result<CoeffMatrix> {
    let set = check_dim(k, l)?;
    let d = set.len();
    let r = r_matrix(k, l)?;
    let mut out = CoeffMatrix::zeros(d * d, d * d);
    for i in set.iter() {
        for j in set.iter() {
            let col = pair(d, i, j);
            for a in set.iter() {
                for c in set.iter() {
                    let x = r.get(pair(d, a, c), col);
                    if x.is_zero() {
                        continue;
                    }
                    // e_cj passes v_i, then the flip swaps v_a and v_c
                    let e = (set.par(c) + set.par(j)) * set.par(i) + set.par(a) * set.par(c);
                    out.add_to(pair(d, c, a), col, &(&sign(e as u32) * x));
                }
            }
        }
    }
    Ok(out)
}

/// `(Ř - q)(Ř + q^{-1}) = 0` on `V⊗V`.
pub fn verify_hecke_quadratic(k: usize, l: usize) -> Result<bool> {
    let rc = rcheck_operator(k, l)?;
    Ok(quadratic_vanishes(&rc))
}

fn quadratic_vanishes(h: &CoeffMatrix) -> bool {
    let id = CoeffMatrix::identity(h.rows());
    let a = h.sub(&id.scale(&Laurent::q())).unwrap();
    let b = h.add(&id.scale(&Laurent::q_pow(-1))).unwrap();
    a.mul(&b).unwrap().is_zero()
}

/// Matrix of `H_i` (`Ř` on slots `i, i+1`) on `(V^{k|l})^{⊗r}`. `Ř` is even,
/// so the embedding carries no signs.
pub fn hecke_generator(i: usize, k: usize, l: usize, r: usize) -> Result<CoeffMatrix> {
    if i == 0 || i >= r {
        return Err(Error::IndexOutOfRange(format!("H_{i} with r = {r}")));
    }
    let rc = rcheck_operator(k, l)?;
    let d = k + l;
    let left = CoeffMatrix::identity(d.pow((i - 1) as u32));
    let right = CoeffMatrix::identity(d.pow((r - i - 1) as u32));
    Ok(left.kron(&rc).kron(&right))
}

/// Apply `H_{w_1} H_{w_2} … H_{w_n}` to a vector of `(V^{k|l})^{⊗r}`
/// (so `H_{w_n}` acts first). The empty word is the identity.
pub fn hecke_act(word: &[usize], v: &[Laurent], k: usize, l: usize, r: usize) -> Result<CoeffVector> {
    let dim = (k + l).pow(r as u32);
    if v.len() != dim {
        return Err(Error::DimensionMismatch(format!("vector of length {} for dimension {dim}", v.len())));
    }
    let mut out = v.to_vec();
    for &i in word.iter().rev() {
        out = hecke_generator(i, k, l, r)?.mul_vec(&out)?;
    }
    Ok(out)
}

/// Braid relation `Ř_1 Ř_2 Ř_1 = Ř_2 Ř_1 Ř_2` on `V^{⊗3}`.
pub fn verify_braid(k: usize, l: usize) -> Result<bool> {
    let h1 = hecke_generator(1, k, l, 3)?;
    let h2 = hecke_generator(2, k, l, 3)?;
    let lhs = h1.mul(&h2)?.mul(&h1)?;
    let rhs = h2.mul(&h1)?.mul(&h2)?;
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeReport {
    pub k: usize,
    pub l: usize,
    pub r: usize,
    pub quadratic: bool,
    pub braid: bool,
    pub far_commute: bool,
    pub pass: bool,
}

/// Quadratic, braid and far-commutation relations of `H_1..H_{r-1}` on `(V^{k|l})^{⊗r}`.
pub fn verify_hecke_relations(k: usize, l: usize, r: usize) -> Result<HeckeReport> {
    let hs: Vec<CoeffMatrix> = (1..r).map(|i| hecke_generator(i, k, l, r)).collect::<Result<_>>()?;
    let quadratic = hs.iter().all(quadratic_vanishes);
    let mut braid = true;
    let mut far_commute = true;
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            if j == i + 1 {
                braid &= hs[i].mul(&hs[j])?.mul(&hs[i])? == hs[j].mul(&hs[i])?.mul(&hs[j])?;
            } else {
                far_commute &= hs[i].mul(&hs[j])? == hs[j].mul(&hs[i])?;
            }
        }
    }
    Ok(HeckeReport { k, l, r, quadratic, braid, far_commute, pass: quadratic && braid && far_commute })
}

/// `R` acting on slots `i < j` of `(V^{m|n})^{⊗r}` through graded embedding.
pub fn r_embedded(m: usize, n: usize, r: usize, i: usize, j: usize) -> Result<CoeffMatrix> {
    if !(1 <= i && i < j && j <= r) {
        return Err(Error::IndexOutOfRange(format!("slots ({i},{j}) with r = {r}")));
    }
    let set = check_dim(m, n)?;
    let d = set.len();
    let rm = r_matrix(m, n)?;
    let dim = d.pow(r as u32);
    let mut out = CoeffMatrix::zeros(dim, dim);
    for col in 0..dim {
        let xs = digits(col, d, r);
        let (b, dd) = (xs[i - 1], xs[j - 1]);
        let si: u8 = xs[..i - 1].iter().map(|&x| set.par(x)).sum();
        let sj: u8 = xs[..j - 1].iter().map(|&x| set.par(x)).sum();
        for a in set.iter() {
            for c in set.iter() {
                let x = rm.get(pair(d, a, c), pair(d, b, dd));
                if x.is_zero() {
                    continue;
                }
                let e = (set.par(a) + set.par(b)) * si + (set.par(c) + set.par(dd)) * sj;
                let mut ys = xs.clone();
                ys[i - 1] = a;
                ys[j - 1] = c;
                out.add_to(undigits(&ys, d), col, &(&sign(e as u32) * x));
            }
        }
    }
    Ok(out)
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12` on `(V^{m|n})^{⊗3}`.
pub fn verify_yang_baxter(m: usize, n: usize) -> Result<bool> {
    let r12 = r_embedded(m, n, 3, 1, 2)?;
    let r13 = r_embedded(m, n, 3, 1, 3)?;
    let r23 = r_embedded(m, n, 3, 2, 3)?;
    Ok(r12.mul(&r13)?.mul(&r23)? == r23.mul(&r13)?.mul(&r12)?)
}

fn digits(mut x: usize, d: usize, r: usize) -> Vec<usize> {
    let mut v = vec![0; r];
    for t in (0..r).rev() {
        v[t] = x % d + 1;
        x /= d;
    }
    v
}

fn undigits(xs: &[usize], d: usize) -> usize {
    xs.iter().fold(0, |acc, &x| acc * d + (x - 1))
}

/// Bases of `S_q^2(V^{k|l})` and `Λ_q^2(V^{k|l})` as vectors of `V⊗V`:
/// `v_i⊗v_i` (`i` even), `v_i⊗v_j + (-1)^{[i][j]} q v_j⊗v_i` (`i<j`) and
/// `v_i⊗v_i` (`i` odd), `v_i⊗v_j - (-1)^{[i][j]} q^{-1} v_j⊗v_i` (`i<j`).
pub fn sym_skew_bases(k: usize, l: usize) -> Result<(Vec<CoeffVector>, Vec<CoeffVector>)> {
    let set = check_dim(k, l)?;
    let d = set.len();
    let unit = |i: usize| {
        let mut v = vec![Laurent::zero(); d * d];
        v[i] = Laurent::one();
        v
    };
    let mut sym = Vec::new();
    let mut skew = Vec::new();
    for i in set.iter() {
        for j in i..=d {
            if i == j {
                let v = unit(pair(d, i, i));
                if set.odd(i) {
                    skew.push(v);
                } else {
                    sym.push(v);
                }
                continue;
            }
            let s = sign((set.par(i) * set.par(j)) as u32);
            let mut v = unit(pair(d, i, j));
            v[pair(d, j, i)] = &s * &Laurent::q();
            sym.push(v);
            let mut w = unit(pair(d, i, j));
            w[pair(d, j, i)] = -(&s * &Laurent::q_pow(-1));
            skew.push(w);
        }
    }
    Ok((sym, skew))
}

/// Outcome of checking `R T_1 T_2 = T_2 T_1 R` in `M^{k|l}_{r|s}`.
#[derive(Clone, Debug, Serialize)]
pub struct FrtReport {
    pub checked: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Expands the FRT relation entrywise through normal forms:
///
/// `Σ_{a',b'} (-1)^{([a']+[c])([b]+[d])} R^{ab}_{a'b'} t_{a'c} t_{b'd}
///   = Σ_{c',d'} (-1)^{([c']+[c])([b]+[d'])} t_{bd'} t_{ac'} R^{c'd'}_{cd}`
/// for all `a, b` in `I_{k|l}` and `c, d` in `I_{r|s}`.
pub fn verify_frt(k: usize, l: usize, r: usize, s: usize) -> Result<FrtReport> {
    let pres = AlgebraPresentation::m(k, l, r, s)?;
    let rows = IndexSet::new(k, l);
    let cols = IndexSet::new(r, s);
    let rr = r_matrix(k, l)?;
    let rc = r_matrix(r, s)?;
    let (dr, dc) = (rows.len(), cols.len());
    let t = |a: usize, b: usize| pres.gen(Family::T, a, b).unwrap();
    let mut checked = 0;
    let mut failures = Vec::new();
    for a in rows.iter() {
        for b in rows.iter() {
            for c in cols.iter() {
                for d in cols.iter() {
                    let mut lhs = NCElement::zero();
                    for a2 in rows.iter() {
                        for b2 in rows.iter() {
                            let x = rr.get(pair(dr, a, b), pair(dr, a2, b2));
                            if x.is_zero() {
                                continue;
                            }
                            let e = (rows.par(a2) + cols.par(c)) * (rows.par(b) + cols.par(d));
                            lhs.add_term(Word::from_slice(&[t(a2, c), t(b2, d)]), &sign(e as u32) * x);
                        }
                    }
                    let mut rhs = NCElement::zero();
                    for c2 in cols.iter() {
                        for d2 in cols.iter() {
                            let x = rc.get(pair(dc, c2, d2), pair(dc, c, d));
                            if x.is_zero() {
                                continue;
                            }
                            let e = (cols.par(c2) + cols.par(c)) * (rows.par(b) + cols.par(d2));
                            rhs.add_term(Word::from_slice(&[t(b, d2), t(a, c2)]), &sign(e as u32) * x);
                        }
                    }
                    checked += 1;
                    let diff = pres.normal_form(&lhs.sub(&rhs))?;
                    if !diff.is_zero() {
                        failures.push(format!("(a,b,c,d)=({a},{b},{c},{d}): {diff}"));
                    }
                }
            }
        }
    }
    let pass = failures.is_empty();
    Ok(FrtReport { checked, failures, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        let r = r_matrix(1, 0).unwrap();
        assert_eq!(r.get(0, 0), &Laurent::q());
        let r = r_matrix(1, 1).unwrap();
        assert_eq!(r.get(1, 2), &-Laurent::q_minus_qinv());
        assert_eq!(r_inverse_matrix(1, 0).unwrap().get(0, 0), &Laurent::q_pow(-1));
        assert_eq!(r_inverse_matrix(0, 1).unwrap().get(0, 0), &Laurent::q());
        assert!(r_matrix(0, 0).is_err());
    }

    #[test]
    fn rcheck_cases() {
        let h = rcheck_operator(1, 1).unwrap();
        // v1⊗v2 -> v2⊗v1
        assert_eq!(h.get(2, 1), &Laurent::one());
        assert_eq!(h.get(1, 1), &Laurent::zero());
        // v2⊗v2 -> -q^{-1} v2⊗v2
        assert_eq!(h.get(3, 3), &-Laurent::q_pow(-1));
        // v2⊗v1 -> v1⊗v2 + (q-q^{-1}) v2⊗v1
        assert_eq!(h.get(1, 2), &Laurent::one());
        assert_eq!(h.get(2, 2), &Laurent::q_minus_qinv());
    }

    #[test]
    fn rcheck_matches_flip_of_r() {
        for (k, l) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)] {
            assert_eq!(rcheck_operator(k, l).unwrap(), rcheck_via_flip(k, l).unwrap(), "({k},{l})");
        }
    }

    #[test]
    fn relations() {
        for (k, l) in [(1, 0), (1, 1), (2, 0), (2, 1), (0, 2), (1, 2)] {
            assert!(verify_hecke_quadratic(k, l).unwrap());
            assert!(verify_braid(k, l).unwrap(), "braid ({k},{l})");
            assert!(verify_yang_baxter(k, l).unwrap(), "ybe ({k},{l})");
        }
        let inv = r_matrix(2, 1).unwrap().mul(&r_inverse_matrix(2, 1).unwrap()).unwrap();
        assert_eq!(inv, CoeffMatrix::identity(9));
    }

    #[test]
    fn frt() {
        for (k, l) in [(1, 1), (2, 1), (2, 2)] {
            let rep = verify_frt(k, l, k, l).unwrap();
            assert!(rep.pass, "{:?}", &rep.failures[..rep.failures.len().min(4)]);
        }
    }
}
