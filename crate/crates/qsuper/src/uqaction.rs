//! The `U_q(gl_{m|n})` action on `P` (and on `M`, `M̄` with columns in `I_{m|n}`).
//!
//! Chevalley generators act on `T_ai` through `π` and on `T̄_bi` through
//! `π∘S`, and on products through the coproduct:
//! `x.(ab) = Σ (-1)^{[x_(2)][a]} (x_(1).a)(x_(2).b)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{CoeffMatrix, CoeffVector};
use crate::laurent::Laurent;
use crate::parity::{sign, IndexSet};
use crate::qalgebra::{element_to_vector, AlgebraPresentation, Family, GenIndex, Kind, NCElement, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ChevalleyKind {
    K,
    Kinv,
    /// `E_{b,b+1}`
    Raise,
    /// `E_{b+1,b}`
    Lower,
}

/// `K_a`, `K_a^{-1}`, `E_{b,b+1}` or `E_{b+1,b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChevalleyGen {
    pub kind: ChevalleyKind,
    pub index: usize,
}

impl ChevalleyGen {
    pub fn k(a: usize) -> Self {
        ChevalleyGen { kind: ChevalleyKind::K, index: a }
    }

    pub fn kinv(a: usize) -> Self {
        ChevalleyGen { kind: ChevalleyKind::Kinv, index: a }
    }

    pub fn raise(b: usize) -> Self {
        ChevalleyGen { kind: ChevalleyKind::Raise, index: b }
    }

    pub fn lower(b: usize) -> Self {
        ChevalleyGen { kind: ChevalleyKind::Lower, index: b }
    }

    pub fn is_e(&self) -> bool {
        matches!(self.kind, ChevalleyKind::Raise | ChevalleyKind::Lower)
    }

    /// Odd iff it is `E_{m,m+1}` or `E_{m+1,m}`.
    pub fn odd(&self, m: usize) -> bool {
        self.is_e() && self.index == m
    }

    pub fn validate(&self, m: usize, n: usize) -> Result<()> {
        let ok = match self.kind {
            ChevalleyKind::K | ChevalleyKind::Kinv => (1..=m + n).contains(&self.index),
            _ => (1..m + n).contains(&self.index),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("{self} for gl({m}|{n})")))
        }
    }

    /// `K_a`, `K_a^{-1}` for all `a`, then every `E_{b,b+1}`, then every `E_{b+1,b}`.
    pub fn all(m: usize, n: usize) -> Vec<ChevalleyGen> {
        let d = m + n;
        let mut v: Vec<_> = (1..=d).map(Self::k).collect();
        v.extend((1..=d).map(Self::kinv));
        v.extend((1..d).map(Self::raise));
        v.extend((1..d).map(Self::lower));
        v
    }
}

impl fmt::Display for ChevalleyGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.index;
        match self.kind {
            ChevalleyKind::K => write!(f, "K_{b}"),
            ChevalleyKind::Kinv => write!(f, "K_{b}^-1"),
            ChevalleyKind::Raise => write!(f, "E_{b},{}", b + 1),
            ChevalleyKind::Lower => write!(f, "E_{},{b}", b + 1),
        }
    }
}

/// Coproduct, counit and antipode of a Chevalley generator.
///
/// Monomials are lists of generators; `K_a K_{a+1}^{-1}` is `[K_a, K_{a+1}^{-1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData {
    pub coproduct: Vec<(Vec<ChevalleyGen>, Vec<ChevalleyGen>)>,
    pub counit: i32,
    /// `S(x) = sign · monomial`
    pub antipode: (i32, Vec<ChevalleyGen>),
}

pub fn hopf_data(x: ChevalleyGen) -> HopfData {
    let b = x.index;
    let kappa = vec![ChevalleyGen::k(b), ChevalleyGen::kinv(b + 1)];
    let kappa_inv = vec![ChevalleyGen::kinv(b), ChevalleyGen::k(b + 1)];
    match x.kind {
        ChevalleyKind::K | ChevalleyKind::Kinv => {
            let inv = ChevalleyGen {
                kind: if x.kind == ChevalleyKind::K { ChevalleyKind::Kinv } else { ChevalleyKind::K },
                index: b,
            };
            HopfData { coproduct: vec![(vec![x], vec![x])], counit: 1, antipode: (1, vec![inv]) }
        }
        ChevalleyKind::Raise => HopfData {
            coproduct: vec![(vec![x], kappa), (vec![], vec![x])],
            counit: 0,
            antipode: (-1, [vec![x], kappa_inv].concat()),
        },
        ChevalleyKind::Lower => HopfData {
            coproduct: vec![(vec![x], vec![]), (kappa_inv, vec![x])],
            counit: 0,
            antipode: (-1, [kappa, vec![x]].concat()),
        },
    }
}

/// `π(x)` on `V^{m|n}` (0-based matrix indices).
pub fn pi_matrix(x: ChevalleyGen, m: usize, n: usize) -> Result<CoeffMatrix> {
    x.validate(m, n)?;
    let set = IndexSet::new(m, n);
    let d = m + n;
    let a = x.index;
    Ok(match x.kind {
        ChevalleyKind::K | ChevalleyKind::Kinv => {
            let mut p = CoeffMatrix::identity(d);
            let power = if x.kind == ChevalleyKind::K { 1 } else { -1 };
            p.set(a - 1, a - 1, set.q(a, power));
            p
        }
        ChevalleyKind::Raise => {
            let mut p = CoeffMatrix::zeros(d, d);
            p.set(a - 1, a, Laurent::one());
            p
        }
        ChevalleyKind::Lower => {
            let mut p = CoeffMatrix::zeros(d, d);
            p.set(a, a - 1, Laurent::one());
            p
        }
    })
}

/// `π(S(x))`, the product of the `π`-matrices of the antipode monomial.
pub fn pi_antipode_matrix(x: ChevalleyGen, m: usize, n: usize) -> Result<CoeffMatrix> {
    x.validate(m, n)?;
    let (sg, mono) = hopf_data(x).antipode;
    let mut out = CoeffMatrix::identity(m + n);
    for g in mono {
        out = out.mul(&pi_matrix(g, m, n)?)?;
    }
    Ok(out.scale(&Laurent::from_int(sg)))
}

/// Per-generator action data for one presentation, built once.
pub struct Action<'p> {
    pres: &'p AlgebraPresentation,
    m: usize,
    n: usize,
    cols: IndexSet,
    pi: HashMap<ChevalleyGen, CoeffMatrix>,
    pi_s: HashMap<ChevalleyGen, CoeffMatrix>,
}

impl<'p> Action<'p> {
    pub fn new(pres: &'p AlgebraPresentation) -> Result<Self> {
        if pres.kind() == Kind::Mtilde {
            return Err(Error::ParamMismatch("no U_q(gl) action is defined on the tilde algebra".into()));
        }
        let cols = pres.col_set(pres.families()[0]);
        let (m, n) = (cols.even, cols.odd);
        let mut pi = HashMap::new();
        let mut pi_s = HashMap::new();
        for x in ChevalleyGen::all(m, n) {
            pi.insert(x, pi_matrix(x, m, n)?);
            pi_s.insert(x, pi_antipode_matrix(x, m, n)?);
        }
        Ok(Action { pres, m, n, cols, pi, pi_s })
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        self.pres
    }

    pub fn gl(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    fn x_odd(&self, x: ChevalleyGen) -> u8 {
        x.odd(self.m) as u8
    }

    /// `x.g` as a list of `(coefficient, generator)`.
    fn gen_terms(&self, x: ChevalleyGen, g: GenIndex) -> Vec<(Laurent, GenIndex)> {
        let cols = self.cols;
        let fam = g.family;
        let rows = self.pres.row_set(fam);
        let a = g.row();
        let i = g.col();
        let px = self.x_odd(x) as u32;
        let pa = rows.par(a) as u32;
        let pi_ = cols.par(i) as u32;
        let mut out = Vec::new();
        for c in cols.iter() {
            let pc = cols.par(c) as u32;
            let (coef, pair_sign) = match fam {
                Family::T => (self.pi[&x].get(c - 1, i - 1).clone(), 0),
                Family::Tbar => (self.pi_s[&x].get(i - 1, c - 1).clone(), pi_ * (pc + pi_)),
                Family::Ttilde => unreachable!(),
            };
            if coef.is_zero() {
                continue;
            }
            let e = px * (pa + pi_ + px) + (pa + pc) * (pc + pi_) + pair_sign;
            let h = self.pres.gen(fam, a, c).expect("same family and row");
            out.push((&sign(e) * &coef, h));
        }
        out
    }

    /// `x.g` for a single generator, canonical.
    pub fn act_on_generator(&self, x: ChevalleyGen, g: GenIndex) -> Result<NCElement> {
        x.validate(self.m, self.n)?;
        if !self.pres.contains(&g) {
            return Err(Error::ForeignGenerator(g.to_string()));
        }
        let mut out = NCElement::zero();
        for (c, h) in self.gen_terms(x, g) {
            out.add_term(Word::from_slice(&[h]), c);
        }
        Ok(out)
    }

    /// Scalar by which `K_a^{±1}` acts on a single generator.
    fn k_scalar(&self, x: ChevalleyGen, g: GenIndex) -> Laurent {
        let t = self.gen_terms(x, g);
        debug_assert_eq!(t.len(), 1);
        t.into_iter().next().map(|(c, _)| c).unwrap_or_default()
    }

    /// Unnormalised `x.w` for a word.
    fn act_word_raw(&self, x: ChevalleyGen, w: &Word) -> NCElement {
        let letters = w.letters();
        let mut out = NCElement::zero();
        match x.kind {
            ChevalleyKind::K | ChevalleyKind::Kinv => {
                let mut c = Laurent::one();
                for &g in letters {
                    c = &c * &self.k_scalar(x, g);
                }
                out.add_term(w.clone(), c);
            }
            ChevalleyKind::Raise | ChevalleyKind::Lower => {
                let b = x.index;
                let raising = x.kind == ChevalleyKind::Raise;
                // group-like companion: K_b K_{b+1}^{-1} after the slot for raising,
                // K_b^{-1} K_{b+1} before the slot for lowering
                let (k1, k2) = if raising {
                    (ChevalleyGen::k(b), ChevalleyGen::kinv(b + 1))
                } else {
                    (ChevalleyGen::kinv(b), ChevalleyGen::k(b + 1))
                };
                let kappa: Vec<Laurent> =
                    letters.iter().map(|&g| &self.k_scalar(k1, g) * &self.k_scalar(k2, g)).collect();
                let px = x.odd(self.m);
                let mut prefix_odd = false;
                for p in 0..letters.len() {
                    let mut base = Laurent::sign(px && prefix_odd);
                    let range = if raising { p + 1..letters.len() } else { 0..p };
                    for t in range {
                        base = &base * &kappa[t];
                    }
                    for (c, h) in self.gen_terms(x, letters[p]) {
                        let mut v = w.clone();
                        v.0[p] = h;
                        out.add_term(v, &base * &c);
                    }
                    prefix_odd ^= letters[p].odd;
                }
            }
        }
        out
    }

    /// `x.e`, canonical.
    pub fn act(&self, x: ChevalleyGen, e: &NCElement) -> Result<NCElement> {
        x.validate(self.m, self.n)?;
        let mut raw = NCElement::zero();
        for (w, c) in e.terms() {
            raw.add_scaled(&self.act_word_raw(x, w), c);
        }
        self.pres.normal_form(&raw)
    }

    /// Apply `x_1 x_2 … x_k` (so `x_k` acts first).
    pub fn act_seq(&self, xs: &[ChevalleyGen], e: &NCElement) -> Result<NCElement> {
        let mut cur = e.clone();
        for &x in xs.iter().rev() {
            cur = self.act(x, &cur)?;
        }
        Ok(cur)
    }

    /// `K_a` fixes `e` for all `a`, and every `E` kills it.
    pub fn is_invariant(&self, e: &NCElement) -> Result<bool> {
        for x in ChevalleyGen::all(self.m, self.n) {
            let y = self.act(x, e)?;
            let ok = match x.kind {
                ChevalleyKind::K | ChevalleyKind::Kinv => y == *e,
                _ => y.is_zero(),
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Column-integer weight of a word: `+e_i` per `T_ai`, `-e_i` per `T̄_bi`.
    pub fn weight(&self, w: &Word) -> Vec<i64> {
        let mut v = vec![0; self.m + self.n];
        for g in w.letters() {
            v[g.col() - 1] += if g.family == Family::Tbar { -1 } else { 1 };
        }
        v
    }

    /// Matrix of `x` on the span of `basis`, which must be closed under `x`.
    pub fn operator_matrix(&self, x: ChevalleyGen, basis: &[Word]) -> Result<CoeffMatrix> {
        let cols: Vec<CoeffVector> = basis
            .iter()
            .map(|w| {
                let y = self.act(x, &NCElement::from_word(w.clone(), Laurent::one()))?;
                element_to_vector(&y, basis)
            })
            .collect::<Result<_>>()?;
        CoeffMatrix::from_columns(basis.len(), &cols)
    }

    /// Invariants among the normal words of bidegree `(d1, d2)`, as coordinate
    /// vectors in `graded_basis_bi(d1, d2)`.
    ///
    /// Words are split by weight and by the multisets of row indices of each
    /// family, which the action preserves. Only weight-zero blocks can hold
    /// invariants. For each such block the raising images, lowering images and
    /// `K_a - 1` images are stacked and the nullspace taken.
    pub fn invariant_subspace(&self, d1: usize, d2: usize) -> Result<Vec<CoeffVector>> {
        let basis = self.pres.graded_basis_bi(d1, d2);
        let d = self.m + self.n;
        let mut blocks: BTreeMap<(Vec<(Family, u16)>, Vec<i64>), Vec<usize>> = BTreeMap::new();
        for (idx, w) in basis.iter().enumerate() {
            let wt = self.weight(w);
            if wt.iter().any(|&x| x != 0) {
                continue;
            }
            let mut rows: Vec<(Family, u16)> = w.letters().iter().map(|g| (g.family, g.row)).collect();
            rows.sort();
            blocks.entry((rows, wt)).or_default().push(idx);
        }
        let mut gens: Vec<ChevalleyGen> = (1..d).map(ChevalleyGen::raise).collect();
        gens.extend((1..d).map(ChevalleyGen::lower));
        gens.extend((1..=d).map(ChevalleyGen::k));
        let mut out = Vec::new();
        for idxs in blocks.values() {
            let mut images: Vec<Vec<NCElement>> = Vec::new();
            for &x in &gens {
                let mut row = Vec::with_capacity(idxs.len());
                for &j in idxs {
                    let w = NCElement::from_word(basis[j].clone(), Laurent::one());
                    let mut y = self.act(x, &w)?;
                    if matches!(x.kind, ChevalleyKind::K) {
                        y = y.sub(&w);
                    }
                    row.push(y);
                }
                images.push(row);
            }
            let mut rows: Vec<Vec<Laurent>> = Vec::new();
            for per_gen in &images {
                let mut targets: Vec<&Word> = per_gen.iter().flat_map(|e| e.terms().map(|(w, _)| w)).collect();
                targets.sort();
                targets.dedup();
                for t in targets {
                    rows.push(per_gen.iter().map(|e| e.coeff(t)).collect());
                }
            }
            let mat = CoeffMatrix::from_rows(idxs.len(), rows)?;
            for v in mat.nullspace() {
                let mut full = vec![Laurent::zero(); basis.len()];
                for (t, &j) in idxs.iter().enumerate() {
                    full[j] = v[t].clone();
                }
                out.push(full);
            }
        }
        Ok(out)
    }

    /// Relations (R1)–(R3), and optionally (R4) and `E_{m,m+1}^2 = E_{m+1,m}^2 = 0`,
    /// as matrix identities on the bidegree `(d1, d2)` component.
    pub fn verify_operator_relations(&self, d1: usize, d2: usize, extended: bool) -> Result<OperatorReport> {
        let basis = self.pres.graded_basis_bi(d1, d2);
        let (m, n) = (self.m, self.n);
        let d = m + n;
        let set = IndexSet::new(m, n);
        let mut mats = HashMap::new();
        for x in ChevalleyGen::all(m, n) {
            mats.insert(x, self.operator_matrix(x, &basis)?);
        }
        let dim = basis.len();
        let id = CoeffMatrix::identity(dim);
        let mut violations = Vec::new();
        let mut checked = 0;
        let mut check = |name: String, ok: bool| {
            checked += 1;
            if !ok {
                violations.push(name);
            }
        };
        let mul = |a: &CoeffMatrix, b: &CoeffMatrix| a.mul(b).unwrap();
        let supercomm = |x: ChevalleyGen, y: ChevalleyGen| {
            let xy = mul(&mats[&x], &mats[&y]);
            let yx = mul(&mats[&y], &mats[&x]);
            if x.odd(m) && y.odd(m) {
                xy.add(&yx).unwrap()
            } else {
                xy.sub(&yx).unwrap()
            }
        };
        for a in 1..=d {
            let (k, ki) = (&mats[&ChevalleyGen::k(a)], &mats[&ChevalleyGen::kinv(a)]);
            check(format!("R1 K_{a} K_{a}^-1"), mul(k, ki) == id && mul(ki, k) == id);
            for b in a + 1..=d {
                let kb = &mats[&ChevalleyGen::k(b)];
                check(format!("R1 K_{a} K_{b}"), mul(k, kb) == mul(kb, k));
            }
            for b in 1..d {
                let e = |b: usize, a: usize| -> i32 { (a == b) as i32 - (a == b + 1) as i32 };
                for (x, power) in [(ChevalleyGen::raise(b), e(b, a)), (ChevalleyGen::lower(b), -e(b, a))] {
                    let lhs = mul(&mul(k, &mats[&x]), ki);
                    let rhs = mats[&x].scale(&set.q(a, power));
                    check(format!("R2 K_{a} {x}"), lhs == rhs);
                }
            }
        }
        for a in 1..d {
            for b in 1..d {
                let lhs = supercomm(ChevalleyGen::raise(a), ChevalleyGen::lower(b));
                let ok = if a == b {
                    let qa = &set.q(a, 1) - &set.q(a, -1);
                    let k1 = mul(&mats[&ChevalleyGen::k(a)], &mats[&ChevalleyGen::kinv(a + 1)]);
                    let k2 = mul(&mats[&ChevalleyGen::kinv(a)], &mats[&ChevalleyGen::k(a + 1)]);
                    lhs.scale(&qa) == k1.sub(&k2).unwrap()
                } else {
                    lhs.is_zero()
                };
                check(format!("R3 E_{a},{} E_{},{b}", a + 1, b + 1), ok);
            }
        }
        if extended {
            for a in 1..d {
                for b in 1..d {
                    if a >= b + 2 {
                        for (x, y) in [
                            (ChevalleyGen::raise(a), ChevalleyGen::raise(b)),
                            (ChevalleyGen::lower(a), ChevalleyGen::lower(b)),
                        ] {
                            check(format!("R4 {x} {y}"), supercomm(x, y).is_zero());
                        }
                    }
                }
            }
            if m >= 1 && n >= 1 {
                for x in [ChevalleyGen::raise(m), ChevalleyGen::lower(m)] {
                    check(format!("R6 {x}^2"), mul(&mats[&x], &mats[&x]).is_zero());
                }
            }
        }
        let pass = violations.is_empty();
        Ok(OperatorReport { bidegree: (d1, d2), dim, checked, violations, pass })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OperatorReport {
    pub bidegree: (usize, usize),
    pub dim: usize,
    pub checked: usize,
    pub violations: Vec<String>,
    pub pass: bool,
}

/// `x.e` in `pres`.
pub fn act(pres: &AlgebraPresentation, x: ChevalleyGen, e: &NCElement) -> Result<NCElement> {
    Action::new(pres)?.act(x, e)
}

/// `x.g` for a generator of `pres`.
pub fn act_on_generator(pres: &AlgebraPresentation, x: ChevalleyGen, g: GenIndex) -> Result<NCElement> {
    Action::new(pres)?.act_on_generator(x, g)
}

pub fn is_invariant(pres: &AlgebraPresentation, e: &NCElement) -> Result<bool> {
    Action::new(pres)?.is_invariant(e)
}

pub fn invariant_subspace(pres: &AlgebraPresentation, d1: usize, d2: usize) -> Result<Vec<CoeffVector>> {
    Action::new(pres)?.invariant_subspace(d1, d2)
}

pub fn verify_operator_relations(pres: &AlgebraPresentation, d1: usize, d2: usize) -> Result<OperatorReport> {
    Action::new(pres)?.verify_operator_relations(d1, d2, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_rep() {
        let k1 = pi_matrix(ChevalleyGen::k(1), 1, 1).unwrap();
        assert_eq!(k1.get(0, 0), &Laurent::q());
        assert_eq!(k1.get(1, 1), &Laurent::one());
        let k2 = pi_matrix(ChevalleyGen::k(2), 1, 1).unwrap();
        assert_eq!(k2.get(1, 1), &Laurent::q_pow(-1));
        let e = pi_matrix(ChevalleyGen::raise(1), 1, 1).unwrap();
        assert_eq!(e.get(0, 1), &Laurent::one());
        assert!(pi_matrix(ChevalleyGen::raise(2), 1, 1).is_err());
        assert!(pi_matrix(ChevalleyGen::k(3), 1, 1).is_err());
    }

    #[test]
    fn antipode_matrices() {
        for a in 1..=3 {
            let k = pi_matrix(ChevalleyGen::k(a), 2, 1).unwrap();
            let s = pi_antipode_matrix(ChevalleyGen::k(a), 2, 1).unwrap();
            assert_eq!(k.mul(&s).unwrap(), CoeffMatrix::identity(3));
        }
        let s = pi_antipode_matrix(ChevalleyGen::raise(1), 2, 0).unwrap();
        assert_eq!(s.get(0, 1), &-Laurent::q());
        let s = pi_antipode_matrix(ChevalleyGen::lower(1), 2, 0).unwrap();
        assert_eq!(s.get(1, 0), &-Laurent::q_pow(-1));
    }

    #[test]
    fn generator_action() {
        let p = AlgebraPresentation::p(1, 1, 1, 1, 2, 1).unwrap();
        let a = Action::new(&p).unwrap();
        let t = |r, c| p.gen(Family::T, r, c).unwrap();
        assert_eq!(a.act_on_generator(ChevalleyGen::k(2), t(1, 2)).unwrap().to_string(), "q * T[1,2]");
        assert_eq!(a.act_on_generator(ChevalleyGen::k(3), t(1, 3)).unwrap().to_string(), "q^-1 * T[1,3]");
        assert_eq!(a.act_on_generator(ChevalleyGen::raise(1), t(1, 2)).unwrap().to_string(), "T[1,1]");
        assert!(a.act_on_generator(ChevalleyGen::raise(1), t(1, 1)).unwrap().is_zero());
        assert!(a.act_on_generator(ChevalleyGen::raise(1), t(1, 3)).unwrap().is_zero());
    }

    #[test]
    fn counit_on_one() {
        let p = AlgebraPresentation::p(1, 0, 1, 0, 1, 1).unwrap();
        let a = Action::new(&p).unwrap();
        for x in ChevalleyGen::all(1, 1) {
            let y = a.act(x, &NCElement::one()).unwrap();
            let eps = hopf_data(x).counit;
            assert_eq!(y, NCElement::one().scale(&Laurent::from_int(eps)));
        }
    }

    #[test]
    fn x_is_invariant() {
        for (k, l, r, s, m, n) in [(1, 0, 1, 0, 2, 0), (1, 1, 1, 1, 1, 1), (2, 1, 1, 1, 2, 1), (1, 1, 1, 1, 0, 2)] {
            let p = AlgebraPresentation::p(k, l, r, s, m, n).unwrap();
            let act = Action::new(&p).unwrap();
            let cols = IndexSet::new(m, n);
            let rows = p.row_set(Family::T);
            let brows = p.row_set(Family::Tbar);
            for a in rows.iter() {
                for b in brows.iter() {
                    let mut x = NCElement::zero();
                    for i in cols.iter() {
                        let e = rows.par(a) * (brows.par(b) + cols.par(i));
                        let w = Word::from_slice(&[p.gen(Family::T, a, i).unwrap(), p.gen(Family::Tbar, b, i).unwrap()]);
                        x.add_term(w, sign(e as u32));
                    }
                    assert!(act.is_invariant(&x).unwrap(), "X_{a}{b} in {:?}", p.params());
                }
            }
            let t = p.gen(Family::T, 1, 1).unwrap();
            assert!(!act.is_invariant(&NCElement::generator(t)).unwrap());
            assert!(act.is_invariant(&NCElement::one()).unwrap());
        }
    }

    #[test]
    fn operator_relations_small() {
        for (spec, d1, d2) in [("P:1,1,1,1,1,1", 1, 0), ("P:1,1,1,1,2,1", 1, 1), ("P:1,0,1,0,1,2", 2, 1), ("P:1,1,0,1,2,2", 1, 1)] {
            let p = AlgebraPresentation::from_spec(spec).unwrap();
            let rep = verify_operator_relations(&p, d1, d2).unwrap();
            assert!(rep.pass, "{spec} {:?}", rep.violations);
        }
    }

    #[test]
    fn invariant_dims() {
        let p = AlgebraPresentation::p(1, 1, 1, 1, 2, 2).unwrap();
        let a = Action::new(&p).unwrap();
        assert_eq!(a.invariant_subspace(0, 0).unwrap().len(), 1);
        assert_eq!(a.invariant_subspace(1, 1).unwrap().len(), 4);
        let p = AlgebraPresentation::p(1, 0, 1, 0, 1, 0).unwrap();
        assert_eq!(invariant_subspace(&p, 1, 0).unwrap().len(), 0);
    }
}
