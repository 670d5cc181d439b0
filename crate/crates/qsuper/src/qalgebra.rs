//! Quadratic superalgebras given by generators and oriented rewrite rules:
//! the quantum matrix algebras `M`, `M̄`, `M̃` and the braided product `P`.
//!
//! Generators are ordered by the key `(family, col, row)`; a word is normal
//! when its letters are weakly increasing in that order and no odd letter is
//! repeated. Every rule rewrites a non-normal adjacent pair into words whose
//! first letter is strictly smaller, so each rewrite makes a word strictly
//! smaller in the lexicographic order on words of a fixed length. That order
//! is well founded, which gives termination.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, ParseError, Result};
use crate::exactla::CoeffVector;
use crate::hookcomb;
use crate::laurent::{Laurent, LaurentParser};
use crate::parity::{sign, IndexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    T,
    Tbar,
    Ttilde,
}

impl Family {
    pub fn symbol(self) -> &'static str {
        match self {
            Family::T => "T",
            Family::Tbar => "Tb",
            Family::Ttilde => "Tt",
        }
    }
}

/// A matrix generator `t_{row,col}` of one family, with its parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenIndex {
    pub family: Family,
    pub row: u16,
    pub col: u16,
    pub odd: bool,
}

impl GenIndex {
    pub fn key(&self) -> (Family, u16, u16) {
        (self.family, self.col, self.row)
    }

    pub fn row(&self) -> usize {
        self.row as usize
    }

    pub fn col(&self) -> usize {
        self.col as usize
    }
}

impl Ord for GenIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for GenIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.family.symbol(), self.row, self.col)
    }
}

/// A product of generators, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub SmallVec<[GenIndex; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_slice(g: &[GenIndex]) -> Self {
        Word(SmallVec::from_slice(g))
    }

    pub fn letters(&self) -> &[GenIndex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Mod-2 sum of letter parities.
    pub fn odd(&self) -> bool {
        self.0.iter().fold(false, |acc, g| acc ^ g.odd)
    }

    /// Position of the leftmost non-normal adjacent pair.
    pub fn first_inversion(&self) -> Option<usize> {
        self.0.windows(2).position(|w| pair_reducible(&w[0], &w[1]))
    }

    pub fn is_normal(&self) -> bool {
        self.first_inversion().is_none()
    }

    /// Number of letters of each family `(T, Tbar, Ttilde)`.
    pub fn family_degrees(&self) -> (usize, usize, usize) {
        let mut d = (0, 0, 0);
        for g in &self.0 {
            match g.family {
                Family::T => d.0 += 1,
                Family::Tbar => d.1 += 1,
                Family::Ttilde => d.2 += 1,
            }
        }
        d
    }
}

fn pair_reducible(g: &GenIndex, h: &GenIndex) -> bool {
    match g.cmp(h) {
        Ordering::Greater => true,
        Ordering::Equal => g.odd,
        Ordering::Less => false,
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A finite `Z[q, q^-1]`-linear combination of words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCElement {
    terms: BTreeMap<Word, Laurent>,
}

impl NCElement {
    pub fn zero() -> Self {
        NCElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty(), Laurent::one())
    }

    pub fn from_word(w: Word, c: Laurent) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn generator(g: GenIndex) -> Self {
        Self::from_word(Word::from_slice(&[g]), Laurent::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Laurent)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Laurent)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Laurent {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Laurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NCElement, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn add(&self, other: &NCElement) -> NCElement {
        let mut out = self.clone();
        out.add_scaled(other, &Laurent::one());
        out
    }

    pub fn sub(&self, other: &NCElement) -> NCElement {
        let mut out = self.clone();
        out.add_scaled(other, &Laurent::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Laurent) -> NCElement {
        let mut out = NCElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Concatenation product without normalisation.
    pub fn concat(&self, other: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Laurent) -> Laurent) -> NCElement {
        let mut out = NCElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// All words are normal.
    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(Word::is_normal)
    }

    /// Common length of all words, if homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::len);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }
}

impl fmt::Display for NCElement {
    /// Canonical text form, e.g. `q^-1 * T[1,1] Tb[1,1] - Tb[1,2] T[2,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let lead_neg = c.terms().next_back().is_some_and(|(_, x)| x < &num_bigint::BigInt::from(0));
            let mag = if lead_neg { -c } else { c.clone() };
            match (i, lead_neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coeff = if mag.is_compound() { format!("({mag})") } else { mag.to_string() };
            if w.is_empty() {
                f.write_str(&coeff)?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{coeff} * {w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCElement({self})")
    }
}

/// Which algebra a presentation describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    M,
    Mbar,
    Mtilde,
    P,
}

/// Index data `(k,l,r,s)` plus `(m,n)` for `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PresParams {
    pub k: usize,
    pub l: usize,
    pub r: usize,
    pub s: usize,
    pub m: usize,
    pub n: usize,
}

/// One term `c · x y` of a rule's right-hand side.
pub type RuleTerm = (Laurent, GenIndex, GenIndex);

/// Generators, order and oriented quadratic rules for one of `M`, `M̄`, `M̃`, `P`.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    kind: Kind,
    params: PresParams,
    classical: bool,
    gens: Vec<GenIndex>,
    rules: HashMap<(GenIndex, GenIndex), Vec<RuleTerm>>,
}

/// Which relation table governs one matrix family.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Table {
    Rel1,
    Rel2,
    Tilde,
}

impl AlgebraPresentation {
    /// `M^{k|l}_{r|s}`: generators `t_ab`, `a ∈ I_{k|l}`, `b ∈ I_{r|s}`.
    pub fn m(k: usize, l: usize, r: usize, s: usize) -> Result<Self> {
        Self::matrix(Kind::M, Family::T, Table::Rel1, k, l, r, s)
    }

    /// `M̄^{k|l}_{r|s}` with the relations of the dual representation.
    pub fn mbar(k: usize, l: usize, r: usize, s: usize) -> Result<Self> {
        Self::matrix(Kind::Mbar, Family::Tbar, Table::Rel2, k, l, r, s)
    }

    /// `M̃^{k|l}_{r|s}`.
    pub fn mtilde(k: usize, l: usize, r: usize, s: usize) -> Result<Self> {
        Self::matrix(Kind::Mtilde, Family::Ttilde, Table::Tilde, k, l, r, s)
    }

    fn matrix(kind: Kind, fam: Family, table: Table, k: usize, l: usize, r: usize, s: usize) -> Result<Self> {
        check_nonempty(k, l, "row")?;
        check_nonempty(r, s, "column")?;
        let rows = IndexSet::new(k, l);
        let cols = IndexSet::new(r, s);
        let mut p = AlgebraPresentation {
            kind,
            params: PresParams { k, l, r, s, m: 0, n: 0 },
            classical: false,
            gens: Vec::new(),
            rules: HashMap::new(),
        };
        p.add_matrix_block(fam, rows, cols, table);
        p.gens.sort();
        Ok(p)
    }

    /// `P = M^{k|l}_{m|n} ⊗_R M̄^{r|s}_{m|n}` with generators `T_ai`, `T̄_bj`.
    pub fn p(k: usize, l: usize, r: usize, s: usize, m: usize, n: usize) -> Result<Self> {
        check_nonempty(k, l, "T row")?;
        check_nonempty(r, s, "Tbar row")?;
        check_nonempty(m, n, "column")?;
        let trows = IndexSet::new(k, l);
        let brows = IndexSet::new(r, s);
        let cols = IndexSet::new(m, n);
        let mut p = AlgebraPresentation {
            kind: Kind::P,
            params: PresParams { k, l, r, s, m, n },
            classical: false,
            gens: Vec::new(),
            rules: HashMap::new(),
        };
        p.add_matrix_block(Family::T, trows, cols, Table::Rel1);
        p.add_matrix_block(Family::Tbar, brows, cols, Table::Rel2);
        for b in brows.iter() {
            for j in cols.iter() {
                let tb = make_gen(Family::Tbar, brows, cols, b, j);
                for a in trows.iter() {
                    for i in cols.iter() {
                        let t = make_gen(Family::T, trows, cols, a, i);
                        let (pa, pb, pi, pj) = (trows.par(a), brows.par(b), cols.par(i), cols.par(j));
                        let rhs = if i != j {
                            vec![(sign(((pa + pi) * (pb + pj)) as u32), t, tb)]
                        } else {
                            let mut v = vec![(
                                &sign(((pa + pi) * (pb + pi)) as u32) * &cols.q(i, -1),
                                t,
                                tb,
                            )];
                            for jj in i + 1..=cols.len() {
                                let e = pb * (pa + pi) + pa * cols.par(jj);
                                let c = -(&sign(e as u32) * &Laurent::q_minus_qinv());
                                v.push((
                                    c,
                                    make_gen(Family::T, trows, cols, a, jj),
                                    make_gen(Family::Tbar, brows, cols, b, jj),
                                ));
                            }
                            v
                        };
                        p.rules.insert((tb, t), rhs);
                    }
                }
            }
        }
        p.gens.sort();
        Ok(p)
    }

    /// Build from a short spec `M:k,l,r,s`, `Mb:...`, `Mt:...` or `P:k,l,r,s,m,n`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let (name, nums) = spec
            .split_once(':')
            .ok_or_else(|| ParseError::new(0, "expected NAME:k,l,r,s[,m,n]"))?;
        let mut v = Vec::new();
        let mut offset = name.len() + 1;
        for part in nums.split(',') {
            let x: usize = part
                .trim()
                .parse()
                .map_err(|_| ParseError::new(offset, format!("bad integer `{part}`")))?;
            v.push(x);
            offset += part.len() + 1;
        }
        let want = if name == "P" { 6 } else { 4 };
        if v.len() != want {
            return Err(ParseError::new(name.len() + 1, format!("{name} takes {want} integers")).into());
        }
        match name {
            "M" => Self::m(v[0], v[1], v[2], v[3]),
            "Mb" => Self::mbar(v[0], v[1], v[2], v[3]),
            "Mt" => Self::mtilde(v[0], v[1], v[2], v[3]),
            "P" => Self::p(v[0], v[1], v[2], v[3], v[4], v[5]),
            _ => Err(ParseError::new(0, format!("unknown algebra `{name}`")).into()),
        }
    }

    fn add_matrix_block(&mut self, fam: Family, rows: IndexSet, cols: IndexSet, table: Table) {
        let gens: Vec<GenIndex> = rows
            .iter()
            .flat_map(|a| cols.iter().map(move |b| make_gen(fam, rows, cols, a, b)))
            .collect();
        for &g in &gens {
            for &h in &gens {
                if g > h {
                    let rhs = matrix_rule(fam, rows, cols, table, g, h);
                    self.rules.insert((g, h), rhs);
                } else if g == h && g.odd {
                    self.rules.insert((g, h), Vec::new());
                }
            }
        }
        self.gens.extend(gens);
    }

    /// The same presentation with every rule constant specialised at `q = 1`.
    pub fn classical(&self) -> Self {
        let rules = self
            .rules
            .iter()
            .map(|(&k, rhs)| {
                let v = rhs
                    .iter()
                    .filter_map(|(c, x, y)| {
                        let c1 = Laurent::from_int(c.eval_q1());
                        (!c1.is_zero()).then_some((c1, *x, *y))
                    })
                    .collect();
                (k, v)
            })
            .collect();
        AlgebraPresentation { rules, classical: true, ..self.clone() }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn params(&self) -> PresParams {
        self.params
    }

    pub fn is_classical(&self) -> bool {
        self.classical
    }

    /// Generators in ascending key order.
    pub fn generators(&self) -> &[GenIndex] {
        &self.gens
    }

    pub fn rule(&self, g: GenIndex, h: GenIndex) -> Option<&[RuleTerm]> {
        self.rules.get(&(g, h)).map(Vec::as_slice)
    }

    /// All rules as `((g, h), rhs)`, sorted by left-hand side.
    pub fn rules(&self) -> Vec<((GenIndex, GenIndex), &[RuleTerm])> {
        let mut v: Vec<_> = self.rules.iter().map(|(k, r)| (*k, r.as_slice())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Row index set of a family.
    pub fn row_set(&self, fam: Family) -> IndexSet {
        let p = self.params;
        match (self.kind, fam) {
            (Kind::P, Family::Tbar) => IndexSet::new(p.r, p.s),
            _ => IndexSet::new(p.k, p.l),
        }
    }

    /// Column index set of a family.
    pub fn col_set(&self, _fam: Family) -> IndexSet {
        let p = self.params;
        match self.kind {
            Kind::P => IndexSet::new(p.m, p.n),
            _ => IndexSet::new(p.r, p.s),
        }
    }

    /// Families used by this presentation.
    pub fn families(&self) -> &'static [Family] {
        match self.kind {
            Kind::M => &[Family::T],
            Kind::Mbar => &[Family::Tbar],
            Kind::Mtilde => &[Family::Ttilde],
            Kind::P => &[Family::T, Family::Tbar],
        }
    }

    /// The generator `fam[row,col]`, validated against this presentation.
    pub fn gen(&self, fam: Family, row: usize, col: usize) -> Result<GenIndex> {
        if !self.families().contains(&fam) {
            return Err(Error::ForeignGenerator(format!("{}[{row},{col}]", fam.symbol())));
        }
        let rows = self.row_set(fam);
        let cols = self.col_set(fam);
        if !rows.contains(row) || !cols.contains(col) {
            return Err(Error::IndexOutOfRange(format!("{}[{row},{col}]", fam.symbol())));
        }
        Ok(make_gen(fam, rows, cols, row, col))
    }

    pub fn contains(&self, g: &GenIndex) -> bool {
        self.gen(g.family, g.row(), g.col()).is_ok_and(|h| h == *g)
    }

    fn check_element(&self, e: &NCElement) -> Result<()> {
        for (w, _) in e.terms() {
            for g in w.letters() {
                if !self.contains(g) {
                    return Err(Error::ForeignGenerator(g.to_string()));
                }
            }
        }
        Ok(())
    }

    /// Apply the rule at position `pos` of `w` (the pair `w[pos], w[pos+1]`).
    pub fn rewrite_at(&self, w: &Word, pos: usize) -> Option<NCElement> {
        let l = w.letters();
        let rhs = self.rules.get(&(l[pos], l[pos + 1]))?;
        let mut out = NCElement::zero();
        for (c, x, y) in rhs {
            let mut v: SmallVec<[GenIndex; 8]> = SmallVec::with_capacity(l.len());
            v.extend_from_slice(&l[..pos]);
            v.push(*x);
            v.push(*y);
            v.extend_from_slice(&l[pos + 2..]);
            out.add_term(Word(v), c.clone());
        }
        Some(out)
    }

    /// Normal form onto the PBW basis.
    pub fn normal_form(&self, e: &NCElement) -> Result<NCElement> {
        self.check_element(e)?;
        Ok(self.normal_form_counted(e).0)
    }

    /// Normal form together with the number of rewrite steps taken.
    ///
    /// Pending words are kept in a sorted map and the largest is processed
    /// first. Rewrites only produce smaller words, so every word is handled
    /// once, after all contributions to its coefficient have been merged.
    pub fn normal_form_counted(&self, e: &NCElement) -> (NCElement, usize) {
        let mut pending = e.terms.clone();
        let mut out = NCElement::zero();
        let mut steps = 0;
        while let Some((w, c)) = pending.pop_last() {
            let Some(pos) = w.first_inversion() else {
                out.terms.insert(w, c);
                continue;
            };
            steps += 1;
            let l = w.letters();
            let rhs = self
                .rules
                .get(&(l[pos], l[pos + 1]))
                .expect("every reducible pair has a rule");
            for (rc, x, y) in rhs {
                let mut v: SmallVec<[GenIndex; 8]> = SmallVec::with_capacity(l.len());
                v.extend_from_slice(&l[..pos]);
                v.push(*x);
                v.push(*y);
                v.extend_from_slice(&l[pos + 2..]);
                let coeff = &c * rc;
                match pending.entry(Word(v)) {
                    std::collections::btree_map::Entry::Vacant(slot) => {
                        slot.insert(coeff);
                    }
                    std::collections::btree_map::Entry::Occupied(mut slot) => {
                        *slot.get_mut() += &coeff;
                        if slot.get().is_zero() {
                            slot.remove();
                        }
                    }
                }
            }
        }
        (out, steps)
    }

    /// Normal form of a single word.
    pub fn normal_form_word(&self, w: &Word) -> NCElement {
        self.normal_form_counted(&NCElement::from_word(w.clone(), Laurent::one())).0
    }

    /// `normal_form(a · b)`.
    pub fn multiply(&self, a: &NCElement, b: &NCElement) -> Result<NCElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.normal_form_counted(&a.concat(b)).0)
    }

    /// All normal words of length `degree` (for `P`: of total degree).
    pub fn graded_basis(&self, degree: usize) -> Vec<Word> {
        normal_words(&self.gens, degree)
    }

    /// Normal words of `P` with `d1` letters `T` followed by `d2` letters `T̄`.
    /// For the single-family algebras only `d2 = 0` is meaningful.
    pub fn graded_basis_bi(&self, d1: usize, d2: usize) -> Vec<Word> {
        let fams = self.families();
        let first: Vec<GenIndex> = self.gens.iter().copied().filter(|g| g.family == fams[0]).collect();
        let left = normal_words(&first, d1);
        if fams.len() == 1 {
            return if d2 == 0 { left } else { Vec::new() };
        }
        let second: Vec<GenIndex> = self.gens.iter().copied().filter(|g| g.family == fams[1]).collect();
        let right = normal_words(&second, d2);
        let mut out = Vec::with_capacity(left.len() * right.len());
        for a in &left {
            for b in &right {
                out.push(a.concat(b));
            }
        }
        out
    }

    /// Parse the element text format against this presentation.
    pub fn parse_element(&self, s: &str) -> Result<NCElement> {
        let mut p = ElementParser { lp: LaurentParser { src: s, pos: 0 }, pres: self };
        let e = p.parse()?;
        Ok(e)
    }

    /// Degree-by-degree count of normal words against the classical counts.
    pub fn verify_flatness(&self, max_degree: usize) -> FlatnessReport {
        let p = self.params;
        let mut degrees = Vec::new();
        for n in 0..=max_degree {
            match self.kind {
                Kind::P => {
                    for d1 in 0..=n {
                        let d2 = n - d1;
                        let words = self.graded_basis_bi(d1, d2).len() as u64;
                        let expected = hookcomb::supermatrix_monomial_count(p.k, p.l, p.m, p.n, d1)
                            * hookcomb::supermatrix_monomial_count(p.r, p.s, p.m, p.n, d2);
                        degrees.push(FlatnessRow {
                            degree: vec![d1, d2],
                            words,
                            monomials: expected,
                            howe: None,
                            pass: words == expected,
                        });
                    }
                }
                _ => {
                    let words = self.graded_basis(n).len() as u64;
                    let monomials = hookcomb::supermatrix_monomial_count(p.k, p.l, p.r, p.s, n);
                    let howe = hookcomb::howe_dim_sum(p.k, p.l, p.r, p.s, n);
                    degrees.push(FlatnessRow {
                        degree: vec![n],
                        words,
                        monomials,
                        howe: Some(howe),
                        pass: words == monomials && monomials == howe,
                    });
                }
            }
        }
        let overlaps = self.check_overlaps();
        let pass = degrees.iter().all(|d| d.pass) && overlaps.unresolved.is_empty();
        FlatnessReport { kind: self.kind, params: p, degrees, overlaps, pass }
    }

    /// Resolve every overlap `x y z` where both `x y` and `y z` are reducible:
    /// reducing either pair first must lead to the same normal form. With
    /// quadratic rules and a monomial order this is the full diamond-lemma
    /// criterion, so it certifies that normal words form a basis.
    pub fn check_overlaps(&self) -> OverlapReport {
        let mut checked = 0;
        let mut unresolved = Vec::new();
        for &x in &self.gens {
            for &y in &self.gens {
                if !pair_reducible(&x, &y) {
                    continue;
                }
                for &z in &self.gens {
                    if !pair_reducible(&y, &z) {
                        continue;
                    }
                    checked += 1;
                    let w = Word::from_slice(&[x, y, z]);
                    let a = self.normal_form_counted(&self.rewrite_at(&w, 0).unwrap()).0;
                    let b = self.normal_form_counted(&self.rewrite_at(&w, 1).unwrap()).0;
                    if a != b {
                        unresolved.push(w.to_string());
                    }
                }
            }
        }
        OverlapReport { checked, unresolved }
    }

    /// Seeded random trials of `nf(nf(ab)c) = nf(a nf(bc))`. Each trial uses
    /// three random generators and three random elements with one or two
    /// terms of length up to two and small Laurent coefficients.
    pub fn associativity_trials(&self, trials: usize, seed: u64) -> AssociativityReport {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let gens = &self.gens;
        let mut failures = Vec::new();
        let random_element = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut e = NCElement::zero();
            for _ in 0..rng.gen_range(1..=2) {
                let len = rng.gen_range(1..=2);
                let w = Word((0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect());
                let c = Laurent::monomial(rng.gen_range(-3i32..=3), rng.gen_range(-2..=2));
                e.add_term(w, c);
            }
            e
        };
        for _ in 0..trials {
            let mut pick = || NCElement::generator(gens[rng.gen_range(0..gens.len())]);
            let triple = (pick(), pick(), pick());
            let mixed = (random_element(&mut rng), random_element(&mut rng), random_element(&mut rng));
            for (a, b, c) in [triple, mixed] {
                let ab = self.normal_form_counted(&a.concat(&b)).0;
                let left = self.normal_form_counted(&ab.concat(&c)).0;
                let bc = self.normal_form_counted(&b.concat(&c)).0;
                let right = self.normal_form_counted(&a.concat(&bc)).0;
                if left != right {
                    failures.push(format!("({a}) ({b}) ({c})"));
                }
            }
        }
        AssociativityReport { trials, seed, pass: failures.is_empty(), failures }
    }

    /// Coordinates of `e` in `basis`.
    pub fn element_to_vector(e: &NCElement, basis: &[Word]) -> Result<CoeffVector> {
        element_to_vector(e, basis)
    }
}

/// Coordinates of a canonical element with respect to a list of words.
pub fn element_to_vector(e: &NCElement, basis: &[Word]) -> Result<CoeffVector> {
    let index: HashMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut v = vec![Laurent::zero(); basis.len()];
    for (w, c) in e.terms() {
        let i = index.get(w).ok_or_else(|| Error::NotInBasis(w.to_string()))?;
        v[*i] = c.clone();
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct AssociativityReport {
    pub trials: usize,
    pub seed: u64,
    pub failures: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatnessRow {
    pub degree: Vec<usize>,
    pub words: u64,
    pub monomials: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub howe: Option<u64>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapReport {
    pub checked: usize,
    pub unresolved: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatnessReport {
    pub kind: Kind,
    pub params: PresParams,
    pub degrees: Vec<FlatnessRow>,
    pub overlaps: OverlapReport,
    pub pass: bool,
}

fn check_nonempty(even: usize, odd: usize, what: &str) -> Result<()> {
    if even + odd == 0 {
        return Err(Error::EmptyIndexSet(format!("{what} index set I_{{{even}|{odd}}} is empty")));
    }
    Ok(())
}

fn make_gen(family: Family, rows: IndexSet, cols: IndexSet, row: usize, col: usize) -> GenIndex {
    GenIndex { family, row: row as u16, col: col as u16, odd: rows.odd(row) ^ cols.odd(col) }
}

/// Right-hand side for the non-normal pair `g h` (`g > h`) of one matrix family.
fn matrix_rule(fam: Family, rows: IndexSet, cols: IndexSet, table: Table, g: GenIndex, h: GenIndex) -> Vec<RuleTerm> {
    let t = |a: usize, b: usize| make_gen(fam, rows, cols, a, b);
    let pr = |a: usize| rows.par(a) as u32;
    let pc = |c: usize| cols.par(c) as u32;
    let (p, qc) = (g.row(), g.col());
    let (u, v) = (h.row(), h.col());
    let qq = Laurent::q_minus_qinv();
    if qc == v {
        // t_ac t_bc with a > b
        let (a, b, c) = (p, u, qc);
        let s = sign((pr(a) + pc(c)) * (pr(b) + pc(c)));
        let power = if table == Table::Rel2 { -1 } else { 1 };
        return vec![(&s * &cols.q(c, power), h, g)];
    }
    if p == u {
        // t_ab t_ac with b > c
        let (a, b, c) = (p, qc, v);
        let s = sign((pr(a) + pc(c)) * (pr(a) + pc(b)));
        let power = if table == Table::Rel1 { 1 } else { -1 };
        return vec![(&s * &rows.q(a, power), h, g)];
    }
    if p > u {
        // t_ac t_bd with a > b, c > d
        let (a, c, b, d) = (p, qc, u, v);
        let s = sign((pr(a) + pc(c)) * (pr(b) + pc(d)));
        let sg = sign(pr(a) * (pr(b) + pc(d)) + pr(b) * pc(d));
        let mut out = vec![(s, t(b, d), t(a, c))];
        match table {
            Table::Rel1 => out.push((&sg * &qq, t(b, c), t(a, d))),
            Table::Rel2 => out.push((-(&sg * &qq), t(b, c), t(a, d))),
            Table::Tilde => {}
        }
        return out;
    }
    // g h = t_bd t_ac with a > b, c < d: solve the a>b, c<d relation for it.
    let (a, c, b, d) = (u, v, p, qc);
    let s = sign((pr(a) + pc(c)) * (pr(b) + pc(d)));
    let mut out = vec![(s.clone(), t(a, c), t(b, d))];
    if table == Table::Tilde {
        let sg = sign(pr(a) * (pr(b) + pc(d)) + pr(b) * pc(d));
        out.push((-(&(&s * &sg) * &qq), t(b, c), t(a, d)));
    }
    out
}

/// Normal words of a given length over generators sorted by key.
fn normal_words(gens: &[GenIndex], len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur: SmallVec<[GenIndex; 8]> = SmallVec::new();
    fn rec(gens: &[GenIndex], start: usize, left: usize, cur: &mut SmallVec<[GenIndex; 8]>, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(Word(cur.clone()));
            return;
        }
        for i in start..gens.len() {
            cur.push(gens[i]);
            let next = if gens[i].odd { i + 1 } else { i };
            rec(gens, next, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(gens, 0, len, &mut cur, &mut out);
    out
}

struct ElementParser<'a, 'p> {
    lp: LaurentParser<'a>,
    pres: &'p AlgebraPresentation,
}

impl ElementParser<'_, '_> {
    fn err(&self, msg: &str) -> Error {
        ParseError::new(self.lp.pos, msg).into()
    }

    fn parse(&mut self) -> Result<NCElement> {
        let mut out = NCElement::zero();
        let mut first = true;
        loop {
            self.lp.skip_ws();
            if self.lp.peek().is_none() {
                break;
            }
            let neg = match self.lp.peek() {
                Some('-') => {
                    self.lp.pos += 1;
                    true
                }
                Some('+') => {
                    self.lp.pos += 1;
                    false
                }
                _ if first => false,
                _ => return Err(self.err("expected `+` or `-`")),
            };
            self.lp.skip_ws();
            let (w, c) = self.parse_term()?;
            out.add_term(w, if neg { -c } else { c });
            first = false;
        }
        if first {
            return Err(self.err("empty element"));
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<(Word, Laurent)> {
        let coeff = match self.lp.peek() {
            Some('(') => {
                self.lp.pos += 1;
                let c = self.lp.parse_sum()?;
                self.lp.skip_ws();
                if self.lp.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.lp.pos += 1;
                Some(c)
            }
            Some(ch) if ch.is_ascii_digit() || ch == 'q' => {
                let at = self.lp.pos;
                let (e, c) = self.lp.parse_term()?.ok_or_else(|| ParseError::new(at, "expected coefficient"))?;
                Some(Laurent::monomial(c, e))
            }
            Some('T') => None,
            _ => return Err(self.err("expected a coefficient or a generator")),
        };
        let Some(c) = coeff else {
            return Ok((self.parse_word()?, Laurent::one()));
        };
        self.lp.skip_ws();
        if self.lp.peek() == Some('*') {
            self.lp.pos += 1;
            self.lp.skip_ws();
            return Ok((self.parse_word()?, c));
        }
        Ok((Word::empty(), c))
    }

    fn parse_word(&mut self) -> Result<Word> {
        let mut v = SmallVec::new();
        loop {
            self.lp.skip_ws();
            if self.lp.peek() != Some('T') {
                break;
            }
            v.push(self.parse_gen()?);
        }
        if v.is_empty() {
            return Err(self.err("expected a generator like `T[1,2]`"));
        }
        Ok(Word(v))
    }

    fn parse_gen(&mut self) -> Result<GenIndex> {
        let start = self.lp.pos;
        let rest = &self.lp.src[start..];
        let (fam, len) = if rest.starts_with("Tb") {
            (Family::Tbar, 2)
        } else if rest.starts_with("Tt") {
            (Family::Ttilde, 2)
        } else {
            (Family::T, 1)
        };
        self.lp.pos += len;
        let bracket = self.lp.src[self.lp.pos..]
            .find(']')
            .ok_or_else(|| ParseError::new(self.lp.pos, "expected `[row,col]`"))?;
        let inner = &self.lp.src[self.lp.pos..self.lp.pos + bracket];
        let nums = inner
            .strip_prefix('[')
            .and_then(|x| x.split_once(','))
            .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)));
        let Some((row, col)) = nums else {
            return Err(ParseError::new(self.lp.pos, "expected `[row,col]`").into());
        };
        self.lp.pos += bracket + 1;
        self.pres.gen(fam, row, col).map_err(|e| match e {
            Error::ForeignGenerator(g) | Error::IndexOutOfRange(g) => {
                ParseError::new(start, format!("generator {g} is not in this algebra")).into()
            }
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(p: &AlgebraPresentation, s: &str) -> String {
        p.normal_form(&p.parse_element(s).unwrap()).unwrap().to_string()
    }

    #[test]
    fn m_examples() {
        let m = AlgebraPresentation::m(1, 1, 1, 1).unwrap();
        assert_eq!(nf(&m, "T[2,1] T[1,1]"), "q * T[1,1] T[2,1]");
        assert_eq!(nf(&m, "T[1,2] T[1,2]"), "0");
        assert_eq!(nf(&m, "T[1,2] T[1,1]"), "q * T[1,1] T[1,2]");
    }

    #[test]
    fn mbar_examples() {
        let m = AlgebraPresentation::mbar(1, 1, 1, 1).unwrap();
        assert_eq!(nf(&m, "Tb[2,1] Tb[1,1]"), "q^-1 * Tb[1,1] Tb[2,1]");
        assert_eq!(nf(&m, "Tb[1,2] Tb[1,2]"), "0");
    }

    #[test]
    fn mtilde_examples() {
        let m = AlgebraPresentation::mtilde(2, 0, 2, 0).unwrap();
        assert_eq!(nf(&m, "Tt[2,2] Tt[1,1]"), "Tt[1,1] Tt[2,2]");
        assert_eq!(nf(&m, "Tt[1,2] Tt[2,1]"), "-(q - q^-1) * Tt[1,1] Tt[2,2] + Tt[2,1] Tt[1,2]");
        assert_eq!(nf(&m, "Tt[2,1] Tt[1,1]"), "q * Tt[1,1] Tt[2,1]");
        let s = AlgebraPresentation::mtilde(1, 1, 1, 1).unwrap();
        assert_eq!(nf(&s, "Tt[1,2] Tt[1,2]"), "0");
    }

    #[test]
    fn p_examples() {
        let p = AlgebraPresentation::p(1, 0, 1, 0, 1, 0).unwrap();
        assert_eq!(nf(&p, "Tb[1,1] T[1,1]"), "q^-1 * T[1,1] Tb[1,1]");
        let p = AlgebraPresentation::p(1, 1, 1, 1, 1, 1).unwrap();
        // i != j: plain graded swap; T[2,1] odd, Tb[1,2] odd.
        assert_eq!(nf(&p, "Tb[1,2] T[2,1]"), "-T[2,1] Tb[1,2]");
    }

    #[test]
    fn text_round_trip() {
        let p = AlgebraPresentation::p(2, 0, 2, 0, 1, 1).unwrap();
        let e = p.parse_element("q^-1 * T[1,1] Tb[1,1] - Tb[1,2] T[2,1]").unwrap();
        assert_eq!(e.to_string(), "q^-1 * T[1,1] Tb[1,1] - Tb[1,2] T[2,1]");
        let f = p.parse_element("(q^2 - 2 + q^-2) * T[1,2] - 3 + q").unwrap();
        assert_eq!(p.parse_element(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn parse_errors_carry_position() {
        let m = AlgebraPresentation::m(1, 1, 1, 1).unwrap();
        let err = m.parse_element("T[1,1] Tb[1,1]").unwrap_err();
        assert!(matches!(err, Error::Parse(ParseError { pos: 7, .. })), "{err:?}");
        assert!(m.parse_element("T[3,1]").is_err());
        assert!(m.parse_element("").is_err());
        assert!(m.parse_element("T[1,1] +").is_err());
    }

    #[test]
    fn degenerate_rejected() {
        assert!(AlgebraPresentation::m(0, 0, 1, 1).is_err());
        assert!(AlgebraPresentation::p(1, 0, 1, 0, 0, 0).is_err());
    }

    #[test]
    fn basis_sizes() {
        let m = AlgebraPresentation::m(1, 1, 1, 1).unwrap();
        assert_eq!(m.graded_basis(2).len(), 8);
        assert_eq!(m.graded_basis(0), vec![Word::empty()]);
        let m = AlgebraPresentation::m(1, 0, 1, 0).unwrap();
        assert_eq!(m.graded_basis(5).len(), 1);
        let p = AlgebraPresentation::p(1, 0, 1, 0, 1, 1).unwrap();
        assert_eq!(p.graded_basis_bi(1, 1).len(), 4);
    }

    #[test]
    fn overlaps_resolve() {
        for (k, l, r, s) in [(1, 1, 1, 1), (2, 1, 1, 2), (2, 0, 2, 0), (0, 2, 2, 1), (2, 2, 2, 2)] {
            for p in [
                AlgebraPresentation::m(k, l, r, s).unwrap(),
                AlgebraPresentation::mbar(k, l, r, s).unwrap(),
                AlgebraPresentation::mtilde(k, l, r, s).unwrap(),
            ] {
                let rep = p.check_overlaps();
                assert!(rep.unresolved.is_empty(), "{:?} {:?}", p.kind(), &rep.unresolved[..rep.unresolved.len().min(5)]);
            }
        }
        for (k, l, r, s, m, n) in [(1, 1, 1, 1, 1, 1), (2, 0, 2, 0, 1, 1), (1, 1, 2, 1, 2, 1), (1, 0, 1, 0, 0, 2)] {
            let p = AlgebraPresentation::p(k, l, r, s, m, n).unwrap();
            let rep = p.check_overlaps();
            assert!(rep.unresolved.is_empty(), "P {:?}", &rep.unresolved[..rep.unresolved.len().min(5)]);
        }
    }
}
