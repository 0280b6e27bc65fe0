//! The bilinear form on the free algebra, its Gram blocks and radical, the
//! pivot bases of the positive half, and the Serre-type elements.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::cartan::{CartanDatum, RootWeight};
use crate::error::{Error, Result};
use crate::freesuper::{
    derive_left_word, derive_right_word, divided_power, exdegrees_of_weight, ExDegree, GradedElement, Letter,
    Word,
};
use crate::linalg::QMatrix;
use crate::scalar::{LaurentPoly, QScalar};

/// Cache of normalized form values keyed by word pairs.
pub type FormMemo = HashMap<(Word, Word), LaurentPoly>;

/// `1 - (-1)^{p} q_i^{2l}` multiplied over the letters of a word: the common
/// denominator of the form on its ExDegree.
pub fn norm_denominator(datum: &CartanDatum, w: &Word) -> LaurentPoly {
    w.letters()
        .iter()
        .fold(LaurentPoly::one(), |acc, a| &acc * &a.norm_denominator(datum))
}

/// The form `(u, v)` multiplied by [`norm_denominator`] of `u`.
///
/// This lies in `Z[q, q^{-1}]` and obeys
/// `<u a, v> = sum over positions k of v holding a of sign_k q^{e_k} <u, v without k>`,
/// obtained by peeling the last letter of `u` against the right derivation.
pub fn normalized_form_words(datum: &CartanDatum, u: &Word, v: &Word, memo: &mut FormMemo) -> LaurentPoly {
    if u.len() != v.len() {
        return LaurentPoly::zero();
    }
    if u.is_empty() {
        return LaurentPoly::one();
    }
    let key = (u.clone(), v.clone());
    if let Some(x) = memo.get(&key) {
        return x.clone();
    }
    let a = *u.letters().last().unwrap();
    let head = Word(u.letters()[..u.len() - 1].to_vec());
    let mut acc = LaurentPoly::zero();
    for (rest, sign, e) in derive_right_word(datum, v, a) {
        let sub = normalized_form_words(datum, &head, &rest, memo);
        if !sub.is_zero() {
            acc = &acc + &(if sign < 0 { -sub.shift(e) } else { sub.shift(e) });
        }
    }
    memo.insert(key, acc.clone());
    acc
}

/// Same normalized value as [`normalized_form_words`], computed by peeling the
/// first letter of `u` against the left derivation instead.
pub fn normalized_form_words_left(
    datum: &CartanDatum,
    u: &Word,
    v: &Word,
    memo: &mut FormMemo,
) -> LaurentPoly {
    if u.len() != v.len() {
        return LaurentPoly::zero();
    }
    if u.is_empty() {
        return LaurentPoly::one();
    }
    let key = (u.clone(), v.clone());
    if let Some(x) = memo.get(&key) {
        return x.clone();
    }
    let a = u.letters()[0];
    let tail = Word(u.letters()[1..].to_vec());
    let mut acc = LaurentPoly::zero();
    for (rest, sign, e) in derive_left_word(datum, v, a) {
        let sub = normalized_form_words_left(datum, &tail, &rest, memo);
        if !sub.is_zero() {
            acc = &acc + &(if sign < 0 { -sub.shift(e) } else { sub.shift(e) });
        }
    }
    memo.insert(key, acc.clone());
    acc
}

/// `(u, v)` for two words.
pub fn form_words(datum: &CartanDatum, u: &Word, v: &Word, memo: &mut FormMemo) -> QScalar {
    let n = normalized_form_words(datum, u, v, memo);
    if n.is_zero() {
        return QScalar::zero();
    }
    QScalar::new(n, norm_denominator(datum, u))
}

/// The bilinear form `(x, y)`.
pub fn form(datum: &CartanDatum, x: &GradedElement, y: &GradedElement) -> QScalar {
    let mut memo = FormMemo::new();
    form_with_memo(datum, x, y, &mut memo)
}

pub fn form_with_memo(datum: &CartanDatum, x: &GradedElement, y: &GradedElement, memo: &mut FormMemo) -> QScalar {
    let mut s = QScalar::zero();
    for (u, cu) in x.terms() {
        let wu = u.weight(datum);
        for (v, cv) in y.terms() {
            if v.weight(datum) != wu {
                continue;
            }
            let f = form_words(datum, u, v, memo);
            if !f.is_zero() {
                s += &(&(cu * cv) * &f);
            }
        }
    }
    s
}

/// Gram matrix, rank, pivots, radical and dual data for one ExDegree.
#[derive(Clone, Debug)]
pub struct GramBlock {
    pub degree: ExDegree,
    pub basis_words: Vec<Word>,
    /// Common denominator of all Gram entries.
    pub denominator: LaurentPoly,
    /// Gram entries times `denominator`.
    pub normalized: Vec<Vec<LaurentPoly>>,
    pub rank: usize,
    /// Positions in `basis_words` of the chosen basis of the quotient.
    pub pivots: Vec<usize>,
    /// Kernel vectors over `basis_words`, one per non-pivot word.
    pub radical_basis: Vec<Vec<QScalar>>,
    /// `dual_coeffs[p][s]`: coefficient of pivot `s` in the dual of pivot `p`.
    pub dual_coeffs: QMatrix,
    /// `reduction[p][w]`: coefficient of pivot `p` in the image of word `w`.
    reduction: QMatrix,
    index: HashMap<Word, usize>,
}

impl GramBlock {
    pub fn dim(&self) -> usize {
        self.basis_words.len()
    }

    /// The Gram matrix over `Q(q)`.
    pub fn gram(&self) -> QMatrix {
        let d = QScalar::from_poly(self.denominator.clone()).recip();
        QMatrix::from_rows(
            self.normalized
                .iter()
                .map(|row| row.iter().map(|x| &QScalar::from_poly(x.clone()) * &d).collect())
                .collect(),
        )
    }

    pub fn pivot_words(&self) -> Vec<Word> {
        self.pivots.iter().map(|&k| self.basis_words[k].clone()).collect()
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Position of a word among the pivots.
    pub fn pivot_position(&self, w: &Word) -> Option<usize> {
        let k = self.position(w)?;
        self.pivots.iter().position(|&p| p == k)
    }

    pub fn radical_elements(&self) -> Vec<GradedElement> {
        self.radical_basis
            .iter()
            .map(|v| GradedElement::from_terms(self.basis_words.iter().cloned().zip(v.iter().cloned())))
            .collect()
    }

    /// Pivot coordinates of a word of this degree.
    pub fn reduce_word(&self, w: &Word) -> Vec<QScalar> {
        let k = self.position(w).expect("word of this degree");
        self.reduction.column(k)
    }

    /// The dual of pivot `p` as an element of the free algebra.
    pub fn dual_element(&self, p: usize) -> GradedElement {
        GradedElement::from_terms(
            self.pivot_words()
                .into_iter()
                .zip(self.dual_coeffs.row(p).iter().cloned()),
        )
    }

    /// Gram matrix restricted to the pivots.
    pub fn pivot_gram(&self) -> QMatrix {
        let g = self.gram();
        let r = self.rank;
        let mut m = QMatrix::zeros(r, r);
        for (a, &pa) in self.pivots.iter().enumerate() {
            for (b, &pb) in self.pivots.iter().enumerate() {
                m.set(a, b, g.get(pa, pb).clone());
            }
        }
        m
    }
}

/// Builds the Gram block of one ExDegree.
pub fn gram_block(datum: &CartanDatum, degree: &ExDegree) -> GramBlock {
    let words = degree.words();
    let n = words.len();
    let mut memo = FormMemo::new();
    let normalized: Vec<Vec<LaurentPoly>> = words
        .iter()
        .map(|u| words.iter().map(|v| normalized_form_words(datum, u, v, &mut memo)).collect())
        .collect();
    let denominator = words
        .first()
        .map(|w| norm_denominator(datum, w))
        .unwrap_or_else(LaurentPoly::one);
    let qn = QMatrix::from_rows(
        normalized.iter().map(|r| r.iter().map(|x| QScalar::from_poly(x.clone())).collect()).collect(),
    );
    let (_, pivots) = qn.rref();
    let rank = pivots.len();
    let radical_basis = qn.nullspace();

    // Solve N_PP X = [I | N_P*] in one Gauss-Jordan sweep.
    let mut aug = QMatrix::zeros(rank, rank + rank + n);
    for (a, &pa) in pivots.iter().enumerate() {
        for (b, &pb) in pivots.iter().enumerate() {
            aug.set(a, b, QScalar::from_poly(normalized[pa][pb].clone()));
        }
        aug.set(a, rank + a, QScalar::one());
        for w in 0..n {
            aug.set(a, 2 * rank + w, QScalar::from_poly(normalized[pa][w].clone()));
        }
    }
    let (solved, piv) = aug.rref();
    assert!(
        piv.len() == rank && piv.iter().enumerate().all(|(k, &p)| k == p),
        "principal pivot submatrix of a symmetric Gram block is invertible"
    );
    let d = QScalar::from_poly(denominator.clone());
    let mut dual_coeffs = QMatrix::zeros(rank, rank);
    let mut reduction = QMatrix::zeros(rank, n);
    for a in 0..rank {
        for b in 0..rank {
            dual_coeffs.set(a, b, solved.get(a, rank + b) * &d);
        }
        for w in 0..n {
            reduction.set(a, w, solved.get(a, 2 * rank + w).clone());
        }
    }
    let index = words.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
    GramBlock {
        degree: degree.clone(),
        basis_words: words,
        denominator,
        normalized,
        rank,
        pivots,
        radical_basis,
        dual_coeffs,
        reduction,
        index,
    }
}

/// Outcome of a radical membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// In the radical; per ExDegree, the coefficients over that block's radical basis.
    Member { certificate: Vec<(ExDegree, Vec<QScalar>)> },
    /// Not in the radical; pairing with this word is nonzero.
    NonMember { witness: Word },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// The positive half `F / R` with lazily computed Gram blocks.
pub struct PlusSpace {
    datum: CartanDatum,
    blocks: RwLock<HashMap<ExDegree, Arc<GramBlock>>>,
}

impl PlusSpace {
    pub fn new(datum: CartanDatum) -> Self {
        PlusSpace { datum, blocks: RwLock::new(HashMap::new()) }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn block(&self, degree: &ExDegree) -> Arc<GramBlock> {
        if let Some(b) = self.blocks.read().unwrap().get(degree) {
            return b.clone();
        }
        let b = Arc::new(gram_block(&self.datum, degree));
        self.blocks
            .write()
            .unwrap()
            .entry(degree.clone())
            .or_insert(b)
            .clone()
    }

    /// `dim U^+_beta`.
    pub fn dim(&self, beta: &RootWeight) -> usize {
        exdegrees_of_weight(&self.datum, beta)
            .iter()
            .map(|d| self.block(d).rank)
            .sum()
    }

    /// Pivot words of all ExDegrees of weight `beta`, ExDegree by ExDegree.
    pub fn pivot_words_of_weight(&self, beta: &RootWeight) -> Vec<Word> {
        exdegrees_of_weight(&self.datum, beta)
            .iter()
            .flat_map(|d| self.block(d).pivot_words())
            .collect()
    }

    /// Expansion of a word over the pivot words of its ExDegree.
    pub fn reduce_word(&self, w: &Word) -> Vec<(Word, QScalar)> {
        let block = self.block(&w.exdegree());
        if block.pivot_position(w).is_some() {
            return vec![(w.clone(), QScalar::one())];
        }
        let coords = block.reduce_word(w);
        block
            .pivot_words()
            .into_iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Normal form of an element over pivot words.
    pub fn reduce(&self, x: &GradedElement) -> GradedElement {
        let mut r = GradedElement::zero();
        for (w, c) in x.terms() {
            for (p, d) in self.reduce_word(w) {
                r.add_term(p, c * &d);
            }
        }
        r
    }

    /// True if `x` vanishes in `F / R`.
    pub fn is_zero_mod_radical(&self, x: &GradedElement) -> bool {
        self.reduce(x).is_zero()
    }

    /// Decides membership by pairing against every word of each ExDegree
    /// occurring in `x`; members also get radical-basis coordinates.
    pub fn radical_membership(&self, x: &GradedElement) -> Membership {
        let mut memo = FormMemo::new();
        let mut certificate = Vec::new();
        for deg in x.exdegrees() {
            let part = x.component(&deg);
            for w in deg.words() {
                let v = form_with_memo(&self.datum, &part, &GradedElement::from_word(w.clone()), &mut memo);
                if !v.is_zero() {
                    return Membership::NonMember { witness: w };
                }
            }
            let block = self.block(&deg);
            let free: Vec<usize> = (0..block.dim()).filter(|k| !block.pivots.contains(k)).collect();
            let coeffs: Vec<QScalar> = free.iter().map(|&k| part.coeff(&block.basis_words[k])).collect();
            certificate.push((deg, coeffs));
        }
        Membership::Member { certificate }
    }
}

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

fn check_letter(datum: &CartanDatum, j: usize, k: u32) -> Result<()> {
    if j >= datum.rank() {
        return Err(Error::UnknownIndex(j));
    }
    if !datum.is_letter(j, k) {
        return Err(Error::InvalidLetter { index: j, level: k });
    }
    Ok(())
}

/// `sum_{n+n'=1-k a_ij} (-1)^{n'} (-1)^{p(i)(n' p(kj) + C(n',2))} a_i^{(n)} a_{jk} a_i^{(n')}`.
pub fn serre_element(datum: &CartanDatum, i: usize, j: usize, k: u32) -> Result<GradedElement> {
    if i >= datum.rank() {
        return Err(Error::UnknownIndex(i));
    }
    if !datum.is_real(i) {
        return Err(Error::NotReal(i));
    }
    check_letter(datum, j, k)?;
    if j == i {
        return Err(Error::Precondition("(j,k) must differ from (i,1)".into()));
    }
    let total = 1 - k as i64 * datum.a(i, j);
    let pi = datum.parity(i) as i64;
    let pkj = Letter::new(j, k).parity(datum) as i64;
    let mid = GradedElement::letter(j, k);
    let mut r = GradedElement::zero();
    for n2 in 0..=total {
        let n1 = total - n2;
        let e = n2 + pi * (n2 * pkj + n2 * (n2 - 1) / 2);
        let term = &(&divided_power(datum, i, n1)? * &mid) * &divided_power(datum, i, n2)?;
        r = &r + &term.scale(&QScalar::from_int(sign(e % 2 != 0)));
    }
    Ok(r)
}

/// The higher-order Serre element `F_{i,j,m,n,c}` with `n = sum(c)`.
pub fn higher_serre_element(datum: &CartanDatum, i: usize, j: usize, m: i64, c: &[u32]) -> Result<GradedElement> {
    if i >= datum.rank() {
        return Err(Error::UnknownIndex(i));
    }
    if j >= datum.rank() {
        return Err(Error::UnknownIndex(j));
    }
    if !datum.is_real(i) {
        return Err(Error::NotReal(i));
    }
    if !datum.is_imaginary(j) {
        return Err(Error::NotImaginary(j));
    }
    for &part in c {
        check_letter(datum, j, part)?;
    }
    let n: i64 = c.iter().map(|&x| x as i64).sum();
    let aij = datum.a(i, j);
    if m <= -aij * n {
        return Err(Error::Precondition(format!("m = {m} must exceed -a_ij n = {}", -aij * n)));
    }
    let pi = datum.parity(i) as i64;
    let pj = datum.parity(j) as i64;
    let di = datum.d(i);
    let mid = GradedElement::from_word(Word(c.iter().map(|&l| Letter::new(j, l)).collect()));
    let mut r = GradedElement::zero();
    for rr in 0..=m {
        let s = m - rr;
        // ((-1)^{p(i)} q_i)^E with E = -r (n a_ij + m - 1)
        let big_e = -rr * (n * aij + m - 1);
        let e = rr + n * rr * pi * pj + rr * (rr - 1) / 2 * pi + pi * big_e.rem_euclid(2);
        let coef = QScalar::signed_q_pow(sign(e.rem_euclid(2) != 0), di * big_e);
        let term = &(&divided_power(datum, i, rr)? * &mid) * &divided_power(datum, i, s)?;
        r = &r + &term.scale(&coef);
    }
    Ok(r)
}

/// `a_{il} a_{jk} - (-1)^{p(li)p(kj)} a_{jk} a_{il}` for orthogonal indices (`a_ij = 0`).
pub fn orthogonal_commutator(datum: &CartanDatum, a: Letter, b: Letter) -> Result<GradedElement> {
    check_letter(datum, a.index, a.level)?;
    check_letter(datum, b.index, b.level)?;
    if datum.a(a.index, b.index) != 0 {
        return Err(Error::Precondition(format!("a_{}{} is not zero", a.index, b.index)));
    }
    let ab = GradedElement::from_word(Word(vec![a, b]));
    let ba = GradedElement::from_word(Word(vec![b, a]));
    let s = sign(a.parity(datum) * b.parity(datum) == 1);
    Ok(&ab - &ba.scale(&QScalar::from_int(s)))
}

/// Which family a relation element comes from, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationKind {
    Serre { i: usize, j: usize, k: u32 },
    HigherSerre { i: usize, j: usize, m: i64, c: Vec<u32> },
    Commutator { a: Letter, b: Letter },
}

/// A labeled element expected to lie in the radical.
#[derive(Clone, Debug)]
pub struct Relation {
    pub kind: RelationKind,
    pub element: GradedElement,
}

impl Relation {
    pub fn height(&self) -> i64 {
        match &self.kind {
            RelationKind::Serre { .. } | RelationKind::HigherSerre { .. } => {
                self.element.exdegrees().first().map_or(0, |d| d.height())
            }
            RelationKind::Commutator { a, b } => (a.level + b.level) as i64,
        }
    }

    pub fn label(&self, datum: &CartanDatum) -> String {
        match &self.kind {
            RelationKind::Serre { i, j, k } => {
                format!("serre i={} j={} k={k}", datum.name(*i), datum.name(*j))
            }
            RelationKind::HigherSerre { i, j, m, c } => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("higher-serre i={} j={} m={m} c=({})", datum.name(*i), datum.name(*j), parts.join(","))
            }
            RelationKind::Commutator { a, b } => {
                format!("commutator {} {}", a.render(datum, 'a'), b.render(datum, 'a'))
            }
        }
    }
}

fn compositions(n: u32, allowed: &dyn Fn(u32) -> bool) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n).filter(|&x| allowed(x)) {
        for mut rest in compositions(n - first, allowed) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every Serre, higher Serre and orthogonal-commutator element of height at
/// most `max_height`, in a fixed order.
pub fn serre_type_relations(datum: &CartanDatum, max_height: i64) -> Result<Vec<Relation>> {
    let n = datum.rank();
    let mut out = Vec::new();
    for i in (0..n).filter(|&i| datum.is_real(i)) {
        for j in (0..n).filter(|&j| j != i) {
            let mut k = 1u32;
            while datum.is_letter(j, k) && 1 - k as i64 * datum.a(i, j) + k as i64 <= max_height {
                out.push(Relation { kind: RelationKind::Serre { i, j, k }, element: serre_element(datum, i, j, k)? });
                k += 1;
            }
            if !datum.is_imaginary(j) {
                continue;
            }
            for total in 1..max_height {
                for c in compositions(total as u32, &|l| datum.is_letter(j, l)) {
                    for m in (1 - datum.a(i, j) * total).max(1)..=max_height - total {
                        let element = higher_serre_element(datum, i, j, m, &c)?;
                        out.push(Relation { kind: RelationKind::HigherSerre { i, j, m, c: c.clone() }, element });
                    }
                }
            }
        }
    }
    let letters: Vec<Letter> = (0..n)
        .flat_map(|i| {
            (1..=max_height as u32).take_while(move |&l| datum.is_letter(i, l)).map(move |l| Letter::new(i, l))
        })
        .collect();
    for (x, &a) in letters.iter().enumerate() {
        for &b in &letters[x + 1..] {
            if datum.a(a.index, b.index) == 0 && (a.level + b.level) as i64 <= max_height {
                out.push(Relation { kind: RelationKind::Commutator { a, b }, element: orthogonal_commutator(datum, a, b)? });
            }
        }
    }
    Ok(out)
}
