//! The free superalgebra on the generators `a[i,l]`, its twisted tensor
//! squares, the coproduct, the two derivations and the involutions.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cartan::{CartanDatum, RootWeight};
use crate::error::{Error, Result};
use crate::scalar::{super_qfact, QScalar};

/// A generator `a[index, level]`. Ordered by index, then level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub level: u32,
}

impl Letter {
    pub fn new(index: usize, level: u32) -> Self {
        Letter { index, level }
    }

    pub fn parity(&self, datum: &CartanDatum) -> u8 {
        ((self.level as u64 * datum.parity(self.index) as u64) % 2) as u8
    }

    pub fn weight(&self, datum: &CartanDatum) -> RootWeight {
        RootWeight::zero(datum.rank()).plus_simple(self.index, self.level as i64)
    }

    /// `(l alpha_i, beta)`.
    pub fn pair(&self, datum: &CartanDatum, beta: &RootWeight) -> i64 {
        self.level as i64 * datum.form_simple(self.index, beta)
    }

    /// `(l alpha_i, k alpha_j)` for two letters.
    pub fn pair_letter(&self, datum: &CartanDatum, other: &Letter) -> i64 {
        self.level as i64 * other.level as i64 * datum.form_roots(self.index, other.index)
    }

    /// `1 - (-1)^{p(li)} q_i^{2l}`, the reciprocal of the generator's norm.
    pub fn norm_denominator(&self, datum: &CartanDatum) -> crate::scalar::LaurentPoly {
        let s = if self.parity(datum) == 1 { -1 } else { 1 };
        &crate::scalar::LaurentPoly::one()
            - &crate::scalar::LaurentPoly::signed_q_pow(s, 2 * self.level as i64 * datum.d(self.index))
    }

    pub fn render(&self, datum: &CartanDatum, symbol: char) -> String {
        format!("{symbol}[{},{}]", datum.name(self.index), self.level)
    }
}

/// A monomial in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn weight(&self, datum: &CartanDatum) -> RootWeight {
        let mut v = vec![0i64; datum.rank()];
        for a in &self.0 {
            v[a.index] += a.level as i64;
        }
        RootWeight(v)
    }

    /// Height of the weight, `sum of levels`.
    pub fn height(&self) -> i64 {
        self.0.iter().map(|a| a.level as i64).sum()
    }

    pub fn parity(&self, datum: &CartanDatum) -> u8 {
        self.0.iter().map(|a| a.parity(datum)).sum::<u8>() % 2
    }

    pub fn exdegree(&self) -> ExDegree {
        ExDegree::from_letters(self.0.iter().copied())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, letter: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// The word with position `k` removed.
    pub fn without(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(k);
        Word(v)
    }

    pub fn render(&self, datum: &CartanDatum, symbol: char) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|a| a.render(datum, symbol))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// An element of the free monoid on letters, as a multiset: the finer
/// grading of the free algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExDegree(Vec<(Letter, u32)>);

impl ExDegree {
    pub fn zero() -> Self {
        ExDegree(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut m: BTreeMap<Letter, u32> = BTreeMap::new();
        for a in letters {
            *m.entry(a).or_insert(0) += 1;
        }
        ExDegree(m.into_iter().collect())
    }

    pub fn from_counts<I: IntoIterator<Item = (Letter, u32)>>(counts: I) -> Self {
        let mut m: BTreeMap<Letter, u32> = BTreeMap::new();
        for (a, c) in counts {
            *m.entry(a).or_insert(0) += c;
        }
        ExDegree(m.into_iter().filter(|(_, c)| *c > 0).collect())
    }

    pub fn counts(&self) -> &[(Letter, u32)] {
        &self.0
    }

    pub fn count(&self, letter: Letter) -> u32 {
        self.0.iter().find(|(a, _)| *a == letter).map_or(0, |(_, c)| *c)
    }

    /// Parts with multiplicity, in letter order.
    pub fn parts(&self) -> Vec<Letter> {
        self.0
            .iter()
            .flat_map(|(a, c)| std::iter::repeat_n(*a, *c as usize))
            .collect()
    }

    pub fn num_parts(&self) -> usize {
        self.0.iter().map(|(_, c)| *c as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, datum: &CartanDatum) -> RootWeight {
        let mut v = vec![0i64; datum.rank()];
        for (a, c) in &self.0 {
            v[a.index] += (a.level * c) as i64;
        }
        RootWeight(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().map(|(a, c)| (a.level * c) as i64).sum()
    }

    pub fn parity(&self, datum: &CartanDatum) -> u8 {
        (self.0.iter().map(|(a, c)| a.parity(datum) as u32 * c).sum::<u32>() % 2) as u8
    }

    /// `e(nu)`: the sum over unordered pairs of parts of the product of parities.
    pub fn e_value(&self, datum: &CartanDatum) -> i64 {
        let odd: i64 = self
            .0
            .iter()
            .map(|(a, c)| a.parity(datum) as i64 * *c as i64)
            .sum();
        odd * (odd - 1) / 2
    }

    /// `c(nu)`: the sum over unordered pairs of parts of their root pairing.
    pub fn c_value(&self, datum: &CartanDatum) -> i64 {
        let w = self.weight(datum);
        let total = datum.form_root_lattice(&w, &w);
        let diag: i64 = self
            .0
            .iter()
            .map(|(a, c)| a.pair_letter(datum, a) * *c as i64)
            .sum();
        (total - diag) / 2
    }

    /// `sum over parts of (l alpha_i, l alpha_i)`.
    pub fn squared_parts(&self, datum: &CartanDatum) -> i64 {
        self.0
            .iter()
            .map(|(a, c)| a.pair_letter(datum, a) * *c as i64)
            .sum()
    }

    pub fn plus(&self, letter: Letter) -> ExDegree {
        Self::from_counts(self.0.iter().copied().chain(std::iter::once((letter, 1))))
    }

    /// `self - letter`, if the letter occurs.
    pub fn minus(&self, letter: Letter) -> Option<ExDegree> {
        if self.count(letter) == 0 {
            return None;
        }
        Some(ExDegree(
            self.0
                .iter()
                .filter_map(|&(a, c)| {
                    if a == letter {
                        (c > 1).then_some((a, c - 1))
                    } else {
                        Some((a, c))
                    }
                })
                .collect(),
        ))
    }

    /// All words with this multiset of letters, in lexicographic order.
    pub fn words(&self) -> Vec<Word> {
        let mut counts: Vec<(Letter, u32)> = self.0.clone();
        let total = self.num_parts();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(total);
        fn rec(counts: &mut [(Letter, u32)], cur: &mut Vec<Letter>, total: usize, out: &mut Vec<Word>) {
            if cur.len() == total {
                out.push(Word(cur.clone()));
                return;
            }
            for k in 0..counts.len() {
                if counts[k].1 > 0 {
                    counts[k].1 -= 1;
                    cur.push(counts[k].0);
                    rec(counts, cur, total, out);
                    cur.pop();
                    counts[k].1 += 1;
                }
            }
        }
        rec(&mut counts, &mut cur, total, &mut out);
        out
    }

    pub fn render(&self, datum: &CartanDatum) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        self.0
            .iter()
            .map(|(a, c)| {
                if *c == 1 {
                    format!("({},{})", datum.name(a.index), a.level)
                } else {
                    format!("{c}({},{})", datum.name(a.index), a.level)
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

fn partitions(n: u32, max_part: u32) -> Vec<Vec<u32>> {
    // partitions into parts <= max_part, parts listed in decreasing order
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All ExDegrees of the given root-lattice weight, in increasing order.
pub fn exdegrees_of_weight(datum: &CartanDatum, beta: &RootWeight) -> Vec<ExDegree> {
    if !beta.is_nonnegative() {
        return Vec::new();
    }
    let mut acc: Vec<Vec<(Letter, u32)>> = vec![Vec::new()];
    for i in 0..datum.rank() {
        let n = beta.0[i] as u32;
        let choices: Vec<Vec<(Letter, u32)>> = if n == 0 {
            vec![Vec::new()]
        } else {
            let cap = datum.level_bound(i).unwrap_or(n);
            partitions(n, cap)
                .into_iter()
                .map(|p| {
                    let mut m: BTreeMap<u32, u32> = BTreeMap::new();
                    for l in p {
                        *m.entry(l).or_insert(0) += 1;
                    }
                    m.into_iter().map(|(l, c)| (Letter::new(i, l), c)).collect()
                })
                .collect()
        };
        let mut next = Vec::new();
        for a in &acc {
            for c in &choices {
                let mut v = a.clone();
                v.extend_from_slice(c);
                next.push(v);
            }
        }
        acc = next;
    }
    let mut out: Vec<ExDegree> = acc.into_iter().map(ExDegree::from_counts).collect();
    out.sort();
    out
}

/// All non-negative root-lattice elements of height exactly `h`.
pub fn roots_of_height(rank: usize, h: i64) -> Vec<RootWeight> {
    fn rec(rank: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<RootWeight>) {
        if cur.len() + 1 == rank {
            cur.push(left);
            out.push(RootWeight(cur.clone()));
            cur.pop();
            return;
        }
        for c in 0..=left {
            cur.push(c);
            rec(rank, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if rank == 0 {
        return out;
    }
    rec(rank, h, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All non-negative root-lattice elements of height at most `h`, sorted.
pub fn roots_up_to_height(rank: usize, h: i64) -> Vec<RootWeight> {
    (0..=h).flat_map(|k| roots_of_height(rank, k)).collect()
}

/// All ExDegrees of height at most `h`.
pub fn exdegrees_up_to_height(datum: &CartanDatum, h: i64) -> Vec<ExDegree> {
    roots_up_to_height(datum.rank(), h)
        .iter()
        .flat_map(|b| exdegrees_of_weight(datum, b))
        .collect()
}

/// `(-1)^{p(x)p(y)}` times `q^{(|x|,|y|)}`, as a sign and an exponent.
pub(crate) fn twist(datum: &CartanDatum, x: &Word, y: &Word) -> (i64, i64) {
    let sign = if x.parity(datum) * y.parity(datum) == 1 { -1 } else { 1 };
    let e = datum.form_root_lattice(&x.weight(datum), &y.weight(datum));
    (sign, e)
}

pub(crate) fn insert_term<K: Ord>(map: &mut BTreeMap<K, QScalar>, key: K, c: QScalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

pub(crate) fn render_coef(c: &QScalar) -> String {
    let s = c.to_string();
    if c.is_laurent() && (s.contains(" + ") || s.contains(" - ")) {
        format!("({s})")
    } else {
        s
    }
}

/// Linear combination of words with coefficients in `Q(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedElement {
    terms: BTreeMap<Word, QScalar>,
}

impl GradedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, QScalar::one());
        GradedElement { terms }
    }

    pub fn letter(index: usize, level: u32) -> Self {
        Self::from_word(Word::single(Letter::new(index, level)))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, QScalar)>>(terms: I) -> Self {
        let mut m = BTreeMap::new();
        for (w, c) in terms {
            insert_term(&mut m, w, c);
        }
        GradedElement { terms: m }
    }

    pub fn add_term(&mut self, w: Word, c: QScalar) {
        insert_term(&mut self.terms, w, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> QScalar {
        self.terms.get(w).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    /// The ExDegrees occurring in the element.
    pub fn exdegrees(&self) -> Vec<ExDegree> {
        let mut v: Vec<ExDegree> = self.terms.keys().map(|w| w.exdegree()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// The component of the given ExDegree.
    pub fn component(&self, deg: &ExDegree) -> Self {
        GradedElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| &w.exdegree() == deg)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// The weight, if all terms share one.
    pub fn homogeneous_weight(&self, datum: &CartanDatum) -> Option<RootWeight> {
        let mut it = self.terms.keys().map(|w| w.weight(datum));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// The parity, if all terms share one.
    pub fn homogeneous_parity(&self, datum: &CartanDatum) -> Option<u8> {
        let mut it = self.terms.keys().map(|w| w.parity(datum));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn render(&self, datum: &CartanDatum) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "{} * {}", render_coef(c), w.render(datum, 'a'));
        }
        s
    }
}

impl Add for &GradedElement {
    type Output = GradedElement;
    fn add(self, o: &GradedElement) -> GradedElement {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            insert_term(&mut r.terms, w.clone(), c.clone());
        }
        r
    }
}

impl Sub for &GradedElement {
    type Output = GradedElement;
    fn sub(self, o: &GradedElement) -> GradedElement {
        self + &(-o)
    }
}

impl Neg for &GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        GradedElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Mul for &GradedElement {
    type Output = GradedElement;
    fn mul(self, o: &GradedElement) -> GradedElement {
        let mut r = GradedElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                r.add_term(w1.concat(w2), c1 * c2);
            }
        }
        r
    }
}

/// Concatenation product.
pub fn multiply(x: &GradedElement, y: &GradedElement) -> GradedElement {
    x * y
}

/// Element of `F ⊗ F`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), QScalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(x: &GradedElement, y: &GradedElement) -> Self {
        let mut t = Self::zero();
        for (w1, c1) in x.terms() {
            for (w2, c2) in y.terms() {
                t.add_term(w1.clone(), w2.clone(), c1 * c2);
            }
        }
        t
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: QScalar) {
        insert_term(&mut self.terms, (left, right), c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, left: &Word, right: &Word) -> QScalar {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(QScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Product in the twisted tensor square; with `bar_twist` the twist uses
    /// `(-q^{-1})` in place of `q`.
    pub fn twisted_mul(&self, other: &TensorElement, datum: &CartanDatum, bar_twist: bool) -> TensorElement {
        let mut r = TensorElement::zero();
        for ((x1, x2), c1) in &self.terms {
            for ((x3, x4), c2) in &other.terms {
                let (sign, e) = twist(datum, x2, x3);
                let c = if bar_twist {
                    let s = if e.rem_euclid(2) == 1 { -sign } else { sign };
                    (c1 * c2).mul_signed_q_pow(s, -e)
                } else {
                    (c1 * c2).mul_signed_q_pow(sign, e)
                };
                r.add_term(x1.concat(x3), x2.concat(x4), c);
            }
        }
        r
    }

    /// Applies `bar` to every coefficient.
    pub fn bar(&self) -> TensorElement {
        TensorElement {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.bar())).collect(),
        }
    }

    /// Swaps the tensor factors.
    pub fn flip(&self) -> TensorElement {
        TensorElement {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone()))
                .collect(),
        }
    }

    /// Applies a word map to both factors.
    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> TensorElement {
        let mut r = TensorElement::zero();
        for ((a, b), c) in &self.terms {
            r.add_term(f(a), f(b), c.clone());
        }
        r
    }

    /// The terms whose right factor is the given word, as an element of the left factor.
    pub fn left_coefficient_of(&self, right: &Word) -> GradedElement {
        GradedElement::from_terms(
            self.terms
                .iter()
                .filter(|((_, b), _)| b == right)
                .map(|((a, _), c)| (a.clone(), c.clone())),
        )
    }

    /// The terms whose left factor is the given word, as an element of the right factor.
    pub fn right_coefficient_of(&self, left: &Word) -> GradedElement {
        GradedElement::from_terms(
            self.terms
                .iter()
                .filter(|((a, _), _)| a == left)
                .map(|((_, b), c)| (b.clone(), c.clone())),
        )
    }

    pub fn render(&self, datum: &CartanDatum) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|((a, b), c)| {
                format!("{} * {} ⊗ {}", render_coef(c), a.render(datum, 'a'), b.render(datum, 'a'))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, o: &TensorElement) -> TensorElement {
        let mut r = self.clone();
        for ((a, b), c) in &o.terms {
            r.add_term(a.clone(), b.clone(), c.clone());
        }
        r
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, o: &TensorElement) -> TensorElement {
        let mut r = self.clone();
        for ((a, b), c) in &o.terms {
            r.add_term(a.clone(), b.clone(), -c);
        }
        r
    }
}

/// Element of `F ⊗ F ⊗ F`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TripleTensor {
    terms: BTreeMap<(Word, Word, Word), QScalar>,
}

impl TripleTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: Word, x: QScalar) {
        insert_term(&mut self.terms, (a, b, c), x);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Product using the three-fold twisted multiplication rule.
    pub fn mul(&self, other: &TripleTensor, datum: &CartanDatum) -> TripleTensor {
        let mut r = TripleTensor::zero();
        for ((x1, x2, x3), c1) in &self.terms {
            for ((y1, y2, y3), c2) in &other.terms {
                let (s1, e1) = twist(datum, x2, y1);
                let (s2, e2) = twist(datum, x3, y2);
                let (s3, e3) = twist(datum, x3, y1);
                let c = (c1 * c2).mul_signed_q_pow(s1 * s2 * s3, e1 + e2 + e3);
                r.add_term(x1.concat(y1), x2.concat(y2), x3.concat(y3), c);
            }
        }
        r
    }

    /// `(ϱ ⊗ 1)` applied to a tensor.
    pub fn coproduct_left(t: &TensorElement, datum: &CartanDatum) -> TripleTensor {
        let mut r = TripleTensor::zero();
        for ((a, b), c) in t.terms() {
            for ((a1, a2), c2) in coproduct_word(datum, a).terms() {
                r.add_term(a1.clone(), a2.clone(), b.clone(), c * c2);
            }
        }
        r
    }

    /// `(1 ⊗ ϱ)` applied to a tensor.
    pub fn coproduct_right(t: &TensorElement, datum: &CartanDatum) -> TripleTensor {
        let mut r = TripleTensor::zero();
        for ((a, b), c) in t.terms() {
            for ((b1, b2), c2) in coproduct_word(datum, b).terms() {
                r.add_term(a.clone(), b1.clone(), b2.clone(), c * c2);
            }
        }
        r
    }
}

/// Coproduct of a single word, built letter by letter.
pub fn coproduct_word(datum: &CartanDatum, w: &Word) -> TensorElement {
    let mut acc: Vec<((Word, Word), QScalar)> = vec![((Word::empty(), Word::empty()), QScalar::one())];
    for &a in w.letters() {
        let pa = a.parity(datum);
        let mut next = Vec::with_capacity(acc.len() * 2);
        for ((l, r), c) in acc {
            // (l ⊗ r)(a ⊗ 1) picks up the twist between r and a
            let sign = if pa * r.parity(datum) == 1 { -1 } else { 1 };
            let e = a.pair(datum, &r.weight(datum));
            next.push(((l.push(a), r.clone()), c.mul_signed_q_pow(sign, e)));
            next.push(((l, r.push(a)), c));
        }
        acc = next;
    }
    let mut t = TensorElement::zero();
    for ((l, r), c) in acc {
        t.add_term(l, r, c);
    }
    t
}

/// The coproduct `ϱ`.
pub fn coproduct(datum: &CartanDatum, x: &GradedElement) -> TensorElement {
    let mut t = TensorElement::zero();
    for (w, c) in x.terms() {
        for ((l, r), c2) in coproduct_word(datum, w).terms() {
            t.add_term(l.clone(), r.clone(), c * c2);
        }
    }
    t
}

/// The derivation `ϱ_{i,l}`, removing one occurrence of the letter and
/// twisting by the part of the word to its right.
pub fn derive_right(datum: &CartanDatum, x: &GradedElement, letter: Letter) -> GradedElement {
    let mut r = GradedElement::zero();
    for (w, c) in x.terms() {
        for (v, s, e) in derive_right_word(datum, w, letter) {
            r.add_term(v, c.mul_signed_q_pow(s, e));
        }
    }
    r
}

/// Terms of `ϱ_{i,l}(w)` for a word: `(word, sign, q-exponent)`.
pub fn derive_right_word(datum: &CartanDatum, w: &Word, letter: Letter) -> Vec<(Word, i64, i64)> {
    let pa = letter.parity(datum);
    let mut out = Vec::new();
    let mut after_weight = RootWeight::zero(datum.rank());
    let mut after_parity = 0u8;
    for k in (0..w.len()).rev() {
        let b = w.0[k];
        if b == letter {
            let sign = if pa * after_parity == 1 { -1 } else { 1 };
            out.push((w.without(k), sign, letter.pair(datum, &after_weight)));
        }
        after_weight = after_weight.plus_simple(b.index, b.level as i64);
        after_parity = (after_parity + b.parity(datum)) % 2;
    }
    out
}

/// Terms of `ϱ^{i,l}(w)` for a word: `(word, sign, q-exponent)`.
pub fn derive_left_word(datum: &CartanDatum, w: &Word, letter: Letter) -> Vec<(Word, i64, i64)> {
    let pa = letter.parity(datum);
    let mut out = Vec::new();
    let mut before_weight = RootWeight::zero(datum.rank());
    let mut before_parity = 0u8;
    for k in 0..w.len() {
        let b = w.0[k];
        if b == letter {
            let sign = if pa * before_parity == 1 { -1 } else { 1 };
            out.push((w.without(k), sign, letter.pair(datum, &before_weight)));
        }
        before_weight = before_weight.plus_simple(b.index, b.level as i64);
        before_parity = (before_parity + b.parity(datum)) % 2;
    }
    out
}

/// The derivation `ϱ^{i,l}`, twisting by the part of the word to the left.
pub fn derive_left(datum: &CartanDatum, x: &GradedElement, letter: Letter) -> GradedElement {
    let mut r = GradedElement::zero();
    for (w, c) in x.terms() {
        for (v, s, e) in derive_left_word(datum, w, letter) {
            r.add_term(v, c.mul_signed_q_pow(s, e));
        }
    }
    r
}

/// Word reversal.
pub fn sigma(x: &GradedElement) -> GradedElement {
    GradedElement::from_terms(x.terms().map(|(w, c)| (w.reversed(), c.clone())))
}

/// Bar involution: generators fixed, coefficients barred.
pub fn bar(x: &GradedElement) -> GradedElement {
    GradedElement::from_terms(x.terms().map(|(w, c)| (w.clone(), c.bar())))
}

/// `ϱ̄(x) = bar(ϱ(bar x))`, straight from the definition.
pub fn bar_coproduct_by_definition(datum: &CartanDatum, x: &GradedElement) -> TensorElement {
    coproduct(datum, &bar(x)).bar()
}

/// `ϱ̄` by the flip formula
/// `ϱ̄(x) = sum (-q)^{-(|x1|,|x2|)} (-1)^{p(x1)p(x2)} x2 ⊗ x1`.
pub fn bar_coproduct(datum: &CartanDatum, x: &GradedElement) -> Result<TensorElement> {
    if !datum.is_bar_consistent() {
        return Err(Error::NotBarConsistent);
    }
    let mut t = TensorElement::zero();
    for ((x1, x2), c) in coproduct(datum, x).terms() {
        let (sign, e) = twist(datum, x1, x2);
        // (-q)^{-e} = (-1)^e q^{-e}
        let s = if e.rem_euclid(2) == 1 { -sign } else { sign };
        t.add_term(x2.clone(), x1.clone(), c.mul_signed_q_pow(s, -e));
    }
    Ok(t)
}

/// `a_i^{(n)} = a_i^n / [n]_i^!` for a real index.
pub fn divided_power(datum: &CartanDatum, i: usize, n: i64) -> Result<GradedElement> {
    if i >= datum.rank() {
        return Err(Error::UnknownIndex(i));
    }
    if !datum.is_real(i) {
        return Err(Error::NotReal(i));
    }
    if n < 0 {
        return Ok(GradedElement::zero());
    }
    let w = Word(vec![Letter::new(i, 1); n as usize]);
    let c = super_qfact(n as u32, datum.d(i), datum.parity(i)).recip();
    Ok(GradedElement::from_terms([(w, c)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::super_qint;

    fn a2() -> CartanDatum {
        CartanDatum::new(vec![vec![2, -1], vec![-1, 2]], vec![0, 0], vec![1, 1]).unwrap()
    }

    fn w(letters: &[(usize, u32)]) -> Word {
        Word(letters.iter().map(|&(i, l)| Letter::new(i, l)).collect())
    }

    #[test]
    fn exdegree_bookkeeping() {
        let d = CartanDatum::new(vec![vec![2, -2], vec![-1, 0]], vec![1, 0], vec![1, 2]).unwrap();
        let degs = exdegrees_of_weight(&d, &RootWeight(vec![1, 3]));
        // partitions of 3 for the isotropic index
        assert_eq!(degs.len(), 3);
        let nu = w(&[(0, 1), (1, 2), (1, 1)]).exdegree();
        assert_eq!(nu.num_parts(), 3);
        assert_eq!(nu.height(), 4);
        assert_eq!(nu.e_value(&d), 0);
        let odd = w(&[(0, 1), (0, 1), (0, 1)]).exdegree();
        assert_eq!(odd.e_value(&d), 3);
        assert_eq!(odd.words().len(), 1);
        assert_eq!(nu.words().len(), 6);
        // c(nu): pairs (a0,a12)=2*-2, (a0,a11)=-2, (a12,a11)=0
        assert_eq!(nu.c_value(&d), -6);
    }

    #[test]
    fn coproduct_of_two_letters() {
        let d = a2();
        let x = GradedElement::from_word(w(&[(0, 1), (1, 1)]));
        let t = coproduct(&d, &x);
        assert_eq!(t.len(), 4);
        assert!(t.coeff(&w(&[(0, 1), (1, 1)]), &Word::empty()).is_one());
        assert!(t.coeff(&w(&[(0, 1)]), &w(&[(1, 1)])).is_one());
        assert_eq!(t.coeff(&w(&[(1, 1)]), &w(&[(0, 1)])), QScalar::q_pow(-1));
        assert!(t.coeff(&Word::empty(), &w(&[(0, 1), (1, 1)])).is_one());
        assert_eq!(coproduct(&d, &GradedElement::one()).len(), 1);
    }

    #[test]
    fn derivation_examples() {
        let d = CartanDatum::new(vec![vec![2]], vec![1], vec![1]).unwrap();
        let a = Letter::new(0, 1);
        let aa = GradedElement::from_word(w(&[(0, 1), (0, 1)]));
        // ϱ^{i,1}(a a) = a + (-1)^{p} q^{(α,α)} a
        let expected = GradedElement::letter(0, 1).scale(&(&QScalar::one() - &QScalar::q_pow(2)));
        assert_eq!(derive_left(&d, &aa, a), expected);
        assert!(derive_right(&d, &GradedElement::letter(0, 1), a).coeff(&Word::empty()).is_one());
        assert!(derive_right(&d, &GradedElement::one(), a).is_zero());
        let d2 = a2();
        let x = GradedElement::from_word(w(&[(0, 1), (1, 1)]));
        assert_eq!(derive_right(&d2, &x, Letter::new(1, 1)), GradedElement::letter(0, 1));
    }

    #[test]
    fn divided_power_examples() {
        let d = a2();
        assert_eq!(divided_power(&d, 0, 0).unwrap(), GradedElement::one());
        assert_eq!(divided_power(&d, 0, 1).unwrap(), GradedElement::letter(0, 1));
        assert!(divided_power(&d, 0, -1).unwrap().is_zero());
        let iso = CartanDatum::new(vec![vec![0]], vec![0], vec![2]).unwrap();
        assert_eq!(divided_power(&iso, 0, 2), Err(Error::NotReal(0)));
        let two = divided_power(&d, 0, 2).unwrap();
        assert_eq!(two.coeff(&w(&[(0, 1), (0, 1)])), super_qint(2, 1, 0).recip());
    }

    #[test]
    fn rendering() {
        let d = a2();
        let x = &GradedElement::letter(0, 1).scale(&QScalar::from_poly(
            crate::scalar::LaurentPoly::from_int_terms([(1, 1), (-1, 1)]),
        )) + &GradedElement::from_word(w(&[(1, 1), (0, 1)]));
        assert_eq!(x.render(&d), "(q^-1 + q) * a[1,1] + 1 * a[2,1] a[1,1]");
    }
}
