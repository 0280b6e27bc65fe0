//! Verma modules and irreducible highest weight modules, truncated at a
//! fixed depth below the highest weight.
//!
//! The weight space `λ - β` of the Verma module has the pivot words of
//! weight `β` as basis (read as `b`-words applied to `v_λ`). Lowering by
//! `b_{il}` is left multiplication followed by reduction; raising by
//! `a_{il}` uses the commutator with `U^-`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::cartan::{CartanDatum, RootWeight, Weight};
use crate::error::{Error, Result};
use crate::freesuper::{derive_left_word, derive_right_word, roots_up_to_height, Letter, Word};
use crate::linalg::QMatrix;
use crate::pairing::PlusSpace;
use crate::scalar::QScalar;
use crate::ualgebra::UElement;

/// Coordinates of a vector in one weight space.
pub type Coords = Vec<QScalar>;

/// A vector spread over several weight spaces.
pub type ModuleVector = BTreeMap<RootWeight, Coords>;

/// Common interface of truncated highest weight modules.
pub trait HighestWeightSlice {
    fn datum(&self) -> &CartanDatum;
    fn highest_weight(&self) -> &Weight;
    fn depth(&self) -> i64;
    /// Offsets `β` with `ht β <= depth`, sorted by height then lexicographically.
    fn offsets(&self) -> &[RootWeight];
    fn dim(&self, beta: &RootWeight) -> usize;
    /// Matrix of `a_{il}` from weight `λ-β` to `λ-β+lα_i`; `None` when the
    /// target is not a weight of the slice.
    fn raising(&self, a: Letter, beta: &RootWeight) -> Option<&QMatrix>;
    /// Matrix of `b_{il}` from weight `λ-β` to `λ-β-lα_i`; `None` beyond the depth.
    fn lowering(&self, a: Letter, beta: &RootWeight) -> Option<&QMatrix>;
    /// Letters acting on the slice.
    fn letters(&self) -> &[Letter];
    /// Words `w` whose vectors `b_w v_λ` form the basis at `λ - β`.
    fn basis_words(&self, beta: &RootWeight) -> Vec<Word>;

    /// `<h_i, λ - β>`.
    fn coroot_at(&self, i: usize, beta: &RootWeight) -> i64 {
        self.datum().coroot(&self.highest_weight().minus_root(beta), i)
    }

    /// Scalar by which `K^k` acts on the weight space `λ - β`.
    fn k_scalar(&self, k: &[i64], beta: &RootWeight) -> QScalar {
        let d = self.datum();
        let e: i64 = k
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| x * d.d(i) * self.coroot_at(i, beta))
            .sum();
        QScalar::q_pow(e)
    }

    fn contains(&self, beta: &RootWeight) -> bool {
        beta.is_nonnegative() && beta.height() <= self.depth()
    }

    /// Applies an element of the algebra to a vector of weight `λ - β`.
    /// Returns `None` if some term leaves the slice through the bottom.
    fn act(&self, u: &UElement, beta: &RootWeight, v: &[QScalar]) -> Option<ModuleVector> {
        let mut out = ModuleVector::new();
        for (m, c) in u.terms() {
            let mut cur = beta.clone();
            let mut vec: Coords = v.to_vec();
            let mut dead = false;
            for &a in m.plus.letters().iter().rev() {
                let target = cur.plus_simple(a.index, -(a.level as i64));
                match self.raising(a, &cur) {
                    Some(mat) => {
                        vec = mat.apply(&vec);
                        cur = target;
                    }
                    None => {
                        dead = true;
                        break;
                    }
                }
            }
            if dead {
                continue;
            }
            let s = &self.k_scalar(&m.k, &cur) * c;
            vec.iter_mut().for_each(|x| *x = &*x * &s);
            for &a in m.minus.letters().iter().rev() {
                let mat = self.lowering(a, &cur)?;
                vec = mat.apply(&vec);
                cur = cur.plus_simple(a.index, a.level as i64);
            }
            let slot = out.entry(cur).or_insert_with(|| vec![QScalar::zero(); vec.len()]);
            for (x, y) in slot.iter_mut().zip(&vec) {
                *x += y;
            }
        }
        out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        Some(out)
    }

    /// The vector as coordinates at `beta`, zero if absent.
    fn component(&self, v: &ModuleVector, beta: &RootWeight) -> Coords {
        v.get(beta).cloned().unwrap_or_else(|| vec![QScalar::zero(); self.dim(beta)])
    }

    /// Matrix of `u` from `λ - β` to `λ - γ`; `None` if `u` leaves the slice.
    fn action_matrix(&self, u: &UElement, beta: &RootWeight, gamma: &RootWeight) -> Option<QMatrix> {
        let n = self.dim(beta);
        let mut cols = Vec::with_capacity(n);
        for k in 0..n {
            let mut e = vec![QScalar::zero(); n];
            e[k] = QScalar::one();
            let r = self.act(u, beta, &e)?;
            cols.push(self.component(&r, gamma));
        }
        Some(QMatrix::from_columns(self.dim(gamma), &cols))
    }

    /// `(β, dim)` for every offset with a nonzero weight space.
    fn dimensions(&self) -> Vec<(RootWeight, usize)> {
        self.offsets().iter().map(|b| (b.clone(), self.dim(b))).collect()
    }
}

fn letters_for(datum: &CartanDatum, depth: i64) -> Vec<Letter> {
    let mut out = Vec::new();
    for i in 0..datum.rank() {
        let mut l = 1u32;
        while (l as i64) <= depth && datum.is_letter(i, l) {
            out.push(Letter::new(i, l));
            l += 1;
        }
    }
    out
}

/// `M(λ)` truncated at `ht β <= depth`.
pub struct VermaSlice {
    space: Arc<PlusSpace>,
    lambda: Weight,
    depth: i64,
    offsets: Vec<RootWeight>,
    bases: BTreeMap<RootWeight, Vec<Word>>,
    letters: Vec<Letter>,
    raising: HashMap<(Letter, RootWeight), QMatrix>,
    lowering: HashMap<(Letter, RootWeight), QMatrix>,
}

fn sign_of(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

impl VermaSlice {
    pub fn build(space: Arc<PlusSpace>, lambda: Weight, depth: i64) -> Result<Self> {
        let datum = space.datum().clone();
        if lambda.anchor.len() != datum.rank() {
            return Err(Error::Dimension(format!(
                "weight has {} coroot values, datum has rank {}",
                lambda.anchor.len(),
                datum.rank()
            )));
        }
        if depth < 0 {
            return Err(Error::Precondition("depth must be non-negative".into()));
        }
        let offsets = roots_up_to_height(datum.rank(), depth);
        let mut bases = BTreeMap::new();
        let mut index: HashMap<RootWeight, HashMap<Word, usize>> = HashMap::new();
        for b in &offsets {
            let words = space.pivot_words_of_weight(b);
            index.insert(b.clone(), words.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect());
            bases.insert(b.clone(), words);
        }
        let letters = letters_for(&datum, depth);
        let mut slice = VermaSlice {
            space,
            lambda,
            depth,
            offsets,
            bases,
            letters,
            raising: HashMap::new(),
            lowering: HashMap::new(),
        };
        slice.fill_maps(&index);
        Ok(slice)
    }

    fn coords(&self, index: &HashMap<Word, usize>, n: usize, terms: &[(Word, QScalar)]) -> Coords {
        let mut v = vec![QScalar::zero(); n];
        for (w, c) in terms {
            for (p, d) in self.space.reduce_word(w) {
                let k = index[&p];
                v[k] += &(c * &d);
            }
        }
        v
    }

    fn fill_maps(&mut self, index: &HashMap<RootWeight, HashMap<Word, usize>>) {
        let datum = self.space.datum().clone();
        for beta in self.offsets.clone() {
            let src = &self.bases[&beta];
            for &a in &self.letters.clone() {
                let la = a.level as i64;
                // lowering
                let up = beta.plus_simple(a.index, la);
                if up.height() <= self.depth {
                    let n = self.bases[&up].len();
                    let cols: Vec<Coords> = src
                        .iter()
                        .map(|w| {
                            let mut v = vec![a];
                            v.extend_from_slice(w.letters());
                            self.coords(&index[&up], n, &[(Word(v), QScalar::one())])
                        })
                        .collect();
                    self.lowering.insert((a, beta.clone()), QMatrix::from_columns(n, &cols));
                }
                // raising
                let down = beta.plus_simple(a.index, -la);
                if down.is_nonnegative() {
                    let n = self.bases[&down].len();
                    let denom = QScalar::from_poly(a.norm_denominator(&datum)).recip();
                    let pa = a.parity(&datum);
                    let k_top = QScalar::q_pow(la * datum.d(a.index) * self.coroot_at(a.index, &down));
                    let k_bottom = QScalar::q_pow(-la * datum.d(a.index) * datum.coroot(&self.lambda, a.index));
                    let cols: Vec<Coords> = src
                        .iter()
                        .map(|w| {
                            let pw = w.parity(&datum);
                            let s = sign_of(pa * (pw + 1) % 2 == 1);
                            let mut terms = Vec::new();
                            for (x, sg, e) in derive_left_word(&datum, w, a) {
                                terms.push((x, (&k_top * &denom).mul_signed_q_pow(sg, e)));
                            }
                            for (x, sg, e) in derive_right_word(&datum, w, a) {
                                terms.push((x, (&k_bottom * &denom).mul_signed_q_pow(-s * sg, e)));
                            }
                            self.coords(&index[&down], n, &terms)
                        })
                        .collect();
                    self.raising.insert((a, beta.clone()), QMatrix::from_columns(n, &cols));
                }
            }
        }
    }

    pub fn space(&self) -> &Arc<PlusSpace> {
        &self.space
    }

    /// Pivot words spanning `M(λ)_{λ-β}`.
    pub fn basis(&self, beta: &RootWeight) -> &[Word] {
        self.bases.get(beta).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Basis of `{v in M(λ)_{λ-β} : a_{il} v = 0 for all (i,l)}`.
    pub fn singular_vectors(&self, beta: &RootWeight) -> Vec<Coords> {
        let mut blocks = Vec::new();
        for &a in &self.letters {
            if let Some(m) = self.raising(a, beta) {
                blocks.push(m.clone());
            }
        }
        let n = self.dim(beta);
        if blocks.is_empty() {
            return QMatrix::identity(n).nullspace_rows();
        }
        QMatrix::vstack(&blocks, n).nullspace()
    }

    /// The maximal submodule: a vector of weight `λ - β` lies in it iff every
    /// composite of raising operators of total weight `β` kills it.
    pub fn maximal_submodule_by_raising(&self) -> BTreeMap<RootWeight, Vec<Coords>> {
        // paths[β] = matrices (from β to 0) of all raising composites
        let mut to_top: BTreeMap<RootWeight, Vec<QMatrix>> = BTreeMap::new();
        let zero = RootWeight::zero(self.datum().rank());
        to_top.insert(zero.clone(), vec![QMatrix::identity(1)]);
        let mut out = BTreeMap::new();
        for beta in &self.offsets {
            if beta.is_zero() {
                out.insert(beta.clone(), Vec::new());
                continue;
            }
            let mut mats = Vec::new();
            for &a in &self.letters {
                let Some(r) = self.raising(a, beta) else { continue };
                let down = beta.plus_simple(a.index, -(a.level as i64));
                for m in &to_top[&down] {
                    mats.push(m.mul(r));
                }
            }
            let n = self.dim(beta);
            let stacked = QMatrix::vstack(&mats, n);
            // keep the composite row space small
            let (r, piv) = stacked.rref();
            let reduced = QMatrix::from_rows((0..piv.len()).map(|k| r.row(k).to_vec()).collect());
            let kernel = if piv.is_empty() { QMatrix::identity(n).nullspace_rows() } else { reduced.nullspace() };
            out.insert(beta.clone(), kernel);
            let rows: Vec<QMatrix> = if piv.is_empty() { Vec::new() } else { vec![reduced] };
            to_top.insert(beta.clone(), rows);
        }
        out
    }
}

impl HighestWeightSlice for VermaSlice {
    fn datum(&self) -> &CartanDatum {
        self.space.datum()
    }
    fn highest_weight(&self) -> &Weight {
        &self.lambda
    }
    fn depth(&self) -> i64 {
        self.depth
    }
    fn offsets(&self) -> &[RootWeight] {
        &self.offsets
    }
    fn dim(&self, beta: &RootWeight) -> usize {
        self.bases.get(beta).map_or(0, |b| b.len())
    }
    fn raising(&self, a: Letter, beta: &RootWeight) -> Option<&QMatrix> {
        self.raising.get(&(a, beta.clone()))
    }
    fn lowering(&self, a: Letter, beta: &RootWeight) -> Option<&QMatrix> {
        self.lowering.get(&(a, beta.clone()))
    }
    fn letters(&self) -> &[Letter] {
        &self.letters
    }
    fn basis_words(&self, beta: &RootWeight) -> Vec<Word> {
        self.basis(beta).to_vec()
    }
}

trait KernelRows {
    fn nullspace_rows(&self) -> Vec<Coords>;
}

impl KernelRows for QMatrix {
    /// Rows of the identity, i.e. a basis of the whole space.
    fn nullspace_rows(&self) -> Vec<Coords> {
        (0..self.rows()).map(|k| self.row(k).to_vec()).collect()
    }
}

/// A subspace kept in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Coords>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by(ambient: usize, vectors: &[Coords]) -> Self {
        let mut s = Self::zero(ambient);
        s.extend(vectors);
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Coords] {
        &self.rows
    }

    /// Adds vectors; returns true if the subspace grew.
    pub fn extend(&mut self, vectors: &[Coords]) -> bool {
        if vectors.is_empty() {
            return false;
        }
        let before = self.dim();
        let mut all = self.rows.clone();
        all.extend(vectors.iter().cloned());
        let (r, piv) = QMatrix::from_rows(all).rref();
        self.rows = (0..piv.len()).map(|k| r.row(k).to_vec()).collect();
        self.pivots = piv;
        self.dim() > before
    }

    /// Columns outside the pivots: the standard basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Reduces `v` modulo the subspace.
    pub fn reduce(&self, v: &[QScalar]) -> Coords {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[QScalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the quotient by the subspace.
    pub fn project(&self, v: &[QScalar]) -> Coords {
        let r = self.reduce(v);
        self.free_columns().into_iter().map(|c| r[c].clone()).collect()
    }

    /// The matrix of the projection.
    pub fn projection(&self) -> QMatrix {
        let n = self.ambient;
        let cols: Vec<Coords> = (0..n)
            .map(|k| {
                let mut e = vec![QScalar::zero(); n];
                e[k] = QScalar::one();
                self.project(&e)
            })
            .collect();
        QMatrix::from_columns(n - self.dim(), &cols)
    }

    /// The matrix lifting quotient coordinates to the free columns.
    pub fn lift(&self) -> QMatrix {
        let free = self.free_columns();
        let cols: Vec<Coords> = free
            .iter()
            .map(|&c| {
                let mut e = vec![QScalar::zero(); self.ambient];
                e[c] = QScalar::one();
                e
            })
            .collect();
        QMatrix::from_columns(self.ambient, &cols)
    }
}

/// Order in which weight spaces of equal height are visited by the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepOrder {
    Forward,
    Reverse,
}

/// `V(λ) = M(λ)/J(λ)` truncated at the slice depth.
pub struct QuotientSlice {
    verma: Arc<VermaSlice>,
    submodule: BTreeMap<RootWeight, Subspace>,
    raising: HashMap<(Letter, RootWeight), QMatrix>,
    lowering: HashMap<(Letter, RootWeight), QMatrix>,
}

/// Collects the maximal submodule top-down: at each weight, vectors whose
/// raising images all lie in the part already found, closed under lowering.
pub fn maximal_submodule_sweep(verma: &VermaSlice, order: SweepOrder) -> BTreeMap<RootWeight, Subspace> {
    let mut sub: BTreeMap<RootWeight, Subspace> = verma
        .offsets()
        .iter()
        .map(|b| (b.clone(), Subspace::zero(verma.dim(b))))
        .collect();
    let depth = verma.depth();
    loop {
        let mut changed = false;
        for h in 1..=depth {
            let mut layer: Vec<RootWeight> = verma.offsets().iter().filter(|b| b.height() == h).cloned().collect();
            if order == SweepOrder::Reverse {
                layer.reverse();
            }
            for beta in layer {
                let n = verma.dim(&beta);
                if n == 0 {
                    continue;
                }
                // lowering closure
                let mut new = Vec::new();
                for &a in verma.letters() {
                    let src = beta.plus_simple(a.index, -(a.level as i64));
                    if !src.is_nonnegative() {
                        continue;
                    }
                    if let Some(m) = verma.lowering(a, &src) {
                        for v in sub[&src].basis() {
                            new.push(m.apply(v));
                        }
                    }
                }
                // singular vectors relative to the current submodule
                let mut blocks = Vec::new();
                for &a in verma.letters() {
                    if let Some(m) = verma.raising(a, &beta) {
                        let down = beta.plus_simple(a.index, -(a.level as i64));
                        blocks.push(sub[&down].projection().mul(m));
                    }
                }
                if !blocks.is_empty() {
                    new.extend(QMatrix::vstack(&blocks, n).nullspace());
                }
                if sub.get_mut(&beta).unwrap().extend(&new) {
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    sub
}

impl QuotientSlice {
    pub fn build(verma: Arc<VermaSlice>, order: SweepOrder) -> Self {
        let submodule = maximal_submodule_sweep(&verma, order);
        let mut raising = HashMap::new();
        let mut lowering = HashMap::new();
        for beta in verma.offsets() {
            let lift = submodule[beta].lift();
            for &a in verma.letters() {
                let la = a.level as i64;
                if let Some(m) = verma.raising(a, beta) {
                    let down = beta.plus_simple(a.index, -la);
                    raising.insert((a, beta.clone()), submodule[&down].projection().mul(&m.mul(&lift)));
                }
                if let Some(m) = verma.lowering(a, beta) {
                    let up = beta.plus_simple(a.index, la);
                    lowering.insert((a, beta.clone()), submodule[&up].projection().mul(&m.mul(&lift)));
                }
            }
        }
        QuotientSlice { verma, submodule, raising, lowering }
    }

    pub fn verma(&self) -> &Arc<VermaSlice> {
        &self.verma
    }

    pub fn submodule(&self, beta: &RootWeight) -> Option<&Subspace> {
        self.submodule.get(beta)
    }

    /// Basis of vectors at `λ - β` killed by every raising operator.
    pub fn singular_vectors(&self, beta: &RootWeight) -> Vec<Coords> {
        let n = self.dim(beta);
        let blocks: Vec<QMatrix> = self
            .letters()
            .iter()
            .filter_map(|&a| self.raising(a, beta).cloned())
            .collect();
        if blocks.is_empty() {
            return QMatrix::identity(n).nullspace_rows();
        }
        QMatrix::vstack(&blocks, n).nullspace()
    }
}

impl HighestWeightSlice for QuotientSlice {
    fn datum(&self) -> &CartanDatum {
        self.verma.datum()
    }
    fn highest_weight(&self) -> &Weight {
        self.verma.highest_weight()
    }
    fn depth(&self) -> i64 {
        self.verma.depth()
    }
    fn offsets(&self) -> &[RootWeight] {
        self.verma.offsets()
    }
    fn dim(&self, beta: &RootWeight) -> usize {
        self.submodule.get(beta).map_or(0, |s| s.ambient() - s.dim())
    }
    fn raising(&self, a: Letter, beta: &RootWeight) -> Option<&QMatrix> {
        self.raising.get(&(a, beta.clone()))
    }
    fn lowering(&self, a: Letter, beta: &RootWeight) -> Option<&QMatrix> {
        self.lowering.get(&(a, beta.clone()))
    }
    fn letters(&self) -> &[Letter] {
        self.verma.letters()
    }
    fn basis_words(&self, beta: &RootWeight) -> Vec<Word> {
        let words = self.verma.basis(beta);
        self.submodule[beta].free_columns().into_iter().map(|c| words[c].clone()).collect()
    }
}

pub fn build_verma(space: Arc<PlusSpace>, lambda: Weight, depth: i64) -> Result<VermaSlice> {
    VermaSlice::build(space, lambda, depth)
}

pub fn irreducible_quotient(verma: Arc<VermaSlice>) -> QuotientSlice {
    QuotientSlice::build(verma, SweepOrder::Forward)
}

/// `β ↦ dim` over all offsets of the slice.
pub fn brute_character<M: HighestWeightSlice + ?Sized>(m: &M) -> BTreeMap<RootWeight, i64> {
    m.offsets().iter().map(|b| (b.clone(), m.dim(b) as i64)).collect()
}

/// Findings of the integrability and highest-weight checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

fn is_zero_matrix(m: &QMatrix) -> bool {
    m.is_zero()
}

/// Applies a power of `b_i` and reports whether the result vanishes; `None`
/// if the power leaves the slice.
fn lowering_power_kills<M: HighestWeightSlice + ?Sized>(
    m: &M,
    a: Letter,
    beta: &RootWeight,
    v: &[QScalar],
    power: i64,
) -> Option<bool> {
    let mut cur = beta.clone();
    let mut vec = v.to_vec();
    for _ in 0..power {
        if vec.iter().all(|x| x.is_zero()) {
            return Some(true);
        }
        vec = m.lowering(a, &cur)?.apply(&vec);
        cur = cur.plus_simple(a.index, a.level as i64);
    }
    Some(vec.iter().all(|x| x.is_zero()))
}

/// The integrability conditions on a truncated module:
/// real `b_i` nilpotent on `i`-primitive vectors with the expected exponent,
/// non-negative imaginary coroot values on nonzero weight spaces, `b_{il}`
/// vanishing where the imaginary coroot value is zero, and `a_{il}` vanishing
/// where it is at most `-l a_ii`.
pub fn check_oint<M: HighestWeightSlice + ?Sized>(m: &M) -> CheckReport {
    let datum = m.datum().clone();
    let mut report = CheckReport::default();
    for beta in m.offsets() {
        let n = m.dim(beta);
        if n == 0 {
            continue;
        }
        for i in 0..datum.rank() {
            let h = m.coroot_at(i, beta);
            if datum.is_real(i) {
                let a = Letter::new(i, 1);
                let prim: Vec<Coords> = match m.raising(a, beta) {
                    Some(r) => r.nullspace(),
                    None => QMatrix::identity(n).nullspace_rows(),
                };
                for v in prim {
                    report.check(h >= 0, || format!("{i}-primitive vector at offset {beta} has coroot {h} < 0"));
                    if h >= 0 {
                        if let Some(ok) = lowering_power_kills(m, a, beta, &v, h + 1) {
                            report.check(ok, || format!("b_{i}^{} does not kill a primitive vector at {beta}", h + 1));
                        }
                    }
                }
            } else {
                report.check(h >= 0, || format!("imaginary coroot {i} is {h} < 0 at offset {beta}"));
                for &a in m.letters().iter().filter(|a| a.index == i) {
                    let l = a.level as i64;
                    if h == 0 {
                        if let Some(low) = m.lowering(a, beta) {
                            report.check(is_zero_matrix(low), || format!("b[{i},{l}] acts nonzero at offset {beta}"));
                        }
                    }
                    if h <= -l * datum.a(i, i) {
                        if let Some(r) = m.raising(a, beta) {
                            report.check(is_zero_matrix(r), || format!("a[{i},{l}] acts nonzero at offset {beta}"));
                        }
                    }
                }
            }
        }
    }
    report
}

/// The highest weight module properties of `V(λ)`, `λ` dominant: `b_i^{<h_i,λ>+1} v_λ = 0`
/// for real `i`; `b_{ik} v_λ = 0` for imaginary `i` with `<h_i,λ> = 0`;
/// `V_{μ-lα_i} = 0` whenever `<h_i,μ> = 0` for imaginary `i`; and `a_{il}` kills
/// `V_μ` when `<h_i,μ> <= -l a_ii`.
pub fn check_highest_weight_properties(v: &QuotientSlice) -> CheckReport {
    let datum = v.datum().clone();
    let zero = RootWeight::zero(datum.rank());
    let top = vec![QScalar::one()];
    let mut report = CheckReport::default();
    for i in 0..datum.rank() {
        let h = v.coroot_at(i, &zero);
        if datum.is_real(i) {
            if let Some(ok) = lowering_power_kills(v, Letter::new(i, 1), &zero, &top, h + 1) {
                report.check(ok, || format!("b_{i}^{} v_λ is nonzero", h + 1));
            }
        } else if h == 0 {
            for &a in v.letters().iter().filter(|a| a.index == i) {
                if let Some(ok) = lowering_power_kills(v, a, &zero, &top, 1) {
                    report.check(ok, || format!("b[{i},{}] v_λ is nonzero", a.level));
                }
            }
        }
    }
    for beta in v.offsets() {
        if v.dim(beta) == 0 {
            continue;
        }
        for i in (0..datum.rank()).filter(|&i| datum.is_imaginary(i)) {
            let h = v.coroot_at(i, beta);
            if h == 0 {
                for l in 1..=v.depth() {
                    let below = beta.plus_simple(i, l);
                    if below.height() <= v.depth() {
                        report.check(v.dim(&below) == 0, || format!("V at offset {below} is nonzero below a zero of coroot {i}"));
                    }
                }
            }
            for &a in v.letters().iter().filter(|a| a.index == i) {
                if h <= -(a.level as i64) * datum.a(i, i) {
                    if let Some(r) = v.raising(a, beta) {
                        report.check(r.is_zero(), || format!("a[{i},{}] acts nonzero at offset {beta}", a.level));
                    }
                }
            }
        }
    }
    report
}
