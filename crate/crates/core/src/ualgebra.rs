//! The full algebra in triangular normal form `b-word · K^n · a-word`.
//!
//! Both halves are stored over pivot words. Products are rewritten with the
//! cross relation between `a` and `b` letters and the `K`-conjugation rule,
//! then each half is reduced modulo the radical.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

use crate::cartan::{CartanDatum, RootWeight};
use crate::freesuper::{derive_left, derive_right, insert_term, render_coef, GradedElement, Letter, Word};
use crate::pairing::PlusSpace;
use crate::scalar::QScalar;

/// `b_minus K^k a_plus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UMonomial {
    pub minus: Word,
    pub k: Vec<i64>,
    pub plus: Word,
}

impl UMonomial {
    pub fn one(rank: usize) -> Self {
        UMonomial { minus: Word::empty(), k: vec![0; rank], plus: Word::empty() }
    }

    pub fn parity(&self, datum: &CartanDatum) -> u8 {
        (self.minus.parity(datum) + self.plus.parity(datum)) % 2
    }

    pub fn weight(&self, datum: &CartanDatum) -> RootWeight {
        &self.plus.weight(datum) - &self.minus.weight(datum)
    }

    pub fn render(&self, datum: &CartanDatum) -> String {
        let mut parts = Vec::new();
        if !self.minus.is_empty() {
            parts.push(self.minus.render(datum, 'b'));
        }
        for (i, &n) in self.k.iter().enumerate() {
            if n != 0 {
                parts.push(format!("K[{}]^{n}", datum.name(i)));
            }
        }
        if !self.plus.is_empty() {
            parts.push(self.plus.render(datum, 'a'));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

fn sign_of(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// Linear combination of normal-form monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UElement {
    terms: BTreeMap<UMonomial, QScalar>,
}

impl UElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(UMonomial::one(rank), QScalar::one())
    }

    pub fn monomial(m: UMonomial, c: QScalar) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    /// `K^n`.
    pub fn k_power(k: Vec<i64>) -> Self {
        Self::monomial(UMonomial { minus: Word::empty(), k, plus: Word::empty() }, QScalar::one())
    }

    pub fn add_term(&mut self, m: UMonomial, c: QScalar) {
        insert_term(&mut self.terms, m, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UMonomial, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &UMonomial) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_default()
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
        let mut r = Self::zero();
        for (m, x) in &self.terms {
            r.add_term(m.clone(), x * c);
        }
        r
    }

    pub fn add(&self, other: &UElement) -> UElement {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &UElement) -> UElement {
        self.add(&other.scale(&QScalar::from_int(-1)))
    }

    pub fn homogeneous_weight(&self, datum: &CartanDatum) -> Option<RootWeight> {
        let mut it = self.terms.keys().map(|m| m.weight(datum));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn homogeneous_parity(&self, datum: &CartanDatum) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| m.parity(datum));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn render(&self, datum: &CartanDatum) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("{} * {}", render_coef(c), m.render(datum)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Element of `U ⊗ U` with the super sign rule.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UTensor {
    terms: BTreeMap<(UMonomial, UMonomial), QScalar>,
}

impl UTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(x: &UElement, y: &UElement) -> Self {
        let mut t = Self::zero();
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                t.add_term(m1.clone(), m2.clone(), c1 * c2);
            }
        }
        t
    }

    pub fn add_term(&mut self, left: UMonomial, right: UMonomial, c: QScalar) {
        insert_term(&mut self.terms, (left, right), c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(UMonomial, UMonomial), &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, left: &UMonomial, right: &UMonomial) -> QScalar {
        self.terms.get(&(left.clone(), right.clone())).cloned().unwrap_or_default()
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

    pub fn add(&self, other: &UTensor) -> UTensor {
        let mut r = self.clone();
        for ((a, b), c) in &other.terms {
            r.add_term(a.clone(), b.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &UTensor) -> UTensor {
        self.add(&other.scale(&QScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &QScalar) -> UTensor {
        let mut r = UTensor::zero();
        for ((a, b), x) in &self.terms {
            r.add_term(a.clone(), b.clone(), x * c);
        }
        r
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&UMonomial, &UMonomial) -> bool) -> UTensor {
        UTensor {
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| keep(a, b))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn render(&self, datum: &CartanDatum) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|((a, b), c)| format!("{} * {} ⊗ {}", render_coef(c), a.render(datum), b.render(datum)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A product result together with the truncation flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Straightened<T> {
    pub value: T,
    /// True when terms beyond the height window were dropped.
    pub overflow: bool,
}

type RawTerms = Vec<(UMonomial, QScalar)>;

/// Normal-form arithmetic in the full algebra of a datum.
pub struct UAlgebra {
    space: Arc<PlusSpace>,
    window: Option<i64>,
    ordering_memo: RwLock<HashMap<(Word, Word), Arc<RawTerms>>>,
}

impl UAlgebra {
    pub fn new(space: Arc<PlusSpace>) -> Self {
        UAlgebra { space, window: None, ordering_memo: RwLock::new(HashMap::new()) }
    }

    /// Drops, and flags, product terms whose `a`- or `b`-part exceeds `height`.
    pub fn with_window(space: Arc<PlusSpace>, height: i64) -> Self {
        UAlgebra { space, window: Some(height), ordering_memo: RwLock::new(HashMap::new()) }
    }

    pub fn datum(&self) -> &CartanDatum {
        self.space.datum()
    }

    pub fn space(&self) -> &Arc<PlusSpace> {
        &self.space
    }

    pub fn window(&self) -> Option<i64> {
        self.window
    }

    fn rank(&self) -> usize {
        self.datum().rank()
    }

    /// `sum_i n_i (alpha_i, beta)`: the exponent of `K^n X K^{-n} = q^{..} X`
    /// for `X` of weight `beta`.
    pub fn k_pair(&self, n: &[i64], beta: &RootWeight) -> i64 {
        let d = self.datum();
        n.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| x * d.form_simple(i, beta))
            .sum()
    }

    pub fn a_letter(&self, i: usize, l: u32) -> UElement {
        let mut m = UMonomial::one(self.rank());
        m.plus = Word::single(Letter::new(i, l));
        UElement::monomial(m, QScalar::one())
    }

    pub fn b_letter(&self, i: usize, l: u32) -> UElement {
        let mut m = UMonomial::one(self.rank());
        m.minus = Word::single(Letter::new(i, l));
        UElement::monomial(m, QScalar::one())
    }

    /// `K_i^l`.
    pub fn k_letter(&self, i: usize, l: i64) -> UElement {
        let mut k = vec![0; self.rank()];
        k[i] = l;
        UElement::k_power(k)
    }

    /// `K_beta = prod K_i^{beta_i}`.
    pub fn k_weight(&self, beta: &RootWeight) -> UElement {
        UElement::k_power(beta.0.clone())
    }

    /// `x^+`.
    pub fn embed_plus(&self, x: &GradedElement) -> UElement {
        let mut r = UElement::zero();
        for (w, c) in self.space.reduce(x).terms() {
            let mut m = UMonomial::one(self.rank());
            m.plus = w.clone();
            r.add_term(m, c.clone());
        }
        r
    }

    /// `x^-`: the same word read in the `b` generators, so that
    /// `omega(x^+) = (-1)^{p(x)} x^-`.
    pub fn embed_minus(&self, x: &GradedElement) -> UElement {
        let mut r = UElement::zero();
        for (w, c) in self.space.reduce(x).terms() {
            let mut m = UMonomial::one(self.rank());
            m.minus = w.clone();
            r.add_term(m, c.clone());
        }
        r
    }

    /// The `a`-part of an element with trivial `b`- and `K`-parts.
    pub fn plus_part(&self, u: &UElement) -> Option<GradedElement> {
        let mut r = GradedElement::zero();
        for (m, c) in u.terms() {
            if !m.minus.is_empty() || m.k.iter().any(|&x| x != 0) {
                return None;
            }
            r.add_term(m.plus.clone(), c.clone());
        }
        Some(r)
    }

    /// `a_A b_B` with raw (unreduced) words, as `b K a` terms.
    fn order(&self, a: &Word, b: &Word) -> Arc<RawTerms> {
        if a.is_empty() || b.is_empty() {
            let m = UMonomial { minus: b.clone(), k: vec![0; self.rank()], plus: a.clone() };
            return Arc::new(vec![(m, QScalar::one())]);
        }
        let key = (a.clone(), b.clone());
        if let Some(r) = self.ordering_memo.read().unwrap().get(&key) {
            return r.clone();
        }
        let datum = self.datum();
        let last = *a.letters().last().unwrap();
        let head = Word(a.letters()[..a.len() - 1].to_vec());
        let pl = last.parity(datum);
        let mut acc: BTreeMap<UMonomial, QScalar> = BTreeMap::new();

        // a_last passes through all of b
        let through = sign_of(pl * b.parity(datum) == 1);
        for (m, c) in self.order(&head, b).iter() {
            let mut m = m.clone();
            m.plus = m.plus.push(last);
            insert_term(&mut acc, m, c.mul_signed_q_pow(through, 0));
        }

        // cross terms at each matching position
        let denom = QScalar::from_poly(last.norm_denominator(datum)).recip();
        let mut before_parity = 0u8;
        for k in 0..b.len() {
            let letter = b.letters()[k];
            if letter == last {
                let sign_k = sign_of(pl * before_parity == 1);
                let rest = b.without(k);
                let after = Word(b.letters()[k + 1..].to_vec()).weight(datum);
                let e_after = last.pair(datum, &after);
                let inner = self.order(&head, &rest);
                for sigma in [1i64, -1] {
                    let mut kv = vec![0; self.rank()];
                    kv[last.index] = sigma * last.level as i64;
                    // K^{sigma l} moved right past b_{>k}
                    let base = denom.mul_signed_q_pow(sign_k * sigma, -sigma * e_after);
                    for (m, c) in inner.iter() {
                        // b K^n a'' K^m = q^{-kpair(m,|a''|)} b K^{n+m} a''
                        let e = -self.k_pair(&kv, &m.plus.weight(datum));
                        let mut m2 = m.clone();
                        for (x, y) in m2.k.iter_mut().zip(&kv) {
                            *x += y;
                        }
                        insert_term(&mut acc, m2, (c * &base).mul_signed_q_pow(1, e));
                    }
                }
            }
            before_parity = (before_parity + letter.parity(datum)) % 2;
        }
        let r: Arc<RawTerms> = Arc::new(acc.into_iter().collect());
        self.ordering_memo.write().unwrap().insert(key, r.clone());
        r
    }

    /// Reduces both halves of a raw term to pivot words and adds it to `out`.
    fn push_reduced(&self, out: &mut UElement, m: UMonomial, c: QScalar) {
        let minus = self.space.reduce_word(&m.minus);
        let plus = self.space.reduce_word(&m.plus);
        for (bw, bc) in &minus {
            for (aw, ac) in &plus {
                out.add_term(
                    UMonomial { minus: bw.clone(), k: m.k.clone(), plus: aw.clone() },
                    &(&c * bc) * ac,
                );
            }
        }
    }

    fn in_window(&self, m: &UMonomial) -> bool {
        self.window.is_none_or(|h| m.minus.height() <= h && m.plus.height() <= h)
    }

    /// Product of two normal-form monomials.
    pub fn mul_monomials(&self, x: &UMonomial, y: &UMonomial) -> Straightened<UElement> {
        let datum = self.datum();
        let mut raw: BTreeMap<UMonomial, QScalar> = BTreeMap::new();
        let mut overflow = false;
        for (m, c) in self.order(&x.plus, &y.minus).iter() {
            let mid_b = m.minus.weight(datum);
            let mid_a = m.plus.weight(datum);
            let e = -self.k_pair(&x.k, &mid_b) - self.k_pair(&y.k, &mid_a);
            let k: Vec<i64> = x.k.iter().zip(&m.k).zip(&y.k).map(|((a, b), c)| a + b + c).collect();
            let out = UMonomial { minus: x.minus.concat(&m.minus), k, plus: m.plus.concat(&y.plus) };
            if !self.in_window(&out) {
                overflow = true;
                continue;
            }
            insert_term(&mut raw, out, c.mul_signed_q_pow(1, e));
        }
        let mut value = UElement::zero();
        for (m, c) in raw {
            self.push_reduced(&mut value, m, c);
        }
        Straightened { value, overflow }
    }

    /// Product in normal form.
    pub fn mul(&self, x: &UElement, y: &UElement) -> Straightened<UElement> {
        let mut value = UElement::zero();
        let mut overflow = false;
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                let p = self.mul_monomials(m1, m2);
                overflow |= p.overflow;
                let c = c1 * c2;
                for (m, x) in p.value.terms() {
                    value.add_term(m.clone(), &c * x);
                }
            }
        }
        Straightened { value, overflow }
    }

    /// Product of a sequence of factors, left to right.
    pub fn product(&self, factors: &[UElement]) -> Straightened<UElement> {
        let mut acc = UElement::one(self.rank());
        let mut overflow = false;
        for f in factors {
            let p = self.mul(&acc, f);
            overflow |= p.overflow;
            acc = p.value;
        }
        Straightened { value: acc, overflow }
    }

    /// `(x1 ⊗ x2)(x3 ⊗ x4) = (-1)^{p(x2)p(x3)} x1 x3 ⊗ x2 x4`.
    pub fn tensor_mul(&self, x: &UTensor, y: &UTensor) -> Straightened<UTensor> {
        self.tensor_mul_where(x, y, |_, _| true)
    }

    /// The part of [`UAlgebra::tensor_mul`] whose left and right weights pass
    /// `keep`. Pairs of terms failing it are never multiplied out.
    pub fn tensor_mul_where(
        &self,
        x: &UTensor,
        y: &UTensor,
        keep: impl Fn(&RootWeight, &RootWeight) -> bool,
    ) -> Straightened<UTensor> {
        let datum = self.datum();
        let mut value = UTensor::zero();
        let mut overflow = false;
        for ((m1, m2), c1) in x.terms() {
            for ((m3, m4), c2) in y.terms() {
                let wl = &m1.weight(datum) + &m3.weight(datum);
                let wr = &m2.weight(datum) + &m4.weight(datum);
                if !keep(&wl, &wr) {
                    continue;
                }
                let s = sign_of(m2.parity(datum) * m3.parity(datum) == 1);
                let left = self.mul_monomials(m1, m3);
                let right = self.mul_monomials(m2, m4);
                overflow |= left.overflow || right.overflow;
                let c = (c1 * c2).mul_signed_q_pow(s, 0);
                for (l, cl) in left.value.terms() {
                    for (r, cr) in right.value.terms() {
                        value.add_term(l.clone(), r.clone(), &(&c * cl) * cr);
                    }
                }
            }
        }
        Straightened { value, overflow }
    }

    /// The monomial as a product of generators: `b` letters, one `K` factor, `a` letters.
    fn generators(&self, m: &UMonomial) -> Vec<Generator> {
        let mut g: Vec<Generator> = m.minus.letters().iter().map(|&a| Generator::B(a)).collect();
        if m.k.iter().any(|&x| x != 0) {
            g.push(Generator::K(m.k.clone()));
        }
        g.extend(m.plus.letters().iter().map(|&a| Generator::A(a)));
        g
    }

    /// Extends a map on generators to an algebra map.
    fn extend_hom(&self, u: &UElement, image: impl Fn(&Generator) -> UElement) -> Straightened<UElement> {
        let mut value = UElement::zero();
        let mut overflow = false;
        for (m, c) in u.terms() {
            let factors: Vec<UElement> = self.generators(m).iter().map(&image).collect();
            let p = self.product(&factors);
            overflow |= p.overflow;
            value = value.add(&p.value.scale(c));
        }
        Straightened { value, overflow }
    }

    /// Extends a map on generators to a super anti-homomorphism
    /// `f(xy) = (-1)^{p(x)p(y)} f(y) f(x)`.
    fn extend_antihom(&self, u: &UElement, image: impl Fn(&Generator) -> UElement) -> Straightened<UElement> {
        let datum = self.datum();
        let mut value = UElement::zero();
        let mut overflow = false;
        for (m, c) in u.terms() {
            let gens = self.generators(m);
            let parities: Vec<u8> = gens.iter().map(|g| g.parity(datum)).collect();
            let mut odd_pairs = 0u32;
            for i in 0..parities.len() {
                for j in i + 1..parities.len() {
                    odd_pairs += (parities[i] * parities[j]) as u32;
                }
            }
            let factors: Vec<UElement> = gens.iter().rev().map(&image).collect();
            let p = self.product(&factors);
            overflow |= p.overflow;
            let s = QScalar::from_int(sign_of(odd_pairs % 2 == 1));
            value = value.add(&p.value.scale(&(c * &s)));
        }
        Straightened { value, overflow }
    }

    /// The coproduct: `a ↦ a⊗1 + K_i^l⊗a`, `b ↦ b⊗K_i^{-l} + 1⊗b`, `K ↦ K⊗K`.
    pub fn coproduct(&self, u: &UElement) -> Straightened<UTensor> {
        let one = UElement::one(self.rank());
        let mut value = UTensor::zero();
        let mut overflow = false;
        for (m, c) in u.terms() {
            let mut acc = UTensor::pure(&one, &one);
            for g in self.generators(m) {
                let dg = match &g {
                    Generator::A(a) => UTensor::pure(&self.a_letter(a.index, a.level), &one).add(&UTensor::pure(
                        &self.k_letter(a.index, a.level as i64),
                        &self.a_letter(a.index, a.level),
                    )),
                    Generator::B(a) => UTensor::pure(
                        &self.b_letter(a.index, a.level),
                        &self.k_letter(a.index, -(a.level as i64)),
                    )
                    .add(&UTensor::pure(&one, &self.b_letter(a.index, a.level))),
                    Generator::K(k) => UTensor::pure(&UElement::k_power(k.clone()), &UElement::k_power(k.clone())),
                };
                let p = self.tensor_mul(&acc, &dg);
                overflow |= p.overflow;
                acc = p.value;
            }
            value = value.add(&acc.scale(c));
        }
        Straightened { value, overflow }
    }

    /// `bar ⊗ bar ∘ Δ ∘ bar`.
    pub fn bar_coproduct(&self, u: &UElement) -> Straightened<UTensor> {
        let d = self.coproduct(&self.bar(u));
        Straightened { value: self.bar_tensor(&d.value), overflow: d.overflow }
    }

    /// `S(a) = -K_i^{-l} a`, `S(b) = -b K_i^l`, `S(K) = K^{-1}`.
    pub fn antipode(&self, u: &UElement) -> Straightened<UElement> {
        let minus_one = QScalar::from_int(-1);
        self.extend_antihom(u, |g| match g {
            Generator::A(a) => self
                .mul(&self.k_letter(a.index, -(a.level as i64)), &self.a_letter(a.index, a.level))
                .value
                .scale(&minus_one),
            Generator::B(a) => self
                .mul(&self.b_letter(a.index, a.level), &self.k_letter(a.index, a.level as i64))
                .value
                .scale(&minus_one),
            Generator::K(k) => UElement::k_power(k.iter().map(|x| -x).collect()),
        })
    }

    /// `S'(a) = -a K_i^{-l}`, `S'(b) = -K_i^l b`, `S'(K) = K^{-1}`.
    pub fn antipode_prime(&self, u: &UElement) -> Straightened<UElement> {
        let minus_one = QScalar::from_int(-1);
        self.extend_antihom(u, |g| match g {
            Generator::A(a) => self
                .mul(&self.a_letter(a.index, a.level), &self.k_letter(a.index, -(a.level as i64)))
                .value
                .scale(&minus_one),
            Generator::B(a) => self
                .mul(&self.k_letter(a.index, a.level as i64), &self.b_letter(a.index, a.level))
                .value
                .scale(&minus_one),
            Generator::K(k) => UElement::k_power(k.iter().map(|x| -x).collect()),
        })
    }

    /// `b_{il} ↦ (-1)^{p(li)} q_i^{2l} b_{il}`: the rescaling that makes the
    /// bar map compatible with the cross relation.
    fn bar_b_factor(&self, a: Letter) -> QScalar {
        let s = sign_of(a.parity(self.datum()) == 1);
        QScalar::signed_q_pow(s, 2 * a.level as i64 * self.datum().d(a.index))
    }

    /// Ring involution fixing `a`, inverting `K`, rescaling `b` and barring
    /// coefficients.
    pub fn bar(&self, u: &UElement) -> UElement {
        let mut r = UElement::zero();
        for (m, c) in u.terms() {
            let mut f = c.bar();
            for &a in m.minus.letters() {
                f = &f * &self.bar_b_factor(a);
            }
            let m2 = UMonomial { minus: m.minus.clone(), k: m.k.iter().map(|x| -x).collect(), plus: m.plus.clone() };
            r.add_term(m2, f);
        }
        r
    }

    pub fn bar_tensor(&self, t: &UTensor) -> UTensor {
        let mut r = UTensor::zero();
        for ((a, b), c) in t.terms() {
            let ea = self.bar(&UElement::monomial(a.clone(), QScalar::one()));
            let eb = self.bar(&UElement::monomial(b.clone(), QScalar::one()));
            let cb = c.bar();
            for (ma, ca) in ea.terms() {
                for (mb, cbb) in eb.terms() {
                    r.add_term(ma.clone(), mb.clone(), &(&cb * ca) * cbb);
                }
            }
        }
        r
    }

    /// The automorphism `a ↦ (-1)^{p(li)} b`, `b ↦ a`, `K ↦ K^{-1}`.
    pub fn omega(&self, u: &UElement) -> Straightened<UElement> {
        let datum = self.datum();
        self.extend_hom(u, |g| match g {
            Generator::A(a) => self
                .b_letter(a.index, a.level)
                .scale(&QScalar::from_int(sign_of(a.parity(datum) == 1))),
            Generator::B(a) => self.a_letter(a.index, a.level),
            Generator::K(k) => UElement::k_power(k.iter().map(|x| -x).collect()),
        })
    }

    /// `x^+ b_{il} - (-1)^{p(li)p(x)} b_{il} x^+` in closed form:
    /// `(ϱ_{i,l}(x)^+ K_i^l - (-1)^{p(li)p(x)-p(li)} K_i^{-l} ϱ^{i,l}(x)^+) / (1 - (-1)^{p(li)} q_i^{2l})`.
    pub fn commutator_plus(&self, x: &GradedElement, i: usize, l: u32) -> UElement {
        let datum = self.datum();
        let a = Letter::new(i, l);
        let pa = a.parity(datum);
        let px = x.homogeneous_parity(datum).unwrap_or(0);
        let right = self.mul(&self.embed_plus(&derive_right(datum, x, a)), &self.k_letter(i, l as i64)).value;
        let left = self.mul(&self.k_letter(i, -(l as i64)), &self.embed_plus(&derive_left(datum, x, a))).value;
        let s = sign_of((pa * px + pa) % 2 == 1);
        let denom = QScalar::from_poly(a.norm_denominator(datum)).recip();
        right.sub(&left.scale(&QScalar::from_int(s))).scale(&denom)
    }

    /// Number of normal-form monomials with `b`-part of weight `beta` and
    /// `a`-part of weight `nu`, per fixed `K`-part.
    pub fn bidegree_count(&self, beta: &RootWeight, nu: &RootWeight) -> usize {
        self.space.dim(beta) * self.space.dim(nu)
    }

    /// Monomials with `K`-part `k` spanning the bidegree `(-beta, nu)`.
    pub fn bidegree_monomials(&self, beta: &RootWeight, nu: &RootWeight, k: &[i64]) -> Vec<UMonomial> {
        let minus = self.space.pivot_words_of_weight(beta);
        let plus = self.space.pivot_words_of_weight(nu);
        let mut out = Vec::with_capacity(minus.len() * plus.len());
        for b in &minus {
            for a in &plus {
                out.push(UMonomial { minus: b.clone(), k: k.to_vec(), plus: a.clone() });
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
enum Generator {
    A(Letter),
    B(Letter),
    K(Vec<i64>),
}

impl Generator {
    fn parity(&self, datum: &CartanDatum) -> u8 {
        match self {
            Generator::A(a) | Generator::B(a) => a.parity(datum),
            Generator::K(_) => 0,
        }
    }
}

/// Renders a bidegree count table row.
pub fn render_bidegree(beta: &RootWeight, nu: &RootWeight, count: usize) -> String {
    let mut s = String::new();
    let _ = write!(s, "-{beta} | {nu} : {count}");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freesuper::{divided_power, sigma};

    fn algebra(a: Vec<Vec<i64>>, p: Vec<u8>, d: Vec<i64>) -> UAlgebra {
        let datum = CartanDatum::new(a, p, d).unwrap();
        UAlgebra::new(Arc::new(PlusSpace::new(datum)))
    }

    fn w(letters: &[(usize, u32)]) -> Word {
        Word(letters.iter().map(|&(i, l)| Letter::new(i, l)).collect())
    }

    #[test]
    fn cross_relation() {
        for (p, d) in [(0u8, 1i64), (1, 1), (0, 2)] {
            let u = algebra(vec![vec![2, -2], vec![-1, 2]], vec![p, 0], vec![d, 2 * d]);
            let ab = u.mul(&u.a_letter(0, 1), &u.b_letter(0, 1)).value;
            let s = if p == 1 { -1 } else { 1 };
            let ba = u.mul(&u.b_letter(0, 1), &u.a_letter(0, 1)).value.scale(&QScalar::from_int(s));
            let denom = QScalar::from_poly(Letter::new(0, 1).norm_denominator(u.datum())).recip();
            let expected = u.k_letter(0, 1).sub(&u.k_letter(0, -1)).scale(&denom);
            assert_eq!(ab.sub(&ba), expected);
            // different letters commute up to sign
            let ab = u.mul(&u.a_letter(0, 1), &u.b_letter(1, 1)).value;
            let ba = u.mul(&u.b_letter(1, 1), &u.a_letter(0, 1)).value;
            assert_eq!(ab, ba);
        }
    }

    #[test]
    fn k_conjugation() {
        let u = algebra(vec![vec![2, -3], vec![-1, 2]], vec![0, 0], vec![1, 3]);
        for i in 0..2 {
            for j in 0..2 {
                let x = u.product(&[u.k_letter(i, 1), u.a_letter(j, 1), u.k_letter(i, -1)]).value;
                let e = u.datum().d(i) * u.datum().a(i, j);
                assert_eq!(x, u.a_letter(j, 1).scale(&QScalar::q_pow(e)));
            }
        }
    }

    #[test]
    fn divided_square_coproduct() {
        let u = algebra(vec![vec![2]], vec![0], vec![1]);
        let x = divided_power(u.datum(), 0, 2).unwrap();
        let lhs = u.coproduct(&u.embed_plus(&x)).value;
        let mut rhs = UTensor::zero();
        for t in 0..=2i64 {
            let t2 = 2 - t;
            let left = u.mul(&u.embed_plus(&divided_power(u.datum(), 0, t).unwrap()), &u.k_letter(0, t2)).value;
            let right = u.embed_plus(&divided_power(u.datum(), 0, t2).unwrap());
            rhs = rhs.add(&UTensor::pure(&left, &right).scale(&QScalar::q_pow(t * t2)));
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_is_multiplicative() {
        let u = algebra(vec![vec![2, -2], vec![-1, 0]], vec![1, 0], vec![1, 2]);
        let gens = [u.a_letter(0, 1), u.b_letter(1, 2), u.a_letter(1, 1), u.b_letter(0, 1), u.k_letter(1, 1)];
        for x in &gens {
            for y in &gens {
                let xy = u.mul(x, y).value;
                let lhs = u.coproduct(&xy).value;
                let rhs = u.tensor_mul(&u.coproduct(x).value, &u.coproduct(y).value).value;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn antipodes() {
        let u = algebra(vec![vec![2, -2], vec![-1, 0]], vec![1, 0], vec![1, 2]);
        let a = u.a_letter(0, 1);
        let s = u.antipode(&a).value;
        assert_eq!(s, u.mul(&u.k_letter(0, -1), &a).value.scale(&QScalar::from_int(-1)));
        for x in [u.a_letter(0, 1), u.b_letter(1, 2), u.a_letter(1, 1)] {
            assert_eq!(u.antipode(&u.antipode_prime(&x).value).value, x);
            assert_eq!(u.antipode_prime(&u.antipode(&x).value).value, x);
        }
    }

    #[test]
    fn antipode_lengths() {
        // S(x^+) = q^{-sum l^2 (alpha,alpha)} S'(x^+)
        let u = algebra(vec![vec![2, -2], vec![-1, 0]], vec![1, 0], vec![1, 2]);
        for word in [w(&[(0, 1), (1, 1)]), w(&[(1, 2), (0, 1)]), w(&[(0, 1), (1, 1), (0, 1)])] {
            let x = u.embed_plus(&GradedElement::from_word(word.clone()));
            let deg = word.exdegree();
            let s = u.antipode(&x).value;
            let sp = u.antipode_prime(&x).value;
            assert_eq!(s, sp.scale(&QScalar::q_pow(-deg.squared_parts(u.datum()))));
        }
    }

    #[test]
    fn antipode_closed_form_on_two_letters() {
        let u = algebra(vec![vec![2, -1], vec![-1, 2]], vec![0, 0], vec![2, 2]);
        let word = w(&[(0, 1), (1, 1)]);
        let x = GradedElement::from_word(word.clone());
        let deg = word.exdegree();
        let s = u.antipode(&u.embed_plus(&x)).value;
        let c = deg.c_value(u.datum());
        let sign = if (deg.num_parts() as i64 + deg.e_value(u.datum()) + c) % 2 == 0 { 1 } else { -1 };
        let expected = u
            .mul(&u.k_weight(&-&deg.weight(u.datum())), &u.embed_plus(&sigma(&x)))
            .value
            .scale(&QScalar::signed_q_pow(sign, c));
        assert_eq!(s, expected);
    }

    #[test]
    fn bar_is_a_ring_map() {
        let u = algebra(vec![vec![2, -2], vec![-1, 0]], vec![1, 0], vec![1, 2]);
        let gens = [u.a_letter(0, 1), u.b_letter(0, 1), u.a_letter(1, 2), u.b_letter(1, 2), u.k_letter(0, 1)];
        for x in &gens {
            assert_eq!(u.bar(&u.bar(x)), *x);
            for y in &gens {
                let lhs = u.bar(&u.mul(x, y).value);
                let rhs = u.mul(&u.bar(x), &u.bar(y)).value;
                assert_eq!(lhs, rhs);
            }
        }
        let qa = u.a_letter(0, 1).scale(&QScalar::q_pow(1));
        assert_eq!(u.bar(&qa), u.a_letter(0, 1).scale(&QScalar::signed_q_pow(-1, -1)));
    }

    #[test]
    fn omega_values() {
        let u = algebra(vec![vec![2, -2], vec![-1, 0]], vec![1, 0], vec![1, 2]);
        let x = GradedElement::from_word(w(&[(0, 1), (1, 1)]));
        let lhs = u.omega(&u.embed_plus(&x)).value;
        assert_eq!(lhs, u.embed_minus(&x).scale(&QScalar::from_int(-1)));
        assert_eq!(u.omega(&u.embed_minus(&x)).value, u.embed_plus(&x));
    }

    #[test]
    fn commutator_matches_straightening() {
        let u = algebra(vec![vec![2, -2], vec![-1, 0]], vec![1, 0], vec![1, 2]);
        for word in [w(&[(0, 1)]), w(&[(0, 1), (0, 1)]), w(&[(1, 1), (0, 1), (1, 2)])] {
            let x = GradedElement::from_word(word.clone());
            let px = word.parity(u.datum());
            for (i, l) in [(0usize, 1u32), (1, 1), (1, 2)] {
                let xp = u.embed_plus(&x);
                let b = u.b_letter(i, l);
                let s = if Letter::new(i, l).parity(u.datum()) * px == 1 { -1 } else { 1 };
                let lhs = u.mul(&xp, &b).value.sub(&u.mul(&b, &xp).value.scale(&QScalar::from_int(s)));
                assert_eq!(lhs, u.commutator_plus(&x, i, l), "{word:?} ({i},{l})");
            }
        }
    }

    #[test]
    fn window_flags_overflow() {
        let datum = CartanDatum::new(vec![vec![2]], vec![0], vec![1]).unwrap();
        let u = UAlgebra::with_window(Arc::new(PlusSpace::new(datum)), 1);
        let p = u.mul(&u.b_letter(0, 1), &u.b_letter(0, 1));
        assert!(p.overflow && p.value.is_zero());
        let p = u.mul(&u.a_letter(0, 1), &u.b_letter(0, 1));
        assert!(!p.overflow);
    }
}
