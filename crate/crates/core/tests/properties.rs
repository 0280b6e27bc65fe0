use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use borcherds::cartan::{CartanDatum, RootWeight, Weight};
use borcherds::characters::CharacterSeries;
use borcherds::freesuper::{Letter, Word};
use borcherds::modules::{HighestWeightSlice, ModuleVector, Subspace, VermaSlice};
use borcherds::pairing::{form_words, normalized_form_words, normalized_form_words_left, FormMemo, PlusSpace};
use borcherds::ualgebra::{UAlgebra, UElement, UMonomial};
use borcherds::{LaurentPoly, QScalar};

fn data() -> &'static [CartanDatum] {
    static DATA: OnceLock<Vec<CartanDatum>> = OnceLock::new();
    DATA.get_or_init(|| {
        vec![
            CartanDatum::new(vec![vec![2, -1], vec![-1, 2]], vec![0, 0], vec![1, 1]).unwrap(),
            CartanDatum::new(vec![vec![2, -2], vec![-1, 0]], vec![1, 0], vec![1, 2]).unwrap(),
            CartanDatum::new(vec![vec![2, -2], vec![-2, -2]], vec![0, 1], vec![1, 1]).unwrap(),
            CartanDatum::new(vec![vec![0, -1], vec![-1, -2]], vec![0, 0], vec![1, 1]).unwrap(),
        ]
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 0..4).prop_map(LaurentPoly::from_int_terms)
}

fn scalar() -> impl Strategy<Value = QScalar> {
    (laurent(), laurent()).prop_map(|(n, d)| {
        if d.is_zero() {
            QScalar::from_poly(n)
        } else {
            QScalar::new(n, d)
        }
    })
}

/// A random word on a rank-2 datum with letters of level at most 2.
fn word(max_len: usize) -> impl Strategy<Value = Vec<(usize, u32)>> {
    prop::collection::vec((0usize..2, 1u32..=2), 0..=max_len)
}

fn to_word(d: &CartanDatum, letters: &[(usize, u32)]) -> Word {
    Word(letters.iter().filter(|&&(i, l)| d.is_letter(i, l)).map(|&(i, l)| Letter::new(i, l)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bar_is_a_ring_involution(x in scalar(), y in scalar()) {
        prop_assert_eq!(x.bar().bar(), x.clone());
        prop_assert_eq!((&x * &y).bar(), &x.bar() * &y.bar());
        prop_assert_eq!((&x + &y).bar(), &x.bar() + &y.bar());
    }

    #[test]
    fn field_operations(x in scalar(), y in scalar()) {
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn laurent_gcd_divides(x in laurent(), y in laurent()) {
        let g = x.gcd(&y);
        if !g.is_zero() {
            prop_assert!(x.div_exact(&g).is_some());
            prop_assert!(y.div_exact(&g).is_some());
        }
    }

    #[test]
    fn form_is_symmetric(k in 0usize..4, u in word(4), perm in any::<prop::sample::Index>()) {
        let d = &data()[k];
        let u = to_word(d, &u);
        // a rearrangement of u has the same degree
        let mut letters = u.letters().to_vec();
        if !letters.is_empty() {
            let r = perm.index(letters.len());
            letters.rotate_left(r);
        }
        let v = Word(letters);
        let mut memo = FormMemo::new();
        prop_assert_eq!(form_words(d, &u, &v, &mut memo), form_words(d, &v, &u, &mut memo));
    }

    #[test]
    fn left_and_right_peeling_agree(k in 0usize..4, u in word(4), perm in any::<prop::sample::Index>()) {
        let d = &data()[k];
        let u = to_word(d, &u);
        let mut letters = u.letters().to_vec();
        if !letters.is_empty() {
            let r = perm.index(letters.len());
            letters.swap(0, r);
        }
        let v = Word(letters);
        let (mut m1, mut m2) = (FormMemo::new(), FormMemo::new());
        prop_assert_eq!(
            normalized_form_words(d, &u, &v, &mut m1),
            normalized_form_words_left(d, &u, &v, &mut m2)
        );
    }

    #[test]
    fn subspace_operations(vs in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..4),
                           x in prop::collection::vec(-3i64..=3, 4)) {
        let to_q = |v: &Vec<i64>| v.iter().map(|&c| QScalar::from_int(c)).collect::<Vec<_>>();
        let gens: Vec<Vec<QScalar>> = vs.iter().map(to_q).collect();
        let s = Subspace::spanned_by(4, &gens);
        prop_assert!(s.dim() <= gens.len());
        for g in &gens {
            prop_assert!(s.contains(g));
        }
        let x = to_q(&x);
        let r = s.reduce(&x);
        prop_assert_eq!(s.reduce(&r), r.clone());
        prop_assert_eq!(s.project(&x).len(), 4 - s.dim());
        // x - reduce(x) lies in the subspace
        let diff: Vec<QScalar> = x.iter().zip(&r).map(|(a, b)| a - b).collect();
        prop_assert!(s.contains(&diff));
    }

    #[test]
    fn series_division_inverts_multiplication(a in prop::collection::vec(-3i64..=3, 6),
                                              b in prop::collection::vec(-3i64..=3, 5)) {
        let anchor = Weight::from_coroots(vec![0, 0]);
        let depth = 3;
        let offsets = borcherds::freesuper::roots_up_to_height(2, depth);
        let build = |cs: &[i64], unit: bool| {
            let mut m = BTreeMap::new();
            for (k, beta) in offsets.iter().enumerate() {
                let c = if beta.is_zero() && unit { 1 } else { *cs.get(k).unwrap_or(&0) };
                m.insert(beta.clone(), c);
            }
            CharacterSeries::from_dims(anchor.clone(), depth, &m)
        };
        let x = build(&a, false);
        let y = build(&b, true);
        prop_assert_eq!(x.mul(&y).div(&y).unwrap(), x.clone());
        prop_assert_eq!(x.mul(&y), y.mul(&x));
    }
}

struct ModuleCase {
    u: UAlgebra,
    verma: VermaSlice,
}

fn module_cases() -> &'static [ModuleCase] {
    static CASES: OnceLock<Vec<ModuleCase>> = OnceLock::new();
    CASES.get_or_init(|| {
        [(0usize, vec![1, 0]), (1, vec![2, 1]), (2, vec![1, 1])]
            .into_iter()
            .map(|(k, lambda)| {
                let space = Arc::new(PlusSpace::new(data()[k].clone()));
                let verma = VermaSlice::build(space.clone(), Weight::from_coroots(lambda), 3).unwrap();
                ModuleCase { u: UAlgebra::new(space), verma }
            })
            .collect()
    })
}

fn act_on(m: &VermaSlice, u: &UElement, v: &ModuleVector) -> Option<ModuleVector> {
    let mut out = ModuleVector::new();
    for (beta, coords) in v {
        for (gamma, w) in m.act(u, beta, coords)? {
            let slot = out.entry(gamma).or_insert_with(|| vec![QScalar::zero(); w.len()]);
            for (x, y) in slot.iter_mut().zip(&w) {
                *x += y;
            }
        }
    }
    out.retain(|_, c| c.iter().any(|x| !x.is_zero()));
    Some(out)
}

fn monomial(rank: usize, minus: &[(usize, u32)], k: &[i64], plus: &[(usize, u32)], d: &CartanDatum) -> UElement {
    let mut m = UMonomial::one(rank);
    m.minus = to_word(d, minus);
    m.k = k.to_vec();
    m.plus = to_word(d, plus);
    UElement::monomial(m, QScalar::one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    /// The action on a Verma slice is multiplicative: x(y v) = (xy) v.
    #[test]
    fn module_action_is_multiplicative(
        case in 0usize..3,
        xm in word(1), xk in prop::collection::vec(-1i64..=1, 2), xp in word(2),
        ym in word(1), yk in prop::collection::vec(-1i64..=1, 2), yp in word(2),
        weight_pick in any::<prop::sample::Index>(),
        coeffs in prop::collection::vec(-2i64..=2, 8),
    ) {
        let ModuleCase { u, verma } = &module_cases()[case];
        let d = u.datum();
        let x = monomial(2, &xm, &xk, &xp, d);
        let y = monomial(2, &ym, &yk, &yp, d);
        let offsets: Vec<RootWeight> = verma.offsets().iter().filter(|b| verma.dim(b) > 0).cloned().collect();
        let beta = offsets[weight_pick.index(offsets.len())].clone();
        let v: Vec<QScalar> = (0..verma.dim(&beta)).map(|k| QScalar::from_int(coeffs[k % coeffs.len()])).collect();
        let start: ModuleVector = [(beta.clone(), v)].into_iter().collect();
        let xy = u.mul(&x, &y).value;
        let two_steps = act_on(verma, &y, &start).and_then(|w| act_on(verma, &x, &w));
        let one_step = act_on(verma, &xy, &start);
        if let (Some(a), Some(b)) = (two_steps, one_step) {
            prop_assert_eq!(a, b);
        }
    }
}
