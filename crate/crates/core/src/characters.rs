//! The character formula for `V(λ)`: correction sets over imaginary simple
//! roots orthogonal to `λ`, the Weyl group alternating sum, and division by
//! the `λ = 0` numerator.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::cartan::{CartanDatum, RootWeight, Weight};
use crate::error::{Error, Result};
use crate::scalar::{euler_phi_coeffs, QScalar};

/// `Σ coeffs(β) e^{anchor - β}`, truncated at `ht β <= depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSeries {
    pub anchor: Weight,
    pub depth: i64,
    coeffs: BTreeMap<RootWeight, QScalar>,
}

impl CharacterSeries {
    pub fn zero(anchor: Weight, depth: i64) -> Self {
        CharacterSeries { anchor, depth, coeffs: BTreeMap::new() }
    }

    pub fn one(anchor: Weight, depth: i64) -> Self {
        let mut s = Self::zero(anchor.clone(), depth);
        s.add_term(RootWeight::zero(anchor.anchor.len()), QScalar::one());
        s
    }

    pub fn from_dims(anchor: Weight, depth: i64, dims: &BTreeMap<RootWeight, i64>) -> Self {
        let mut s = Self::zero(anchor, depth);
        for (b, &d) in dims {
            s.add_term(b.clone(), QScalar::from_int(d));
        }
        s
    }

    /// Adds `c e^{anchor - β}`; terms beyond the depth are dropped.
    pub fn add_term(&mut self, beta: RootWeight, c: QScalar) {
        if c.is_zero() || beta.height() > self.depth {
            return;
        }
        assert!(beta.is_nonnegative(), "offset {beta} outside the positive cone");
        crate::freesuper::insert_term(&mut self.coeffs, beta, c);
    }

    pub fn coeff(&self, beta: &RootWeight) -> QScalar {
        self.coeffs.get(beta).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RootWeight, &QScalar)> {
        self.coeffs.iter()
    }

    /// Integer coefficients, if all are integers.
    pub fn integer_coeffs(&self) -> Option<BTreeMap<RootWeight, i64>> {
        self.coeffs
            .iter()
            .map(|(b, c)| {
                let n = c.as_integer()?;
                i64::try_from(n).ok().map(|n| (b.clone(), n))
            })
            .collect()
    }

    pub fn mul(&self, other: &CharacterSeries) -> CharacterSeries {
        let depth = self.depth.min(other.depth);
        let mut out = Self::zero(self.anchor.plus(&other.anchor), depth);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if a.height() + b.height() <= depth {
                    out.add_term(a + b, x * y);
                }
            }
        }
        out
    }

    /// `self / other`, anchored at the difference of the anchors.
    pub fn div(&self, other: &CharacterSeries) -> Result<CharacterSeries> {
        let rank = self.anchor.anchor.len();
        let zero = RootWeight::zero(rank);
        let c0 = other.coeff(&zero);
        if c0.is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let inv = c0.recip();
        let depth = self.depth.min(other.depth);
        let anchor = Weight {
            anchor: self.anchor.anchor.iter().zip(&other.anchor.anchor).map(|(a, b)| a - b).collect(),
            offset: &self.anchor.offset - &other.anchor.offset,
        };
        let mut out = Self::zero(anchor, depth);
        for beta in crate::freesuper::roots_up_to_height(rank, depth) {
            let mut acc = self.coeff(&beta);
            for (g, y) in &other.coeffs {
                if g.is_zero() || !g.le(&beta) {
                    continue;
                }
                let x = out.coeff(&(&beta - g));
                if !x.is_zero() {
                    acc -= &(&x * y);
                }
            }
            out.add_term(beta, &acc * &inv);
        }
        Ok(out)
    }

    /// The same series cut at a smaller depth.
    pub fn truncated(&self, depth: i64) -> CharacterSeries {
        let mut out = Self::zero(self.anchor.clone(), depth.min(self.depth));
        for (b, c) in &self.coeffs {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    /// Rows `β : coefficient`, sorted by height then lexicographically.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (b, c) in &self.coeffs {
            let _ = writeln!(out, "{} : {}", render_offset(b), c);
        }
        out
    }
}

/// An offset as an integer vector.
pub fn render_offset(beta: &RootWeight) -> String {
    let parts: Vec<String> = beta.0.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Evaluates the coefficient `c(μ)` attached to an odd isotropic index.
pub type OddIsotropicHook<'a> = &'a dyn Fn(&CartanDatum, &Weight) -> QScalar;

/// One element of a correction set: `Σ support[i] α_i` with its sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionTerm {
    pub support: BTreeMap<usize, i64>,
    pub total: RootWeight,
    pub sign: QScalar,
}

/// Imaginary indices of the given parity with `(α_i, λ) = 0`.
fn candidates(datum: &CartanDatum, lambda: &Weight, parity: u8) -> Vec<usize> {
    (0..datum.rank())
        .filter(|&i| datum.is_imaginary(i) && datum.parity(i) == parity && datum.coroot(lambda, i) == 0)
        .collect()
}

/// Pairwise orthogonal subsets, including the empty one.
fn orthogonal_subsets(datum: &CartanDatum, idx: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &i in idx {
        let mut more = Vec::new();
        for s in &out {
            if s.iter().all(|&j| datum.form_roots(i, j) == 0) {
                let mut t = s.clone();
                t.push(i);
                more.push(t);
            }
        }
        out.extend(more);
    }
    out
}

/// Positive coefficient vectors on `support` with total at most `budget`.
fn positive_coefficients(support: &[usize], budget: i64) -> Vec<Vec<i64>> {
    if support.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=budget {
        for mut rest in positive_coefficients(&support[1..], budget - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn enumerate(
    datum: &CartanDatum,
    lambda: &Weight,
    depth: i64,
    parity: u8,
    hook: Option<OddIsotropicHook<'_>>,
) -> Result<Vec<CorrectionTerm>> {
    let phi = euler_phi_coeffs(depth.max(0) as usize);
    let mut out = Vec::new();
    for subset in orthogonal_subsets(datum, &candidates(datum, lambda, parity)) {
        for coeffs in positive_coefficients(&subset, depth) {
            let mut total = RootWeight::zero(datum.rank());
            let mut sign = QScalar::one();
            for (&i, &a) in subset.iter().zip(&coeffs) {
                total = total.plus_simple(i, a);
                let f = if datum.a(i, i) != 0 {
                    QScalar::from_int(-1)
                } else if parity == 0 {
                    QScalar::from_int(phi[a as usize])
                } else {
                    let h = hook.ok_or(Error::OddIsotropicUndefined(i))?;
                    h(datum, &lambda.minus_root(&RootWeight::simple(datum.rank(), i).scaled(a)))
                };
                sign = &sign * &f;
            }
            out.push(CorrectionTerm {
                support: subset.iter().copied().zip(coeffs.iter().copied()).collect(),
                total,
                sign,
            });
        }
    }
    out.sort_by(|a, b| a.total.cmp(&b.total));
    Ok(out)
}

/// Sums of mutually orthogonal even imaginary simple roots orthogonal to `λ`.
pub fn enumerate_even(datum: &CartanDatum, lambda: &Weight, depth: i64) -> Vec<CorrectionTerm> {
    enumerate(datum, lambda, depth, 0, None).expect("no hook needed for even indices")
}

/// Sums of mutually orthogonal odd imaginary simple roots orthogonal to `λ`.
pub fn enumerate_odd(
    datum: &CartanDatum,
    lambda: &Weight,
    depth: i64,
    hook: Option<OddIsotropicHook<'_>>,
) -> Result<Vec<CorrectionTerm>> {
    enumerate(datum, lambda, depth, 1, hook)
}

/// `S_λ = Σ ε(α)ε(β) e^{-(α+β)}` over even/odd pairs with `(α, β) = 0`, anchored at 0.
pub fn build_correction(
    datum: &CartanDatum,
    lambda: &Weight,
    depth: i64,
    hook: Option<OddIsotropicHook<'_>>,
) -> Result<CharacterSeries> {
    let rank = datum.rank();
    let even = enumerate_even(datum, lambda, depth);
    let odd = enumerate_odd(datum, lambda, depth, hook)?;
    let mut s = CharacterSeries::zero(Weight::from_coroots(vec![0; rank]), depth);
    for a in &even {
        for b in &odd {
            if datum.form_root_lattice(&a.total, &b.total) == 0 {
                s.add_term(&a.total + &b.total, &a.sign * &b.sign);
            }
        }
    }
    Ok(s)
}

/// `Σ_w ε(w) e^{w(λ+ρ) - (λ+ρ)} w(S_λ)`, anchored at `λ + ρ`.
pub fn numerator(
    datum: &CartanDatum,
    lambda: &Weight,
    depth: i64,
    hook: Option<OddIsotropicHook<'_>>,
) -> Result<CharacterSeries> {
    let s = build_correction(datum, lambda, depth, hook)?;
    let top = lambda.plus(&datum.rho());
    let mut out = CharacterSeries::zero(top.clone(), depth);
    for pt in datum.weyl_orbit_bfs(&top, depth) {
        let shift = &pt.weight.offset - &top.offset;
        for (beta, c) in s.terms() {
            let mut w_beta = beta.clone();
            for &i in &pt.word {
                w_beta = datum.reflect_root(i, &w_beta);
            }
            out.add_term(&shift + &w_beta, c.mul_signed_q_pow(pt.sign, 0));
        }
    }
    Ok(out)
}

/// The `λ = 0` numerator, which plays the role of the Weyl denominator.
pub fn denominator(datum: &CartanDatum, depth: i64, hook: Option<OddIsotropicHook<'_>>) -> Result<CharacterSeries> {
    numerator(datum, &Weight::from_coroots(vec![0; datum.rank()]), depth, hook)
}

/// `ch V(λ)` from the character formula, anchored at `λ`.
pub fn formula_character(
    datum: &CartanDatum,
    lambda: &Weight,
    depth: i64,
    hook: Option<OddIsotropicHook<'_>>,
) -> Result<CharacterSeries> {
    if !datum.is_dominant(lambda) {
        return Err(Error::Precondition(format!("weight {:?} is not dominant", datum.coroots(lambda))));
    }
    let n = numerator(datum, lambda, depth, hook)?;
    let d = denominator(datum, depth, hook)?;
    if !d.coeff(&RootWeight::zero(datum.rank())).is_one() {
        return Err(Error::NonInvertibleSeries);
    }
    n.div(&d)
}

/// Coefficients where two series disagree, as `(β, left, right)`.
pub fn diff(a: &CharacterSeries, b: &CharacterSeries) -> Vec<(RootWeight, QScalar, QScalar)> {
    let mut keys: Vec<&RootWeight> = a.coeffs.keys().chain(b.coeffs.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter(|k| a.coeff(k) != b.coeff(k))
        .map(|k| (k.clone(), a.coeff(k), b.coeff(k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::from_coroots(v.to_vec())
    }

    #[test]
    fn a1_formula() {
        let d = CartanDatum::new(vec![vec![2]], vec![0], vec![1]).unwrap();
        for m in 0..4 {
            let ch = formula_character(&d, &w(&[m]), 5, None).unwrap();
            let expected: BTreeMap<RootWeight, i64> = (0..=m.min(5)).map(|k| (RootWeight(vec![k]), 1)).collect();
            assert_eq!(ch.integer_coeffs().unwrap(), expected);
        }
        let den = denominator(&d, 5, None).unwrap();
        let expected: BTreeMap<RootWeight, i64> = [(RootWeight(vec![0]), 1), (RootWeight(vec![1]), -1)].into();
        assert_eq!(den.integer_coeffs().unwrap(), expected);
    }

    #[test]
    fn correction_sets() {
        let km = CartanDatum::new(vec![vec![2, -1], vec![-1, 2]], vec![0, 0], vec![1, 1]).unwrap();
        let e = enumerate_even(&km, &w(&[1, 1]), 4);
        assert_eq!(e.len(), 1);
        assert!(e[0].total.is_zero() && e[0].sign.is_one());

        let iso = CartanDatum::new(vec![vec![2, -2], vec![-1, 0]], vec![1, 0], vec![1, 2]).unwrap();
        let s = build_correction(&iso, &w(&[2, 0]), 6, None).unwrap();
        let phi = euler_phi_coeffs(6);
        for n in 0..=6i64 {
            assert_eq!(s.coeff(&RootWeight(vec![0, n])), QScalar::from_int(phi[n as usize]));
        }
        let s = build_correction(&iso, &w(&[2, 1]), 6, None).unwrap();
        assert_eq!(s, CharacterSeries::one(w(&[0, 0]), 6));

        // non-isotropic even imaginary: every a·α_i with sign -1
        let hyp = CartanDatum::new(vec![vec![2, -1], vec![-1, -2]], vec![0, 0], vec![1, 1]).unwrap();
        let e = enumerate_even(&hyp, &w(&[1, 0]), 3);
        let signs: Vec<(i64, i64)> =
            e.iter().map(|t| (t.total.0[1], i64::try_from(t.sign.as_integer().unwrap()).unwrap())).collect();
        assert_eq!(signs, vec![(0, 1), (1, -1), (2, -1), (3, -1)]);

        // two orthogonal isotropic indices combine; non-orthogonal ones do not
        let two = CartanDatum::new(vec![vec![0, 0], vec![0, 0]], vec![0, 0], vec![1, 1]).unwrap();
        assert_eq!(enumerate_even(&two, &w(&[0, 0]), 2).len(), 1 + 2 + 2 + 1);
        let linked = CartanDatum::new(vec![vec![0, -1], vec![-1, 0]], vec![0, 0], vec![1, 1]).unwrap();
        assert_eq!(enumerate_even(&linked, &w(&[0, 0]), 2).len(), 1 + 2 + 2);
    }

    #[test]
    fn odd_isotropic_hook() {
        let d = CartanDatum::new(vec![vec![2, -2], vec![-2, 0]], vec![0, 1], vec![1, 1]).unwrap();
        let lam = w(&[1, 0]);
        assert_eq!(enumerate_odd(&d, &lam, 3, None), Err(Error::OddIsotropicUndefined(1)));
        let hook = |_: &CartanDatum, _: &Weight| QScalar::from_int(-1);
        let o = enumerate_odd(&d, &lam, 3, Some(&hook)).unwrap();
        assert_eq!(o.len(), 4);
        assert!(enumerate_odd(&d, &w(&[1, 1]), 3, None).unwrap().len() == 1);
    }

    #[test]
    fn series_division_round_trip() {
        let a = w(&[0, 0]);
        let mut x = CharacterSeries::one(a.clone(), 4);
        x.add_term(RootWeight(vec![1, 0]), QScalar::from_int(-1));
        x.add_term(RootWeight(vec![1, 1]), QScalar::from_int(2));
        let mut y = CharacterSeries::one(a, 4);
        y.add_term(RootWeight(vec![0, 2]), QScalar::from_int(3));
        let z = x.mul(&y);
        assert_eq!(z.div(&y).unwrap(), x);
    }
}
