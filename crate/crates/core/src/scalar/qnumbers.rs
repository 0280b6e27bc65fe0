//! Super quantum integers, factorials and binomials.
//!
//! For an index with symmetrizer `d` and parity `p`, write `q_i = q^d` and
//! `s = (-1)^p`. The super integer is `[n]_i = ((s q_i)^n - q_i^{-n}) / (s q_i - q_i^{-1})`.

use super::{LaurentPoly, QScalar};

fn sign_pow(parity: u8, n: i64) -> i64 {
    if parity % 2 == 1 && n.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

/// `(s q_i)^n - q_i^{-n}` as a Laurent polynomial.
fn twisted_difference(n: i64, d: i64, parity: u8) -> LaurentPoly {
    &LaurentPoly::signed_q_pow(sign_pow(parity, n), d * n) - &LaurentPoly::q_pow(-d * n)
}

/// The super Gaussian binomial `[a, t]_i` as a Laurent polynomial.
///
/// Computed from the product formula by exact division.
pub fn super_qbinom_poly(a: i64, t: u32, d: i64, parity: u8) -> LaurentPoly {
    let mut num = LaurentPoly::one();
    for s in 0..t as i64 {
        num = &num * &twisted_difference(a - s, d, parity);
    }
    if num.is_zero() {
        return num;
    }
    let mut den = LaurentPoly::one();
    for s in 1..=t as i64 {
        den = &den * &twisted_difference(s, d, parity);
    }
    num.div_exact(&den)
        .expect("super q-binomial is a Laurent polynomial")
}

/// The super Gaussian binomial `[a, t]_i`.
pub fn super_qbinom(a: i64, t: u32, d: i64, parity: u8) -> QScalar {
    QScalar::from_poly(super_qbinom_poly(a, t, d, parity))
}

/// The super quantum integer `[n]_i`.
pub fn super_qint(n: u32, d: i64, parity: u8) -> QScalar {
    super_qbinom(n as i64, 1, d, parity)
}

/// The super quantum factorial `[n]_i^! = [1]_i [2]_i ... [n]_i`.
pub fn super_qfact(n: u32, d: i64, parity: u8) -> QScalar {
    let mut acc = LaurentPoly::one();
    for s in 1..=n {
        acc = &acc * &super_qbinom_poly(s as i64, 1, d, parity);
    }
    QScalar::from_poly(acc)
}

/// Coefficients `phi(0..=n)` of the product `(1 - x)(1 - x^2)(1 - x^3)...`.
pub fn euler_phi_coeffs(n: usize) -> Vec<i64> {
    let mut coeffs = vec![0i64; n + 1];
    coeffs[0] = 1;
    for k in 1..=n {
        // multiply by (1 - x^k), truncated at degree n
        for j in (k..=n).rev() {
            coeffs[j] -= coeffs[j - k];
        }
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms.iter().copied())
    }

    #[test]
    fn binomial_examples() {
        assert!(super_qbinom(3, 5, 1, 0).is_zero());
        assert_eq!(
            super_qbinom(4, 2, 1, 0),
            QScalar::from_poly(lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]))
        );
        assert_eq!(
            super_qbinom(4, 2, 1, 0).to_string(),
            "q^-4 + q^-2 + 2 + q^2 + q^4"
        );
        for d in 1..3 {
            for p in 0..2 {
                assert!(super_qbinom(7, 0, d, p).is_one());
                assert!(super_qbinom(-3, 0, d, p).is_one());
            }
        }
    }

    #[test]
    fn integer_examples() {
        assert!(super_qint(1, 2, 1).is_one());
        assert_eq!(super_qint(2, 1, 0), QScalar::from_poly(lp(&[(1, 1), (-1, 1)])));
        // odd parity: [2] = (q^2 - q^-2)/(-q - q^-1) = q^-1 - q
        assert_eq!(super_qint(2, 1, 1), QScalar::from_poly(lp(&[(-1, 1), (1, -1)])));
        assert!(super_qfact(0, 1, 0).is_one());
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_phi_coeffs(0), vec![1]);
        assert_eq!(euler_phi_coeffs(2), vec![1, -1, -1]);
        assert_eq!(euler_phi_coeffs(7), vec![1, -1, -1, 0, 0, 1, 0, 1]);
    }

    #[test]
    fn euler_matches_pentagonal_numbers() {
        // independent route: the pentagonal number theorem
        let n = 60;
        let mut expected = vec![0i64; n + 1];
        for k in -10i64..=10 {
            let g = k * (3 * k - 1) / 2;
            if (0..=n as i64).contains(&g) {
                expected[g as usize] += if k.rem_euclid(2) == 0 { 1 } else { -1 };
            }
        }
        assert_eq!(euler_phi_coeffs(n), expected);
    }
}
