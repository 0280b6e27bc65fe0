use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LaurentPoly;

/// An element of the field `Q(q)` in canonical form.
///
/// The denominator has lowest exponent 0 and leading coefficient 1, and is
/// coprime to the numerator. Two equal field elements therefore have equal
/// representations, so the derived `Eq` and `Hash` are field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(e))
    }

    /// `sign * q^e`.
    pub fn signed_q_pow(sign: i64, e: i64) -> Self {
        Self::from_poly(LaurentPoly::signed_q_pow(sign, e))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        QScalar { num: p, den: LaurentPoly::one() }
    }

    /// `num / den` brought to canonical form.
    ///
    /// # Panics
    /// If `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Self::from_coprime(num, den)
        } else {
            Self::from_coprime(
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        }
    }

    /// Canonicalizes a pair already known to be coprime up to units.
    fn from_coprime(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = den.low_exp();
        let lead = den.leading_coeff();
        if shift == 0 && lead.is_one() {
            return QScalar { num, den };
        }
        let inv = lead.recip();
        QScalar {
            num: num.shift(-shift).scale(&inv),
            den: den.shift(-shift).scale(&inv),
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True if the value lies in `Q[q, q^{-1}]`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The Laurent polynomial value, if the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    /// The integer value, if the scalar is an integer constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        if !self.is_laurent() {
            return None;
        }
        if self.num.is_zero() {
            return Some(BigInt::zero());
        }
        if self.num.is_monomial() && self.num.low_exp() == 0 {
            let c = self.num.coeff(0);
            return c.is_integer().then(|| c.to_integer());
        }
        None
    }

    /// Substitutes `q -> -q^{-1}`.
    pub fn bar(&self) -> Self {
        // bar is a ring automorphism, so coprimality is preserved
        Self::from_coprime(self.num.bar(), self.den.bar())
    }

    /// Substitutes `q -> q^k` for a nonzero integer `k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::new(self.num.substitute_power(k), self.den.substitute_power(k))
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self::from_coprime(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.recip() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Multiplies by `sign * q^e` without any gcd work.
    pub fn mul_signed_q_pow(&self, sign: i64, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let num = self.num.shift(e);
        let num = if sign < 0 { -num } else { num };
        QScalar { num, den: self.den.clone() }
    }

    fn add_impl(&self, other: &QScalar) -> QScalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num + &other.num);
        }
        if self.den == other.den {
            return Self::new(&self.num + &other.num, self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&other.num * &b1);
        if num.is_zero() {
            return Self::zero();
        }
        // the sum is coprime to b1*d1 already; only g can share factors
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        Self::from_coprime(num, &(&b1 * &d1) * &g)
    }

    fn mul_impl(&self, other: &QScalar) -> QScalar {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = other.den.div_exact(&g1).unwrap();
        let c = other.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        Self::from_coprime(&a * &c, &b * &d)
    }
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for QScalar {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for QScalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, other: &QScalar) -> QScalar {
        self.add_impl(other)
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, other: &QScalar) -> QScalar {
        self.add_impl(&-other)
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, other: &QScalar) -> QScalar {
        self.mul_impl(other)
    }
}

impl Div for &QScalar {
    type Output = QScalar;
    fn div(self, other: &QScalar) -> QScalar {
        self.mul_impl(&other.recip())
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QScalar {
            type Output = QScalar;
            fn $m(self, other: QScalar) -> QScalar {
                (&self).$m(&other)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, other: &QScalar) -> QScalar {
                (&self).$m(other)
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, other: QScalar) -> QScalar {
                self.$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::ops::AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, other: &QScalar) {
        *self = self.add_impl(other);
    }
}

impl std::ops::SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, other: &QScalar) {
        *self = self.add_impl(&-other);
    }
}

impl std::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> QScalar {
        iter.fold(QScalar::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms.iter().copied())
    }

    #[test]
    fn canonical_form_is_unique() {
        // (q^2 - 1)/(q^3 - q) == 1/q
        let a = QScalar::new(lp(&[(2, 1), (0, -1)]), lp(&[(3, 1), (1, -1)]));
        assert_eq!(a, QScalar::q_pow(-1));
        // scaling numerator and denominator by 2 changes nothing
        let b = QScalar::new(lp(&[(0, 2)]), lp(&[(0, 2), (1, 2)]));
        let c = QScalar::new(lp(&[(0, 1)]), lp(&[(0, 1), (1, 1)]));
        assert_eq!(b, c);
        assert_eq!(c.to_string(), "(1)/(1 + q)");
    }

    #[test]
    fn field_operations() {
        let x = QScalar::new(lp(&[(0, 1)]), lp(&[(0, 1), (2, -1)]));
        let y = QScalar::new(lp(&[(1, 1)]), lp(&[(0, 1), (1, 1)]));
        let s = &x + &y;
        assert_eq!(&s - &y, x);
        let p = &x * &y;
        assert_eq!(&p / &y, x);
        assert!((&x - &x).is_zero());
        assert_eq!(&x * &x.recip(), QScalar::one());
    }

    #[test]
    fn bar_examples() {
        assert_eq!(QScalar::q_pow(1).bar(), QScalar::signed_q_pow(-1, -1));
        assert_eq!(QScalar::one().bar(), QScalar::one());
        let x = QScalar::from_poly(lp(&[(2, 1), (-2, 1)]));
        assert_eq!(x.bar(), x);
        assert_eq!(x.bar().to_string(), "q^-2 + q^2");
    }
}
