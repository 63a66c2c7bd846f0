//! Exact scalar arithmetic: arbitrary-precision rationals and Laurent
//! polynomials in a formal variable `s` with `s^2 = q`.
//!
//! Storing exponents of `s` rather than `q` keeps every half-integer power
//! of `q` on an integer grid, so the coefficients appearing in the quantum
//! sphere frames (which carry factors like `q^{-1/2}`) are exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Exact binomial coefficient `C(n, k)` as a big integer; zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// A Laurent polynomial in `s` (so `s^e` means `q^{e/2}`) with rational
/// coefficients.
///
/// Invariant: no stored coefficient is zero. Equality of values is equality
/// of the underlying term maps.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        HalfLaurent::default()
    }

    pub fn one() -> Self {
        HalfLaurent::s_pow(0)
    }

    /// The monomial `s^e`.
    pub fn s_pow(e: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(e, Rational::one());
        HalfLaurent { terms }
    }

    /// The monomial `q^p = s^{2p}` for an integer power `p`.
    pub fn q_pow(p: i64) -> Self {
        HalfLaurent::s_pow(2 * p)
    }

    pub fn from_rational(c: Rational) -> Self {
        let mut h = HalfLaurent::zero();
        if !c.is_zero() {
            h.terms.insert(0, c);
        }
        h
    }

    pub fn from_int(c: i64) -> Self {
        HalfLaurent::from_rational(Rational::from_integer(BigInt::from(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    /// Iterate over `(exponent of s, coefficient)` pairs in increasing
    /// exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Substitute `s = 1` (that is, `q = 1`), the classical limit.
    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    /// The bar involution `s -> s^{-1}` (`q -> q^{-1}`).
    pub fn bar(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        HalfLaurent { terms }
    }

    /// Exact division; returns `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &HalfLaurent) -> Option<HalfLaurent> {
        assert!(!divisor.is_zero(), "division by zero HalfLaurent");
        if self.is_zero() {
            return Some(HalfLaurent::zero());
        }
        let (&dmax, dc) = divisor.terms.iter().next_back().unwrap();
        let dmin = *divisor.terms.keys().next().unwrap();
        // An exact Laurent quotient has lowest exponent smin - dmin; needing
        // anything lower means the division is inexact.
        let floor = self.terms.keys().next().unwrap() - dmin;
        let mut rem = self.terms.clone();
        let mut quot = HalfLaurent::zero();
        while let Some((&rmax, _)) = rem.iter().next_back() {
            let rc = rem.get(&rmax).unwrap().clone();
            let ce = rmax - dmax;
            if ce < floor {
                return None;
            }
            let cc = rc / dc;
            for (e, c) in divisor.terms.iter() {
                let k = e + ce;
                let entry = rem.entry(k).or_insert_with(Rational::zero);
                *entry -= &cc * c;
                if entry.is_zero() {
                    rem.remove(&k);
                }
            }
            quot.insert_add(ce, cc);
        }
        Some(quot)
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&HalfLaurent> for HalfLaurent {
    fn add_assign(&mut self, rhs: &HalfLaurent) {
        for (e, c) in rhs.terms.iter() {
            self.insert_add(*e, c.clone());
        }
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&HalfLaurent> for HalfLaurent {
    fn sub_assign(&mut self, rhs: &HalfLaurent) {
        for (e, c) in rhs.terms.iter() {
            self.insert_add(*e, -c.clone());
        }
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect();
        HalfLaurent { terms }
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in rhs.terms.iter() {
                out.insert_add(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl MulAssign<&HalfLaurent> for HalfLaurent {
    fn mul_assign(&mut self, rhs: &HalfLaurent) {
        *self = &*self * rhs;
    }
}

/// The balanced q-integer `[m] = (q^m - q^{-m})/(q - q^{-1})`, expanded
/// exactly: for `m > 0` this is `q^{m-1} + q^{m-3} + ... + q^{-(m-1)}`,
/// and `[-m] = -[m]`.
pub fn qint(m: i64) -> HalfLaurent {
    if m < 0 {
        return -&qint(-m);
    }
    let mut out = HalfLaurent::zero();
    for t in 0..m {
        out.insert_add(2 * (m - 1 - 2 * t), Rational::one());
    }
    out
}

/// The q-factorial `[m]! = [m][m-1]...[1]`, with `[0]! = 1`.
pub fn qfact(m: u32) -> HalfLaurent {
    let mut out = HalfLaurent::one();
    for i in 1..=i64::from(m) {
        out *= &qint(i);
    }
    out
}

/// The q-multinomial `[j_0,...,j_k]! = [j_0+...+j_k]! / ([j_0]!...[j_k]!)`.
///
/// The division is carried out exactly in the Laurent ring; a nonzero
/// remainder cannot occur for valid inputs and panics as an internal
/// arithmetic bug.
pub fn qmultinomial(parts: &[u32]) -> HalfLaurent {
    let total: u32 = parts.iter().sum();
    let mut out = qfact(total);
    for &j in parts {
        out = out
            .div_exact(&qfact(j))
            .expect("q-multinomial division must be exact");
    }
    out
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one();
            match (*e, unit_coeff) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "s")?,
                (1, false) => write!(f, "{mag}*s")?,
                (_, true) => write!(f, "s^{e}")?,
                (_, false) => write!(f, "{mag}*s^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
