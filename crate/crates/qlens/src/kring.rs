//! The truncated polynomial ring `Z[u]/u^{n+1}`, which is `K_0` of quantum
//! projective `n`-space once `u` is the Euler class `1 - [L_{-1}]` of the
//! tautological line bundle.
//!
//! Line-bundle classes, Euler classes of their powers, the pairings with the
//! Fredholm-module classes `mu_k`, and the binomial change of basis between
//! the projection classes `[P_{-j}]` and the powers `u^j` all live here.

use crate::qcoeff::binomial;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KRingError {
    #[error("degree bound mismatch: {left} vs {right}")]
    BoundMismatch { left: usize, right: usize },
    #[error("pairing index {k} out of range 0..={n}")]
    PairingOutOfRange { k: usize, n: usize },
}

/// Element of `Z[u]/u^{n+1}`: the coefficient vector of `1, u, ..., u^n`.
/// All arithmetic discards terms of degree above `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncPoly {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl TruncPoly {
    pub fn zero(n: usize) -> Self {
        TruncPoly {
            n,
            coeffs: vec![BigInt::zero(); n + 1],
        }
    }

    pub fn one(n: usize) -> Self {
        let mut p = TruncPoly::zero(n);
        p.coeffs[0] = BigInt::one();
        p
    }

    /// The generator `u`.
    pub fn u(n: usize) -> Self {
        TruncPoly::u_pow(n, 1)
    }

    /// `u^k`, which is zero when `k > n`.
    pub fn u_pow(n: usize, k: usize) -> Self {
        let mut p = TruncPoly::zero(n);
        if k <= n {
            p.coeffs[k] = BigInt::one();
        }
        p
    }

    pub fn from_coeffs(n: usize, coeffs: &[BigInt]) -> Self {
        let mut p = TruncPoly::zero(n);
        for (k, c) in coeffs.iter().enumerate().take(n + 1) {
            p.coeffs[k] = c.clone();
        }
        p
    }

    pub fn bound(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &TruncPoly) -> Result<TruncPoly, KRingError> {
        self.check(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncPoly { n: self.n, coeffs })
    }

    pub fn sub(&self, rhs: &TruncPoly) -> Result<TruncPoly, KRingError> {
        self.check(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TruncPoly { n: self.n, coeffs })
    }

    pub fn scale(&self, c: &BigInt) -> TruncPoly {
        TruncPoly {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> TruncPoly {
        let mut acc = TruncPoly::one(self.n);
        for _ in 0..e {
            acc = trunc_mul(&acc, self).expect("bounds agree");
        }
        acc
    }

    fn check(&self, rhs: &TruncPoly) -> Result<(), KRingError> {
        if self.n != rhs.n {
            Err(KRingError::BoundMismatch {
                left: self.n,
                right: rhs.n,
            })
        } else {
            Ok(())
        }
    }
}

/// Product in `Z[u]/u^{n+1}`.
pub fn trunc_mul(a: &TruncPoly, b: &TruncPoly) -> Result<TruncPoly, KRingError> {
    a.check(b)?;
    let n = a.n;
    let mut out = TruncPoly::zero(n);
    for i in 0..=n {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..=n - i {
            out.coeffs[i + j] += &a.coeffs[i] * &b.coeffs[j];
        }
    }
    Ok(out)
}

/// K-theory class of the line bundle of degree `N` on quantum projective
/// `n`-space: `[L_{-m}] = (1-u)^m` for `m >= 0`, and for positive degree
/// the truncated inverse `(1-u)^{-N}`, whose `u^k` coefficient is
/// `C(N+k-1, k)`.
pub fn line_bundle_class(n: usize, degree: i64) -> TruncPoly {
    let mut p = TruncPoly::zero(n);
    if degree <= 0 {
        let m = degree.unsigned_abs();
        for (k, c) in p.coeffs.iter_mut().enumerate() {
            *c = binomial(m, k as u64);
            if k % 2 == 1 {
                *c = -c.clone();
            }
        }
    } else {
        let m = degree as u64;
        for (k, c) in p.coeffs.iter_mut().enumerate() {
            *c = binomial(m + k as u64 - 1, k as u64);
        }
    }
    p
}

/// Euler class of the line bundle of degree `-r`:
/// `1 - (1-u)^r = sum_{j=1}^{min(r,n)} (-1)^{j+1} C(r,j) u^j`.
pub fn euler_class(n: usize, r: u64) -> TruncPoly {
    assert!(r >= 1, "euler_class requires r >= 1");
    let mut p = TruncPoly::zero(n);
    for j in 1..=n.min(r as usize) {
        let mut c = binomial(r, j as u64);
        if j % 2 == 0 {
            c = -c;
        }
        p.coeffs[j] = c;
    }
    p
}

/// Pairing with the K-homology class `mu_k`: on `u^j` it is `(-1)^j` for
/// `j = k` and `0` otherwise, so on a general element it reads off
/// `(-1)^k` times the `u^k` coefficient.
pub fn pair_mu(k: usize, x: &TruncPoly) -> Result<BigInt, KRingError> {
    if k > x.n {
        return Err(KRingError::PairingOutOfRange { k, n: x.n });
    }
    let c = x.coeffs[k].clone();
    Ok(if k.is_multiple_of(2) { c } else { -c })
}

/// The matrix of pairings `M_ij = <mu_i, [P_{-j}]> = C(j, i)` together with
/// its exact integer inverse `(M^{-1})_ij = (-1)^{i+j} C(j, i)`.
#[derive(Clone, Debug)]
pub struct PairingMatrix {
    n: usize,
    m: Vec<Vec<BigInt>>,
    m_inv: Vec<Vec<BigInt>>,
}

impl PairingMatrix {
    pub fn new(n: usize) -> Self {
        let m: Vec<Vec<BigInt>> = (0..=n)
            .map(|i| (0..=n).map(|j| binomial(j as u64, i as u64)).collect())
            .collect();
        let m_inv: Vec<Vec<BigInt>> = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| {
                        let b = binomial(j as u64, i as u64);
                        if (i + j) % 2 == 0 {
                            b
                        } else {
                            -b
                        }
                    })
                    .collect()
            })
            .collect();
        let pm = PairingMatrix { n, m, m_inv };
        debug_assert!(pm.inverse_checks_out());
        pm
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.m[i][j]
    }

    pub fn inv_entry(&self, i: usize, j: usize) -> &BigInt {
        &self.m_inv[i][j]
    }

    pub fn inverse_checks_out(&self) -> bool {
        for i in 0..=self.n {
            for j in 0..=self.n {
                let s: BigInt = (0..=self.n).map(|k| &self.m[i][k] * &self.m_inv[k][j]).sum();
                let expected = if i == j { BigInt::one() } else { BigInt::zero() };
                if s != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Coordinates in the `u^j` basis of the element with coordinates `a`
    /// in the `[P_{-j}]` basis: since `<mu_i, x> = (-1)^i c_i` on the `u`
    /// side and `(M a)_i` on the projection side, `c_i = (-1)^i (M a)_i`.
    pub fn p_to_u(&self, a: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(a.len(), self.n + 1);
        (0..=self.n)
            .map(|i| {
                let s: BigInt = (0..=self.n).map(|j| &self.m[i][j] * &a[j]).sum();
                if i % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .collect()
    }

    /// Inverse of [`PairingMatrix::p_to_u`].
    pub fn u_to_p(&self, c: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(c.len(), self.n + 1);
        (0..=self.n)
            .map(|i| {
                (0..=self.n)
                    .map(|j| {
                        let signed = if j % 2 == 0 { c[j].clone() } else { -c[j].clone() };
                        &self.m_inv[i][j] * signed
                    })
                    .sum()
            })
            .collect()
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "u")?,
                (1, false) => write!(f, "{mag}u")?,
                (_, true) => write!(f, "u^{k}")?,
                (_, false) => write!(f, "{mag}u^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
