//! Elements of the sphere algebra as canonical linear combinations of
//! normal words.

use super::rewrite::{normal_form_terms, RewriteBudget};
use super::word::{Generator, Word};
use super::AlgebraError;
use crate::qcoeff::HalfLaurent;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An element of the coordinate algebra of the quantum sphere of dimension
/// `2n+1`, stored as a map from normal-form words to nonzero coefficients.
///
/// Two elements are equal as algebra elements exactly when their term maps
/// coincide. Values are immutable once built; all operations return fresh
/// polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly {
    n: u8,
    terms: BTreeMap<Word, HalfLaurent>,
}

impl NCPoly {
    pub fn zero(n: u8) -> Self {
        NCPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u8) -> Self {
        NCPoly::scalar(n, HalfLaurent::one())
    }

    pub fn scalar(n: u8, c: HalfLaurent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Word::empty(), c);
        }
        NCPoly { n, terms }
    }

    /// The generator `z_index`, or `z_index^*` when `starred`.
    pub fn generator(n: u8, index: u8, starred: bool) -> Self {
        assert!(index <= n, "generator index {index} exceeds ambient bound {n}");
        let mut terms = BTreeMap::new();
        terms.insert(
            Word::from_letters(&[Generator { index, starred }]),
            HalfLaurent::one(),
        );
        NCPoly { n, terms }
    }

    /// Builds `coeff * letters` and reduces it to normal form.
    pub fn from_word(
        n: u8,
        letters: &[Generator],
        coeff: HalfLaurent,
        budget: RewriteBudget,
    ) -> Result<Self, AlgebraError> {
        assert!(letters.iter().all(|g| g.index <= n));
        let terms = normal_form_terms(n, vec![(letters.to_vec(), coeff)], budget)?;
        Ok(NCPoly { n, terms })
    }

    /// Ambient bound: generators are `z_0 ... z_n`.
    pub fn ambient(&self) -> u8 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Word::empty())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &HalfLaurent)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Re-runs the rewrite engine over the stored terms. A fixpoint for
    /// canonical values; exposed so idempotence is testable and so raw
    /// word data can be routed through the same path.
    pub fn normal_form(&self, budget: RewriteBudget) -> Result<NCPoly, AlgebraError> {
        let work = self
            .terms
            .iter()
            .map(|(w, c)| (w.letters().to_vec(), c.clone()))
            .collect();
        let terms = normal_form_terms(self.n, work, budget)?;
        Ok(NCPoly { n: self.n, terms })
    }

    /// Product: concatenate words pairwise, then reduce to normal form.
    pub fn mul(&self, rhs: &NCPoly, budget: RewriteBudget) -> Result<NCPoly, AlgebraError> {
        if self.n != rhs.n {
            return Err(AlgebraError::AmbientMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        let mut work = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut letters = Vec::with_capacity(w1.len() + w2.len());
                letters.extend_from_slice(w1.letters());
                letters.extend_from_slice(w2.letters());
                work.push((letters, c1 * c2));
            }
        }
        let terms = normal_form_terms(self.n, work, budget)?;
        Ok(NCPoly { n: self.n, terms })
    }

    /// The *-involution: reverses each word, toggles stars, leaves
    /// coefficients fixed (they are real functions of `q`).
    ///
    /// The adjoint of a normal word is again normal — both blocks reverse
    /// into the other block with the right monotonicity, and a normal word
    /// never contains both `z_n` and `z_n^*` — so no rewriting happens.
    pub fn adjoint(&self) -> NCPoly {
        let terms: BTreeMap<Word, HalfLaurent> = self
            .terms
            .iter()
            .map(|(w, c)| (w.adjoint(), c.clone()))
            .collect();
        debug_assert!(terms.keys().all(|w| w.is_normal(self.n)));
        NCPoly { n: self.n, terms }
    }

    pub fn scale(&self, c: &HalfLaurent) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero(self.n);
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, coeff)| (w.clone(), coeff * c))
            .collect();
        NCPoly { n: self.n, terms }
    }

    /// Weight of the circle action: `Some(d)` when every word has degree
    /// `d` (the zero element counts as degree 0), `None` when mixed.
    pub fn u1_degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(|w| w.u1_degree());
        let Some(first) = degrees.next() else {
            return Some(0);
        };
        degrees.all(|d| d == first).then_some(first)
    }

    /// Whether every word's degree vanishes mod `r`, i.e. the element is
    /// fixed by the order-`r` cyclic subgroup of the circle action.
    pub fn zr_invariant(&self, r: u32) -> bool {
        assert!(r >= 1);
        self.terms
            .keys()
            .all(|w| w.u1_degree().rem_euclid(i64::from(r)) == 0)
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        assert_eq!(self.n, rhs.n, "ambient bound mismatch");
        let mut terms = self.terms.clone();
        for (w, c) in &rhs.terms {
            match terms.entry(w.clone()) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        NCPoly { n: self.n, terms }
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self + &(-rhs)
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), -c))
            .collect();
        NCPoly {
            n: self.n,
            terms,
        }
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let coeff = c.to_string();
            let simple = !coeff.contains(" + ") && !coeff.contains(" - ");
            if w.is_empty() {
                if simple {
                    write!(f, "{coeff}")?;
                } else {
                    write!(f, "({coeff})")?;
                }
            } else if c.is_one() {
                write!(f, "{w}")?;
            } else if simple {
                write!(f, "{coeff} * {w}")?;
            } else {
                write!(f, "({coeff}) * {w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
