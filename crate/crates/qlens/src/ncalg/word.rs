//! Words in the sphere generators.

use std::cmp::Ordering;
use std::fmt;

/// One letter: a generator `z_index` or its adjoint `z_index^*`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator {
    pub index: u8,
    pub starred: bool,
}

impl Generator {
    pub fn z(index: u8) -> Self {
        Generator {
            index,
            starred: false,
        }
    }

    pub fn z_star(index: u8) -> Self {
        Generator {
            index,
            starred: true,
        }
    }

    pub fn adjoint(self) -> Self {
        Generator {
            index: self.index,
            starred: !self.starred,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}{}", self.index, if self.starred { "'" } else { "" })
    }
}

/// A monomial: a finite sequence of letters.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Word(pub(crate) Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[Generator]) -> Self {
        Word(letters.to_vec())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of unstarred letters minus number of starred letters; the
    /// weight of the circle action on this monomial.
    pub fn u1_degree(&self) -> i64 {
        self.0
            .iter()
            .map(|g| if g.starred { -1i64 } else { 1 })
            .sum()
    }

    /// Word reversal with every star toggled; the adjoint monomial.
    pub fn adjoint(&self) -> Word {
        Word(self.0.iter().rev().map(|g| g.adjoint()).collect())
    }

    /// Whether this word is in canonical form for ambient bound `n`:
    /// an unstarred block with non-decreasing indices, then a starred block
    /// with non-increasing indices, and never `z_n` and `z_n^*` in the same
    /// word (any such pair meets at the block boundary and is removed by
    /// the sphere relation).
    pub fn is_normal(&self, n: u8) -> bool {
        let split = self
            .0
            .iter()
            .position(|g| g.starred)
            .unwrap_or(self.0.len());
        let (unstarred, starred) = self.0.split_at(split);
        if starred.iter().any(|g| !g.starred) {
            return false;
        }
        if unstarred.windows(2).any(|w| w[0].index > w[1].index) {
            return false;
        }
        if starred.windows(2).any(|w| w[0].index < w[1].index) {
            return false;
        }
        let tail_z_n = unstarred.last().map(|g| g.index == n).unwrap_or(false);
        let head_z_n_star = starred.first().map(|g| g.index == n).unwrap_or(false);
        !(tail_z_n && head_z_n_star)
    }
}

/// Graded ordering: by length first, then lexicographically. Keeps term
/// maps and printed output deterministic with the unit first.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_shape_examples() {
        let n = 1;
        let w = Word::from_letters(&[Generator::z(0), Generator::z(1), Generator::z_star(0)]);
        assert!(w.is_normal(n));
        // descending unstarred block is not normal
        let w = Word::from_letters(&[Generator::z(1), Generator::z(0)]);
        assert!(!w.is_normal(n));
        // star before unstarred letter is not normal
        let w = Word::from_letters(&[Generator::z_star(0), Generator::z(0)]);
        assert!(!w.is_normal(n));
        // z_n together with z_n^* is not normal
        let w = Word::from_letters(&[Generator::z(1), Generator::z_star(1)]);
        assert!(!w.is_normal(n));
        let w = Word::from_letters(&[Generator::z(0), Generator::z_star(0)]);
        assert!(w.is_normal(n));
    }

    #[test]
    fn adjoint_is_an_involution() {
        let w = Word::from_letters(&[Generator::z(0), Generator::z(2), Generator::z_star(1)]);
        assert_eq!(w.adjoint().adjoint(), w);
        assert_eq!(w.u1_degree(), 1);
        assert_eq!(w.adjoint().u1_degree(), -1);
    }

    #[test]
    fn display_notation() {
        let w = Word::from_letters(&[Generator::z(0), Generator::z_star(3)]);
        assert_eq!(w.to_string(), "z0 z3'");
        assert_eq!(Word::empty().to_string(), "1");
    }
}
