//! The oriented rewrite system for the sphere relations.
//!
//! Rules, applied to adjacent letter pairs (leftmost redex first):
//!
//! * `z_a z_b -> q z_b z_a` for `a > b` (unstarred letters sort ascending);
//! * `z_a^* z_b^* -> q z_b^* z_a^*` for `a < b` (starred letters sort
//!   descending);
//! * `z_a^* z_b -> q z_b z_a^*` for `a != b` (stars move right);
//! * `z_n^* z_n -> z_n z_n^*`;
//! * `z_i^* z_i -> z_i z_i^* + (1-q^2) sum_{j>i} z_j z_j^*` for `i < n`;
//! * `z_n z_n^* -> 1 - sum_{j<n} z_j z_j^*` (the sphere relation).
//!
//! Each application strictly decreases the lexicographic measure
//! (star-before-unstar inversions; total `z_n`/`z_n^*` letter count;
//! out-of-order same-type letter pairs), so rewriting terminates; the
//! budget is a guard against bugs, not a tuning knob. Confluence is not
//! proven; it is exercised by the sampling tests and the identity suite.

use super::word::{Generator, Word};
use super::AlgebraError;
use crate::qcoeff::HalfLaurent;
use std::collections::BTreeMap;

/// Cap on rule applications for a single normalization pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RewriteBudget {
    pub limit: u64,
}

impl RewriteBudget {
    pub const DEFAULT_LIMIT: u64 = 1_000_000;

    pub fn new(limit: u64) -> Self {
        assert!(limit > 0, "rewrite budget must be positive");
        RewriteBudget { limit }
    }
}

impl Default for RewriteBudget {
    fn default() -> Self {
        RewriteBudget {
            limit: Self::DEFAULT_LIMIT,
        }
    }
}

enum Redex {
    SwapUnstarred,
    SwapStarred,
    StarPast,
    StarUnstarTop,
    StarUnstar(u8),
    Sphere,
}

fn find_redex(n: u8, w: &[Generator]) -> Option<(usize, Redex)> {
    for p in 0..w.len().saturating_sub(1) {
        let (a, b) = (w[p], w[p + 1]);
        match (a.starred, b.starred) {
            (false, false) if a.index > b.index => return Some((p, Redex::SwapUnstarred)),
            (true, true) if a.index < b.index => return Some((p, Redex::SwapStarred)),
            (true, false) => {
                if a.index != b.index {
                    return Some((p, Redex::StarPast));
                } else if a.index == n {
                    return Some((p, Redex::StarUnstarTop));
                } else {
                    return Some((p, Redex::StarUnstar(a.index)));
                }
            }
            (false, true) if a.index == n && b.index == n => return Some((p, Redex::Sphere)),
            _ => {}
        }
    }
    None
}

fn splice(w: &[Generator], p: usize, replacement: &[Generator]) -> Vec<Generator> {
    let mut out = Vec::with_capacity(w.len() + replacement.len());
    out.extend_from_slice(&w[..p]);
    out.extend_from_slice(replacement);
    out.extend_from_slice(&w[p + 2..]);
    out
}

/// Well-founded measure strictly decreased by every rule, ordered
/// lexicographically: (star-before-unstar inversions; letters of top index
/// `n`; out-of-order same-type pairs). The swap rules lower the third
/// component, the star-moving rules the first, the sphere rule the second.
fn measure(n: u8, w: &[Generator]) -> (u32, u32, u32) {
    let mut inversions = 0u32;
    let mut top = 0u32;
    let mut disorder = 0u32;
    for (i, a) in w.iter().enumerate() {
        if a.index == n {
            top += 1;
        }
        for b in &w[i + 1..] {
            match (a.starred, b.starred) {
                (true, false) => inversions += 1,
                (false, false) if a.index > b.index => disorder += 1,
                (true, true) if a.index < b.index => disorder += 1,
                _ => {}
            }
        }
    }
    (inversions, top, disorder)
}

type PendingKey = ((u32, u32, u32), Vec<Generator>);

fn merge_term(
    map: &mut BTreeMap<PendingKey, HalfLaurent>,
    n: u8,
    w: Vec<Generator>,
    c: HalfLaurent,
) {
    if c.is_zero() {
        return;
    }
    let key = (measure(n, &w), w);
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Rewrite every pending `(word, coefficient)` pair to normal form,
/// accumulating into a canonical term map with no zero coefficients.
///
/// Pending words are processed in decreasing measure order. Rewriting
/// strictly decreases the measure, so everything a processed word can still
/// produce merges into smaller pending entries before those are reached;
/// each distinct word is rewritten exactly once per call, and the in-flight
/// term count stays at the number of distinct reachable words.
pub(crate) fn normal_form_terms(
    n: u8,
    work: Vec<(Vec<Generator>, HalfLaurent)>,
    budget: RewriteBudget,
) -> Result<BTreeMap<Word, HalfLaurent>, AlgebraError> {
    let q = HalfLaurent::q_pow(1);
    let one_minus_q2 = &HalfLaurent::one() - &HalfLaurent::q_pow(2);
    let mut remaining = budget.limit;
    let mut out: BTreeMap<Word, HalfLaurent> = BTreeMap::new();
    let mut pending: BTreeMap<PendingKey, HalfLaurent> = BTreeMap::new();
    for (w, c) in work {
        merge_term(&mut pending, n, w, c);
    }
    while let Some(((_, w), c)) = pending.pop_last() {
        let Some((p, redex)) = find_redex(n, &w) else {
            let word = Word(w);
            debug_assert!(word.is_normal(n));
            match out.entry(word) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += &c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
            continue;
        };
        if remaining == 0 {
            return Err(AlgebraError::BudgetExhausted {
                limit: budget.limit,
            });
        }
        remaining -= 1;
        let (a, b) = (w[p], w[p + 1]);
        match redex {
            Redex::SwapUnstarred | Redex::SwapStarred | Redex::StarPast => {
                let rep = [
                    Generator {
                        index: b.index,
                        starred: b.starred,
                    },
                    Generator {
                        index: a.index,
                        starred: a.starred,
                    },
                ];
                merge_term(&mut pending, n, splice(&w, p, &rep), &c * &q);
            }
            Redex::StarUnstarTop => {
                let rep = [Generator::z(n), Generator::z_star(n)];
                merge_term(&mut pending, n, splice(&w, p, &rep), c);
            }
            Redex::StarUnstar(i) => {
                let scaled = &c * &one_minus_q2;
                for j in i + 1..=n {
                    let rep = [Generator::z(j), Generator::z_star(j)];
                    merge_term(&mut pending, n, splice(&w, p, &rep), scaled.clone());
                }
                let rep = [Generator::z(i), Generator::z_star(i)];
                merge_term(&mut pending, n, splice(&w, p, &rep), c);
            }
            Redex::Sphere => {
                for j in 0..n {
                    let rep = [Generator::z(j), Generator::z_star(j)];
                    merge_term(&mut pending, n, splice(&w, p, &rep), -&c);
                }
                merge_term(&mut pending, n, splice(&w, p, &[]), c);
            }
        }
    }
    Ok(out)
}
