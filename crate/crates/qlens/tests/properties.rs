//! Randomized invariants: ring axioms for the coefficient ring,
//! symmetry of the q-multinomial, *-algebra laws, degree bookkeeping,
//! confluence sampling for the rewrite system, and the Smith normal form
//! against its minors oracle.

use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;
use qlens::intlin::{invariant_factors_by_minors, rank_fraction_free, snf, IntMatrix};
use qlens::ncalg::{Generator, NCPoly, RewriteBudget};
use qlens::qcoeff::{qint, qmultinomial, HalfLaurent, Rational};

const BUDGET: RewriteBudget = RewriteBudget {
    limit: RewriteBudget::DEFAULT_LIMIT,
};

fn half_laurent() -> impl Strategy<Value = HalfLaurent> {
    vec((-6i64..=6, -20i64..=20, 1i64..=9), 0..5).prop_map(|terms| {
        let mut out = HalfLaurent::zero();
        for (e, num, den) in terms {
            let c = HalfLaurent::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)));
            out += &(&c * &HalfLaurent::s_pow(e));
        }
        out
    })
}

fn word(n: u8, max_len: usize) -> impl Strategy<Value = Vec<Generator>> {
    vec((0..=n, any::<bool>()), 0..=max_len).prop_map(|letters| {
        letters
            .into_iter()
            .map(|(index, starred)| Generator { index, starred })
            .collect()
    })
}

proptest! {
    #[test]
    fn half_laurent_ring_axioms(a in half_laurent(), b in half_laurent(), c in half_laurent()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &HalfLaurent::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn eval_at_one_is_a_ring_map(a in half_laurent(), b in half_laurent()) {
        prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
        prop_assert_eq!((&a + &b).eval_at_one(), a.eval_at_one() + b.eval_at_one());
    }

    #[test]
    fn qmultinomial_is_symmetric(parts in vec(0u32..=5, 1..5)) {
        let total: u32 = parts.iter().sum();
        prop_assume!(total <= 10);
        let mut sorted = parts.clone();
        sorted.sort_unstable();
        prop_assert_eq!(qmultinomial(&parts), qmultinomial(&sorted));
        let mut reversed = parts.clone();
        reversed.reverse();
        prop_assert_eq!(qmultinomial(&parts), qmultinomial(&reversed));
    }

    #[test]
    fn qint_eval_and_palindromy(m in -20i64..=20) {
        prop_assert_eq!(qint(m).eval_at_one(), Rational::from_integer(BigInt::from(m)));
        prop_assert_eq!(qint(m).bar(), qint(m));
    }

    #[test]
    fn adjoint_antihom_and_involution(n in 1u8..=2, a in word(2, 4), b in word(2, 4)) {
        let a: Vec<Generator> = a.into_iter().filter(|g| g.index <= n).collect();
        let b: Vec<Generator> = b.into_iter().filter(|g| g.index <= n).collect();
        let pa = NCPoly::from_word(n, &a, HalfLaurent::one(), BUDGET).unwrap();
        let pb = NCPoly::from_word(n, &b, HalfLaurent::one(), BUDGET).unwrap();
        let prod = pa.mul(&pb, BUDGET).unwrap();
        prop_assert_eq!(prod.adjoint(), pb.adjoint().mul(&pa.adjoint(), BUDGET).unwrap());
        prop_assert_eq!(pa.adjoint().adjoint(), pa);
    }

    #[test]
    fn normal_form_idempotent_and_degree_preserving(n in 1u8..=2, w in word(2, 6)) {
        let w: Vec<Generator> = w.into_iter().filter(|g| g.index <= n).collect();
        let raw_degree: i64 = w.iter().map(|g| if g.starred { -1i64 } else { 1 }).sum();
        let p = NCPoly::from_word(n, &w, HalfLaurent::one(), BUDGET).unwrap();
        prop_assert_eq!(p.normal_form(BUDGET).unwrap(), p.clone());
        // every rewrite rule is degree-homogeneous
        prop_assert!(p.is_zero() || p.u1_degree() == Some(raw_degree));
    }

    #[test]
    fn degree_additivity_on_homogeneous_elements(a in word(1, 5), b in word(1, 5)) {
        let n = 1u8;
        let pa = NCPoly::from_word(n, &a, HalfLaurent::one(), BUDGET).unwrap();
        let pb = NCPoly::from_word(n, &b, HalfLaurent::one(), BUDGET).unwrap();
        let prod = pa.mul(&pb, BUDGET).unwrap();
        if !pa.is_zero() && !pb.is_zero() && !prod.is_zero() {
            let (da, db) = (pa.u1_degree().unwrap(), pb.u1_degree().unwrap());
            prop_assert_eq!(prod.u1_degree(), Some(da + db));
        }
    }

    /// Elements of the invariant subalgebra are products of the p_ij =
    /// z_i^* z_j; sums and products of those stay in degree zero.
    #[test]
    fn degree_zero_closed_under_product_and_adjoint(
        a in vec((0u8..=2, 0u8..=2), 1..4),
        b in vec((0u8..=2, 0u8..=2), 1..4),
    ) {
        let n = 2u8;
        let build = |pairs: &[(u8, u8)]| {
            pairs.iter().fold(NCPoly::one(n), |acc, &(i, j)| {
                let p_ij = NCPoly::generator(n, i, true)
                    .mul(&NCPoly::generator(n, j, false), BUDGET)
                    .unwrap();
                acc.mul(&p_ij, BUDGET).unwrap()
            })
        };
        let pa = build(&a);
        let pb = build(&b);
        prop_assert!(pa.is_zero() || pa.u1_degree() == Some(0));
        let sum = &pa + &pb;
        prop_assert!(sum.is_zero() || sum.u1_degree() == Some(0));
        let prod = pa.mul(&pb, BUDGET).unwrap();
        prop_assert!(prod.is_zero() || prod.u1_degree() == Some(0));
        prop_assert!(pa.adjoint().is_zero() || pa.adjoint().u1_degree() == Some(0));
    }

    #[test]
    fn snf_matches_minors_oracle(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in vec(-9i64..=9, 16),
    ) {
        let mut a = IntMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                a[(i, j)] = BigInt::from(entries[i * 4 + j]);
            }
        }
        let s = snf(&a);
        prop_assert_eq!(&s.alphas, &invariant_factors_by_minors(&a));
        prop_assert_eq!(s.rank(), rank_fraction_free(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    /// Associativity sampling doubles as a confluence check: both
    /// evaluation orders must reach the same normal form.
    #[test]
    fn rewrite_confluence_sampling(
        n in 1u8..=2,
        a in word(2, 6),
        b in word(2, 6),
        c in word(2, 6),
    ) {
        let keep = |w: Vec<Generator>| -> Vec<Generator> {
            w.into_iter().filter(|g| g.index <= n).collect()
        };
        let pa = NCPoly::from_word(n, &keep(a), HalfLaurent::one(), BUDGET).unwrap();
        let pb = NCPoly::from_word(n, &keep(b), HalfLaurent::one(), BUDGET).unwrap();
        let pc = NCPoly::from_word(n, &keep(c), HalfLaurent::one(), BUDGET).unwrap();
        let left = pa.mul(&pb, BUDGET).unwrap().mul(&pc, BUDGET).unwrap();
        let right = pa.mul(&pb.mul(&pc, BUDGET).unwrap(), BUDGET).unwrap();
        prop_assert_eq!(left, right);
    }
}
