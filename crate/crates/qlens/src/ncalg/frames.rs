//! Isometry column vectors, line-bundle projections, connecting partial
//! isometries, and the principality witness.
//!
//! The components of the degree-`N` frame carry square roots of
//! q-multinomials, which do not live in the Laurent coefficient ring. They
//! are never stored alone: a [`ScaledMatrix`] keeps, per row and per
//! column, the q-multinomial whose square root scales that row or column,
//! and matrix products insert the exact product of matching weights. Every
//! identity of interest here is quadratic in the frames, so each check
//! reduces to exact arithmetic; a product whose inner weights disagree
//! would need an unpaired square root and is rejected.

use super::poly::NCPoly;
use super::rewrite::RewriteBudget;
use super::word::Generator;
use super::AlgebraError;
use crate::qcoeff::{qmultinomial, HalfLaurent};
use num_traits::ToPrimitive;

/// All multi-indices `(j_0, ..., j_n)` of nonnegative integers summing to
/// `total`, in colexicographic order (compare the last differing
/// coordinate). The component order of every frame vector, hence of every
/// projection and partial isometry, is fixed by this enumeration.
pub fn multi_indices(n: u8, total: u32) -> Vec<Vec<u32>> {
    fn rec(positions: usize, rem: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
        if positions == 1 {
            let mut idx = vec![rem];
            idx.extend(cur.iter().rev());
            out.push(idx);
            return;
        }
        for j in 0..=rem {
            cur.push(j);
            rec(positions - 1, rem - j, out, cur);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(usize::from(n) + 1, total, &mut out, &mut Vec::new());
    out
}

/// Dimension of the degree-`N` frame: `C(|N| + n, n)`.
pub fn frame_dimension(n: u8, degree: i64) -> usize {
    let m = degree.unsigned_abs();
    let nn = u64::from(n);
    crate::qcoeff::binomial(m + nn, nn)
        .to_usize()
        .expect("frame dimension fits usize")
}

/// A matrix over the sphere algebra of the form
/// `diag(sqrt(row_weights)) * cores * diag(sqrt(col_weights))`, with the
/// cores exact polynomials and the weights q-multinomial values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScaledMatrix {
    n: u8,
    rows: usize,
    cols: usize,
    row_weights: Vec<HalfLaurent>,
    col_weights: Vec<HalfLaurent>,
    entries: Vec<NCPoly>,
}

impl ScaledMatrix {
    /// Assembles a scaled matrix from row-major cores and weight vectors.
    /// Weights must be nonzero; entries must share the ambient bound `n`.
    pub fn from_parts(
        n: u8,
        row_weights: Vec<HalfLaurent>,
        col_weights: Vec<HalfLaurent>,
        entries: Vec<NCPoly>,
    ) -> Self {
        assert!(row_weights.iter().all(|w| !w.is_zero()));
        assert!(col_weights.iter().all(|w| !w.is_zero()));
        assert!(entries.iter().all(|e| e.ambient() == n));
        Self::new(n, row_weights, col_weights, entries)
    }

    fn new(
        n: u8,
        row_weights: Vec<HalfLaurent>,
        col_weights: Vec<HalfLaurent>,
        entries: Vec<NCPoly>,
    ) -> Self {
        let (rows, cols) = (row_weights.len(), col_weights.len());
        assert_eq!(entries.len(), rows * cols);
        ScaledMatrix {
            n,
            rows,
            cols,
            row_weights,
            col_weights,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ambient(&self) -> u8 {
        self.n
    }

    /// The exact polynomial part of entry `(i, j)`; the represented entry
    /// is this scaled by `sqrt(row_weight(i) * col_weight(j))`.
    pub fn core(&self, i: usize, j: usize) -> &NCPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn row_weight(&self, i: usize) -> &HalfLaurent {
        &self.row_weights[i]
    }

    pub fn col_weight(&self, j: usize) -> &HalfLaurent {
        &self.col_weights[j]
    }

    /// Matrix product. The inner weights must match pairwise so that each
    /// square root combines with its twin into an exact q-multinomial.
    pub fn mul(&self, rhs: &ScaledMatrix, budget: RewriteBudget) -> Result<ScaledMatrix, AlgebraError> {
        if self.n != rhs.n {
            return Err(AlgebraError::AmbientMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        if self.cols != rhs.rows {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.col_weights != rhs.row_weights {
            return Err(AlgebraError::WeightMismatch);
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = NCPoly::zero(self.n);
                for k in 0..self.cols {
                    let prod = self.core(i, k).mul(rhs.core(k, j), budget)?;
                    acc = &acc + &prod.scale(&self.col_weights[k]);
                }
                entries.push(acc);
            }
        }
        Ok(ScaledMatrix::new(
            self.n,
            self.row_weights.clone(),
            rhs.col_weights.clone(),
            entries,
        ))
    }

    /// Conjugate transpose; swaps the weight vectors.
    pub fn adjoint(&self) -> ScaledMatrix {
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.core(i, j).adjoint());
            }
        }
        ScaledMatrix::new(
            self.n,
            self.col_weights.clone(),
            self.row_weights.clone(),
            entries,
        )
    }

    /// True when this is the 1x1 matrix representing the unit (both
    /// weights 1 and the core equal to 1).
    pub fn is_scalar_one(&self) -> bool {
        self.rows == 1
            && self.cols == 1
            && self.row_weights[0].is_one()
            && self.col_weights[0].is_one()
            && self.entries[0].is_one()
    }
}

/// The frame vector of degree `N` on the sphere of dimension `2n+1`: a
/// column of length `C(|N|+n, n)` whose component at multi-index `j` is
/// `sqrt([j]!)` times
///
/// * `q^{-1/2 sum_{r<s} j_r j_s} (z_0^{j_0})^* ... (z_n^{j_n})^*` for
///   `N >= 0`, and
/// * `q^{1/2 sum_{r<s} j_r j_s + sum_r r j_r} z_0^{j_0} ... z_n^{j_n}` for
///   `N <= 0`,
///
/// the square roots being carried by the row weights.
pub fn build_psi(n: u8, degree: i64) -> ScaledMatrix {
    // frame components are short products; normalization is cheap
    let budget = RewriteBudget::default();
    let total = degree.unsigned_abs() as u32;
    let mut row_weights = Vec::new();
    let mut entries = Vec::new();
    for j in multi_indices(n, total) {
        row_weights.push(qmultinomial(&j));
        let cross: i64 = (0..j.len())
            .flat_map(|r| (r + 1..j.len()).map(move |s| (r, s)))
            .map(|(r, s)| i64::from(j[r]) * i64::from(j[s]))
            .sum();
        let mut letters = Vec::new();
        let coeff = if degree >= 0 {
            for (i, &e) in j.iter().enumerate() {
                for _ in 0..e {
                    letters.push(Generator::z_star(i as u8));
                }
            }
            // q^{-cross/2} = s^{-cross}
            HalfLaurent::s_pow(-cross)
        } else {
            for (i, &e) in j.iter().enumerate() {
                for _ in 0..e {
                    letters.push(Generator::z(i as u8));
                }
            }
            let shift: i64 = j
                .iter()
                .enumerate()
                .map(|(r, &e)| (r as i64) * i64::from(e))
                .sum();
            // q^{cross/2 + shift} = s^{cross + 2 shift}
            HalfLaurent::s_pow(cross + 2 * shift)
        };
        entries.push(
            NCPoly::from_word(n, &letters, coeff, budget)
                .expect("frame components normalize within the default budget"),
        );
    }
    ScaledMatrix::new(n, row_weights, vec![HalfLaurent::one()], entries)
}

/// The projection `P_N = Psi_N Psi_N^*`, a `d_N x d_N` matrix over the
/// degree-zero subalgebra.
pub fn build_projection(
    n: u8,
    degree: i64,
    budget: RewriteBudget,
) -> Result<ScaledMatrix, AlgebraError> {
    let psi = build_psi(n, degree);
    let p = psi.mul(&psi.adjoint(), budget)?;
    debug_assert!((0..p.rows()).all(|i| {
        (0..p.cols()).all(|j| p.core(i, j).u1_degree() == Some(0) || p.core(i, j).is_zero())
    }));
    Ok(p)
}

/// Checks `Psi_N^* Psi_N = 1`.
pub fn verify_isometry(n: u8, degree: i64, budget: RewriteBudget) -> Result<bool, AlgebraError> {
    let psi = build_psi(n, degree);
    let gram = psi.adjoint().mul(&psi, budget)?;
    Ok(gram.is_scalar_one())
}

/// Checks `P_N^2 = P_N = P_N^*` entrywise, and that every entry is
/// invariant under the circle action.
pub fn verify_projection(n: u8, degree: i64, budget: RewriteBudget) -> Result<bool, AlgebraError> {
    let p = build_projection(n, degree, budget)?;
    let squared = p.mul(&p, budget)?;
    let degree_zero = (0..p.rows())
        .all(|i| (0..p.cols()).all(|j| p.core(i, j).u1_degree() == Some(0)
            || p.core(i, j).is_zero()));
    Ok(squared == p && p.adjoint() == p && degree_zero)
}

/// Checks that the defining projection has q-trace one:
/// `sum_i q^{2i} z_i^* z_i = 1`.
pub fn verify_qtrace(n: u8, budget: RewriteBudget) -> Result<bool, AlgebraError> {
    let mut total = NCPoly::zero(n);
    for i in 0..=n {
        let p_ii = NCPoly::generator(n, i, true).mul(&NCPoly::generator(n, i, false), budget)?;
        total = &total + &p_ii.scale(&HalfLaurent::q_pow(2 * i64::from(i)));
    }
    Ok(total.is_one())
}

/// Builds the partial isometry `v_N = Psi_{r(N+1)} Psi_{rN}^dagger` and
/// checks `v_N^* v_N = P_{rN}`, `v_N v_N^* = P_{r(N+1)}`, and that every
/// entry is homogeneous of degree `-r` for the circle action.
pub fn verify_partial_isometry(
    n: u8,
    r: u32,
    index: i64,
    budget: RewriteBudget,
) -> Result<bool, AlgebraError> {
    let hi = i64::from(r) * (index + 1);
    let lo = i64::from(r) * index;
    let psi_hi = build_psi(n, hi);
    let psi_lo = build_psi(n, lo);
    let v = psi_hi.mul(&psi_lo.adjoint(), budget)?;
    let initial = v.adjoint().mul(&v, budget)?;
    if initial != build_projection(n, lo, budget)? {
        return Ok(false);
    }
    let range = v.mul(&v.adjoint(), budget)?;
    if range != build_projection(n, hi, budget)? {
        return Ok(false);
    }
    let expected = -i64::from(r);
    let homogeneous = (0..v.rows()).all(|i| {
        (0..v.cols()).all(|j| {
            let core = v.core(i, j);
            // degree -r in particular places every entry inside the
            // subalgebra fixed by the order-r cyclic action
            core.is_zero()
                || (core.u1_degree() == Some(expected) && core.zr_invariant(r))
        })
    });
    Ok(homogeneous)
}

/// Surjectivity witness for the canonical map of the `U(1)/Z_r` bundle:
/// for `N` a multiple of `r`, the collapsed image of
/// `gamma = sum_j psi_j^{N*} (x) psi_j^N` must reduce to the scalar
/// identity
/// `sum_j [j]! q^{-sum_{r<s} j_r j_s} z_n^{j_n}...z_0^{j_0}(z_0^{j_0})^*...(z_n^{j_n})^* = 1`,
/// and every frame component must be invariant under the order-`r` cyclic
/// action.
pub fn hopf_galois_witness(
    n: u8,
    r: u32,
    big_n: u32,
    budget: RewriteBudget,
) -> Result<bool, AlgebraError> {
    if !big_n.is_multiple_of(r) {
        return Err(AlgebraError::Precondition(format!(
            "degree {big_n} is not a multiple of the bundle index {r}"
        )));
    }
    let mut total = NCPoly::zero(n);
    for j in multi_indices(n, big_n) {
        let cross: i64 = (0..j.len())
            .flat_map(|r| (r + 1..j.len()).map(move |s| (r, s)))
            .map(|(r, s)| i64::from(j[r]) * i64::from(j[s]))
            .sum();
        let beta = &qmultinomial(&j) * &HalfLaurent::s_pow(-2 * cross);
        let mut letters = Vec::new();
        for (i, &e) in j.iter().enumerate().rev() {
            for _ in 0..e {
                letters.push(Generator::z(i as u8));
            }
        }
        for (i, &e) in j.iter().enumerate() {
            for _ in 0..e {
                letters.push(Generator::z_star(i as u8));
            }
        }
        total = &total + &NCPoly::from_word(n, &letters, beta, budget)?;
    }
    if !total.is_one() {
        return Ok(false);
    }
    let psi = build_psi(n, i64::from(big_n));
    let invariant = (0..psi.rows()).all(|i| psi.core(i, 0).zr_invariant(r));
    Ok(invariant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::word::Word;

    const BUDGET: RewriteBudget = RewriteBudget {
        limit: RewriteBudget::DEFAULT_LIMIT,
    };

    #[test]
    fn multi_index_enumeration_is_colex() {
        assert_eq!(multi_indices(1, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(
            multi_indices(2, 1),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        assert_eq!(multi_indices(2, 0), vec![vec![0, 0, 0]]);
        for (n, m) in [(1u8, 4u32), (2, 3), (3, 2)] {
            assert_eq!(
                multi_indices(n, m).len(),
                frame_dimension(n, i64::from(m)),
                "n={n} m={m}"
            );
        }
    }

    #[test]
    fn psi_zero_is_the_unit() {
        let psi = build_psi(2, 0);
        assert_eq!(psi.rows(), 1);
        assert!(psi.core(0, 0).is_one());
        assert!(psi.row_weight(0).is_one());
    }

    #[test]
    fn psi_one_components() {
        // N = 1, n = 1: components z_0^*, z_1^* in colex order
        let psi = build_psi(1, 1);
        assert_eq!(psi.rows(), 2);
        assert_eq!(psi.core(0, 0), &NCPoly::generator(1, 0, true));
        assert_eq!(psi.core(1, 0), &NCPoly::generator(1, 1, true));
        // N = -1: z_0 and q z_1
        let psi = build_psi(1, -1);
        assert_eq!(psi.core(0, 0), &NCPoly::generator(1, 0, false));
        assert_eq!(
            psi.core(1, 0),
            &NCPoly::generator(1, 1, false).scale(&HalfLaurent::q_pow(1))
        );
    }

    #[test]
    fn psi_dimension_matches_binomial() {
        assert_eq!(build_psi(2, 2).rows(), 6);
        assert_eq!(build_psi(2, -2).rows(), 6);
        assert_eq!(build_psi(3, 2).rows(), 10);
    }

    #[test]
    fn psi_components_are_homogeneous_of_degree_minus_n() {
        for degree in [-3i64, -1, 0, 1, 2, 3] {
            let psi = build_psi(1, degree);
            for i in 0..psi.rows() {
                assert_eq!(psi.core(i, 0).u1_degree(), Some(-degree));
            }
        }
    }

    #[test]
    fn projection_at_zero_is_identity() {
        let p = build_projection(1, 0, BUDGET).unwrap();
        assert_eq!(p.rows(), 1);
        assert!(p.core(0, 0).is_one());
    }

    #[test]
    fn defining_projection_entries() {
        // P_1 entries are the p_ij = z_i^* z_j
        let p = build_projection(1, 1, BUDGET).unwrap();
        for i in 0..2u8 {
            for j in 0..2u8 {
                let p_ij = NCPoly::generator(1, i, true)
                    .mul(&NCPoly::generator(1, j, false), BUDGET)
                    .unwrap();
                assert_eq!(p.core(usize::from(i), usize::from(j)), &p_ij);
            }
        }
    }

    #[test]
    fn projection_negative_degree_entries_invariant() {
        let p = build_projection(1, -1, BUDGET).unwrap();
        for i in 0..p.rows() {
            for j in 0..p.cols() {
                assert_eq!(p.core(i, j).u1_degree(), Some(0));
                assert!(p.core(i, j).zr_invariant(1));
            }
        }
    }

    #[test]
    fn isometry_identities() {
        for (n, degree) in [(1, 0), (1, 1), (1, -1), (1, 2), (1, -2), (2, 1), (2, -1)] {
            assert!(verify_isometry(n, degree, BUDGET).unwrap(), "n={n} N={degree}");
        }
    }

    #[test]
    fn projection_identities() {
        for (n, degree) in [(1, 0), (1, 1), (1, -2), (2, 1)] {
            assert!(verify_projection(n, degree, BUDGET).unwrap(), "n={n} N={degree}");
        }
    }

    #[test]
    fn qtrace_identities() {
        for n in 1..=3 {
            assert!(verify_qtrace(n, BUDGET).unwrap(), "n={n}");
        }
    }

    #[test]
    fn partial_isometries() {
        // r = 1, N = 0 collapses to the isometry and projection checks
        assert!(verify_partial_isometry(1, 1, 0, BUDGET).unwrap());
        assert!(verify_partial_isometry(1, 2, 0, BUDGET).unwrap());
    }

    #[test]
    fn partial_isometry_entry_degrees() {
        let psi_hi = build_psi(1, 2);
        let psi_lo = build_psi(1, 0);
        let v = psi_hi.mul(&psi_lo.adjoint(), BUDGET).unwrap();
        for i in 0..v.rows() {
            for j in 0..v.cols() {
                assert_eq!(v.core(i, j).u1_degree(), Some(-2));
            }
        }
    }

    #[test]
    fn witness_identities() {
        assert!(hopf_galois_witness(1, 1, 0, BUDGET).unwrap());
        assert!(hopf_galois_witness(1, 1, 1, BUDGET).unwrap());
        assert!(hopf_galois_witness(1, 2, 2, BUDGET).unwrap());
        assert_eq!(
            hopf_galois_witness(1, 2, 1, BUDGET),
            Err(AlgebraError::Precondition(
                "degree 1 is not a multiple of the bundle index 2".into()
            ))
        );
    }

    #[test]
    fn weight_mismatch_is_rejected() {
        // every frame-derived composition pairs its weights; an ad hoc
        // matrix with a lone [2] column weight cannot multiply a frame
        let skew = ScaledMatrix::from_parts(
            1,
            vec![HalfLaurent::one()],
            vec![crate::qcoeff::qint(2), HalfLaurent::one()],
            vec![NCPoly::one(1), NCPoly::one(1)],
        );
        let psi1 = build_psi(1, 1);
        assert_eq!(
            skew.mul(&psi1, BUDGET).unwrap_err(),
            AlgebraError::WeightMismatch
        );
        let err = psi1.mul(&build_psi(1, 2), BUDGET).unwrap_err();
        assert!(matches!(err, AlgebraError::ShapeMismatch(_)));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tiny = RewriteBudget::new(1);
        let err = verify_isometry(1, 2, tiny).unwrap_err();
        assert_eq!(err, AlgebraError::BudgetExhausted { limit: 1 });
    }

    #[test]
    fn scaled_matrix_equality_includes_weights() {
        let p2 = build_projection(1, 2, BUDGET).unwrap();
        let q2 = build_projection(1, 2, BUDGET).unwrap();
        assert_eq!(p2, q2);
        assert_ne!(p2, build_projection(1, -2, BUDGET).unwrap());
    }

    #[test]
    fn gram_core_words_stay_normal() {
        let psi = build_psi(2, 2);
        let p = psi.mul(&psi.adjoint(), BUDGET).unwrap();
        for i in 0..p.rows() {
            for j in 0..p.cols() {
                for (w, _) in p.core(i, j).terms() {
                    assert!(Word::is_normal(w, 2));
                }
            }
        }
    }
}
