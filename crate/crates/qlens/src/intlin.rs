//! Exact integer matrix algebra: Smith normal form with unimodular
//! certificates, invariant factors via gcd of minors (an independent
//! oracle), kernels, image membership and cokernel element orders.
//!
//! Everything runs over arbitrary-precision integers; intermediate entries
//! in the elimination routinely exceed machine words even for small inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntLinError {
    #[error("dimension mismatch: vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, IntLinError> {
        if v.len() != self.cols {
            return Err(IntLinError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = t / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[dst] += c * row[src]
    fn row_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        for k in 0..self.cols {
            let t = c * &self[(src, k)];
            self[(dst, k)] += t;
        }
    }

    /// col[dst] += c * col[src]
    fn col_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        for k in 0..self.rows {
            let t = c * &self[(k, src)];
            self[(k, dst)] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let t = -self[(i, k)].clone();
            self[(i, k)] = t;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for k in 0..self.rows {
            let t = -self[(k, j)].clone();
            self[(k, j)] = t;
        }
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zero(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Smith normal form `P * A * Q = D` with unimodular `P`, `Q`.
///
/// `D` is diagonal with nonnegative entries, the nonzero ones first and
/// each dividing the next. All postconditions are re-verified by
/// multiplication when the decomposition is produced.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    /// Positive invariant factors, i.e. the nonzero diagonal of `D`.
    pub alphas: Vec<BigInt>,
}

struct SnfCalc {
    t: IntMatrix,
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
}

impl SnfCalc {
    fn new(a: &IntMatrix) -> Self {
        SnfCalc {
            t: a.clone(),
            p: IntMatrix::identity(a.rows),
            p_inv: IntMatrix::identity(a.rows),
            q: IntMatrix::identity(a.cols),
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.t.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.p_inv.swap_cols(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.t.swap_cols(i, j);
        self.q.swap_cols(i, j);
    }

    fn row_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.t.row_add(dst, src, c);
        self.p.row_add(dst, src, c);
        // (I + c E_{dst,src})^{-1} = I - c E_{dst,src}, applied on the right
        self.p_inv.col_add(src, dst, &-c.clone());
    }

    fn col_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.t.col_add(dst, src, c);
        self.q.col_add(dst, src, c);
    }

    fn row_negate(&mut self, i: usize) {
        self.t.negate_row(i);
        self.p.negate_row(i);
        self.p_inv.negate_col(i);
    }

    fn pivot(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in from..self.t.rows() {
            for j in from..self.t.cols() {
                if self.t[(i, j)].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => self.t[(i, j)].abs() < self.t[b].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn diagonalize(&mut self) {
        let n = self.t.rows().min(self.t.cols());
        for t in 0..n {
            let Some((pi, pj)) = self.pivot(t) else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let mut swapped = false;
                for i in t + 1..self.t.rows() {
                    if self.t[(i, t)].is_zero() {
                        continue;
                    }
                    let k = &self.t[(i, t)] / &self.t[(t, t)];
                    if !k.is_zero() {
                        self.row_add(i, t, &-k);
                    }
                    if !self.t[(i, t)].is_zero() {
                        // remainder became the smaller pivot
                        self.row_swap(i, t);
                        swapped = true;
                    }
                }
                for j in t + 1..self.t.cols() {
                    if self.t[(t, j)].is_zero() {
                        continue;
                    }
                    let k = &self.t[(t, j)] / &self.t[(t, t)];
                    if !k.is_zero() {
                        self.col_add(j, t, &-k);
                    }
                    if !self.t[(t, j)].is_zero() {
                        self.col_swap(j, t);
                        swapped = true;
                    }
                }
                let row_clear = (t + 1..self.t.cols()).all(|j| self.t[(t, j)].is_zero());
                let col_clear = (t + 1..self.t.rows()).all(|i| self.t[(i, t)].is_zero());
                if !swapped && row_clear && col_clear {
                    break;
                }
            }
        }
    }

    fn diagonal(&self) -> Vec<BigInt> {
        (0..self.t.rows().min(self.t.cols()))
            .map(|i| self.t[(i, i)].clone())
            .collect()
    }

    /// Repair the divisibility chain with (a, b) -> (gcd, lcm) steps.
    fn enforce_chain(&mut self) {
        for _guard in 0..100_000 {
            let diag = self.diagonal();
            let r = diag.iter().take_while(|d| !d.is_zero()).count();
            let violation = (0..r.saturating_sub(1))
                .find(|&i| !(&diag[i + 1] % &diag[i]).is_zero());
            match violation {
                None => return,
                Some(i) => {
                    self.col_add(i, i + 1, &BigInt::one());
                    self.diagonalize();
                }
            }
        }
        panic!("smith normal form divisibility repair failed to terminate");
    }

    fn normalize_signs(&mut self) {
        for i in 0..self.t.rows().min(self.t.cols()) {
            if self.t[(i, i)].is_negative() {
                self.row_negate(i);
            }
        }
    }
}

/// Certificate-carrying Smith normal form.
///
/// Elimination with explicit transform accumulation: gcd-driven row and
/// column operations around a minimal-magnitude pivot, followed by the
/// standard `(a, b) -> (gcd, lcm)` repair pass for the divisibility chain.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let mut calc = SnfCalc::new(a);
    calc.diagonalize();
    calc.enforce_chain();
    calc.normalize_signs();
    let alphas: Vec<BigInt> = calc
        .diagonal()
        .into_iter()
        .take_while(|d| !d.is_zero())
        .collect();
    let result = SnfResult {
        d: calc.t,
        p: calc.p,
        p_inv: calc.p_inv,
        q: calc.q,
        alphas,
    };
    result.verify(a);
    result
}

impl SnfResult {
    /// Number of nonzero invariant factors, i.e. the rank of the input.
    pub fn rank(&self) -> usize {
        self.alphas.len()
    }

    fn verify(&self, a: &IntMatrix) {
        assert_eq!(
            self.p.mul(a).mul(&self.q),
            self.d,
            "SNF certificate failed: P*A*Q != D"
        );
        assert!(
            self.p.determinant().abs().is_one(),
            "SNF certificate failed: P not unimodular"
        );
        assert!(
            self.q.determinant().abs().is_one(),
            "SNF certificate failed: Q not unimodular"
        );
        assert_eq!(
            self.p.mul(&self.p_inv),
            IntMatrix::identity(a.rows()),
            "SNF certificate failed: P * Pinv != I"
        );
        for w in self.alphas.windows(2) {
            assert!(
                (&w[1] % &w[0]).is_zero(),
                "SNF divisibility chain violated"
            );
        }
        assert!(self.alphas.iter().all(|x| x.is_positive()));
    }

    /// A basis of the integer kernel lattice of the original matrix: the
    /// columns of `Q` facing zero diagonal entries.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (0..self.q.cols())
            .filter(|&j| {
                j >= self.d.rows() || j >= self.d.cols() || self.d[(j, j)].is_zero()
            })
            .map(|j| self.q.column(j))
            .collect()
    }

    /// Solve `A x = v` over the integers if possible; `Some(x)` is a
    /// witness, `None` means `v` is not in the image lattice.
    pub fn solve(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, IntLinError> {
        let w = self.p.mul_vec(v)?;
        let mut y = vec![BigInt::zero(); self.q.cols()];
        for (i, wi) in w.iter().enumerate() {
            let d = if i < self.d.cols() {
                self.d[(i, i)].clone()
            } else {
                BigInt::zero()
            };
            if d.is_zero() {
                if !wi.is_zero() {
                    return Ok(None);
                }
            } else {
                let (quot, rem) = wi.div_rem(&d);
                if !rem.is_zero() {
                    return Ok(None);
                }
                y[i] = quot;
            }
        }
        Ok(Some(self.q.mul_vec(&y).expect("dimensions match")))
    }

    /// Order of the class of `v` in the cokernel `Z^rows / Im(A)`: the
    /// least `t >= 1` with `t*v` in the image, computed as an lcm over the
    /// Smith coordinates `w = P v` of `alpha_i / gcd(alpha_i, w_i)`.
    pub fn coker_order(&self, v: &[BigInt]) -> Result<CokerOrder, IntLinError> {
        let w = self.p.mul_vec(v)?;
        let mut order = BigInt::one();
        for (i, wi) in w.iter().enumerate() {
            let d = if i < self.d.cols() {
                self.d[(i, i)].clone()
            } else {
                BigInt::zero()
            };
            if d.is_zero() {
                if !wi.is_zero() {
                    return Ok(CokerOrder::Infinite);
                }
            } else {
                let g = d.gcd(wi);
                order = order.lcm(&(&d / &g));
            }
        }
        Ok(CokerOrder::Finite(order))
    }

    /// Columns of `P^{-1}` facing invariant factors `> 1`: representatives
    /// in `Z^rows` of a basis of the torsion subgroup of the cokernel.
    pub fn torsion_representatives(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        self.alphas
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_one())
            .map(|(i, a)| (self.p_inv.column(i), a.clone()))
            .collect()
    }
}

/// Order of an element of a finitely generated abelian group presented as a
/// cokernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CokerOrder {
    Finite(BigInt),
    Infinite,
}

/// Rational rank, as the number of nonzero invariant factors.
pub fn rank(a: &IntMatrix) -> usize {
    snf(a).rank()
}

/// Rational rank by fraction-free Gaussian elimination with full pivoting.
/// Independent of the Smith normal form route; used as an oracle.
pub fn rank_fraction_free(a: &IntMatrix) -> usize {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    let mut prev = BigInt::one();
    while r < rows.min(cols) {
        let Some((pi, pj)) = (r..rows)
            .flat_map(|i| (r..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !m[(i, j)].is_zero())
        else {
            break;
        };
        m.swap_rows(r, pi);
        m.swap_cols(r, pj);
        for i in r + 1..rows {
            for j in r + 1..cols {
                let t = &m[(i, j)] * &m[(r, r)] - &m[(i, r)] * &m[(r, j)];
                m[(i, j)] = t / &prev;
            }
            m[(i, r)] = BigInt::zero();
        }
        prev = m[(r, r)].clone();
        r += 1;
    }
    r
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors from gcds of minors: `d_i` is the gcd of all nonzero
/// `i x i` minors and `alpha_i = d_i / d_{i-1}`.
///
/// Exponential in the matrix size; used only as an oracle against [`snf`].
pub fn invariant_factors_by_minors(a: &IntMatrix) -> Vec<BigInt> {
    let mut alphas = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=a.rows().min(a.cols()) {
        let mut g = BigInt::zero();
        'outer: for rows in combinations(a.rows(), k) {
            for cols in combinations(a.cols(), k) {
                let det = a.submatrix(&rows, &cols).determinant();
                if !det.is_zero() {
                    g = g.gcd(&det);
                    if g.is_one() {
                        break 'outer;
                    }
                }
            }
        }
        if g.is_zero() {
            break;
        }
        alphas.push(&g / &prev);
        prev = g;
    }
    alphas
}

/// Basis of the integer kernel lattice of `a`.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    snf(a).kernel_basis()
}

/// Decide whether `v` lies in the integer column span of `a`, returning a
/// solution witness when it does.
pub fn image_membership(a: &IntMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, IntLinError> {
    let result = snf(a).solve(v)?;
    if let Some(x) = &result {
        debug_assert_eq!(a.mul_vec(x).unwrap(), v, "membership witness failed");
    }
    Ok(result)
}

/// Order of `v` in the cokernel of `a`.
pub fn coker_order(a: &IntMatrix, v: &[BigInt]) -> Result<CokerOrder, IntLinError> {
    snf(a).coker_order(v)
}
