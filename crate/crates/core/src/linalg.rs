//! Dense exact matrices over a [`ScalarDomain`]: rank, determinant and the
//! Smith normal form over the integers.
//!
//! Ranks are computed over the fraction field of the declared domain. Before
//! eliminating, the matrix is split into the connected components of its
//! row/column incidence graph; the rank is the sum of the component ranks, and
//! each component is eliminated densely (fraction-free Bareiss over ℤ for
//! rational input, plain Gaussian elimination over 𝔽_p).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::scalars::{inv_mod, ScalarDomain, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("expected {expected} entries for the declared shape, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    DomainMismatch(#[from] ScalarError),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    domain: ScalarDomain,
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn new(domain: ScalarDomain, rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch { expected: rows * cols, got: entries.len() });
        }
        for v in &entries {
            if !domain.contains(v) {
                return Err(ScalarError::DomainMismatch { value: v.to_string(), domain }.into());
            }
        }
        Ok(ExactMatrix { domain, rows, cols, entries })
    }

    /// Builds a matrix from integer rows, reducing into `domain`.
    pub fn from_rows(domain: ScalarDomain, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flatten().map(|&v| domain.from_i64(v)).collect();
        ExactMatrix { domain, rows: r, cols: c, entries }
    }

    pub fn zeros(domain: ScalarDomain, rows: usize, cols: usize) -> Self {
        ExactMatrix { domain, rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(domain: ScalarDomain, n: usize) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ExactMatrix { domain: self.domain, rows: self.cols, cols: self.rows, entries }
    }

    /// Re-reads every entry in another domain (e.g. ℤ → 𝔽_p).
    pub fn map_into(&self, domain: ScalarDomain) -> Result<Self, LinalgError> {
        let entries = self.entries.iter().map(|v| domain.normalize(v)).collect::<Result<Vec<_>, _>>()?;
        Ok(ExactMatrix { domain, rows: self.rows, cols: self.cols, entries })
    }

    fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.entries.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i / self.cols, i % self.cols, v))
    }

    /// Rank over the fraction field of the declared domain.
    pub fn rank(&self) -> usize {
        rank_of_entries(self.domain, self.rows, self.cols, self.nonzero_entries())
    }

    pub fn determinant(&self) -> Result<BigRational, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigRational::one());
        }
        match self.domain.modulus() {
            Some(p) => {
                let mut a: Vec<Vec<u64>> = (0..n).map(|r| mod_row(self.row(r), p)).collect();
                Ok(BigRational::from_integer(BigInt::from(det_mod(&mut a, p))))
            }
            None => {
                let mut scale = BigInt::one();
                let mut a = Vec::with_capacity(n);
                for r in 0..n {
                    let (row, l) = cleared_row(self.row(r));
                    scale *= l;
                    a.push(row);
                }
                Ok(BigRational::new(bareiss_det(&mut a), scale))
            }
        }
    }

    /// Invariant factors `d_1 | d_2 | ...` padded with zeros to one entry per row, so
    /// that the cokernel is `⊕ ℤ/d_i` (a zero factor contributing a free summand).
    pub fn smith_normal_form(&self) -> Result<Vec<BigInt>, LinalgError> {
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for v in self.row(r) {
                if !v.is_integer() {
                    return Err(
                        ScalarError::DomainMismatch { value: v.to_string(), domain: ScalarDomain::Integers }.into()
                    );
                }
                row.push(v.numer().clone());
            }
            a.push(row);
        }
        Ok(smith_diagonal(a, self.rows, self.cols))
    }
}

/// Rank of the `rows x cols` matrix whose nonzero entries are listed (unlisted entries
/// are zero). Entries must already be canonical in `domain`.
pub fn rank_of_entries<'a>(
    domain: ScalarDomain,
    rows: usize,
    cols: usize,
    entries: impl IntoIterator<Item = (usize, usize, &'a BigRational)>,
) -> usize {
    let entries: Vec<_> = entries.into_iter().filter(|(_, _, v)| !v.is_zero()).collect();
    if entries.is_empty() {
        return 0;
    }
    let mut uf = UnionFind::new(rows + cols);
    for &(r, c, _) in &entries {
        uf.union(r, rows + c);
    }

    // per component: (rows, cols, indices into `entries`)
    let mut comp_of = vec![usize::MAX; rows + cols];
    let mut comps: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> = Vec::new();
    for (k, &(r, _, _)) in entries.iter().enumerate() {
        let root = uf.find(r);
        if comp_of[root] == usize::MAX {
            comp_of[root] = comps.len();
            comps.push((Vec::new(), Vec::new(), Vec::new()));
        }
        comps[comp_of[root]].2.push(k);
    }

    let mut local = vec![usize::MAX; rows + cols];
    let mut total = 0;
    for (comp_rows, comp_cols, ks) in &mut comps {
        for &k in ks.iter() {
            let (r, c, _) = entries[k];
            if local[r] == usize::MAX {
                local[r] = comp_rows.len();
                comp_rows.push(r);
            }
            if local[rows + c] == usize::MAX {
                local[rows + c] = comp_cols.len();
                comp_cols.push(c);
            }
        }
        let (nr, nc) = (comp_rows.len(), comp_cols.len());
        total += match domain.modulus() {
            Some(p) => {
                let mut a = vec![vec![0u64; nc]; nr];
                for &k in ks.iter() {
                    let (r, c, v) = entries[k];
                    a[local[r]][local[rows + c]] = v.numer().to_u64().expect("canonical residue");
                }
                rank_mod(&mut a, p)
            }
            None => {
                let mut dense = vec![vec![BigRational::zero(); nc]; nr];
                for &k in ks.iter() {
                    let (r, c, v) = entries[k];
                    dense[local[r]][local[rows + c]] = v.clone();
                }
                let mut a: Vec<Vec<BigInt>> = dense.iter().map(|row| cleared_row(row).0).collect();
                bareiss_rank(&mut a, nc)
            }
        };
    }
    total
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Scales a rational row by the lcm of its denominators; returns the integer row and the lcm.
fn cleared_row(row: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let out = row.iter().map(|v| v.numer() * (&l / v.denom())).collect();
    (out, l)
}

fn mod_row(row: &[BigRational], p: u64) -> Vec<u64> {
    row.iter().map(|v| v.numer().mod_floor(&BigInt::from(p)).to_u64().unwrap()).collect()
}

pub(crate) fn rank_mod(a: &mut [Vec<u64>], p: u64) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][col], p);
        for j in col..ncols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for i in rank + 1..nrows {
            let factor = a[i][col];
            if factor == 0 {
                continue;
            }
            for j in col..ncols {
                let sub = factor * a[rank][j] % p;
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

fn det_mod(a: &mut [Vec<u64>], p: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| a[i][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(col, piv);
            det = (p - det) % p;
        }
        det = det * a[col][col] % p;
        let inv = inv_mod(a[col][col], p);
        for i in col + 1..n {
            let factor = a[i][col] * inv % p;
            if factor == 0 {
                continue;
            }
            for j in col..n {
                let sub = factor * a[col][j] % p;
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
    }
    det
}

/// Fraction-free elimination; every division is exact.
pub(crate) fn bareiss_rank(a: &mut [Vec<BigInt>], ncols: usize) -> usize {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                if !prev.is_one() {
                    for v in row[col + 1..].iter_mut() {
                        *v = pivot * &*v / &prev;
                    }
                } else {
                    for v in row[col + 1..].iter_mut() {
                        *v *= pivot;
                    }
                }
                continue;
            }
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..ncols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot.clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

fn bareiss_det(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return BigInt::zero();
        };
        if piv != col {
            a.swap(col, piv);
            sign = -sign;
        }
        for i in col + 1..n {
            for j in col + 1..n {
                let v = &a[col][col] * &a[i][j] - &a[i][col] * &a[col][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[col][col].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn smith_diagonal(mut a: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> Vec<BigInt> {
    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(rows);
    for t in 0..n {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pr, pc)) = min_abs_position(&a, t) else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // enforce divisibility of the trailing block by the pivot
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_zero() && !a[i][j].is_multiple_of(&a[t][t])));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        dirty = true;
                    }
                }
            }
            if dirty {
                let (pr, pc) = min_abs_position(&a, t).expect("block is nonzero");
                a.swap(t, pr);
                for row in a.iter_mut() {
                    row.swap(t, pc);
                }
            }
        }
        diag.push(a[t][t].abs());
    }
    diag.resize(rows, BigInt::zero());
    diag
}

fn min_abs_position(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| &av < b) {
                best = Some((i, j, av));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    pub(crate) fn tridiagonal(n: usize) -> ExactMatrix {
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            rows[i][i] = 2;
            if i + 1 < n {
                rows[i][i + 1] = 1;
                rows[i + 1][i] = 2;
            }
        }
        ExactMatrix::from_rows(ScalarDomain::Rationals, &rows)
    }

    fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for c in 0..n {
            if m[0][c] == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect())
                .collect();
            let term = BigInt::from(m[0][c]) * cofactor_det(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn rank_examples() {
        let qq = ScalarDomain::Rationals;
        assert_eq!(ExactMatrix::identity(qq, 3).rank(), 3);
        assert_eq!(tridiagonal(3).rank(), 2);
        assert_eq!(ExactMatrix::zeros(qq, 2, 4).rank(), 0);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(tridiagonal(1).determinant().unwrap(), q(2));
        assert_eq!(tridiagonal(3).determinant().unwrap(), q(0));
        assert_eq!(tridiagonal(4).determinant().unwrap(), q(-4));
        let m = ExactMatrix::zeros(ScalarDomain::Rationals, 2, 3);
        assert_eq!(m.determinant(), Err(LinalgError::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn rational_determinant_clears_denominators() {
        let half = BigRational::new(1.into(), 2.into());
        let m = ExactMatrix::new(ScalarDomain::Rationals, 2, 2, vec![half.clone(), q(1), q(3), half.clone()]).unwrap();
        assert_eq!(m.determinant().unwrap(), BigRational::new((-11).into(), 4.into()));
    }

    #[test]
    fn smith_examples() {
        let z = ScalarDomain::Integers;
        let snf = |rows: &[Vec<i64>]| {
            ExactMatrix::from_rows(z, rows)
                .smith_normal_form()
                .unwrap()
                .into_iter()
                .map(|v| v.to_i64().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(snf(&[vec![2]]), vec![2]);
        assert_eq!(snf(&[vec![1, 0], vec![0, 6]]), vec![1, 6]);
        assert_eq!(snf(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(snf(&[vec![0, 0], vec![0, 0], vec![0, 3]]), vec![3, 0, 0]);
        assert_eq!(snf(&[vec![2, 0, 0], vec![0, 3, 0]]), vec![1, 6]);
    }

    #[test]
    fn domain_mismatch_is_reported() {
        let bad = ExactMatrix::new(ScalarDomain::Integers, 1, 1, vec![BigRational::new(1.into(), 2.into())]);
        assert!(matches!(bad, Err(LinalgError::DomainMismatch(_))));
        let wrong_len = ExactMatrix::new(ScalarDomain::Integers, 2, 2, vec![q(1)]);
        assert_eq!(wrong_len, Err(LinalgError::ShapeMismatch { expected: 4, got: 1 }));
    }

    #[test]
    fn tridiagonal_zero_pattern() {
        for n in 1..=32 {
            let det = tridiagonal(n).determinant().unwrap();
            assert_eq!(det.is_zero(), n % 4 == 3, "n = {n}");
        }
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=8, 1usize..=8)
            .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r))
    }

    fn dense_rank(m: &ExactMatrix) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|r| cleared_row(m.row(r)).0).collect();
        bareiss_rank(&mut a, m.cols())
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(rows in small_matrix()) {
            let m = ExactMatrix::from_rows(ScalarDomain::Rationals, &rows);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn component_split_matches_dense_rank(rows in small_matrix()) {
            let m = ExactMatrix::from_rows(ScalarDomain::Rationals, &rows);
            prop_assert_eq!(m.rank(), dense_rank(&m));
        }

        #[test]
        fn mod_p_rank_never_exceeds_rational_rank(rows in small_matrix(), pi in 0usize..4) {
            let p = [2u64, 3, 5, 7][pi];
            let m = ExactMatrix::from_rows(ScalarDomain::Integers, &rows);
            let mp = m.map_into(ScalarDomain::prime_field(p).unwrap()).unwrap();
            prop_assert!(mp.rank() <= m.rank());
        }

        #[test]
        fn bareiss_matches_cofactor(n in 1usize..=5, seed in proptest::collection::vec(-9i64..=9, 25)) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..i * n + n].to_vec()).collect();
            let m = ExactMatrix::from_rows(ScalarDomain::Integers, &rows);
            prop_assert_eq!(m.determinant().unwrap(), BigRational::from_integer(cofactor_det(&rows)));
            let f7 = m.map_into(ScalarDomain::prime_field(7).unwrap()).unwrap();
            let expect = cofactor_det(&rows).mod_floor(&BigInt::from(7));
            prop_assert_eq!(f7.determinant().unwrap(), BigRational::from_integer(expect));
        }

        #[test]
        fn smith_invariants_match_determinantal_divisors(rows in small_matrix()) {
            prop_assume!(rows.len() <= 4 && rows[0].len() <= 4);
            let m = ExactMatrix::from_rows(ScalarDomain::Integers, &rows);
            let inv = m.smith_normal_form().unwrap();
            prop_assert_eq!(inv.len(), m.rows());
            let nonzero: Vec<_> = inv.iter().filter(|v| !v.is_zero()).cloned().collect();
            prop_assert_eq!(nonzero.len(), m.rank());
            for w in nonzero.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            // product of the first k invariants = gcd of the k x k minors
            let k = nonzero.len();
            if k > 0 {
                let prod: BigInt = nonzero.iter().product();
                prop_assert_eq!(prod, minors_gcd(&rows, k));
            }
        }
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    fn minors_gcd(rows: &[Vec<i64>], k: usize) -> BigInt {
        let mut g = BigInt::zero();
        for rs in subsets(rows.len(), k) {
            for cs in subsets(rows[0].len(), k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c]).collect()).collect();
                g = g.gcd(&cofactor_det(&sub));
            }
        }
        g
    }
}
