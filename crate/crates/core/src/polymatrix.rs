//! Matrices with entries in `R_0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::linalg::ExactMatrix;
use crate::multipoly::CoefficientRing;
use crate::poly::{binomial, Poly};

/// Hard cap on the number of minors enumerated by [`PolyMatrix::minors`].
pub const MAX_MINORS: usize = 184_756; // C(20, 10)

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinorsError {
    #[error("minor size {t} exceeds the matrix shape {rows}x{cols}")]
    SizeTooLarge { t: usize, rows: usize, cols: usize },
    #[error("{count} minors of size {t} exceed the cap of {MAX_MINORS}")]
    TooManyMinors { t: usize, count: u128 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: CoefficientRing,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(ring: CoefficientRing, rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "shape");
        for e in &entries {
            assert_eq!((e.domain(), e.nvars()), (ring.base, ring.x_vars), "entry outside R_0");
        }
        PolyMatrix { ring, rows, cols, entries }
    }

    pub fn zeros(ring: CoefficientRing, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring, rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Poly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    /// Columns of `self` followed by the columns of `other`.
    pub fn hconcat(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.ring, other.ring);
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            entries.extend_from_slice(&self.entries[r * self.cols..(r + 1) * self.cols]);
            entries.extend_from_slice(&other.entries[r * other.cols..(r + 1) * other.cols]);
        }
        PolyMatrix { ring: self.ring, rows: self.rows, cols, entries }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let entries = rows.iter().flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone())).collect();
        PolyMatrix { ring: self.ring, rows: rows.len(), cols: cols.len(), entries }
    }

    /// Specializes `X = point`.
    pub fn evaluate(&self, point: &[BigRational]) -> ExactMatrix {
        let entries = self.entries.iter().map(|p| p.evaluate(point)).collect();
        ExactMatrix::new(self.ring.base, self.rows, self.cols, entries).expect("evaluation stays in the domain")
    }

    /// Rank over the fraction field of `R_0`.
    ///
    /// A specialization can only lower the rank, so a specialization of full
    /// rank `min(rows, cols)` certifies the answer; otherwise fraction-free
    /// elimination over `R_0` decides.
    pub fn rank(&self) -> usize {
        let full = self.rows.min(self.cols);
        if self.ring.x_vars == 0 {
            return self.evaluate(&[]).rank();
        }
        for point in sample_points(self.ring.x_vars) {
            let Ok(point) = point.iter().map(|v| self.ring.base.normalize(v)).collect::<Result<Vec<_>, _>>() else {
                continue;
            };
            if self.evaluate(&point).rank() == full {
                return full;
            }
        }
        let mut a: Vec<Vec<Poly>> =
            (0..self.rows).map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec()).collect();
        bareiss_rank_poly(&mut a, self.cols, &self.ring)
    }

    pub fn determinant(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return self.ring.one();
        }
        let mut a: Vec<Vec<Poly>> = (0..n).map(|r| self.entries[r * n..(r + 1) * n].to_vec()).collect();
        let mut prev = self.ring.one();
        let mut negate = false;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&i| !a[i][col].is_zero()) else {
                return self.ring.zero();
            };
            if piv != col {
                a.swap(col, piv);
                negate = !negate;
            }
            for i in col + 1..n {
                for j in col + 1..n {
                    let v = &(&a[col][col] * &a[i][j]) - &(&a[i][col] * &a[col][j]);
                    a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
                }
                a[i][col] = self.ring.zero();
            }
            prev = a[col][col].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            -&det
        } else {
            det
        }
    }

    /// All nonzero `t x t` minors, deduplicated, in enumeration order
    /// (row subsets outer, column subsets inner, both lexicographic).
    pub fn minors(&self, t: usize) -> Result<Vec<Poly>, MinorsError> {
        if t > self.rows.min(self.cols) {
            return Err(MinorsError::SizeTooLarge { t, rows: self.rows, cols: self.cols });
        }
        let count = binomial(self.rows, t) as u128 * binomial(self.cols, t) as u128;
        if count > MAX_MINORS as u128 {
            return Err(MinorsError::TooManyMinors { t, count });
        }
        let mut out: Vec<Poly> = Vec::new();
        for rs in subsets(self.rows, t) {
            for cs in subsets(self.cols, t) {
                let det = self.select(&rs, &cs).determinant();
                if !det.is_zero() && !out.contains(&det) {
                    out.push(det);
                }
            }
        }
        Ok(out)
    }
}

/// Deterministic evaluation points with distinct small coordinates.
fn sample_points(nvars: usize) -> Vec<Vec<BigRational>> {
    const SEEDS: [i64; 12] = [1, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];
    (0..4)
        .map(|k| {
            (0..nvars)
                .map(|i| BigRational::from_integer(BigInt::from(SEEDS[(i * 3 + k * 5) % SEEDS.len()] + k as i64)))
                .collect()
        })
        .collect()
}

fn bareiss_rank_poly(a: &mut [Vec<Poly>], ncols: usize, ring: &CoefficientRing) -> usize {
    let nrows = a.len();
    let mut prev = ring.one();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let lead = std::mem::replace(&mut row[col], ring.zero());
            for j in col + 1..ncols {
                let v = &(&pivot_row[col] * &row[j]) - &(&lead * &pivot_row[j]);
                row[j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = pivot_row[col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// k-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_coefficient;
    use crate::scalars::ScalarDomain;

    fn qxy() -> CoefficientRing {
        CoefficientRing::new(ScalarDomain::Rationals, 2)
    }

    fn mat(ring: CoefficientRing, rows: &[&[&str]]) -> PolyMatrix {
        let r = rows.len();
        let c = rows[0].len();
        let entries = rows.iter().flat_map(|row| row.iter().map(|s| parse_coefficient(s, ring).unwrap())).collect();
        PolyMatrix::new(ring, r, c, entries)
    }

    #[test]
    fn subsets_enumerate_in_order() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn polynomial_determinant() {
        let m = mat(qxy(), &[&["X", "Y"], &["Y", "X"]]);
        assert_eq!(m.determinant().to_string(), "X^2 - Y^2");
        let singular = mat(qxy(), &[&["X", "X*Y"], &["1", "Y"]]);
        assert!(singular.determinant().is_zero());
    }

    #[test]
    fn rank_falls_back_to_elimination() {
        // every specialization over F_2 vanishes on X^2 + X, so the exact path decides
        let f2 = CoefficientRing::new(ScalarDomain::prime_field(2).unwrap(), 1);
        let m = mat(f2, &[&["X^2 + X", "0"], &["0", "X^2 + X"]]);
        assert_eq!(m.rank(), 2);
        let dependent = mat(qxy(), &[&["X", "Y"], &["X^2", "X*Y"]]);
        assert_eq!(dependent.rank(), 1);
    }

    #[test]
    fn minors_of_singh_row() {
        let m = mat(CoefficientRing::new(ScalarDomain::Rationals, 3), &[&["X", "Y", "Z"]]);
        let got: Vec<_> = m.minors(1).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(got, vec!["X", "Y", "Z"]);
        assert!(matches!(m.minors(2), Err(MinorsError::SizeTooLarge { .. })));
    }

    #[test]
    fn too_many_minors_is_refused() {
        let big = PolyMatrix::zeros(qxy(), 20, 22);
        assert!(matches!(big.minors(10), Err(MinorsError::TooManyMinors { .. })));
    }
}
