//! `dim_K` of the cokernel of a graded matrix over `K[X_1..X_m]`, one degree
//! strand at a time.
//!
//! Row `ρ` generates a free summand shifted by `rowShifts[ρ]`; column `c` lives in
//! degree `columnDegrees[c]`. The degree-`e` piece of the image is spanned by the
//! products `X^α · column c` with `|α| = e - columnDegrees[c]`, written in the
//! basis `X^β · e_ρ` with `|β| = e - rowShifts[ρ]`. Monomials within a degree are
//! listed lexicographically, `X_1^e` first.
//!
//! The cokernel is generated in degrees `≤ max(rowShifts)`, so once a strand at or
//! past that degree is zero every later strand is zero too.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{rank_of_entries, ExactMatrix};
use crate::poly::{monomial_count, monomials_of_degree, Monomial};
use crate::polymatrix::PolyMatrix;
use crate::scalars::ScalarDomain;

/// Environment variable overriding the default strand ceiling.
pub const MAX_DEGREE_ENV: &str = "LOCOH_MAX_DEGREE";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrandError {
    #[error("entry ({row}, {col}) is not homogeneous of degree columnDegree - rowShift")]
    GradingViolation { row: usize, col: usize },
    #[error("no grading makes every entry homogeneous: entry ({row}, {col}) conflicts")]
    NotGradable { row: usize, col: usize },
    #[error("shape mismatch: {rows} rows / {cols} columns but {shifts} shifts / {degrees} degrees")]
    ShapeMismatch { rows: usize, cols: usize, shifts: usize, degrees: usize },
    #[error("strand engine needs a field of coefficients, got {0}")]
    NotAField(ScalarDomain),
    #[error("cokernel not certified finite by degree {ceiling} (set {MAX_DEGREE_ENV} to raise the ceiling)")]
    NotFiniteLength { ceiling: u32, partial: Box<StrandReport> },
    #[error("degree cap {cap} is too small: the cokernel is still nonzero in degree {}", cap + 1)]
    CapTooSmall { cap: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    matrix: PolyMatrix,
    row_shifts: Vec<u32>,
    col_degrees: Vec<u32>,
}

impl GradedMatrix {
    pub fn new(matrix: PolyMatrix, row_shifts: Vec<u32>, col_degrees: Vec<u32>) -> Result<Self, StrandError> {
        if row_shifts.len() != matrix.rows() || col_degrees.len() != matrix.cols() {
            return Err(StrandError::ShapeMismatch {
                rows: matrix.rows(),
                cols: matrix.cols(),
                shifts: row_shifts.len(),
                degrees: col_degrees.len(),
            });
        }
        if !matrix.ring().base.is_field() {
            return Err(StrandError::NotAField(matrix.ring().base));
        }
        for r in 0..matrix.rows() {
            for c in 0..matrix.cols() {
                let p = matrix.get(r, c);
                if p.is_zero() {
                    continue;
                }
                let want = col_degrees[c] as i64 - row_shifts[r] as i64;
                if p.homogeneous_degree().map(i64::from) != Some(want) {
                    return Err(StrandError::GradingViolation { row: r, col: c });
                }
            }
        }
        Ok(GradedMatrix { matrix, row_shifts, col_degrees })
    }

    /// Finds shifts and degrees making every entry homogeneous, with the smallest
    /// row shift in each connected block equal to 0.
    pub fn infer(matrix: PolyMatrix) -> Result<Self, StrandError> {
        let (rows, cols) = (matrix.rows(), matrix.cols());
        let mut deg = vec![None; rows * cols];
        for r in 0..rows {
            for c in 0..cols {
                let p = matrix.get(r, c);
                if !p.is_zero() {
                    match p.homogeneous_degree() {
                        Some(d) => deg[r * cols + c] = Some(d as i64),
                        None => return Err(StrandError::NotGradable { row: r, col: c }),
                    }
                }
            }
        }
        // nodes 0..rows are rows, rows.. are columns; value = shift or degree
        let mut value: Vec<Option<i64>> = vec![None; rows + cols];
        let mut shifts = vec![0u32; rows];
        let mut degrees = vec![0u32; cols];
        for start in 0..rows + cols {
            if value[start].is_some() {
                continue;
            }
            value[start] = Some(0);
            let mut component = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(node) = queue.pop_front() {
                let v = value[node].unwrap();
                let neighbours: Vec<(usize, i64, (usize, usize))> = if node < rows {
                    (0..cols).filter_map(|c| deg[node * cols + c].map(|d| (rows + c, v + d, (node, c)))).collect()
                } else {
                    let c = node - rows;
                    (0..rows).filter_map(|r| deg[r * cols + c].map(|d| (r, v - d, (r, c)))).collect()
                };
                for (next, want, (r, c)) in neighbours {
                    match value[next] {
                        None => {
                            value[next] = Some(want);
                            component.push(next);
                            queue.push_back(next);
                        }
                        Some(have) if have != want => return Err(StrandError::NotGradable { row: r, col: c }),
                        Some(_) => {}
                    }
                }
            }
            let base = component
                .iter()
                .filter(|&&n| n < rows)
                .map(|&n| value[n].unwrap())
                .min()
                .unwrap_or_else(|| component.iter().map(|&n| value[n].unwrap()).min().unwrap());
            for &n in &component {
                let v = (value[n].unwrap() - base) as u32;
                if n < rows {
                    shifts[n] = v;
                } else {
                    degrees[n - rows] = v;
                }
            }
        }
        GradedMatrix::new(matrix, shifts, degrees)
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn row_shifts(&self) -> &[u32] {
        &self.row_shifts
    }

    pub fn col_degrees(&self) -> &[u32] {
        &self.col_degrees
    }

    fn field(&self) -> ScalarDomain {
        self.matrix.ring().base
    }

    fn nvars(&self) -> usize {
        self.matrix.ring().x_vars
    }

    pub fn max_shift(&self) -> u32 {
        self.row_shifts.iter().copied().max().unwrap_or(0)
    }

    /// `max(rowShifts) + max(columnDegrees)·(rows + 2) + 8`.
    pub fn default_ceiling(&self) -> u32 {
        let max_col = self.col_degrees.iter().copied().max().unwrap_or(0);
        self.max_shift() + max_col * (self.matrix.rows() as u32 + 2) + 8
    }

    /// `dim_K` of the degree-`e` piece of the free module.
    pub fn ambient_dim(&self, e: u32) -> usize {
        self.row_shifts.iter().filter(|&&s| s <= e).map(|&s| monomial_count(self.nvars(), e - s)).sum()
    }

    /// Nonzero entries of the degree-`e` strand, with its shape.
    fn strand_entries(&self, e: u32) -> (usize, usize, Vec<(usize, usize, BigRational)>) {
        let n = self.nvars();
        let mut row_offset = Vec::with_capacity(self.row_shifts.len());
        let mut index: HashMap<u32, HashMap<Monomial, usize>> = HashMap::new();
        let mut rows = 0;
        for &s in &self.row_shifts {
            row_offset.push(rows);
            if s <= e {
                let deg = e - s;
                let map = index.entry(deg).or_insert_with(|| {
                    monomials_of_degree(n, deg).into_iter().enumerate().map(|(i, m)| (m, i)).collect()
                });
                rows += map.len();
            }
        }
        let mut entries = Vec::new();
        let mut cols = 0;
        for c in 0..self.matrix.cols() {
            let cd = self.col_degrees[c];
            if cd > e {
                continue;
            }
            for alpha in monomials_of_degree(n, e - cd) {
                for (r, &s) in self.row_shifts.iter().enumerate() {
                    let p = self.matrix.get(r, c);
                    if p.is_zero() {
                        continue;
                    }
                    let map = &index[&(e - s)];
                    for (m, v) in p.terms() {
                        entries.push((row_offset[r] + map[&m.mul(&alpha)], cols, v.clone()));
                    }
                }
                cols += 1;
            }
        }
        (rows, cols, entries)
    }

    pub fn strand_matrix(&self, e: u32) -> ExactMatrix {
        let (rows, cols, entries) = self.strand_entries(e);
        let mut dense = ExactMatrix::zeros(self.field(), rows, cols);
        let mut values = vec![self.field().zero(); rows * cols];
        for (r, c, v) in entries {
            values[r * cols + c] = v;
        }
        if rows * cols > 0 {
            dense = ExactMatrix::new(self.field(), rows, cols, values).expect("entries are canonical");
        }
        dense
    }

    /// Ambient dimension, image rank and cokernel dimension in degree `e`.
    pub fn strand_row(&self, e: u32) -> StrandRow {
        let (rows, cols, entries) = self.strand_entries(e);
        let rank = rank_of_entries(self.field(), rows, cols, entries.iter().map(|(r, c, v)| (*r, *c, v)));
        debug_assert_eq!(rows, self.ambient_dim(e));
        StrandRow { degree: e, ambient_dim: rows, image_rank: rank, coker_dim: rows - rank }
    }

    /// Degree-by-degree cokernel dimensions up to the certificate. `ceiling` defaults
    /// to [`MAX_DEGREE_ENV`] when set, else [`GradedMatrix::default_ceiling`].
    pub fn coker_dimension(&self, ceiling: Option<u32>) -> Result<StrandReport, StrandError> {
        let ceiling = ceiling.or_else(ceiling_from_env).unwrap_or_else(|| self.default_ceiling());
        let floor = self.max_shift();
        let batch = rayon::current_num_threads().max(1) as u32;
        let mut per_degree = Vec::new();
        let mut e = 0;
        while e <= ceiling {
            let hi = (e + batch - 1).min(ceiling);
            let rows: Vec<StrandRow> = (e..=hi).into_par_iter().map(|k| self.strand_row(k)).collect();
            for row in rows {
                let done = row.degree >= floor && row.coker_dim == 0;
                per_degree.push(row);
                if done {
                    return Ok(StrandReport::new(per_degree));
                }
            }
            e = hi + 1;
        }
        Err(StrandError::NotFiniteLength { ceiling, partial: Box::new(StrandReport::new(per_degree)) })
    }
}

/// Reads [`MAX_DEGREE_ENV`], ignoring unparsable values.
pub fn ceiling_from_env() -> Option<u32> {
    std::env::var(MAX_DEGREE_ENV).ok()?.trim().parse().ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StrandRow {
    pub degree: u32,
    pub ambient_dim: usize,
    pub image_rank: usize,
    pub coker_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StrandReport {
    pub per_degree: Vec<StrandRow>,
    pub total_dim: usize,
    /// Degree at which the certificate fired; `None` for a partial report.
    pub stabilized_at: Option<u32>,
}

impl StrandReport {
    fn new(per_degree: Vec<StrandRow>) -> Self {
        let total_dim = per_degree.iter().map(|r| r.coker_dim).sum();
        let stabilized_at = per_degree.last().filter(|r| r.coker_dim == 0).map(|r| r.degree);
        StrandReport { per_degree, total_dim, stabilized_at }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

impl fmt::Display for StrandReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = ["degree", "ambient", "rank", "coker"];
        let cells: Vec<[String; 4]> = self
            .per_degree
            .iter()
            .map(|r| [r.degree, r.ambient_dim as u32, r.image_rank as u32, r.coker_dim as u32].map(|v| v.to_string()))
            .collect();
        let width: Vec<usize> =
            (0..4).map(|i| cells.iter().map(|row| row[i].len()).chain([head[i].len()]).max().unwrap()).collect();
        writeln!(
            f,
            "{:>w0$}  {:>w1$}  {:>w2$}  {:>w3$}",
            head[0],
            head[1],
            head[2],
            head[3],
            w0 = width[0],
            w1 = width[1],
            w2 = width[2],
            w3 = width[3]
        )?;
        for row in &cells {
            writeln!(
                f,
                "{:>w0$}  {:>w1$}  {:>w2$}  {:>w3$}",
                row[0],
                row[1],
                row[2],
                row[3],
                w0 = width[0],
                w1 = width[1],
                w2 = width[2],
                w3 = width[3]
            )?;
        }
        match self.stabilized_at {
            Some(e) => write!(f, "total {} (zero from degree {e} on)", self.total_dim),
            None => write!(f, "total so far {} (not certified)", self.total_dim),
        }
    }
}

/// Independent check of [`GradedMatrix::coker_dimension`]: one matrix holding every
/// degree `≤ cap` at once. Fails with `CapTooSmall` unless the cokernel is already
/// zero in degree `cap + 1 ≥ max(rowShifts)`.
pub fn brute_force_coker_dim(g: &GradedMatrix, cap: u32) -> Result<usize, StrandError> {
    let low = truncated_coker(g, cap);
    let high = truncated_coker(g, cap + 1);
    if high != low || cap + 1 < g.max_shift() {
        return Err(StrandError::CapTooSmall { cap });
    }
    Ok(low)
}

fn truncated_coker(g: &GradedMatrix, cap: u32) -> usize {
    let n = g.nvars();
    // all (row, monomial) pairs of total degree ≤ cap, one global index
    let mut row_index: HashMap<(usize, Monomial), usize> = HashMap::new();
    for (r, &s) in g.row_shifts.iter().enumerate() {
        if s > cap {
            continue;
        }
        for deg in 0..=cap - s {
            for m in monomials_of_degree(n, deg) {
                let k = row_index.len();
                row_index.insert((r, m), k);
            }
        }
    }
    let mut entries = Vec::new();
    let mut col = 0;
    for c in 0..g.matrix.cols() {
        let cd = g.col_degrees[c];
        if cd > cap {
            continue;
        }
        for deg in 0..=cap - cd {
            for alpha in monomials_of_degree(n, deg) {
                for r in 0..g.matrix.rows() {
                    for (m, v) in g.matrix.get(r, c).terms() {
                        entries.push((row_index[&(r, m.mul(&alpha))], col, v.clone()));
                    }
                }
                col += 1;
            }
        }
    }
    let rows = row_index.len();
    rows - rank_of_entries(g.field(), rows, col, entries.iter().map(|(r, c, v)| (*r, *c, v)))
}
