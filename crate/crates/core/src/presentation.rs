//! Presentation matrices for graded components of top local cohomology.
//!
//! `H^s_{S_+}(S)` is modelled by inverse polynomials: monomials `U^λ` with all
//! exponents `≤ -1`, where multiplying by `U^μ` annihilates any product with a
//! non-negative exponent. Its degree `-d` piece is free over `R_0` on the
//! basis `B(d)`, and `H^s_{R_+}(R)_{-d}` is the cokernel of the matrix whose
//! block for a generator `f_i` of degree `δ_i` sends `U^λ ∈ B(d + δ_i)` to
//! `f_i · U^λ ∈ B(d)`.
//!
//! Bases are ordered ascending by `U^λ < U^μ ⇔ U^{-λ} <_Lex U^{-μ}` with
//! `U_1 > ... > U_s`; rows and columns follow that order, and column blocks
//! follow the generator order.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::multipoly::{GradedIdeal, NestedPolynomial, PolyError};
use crate::poly::{binomial, Poly};
use crate::polymatrix::{MinorsError, PolyMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("degree {d} < s = {s}: component is zero above end −s")]
    DegreeTooSmall { d: u32, s: usize },
    #[error(transparent)]
    NotHomogeneous(#[from] PolyError),
    #[error(transparent)]
    Minors(#[from] MinorsError),
}

/// The ordered basis `B(d)` of the degree `-d` piece of the inverse polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseBasis {
    s: usize,
    d: u32,
    elements: Vec<Vec<i32>>,
    #[serde(skip)]
    index: HashMap<Vec<i32>, usize>,
}

impl InverseBasis {
    pub fn new(s: usize, d: u32) -> Result<Self, PresentationError> {
        if s == 0 || (d as usize) < s {
            return Err(PresentationError::DegreeTooSmall { d, s });
        }
        let mut elements = Vec::with_capacity(binomial(d as usize - 1, s - 1));
        compositions(s, d, &mut Vec::with_capacity(s), &mut elements);
        // ascending: compare the negated tuples lexicographically
        elements.sort_by(|a, b| b.cmp(a));
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Ok(InverseBasis { s, d, elements, index })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Vec<i32>] {
        &self.elements
    }

    pub fn position(&self, lambda: &[i32]) -> Option<usize> {
        self.index.get(lambda).copied()
    }
}

/// All tuples of `s` entries `≤ -1` summing to `-d`.
fn compositions(s: usize, d: u32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
    let left = d as i32 + cur.iter().sum::<i32>();
    let slots = (s - cur.len()) as i32;
    if slots == 1 {
        cur.push(-left);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for part in 1..=left - (slots - 1) {
        cur.push(-part);
        compositions(s, d, cur, out);
        cur.pop();
    }
}

/// `f · U^λ` in the inverse polynomials: each term `a_μ U^μ` lands on `λ + μ`
/// unless some exponent there is non-negative.
pub fn inverse_action(f: &NestedPolynomial, lambda: &[i32]) -> Result<BTreeMap<Vec<i32>, Poly>, PresentationError> {
    f.u_degree()?;
    assert_eq!(lambda.len(), f.s(), "tuple length");
    let mut out: BTreeMap<Vec<i32>, Poly> = BTreeMap::new();
    for (mu, a) in f.terms() {
        let target: Vec<i32> = lambda.iter().zip(mu.exps()).map(|(&l, &m)| l + m as i32).collect();
        if target.iter().any(|&v| v >= 0) {
            continue;
        }
        let sum = match out.remove(&target) {
            Some(prev) => &prev + a,
            None => a.clone(),
        };
        if !sum.is_zero() {
            out.insert(target, sum);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnBlock {
    pub generator: usize,
    pub generator_degree: u32,
    pub basis: InverseBasis,
}

/// `M(f_1..f_r; d)`: rows indexed by `B(d)`, columns by the concatenated `B(d + δ_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationMatrix {
    s: usize,
    d: u32,
    row_basis: InverseBasis,
    column_blocks: Vec<ColumnBlock>,
    matrix: PolyMatrix,
}

impl PresentationMatrix {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn row_basis(&self) -> &InverseBasis {
        &self.row_basis
    }

    pub fn column_blocks(&self) -> &[ColumnBlock] {
        &self.column_blocks
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// Nonzero `t x t` minors of the matrix (`t = C(d-1, s-1)` for the maximal ones).
    pub fn minors_ideal(&self, t: usize) -> Result<Vec<Poly>, PresentationError> {
        Ok(self.matrix.minors(t)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let m = &self.matrix;
        let entries: Vec<Vec<String>> =
            (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect()).collect();
        let blocks: Vec<_> = self
            .column_blocks
            .iter()
            .map(|b| {
                serde_json::json!({
                    "generator": b.generator,
                    "generatorDegree": b.generator_degree,
                    "basis": b.basis.elements(),
                })
            })
            .collect();
        serde_json::json!({
            "s": self.s,
            "d": self.d,
            "rowBasis": self.row_basis.elements(),
            "columnBlocks": blocks,
            "entries": entries,
        })
    }
}

/// Builds the presentation matrix of `H^s_{R_+}(R)_{-d}`. Zero generators contribute no columns.
pub fn presentation_matrix(ideal: &GradedIdeal, d: u32) -> Result<PresentationMatrix, PresentationError> {
    let s = ideal.s();
    let ring = ideal.ring();
    let row_basis = InverseBasis::new(s, d)?;
    let mut column_blocks = Vec::new();
    let mut matrix = PolyMatrix::zeros(ring, row_basis.len(), 0);
    for (i, f) in ideal.generators().iter().enumerate() {
        let Some(delta) = f.u_degree()? else {
            continue;
        };
        let basis = InverseBasis::new(s, d + delta)?;
        let mut block = PolyMatrix::zeros(ring, row_basis.len(), basis.len());
        for (c, lambda) in basis.elements().iter().enumerate() {
            for (rho, a) in inverse_action(f, lambda)? {
                let r = row_basis.position(&rho).expect("image lies in B(d)");
                block.set(r, c, a);
            }
        }
        matrix = matrix.hconcat(&block);
        column_blocks.push(ColumnBlock { generator: i, generator_degree: delta, basis });
    }
    Ok(PresentationMatrix { s, d, row_basis, column_blocks, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::CoefficientRing;
    use crate::parse::{parse_coefficient, parse_generators, parse_nested};
    use crate::scalars::ScalarDomain;

    fn ideal(text: &str, ring: CoefficientRing, s: usize) -> GradedIdeal {
        GradedIdeal::new(ring, s, parse_generators(text, ring, s).unwrap()).unwrap()
    }

    fn entry_strings(p: &PresentationMatrix) -> Vec<Vec<String>> {
        let m = p.matrix();
        (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect()).collect()
    }

    #[test]
    fn inverse_basis_examples() {
        assert_eq!(InverseBasis::new(2, 2).unwrap().elements(), &[vec![-1, -1]]);
        assert_eq!(InverseBasis::new(2, 4).unwrap().elements(), &[vec![-1, -3], vec![-2, -2], vec![-3, -1]]);
        assert_eq!(InverseBasis::new(3, 3).unwrap().elements(), &[vec![-1, -1, -1]]);
        assert_eq!(InverseBasis::new(3, 2), Err(PresentationError::DegreeTooSmall { d: 2, s: 3 }));
    }

    #[test]
    fn inverse_basis_sizes() {
        for s in 1..=4 {
            for d in s as u32..=12 {
                let b = InverseBasis::new(s, d).unwrap();
                assert_eq!(b.len(), binomial(d as usize - 1, s - 1), "s={s} d={d}");
            }
        }
    }

    #[test]
    fn inverse_action_examples() {
        let r3 = CoefficientRing::new(ScalarDomain::Rationals, 3);
        let f = parse_nested("X*U+Y*V+Z*W", r3, 3).unwrap();
        let img = inverse_action(&f, &[-2, -1, -1]).unwrap();
        assert_eq!(img.len(), 1);
        assert_eq!(img[&vec![-1, -1, -1]].to_string(), "X");

        let r0 = CoefficientRing::new(ScalarDomain::Rationals, 0);
        let u2 = parse_nested("U^2", r0, 2).unwrap();
        assert!(inverse_action(&u2, &[-1, -1]).unwrap().is_empty());

        let r2 = CoefficientRing::new(ScalarDomain::Rationals, 2);
        let y2u2 = parse_nested("Y^2*U^2", r2, 2).unwrap();
        let img = inverse_action(&y2u2, &[-4, -1]).unwrap();
        assert_eq!(img[&vec![-2, -1]].to_string(), "Y^2");

        let mixed = parse_nested("U + V^2", r2, 2).unwrap();
        assert!(matches!(inverse_action(&mixed, &[-1, -1]), Err(PresentationError::NotHomogeneous(_))));
    }

    #[test]
    fn section_three_matrix_is_tridiagonal() {
        let r2 = CoefficientRing::new(ScalarDomain::Rationals, 2);
        let i = ideal("2*X^2*V^2 + 2*X*Y*U*V + Y^2*U^2", r2, 2);
        let p = presentation_matrix(&i, 3).unwrap();
        assert_eq!(entry_strings(&p), vec![vec!["2*X^2", "2*X*Y", "Y^2", "0"], vec!["0", "2*X^2", "2*X*Y", "Y^2"]]);
    }

    #[test]
    fn singh_and_trivial_presentations() {
        let r3 = CoefficientRing::new(ScalarDomain::Rationals, 3);
        let p = presentation_matrix(&ideal("X*U+Y*V+Z*W", r3, 3), 3).unwrap();
        // columns U^(-1,-1,-2) < U^(-1,-2,-1) < U^(-2,-1,-1) pick up W, V, U
        assert_eq!(entry_strings(&p), vec![vec!["Z", "Y", "X"]]);

        let q = CoefficientRing::new(ScalarDomain::Rationals, 0);
        let p = presentation_matrix(&ideal("U^2", q, 1), 1).unwrap();
        assert_eq!(entry_strings(&p), vec![vec!["1"]]);
    }

    #[test]
    fn minors_of_c2() {
        let r2 = CoefficientRing::new(ScalarDomain::Rationals, 2);
        let i = ideal("2*X^2*V^2 + 2*X*Y*U*V + Y^2*U^2", r2, 2);
        let p = presentation_matrix(&i, 3).unwrap();
        let mut got: Vec<_> = p.minors_ideal(2).unwrap().iter().map(ToString::to_string).collect();
        got.sort();
        let mut want: Vec<_> = ["4*X^4", "4*X^3*Y", "2*X^2*Y^2", "2*X*Y^3", "Y^4"]
            .iter()
            .map(|s| parse_coefficient(s, r2).unwrap().to_string())
            .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn block_concatenation() {
        let r2 = CoefficientRing::new(ScalarDomain::Rationals, 2);
        let both = ideal("X*U + Y*V, X*U^2 - Y*V^2", r2, 2);
        let first = ideal("X*U + Y*V", r2, 2);
        let second = ideal("X*U^2 - Y*V^2", r2, 2);
        for d in 2..6 {
            let pb = presentation_matrix(&both, d).unwrap();
            let p1 = presentation_matrix(&first, d).unwrap();
            let p2 = presentation_matrix(&second, d).unwrap();
            assert_eq!(pb.matrix(), &p1.matrix().hconcat(p2.matrix()));
            assert_eq!(pb.matrix().cols(), 2 * d as usize + 1);
        }
    }

    #[test]
    fn json_shape() {
        let r3 = CoefficientRing::new(ScalarDomain::Rationals, 3);
        let p = presentation_matrix(&ideal("X*U+Y*V+Z*W", r3, 3), 3).unwrap();
        let v = p.to_json();
        assert_eq!(v["entries"], serde_json::json!([["Z", "Y", "X"]]));
        assert_eq!(v["rowBasis"], serde_json::json!([[-1, -1, -1]]));
        assert_eq!(v["columnBlocks"][0]["basis"].as_array().unwrap().len(), 3);
    }
}
