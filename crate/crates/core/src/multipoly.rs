//! Nested polynomials: elements of `S = R_0[U_1..U_s]` with `R_0 = K[X_1..X_m]`
//! (or a bare scalar domain when `m = 0`), plus U-homogeneity and content.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::poly::{format_terms, u_var_name, write_powers, x_var_name, Monomial, Poly};
use crate::scalars::ScalarDomain;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("monomials have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("polynomial mixes U-degrees {0} and {1}")]
    NotHomogeneous(u32, u32),
    #[error("operands live in different rings")]
    RingMismatch,
}

/// The coefficient ring `R_0`: a scalar domain with `x_vars` polynomial variables on top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoefficientRing {
    pub base: ScalarDomain,
    pub x_vars: usize,
}

impl CoefficientRing {
    pub fn new(base: ScalarDomain, x_vars: usize) -> Self {
        CoefficientRing { base, x_vars }
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.base, self.x_vars)
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.base, self.x_vars)
    }

    /// K[X..] over a field (Gröbner machinery applies).
    pub fn is_field_polynomial_ring(&self) -> bool {
        self.base.is_field() && self.x_vars > 0
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x_vars == 0 {
            return write!(f, "{}", self.base);
        }
        let names: Vec<_> = (0..self.x_vars).map(|i| x_var_name(self.x_vars, i)).collect();
        write!(f, "{}[{}]", self.base, names.join(","))
    }
}

/// `U^a <_Lex U^b` with `U_1 > ... > U_s`: at the first differing index `a` is smaller.
pub fn lex_less(a: &[u32], b: &[u32]) -> Result<bool, PolyError> {
    if a.len() != b.len() {
        return Err(PolyError::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.cmp(b) == Ordering::Less)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NestedPolynomial {
    ring: CoefficientRing,
    s: usize,
    terms: BTreeMap<Monomial, Poly>,
}

impl NestedPolynomial {
    pub fn zero(ring: CoefficientRing, s: usize) -> Self {
        NestedPolynomial { ring, s, terms: BTreeMap::new() }
    }

    pub fn from_terms(ring: CoefficientRing, s: usize, terms: impl IntoIterator<Item = (Monomial, Poly)>) -> Self {
        let mut f = Self::zero(ring, s);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    pub fn add_term(&mut self, m: Monomial, c: Poly) {
        assert_eq!(m.nvars(), self.s, "U-monomial arity");
        assert_eq!(c.domain(), self.ring.base);
        assert_eq!(c.nvars(), self.ring.x_vars);
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Poly> {
        self.terms.get(m)
    }

    /// Common U-degree; `Ok(None)` for the zero polynomial.
    pub fn u_degree(&self) -> Result<Option<u32>, PolyError> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let Some(first) = degs.next() else {
            return Ok(None);
        };
        for d in degs {
            if d != first {
                return Err(PolyError::NotHomogeneous(first, d));
            }
        }
        Ok(Some(first))
    }

    /// Distinct nonzero coefficients, in term order.
    pub fn content(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for c in self.terms.values() {
            if !out.contains(c) {
                out.push(c.clone());
            }
        }
        out
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring != other.ring || self.s != other.s {
            return Err(PolyError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn negate(&self) -> Self {
        NestedPolynomial {
            ring: self.ring,
            s: self.s,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = Self::zero(self.ring, self.s);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by the scalar `c`.
    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.ring, self.s);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.scale(c));
        }
        out
    }
}

impl fmt::Display for NestedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, s) = (self.ring.x_vars, self.s);
        let flat = self.terms.iter().rev().flat_map(|(um, coeff)| {
            coeff.terms().rev().map(move |(xm, c)| {
                let mut p = String::new();
                let wrote = write_powers(&mut p, xm, |i| x_var_name(m, i), true);
                write_powers(&mut p, um, |i| u_var_name(s, i), !wrote);
                (c.clone(), p)
            })
        });
        f.write_str(&format_terms(flat))
    }
}

/// Generators of a graded ideal of `S`; each is U-homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdeal {
    ring: CoefficientRing,
    s: usize,
    generators: Vec<NestedPolynomial>,
}

impl GradedIdeal {
    pub fn new(ring: CoefficientRing, s: usize, generators: Vec<NestedPolynomial>) -> Result<Self, PolyError> {
        for g in &generators {
            if g.ring != ring || g.s != s {
                return Err(PolyError::RingMismatch);
            }
            g.u_degree()?;
        }
        Ok(GradedIdeal { ring, s, generators })
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn generators(&self) -> &[NestedPolynomial] {
        &self.generators
    }

    /// Generators of `content(I)`: the union of the generator contents, deduplicated.
    pub fn content_ideal(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for g in &self.generators {
            for c in g.content() {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        out
    }
}
