//! Buchberger's algorithm over `K[X_1..X_m]` and the ideal questions built on it:
//! membership, unit ideal, radical membership (Rabinowitsch) and cofiniteness.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::multipoly::CoefficientRing;
use crate::poly::{monomials_of_degree, Monomial, Poly};
use crate::scalars::ScalarDomain;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("Gröbner bases need field coefficients, got {0}")]
    NotAField(ScalarDomain),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    /// Compares with variable priority `X_1 > X_2 > ...`.
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.exps().iter().zip(b.exps()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Terms sorted by decreasing monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct OrderedPoly {
    terms: Vec<(Monomial, BigRational)>,
}

impl OrderedPoly {
    fn from_poly(p: &Poly, order: MonomialOrder) -> Self {
        let mut terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        OrderedPoly { terms }
    }

    fn to_poly(&self, domain: ScalarDomain, nvars: usize) -> Poly {
        Poly::from_terms(domain, nvars, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Monomial, BigRational) {
        &self.terms[0]
    }

    fn monic(mut self, k: ScalarDomain) -> Self {
        if let Some((_, lc)) = self.terms.first() {
            let inv = k.inv(lc).expect("field coefficient");
            for t in &mut self.terms {
                t.1 = k.mul(&t.1, &inv);
            }
        }
        self
    }

    /// `self - c * m * g`, merging in order.
    fn sub_multiple(
        &self,
        c: &BigRational,
        m: &Monomial,
        g: &OrderedPoly,
        k: ScalarDomain,
        order: MonomialOrder,
    ) -> OrderedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let shifted = g.terms.iter().map(|(gm, gc)| (gm.mul(m), k.neg(&k.mul(c, gc))));
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (m1, c1) = a.next().unwrap();
                    let (_, c2) = b.next().unwrap();
                    let s = k.add(&c1, &c2);
                    if !s.is_zero() {
                        out.push((m1, s));
                    }
                }
            }
        }
        OrderedPoly { terms: out }
    }
}

fn normal_form(f: &OrderedPoly, basis: &[OrderedPoly], k: ScalarDomain, order: MonomialOrder) -> OrderedPoly {
    let mut p = f.clone();
    let mut rem = Vec::new();
    while !p.is_zero() {
        let (lm, lc) = p.lead().clone();
        match basis.iter().find(|g| g.lead().0.divides(&lm)) {
            Some(g) => {
                let m = g.lead().0.quotient_of(&lm);
                let c = k.mul(&lc, &k.inv(&g.lead().1).unwrap());
                p = p.sub_multiple(&c, &m, g, k, order);
            }
            None => {
                rem.push(p.terms.remove(0));
            }
        }
    }
    OrderedPoly { terms: rem }
}

fn s_polynomial(f: &OrderedPoly, g: &OrderedPoly, k: ScalarDomain, order: MonomialOrder) -> OrderedPoly {
    // both inputs are monic
    let l = f.lead().0.lcm(&g.lead().0);
    let mf = f.lead().0.quotient_of(&l);
    let mg = g.lead().0.quotient_of(&l);
    let zero = OrderedPoly { terms: Vec::new() };
    let a = zero.sub_multiple(&k.neg(&BigRational::one()), &mf, f, k, order);
    a.sub_multiple(&BigRational::one(), &mg, g, k, order)
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted by decreasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: CoefficientRing,
    order: MonomialOrder,
    generators: Vec<Poly>,
    basis: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    fn ordered(&self) -> Vec<OrderedPoly> {
        self.basis.iter().map(|p| OrderedPoly::from_poly(p, self.order)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.ordered().into_iter().map(|p| p.lead().0.clone()).collect()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        let k = self.ring.base;
        let nf = normal_form(&OrderedPoly::from_poly(f, self.order), &self.ordered(), k, self.order);
        nf.to_poly(k, self.ring.x_vars)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.as_constant().is_some_and(|c| !c.is_zero()))
    }

    /// Finite K-dimension of the quotient: every variable has a pure power among the
    /// leading monomials.
    pub fn is_cofinite(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        let lms = self.leading_monomials();
        (0..self.ring.x_vars).all(|i| lms.iter().any(|m| m.pure_power_var() == Some(i)))
    }

    /// `dim_K K[X]/I` by counting standard monomials; `None` when infinite.
    pub fn quotient_dimension(&self) -> Option<usize> {
        if !self.is_cofinite() {
            return None;
        }
        let lms = self.leading_monomials();
        let mut total = 0;
        for deg in 0.. {
            let count =
                monomials_of_degree(self.ring.x_vars, deg).iter().filter(|m| !lms.iter().any(|l| l.divides(m))).count();
            if count == 0 {
                break;
            }
            total += count;
        }
        Some(total)
    }
}

/// Reduced Gröbner basis of `(gens)` in `ring = K[X_1..X_m]`.
pub fn buchberger(ring: CoefficientRing, gens: &[Poly], order: MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    let k = ring.base;
    if !k.is_field() {
        return Err(GroebnerError::NotAField(k));
    }
    let mut g: Vec<OrderedPoly> =
        gens.iter().filter(|p| !p.is_zero()).map(|p| OrderedPoly::from_poly(p, order).monic(k)).collect();

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while let Some(&(i, j)) = pending.iter().min_by(|a, b| {
        let la = g[a.0].lead().0.lcm(&g[a.1].lead().0);
        let lb = g[b.0].lead().0.lcm(&g[b.1].lead().0);
        order.cmp(&la, &lb).then(a.cmp(b))
    }) {
        pending.remove(&(i, j));
        let (li, lj) = (&g[i].lead().0, &g[j].lead().0);
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..g.len()).any(|t| {
            t != i
                && t != j
                && g[t].lead().0.divides(&l)
                && !pending.contains(&(i.min(t), i.max(t)))
                && !pending.contains(&(j.min(t), j.max(t)))
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&g[i], &g[j], k, order), &g, k, order);
        if !r.is_zero() {
            let n = g.len();
            g.push(r.monic(k));
            for t in 0..n {
                pending.insert((t, n));
            }
        }
    }

    // minimize: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<OrderedPoly> = Vec::new();
    for (idx, p) in g.iter().enumerate() {
        let lm = &p.lead().0;
        let redundant =
            g.iter().enumerate().any(|(o, q)| o != idx && q.lead().0.divides(lm) && (q.lead().0 != *lm || o < idx));
        if !redundant {
            minimal.push(p.clone());
        }
    }
    // inter-reduce
    let mut reduced = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<OrderedPoly> =
            minimal.iter().enumerate().filter(|&(o, _)| o != idx).map(|(_, q)| q.clone()).collect();
        reduced.push(normal_form(&minimal[idx], &others, k, order).monic(k));
    }
    reduced.sort_by(|a, b| order.cmp(&b.lead().0, &a.lead().0));

    Ok(GroebnerBasis {
        ring,
        order,
        generators: gens.to_vec(),
        basis: reduced.iter().map(|p| p.to_poly(k, ring.x_vars)).collect(),
    })
}

/// Whether `1 ∈ (gens)` in `R_0`.
pub fn is_unit_ideal(ring: CoefficientRing, gens: &[Poly]) -> Result<bool, GroebnerError> {
    if ring.x_vars == 0 {
        let constants = gens.iter().map(|p| p.as_constant().expect("scalar ring"));
        return Ok(match ring.base {
            ScalarDomain::Integers => {
                let g = constants.fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
                g.is_one()
            }
            _ => constants.into_iter().any(|c| !c.is_zero()),
        });
    }
    Ok(buchberger(ring, gens, MonomialOrder::default())?.is_unit())
}

/// `f ∈ √(gens)`, decided by `1 ∈ (gens, 1 - T·f)` with a fresh last variable `T`.
pub fn in_radical(ring: CoefficientRing, f: &Poly, gens: &[Poly]) -> Result<bool, GroebnerError> {
    if !ring.base.is_field() {
        return Err(GroebnerError::NotAField(ring.base));
    }
    let wide = CoefficientRing::new(ring.base, ring.x_vars + 1);
    let t = Poly::var(ring.base, wide.x_vars, ring.x_vars);
    let mut ext: Vec<Poly> = gens.iter().map(|g| g.extended(1)).collect();
    ext.push(&wide.one() - &(&t * &f.extended(1)));
    is_unit_ideal(wide, &ext)
}

pub fn is_cofinite(ring: CoefficientRing, gens: &[Poly]) -> Result<bool, GroebnerError> {
    Ok(buchberger(ring, gens, MonomialOrder::default())?.is_cofinite())
}

/// `dim_K R_0/(gens)` when finite.
pub fn quotient_dimension(ring: CoefficientRing, gens: &[Poly]) -> Result<Option<usize>, GroebnerError> {
    Ok(buchberger(ring, gens, MonomialOrder::default())?.quotient_dimension())
}
