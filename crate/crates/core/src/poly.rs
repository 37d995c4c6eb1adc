//! Sparse polynomials in `X_1..X_m` over a [`ScalarDomain`]: the coefficient ring R_0.
//!
//! With `m = 0` a [`Poly`] is just a scalar, so the bare domains and the
//! polynomial rings share one representation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalars::ScalarDomain;

/// Exponent vector of a monomial. Derived ordering is plain lexicographic on exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = power;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable, if this is a pure power `X_i^k` with `k > 0`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn extended(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(self.0.len() + extra, 0);
        Monomial(e)
    }
}

/// All monomials of total degree `deg` in `nvars` variables, ordered lexicographically
/// with `X_1 > X_2 > ...` (so `X_1^deg` comes first).
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur.push(left);
            out.push(Monomial(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(nvars, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(nvars, 0, deg, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Number of monomials of degree `deg` in `nvars` variables.
pub fn monomial_count(nvars: usize, deg: u32) -> usize {
    if nvars == 0 {
        return usize::from(deg == 0);
    }
    binomial(deg as usize + nvars - 1, nvars - 1)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    domain: ScalarDomain,
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(domain: ScalarDomain, nvars: usize) -> Self {
        Poly { domain, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(domain: ScalarDomain, nvars: usize, c: BigRational) -> Self {
        Self::term(domain, Monomial::one(nvars), c)
    }

    pub fn one(domain: ScalarDomain, nvars: usize) -> Self {
        Self::constant(domain, nvars, BigRational::one())
    }

    pub fn var(domain: ScalarDomain, nvars: usize, i: usize) -> Self {
        Self::term(domain, Monomial::var(nvars, i, 1), BigRational::one())
    }

    /// Single term; the coefficient is normalized into `domain`.
    pub fn term(domain: ScalarDomain, m: Monomial, c: BigRational) -> Self {
        let nvars = m.nvars();
        let mut p = Poly::zero(domain, nvars);
        p.add_term(m, &c);
        p
    }

    /// Builds a polynomial, normalizing each coefficient into the domain.
    /// Coefficients that do not live in the domain cause a panic; use
    /// [`ScalarDomain::normalize`] first when the input is untrusted.
    pub fn from_terms(
        domain: ScalarDomain,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = Poly::zero(domain, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &BigRational) {
        let c = self.domain.normalize(c).expect("coefficient outside the domain");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.domain.add(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common total degree when the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut out = Poly::zero(self.domain, self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &self.domain.mul(v, c));
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            domain: self.domain,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t = self.domain.mul(&t, x);
                }
            }
            acc = self.domain.add(&acc, &t);
        }
        acc
    }

    /// Same polynomial read in another domain (coefficients re-normalized).
    pub fn with_domain(&self, domain: ScalarDomain) -> Option<Poly> {
        let mut out = Poly::zero(domain, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &domain.normalize(c).ok()?);
        }
        Some(out)
    }

    /// Appends `extra` variables that do not occur.
    pub fn extended(&self, extra: usize) -> Poly {
        Poly {
            domain: self.domain,
            nvars: self.nvars + extra,
            terms: self.terms.iter().map(|(m, c)| (m.extended(extra), c.clone())).collect(),
        }
    }

    /// Leading term for the plain lexicographic order `X_1 > X_2 > ...`.
    fn lex_leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor` over the fraction field of the domain,
    /// or `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let field = self.domain.fraction_field();
        let (lm, lc) = divisor.lex_leading()?;
        let lc_inv = field.inv(lc)?;
        let mut rem = self.clone();
        rem.domain = field;
        let divisor = divisor.with_domain(field)?;
        let mut quot = Poly::zero(field, self.nvars);
        while let Some((m, c)) = rem.lex_leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = field.mul(c, &lc_inv);
            let t = Poly::term(field, qm, qc);
            rem = &rem - &(&t * &divisor);
            quot = &quot + &t;
        }
        quot.with_domain(self.domain)
    }

    fn check_same_ring(&self, other: &Poly) {
        assert!(
            self.domain == other.domain && self.nvars == other.nvars,
            "ring mismatch: {}[{} vars] vs {}[{} vars]",
            self.domain,
            self.nvars,
            other.domain,
            other.nvars
        );
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.check_same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            domain: self.domain,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), self.domain.neg(c))).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.check_same_ring(rhs);
        let mut out = Poly::zero(self.domain, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &self.domain.mul(ca, cb));
            }
        }
        out
    }
}

pub fn x_var_name(nvars: usize, i: usize) -> String {
    if nvars <= 3 {
        ["X", "Y", "Z"][i].to_string()
    } else {
        format!("X{}", i + 1)
    }
}

pub fn u_var_name(nvars: usize, i: usize) -> String {
    if nvars <= 3 {
        ["U", "V", "W"][i].to_string()
    } else {
        format!("U{}", i + 1)
    }
}

/// Writes `X^2*Y` style power products; returns false when nothing was written.
pub(crate) fn write_powers(out: &mut String, m: &Monomial, name: impl Fn(usize) -> String, mut first: bool) -> bool {
    let mut wrote = false;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        wrote = true;
        out.push_str(&name(i));
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
    wrote
}

/// Formats a flat sum of `(coefficient, power-product)` terms in the text grammar.
pub(crate) fn format_terms(terms: impl Iterator<Item = (BigRational, String)>) -> String {
    let mut out = String::new();
    for (k, (c, powers)) in terms.enumerate() {
        let neg = c < BigRational::zero();
        let abs = if neg { -c } else { c };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if powers.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&powers);
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&powers);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.nvars;
        let s = format_terms(self.terms.iter().rev().map(|(m, c)| {
            let mut p = String::new();
            write_powers(&mut p, m, |i| x_var_name(n, i), true);
            (c.clone(), p)
        }));
        f.write_str(&s)
    }
}
