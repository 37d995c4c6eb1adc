//! Cohomological Hilbert functions of the top local cohomology module.
//!
//! For `R = S/I` with `S = R_0[U_1..U_s]`, the component `H^s_{R_+}(R)_{-d}` is the
//! cokernel of [`presentation_matrix`]. Its length is computed from ranks when
//! `R_0` is a field, from Smith invariants when `R_0 = ℤ`, and strand by strand
//! when `R_0 = K[X_1..X_m]`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::groebner::{is_cofinite, is_unit_ideal, quotient_dimension, GroebnerError};
use crate::linalg::ExactMatrix;
use crate::multipoly::{CoefficientRing, GradedIdeal};
use crate::parse::parse_generators;
use crate::poly::{u_var_name, Poly};
use crate::presentation::{presentation_matrix, PresentationError, PresentationMatrix};
use crate::scalars::ScalarDomain;
use crate::strand::{GradedMatrix, StrandError, StrandReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("H^{s}_(R+)(R)_(-{d}) does not have finite length: {diagnosis}")]
    NotFiniteLength { s: usize, d: u32, diagnosis: String, partial: Option<Box<StrandReport>> },
    #[error("presentation matrix at d = {d} is not graded: {source}")]
    NotGraded { d: u32, source: StrandError },
    #[error("coefficient ring {0} is not supported here (use a field, Z, or K[X..] over a field)")]
    UnsupportedRing(CoefficientRing),
    #[error("vanishing routes disagree at d = {d}: cokernel says {route_a}, content says {route_b}")]
    RouteDisagreement { d: u32, route_a: bool, route_b: bool },
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("{0}")]
    OutOfRange(String),
    #[error("need at least {needed} consecutive table rows, got {got}")]
    InsufficientData { needed: usize, got: usize },
}

/// The example rings built into the tool.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    /// `R_0[U,V,W]/(XU + YV + ZW)` with `R_0 = K[X,Y,Z]`.
    Singh,
    /// `R_0[U,V]/(2X²V² + 2XYUV + Y²U²)` with `R_0 = K[X,Y]`.
    Section3,
    /// `(U(XU + YV), V(XU + YV))` in `K[X,Y][U,V]`, whose content is `(X, Y)`.
    Remark16,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::Singh, Builtin::Section3, Builtin::Remark16];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Singh => "singh",
            Builtin::Section3 => "section3",
            Builtin::Remark16 => "remark16",
        }
    }

    /// `(m, s, generators)`.
    pub fn definition(self) -> (usize, usize, &'static str) {
        match self {
            Builtin::Singh => (3, 3, "X*U + Y*V + Z*W"),
            Builtin::Section3 => (2, 2, "2*X^2*V^2 + 2*X*Y*U*V + Y^2*U^2"),
            Builtin::Remark16 => (2, 2, "X*U^2 + Y*U*V, X*U*V + Y*V^2"),
        }
    }

    pub fn ideal(self, base: ScalarDomain) -> GradedIdeal {
        let (m, s, text) = self.definition();
        let ring = CoefficientRing::new(base, m);
        let gens = parse_generators(text, ring, s).expect("built-in ideals parse");
        GradedIdeal::new(ring, s, gens).expect("built-in ideals are homogeneous")
    }
}

impl FromStr for Builtin {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown built-in '{s}' (expected singh, section3 or remark16)"))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An ideal together with the range of degrees `-d` to tabulate.
#[derive(Clone, Debug)]
pub struct CohomologyQuery {
    pub ideal: GradedIdeal,
    pub d_min: u32,
    pub d_max: u32,
}

impl CohomologyQuery {
    pub fn new(ideal: GradedIdeal, d_min: u32, d_max: u32) -> Result<Self, CohomologyError> {
        if (d_min as usize) < ideal.s() {
            return Err(PresentationError::DegreeTooSmall { d: d_min, s: ideal.s() }.into());
        }
        if d_max < d_min {
            return Err(CohomologyError::OutOfRange(format!("empty degree range {d_min}..{d_max}")));
        }
        Ok(CohomologyQuery { ideal, d_min, d_max })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Method {
    /// `R_0` a field: `rows - rank`.
    Rank { rows: usize, rank: usize },
    /// `R_0 = ℤ`: sum of `Ω(d_i)` over the invariant factors.
    Smith { invariants: Vec<String> },
    /// `R_0 = K[X..]`: `dim_K` summed over degree strands.
    Strands { report: StrandReport },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TopDimension {
    pub d: u32,
    pub value: u64,
    pub method: Method,
}

impl TopDimension {
    pub fn stabilized_at(&self) -> Option<u32> {
        match &self.method {
            Method::Strands { report } => report.stabilized_at,
            _ => None,
        }
    }
}

/// Number of prime factors of `n > 0`, counted with multiplicity.
pub fn prime_omega(n: &BigInt) -> u64 {
    let mut n = n.abs();
    let mut count = 0;
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        while (&n % &p).is_zero() {
            n /= &p;
            count += 1;
        }
        p += 1;
    }
    if n > BigInt::one() {
        count += 1;
    }
    count
}

fn not_finite(ideal: &GradedIdeal, d: u32, diagnosis: String) -> CohomologyError {
    CohomologyError::NotFiniteLength { s: ideal.s(), d, diagnosis, partial: None }
}

fn content_string(content: &[Poly]) -> String {
    let parts: Vec<String> = content.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// `length_{R_0} H^s_{R_+}(R)_{-d}`.
pub fn top_dimension(ideal: &GradedIdeal, d: u32) -> Result<TopDimension, CohomologyError> {
    let ring = ideal.ring();
    let pm = presentation_matrix(ideal, d)?;
    if ring.x_vars == 0 {
        let m = pm.matrix().evaluate(&[]);
        if ring.base.is_field() {
            let rank = m.rank();
            let value = (m.rows() - rank) as u64;
            return Ok(TopDimension { d, value, method: Method::Rank { rows: m.rows(), rank } });
        }
        let invariants = m.smith_normal_form().expect("integer entries");
        if invariants.iter().any(Zero::is_zero) {
            return Err(not_finite(ideal, d, "free summand: the content ideal is zero".into()));
        }
        let value = invariants.iter().map(prime_omega).sum();
        let invariants = invariants.iter().map(ToString::to_string).collect();
        return Ok(TopDimension { d, value, method: Method::Smith { invariants } });
    }
    if !ring.base.is_field() {
        return Err(CohomologyError::UnsupportedRing(ring));
    }
    let content = ideal.content_ideal();
    if content.is_empty() || !is_cofinite(ring, &content)? {
        return Err(not_finite(
            ideal,
            d,
            format!("R_0/content = {ring}/{} is not finite-dimensional", content_string(&content)),
        ));
    }
    let graded = graded(&pm)?;
    let report = graded.coker_dimension(None).map_err(|e| match e {
        StrandError::NotFiniteLength { ceiling, partial } => CohomologyError::NotFiniteLength {
            s: ideal.s(),
            d,
            diagnosis: format!("no strand certificate up to degree {ceiling}"),
            partial: Some(partial),
        },
        other => CohomologyError::NotGraded { d, source: other },
    })?;
    Ok(TopDimension { d, value: report.total_dim as u64, method: Method::Strands { report } })
}

fn graded(pm: &PresentationMatrix) -> Result<GradedMatrix, CohomologyError> {
    GradedMatrix::infer(pm.matrix().clone()).map_err(|source| CohomologyError::NotGraded { d: pm.degree(), source })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertRow {
    pub d: u32,
    pub result: Result<TopDimension, CohomologyError>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable {
    pub ring: CoefficientRing,
    pub s: usize,
    pub generators: Vec<String>,
    pub rows: Vec<HilbertRow>,
}

/// One row per `d` in the query's range; a failing row does not stop the others.
pub fn hilbert_table(q: &CohomologyQuery) -> HilbertTable {
    let rows =
        (q.d_min..=q.d_max).into_par_iter().map(|d| HilbertRow { d, result: top_dimension(&q.ideal, d) }).collect();
    HilbertTable {
        ring: q.ideal.ring(),
        s: q.ideal.s(),
        generators: q.ideal.generators().iter().map(ToString::to_string).collect(),
        rows,
    }
}

impl HilbertTable {
    /// `(d, value)` pairs, or the first row error.
    pub fn values(&self) -> Result<Vec<(u32, u64)>, CohomologyError> {
        self.rows.iter().map(|r| r.result.as_ref().map(|t| (r.d, t.value)).map_err(Clone::clone)).collect()
    }

    pub fn first_error(&self) -> Option<&CohomologyError> {
        self.rows.iter().find_map(|r| r.result.as_ref().err())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .rows
            .iter()
            .map(|r| match &r.result {
                Ok(t) => json!({
                    "d": r.d,
                    "value": t.value,
                    "stabilizedAt": t.stabilized_at(),
                    "method": t.method,
                }),
                Err(e) => json!({ "d": r.d, "value": null, "error": e.to_string() }),
            })
            .collect();
        json!({
            "ring": self.ring.to_string(),
            "s": self.s,
            "characteristic": self.ring.base.characteristic(),
            "generators": self.generators,
            "rows": rows,
        })
    }

    /// Columns `d,value,stabilized_at,notes`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,value,stabilized_at,notes\n");
        for r in &self.rows {
            let line = match &r.result {
                Ok(t) => {
                    let stab = t.stabilized_at().map(|e| e.to_string()).unwrap_or_default();
                    let note = match &t.method {
                        Method::Rank { .. } => "rank".to_string(),
                        Method::Smith { invariants } => format!("smith {}", invariants.join(" ")),
                        Method::Strands { .. } => "strands".to_string(),
                    };
                    format!("{},{},{},{}\n", r.d, t.value, stab, note)
                }
                Err(e) => format!("{},,,\"{}\"\n", r.d, e.to_string().replace('"', "'")),
            };
            out.push_str(&line);
        }
        out
    }
}

impl fmt::Display for HilbertTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "R_0 = {}, s = {}, I = ({})", self.ring, self.s, self.generators.join(", "))?;
        writeln!(f, "{:>4}  {:>10}  {:>10}", "d", "value", "stabilized")?;
        for r in &self.rows {
            match &r.result {
                Ok(t) => {
                    let stab = t.stabilized_at().map(|e| e.to_string()).unwrap_or_else(|| "-".into());
                    writeln!(f, "{:>4}  {:>10}  {:>10}", r.d, t.value, stab)?;
                }
                Err(e) => writeln!(f, "{:>4}  {:>10}  {e}", r.d, "error")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Vanishing {
    pub d: u32,
    /// The cokernel of the presentation matrix is zero.
    pub route_a: bool,
    /// The content ideal is the unit ideal.
    pub route_b: bool,
}

/// Whether `H^s_{R_+}(R)_{-d} = 0`, decided on the presentation matrix and, separately,
/// by testing `content(I) = R_0`. Disagreement is an error.
pub fn vanishes(ideal: &GradedIdeal, d: u32) -> Result<Vanishing, CohomologyError> {
    let route_a = cokernel_vanishes(ideal, d)?;
    let route_b = is_unit_ideal(ideal.ring(), &ideal.content_ideal())?;
    if route_a != route_b {
        return Err(CohomologyError::RouteDisagreement { d, route_a, route_b });
    }
    Ok(Vanishing { d, route_a, route_b })
}

fn cokernel_vanishes(ideal: &GradedIdeal, d: u32) -> Result<bool, CohomologyError> {
    let ring = ideal.ring();
    let pm = presentation_matrix(ideal, d)?;
    let rows = pm.matrix().rows();
    if ring.x_vars == 0 {
        let m = pm.matrix().evaluate(&[]);
        if ring.base.is_field() {
            return Ok(m.rank() == rows);
        }
        let invariants = m.smith_normal_form().expect("integer entries");
        return Ok(invariants.iter().all(One::is_one));
    }
    if !ring.base.is_field() {
        return Err(CohomologyError::UnsupportedRing(ring));
    }
    match GradedMatrix::infer(pm.matrix().clone()) {
        // graded Nakayama: the cokernel is generated in degrees ≤ max shift
        Ok(g) => Ok((0..=g.max_shift()).all(|e| g.strand_row(e).coker_dim == 0)),
        // otherwise: the cokernel vanishes iff the maximal minors generate R_0
        Err(_) => {
            if pm.matrix().cols() < rows {
                return Ok(false);
            }
            let minors = pm.minors_ideal(rows)?;
            Ok(is_unit_ideal(ring, &minors)?)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GapFree {
    AllVanish,
    NoneVanish,
}

/// Checks on `[d_min, d_max]` that either every component vanishes or none does,
/// and that the answer matches the content test.
pub fn gap_free_check(q: &CohomologyQuery) -> Result<(GapFree, Vec<Vanishing>), CohomologyError> {
    let per_d: Vec<Vanishing> =
        (q.d_min..=q.d_max).into_par_iter().map(|d| vanishes(&q.ideal, d)).collect::<Result<_, _>>()?;
    let unit = is_unit_ideal(q.ideal.ring(), &q.ideal.content_ideal())?;
    let verdict = if unit { GapFree::AllVanish } else { GapFree::NoneVanish };
    if let Some(bad) = per_d.iter().find(|v| v.route_a != unit) {
        return Err(CohomologyError::TheoremViolation(format!(
            "component at d = {} breaks the {verdict:?} pattern",
            bad.d
        )));
    }
    Ok((verdict, per_d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TopComponent {
    pub content: Vec<String>,
    pub is_unit: bool,
    /// Length of `R_0/content(I)`, when finite.
    pub quotient_length: Option<u64>,
    /// Length of `H^s_{R_+}(R)_{-s}` as computed from the presentation, when finite.
    pub top_dimension: Option<u64>,
}

/// Compares `H^s_{R_+}(R)_{-s}` with `R_0/content(I)`.
pub fn top_component_at_s(ideal: &GradedIdeal) -> Result<TopComponent, CohomologyError> {
    let ring = ideal.ring();
    let content = ideal.content_ideal();
    let is_unit = is_unit_ideal(ring, &content)?;
    let quotient_length = if ring.x_vars == 0 {
        let constants = content.iter().map(|c| c.as_constant().expect("scalar ring"));
        if ring.base.is_field() {
            Some(u64::from(content.is_empty()))
        } else {
            let g = constants.fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
            (!g.is_zero()).then(|| prime_omega(&g))
        }
    } else if content.is_empty() {
        None
    } else {
        quotient_dimension(ring, &content)?.map(|n| n as u64)
    };
    let top = match top_dimension(ideal, ideal.s() as u32) {
        Ok(t) => Some(t.value),
        Err(CohomologyError::NotFiniteLength { .. }) => None,
        Err(e) => return Err(e),
    };
    if top != quotient_length {
        return Err(CohomologyError::TheoremViolation(format!(
            "top component at d = s has length {top:?} but R_0/content has length {quotient_length:?}"
        )));
    }
    Ok(TopComponent {
        content: content.iter().map(ToString::to_string).collect(),
        is_unit,
        quotient_length,
        top_dimension: top,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MinimalPrimesReport {
    /// Generators of `content(I)·R + R_+`; `["1"]` for the whole ring.
    pub generators: Vec<String>,
    pub whole_ring: bool,
}

/// Generators of `content(I)R + R_+`, whose minimal primes carry the top cohomology.
pub fn minimal_primes_report(ideal: &GradedIdeal) -> Result<MinimalPrimesReport, CohomologyError> {
    let content = ideal.content_ideal();
    if is_unit_ideal(ideal.ring(), &content)? {
        return Ok(MinimalPrimesReport { generators: vec!["1".into()], whole_ring: true });
    }
    let mut generators: Vec<String> = content.iter().map(ToString::to_string).collect();
    generators.extend((0..ideal.s()).map(|i| u_var_name(ideal.s(), i)));
    Ok(MinimalPrimesReport { generators, whole_ring: false })
}

/// Primes dividing `C(n, i)` for some `1 ≤ i ≤ n`.
pub fn pi_set(n: u32) -> BTreeSet<u32> {
    let primes: Vec<u32> = (2..=n).filter(|&p| crate::scalars::is_prime(p as u64)).collect();
    let mut out = BTreeSet::new();
    let mut c = BigInt::one();
    for i in 1..=n {
        c = c * BigInt::from(n - i + 1) / BigInt::from(i);
        for &p in &primes {
            if (&c % p).is_zero() {
                out.insert(p);
            }
        }
    }
    out
}

/// `d(d-1)²(d-2)/12`, for `d ≥ 3`.
pub fn h0_closed(d: u32) -> Result<u64, CohomologyError> {
    if d < 3 {
        return Err(CohomologyError::OutOfRange(format!("h0 closed form needs d ≥ 3, got {d}")));
    }
    let d = d as u64;
    Ok(d * (d - 1) * (d - 1) * (d - 2) / 12)
}

/// `d²` when `4 | d`, else `d² - 1`, for `d ≥ 2`.
pub fn h2_closed(d: u32) -> Result<u64, CohomologyError> {
    if d < 2 {
        return Err(CohomologyError::OutOfRange(format!("h2 closed form needs d ≥ 2, got {d}")));
    }
    let d = d as u64;
    Ok(if d.is_multiple_of(4) { d * d } else { d * d - 1 })
}

/// `Δ_n` from `Δ_1 = Δ_2 = 2`, `Δ_n = 2Δ_{n-1} - 2Δ_{n-2}`.
pub fn tridiag_det(n: u32) -> Result<BigInt, CohomologyError> {
    if n == 0 {
        return Err(CohomologyError::OutOfRange("tridiagonal size must be at least 1".into()));
    }
    let (mut a, mut b) = (BigInt::from(2), BigInt::from(2));
    for _ in 2..n {
        let next = 2 * &b - 2 * &a;
        a = b;
        b = next;
    }
    Ok(b)
}

/// The `n x n` matrix with 2 on the diagonal, 1 above it and 2 below it.
pub fn tridiag_matrix(n: usize) -> ExactMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match j as i64 - i as i64 {
                    0 => 2,
                    1 => 1,
                    -1 => 2,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(ScalarDomain::Integers, &rows)
}

/// A polynomial in `r = -d`, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RPolynomial {
    pub coefficients: Vec<BigRational>,
}

impl RPolynomial {
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval_r(&self, r: &BigRational) -> BigRational {
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, c| acc * r + c)
    }

    /// Value at `r = -d`.
    pub fn at_degree(&self, d: u32) -> BigRational {
        self.eval_r(&BigRational::from_integer(-BigInt::from(d)))
    }

    /// Newton interpolation through `(r_i, y_i)` with distinct `r_i`.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Self {
        let n = points.len();
        let xs: Vec<&BigRational> = points.iter().map(|(x, _)| x).collect();
        let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
            }
        }
        // Horner on the Newton form: p = dd[0] + (r - x0)(dd[1] + (r - x1)(...))
        let mut coeffs = vec![BigRational::zero(); n.max(1)];
        for i in (0..n).rev() {
            // coeffs := coeffs * (r - xs[i]) + dd[i]
            let mut next = vec![BigRational::zero(); coeffs.len()];
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if k + 1 < next.len() {
                    next[k + 1] += c;
                }
                next[k] -= c * xs[i];
            }
            next[0] += &dd[i];
            coeffs = next;
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RPolynomial { coefficients: coeffs }
    }
}

impl fmt::Display for RPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if parts.is_empty() {
                if c.is_negative() {
                    "-"
                } else {
                    ""
                }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            let a = c.abs();
            let body = match k {
                0 => a.to_string(),
                _ => {
                    let power = if k == 1 { "r".to_string() } else { format!("r^{k}") };
                    if a.is_one() {
                        power
                    } else if a.is_integer() {
                        format!("{a}*{power}")
                    } else if a.numer().is_one() {
                        format!("{power}/{}", a.denom())
                    } else {
                        format!("{}*{power}/{}", a.numer(), a.denom())
                    }
                }
            };
            parts.push(format!("{sign}{body}"));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.concat())
    }
}

impl Serialize for RPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        json!({ "variable": "r = -d", "coefficients": coeffs, "text": self.to_string() }).serialize(s)
    }
}

/// An interpolant through `window + 1` consecutive rows and a row it gets wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Interpolant {
    pub from_d: u32,
    pub to_d: u32,
    pub polynomial: RPolynomial,
    pub conflict_d: u32,
    pub table_value: u64,
    pub predicted: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "camelCase")]
pub enum Fit {
    /// One polynomial in `r = -d` matches every row.
    Polynomial { polynomial: RPolynomial, window: usize, rows: usize },
    /// The first-window and last-window interpolants each miss some row.
    Refutation { first: Interpolant, last: Interpolant },
}

/// Fits a polynomial in `r = -d` through the first `window + 1` rows and checks the rest.
/// Rows must have consecutive `d`.
pub fn fit_reverse_polynomial(rows: &[(u32, u64)], window: usize) -> Result<Fit, CohomologyError> {
    let needed = window + 2;
    let consecutive = rows.windows(2).all(|w| w[1].0 == w[0].0 + 1);
    if rows.len() < needed || !consecutive {
        return Err(CohomologyError::InsufficientData { needed, got: rows.len() });
    }
    let point = |&(d, v): &(u32, u64)| {
        (BigRational::from_integer(-BigInt::from(d)), BigRational::from_integer(BigInt::from(v)))
    };
    let through = |slice: &[(u32, u64)]| RPolynomial::interpolate(&slice.iter().map(point).collect::<Vec<_>>());
    let conflict = |p: &RPolynomial| {
        rows.iter().find(|&&(d, v)| p.at_degree(d) != BigRational::from_integer(BigInt::from(v))).copied()
    };
    let first = through(&rows[..=window]);
    let Some((cd, cv)) = conflict(&first) else {
        return Ok(Fit::Polynomial { polynomial: first, window, rows: rows.len() });
    };
    let last_rows = &rows[rows.len() - window - 1..];
    let last = through(last_rows);
    let (ld, lv) = conflict(&last).expect("distinct interpolants through the whole table cannot both fit");
    let first = Interpolant {
        from_d: rows[0].0,
        to_d: rows[window].0,
        predicted: first.at_degree(cd).to_string(),
        polynomial: first,
        conflict_d: cd,
        table_value: cv,
    };
    let last = Interpolant {
        from_d: last_rows[0].0,
        to_d: last_rows[window].0,
        predicted: last.at_degree(ld).to_string(),
        polynomial: last,
        conflict_d: ld,
        table_value: lv,
    };
    Ok(Fit::Refutation { first, last })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CharRow {
    pub d: u32,
    pub h0: u64,
    pub hp: u64,
    pub equal: bool,
    pub p_in_pi: bool,
}

/// Compares the Singh example over `ℚ` and over `𝔽_p` for each `d`, checking
/// `h_0 ≤ h_p` with equality exactly when `p ∉ Π(d - 2)`.
pub fn char_comparison(p: u64, d_min: u32, d_max: u32) -> Result<Vec<CharRow>, CohomologyError> {
    let fp = ScalarDomain::prime_field(p).map_err(|e| CohomologyError::OutOfRange(e.to_string()))?;
    if d_min < 3 || d_max < d_min {
        return Err(CohomologyError::OutOfRange(format!("degree range {d_min}..{d_max} must start at 3 or later")));
    }
    let over_q = Builtin::Singh.ideal(ScalarDomain::Rationals);
    let over_p = Builtin::Singh.ideal(fp);
    let rows: Vec<CharRow> = (d_min..=d_max)
        .into_par_iter()
        .map(|d| {
            let h0 = top_dimension(&over_q, d)?.value;
            let hp = top_dimension(&over_p, d)?.value;
            let p_in_pi = pi_set(d - 2).contains(&(p as u32));
            Ok(CharRow { d, h0, hp, equal: h0 == hp, p_in_pi })
        })
        .collect::<Result<_, CohomologyError>>()?;
    for r in &rows {
        if r.h0 > r.hp || r.equal == r.p_in_pi {
            return Err(CohomologyError::TheoremViolation(format!(
                "p = {p}, d = {}: h_0 = {}, h_p = {}, p in Pi(d-2) = {}",
                r.d, r.h0, r.hp, r.p_in_pi
            )));
        }
    }
    Ok(rows)
}

pub fn char_rows_to_csv(rows: &[CharRow]) -> String {
    let mut out = String::from("d,h0,hp,equal,p_in_pi\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{}\n", r.d, r.h0, r.hp, r.equal, r.p_in_pi));
    }
    out
}
