//! Truncated multivariate Hilbert series in `t_1, …, t_θ`.
//!
//! A [`TruncatedSeries`] keeps every coefficient of total degree at most its
//! bound. Series built by [`series_product_formula`] remember their factors,
//! which is what [`growth_degree`] reads.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braiding::BraidingMatrix;
use crate::weyl::{distinguished_heights, positive_roots, WeylError, DEFAULT_HEIGHT_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("factor exponent vector is zero")]
    ZeroVector,
    #[error("factor exponent vector {0:?} has a negative entry")]
    Negative(Vec<i64>),
    #[error("factor exponent vector has {got} entries, expected {expected}")]
    Rank { got: usize, expected: usize },
    #[error("series bounds differ: {0} and {1}")]
    BoundMismatch(usize, usize),
    #[error("series have different numbers of variables: {0} and {1}")]
    ThetaMismatch(usize, usize),
    #[error("constant term {0} is not a unit, division would not be exact")]
    NotInvertible(BigInt),
    #[error("height must be at least 2, got {0}")]
    Height(u32),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// A denominator factor `(1 − t^{Nα})/(1 − t^α)`, or `1/(1 − t^α)` when the
/// height is unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootFactor {
    pub root: Vec<i64>,
    pub height: Option<u32>,
}

/// Factors of a product formula: `∏ (1 + t^v) · ∏ RootFactor`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFormula {
    pub numerators: Vec<Vec<i64>>,
    pub denominators: Vec<RootFactor>,
}

/// Result of [`growth_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Growth {
    Degree(usize),
    Inconclusive,
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Growth::Degree(d) => write!(f, "{d}"),
            Growth::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    theta: usize,
    bound: usize,
    coeffs: BTreeMap<Vec<i64>, BigInt>,
    formula: Option<ProductFormula>,
}

fn total(d: &[i64]) -> usize {
    d.iter().sum::<i64>() as usize
}

impl TruncatedSeries {
    pub fn zero(theta: usize, bound: usize) -> Self {
        TruncatedSeries { theta, bound, coeffs: BTreeMap::new(), formula: None }
    }

    pub fn one(theta: usize, bound: usize) -> Self {
        let mut s = Self::zero(theta, bound);
        s.coeffs.insert(vec![0; theta], BigInt::one());
        s.formula = Some(ProductFormula::default());
        s
    }

    /// Series with the given coefficients; terms above the bound are dropped.
    pub fn from_coefficients<I>(theta: usize, bound: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let mut s = Self::zero(theta, bound);
        for (d, c) in coeffs {
            s.add(d, c);
        }
        s
    }

    /// The series whose coefficients are the given graded dimensions.
    pub fn from_dimensions(theta: usize, bound: usize, dims: &BTreeMap<Vec<i64>, u64>) -> Self {
        Self::from_coefficients(theta, bound, dims.iter().map(|(d, &c)| (d.clone(), BigInt::from(c))))
    }

    fn add(&mut self, d: Vec<i64>, c: BigInt) {
        if c.is_zero() || total(&d) > self.bound {
            return;
        }
        let e = self.coeffs.entry(d.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&d);
        }
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn coefficient(&self, d: &[i64]) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    /// Non-zero coefficients by multidegree.
    pub fn coefficients(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.coeffs
    }

    pub fn formula(&self) -> Option<&ProductFormula> {
        self.formula.as_ref()
    }

    /// Sum of the coefficients of total degree `n`.
    pub fn total_degree_coefficient(&self, n: usize) -> BigInt {
        self.coeffs.iter().filter(|(d, _)| total(d) == n).map(|(_, c)| c).sum()
    }

    /// The same series with a smaller bound.
    pub fn truncate(&self, bound: usize) -> Self {
        let bound = bound.min(self.bound);
        TruncatedSeries {
            theta: self.theta,
            bound,
            coeffs: self.coeffs.iter().filter(|(d, _)| total(d) <= bound).map(|(d, c)| (d.clone(), c.clone())).collect(),
            formula: self.formula.clone(),
        }
    }

    fn compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.theta != other.theta {
            return Err(SeriesError::ThetaMismatch(self.theta, other.theta));
        }
        if self.bound != other.bound {
            return Err(SeriesError::BoundMismatch(self.bound, other.bound));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.compatible(other)?;
        let mut out = Self::zero(self.theta, self.bound);
        for (a, x) in &self.coeffs {
            let ta = total(a);
            for (b, y) in &other.coeffs {
                if ta + total(b) > self.bound {
                    continue;
                }
                let d: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
                out.add(d, x * y);
            }
        }
        out.formula = match (&self.formula, &other.formula) {
            (Some(f), Some(g)) => Some(ProductFormula {
                numerators: f.numerators.iter().chain(&g.numerators).cloned().collect(),
                denominators: f.denominators.iter().chain(&g.denominators).cloned().collect(),
            }),
            _ => None,
        };
        Ok(out)
    }

    /// Exact quotient `self / other`; the divisor's constant term must be ±1.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.compatible(other)?;
        let c0 = other.coefficient(&vec![0; self.theta]);
        if !c0.abs().is_one() {
            return Err(SeriesError::NotInvertible(c0));
        }
        let mut out = Self::zero(self.theta, self.bound);
        for d in multidegrees_up_to(self.theta, self.bound) {
            let mut acc = self.coefficient(&d);
            for (b, y) in &other.coeffs {
                if total(b) == 0 || b.iter().zip(&d).any(|(u, v)| u > v) {
                    continue;
                }
                let rest: Vec<i64> = d.iter().zip(b).map(|(u, v)| u - v).collect();
                if let Some(h) = out.coeffs.get(&rest) {
                    acc -= y * h;
                }
            }
            out.add(d, acc * &c0);
        }
        Ok(out)
    }

    /// First multidegree where the series and `dims` disagree.
    pub fn first_mismatch(&self, dims: &BTreeMap<Vec<i64>, u64>) -> Option<Vec<i64>> {
        let other = Self::from_dimensions(self.theta, self.bound, dims);
        let mut keys: Vec<&Vec<i64>> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.sort_by(|a, b| total(a).cmp(&total(b)).then_with(|| b.cmp(a)));
        keys.into_iter().find(|k| self.coefficient(k) != other.coefficient(k)).cloned()
    }
}

/// All `d ∈ N₀^θ` with `|d| ≤ bound`, by increasing total degree.
fn multidegrees_up_to(theta: usize, bound: usize) -> Vec<Vec<i64>> {
    fn rec(theta: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() + 1 == theta {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            rec(theta, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if theta == 0 {
        out.push(Vec::new());
        return out;
    }
    for n in 0..=bound as i64 {
        rec(theta, n, &mut Vec::new(), &mut out);
    }
    out
}

fn check_vector(v: &[i64], theta: usize) -> Result<(), SeriesError> {
    if v.len() != theta {
        return Err(SeriesError::Rank { got: v.len(), expected: theta });
    }
    if v.iter().any(|&c| c < 0) {
        return Err(SeriesError::Negative(v.to_vec()));
    }
    if v.iter().all(|&c| c == 0) {
        return Err(SeriesError::ZeroVector);
    }
    Ok(())
}

/// Expands `∏_v (1 + t^v) · ∏_(α, N) (1 − t^{Nα})/(1 − t^α)` through total
/// degree `bound`; `N = None` gives `1/(1 − t^α)`.
pub fn series_product_formula(
    theta: usize,
    numerators: &[Vec<i64>],
    denominators: &[(Vec<i64>, Option<u32>)],
    bound: usize,
) -> Result<TruncatedSeries, SeriesError> {
    let mut s = TruncatedSeries::one(theta, bound);
    for v in numerators {
        check_vector(v, theta)?;
        let f = TruncatedSeries::from_coefficients(theta, bound, [(vec![0; theta], BigInt::one()), (v.clone(), BigInt::one())]);
        s = s.mul(&f)?;
    }
    for (a, h) in denominators {
        check_vector(a, theta)?;
        if let Some(n) = h {
            if *n < 2 {
                return Err(SeriesError::Height(*n));
            }
        }
        let step = total(a);
        let top = h.map(|n| n as usize - 1).unwrap_or(bound / step);
        let f = TruncatedSeries::from_coefficients(
            theta,
            bound,
            (0..=top.min(bound / step)).map(|k| (a.iter().map(|c| c * k as i64).collect(), BigInt::one())),
        );
        s = s.mul(&f)?;
    }
    s.formula = Some(ProductFormula {
        numerators: numerators.to_vec(),
        denominators: denominators.iter().map(|(a, h)| RootFactor { root: a.clone(), height: *h }).collect(),
    });
    Ok(s)
}

/// `H_A · H_B == H_C` coefficient by coefficient.
pub fn extension_check(ha: &TruncatedSeries, hb: &TruncatedSeries, hc: &TruncatedSeries) -> Result<bool, SeriesError> {
    hc.compatible(ha)?;
    Ok(ha.mul(hb)?.coeffs == hc.coeffs)
}

/// Number of unbounded denominator factors of a product formula.
pub fn growth_degree(h: &TruncatedSeries) -> Growth {
    match &h.formula {
        Some(f) => Growth::Degree(f.denominators.iter().filter(|r| r.height.is_none()).count()),
        None => Growth::Inconclusive,
    }
}

/// Hilbert series of the Nichols algebra: one factor per positive root with
/// height `N_α` (unbounded when `q(α, α) = 1`).
pub fn hilbert_nichols(q: &BraidingMatrix, bound: usize) -> Result<TruncatedSeries, SeriesError> {
    let rs = positive_roots(q, DEFAULT_HEIGHT_CAP)?;
    if !rs.finite {
        return Err(WeylError::Infinite { orbit_cap: crate::weyl::DEFAULT_ORBIT_CAP, height_cap: DEFAULT_HEIGHT_CAP }.into());
    }
    let dens: Vec<(Vec<i64>, Option<u32>)> = rs.positive_roots.iter().map(|r| (r.coords.clone(), r.order)).collect();
    series_product_formula(q.theta(), &[], &dens, bound)
}

/// Hilbert series of the distinguished pre-Nichols algebra: Cartan roots
/// get unbounded height.
pub fn hilbert_distinguished(q: &BraidingMatrix, bound: usize) -> Result<TruncatedSeries, SeriesError> {
    let dens: Vec<(Vec<i64>, Option<u32>)> = distinguished_heights(q)?.into_iter().map(|(r, h)| (r.coords, h)).collect();
    series_product_formula(q.theta(), &[], &dens, bound)
}

#[derive(Serialize, Deserialize)]
struct CoefficientRow {
    degree: Vec<i64>,
    #[serde(serialize_with = "ser_big", deserialize_with = "de_big")]
    value: BigInt,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    theta: usize,
    bound: usize,
    coefficients: Vec<CoefficientRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    formula: Option<ProductFormula>,
}

fn ser_big<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(n) => s.serialize_i64(n),
        None => s.serialize_str(&v.to_string()),
    }
}

fn de_big<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Str(String),
    }
    match Repr::deserialize(d)? {
        Repr::Int(n) => Ok(BigInt::from(n)),
        Repr::Str(s) => s.parse().map_err(de::Error::custom),
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut rows: Vec<CoefficientRow> =
            self.coeffs.iter().map(|(d, c)| CoefficientRow { degree: d.clone(), value: c.clone() }).collect();
        rows.sort_by(|a, b| total(&a.degree).cmp(&total(&b.degree)).then_with(|| b.degree.cmp(&a.degree)));
        SeriesRepr { theta: self.theta, bound: self.bound, coefficients: rows, formula: self.formula.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SeriesRepr::deserialize(d)?;
        let mut s = TruncatedSeries::from_coefficients(r.theta, r.bound, r.coefficients.into_iter().map(|c| (c.degree, c.value)));
        s.formula = r.formula;
        Ok(s)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&Vec<i64>> = self.coeffs.keys().collect();
        keys.sort_by(|a, b| total(a).cmp(&total(b)).then_with(|| b.cmp(a)));
        if keys.is_empty() {
            return f.write_str("0");
        }
        for (k, d) in keys.into_iter().enumerate() {
            let c = &self.coeffs[d];
            let mono: Vec<String> = d
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("t{}", i + 1) } else { format!("t{}^{e}", i + 1) })
                .collect();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let a = c.abs();
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{a}*{}", mono.join("*"))?,
            }
        }
        write!(f, " + O(deg {})", self.bound + 1)
    }
}
