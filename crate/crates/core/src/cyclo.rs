//! Exact arithmetic in cyclotomic fields `Q(ζ_N)` and the q-combinatorics
//! built on top of it.
//!
//! A [`CycScalar`] stores its value in the power basis `1, ζ, …, ζ^{φ(N)-1}`
//! reduced modulo the cyclotomic polynomial `Φ_N`, with integer numerators
//! over one positive common denominator. Because the reduction is canonical,
//! equality and zero-testing are plain coefficient comparisons.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Orders used to sample statements about a root of unity of "generic" order.
pub const DEFAULT_SAMPLE_ORDERS: [u32; 5] = [5, 7, 8, 9, 12];

/// Largest order for which the table of reduced powers `x^e mod Φ_N` is kept.
const POWER_TABLE_LIMIT: u32 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order must be positive")]
    ZeroModulus,
    #[error("malformed scalar: {0}")]
    Malformed(String),
}

/// Data attached to one cyclotomic order, computed once and shared.
struct FieldData {
    order: u32,
    /// Coefficients of `Φ_N`, lowest degree first; monic of degree `φ(N)`.
    phi_poly: Vec<i64>,
    /// `x^e mod Φ_N` for `0 ≤ e < N` when `N` is small enough.
    powers: Option<Vec<Vec<i64>>>,
}

impl FieldData {
    fn phi(&self) -> usize {
        self.phi_poly.len() - 1
    }

    fn power(&self, e: u64) -> Vec<i64> {
        let e = e % self.order as u64;
        if let Some(table) = &self.powers {
            return table[e as usize].clone();
        }
        reduce_monomial(&self.phi_poly, e as usize)
    }
}

fn reduce_monomial(phi_poly: &[i64], e: usize) -> Vec<i64> {
    let phi = phi_poly.len() - 1;
    let mut v = vec![0i64; phi.max(e + 1)];
    v[e] = 1;
    for k in (phi..v.len()).rev() {
        let c = v[k];
        if c != 0 {
            for (j, &p) in phi_poly.iter().enumerate().take(phi) {
                v[k - phi + j] -= c * p;
            }
            v[k] = 0;
        }
    }
    v.truncate(phi);
    v
}

fn field(order: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().expect("cyclotomic cache poisoned").get(&order) {
        return f.clone();
    }
    let phi_poly = cyclotomic_polynomial(order);
    let powers = (order <= POWER_TABLE_LIMIT).then(|| {
        let phi = phi_poly.len() - 1;
        let mut table = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..order {
            table.push(cur.clone());
            // multiply by x and reduce the single overflowing coefficient
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    cur[j] -= top * phi_poly[j];
                }
            }
        }
        table
    });
    let data = Arc::new(FieldData { order, phi_poly, powers });
    cache
        .lock()
        .expect("cyclotomic cache poisoned")
        .entry(order)
        .or_insert(data)
        .clone()
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
///
/// Uses `Φ_n = ∏_{d | n} (x^d − 1)^{μ(n/d)}`: multiply in the positive
/// factors first, then divide out the negative ones exactly.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let divisors: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut p = vec![1i64];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            let d = d as usize;
            let mut q = vec![0i64; p.len() + d];
            for (i, &c) in p.iter().enumerate() {
                q[i + d] += c;
                q[i] -= c;
            }
            p = q;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            let d = d as usize;
            let deg_q = p.len() - 1 - d;
            let mut q = vec![0i64; deg_q + 1];
            for k in 0..=deg_q {
                let prev = if k >= d { q[k - d] } else { 0 };
                q[k] = prev - p[k];
            }
            p = q;
        }
    }
    if p[p.len() - 1] < 0 {
        p.iter_mut().for_each(|c| *c = -*c);
    }
    p
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct CycScalar {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycScalar {
    fn raw(order: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut s = CycScalar { order, num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    /// The zero of `Q(ζ_order)`.
    pub fn zero_of(order: u32) -> Self {
        let phi = field(order).phi();
        CycScalar { order, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    /// Rational zero (order 1).
    pub fn zero() -> Self {
        Self::zero_of(1)
    }

    /// Rational one (order 1).
    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// An integer as an element of `Q` (order 1).
    pub fn from_int(n: i64) -> Self {
        CycScalar { order: 1, num: vec![BigInt::from(n)], den: BigInt::one() }
    }

    /// An integer viewed inside `Q(ζ_order)`.
    pub fn int_of(order: u32, n: i64) -> Self {
        let mut s = Self::zero_of(order);
        s.num[0] = BigInt::from(n);
        s
    }

    /// The rational `num/den` (order 1).
    pub fn from_ratio(num: i64, den: i64) -> Result<Self, CycloError> {
        if den == 0 {
            return Err(CycloError::DivisionByZero);
        }
        Ok(Self::raw(1, vec![BigInt::from(num)], BigInt::from(den)))
    }

    /// Builds an element from rational coefficients in the power basis of
    /// `Q(ζ_order)`. Vectors longer than `φ(order)` are reduced modulo `Φ`.
    pub fn from_rationals(order: u32, coeffs: &[(BigInt, BigInt)]) -> Result<Self, CycloError> {
        if order == 0 {
            return Err(CycloError::ZeroModulus);
        }
        let mut den = BigInt::one();
        for (_, d) in coeffs {
            if d.is_zero() {
                return Err(CycloError::DivisionByZero);
            }
            den = den.lcm(d);
        }
        let long: Vec<BigInt> = coeffs.iter().map(|(n, d)| n * (&den / d)).collect();
        let data = field(order);
        Ok(Self::raw(order, reduce_long(&data, long), den))
    }

    /// `ζ_N^k` in canonical form; its multiplicative order is `N / gcd(N, k)`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1, "root_of_unity: order must be positive");
        let data = field(n);
        let e = k.rem_euclid(n as i64) as u64;
        let num = data.power(e).into_iter().map(BigInt::from).collect();
        CycScalar { order: n, num, den: BigInt::one() }
    }

    /// `Σ_e counts[e] ζ_n^e`, for an integer combination of roots of unity.
    pub fn from_root_counts(n: u32, counts: &[i64]) -> Self {
        assert!(n >= 1, "from_root_counts: order must be positive");
        let data = field(n);
        let mut acc = vec![0i64; data.phi()];
        for (e, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, p) in acc.iter_mut().zip(data.power(e as u64)) {
                    *a += c * p;
                }
            }
        }
        CycScalar::raw(n, acc.into_iter().map(BigInt::from).collect(), BigInt::one())
    }

    /// Order `N` of the field this representative lives in.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Rational coefficients in the power basis.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the scalar is the rational number `r`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// `Some(n)` when the scalar is an integer fitting in `i64`.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.as_rational()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Representative of the same value in `Q(ζ_m)`; `m` must be a multiple
    /// of the current order.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.order), "lift: {m} is not a multiple of {}", self.order);
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as u64;
        let data = field(m);
        let mut acc = vec![BigInt::zero(); data.phi()];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = data.power(k as u64 * step);
            for (a, &v) in acc.iter_mut().zip(p.iter()) {
                if v != 0 {
                    *a += c * v;
                }
            }
        }
        CycScalar { order: m, num: acc, den: self.den.clone() }
    }

    fn aligned<'a>(a: &'a Self, b: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if a.order == b.order {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else {
            let m = lcm(a.order, b.order);
            let la = if a.order == m { Cow::Borrowed(a) } else { Cow::Owned(a.lift(m)) };
            let lb = if b.order == m { Cow::Borrowed(b) } else { Cow::Owned(b.lift(m)) };
            (la, lb)
        }
    }

    fn add_impl(a: &Self, b: &Self, sign: i8) -> Self {
        let (a, b) = Self::aligned(a, b);
        let num = if a.den == b.den {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| if sign > 0 { x + y } else { x - y })
                .collect()
        } else {
            let l = a.den.lcm(&b.den);
            let fa = &l / &a.den;
            let fb = &l / &b.den;
            let num = a
                .num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| if sign > 0 { x * &fa + y * &fb } else { x * &fa - y * &fb })
                .collect();
            return Self::raw(a.order, num, l);
        };
        Self::raw(a.order, num, a.den.clone())
    }

    fn mul_impl(a: &Self, b: &Self) -> Self {
        let (a, b) = Self::aligned(a, b);
        if a.is_zero() || b.is_zero() {
            return Self::zero_of(a.order);
        }
        let phi = a.num.len();
        if phi == 1 {
            return Self::raw(a.order, vec![&a.num[0] * &b.num[0]], &a.den * &b.den);
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let data = field(a.order);
        Self::raw(a.order, reduce_long(&data, prod), &a.den * &b.den)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let nonzero: Vec<usize> = (0..self.num.len()).filter(|&k| !self.num[k].is_zero()).collect();
        if nonzero.len() == 1 {
            // c·ζ^k has inverse c^{-1}·ζ^{-k}
            let k = nonzero[0];
            let mut r = Self::root_of_unity(self.order, -(k as i64));
            let c = &self.num[k];
            let sign = if c.is_negative() { -1 } else { 1 };
            for x in &mut r.num {
                *x = &*x * &self.den * sign;
            }
            r.den = c.abs();
            r.normalize();
            return Ok(r);
        }
        Ok(self.inv_by_elimination())
    }

    /// Solves `self · y = 1` as a linear system over `Q`.
    fn inv_by_elimination(&self) -> Self {
        let phi = self.num.len();
        let data = field(self.order);
        // column j holds the coefficients of self·ζ^j
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(phi);
        for j in 0..phi {
            let mut prod = vec![BigInt::zero(); phi + j];
            for (i, x) in self.num.iter().enumerate() {
                prod[i + j] = x.clone();
            }
            cols.push(reduce_long(&data, prod));
        }
        let mut m: Vec<Vec<BigRational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<BigRational> =
                    (0..phi).map(|c| BigRational::from_integer(cols[c][r].clone())).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi).find(|&r| !m[r][col].is_zero()).expect("nonzero field element is invertible");
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..phi {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot_row.iter()) {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        // the scalar self has been folded into the column matrix, so the
        // solution vector is in units of 1/den
        let den = self.den.clone();
        let sol: Vec<(BigInt, BigInt)> = m
            .iter()
            .map(|row| {
                let v = &row[phi] * BigRational::from_integer(den.clone());
                (v.numer().clone(), v.denom().clone())
            })
            .collect();
        Self::from_rationals(self.order, &sol).expect("elimination yields finite rationals")
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self, CycloError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::int_of(self.order, 1);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Division, failing on a zero divisor.
    pub fn checked_div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self * &other.inv()?)
    }

    /// Multiplicative order: `Ok(Some(n))` for a root of unity of order `n`,
    /// `Ok(None)` when the scalar is not a root of unity.
    pub fn mult_order(&self) -> Result<Option<u32>, CycloError> {
        if self.is_zero() {
            return Err(CycloError::ZeroOrder);
        }
        // roots of unity in Q(ζ_N) are ±ζ_N^k, whose orders divide lcm(2, N)
        let m = lcm(2, self.order);
        if !self.pow(m as i64)?.is_one() {
            return Ok(None);
        }
        for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
            if self.pow(d as i64)?.is_one() {
                return Ok(Some(d));
            }
        }
        unreachable!("x^m = 1 for m itself")
    }

    /// `Some(k)` with `self = ζ_N^k` (`N` = current order), if such `k` exists.
    pub fn root_exponent(&self) -> Option<u32> {
        if !self.den.is_one() {
            return None;
        }
        (0..self.order).find(|&k| Self::root_of_unity(self.order, k as i64) == *self)
    }
}

/// Reduces a long coefficient vector modulo `Φ_N`.
fn reduce_long(data: &FieldData, mut v: Vec<BigInt>) -> Vec<BigInt> {
    let phi = data.phi();
    if v.len() <= phi {
        v.resize(phi, BigInt::zero());
        return v;
    }
    if data.order as usize <= v.len() && data.powers.is_some() {
        // fold exponents ≥ N first using ζ^N = 1
        let n = data.order as usize;
        for k in (n..v.len()).rev() {
            if !v[k].is_zero() {
                let c = std::mem::take(&mut v[k]);
                v[k % n] += c;
            }
        }
        v.truncate(n.max(phi));
    }
    for k in (phi..v.len()).rev() {
        if v[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[k]);
        for j in 0..phi {
            let p = data.phi_poly[j];
            if p != 0 {
                v[k - phi + j] -= &c * p;
            }
        }
    }
    v.truncate(phi);
    v
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::aligned(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycScalar {}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar[N={}]({})", self.order, self)
    }
}

/// Prints the value as a polynomial in `z`, the primitive root of the order.
/// The output is accepted by the element grammar.
impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let a = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff = if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
            match k {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                let f: fn(&CycScalar, &CycScalar) -> CycScalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| CycScalar::add_impl(a, b, 1));
forward_binop!(Sub, sub, |a, b| CycScalar::add_impl(a, b, -1));
forward_binop!(Mul, mul, CycScalar::mul_impl);

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { order: self.order, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(mut self) -> CycScalar {
        for c in &mut self.num {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        if self.order == rhs.order && self.den == rhs.den {
            for (a, b) in self.num.iter_mut().zip(&rhs.num) {
                *a += b;
            }
            self.normalize();
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        if self.order == rhs.order && self.den == rhs.den {
            for (a, b) in self.num.iter_mut().zip(&rhs.num) {
                *a -= b;
            }
            self.normalize();
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycScalar> for CycScalar {
    fn mul_assign(&mut self, rhs: &CycScalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for CycScalar {
    fn from(n: i64) -> Self {
        CycScalar::from_int(n)
    }
}

/// JSON integers that fall back to strings when they do not fit in `i64`.
fn bigint_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

fn bigint_from_json(v: &serde_json::Value) -> Result<BigInt, CycloError> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| CycloError::Malformed(format!("non-integer coefficient {n}"))),
        serde_json::Value::String(s) => s.parse().map_err(|_| CycloError::Malformed(format!("bad integer {s:?}"))),
        other => Err(CycloError::Malformed(format!("unexpected coefficient {other}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    order: u32,
    coeffs: Vec<[serde_json::Value; 2]>,
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .coefficients()
            .iter()
            .map(|r| [bigint_to_json(r.numer()), bigint_to_json(r.denom())])
            .collect();
        ScalarJson { order: self.order, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = ScalarJson::deserialize(d)?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|[n, d]| Ok((bigint_from_json(n)?, bigint_from_json(d)?)))
            .collect::<Result<Vec<_>, CycloError>>()
            .map_err(D::Error::custom)?;
        CycScalar::from_rationals(j.order, &coeffs).map_err(D::Error::custom)
    }
}

/// The q-integer `(n)_q = 1 + q + … + q^{n−1}`.
pub fn q_integer(n: u32, q: &CycScalar) -> CycScalar {
    let mut acc = CycScalar::zero_of(q.order());
    let mut p = CycScalar::int_of(q.order(), 1);
    for _ in 0..n {
        acc += &p;
        p = &p * q;
    }
    acc
}

/// The q-factorial `(n)_q! = (1)_q (2)_q ⋯ (n)_q`.
pub fn q_factorial(n: u32, q: &CycScalar) -> CycScalar {
    (1..=n).fold(CycScalar::int_of(q.order(), 1), |acc, k| &acc * &q_integer(k, q))
}

/// Gaussian binomial coefficient by the q-Pascal rule
/// `[n, k] = [n−1, k−1] + q^k [n−1, k]`; no division is performed, so the
/// result is correct at roots of unity too. Returns zero when `k > n`.
pub fn q_binomial(n: u32, k: u32, q: &CycScalar) -> CycScalar {
    if k > n {
        return CycScalar::zero_of(q.order());
    }
    let one = CycScalar::int_of(q.order(), 1);
    let mut row = vec![one.clone()];
    for m in 1..=n {
        let mut next = vec![one.clone(); (m as usize + 1).min(k as usize + 1)];
        for j in 1..next.len() {
            let left = &row[j - 1];
            let right = if j < row.len() { Some(&row[j]) } else { None };
            next[j] = match right {
                Some(r) => left + &(&q.pow(j as i64).expect("q is nonzero") * r),
                None => left.clone(),
            };
        }
        row = next;
    }
    row[k as usize].clone()
}
