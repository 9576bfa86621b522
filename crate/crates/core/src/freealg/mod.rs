//! The free algebra `T(V)` of a diagonal braiding as a graded braided Hopf
//! algebra: words and elements, braided commutators and iterated brackets,
//! the coproduct into the braided tensor square, primitivity, and the
//! quantum symmetrizer `Ω` whose kernel is the Nichols ideal.
//!
//! Elements are plain data (a map from words to scalars). Every operation
//! that involves the braiding takes the [`BraidingMatrix`] explicitly.

pub mod grammar;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

use crate::braiding::BraidingMatrix;
use crate::cyclo::CycScalar;

pub use grammar::{parse_element, Env, ParseError};

/// Default degree cap for [`quantum_symmetrizer`].
pub const DEFAULT_SYMMETRIZER_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeAlgError {
    #[error("degree {degree} exceeds the symmetrizer cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("generator x{0} is out of range for rank {1}")]
    Generator(usize, usize),
}

/// A word in the letters `0..θ`, ordered by length first and then
/// lexicographically (so `x1 < x2 < x1x1`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(SmallVec::from_slice(&[i as u8]))
    }

    pub fn from_letters(letters: &[u8]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    /// From 0-based indices.
    pub fn from_indices(idx: &[usize]) -> Self {
        Word(idx.iter().map(|&i| i as u8).collect())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, a: u8) {
        self.0.push(a);
    }

    pub fn multidegree(&self, theta: usize) -> Vec<i64> {
        let mut d = vec![0i64; theta];
        for &a in &self.0 {
            d[a as usize] += 1;
        }
        d
    }

    /// Largest letter plus one (0 for the empty word).
    pub fn rank_needed(&self) -> usize {
        self.0.iter().map(|&a| a as usize + 1).max().unwrap_or(0)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, &a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{}", a as usize + 1)?;
        }
        Ok(())
    }
}

/// Exponent of `q(deg u, deg v)` for words `u`, `v`.
pub fn word_form_exp(q: &BraidingMatrix, u: &[u8], v: &[u8]) -> i64 {
    let n = q.order() as i64;
    let mut acc = 0i64;
    for &a in u {
        for &b in v {
            acc += q.exp(a as usize, b as usize);
        }
    }
    acc.rem_euclid(n)
}

/// An element of `T(V)`: a finite linear combination of words. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, CycScalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement::default()
    }

    pub fn one() -> Self {
        Self::scalar(CycScalar::one())
    }

    pub fn scalar(c: CycScalar) -> Self {
        Self::monomial(Word::empty(), c)
    }

    /// The generator `x_i` (0-based `i`).
    pub fn generator(i: usize) -> Self {
        Self::monomial(Word::letter(i), CycScalar::one())
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, CycScalar::one())
    }

    pub fn monomial(w: Word, c: CycScalar) -> Self {
        let mut e = FreeElement::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, CycScalar)>>(it: I) -> Self {
        let mut e = FreeElement::zero();
        for (w, c) in it {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, CycScalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, CycScalar> {
        self.terms
    }

    /// Number of terms; the zero element has none (see `is_zero`).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> CycScalar {
        self.terms.get(w).cloned().unwrap_or_else(CycScalar::zero)
    }

    /// Largest word in deglex order together with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &CycScalar)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return FreeElement::zero();
        }
        FreeElement { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Largest word length (0 for scalars and for zero).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.terms.keys().map(Word::len).min().unwrap_or(0)
    }

    /// Smallest rank whose generators cover every letter in the element.
    pub fn rank_needed(&self) -> usize {
        self.terms.keys().map(Word::rank_needed).max().unwrap_or(0)
    }

    /// The scalar value when the element has degree 0.
    pub fn as_scalar(&self) -> Option<CycScalar> {
        match self.terms.len() {
            0 => Some(CycScalar::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    /// Splits into `Z^θ`-homogeneous components.
    pub fn homogeneous_parts(&self, theta: usize) -> BTreeMap<Vec<i64>, FreeElement> {
        let mut out: BTreeMap<Vec<i64>, FreeElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.multidegree(theta)).or_default().terms.insert(w.clone(), c.clone());
        }
        out
    }

    /// The common multidegree of a nonzero homogeneous element.
    pub fn multidegree(&self, theta: usize) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|w| w.multidegree(theta));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, theta: usize) -> bool {
        self.is_zero() || self.multidegree(theta).is_some()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = FreeElement::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Components of word length exactly `d`.
    pub fn component_of_length(&self, d: usize) -> Self {
        FreeElement { terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Writes `c` as a coefficient in front of a word; returns whether the
/// term is negated so that the caller can print a minus sign.
fn coefficient_text(c: &CycScalar) -> (bool, String) {
    if let Some(r) = c.as_rational() {
        let neg = r < num_rational::BigRational::from_integer(0.into());
        let a = if neg { -r } else { r };
        return (neg, a.to_string());
    }
    (false, format!("({c})"))
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let (neg, text) = coefficient_text(c);
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if w.is_empty() {
                f.write_str(&text)?;
            } else if text == "1" {
                write!(f, "{w}")?;
            } else {
                write!(f, "{text}*{w}")?;
            }
        }
        Ok(())
    }
}

impl Add for &FreeElement {
    type Output = FreeElement;
    fn add(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &FreeElement {
    type Output = FreeElement;
    fn sub(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for FreeElement {
    type Output = FreeElement;
    fn add(mut self, rhs: FreeElement) -> FreeElement {
        self += &rhs;
        self
    }
}

impl Sub for FreeElement {
    type Output = FreeElement;
    fn sub(mut self, rhs: FreeElement) -> FreeElement {
        self -= &rhs;
        self
    }
}

impl AddAssign<&FreeElement> for FreeElement {
    fn add_assign(&mut self, rhs: &FreeElement) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl SubAssign<&FreeElement> for FreeElement {
    fn sub_assign(&mut self, rhs: &FreeElement) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

impl Neg for &FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        FreeElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Neg for FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        -&self
    }
}

impl Mul for &FreeElement {
    type Output = FreeElement;
    fn mul(self, rhs: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

impl Mul for FreeElement {
    type Output = FreeElement;
    fn mul(self, rhs: FreeElement) -> FreeElement {
        &self * &rhs
    }
}

impl Mul<&CycScalar> for &FreeElement {
    type Output = FreeElement;
    fn mul(self, rhs: &CycScalar) -> FreeElement {
        self.scale(rhs)
    }
}

/// Concatenation product; provided for symmetry with the braided operations.
pub fn multiply(a: &FreeElement, b: &FreeElement) -> FreeElement {
    a * b
}

/// `[a, b]_c = ab − q(deg a, deg b) ba`, extended bilinearly over the
/// homogeneous components of `a` and `b`.
pub fn braided_commutator(q: &BraidingMatrix, a: &FreeElement, b: &FreeElement) -> FreeElement {
    let t = q.theta();
    let pa = a.homogeneous_parts(t);
    let pb = b.homogeneous_parts(t);
    let mut out = FreeElement::zero();
    for (da, ea) in &pa {
        for (db, eb) in &pb {
            let c = q.form(da, db);
            out += &(ea * eb);
            out -= &(eb * ea).scale(&c);
        }
    }
    out
}

/// Braided adjoint action `(ad_c x_i)(a) = [x_i, a]_c` (0-based `i`).
pub fn ad(q: &BraidingMatrix, i: usize, a: &FreeElement) -> FreeElement {
    braided_commutator(q, &FreeElement::generator(i), a)
}

/// `x_{i_1 … i_k} = (ad_c x_{i_1}) x_{i_2 … i_k}` for 0-based indices; the
/// empty list gives 1.
pub fn iterated_bracket(q: &BraidingMatrix, idx: &[usize]) -> FreeElement {
    match idx.split_last() {
        None => FreeElement::one(),
        Some((&last, rest)) => {
            let mut acc = FreeElement::generator(last);
            for &i in rest.iter().rev() {
                acc = ad(q, i, &acc);
            }
            acc
        }
    }
}

/// Interval root vector `x_{(i j)}`: `x_{i i+1 … j}` for `i ≤ j` and
/// `x_{i i−1 … j}` for `i > j` (0-based).
pub fn xint(q: &BraidingMatrix, i: usize, j: usize) -> FreeElement {
    let idx: Vec<usize> = if i <= j { (i..=j).collect() } else { (j..=i).rev().collect() };
    iterated_bracket(q, &idx)
}

/// An element of `T(V) ⊗ T(V)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), CycScalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    /// `a ⊗ b`.
    pub fn pure(a: &FreeElement, b: &FreeElement) -> Self {
        let mut out = TensorElement::zero();
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                out.add_term(u.clone(), v.clone(), x * y);
            }
        }
        out
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((u, v)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), CycScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = TensorElement::zero();
        for ((u, v), x) in &self.terms {
            out.add_term(u.clone(), v.clone(), x * c);
        }
        out
    }

    /// Braided product `(a⊗b)(c⊗d) = q(deg b, deg c) ac ⊗ bd`.
    pub fn braided_mul(&self, q: &BraidingMatrix, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let e = word_form_exp(q, b.letters(), c.letters());
                let coef = &(x * y) * &CycScalar::root_of_unity(q.order(), e);
                out.add_term(a.concat(c), b.concat(d), coef);
            }
        }
        out
    }

    /// Applies linear maps to the two legs: `Σ c u⊗v ↦ Σ c f(u)⊗g(v)`.
    pub fn map_legs<E>(
        &self,
        mut f: impl FnMut(&Word) -> Result<FreeElement, E>,
        mut g: impl FnMut(&Word) -> Result<FreeElement, E>,
    ) -> Result<TensorElement, E> {
        let mut left_cache: HashMap<Word, FreeElement> = HashMap::new();
        let mut right_cache: HashMap<Word, FreeElement> = HashMap::new();
        let mut out = TensorElement::zero();
        for ((u, v), c) in &self.terms {
            if !left_cache.contains_key(u) {
                left_cache.insert(u.clone(), f(u)?);
            }
            if !right_cache.contains_key(v) {
                right_cache.insert(v.clone(), g(v)?);
            }
            let (l, r) = (&left_cache[u], &right_cache[v]);
            for (a, x) in l.terms() {
                for (b, y) in r.terms() {
                    out.add_term(a.clone(), b.clone(), &(c * x) * y);
                }
            }
        }
        Ok(out)
    }

    /// Groups the terms by right leg: `Σ_v (Σ_u c u) ⊗ v`.
    pub fn by_right_leg(&self) -> BTreeMap<Word, FreeElement> {
        let mut out: BTreeMap<Word, FreeElement> = BTreeMap::new();
        for ((u, v), c) in &self.terms {
            out.entry(v.clone()).or_default().add_term(u.clone(), c.clone());
        }
        out
    }
}

impl AddAssign<&TensorElement> for TensorElement {
    fn add_assign(&mut self, rhs: &TensorElement) {
        for ((u, v), c) in &rhs.terms {
            self.add_term(u.clone(), v.clone(), c.clone());
        }
    }
}

impl SubAssign<&TensorElement> for TensorElement {
    fn sub_assign(&mut self, rhs: &TensorElement) {
        for ((u, v), c) in &rhs.terms {
            self.add_term(u.clone(), v.clone(), -c);
        }
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((u, v), c)) in self.terms.iter().rev().enumerate() {
            let (neg, text) = coefficient_text(c);
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if text != "1" {
                write!(f, "{text}*")?;
            }
            write!(f, "{u}⊗{v}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// JSON: words are lists of 1-based generator indices

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let idx: Vec<usize> = self.0.iter().map(|&a| a as usize + 1).collect();
        idx.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let idx = Vec::<usize>::deserialize(d)?;
        if idx.iter().any(|&i| i == 0 || i > 256) {
            return Err(D::Error::custom("generator indices are 1-based and at most 256"));
        }
        Ok(Word(idx.iter().map(|&i| (i - 1) as u8).collect()))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: Word,
    coeff: CycScalar,
}

#[derive(Serialize, Deserialize)]
struct TensorTermJson {
    left: Word,
    right: Word,
    coeff: CycScalar,
}

impl Serialize for FreeElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self.terms.iter().map(|(w, c)| TermJson { word: w.clone(), coeff: c.clone() }).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FreeElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        Ok(FreeElement::from_terms(terms.into_iter().map(|t| (t.word, t.coeff))))
    }
}

impl Serialize for TensorElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TensorTermJson> = self
            .terms
            .iter()
            .map(|((u, v), c)| TensorTermJson { left: u.clone(), right: v.clone(), coeff: c.clone() })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let mut out = TensorElement::zero();
        for t in Vec::<TensorTermJson>::deserialize(d)? {
            out.add_term(t.left, t.right, t.coeff);
        }
        Ok(out)
    }
}

/// Coproduct of a single word as integer combinations of powers of `ζ`,
/// obtained by multiplying out `Δ(x_{w_1}) ⋯ Δ(x_{w_n})` in the braided
/// tensor square.
fn word_coproduct_counts(q: &BraidingMatrix, w: &Word) -> HashMap<(Word, Word), Vec<i64>> {
    let m = q.order() as usize;
    let mut cur: HashMap<(Word, Word), Vec<i64>> = HashMap::new();
    let mut unit = vec![0i64; m];
    unit[0] = 1;
    cur.insert((Word::empty(), Word::empty()), unit);
    for &a in w.letters() {
        let mut next: HashMap<(Word, Word), Vec<i64>> = HashMap::with_capacity(cur.len() * 2);
        for ((u, v), counts) in cur {
            // (u⊗v)(x_a⊗1) = q(deg v, α_a) u x_a ⊗ v
            let shift = word_form_exp(q, v.letters(), &[a]) as usize;
            let mut ua = u.clone();
            ua.push(a);
            let slot = next.entry((ua, v.clone())).or_insert_with(|| vec![0; m]);
            for (e, &c) in counts.iter().enumerate() {
                if c != 0 {
                    slot[(e + shift) % m] += c;
                }
            }
            // (u⊗v)(1⊗x_a) = u ⊗ v x_a
            let mut va = v;
            va.push(a);
            let slot = next.entry((u, va)).or_insert_with(|| vec![0; m]);
            for (s, c) in slot.iter_mut().zip(&counts) {
                *s += c;
            }
        }
        cur = next;
    }
    cur
}

/// The braided coproduct: the algebra map `T(V) → T(V) ⊗ T(V)` (braided
/// tensor product) with `Δ(x_i) = x_i ⊗ 1 + 1 ⊗ x_i`.
pub fn coproduct(q: &BraidingMatrix, a: &FreeElement) -> TensorElement {
    let m = q.order();
    let mut out = TensorElement::zero();
    for (w, c) in a.terms() {
        for ((u, v), counts) in word_coproduct_counts(q, w) {
            let s = CycScalar::from_root_counts(m, &counts);
            out.add_term(u, v, &s * c);
        }
    }
    out
}

/// `Δ(a) − a⊗1 − 1⊗a`.
pub fn reduced_coproduct(q: &BraidingMatrix, a: &FreeElement) -> TensorElement {
    let mut d = coproduct(q, a);
    let one = FreeElement::one();
    d -= &TensorElement::pure(a, &one);
    d -= &TensorElement::pure(&one, a);
    // the scalar part of a was subtracted twice
    if let Some(c) = a.terms().get(&Word::empty()) {
        d.add_term(Word::empty(), Word::empty(), c.clone());
    }
    d
}

/// Whether `Δ(a) = a⊗1 + 1⊗a` in `T(V) ⊗ T(V)`.
pub fn is_primitive(q: &BraidingMatrix, a: &FreeElement) -> bool {
    reduced_coproduct(q, a).is_zero()
}

/// `∂_a(w) = Σ_{k : w_k = a} (∏_{j>k} q_{a w_j}) · (w with position k removed)`,
/// the right skew derivation dual to appending `x_a`.
pub fn skew_derivation(q: &BraidingMatrix, a: usize, r: &FreeElement) -> FreeElement {
    let m = q.order() as usize;
    let mut out = FreeElement::zero();
    for (w, c) in r.terms() {
        let letters = w.letters();
        let mut grouped: BTreeMap<Word, Vec<i64>> = BTreeMap::new();
        let mut tail = 0i64;
        for k in (0..letters.len()).rev() {
            if letters[k] as usize == a {
                let mut rest: SmallVec<[u8; 16]> = SmallVec::from_slice(&letters[..k]);
                rest.extend_from_slice(&letters[k + 1..]);
                let slot = grouped.entry(Word(rest)).or_insert_with(|| vec![0; m]);
                slot[tail.rem_euclid(m as i64) as usize] += 1;
            }
            tail += q.exp(a, letters[k] as usize);
        }
        for (v, counts) in grouped {
            out.add_term(v, &CycScalar::from_root_counts(q.order(), &counts) * c);
        }
    }
    out
}

/// The quantum symmetrizer `Ω = ⊕ Ω_n`, `Ω_n = Σ_{σ ∈ S_n}` (braided lift of σ),
/// applied to `a`. An element lies in the Nichols ideal iff its image is 0.
/// Elements of degree above [`DEFAULT_SYMMETRIZER_CAP`] are rejected.
pub fn quantum_symmetrizer(q: &BraidingMatrix, a: &FreeElement) -> Result<FreeElement, FreeAlgError> {
    quantum_symmetrizer_capped(q, a, DEFAULT_SYMMETRIZER_CAP)
}

/// [`quantum_symmetrizer`] with an explicit degree cap.
///
/// Uses `Ω(r) = Σ_a Ω(∂_a r) x_a`: the coefficient of a word `v'x_a` in
/// `Ω(r)` is the coefficient of `v'` in `Ω(∂_a r)`. The recursion is run
/// breadth-first on suffixes, so each homogeneous component of multidegree
/// `γ` costs about `n² · #words(γ)` scalar operations.
pub fn quantum_symmetrizer_capped(q: &BraidingMatrix, a: &FreeElement, cap: usize) -> Result<FreeElement, FreeAlgError> {
    let degree = a.degree();
    if degree > cap {
        return Err(FreeAlgError::DegreeCap { degree, cap });
    }
    let t = q.theta().max(a.rank_needed());
    if a.rank_needed() > q.theta() {
        return Err(FreeAlgError::Generator(a.rank_needed(), q.theta()));
    }
    let mut out = FreeElement::zero();
    for (deg, part) in a.homogeneous_parts(t) {
        let n: i64 = deg.iter().sum();
        // suffix (stored reversed) → remaining element
        let mut states: Vec<(Vec<u8>, FreeElement)> = vec![(Vec::new(), part)];
        for _ in 0..n {
            let mut next = Vec::new();
            for (suffix, rem) in states {
                for letter in 0..q.theta() {
                    let d = skew_derivation(q, letter, &rem);
                    if !d.is_zero() {
                        let mut s = suffix.clone();
                        s.push(letter as u8);
                        next.push((s, d));
                    }
                }
            }
            states = next;
        }
        for (suffix, rem) in states {
            if let Some(c) = rem.as_scalar() {
                let w: SmallVec<[u8; 16]> = suffix.iter().rev().copied().collect();
                out.add_term(Word(w), c);
            }
        }
    }
    Ok(out)
}

/// Whether `a` lies in the Nichols ideal, i.e. `Ω(a) = 0`.
pub fn in_nichols_ideal(q: &BraidingMatrix, a: &FreeElement, cap: usize) -> Result<bool, FreeAlgError> {
    Ok(quantum_symmetrizer_capped(q, a, cap)?.is_zero())
}
