//! Quotients of `T(V)` by homogeneous ideals, through degree-truncated
//! noncommutative Gröbner bases.
//!
//! The basis is built one total degree at a time. At degree `d` the
//! candidates are the ideal generators of degree `d` and the overlap
//! S-polynomials of total degree `d`; they are reduced modulo the basis
//! elements of lower degree and then brought to reduced echelon form, one
//! multidegree at a time. Monomial order is deglex with `x1 < x2 < …`.
//!
//! Normal forms of single words are memoized. For a word of degree `e` the
//! memo is only filled once the basis is complete through degree `e`, so
//! memo entries never go stale.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use serde::Serialize;
use thiserror::Error;

use crate::braiding::BraidingMatrix;
use crate::cyclo::CycScalar;
use crate::freealg::{quantum_symmetrizer_capped, reduced_coproduct, FreeAlgError, FreeElement, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("generator {0} is a nonzero scalar; the quotient is trivial")]
    ScalarGenerator(usize),
    #[error("element of degree {degree} is above the truncation degree {bound}")]
    DegreeAbove { degree: usize, bound: usize },
    #[error("truncation degree {bound} is below the generator degree {degree}")]
    TruncationTooSmall { degree: usize, bound: usize },
    #[error("element uses generator x{0}, but the rank is {1}")]
    Rank(usize, usize),
    #[error("element is not homogeneous")]
    ElementNotHomogeneous,
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}

impl Borrow<[u8]> for Word {
    fn borrow(&self) -> &[u8] {
        self.letters()
    }
}

/// A two-sided ideal of `T(V)` given by `Z^θ`-homogeneous generators.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedIdeal {
    theta: usize,
    generators: Vec<FreeElement>,
}

impl GradedIdeal {
    pub fn new(theta: usize, generators: Vec<FreeElement>) -> Result<Self, QuotientError> {
        for (k, g) in generators.iter().enumerate() {
            if g.rank_needed() > theta {
                return Err(QuotientError::Rank(g.rank_needed(), theta));
            }
            if !g.is_homogeneous(theta) {
                return Err(QuotientError::NotHomogeneous(k));
            }
            if !g.is_zero() && g.degree() == 0 {
                return Err(QuotientError::ScalarGenerator(k));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(GradedIdeal { theta, generators })
    }

    /// The zero ideal.
    pub fn zero(theta: usize) -> Self {
        GradedIdeal { theta, generators: Vec::new() }
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn generators(&self) -> &[FreeElement] {
        &self.generators
    }

    /// A copy with one more generator.
    pub fn with(&self, g: FreeElement) -> Result<Self, QuotientError> {
        let mut gens = self.generators.clone();
        gens.push(g);
        GradedIdeal::new(self.theta, gens)
    }

    pub fn max_degree(&self) -> usize {
        self.generators.iter().map(FreeElement::degree).max().unwrap_or(0)
    }
}

/// Incremental reduced echelon form over words, leading word = largest word.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<Word, FreeElement>,
}

impl Echelon {
    fn reduce(&self, mut p: FreeElement) -> FreeElement {
        let mut cursor: Option<Word> = None;
        loop {
            let hit = {
                let range: Box<dyn DoubleEndedIterator<Item = (&Word, &CycScalar)>> = match &cursor {
                    None => Box::new(p.terms().iter()),
                    Some(c) => Box::new(p.terms().range(..c.clone())),
                };
                let mut found = None;
                for (w, c) in range.rev() {
                    if self.rows.contains_key(w) {
                        found = Some((w.clone(), c.clone()));
                        break;
                    }
                }
                found
            };
            match hit {
                None => return p,
                Some((w, c)) => {
                    p -= &self.rows[&w].scale(&c);
                    cursor = Some(w);
                }
            }
        }
    }

    /// Adds `p` if it is independent of the current rows; returns the new lead.
    fn insert(&mut self, p: FreeElement) -> Option<Word> {
        let r = self.reduce(p);
        let (lead, c) = r.leading().map(|(w, c)| (w.clone(), c.clone()))?;
        let row = r.scale(&c.inv().expect("nonzero leading coefficient"));
        // keep the rows fully reduced
        let keys: Vec<Word> = self.rows.keys().cloned().collect();
        for k in keys {
            let coef = self.rows[&k].coefficient(&lead);
            if !coef.is_zero() {
                let updated = &self.rows[&k] - &row.scale(&coef);
                self.rows.insert(k, updated);
            }
        }
        self.rows.insert(lead.clone(), row);
        Some(lead)
    }
}

/// A Gröbner basis of a homogeneous ideal, complete through total degree
/// `truncation`. Elements are monic and reduced.
pub struct GroebnerBasis {
    theta: usize,
    truncation: usize,
    elements: Vec<FreeElement>,
    leads: HashMap<Word, usize>,
    lead_lengths: BTreeSet<usize>,
    memo: Mutex<HashMap<Word, FreeElement>>,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("theta", &self.theta)
            .field("truncation", &self.truncation)
            .field("elements", &self.elements)
            .finish()
    }
}

impl GroebnerBasis {
    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Basis elements sorted by leading word.
    pub fn elements(&self) -> &[FreeElement] {
        &self.elements
    }

    pub fn leading_words(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.leads.keys().cloned().collect();
        v.sort();
        v
    }

    fn find_reducer(&self, w: &[u8]) -> Option<(usize, usize)> {
        for &len in &self.lead_lengths {
            if len > w.len() {
                break;
            }
            for i in 0..=w.len() - len {
                if let Some(&idx) = self.leads.get(&w[i..i + len]) {
                    return Some((i, idx));
                }
            }
        }
        None
    }

    /// Whether no leading word occurs in `w`.
    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.find_reducer(w.letters()).is_none()
    }

    fn nf_word(&self, w: &Word, memo: &mut HashMap<Word, FreeElement>) {
        if memo.contains_key(w) {
            return;
        }
        let mut stack = vec![w.clone()];
        while let Some(top) = stack.last().cloned() {
            if memo.contains_key(&top) {
                stack.pop();
                continue;
            }
            match self.find_reducer(top.letters()) {
                None => {
                    memo.insert(top.clone(), FreeElement::word(top));
                    stack.pop();
                }
                Some((i, idx)) => {
                    let g = &self.elements[idx];
                    let (lead, _) = g.leading().expect("nonzero basis element");
                    let l = lead.len();
                    let letters = top.letters();
                    let (u, v) = (Word::from_letters(&letters[..i]), Word::from_letters(&letters[i + l..]));
                    let mut pending = false;
                    let mut parts = Vec::new();
                    for (t, c) in g.terms() {
                        if t == lead {
                            continue;
                        }
                        let utv = u.concat(t).concat(&v);
                        if !memo.contains_key(&utv) {
                            stack.push(utv.clone());
                            pending = true;
                        }
                        parts.push((utv, c.clone()));
                    }
                    if !pending {
                        let mut acc = FreeElement::zero();
                        for (utv, c) in parts {
                            acc -= &memo[&utv].scale(&c);
                        }
                        memo.insert(top, acc);
                        stack.pop();
                    }
                }
            }
        }
    }

    fn reduce_with(&self, a: &FreeElement, memo: &mut HashMap<Word, FreeElement>) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w, c) in a.terms() {
            self.nf_word(w, memo);
            out += &memo[w].scale(c);
        }
        out
    }

    /// The unique normal form of `a` modulo the ideal; fails above the
    /// truncation degree, where uniqueness is not guaranteed.
    pub fn normal_form(&self, a: &FreeElement) -> Result<FreeElement, QuotientError> {
        if a.degree() > self.truncation {
            return Err(QuotientError::DegreeAbove { degree: a.degree(), bound: self.truncation });
        }
        if a.rank_needed() > self.theta {
            return Err(QuotientError::Rank(a.rank_needed(), self.theta));
        }
        let mut memo = self.memo.lock().expect("normal form memo poisoned");
        Ok(self.reduce_with(a, &mut memo))
    }

    pub fn reduces_to_zero(&self, a: &FreeElement) -> Result<bool, QuotientError> {
        Ok(self.normal_form(a)?.is_zero())
    }

    /// Number of normal words of each multidegree, through the truncation.
    pub fn graded_dimensions(&self) -> BTreeMap<Vec<i64>, u64> {
        let mut out = BTreeMap::new();
        let mut word = Vec::with_capacity(self.truncation);
        let mut deg = vec![0i64; self.theta];
        self.count_normal(&mut word, &mut deg, &mut out);
        out
    }

    fn count_normal(&self, word: &mut Vec<u8>, deg: &mut Vec<i64>, out: &mut BTreeMap<Vec<i64>, u64>) {
        *out.entry(deg.clone()).or_insert(0) += 1;
        if word.len() == self.truncation {
            return;
        }
        for a in 0..self.theta as u8 {
            word.push(a);
            // only suffixes can be new occurrences of a leading word
            let n = word.len();
            let blocked = self.lead_lengths.iter().take_while(|&&l| l <= n).any(|&l| self.leads.contains_key(&word[n - l..]));
            if !blocked {
                deg[a as usize] += 1;
                self.count_normal(word, deg, out);
                deg[a as usize] -= 1;
            }
            word.pop();
        }
    }

    /// Normal words of multidegree `gamma`, in increasing deglex order.
    pub fn normal_words(&self, gamma: &[i64]) -> Vec<Word> {
        let total: i64 = gamma.iter().sum();
        let mut out = Vec::new();
        let mut word = Vec::new();
        let mut left = gamma.to_vec();
        self.collect_normal(&mut word, &mut left, total as usize, &mut out);
        out.sort();
        out
    }

    fn collect_normal(&self, word: &mut Vec<u8>, left: &mut Vec<i64>, total: usize, out: &mut Vec<Word>) {
        if word.len() == total {
            out.push(Word::from_letters(word));
            return;
        }
        for a in 0..self.theta {
            if left[a] == 0 {
                continue;
            }
            word.push(a as u8);
            let n = word.len();
            let blocked = self.lead_lengths.iter().take_while(|&&l| l <= n).any(|&l| self.leads.contains_key(&word[n - l..]));
            if !blocked {
                left[a] -= 1;
                self.collect_normal(word, left, total, out);
                left[a] += 1;
            }
            word.pop();
        }
    }
}

fn monic(p: &FreeElement) -> FreeElement {
    match p.leading() {
        Some((_, c)) => p.scale(&c.inv().expect("nonzero leading coefficient")),
        None => p.clone(),
    }
}

/// Overlaps `lead(g) = u s`, `lead(h) = s v` with `s` non-empty and proper
/// in both; returns `(|s|, resulting degree)`.
fn overlaps(lg: &[u8], lh: &[u8]) -> Vec<usize> {
    let mut out = Vec::new();
    for k in 1..lg.len().min(lh.len()) {
        if lg[lg.len() - k..] == lh[..k] {
            out.push(k);
        }
    }
    out
}

/// Truncated Gröbner basis of `ideal` through total degree `d`.
pub fn groebner(ideal: &GradedIdeal, d: usize) -> Result<GroebnerBasis, QuotientError> {
    let top = ideal.max_degree();
    if top > d {
        return Err(QuotientError::TruncationTooSmall { degree: top, bound: d });
    }
    let theta = ideal.theta();
    let mut gb = GroebnerBasis {
        theta,
        truncation: d,
        elements: Vec::new(),
        leads: HashMap::new(),
        lead_lengths: BTreeSet::new(),
        memo: Mutex::new(HashMap::new()),
    };
    let mut memo: HashMap<Word, FreeElement> = HashMap::new();
    // degree → list of (g, h, overlap length)
    let mut pending: BTreeMap<usize, Vec<(usize, usize, usize)>> = BTreeMap::new();
    let mut by_degree: BTreeMap<usize, Vec<&FreeElement>> = BTreeMap::new();
    for g in ideal.generators() {
        by_degree.entry(g.degree()).or_default().push(g);
    }
    for deg in 1..=d {
        let mut candidates: Vec<FreeElement> = by_degree.get(&deg).map(|v| v.iter().map(|g| (*g).clone()).collect()).unwrap_or_default();
        for (gi, hi, k) in pending.remove(&deg).unwrap_or_default() {
            let g = &gb.elements[gi];
            let h = &gb.elements[hi];
            let lg = g.leading().unwrap().0.clone();
            let lh = h.leading().unwrap().0.clone();
            let v = Word::from_letters(&lh.letters()[k..]);
            let u = Word::from_letters(&lg.letters()[..lg.len() - k]);
            let s = &(g * &FreeElement::word(v)) - &(&FreeElement::word(u) * h);
            candidates.push(s);
        }
        let mut echelons: BTreeMap<Vec<i64>, Echelon> = BTreeMap::new();
        for c in candidates {
            let r = gb.reduce_with(&c, &mut memo);
            if r.is_zero() {
                continue;
            }
            let md = r.multidegree(theta).expect("homogeneous candidate");
            echelons.entry(md).or_default().insert(r);
        }
        let new: Vec<FreeElement> = echelons.into_values().flat_map(|e| e.rows.into_values()).map(|r| monic(&r)).collect();
        if new.is_empty() {
            continue;
        }
        let first_new = gb.elements.len();
        for e in new {
            let lead = e.leading().unwrap().0.clone();
            gb.lead_lengths.insert(lead.len());
            gb.leads.insert(lead, gb.elements.len());
            gb.elements.push(e);
        }
        // memo entries of this degree were computed modulo lower degrees only
        let tails: HashMap<Word, FreeElement> = gb.elements[first_new..]
            .iter()
            .map(|e| {
                let (l, _) = e.leading().unwrap();
                let mut t = e.clone();
                t.add_term(l.clone(), -CycScalar::one());
                (l.clone(), -t)
            })
            .collect();
        for (_, v) in memo.iter_mut().filter(|(w, _)| w.len() == deg) {
            if v.terms().keys().any(|w| tails.contains_key(w)) {
                let mut out = FreeElement::zero();
                for (w, c) in v.terms() {
                    match tails.get(w) {
                        Some(t) => out += &t.scale(c),
                        None => out.add_term(w.clone(), c.clone()),
                    }
                }
                *v = out;
            }
        }
        // schedule overlaps involving the new elements
        for hi in first_new..gb.elements.len() {
            for gi in 0..gb.elements.len() {
                let lg = gb.elements[gi].leading().unwrap().0.letters().to_vec();
                let lh = gb.elements[hi].leading().unwrap().0.letters().to_vec();
                for k in overlaps(&lg, &lh) {
                    let dd = lg.len() + lh.len() - k;
                    if dd <= d {
                        pending.entry(dd).or_default().push((gi, hi, k));
                    }
                }
                if gi < first_new || gi > hi {
                    // the reverse order, avoiding double counting among new pairs
                    for k in overlaps(&lh, &lg) {
                        let dd = lg.len() + lh.len() - k;
                        if dd <= d {
                            pending.entry(dd).or_default().push((hi, gi, k));
                        }
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..gb.elements.len()).collect();
    order.sort_by(|&a, &b| gb.elements[a].leading().unwrap().0.cmp(gb.elements[b].leading().unwrap().0));
    let mut remap = vec![0usize; order.len()];
    for (new_i, &old_i) in order.iter().enumerate() {
        remap[old_i] = new_i;
    }
    gb.elements = order.iter().map(|&i| gb.elements[i].clone()).collect();
    for v in gb.leads.values_mut() {
        *v = remap[*v];
    }
    gb.memo = Mutex::new(memo);
    Ok(gb)
}

/// Normal form of `a` modulo the basis.
pub fn normal_form(a: &FreeElement, g: &GroebnerBasis) -> Result<FreeElement, QuotientError> {
    g.normal_form(a)
}

/// Whether `a` lies in the ideal (decided through degree `d`).
pub fn vanishes_in_quotient(a: &FreeElement, ideal: &GradedIdeal, d: usize) -> Result<bool, QuotientError> {
    groebner(ideal, d)?.reduces_to_zero(a)
}

/// Graded dimensions of `T(V)/I` through total degree `d`.
pub fn graded_dimensions(ideal: &GradedIdeal, d: usize) -> Result<BTreeMap<Vec<i64>, u64>, QuotientError> {
    Ok(groebner(ideal, d)?.graded_dimensions())
}

/// Whether `Δ(a) − a⊗1 − 1⊗a` vanishes in `T(V)/I ⊗ T(V)/I`, reducing each
/// tensor leg to normal form.
pub fn is_primitive_in_quotient(q: &BraidingMatrix, a: &FreeElement, g: &GroebnerBasis) -> Result<bool, QuotientError> {
    if a.degree() > g.truncation() {
        return Err(QuotientError::DegreeAbove { degree: a.degree(), bound: g.truncation() });
    }
    let a = g.normal_form(a)?;
    let d = reduced_coproduct(q, &a);
    let reduced = d.map_legs(|u| g.normal_form(&FreeElement::word(u.clone())), |v| g.normal_form(&FreeElement::word(v.clone())))?;
    Ok(reduced.is_zero())
}

/// Outcome of [`skew_central_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SkewCentrality {
    /// `x_i a = c_i a x_i` for every vertex, with these scalars `c_i = q(α_i, deg a)`.
    Central(Vec<CycScalar>),
    /// The relation fails at this (0-based) vertex.
    FailsAt(usize),
}

/// Checks `x_i a − q(α_i, γ) a x_i ≡ 0` modulo the ideal for every vertex.
pub fn skew_central_check(q: &BraidingMatrix, a: &FreeElement, g: &GroebnerBasis) -> Result<SkewCentrality, QuotientError> {
    let theta = q.theta();
    let gamma = a.multidegree(theta).ok_or(QuotientError::ElementNotHomogeneous)?;
    if a.degree() + 1 > g.truncation() {
        return Err(QuotientError::DegreeAbove { degree: a.degree() + 1, bound: g.truncation() });
    }
    let mut scalars = Vec::with_capacity(theta);
    for i in 0..theta {
        let mut alpha = vec![0i64; theta];
        alpha[i] = 1;
        let c = q.form(&alpha, &gamma);
        let xi = FreeElement::generator(i);
        let rel = &(&xi * a) - &(a * &xi).scale(&c);
        if !g.reduces_to_zero(&rel)? {
            return Ok(SkewCentrality::FailsAt(i));
        }
        scalars.push(c);
    }
    Ok(SkewCentrality::Central(scalars))
}

/// One PBW generator: an element with a height (`None` = unbounded).
#[derive(Clone, Debug)]
pub struct PbwLetter {
    pub name: String,
    pub element: FreeElement,
    pub height: Option<u32>,
}

/// Ordered PBW generators; monomials are `l_1^{a_1} ⋯ l_k^{a_k}` with `a_j < height_j`.
#[derive(Clone, Debug, Default)]
pub struct PbwDescription {
    pub letters: Vec<PbwLetter>,
}

impl PbwDescription {
    pub fn without(&self, k: usize) -> PbwDescription {
        let mut letters = self.letters.clone();
        letters.remove(k);
        PbwDescription { letters }
    }

    /// Number of admissible monomials per multidegree through total degree `d`.
    pub fn monomial_counts(&self, theta: usize, d: usize) -> Result<BTreeMap<Vec<i64>, u64>, QuotientError> {
        let mut acc: BTreeMap<Vec<i64>, u64> = BTreeMap::from([(vec![0i64; theta], 1)]);
        for l in &self.letters {
            let delta = l.element.multidegree(theta).ok_or(QuotientError::ElementNotHomogeneous)?;
            let size: i64 = delta.iter().sum();
            let mut next: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
            for (g, c) in &acc {
                let base: i64 = g.iter().sum();
                let mut k = 0u32;
                loop {
                    if l.height.is_some_and(|h| k >= h) || base + k as i64 * size > d as i64 {
                        break;
                    }
                    let key: Vec<i64> = g.iter().zip(&delta).map(|(a, b)| a + k as i64 * b).collect();
                    *next.entry(key).or_insert(0) += c;
                    k += 1;
                    if size == 0 {
                        break;
                    }
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Admissible monomials of multidegree `gamma`, as products of the letters.
    pub fn monomials_of(&self, theta: usize, gamma: &[i64]) -> Result<Vec<FreeElement>, QuotientError> {
        let degs: Vec<Vec<i64>> = self
            .letters
            .iter()
            .map(|l| l.element.multidegree(theta).ok_or(QuotientError::ElementNotHomogeneous))
            .collect::<Result<_, _>>()?;
        let mut out = Vec::new();
        self.monomials_rec(0, gamma.to_vec(), &degs, FreeElement::one(), &mut out);
        Ok(out)
    }

    fn monomials_rec(&self, k: usize, left: Vec<i64>, degs: &[Vec<i64>], acc: FreeElement, out: &mut Vec<FreeElement>) {
        if k == self.letters.len() {
            if left.iter().all(|&x| x == 0) {
                out.push(acc);
            }
            return;
        }
        let mut rem = left;
        let mut cur = acc;
        let mut e = 0u32;
        loop {
            self.monomials_rec(k + 1, rem.clone(), degs, cur.clone(), out);
            e += 1;
            if self.letters[k].height.is_some_and(|h| e >= h) {
                break;
            }
            let next: Vec<i64> = rem.iter().zip(&degs[k]).map(|(a, b)| a - b).collect();
            if next.iter().any(|&x| x < 0) || degs[k].iter().all(|&x| x == 0) {
                break;
            }
            rem = next;
            cur = &cur * &self.letters[k].element;
        }
    }
}

/// Result of [`pbw_span_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbwReport {
    pub counts_match: bool,
    /// First multidegree (in increasing order) where counts differ.
    pub first_mismatch: Option<Vec<i64>>,
    /// Whether the monomials' normal forms span each graded piece; `None`
    /// when the span check was not requested.
    pub spans: Option<bool>,
}

impl PbwReport {
    pub fn passed(&self) -> bool {
        self.counts_match && self.spans != Some(false)
    }
}

/// Compares the number of admissible PBW monomials with the graded
/// dimensions in every multidegree through the truncation; with
/// `span_degree = Some(e)` also checks, through total degree `e`, that the
/// monomials' normal forms have full rank.
pub fn pbw_span_check(pbw: &PbwDescription, g: &GroebnerBasis, span_degree: Option<usize>) -> Result<PbwReport, QuotientError> {
    let theta = g.theta();
    let counts = pbw.monomial_counts(theta, g.truncation())?;
    let dims = g.graded_dimensions();
    let keys: BTreeSet<&Vec<i64>> = counts.keys().chain(dims.keys()).collect();
    let mut sorted: Vec<&Vec<i64>> = keys.into_iter().collect();
    sorted.sort_by_key(|k| (k.iter().sum::<i64>(), (*k).clone()));
    let first_mismatch = sorted
        .into_iter()
        .find(|k| counts.get(*k).copied().unwrap_or(0) != dims.get(*k).copied().unwrap_or(0))
        .cloned();
    let counts_match = first_mismatch.is_none();
    let spans = match span_degree {
        None => None,
        Some(e) => {
            let mut ok = true;
            for (gamma, &dim) in dims.iter().filter(|(k, _)| k.iter().sum::<i64>() as usize <= e.min(g.truncation())) {
                let mut ech = Echelon::default();
                for m in pbw.monomials_of(theta, gamma)? {
                    ech.insert(g.normal_form(&m)?);
                }
                if ech.rows.len() as u64 != dim {
                    ok = false;
                    break;
                }
            }
            Some(ok)
        }
    };
    Ok(PbwReport { counts_match, first_mismatch, spans })
}

/// All words of multidegree `gamma`, in increasing deglex order.
pub fn words_of_multidegree(gamma: &[i64]) -> Vec<Word> {
    fn rec(left: &mut Vec<i64>, cur: &mut Vec<u8>, out: &mut Vec<Word>) {
        if left.iter().all(|&x| x == 0) {
            out.push(Word::from_letters(cur));
            return;
        }
        for a in 0..left.len() {
            if left[a] > 0 {
                left[a] -= 1;
                cur.push(a as u8);
                rec(left, cur, out);
                cur.pop();
                left[a] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut gamma.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// All multidegrees in `N_0^θ` of total degree between `lo` and `hi`.
pub fn multidegrees(theta: usize, lo: usize, hi: usize) -> Vec<Vec<i64>> {
    fn rec(theta: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == theta - 1 {
            cur.push(left as i64);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k as i64);
            rec(theta, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for n in lo..=hi {
        rec(theta, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Graded dimensions of the Nichols algebra through degree `d`, as the rank
/// of the quantum symmetrizer on each multidegree.
pub fn nichols_dimensions(q: &BraidingMatrix, d: usize) -> Result<BTreeMap<Vec<i64>, u64>, QuotientError> {
    let mut out = BTreeMap::new();
    for gamma in multidegrees(q.theta(), 0, d) {
        let mut ech = Echelon::default();
        for w in words_of_multidegree(&gamma) {
            ech.insert(quantum_symmetrizer_capped(q, &FreeElement::word(w), d)?);
        }
        if !ech.rows.is_empty() {
            out.insert(gamma, ech.rows.len() as u64);
        }
    }
    Ok(out)
}

/// A spanning set of the Nichols ideal through degree `d`: a basis of
/// `ker Ω` in every multidegree of total degree `2..=d`.
pub fn nichols_ideal(q: &BraidingMatrix, d: usize) -> Result<GradedIdeal, QuotientError> {
    let mut gens = Vec::new();
    for gamma in multidegrees(q.theta(), 2, d) {
        let words = words_of_multidegree(&gamma);
        // kernel of w ↦ Ω(w) by elimination on rows Ω(w) | w
        let mut rows: Vec<(FreeElement, FreeElement)> = Vec::new();
        for w in &words {
            rows.push((quantum_symmetrizer_capped(q, &FreeElement::word(w.clone()), d)?, FreeElement::word(w.clone())));
        }
        let mut pivots: Vec<(Word, FreeElement, FreeElement)> = Vec::new();
        for (mut img, mut src) in rows {
            for (lead, pi, ps) in &pivots {
                let c = img.coefficient(lead);
                if !c.is_zero() {
                    img -= &pi.scale(&c);
                    src -= &ps.scale(&c);
                }
            }
            match img.leading().map(|(w, c)| (w.clone(), c.clone())) {
                None => gens.push(src),
                Some((lead, c)) => {
                    let inv = c.inv().expect("nonzero pivot");
                    let (pi, ps) = (img.scale(&inv), src.scale(&inv));
                    for (_, oi, os) in pivots.iter_mut() {
                        let c2 = oi.coefficient(&lead);
                        if !c2.is_zero() {
                            *oi -= &pi.scale(&c2);
                            *os -= &ps.scale(&c2);
                        }
                    }
                    pivots.push((lead, pi, ps));
                }
            }
        }
    }
    GradedIdeal::new(q.theta(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::FamilyDescriptor;
    use crate::freealg::{braided_commutator, iterated_bracket, Env};

    fn x(i: usize) -> FreeElement {
        FreeElement::generator(i)
    }

    fn parse(q: &BraidingMatrix, s: &str) -> FreeElement {
        crate::freealg::parse_element(s, &Env::new(q)).unwrap()
    }

    #[test]
    fn single_commutation_is_confluent() {
        let q = BraidingMatrix::new(7, vec![vec![3, 2], vec![0, 1]]).unwrap();
        let r = &(&x(0) * &x(1)) - &(&x(1) * &x(0)).scale(&q.q(0, 1));
        let g = groebner(&GradedIdeal::new(2, vec![r.clone()]).unwrap(), 6).unwrap();
        assert_eq!(g.elements().len(), 1);
        assert_eq!(g.elements()[0], monic(&r));
        // quantum plane: dim T_n / I = n + 1
        let dims = g.graded_dimensions();
        for n in 0..=6i64 {
            let total: u64 = dims.iter().filter(|(k, _)| k.iter().sum::<i64>() == n).map(|(_, v)| v).sum();
            assert_eq!(total, n as u64 + 1);
        }
    }

    #[test]
    fn square_zero_words() {
        let g = groebner(&GradedIdeal::new(2, vec![x(0).pow(2)]).unwrap(), 4).unwrap();
        for w in words_of_multidegree(&[2, 2]) {
            let normal = !w.letters().windows(2).any(|p| p == [0, 0]);
            assert_eq!(g.is_normal_word(&w), normal);
        }
        assert_eq!(g.normal_form(&x(0)).unwrap(), x(0));
        assert!(g.normal_form(&x(0).pow(5)).is_err());
    }

    #[test]
    fn free_algebra_dimensions() {
        let g = groebner(&GradedIdeal::zero(2), 3).unwrap();
        let dims = g.graded_dimensions();
        let total: u64 = dims.iter().filter(|(k, _)| k.iter().sum::<i64>() == 3).map(|(_, v)| v).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn normal_form_is_multiplicative_modulo_ideal() {
        let q = FamilyDescriptor::SuperA { theta: 3, order: 5, j: vec![2], q: 1 }.build().unwrap();
        let ideal = GradedIdeal::new(3, vec![parse(&q, "x2^2"), parse(&q, "x13"), parse(&q, "x112"), parse(&q, "x332")]).unwrap();
        let g = groebner(&ideal, 6).unwrap();
        let a = parse(&q, "x1*x2*x3 + x3*x2");
        let b = parse(&q, "x2*x1 - x3*x1*x2");
        let lhs = g.normal_form(&(&a * &b)).unwrap();
        let rhs = g.normal_form(&(&g.normal_form(&a).unwrap() * &g.normal_form(&b).unwrap())).unwrap();
        assert_eq!(lhs, rhs);
        assert!(g.reduces_to_zero(&parse(&q, "x12^2")).unwrap());
        assert_eq!(g.graded_dimensions()[&vec![1, 1, 0]], 2);
    }

    #[test]
    fn groebner_is_deterministic() {
        let q = FamilyDescriptor::CartanG2 { order: 4, q: 1 }.build().unwrap();
        let ideal = GradedIdeal::new(2, vec![parse(&q, "x221"), parse(&q, "x1^4")]).unwrap();
        let a = groebner(&ideal, 7).unwrap();
        let b = groebner(&ideal, 7).unwrap();
        assert_eq!(format!("{:?}", a.elements()), format!("{:?}", b.elements()));
    }

    #[test]
    fn primitivity_modulo_ideal() {
        let q = FamilyDescriptor::CartanG2 { order: 4, q: 1 }.build().unwrap();
        let ideal = GradedIdeal::new(2, vec![parse(&q, "x11112"), parse(&q, "x221")]).unwrap();
        let g = groebner(&ideal, 8).unwrap();
        let r = braided_commutator(&q, &iterated_bracket(&q, &[0, 0, 0, 1]), &iterated_bracket(&q, &[0, 0, 1]));
        assert!(is_primitive_in_quotient(&q, &r, &g).unwrap());
        let zero = groebner(&GradedIdeal::zero(2), 3).unwrap();
        assert!(!is_primitive_in_quotient(&q, &(&x(0) * &x(1)), &zero).unwrap());
    }

    #[test]
    fn generators_are_not_central_in_free_algebra() {
        let q = BraidingMatrix::new(5, vec![vec![1, 2], vec![0, 3]]).unwrap();
        let g = groebner(&GradedIdeal::zero(2), 3).unwrap();
        assert_eq!(skew_central_check(&q, &x(0), &g).unwrap(), SkewCentrality::FailsAt(0));
    }

    #[test]
    fn rank_one_nichols() {
        let q = BraidingMatrix::new(4, vec![vec![1]]).unwrap();
        let dims = nichols_dimensions(&q, 6).unwrap();
        assert_eq!(dims.keys().cloned().collect::<Vec<_>>(), vec![vec![0], vec![1], vec![2], vec![3]]);
        let ideal = nichols_ideal(&q, 6).unwrap();
        let g = groebner(&ideal, 6).unwrap();
        assert_eq!(g.graded_dimensions(), dims);
    }

    #[test]
    fn multidegree_enumeration() {
        assert_eq!(multidegrees(2, 2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(words_of_multidegree(&[1, 1]).len(), 2);
    }
}
