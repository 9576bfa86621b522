//! Relation catalogs for the families of [`FamilyDescriptor`].
//!
//! The catalog is a JSON file compiled into the crate. Each entry covers one
//! family (and diagram), one kind of presentation and one side condition,
//! written as a guard predicate. Relations are element-grammar strings,
//! optionally indexed by `over` ranges and filtered by `when` predicates.
//!
//! Predicates understand `&&`, `||`, `not{…}`, braces for grouping,
//! `inJ(i)`, `true`, `false` and comparisons of index expressions. The
//! index variables are `N` (family order), `M` (matrix order), `theta`, the
//! loop variables and the parameter exponents `q`, `r`, `s` (as exponents of
//! `ζ_M`, so `2*q == M` tests `q = −1`). Inside relations `q`, `r`, `s` and
//! `zeta` are the parameters themselves.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braiding::{BraidingError, BraidingMatrix, FamilyDescriptor, Variant};
use crate::cyclo::CycScalar;
use crate::freealg::grammar::{parse_element, Env, ParseError, Parser, Tok};
use crate::freealg::FreeElement;
use crate::quotient::{GradedIdeal, PbwDescription, PbwLetter, QuotientError};
use crate::series::{series_product_formula, ProductFormula, RootFactor, SeriesError, TruncatedSeries};
use crate::weyl::WeylError;

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("no catalog entry of kind {kind} matches {label}")]
    NotCataloged { kind: PresentationKind, label: String },
    #[error("{count} catalog entries of kind {kind} match {label}: {keys:?}")]
    Ambiguous { kind: PresentationKind, label: String, count: usize, keys: Vec<String> },
    #[error("the eminent pre-Nichols algebra of {0} is the distinguished one")]
    EminentIsDistinguished(String),
    #[error("catalog entry {key}: {source}")]
    Parse { key: String, source: ParseError },
    #[error("catalog entry {key}: {message}")]
    Malformed { key: String, message: String },
    #[error(transparent)]
    Braiding(#[from] BraidingError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// What a catalog entry presents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresentationKind {
    /// Defining relations of the distinguished pre-Nichols algebra.
    Distinguished,
    /// Defining relations of an eminent pre-Nichols algebra that is not the
    /// distinguished one.
    Eminent,
    /// A minimal presentation of the Nichols algebra.
    Nichols,
}

impl fmt::Display for PresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresentationKind::Distinguished => "distinguished",
            PresentationKind::Eminent => "eminent",
            PresentationKind::Nichols => "nichols",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    #[default]
    Vanishes,
    Survives,
}

// ---------------------------------------------------------------------------
// raw catalog

#[derive(Clone, Debug, Deserialize)]
struct RawCatalog {
    version: u32,
    entries: Vec<RawEntry>,
}

#[derive(Clone, Debug, Deserialize)]
struct RawRelation {
    expr: String,
    #[serde(default)]
    over: Vec<(String, String, String)>,
    #[serde(default)]
    when: Option<String>,
    #[serde(default)]
    expect: Expectation,
    #[serde(default)]
    modulo: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
struct RawLetter {
    name: String,
    expr: String,
    height: Option<u32>,
}

#[derive(Clone, Debug, Deserialize)]
struct RawFormula {
    numerators: Vec<Vec<i64>>,
    denominators: Vec<RootFactor>,
}

#[derive(Clone, Debug, Deserialize)]
struct RawCentral {
    expr: String,
    character: String,
}

#[derive(Clone, Debug, Deserialize)]
struct RawEntry {
    key: String,
    family: String,
    #[serde(default)]
    variant: Option<Variant>,
    kind: PresentationKind,
    guard: String,
    #[serde(default)]
    defs: Vec<(String, String)>,
    relations: Vec<RawRelation>,
    #[serde(default)]
    root_vectors: Vec<String>,
    #[serde(default)]
    pbw: Option<Vec<RawLetter>>,
    #[serde(default)]
    hilbert: Option<RawFormula>,
    #[serde(default)]
    central: Vec<RawCentral>,
    #[serde(default)]
    central_hilbert: Option<RawFormula>,
    #[serde(default)]
    quotient_hilbert: Option<RawFormula>,
    #[serde(default)]
    consequences: Vec<RawRelation>,
}

fn catalog() -> &'static RawCatalog {
    static CATALOG: OnceLock<RawCatalog> = OnceLock::new();
    CATALOG.get_or_init(|| serde_json::from_str(CATALOG_JSON).expect("the bundled catalog is valid JSON"))
}

/// Version of the bundled catalog file.
pub fn catalog_version() -> u32 {
    catalog().version
}

/// Summary of one catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryInfo {
    pub key: String,
    pub family: String,
    pub variant: Option<Variant>,
    pub kind: PresentationKind,
    pub guard: String,
    pub relation_count: usize,
}

/// All catalog entries, in file order.
pub fn catalog_entries() -> Vec<EntryInfo> {
    catalog()
        .entries
        .iter()
        .map(|e| EntryInfo {
            key: e.key.clone(),
            family: e.family.clone(),
            variant: e.variant,
            kind: e.kind,
            guard: e.guard.clone(),
            relation_count: e.relations.len(),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// predicates

struct Pred<'p, 'e, 'a> {
    p: Parser<'e, 'a>,
    j: &'p BTreeSet<usize>,
}

impl Pred<'_, '_, '_> {
    fn disj(&mut self) -> Result<bool, ParseError> {
        let mut v = self.conj()?;
        while *self.p.peek() == Tok::OrOr {
            self.p.advance();
            let w = self.conj()?;
            v = v || w;
        }
        Ok(v)
    }

    fn conj(&mut self) -> Result<bool, ParseError> {
        let mut v = self.unary()?;
        while *self.p.peek() == Tok::AndAnd {
            self.p.advance();
            let w = self.unary()?;
            v = v && w;
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<bool, ParseError> {
        match self.p.peek().clone() {
            Tok::LBrace => {
                self.p.advance();
                let v = self.disj()?;
                self.p.expect(Tok::RBrace)?;
                Ok(v)
            }
            Tok::Ident(name, false) if name == "not" => {
                self.p.advance();
                self.p.expect(Tok::LBrace)?;
                let v = self.disj()?;
                self.p.expect(Tok::RBrace)?;
                Ok(!v)
            }
            Tok::Ident(name, false) if name == "true" || name == "false" => {
                self.p.advance();
                Ok(name == "true")
            }
            Tok::Ident(name, true) if name == "inJ" => {
                self.p.advance();
                self.p.expect(Tok::LParen)?;
                let i = self.p.idx()?;
                self.p.expect(Tok::RParen)?;
                Ok(i >= 1 && self.j.contains(&(i as usize)))
            }
            _ => {
                let a = self.p.idx()?;
                let op = match self.p.peek().clone() {
                    Tok::Cmp(op) => op,
                    other => return Err(self.p.error_here(format!("expected a comparison, found {other}"))),
                };
                self.p.advance();
                let b = self.p.idx()?;
                Ok(match op {
                    "==" => a == b,
                    "!=" => a != b,
                    "<" => a < b,
                    "<=" => a <= b,
                    ">" => a > b,
                    _ => a >= b,
                })
            }
        }
    }
}

fn eval_predicate(text: &str, env: &Env<'_>, j: &BTreeSet<usize>) -> Result<bool, ParseError> {
    let mut pred = Pred { p: Parser::new(text, env)?, j };
    let v = pred.disj()?;
    pred.p.expect_eof()?;
    Ok(v)
}

fn eval_index(text: &str, env: &Env<'_>) -> Result<i64, ParseError> {
    let mut p = Parser::new(text, env)?;
    let v = p.idx()?;
    p.expect_eof()?;
    Ok(v)
}

// ---------------------------------------------------------------------------
// evaluation context

struct Context<'a> {
    desc: &'a FamilyDescriptor,
    matrix: &'a BraidingMatrix,
    j: BTreeSet<usize>,
    params: Vec<(&'static str, i64)>,
}

impl<'a> Context<'a> {
    fn new(desc: &'a FamilyDescriptor, matrix: &'a BraidingMatrix) -> Result<Self, PresentationError> {
        Ok(Context { desc, matrix, j: desc.j_set(), params: desc.parameter_exponents()? })
    }

    fn env(&self) -> Env<'a> {
        env_with(self.desc.order(), self.matrix, &self.params)
    }

    fn matches(&self, e: &RawEntry) -> Result<bool, PresentationError> {
        if e.family != self.desc.family_name() || e.variant != self.desc.variant() {
            return Ok(false);
        }
        eval_predicate(&e.guard, &self.env(), &self.j).map_err(|source| PresentationError::Parse { key: e.key.clone(), source })
    }

    fn entry_env(&self, e: &RawEntry) -> Result<Env<'a>, PresentationError> {
        let mut env = self.env();
        for (name, text) in &e.defs {
            env.define(name, text).map_err(|source| PresentationError::Parse { key: e.key.clone(), source })?;
        }
        Ok(env)
    }

    /// Expands an indexed relation into `(label, element)` pairs.
    fn expand(&self, key: &str, env: &Env<'a>, r: &RawRelation) -> Result<Vec<(String, FreeElement)>, PresentationError> {
        let perr = |source| PresentationError::Parse { key: key.to_string(), source };
        let mut out = Vec::new();
        let mut bindings: Vec<(String, i64)> = Vec::new();
        self.expand_rec(env.clone(), r, 0, &mut bindings, &mut out).map_err(perr)?;
        Ok(out)
    }

    fn expand_rec(
        &self,
        env: Env<'a>,
        r: &RawRelation,
        level: usize,
        bindings: &mut Vec<(String, i64)>,
        out: &mut Vec<(String, FreeElement)>,
    ) -> Result<(), ParseError> {
        if level == r.over.len() {
            if let Some(w) = &r.when {
                if !eval_predicate(w, &env, &self.j)? {
                    return Ok(());
                }
            }
            let element = parse_element(&r.expr, &env)?;
            let label = if bindings.is_empty() {
                r.expr.clone()
            } else {
                let b: Vec<String> = bindings.iter().map(|(n, v)| format!("{n}={v}")).collect();
                format!("{} [{}]", r.expr, b.join(", "))
            };
            out.push((label, element));
            return Ok(());
        }
        let (var, lo, hi) = &r.over[level];
        let lo = eval_index(lo, &env)?;
        let hi = eval_index(hi, &env)?;
        for v in lo..=hi {
            let mut inner = env.clone();
            inner.set_index(var, v);
            bindings.push((var.clone(), v));
            self.expand_rec(inner, r, level + 1, bindings, out)?;
            bindings.pop();
        }
        Ok(())
    }

    fn formula(&self, f: &RawFormula) -> ProductFormula {
        ProductFormula { numerators: f.numerators.clone(), denominators: f.denominators.clone() }
    }
}

fn env_with<'a>(n: u32, matrix: &'a BraidingMatrix, params: &[(&'static str, i64)]) -> Env<'a> {
    let m = matrix.order();
    let mut env = Env::new(matrix)
        .with_index("N", n as i64)
        .with_index("M", m as i64)
        .with_index("theta", matrix.theta() as i64);
    for &(name, e) in params {
        env = env.with_index(name, e).with_scalar(name, CycScalar::root_of_unity(m, e));
    }
    env
}

/// Grammar environment for elements over `desc`: binds `N`, `M`, `theta`
/// and the family parameters, both as indices and as scalars. `matrix`
/// should be `desc.build()`.
pub fn family_env<'a>(desc: &FamilyDescriptor, matrix: &'a BraidingMatrix) -> Result<Env<'a>, PresentationError> {
    Ok(env_with(desc.order(), matrix, &desc.parameter_exponents()?))
}

fn select<'c>(ctx: &Context<'_>, kind: PresentationKind) -> Result<Option<&'c RawEntry>, PresentationError> {
    let mut hits = Vec::new();
    for e in &catalog().entries {
        if e.kind == kind && ctx.matches(e)? {
            hits.push(e);
        }
    }
    match hits.len() {
        0 => Ok(None),
        1 => Ok(Some(hits[0])),
        count => Err(PresentationError::Ambiguous {
            kind,
            label: ctx.desc.label(),
            count,
            keys: hits.iter().map(|e| e.key.clone()).collect(),
        }),
    }
}

// ---------------------------------------------------------------------------
// presentations

/// One relation of a presentation; `label` is the catalog expression with
/// its loop bindings.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub label: String,
    pub element: FreeElement,
}

/// A skew-central element with the scalars `χ_i` such that
/// `x_i a = χ_i a x_i` is expected to hold.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralGenerator {
    pub label: String,
    pub element: FreeElement,
    pub characters: Vec<CycScalar>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub key: String,
    pub kind: PresentationKind,
    pub descriptor: FamilyDescriptor,
    pub matrix: BraidingMatrix,
    pub relations: Vec<Relation>,
    pub pbw: Option<PbwDescription>,
    pub hilbert: Option<ProductFormula>,
    pub central: Vec<CentralGenerator>,
    /// Hilbert series of the subalgebra generated by the central elements.
    pub central_hilbert: Option<ProductFormula>,
    /// Hilbert series of the quotient by the central elements.
    pub quotient_hilbert: Option<ProductFormula>,
}

impl Presentation {
    pub fn theta(&self) -> usize {
        self.matrix.theta()
    }

    pub fn elements(&self) -> Vec<FreeElement> {
        self.relations.iter().map(|r| r.element.clone()).collect()
    }

    /// The ideal generated by all relations.
    pub fn ideal(&self) -> Result<GradedIdeal, PresentationError> {
        Ok(GradedIdeal::new(self.theta(), self.elements())?)
    }

    /// The ideal generated by the relations of degree at most `d`; it agrees
    /// with [`Presentation::ideal`] in every degree up to `d`.
    pub fn ideal_up_to(&self, d: usize) -> Result<GradedIdeal, PresentationError> {
        let gens = self.relations.iter().filter(|r| r.element.degree() <= d).map(|r| r.element.clone()).collect();
        Ok(GradedIdeal::new(self.theta(), gens)?)
    }

    fn expand_formula(&self, f: &Option<ProductFormula>, bound: usize) -> Option<Result<TruncatedSeries, PresentationError>> {
        f.as_ref().map(|f| {
            let den: Vec<(Vec<i64>, Option<u32>)> = f.denominators.iter().map(|r| (r.root.clone(), r.height)).collect();
            Ok(series_product_formula(self.theta(), &f.numerators, &den, bound)?)
        })
    }

    /// The cataloged Hilbert series, expanded through total degree `bound`.
    pub fn hilbert_series(&self, bound: usize) -> Option<Result<TruncatedSeries, PresentationError>> {
        self.expand_formula(&self.hilbert, bound)
    }

    pub fn central_hilbert_series(&self, bound: usize) -> Option<Result<TruncatedSeries, PresentationError>> {
        self.expand_formula(&self.central_hilbert, bound)
    }

    pub fn quotient_hilbert_series(&self, bound: usize) -> Option<Result<TruncatedSeries, PresentationError>> {
        self.expand_formula(&self.quotient_hilbert, bound)
    }
}

/// Order of `q(α, α)` for the degree `α` of a homogeneous element.
fn root_vector_height(q: &BraidingMatrix, e: &FreeElement) -> Option<u32> {
    let alpha = e.multidegree(q.theta())?;
    let h = q.order_of_exp(q.form_exp(&alpha, &alpha));
    (h > 1).then_some(h)
}

fn build(ctx: &Context<'_>, e: &RawEntry) -> Result<Presentation, PresentationError> {
    let env = ctx.entry_env(e)?;
    let perr = |source| PresentationError::Parse { key: e.key.clone(), source };
    let mut relations = Vec::new();
    for r in &e.relations {
        for (label, element) in ctx.expand(&e.key, &env, r)? {
            relations.push(Relation { label, element });
        }
    }
    for name in &e.root_vectors {
        let v = parse_element(name, &env).map_err(perr)?;
        let h = root_vector_height(ctx.matrix, &v).ok_or_else(|| PresentationError::Malformed {
            key: e.key.clone(),
            message: format!("root vector {name} is not homogeneous or has trivial height"),
        })?;
        relations.push(Relation { label: format!("{name}^{h}"), element: v.pow(h) });
    }
    let pbw = match &e.pbw {
        None => None,
        Some(letters) => {
            let mut out = Vec::new();
            for l in letters {
                out.push(PbwLetter { name: l.name.clone(), element: parse_element(&l.expr, &env).map_err(perr)?, height: l.height });
            }
            Some(PbwDescription { letters: out })
        }
    };
    let mut central = Vec::new();
    for c in &e.central {
        let element = parse_element(&c.expr, &env).map_err(perr)?;
        let mut characters = Vec::new();
        for i in 1..=ctx.matrix.theta() {
            let mut inner = env.clone();
            inner.set_index("i", i as i64);
            let s = parse_element(&c.character, &inner).map_err(perr)?;
            characters.push(s.as_scalar().ok_or_else(|| PresentationError::Malformed {
                key: e.key.clone(),
                message: format!("character {} is not a scalar", c.character),
            })?);
        }
        central.push(CentralGenerator { label: c.expr.clone(), element, characters });
    }
    Ok(Presentation {
        key: e.key.clone(),
        kind: e.kind,
        descriptor: ctx.desc.clone(),
        matrix: ctx.matrix.clone(),
        relations,
        pbw,
        hilbert: e.hilbert.as_ref().map(|f| ctx.formula(f)),
        central,
        central_hilbert: e.central_hilbert.as_ref().map(|f| ctx.formula(f)),
        quotient_hilbert: e.quotient_hilbert.as_ref().map(|f| ctx.formula(f)),
    })
}

/// Looks up the entry of the given kind matching `desc`.
pub fn presentation(desc: &FamilyDescriptor, kind: PresentationKind) -> Result<Presentation, PresentationError> {
    let matrix = desc.build()?;
    let ctx = Context::new(desc, &matrix)?;
    match select(&ctx, kind)? {
        Some(e) => build(&ctx, e),
        None => Err(PresentationError::NotCataloged { kind, label: desc.label() }),
    }
}

/// Defining relations of the distinguished pre-Nichols algebra.
pub fn distinguished_relations(desc: &FamilyDescriptor) -> Result<Presentation, PresentationError> {
    presentation(desc, PresentationKind::Distinguished)
}

/// The eminent pre-Nichols algebra when it differs from the distinguished
/// one; otherwise [`PresentationError::EminentIsDistinguished`].
pub fn eminent_relations(desc: &FamilyDescriptor) -> Result<Presentation, PresentationError> {
    match presentation(desc, PresentationKind::Eminent) {
        Err(PresentationError::NotCataloged { .. }) => Err(PresentationError::EminentIsDistinguished(desc.label())),
        other => other,
    }
}

/// The eminent presentation, falling back to the distinguished one.
pub fn eminent_or_distinguished(desc: &FamilyDescriptor) -> Result<Presentation, PresentationError> {
    match eminent_relations(desc) {
        Err(PresentationError::EminentIsDistinguished(_)) => distinguished_relations(desc),
        other => other,
    }
}

/// A minimal presentation of the Nichols algebra, where cataloged.
pub fn nichols_relations(desc: &FamilyDescriptor) -> Result<Presentation, PresentationError> {
    presentation(desc, PresentationKind::Nichols)
}

/// An identity to replay in a quotient.
#[derive(Clone, Debug)]
pub struct ConsequenceCheck {
    /// Key of the catalog entry the check belongs to.
    pub key: String,
    pub label: String,
    pub element: FreeElement,
    pub expect: Expectation,
    /// Generators of the ideal to reduce modulo.
    pub ideal: Vec<FreeElement>,
}

impl ConsequenceCheck {
    /// Smallest truncation degree that decides the check.
    pub fn degree(&self) -> usize {
        self.element.degree()
    }

    /// Runs the check: `Ok(true)` when the outcome is the expected one.
    pub fn run(&self, theta: usize) -> Result<bool, PresentationError> {
        let d = self.degree();
        let gens: Vec<FreeElement> = self.ideal.iter().filter(|g| g.degree() <= d).cloned().collect();
        let ideal = GradedIdeal::new(theta, gens)?;
        let vanishes = crate::quotient::vanishes_in_quotient(&self.element, &ideal, d.max(ideal.max_degree()))?;
        Ok(vanishes == (self.expect == Expectation::Vanishes))
    }
}

/// All consequence checks attached to entries matching `desc`, in catalog
/// order. Checks without an explicit ideal reduce modulo their entry's
/// relations.
pub fn consequence_checks(desc: &FamilyDescriptor) -> Result<Vec<ConsequenceCheck>, PresentationError> {
    let matrix = desc.build()?;
    let ctx = Context::new(desc, &matrix)?;
    let mut out = Vec::new();
    for e in &catalog().entries {
        if e.consequences.is_empty() || !ctx.matches(e)? {
            continue;
        }
        let p = build(&ctx, e)?;
        let env = ctx.entry_env(e)?;
        let perr = |source| PresentationError::Parse { key: e.key.clone(), source };
        for c in &e.consequences {
            let ideal = match &c.modulo {
                None => p.elements(),
                Some(list) => list.iter().map(|t| parse_element(t, &env)).collect::<Result<_, _>>().map_err(perr)?,
            };
            for (label, element) in ctx.expand(&e.key, &env, c)? {
                out.push(ConsequenceCheck { key: e.key.clone(), label, element, expect: c.expect, ideal: ideal.clone() });
            }
        }
    }
    Ok(out)
}

/// Number of positive roots of `desc`'s matrix whose height is unbounded,
/// which is the growth degree expected of the distinguished pre-Nichols
/// algebra.
pub fn expected_growth(desc: &FamilyDescriptor) -> Result<usize, PresentationError> {
    let q = desc.build()?;
    Ok(crate::weyl::gkdim_distinguished(&q)?)
}
