//! Verification manifests: lists of checks over a family, run in parallel
//! with results reported in manifest order.
//!
//! A manifest is a JSON object
//!
//! ```json
//! { "name": "…", "family": { "family": "CartanG2", "order": 4 }, "checks": [ … ] }
//! ```
//!
//! where each check has an `id` naming its kind, an optional `label` and an
//! optional `family` overriding the manifest's. Check kinds:
//!
//! | id | fields | passes when |
//! |---|---|---|
//! | `vanishes`, `survives` | `element`, `ideal` or `kind`, `defs`, `degree` | the element is (not) zero in the quotient |
//! | `primitive` | same as `vanishes` | the element is primitive in the quotient |
//! | `central` | `kind`, `degree` | each cataloged central element skew-commutes with the listed scalars |
//! | `pbw` | `kind`, `degree`, `minimal` | the PBW monomials count and span every graded piece |
//! | `hilbert` | `kind`, `degree` | graded dimensions match the cataloged product formula |
//! | `extension` | `kind`, `degree` | `H = H_Z · H_quotient` coefficient-wise |
//! | `growth` | `kind`, `expect` | the cataloged formula has `expect` unbounded factors |
//! | `nichols` | `kind`, `cap` | Ω kills every relation of degree ≤ `cap` |
//! | `consequences` | none | every cataloged consequence identity replays |
//!
//! `kind` is `distinguished`, `eminent` or `nichols` and defaults to
//! `eminent` (falling back to distinguished).

use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::braiding::{BraidingError, FamilyDescriptor};
use crate::freealg::{in_nichols_ideal, parse_element, FreeAlgError, FreeElement, ParseError};
use crate::presentations::{self, consequence_checks, Expectation, eminent_or_distinguished, family_env, Presentation, PresentationError, PresentationKind};
use crate::quotient::{groebner, is_primitive_in_quotient, pbw_span_check, skew_central_check, vanishes_in_quotient, GradedIdeal, QuotientError, SkewCentrality};
use crate::series::{extension_check, growth_degree, Growth, SeriesError, TruncatedSeries};

const BUILTIN: [(&str, &str); 4] = [
    ("g2-n4-minimal", include_str!("../data/manifests/g2-n4-minimal.json")),
    ("g2-n6-minimal", include_str!("../data/manifests/g2-n6-minimal.json")),
    ("a3-j2-eminent", include_str!("../data/manifests/a3-j2-eminent.json")),
    ("a3-j123-eminent", include_str!("../data/manifests/a3-j123-eminent.json")),
];

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("cannot read manifest {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed manifest: {0}")]
    Json(String),
    #[error("check {index}: unknown check id {id:?}")]
    UnknownCheck { index: usize, id: String },
    #[error("check {index} ({id}): {message}")]
    BadCheck { index: usize, id: String, message: String },
    #[error("check {index} has no family and the manifest sets none")]
    NoFamily { index: usize },
    #[error("element {text:?}: {source}")]
    Parse { text: String, source: ParseError },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Braiding(#[from] BraidingError),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}

/// Names of the manifests shipped with the crate.
pub fn builtin_manifests() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

// ---------------------------------------------------------------------------
// manifest

#[derive(Deserialize)]
struct RawManifest {
    name: String,
    #[serde(default)]
    family: Option<FamilyDescriptor>,
    #[serde(default)]
    checks: Vec<Value>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementCheck {
    id: String,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    family: Option<FamilyDescriptor>,
    element: String,
    #[serde(default)]
    ideal: Option<Vec<String>>,
    #[serde(default)]
    kind: Option<PresentationKind>,
    #[serde(default)]
    defs: Vec<(String, String)>,
    #[serde(default)]
    degree: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogCheck {
    id: String,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    family: Option<FamilyDescriptor>,
    #[serde(default)]
    kind: Option<PresentationKind>,
    #[serde(default)]
    degree: Option<usize>,
    #[serde(default)]
    minimal: bool,
    #[serde(default)]
    expect: Option<usize>,
    #[serde(default)]
    cap: Option<usize>,
}

#[derive(Clone, Debug)]
enum Check {
    Element(ElementCheck),
    Catalog(CatalogCheck),
}

/// A parsed manifest, ready to run.
#[derive(Clone, Debug)]
pub struct Manifest {
    pub name: String,
    family: Option<FamilyDescriptor>,
    checks: Vec<(FamilyDescriptor, Check)>,
}

fn typed<T: DeserializeOwned>(index: usize, id: &str, v: Value) -> Result<T, ReplayError> {
    serde_json::from_value(v).map_err(|e| ReplayError::BadCheck { index, id: id.to_string(), message: e.to_string() })
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self, ReplayError> {
        let raw: RawManifest = serde_json::from_str(text).map_err(|e| ReplayError::Json(e.to_string()))?;
        let mut checks = Vec::new();
        for (index, v) in raw.checks.into_iter().enumerate() {
            let id = v.get("id").and_then(Value::as_str).unwrap_or("").to_string();
            let check = match id.as_str() {
                "vanishes" | "survives" | "primitive" => Check::Element(typed(index, &id, v)?),
                "central" | "pbw" | "hilbert" | "extension" | "growth" | "nichols" | "consequences" => {
                    Check::Catalog(typed(index, &id, v)?)
                }
                _ => return Err(ReplayError::UnknownCheck { index, id }),
            };
            let family = match &check {
                Check::Element(c) => c.family.clone(),
                Check::Catalog(c) => c.family.clone(),
            };
            let family = family.or_else(|| raw.family.clone()).ok_or(ReplayError::NoFamily { index })?;
            checks.push((family, check));
        }
        Ok(Manifest { name: raw.name, family: raw.family, checks })
    }

    /// Loads a manifest from a file, or by name from the built-in set when no
    /// such file exists.
    pub fn load(path_or_name: &str) -> Result<Self, ReplayError> {
        let p = Path::new(path_or_name);
        if p.exists() {
            let text = std::fs::read_to_string(p).map_err(|e| ReplayError::Io { path: path_or_name.to_string(), message: e.to_string() })?;
            return Self::from_json(&text);
        }
        match BUILTIN.iter().find(|(n, _)| *n == path_or_name) {
            Some((_, text)) => Self::from_json(text),
            None => Err(ReplayError::Io { path: path_or_name.to_string(), message: "no such file or built-in manifest".to_string() }),
        }
    }

    pub fn family(&self) -> Option<&FamilyDescriptor> {
        self.family.as_ref()
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    /// Runs every check, one worker thread per check.
    pub fn run(&self) -> Result<Report, ReplayError> {
        let results: Vec<Result<Vec<Outcome>, ReplayError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = self.checks.iter().map(|(f, c)| scope.spawn(move || run_check(f, c))).collect();
            handles.into_iter().map(|h| h.join().expect("replay worker panicked")).collect()
        });
        let mut outcomes = Vec::new();
        for r in results {
            outcomes.extend(r?);
        }
        Ok(Report { manifest: self.name.clone(), outcomes })
    }
}

// ---------------------------------------------------------------------------
// report

/// Result of one check (a `consequences` check yields one per identity).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub check: String,
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub manifest: String,
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| !o.passed).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let mark = if o.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{mark}  {:<12} {}  ({})", o.check, o.label, o.detail)?;
        }
        write!(f, "{}: {}/{} passed", self.manifest, self.outcomes.len() - self.failures(), self.outcomes.len())
    }
}

// ---------------------------------------------------------------------------
// checks

fn outcome(check: &str, label: String, passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { check: check.to_string(), label, passed, detail: detail.into() }
}

fn lookup(desc: &FamilyDescriptor, kind: Option<PresentationKind>) -> Result<Presentation, ReplayError> {
    Ok(match kind {
        None | Some(PresentationKind::Eminent) => eminent_or_distinguished(desc)?,
        Some(k) => presentations::presentation(desc, k)?,
    })
}

fn run_check(desc: &FamilyDescriptor, check: &Check) -> Result<Vec<Outcome>, ReplayError> {
    match check {
        Check::Element(c) => run_element(desc, c).map(|o| vec![o]),
        Check::Catalog(c) if c.id == "consequences" => run_consequences(desc, c),
        Check::Catalog(c) => run_catalog(desc, c).map(|o| vec![o]),
    }
}

fn run_element(desc: &FamilyDescriptor, c: &ElementCheck) -> Result<Outcome, ReplayError> {
    let q = desc.build()?;
    let mut env = family_env(desc, &q)?;
    let perr = |text: &str| {
        let text = text.to_string();
        move |source| ReplayError::Parse { text, source }
    };
    for (name, text) in &c.defs {
        env.define(name, text).map_err(perr(text))?;
    }
    let element = parse_element(&c.element, &env).map_err(perr(&c.element))?;
    let gens: Vec<FreeElement> = match (&c.ideal, c.kind) {
        (Some(list), _) => list.iter().map(|t| parse_element(t, &env).map_err(perr(t))).collect::<Result<_, _>>()?,
        (None, kind) => lookup(desc, kind)?.elements(),
    };
    let need = element.degree() + usize::from(c.id == "primitive");
    let d = c.degree.unwrap_or(need).max(need);
    let ideal = GradedIdeal::new(q.theta(), gens.into_iter().filter(|g| g.degree() <= d).collect())?;
    let label = c.label.clone().unwrap_or_else(|| format!("{} over {}", c.element, desc.label()));
    Ok(match c.id.as_str() {
        "primitive" => {
            let g = groebner(&ideal, d)?;
            let ok = is_primitive_in_quotient(&q, &element, &g)?;
            outcome(&c.id, label, ok, if ok { "primitive" } else { "not primitive" })
        }
        id => {
            let vanishes = vanishes_in_quotient(&element, &ideal, d)?;
            let ok = vanishes == (id == "vanishes");
            outcome(id, label, ok, format!("{} at degree {d}", if vanishes { "reduces to 0" } else { "nonzero normal form" }))
        }
    })
}

fn catalog_degree(c: &CatalogCheck) -> usize {
    c.degree.unwrap_or(8)
}

fn computed_series(p: &Presentation, d: usize) -> Result<TruncatedSeries, ReplayError> {
    let g = groebner(&p.ideal_up_to(d)?, d)?;
    Ok(TruncatedSeries::from_dimensions(p.theta(), d, &g.graded_dimensions()))
}

fn missing(c: &CatalogCheck, p: &Presentation, what: &str) -> Outcome {
    outcome(&c.id, c.label.clone().unwrap_or_else(|| p.key.clone()), false, format!("entry {} has no {what}", p.key))
}

fn run_catalog(desc: &FamilyDescriptor, c: &CatalogCheck) -> Result<Outcome, ReplayError> {
    let p = lookup(desc, c.kind)?;
    let d = catalog_degree(c);
    let label = c.label.clone().unwrap_or_else(|| format!("{} ({})", p.key, desc.label()));
    match c.id.as_str() {
        "central" => {
            if p.central.is_empty() {
                return Ok(missing(c, &p, "central elements"));
            }
            let need = p.central.iter().map(|z| z.element.degree() + 1).max().unwrap_or(0);
            let g = groebner(&p.ideal_up_to(d.max(need))?, d.max(need))?;
            let mut notes = Vec::new();
            let mut ok = true;
            for z in &p.central {
                match skew_central_check(&p.matrix, &z.element, &g)? {
                    SkewCentrality::Central(chars) if chars == z.characters => notes.push(format!("{} central", z.label)),
                    SkewCentrality::Central(_) => {
                        ok = false;
                        notes.push(format!("{} central with other scalars", z.label));
                    }
                    SkewCentrality::FailsAt(i) => {
                        ok = false;
                        notes.push(format!("{} fails at x{}", z.label, i + 1));
                    }
                }
                // a central element that vanishes would make the check vacuous
                if g.reduces_to_zero(&z.element)? {
                    ok = false;
                    notes.push(format!("{} is zero", z.label));
                }
            }
            Ok(outcome(&c.id, label, ok, notes.join("; ")))
        }
        "pbw" => {
            let Some(pbw) = &p.pbw else { return Ok(missing(c, &p, "PBW basis")) };
            let g = groebner(&p.ideal_up_to(d)?, d)?;
            let rep = pbw_span_check(pbw, &g, Some(d))?;
            let mut ok = rep.passed();
            let mut detail = match &rep.first_mismatch {
                None if ok => format!("{} letters span through degree {d}", pbw.letters.len()),
                None => "counts match but monomials do not span".to_string(),
                Some(m) => format!("count mismatch at {m:?}"),
            };
            if c.minimal && ok {
                let redundant: Vec<&str> = (0..pbw.letters.len())
                    .filter(|&k| pbw_span_check(&pbw.without(k), &g, None).map(|r| r.passed()).unwrap_or(false))
                    .map(|k| pbw.letters[k].name.as_str())
                    .collect();
                if redundant.is_empty() {
                    detail.push_str("; every letter needed");
                } else {
                    ok = false;
                    detail = format!("letters {redundant:?} can be dropped");
                }
            }
            Ok(outcome(&c.id, label, ok, detail))
        }
        "hilbert" => {
            let Some(h) = p.hilbert_series(d) else { return Ok(missing(c, &p, "Hilbert series")) };
            let h = h?;
            let g = groebner(&p.ideal_up_to(d)?, d)?;
            Ok(match h.first_mismatch(&g.graded_dimensions()) {
                None => outcome(&c.id, label, true, format!("all multidegrees through {d} match")),
                Some(m) => outcome(&c.id, label, false, format!("mismatch at {m:?}")),
            })
        }
        "extension" => {
            let (Some(hz), Some(hq)) = (p.central_hilbert_series(d), p.quotient_hilbert_series(d)) else {
                return Ok(missing(c, &p, "extension data"));
            };
            let h = computed_series(&p, d)?;
            let ok = extension_check(&hz?, &hq?, &h)?;
            Ok(outcome(&c.id, label, ok, format!("coefficient-wise through degree {d}")))
        }
        "growth" => {
            let h = match p.hilbert_series(d) {
                Some(h) => h?,
                None => return Ok(missing(c, &p, "Hilbert series")),
            };
            let got = growth_degree(&h);
            let ok = match (c.expect, got) {
                (Some(e), Growth::Degree(g)) => e == g,
                (None, Growth::Degree(g)) => g == presentations::expected_growth(desc)?,
                _ => false,
            };
            Ok(outcome(&c.id, label, ok, format!("growth degree {got}")))
        }
        "nichols" => {
            let cap = c.cap.unwrap_or(10);
            let mut bad = Vec::new();
            let mut checked = 0;
            for r in p.relations.iter().filter(|r| r.element.degree() <= cap) {
                checked += 1;
                if !in_nichols_ideal(&p.matrix, &r.element, cap)? {
                    bad.push(r.label.clone());
                }
            }
            let detail = if bad.is_empty() { format!("{checked} relations in ker Ω") } else { format!("not in ker Ω: {bad:?}") };
            Ok(outcome(&c.id, label, bad.is_empty(), detail))
        }
        other => unreachable!("check id {other} is validated when the manifest is parsed"),
    }
}

fn run_consequences(desc: &FamilyDescriptor, c: &CatalogCheck) -> Result<Vec<Outcome>, ReplayError> {
    let theta = desc.theta();
    let mut out = Vec::new();
    for k in consequence_checks(desc)? {
        let ok = k.run(theta)?;
        let label = format!("{}: {}", k.key, k.label);
        out.push(outcome(&c.id, label, ok, format!("expected: {}", if k.expect == Expectation::Vanishes { "vanishes" } else { "survives" })));
    }
    if out.is_empty() {
        out.push(outcome(&c.id, desc.label(), true, "no cataloged consequences"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_manifest_gives_an_empty_passing_report() {
        let m = Manifest::from_json(r#"{"name": "empty", "checks": []}"#).unwrap();
        let r = m.run().unwrap();
        assert!(r.outcomes.is_empty());
        assert!(r.passed());
    }

    #[test]
    fn unknown_check_id_is_an_error() {
        let text = r#"{"name": "x", "family": {"family": "CartanG2", "order": 4}, "checks": [{"id": "frobnicate"}]}"#;
        match Manifest::from_json(text) {
            Err(ReplayError::UnknownCheck { index: 0, id }) => assert_eq!(id, "frobnicate"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn check_without_a_family_is_an_error() {
        let text = r#"{"name": "x", "checks": [{"id": "consequences"}]}"#;
        assert!(matches!(Manifest::from_json(text), Err(ReplayError::NoFamily { index: 0 })));
    }

    #[test]
    fn misspelled_field_is_reported() {
        let text = r#"{"name": "x", "family": {"family": "CartanG2", "order": 4},
                       "checks": [{"id": "vanishes", "elemnt": "x1"}]}"#;
        assert!(matches!(Manifest::from_json(text), Err(ReplayError::BadCheck { .. })));
    }

    #[test]
    fn builtins_parse() {
        for name in builtin_manifests() {
            let m = Manifest::load(name).unwrap();
            assert!(!m.is_empty(), "{name}");
        }
    }

    #[test]
    fn serre_relation_vanishes_and_generator_survives() {
        let text = r#"{"name": "g2", "family": {"family": "CartanG2", "order": 7},
            "checks": [
              {"id": "vanishes", "element": "x221", "kind": "distinguished"},
              {"id": "survives", "element": "x12", "kind": "distinguished"},
              {"id": "survives", "element": "x11112", "ideal": ["x221"], "label": "one Serre relation only"},
              {"id": "primitive", "element": "x11112", "ideal": []}
            ]}"#;
        let r = Manifest::from_json(text).unwrap().run().unwrap();
        assert_eq!(r.outcomes.len(), 4);
        assert!(r.passed(), "{r}");
        assert_eq!(r.outcomes[2].label, "one Serre relation only");
    }

    #[test]
    fn failing_check_fails_the_report() {
        let text = r#"{"name": "g2", "family": {"family": "CartanG2", "order": 7},
            "checks": [{"id": "vanishes", "element": "x12", "kind": "distinguished"}]}"#;
        let r = Manifest::from_json(text).unwrap().run().unwrap();
        assert!(!r.passed());
        assert_eq!(r.failures(), 1);
        assert!(r.to_string().starts_with("FAIL"));
    }

    #[test]
    fn report_order_follows_the_manifest() {
        let text = r#"{"name": "order", "family": {"family": "CartanG2", "order": 7},
            "checks": [
              {"id": "survives", "element": "x1", "ideal": [], "label": "a"},
              {"id": "survives", "element": "x2", "ideal": [], "label": "b"},
              {"id": "vanishes", "element": "x1 - x1", "ideal": [], "label": "c"}
            ]}"#;
        let r = Manifest::from_json(text).unwrap().run().unwrap();
        let labels: Vec<&str> = r.outcomes.iter().map(|o| o.label.as_str()).collect();
        assert_eq!(labels, ["a", "b", "c"]);
    }
}
