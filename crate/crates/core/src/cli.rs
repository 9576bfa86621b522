//! The `nichols` command line.
//!
//! Every subcommand reads a braiding from `--matrix` (a [`BraidingMatrix`]
//! in JSON) or `--family` (a [`FamilyDescriptor`] in JSON); both accept a
//! file path or inline JSON. With `--order-list` a family is run once per
//! listed order. `--json` switches to machine-readable output.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::braiding::{BraidingError, BraidingMatrix, FamilyDescriptor};
use crate::freealg::{
    coproduct, parse_element, quantum_symmetrizer_capped, reduced_coproduct, Env, FreeAlgError, FreeElement, ParseError,
    DEFAULT_SYMMETRIZER_CAP,
};
use crate::presentations::{self, catalog_entries, catalog_version, family_env, Presentation, PresentationError, PresentationKind};
use crate::quotient::{
    graded_dimensions, groebner, is_primitive_in_quotient, nichols_dimensions, pbw_span_check, skew_central_check, GradedIdeal,
    QuotientError, SkewCentrality,
};
use crate::replay::{builtin_manifests, Manifest, ReplayError};
use crate::series::{hilbert_distinguished, hilbert_nichols, SeriesError, TruncatedSeries};
use crate::weyl::{self, WeylError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid JSON in {what}: {message}")]
    Json { what: String, message: String },
    #[error("{origin}:{line}:{col}: {message}")]
    Parse { origin: String, line: usize, col: usize, message: String },
    #[error(transparent)]
    Braiding(#[from] BraidingError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Replay(#[from] ReplayError),
}

impl CliError {
    fn parse(origin: &str, line_offset: usize, e: ParseError) -> Self {
        CliError::Parse { origin: origin.to_string(), line: e.line + line_offset, col: e.col, message: e.message }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nichols", version, about = "Exact computations with diagonal braidings and pre-Nichols algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Braiding matrix as JSON (file or inline): {"order", "size", "exponents"}.
    #[arg(long, conflicts_with = "family")]
    pub matrix: Option<String>,
    /// Family descriptor as JSON (file or inline), e.g. {"family":"CartanG2","order":4}.
    #[arg(long)]
    pub family: Option<String>,
    /// Orders at which to run the family, e.g. 5,7,8,9,12.
    #[arg(long, value_delimiter = ',', requires = "family", conflicts_with = "matrix")]
    pub order_list: Vec<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct ElementArgs {
    /// Element expression.
    #[arg(long)]
    pub element: String,
    /// Named element usable in later expressions, as NAME:=EXPR (repeatable).
    #[arg(long = "def", value_name = "NAME:=EXPR")]
    pub defs: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct IdealArgs {
    /// File of newline-separated relations ('#' starts a comment line).
    #[arg(long)]
    pub ideal: Option<PathBuf>,
    /// Relation given inline (repeatable).
    #[arg(long = "relation", value_name = "EXPR")]
    pub relations: Vec<String>,
    /// Use the cataloged relations of this kind (requires --family).
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Nichols,
    Distinguished,
    Eminent,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generalized Dynkin diagram.
    Diagram(Source),
    /// Generalized Cartan matrix.
    Cartan(Source),
    /// Positive roots with their orders and Cartan flags.
    Roots {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = weyl::DEFAULT_HEIGHT_CAP)]
        height_cap: i64,
    },
    /// Weyl groupoid orbit of the diagram.
    Orbit {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = weyl::DEFAULT_ORBIT_CAP)]
        cap: usize,
    },
    /// Positive Cartan roots.
    CartanRoots(Source),
    /// GK-dimension of the distinguished pre-Nichols algebra.
    Gkdim(Source),
    /// Braided coproduct of an element.
    Coproduct {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        element: ElementArgs,
        /// Drop the terms a⊗1 and 1⊗a.
        #[arg(long)]
        reduced: bool,
    },
    /// Quantum symmetrizer Ω of an element.
    Symmetrize {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long, default_value_t = DEFAULT_SYMMETRIZER_CAP)]
        cap: usize,
    },
    /// Whether an element reduces to zero modulo an ideal.
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        element: ElementArgs,
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Whether an element is primitive in the quotient.
    Primitive {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        element: ElementArgs,
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Whether an element is skew-central in the quotient.
    Central {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        element: ElementArgs,
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Graded dimensions of the quotient.
    Dims {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Checks a cataloged PBW basis against the quotient.
    PbwCheck {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "eminent")]
        kind: Kind,
        #[arg(long, default_value_t = 8)]
        degree: usize,
        /// Also check that no letter can be dropped.
        #[arg(long)]
        minimal: bool,
    },
    /// Hilbert series as a coefficient table.
    Hilbert {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "distinguished")]
        kind: Kind,
        #[arg(long, default_value_t = 8)]
        degree: usize,
        /// Compare with graded dimensions computed from relations.
        #[arg(long)]
        check: bool,
    },
    /// Cataloged presentation of a family, or the list of entries.
    Catalog {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "distinguished")]
        kind: Kind,
        /// List every catalog entry.
        #[arg(long)]
        list: bool,
    },
    /// Runs a verification manifest (a file or a built-in name).
    Replay {
        manifest: Option<String>,
        /// List the built-in manifests.
        #[arg(long)]
        list: bool,
    },
}

// ---------------------------------------------------------------------------
// inputs

/// A braiding to run a command on.
struct Target {
    label: String,
    matrix: BraidingMatrix,
    family: Option<FamilyDescriptor>,
}

impl Target {
    fn env(&self) -> Result<Env<'_>, CliError> {
        Ok(match &self.family {
            Some(f) => family_env(f, &self.matrix)?,
            None => Env::new(&self.matrix),
        })
    }

    fn family(&self, what: &str) -> Result<&FamilyDescriptor, CliError> {
        self.family.as_ref().ok_or_else(|| CliError::Usage(format!("{what} needs --family")))
    }
}

/// Inline JSON when the text starts with `{`, otherwise a file path.
fn read_json<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Io { path: arg.to_string(), message: e.to_string() })?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Json { what: what.to_string(), message: e.to_string() })
}

fn targets(s: &Source) -> Result<Vec<Target>, CliError> {
    if let Some(m) = &s.matrix {
        let matrix: BraidingMatrix = read_json(m, "--matrix")?;
        return Ok(vec![Target { label: format!("matrix N={}", matrix.order()), matrix, family: None }]);
    }
    let Some(f) = &s.family else {
        return Err(CliError::Usage("one of --matrix or --family is required".to_string()));
    };
    let base: FamilyDescriptor = read_json(f, "--family")?;
    let descs = if s.order_list.is_empty() { vec![base] } else { s.order_list.iter().map(|&n| base.with_order(n)).collect() };
    descs
        .into_iter()
        .map(|d| Ok(Target { label: d.label(), matrix: d.build()?, family: Some(d) }))
        .collect()
}

fn element_env<'a>(t: &'a Target, e: &ElementArgs) -> Result<Env<'a>, CliError> {
    let mut env = t.env()?;
    for (k, def) in e.defs.iter().enumerate() {
        let (name, text) = def
            .split_once(":=")
            .ok_or_else(|| CliError::Usage(format!("--def {def:?} is not of the form NAME:=EXPR")))?;
        env.define(name.trim(), text).map_err(|err| CliError::parse(&format!("--def #{}", k + 1), 0, err))?;
    }
    Ok(env)
}

fn element(env: &Env<'_>, e: &ElementArgs) -> Result<FreeElement, CliError> {
    parse_element(&e.element, env).map_err(|err| CliError::parse("--element", 0, err))
}

fn kind_of(k: Kind) -> PresentationKind {
    match k {
        Kind::Nichols => PresentationKind::Nichols,
        Kind::Distinguished => PresentationKind::Distinguished,
        Kind::Eminent => PresentationKind::Eminent,
    }
}

fn cataloged(t: &Target, k: Kind) -> Result<Presentation, CliError> {
    let f = t.family("a cataloged presentation")?;
    Ok(match k {
        Kind::Eminent => presentations::eminent_or_distinguished(f)?,
        k => presentations::presentation(f, kind_of(k))?,
    })
}

/// Relations from a file, inline and from the catalog, in that order.
fn relations(t: &Target, env: &Env<'_>, a: &IdealArgs) -> Result<Vec<FreeElement>, CliError> {
    let mut out = Vec::new();
    if let Some(path) = &a.ideal {
        out.extend(read_relation_file(path, env)?);
    }
    for (k, r) in a.relations.iter().enumerate() {
        out.push(parse_element(r, env).map_err(|e| CliError::parse(&format!("--relation #{}", k + 1), 0, e))?);
    }
    if let Some(k) = a.kind {
        out.extend(cataloged(t, k)?.elements());
    }
    Ok(out)
}

/// Parses a relation file: one expression per line, blank lines and lines
/// starting with `#` ignored. Errors point at the file line.
pub fn read_relation_file(path: &Path, env: &Env<'_>) -> Result<Vec<FreeElement>, CliError> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: origin.clone(), message: e.to_string() })?;
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(parse_element(line, env).map_err(|e| CliError::parse(&origin, k, e))?);
    }
    Ok(out)
}

fn ideal_at(t: &Target, gens: Vec<FreeElement>, d: usize) -> Result<GradedIdeal, CliError> {
    Ok(GradedIdeal::new(t.matrix.theta(), gens.into_iter().filter(|g| g.degree() <= d).collect())?)
}

// ---------------------------------------------------------------------------
// output

/// What one target produced: a JSON object, its text rendering, and
/// whether the check (if any) passed.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn info(json: Value, text: String) -> Self {
        Output { json, text, ok: true }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize to JSON")
}

fn dims_json(dims: &std::collections::BTreeMap<Vec<i64>, u64>) -> Value {
    Value::Array(dims.iter().map(|(k, v)| json!([k, v])).collect())
}

fn dims_text(dims: &std::collections::BTreeMap<Vec<i64>, u64>) -> String {
    let mut keys: Vec<&Vec<i64>> = dims.keys().collect();
    keys.sort_by_key(|k| (k.iter().sum::<i64>(), std::cmp::Reverse((*k).clone())));
    keys.iter().map(|k| format!("{k:?}: {}", dims[*k])).collect::<Vec<_>>().join("\n")
}

fn series_text(s: &TruncatedSeries) -> String {
    let mut rows: Vec<(&Vec<i64>, String)> = s.coefficients().iter().map(|(k, v)| (k, v.to_string())).collect();
    rows.sort_by_key(|(k, _)| (k.iter().sum::<i64>(), std::cmp::Reverse((*k).clone())));
    rows.iter().map(|(k, v)| format!("{k:?}: {v}")).collect::<Vec<_>>().join("\n")
}

// ---------------------------------------------------------------------------
// commands

fn per_target(source: &Source, f: impl Fn(&Target) -> Result<Output, CliError>) -> Result<Vec<(String, Output)>, CliError> {
    targets(source)?.iter().map(|t| Ok((t.label.clone(), f(t)?))).collect()
}

fn element_check(
    source: &Source,
    e: &ElementArgs,
    ia: &IdealArgs,
    degree: Option<usize>,
    extra: usize,
    f: impl Fn(&Target, &FreeElement, &GradedIdeal, usize) -> Result<Output, CliError>,
) -> Result<Vec<(String, Output)>, CliError> {
    per_target(source, |t| {
        let env = element_env(t, e)?;
        let a = element(&env, e)?;
        let gens = relations(t, &env, ia)?;
        let need = a.degree() + extra;
        let d = degree.unwrap_or(need);
        if d < need {
            return Err(CliError::Usage(format!("--degree {d} is below the {need} this check needs")));
        }
        f(t, &a, &ideal_at(t, gens, d)?, d)
    })
}

fn dispatch(cmd: &Command) -> Result<Vec<(String, Output)>, CliError> {
    match cmd {
        Command::Diagram(s) => per_target(s, |t| {
            let d = t.matrix.dynkin_diagram();
            let obs = d.finiteness_obstructions();
            Ok(Output::info(
                json!({ "diagram": to_value(&d), "obstructions": to_value(&obs) }),
                format!("{d}\nobstructions: {}", obs.len()),
            ))
        }),
        Command::Cartan(s) => per_target(s, |t| {
            let c = t.matrix.cartan_matrix()?;
            let rows: Vec<String> = c
                .entries
                .iter()
                .map(|r| r.iter().map(|e| to_value(e).to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            Ok(Output::info(json!({ "cartan": to_value(&c) }), rows.join("\n")))
        }),
        Command::Roots { source, height_cap } => per_target(source, |t| {
            let rs = weyl::positive_roots(&t.matrix, *height_cap)?;
            let mut text: Vec<String> = rs
                .positive_roots
                .iter()
                .map(|r| {
                    let n = r.order.map_or("inf".to_string(), |n| n.to_string());
                    format!("{:?}  N={n}{}", r.coords, if r.is_cartan { "  cartan" } else { "" })
                })
                .collect();
            text.push(format!("{} positive roots{}", rs.len(), if rs.finite { "" } else { " (search capped)" }));
            Ok(Output { json: json!({ "roots": to_value(&rs.positive_roots), "finite": rs.finite }), text: text.join("\n"), ok: rs.finite })
        }),
        Command::Orbit { source, cap } => per_target(source, |t| {
            let o = weyl::weyl_orbit(&t.matrix, *cap)?;
            let mut text: Vec<String> = o.diagrams.iter().enumerate().map(|(k, d)| format!("{k}: {d}")).collect();
            text.push(format!("{} diagrams{}", o.len(), if o.capped { " (capped)" } else { "" }));
            Ok(Output { json: json!({ "orbit": to_value(&o) }), text: text.join("\n"), ok: !o.capped })
        }),
        Command::CartanRoots(s) => per_target(s, |t| {
            let roots = weyl::cartan_roots_positive(&t.matrix)?;
            let text = roots.iter().map(|r| format!("{:?}", r.coords)).collect::<Vec<_>>().join("\n");
            Ok(Output::info(json!({ "roots": to_value(&roots) }), text))
        }),
        Command::Gkdim(s) => per_target(s, |t| {
            let g = weyl::gkdim_distinguished(&t.matrix)?;
            Ok(Output::info(json!({ "gkdim": g }), g.to_string()))
        }),
        Command::Coproduct { source, element: e, reduced } => per_target(source, |t| {
            let env = element_env(t, e)?;
            let a = element(&env, e)?;
            let d = if *reduced { reduced_coproduct(&t.matrix, &a) } else { coproduct(&t.matrix, &a) };
            Ok(Output::info(json!({ "element": to_value(&a), "coproduct": to_value(&d) }), d.to_string()))
        }),
        Command::Symmetrize { source, element: e, cap } => per_target(source, |t| {
            let env = element_env(t, e)?;
            let a = element(&env, e)?;
            let w = quantum_symmetrizer_capped(&t.matrix, &a, *cap)?;
            Ok(Output::info(json!({ "element": to_value(&a), "symmetrized": to_value(&w), "zero": w.is_zero() }), w.to_string()))
        }),
        Command::Verify { source, element: e, ideal, degree } => element_check(source, e, ideal, *degree, 0, |_, a, i, d| {
            let g = groebner(i, d)?;
            let nf = g.normal_form(a)?;
            let zero = nf.is_zero();
            let text = if zero { format!("reduces to 0 (degree {d})") } else { format!("normal form: {nf}") };
            Ok(Output { json: json!({ "vanishes": zero, "degree": d, "normal_form": to_value(&nf) }), text, ok: zero })
        }),
        Command::Primitive { source, element: e, ideal, degree } => element_check(source, e, ideal, *degree, 0, |t, a, i, d| {
            let g = groebner(i, d)?;
            let p = is_primitive_in_quotient(&t.matrix, a, &g)?;
            Ok(Output { json: json!({ "primitive": p, "degree": d }), text: if p { "primitive" } else { "not primitive" }.into(), ok: p })
        }),
        Command::Central { source, element: e, ideal, degree } => element_check(source, e, ideal, *degree, 1, |t, a, i, d| {
            let g = groebner(i, d)?;
            Ok(match skew_central_check(&t.matrix, a, &g)? {
                SkewCentrality::Central(c) => {
                    let text = c.iter().enumerate().map(|(k, s)| format!("x{} a = ({s}) a x{}", k + 1, k + 1)).collect::<Vec<_>>();
                    Output { json: json!({ "central": true, "scalars": to_value(&c) }), text: text.join("\n"), ok: true }
                }
                SkewCentrality::FailsAt(k) => Output {
                    json: json!({ "central": false, "fails_at": k + 1 }),
                    text: format!("not skew-central: fails against x{}", k + 1),
                    ok: false,
                },
            })
        }),
        Command::Dims { source, ideal, degree } => per_target(source, |t| {
            let env = t.env()?;
            let gens = relations(t, &env, ideal)?;
            let dims = graded_dimensions(&ideal_at(t, gens, *degree)?, *degree)?;
            Ok(Output::info(json!({ "degree": degree, "dimensions": dims_json(&dims) }), dims_text(&dims)))
        }),
        Command::PbwCheck { source, kind, degree, minimal } => per_target(source, |t| {
            let p = cataloged(t, *kind)?;
            let pbw = p.pbw.as_ref().ok_or_else(|| CliError::Usage(format!("catalog entry {} has no PBW basis", p.key)))?;
            let g = groebner(&p.ideal_up_to(*degree)?, *degree)?;
            let rep = pbw_span_check(pbw, &g, Some(*degree))?;
            let droppable: Vec<String> = if *minimal {
                (0..pbw.letters.len())
                    .filter(|&k| pbw_span_check(&pbw.without(k), &g, None).is_ok_and(|r| r.passed()))
                    .map(|k| pbw.letters[k].name.clone())
                    .collect()
            } else {
                Vec::new()
            };
            let ok = rep.passed() && droppable.is_empty();
            let text = format!(
                "{}: {}{}",
                p.key,
                if rep.passed() { "PBW basis verified" } else { "PBW check failed" },
                if droppable.is_empty() { String::new() } else { format!("; droppable letters {droppable:?}") }
            );
            Ok(Output { json: json!({ "key": p.key, "report": to_value(&rep), "droppable": droppable }), text, ok })
        }),
        Command::Hilbert { source, kind, degree, check } => per_target(source, |t| {
            let (series, key) = match kind {
                Kind::Nichols => (hilbert_nichols(&t.matrix, *degree)?, None),
                Kind::Distinguished => (hilbert_distinguished(&t.matrix, *degree)?, None),
                Kind::Eminent => {
                    let p = cataloged(t, Kind::Eminent)?;
                    let s = match p.hilbert_series(*degree) {
                        Some(s) => s?,
                        None => hilbert_distinguished(&t.matrix, *degree)?,
                    };
                    (s, Some(p.key))
                }
            };
            let mut ok = true;
            let mut out = json!({ "kind": format!("{:?}", kind).to_lowercase(), "degree": degree, "series": to_value(&series) });
            let mut text = series_text(&series);
            if *check {
                let dims = match kind {
                    Kind::Nichols => nichols_dimensions(&t.matrix, *degree)?,
                    _ => {
                        let p = cataloged(t, *kind)?;
                        groebner(&p.ideal_up_to(*degree)?, *degree)?.graded_dimensions()
                    }
                };
                let mismatch = series.first_mismatch(&dims);
                ok = mismatch.is_none();
                out["mismatch"] = to_value(&mismatch);
                text.push_str(&match mismatch {
                    None => format!("\nmatches graded dimensions through degree {degree}"),
                    Some(m) => format!("\nmismatch at {m:?}"),
                });
            }
            if let Some(k) = key {
                out["key"] = Value::String(k);
            }
            Ok(Output { json: out, text, ok })
        }),
        Command::Catalog { source, kind, list } => {
            if *list {
                let entries = catalog_entries();
                let text = entries.iter().map(|e| format!("{:<28} {:<13} {}", e.key, e.kind, e.guard)).collect::<Vec<_>>().join("\n");
                let out = Output::info(json!({ "version": catalog_version(), "entries": to_value(&entries) }), text);
                return Ok(vec![("catalog".to_string(), out)]);
            }
            per_target(source, |t| {
                let p = cataloged(t, *kind)?;
                Ok(presentation_output(&p))
            })
        }
        Command::Replay { manifest, list } => {
            if *list {
                let names = builtin_manifests();
                return Ok(vec![("replay".to_string(), Output::info(to_value(&names), names.join("\n")))]);
            }
            let Some(m) = manifest else {
                return Err(CliError::Usage("replay needs a manifest path or built-in name".to_string()));
            };
            let report = Manifest::load(m)?.run()?;
            let ok = report.passed();
            Ok(vec![(report.manifest.clone(), Output { json: to_value(&report), text: report.to_string(), ok })])
        }
    }
}

fn presentation_output(p: &Presentation) -> Output {
    let rels: Vec<Value> = p
        .relations
        .iter()
        .map(|r| json!({ "label": r.label, "text": r.element.to_string(), "element": to_value(&r.element) }))
        .collect();
    let pbw: Option<Vec<Value>> = p
        .pbw
        .as_ref()
        .map(|b| b.letters.iter().map(|l| json!({ "name": l.name, "height": l.height, "element": to_value(&l.element) })).collect());
    let central: Vec<Value> = p
        .central
        .iter()
        .map(|c| json!({ "label": c.label, "element": to_value(&c.element), "characters": to_value(&c.characters) }))
        .collect();
    let json = json!({
        "key": p.key,
        "kind": p.kind,
        "descriptor": to_value(&p.descriptor),
        "matrix": to_value(&p.matrix),
        "relations": rels,
        "pbw": pbw,
        "hilbert": to_value(&p.hilbert),
        "central": central,
    });
    let mut text = vec![format!("{} ({})", p.key, p.kind)];
    text.extend(p.relations.iter().map(|r| format!("  {}", r.label)));
    if let Some(b) = &p.pbw {
        let names: Vec<String> = b.letters.iter().map(|l| l.name.clone()).collect();
        text.push(format!("PBW: {}", names.join(" ")));
    }
    for c in &p.central {
        text.push(format!("central: {}", c.label));
    }
    Output::info(json, text.join("\n"))
}

/// Runs the command line `args` (including the program name), writing to
/// `out` and `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli.command) {
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Ok(results) => {
            let ok = results.iter().all(|(_, o)| o.ok);
            if cli.json {
                let value = if results.len() == 1 {
                    results.into_iter().next().map(|(_, o)| o.json).unwrap_or(Value::Null)
                } else {
                    Value::Array(results.into_iter().map(|(label, o)| json!({ "target": label, "result": o.json })).collect())
                };
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("JSON values print"));
            } else if results.len() == 1 {
                let _ = writeln!(out, "{}", results[0].1.text);
            } else {
                for (label, o) in &results {
                    let _ = writeln!(out, "== {label}\n{}", o.text);
                }
            }
            if ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
    }
}
