//! Braiding matrices of diagonal type, their generalized Dynkin diagrams and
//! Cartan matrices, the constructors for the families treated in the
//! catalog, and the diagram-level obstructions to a finite root system.
//!
//! Every entry of a [`BraidingMatrix`] is a root of unity, stored as an
//! exponent of the primitive root `ζ_N` of the matrix order. Vertices are
//! 0-based in this API; text formats (grammar, CLI, JSON reports) are 1-based.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{q_integer, CycScalar};

/// Hard cap for the Cartan scan when a label has no finite order.
pub const CARTAN_SCAN_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidingError {
    #[error("braiding matrix must be square and non-empty")]
    Shape,
    #[error("order must be positive")]
    ZeroOrder,
    #[error("vertex {0} has label 1; the Cartan scan is not defined")]
    TrivialLabel(usize),
    #[error("Cartan entry c[{0}][{1}] is undefined")]
    UndefinedCartan(usize, usize),
    #[error("vertex {0} out of range")]
    Vertex(usize),
    #[error("side condition violated: {0}")]
    SideCondition(String),
}

/// Exponent representation of a braiding matrix `q_ij = ζ_N^{a_ij}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidingMatrix {
    order: u32,
    exps: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    order: u32,
    /// Optional on input; always written.
    #[serde(default)]
    size: Option<usize>,
    exponents: Vec<Vec<i64>>,
}

impl Serialize for BraidingMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson { order: self.order, size: Some(self.theta()), exponents: self.exps.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BraidingMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = MatrixJson::deserialize(d)?;
        if let Some(size) = j.size.filter(|&n| n != j.exponents.len()) {
            return Err(D::Error::custom(format!("size {size} but {} rows", j.exponents.len())));
        }
        BraidingMatrix::new(j.order, j.exponents).map_err(D::Error::custom)
    }
}

impl BraidingMatrix {
    pub fn new(order: u32, exps: Vec<Vec<i64>>) -> Result<Self, BraidingError> {
        if order == 0 {
            return Err(BraidingError::ZeroOrder);
        }
        let t = exps.len();
        if t == 0 || exps.iter().any(|r| r.len() != t) {
            return Err(BraidingError::Shape);
        }
        let n = order as i64;
        let exps = exps.into_iter().map(|r| r.into_iter().map(|a| a.rem_euclid(n)).collect()).collect();
        Ok(BraidingMatrix { order, exps })
    }

    /// Rank θ.
    pub fn theta(&self) -> usize {
        self.exps.len()
    }

    /// Common cyclotomic order `N`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exps
    }

    /// Exponent of `q_ij`.
    pub fn exp(&self, i: usize, j: usize) -> i64 {
        self.exps[i][j]
    }

    /// Exponent of `q̃_ij = q_ij q_ji`.
    pub fn qt_exp(&self, i: usize, j: usize) -> i64 {
        (self.exps[i][j] + self.exps[j][i]).rem_euclid(self.order as i64)
    }

    pub fn zeta(&self) -> CycScalar {
        CycScalar::root_of_unity(self.order, 1)
    }

    fn root(&self, e: i64) -> CycScalar {
        CycScalar::root_of_unity(self.order, e)
    }

    /// The scalar `q_ij`.
    pub fn q(&self, i: usize, j: usize) -> CycScalar {
        self.root(self.exps[i][j])
    }

    /// The scalar `q̃_ij`.
    pub fn qt(&self, i: usize, j: usize) -> CycScalar {
        self.root(self.qt_exp(i, j))
    }

    /// Exponent of the bilinear form `q(α, β) = ∏ q_ij^{a_i b_j}`.
    pub fn form_exp(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.order as i64;
        let mut acc = 0i64;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    acc = (acc + (ai * bj % n) * self.exps[i][j]).rem_euclid(n);
                }
            }
        }
        acc
    }

    /// The scalar `q(α, β)`.
    pub fn form(&self, a: &[i64], b: &[i64]) -> CycScalar {
        self.root(self.form_exp(a, b))
    }

    /// Multiplicative order of `ζ_N^e`.
    pub fn order_of_exp(&self, e: i64) -> u32 {
        let n = self.order as i64;
        (n / e.rem_euclid(n).gcd(&n)) as u32
    }

    /// Exponent of `-1`, when `−1` is a power of `ζ_N`.
    pub fn minus_one_exp(&self) -> Option<i64> {
        self.order.is_multiple_of(2).then_some(self.order as i64 / 2)
    }

    pub fn dynkin_diagram(&self) -> DynkinDiagram {
        let t = self.theta();
        let labels = (0..t).map(|i| self.exps[i][i]).collect();
        let mut edges = BTreeMap::new();
        for i in 0..t {
            for j in i + 1..t {
                let e = self.qt_exp(i, j);
                if e != 0 {
                    edges.insert((i, j), e);
                }
            }
        }
        DynkinDiagram { order: self.order, labels, edges }
    }

    /// Generalized Cartan matrix:
    /// `c_ij = −min{n ≥ 0 : (n+1)_{q_ii} (1 − q_ii^n q̃_ij) = 0}`.
    pub fn cartan_matrix(&self) -> Result<GeneralizedCartanMatrix, BraidingError> {
        let t = self.theta();
        let n = self.order as i64;
        let mut entries = vec![vec![CartanEntry::Value(2); t]; t];
        for i in 0..t {
            let a = self.exps[i][i];
            if a == 0 {
                return Err(BraidingError::TrivialLabel(i));
            }
            let ord = self.order_of_exp(a) as i64;
            for j in 0..t {
                if i == j {
                    continue;
                }
                let qt = self.qt_exp(i, j);
                // (n+1)_{q_ii} vanishes first at n = ord − 1, so the scan stops there
                let m = (0..ord).find(|&m| (m * a + qt).rem_euclid(n) == 0).unwrap_or(ord - 1);
                entries[i][j] = CartanEntry::Value(-m);
            }
        }
        Ok(GeneralizedCartanMatrix { entries })
    }

    /// Whether `q̃_ij = q_ii^{c_ij}` for every `j ≠ i`.
    pub fn is_cartan_vertex(&self, i: usize) -> Result<bool, BraidingError> {
        if i >= self.theta() {
            return Err(BraidingError::Vertex(i));
        }
        let c = self.cartan_matrix()?;
        let n = self.order as i64;
        for j in 0..self.theta() {
            if j == i {
                continue;
            }
            let cij = c.get(i, j).ok_or(BraidingError::UndefinedCartan(i, j))?;
            if (self.exps[i][i] * cij - self.qt_exp(i, j)).rem_euclid(n) != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Principal submatrix on the given vertices (in the given order).
    pub fn restrict(&self, vertices: &[usize]) -> BraidingMatrix {
        let exps = vertices.iter().map(|&i| vertices.iter().map(|&j| self.exps[i][j]).collect()).collect();
        BraidingMatrix { order: self.order, exps }
    }

    /// Same matrix viewed in `Q(ζ_m)`, `m` a multiple of the order.
    pub fn lift(&self, m: u32) -> BraidingMatrix {
        assert!(m.is_multiple_of(self.order));
        let f = (m / self.order) as i64;
        BraidingMatrix { order: m, exps: self.exps.iter().map(|r| r.iter().map(|a| a * f).collect()).collect() }
    }

    /// Every violated diagram-level necessary condition for a finite root
    /// system. An empty list is not a proof of finiteness.
    pub fn finiteness_obstructions(&self) -> Vec<Obstruction> {
        self.dynkin_diagram().finiteness_obstructions()
    }
}

/// Generalized Dynkin diagram, with labels and edges stored as exponents of
/// `ζ_N`. Edges are only present where `q̃_ij ≠ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinDiagram {
    pub order: u32,
    pub labels: Vec<i64>,
    #[serde(with = "edge_list")]
    pub edges: BTreeMap<(usize, usize), i64>,
}

/// JSON object keys must be strings, so edges travel as `[i, j, exponent]`.
mod edge_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(edges: &BTreeMap<(usize, usize), i64>, s: S) -> Result<S::Ok, S::Error> {
        let list: Vec<(usize, usize, i64)> = edges.iter().map(|(&(i, j), &e)| (i, j, e)).collect();
        list.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(usize, usize), i64>, D::Error> {
        let list = Vec::<(usize, usize, i64)>::deserialize(d)?;
        Ok(list.into_iter().map(|(i, j, e)| ((i, j), e)).collect())
    }
}

impl DynkinDiagram {
    pub fn theta(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> CycScalar {
        CycScalar::root_of_unity(self.order, self.labels[i])
    }

    /// Exponent of `q̃_ij` (0 when there is no edge).
    pub fn edge_exp(&self, i: usize, j: usize) -> i64 {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.get(&key).copied().unwrap_or(0)
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<CycScalar> {
        let e = self.edge_exp(i, j);
        (e != 0).then(|| CycScalar::root_of_unity(self.order, e))
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.theta()).filter(|&j| j != i && self.edge_exp(i, j) != 0).collect()
    }

    /// The braiding matrix in the fixed gauge `q_ij = q̃_ij`, `q_ji = 1` for `i < j`.
    pub fn to_matrix(&self) -> BraidingMatrix {
        let t = self.theta();
        let mut exps = vec![vec![0i64; t]; t];
        for i in 0..t {
            exps[i][i] = self.labels[i];
        }
        for (&(i, j), &e) in &self.edges {
            exps[i][j] = e;
        }
        BraidingMatrix { order: self.order, exps }
    }

    fn is_minus_one(&self, e: i64) -> bool {
        self.order.is_multiple_of(2) && e == self.order as i64 / 2
    }

    fn exp_order(&self, e: i64) -> i64 {
        let n = self.order as i64;
        n / e.rem_euclid(n).gcd(&n)
    }

    pub fn finiteness_obstructions(&self) -> Vec<Obstruction> {
        let t = self.theta();
        let n = self.order as i64;
        let mut out = Vec::new();
        for i in 0..t {
            if self.labels[i] == 0 {
                if let Some(&j) = self.neighbors(i).first() {
                    out.push(Obstruction::OneConnected { vertex: i, neighbor: j });
                }
            }
        }
        for i in 0..t {
            for j in 0..t {
                if i == j || self.edge_exp(i, j) == 0 {
                    continue;
                }
                // labels q and −q joined by q², with ord q > 2
                let q = self.labels[i];
                if self.exp_order(q) <= 2 || !self.order.is_multiple_of(2) {
                    continue;
                }
                let minus_q = (q + n / 2).rem_euclid(n);
                if self.labels[j] == minus_q && self.edge_exp(i, j) == (2 * q).rem_euclid(n) {
                    out.push(Obstruction::QQSquaredMinusQ { q_vertex: i, minus_q_vertex: j });
                }
            }
        }
        for i in 0..t {
            for j in i + 1..t {
                for k in j + 1..t {
                    let (a, b, c) = (self.edge_exp(i, j), self.edge_exp(i, k), self.edge_exp(j, k));
                    if a == 0 || b == 0 || c == 0 {
                        continue;
                    }
                    if (a + b + c).rem_euclid(n) != 0 {
                        out.push(Obstruction::Triangle { vertices: [i, j, k] });
                    }
                }
            }
        }
        if let Some(cycle) = self.long_cycle() {
            out.push(Obstruction::LongCycle { vertices: cycle });
        }
        out
    }

    /// Literal evaluation of the three identities attached to a triangle
    /// `{i, j, k}` (with `i` playing the role of vertex 1).
    pub fn rank3_identities(&self, i: usize, j: usize, k: usize) -> Rank3Report {
        let n = self.order as i64;
        let (a, b, c) = (self.edge_exp(i, j), self.edge_exp(i, k), self.edge_exp(j, k));
        let product_is_one = (a + b + c).rem_euclid(n) == 0;
        let some_edge_minus_one = [a, b, c].iter().any(|&e| self.is_minus_one(e));
        let minus_one_clause = !self.is_minus_one(self.labels[i])
            || ((self.labels[j] + a).rem_euclid(n) == 0 && (self.labels[k] + b).rem_euclid(n) == 0);
        Rank3Report { product_is_one, some_edge_minus_one, minus_one_clause }
    }

    /// A simple cycle of length at least 4, if the underlying graph has one.
    fn long_cycle(&self) -> Option<Vec<usize>> {
        let t = self.theta();
        fn dfs(d: &DynkinDiagram, start: usize, path: &mut Vec<usize>, seen: &mut BTreeSet<usize>) -> Option<Vec<usize>> {
            let last = *path.last().unwrap();
            for nb in d.neighbors(last) {
                if nb == start && path.len() >= 4 {
                    return Some(path.clone());
                }
                if nb > start && !seen.contains(&nb) {
                    seen.insert(nb);
                    path.push(nb);
                    if let Some(c) = dfs(d, start, path, seen) {
                        return Some(c);
                    }
                    path.pop();
                    seen.remove(&nb);
                }
            }
            None
        }
        for s in 0..t {
            let mut seen = BTreeSet::from([s]);
            if let Some(c) = dfs(self, s, &mut vec![s], &mut seen) {
                return Some(c);
            }
        }
        None
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.theta()).map(|i| format!("{}:{}", i + 1, self.label(i))).collect();
        write!(f, "N={} vertices [{}]", self.order, labels.join(", "))?;
        if !self.edges.is_empty() {
            let edges: Vec<String> = self
                .edges
                .iter()
                .map(|(&(i, j), &e)| format!("{}-{}:{}", i + 1, j + 1, CycScalar::root_of_unity(self.order, e)))
                .collect();
            write!(f, " edges [{}]", edges.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank3Report {
    pub product_is_one: bool,
    pub some_edge_minus_one: bool,
    pub minus_one_clause: bool,
}

/// A violated necessary condition for a finite root system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Obstruction {
    /// A vertex labelled 1 with an incident edge.
    OneConnected { vertex: usize, neighbor: usize },
    /// Two vertices labelled `q` and `−q` joined by `q²`, `ord q > 2`.
    QQSquaredMinusQ { q_vertex: usize, minus_q_vertex: usize },
    /// A triangle whose edge labels do not multiply to 1.
    Triangle { vertices: [usize; 3] },
    /// A cycle of length larger than 3.
    LongCycle { vertices: Vec<usize> },
}

/// One entry of a generalized Cartan matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanEntry {
    Value(i64),
    Undefined,
}

impl Serialize for CartanEntry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CartanEntry::Value(v) => s.serialize_i64(*v),
            CartanEntry::Undefined => s.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for CartanEntry {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match Option::<i64>::deserialize(d)? {
            Some(v) => CartanEntry::Value(v),
            None => CartanEntry::Undefined,
        })
    }
}

/// Cartan entry from scalars: scans `n = 0, 1, …` up to `cap` and reports
/// [`CartanEntry::Undefined`] when no admissible `n` is found.
pub fn cartan_entry_scan(q_ii: &CycScalar, qt_ij: &CycScalar, cap: u64) -> CartanEntry {
    let one = CycScalar::one();
    let bound = match q_ii.mult_order() {
        Ok(Some(o)) => (o as u64).min(cap),
        _ => cap,
    };
    let mut power = CycScalar::one();
    for n in 0..bound {
        let vanishes = q_integer(n as u32 + 1, q_ii).is_zero() || (&power * qt_ij) == one;
        if vanishes {
            return CartanEntry::Value(-(n as i64));
        }
        power = &power * q_ii;
    }
    CartanEntry::Undefined
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneralizedCartanMatrix {
    pub entries: Vec<Vec<CartanEntry>>,
}

impl GeneralizedCartanMatrix {
    pub fn get(&self, i: usize, j: usize) -> Option<i64> {
        match self.entries[i][j] {
            CartanEntry::Value(v) => Some(v),
            CartanEntry::Undefined => None,
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Plain integer matrix, failing on an undefined entry.
    pub fn to_integers(&self) -> Result<Vec<Vec<i64>>, BraidingError> {
        (0..self.size())
            .map(|i| (0..self.size()).map(|j| self.get(i, j).ok_or(BraidingError::UndefinedCartan(i, j))).collect())
            .collect()
    }
}

/// Variant selector for families with several diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    A,
    B,
    C,
    D,
    D1,
    D2,
    E,
    F,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::A => "a",
            Variant::B => "b",
            Variant::C => "c",
            Variant::D => "d",
            Variant::D1 => "d1",
            Variant::D2 => "d2",
            Variant::E => "e",
            Variant::F => "f",
        };
        f.write_str(s)
    }
}

fn default_q() -> i64 {
    1
}

/// Descriptor of a braiding in one of the cataloged families. `order` is the
/// order `N` of the family parameter; `q` (and `r` for D(2,1;α)) are
/// exponents of `ζ_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum FamilyDescriptor {
    CartanG2 {
        order: u32,
        #[serde(default = "default_q")]
        q: i64,
    },
    SuperA {
        theta: usize,
        order: u32,
        #[serde(rename = "J")]
        j: Vec<usize>,
        #[serde(default = "default_q")]
        q: i64,
    },
    SuperB {
        theta: usize,
        order: u32,
        #[serde(rename = "J")]
        j: Vec<usize>,
        #[serde(default = "default_q")]
        q: i64,
    },
    SuperD {
        theta: usize,
        order: u32,
        #[serde(rename = "J")]
        j: Vec<usize>,
        variant: Variant,
        #[serde(default = "default_q")]
        q: i64,
    },
    D21Alpha {
        order: u32,
        variant: Variant,
        q: i64,
        r: i64,
    },
    F4 {
        order: u32,
        variant: Variant,
        #[serde(default = "default_q")]
        q: i64,
    },
    G3 {
        order: u32,
        variant: Variant,
        #[serde(default = "default_q")]
        q: i64,
    },
    StdB {
        theta: usize,
        order: u32,
        #[serde(rename = "J")]
        j: Vec<usize>,
    },
    StdG2 {
        order: u32,
        variant: Variant,
        #[serde(default = "default_q")]
        q: i64,
    },
}

/// Labels and edges of a diagram being assembled, in units of the parameter
/// exponent; `None` stands for `−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Lbl {
    Pow(i64),
    MinusOne,
    /// `−q^k`
    MinusPow(i64),
}

struct Sketch {
    labels: Vec<Lbl>,
    edges: Vec<(usize, usize, Lbl)>,
}

/// Right-to-left solution of the type-A conditions for `A_len(p; J)`.
/// `J` is 1-based inside the chain. Returns labels and the edges
/// `q̃_{i,i+1}` as powers of `p`.
fn a_chain(len: usize, j: &BTreeSet<usize>) -> (Vec<Lbl>, Vec<i64>) {
    let mut labels = vec![Lbl::Pow(1); len];
    let mut edges = vec![0i64; len.saturating_sub(1)];
    if len == 0 {
        return (labels, edges);
    }
    // e = q̃_{t−1,t} as power of p
    let mut e;
    if j.contains(&len) {
        labels[len - 1] = Lbl::MinusOne;
        e = 1;
    } else {
        labels[len - 1] = Lbl::Pow(1);
        e = -1;
    }
    for i in (1..len).rev() {
        // vertex i (1-based) with right edge e
        edges[i - 1] = e;
        if j.contains(&i) {
            labels[i - 1] = Lbl::MinusOne;
            e = -e;
        } else {
            labels[i - 1] = Lbl::Pow(-e);
        }
    }
    (labels, edges)
}

fn chain_sketch(len: usize, j: &BTreeSet<usize>, scale: i64) -> Sketch {
    let (labels, edges) = a_chain(len, j);
    let scale_l = |l: Lbl| match l {
        Lbl::Pow(k) => Lbl::Pow(k * scale),
        other => other,
    };
    Sketch {
        labels: labels.into_iter().map(scale_l).collect(),
        edges: edges.into_iter().enumerate().map(|(i, e)| (i, i + 1, Lbl::Pow(e * scale))).collect(),
    }
}

fn side(cond: bool, msg: impl Into<String>) -> Result<(), BraidingError> {
    if cond {
        Ok(())
    } else {
        Err(BraidingError::SideCondition(msg.into()))
    }
}

fn j_set(j: &[usize], lo: usize, hi: usize, what: &str) -> Result<BTreeSet<usize>, BraidingError> {
    let set: BTreeSet<usize> = j.iter().copied().collect();
    side(set.len() == j.len(), format!("{what}: J has repeated entries"))?;
    side(set.iter().all(|&i| i >= lo && i <= hi), format!("{what}: J must lie in {lo}..={hi}"))?;
    Ok(set)
}

impl FamilyDescriptor {
    /// Order `N` of the family parameter.
    pub fn order(&self) -> u32 {
        match self {
            FamilyDescriptor::CartanG2 { order, .. }
            | FamilyDescriptor::SuperA { order, .. }
            | FamilyDescriptor::SuperB { order, .. }
            | FamilyDescriptor::SuperD { order, .. }
            | FamilyDescriptor::D21Alpha { order, .. }
            | FamilyDescriptor::F4 { order, .. }
            | FamilyDescriptor::G3 { order, .. }
            | FamilyDescriptor::StdB { order, .. }
            | FamilyDescriptor::StdG2 { order, .. } => *order,
        }
    }

    /// The same descriptor at another order; exponent parameters are kept.
    pub fn with_order(&self, n: u32) -> FamilyDescriptor {
        let mut d = self.clone();
        match &mut d {
            FamilyDescriptor::CartanG2 { order, .. }
            | FamilyDescriptor::SuperA { order, .. }
            | FamilyDescriptor::SuperB { order, .. }
            | FamilyDescriptor::SuperD { order, .. }
            | FamilyDescriptor::D21Alpha { order, .. }
            | FamilyDescriptor::F4 { order, .. }
            | FamilyDescriptor::G3 { order, .. }
            | FamilyDescriptor::StdB { order, .. }
            | FamilyDescriptor::StdG2 { order, .. } => *order = n,
        }
        d
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FamilyDescriptor::CartanG2 { .. } => "CartanG2",
            FamilyDescriptor::SuperA { .. } => "SuperA",
            FamilyDescriptor::SuperB { .. } => "SuperB",
            FamilyDescriptor::SuperD { .. } => "SuperD",
            FamilyDescriptor::D21Alpha { .. } => "D21Alpha",
            FamilyDescriptor::F4 { .. } => "F4",
            FamilyDescriptor::G3 { .. } => "G3",
            FamilyDescriptor::StdB { .. } => "StdB",
            FamilyDescriptor::StdG2 { .. } => "StdG2",
        }
    }

    pub fn theta(&self) -> usize {
        match self {
            FamilyDescriptor::CartanG2 { .. } | FamilyDescriptor::StdG2 { .. } => 2,
            FamilyDescriptor::D21Alpha { .. } | FamilyDescriptor::G3 { .. } => 3,
            FamilyDescriptor::F4 { .. } => 4,
            FamilyDescriptor::SuperA { theta, .. }
            | FamilyDescriptor::SuperB { theta, .. }
            | FamilyDescriptor::SuperD { theta, .. }
            | FamilyDescriptor::StdB { theta, .. } => *theta,
        }
    }

    pub fn variant(&self) -> Option<Variant> {
        match self {
            FamilyDescriptor::SuperD { variant, .. }
            | FamilyDescriptor::D21Alpha { variant, .. }
            | FamilyDescriptor::F4 { variant, .. }
            | FamilyDescriptor::G3 { variant, .. }
            | FamilyDescriptor::StdG2 { variant, .. } => Some(*variant),
            _ => None,
        }
    }

    /// The set `J` (1-based), empty for families without one.
    pub fn j_set(&self) -> BTreeSet<usize> {
        match self {
            FamilyDescriptor::SuperA { j, .. }
            | FamilyDescriptor::SuperB { j, .. }
            | FamilyDescriptor::SuperD { j, .. }
            | FamilyDescriptor::StdB { j, .. } => j.iter().copied().collect(),
            _ => BTreeSet::new(),
        }
    }

    fn q_exp(&self) -> i64 {
        match self {
            FamilyDescriptor::CartanG2 { q, .. }
            | FamilyDescriptor::SuperA { q, .. }
            | FamilyDescriptor::SuperB { q, .. }
            | FamilyDescriptor::SuperD { q, .. }
            | FamilyDescriptor::D21Alpha { q, .. }
            | FamilyDescriptor::F4 { q, .. }
            | FamilyDescriptor::G3 { q, .. }
            | FamilyDescriptor::StdG2 { q, .. } => *q,
            FamilyDescriptor::StdB { order, .. } => (*order / 6) as i64,
        }
    }

    /// Short human-readable name such as `SuperA(3;{2}) N=5`.
    pub fn label(&self) -> String {
        let js = |j: &BTreeSet<usize>| {
            let v: Vec<String> = j.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", v.join(","))
        };
        let n = self.order();
        match self {
            FamilyDescriptor::CartanG2 { .. } => format!("CartanG2 N={n}"),
            FamilyDescriptor::SuperA { theta, .. } => format!("SuperA({theta};{}) N={n}", js(&self.j_set())),
            FamilyDescriptor::SuperB { theta, .. } => format!("SuperB({theta};{}) N={n}", js(&self.j_set())),
            FamilyDescriptor::SuperD { theta, variant, .. } => {
                format!("SuperD({theta};{}) ({variant}) N={n}", js(&self.j_set()))
            }
            FamilyDescriptor::D21Alpha { variant, q, r, .. } => format!("D21Alpha ({variant}) N={n} q={q} r={r}"),
            FamilyDescriptor::F4 { variant, .. } => format!("F4 ({variant}) N={n}"),
            FamilyDescriptor::G3 { variant, .. } => format!("G3 ({variant}) N={n}"),
            FamilyDescriptor::StdB { theta, .. } => format!("StdB({theta};{}) N={n}", js(&self.j_set())),
            FamilyDescriptor::StdG2 { variant, .. } => format!("StdG2 ({variant}) N={n}"),
        }
    }

    /// Checks the side conditions and returns the diagram sketch together
    /// with the exponents of `q` and, for D(2,1;α), of `r` and `s`.
    fn sketch(&self) -> Result<(Sketch, Vec<i64>), BraidingError> {
        let n = self.order() as i64;
        side(n >= 1, "order must be positive")?;
        let q = self.q_exp();
        let primitive = |e: i64| e.rem_euclid(n).gcd(&n) == 1;
        use Lbl::*;
        let sk = match self {
            FamilyDescriptor::CartanG2 { .. } => {
                side(n > 3, "CartanG2 requires N > 3")?;
                side(primitive(q), "q must be a primitive N-th root of unity")?;
                Sketch { labels: vec![Pow(1), Pow(3)], edges: vec![(0, 1, Pow(-3))] }
            }
            FamilyDescriptor::SuperA { theta, j, .. } => {
                side(*theta >= 2, "SuperA requires theta >= 2")?;
                side(n > 2, "SuperA requires N > 2")?;
                side(primitive(q), "q must be a primitive N-th root of unity")?;
                let js = j_set(j, 1, *theta, "SuperA")?;
                side(!js.is_empty(), "SuperA requires J non-empty")?;
                chain_sketch(*theta, &js, 1)
            }
            FamilyDescriptor::SuperB { theta, j, .. } => {
                side(*theta >= 2, "SuperB requires theta >= 2")?;
                side(n > 2 && n != 4, "SuperB requires N != 2, 4")?;
                side(primitive(q), "q must be a primitive N-th root of unity")?;
                side(!j.contains(theta), "SuperB requires theta not in J")?;
                let js = j_set(j, 1, theta - 1, "SuperB")?;
                side(!js.is_empty(), "SuperB requires J non-empty")?;
                let mut sk = chain_sketch(theta - 1, &js, 2);
                sk.labels.push(Pow(1));
                sk.edges.push((theta - 2, theta - 1, Pow(-2)));
                sk
            }
            FamilyDescriptor::SuperD { theta, j, variant, .. } => {
                let t = *theta;
                side(t >= 3, "SuperD requires theta >= 3")?;
                side(n > 2, "SuperD requires N > 2")?;
                side(primitive(q), "q must be a primitive N-th root of unity")?;
                let js = j_set(j, 1, t - 1, "SuperD")?;
                side(!js.is_empty(), "SuperD requires J non-empty")?;
                let head: BTreeSet<usize> = js.iter().copied().filter(|&i| i <= t - 2).collect();
                match variant {
                    Variant::C => {
                        let mut sk = chain_sketch(t - 1, &js, 1);
                        sk.labels.push(Pow(2));
                        sk.edges.push((t - 2, t - 1, Pow(-2)));
                        sk
                    }
                    Variant::D1 => {
                        side(js.contains(&(t - 1)), "SuperD diagram d1 requires theta-1 in J")?;
                        let mut sk = chain_sketch(t - 2, &head, 1);
                        sk.labels.push(MinusOne);
                        sk.labels.push(MinusOne);
                        sk.edges.push((t - 3, t - 2, Pow(-1)));
                        sk.edges.push((t - 3, t - 1, Pow(-1)));
                        sk.edges.push((t - 2, t - 1, Pow(2)));
                        sk
                    }
                    Variant::D2 => {
                        side(!js.contains(&(t - 1)), "SuperD diagram d2 requires theta-1 not in J")?;
                        let mut sk = chain_sketch(t - 2, &head, -1);
                        sk.labels.push(Pow(-1));
                        sk.labels.push(Pow(-1));
                        sk.edges.push((t - 3, t - 2, Pow(1)));
                        sk.edges.push((t - 3, t - 1, Pow(1)));
                        sk
                    }
                    other => return Err(BraidingError::SideCondition(format!("SuperD has no diagram {other}"))),
                }
            }
            FamilyDescriptor::D21Alpha { variant, q, r, .. } => {
                let s = -q - r;
                for (name, e) in [("q", *q), ("r", *r), ("s", s)] {
                    side(e.rem_euclid(n) != 0, format!("D21Alpha requires {name} != 1"))?;
                }
                let minus = |e: i64| n % 2 == 0 && e.rem_euclid(n) == n / 2;
                side(!minus(*r) && !minus(s), "D21Alpha requires r, s != -1 (relabel otherwise)")?;
                // q, r, s are given directly as exponents of ζ_N here
                match variant {
                    Variant::A => Sketch {
                        labels: vec![Pow(*q), MinusOne, Pow(*r)],
                        edges: vec![(0, 1, Pow(-q)), (1, 2, Pow(-r))],
                    },
                    Variant::B => Sketch {
                        labels: vec![MinusOne, MinusOne, MinusOne],
                        edges: vec![(0, 1, Pow(*q)), (0, 2, Pow(s)), (1, 2, Pow(*r))],
                    },
                    other => return Err(BraidingError::SideCondition(format!("D21Alpha has no diagram {other}"))),
                }
            }
            FamilyDescriptor::F4 { variant, .. } => {
                side(n >= 4, "F4 requires N >= 4")?;
                side(primitive(q), "q must be a primitive N-th root of unity")?;
                match variant {
                    Variant::A => Sketch {
                        labels: vec![Pow(2), Pow(2), Pow(1), MinusOne],
                        edges: vec![(0, 1, Pow(-2)), (1, 2, Pow(-2)), (2, 3, Pow(-1))],
                    },
                    Variant::B => Sketch {
                        labels: vec![Pow(2), Pow(2), MinusOne, MinusOne],
                        edges: vec![(0, 1, Pow(-2)), (1, 2, Pow(-2)), (2, 3, Pow(1))],
                    },
                    Variant::C => Sketch {
                        labels: vec![Pow(2), MinusOne, MinusOne, Pow(1)],
                        edges: vec![(0, 1, Pow(-2)), (1, 2, Pow(2)), (1, 3, Pow(-1)), (2, 3, Pow(-1))],
                    },
                    Variant::D => Sketch {
                        labels: vec![Pow(2), MinusOne, MinusOne, MinusOne],
                        edges: vec![(0, 1, Pow(-2)), (1, 2, Pow(1)), (1, 3, Pow(2)), (2, 3, Pow(-3))],
                    },
                    Variant::E => Sketch {
                        labels: vec![Pow(2), Pow(2), MinusOne, Pow(-3)],
                        edges: vec![(0, 1, Pow(-2)), (1, 2, Pow(-2)), (2, 3, Pow(3))],
                    },
                    Variant::F => Sketch {
                        labels: vec![Pow(2), Pow(1), MinusOne, Pow(-3)],
                        edges: vec![(0, 1, Pow(-2)), (1, 2, Pow(-1)), (2, 3, Pow(3))],
                    },
                    other => return Err(BraidingError::SideCondition(format!("F4 has no diagram {other}"))),
                }
            }
            FamilyDescriptor::G3 { variant, .. } => {
                side(n > 3, "G3 requires N > 3")?;
                side(primitive(q), "q must be a primitive N-th root of unity")?;
                match variant {
                    Variant::A => Sketch {
                        labels: vec![MinusOne, Pow(1), Pow(3)],
                        edges: vec![(0, 1, Pow(-1)), (1, 2, Pow(-3))],
                    },
                    Variant::B => Sketch {
                        labels: vec![MinusOne, MinusOne, Pow(3)],
                        edges: vec![(0, 1, Pow(1)), (1, 2, Pow(-3))],
                    },
                    Variant::C => Sketch {
                        labels: vec![MinusPow(-1), MinusOne, Pow(3)],
                        edges: vec![(0, 1, Pow(2)), (1, 2, Pow(-3))],
                    },
                    Variant::D => Sketch {
                        labels: vec![Pow(1), MinusOne, MinusOne],
                        edges: vec![(0, 1, Pow(-2)), (0, 2, Pow(-1)), (1, 2, Pow(3))],
                    },
                    other => return Err(BraidingError::SideCondition(format!("G3 has no diagram {other}"))),
                }
            }
            FamilyDescriptor::StdB { theta, j, .. } => {
                side(*theta >= 2, "StdB requires theta >= 2")?;
                side(n % 6 == 0, "StdB requires N divisible by 6 (it contains a primitive cube root and -1)")?;
                let js = j_set(j, 1, theta - 1, "StdB")?;
                // p = −ζ̄ = ζ_N^{N/6}, ζ = ζ_N^{N/3}; q_exp() is N/6 so Pow(k) means p^k
                let mut sk = chain_sketch(theta - 1, &js, 1);
                sk.labels.push(Pow(2)); // ζ = p^2
                sk.edges.push((theta - 2, theta - 1, Pow(5))); // −ζ = p^5
                sk
            }
            FamilyDescriptor::StdG2 { variant, .. } => {
                side(n == 8, "StdG2 requires N = 8")?;
                side(primitive(q), "q must be a primitive 8th root of unity")?;
                match variant {
                    Variant::A => Sketch { labels: vec![Pow(2), Pow(-1)], edges: vec![(0, 1, Pow(1))] },
                    Variant::B => Sketch { labels: vec![Pow(2), MinusOne], edges: vec![(0, 1, Pow(3))] },
                    Variant::C => Sketch { labels: vec![Pow(1), MinusOne], edges: vec![(0, 1, Pow(5))] },
                    other => return Err(BraidingError::SideCondition(format!("StdG2 has no diagram {other}"))),
                }
            }
        };
        let extra = match self {
            FamilyDescriptor::D21Alpha { q, r, .. } => vec![*q, *r, -q - r],
            _ => vec![q],
        };
        Ok((sk, extra))
    }

    /// Order of the ambient matrix: `N`, doubled when `−1` is needed and `N` is odd.
    pub fn matrix_order(&self) -> Result<u32, BraidingError> {
        let (sk, _) = self.sketch()?;
        let n = self.order();
        let needs_minus = sk.labels.iter().chain(sk.edges.iter().map(|(_, _, l)| l)).any(|l| !matches!(l, Lbl::Pow(_)));
        Ok(if needs_minus && n % 2 == 1 { 2 * n } else { n })
    }

    /// Scale converting exponents of `ζ_N` into exponents of `ζ_M`.
    fn scale(&self) -> Result<i64, BraidingError> {
        Ok((self.matrix_order()? / self.order()) as i64)
    }

    /// Family parameters as exponents of `ζ_M` (`M` = matrix order):
    /// `q` for every family, plus `r`, `s` for D(2,1;α) and `zeta` for StdB.
    pub fn parameter_exponents(&self) -> Result<Vec<(&'static str, i64)>, BraidingError> {
        let (_, extra) = self.sketch()?;
        let f = self.scale()?;
        let m = self.matrix_order()? as i64;
        Ok(match self {
            FamilyDescriptor::D21Alpha { .. } => vec![
                ("q", (extra[0] * f).rem_euclid(m)),
                ("r", (extra[1] * f).rem_euclid(m)),
                ("s", (extra[2] * f).rem_euclid(m)),
            ],
            FamilyDescriptor::StdB { .. } => vec![("q", m / 6), ("zeta", m / 3)],
            _ => vec![("q", (extra[0] * f).rem_euclid(m))],
        })
    }

    /// Builds the braiding matrix in the fixed gauge
    /// `q_ij = q̃_ij`, `q_ji = 1` (`i < j`), `q_ii` = vertex label.
    pub fn build(&self) -> Result<BraidingMatrix, BraidingError> {
        let (sk, extra) = self.sketch()?;
        let m = self.matrix_order()? as i64;
        let f = self.scale()?;
        let unit = match self {
            // D(2,1;α) sketches are already written in exponents of ζ_N
            FamilyDescriptor::D21Alpha { .. } => f,
            _ => extra[0] * f,
        };
        let conv = |l: Lbl| -> i64 {
            match l {
                Lbl::Pow(k) => (k * unit).rem_euclid(m),
                Lbl::MinusOne => m / 2,
                Lbl::MinusPow(k) => (k * unit + m / 2).rem_euclid(m),
            }
        };
        let t = sk.labels.len();
        let mut exps = vec![vec![0i64; t]; t];
        for (i, &l) in sk.labels.iter().enumerate() {
            exps[i][i] = conv(l);
        }
        for &(i, j, l) in &sk.edges {
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            exps[a][b] = conv(l);
        }
        BraidingMatrix::new(m as u32, exps)
    }
}

/// Convenience wrapper for [`FamilyDescriptor::build`].
pub fn build_family(desc: &FamilyDescriptor) -> Result<BraidingMatrix, BraidingError> {
    desc.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn super_a(theta: usize, n: u32, j: &[usize]) -> BraidingMatrix {
        FamilyDescriptor::SuperA { theta, order: n, j: j.to_vec(), q: 1 }.build().unwrap()
    }

    /// Diagram labels/edges as exponents of `q = ζ_M^{M/N}` for readability.
    fn in_q_units(d: &DynkinDiagram, n: u32) -> (Vec<i64>, Vec<((usize, usize), i64)>) {
        let f = (d.order / n) as i64;
        let m = d.order as i64;
        let conv = |e: i64| -> i64 {
            // −1 is reported as the sentinel 1000
            if m % 2 == 0 && e == m / 2 && (n % 2 == 1) {
                1000
            } else {
                assert_eq!(e % f, 0, "exponent {e} not a power of q");
                (e / f).rem_euclid(n as i64)
            }
        };
        (d.labels.iter().map(|&e| conv(e)).collect(), d.edges.iter().map(|(&k, &e)| (k, conv(e))).collect())
    }

    #[test]
    fn a3_with_j_2_matches_hand_solution() {
        let m = super_a(3, 5, &[2]);
        assert_eq!(m.order(), 10);
        let (labels, edges) = in_q_units(&m.dynkin_diagram(), 5);
        // q^{-1} --q-- (−1) --q^{-1}-- q
        assert_eq!(labels, vec![4, 1000, 1]);
        assert_eq!(edges, vec![((0, 1), 1), ((1, 2), 4)]);
    }

    #[test]
    fn a3_with_full_j() {
        let m = super_a(3, 5, &[1, 2, 3]);
        let (labels, edges) = in_q_units(&m.dynkin_diagram(), 5);
        assert_eq!(labels, vec![1000, 1000, 1000]);
        assert_eq!(edges, vec![((0, 1), 4), ((1, 2), 1)]);
    }

    #[test]
    fn cartan_g2_diagram_and_matrix() {
        for n in [4u32, 5, 6, 8] {
            let m = FamilyDescriptor::CartanG2 { order: n, q: 1 }.build().unwrap();
            let d = m.dynkin_diagram();
            assert_eq!(d.labels, vec![1, 3 % n as i64]);
            assert_eq!(d.edges.get(&(0, 1)), Some(&(n as i64 - 3)));
            assert_eq!(m.cartan_matrix().unwrap().to_integers().unwrap(), vec![vec![2, -3], vec![-1, 2]]);
            assert!(m.is_cartan_vertex(0).unwrap() && m.is_cartan_vertex(1).unwrap());
            assert!(m.finiteness_obstructions().is_empty());
        }
    }

    #[test]
    fn standard_g2_cartan_entries() {
        let m = FamilyDescriptor::StdG2 { order: 8, variant: Variant::A, q: 1 }.build().unwrap();
        let c = m.cartan_matrix().unwrap();
        // oracle: direct scan over n = 0..7 with scalars
        for (i, j) in [(0, 1), (1, 0)] {
            let scanned = cartan_entry_scan(&m.q(i, i), &m.qt(i, j), 8);
            assert_eq!(c.entries[i][j], scanned);
        }
        assert_eq!(c.get(0, 1), Some(-3));
        assert_eq!(c.get(1, 0), Some(-1));
    }

    #[test]
    fn rank_one_cartan_is_two() {
        let m = BraidingMatrix::new(5, vec![vec![2]]).unwrap();
        assert_eq!(m.cartan_matrix().unwrap().to_integers().unwrap(), vec![vec![2]]);
        let trivial = BraidingMatrix::new(5, vec![vec![0]]).unwrap();
        assert_eq!(trivial.cartan_matrix(), Err(BraidingError::TrivialLabel(0)));
    }

    #[test]
    fn a3_j2_cartan_type_a3_and_cartan_vertices() {
        let m = super_a(3, 5, &[2]);
        let c = m.cartan_matrix().unwrap().to_integers().unwrap();
        assert_eq!(c, vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert!(m.is_cartan_vertex(0).unwrap());
        assert!(!m.is_cartan_vertex(1).unwrap());
        assert!(m.is_cartan_vertex(2).unwrap());
    }

    #[test]
    fn scalar_scan_reports_undefined_for_infinite_order() {
        let two = CycScalar::from_int(2);
        assert_eq!(cartan_entry_scan(&two, &CycScalar::from_int(3), 50), CartanEntry::Undefined);
        assert_eq!(cartan_entry_scan(&two, &CycScalar::from_ratio(1, 4).unwrap(), 50), CartanEntry::Value(-2));
    }

    #[test]
    fn gauge_does_not_change_diagram() {
        let m = BraidingMatrix::new(12, vec![vec![3, 5], vec![7, 4]]).unwrap();
        let g = BraidingMatrix::new(12, vec![vec![3, 0], vec![0, 4]]).unwrap();
        assert_eq!(m.dynkin_diagram(), g.dynkin_diagram());
        let twisted = BraidingMatrix::new(12, vec![vec![3, 1], vec![11, 4]]).unwrap();
        assert_eq!(twisted.dynkin_diagram(), g.dynkin_diagram());
        assert!(g.dynkin_diagram().edges.is_empty());
    }

    #[test]
    fn f4_a_diagram() {
        let m = FamilyDescriptor::F4 { order: 5, variant: Variant::A, q: 1 }.build().unwrap();
        let (labels, edges) = in_q_units(&m.dynkin_diagram(), 5);
        assert_eq!(labels, vec![2, 2, 1, 1000]);
        assert_eq!(edges, vec![((0, 1), 3), ((1, 2), 3), ((2, 3), 4)]);
    }

    #[test]
    fn standard_b_head_vertex() {
        let m = FamilyDescriptor::StdB { theta: 3, order: 6, j: vec![1] }.build().unwrap();
        let d = m.dynkin_diagram();
        // ζ ∈ G_3' at the last vertex, joined by −ζ
        assert_eq!(d.label(2), CycScalar::root_of_unity(3, 1));
        assert_eq!(d.edge(1, 2).unwrap(), -CycScalar::root_of_unity(3, 1));
        assert!(FamilyDescriptor::StdB { theta: 3, order: 4, j: vec![] }.build().is_err());
    }

    #[test]
    fn side_conditions_are_enforced() {
        let bad = [
            FamilyDescriptor::SuperB { theta: 3, order: 4, j: vec![1], q: 1 },
            FamilyDescriptor::SuperB { theta: 3, order: 5, j: vec![3], q: 1 },
            FamilyDescriptor::SuperA { theta: 3, order: 5, j: vec![], q: 1 },
            FamilyDescriptor::G3 { order: 3, variant: Variant::A, q: 1 },
            FamilyDescriptor::StdG2 { order: 10, variant: Variant::A, q: 1 },
            FamilyDescriptor::CartanG2 { order: 3, q: 1 },
            FamilyDescriptor::SuperD { theta: 4, order: 5, j: vec![1], variant: Variant::D1, q: 1 },
            FamilyDescriptor::D21Alpha { order: 6, variant: Variant::A, q: 1, r: 5 },
        ];
        for d in bad {
            assert!(matches!(d.build(), Err(BraidingError::SideCondition(_))), "{d:?} accepted");
        }
    }

    #[test]
    fn obstruction_examples() {
        // vertex labelled 1 with an edge
        let one = BraidingMatrix::new(5, vec![vec![0, 2], vec![0, 1]]).unwrap();
        assert!(matches!(one.finiteness_obstructions()[0], Obstruction::OneConnected { vertex: 0, .. }));
        // q --q²-- (−q) with q = ζ_10
        let qq = BraidingMatrix::new(10, vec![vec![1, 2], vec![0, 6]]).unwrap();
        assert!(qq.finiteness_obstructions().iter().any(|o| matches!(o, Obstruction::QQSquaredMinusQ { .. })));
        // a 4-cycle of −1 vertices with edges ζ_4
        let mut e = vec![vec![0i64; 4]; 4];
        for i in 0..4 {
            e[i][i] = 2;
        }
        e[0][1] = 1;
        e[1][2] = 1;
        e[2][3] = 1;
        e[0][3] = 3;
        let cyc = BraidingMatrix::new(4, e).unwrap();
        assert!(cyc.finiteness_obstructions().iter().any(|o| matches!(o, Obstruction::LongCycle { .. })));
    }

    #[test]
    fn descriptor_json() {
        let d: FamilyDescriptor = serde_json::from_str(r#"{"family":"SuperA","theta":3,"order":5,"J":[2]}"#).unwrap();
        assert_eq!(d, FamilyDescriptor::SuperA { theta: 3, order: 5, j: vec![2], q: 1 });
        let text = serde_json::to_string(&d).unwrap();
        let back: FamilyDescriptor = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = super_a(3, 5, &[2]);
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.starts_with(r#"{"order":10,"size":3,"exponents":"#));
        let back: BraidingMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn diagram_json_round_trip() {
        let d = super_a(3, 8, &[2]).dynkin_diagram();
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.contains(r#""edges":[[0,1,"#), "{text}");
        let back: DynkinDiagram = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }
}
