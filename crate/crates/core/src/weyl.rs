//! Weyl groupoid of a diagonal braiding: reflections of braiding matrices
//! and of roots, the Weyl-equivalence class, positive roots with their
//! orders, and Cartan roots.
//!
//! Positive roots are found as the least family of sets `R^x` (one per
//! object `x` of the orbit) that contains the simple roots and satisfies
//! `R^x ⊇ s_i(R^{ρ_i x} ∖ {α_i})`. For finite root systems this is the set
//! of positive roots at every object.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braiding::{BraidingError, BraidingMatrix, DynkinDiagram, GeneralizedCartanMatrix};

pub const DEFAULT_ORBIT_CAP: usize = 10_000;
pub const DEFAULT_HEIGHT_CAP: i64 = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error(transparent)]
    Braiding(#[from] BraidingError),
    #[error("root system is not finite within the caps (orbit cap {orbit_cap}, height cap {height_cap})")]
    Infinite { orbit_cap: usize, height_cap: i64 },
    #[error("root has length {got}, expected rank {expected}")]
    Rank { got: usize, expected: usize },
}

/// A root `β ∈ Z^θ` with `N_β = ord q(β, β)` (`None` when `q(β, β) = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i64>,
    pub order: Option<u32>,
    pub is_cartan: bool,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    pub base: BraidingMatrix,
    pub positive_roots: Vec<Root>,
    pub finite: bool,
}

impl RootSystem {
    pub fn len(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positive_roots.is_empty()
    }

    pub fn find(&self, coords: &[i64]) -> Option<&Root> {
        self.positive_roots.iter().find(|r| r.coords == coords)
    }
}

/// Weyl-equivalence class explored by breadth-first search. Index 0 is the
/// starting diagram; `edges` holds `(from, vertex, to)`.
#[derive(Clone, Debug, Serialize)]
pub struct WeylOrbit {
    pub diagrams: Vec<DynkinDiagram>,
    pub edges: Vec<(usize, usize, usize)>,
    pub capped: bool,
    #[serde(skip)]
    matrices: Vec<BraidingMatrix>,
    #[serde(skip)]
    cartan: Vec<GeneralizedCartanMatrix>,
}

impl WeylOrbit {
    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn contains(&self, d: &DynkinDiagram) -> bool {
        self.diagrams.contains(d)
    }

    /// Index of `ρ_i(x)`.
    pub fn neighbor(&self, x: usize, i: usize) -> Option<usize> {
        self.edges.iter().find(|&&(a, v, _)| a == x && v == i).map(|&(_, _, b)| b)
    }
}

/// `(ρ_i q)_jk = q_jk q_ik^{−c_ij} q_ji^{−c_ik} q_ii^{c_ij c_ik}`.
pub fn reflect_braiding(q: &BraidingMatrix, i: usize) -> Result<BraidingMatrix, WeylError> {
    let c = q.cartan_matrix()?;
    reflect_with(q, &c, i)
}

fn reflect_with(q: &BraidingMatrix, c: &GeneralizedCartanMatrix, i: usize) -> Result<BraidingMatrix, WeylError> {
    let t = q.theta();
    if i >= t {
        return Err(BraidingError::Vertex(i).into());
    }
    let row: Vec<i64> =
        (0..t).map(|j| c.get(i, j).ok_or(BraidingError::UndefinedCartan(i, j))).collect::<Result<_, _>>()?;
    let mut exps = vec![vec![0i64; t]; t];
    for j in 0..t {
        for k in 0..t {
            exps[j][k] = q.exp(j, k) - row[j] * q.exp(i, k) - row[k] * q.exp(j, i) + row[j] * row[k] * q.exp(i, i);
        }
    }
    Ok(BraidingMatrix::new(q.order(), exps)?)
}

/// `s_i(α_j) = α_j − c_ij α_i`, extended linearly.
pub fn reflect_root(q: &BraidingMatrix, i: usize, beta: &[i64]) -> Result<Vec<i64>, WeylError> {
    let c = q.cartan_matrix()?;
    reflect_root_with(&c, i, beta)
}

fn reflect_root_with(c: &GeneralizedCartanMatrix, i: usize, beta: &[i64]) -> Result<Vec<i64>, WeylError> {
    let t = c.size();
    if beta.len() != t {
        return Err(WeylError::Rank { got: beta.len(), expected: t });
    }
    if i >= t {
        return Err(BraidingError::Vertex(i).into());
    }
    let mut out = beta.to_vec();
    for j in 0..t {
        let cij = c.get(i, j).ok_or(BraidingError::UndefinedCartan(i, j))?;
        out[i] -= cij * beta[j];
    }
    Ok(out)
}

/// Breadth-first exploration of the Weyl-equivalence class; dedup is on
/// exact labelled diagrams.
pub fn weyl_orbit(q: &BraidingMatrix, cap: usize) -> Result<WeylOrbit, WeylError> {
    let mut index: HashMap<DynkinDiagram, usize> = HashMap::new();
    let start = q.dynkin_diagram();
    index.insert(start.clone(), 0);
    let mut orbit = WeylOrbit {
        diagrams: vec![start],
        edges: Vec::new(),
        capped: false,
        matrices: vec![q.clone()],
        cartan: vec![q.cartan_matrix()?],
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for i in 0..q.theta() {
            let m = reflect_with(&orbit.matrices[x], &orbit.cartan[x], i)?;
            let d = m.dynkin_diagram();
            let to = match index.get(&d) {
                Some(&k) => k,
                None => {
                    if orbit.diagrams.len() >= cap {
                        orbit.capped = true;
                        continue;
                    }
                    let k = orbit.diagrams.len();
                    index.insert(d.clone(), k);
                    orbit.cartan.push(m.cartan_matrix()?);
                    orbit.diagrams.push(d);
                    orbit.matrices.push(m);
                    queue.push_back(k);
                    k
                }
            };
            orbit.edges.push((x, i, to));
        }
    }
    Ok(orbit)
}

fn simple_root(t: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; t];
    v[i] = 1;
    v
}

fn root_order(q: &BraidingMatrix, beta: &[i64]) -> Option<u32> {
    let e = q.form_exp(beta, beta);
    (e != 0).then(|| q.order_of_exp(e))
}

/// Positive roots at the base object, sorted by height and then with the
/// larger leading coefficients first.
pub fn positive_roots(q: &BraidingMatrix, height_cap: i64) -> Result<RootSystem, WeylError> {
    positive_roots_capped(q, height_cap, DEFAULT_ORBIT_CAP)
}

pub fn positive_roots_capped(q: &BraidingMatrix, height_cap: i64, orbit_cap: usize) -> Result<RootSystem, WeylError> {
    let t = q.theta();
    let orbit = weyl_orbit(q, orbit_cap)?;
    let n = orbit.len();
    let nbr: Vec<Vec<Option<usize>>> = (0..n).map(|x| (0..t).map(|i| orbit.neighbor(x, i)).collect()).collect();
    let mut sets: Vec<BTreeSet<Vec<i64>>> = vec![(0..t).map(|i| simple_root(t, i)).collect(); n];
    let mut finite = !orbit.capped;
    let mut changed = true;
    'outer: while changed {
        changed = false;
        for x in 0..n {
            for i in 0..t {
                let Some(y) = nbr[x][i] else { continue };
                let alpha_i = simple_root(t, i);
                let incoming: Vec<Vec<i64>> = sets[y].iter().filter(|b| **b != alpha_i).cloned().collect();
                for b in incoming {
                    let g = reflect_root_with(&orbit.cartan[x], i, &b)?;
                    if g.iter().any(|&c| c < 0) {
                        // not a root system in the groupoid sense
                        finite = false;
                        continue;
                    }
                    if g.iter().sum::<i64>() > height_cap {
                        finite = false;
                        break 'outer;
                    }
                    if sets[x].insert(g) {
                        changed = true;
                    }
                }
            }
        }
    }
    let cartan = if finite { cartan_root_sets(&orbit, &nbr)? } else { BTreeSet::new() };
    let mut roots: Vec<Root> = sets[0]
        .iter()
        .map(|b| Root { coords: b.clone(), order: root_order(q, b), is_cartan: cartan.contains(b) })
        .collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coords.cmp(&a.coords)));
    Ok(RootSystem { base: q.clone(), positive_roots: roots, finite })
}

/// Cartan roots (of both signs) at the base object: the least family
/// `C^x ⊇ {α_j : j Cartan at x} ∪ s_i(C^{ρ_i x})`.
fn cartan_root_sets(orbit: &WeylOrbit, nbr: &[Vec<Option<usize>>]) -> Result<BTreeSet<Vec<i64>>, WeylError> {
    let n = orbit.len();
    let t = orbit.matrices[0].theta();
    let mut sets: Vec<BTreeSet<Vec<i64>>> = Vec::with_capacity(n);
    for m in &orbit.matrices {
        let mut s = BTreeSet::new();
        for j in 0..t {
            if m.is_cartan_vertex(j)? {
                s.insert(simple_root(t, j));
            }
        }
        sets.push(s);
    }
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            for i in 0..t {
                let Some(y) = nbr[x][i] else { continue };
                let incoming: Vec<Vec<i64>> = sets[y].iter().cloned().collect();
                for b in incoming {
                    let g = reflect_root_with(&orbit.cartan[x], i, &b)?;
                    if sets[x].insert(g) {
                        changed = true;
                    }
                }
            }
        }
    }
    Ok(sets.swap_remove(0))
}

fn finite_system(q: &BraidingMatrix) -> Result<RootSystem, WeylError> {
    let rs = positive_roots(q, DEFAULT_HEIGHT_CAP)?;
    if !rs.finite {
        return Err(WeylError::Infinite { orbit_cap: DEFAULT_ORBIT_CAP, height_cap: DEFAULT_HEIGHT_CAP });
    }
    Ok(rs)
}

/// Positive Cartan roots `O_+`.
pub fn cartan_roots_positive(q: &BraidingMatrix) -> Result<Vec<Root>, WeylError> {
    Ok(finite_system(q)?.positive_roots.into_iter().filter(|r| r.is_cartan).collect())
}

/// GK-dimension of the distinguished pre-Nichols algebra, `|O_+|`.
pub fn gkdim_distinguished(q: &BraidingMatrix) -> Result<usize, WeylError> {
    Ok(cartan_roots_positive(q)?.len())
}

/// Height of each positive root in the distinguished pre-Nichols algebra:
/// `None` (infinite) for Cartan roots, `N_β` otherwise.
pub fn distinguished_heights(q: &BraidingMatrix) -> Result<Vec<(Root, Option<u32>)>, WeylError> {
    Ok(finite_system(q)?
        .positive_roots
        .into_iter()
        .map(|r| {
            let h = if r.is_cartan { None } else { r.order };
            (r, h)
        })
        .collect())
}
