//! Exact microcanonical statistics of Ising models on graphs.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{edge_orbits, orbits_on_states, Graph, InternalSymmetry, Perm, PermGroup, StateSpace};

/// `H = -sum_edges J_e s_i s_j - B sum_i s_i` with spins `s = +1` for a set
/// bit and `-1` for a clear one.
#[derive(Clone, Debug)]
pub struct SpinModel {
    graph: Graph,
    edges: Vec<(u32, u32, i64)>,
    field: Rational64,
}

impl SpinModel {
    pub fn uniform(graph: Graph, j: i64, field: Rational64) -> Self {
        let edges = graph.edges().iter().map(|&(u, v)| (u, v, j)).collect();
        SpinModel { graph, edges, field }
    }

    /// One coupling per edge orbit of `group`, in the order of
    /// [`edge_orbits`].
    pub fn by_edge_orbits(graph: Graph, group: &PermGroup, couplings: &[i64], field: Rational64) -> Result<Self> {
        let orbits = edge_orbits(&graph, group);
        if orbits.len() != couplings.len() {
            return Err(Error::invalid(format!(
                "{} edge orbits but {} couplings",
                orbits.len(),
                couplings.len()
            )));
        }
        let mut j = BTreeMap::new();
        for (orbit, &c) in orbits.iter().zip(couplings) {
            for &e in orbit {
                j.insert(e, c);
            }
        }
        let edges = j.into_iter().map(|((u, v), c)| (u, v, c)).collect();
        Ok(SpinModel { graph, edges, field })
    }

    /// Explicit coupling per edge; every edge of the graph must be listed.
    pub fn with_couplings(graph: Graph, couplings: &BTreeMap<(u32, u32), i64>, field: Rational64) -> Result<Self> {
        let mut edges = Vec::with_capacity(graph.edge_count());
        for &(u, v) in graph.edges() {
            let c = couplings
                .get(&(u, v))
                .or_else(|| couplings.get(&(v, u)))
                .ok_or_else(|| Error::invalid(format!("no coupling for edge {u}-{v}")))?;
            edges.push((u, v, *c));
        }
        Ok(SpinModel { graph, edges, field })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn field(&self) -> Rational64 {
        self.field
    }

    pub fn couplings(&self) -> &[(u32, u32, i64)] {
        &self.edges
    }

    pub fn cells(&self) -> usize {
        self.graph.len()
    }

    /// Whether `g` maps every edge to an edge of the same coupling.
    pub fn is_invariant_under(&self, g: &Perm) -> bool {
        let j: HashMap<(u32, u32), i64> = self.edges.iter().map(|&(u, v, c)| ((u, v), c)).collect();
        self.edges.iter().all(|&(u, v, c)| {
            let (a, b) = (g.apply(u as usize) as u32, g.apply(v as usize) as u32);
            j.get(&(a.min(b), a.max(b))) == Some(&c)
        })
    }

    /// Interaction part `-sum J_e s_i s_j`.
    pub fn interaction(&self, state: u64) -> i64 {
        self.edges
            .iter()
            .map(|&(u, v, c)| if ((state >> u) ^ (state >> v)) & 1 == 0 { -c } else { c })
            .sum()
    }

    pub fn energy(&self, state: u64) -> Rational64 {
        Rational64::from_integer(self.interaction(state)) - self.field * magnetization(state, self.cells())
    }

    /// Energy of a `+-1` spin vector.
    pub fn energy_of_spins(&self, spins: &[i8]) -> Result<Rational64> {
        if spins.len() != self.cells() || spins.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::invalid("spins must be +-1, one per vertex"));
        }
        let state = spins.iter().enumerate().fold(0u64, |acc, (i, &s)| acc | ((s == 1) as u64) << i);
        Ok(self.energy(state))
    }
}

/// `M = sum_i s_i`.
pub fn magnetization(state: u64, cells: usize) -> i64 {
    2 * (state & mask(cells)).count_ones() as i64 - cells as i64
}

fn mask(cells: usize) -> u64 {
    if cells >= 64 {
        u64::MAX
    } else {
        (1u64 << cells) - 1
    }
}

/// Exact counts `Omega_E`, optionally resolved by magnetization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MicroTable {
    pub cells: usize,
    pub omega: BTreeMap<Rational64, u64>,
    pub joint: Option<BTreeMap<(Rational64, i64), u64>>,
}

impl MicroTable {
    pub fn total(&self) -> u64 {
        self.omega.values().sum()
    }

    pub fn get(&self, energy: i64) -> u64 {
        self.omega.get(&Rational64::from_integer(energy)).copied().unwrap_or(0)
    }

    /// `(E, ln Omega_E)` over non-empty levels.
    pub fn entropy_curve(&self) -> Vec<(Rational64, f64)> {
        self.omega.iter().filter(|(_, &w)| w > 0).map(|(&e, &w)| (e, (w as f64).ln())).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("E,omega,entropy\n");
        for (e, w) in &self.omega {
            writeln!(out, "{},{},{:.12}", fmt_rational(e), w, (*w as f64).ln()).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let levels: Vec<serde_json::Value> = self
            .omega
            .iter()
            .map(|(e, w)| serde_json::json!({ "E": fmt_rational(e), "omega": w }))
            .collect();
        let mut v = serde_json::json!({ "cells": self.cells, "total": self.total(), "levels": levels });
        if let Some(joint) = &self.joint {
            v["joint"] = joint
                .iter()
                .map(|((e, m), w)| serde_json::json!({ "E": fmt_rational(e), "M": m, "omega": w }))
                .collect();
        }
        v
    }
}

pub(crate) fn fmt_rational(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

type Tables = (BTreeMap<Rational64, u64>, BTreeMap<(Rational64, i64), u64>);

fn merge(mut a: Tables, b: Tables) -> Tables {
    for (k, v) in b.0 {
        *a.0.entry(k).or_insert(0) += v;
    }
    for (k, v) in b.1 {
        *a.1.entry(k).or_insert(0) += v;
    }
    a
}

fn finish(cells: usize, t: Tables, joint: bool) -> MicroTable {
    MicroTable { cells, omega: t.0, joint: joint.then_some(t.1) }
}

/// Direct enumeration of all `2^N` states.
pub fn micro_table_brute(model: &SpinModel, joint: bool) -> Result<MicroTable> {
    let space = StateSpace::new(model.cells(), 2)?;
    let n = model.cells();
    let t = (0..space.size())
        .into_par_iter()
        .fold(Tables::default, |mut t, s| {
            let e = model.energy(s);
            *t.0.entry(e).or_insert(0) += 1;
            if joint {
                *t.1.entry((e, magnetization(s, n))).or_insert(0) += 1;
            }
            t
        })
        .reduce(Tables::default, merge);
    Ok(finish(n, t, joint))
}

/// Orbit-weighted enumeration: each orbit contributes its size at the
/// energy of its representative. The group must preserve the couplings;
/// a global spin flip is allowed only at zero field and without the joint
/// table.
pub fn micro_table(model: &SpinModel, group: &PermGroup, spin_flip: bool, joint: bool) -> Result<MicroTable> {
    if let Some(g) = group.generators().iter().find(|g| !model.is_invariant_under(g)) {
        return Err(Error::invariant(format!("group element {g} does not preserve the couplings")));
    }
    if spin_flip && (!model.field.is_zero() || joint) {
        return Err(Error::invalid("spin flip symmetry needs zero field and no magnetization table"));
    }
    let internal = if spin_flip {
        InternalSymmetry::Global(vec![Perm::from_images(vec![1, 0]).expect("swap")])
    } else {
        InternalSymmetry::None
    };
    let orbits = orbits_on_states(group, 2, &internal)?;
    let n = model.cells();
    let t = orbits
        .reps
        .par_iter()
        .zip(orbits.sizes.par_iter())
        .fold(Tables::default, |mut t, (&r, &size)| {
            let e = model.energy(r);
            *t.0.entry(e).or_insert(0) += size;
            if joint {
                *t.1.entry((e, magnetization(r, n))).or_insert(0) += size;
            }
            t
        })
        .reduce(Tables::default, merge);
    Ok(finish(n, t, joint))
}

/// An interior level where entropy is locally convex:
/// `Omega_i^(p+q) < Omega_(i-1)^p Omega_(i+1)^q` with
/// `p/q = (E_(i+1) - E_i) / (E_i - E_(i-1))` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvexLevel {
    pub energy: String,
    pub p: u64,
    pub q: u64,
    /// `Omega_i^(p+q)` as decimal text.
    pub lhs: String,
    /// `Omega_(i-1)^p Omega_(i+1)^q` as decimal text.
    pub rhs: String,
}

/// A maximal run of consecutive convex levels. The interval runs from the
/// level before the run to the level after it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Intruder {
    #[serde(skip)]
    pub from: Rational64,
    #[serde(skip)]
    pub to: Rational64,
    pub interval: [String; 2],
    pub specific: [f64; 2],
    pub levels: Vec<ConvexLevel>,
    #[serde(skip)]
    pub level_energies: Vec<Rational64>,
}

/// Exact convex-intruder search over the non-empty levels of a table.
pub fn convex_intruders(table: &MicroTable) -> Vec<Intruder> {
    let levels: Vec<(Rational64, u64)> = table.omega.iter().filter(|(_, &w)| w > 0).map(|(&e, &w)| (e, w)).collect();
    let mut flagged: Vec<Option<ConvexLevel>> = vec![None; levels.len()];
    for i in 1..levels.len().saturating_sub(1) {
        let (e0, w0) = levels[i - 1];
        let (e1, w1) = levels[i];
        let (e2, w2) = levels[i + 1];
        let ratio = (e2 - e1) / (e1 - e0);
        let (p, q) = (ratio.numer().to_u64().unwrap(), ratio.denom().to_u64().unwrap());
        let g = p.gcd(&q);
        let (p, q) = (p / g, q / g);
        let lhs = BigUint::from(w1).pow((p + q) as u32);
        let rhs = BigUint::from(w0).pow(p as u32) * BigUint::from(w2).pow(q as u32);
        if lhs < rhs {
            flagged[i] = Some(ConvexLevel { energy: fmt_rational(&e1), p, q, lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
    }
    let n = table.cells as f64;
    let specific = |e: Rational64| *e.numer() as f64 / *e.denom() as f64 / n;
    let mut out = Vec::new();
    let mut i = 0;
    while i < levels.len() {
        if flagged[i].is_none() {
            i += 1;
            continue;
        }
        let start = i;
        while i < levels.len() && flagged[i].is_some() {
            i += 1;
        }
        let (from, to) = (levels[start - 1].0, levels[i].0);
        out.push(Intruder {
            from,
            to,
            interval: [fmt_rational(&from), fmt_rational(&to)],
            specific: [specific(from), specific(to)],
            levels: flagged[start..i].iter().map(|l| l.clone().unwrap()).collect(),
            level_energies: levels[start..i].iter().map(|l| l.0).collect(),
        });
    }
    out
}

pub fn intruders_json(intruders: &[Intruder]) -> serde_json::Value {
    serde_json::to_value(intruders).expect("plain data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::automorphisms;

    fn zero() -> Rational64 {
        Rational64::zero()
    }

    #[test]
    fn dodecahedron_energies() {
        let m = SpinModel::uniform(Graph::dodecahedron(), 1, zero());
        let up = (1u64 << 20) - 1;
        assert_eq!(m.energy(up), Rational64::from_integer(-30));
        assert_eq!(m.energy(up ^ 1), Rational64::from_integer(-24));
        assert_eq!(m.energy(0x5a5a5 & up), m.energy(!0x5a5a5 & up));
    }

    #[test]
    fn cube_orbits_match_brute() {
        let g = Graph::cube();
        let aut = automorphisms(&g).unwrap().group;
        let m = SpinModel::uniform(g, 1, Rational64::new(1, 2));
        let brute = micro_table_brute(&m, true).unwrap();
        assert_eq!(micro_table(&m, &aut, false, true).unwrap(), brute);
        assert_eq!(brute.total(), 256);
    }

    #[test]
    fn binomial_table_is_concave() {
        let omega = (0..=10).map(|k| (Rational64::from_integer(k), num_integer::binomial(10u64, k as u64))).collect();
        let t = MicroTable { cells: 10, omega, joint: None };
        assert!(convex_intruders(&t).is_empty());
    }

    #[test]
    fn synthetic_intruder() {
        let omega = [(0, 1), (1, 10), (2, 20), (3, 100), (5, 50)]
            .into_iter()
            .map(|(e, w)| (Rational64::from_integer(e), w))
            .collect();
        let t = MicroTable { cells: 1, omega, joint: None };
        let found = convex_intruders(&t);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].interval, ["1".to_string(), "3".to_string()]);
    }

    #[test]
    fn non_invariant_group_rejected() {
        let g = Graph::cube();
        let aut = automorphisms(&g).unwrap().group;
        let mut j = BTreeMap::new();
        for (i, &e) in g.edges().iter().enumerate() {
            j.insert(e, if i == 0 { 2 } else { 1 });
        }
        let m = SpinModel::with_couplings(g, &j, zero()).unwrap();
        assert!(micro_table(&m, &aut, false, false).is_err());
    }
}
