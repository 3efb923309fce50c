//! Permutation groups, graph automorphisms, orbits on points and on full
//! states, and split extensions of space groups by internal symmetries.

mod automorphism;
mod graph;
mod orbits;
mod perm;
mod split;

pub use automorphism::{automorphisms, automorphisms_colored, Automorphisms, DEFAULT_VERTEX_CAP};
pub use graph::Graph;
pub use orbits::{
    orbits_in_space, orbits_on_states, InternalSymmetry, StateAction, StateOrbits, StateSpace,
    DEFAULT_SWEEP_CAP,
};
pub use perm::{Perm, PermGroup, DEFAULT_ELEMENT_CAP};
pub use split::{SplitExtension, Twist, WElement};

use std::collections::BTreeSet;

/// Orbits of `group` on the undirected edges of `graph`, each sorted, in
/// order of least edge.
pub fn edge_orbits(graph: &Graph, group: &PermGroup) -> Vec<Vec<(u32, u32)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &e in graph.edges() {
        if seen.contains(&e) {
            continue;
        }
        let orbit = group.orbit_by(e, |&(u, v), g| {
            let (a, b) = (g.apply(u as usize) as u32, g.apply(v as usize) as u32);
            (a.min(b), a.max(b))
        });
        seen.extend(orbit.iter().copied());
        out.push(orbit.into_iter().collect());
    }
    out
}

/// Partition of the neighbours of `x` into orbits of `Stab(x)`.
pub fn neighborhood_orbits(graph: &Graph, group: &PermGroup, x: usize) -> crate::Result<Vec<Vec<u32>>> {
    let stab = group.stabilizer(x)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &v in graph.neighbors(x) {
        if seen.contains(&v) {
            continue;
        }
        let orbit = stab.orbit(v as usize);
        let orbit: Vec<u32> = orbit.into_iter().map(|y| y as u32).collect();
        seen.extend(orbit.iter().copied());
        out.push(orbit);
    }
    Ok(out)
}
