use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::Automaton;
use crate::error::{Error, Result};
use crate::group::{orbits_on_states, InternalSymmetry, PermGroup, StateOrbits, StateSpace};

/// Deterministic dynamics on the orbit quotient of the state space.
#[derive(Clone, Debug)]
pub struct PhasePortrait {
    pub space: StateSpace,
    pub orbits: StateOrbits,
    /// Orbit id of the image of each orbit.
    pub successor: Vec<u32>,
    /// Cycles of the quotient map, each starting at its least orbit id,
    /// ordered by that id.
    pub cycles: Vec<Vec<u32>>,
    /// Index into `cycles` of the cycle each orbit falls into.
    pub attractor: Vec<u32>,
    /// Number of states draining into each cycle.
    pub basin_sizes: Vec<u64>,
}

#[derive(Serialize)]
struct OrbitJson {
    id: u32,
    representative: u64,
    size: u64,
    successor: u32,
    attractor: u32,
}

#[derive(Serialize)]
struct CycleJson {
    orbits: Vec<u32>,
    basin_states: u64,
    weight: String,
}

impl PhasePortrait {
    pub fn orbit_count(&self) -> usize {
        self.successor.len()
    }

    /// Basin weights `|basin| / q^N`, reduced.
    pub fn weights(&self) -> Vec<Ratio<u64>> {
        let total = self.space.size();
        self.basin_sizes.iter().map(|&b| Ratio::new(b, total)).collect()
    }

    /// Orbit sizes along each cycle.
    pub fn cycle_orbit_sizes(&self) -> Vec<Vec<u64>> {
        self.cycles
            .iter()
            .map(|c| c.iter().map(|&o| self.orbits.sizes[o as usize]).collect())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let orbits: Vec<OrbitJson> = (0..self.orbit_count())
            .map(|i| OrbitJson {
                id: i as u32,
                representative: self.orbits.reps[i],
                size: self.orbits.sizes[i],
                successor: self.successor[i],
                attractor: self.attractor[i],
            })
            .collect();
        let cycles: Vec<CycleJson> = self
            .cycles
            .iter()
            .zip(&self.basin_sizes)
            .zip(self.weights())
            .map(|((c, &b), w)| CycleJson {
                orbits: c.clone(),
                basin_states: b,
                weight: format!("{}/{}", w.numer(), w.denom()),
            })
            .collect();
        serde_json::json!({
            "cells": self.space.cells,
            "q": self.space.q,
            "states": self.space.size(),
            "orbits": orbits,
            "cycles": cycles,
        })
    }
}

/// Cycles and attractor labels of a functional graph on `0..n`.
pub(crate) fn functional_cycles(succ: &[u32]) -> (Vec<Vec<u32>>, Vec<u32>) {
    let n = succ.len();
    const UNSEEN: u32 = u32::MAX;
    const ON_STACK: u32 = u32::MAX - 1;
    let mut label = vec![UNSEEN; n];
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut path = Vec::new();
    for start in 0..n {
        if label[start] != UNSEEN {
            continue;
        }
        path.clear();
        let mut x = start;
        while label[x] == UNSEEN {
            label[x] = ON_STACK;
            path.push(x);
            x = succ[x] as usize;
        }
        let target = if label[x] == ON_STACK {
            let pos = path.iter().position(|&p| p == x).unwrap();
            let cyc: Vec<u32> = path[pos..].iter().map(|&p| p as u32).collect();
            cycles.push(cyc);
            (cycles.len() - 1) as u32
        } else {
            label[x]
        };
        for &p in &path {
            label[p] = target;
        }
    }
    // renumber cycles by least element and rotate each to start there
    for c in &mut cycles {
        let m = c.iter().enumerate().min_by_key(|(_, &v)| v).unwrap().0;
        c.rotate_left(m);
    }
    let mut order: Vec<usize> = (0..cycles.len()).collect();
    order.sort_by_key(|&i| cycles[i][0]);
    let mut new_id = vec![0u32; cycles.len()];
    for (new, &old) in order.iter().enumerate() {
        new_id[old] = new as u32;
    }
    let cycles = order.iter().map(|&i| cycles[i].clone()).collect();
    let label = label.into_iter().map(|l| new_id[l as usize]).collect();
    (cycles, label)
}

/// Orbit-quotient phase portrait. The quotient map is checked on every
/// state; a rule that does not commute with the group is rejected.
pub fn phase_portrait(automaton: &Automaton, group: &PermGroup, internal: &InternalSymmetry) -> Result<PhasePortrait> {
    if group.degree() != automaton.cells() {
        return Err(Error::invalid("group degree differs from the number of cells"));
    }
    let orbits = orbits_on_states(group, automaton.q(), internal)?;
    let space = orbits.space;
    let successor: Vec<u32> = orbits
        .reps
        .par_iter()
        .map(|&r| orbits.orbit_of[automaton.step_index(space, r) as usize])
        .collect();
    let bad = (0..space.size()).into_par_iter().find_first(|&s| {
        let o = orbits.orbit_of[s as usize];
        orbits.orbit_of[automaton.step_index(space, s) as usize] != successor[o as usize]
    });
    if let Some(s) = bad {
        return Err(Error::invariant(format!(
            "quotient map ill-defined: state {s} leaves the image orbit of its representative"
        )));
    }
    let (cycles, attractor) = functional_cycles(&successor);
    let mut basin_sizes = vec![0u64; cycles.len()];
    for (o, &a) in attractor.iter().enumerate() {
        basin_sizes[a as usize] += orbits.sizes[o];
    }
    Ok(PhasePortrait { space, orbits, successor, cycles, attractor, basin_sizes })
}

/// Compares a portrait with the full state-level functional graph: every
/// state cycle must project onto a quotient cycle whose length divides it,
/// and basins must agree state by state.
pub fn verify_against_states(automaton: &Automaton, portrait: &PhasePortrait) -> Result<()> {
    let space = portrait.space;
    let succ: Vec<u32> = (0..space.size())
        .into_par_iter()
        .map(|s| automaton.step_index(space, s) as u32)
        .collect();
    let (state_cycles, state_attr) = functional_cycles(&succ);
    let orbit_of = &portrait.orbits.orbit_of;
    let mut cycle_image = Vec::with_capacity(state_cycles.len());
    for c in &state_cycles {
        let o = orbit_of[c[0] as usize];
        let a = portrait.attractor[o as usize];
        let qlen = portrait.cycles[a as usize].len();
        if !portrait.cycles[a as usize].contains(&o) {
            return Err(Error::invariant(format!("state cycle through {} projects off a quotient cycle", c[0])));
        }
        if c.len() % qlen != 0 {
            return Err(Error::invariant(format!(
                "state cycle of length {} over quotient cycle of length {qlen}",
                c.len()
            )));
        }
        cycle_image.push(a);
    }
    let mut basins = vec![0u64; portrait.cycles.len()];
    for (s, &a) in state_attr.iter().enumerate() {
        let via_states = cycle_image[a as usize];
        let via_orbits = portrait.attractor[orbit_of[s] as usize];
        if via_states != via_orbits {
            return Err(Error::invariant(format!("state {s} drains into different attractors")));
        }
        basins[via_states as usize] += 1;
    }
    if basins != portrait.basin_sizes {
        return Err(Error::invariant("basin sizes disagree with the state graph"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::LocalRule;
    use crate::group::{automorphisms, Graph};

    #[test]
    fn functional_graph() {
        // 0->1->2->1, 3->3, 4->0
        let (cycles, attr) = functional_cycles(&[1, 2, 1, 3, 0]);
        assert_eq!(cycles, vec![vec![1, 2], vec![3]]);
        assert_eq!(attr, vec![0, 0, 0, 1, 0]);
    }

    #[test]
    fn identity_rule_fixes_every_orbit() {
        let rule = LocalRule::from_bs(&[], &[0, 1, 2, 3], 3).unwrap();
        let a = Automaton::new(rule, Graph::cube()).unwrap();
        let g = automorphisms(&Graph::cube()).unwrap().group;
        let p = phase_portrait(&a, &g, &InternalSymmetry::None).unwrap();
        assert_eq!(p.cycles.len(), 22);
        assert!(p.cycles.iter().all(|c| c.len() == 1));
        verify_against_states(&a, &p).unwrap();
    }

    #[test]
    fn non_equivariant_rejected() {
        let rule = LocalRule::ordered(2, 3, |c, t| c & t[0]).unwrap();
        let a = Automaton::new(rule, Graph::cube()).unwrap();
        let g = automorphisms(&Graph::cube()).unwrap().group;
        assert!(matches!(phase_portrait(&a, &g, &InternalSymmetry::None), Err(Error::Invariant(_))));
    }
}
