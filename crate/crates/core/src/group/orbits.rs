use std::collections::BTreeMap;

use super::{Perm, PermGroup};
use crate::error::{Error, Result};

/// Default cap on `q^N` for full state sweeps.
pub const DEFAULT_SWEEP_CAP: u64 = 1 << 24;

/// Symmetry acting on the cell values themselves.
#[derive(Clone, Debug, Default)]
pub enum InternalSymmetry {
    /// Values are left alone.
    #[default]
    None,
    /// The same value permutation applied to every cell (generators on `0..q`).
    Global(Vec<Perm>),
}

/// `q^N` states of `N` cells, indexed little-endian base `q` by vertex id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateSpace {
    pub cells: usize,
    pub q: u32,
}

impl StateSpace {
    pub fn new(cells: usize, q: u32) -> Result<Self> {
        Self::with_cap(cells, q, DEFAULT_SWEEP_CAP)
    }

    pub fn with_cap(cells: usize, q: u32, cap: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("radix {q} < 2")));
        }
        let size = (q as u128).checked_pow(cells as u32).unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(Error::CapExceeded { what: "state sweep", requested: size, cap: cap as u128 });
        }
        Ok(StateSpace { cells, q })
    }

    pub fn size(&self) -> u64 {
        (self.q as u64).pow(self.cells as u32)
    }

    pub fn decode(&self, index: u64) -> Vec<u32> {
        let mut i = index;
        (0..self.cells)
            .map(|_| {
                let v = (i % self.q as u64) as u32;
                i /= self.q as u64;
                v
            })
            .collect()
    }

    pub fn encode(&self, values: &[u32]) -> u64 {
        values.iter().rev().fold(0u64, |acc, &v| acc * self.q as u64 + v as u64)
    }
}

/// Applies a point permutation (and optionally a value permutation) to
/// state indices. Binary states use byte lookup tables.
pub struct StateAction {
    space: StateSpace,
    perm: Perm,
    values: Option<Perm>,
    tables: Option<Vec<[u64; 256]>>,
}

impl StateAction {
    pub fn new(space: StateSpace, perm: &Perm, values: Option<&Perm>) -> Self {
        assert_eq!(perm.degree(), space.cells, "permutation degree must match cell count");
        let tables = (space.q == 2 && values.is_none() && space.cells <= 64).then(|| {
            let chunks = space.cells.div_ceil(8);
            (0..chunks)
                .map(|c| {
                    let mut t = [0u64; 256];
                    for (byte, slot) in t.iter_mut().enumerate() {
                        for b in 0..8 {
                            let x = c * 8 + b;
                            if x < space.cells && (byte >> b) & 1 == 1 {
                                *slot |= 1 << perm.apply(x);
                            }
                        }
                    }
                    t
                })
                .collect()
        });
        StateAction { space, perm: perm.clone(), values: values.cloned(), tables }
    }

    /// Image of a state: the value at `x` moves to `x·g`, then values are
    /// relabelled.
    pub fn apply(&self, state: u64) -> u64 {
        if let Some(tables) = &self.tables {
            let mut out = 0u64;
            for (c, t) in tables.iter().enumerate() {
                out |= t[((state >> (8 * c)) & 0xff) as usize];
            }
            return out;
        }
        let vals = self.space.decode(state);
        let mut img = vec![0u32; vals.len()];
        for (x, &v) in vals.iter().enumerate() {
            let v = self.values.as_ref().map_or(v, |p| p.apply(v as usize) as u32);
            img[self.perm.apply(x)] = v;
        }
        self.space.encode(&img)
    }
}

/// Partition of a state space into orbits.
#[derive(Clone, Debug)]
pub struct StateOrbits {
    pub space: StateSpace,
    /// Orbit id of every state; ids follow the order of canonical representatives.
    pub orbit_of: Vec<u32>,
    /// Canonical representative (least state index) per orbit.
    pub reps: Vec<u64>,
    pub sizes: Vec<u64>,
}

impl StateOrbits {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Orbit size -> number of orbits of that size.
    pub fn size_histogram(&self) -> BTreeMap<u64, usize> {
        let mut h = BTreeMap::new();
        for &s in &self.sizes {
            *h.entry(s).or_insert(0) += 1;
        }
        h
    }

    pub fn canonical(&self, state: u64) -> u64 {
        self.reps[self.orbit_of[state as usize] as usize]
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

/// Orbits of `G` (acting on cells) combined with an internal symmetry, by
/// union-find over generator images.
pub fn orbits_on_states(group: &PermGroup, q: u32, internal: &InternalSymmetry) -> Result<StateOrbits> {
    let space = StateSpace::new(group.degree(), q)?;
    orbits_in_space(group, space, internal)
}

pub fn orbits_in_space(group: &PermGroup, space: StateSpace, internal: &InternalSymmetry) -> Result<StateOrbits> {
    if group.degree() != space.cells {
        return Err(Error::invalid(format!(
            "group of degree {} on {} cells",
            group.degree(),
            space.cells
        )));
    }
    let size = space.size();
    if size > u32::MAX as u64 {
        return Err(Error::CapExceeded { what: "state sweep", requested: size as u128, cap: u32::MAX as u128 });
    }
    let mut actions: Vec<StateAction> =
        group.generators().iter().map(|g| StateAction::new(space, g, None)).collect();
    if let InternalSymmetry::Global(vals) = internal {
        let id = Perm::identity(space.cells);
        for v in vals {
            if v.degree() != space.q as usize {
                return Err(Error::invalid(format!("value permutation {v} not on {} values", space.q)));
            }
            actions.push(StateAction::new(space, &id, Some(v)));
        }
    }
    let mut parent: Vec<u32> = (0..size as u32).collect();
    for a in &actions {
        for s in 0..size {
            let t = a.apply(s);
            let (rs, rt) = (find(&mut parent, s as u32), find(&mut parent, t as u32));
            if rs != rt {
                let (lo, hi) = (rs.min(rt), rs.max(rt));
                parent[hi as usize] = lo;
            }
        }
    }
    let mut orbit_of = vec![0u32; size as usize];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut id_of_root = vec![u32::MAX; size as usize];
    for s in 0..size as u32 {
        let r = find(&mut parent, s);
        let id = if id_of_root[r as usize] == u32::MAX {
            let id = reps.len() as u32;
            id_of_root[r as usize] = id;
            reps.push(r as u64);
            sizes.push(0);
            id
        } else {
            id_of_root[r as usize]
        };
        orbit_of[s as usize] = id;
        sizes[id as usize] += 1;
    }
    Ok(StateOrbits { space, orbit_of, reps, sizes })
}
