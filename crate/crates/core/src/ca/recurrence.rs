use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::{Perm, PermGroup, StateAction, StateSpace};

/// A group acting on the states of a cell space through all of its elements.
pub struct StateGroup {
    space: StateSpace,
    elements: Vec<Perm>,
    actions: Vec<StateAction>,
}

/// `orbit(σ_{t1}) = orbit(σ_{t0})` with `σ_{t0}·witness = σ_{t1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub t0: usize,
    pub t1: usize,
    pub witness: Perm,
}

impl StateGroup {
    /// Uses an unbounded state space; states are only ever acted on, not swept.
    pub fn new(group: &PermGroup, q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("radix {q} < 2")));
        }
        let size = (q as u128).checked_pow(group.degree() as u32).unwrap_or(u128::MAX);
        if size - 1 > u64::MAX as u128 {
            return Err(Error::CapExceeded { what: "state index width", requested: size, cap: 1 << 64 });
        }
        let space = StateSpace { cells: group.degree(), q };
        let elements = group.elements()?.to_vec();
        let actions = elements.iter().map(|g| StateAction::new(space, g, None)).collect();
        Ok(StateGroup { space, elements, actions })
    }

    pub fn space(&self) -> StateSpace {
        self.space
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn act(&self, element: usize, state: u64) -> u64 {
        self.actions[element].apply(state)
    }

    /// Least state index in the orbit.
    pub fn canonical(&self, state: u64) -> u64 {
        self.actions.iter().map(|a| a.apply(state)).min().unwrap_or(state)
    }

    pub fn orbit_size(&self, state: u64) -> usize {
        self.elements.len() / self.stabilizer(state).len()
    }

    /// Indices of the elements fixing `state`.
    pub fn stabilizer(&self, state: u64) -> Vec<usize> {
        (0..self.actions.len()).filter(|&i| self.actions[i].apply(state) == state).collect()
    }

    /// First element (in enumeration order) carrying `from` to `to`.
    pub fn witness(&self, from: u64, to: u64) -> Option<&Perm> {
        self.actions.iter().position(|a| a.apply(from) == to).map(|i| &self.elements[i])
    }

    /// Orbit labels along a trajectory, numbered by first appearance.
    pub fn orbit_labels(&self, trajectory: &[u64]) -> Vec<usize> {
        let mut ids: BTreeMap<u64, usize> = BTreeMap::new();
        trajectory
            .iter()
            .map(|&s| {
                let c = self.canonical(s);
                let next = ids.len();
                *ids.entry(c).or_insert(next)
            })
            .collect()
    }

    /// First `t1 > t0` whose state lies in the orbit of `σ_{t0}`.
    pub fn recurrence(&self, trajectory: &[u64], t0: usize) -> Result<Recurrence> {
        let start = *trajectory
            .get(t0)
            .ok_or_else(|| Error::invalid(format!("t0 = {t0} beyond trajectory")))?;
        for (t1, &s) in trajectory.iter().enumerate().skip(t0 + 1) {
            if let Some(w) = self.witness(start, s) {
                return Ok(Recurrence { t0, t1, witness: w.clone() });
            }
        }
        Err(Error::NoRecurrence(trajectory.len().saturating_sub(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_recurrence() {
        let g = PermGroup::cyclic(4);
        let sg = StateGroup::new(&g, 2).unwrap();
        // 0001 -> 0010 under the 4-cycle
        let traj = [0b0001, 0b0011, 0b0010];
        let r = sg.recurrence(&traj, 0).unwrap();
        assert_eq!((r.t0, r.t1), (0, 2));
        assert_eq!(sg.orbit_labels(&traj), vec![0, 1, 0]);
        assert!(sg.recurrence(&[0b0001, 0b0011], 0).is_err());
        assert_eq!(sg.orbit_size(0b0101), 2);
    }
}
