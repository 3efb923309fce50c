use super::LocalRule;
use crate::error::{Error, Result};
use crate::group::{Graph, StateSpace};

/// A local rule placed on a graph whose valence matches.
#[derive(Clone, Debug)]
pub struct Automaton {
    rule: LocalRule,
    graph: Graph,
    /// Neighbour bitmasks for binary symmetric rules on at most 64 cells.
    masks: Option<Vec<u64>>,
}

impl Automaton {
    pub fn new(rule: LocalRule, graph: Graph) -> Result<Self> {
        let k = rule.valence();
        if let Some(v) = (0..graph.len()).find(|&v| graph.neighbors(v).len() != k) {
            return Err(Error::invalid(format!(
                "vertex {v} has {} neighbours, rule expects {k}",
                graph.neighbors(v).len()
            )));
        }
        let masks = (rule.q() == 2 && rule.is_symmetric() && graph.len() <= 64).then(|| {
            (0..graph.len())
                .map(|v| graph.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
                .collect()
        });
        Ok(Automaton { rule, graph, masks })
    }

    pub fn rule(&self) -> &LocalRule {
        &self.rule
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cells(&self) -> usize {
        self.graph.len()
    }

    pub fn q(&self) -> u32 {
        self.rule.q()
    }

    /// Synchronous update of a state given as one value per vertex.
    pub fn step(&self, state: &[u32]) -> Result<Vec<u32>> {
        if state.len() != self.cells() {
            return Err(Error::invalid(format!(
                "state of length {} on {} cells",
                state.len(),
                self.cells()
            )));
        }
        if let Some(position) = state.iter().position(|&v| v >= self.q()) {
            return Err(Error::OutOfRadix { position, value: state[position], radix: self.q() });
        }
        let mut nb = vec![0u32; self.rule.valence()];
        Ok((0..self.cells())
            .map(|v| {
                for (slot, &u) in nb.iter_mut().zip(self.graph.neighbors(v)) {
                    *slot = state[u as usize];
                }
                self.rule.next(state[v], &nb)
            })
            .collect())
    }

    /// Update of a state index in the `q^N` state space.
    pub fn step_index(&self, space: StateSpace, state: u64) -> u64 {
        if let Some(masks) = &self.masks {
            return self.step_bits_with(masks, state);
        }
        let vals = space.decode(state);
        space.encode(&self.step(&vals).expect("decoded state is valid"))
    }

    /// Binary states as bit words, bit `v` holding vertex `v`.
    pub fn step_bits(&self, state: u64) -> u64 {
        match &self.masks {
            Some(masks) => self.step_bits_with(masks, state),
            None => {
                assert!(self.q() == 2 && self.cells() <= 64, "bit states need q = 2 and at most 64 cells");
                let vals: Vec<u32> = (0..self.cells()).map(|v| ((state >> v) & 1) as u32).collect();
                let next = self.step(&vals).expect("valid bit state");
                next.iter().enumerate().fold(0u64, |acc, (v, &b)| acc | (b as u64) << v)
            }
        }
    }

    #[inline]
    fn step_bits_with(&self, masks: &[u64], state: u64) -> u64 {
        let mut out = 0u64;
        for (v, &m) in masks.iter().enumerate() {
            let alive = (state & m).count_ones();
            let center = ((state >> v) & 1) as u32;
            out |= (self.rule.next_binary_symmetric(center, alive) as u64) << v;
        }
        out
    }

    /// `state, step(state), ...` with `steps + 1` entries.
    pub fn trajectory(&self, state: &[u32], steps: usize) -> Result<Vec<Vec<u32>>> {
        let mut out = vec![state.to_vec()];
        for _ in 0..steps {
            let next = self.step(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_zero_kills() {
        let a = Automaton::new(LocalRule::from_bs(&[], &[], 3).unwrap(), Graph::cube()).unwrap();
        assert_eq!(a.step(&[1; 8]).unwrap(), vec![0; 8]);
        assert_eq!(a.step_bits(0xff), 0);
    }

    #[test]
    fn fast_path_matches_generic() {
        let rule = LocalRule::from_bs(&[1, 2, 3], &[0], 3).unwrap();
        let a = Automaton::new(rule, Graph::cube()).unwrap();
        let space = StateSpace::new(8, 2).unwrap();
        for s in 0..256u64 {
            let vals = space.decode(s);
            assert_eq!(space.encode(&a.step(&vals).unwrap()), a.step_bits(s));
        }
    }

    #[test]
    fn valence_mismatch() {
        let rule = LocalRule::from_bs(&[3], &[2, 3], 8).unwrap();
        assert!(Automaton::new(rule, Graph::cube()).is_err());
    }
}
