use std::collections::BTreeMap;

use super::poly::AmplitudePoly;
use crate::error::{Error, Result};
use crate::group::{automorphisms, edge_orbits, Graph, PermGroup};

pub const SYMBOLS: [&str; 2] = ["v", "w"];

/// Local quantum model on a regular graph: staying costs `1`, each step
/// along an edge multiplies by one of the symbols `v`, `w`.
#[derive(Clone, Debug)]
pub struct LocalModel {
    graph: Graph,
    /// `weights[x][j]`: symbol index of the step to the `j`-th neighbour of `x`.
    weights: Vec<Vec<u8>>,
}

impl LocalModel {
    pub fn new(graph: Graph, weights: Vec<Vec<u8>>) -> Result<Self> {
        if weights.len() != graph.len()
            || weights.iter().enumerate().any(|(x, w)| w.len() != graph.neighbors(x).len())
        {
            return Err(Error::invalid("one weight per neighbour of every vertex"));
        }
        if weights.iter().flatten().any(|&s| s as usize >= SYMBOLS.len()) {
            return Err(Error::invalid("weight symbol out of range"));
        }
        Ok(LocalModel { graph, weights })
    }

    /// One symbol per edge orbit of `group` (orbits as in [`edge_orbits`]).
    pub fn by_edge_orbits(graph: Graph, group: &PermGroup, symbols: &[u8]) -> Result<Self> {
        let orbits = edge_orbits(&graph, group);
        if orbits.len() != symbols.len() {
            return Err(Error::invalid(format!("{} edge orbits, {} symbols", orbits.len(), symbols.len())));
        }
        let mut sym = BTreeMap::new();
        for (o, &s) in orbits.iter().zip(symbols) {
            for &e in o {
                sym.insert(e, s);
            }
        }
        let weights = (0..graph.len())
            .map(|x| {
                graph
                    .neighbors(x)
                    .iter()
                    .map(|&y| sym[&((x as u32).min(y), (x as u32).max(y))])
                    .collect()
            })
            .collect();
        let m = LocalModel::new(graph, weights)?;
        m.check_invariance(group)?;
        Ok(m)
    }

    /// Buckyball with `v` on pentagon edges and `w` on hexagon-hexagon edges.
    pub fn buckyball() -> Result<Self> {
        let g = Graph::buckyball();
        let aut = automorphisms(&g)?.group;
        let orbits = edge_orbits(&g, &aut);
        let symbols: Vec<u8> = orbits.iter().map(|o| if o.len() == 60 { 0 } else { 1 }).collect();
        Self::by_edge_orbits(g, &aut, &symbols)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weight(&self, x: usize, y: usize) -> Option<u8> {
        let j = self.graph.neighbors(x).iter().position(|&u| u as usize == y)?;
        Some(self.weights[x][j])
    }

    /// `R(e g) = R(e)` for every directed edge and every generator.
    pub fn check_invariance(&self, group: &PermGroup) -> Result<()> {
        for g in group.generators() {
            for x in 0..self.graph.len() {
                for (j, &y) in self.graph.neighbors(x).iter().enumerate() {
                    let img = self.weight(g.apply(x), g.apply(y as usize));
                    if img != Some(self.weights[x][j]) {
                        return Err(Error::invariant(format!(
                            "weight of {x}->{y} not preserved by {g}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Amplitudes `A(v, w)` at every vertex after `t` steps from `start`.
    pub fn amplitudes(&self, start: usize, t: u32) -> Result<Vec<AmplitudePoly>> {
        if start >= self.graph.len() {
            return Err(Error::invalid(format!("vertex {start} out of range")));
        }
        let zero = AmplitudePoly::zero(&SYMBOLS);
        let mut cur = vec![zero.clone(); self.graph.len()];
        cur[start] = AmplitudePoly::one(&SYMBOLS);
        for _ in 0..t {
            let mut next = cur.clone();
            for (x, amp) in cur.iter().enumerate() {
                for (j, &y) in self.graph.neighbors(x).iter().enumerate() {
                    let s = self.weights[x][j] as usize;
                    for (e, c) in amp.terms() {
                        let mut e = e.clone();
                        e[s] += 1;
                        next[y as usize].add_term(e, c.clone());
                    }
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    pub fn amplitude(&self, start: usize, end: usize, t: u32) -> Result<AmplitudePoly> {
        if end >= self.graph.len() {
            return Err(Error::invalid(format!("vertex {end} out of range")));
        }
        Ok(self.amplitudes(start, t)?.swap_remove(end))
    }
}

/// Pairs `(M_v, M_w)` up to `bound` at which `A(e^(2 pi i/M_v), e^(2 pi i/M_w))`
/// vanishes, by exact evaluation in `Z[zeta_lcm]`.
pub fn vanishing_pairs(amplitude: &AmplitudePoly, bound: u32) -> Result<Vec<(u32, u32)>> {
    use super::cyclo::CycloElement;
    use num_integer::Integer;
    use rayon::prelude::*;
    if amplitude.symbols().len() != 2 {
        return Err(Error::invalid("expected an amplitude in two symbols"));
    }
    let pairs: Vec<(u32, u32)> = (1..=bound).flat_map(|a| (1..=bound).map(move |b| (a, b))).collect();
    Ok(pairs
        .into_par_iter()
        .filter(|&(mv, mw)| {
            let l = mv.lcm(&mw);
            CycloElement::eval_multi(amplitude, l, &[(l / mv) as i64, (l / mw) as i64]).is_zero()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn buckyball_short_walks() {
        let m = LocalModel::buckyball().unwrap();
        assert_eq!(m.amplitude(0, 0, 0).unwrap().to_string(), "1");
        assert!(m.amplitude(0, 1, 0).unwrap().is_zero());
        let a1 = m.amplitudes(0, 1).unwrap();
        let mut labels: Vec<String> = m.graph().neighbors(0).iter().map(|&y| a1[y as usize].to_string()).collect();
        labels.sort();
        assert_eq!(labels, ["v", "v", "w"]);
        assert_eq!(m.amplitude(0, 0, 2).unwrap().to_string(), "1+2v^2+w^2");
    }

    #[test]
    fn broken_symmetry_rejected() {
        let g = Graph::cube();
        let aut = automorphisms(&g).unwrap().group;
        let mut w = vec![vec![0u8; 3]; 8];
        w[0][0] = 1;
        let m = LocalModel::new(g, w).unwrap();
        assert!(m.check_invariance(&aut).is_err());
    }
}
