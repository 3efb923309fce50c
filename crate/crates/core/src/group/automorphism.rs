use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use super::{Graph, Perm, PermGroup};
use crate::error::{Error, Result};

/// Default cap on the number of vertices for the automorphism search.
pub const DEFAULT_VERTEX_CAP: usize = 128;

/// Automorphism group of a graph together with the base used to find it.
#[derive(Clone, Debug)]
pub struct Automorphisms {
    pub group: PermGroup,
    /// Base points `b_1..b_m` of the search tree.
    pub base: Vec<usize>,
    /// `|b_i^{G_i}|` where `G_i` fixes `b_1..b_{i-1}` pointwise.
    pub basic_orbit_sizes: Vec<usize>,
}

impl Automorphisms {
    /// `|Aut|` as the product of basic orbit sizes.
    pub fn order(&self) -> u128 {
        self.basic_orbit_sizes.iter().map(|&s| s as u128).product()
    }
}

#[derive(Clone)]
struct Node {
    colors: Vec<u32>,
    classes: usize,
    trace: u64,
}

struct Search<'a> {
    graph: &'a Graph,
    initial: Vec<u32>,
}

impl Search<'_> {
    fn refine(&self, mut colors: Vec<u32>) -> Node {
        let n = colors.len();
        let mut classes = count_classes(&colors);
        let mut hasher = DefaultHasher::new();
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<u32> =
                        self.graph.neighbors(v).iter().map(|&u| colors[u as usize]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut census: BTreeMap<&(u32, Vec<u32>), usize> = BTreeMap::new();
            for s in &sigs {
                *census.entry(s).or_insert(0) += 1;
            }
            census.iter().collect::<Vec<_>>().hash(&mut hasher);
            let rank: BTreeMap<&(u32, Vec<u32>), u32> =
                census.keys().enumerate().map(|(i, &s)| (s, i as u32)).collect();
            let next: Vec<u32> = sigs.iter().map(|s| rank[s]).collect();
            let next_classes = census.len();
            colors = next;
            if next_classes == classes {
                break;
            }
            classes = next_classes;
        }
        Node { colors, classes, trace: hasher.finish() }
    }

    fn individualize(&self, node: &Node, v: usize) -> Node {
        let colors = node
            .colors
            .iter()
            .enumerate()
            .map(|(u, &c)| 2 * c + u32::from(u != v))
            .collect();
        self.refine(colors)
    }

    /// Smallest non-singleton colour class, ties to the lower colour.
    fn target_cell(node: &Node) -> Option<(u32, Vec<usize>)> {
        let mut by_color: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (v, &c) in node.colors.iter().enumerate() {
            by_color.entry(c).or_default().push(v);
        }
        by_color
            .into_iter()
            .filter(|(_, cell)| cell.len() > 1)
            .min_by_key(|(c, cell)| (cell.len(), *c))
    }

    fn leaf_perm(first: &Node, leaf: &Node) -> Perm {
        let n = first.colors.len();
        let mut by_color = vec![0u32; n];
        for (v, &c) in leaf.colors.iter().enumerate() {
            by_color[c as usize] = v as u32;
        }
        let images = first.colors.iter().map(|&c| by_color[c as usize]).collect();
        Perm::from_images(images).expect("discrete colourings give bijections")
    }

    fn is_automorphism(&self, g: &Perm) -> bool {
        self.graph.is_automorphism(g)
            && (0..g.degree()).all(|v| self.initial[v] == self.initial[g.apply(v)])
    }

    /// Looks for an automorphism sending the first path below `level` into
    /// the subtree rooted at `node`.
    fn descend(&self, path: &[Node], level: usize, node: &Node) -> Option<Perm> {
        if node.trace != path[level].trace || node.classes != path[level].classes {
            return None;
        }
        if level + 1 == path.len() {
            let g = Self::leaf_perm(&path[level], node);
            return self.is_automorphism(&g).then_some(g);
        }
        let (color, cell) = Self::target_cell(node)?;
        let (want_color, want_cell) = Self::target_cell(&path[level]).expect("first path continues");
        if color != want_color || cell.len() != want_cell.len() {
            return None;
        }
        cell.into_iter()
            .find_map(|w| self.descend(path, level + 1, &self.individualize(node, w)))
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

pub fn automorphisms(graph: &Graph) -> Result<Automorphisms> {
    automorphisms_colored(graph, &vec![0; graph.len()], DEFAULT_VERTEX_CAP)
}

/// Automorphisms preserving a vertex colouring, by individualisation and
/// colour refinement with orbit pruning at every level of the first path.
pub fn automorphisms_colored(graph: &Graph, colors: &[u32], cap: usize) -> Result<Automorphisms> {
    let n = graph.len();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "automorphism search vertices",
            requested: n as u128,
            cap: cap as u128,
        });
    }
    if colors.len() != n {
        return Err(Error::invalid(format!("{} colours for {n} vertices", colors.len())));
    }
    let search = Search { graph, initial: colors.to_vec() };
    let mut path = vec![search.refine(colors.to_vec())];
    let mut base = Vec::new();
    let mut cells = Vec::new();
    while let Some((_, cell)) = Search::target_cell(path.last().unwrap()) {
        let b = cell[0];
        base.push(b);
        let next = search.individualize(path.last().unwrap(), b);
        cells.push(cell);
        path.push(next);
    }

    let mut generators: Vec<Perm> = Vec::new();
    let mut basic = vec![1usize; base.len()];
    for i in (0..base.len()).rev() {
        let orbit_of = |gens: &[Perm]| {
            PermGroup::new(n, gens.to_vec()).expect("degree checked").orbit(base[i])
        };
        let mut orbit = orbit_of(&generators);
        for &v in &cells[i] {
            if orbit.contains(&v) {
                continue;
            }
            if let Some(g) = search.descend(&path, i + 1, &search.individualize(&path[i], v)) {
                if g.apply(base[i]) != v || base[..i].iter().any(|&b| !g.fixes(b)) {
                    return Err(Error::invariant("automorphism search returned a wrong witness"));
                }
                generators.push(g);
                orbit = orbit_of(&generators);
            }
        }
        basic[i] = orbit.len();
    }
    if let Some(bad) = generators.iter().find(|g| !search.is_automorphism(g)) {
        return Err(Error::invariant(format!("{bad} is not an automorphism")));
    }
    let group = PermGroup::new(n, generators)?;
    Ok(Automorphisms { group, base, basic_orbit_sizes: basic })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(g: &Graph) -> u128 {
        let a = automorphisms(g).unwrap();
        assert_eq!(a.order(), a.group.order().unwrap() as u128);
        a.order()
    }

    #[test]
    fn small_graphs() {
        assert_eq!(order(&Graph::complete(4)), 24);
        assert_eq!(order(&Graph::cube()), 48);
        assert_eq!(order(&Graph::cycle(7).unwrap()), 14);
        assert_eq!(order(&Graph::path(5)), 2);
        assert_eq!(order(&Graph::from_edges(3, &[]).unwrap()), 6);
    }

    #[test]
    fn colouring_restricts() {
        let g = Graph::cycle(6).unwrap();
        let a = automorphisms_colored(&g, &[1, 0, 0, 0, 0, 0], 128).unwrap();
        assert_eq!(a.order(), 2);
    }

    #[test]
    fn cap() {
        let g = Graph::path(10);
        assert!(matches!(
            automorphisms_colored(&g, &[0; 10], 5),
            Err(Error::CapExceeded { .. })
        ));
    }
}
