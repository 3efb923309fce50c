use std::collections::BTreeSet;

use super::Perm;
use crate::error::{Error, Result};

/// Simple undirected graph with a fixed neighbour order per vertex.
///
/// The neighbour order matters only for non-symmetric local rules; the
/// sorted edge set is what automorphisms are checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    neighbors: Vec<Vec<u32>>,
    edges: BTreeSet<(u32, u32)>,
}

impl Graph {
    /// Graph from an edge list; neighbour lists come out sorted.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) outside {n} vertices")));
            }
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::invalid(format!("repeated edge ({u},{v})")));
            }
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &set {
            neighbors[u as usize].push(v);
            neighbors[v as usize].push(u);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        Ok(Graph { neighbors, edges: set })
    }

    /// Graph from ordered neighbour lists, which must describe a simple
    /// symmetric adjacency.
    pub fn from_neighbor_lists(neighbors: Vec<Vec<u32>>) -> Result<Self> {
        let n = neighbors.len();
        let mut edges = BTreeSet::new();
        for (u, nb) in neighbors.iter().enumerate() {
            let distinct: BTreeSet<u32> = nb.iter().copied().collect();
            if distinct.len() != nb.len() {
                return Err(Error::invalid(format!("vertex {u} lists a neighbour twice")));
            }
            for &v in nb {
                if v as usize >= n || v as usize == u {
                    return Err(Error::invalid(format!("bad neighbour {v} of vertex {u}")));
                }
                if !neighbors[v as usize].contains(&(u as u32)) {
                    return Err(Error::invalid(format!("edge {u}->{v} is not symmetric")));
                }
                edges.insert(((u as u32).min(v), (u as u32).max(v)));
            }
        }
        Ok(Graph { neighbors, edges })
    }

    /// Text format: `n m` on the first line, then `m` lines `u v`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_pair = |line: usize, s: &str| -> Result<(u32, u32)> {
            let nums: Vec<u32> = s
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse { line, message: e.to_string() })?;
            match nums[..] {
                [a, b] => Ok((a, b)),
                _ => Err(Error::Parse { line, message: "expected two integers".into() }),
            }
        };
        let (ln, head) = lines.next().ok_or(Error::Parse { line: 1, message: "empty graph file".into() })?;
        let (n, m) = parse_pair(ln, head)?;
        let mut edges = Vec::with_capacity(m as usize);
        for (ln, l) in lines {
            edges.push(parse_pair(ln, l)?);
        }
        if edges.len() != m as usize {
            return Err(Error::Parse { line: ln, message: format!("header says {m} edges, found {}", edges.len()) });
        }
        Graph::from_edges(n as usize, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.len(), self.edges.len());
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[v]
    }

    pub fn edges(&self) -> &BTreeSet<(u32, u32)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&((u.min(v)) as u32, (u.max(v)) as u32))
    }

    /// Common valence, if the graph is regular.
    pub fn valence(&self) -> Option<usize> {
        let k = self.neighbors.first().map_or(0, |n| n.len());
        self.neighbors.iter().all(|n| n.len() == k).then_some(k)
    }

    pub fn is_automorphism(&self, g: &Perm) -> bool {
        g.degree() == self.len()
            && self.edges.iter().all(|&(u, v)| self.has_edge(g.apply(u as usize), g.apply(v as usize)))
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(u32, u32)> =
            (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Path `0 - 1 - ... - (n-1)`, neighbours ordered `[x-1, x+1]`.
    pub fn path(n: usize) -> Self {
        let nb = (0..n)
            .map(|x| {
                let mut v = Vec::new();
                if x > 0 {
                    v.push(x as u32 - 1);
                }
                if x + 1 < n {
                    v.push(x as u32 + 1);
                }
                v
            })
            .collect();
        Graph::from_neighbor_lists(nb).unwrap()
    }

    /// Cycle `Z_n` (n ≥ 3), neighbours ordered `[x-1, x+1]`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let nb = (0..n)
            .map(|x| vec![((x + n - 1) % n) as u32, ((x + 1) % n) as u32])
            .collect();
        Graph::from_neighbor_lists(nb)
    }

    /// The 3-cube: vertices are 3-bit words, edges flip one bit.
    pub fn cube() -> Self {
        let nb = (0..8u32).map(|v| vec![v ^ 1, v ^ 2, v ^ 4]).collect();
        Graph::from_neighbor_lists(nb).unwrap()
    }

    /// Icosahedron: 0 top, 1..=5 upper ring, 6..=10 lower ring, 11 bottom.
    pub fn icosahedron() -> Self {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            let up = 1 + i;
            let up_next = 1 + (i + 1) % 5;
            let lo = 6 + i;
            let lo_next = 6 + (i + 1) % 5;
            edges.extend([(0, up), (up, up_next), (lo, lo_next), (lo, 11), (up, lo), (up, lo_next)]);
        }
        Graph::from_edges(12, &edges).unwrap()
    }

    /// Dodecahedron as the dual of the icosahedron: vertices are the 20
    /// triangular faces, adjacent when they share an edge.
    pub fn dodecahedron() -> Self {
        let ico = Graph::icosahedron();
        let mut faces = Vec::new();
        for &(a, b) in ico.edges() {
            for &c in ico.neighbors(b as usize) {
                if c > b && ico.has_edge(a as usize, c as usize) {
                    faces.push([a, b, c]);
                }
            }
        }
        let shared = |f: &[u32; 3], g: &[u32; 3]| f.iter().filter(|x| g.contains(x)).count();
        let mut edges = Vec::new();
        for i in 0..faces.len() {
            for j in i + 1..faces.len() {
                if shared(&faces[i], &faces[j]) == 2 {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        Graph::from_edges(faces.len(), &edges).unwrap()
    }

    /// Truncated icosahedron (C60). Vertices are the directed icosahedron
    /// edges `(u,v)`; `(u,v)-(v,u)` joins two hexagons, `(u,v)-(u,w)` with
    /// `v~w` is a pentagon edge around `u`. Neighbour order per vertex is
    /// `[hexagon-hexagon, pentagon, pentagon]`.
    pub fn buckyball() -> Self {
        let ico = Graph::icosahedron();
        let mut darts: Vec<(u32, u32)> = Vec::new();
        for u in 0..12u32 {
            for &v in ico.neighbors(u as usize) {
                darts.push((u, v));
            }
        }
        let id = |d: (u32, u32)| darts.iter().position(|&e| e == d).unwrap() as u32;
        let nb = darts
            .iter()
            .map(|&(u, v)| {
                let mut n = vec![id((v, u))];
                for &w in ico.neighbors(u as usize) {
                    if ico.has_edge(v as usize, w as usize) {
                        n.push(id((u, w)));
                    }
                }
                n
            })
            .collect();
        Graph::from_neighbor_lists(nb).unwrap()
    }

    /// `N × N` torus with the 8-cell Moore neighbourhood; vertex `y·N + x`.
    pub fn torus_moore(n: usize) -> Result<Self> {
        Self::torus(n, &[(-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1)])
    }

    /// `N × N` torus with the 4-cell von Neumann neighbourhood.
    pub fn torus_vonneumann(n: usize) -> Result<Self> {
        Self::torus(n, &[(0, -1), (-1, 0), (1, 0), (0, 1)])
    }

    fn torus(n: usize, offsets: &[(i64, i64)]) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("torus side must be at least 3, got {n}")));
        }
        let ni = n as i64;
        let nb = (0..n * n)
            .map(|v| {
                let (x, y) = ((v % n) as i64, (v / n) as i64);
                offsets
                    .iter()
                    .map(|&(dx, dy)| ((y + dy).rem_euclid(ni) * ni + (x + dx).rem_euclid(ni)) as u32)
                    .collect()
            })
            .collect();
        Graph::from_neighbor_lists(nb)
    }

    /// Built-in graph by name: `cube`, `icosahedron`, `dodecahedron`,
    /// `buckyball`, `complete:N`, `path:N`, `cycle:N`, `torus_moore:N`,
    /// `torus_vonneumann:N`. `name(N)` is accepted as well.
    pub fn named(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (name, arg) = match spec.find([':', '(']) {
            Some(i) => {
                let arg = spec[i + 1..].trim_end_matches(')');
                let n: usize = arg
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad size in graph name {spec:?}")))?;
                (&spec[..i], Some(n))
            }
            None => (spec, None),
        };
        let need = || arg.ok_or_else(|| Error::invalid(format!("graph {name} needs a size")));
        match name {
            "cube" => Ok(Graph::cube()),
            "icosahedron" => Ok(Graph::icosahedron()),
            "dodecahedron" => Ok(Graph::dodecahedron()),
            "buckyball" => Ok(Graph::buckyball()),
            "complete" => Ok(Graph::complete(need()?)),
            "path" => Ok(Graph::path(need()?)),
            "cycle" => Graph::cycle(need()?),
            "torus_moore" => Graph::torus_moore(need()?),
            "torus_vonneumann" => Graph::torus_vonneumann(need()?),
            _ => Err(Error::invalid(format!("unknown graph {name:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn platonic_counts() {
        let c = Graph::cube();
        assert_eq!((c.len(), c.edge_count(), c.valence()), (8, 12, Some(3)));
        let i = Graph::icosahedron();
        assert_eq!((i.len(), i.edge_count(), i.valence()), (12, 30, Some(5)));
        let d = Graph::dodecahedron();
        assert_eq!((d.len(), d.edge_count(), d.valence()), (20, 30, Some(3)));
        let b = Graph::buckyball();
        assert_eq!((b.len(), b.edge_count(), b.valence()), (60, 90, Some(3)));
    }

    #[test]
    fn torus_valence() {
        let t = Graph::torus_moore(4).unwrap();
        assert_eq!((t.len(), t.edge_count(), t.valence()), (16, 64, Some(8)));
        let v = Graph::torus_vonneumann(5).unwrap();
        assert_eq!(v.valence(), Some(4));
        assert!(Graph::torus_moore(2).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::cube();
        let h = Graph::parse(&g.to_text()).unwrap();
        assert_eq!(g.edges(), h.edges());
        assert!(Graph::parse("3 2\n0 1\n").is_err());
        assert!(Graph::parse("2 1\n0 0\n").is_err());
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::named("torus_moore(6)").unwrap().len(), 36);
        assert_eq!(Graph::named("cycle:32").unwrap().neighbors(0), &[31, 1]);
        assert!(Graph::named("torus_moore").is_err());
        assert!(Graph::named("petersen").is_err());
    }
}
