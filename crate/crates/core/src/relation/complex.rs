use std::collections::{BTreeMap, BTreeSet};

use super::{Point, Relation};

/// Abstract simplicial complex given by its maximal simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    points: Vec<Point>,
    maximal: Vec<BTreeSet<u32>>,
}

impl SimplicialComplex {
    /// Builds the complex from arbitrary simplices, keeping only the
    /// inclusion-maximal ones and adding singletons for bare points.
    pub fn from_simplices(points: Vec<Point>, simplices: Vec<BTreeSet<u32>>) -> Self {
        let mut sorted = simplices;
        sorted.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sorted.dedup();
        let mut maximal: Vec<BTreeSet<u32>> = Vec::new();
        for s in sorted {
            if !maximal.iter().any(|m| s.is_subset(m)) {
                maximal.push(s);
            }
        }
        for p in &points {
            if !maximal.iter().any(|m| m.contains(&p.id)) {
                maximal.push(BTreeSet::from([p.id]));
            }
        }
        maximal.sort();
        SimplicialComplex { points, maximal }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn maximal_simplices(&self) -> &[BTreeSet<u32>] {
        &self.maximal
    }

    pub fn label(&self, id: u32) -> Option<&str> {
        self.points.iter().find(|p| p.id == id).map(|p| p.label.as_str())
    }

    /// Connected components as sorted point-id sets, ordered by least id.
    pub fn connected_components(&self) -> Vec<BTreeSet<u32>> {
        let ids: Vec<u32> = self.points.iter().map(|p| p.id).collect();
        let pos: BTreeMap<u32, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for s in &self.maximal {
            let mut it = s.iter().map(|id| pos[id]);
            if let Some(first) = it.next() {
                for other in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, other));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<u32>> = BTreeMap::new();
        for i in 0..ids.len() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().insert(ids[i]);
        }
        let mut comps: Vec<BTreeSet<u32>> = groups.into_values().collect();
        comps.sort_by_key(|c| *c.iter().next().unwrap());
        comps
    }
}

/// Complex whose maximal simplices are the domains of the irreducible
/// components of the given relations.
pub fn complex_of(relations: &[Relation]) -> SimplicialComplex {
    let mut points: BTreeMap<u32, Point> = BTreeMap::new();
    let mut simplices = Vec::new();
    for r in relations {
        for p in r.domain().points() {
            points.entry(p.id).or_insert_with(|| p.clone());
        }
        let dec = r.decompose();
        for c in dec.irreducible_components() {
            simplices.push(c.domain().points().iter().map(|p| p.id).collect());
        }
    }
    SimplicialComplex::from_simplices(points.into_values().collect(), simplices)
}
