use std::collections::HashMap;

use serde::Serialize;

use super::{BitTable, Domain, Relation};
use crate::error::Result;

impl Relation {
    /// Non-trivial projections onto the maximal proper faces of the domain.
    ///
    /// Faces are produced by dropping the last point first, so for
    /// `{p,q,r,s}` the order is `{p,q,r}`, `{p,q,s}`, `{p,r,s}`, `{q,r,s}`.
    /// Deeper consequences are reached by recursing on these.
    pub fn proper_consequences(&self) -> Vec<Relation> {
        let k = self.domain.len();
        if k < 2 || self.is_empty() {
            return Vec::new();
        }
        (0..k)
            .rev()
            .map(|drop| {
                self.project_unchecked(&self.domain.without(drop))
                    .expect("face of own domain")
            })
            .filter(|r| !r.is_trivial())
            .collect()
    }

    /// `R ∪ (Σ^δ ∖ ⋂ ext(Q))` over the given consequences.
    pub fn principal_factor_with(&self, consequences: &[Relation]) -> Result<Relation> {
        let mut meet = BitTable::ones(self.domain.size());
        for q in consequences {
            meet.and_assign(q.extend(&self.domain)?.bits());
        }
        let mut pf = meet.not();
        pf.or_assign(&self.bits);
        Relation::from_table(self.domain.clone(), pf)
    }

    pub fn principal_factor(&self) -> Relation {
        self.principal_factor_with(&self.proper_consequences())
            .expect("consequences live on faces")
    }

    /// Whether the relation is recovered from its proper consequences.
    pub fn is_reducible(&self) -> bool {
        self.principal_factor().is_trivial()
    }

    /// Non-trivial and without proper consequences.
    pub fn is_prime(&self) -> bool {
        !self.is_trivial() && self.proper_consequences().is_empty()
    }

    /// Canonical decomposition as a DAG of faces, shared faces merged.
    pub fn decompose(&self) -> Decomposition {
        let mut builder = Builder { nodes: Vec::new(), index: HashMap::new() };
        let root = builder.visit(self.clone());
        Decomposition { nodes: builder.nodes, root }
    }
}

/// A face of the source relation inside a [`Decomposition`].
#[derive(Clone, Debug)]
pub struct DecompNode {
    pub id: usize,
    pub relation: Relation,
    pub principal_factor: Relation,
    pub reducible: bool,
    pub prime: bool,
    /// Node ids of the proper consequences, in face order.
    pub children: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    nodes: Vec<DecompNode>,
    root: usize,
}

struct Builder {
    nodes: Vec<DecompNode>,
    index: HashMap<Vec<u32>, usize>,
}

impl Builder {
    fn visit(&mut self, relation: Relation) -> usize {
        let key = face_key(relation.domain());
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let consequences = relation.proper_consequences();
        let pf = relation
            .principal_factor_with(&consequences)
            .expect("consequences live on faces");
        let children: Vec<usize> = consequences.into_iter().map(|q| self.visit(q)).collect();
        let id = self.nodes.len();
        self.nodes.push(DecompNode {
            id,
            reducible: pf.is_trivial(),
            prime: !relation.is_trivial() && children.is_empty(),
            principal_factor: pf,
            relation,
            children,
        });
        self.index.insert(key, id);
        id
    }
}

fn face_key(d: &Domain) -> Vec<u32> {
    let mut ids: Vec<u32> = d.points().iter().map(|p| p.id).collect();
    ids.sort_unstable();
    ids
}

#[derive(Serialize)]
struct NodeJson<'a> {
    id: usize,
    domain: Vec<&'a str>,
    bits: String,
    hex: String,
    reducible: bool,
    prime: bool,
    principal_factor: String,
    children: &'a [usize],
}

impl Decomposition {
    pub fn root(&self) -> &DecompNode {
        &self.nodes[self.root]
    }

    pub fn node(&self, id: usize) -> &DecompNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[DecompNode] {
        &self.nodes
    }

    pub fn children(&self, id: usize) -> impl Iterator<Item = &DecompNode> {
        self.nodes[id].children.iter().map(|&c| &self.nodes[c])
    }

    /// Irreducible pieces the relation factors into (deduplicated by face).
    pub fn irreducible_components(&self) -> Vec<&Relation> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        self.collect_components(self.root, &mut seen, &mut out);
        out.sort_by_key(|&id| face_key(self.nodes[id].relation.domain()));
        out.into_iter().map(|id| &self.nodes[id].relation).collect()
    }

    fn collect_components(&self, id: usize, seen: &mut [bool], out: &mut Vec<usize>) {
        if seen[id] {
            return;
        }
        seen[id] = true;
        let node = &self.nodes[id];
        if node.relation.is_trivial() {
            return;
        }
        if !node.reducible {
            out.push(id);
            return;
        }
        for &c in &node.children {
            self.collect_components(c, seen, out);
        }
    }

    /// Checks `PF ∩ ⋂ ext(children) = R` at every node.
    pub fn verify(&self) -> bool {
        self.nodes.iter().all(|n| {
            let mut acc = n.principal_factor.bits().clone();
            for &c in &n.children {
                match self.nodes[c].relation.extend(n.relation.domain()) {
                    Ok(e) => acc.and_assign(e.bits()),
                    Err(_) => return false,
                }
            }
            &acc == n.relation.bits()
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<NodeJson> = self
            .nodes
            .iter()
            .map(|n| NodeJson {
                id: n.id,
                domain: n.relation.domain().labels(),
                bits: n.relation.bits().to_bit_string(),
                hex: n.relation.bits().to_hex(),
                reducible: n.reducible,
                prime: n.prime,
                principal_factor: n.principal_factor.bits().to_bit_string(),
                children: &n.children,
            })
            .collect();
        serde_json::json!({ "root": self.root, "nodes": nodes })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(bits: &str) -> Relation {
        Relation::from_bits(Domain::uniform(&["p", "q", "r", "s"], 2).unwrap(), bits).unwrap()
    }

    fn tables(rs: &[Relation]) -> Vec<(String, String)> {
        rs.iter()
            .map(|r| (r.domain().labels().concat(), r.bits().to_bit_string()))
            .collect()
    }

    #[test]
    fn rule_30() {
        let r = rel("1001010101101010");
        let cons = r.proper_consequences();
        assert_eq!(
            tables(&cons),
            vec![("pqs".into(), "11011110".into()), ("prs".into(), "11011110".into())]
        );
        assert_eq!(r.principal_factor().bits().to_bit_string(), "1011111101111111");
        assert!(!r.is_reducible());
        assert!(!r.is_prime());
    }

    #[test]
    fn rule_110() {
        let r = rel("1100000100111110");
        let cons = r.proper_consequences();
        assert_eq!(
            tables(&cons),
            vec![
                ("pqs".into(), "11011111".into()),
                ("prs".into(), "11011111".into()),
                ("qrs".into(), "10010111".into())
            ]
        );
        assert_eq!(r.principal_factor().bits().to_bit_string(), "1111111111111110");
    }

    #[test]
    fn conventions() {
        let d = Domain::uniform(&["a", "b"], 2).unwrap();
        let t = Relation::trivial(d.clone());
        assert!(t.proper_consequences().is_empty());
        assert!(t.is_reducible());
        assert!(!t.is_prime());
        let e = Relation::empty(d);
        assert!(!e.is_reducible());
        assert!(e.is_prime());
        assert_eq!(e.principal_factor(), e);
    }

    #[test]
    fn dag_reconstructs() {
        let r = rel("0101010110101010");
        let dec = r.decompose();
        assert!(dec.verify());
        let comps = dec.irreducible_components();
        assert_eq!(tables(&comps.into_iter().cloned().collect::<Vec<_>>()), vec![("ps".into(), "0110".into())]);
        let json = dec.to_json();
        assert_eq!(json["nodes"].as_array().unwrap().len(), dec.nodes().len());
    }
}
