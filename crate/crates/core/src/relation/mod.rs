//! Discrete relations stored as dense bit tables over multi-radix hypercubes.
//!
//! A [`Relation`] is a subset of `Σ_1 × ⋯ × Σ_k` for an ordered [`Domain`]
//! of points. Bit `i` of the table is set iff the tuple whose little-endian
//! multi-radix expansion is `i` belongs to the relation. Everything else in
//! this module (extension, projection, consequences, canonical
//! decomposition, the induced simplicial complex) is a bitwise sweep over
//! such tables.

mod bits;
mod complex;
mod decompose;
mod domain;

use std::fmt;

pub use bits::BitTable;
pub use complex::{complex_of, SimplicialComplex};
pub use decompose::{DecompNode, Decomposition};
pub use domain::{Domain, Point, DEFAULT_TABLE_CAP};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    domain: Domain,
    bits: BitTable,
}

impl Relation {
    pub fn from_table(domain: Domain, bits: BitTable) -> Result<Self> {
        if bits.len() != domain.size() {
            return Err(Error::Domain(format!(
                "bit table of length {} for hypercube of size {}",
                bits.len(),
                domain.size()
            )));
        }
        Ok(Relation { domain, bits })
    }

    /// Relation from a `0`/`1` string, index 0 first.
    pub fn from_bits(domain: Domain, bits: &str) -> Result<Self> {
        let table = BitTable::from_bit_str(bits)
            .ok_or_else(|| Error::invalid(format!("not a bit string: {bits:?}")))?;
        Relation::from_table(domain, table)
    }

    /// Relation containing exactly the tuples accepted by `member`.
    pub fn from_fn(domain: Domain, mut member: impl FnMut(&[u32]) -> bool) -> Self {
        let size = domain.size();
        let mut bits = BitTable::zeros(size);
        let mut tuple = vec![0u32; domain.len()];
        for i in 0..size {
            if member(&tuple) {
                bits.set(i, true);
            }
            for (pos, v) in tuple.iter_mut().enumerate() {
                *v += 1;
                if *v < domain.radices()[pos] {
                    break;
                }
                *v = 0;
            }
        }
        Relation { domain, bits }
    }

    /// The whole hypercube `Σ^δ`.
    pub fn trivial(domain: Domain) -> Self {
        let bits = BitTable::ones(domain.size());
        Relation { domain, bits }
    }

    pub fn empty(domain: Domain) -> Self {
        let bits = BitTable::zeros(domain.size());
        Relation { domain, bits }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn bits(&self) -> &BitTable {
        &self.bits
    }

    /// Number of member tuples.
    pub fn cardinality(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_trivial(&self) -> bool {
        self.bits.all()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.none()
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.bits.get(index)
    }

    pub fn contains(&self, tuple: &[u32]) -> Result<bool> {
        Ok(self.bits.get(self.domain.index_of(tuple)?))
    }

    pub fn complement(&self) -> Relation {
        Relation { domain: self.domain.clone(), bits: self.bits.not() }
    }

    /// Intersection of two relations on the same point set (`other` is
    /// re-indexed to `self`'s point order if needed).
    pub fn intersect(&self, other: &Relation) -> Result<Relation> {
        let other = other.reorder_to(&self.domain)?;
        let mut bits = self.bits.clone();
        bits.and_assign(&other.bits);
        Ok(Relation { domain: self.domain.clone(), bits })
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        let other = other.reorder_to(&self.domain)?;
        let mut bits = self.bits.clone();
        bits.or_assign(&other.bits);
        Ok(Relation { domain: self.domain.clone(), bits })
    }

    /// `self ⊆ other` on the same point set.
    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        let other = other.reorder_to(&self.domain)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    /// Same point set, possibly different order: re-index into `target`.
    fn reorder_to(&self, target: &Domain) -> Result<std::borrow::Cow<'_, Relation>> {
        if &self.domain == target {
            return Ok(std::borrow::Cow::Borrowed(self));
        }
        if !self.domain.same_points(target) {
            return Err(Error::Domain(format!("{} and {} differ", self.domain, target)));
        }
        Ok(std::borrow::Cow::Owned(self.extend(target)?))
    }

    /// Cylinder `R × Σ^{superset∖domain}`.
    pub fn extend(&self, superset: &Domain) -> Result<Relation> {
        let strides = superset.embedded_strides(&self.domain)?;
        let mut bits = BitTable::zeros(superset.size());
        superset.for_each_restricted(&strides, |i, j| {
            if self.bits.get(j) {
                bits.set(i, true);
            }
        });
        Ok(Relation { domain: superset.clone(), bits })
    }

    /// Existential projection onto a non-empty subset of the domain: the
    /// smallest relation on `sub` whose extension contains `self`.
    ///
    /// Point order inside `sub` is taken as given, so passing a sub-domain
    /// obtained from [`Domain::select`] inherits the parent order.
    pub fn project(&self, sub: &Domain) -> Result<Relation> {
        if sub.is_empty() {
            return Err(Error::Domain("projection onto the empty set".into()));
        }
        if sub.len() >= self.domain.len() {
            return Err(Error::Domain(format!(
                "{} is not a proper subset of {}",
                sub, self.domain
            )));
        }
        self.project_unchecked(sub)
    }

    pub(crate) fn project_unchecked(&self, sub: &Domain) -> Result<Relation> {
        let strides = self.domain.embedded_strides(sub)?;
        let mut bits = BitTable::zeros(sub.size());
        self.domain.for_each_restricted(&strides, |i, j| {
            if self.bits.get(i) {
                bits.set(j, true);
            }
        });
        Ok(Relation { domain: sub.clone(), bits })
    }

    /// Whether `q` (on a subset of this domain) is a consequence of `self`.
    pub fn is_consequence(&self, q: &Relation) -> Result<bool> {
        let ext = q.extend(&self.domain)?;
        Ok(self.bits.is_subset(&ext.bits))
    }

    /// Whether the coordinate at `position` is determined by the others.
    pub fn is_functional(&self, position: usize) -> Result<bool> {
        if position >= self.domain.len() {
            return Err(Error::invalid(format!(
                "position {position} outside domain of {} points",
                self.domain.len()
            )));
        }
        let strides = self.domain.strides();
        let stride = strides[position];
        let radix = self.domain.radices()[position] as usize;
        for i in 0..self.domain.size() {
            if !(i / stride).is_multiple_of(radix) {
                continue;
            }
            let members = (0..radix).filter(|&v| self.bits.get(i + v * stride)).count();
            if members > 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Relation text format: `domain:` line, `radix:` line (one value or one
    /// per point), then the bit table.
    pub fn to_text(&self) -> String {
        let radices = self.domain.radices();
        let radix_line = if radices.windows(2).all(|w| w[0] == w[1]) {
            radices.first().map_or(String::new(), |r| r.to_string())
        } else {
            radices.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
        };
        format!(
            "domain: {}\nradix: {}\n{}\n",
            self.domain.labels().join(" "),
            radix_line,
            self.bits
        )
    }

    pub fn parse_text(text: &str) -> Result<Relation> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, dom_line) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
        let labels: Vec<&str> = dom_line
            .strip_prefix("domain:")
            .ok_or_else(|| Error::Parse { line: ln, message: "expected `domain:`".into() })?
            .split_whitespace()
            .collect();
        let (ln, radix_line) =
            lines.next().ok_or(Error::Parse { line: ln + 1, message: "missing radix line".into() })?;
        let radices: Vec<u32> = radix_line
            .strip_prefix("radix:")
            .ok_or_else(|| Error::Parse { line: ln, message: "expected `radix:`".into() })?
            .split_whitespace()
            .map(|s| s.parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse { line: ln, message: e.to_string() })?;
        let radices = match radices.len() {
            1 => vec![radices[0]; labels.len()],
            n if n == labels.len() => radices,
            n => {
                return Err(Error::Parse {
                    line: ln,
                    message: format!("{n} radices for {} points", labels.len()),
                })
            }
        };
        let (ln, bits_line) =
            lines.next().ok_or(Error::Parse { line: ln + 1, message: "missing bit table".into() })?;
        let points =
            labels.iter().enumerate().map(|(i, l)| Point::new(i as u32, *l)).collect();
        let domain = Domain::new(points, radices)?;
        Relation::from_bits(domain, bits_line)
            .map_err(|e| Error::Parse { line: ln, message: e.to_string() })
    }
}

/// Intersection of all relations extended to the union of their domains.
/// An empty result means the system is incompatible.
pub fn base_relation(system: &[Relation]) -> Result<Relation> {
    if system.is_empty() {
        return Err(Error::invalid("base relation of an empty system"));
    }
    let union = Domain::union(system.iter().map(|r| r.domain()))?;
    let mut acc = BitTable::ones(union.size());
    for r in system {
        acc.and_assign(r.extend(&union)?.bits());
    }
    Relation::from_table(union, acc)
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation{} {:?}", self.domain, self.bits)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.bits, self.domain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pqrs() -> Domain {
        Domain::uniform(&["p", "q", "r", "s"], 2).unwrap()
    }

    #[test]
    fn extend_face_to_ring() {
        let d = pqrs();
        let face = Relation::from_bits(d.select(&[0, 3]), "0110").unwrap();
        let ext = face.extend(&d).unwrap();
        assert_eq!(ext.bits().to_bit_string(), "0101010110101010");
    }

    #[test]
    fn extend_trivial_and_empty() {
        let d = pqrs();
        let face = d.select(&[1, 2]);
        assert!(Relation::trivial(face.clone()).extend(&d).unwrap().is_trivial());
        assert!(Relation::empty(face).extend(&d).unwrap().is_empty());
    }

    #[test]
    fn extend_requires_superset() {
        let d = pqrs();
        let other = Domain::uniform(&["a"], 2).unwrap();
        let r = Relation::trivial(Domain::new(vec![Point::new(9, "z")], vec![2]).unwrap());
        assert!(r.extend(&d).is_err());
        assert!(Relation::trivial(d).extend(&other).is_err());
    }

    #[test]
    fn project_published_faces() {
        let d = pqrs();
        let r90 = Relation::from_bits(d.clone(), "1010010101011010").unwrap();
        assert_eq!(r90.project(&d.select(&[0, 2, 3])).unwrap().bits().to_bit_string(), "10010110");
        let r15 = Relation::from_bits(d.clone(), "0101010110101010").unwrap();
        assert_eq!(r15.project(&d.select(&[0, 3])).unwrap().bits().to_bit_string(), "0110");
    }

    #[test]
    fn project_rejects_non_proper() {
        let d = pqrs();
        let r = Relation::trivial(d.clone());
        assert!(r.project(&d).is_err());
        assert!(r.project(&d.select(&[])).is_err());
    }

    #[test]
    fn consequence_examples() {
        let d = pqrs();
        // rule 168: s = (p or q) and r
        let r168 = Relation::from_fn(d.clone(), |t| t[3] == ((t[0] | t[1]) & t[2]));
        let rs = Relation::from_bits(d.select(&[2, 3]), "1101").unwrap();
        assert!(r168.is_consequence(&rs).unwrap());
        assert!(r168.is_consequence(&Relation::trivial(d.select(&[0]))).unwrap());
        assert!(!r168.is_consequence(&Relation::empty(d.select(&[0]))).unwrap());
        let e = Relation::empty(d.clone());
        assert!(e.is_consequence(&Relation::empty(d.select(&[0]))).unwrap());
    }

    #[test]
    fn functional_examples() {
        let d = pqrs();
        let rs = Relation::from_bits(d.select(&[2, 3]), "1101").unwrap();
        assert!(!rs.is_functional(1).unwrap());
        assert!(Relation::empty(d.clone()).is_functional(3).unwrap());
        assert!(Relation::trivial(d).is_functional(9).is_err());
    }

    #[test]
    fn base_relation_contradiction() {
        let d = pqrs();
        let r = Relation::from_bits(d.clone(), "1001010101101010").unwrap();
        assert_eq!(base_relation(std::slice::from_ref(&r)).unwrap(), r);
        assert!(base_relation(&[r.clone(), r.complement()]).unwrap().is_empty());
    }

    #[test]
    fn text_round_trip() {
        let d = pqrs();
        let r = Relation::from_bits(d, "1100000100111110").unwrap();
        let text = r.to_text();
        assert_eq!(text, "domain: p q r s\nradix: 2\n1100000100111110\n");
        assert_eq!(Relation::parse_text(&text).unwrap(), r);
        assert!(Relation::parse_text("domain: p q\nradix: 2\n011").is_err());
        assert!(matches!(Relation::parse_text("radix: 2"), Err(Error::Parse { line: 1, .. })));
    }
}
