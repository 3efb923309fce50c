use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of hypercube points a domain may span.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 30;

/// A named dimension of a hypercube.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub id: u32,
    pub label: String,
}

impl Point {
    pub fn new(id: u32, label: impl Into<String>) -> Self {
        Point { id, label: label.into() }
    }
}

/// Ordered point list with a state count per point.
///
/// The order fixes the multi-radix indexing: the first point is the least
/// significant digit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Domain {
    points: Vec<Point>,
    radices: Vec<u32>,
}

impl Domain {
    pub fn new(points: Vec<Point>, radices: Vec<u32>) -> Result<Self> {
        Self::with_cap(points, radices, DEFAULT_TABLE_CAP)
    }

    pub fn with_cap(points: Vec<Point>, radices: Vec<u32>, cap: u64) -> Result<Self> {
        if points.len() != radices.len() {
            return Err(Error::Domain(format!(
                "{} points but {} radices",
                points.len(),
                radices.len()
            )));
        }
        let mut seen = HashSet::new();
        for p in &points {
            if !seen.insert(p.id) {
                return Err(Error::Domain(format!("duplicate point id {}", p.id)));
            }
        }
        if let Some(&r) = radices.iter().find(|&&r| r < 2) {
            return Err(Error::Domain(format!("radix {r} < 2")));
        }
        let mut size: u128 = 1;
        for &r in &radices {
            size *= r as u128;
            if size > cap as u128 {
                return Err(Error::CapExceeded {
                    what: "relation table",
                    requested: radices.iter().map(|&r| r as u128).product(),
                    cap: cap as u128,
                });
            }
        }
        Ok(Domain { points, radices })
    }

    /// Uniform radix with labels; ids are assigned 0, 1, 2, ...
    pub fn uniform<S: AsRef<str>>(labels: &[S], q: u32) -> Result<Self> {
        let points = labels
            .iter()
            .enumerate()
            .map(|(i, l)| Point::new(i as u32, l.as_ref()))
            .collect();
        Domain::new(points, vec![q; labels.len()])
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of hypercube points, `∏ q_i`.
    pub fn size(&self) -> usize {
        self.radices.iter().map(|&r| r as usize).product()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.points.iter().map(|p| p.label.as_str()).collect()
    }

    pub fn position(&self, id: u32) -> Option<usize> {
        self.points.iter().position(|p| p.id == id)
    }

    pub fn position_of_label(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p.label == label)
    }

    pub fn contains_id(&self, id: u32) -> bool {
        self.position(id).is_some()
    }

    /// `self ⊆ other` as point sets, with matching radices.
    pub fn is_subset_of(&self, other: &Domain) -> bool {
        self.points.iter().zip(&self.radices).all(|(p, &r)| {
            other.position(p.id).is_some_and(|j| other.radices[j] == r)
        })
    }

    pub fn same_points(&self, other: &Domain) -> bool {
        self.len() == other.len() && self.is_subset_of(other)
    }

    /// Sub-domain keeping the given positions in parent order.
    pub fn select(&self, positions: &[usize]) -> Domain {
        let mut pos = positions.to_vec();
        pos.sort_unstable();
        pos.dedup();
        Domain {
            points: pos.iter().map(|&i| self.points[i].clone()).collect(),
            radices: pos.iter().map(|&i| self.radices[i]).collect(),
        }
    }

    /// Sub-domain without the point at `position`.
    pub fn without(&self, position: usize) -> Domain {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != position).collect();
        self.select(&keep)
    }

    /// Point-wise strides: `stride[i] = q_1 ⋯ q_i`.
    pub fn strides(&self) -> Vec<usize> {
        let mut s = Vec::with_capacity(self.len());
        let mut acc = 1usize;
        for &r in &self.radices {
            s.push(acc);
            acc *= r as usize;
        }
        s
    }

    /// Multi-radix little-endian index of a tuple.
    pub fn index_of(&self, tuple: &[u32]) -> Result<usize> {
        if tuple.len() != self.len() {
            return Err(Error::Domain(format!(
                "tuple of length {} for domain of {} points",
                tuple.len(),
                self.len()
            )));
        }
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (position, (&v, &r)) in tuple.iter().zip(&self.radices).enumerate() {
            if v >= r {
                return Err(Error::OutOfRadix { position, value: v, radix: r });
            }
            idx += v as usize * stride;
            stride *= r as usize;
        }
        Ok(idx)
    }

    /// Inverse of [`Domain::index_of`]. Panics if `index >= size()`.
    pub fn tuple_of(&self, mut index: usize) -> Vec<u32> {
        assert!(index < self.size(), "index {index} outside hypercube");
        self.radices
            .iter()
            .map(|&r| {
                let v = (index % r as usize) as u32;
                index /= r as usize;
                v
            })
            .collect()
    }

    /// Union of point sets, sorted by point id.
    pub fn union<'a>(domains: impl IntoIterator<Item = &'a Domain>) -> Result<Domain> {
        let mut pts: Vec<(Point, u32)> = Vec::new();
        for d in domains {
            for (p, &r) in d.points.iter().zip(&d.radices) {
                match pts.iter().find(|(q, _)| q.id == p.id) {
                    Some((_, r0)) if *r0 != r => {
                        return Err(Error::Domain(format!(
                            "point {} has radix {} and {}",
                            p.label, r0, r
                        )))
                    }
                    Some(_) => {}
                    None => pts.push((p.clone(), r)),
                }
            }
        }
        pts.sort_by_key(|(p, _)| p.id);
        let (points, radices) = pts.into_iter().unzip();
        Domain::new(points, radices)
    }

    /// Strides of `sub` laid out along `self`'s points (0 where absent).
    pub(crate) fn embedded_strides(&self, sub: &Domain) -> Result<Vec<usize>> {
        if !sub.is_subset_of(self) {
            return Err(Error::Domain(format!(
                "{{{}}} is not contained in {{{}}}",
                sub.labels().join(" "),
                self.labels().join(" ")
            )));
        }
        let sub_strides = sub.strides();
        Ok(self
            .points
            .iter()
            .map(|p| sub.position(p.id).map_or(0, |j| sub_strides[j]))
            .collect())
    }

    /// Calls `f(i, j)` for each index `i` of `self` with `j` the index of the
    /// restriction of tuple `i` to the points carrying non-zero strides.
    pub(crate) fn for_each_restricted(&self, strides: &[usize], mut f: impl FnMut(usize, usize)) {
        let k = self.len();
        let size = self.size();
        let mut digits = vec![0u32; k];
        let mut j = 0usize;
        for i in 0..size {
            f(i, j);
            // odometer increment
            for pos in 0..k {
                digits[pos] += 1;
                j += strides[pos];
                if digits[pos] < self.radices[pos] {
                    break;
                }
                j -= strides[pos] * self.radices[pos] as usize;
                digits[pos] = 0;
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(","))
    }
}
