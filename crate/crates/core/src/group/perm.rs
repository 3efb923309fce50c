use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default cap on the number of elements enumerated by closure.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// A permutation of `0..n` acting on the right: `x·g = g.images[x]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::invalid(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let y = c[(i + 1) % c.len()];
                if x as usize >= n || y as usize >= n {
                    return Err(Error::invalid(format!("cycle entry out of range in {c:?}")));
                }
                images[x as usize] = y;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Perm::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn order(&self) -> usize {
        let mut g = self.clone();
        let mut k = 1;
        while !g.is_identity() {
            g = g.then(self);
            k += 1;
        }
        k
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.apply(x) == x
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.fixes(start) {
                seen[start] = true;
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x as u32);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// Finite permutation group given by generators; elements are enumerated
/// on first use.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    cap: usize,
    elements: OnceLock<Result<Vec<Perm>, (usize, usize)>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let g = PermGroup::with_cap(self.degree, self.generators.clone(), self.cap)
            .expect("validated on construction");
        if let Some(e) = self.elements.get() {
            let _ = g.elements.set(e.clone());
        }
        g
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::with_cap(degree, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::invalid(format!(
                "generator {g} has degree {} not {degree}",
                g.degree()
            )));
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup { degree, generators, cap, elements: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    /// Full symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[0, 1]]).unwrap());
            let cycle: Vec<u32> = (0..n as u32).collect();
            gens.push(Perm::from_cycles(n, &[&cycle]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let cycle: Vec<u32> = (0..n as u32).collect();
        let gens = if n >= 2 { vec![Perm::from_cycles(n, &[&cycle]).unwrap()] } else { vec![] };
        PermGroup::new(n, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements in breadth-first order from the identity.
    pub fn elements(&self) -> Result<&[Perm]> {
        match self.elements.get_or_init(|| self.enumerate()) {
            Ok(v) => Ok(v),
            Err((requested, cap)) => Err(Error::CapExceeded {
                what: "group enumeration",
                requested: *requested as u128,
                cap: *cap as u128,
            }),
        }
    }

    fn enumerate(&self) -> Result<Vec<Perm>, (usize, usize)> {
        let id = Perm::identity(self.degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &self.generators {
                let h = g.then(s);
                if seen.insert(h.clone()) {
                    if out.len() >= self.cap {
                        return Err((out.len() + 1, self.cap));
                    }
                    out.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(out)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn contains(&self, g: &Perm) -> Result<bool> {
        Ok(self.elements()?.contains(g))
    }

    /// Orbit of a point under the generators, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let set = self.orbit_by(x, |&y, g| g.apply(y));
        set.into_iter().collect()
    }

    /// Smallest set containing `seed` and closed under `act(·, generator)`.
    pub fn orbit_by<T: Clone + Ord>(&self, seed: T, act: impl Fn(&T, &Perm) -> T) -> BTreeSet<T> {
        let mut seen = BTreeSet::from([seed.clone()]);
        let mut stack = vec![seed];
        while let Some(t) = stack.pop() {
            for g in &self.generators {
                let u = act(&t, g);
                if seen.insert(u.clone()) {
                    stack.push(u);
                }
            }
        }
        seen
    }

    /// Partition of the points into orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Subgroup fixing every point in `points`, built from the element list.
    pub fn stabilizer_of(&self, points: &[usize]) -> Result<PermGroup> {
        let elems: Vec<Perm> = self
            .elements()?
            .iter()
            .filter(|g| points.iter().all(|&x| g.fixes(x)))
            .cloned()
            .collect();
        let group = PermGroup::with_cap(self.degree, elems.clone(), self.cap)?;
        let mut sorted = elems;
        sorted.sort();
        let _ = group.elements.set(Ok(sorted));
        Ok(group)
    }

    pub fn stabilizer(&self, x: usize) -> Result<PermGroup> {
        if x >= self.degree {
            return Err(Error::invalid(format!("point {x} outside degree {}", self.degree)));
        }
        self.stabilizer_of(&[x])
    }

    /// Subgroup of elements satisfying `keep`.
    pub fn subgroup_where(&self, keep: impl Fn(&Perm) -> bool) -> Result<PermGroup> {
        let elems: Vec<Perm> = self.elements()?.iter().filter(|g| keep(g)).cloned().collect();
        let group = PermGroup::with_cap(self.degree, elems.clone(), self.cap)?;
        let _ = group.elements.set(Ok(elems));
        Ok(group)
    }

    /// Closure check by full product table; intended for small groups.
    pub fn verify_closure(&self) -> Result<bool> {
        let elems = self.elements()?;
        let set: HashSet<&Perm> = elems.iter().collect();
        Ok(elems.iter().all(|a| {
            set.contains(&a.inverse()) && elems.iter().all(|b| set.contains(&a.then(b)))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_action_product() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        let ab = a.then(&b);
        assert_eq!(ab.apply(0), b.apply(a.apply(0)));
        assert_eq!(ab.to_string(), "(0 2 1)");
        assert!(ab.then(&ab.inverse()).is_identity());
        assert_eq!(ab.order(), 3);
        assert_eq!(ab.pow(-1), ab.inverse());
    }

    #[test]
    fn symmetric_orders() {
        assert_eq!(PermGroup::symmetric(4).order().unwrap(), 24);
        assert_eq!(PermGroup::symmetric(1).order().unwrap(), 1);
        assert_eq!(PermGroup::cyclic(5).order().unwrap(), 5);
        assert!(PermGroup::symmetric(4).verify_closure().unwrap());
    }

    #[test]
    fn orbit_stabilizer() {
        let g = PermGroup::symmetric(4);
        assert_eq!(g.orbit(2), vec![0, 1, 2, 3]);
        assert_eq!(g.stabilizer(0).unwrap().order().unwrap(), 6);
        let t = PermGroup::trivial(3);
        assert_eq!(t.orbit(1), vec![1]);
        assert_eq!(t.stabilizer(1).unwrap().order().unwrap(), 1);
    }

    #[test]
    fn cap_reported() {
        let g = PermGroup::with_cap(5, PermGroup::symmetric(5).generators().to_vec(), 10).unwrap();
        assert!(matches!(g.order(), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }
}
