use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Perm, PermGroup};

pub type CMatrix = DMatrix<Complex64>;

pub const TOLERANCE: f64 = 1e-10;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A matrix per group element, indexed like `elements`.
#[derive(Clone, Debug)]
pub struct UnitaryRep {
    pub elements: Vec<Perm>,
    pub matrices: Vec<CMatrix>,
}

impl UnitaryRep {
    pub fn dim(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.nrows())
    }

    pub fn matrix(&self, g: &Perm) -> Option<&CMatrix> {
        self.elements.iter().position(|h| h == g).map(|i| &self.matrices[i])
    }

    pub fn character(&self) -> Vec<Complex64> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// Largest entry of `U U^dagger - I` over all matrices.
    pub fn unitarity_error(&self) -> f64 {
        self.matrices
            .iter()
            .map(|m| max_abs(&(m * m.adjoint() - CMatrix::identity(m.nrows(), m.ncols()))))
            .fold(0.0, f64::max)
    }

    /// Largest entry of `rho(g) rho(h) - rho(g then h)`.
    pub fn homomorphism_error(&self) -> f64 {
        let index: HashMap<&Perm, usize> = self.elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut worst = 0.0f64;
        for (i, g) in self.elements.iter().enumerate() {
            for (j, h) in self.elements.iter().enumerate() {
                let k = index[&g.then(h)];
                worst = worst.max(max_abs(&(&self.matrices[i] * &self.matrices[j] - &self.matrices[k])));
            }
        }
        worst
    }
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `rho(g)_ij = [omega_i g = omega_j]` for an action given as one
/// permutation of `0..n` per element.
pub fn perm_matrix(p: &Perm) -> CMatrix {
    let n = p.degree();
    CMatrix::from_fn(n, n, |i, j| if p.apply(i) == j { c(1.0) } else { c(0.0) })
}

/// Permutation representation of a group acting on its points.
pub fn perm_representation(group: &PermGroup) -> Result<UnitaryRep> {
    let elements = group.elements()?.to_vec();
    let matrices = elements.iter().map(perm_matrix).collect();
    Ok(UnitaryRep { elements, matrices })
}

/// Action of `group` on the right cosets `H g` of `subgroup`, cosets
/// numbered by first appearance in element order. Returns the image
/// permutation of every element.
pub fn coset_action(group: &PermGroup, subgroup: &PermGroup) -> Result<Vec<Perm>> {
    let elements = group.elements()?;
    let h = subgroup.elements()?;
    if let Some(x) = h.iter().find(|x| !elements.contains(x)) {
        return Err(Error::invalid(format!("{x} is not in the group")));
    }
    let key = |g: &Perm| h.iter().map(|x| x.then(g)).min().unwrap();
    let mut cosets: Vec<Perm> = Vec::new();
    let mut index: HashMap<Perm, usize> = HashMap::new();
    for g in elements {
        let k = key(g);
        if !index.contains_key(&k) {
            index.insert(k.clone(), cosets.len());
            cosets.push(g.clone());
        }
    }
    elements
        .iter()
        .map(|g| Perm::from_images(cosets.iter().map(|r| index[&key(&r.then(g))] as u32).collect()))
        .collect()
}

pub fn coset_representation(group: &PermGroup, subgroup: &PermGroup) -> Result<UnitaryRep> {
    let elements = group.elements()?.to_vec();
    let matrices = coset_action(group, subgroup)?.iter().map(perm_matrix).collect();
    Ok(UnitaryRep { elements, matrices })
}

/// Right-multiplication action of a group on itself.
pub fn regular_representation(group: &PermGroup) -> Result<UnitaryRep> {
    coset_representation(group, &PermGroup::trivial(group.degree()))
}

/// Conjugacy classes as element indices; the identity class first, the
/// rest in order of their first element.
pub fn conjugacy_classes(group: &PermGroup) -> Result<Vec<Vec<usize>>> {
    let elements = group.elements()?;
    let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> =
            elements.iter().map(|g| index[&g.inverse().then(a).then(g)]).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    Ok(classes)
}

#[derive(Clone, Debug)]
pub struct CharTable {
    pub name: String,
    pub class_names: Vec<String>,
    pub class_sizes: Vec<usize>,
    pub rows: Vec<Vec<Complex64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharTableReport {
    pub group_order: usize,
    pub dimensions: Vec<f64>,
    pub sum_of_squares: f64,
    pub orthogonality_error: f64,
    pub orthogonal: bool,
    pub squares_sum_to_order: bool,
    pub dimensions_divide_order: bool,
}

impl CharTable {
    pub fn trivial() -> Self {
        CharTable { name: "C1".into(), class_names: vec!["e".into()], class_sizes: vec![1], rows: vec![vec![c(1.0)]] }
    }

    /// Classes `e`, transpositions, 3-cycles.
    pub fn s3() -> Self {
        CharTable {
            name: "S3".into(),
            class_names: vec!["e".into(), "(12)".into(), "(123)".into()],
            class_sizes: vec![1, 3, 2],
            rows: vec![
                vec![c(1.0), c(1.0), c(1.0)],
                vec![c(1.0), c(-1.0), c(1.0)],
                vec![c(2.0), c(0.0), c(-1.0)],
            ],
        }
    }

    /// `chi_j(g^k) = i^(jk)`.
    pub fn c4() -> Self {
        let i = Complex64::i();
        CharTable {
            name: "C4".into(),
            class_names: (0..4).map(|k| format!("g^{k}")).collect(),
            class_sizes: vec![1; 4],
            rows: (0..4).map(|j| (0..4).map(|k| i.powu(j * k)).collect()).collect(),
        }
    }

    pub fn group_order(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    /// `<a, b> = (1/|G|) sum_c |C_c| a(c) conj(b(c))`.
    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        let s: Complex64 =
            self.class_sizes.iter().zip(a.iter().zip(b)).map(|(&n, (x, y))| c(n as f64) * x * y.conj()).sum();
        s / c(self.group_order() as f64)
    }

    /// Multiplicity of every irreducible in a class function.
    pub fn decompose(&self, class_values: &[Complex64]) -> Vec<Complex64> {
        self.rows.iter().map(|r| self.inner(class_values, r)).collect()
    }

    pub fn check(&self) -> CharTableReport {
        let order = self.group_order();
        let mut err = 0.0f64;
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                err = err.max((self.inner(a, b) - c(want)).norm());
            }
        }
        let dims: Vec<f64> = self.rows.iter().map(|r| r[0].re).collect();
        let sum_sq: f64 = dims.iter().map(|d| d * d).sum();
        let divide = dims.iter().all(|&d| {
            let n = d.round() as usize;
            (d - n as f64).abs() < TOLERANCE && n > 0 && order.is_multiple_of(n)
        });
        CharTableReport {
            group_order: order,
            dimensions: dims,
            sum_of_squares: sum_sq,
            orthogonality_error: err,
            orthogonal: err < TOLERANCE,
            squares_sum_to_order: (sum_sq - order as f64).abs() < TOLERANCE,
            dimensions_divide_order: divide,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_rep_of_s3() {
        let g = PermGroup::symmetric(3);
        let reg = regular_representation(&g).unwrap();
        assert_eq!(reg.dim(), 6);
        let chi = reg.character();
        for (e, x) in reg.elements.iter().zip(&chi) {
            let want = if e.is_identity() { 6.0 } else { 0.0 };
            assert!((x - c(want)).norm() < TOLERANCE);
        }
        assert!(reg.homomorphism_error() < TOLERANCE);
        assert!(reg.unitarity_error() < TOLERANCE);
    }

    #[test]
    fn coset_rep_matches_natural_character() {
        let g = PermGroup::symmetric(3);
        let h = g.stabilizer(0).unwrap();
        let cos = coset_representation(&g, &h).unwrap();
        let nat = perm_representation(&g).unwrap();
        assert!(cos.homomorphism_error() < TOLERANCE);
        for (a, b) in cos.character().iter().zip(nat.character()) {
            assert!((a - b).norm() < TOLERANCE);
        }
    }

    #[test]
    fn class_structure() {
        let classes = conjugacy_classes(&PermGroup::symmetric(3)).unwrap();
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        assert_eq!(sizes[0], 1);
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn builtin_tables() {
        for t in [CharTable::trivial(), CharTable::s3(), CharTable::c4()] {
            let r = t.check();
            assert!(r.orthogonal && r.squares_sum_to_order && r.dimensions_divide_order, "{}", t.name);
        }
    }
}
