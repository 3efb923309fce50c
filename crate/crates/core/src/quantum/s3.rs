//! Embedding of the 2-dimensional irreducible representation of `S3` into
//! its permutation representation on three points.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::rep::{max_abs, perm_matrix, CMatrix, UnitaryRep};
use crate::group::Perm;

pub const NAMES: [&str; 6] = ["e", "a1", "a2", "a3", "b1", "b2"];

/// `e, (12), (23), (13), (123), (132)` on points `0, 1, 2`.
pub fn elements() -> Vec<Perm> {
    let cyc: [&[&[u32]]; 6] = [&[], &[&[0, 1]], &[&[1, 2]], &[&[0, 2]], &[&[0, 1, 2]], &[&[0, 2, 1]]];
    cyc.iter().map(|c| Perm::from_cycles(3, c).expect("valid cycles")).collect()
}

fn omega() -> Complex64 {
    Complex64::from_polar(1.0, TAU / 3.0)
}

/// The six matrices of the 2-dimensional irreducible representation, in
/// the order of [`NAMES`].
pub fn delta() -> Vec<CMatrix> {
    let (w, wb) = (omega(), omega().conj());
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    [[o, z, z, o], [z, wb, w, z], [z, o, o, z], [z, w, wb, z], [w, z, z, wb], [wb, z, z, w]]
        .iter()
        .map(|m| DMatrix::from_row_slice(2, 2, m))
        .collect()
}

/// `Delta(g)` in the upper block, the trivial representation below.
pub fn u_quantum() -> Vec<CMatrix> {
    delta()
        .into_iter()
        .map(|d| {
            let mut m = CMatrix::zeros(3, 3);
            m.view_mut((0, 0), (2, 2)).copy_from(&d);
            m[(2, 2)] = Complex64::new(1.0, 0.0);
            m
        })
        .collect()
}

/// Transition matrix from the permutation basis to the quantum basis.
pub fn transition(alpha: f64, beta: f64) -> CMatrix {
    let (w, wb) = (omega(), omega().conj());
    let o = Complex64::new(1.0, 0.0);
    let eb = Complex64::from_polar(1.0, beta);
    let m = DMatrix::from_row_slice(3, 3, &[o, o, eb, w, wb, eb, wb, w, eb]);
    m * Complex64::from_polar(1.0 / 3f64.sqrt(), alpha)
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub alpha: f64,
    pub beta: f64,
    pub unitarity_error: f64,
    pub delta_homomorphism_error: f64,
    pub quantum_homomorphism_error: f64,
    /// Largest entry of `S U_q(g) S^-1 - rho(g)` against the natural action.
    pub conjugation_error: f64,
    /// Largest distance of a conjugated entry from `{0, 1}`.
    pub integrality_error: f64,
    /// `S U_q(g) S^-1` rounded to 0/1, per element.
    pub permutation_matrices: Vec<(String, Vec<Vec<u8>>)>,
}

impl EmbeddingReport {
    pub fn passes(&self, tol: f64) -> bool {
        [
            self.unitarity_error,
            self.delta_homomorphism_error,
            self.quantum_homomorphism_error,
            self.conjugation_error,
            self.integrality_error,
        ]
        .iter()
        .all(|&e| e < tol)
    }
}

/// Conjugates every `U_q(g)` by `S(alpha, beta)` and compares with the
/// permutation representation of `S3` on three points.
pub fn embedding_check(alpha: f64, beta: f64) -> EmbeddingReport {
    let els = elements();
    let s = transition(alpha, beta);
    let s_inv = s.adjoint();
    let unitarity = max_abs(&(&s * &s_inv - CMatrix::identity(3, 3)));
    let d = UnitaryRep { elements: els.clone(), matrices: delta() };
    let uq = UnitaryRep { elements: els.clone(), matrices: u_quantum() };
    let mut conj_err = 0.0f64;
    let mut int_err = 0.0f64;
    let mut mats = Vec::new();
    for ((g, u), name) in els.iter().zip(&uq.matrices).zip(NAMES) {
        let p = &s * u * &s_inv;
        conj_err = conj_err.max(max_abs(&(&p - perm_matrix(g))));
        int_err = int_err.max(p.iter().map(|z| z.norm().min((z - 1.0).norm())).fold(0.0, f64::max));
        let rounded = (0..3).map(|i| (0..3).map(|j| (p[(i, j)].re.round() as i64).clamp(0, 1) as u8).collect()).collect();
        mats.push((name.to_string(), rounded));
    }
    EmbeddingReport {
        alpha,
        beta,
        unitarity_error: unitarity,
        delta_homomorphism_error: d.homomorphism_error(),
        quantum_homomorphism_error: uq.homomorphism_error(),
        conjugation_error: conj_err,
        integrality_error: int_err,
        permutation_matrices: mats,
    }
}
