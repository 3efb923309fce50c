use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{cyclotomic, divrem_monic, poly_mul, trim, AmplitudePoly};

/// Element of `Z[zeta_M]`, stored as a polynomial in `zeta` reduced modulo
/// `Phi_M` (coefficients lowest degree first, trailing zeros dropped).
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElement {
    modulus: u32,
    coeffs: Vec<BigInt>,
}

fn reduce(m: u32, mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut coeffs);
    divrem_monic(&coeffs, &cyclotomic(m)).1
}

impl CycloElement {
    pub fn zero(modulus: u32) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        CycloElement { modulus, coeffs: Vec::new() }
    }

    pub fn from_int(modulus: u32, n: impl Into<BigInt>) -> Self {
        Self::from_coeffs(modulus, vec![n.into()])
    }

    pub fn from_coeffs(modulus: u32, coeffs: Vec<BigInt>) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        CycloElement { modulus, coeffs: reduce(modulus, coeffs) }
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(modulus: u32, k: i64) -> Self {
        let e = k.rem_euclid(modulus as i64) as usize;
        let mut c = vec![BigInt::zero(); e + 1];
        c[e] = BigInt::one();
        Self::from_coeffs(modulus, c)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Complex conjugate: `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let m = self.modulus as usize;
        let mut c = vec![BigInt::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[(m - i % m) % m] += a;
        }
        Self::from_coeffs(self.modulus, c)
    }

    /// `|z|^2` as an element of the same ring.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    /// Value at `zeta = exp(2 pi i / M)`.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.modulus as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), std::f64::consts::TAU * i as f64 / m))
            .sum()
    }

    /// Univariate amplitude evaluated at `zeta^k`.
    pub fn eval(p: &AmplitudePoly, modulus: u32, k: i64) -> Self {
        let m = modulus as i64;
        let mut c = vec![BigInt::zero(); modulus as usize];
        for (e, a) in p.terms() {
            c[(e[0] as i64 * k).rem_euclid(m) as usize] += a;
        }
        Self::from_coeffs(modulus, c)
    }

    /// Amplitude in several symbols, symbol `j` set to `zeta^ks[j]`.
    pub fn eval_multi(p: &AmplitudePoly, modulus: u32, ks: &[i64]) -> Self {
        let m = modulus as i64;
        let mut c = vec![BigInt::zero(); modulus as usize];
        for (e, a) in p.terms() {
            let k: i64 = e.iter().zip(ks).map(|(&x, &k)| x as i64 * k).sum();
            c[k.rem_euclid(m) as usize] += a;
        }
        Self::from_coeffs(modulus, c)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "cyclotomic moduli differ");
    }
}

impl Add for &CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: &CycloElement) -> CycloElement {
        self.check(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n)
            .map(|i| {
                self.coeffs.get(i).cloned().unwrap_or_default() + rhs.coeffs.get(i).cloned().unwrap_or_default()
            })
            .collect();
        CycloElement::from_coeffs(self.modulus, c)
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement { modulus: self.modulus, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: &CycloElement) -> CycloElement {
        self + &(-rhs)
    }
}

impl Mul for &CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: &CycloElement) -> CycloElement {
        self.check(rhs);
        CycloElement::from_coeffs(self.modulus, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = AmplitudePoly::zero(&["z"]);
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(vec![i as u32], c.clone());
        }
        write!(f, "{p}")
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod Phi_{})", self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_integers() {
        let i = CycloElement::zeta_pow(4, 1);
        assert_eq!((&i * &i).as_integer(), Some(BigInt::from(-1)));
        let z = &CycloElement::from_int(4, 3) + &i;
        assert_eq!(z.norm_sq().as_integer(), Some(BigInt::from(10)));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = &(&CycloElement::from_int(3, 1) + &CycloElement::zeta_pow(3, 1)) + &CycloElement::zeta_pow(3, 2);
        assert!(s.is_zero());
        assert!((CycloElement::zeta_pow(6, 1).to_complex() - Complex64::from_polar(1.0, std::f64::consts::PI / 3.0)).norm() < 1e-12);
    }

    #[test]
    fn amplitude_vanishes_at_i() {
        let a = super::super::poly::free_amplitude(1, 3).unwrap();
        assert!(CycloElement::eval(&a, 4, 1).is_zero());
        assert!(!CycloElement::eval(&a, 8, 1).is_zero());
    }
}
