use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer polynomial in one or more root-of-unity symbols.
#[derive(Clone, PartialEq, Eq)]
pub struct AmplitudePoly {
    symbols: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl AmplitudePoly {
    pub fn zero(symbols: &[&str]) -> Self {
        AmplitudePoly { symbols: symbols.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn one(symbols: &[&str]) -> Self {
        Self::monomial(symbols, vec![0; symbols.len()], BigInt::one())
    }

    pub fn monomial(symbols: &[&str], exps: Vec<u32>, coeff: BigInt) -> Self {
        let mut p = Self::zero(symbols);
        p.add_term(exps, coeff);
        p
    }

    /// Univariate polynomial from coefficients, lowest degree first.
    pub fn from_coeffs(symbol: &str, coeffs: &[i64]) -> Self {
        let mut p = Self::zero(&[symbol]);
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(vec![e as u32], BigInt::from(c));
        }
        p
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: BigInt) {
        assert_eq!(exps.len(), self.symbols.len(), "exponent arity");
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry(exps).or_default();
        *e += coeff;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &AmplitudePoly) -> AmplitudePoly {
        assert_eq!(self.symbols, other.symbols, "symbol mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Highest exponent of the first symbol.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0]).max()
    }

    /// Dense coefficients of a univariate polynomial, lowest degree first.
    pub fn dense(&self) -> Result<Vec<BigInt>> {
        if self.symbols.len() != 1 {
            return Err(Error::invalid("dense form needs a single symbol"));
        }
        let mut out = vec![BigInt::zero(); self.degree().map_or(0, |d| d as usize + 1)];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        Ok(out)
    }

    /// Value with every symbol set to 1.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            da.cmp(&db).then_with(|| b.0.cmp(a.0))
        });
        t
    }
}

impl fmt::Display for AmplitudePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.sorted_terms().into_iter().enumerate() {
            let mono: String = exps
                .iter()
                .zip(&self.symbols)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, s)| if e == 1 { s.clone() } else { format!("{s}^{e}") })
                .collect();
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let a = c.abs();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AmplitudePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Sum over all `{left, stay, right}` paths from `0` to `x` in `t` steps of
/// `w^(number of moves)`, by the trinomial formula.
pub fn free_amplitude(x: i64, t: u32) -> Result<AmplitudePoly> {
    if x.unsigned_abs() > t as u64 {
        return Err(Error::invalid(format!("|x| = {} exceeds t = {t}", x.abs())));
    }
    let mut p = AmplitudePoly::zero(&["w"]);
    let mut tau = x.unsigned_abs();
    while tau <= t as u64 {
        let right = (tau as i64 + x) as u64 / 2;
        let c = binomial(BigInt::from(tau), BigInt::from(right)) * binomial(BigInt::from(t), BigInt::from(tau));
        p.add_term(vec![tau as u32], c);
        tau += 2;
    }
    Ok(p)
}

pub const ORACLE_MAX_STEPS: u32 = 12;

/// Amplitudes at every endpoint by enumerating all `3^t` step sequences.
pub fn path_oracle_all(t: u32) -> Result<BTreeMap<i64, AmplitudePoly>> {
    if t > ORACLE_MAX_STEPS {
        return Err(Error::CapExceeded {
            what: "path enumeration steps",
            requested: t as u128,
            cap: ORACLE_MAX_STEPS as u128,
        });
    }
    let mut out: BTreeMap<i64, AmplitudePoly> = BTreeMap::new();
    for code in 0..3u64.pow(t) {
        let (mut c, mut x, mut moves) = (code, 0i64, 0u32);
        for _ in 0..t {
            match c % 3 {
                0 => {
                    x -= 1;
                    moves += 1
                }
                2 => {
                    x += 1;
                    moves += 1
                }
                _ => {}
            }
            c /= 3;
        }
        out.entry(x).or_insert_with(|| AmplitudePoly::zero(&["w"])).add_term(vec![moves], BigInt::one());
    }
    Ok(out)
}

pub fn path_oracle(x: i64, t: u32) -> Result<AmplitudePoly> {
    Ok(path_oracle_all(t)?.remove(&x).unwrap_or_else(|| AmplitudePoly::zero(&["w"])))
}

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder by a monic divisor.
pub(crate) fn divrem_monic(a: &[BigInt], d: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let dn = d.len() - 1;
    if r.len() <= dn {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dn];
    for i in (0..q.len()).rev() {
        let c = r[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            r[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

/// `Phi_d`, lowest degree first.
pub fn cyclotomic(d: u32) -> Vec<BigInt> {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut num = vec![BigInt::zero(); d as usize + 1];
    num[0] = -BigInt::one();
    num[d as usize] = BigInt::one();
    for e in 1..d {
        if d.is_multiple_of(e) {
            num = divrem_monic(&num, &cyclotomic(e)).0;
        }
    }
    num
}

/// Every `d <= bound` with `Phi_d` dividing the polynomial over the integers.
/// The default bound covers all `d` with `phi(d) <= deg`.
pub fn cyclotomic_factors(p: &AmplitudePoly, bound: Option<u32>) -> Result<Vec<u32>> {
    if p.is_zero() {
        return Err(Error::invalid("zero polynomial has every root"));
    }
    let dense = p.dense()?;
    let deg = dense.len() as u32 - 1;
    let bound = bound.unwrap_or((2 * deg * deg).max(2));
    Ok((1..=bound)
        .filter(|&d| {
            let phi = cyclotomic(d);
            phi.len() as u32 - 1 <= deg && divrem_monic(&dense, &phi).1.is_empty()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_amplitudes() {
        assert_eq!(free_amplitude(1, 3).unwrap().to_string(), "3w+3w^3");
        assert_eq!(free_amplitude(-1, 3).unwrap().to_string(), "3w+3w^3");
        assert_eq!(free_amplitude(0, 2).unwrap().to_string(), "1+2w^2");
        assert_eq!(free_amplitude(5, 5).unwrap().to_string(), "w^5");
        assert!(free_amplitude(4, 3).is_err());
    }

    #[test]
    fn oracle_agrees() {
        for t in 0..=6 {
            let all = path_oracle_all(t).unwrap();
            for x in -(t as i64)..=t as i64 {
                assert_eq!(all[&x], free_amplitude(x, t).unwrap());
            }
        }
        assert!(path_oracle(0, 13).is_err());
    }

    #[test]
    fn cyclotomics() {
        let phi = |d| cyclotomic(d).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(phi(1), "-1,1");
        assert_eq!(phi(4), "1,0,1");
        assert_eq!(phi(6), "1,-1,1");
        assert_eq!(phi(12), "1,0,-1,0,1");
        let a = free_amplitude(1, 3).unwrap();
        assert_eq!(cyclotomic_factors(&a, None).unwrap(), vec![4]);
        let b = AmplitudePoly::from_coeffs("w", &[-1, 0, 1]);
        assert_eq!(cyclotomic_factors(&b, None).unwrap(), vec![1, 2]);
    }
}
