//! Bernoulli random walk on a 1-dimensional lattice: exact and Gaussian
//! path probabilities, conditional probabilities through an intermediate
//! point, and the divisibility order on history points.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Probability of one class of histories with `n_right` right steps and
/// `n_left` left steps: `C(n, n_right) p^n_right (1 - p)^n_left`.
pub fn path_prob(n_right: u64, n_left: u64, p_right: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_right) {
        return Err(Error::invalid(format!("probability {p_right} outside [0, 1]")));
    }
    let p_left = 1.0 - p_right;
    let pow = |p: f64, n: u64| if n == 0 { 0.0 } else { n as f64 * p.ln() };
    if (p_right == 0.0 && n_right > 0) || (p_left == 0.0 && n_left > 0) {
        return Ok(0.0);
    }
    let n = n_right + n_left;
    let ln_c = ln_gamma(n as f64 + 1.0) - ln_gamma(n_right as f64 + 1.0) - ln_gamma(n_left as f64 + 1.0);
    Ok((ln_c + pow(p_right, n_right) + pow(p_left, n_left)).exp())
}

/// `P(x, t)` of reaching `x` after `t` steps with velocity `v = p_right - p_left`.
pub fn walk_prob(x: i64, t: u64, v: f64) -> Result<f64> {
    if x.unsigned_abs() > t || (t as i64 - x) % 2 != 0 {
        return Ok(0.0);
    }
    path_prob((t as i64 + x) as u64 / 2, (t as i64 - x) as u64 / 2, (1.0 + v) / 2.0)
}

fn check_point(x: i64, t: i64, what: &str) -> Result<()> {
    if t < 0 || x.abs() > t {
        return Err(Error::invalid(format!("{what} ({x}, {t}) outside the light cone")));
    }
    if (t - x).rem_euclid(2) != 0 {
        return Err(Error::invalid(format!("{what} ({x}, {t}) has inconsistent parity")));
    }
    Ok(())
}

fn c(n: i64, k: i64) -> BigInt {
    binomial(BigInt::from(n), BigInt::from(k))
}

/// Probability that a walk from `(0, 0)` to `(X, T)` passes `(x, t)`:
/// `C(t, (t+x)/2) C(T-t, (T-t+X-x)/2) / C(T, (T+X)/2)`, exactly.
pub fn exact_conditional(x: i64, t: i64, big_x: i64, big_t: i64) -> Result<BigRational> {
    check_point(x, t, "intermediate point")?;
    check_point(big_x, big_t, "endpoint")?;
    check_point(big_x - x, big_t - t, "remaining displacement")?;
    let num = c(t, (t + x) / 2) * c(big_t - t, (big_t - t + big_x - x) / 2);
    Ok(BigRational::new(num, c(big_t, (big_t + big_x) / 2)))
}

fn check_velocity(v: f64) -> Result<()> {
    if !(v.abs() < 1.0) {
        return Err(Error::invalid(format!("|v| = {} must be below 1", v.abs())));
    }
    Ok(())
}

/// Gaussian approximation of `P(x, t)`. It already carries the lattice
/// factor 2 of walks confined to `x = t mod 2`.
pub fn gauss_density(x: f64, t: f64, v: f64) -> Result<f64> {
    check_velocity(v)?;
    if !(t > 0.0) {
        return Err(Error::invalid("t must be positive"));
    }
    let s = 1.0 - v * v;
    let z = (x - v * t) / s.sqrt();
    Ok((2.0 / (PI * t)).sqrt() / s.sqrt() * (-z * z / (2.0 * t)).exp())
}

/// Gaussian approximation of [`exact_conditional`].
pub fn gauss_conditional(x: f64, t: f64, big_x: f64, big_t: f64, v: f64) -> Result<f64> {
    check_velocity(v)?;
    if !(0.0 < t && t < big_t) {
        return Err(Error::invalid("need 0 < t < T"));
    }
    let s = 1.0 - v * v;
    let d = s * t * big_t * (big_t - t);
    let e = big_x * t - x * big_t;
    Ok(big_t / (PI / 2.0 * d).sqrt() * (-e * e / (2.0 * d)).exp())
}

/// Lattice points `x = t mod 2` in `[-t, t]`.
pub fn lattice(t: i64) -> impl Iterator<Item = i64> {
    (-t..=t).step_by(2)
}

/// Maximiser of [`gauss_conditional`] over lattice points reachable from
/// both ends.
pub fn gauss_argmax(t: i64, big_x: i64, big_t: i64, v: f64) -> Result<i64> {
    let mut best: Option<(f64, i64)> = None;
    for x in lattice(t).filter(|x| (big_x - x).abs() <= big_t - t) {
        let p = gauss_conditional(x as f64, t as f64, big_x as f64, big_t as f64, v)?;
        if best.is_none_or(|(b, _)| p > b) {
            best = Some((p, x));
        }
    }
    best.map(|b| b.1).ok_or_else(|| Error::invalid("no reachable lattice point"))
}

/// All maximisers of [`exact_conditional`] at time `t`.
pub fn exact_argmax(t: i64, big_x: i64, big_t: i64) -> Result<Vec<i64>> {
    let vals: Vec<(i64, BigRational)> = lattice(t)
        .filter(|x| (big_x - x).abs() <= big_t - t)
        .map(|x| exact_conditional(x, t, big_x, big_t).map(|p| (x, p)))
        .collect::<Result<_>>()?;
    let max = vals.iter().map(|(_, p)| p).max().cloned().ok_or_else(|| Error::invalid("no reachable lattice point"))?;
    Ok(vals.into_iter().filter(|(_, p)| *p == max).map(|(x, _)| x).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareRow {
    pub x: i64,
    pub exact: f64,
    pub approx: f64,
}

/// Exact `P(x, t)` next to its Gaussian approximation on the lattice.
pub fn compare(t: u64, v: f64) -> Result<Vec<CompareRow>> {
    check_velocity(v)?;
    lattice(t as i64)
        .map(|x| Ok(CompareRow { x, exact: walk_prob(x, t, v)?, approx: gauss_density(x as f64, t as f64, v)? }))
        .collect()
}

pub fn compare_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from("x,exact,approx\n");
    for r in rows {
        writeln!(out, "{},{:.12e},{:.12e}", r.x, r.exact, r.approx).unwrap();
    }
    out
}

/// Counts of each step kind; the time is their sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HistoryPoint {
    pub counts: Vec<u64>,
}

impl HistoryPoint {
    pub fn new(counts: Vec<u64>) -> Self {
        HistoryPoint { counts }
    }

    pub fn time(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cone {
    Past,
    Future,
    Coincident,
    Elsewhere,
}

/// Position of `p` relative to `q`: `Past` when `p` divides `q`
/// componentwise, `Future` when `q` divides `p`.
pub fn cone(p: &HistoryPoint, q: &HistoryPoint) -> Result<Cone> {
    if p.counts.len() != q.counts.len() {
        return Err(Error::invalid("history points of different dimension"));
    }
    let le = p.counts.iter().zip(&q.counts).all(|(a, b)| a <= b);
    let ge = p.counts.iter().zip(&q.counts).all(|(a, b)| a >= b);
    Ok(match (le, ge) {
        (true, true) => Cone::Coincident,
        (true, false) => Cone::Past,
        (false, true) => Cone::Future,
        _ => Cone::Elsewhere,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn path_probabilities() {
        assert!((path_prob(1, 1, 0.5).unwrap() - 0.5).abs() < 1e-12);
        assert!((path_prob(7, 0, 1.0).unwrap() - 1.0).abs() < 1e-12);
        let s: f64 = (0..=10).map(|k| path_prob(k, 10 - k, 0.3).unwrap()).sum();
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_basics() {
        assert!(exact_conditional(6, 10, 6, 10).unwrap().is_one());
        let total: BigRational = lattice(5).filter(|x| (4 - x).abs() <= 7).map(|x| exact_conditional(x, 5, 4, 12).unwrap()).sum();
        assert!(total.is_one());
        assert!(exact_conditional(1, 4, 0, 10).is_err());
        assert!(gauss_density(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn cones() {
        let h = |v: &[u64]| HistoryPoint::new(v.to_vec());
        assert_eq!(cone(&h(&[1, 0]), &h(&[2, 1])).unwrap(), Cone::Past);
        assert_eq!(cone(&h(&[2, 1]), &h(&[1, 0])).unwrap(), Cone::Future);
        assert_eq!(cone(&h(&[2, 0]), &h(&[0, 2])).unwrap(), Cone::Elsewhere);
        assert_eq!(cone(&h(&[3, 3]), &h(&[3, 3])).unwrap(), Cone::Coincident);
    }
}
