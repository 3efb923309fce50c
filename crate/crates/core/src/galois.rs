//! Multivariate polynomials over prime fields and the Lagrange
//! interpolation of relations into zero sets.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::relation::{Domain, Point, Relation};

/// Polynomial in `F_p[x_1..x_k]` reduced by `x^p = x`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldPoly {
    p: u32,
    vars: Vec<Point>,
    terms: BTreeMap<Vec<u32>, u32>,
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn reduce_exponent(e: u32, p: u32) -> u32 {
    if e < p {
        e
    } else {
        (e - 1) % (p - 1) + 1
    }
}

impl FieldPoly {
    pub fn zero(p: u32, vars: &[Point]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(FieldPoly { p, vars: vars.to_vec(), terms: BTreeMap::new() })
    }

    pub fn constant(p: u32, vars: &[Point], c: i64) -> Result<Self> {
        let mut f = Self::zero(p, vars)?;
        let c = c.rem_euclid(p as i64) as u32;
        if c != 0 {
            f.terms.insert(vec![0; vars.len()], c);
        }
        Ok(f)
    }

    /// The coordinate function of the variable at `position`.
    pub fn variable(p: u32, vars: &[Point], position: usize) -> Result<Self> {
        if position >= vars.len() {
            return Err(Error::invalid(format!("no variable at position {position}")));
        }
        let mut f = Self::zero(p, vars)?;
        let mut e = vec![0; vars.len()];
        e[position] = 1;
        f.terms.insert(e, 1);
        Ok(f)
    }

    /// `e_k` of the variables at `positions`.
    pub fn elementary_symmetric(p: u32, vars: &[Point], positions: &[usize], k: usize) -> Result<Self> {
        if k > positions.len() {
            return Err(Error::invalid(format!("e_{k} of {} variables", positions.len())));
        }
        if let Some(&bad) = positions.iter().find(|&&i| i >= vars.len()) {
            return Err(Error::invalid(format!("no variable at position {bad}")));
        }
        let mut f = Self::zero(p, vars)?;
        let n = positions.len();
        let mut comb: Vec<usize> = (0..k).collect();
        loop {
            let mut e = vec![0; vars.len()];
            for &c in &comb {
                e[positions[c]] = 1;
            }
            f.add_term(e, 1);
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(f);
                }
                i -= 1;
                if comb[i] < n - k + i {
                    comb[i] += 1;
                    for j in i + 1..k {
                        comb[j] = comb[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn variables(&self) -> &[Point] {
        &self.vars
    }

    /// Exponent tuples (reduced) with their coefficients in `1..p`.
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, u32> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: u32) {
        let p = self.p;
        let slot = self.terms.entry(exps).or_insert(0);
        *slot = (*slot + c) % p;
        if *slot == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    fn check_ring(&self, other: &FieldPoly) {
        assert!(
            self.p == other.p && self.vars == other.vars,
            "polynomials live in different rings"
        );
    }

    pub fn eval(&self, tuple: &[u32]) -> Result<u32> {
        if tuple.len() != self.vars.len() {
            return Err(Error::invalid(format!(
                "{} values for {} variables",
                tuple.len(),
                self.vars.len()
            )));
        }
        if let Some(position) = tuple.iter().position(|&v| v >= self.p) {
            return Err(Error::OutOfRadix { position, value: tuple[position], radix: self.p });
        }
        let p = self.p as u64;
        let mut acc = 0u64;
        for (exps, &c) in &self.terms {
            let mut m = c as u64;
            for (&x, &e) in tuple.iter().zip(exps) {
                m = m * pow_mod(x as u64, e as u64, p) % p;
            }
            acc = (acc + m) % p;
        }
        Ok(acc as u32)
    }

    /// Values on the whole hypercube in little-endian index order.
    pub fn value_table(&self) -> Vec<u32> {
        let k = self.vars.len();
        let size = (self.p as usize).pow(k as u32);
        let mut tuple = vec![0u32; k];
        let mut out = Vec::with_capacity(size);
        for _ in 0..size {
            out.push(self.eval(&tuple).expect("in range"));
            for v in tuple.iter_mut() {
                *v += 1;
                if *v < self.p {
                    break;
                }
                *v = 0;
            }
        }
        out
    }

    /// Equality as functions on `F_p^k`.
    pub fn same_function(&self, other: &FieldPoly) -> bool {
        self.check_ring(other);
        self.value_table() == other.value_table()
    }

    /// Relation cut out by `f = 0`.
    pub fn zero_set(&self) -> Result<Relation> {
        let domain = Domain::new(self.vars.clone(), vec![self.p; self.vars.len()])?;
        let values = self.value_table();
        Ok(Relation::from_fn(domain.clone(), |t| {
            values[domain.index_of(t).expect("in range")] == 0
        }))
    }

    fn degree_of(exps: &[u32]) -> u32 {
        exps.iter().sum()
    }

    /// Graded order, ties broken by comparing exponents from the highest
    /// variable down.
    fn render_cmp(a: &[u32], b: &[u32]) -> Ordering {
        Self::degree_of(b)
            .cmp(&Self::degree_of(a))
            .then_with(|| b.iter().rev().cmp(a.iter().rev()))
    }

    fn sorted_terms(&self) -> Vec<(&Vec<u32>, u32)> {
        let mut ts: Vec<_> = self.terms.iter().map(|(e, &c)| (e, c)).collect();
        ts.sort_by(|x, y| Self::render_cmp(x.0, y.0));
        ts
    }
}

/// Lagrange interpolation: the returned polynomial is 0 on members of `r`
/// and 1 elsewhere.
pub fn interpolate(r: &Relation, p: u32) -> Result<FieldPoly> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let d = r.domain();
    if d.radices().iter().any(|&q| q != p) {
        return Err(Error::Domain(format!("radices {:?} do not all equal {p}", d.radices())));
    }
    let k = d.len();
    let pu = p as usize;
    let size = d.size();
    let mut table: Vec<u64> = (0..size).map(|i| if r.contains_index(i) { 0 } else { 1 }).collect();

    // 1-D transform: value at a -> coefficient of x^e
    let pm = p as u64;
    // C(p-1, e) = (-1)^e mod p
    let binom: Vec<u64> = (0..pu).map(|e| if e % 2 == 0 { 1 } else { pm - 1 }).collect();
    let mut matrix = vec![vec![0u64; pu]; pu];
    for (e, row) in matrix.iter_mut().enumerate() {
        for (a, m) in row.iter_mut().enumerate() {
            let neg_a = (pm - a as u64 % pm) % pm;
            let t = binom[e] * pow_mod(neg_a, (pu - 1 - e) as u64, pm) % pm;
            let base = if e == 0 { 1 } else { 0 };
            *m = (base + pm - t) % pm;
        }
    }

    let mut stride = 1usize;
    let mut scratch = vec![0u64; pu];
    for _ in 0..k {
        for block in (0..size).step_by(stride * pu) {
            for off in 0..stride {
                let base = block + off;
                for (e, s) in scratch.iter_mut().enumerate() {
                    *s = (0..pu).map(|a| matrix[e][a] * table[base + a * stride]).sum::<u64>() % pm;
                }
                for (e, &s) in scratch.iter().enumerate() {
                    table[base + e * stride] = s;
                }
            }
        }
        stride *= pu;
    }

    let mut f = FieldPoly::zero(p, d.points())?;
    for (i, &c) in table.iter().enumerate() {
        if c != 0 {
            f.terms.insert(d.tuple_of(i), c as u32);
        }
    }
    Ok(f)
}

impl Add for &FieldPoly {
    type Output = FieldPoly;
    fn add(self, rhs: &FieldPoly) -> FieldPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Neg for &FieldPoly {
    type Output = FieldPoly;
    fn neg(self) -> FieldPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.p - *c;
        }
        out
    }
}

impl Sub for &FieldPoly {
    type Output = FieldPoly;
    fn sub(self, rhs: &FieldPoly) -> FieldPoly {
        self + &(-rhs)
    }
}

impl Mul for &FieldPoly {
    type Output = FieldPoly;
    fn mul(self, rhs: &FieldPoly) -> FieldPoly {
        self.check_ring(rhs);
        let mut acc: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        let p = self.p as u64;
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &rhs.terms {
                let e: Vec<u32> =
                    ea.iter().zip(eb).map(|(&x, &y)| reduce_exponent(x + y, self.p)).collect();
                let slot = acc.entry(e).or_insert(0);
                *slot = (*slot + ca as u64 * cb as u64) % p;
            }
        }
        FieldPoly {
            p: self.p,
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (e, c as u32)).collect(),
        }
    }
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exps, c) in self.sorted_terms() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let constant = exps.iter().all(|&e| e == 0);
            if c != 1 || constant {
                write!(f, "{c}")?;
            }
            for (v, &e) in self.vars.iter().zip(exps) {
                match e {
                    0 => {}
                    1 => f.write_str(&v.label)?,
                    _ => write!(f, "{}^{}", v.label, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldPoly(GF({}): {})", self.p, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pqrs() -> Domain {
        Domain::uniform(&["p", "q", "r", "s"], 2).unwrap()
    }

    #[test]
    fn rule_polys_render() {
        let r30 = Relation::from_bits(pqrs(), "1001010101101010").unwrap();
        assert_eq!(interpolate(&r30, 2).unwrap().to_string(), "qr+s+r+q+p");
        let r110 = Relation::from_bits(pqrs(), "1100000100111110").unwrap();
        assert_eq!(interpolate(&r110, 2).unwrap().to_string(), "pqr+qr+s+r+q");
        let face = Relation::from_bits(pqrs().select(&[0, 2, 3]), "10010110").unwrap();
        assert_eq!(interpolate(&face, 2).unwrap().to_string(), "s+r+p");
    }

    #[test]
    fn empty_is_one() {
        let e = Relation::empty(pqrs());
        assert_eq!(interpolate(&e, 2).unwrap().to_string(), "1");
        assert!(interpolate(&Relation::trivial(pqrs()), 2).unwrap().is_zero());
    }

    #[test]
    fn ternary_zero_set() {
        let d = Domain::uniform(&["a", "b"], 3).unwrap();
        let r = Relation::from_fn(d, |t| (t[0] + 2 * t[1]) % 3 == 1);
        let f = interpolate(&r, 3).unwrap();
        assert_eq!(f.zero_set().unwrap(), r);
        assert!(f.terms().keys().all(|e| e.iter().all(|&x| x < 3)));
    }

    #[test]
    fn rejects_bad_field() {
        let r = Relation::trivial(pqrs());
        assert!(interpolate(&r, 4).is_err());
        assert!(interpolate(&r, 3).is_err());
    }

    #[test]
    fn symmetric_counts() {
        let vars: Vec<Point> = (1..=8).map(|i| Point::new(i, format!("x{i}"))).collect();
        let all: Vec<usize> = (0..8).collect();
        assert_eq!(FieldPoly::elementary_symmetric(2, &vars, &all, 8).unwrap().terms().len(), 1);
        assert_eq!(FieldPoly::elementary_symmetric(2, &vars, &all, 3).unwrap().terms().len(), 56);
        assert_eq!(FieldPoly::elementary_symmetric(2, &vars, &all, 0).unwrap().to_string(), "1");
        let e2 = FieldPoly::elementary_symmetric(2, &vars[..3], &[0, 1, 2], 2).unwrap();
        assert_eq!(e2.to_string(), "x2x3+x1x3+x1x2");
    }

    #[test]
    fn frobenius_reduction() {
        let vars = vec![Point::new(0, "x")];
        let x = FieldPoly::variable(3, &vars, 0).unwrap();
        let x3 = &(&x * &x) * &x;
        assert_eq!(x3, x);
        assert_eq!((&x * &x).to_string(), "x^2");
    }

    #[test]
    fn eval_rule_105() {
        let d = pqrs();
        let vars = d.points();
        let mut f = FieldPoly::constant(2, vars, 1).unwrap();
        for i in 0..4 {
            f = &f + &FieldPoly::variable(2, vars, i).unwrap();
        }
        assert_eq!(f.eval(&[1, 1, 1, 1]).unwrap(), 1);
        assert_eq!(f.eval(&[1, 1, 1, 0]).unwrap(), 0);
        let r105 = Relation::from_fn(d.clone(), |t| t[3] == (105 >> (4 * t[0] + 2 * t[1] + t[2])) & 1);
        assert_eq!(interpolate(&r105, 2).unwrap(), f);
        assert_eq!(FieldPoly::zero(2, vars).unwrap().eval(&[1, 0, 1, 0]).unwrap(), 0);
    }
}
