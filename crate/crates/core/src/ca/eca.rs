//! Elementary cellular automata: local relations on `{p, q, r, s}`, the
//! reducibility survey, and closed-form solutions.

use num_integer::binomial;
use rayon::prelude::*;
use serde::Serialize;

use super::LocalRule;
use crate::error::{Error, Result};
use crate::group::Graph;
use crate::relation::{Domain, Point, Relation};

/// `{p, q, r, s}`: left, centre, right at time `t` and centre at `t + 1`.
pub fn eca_domain() -> Domain {
    Domain::uniform(&["p", "q", "r", "s"], 2).expect("four binary points")
}

/// Local relation of a Wolfram rule on the points `[p, q, r, s]`.
///
/// Wolfram numbers list outputs for neighbourhoods `111, 110, ..., 000`,
/// i.e. big-endian in `(p, q, r)`.
pub fn eca_relation_on(rule: u8, points: [Point; 4]) -> Result<Relation> {
    let domain = Domain::new(points.to_vec(), vec![2; 4])?;
    Ok(Relation::from_fn(domain, |t| {
        t[3] == ((rule as u32) >> (4 * t[0] + 2 * t[1] + t[2])) & 1
    }))
}

pub fn eca_relation(rule: u8) -> Relation {
    let d = eca_domain();
    let pts: [Point; 4] = std::array::from_fn(|i| d.points()[i].clone());
    eca_relation_on(rule, pts).expect("standard domain")
}

/// Wolfram rule as a 2-valent rule with ordered neighbours `[left, right]`.
pub fn wolfram_rule(rule: u8) -> LocalRule {
    LocalRule::ordered(2, 2, |c, nb| ((rule as u32) >> (4 * nb[0] + 2 * c + nb[1])) & 1)
        .expect("binary 2-valent rule")
}

/// Inverse of [`wolfram_rule`] for ordered binary 2-valent rules.
pub fn wolfram_number(rule: &LocalRule) -> Option<u8> {
    if rule.q() != 2 || rule.valence() != 2 || rule.classes().len() != 2 {
        return None;
    }
    let mut n = 0u8;
    for i in 0..8u32 {
        let (p, q, r) = (i >> 2, (i >> 1) & 1, i & 1);
        n |= (rule.next(q, &[p, r]) as u8) << i;
    }
    Some(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct EcaClass {
    pub rule: u8,
    pub reducible: bool,
    pub prime: bool,
    pub consequences: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EcaSurvey {
    pub reducible: usize,
    pub irreducible: usize,
    pub prime: Vec<u8>,
    pub rules: Vec<EcaClass>,
}

impl EcaSurvey {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "reducible": self.reducible,
            "irreducible": self.irreducible,
            "prime": self.prime,
        })
    }

    pub fn to_json_detailed(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

/// Classifies all 256 local relations.
pub fn survey() -> EcaSurvey {
    let rules: Vec<EcaClass> = (0..=255u8)
        .into_par_iter()
        .map(|n| {
            let r = eca_relation(n);
            let cons = r.proper_consequences();
            let pf = r.principal_factor_with(&cons).expect("consequences share the domain");
            EcaClass { rule: n, reducible: pf.is_trivial(), prime: !r.is_trivial() && cons.is_empty(), consequences: cons.len() }
        })
        .collect();
    let reducible = rules.iter().filter(|c| c.reducible).count();
    let prime = rules.iter().filter(|c| c.prime).map(|c| c.rule).collect();
    EcaSurvey { reducible, irreducible: 256 - reducible, prime, rules }
}

/// Rules whose projection onto one of the faces `{p,s}`, `{q,s}`, `{r,s}`
/// has the given 4-bit table. With `relabel`, the table obtained by
/// exchanging the states 0 and 1 on both points also counts.
pub fn rules_with_face_table(table: &str, relabel: bool) -> Result<Vec<u8>> {
    let d = eca_domain();
    let target = crate::relation::BitTable::from_bit_str(table)
        .filter(|b| b.len() == 4)
        .ok_or_else(|| Error::invalid(format!("face table {table:?} is not 4 bits")))?;
    let flipped = {
        let mut b = crate::relation::BitTable::zeros(4);
        for i in 0..4 {
            b.set(3 - i, target.get(i));
        }
        b
    };
    let faces: Vec<Domain> = [[0, 3], [1, 3], [2, 3]].iter().map(|f| d.select(f)).collect();
    Ok((0..=255u8)
        .filter(|&n| {
            let r = eca_relation(n);
            faces.iter().any(|f| {
                let b = r.project(f).expect("proper face").bits().clone();
                b == target || (relabel && b == flipped)
            })
        })
        .collect())
}

/// Rule 15: `u(x, t) = a(x - t) + t mod 2`.
pub fn rule15_solution(initial: &[u32], x: usize, t: usize) -> u32 {
    let n = initial.len();
    (initial[(x + n * t - t) % n] + t as u32) % 2
}

/// Rule 90: `u(x, t) = sum_k C(t, k) a(x - t + 2k) mod 2`.
pub fn rule90_solution(initial: &[u32], x: usize, t: usize) -> u32 {
    let n = initial.len() as i64;
    (0..=t)
        .filter(|&k| binomial(t as u64, k as u64) % 2 == 1)
        .map(|k| initial[(x as i64 - t as i64 + 2 * k as i64).rem_euclid(n) as usize])
        .sum::<u32>()
        % 2
}

/// Local relations of a rule on a periodic strip of `width` cells over
/// `steps` updates. Point `(x, t)` has id `t * width + x` and label `"x,t"`.
pub fn spacetime_system(rule: u8, width: usize, steps: usize) -> Result<Vec<Relation>> {
    if width < 3 {
        return Err(Error::invalid("strip width must be at least 3"));
    }
    let pt = |x: usize, t: usize| Point::new((t * width + x) as u32, format!("{x},{t}"));
    (0..steps)
        .flat_map(|t| (0..width).map(move |x| (x, t)))
        .map(|(x, t)| {
            let l = (x + width - 1) % width;
            let r = (x + 1) % width;
            eca_relation_on(rule, [pt(l, t), pt(x, t), pt(r, t), pt(x, t + 1)])
        })
        .collect()
}

/// Cycle graph whose neighbour lists are `[x - 1, x + 1]`.
pub fn ring(width: usize) -> Result<Graph> {
    Graph::cycle(width)
}
