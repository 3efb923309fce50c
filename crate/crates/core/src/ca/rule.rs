use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::binomial;

use crate::error::{Error, Result};

/// Local transition rule of a `k`-valent automaton with `q` states.
///
/// Neighbour positions are partitioned into classes; within a class only
/// the multiset of neighbour values matters. A single class gives a
/// symmetric rule, singleton classes give a rule on ordered tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRule {
    q: u32,
    classes: Vec<Vec<usize>>,
    /// Per class: dense index over count vectors -> multiset rank.
    ranks: Vec<Vec<u32>>,
    radix: Vec<usize>,
    lookup: Vec<u32>,
}

/// All count vectors of length `q` summing to `m`, ordered so that for
/// `q = 2` the rank equals the count of ones.
fn compositions(m: u32, q: u32) -> Vec<Vec<u32>> {
    fn go(m: u32, q: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() as u32 + 1 == q {
            prefix.push(m);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for c in (0..=m).rev() {
            prefix.push(c);
            go(m - c, q, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, q, &mut Vec::new(), &mut out);
    out
}

fn counts_index(counts: &[u32], m: u32) -> usize {
    counts.iter().rev().fold(0usize, |acc, &c| acc * (m as usize + 1) + c as usize)
}

impl LocalRule {
    /// Builds a rule by evaluating `f(center, multisets)` on every
    /// configuration, where `multisets[c]` is the sorted list of values in
    /// neighbour class `c`.
    pub fn with_classes(
        q: u32,
        classes: Vec<Vec<usize>>,
        mut f: impl FnMut(u32, &[Vec<u32>]) -> u32,
    ) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("radix {q} < 2")));
        }
        let k: usize = classes.iter().map(Vec::len).sum();
        let positions: BTreeSet<usize> = classes.iter().flatten().copied().collect();
        if positions.len() != k || positions.iter().next_back().is_some_and(|&p| p + 1 != k) {
            return Err(Error::invalid("neighbour classes must partition 0..k"));
        }
        if classes.iter().any(Vec::is_empty) {
            return Err(Error::invalid("empty neighbour class"));
        }
        let comps: Vec<Vec<Vec<u32>>> =
            classes.iter().map(|c| compositions(c.len() as u32, q)).collect();
        let mut ranks = Vec::new();
        for (c, list) in classes.iter().zip(&comps) {
            let m = c.len() as u32;
            let mut table = vec![u32::MAX; (m as usize + 1).pow(q)];
            for (r, counts) in list.iter().enumerate() {
                table[counts_index(counts, m)] = r as u32;
            }
            ranks.push(table);
        }
        let radix: Vec<usize> = comps.iter().map(Vec::len).collect();
        let combos: usize = radix.iter().product();
        let mut lookup = Vec::with_capacity(combos * q as usize);
        let mut digits = vec![0usize; classes.len()];
        for _ in 0..combos {
            let multisets: Vec<Vec<u32>> = digits
                .iter()
                .zip(&comps)
                .map(|(&d, list)| {
                    list[d].iter().enumerate().flat_map(|(v, &n)| std::iter::repeat_n(v as u32, n as usize)).collect()
                })
                .collect();
            for center in 0..q {
                let next = f(center, &multisets);
                if next >= q {
                    return Err(Error::invalid(format!("rule produced state {next} with q = {q}")));
                }
                lookup.push(next);
            }
            for (d, &r) in digits.iter_mut().zip(&radix) {
                *d += 1;
                if *d < r {
                    break;
                }
                *d = 0;
            }
        }
        Ok(LocalRule { q, classes, ranks, radix, lookup })
    }

    /// Rule depending on the center and the multiset of all `k` neighbours.
    pub fn symmetric(q: u32, k: usize, f: impl Fn(u32, &[u32]) -> u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("valence must be positive"));
        }
        Self::with_classes(q, vec![(0..k).collect()], |c, ms| f(c, &ms[0]))
    }

    /// Rule on ordered neighbour tuples.
    pub fn ordered(q: u32, k: usize, f: impl Fn(u32, &[u32]) -> u32) -> Result<Self> {
        let classes = (0..k).map(|i| vec![i]).collect();
        Self::with_classes(q, classes, |c, ms| {
            let tuple: Vec<u32> = ms.iter().map(|m| m[0]).collect();
            f(c, &tuple)
        })
    }

    /// Binary symmetric rule from birth and survival lists.
    pub fn from_bs(birth: &[u32], survival: &[u32], k: usize) -> Result<Self> {
        if let Some(&bad) = birth.iter().chain(survival).find(|&&n| n as usize > k) {
            return Err(Error::invalid(format!("neighbour count {bad} exceeds valence {k}")));
        }
        let b: BTreeSet<u32> = birth.iter().copied().collect();
        let s: BTreeSet<u32> = survival.iter().copied().collect();
        Self::symmetric(2, k, |c, ms| {
            let alive = ms.iter().filter(|&&v| v == 1).count() as u32;
            u32::from(if c == 0 { b.contains(&alive) } else { s.contains(&alive) })
        })
    }

    /// Binary symmetric rule whose bit `2·n + c` gives the next state for
    /// `n` live neighbours and center `c`.
    pub fn from_symmetric_number(number: &BigUint, k: usize) -> Result<Self> {
        let bits = 2 * (k as u64 + 1);
        if number.bits() > bits {
            return Err(Error::invalid(format!("rule number needs more than {bits} bits")));
        }
        Self::symmetric(2, k, |c, ms| {
            let alive = ms.iter().filter(|&&v| v == 1).count() as u64;
            u32::from(number.bit(2 * alive + c as u64))
        })
    }

    /// Parses `B3/S23` style notation (digits only, so valence ≤ 9).
    pub fn parse_bs(text: &str, k: usize) -> Result<Self> {
        let t = text.trim().to_ascii_uppercase();
        let (b, s) = t
            .split_once('/')
            .ok_or_else(|| Error::invalid(format!("expected B../S.. in {text:?}")))?;
        let digits = |part: &str, tag: char| -> Result<Vec<u32>> {
            let body = part
                .strip_prefix(tag)
                .ok_or_else(|| Error::invalid(format!("missing {tag} in {text:?}")))?;
            body.chars()
                .map(|ch| ch.to_digit(10).ok_or_else(|| Error::invalid(format!("bad digit {ch:?}"))))
                .collect()
        };
        Self::from_bs(&digits(b, 'B')?, &digits(s, 'S')?, k)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn valence(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn is_symmetric(&self) -> bool {
        self.classes.len() == 1
    }

    /// Next state of a cell from its value and ordered neighbour values.
    pub fn next(&self, center: u32, neighbors: &[u32]) -> u32 {
        debug_assert_eq!(neighbors.len(), self.valence());
        let mut idx = 0usize;
        let mut stride = 1usize;
        let mut counts = vec![0u32; self.q as usize];
        for ((class, table), &r) in self.classes.iter().zip(&self.ranks).zip(&self.radix) {
            counts.iter_mut().for_each(|c| *c = 0);
            for &pos in class {
                counts[neighbors[pos] as usize] += 1;
            }
            let rank = table[counts_index(&counts, class.len() as u32)] as usize;
            idx += rank * stride;
            stride *= r;
        }
        self.lookup[center as usize + self.q as usize * idx]
    }

    /// Next state of a binary symmetric rule from the live neighbour count.
    #[inline]
    pub(crate) fn next_binary_symmetric(&self, center: u32, alive: u32) -> u32 {
        self.lookup[(center + 2 * alive) as usize]
    }

    /// Birth and survival lists of a binary symmetric rule.
    pub fn to_bs(&self) -> Option<(Vec<u32>, Vec<u32>)> {
        if self.q != 2 || !self.is_symmetric() {
            return None;
        }
        let k = self.valence() as u32;
        let birth = (0..=k).filter(|&n| self.next_binary_symmetric(0, n) == 1).collect();
        let survival = (0..=k).filter(|&n| self.next_binary_symmetric(1, n) == 1).collect();
        Some((birth, survival))
    }

    pub fn bs_string(&self) -> Option<String> {
        let (b, s) = self.to_bs()?;
        let join = |v: Vec<u32>| v.iter().map(|n| n.to_string()).collect::<String>();
        Some(format!("B{}/S{}", join(b), join(s)))
    }

    /// Symmetric rule number (bit `2·n + c`), for binary symmetric rules.
    pub fn symmetric_number(&self) -> Option<BigUint> {
        let (b, s) = self.to_bs()?;
        let mut n = BigUint::default();
        for x in b {
            n.set_bit(2 * x as u64, true);
        }
        for x in s {
            n.set_bit(2 * x as u64 + 1, true);
        }
        Some(n)
    }

    /// `0/1` table indexed by `2·n + c`, index 0 first.
    pub fn symmetric_bit_string(&self) -> Option<String> {
        if self.q != 2 || !self.is_symmetric() {
            return None;
        }
        Some(self.lookup.iter().map(|&b| char::from(b'0' + b as u8)).collect())
    }
}

/// `q^(C(k+q-1, q-1)·q)`, the number of symmetric `k`-valent rules.
pub fn symmetric_rule_count(q: u32, k: u32) -> BigUint {
    let multisets = binomial(k as u64 + q as u64 - 1, q as u64 - 1);
    BigUint::from(q).pow((multisets * q as u64) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_86() {
        let r = LocalRule::from_symmetric_number(&BigUint::from(86u32), 3).unwrap();
        assert_eq!(r.symmetric_bit_string().unwrap(), "01101010");
        assert_eq!(r.bs_string().unwrap(), "B123/S0");
        assert_eq!(r.symmetric_number().unwrap(), BigUint::from(86u32));
    }

    #[test]
    fn life_bs() {
        let life = LocalRule::parse_bs("B3/S23", 8).unwrap();
        assert_eq!(life.next(0, &[1, 1, 1, 0, 0, 0, 0, 0]), 1);
        assert_eq!(life.next(1, &[1, 0, 0, 0, 0, 0, 0, 0]), 0);
        assert_eq!(life.next(1, &[0, 1, 0, 0, 0, 1, 0, 0]), 1);
        assert_eq!(life.to_bs().unwrap(), (vec![3], vec![2, 3]));
    }

    #[test]
    fn counts() {
        assert_eq!(symmetric_rule_count(2, 3), BigUint::from(256u32));
        for k in 1..6 {
            assert_eq!(symmetric_rule_count(2, k), BigUint::from(1u32) << (2 * k + 2));
        }
        assert_eq!(symmetric_rule_count(3, 2), BigUint::from(3u32).pow(18));
    }

    #[test]
    fn ordered_and_mixed_classes() {
        let r = LocalRule::ordered(3, 2, |c, t| (c + 2 * t[0] + t[1]) % 3).unwrap();
        assert_eq!(r.next(1, &[2, 1]), (1 + 4 + 1) % 3);
        let m = LocalRule::with_classes(2, vec![vec![0], vec![1, 2]], |c, ms| {
            (c + ms[0][0] + ms[1].iter().sum::<u32>()) % 2
        })
        .unwrap();
        assert_eq!(m.next(0, &[1, 0, 1]), 0);
        assert_eq!(m.next(0, &[1, 1, 1]), 1);
        assert!(LocalRule::with_classes(2, vec![vec![0], vec![2]], |_, _| 0).is_err());
    }

    #[test]
    fn bad_inputs() {
        assert!(LocalRule::from_bs(&[4], &[], 3).is_err());
        assert!(LocalRule::parse_bs("3/23", 8).is_err());
        assert!(LocalRule::from_symmetric_number(&BigUint::from(256u32), 3).is_err());
    }
}
