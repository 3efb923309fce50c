//! Conway's Life as a relation on `x1..x10` (`x9` the centre, `x10` its
//! next state) and its polynomial forms over GF(2).

use super::{Automaton, LocalRule};
use crate::error::{Error, Result};
use crate::galois::FieldPoly;
use crate::group::Graph;
use crate::relation::{Domain, Point, Relation};

pub const CENTER: usize = 8;
pub const NEXT: usize = 9;

pub fn life_rule() -> LocalRule {
    LocalRule::from_bs(&[3], &[2, 3], 8).expect("B3/S23")
}

pub fn life_domain() -> Domain {
    let labels: Vec<String> = (1..=10).map(|i| format!("x{i}")).collect();
    Domain::uniform(&labels, 2).expect("ten binary points")
}

pub fn life_relation() -> Relation {
    life_relation_of(&life_rule()).expect("8-valent binary rule")
}

/// Relation of any binary 8-valent rule on the Life domain.
pub fn life_relation_of(rule: &LocalRule) -> Result<Relation> {
    if rule.q() != 2 || rule.valence() != 8 {
        return Err(Error::invalid("expected a binary 8-valent rule"));
    }
    Ok(Relation::from_fn(life_domain(), |t| t[NEXT] == rule.next(t[CENTER], &t[..8])))
}

fn vars() -> Vec<Point> {
    life_domain().points().to_vec()
}

/// `e_k` of `x1..x8` with the listed (1-based) neighbours left out.
fn e(k: usize, skip: &[usize]) -> FieldPoly {
    let pos: Vec<usize> = (0..8).filter(|i| !skip.contains(&(i + 1))).collect();
    FieldPoly::elementary_symmetric(2, &vars(), &pos, k).expect("k within range")
}

fn sum(k: &[usize], skip: &[usize]) -> FieldPoly {
    k.iter().fold(FieldPoly::zero(2, &vars()).unwrap(), |acc, &k| &acc + &e(k, skip))
}

fn x(i: usize) -> FieldPoly {
    FieldPoly::variable(2, &vars(), i - 1).unwrap()
}

fn one() -> FieldPoly {
    FieldPoly::constant(2, &vars(), 1).unwrap()
}

/// `x10 + x9(e7 + e6 + e3 + e2) + e7 + e3`.
pub fn life_polynomial() -> FieldPoly {
    &(&x(10) + &(&x(9) * &sum(&[7, 6, 3, 2], &[]))) + &sum(&[7, 3], &[])
}

/// Consequence on the domain without neighbour `i`:
/// `x9x10(e6+e5+e2+e1) + x10(e6+e2+1) + x9(e7+e6+e3+e2)` over `x1..x8` minus `xi`.
pub fn life_r1_polynomial(i: usize) -> FieldPoly {
    let s = [i];
    let a = &(&x(9) * &x(10)) * &sum(&[6, 5, 2, 1], &s);
    let b = &x(10) * &(&sum(&[6, 2], &s) + &one());
    let c = &x(9) * &sum(&[7, 6, 3, 2], &s);
    &(&a + &b) + &c
}

/// Consequence on the domain without the centre:
/// `x10(e7+e6+e3+e2+1) + e7 + e3`.
pub fn life_r2_polynomial() -> FieldPoly {
    &(&x(10) * &(&sum(&[7, 6, 3, 2], &[]) + &one())) + &sum(&[7, 3], &[])
}

/// Deeper relations satisfied by Life, in the order
/// `x9x10(e2+e1) + x10(e2+1) + x9(e7+e6+e3+e2)` without `i`,
/// `x10(e3+e2+1) + e7 + e3`,
/// `(x9x10+x10)(e3+e2+e1+1)` without `i, j`,
/// `x10(e3+e2+e1+1)` without `i`,
/// `x10 xa xb xc xd`.
pub fn life_reduced_system(i: usize, j: usize, quad: [usize; 4]) -> Vec<FieldPoly> {
    let si = [i];
    let sij = [i, j];
    let p1 = &(&(&(&x(9) * &x(10)) * &sum(&[2, 1], &si)) + &(&x(10) * &(&e(2, &si) + &one())))
        + &(&x(9) * &sum(&[7, 6, 3, 2], &si));
    let p2 = &(&x(10) * &(&sum(&[3, 2], &[]) + &one())) + &sum(&[7, 3], &[]);
    let p11 = &(&(&x(9) * &x(10)) + &x(10)) * &(&sum(&[3, 2, 1], &sij) + &one());
    let p12 = &x(10) * &(&sum(&[3, 2, 1], &si) + &one());
    let p0123 = quad.iter().fold(x(10), |acc, &k| &acc * &x(k));
    vec![p1, p2, p11, p12, p0123]
}

/// Live cells of a pattern given as `x y` lines (blank lines and `#`
/// comments skipped), placed on an `n x n` torus as a state vector.
pub fn parse_cells(text: &str, n: usize) -> Result<Vec<u32>> {
    let mut state = vec![0u32; n * n];
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|w| w.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse { line: line_no + 1, message: format!("{e}") })?;
        match nums[..] {
            [x, y] if x < n && y < n => state[y * n + x] = 1,
            [_, _] => return Err(Error::Parse { line: line_no + 1, message: format!("cell outside {n}x{n} torus") }),
            _ => return Err(Error::Parse { line: line_no + 1, message: "expected `x y`".into() }),
        }
    }
    Ok(state)
}

/// Life on the `n x n` Moore torus.
pub fn life_on_torus(n: usize) -> Result<Automaton> {
    Automaton::new(life_rule(), Graph::torus_moore(n)?)
}

/// The standard glider: `(1,0) (2,1) (0,2) (1,2) (2,2)`.
pub const GLIDER: [(usize, usize); 5] = [(1, 0), (2, 1), (0, 2), (1, 2), (2, 2)];

pub fn place(cells: &[(usize, usize)], n: usize) -> Vec<u32> {
    let mut s = vec![0u32; n * n];
    for &(x, y) in cells {
        s[(y % n) * n + x % n] = 1;
    }
    s
}
