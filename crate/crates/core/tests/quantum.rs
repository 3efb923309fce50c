use finite_dynamics::quantum::{
    cyclotomic, cyclotomic_factors, free_amplitude, interference, path_oracle_all, s3, AmplitudePoly, CharTable,
    CycloElement, LocalModel, Source,
};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

#[test]
fn formula_matches_path_enumeration() {
    for t in 0..=8 {
        let all = path_oracle_all(t).unwrap();
        for x in -(t as i64)..=t as i64 {
            assert_eq!(all[&x], free_amplitude(x, t).unwrap(), "x={x} t={t}");
        }
    }
}

#[test]
fn three_step_amplitude() {
    let a = free_amplitude(1, 3).unwrap();
    assert_eq!(a.to_string(), "3w+3w^3");
    assert_eq!(free_amplitude(-1, 3).unwrap(), a);
    assert_eq!(cyclotomic_factors(&a, None).unwrap(), [4]);
}

// Gaussian integers (re, im) as an oracle for w = i
fn gauss_eval(p: &AmplitudePoly) -> (i64, i64) {
    let mut acc = (0i64, 0i64);
    for (e, c) in p.terms() {
        let c = c.to_i64().unwrap();
        let (re, im) = [(1, 0), (0, 1), (-1, 0), (0, -1)][e[0] as usize % 4];
        acc = (acc.0 + c * re, acc.1 + c * im);
    }
    acc
}

fn gauss_pattern(phase_right: i64, t: u32) -> Vec<(i64, i64)> {
    let rot = [(1, 0), (0, 1), (-1, 0), (0, -1)][phase_right.rem_euclid(4) as usize];
    (-4 - t as i64..=4 + t as i64)
        .map(|x| {
            let mut a = (0, 0);
            if (x + 4).abs() <= t as i64 {
                let v = gauss_eval(&free_amplitude(x + 4, t).unwrap());
                a = (a.0 + v.0, a.1 + v.1);
            }
            if (x - 4).abs() <= t as i64 {
                let v = gauss_eval(&free_amplitude(x - 4, t).unwrap());
                a = (a.0 + v.0 * rot.0 - v.1 * rot.1, a.1 + v.0 * rot.1 + v.1 * rot.0);
            }
            a
        })
        .collect()
}

#[test]
fn two_source_interference() {
    let same = interference(&[Source { position: -4, phase: 0 }, Source { position: 4, phase: 0 }], 20, 4).unwrap();
    for p in &same.points {
        assert_eq!(same.at(-p.x).unwrap().exact, p.exact);
    }
    let opposite = interference(&[Source { position: -4, phase: 0 }, Source { position: 4, phase: 2 }], 20, 4).unwrap();
    let mid = opposite.at(0).unwrap();
    assert!(mid.amplitude.is_zero());
    assert_eq!(mid.exact, Some(BigInt::zero()));
    for (p, (re, im)) in opposite.points.iter().zip(gauss_pattern(2, 20)) {
        assert_eq!(p.exact, Some(BigInt::from(re * re + im * im)), "x={}", p.x);
    }
    assert!(opposite.points.iter().all(|p| p.probability <= 1.0));
}

#[test]
fn cyclotomic_basics() {
    let deg: Vec<usize> = (1..=12).map(|d| cyclotomic(d).len() - 1).collect();
    assert_eq!(deg, [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    let phi12 = cyclotomic(12).iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
    assert_eq!(phi12, [1, 0, -1, 0, 1]);
    for m in [3u32, 4, 5, 8, 12] {
        let z = CycloElement::zeta_pow(m, 1);
        let mut acc = CycloElement::from_int(m, 1);
        for _ in 0..m {
            acc = &acc * &z;
        }
        assert_eq!(acc.as_integer(), Some(BigInt::from(1)));
    }
}

proptest! {
    #[test]
    fn cyclo_eval_matches_float(coeffs in prop::collection::vec(-5i64..5, 1..8), m in 1u32..13, k in 0i64..13) {
        let p = AmplitudePoly::from_coeffs("w", &coeffs);
        let exact = CycloElement::eval(&p, m, k).to_complex();
        let w = num_complex::Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64);
        let float: num_complex::Complex64 = coeffs.iter().enumerate().map(|(i, &c)| w.powu(i as u32) * c as f64).sum();
        prop_assert!((exact - float).norm() < 1e-9);
    }

    #[test]
    fn embedding_holds_for_any_phases(alpha in -3.2f64..3.2, beta in -3.2f64..3.2) {
        let r = s3::embedding_check(alpha, beta);
        prop_assert!(r.passes(1e-10), "{:?}", r);
    }
}

#[test]
fn s3_embedding_reproduces_permutations() {
    let r = s3::embedding_check(0.0, 0.0);
    let want: [(&str, [[u8; 3]; 3]); 6] = [
        ("e", [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        ("a1", [[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
        ("a2", [[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
        ("a3", [[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
        ("b1", [[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        ("b2", [[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
    ];
    for ((name, m), (wn, wm)) in r.permutation_matrices.iter().zip(want) {
        assert_eq!(name, wn);
        assert_eq!(*m, wm.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    }
    let t = CharTable::s3().check();
    assert!(t.orthogonal && t.squares_sum_to_order);
    assert_eq!(t.sum_of_squares, 6.0);
}

#[test]
fn buckyball_amplitudes() {
    let m = LocalModel::buckyball().unwrap();
    assert_eq!(m.amplitude(0, 0, 2).unwrap().to_string(), "1+2v^2+w^2");
    // walk counts at v = w = 1 equal powers of (I + adjacency)
    let n = m.graph().len();
    let mut counts = vec![0u64; n];
    counts[0] = 1;
    for _ in 0..4 {
        let mut next = counts.clone();
        for x in 0..n {
            for &y in m.graph().neighbors(x) {
                next[y as usize] += counts[x];
            }
        }
        counts = next;
    }
    let amps = m.amplitudes(0, 4).unwrap();
    for x in 0..n {
        assert_eq!(amps[x].at_one(), BigInt::from(counts[x]));
    }
}
