use finite_dynamics::ca::eca::{ring, rule15_solution, rule90_solution, wolfram_rule};
use finite_dynamics::ca::life::{life_on_torus, place, GLIDER};
use finite_dynamics::ca::{phase_portrait, verify_against_states, Automaton, LocalRule, StateGroup};
use finite_dynamics::group::{automorphisms, Graph, InternalSymmetry};
use finite_dynamics::Error;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// plain periodic ECA step, independent of the library's automaton
fn eca_step(rule: u8, s: &[u32]) -> Vec<u32> {
    let n = s.len();
    (0..n)
        .map(|x| {
            let (l, c, r) = (s[(x + n - 1) % n], s[x], s[(x + 1) % n]);
            ((rule as u32) >> (4 * l + 2 * c + r)) & 1
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn closed_forms_on_ring_32(init in prop::collection::vec(0u32..2, 32)) {
        let (mut s15, mut s90) = (init.clone(), init.clone());
        for t in 0..=16 {
            for x in 0..32 {
                prop_assert_eq!(s15[x], rule15_solution(&init, x, t));
                prop_assert_eq!(s90[x], rule90_solution(&init, x, t));
            }
            s15 = eca_step(15, &s15);
            s90 = eca_step(90, &s90);
        }
    }

    #[test]
    fn automaton_agrees_with_direct_eca(rule in any::<u8>(), init in prop::collection::vec(0u32..2, 12)) {
        let a = Automaton::new(wolfram_rule(rule), ring(12).unwrap()).unwrap();
        let mut s = init;
        for _ in 0..6 {
            let next = a.step(&s).unwrap();
            prop_assert_eq!(&next, &eca_step(rule, &s));
            s = next;
        }
    }
}

fn random_rule(rng: &mut ChaCha8Rng, k: usize) -> LocalRule {
    let bits = 2 * (k + 1);
    let n: u64 = rng.gen_range(0..1u64 << bits);
    LocalRule::from_symmetric_number(&BigUint::from(n), k).unwrap()
}

#[test]
fn stabilizers_grow_along_trajectories() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (graph, runs) in [(Graph::cube(), 500), (Graph::dodecahedron(), 500)] {
        let aut = automorphisms(&graph).unwrap();
        let sg = StateGroup::new(&aut.group, 2).unwrap();
        let k = graph.valence().unwrap();
        let n = graph.len();
        for _ in 0..runs {
            let a = Automaton::new(random_rule(&mut rng, k), graph.clone()).unwrap();
            let mut s: u64 = rng.gen_range(0..1u64 << n);
            let mut stab = sg.stabilizer(s);
            for _ in 0..12 {
                let next = a.step_bits(s);
                let next_stab = sg.stabilizer(next);
                assert!(stab.iter().all(|g| next_stab.binary_search(g).is_ok()), "Stab must not shrink");
                s = next;
                stab = next_stab;
            }
        }
    }
}

#[test]
fn cycles_stay_in_equal_size_orbits() {
    let graph = Graph::cube();
    let aut = automorphisms(&graph).unwrap();
    for n in 0u32..256 {
        let rule = LocalRule::from_symmetric_number(&BigUint::from(n), 3).unwrap();
        let a = Automaton::new(rule, graph.clone()).unwrap();
        let p = phase_portrait(&a, &aut.group, &InternalSymmetry::None).unwrap();
        verify_against_states(&a, &p).unwrap();
        for sizes in p.cycle_orbit_sizes() {
            assert!(sizes.iter().all(|&s| s == sizes[0]), "rule {n}: {sizes:?}");
        }
        assert_eq!(p.basin_sizes.iter().sum::<u64>(), 256);
    }
}

#[test]
fn dodecahedron_cycles_stay_in_equal_size_orbits() {
    let graph = Graph::dodecahedron();
    let aut = automorphisms(&graph).unwrap();
    for n in [6u32, 22, 86, 150, 105] {
        let rule = LocalRule::from_symmetric_number(&BigUint::from(n), 3).unwrap();
        let a = Automaton::new(rule, graph.clone()).unwrap();
        let p = phase_portrait(&a, &aut.group, &InternalSymmetry::None).unwrap();
        for sizes in p.cycle_orbit_sizes() {
            assert!(sizes.iter().all(|&s| s == sizes[0]), "rule {n}: {sizes:?}");
        }
    }
}

fn life_trajectory(n: usize, cells: &[(usize, usize)], steps: usize) -> (StateGroup, Vec<u64>) {
    let aut = automorphisms(&Graph::torus_moore(n).unwrap()).unwrap();
    let sg = StateGroup::new(&aut.group, 2).unwrap();
    let life = life_on_torus(n).unwrap();
    let traj = life.trajectory(&place(cells, n), steps).unwrap().iter().map(|s| sg.space().encode(s)).collect();
    (sg, traj)
}

#[test]
fn glider_recurs_in_orbit() {
    let (sg, traj) = life_trajectory(8, &GLIDER, 4);
    let labels = sg.orbit_labels(&traj);
    assert_eq!(labels[0], labels[2]);
    assert_eq!(labels[1], labels[3]);
    let r = sg.recurrence(&traj, 0).unwrap();
    assert_eq!((r.t0, r.t1), (0, 2));
    let g = sg.elements().iter().position(|p| *p == r.witness).unwrap();
    assert_eq!(sg.act(g, traj[0]), traj[2]);
    assert_eq!(sg.witness(traj[1], traj[3]).map(|p| sg.act(sg.elements().iter().position(|q| q == p).unwrap(), traj[1])), Some(traj[3]));
}

#[test]
fn blinker_recurs_after_one_step() {
    let (sg, traj) = life_trajectory(6, &[(1, 2), (2, 2), (3, 2)], 2);
    assert_ne!(traj[0], traj[1]);
    let r = sg.recurrence(&traj, 0).unwrap();
    assert_eq!(r.t1, 1);
    let g = sg.elements().iter().position(|p| *p == r.witness).unwrap();
    assert_eq!(sg.act(g, traj[0]), traj[1]);
    assert!(!r.witness.is_identity());
}

#[test]
fn empty_board_recurs_with_identity() {
    let (sg, traj) = life_trajectory(6, &[], 2);
    let r = sg.recurrence(&traj, 0).unwrap();
    assert_eq!(r.t1, 1);
    assert!(r.witness.is_identity());
}

#[test]
fn short_trajectory_has_no_recurrence() {
    let (sg, traj) = life_trajectory(6, &GLIDER, 1);
    assert!(matches!(sg.recurrence(&traj, 0), Err(Error::NoRecurrence(_))));
}

#[test]
fn bs_rules_round_trip() {
    for text in ["B3/S23", "B36/S23", "B2/S", "B/S012345678"] {
        let r = LocalRule::parse_bs(text, 8).unwrap();
        assert_eq!(r.bs_string().unwrap(), text);
        let n = r.symmetric_number().unwrap();
        assert_eq!(LocalRule::from_symmetric_number(&n, 8).unwrap().bs_string().unwrap(), text);
    }
}
