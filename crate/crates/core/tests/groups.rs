use finite_dynamics::group::{
    automorphisms, edge_orbits, neighborhood_orbits, orbits_on_states, Graph, InternalSymmetry, Perm, PermGroup,
    SplitExtension, StateAction, StateSpace, Twist, WElement,
};
use proptest::prelude::*;

#[test]
fn platonic_and_buckyball_orders() {
    assert_eq!(automorphisms(&Graph::cube()).unwrap().order(), 48);
    assert_eq!(automorphisms(&Graph::dodecahedron()).unwrap().order(), 120);
    let g = Graph::buckyball();
    let aut = automorphisms(&g).unwrap();
    assert_eq!(aut.order(), 120);
    assert_eq!(aut.group.stabilizer(0).unwrap().order().unwrap(), 2);
    let mut sizes: Vec<usize> = neighborhood_orbits(&g, &aut.group, 0).unwrap().iter().map(Vec::len).collect();
    sizes.sort();
    assert_eq!(sizes, [1, 2]);
    let mut e: Vec<usize> = edge_orbits(&g, &aut.group).iter().map(Vec::len).collect();
    e.sort();
    assert_eq!(e, [30, 60]);
}

#[test]
fn generators_are_automorphisms() {
    for name in ["cube", "dodecahedron", "icosahedron", "torus_moore:5"] {
        let g = Graph::named(name).unwrap();
        let aut = automorphisms(&g).unwrap();
        for p in aut.group.generators() {
            assert!(g.is_automorphism(p), "{name}: {p}");
        }
        assert_eq!(aut.order(), aut.group.order().unwrap() as u128, "{name}");
    }
}

#[test]
fn torus_orders() {
    for n in [5usize, 6] {
        assert_eq!(automorphisms(&Graph::torus_moore(n).unwrap()).unwrap().order(), 8 * (n * n) as u128);
    }
    // von Neumann N=4 is the hypercube Q4
    assert_eq!(automorphisms(&Graph::torus_vonneumann(4).unwrap()).unwrap().order(), 384);
}

#[test]
fn cube_state_orbits() {
    let aut = automorphisms(&Graph::cube()).unwrap();
    let o = orbits_on_states(&aut.group, 2, &InternalSymmetry::None).unwrap();
    assert_eq!(o.len(), 22);
    let hist: Vec<(u64, usize)> = o.size_histogram().into_iter().collect();
    assert_eq!(hist, [(1, 2), (2, 1), (4, 2), (6, 2), (8, 5), (12, 4), (24, 6)]);
    assert_eq!(hist.iter().map(|&(s, c)| s * c as u64).sum::<u64>(), 256);
}

// Burnside count as an independent oracle for the number of orbits
fn burnside(group: &PermGroup, q: u64) -> u64 {
    let els = group.elements().unwrap();
    let fixed: u64 = els.iter().map(|g| q.pow(g.cycles().len() as u32 + fixed_points(g))).sum();
    fixed / els.len() as u64
}

fn fixed_points(g: &Perm) -> u32 {
    let listed: usize = g.cycles().iter().map(Vec::len).sum();
    (g.degree() - listed) as u32
}

#[test]
fn orbit_counts_match_burnside() {
    for (g, q) in [(Graph::cube(), 2u32), (Graph::cube(), 3), (Graph::cycle(7).unwrap(), 3), (Graph::complete(5), 2)] {
        let aut = automorphisms(&g).unwrap();
        let o = orbits_on_states(&aut.group, q, &InternalSymmetry::None).unwrap();
        assert_eq!(o.len() as u64, burnside(&aut.group, q as u64));
    }
}

#[test]
fn state_action_is_a_right_action() {
    let aut = automorphisms(&Graph::cube()).unwrap();
    let space = StateSpace::new(8, 3).unwrap();
    let els = aut.group.elements().unwrap();
    for g in els.iter().step_by(5) {
        for h in els.iter().step_by(7) {
            let (ag, ah, agh) = (StateAction::new(space, g, None), StateAction::new(space, h, None), StateAction::new(space, &g.then(h), None));
            for s in (0..space.size()).step_by(97) {
                assert_eq!(ah.apply(ag.apply(s)), agh.apply(s));
            }
        }
    }
}

fn ext(m: u8, k: i64) -> SplitExtension {
    SplitExtension::new(PermGroup::symmetric(3), PermGroup::symmetric(2), Twist::power(m, k).unwrap()).unwrap()
}

#[test]
fn split_extension_axioms_exhaustive() {
    for m in [0u8, 1] {
        for k in [-1i64, 0, 1] {
            let w = ext(m, k);
            let els = w.elements().unwrap();
            assert_eq!(els.len(), 48);
            let set: std::collections::HashSet<&WElement> = els.iter().collect();
            let e = w.identity();
            for u in &els {
                assert_eq!(w.multiply(&e, u).unwrap(), *u);
                assert_eq!(w.multiply(u, &e).unwrap(), *u);
                let inv = w.inverse(u).unwrap();
                assert_eq!(w.multiply(u, &inv).unwrap(), e);
                assert_eq!(w.multiply(&inv, u).unwrap(), e);
                for v in &els {
                    let uv = w.multiply(u, v).unwrap();
                    assert!(set.contains(&uv));
                    for x in els.iter().step_by(3) {
                        assert_eq!(w.multiply(&uv, x).unwrap(), w.multiply(u, &w.multiply(v, x).unwrap()).unwrap(), "m={m} k={k}");
                    }
                }
            }
        }
    }
}

// direct product: functions multiply pointwise, permutations compose
#[test]
fn direct_product_case() {
    let w = ext(0, 0);
    for u in w.elements().unwrap().iter().step_by(3) {
        for v in w.elements().unwrap().iter().step_by(5) {
            let p = w.multiply(u, v).unwrap();
            assert_eq!(p.a, u.a.then(&v.a));
            for x in 0..3 {
                assert_eq!(p.alpha[x], u.alpha[x].then(&v.alpha[x]));
            }
        }
    }
}

// wreath product: second function is read through the first permutation
#[test]
fn wreath_product_case() {
    let w = ext(1, -1);
    for u in w.elements().unwrap().iter().step_by(3) {
        for v in w.elements().unwrap().iter().step_by(5) {
            let p = w.multiply(u, v).unwrap();
            assert_eq!(p.a, u.a.then(&v.a));
            for x in 0..3 {
                assert_eq!(p.alpha[x], u.alpha[x].then(&v.alpha[u.a.apply(x)]), "{u:?} {v:?}");
            }
        }
    }
}

#[test]
fn split_extension_acts_on_states() {
    for m in [0u8, 1] {
        for k in [-1i64, 0, 1] {
            let w = ext(m, k);
            let els = w.elements().unwrap();
            for u in els.iter().step_by(4) {
                for v in els.iter().step_by(6) {
                    let s = [0u32, 1, 1];
                    let uv = w.multiply(u, v).unwrap();
                    let lhs = w.act(&s, &uv).unwrap();
                    let rhs = w.act(&w.act(&s, u).unwrap(), v).unwrap();
                    assert_eq!(lhs, rhs, "m={m} k={k}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn perm_inverse_and_order(images in Just((0u32..9).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Perm::from_images(images).unwrap();
        prop_assert!(p.then(&p.inverse()).is_identity());
        prop_assert!(p.pow(p.order() as i64).is_identity());
        prop_assert_eq!(p.pow(-1), p.inverse());
    }
}
