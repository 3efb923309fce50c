use finite_dynamics::galois::interpolate;
use finite_dynamics::relation::{base_relation, BitTable, Domain, Relation};
use proptest::prelude::*;

fn domain(k: usize, q: u32) -> Domain {
    let labels: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
    Domain::uniform(&labels, q).unwrap()
}

fn relation(k: usize, q: u32, seed: &[bool]) -> Relation {
    let d = domain(k, q);
    let mut bits = BitTable::zeros(d.size());
    for (i, &b) in seed.iter().cycle().take(d.size()).enumerate() {
        bits.set(i, b);
    }
    Relation::from_table(d, bits).unwrap()
}

fn arb_relation() -> impl Strategy<Value = Relation> {
    (1usize..=4, 2u32..=3)
        .prop_flat_map(|(k, q)| {
            let size = (q as usize).pow(k as u32);
            (Just(k), Just(q), prop::collection::vec(prop::bool::weighted(0.7), size))
        })
        .prop_map(|(k, q, seed)| relation(k, q, &seed))
}

// tuple-level oracle for existential projection
fn project_oracle(r: &Relation, keep: &[usize]) -> Vec<bool> {
    let sub = r.domain().select(keep);
    let mut out = vec![false; sub.size()];
    for i in 0..r.domain().size() {
        if r.contains_index(i) {
            let t = r.domain().tuple_of(i);
            let s: Vec<u32> = keep.iter().map(|&p| t[p]).collect();
            out[sub.index_of(&s).unwrap()] = true;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projection_matches_tuple_oracle(r in arb_relation(), mask in 1u32..15) {
        let k = r.domain().len();
        let keep: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!keep.is_empty() && keep.len() < k);
        let p = r.project(&r.domain().select(&keep)).unwrap();
        let want = project_oracle(&r, &keep);
        prop_assert_eq!((0..want.len()).map(|i| p.contains_index(i)).collect::<Vec<_>>(), want);
        prop_assert!(r.is_consequence(&p).unwrap());
    }

    #[test]
    fn extension_then_projection_is_identity(r in arb_relation()) {
        let k = r.domain().len();
        prop_assume!(k < 4);
        let big = Domain::union([r.domain(), &domain(4, r.domain().radices()[0])]).unwrap();
        let ext = r.extend(&big).unwrap();
        prop_assert_eq!(ext.cardinality(), r.cardinality() * (r.domain().radices()[0] as usize).pow((4 - k) as u32));
        let back = ext.project(r.domain()).unwrap();
        if !r.is_empty() {
            prop_assert_eq!(back, r);
        }
    }

    #[test]
    fn decomposition_reconstructs(r in arb_relation()) {
        let d = r.decompose();
        prop_assert!(d.verify());
        let rebuilt = base_relation(
            &std::iter::once(r.principal_factor()).chain(r.proper_consequences()).collect::<Vec<_>>(),
        ).unwrap();
        prop_assert_eq!(rebuilt.bits(), r.bits());
        for c in r.proper_consequences() {
            prop_assert!(r.is_consequence(&c).unwrap());
            prop_assert!(!c.is_trivial());
        }
        prop_assert_eq!(r.is_prime(), !r.is_trivial() && r.proper_consequences().is_empty());
    }

    #[test]
    fn principal_factor_is_maximal(r in arb_relation()) {
        let pf = r.principal_factor();
        prop_assert!(r.is_subset(&pf).unwrap());
        let cons = r.proper_consequences();
        // every tuple outside PF must be in all consequences
        for i in 0..r.domain().size() {
            if !pf.contains_index(i) {
                let t = r.domain().tuple_of(i);
                for c in &cons {
                    let s: Vec<u32> = c.domain().points().iter().map(|p| t[r.domain().position(p.id).unwrap()]).collect();
                    prop_assert!(c.contains(&s).unwrap());
                }
            }
        }
    }

    #[test]
    fn interpolation_vanishes_exactly_on_members(r in arb_relation()) {
        let q = r.domain().radices()[0];
        let f = interpolate(&r, q).unwrap();
        for i in 0..r.domain().size() {
            let v = f.eval(&r.domain().tuple_of(i)).unwrap();
            prop_assert_eq!(v == 0, r.contains_index(i));
        }
        let z = f.zero_set().unwrap();
        prop_assert_eq!(z.bits(), r.bits());
    }

    #[test]
    fn text_round_trip(r in arb_relation()) {
        prop_assert_eq!(Relation::parse_text(&r.to_text()).unwrap(), r);
    }
}

#[test]
fn functional_oracle() {
    let d = domain(3, 3);
    let f = Relation::from_fn(d.clone(), |t| t[2] == (t[0] + 2 * t[1]) % 3);
    assert!(f.is_functional(2).unwrap());
    assert!(f.is_functional(0).unwrap());
    let g = Relation::from_fn(d, |t| t[2] <= t[0]);
    assert!(!g.is_functional(2).unwrap());
}

#[test]
fn empty_relation_conventions() {
    let d = domain(3, 2);
    let e = Relation::empty(d.clone());
    assert!(e.proper_consequences().is_empty());
    assert!(e.is_prime());
    assert!(!Relation::trivial(d).is_prime());
}
