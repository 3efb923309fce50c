use finite_dynamics::ca::{phase_portrait, verify_against_states, Automaton, LocalRule};
use finite_dynamics::group::{automorphisms, Graph, InternalSymmetry};
use num_bigint::BigUint;

fn main() -> finite_dynamics::Result<()> {
    let graph = Graph::cube();
    let aut = automorphisms(&graph)?;
    let rule = LocalRule::from_symmetric_number(&BigUint::from(86u32), 3)?;
    println!("rule 86 = {}", rule.bs_string().unwrap_or_default());
    let a = Automaton::new(rule, graph)?;
    let p = phase_portrait(&a, &aut.group, &InternalSymmetry::None)?;
    verify_against_states(&a, &p)?;
    println!("{} orbits, {} cycles", p.orbit_count(), p.cycles.len());
    for ((c, w), sizes) in p.cycles.iter().zip(p.weights()).zip(p.cycle_orbit_sizes()) {
        println!("  cycle {c:?}  orbit sizes {sizes:?}  weight {w}");
    }
    Ok(())
}
