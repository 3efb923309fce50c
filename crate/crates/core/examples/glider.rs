use finite_dynamics::ca::life::{life_on_torus, place, GLIDER};
use finite_dynamics::ca::StateGroup;
use finite_dynamics::group::{automorphisms, Graph};

fn main() -> finite_dynamics::Result<()> {
    let n = 8;
    let aut = automorphisms(&Graph::torus_moore(n)?)?;
    println!("|Aut| = {}", aut.order());
    let life = life_on_torus(n)?;
    let sg = StateGroup::new(&aut.group, 2)?;
    let traj: Vec<u64> = life.trajectory(&place(&GLIDER, n), 8)?.iter().map(|s| sg.space().encode(s)).collect();
    println!("orbit labels {:?}", sg.orbit_labels(&traj));
    let r = sg.recurrence(&traj, 0)?;
    println!("state {} returns to its orbit at t = {} via {}", r.t0, r.t1, r.witness);
    Ok(())
}
