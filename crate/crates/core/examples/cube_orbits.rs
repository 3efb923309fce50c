use finite_dynamics::group::{automorphisms, orbits_on_states, Graph, InternalSymmetry};

fn main() -> finite_dynamics::Result<()> {
    let aut = automorphisms(&Graph::cube())?;
    println!("|Aut(cube)| = {}", aut.order());
    let orbits = orbits_on_states(&aut.group, 2, &InternalSymmetry::None)?;
    println!("{} orbits on 256 states", orbits.len());
    for (size, count) in orbits.size_histogram() {
        println!("  size {size:>2}: {count}");
    }
    Ok(())
}
