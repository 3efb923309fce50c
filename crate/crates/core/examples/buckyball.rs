use finite_dynamics::group::{automorphisms, edge_orbits, neighborhood_orbits, Graph};
use finite_dynamics::quantum::{vanishing_pairs, LocalModel};

fn main() -> finite_dynamics::Result<()> {
    let g = Graph::buckyball();
    let aut = automorphisms(&g)?;
    println!("|Aut| = {}, |Stab(0)| = {}", aut.order(), aut.group.stabilizer(0)?.order()?);
    let sizes: Vec<usize> = neighborhood_orbits(&g, &aut.group, 0)?.iter().map(Vec::len).collect();
    println!("neighbourhood orbits {sizes:?}, edge orbits {:?}", edge_orbits(&g, &aut.group).iter().map(Vec::len).collect::<Vec<_>>());
    let m = LocalModel::buckyball()?;
    for t in 0..=3 {
        let a = m.amplitude(0, 0, t)?;
        println!("t = {t}: A = {a}  vanishes at {:?}", if a.is_zero() { vec![] } else { vanishing_pairs(&a, 8)? });
    }
    Ok(())
}
