use finite_dynamics::group::{automorphisms, Graph};
use finite_dynamics::meso::{convex_intruders, micro_table, SpinModel};
use num_rational::Rational64;

fn main() -> finite_dynamics::Result<()> {
    let graph = Graph::dodecahedron();
    let aut = automorphisms(&graph)?;
    let model = SpinModel::uniform(graph, 1, Rational64::from_integer(0));
    let table = micro_table(&model, &aut.group, true, false)?;
    println!("states: {}", table.total());
    for (e, s) in table.entropy_curve() {
        println!("E = {e:>4}  E/N = {:>6.2}  S = {s:.4}", *e.numer() as f64 / 20.0);
    }
    for i in convex_intruders(&table) {
        println!(
            "convex intruder E/N in [{:.2}, {:.2}] at levels {:?}",
            i.specific[0],
            i.specific[1],
            i.levels.iter().map(|l| l.energy.as_str()).collect::<Vec<_>>()
        );
    }
    Ok(())
}
