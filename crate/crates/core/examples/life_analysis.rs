use finite_dynamics::ca::life::{life_polynomial, life_relation, NEXT};
use finite_dynamics::galois::interpolate;

fn main() -> finite_dynamics::Result<()> {
    let r = life_relation();
    println!("|R| = {}", r.cardinality());
    println!("x10 determined by the rest: {}", r.is_functional(NEXT)?);
    let cons = r.proper_consequences();
    println!("{} proper consequences, reducible: {}", cons.len(), r.is_reducible());
    for c in &cons {
        println!("  {:?} |C| = {}", c.domain().labels(), c.cardinality());
    }
    let p = interpolate(&r, 2)?;
    println!("interpolation matches the closed form: {}", p.same_function(&life_polynomial()));
    println!("{} monomials", p.terms().len());
    Ok(())
}
