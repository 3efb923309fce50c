use finite_dynamics::ca::eca::eca_relation;
use finite_dynamics::galois::interpolate;

fn main() -> finite_dynamics::Result<()> {
    for rule in [15u8, 30, 90, 110] {
        let r = eca_relation(rule);
        let d = r.decompose();
        println!("rule {rule}: {}  polynomial {}", r.bits().to_bit_string(), interpolate(&r, 2)?);
        for c in r.proper_consequences() {
            println!("  consequence {} on {:?}", c.bits().to_bit_string(), c.domain().labels());
        }
        println!("  principal factor {}", r.principal_factor().bits().to_bit_string());
        println!("  reconstructs: {}", d.verify());
    }
    Ok(())
}
