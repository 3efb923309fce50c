use finite_dynamics::group::{PermGroup, SplitExtension, Twist};

fn main() -> finite_dynamics::Result<()> {
    for (m, k) in [(0u8, 0i64), (1, -1), (1, 1)] {
        let w = SplitExtension::new(PermGroup::symmetric(3), PermGroup::symmetric(2), Twist::power(m, k)?)?;
        let els = w.elements()?;
        let e = w.identity();
        let inverses = els.iter().all(|u| w.inverse(u).and_then(|v| w.multiply(u, &v)).is_ok_and(|p| p == e));
        println!("m = {m} k = {k:>2}: |W| = {}, inverses ok: {inverses}", els.len());
        let u = &els[13];
        println!("  state [0,1,1] * u = {:?}", w.act(&[0, 1, 1], u)?);
    }
    Ok(())
}
