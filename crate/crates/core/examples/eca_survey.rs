use finite_dynamics::ca::eca::{rules_with_face_table, survey};

fn main() -> finite_dynamics::Result<()> {
    let s = survey();
    println!("reducible {}  irreducible {}  prime {:?}", s.reducible, s.irreducible, s.prime);
    let rs = rules_with_face_table("1101", false)?;
    println!("{} rules have 1101 on a face: {rs:?}", rs.len());
    Ok(())
}
