use finite_dynamics::quantum::{s3, CharTable};

fn main() {
    let r = s3::embedding_check(0.3, -1.1);
    println!("unitarity error {:.2e}", r.unitarity_error);
    println!("conjugation error {:.2e}", r.conjugation_error);
    for (name, m) in &r.permutation_matrices {
        println!("{name}: {m:?}");
    }
    let t = CharTable::s3().check();
    println!("orthogonal {}  sum of squares {}", t.orthogonal, t.sum_of_squares);
}
