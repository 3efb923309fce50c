use finite_dynamics::emergence::{compare, cone, exact_argmax, gauss_argmax, Cone, HistoryPoint};

fn main() -> finite_dynamics::Result<()> {
    let rows = compare(200, 0.0)?;
    let worst = rows
        .iter()
        .filter(|r| (r.x as f64).abs() <= 2.0 * 200f64.sqrt())
        .map(|r| (r.exact - r.approx).abs() / r.exact)
        .fold(0.0, f64::max);
    println!("max central relative deviation at t = 200: {worst:.4}");
    println!("gaussian argmax at t = 30 toward (20, 60): {}", gauss_argmax(30, 20, 60, 0.3)?);
    println!("exact argmax: {:?}", exact_argmax(30, 20, 60)?);
    let p = HistoryPoint::new(vec![1, 0]);
    let q = HistoryPoint::new(vec![2, 1]);
    assert_eq!(cone(&p, &q)?, Cone::Past);
    println!("(1,0) lies in the past of (2,1)");
    Ok(())
}
