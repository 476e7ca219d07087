//! Loop, theta, tetrahedron and recoupling coefficients.

use skeinlab::recoupling::{delta, sixj, tet, theta, TetLabels};

fn main() -> skeinlab::Result<()> {
    for n in 0..=6 {
        print!("delta({n}) = {}  ", delta(n));
    }
    println!();
    println!("theta(2,2,2) = {}", theta(2, 2, 2)?);
    println!("theta(1,2,3) = {}", theta(1, 2, 3)?);
    println!("tet(2,2,2;2,2,2) = {}", tet(&TetLabels::new(2, 2, 2, 2, 2, 2))?);
    println!("6j(1,1,0;1,1,2) = {}", sixj(1, 1, 0, 1, 1, 2)?);
    match theta(1, 1, 1) {
        Ok(v) => println!("theta(1,1,1) = {v}"),
        Err(e) => println!("theta(1,1,1): {e}"),
    }
    Ok(())
}
