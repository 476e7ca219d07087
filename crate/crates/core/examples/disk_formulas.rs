//! Evaluations of two, three and four mutually tangent disks.

use skeinlab::apollonian::{eval_four, eval_three, eval_two, insertion_ratio, three_over_two};

fn main() -> skeinlab::Result<()> {
    for b in 1..=4 {
        println!("two disks (1, {b}): {}", eval_two(1, b));
    }
    println!("three disks (1,1,1): {}", eval_three(1, 1, 1));
    println!("four disks (1,1,1,1): {}", eval_four(1, 1, 1, 1));
    println!("three/two at (2,3,1): {}", three_over_two(2, 3, 1));
    println!("inserting 1 into (1,1,1): factor {}", insertion_ratio(1, 1, 1, 1)?);
    Ok(())
}
