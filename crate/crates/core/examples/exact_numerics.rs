//! Exact rationals, factorials and binomials.

use skeinlab::numerics::{binomial, factorial, multinomial};
use skeinlab::Rational;

fn main() -> skeinlab::Result<()> {
    println!("30! = {}", factorial(30));
    println!("C(40, 20) = {}", binomial(40, 20));
    println!("(4; 1,1,1,1) = {}", multinomial(4, &[1, 1, 1, 1])?);
    let x = Rational::new(3, 2)?;
    let y: Rational = "-5/6".parse()?;
    println!("{x} + {y} = {}", &x + &y);
    println!("{x} / {y} = {}", x.checked_div(&y)?);
    println!("sqrt(49/4) = {:?}", Rational::new(49, 4)?.sqrt_exact().map(|r| r.to_string()));
    Ok(())
}
