//! Closed forms for the chromatic evaluation of two, three and four mutually
//! tangent disks, indexed by curvature.

use crate::error::{Error, Result};
use crate::numerics::{binomial, multinomial, Rational};

fn binom(n: u32, k: u32) -> Rational {
    Rational::from(binomial(n, k as i64))
}

fn parity(n: u32) -> Rational {
    Rational::sign_power(n as u64)
}

/// Two tangent disks: `(-1)^(a+b) (a+b+1)`.
pub fn eval_two(a: u32, b: u32) -> Rational {
    parity(a + b) * Rational::from((a + b + 1) as i64)
}

/// Three mutually tangent disks, with the sign `(-1)^(a+b+c)`.
pub fn eval_three(a: u32, b: u32, c: u32) -> Rational {
    parity(a + b + c) * eval_three_unsigned(a, b, c)
}

/// Three mutually tangent disks as a bare factorial ratio, without sign.
pub fn eval_three_unsigned(a: u32, b: u32, c: u32) -> Rational {
    let num = Rational::from(multinomial(a + b + c + 1, &[a, b, c, 1]).expect("parts sum"));
    let den = binom(a + b, a) * binom(b + c, b) * binom(c + a, c);
    num / den
}

/// Four mutually tangent disks (a Descartes configuration).
pub fn eval_four(a: u32, b: u32, c: u32, d: u32) -> Rational {
    let s = a + b + c + d;
    let m = a.min(b).min(c).min(d);
    let lead = Rational::from(multinomial(s + 1, &[a, b, c, d, 1]).expect("parts sum"));
    let den = binom(a + b, a)
        * binom(a + c, a)
        * binom(a + d, a)
        * binom(b + c, b)
        * binom(b + d, b)
        * binom(c + d, c);
    (0..=m)
        .map(|k| {
            let num = binom(a, k) * binom(b, k) * binom(c, k) * binom(d, k) * &lead;
            parity(s + k) * num / (&den * &binom(s + 1, k))
        })
        .sum()
}

/// `eval_three(a,b,c) / eval_two(a,b)` as a single binomial ratio.
pub fn three_over_two(a: u32, b: u32, c: u32) -> Rational {
    parity(c) * binom(1 + a + b + c, c) / (binom(a + c, c) * binom(b + c, c))
}

/// Factor by which inserting a disk of curvature `d` into the ideal triangle
/// `(a, b, c)` changes the evaluation: `eval_four / eval_three`.
pub fn insertion_ratio(a: u32, b: u32, c: u32, d: u32) -> Result<Rational> {
    if eval_three(a, b, c).is_zero() {
        return Err(Error::Degenerate(format!("three-disk value of ({a}, {b}, {c}) is zero")));
    }
    let m = a.min(b).min(c).min(d);
    let den = binom(a + d, d) * binom(b + d, d) * binom(c + d, d);
    Ok((0..=m)
        .map(|k| {
            let num = binom(a, k) * binom(b, k) * binom(c, k) * binom(1 + a + b + c + d - k, d - k);
            parity(d + k) * num / &den
        })
        .sum())
}
