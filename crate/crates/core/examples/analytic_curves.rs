//! Samples the continued theta along three lines and prints a few points.

use skeinlab::analytic::{sample, samples_to_csv, AnalyticFn, SamplePath};

fn main() -> skeinlab::Result<()> {
    for (label, path, range) in [("attractor", "1,x,x", "1:40"), ("sink", "x,x,x", "2:12"), ("growth", "1,1,x", "0:40")] {
        let s = sample(AnalyticFn::Theta, &SamplePath::parse(path, range, 4)?)?;
        println!("{label} along ({path}):");
        print!("{}", samples_to_csv(&s));
    }
    let spiral = sample(AnalyticFn::Delta, &SamplePath::parse("1,x", "-3:7", 8)?)?;
    for (t, z) in spiral {
        println!("delta(1, {t}) = {z}");
    }
    Ok(())
}
