//! Building a network, checking it, and evaluating it two ways.

use skeinlab::network::library::prism_net;
use skeinlab::network::{NetworkBuilder, DEFAULT_STATE_BUDGET};

fn main() -> skeinlab::Result<()> {
    let theta = NetworkBuilder::new()
        .edge("a", 1)
        .edge("b", 2)
        .edge("c", 3)
        .vertex("u", ["a", "b", "c"])
        .vertex("v", ["a", "c", "b"])
        .build()?;
    println!("theta(1,2,3): {} states", theta.state_count());
    println!("  brute force {}", theta.evaluate_brute(DEFAULT_STATE_BUDGET)?);
    println!("  recoupling  {}", theta.evaluate_recoupling()?);

    let prism = prism_net([2, 2, 2], [2, 2, 2], [2, 2, 2]);
    println!("prism: {} vertices, {} states", prism.vertices().len(), prism.state_count());
    let (v, how) = prism.evaluate_auto(DEFAULT_STATE_BUDGET)?;
    println!("  value {v} via {how:?}");
    println!("  brute force {}", prism.evaluate_brute(DEFAULT_STATE_BUDGET)?);
    Ok(())
}
