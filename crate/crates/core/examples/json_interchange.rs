//! Round-trips a network and a diagram through the JSON formats.

use skeinlab::diagram::{MorseDiagram, MorseStep::*};
use skeinlab::io::{diagram_from_json, diagram_to_json, network_from_json, network_to_json};
use skeinlab::network::library::theta_net;
use skeinlab::network::DEFAULT_STATE_BUDGET;

fn main() -> skeinlab::Result<()> {
    let text = network_to_json(&theta_net(2, 2, 2));
    println!("{text}");
    let net = network_from_json(&text)?;
    println!("value {}", net.evaluate_brute(DEFAULT_STATE_BUDGET)?);

    let d = MorseDiagram::new(vec![Cup(0), Cup(1), Cross(0), Cap(1), Cap(0)])?.to_diagram();
    let again = diagram_from_json(&diagram_to_json(&d))?;
    println!("diagram value {}", again.contract()?);
    Ok(())
}
