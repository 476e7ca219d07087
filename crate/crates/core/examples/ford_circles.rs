//! Ford circles up to denominator 13 and the labels of their network.

use skeinlab::apollonian::{generate_ford, packing_to_network, Shape};

fn main() -> skeinlab::Result<()> {
    let p = generate_ford(13)?;
    let conv = packing_to_network(&p)?;
    let pairs = conv.edge_disks.clone();
    let net = conv.closed()?;
    let name = |i: usize| match &p.disks[i].shape {
        Shape::Circle { center, .. } => center[0].to_string(),
        _ => "line".to_string(),
    };
    for (e, [i, j]) in net.edges().iter().zip(pairs).take(24) {
        println!("{:>6} -- {:<6} label {}", name(i), name(j), e.label);
    }
    println!("... {} edges in all", net.edges().len());
    Ok(())
}
