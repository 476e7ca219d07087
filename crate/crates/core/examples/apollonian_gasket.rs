//! Generates the (-1, 2, 2, 3) gasket, converts it to a network and writes
//! an SVG next to the working directory.

use skeinlab::apollonian::{generate_apollonian, packing_to_network, render_svg};
use skeinlab::Rational;

fn main() -> skeinlab::Result<()> {
    let root = [-1, 2, 2, 3].map(Rational::from);
    let p = generate_apollonian(root, 3)?;
    p.validate()?;
    println!("{} disks, {} tangencies, {} regions", p.disks.len(), p.tangencies.len(), p.regions.len());
    let curvatures: Vec<String> = p.disks.iter().take(12).map(|d| d.curvature.to_string()).collect();
    println!("first curvatures: {}", curvatures.join(" "));
    let net = packing_to_network(&p)?.closed()?;
    println!("network: {} vertices, {} edges", net.vertices().len(), net.edges().len());
    for v in net.validate().iter().take(3) {
        println!("  {v}");
    }
    let path = std::env::temp_dir().join("gasket.svg");
    std::fs::write(&path, render_svg(&p)?)?;
    println!("wrote {}", path.display());
    Ok(())
}
