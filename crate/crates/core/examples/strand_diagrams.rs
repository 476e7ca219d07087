//! Circle, figure-eight and Reidemeister rewrites, evaluated by tensor
//! contraction and by the loop rule.

use skeinlab::diagram::{MorseDiagram, MorseStep::*};

fn main() -> skeinlab::Result<()> {
    let circle = MorseDiagram::new(vec![Cup(0), Cap(0)])?;
    let eight = circle.with_twist(1, 0)?;
    let two = MorseDiagram::new(vec![Cup(0), Cup(2), Cap(1), Cap(0)])?;
    let hopf_like = two.with_double_crossing(2, 1)?;
    let braid = MorseDiagram::new(vec![Cup(0), Cup(2), Cup(4), Cap(4), Cap(2), Cap(0)])?;
    let (left, right) = (braid.with_triangle_left(3, 1)?, braid.with_triangle_right(3, 1)?);
    for (name, m) in [
        ("circle", &circle),
        ("figure-eight", &eight),
        ("wavy circle", &two),
        ("R2 on the wavy circle", &hopf_like),
        ("R3 left", &left),
        ("R3 right", &right),
    ] {
        let d = m.to_diagram();
        println!("{name:>22}: contract {:>3}  loops {:>3}", d.contract()?, d.loop_value());
    }
    let d = eight.to_diagram();
    for (c, t) in d.skein_resolve() {
        println!("skein term {c} x {}", t.contract()?);
    }
    Ok(())
}
