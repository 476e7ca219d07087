use proptest::prelude::*;
use skeinlab::apollonian::{
    descartes_fourth, descartes_holds, eval_four, eval_three, eval_two, generate_apollonian,
    generate_ford, packing_to_network, render_svg, CirclePacking, Shape,
};
use skeinlab::network::DEFAULT_STATE_BUDGET;
use skeinlab::recoupling::{tet, TetLabels};
use skeinlab::Rational;

fn root(b: [i64; 4]) -> [Rational; 4] {
    b.map(Rational::from)
}

#[test]
fn four_disk_sum_is_the_tetrahedron() {
    for a in 0..=4 {
        for b in 0..=4 {
            for c in 0..=4 {
                for d in 0..=4 {
                    let t = TetLabels::new(c + d, a + d, b + d, a + b, b + c, c + a);
                    assert_eq!(eval_four(a, b, c, d), tet(&t).unwrap());
                }
            }
        }
    }
}

#[test]
fn basic_configurations_evaluate_as_networks() {
    for (a, b, c, d) in [(1, 1, 1, 1), (1, 2, 1, 3), (2, 1, 0, 1)] {
        let two = packing_to_network(&CirclePacking::two_disks(a, b)).unwrap().closed().unwrap();
        assert_eq!(two.evaluate_brute(DEFAULT_STATE_BUDGET).unwrap(), eval_two(a, b));
        let three = packing_to_network(&CirclePacking::three_disks(a, b, c)).unwrap().closed().unwrap();
        assert_eq!(three.evaluate_brute(DEFAULT_STATE_BUDGET).unwrap(), eval_three(a, b, c));
        let four = packing_to_network(&CirclePacking::four_disks(a, b, c, d)).unwrap().closed().unwrap();
        assert_eq!(four.evaluate_recoupling().unwrap(), eval_four(a, b, c, d));
    }
}

#[test]
fn integral_gasket_is_tangent_and_closed() {
    let p = generate_apollonian(root([-1, 2, 2, 3]), 3).unwrap();
    assert!(p.exact);
    p.validate().unwrap();
    for &[i, j] in &p.tangencies {
        assert_eq!(p.tangent(i, j), Some(true));
    }
    let conv = packing_to_network(&p).unwrap();
    assert!(conv.open_ends.is_empty());
    let net = conv.closed().unwrap();
    // only regions touching the enclosing circle can break admissibility
    let label = |i: usize, j: usize| (&p.disks[i].curvature + &p.disks[j].curvature).to_i64().unwrap() as u32;
    let mut expected = 0;
    for r in &p.regions {
        let (a, b, c) = (label(r[0], r[1]), label(r[1], r[2]), label(r[2], r[0]));
        if skeinlab::recoupling::admissible(a, b, c).is_none() {
            assert!(r.iter().any(|&k| p.disks[k].curvature.is_negative()));
            expected += 1;
        }
    }
    assert_eq!(net.vertices().len(), p.regions.len());
    assert_eq!(net.validate().len(), expected);
}

#[test]
fn positive_root_gives_an_admissible_network() {
    let p = generate_apollonian(root([2, 2, 3, 15]), 0).unwrap();
    let net = packing_to_network(&p).unwrap().closed().unwrap();
    assert!(net.validate().is_empty());
}

#[test]
fn ford_neighbours_are_farey_neighbours() {
    let pk = generate_ford(8).unwrap();
    pk.validate().unwrap();
    let frac = |i: usize| match &pk.disks[i].shape {
        Shape::Circle { center, .. } => Some(center[0].clone()),
        _ => None,
    };
    for &[i, j] in &pk.tangencies {
        let (Some(x), Some(y)) = (frac(i), frac(j)) else { continue };
        let det = x.numer() * y.denom() - y.numer() * x.denom();
        assert_eq!(det.magnitude(), &num_bigint::BigUint::from(1u32), "{x} and {y}");
    }
    // q_max = 8 gives the Farey sequence of order 8: 23 fractions in [0, 1]
    assert_eq!(pk.disks.len() - 1, 23);
}

#[test]
fn rendering_is_deterministic() {
    let p = generate_apollonian(root([-1, 2, 2, 3]), 2).unwrap();
    let a = render_svg(&p).unwrap();
    assert_eq!(a, render_svg(&p).unwrap());
    assert!(a.starts_with("<svg"));
    assert!(render_svg(&CirclePacking::three_disks(1, 1, 1)).is_err());
}

/// Positive `b1, b2, b3` with `b1 b2 + b2 b3 + b3 b1` a perfect square.
fn integral_triple() -> impl Strategy<Value = (i64, i64, i64)> {
    (1i64..12, 1i64..12, 1i64..40).prop_filter_map("no integral third curvature", |(b1, b2, s)| {
        let rest = s * s - b1 * b2;
        (rest > 0 && rest % (b1 + b2) == 0).then(|| (b1, b2, rest / (b1 + b2)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_quadruples_satisfy_descartes((b1, b2, b3) in integral_triple(), depth in 0u32..3) {
        let sol = descartes_fourth(&Rational::from(b1), &Rational::from(b2), &Rational::from(b3)).unwrap();
        prop_assert!(sol.exact);
        let root = [Rational::from(b1), Rational::from(b2), Rational::from(b3), sol.plus.clone()];
        prop_assert!(descartes_holds(&root));
        // a zero fill is a straight line, which the generator refuses
        let p = match generate_apollonian(root, depth) {
            Err(skeinlab::Error::Geometry(_)) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assert!(p.validate().is_ok());
        // every disk born in a region closes a Descartes quadruple with it
        for k in 4..p.disks.len() {
            let nb: Vec<usize> = p.tangencies.iter()
                .filter_map(|&[i, j]| if i == k { Some(j) } else if j == k { Some(i) } else { None })
                .filter(|&o| p.disks[o].generation < p.disks[k].generation)
                .collect();
            prop_assert_eq!(nb.len(), 3);
            let q = [nb[0], nb[1], nb[2], k].map(|i| p.disks[i].curvature.clone());
            prop_assert!(descartes_holds(&q));
        }
    }
}
