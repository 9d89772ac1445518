mod common;

use std::sync::Arc;

use chipfire::bounds::{bounds_report, BoundsInput};
use chipfire::certificates::{bramble_order, scramble_order, treecut_width, uniform_scramble, Certificate};
use chipfire::gonality::{gonality, upper_bound_product, Technique};
use chipfire::{burn, generators, rank, Exec, VertexSet};
use common::*;

#[test]
fn dodecahedron_sequence_replays() {
    let seq = firing_sequence();
    let g = seq.graph.build();
    let mut d = div(&g, seq.start.clone());
    assert_eq!(d.degree(), 6);
    for (i, step) in seq.steps.iter().enumerate() {
        d = d.fire_set(&VertexSet::from(step.fire.as_slice())).unwrap();
        assert_eq!(d.chips(), step.chips.as_slice(), "step {i}");
        assert!(d.is_effective());
    }
    // the pictured configurations: 2s on three vertices, then 1s on six,
    // 1s on six more, 2s on three, then 3 on the far vertex
    let shape = |c: &[i64]| {
        let mut s: Vec<i64> = c.iter().copied().filter(|&x| x > 0).collect();
        s.sort_unstable();
        s
    };
    let shapes: Vec<Vec<i64>> = seq.steps.iter().map(|s| shape(&s.chips)).collect();
    assert_eq!(
        shapes,
        vec![vec![2, 2, 2], vec![1; 6], vec![1; 6], vec![2, 2, 2], vec![1, 1, 1, 3]]
    );
    let start = div(&g, seq.start);
    assert_eq!(rank(&start).unwrap().rank, 1);
}

#[test]
fn dodecahedron_bounds_meet() {
    let g = Arc::new(generators::dodecahedron());
    let seq = firing_sequence();
    let input = BoundsInput {
        certificates: vec![Certificate::Scramble(uniform_scramble(&g, 6).unwrap())],
        witnesses: vec![div(&g, seq.start)],
        ..BoundsInput::default()
    };
    let r = bounds_report(&g, &input, Exec::default()).unwrap();
    assert_eq!((r.best_lower, r.best_upper), (6, 6));
    assert!(r
        .upper
        .iter()
        .any(|b| b.technique == Technique::WitnessDivisor && b.value == 6));
}

/// The chip pattern that stops a fire from an adjacent unchipped pair
/// after two vertices: two chips on both common neighbours, one on each
/// remaining neighbour.
#[test]
fn icosahedron_two_vertex_stop_still_loses() {
    let g = Arc::new(generators::icosahedron());
    let (q, v) = (0, 1);
    let nq: Vec<usize> = g.neighbors(q).iter().map(|&(w, _)| w).filter(|&w| w != v).collect();
    let nv: Vec<usize> = g.neighbors(v).iter().map(|&(w, _)| w).filter(|&w| w != q).collect();
    let mut chips = vec![0i64; 12];
    for w in nq.iter().chain(&nv) {
        chips[*w] += 1;
    }
    assert_eq!(chips.iter().sum::<i64>(), 8);
    assert_eq!(chips.iter().filter(|&&c| c == 2).count(), 2);

    let mut from_q = chips.clone();
    from_q[q] = -1;
    let out = burn(&div(&g, from_q), q).unwrap();
    assert_eq!(out.burned, VertexSet::from([q, v]));

    let unchipped: Vec<usize> = (0..12).filter(|&w| chips[w] == 0 && w != q && w != v).collect();
    let mut total = 0;
    for &q2 in &unchipped {
        let mut c = chips.clone();
        c[q2] = -1;
        if burn(&div(&g, c), q2).unwrap().all_burned() {
            total += 1;
        }
    }
    assert!(total > 0, "some unchipped vertex must burn everything");
    assert!(rank(&div(&g, chips)).unwrap().rank < 1);
}

#[test]
fn triangle_times_square_product_bound() {
    let k3 = Arc::new(generators::complete(3).unwrap());
    let c4 = Arc::new(generators::cycle(4).unwrap());
    let p = upper_bound_product(&k3, &c4, Exec::default()).unwrap();
    assert_eq!((p.gonality_g, p.gonality_h), (2, 2));
    assert_eq!(p.value, 6);
    assert_eq!(p.witness.degree(), 6);
    assert!(rank(&p.witness).unwrap().rank >= 1);
    assert!(gonality(&p.product).unwrap().gonality <= 6);

    let k2 = Arc::new(generators::complete(2).unwrap());
    assert_eq!(upper_bound_product(&k2, &k2, Exec::default()).unwrap().value, 2);
    assert_eq!(gonality(&Arc::new(generators::cycle(4).unwrap())).unwrap().gonality, 2);
}

#[test]
fn grid_bramble_has_order_two() {
    let (_, cert, want) = CertificateFixture::load("grid_bramble.json");
    let Certificate::Bramble(b) = cert else {
        panic!("not a bramble")
    };
    assert_eq!(bramble_order(&b).unwrap().size, want);
}

#[test]
fn widths_dominate_scramble_orders() {
    let ico = Arc::new(generators::icosahedron());
    let widths: Vec<u64> = ["icosahedron_treecut_two_nodes.json", "icosahedron_treecut_star.json"]
        .iter()
        .map(|name| {
            let (g, cert, want) = CertificateFixture::load(name);
            let Certificate::TreeCut(t) = cert else {
                panic!("not a decomposition")
            };
            let w = treecut_width(&t, &g).unwrap().width;
            assert_eq!(w, want, "{name}");
            w
        })
        .collect();
    let scrambles = [
        uniform_scramble(&ico, 1).unwrap(),
        uniform_scramble(&ico, 2).unwrap(),
        uniform_scramble(&ico, 3).unwrap(),
    ];
    for s in &scrambles {
        let order = scramble_order(s).unwrap().order;
        for &w in &widths {
            assert!(order <= w, "order {order} exceeds width {w}");
        }
    }
}

#[test]
fn every_certificate_fixture_binds() {
    let dir = fixture_path("");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        if name.ends_with(".json") && name != "dodecahedron_firing_sequence.json" {
            let (g, cert, want) = CertificateFixture::load(&name);
            let got = match &cert {
                Certificate::Scramble(s) => scramble_order(s).unwrap().order,
                Certificate::Bramble(b) => bramble_order(b).unwrap().size,
                Certificate::TreeCut(t) => treecut_width(t, &g).unwrap().width,
            };
            assert_eq!(got, want, "{name}");
            count += 1;
        }
    }
    assert_eq!(count, 8);
}
