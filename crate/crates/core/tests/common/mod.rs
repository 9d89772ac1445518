#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use chipfire::certificates::{Certificate, CertificateJson};
use chipfire::generators;
use chipfire::gonality::{gonality_with, GonalityOptions, Strategy as Search};
use chipfire::graph::GraphJson;
use chipfire::{burn, q_reduce, verify_riemann_roch, Divisor, FiringScript, Multigraph, VertexSet};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use serde::Deserialize;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

#[derive(Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Family(String),
    Explicit(GraphJson),
}

impl GraphRef {
    pub fn build(&self) -> Arc<Multigraph> {
        Arc::new(match self {
            GraphRef::Family(name) => generators::by_name(name, None).unwrap(),
            GraphRef::Explicit(json) => Multigraph::from_json(json).unwrap(),
        })
    }
}

#[derive(Deserialize)]
pub struct CertificateFixture {
    pub graph: GraphRef,
    pub certificate: CertificateJson,
    pub expected_order: Option<u64>,
    pub expected_width: Option<u64>,
}

impl CertificateFixture {
    pub fn load(name: &str) -> (Arc<Multigraph>, Certificate, u64) {
        let text = std::fs::read_to_string(fixture_path(name)).unwrap();
        let f: CertificateFixture = serde_json::from_str(&text).unwrap();
        let g = f.graph.build();
        let cert = f.certificate.bind(&g).unwrap();
        let expected = f.expected_order.or(f.expected_width).expect("fixture states its value");
        (g, cert, expected)
    }
}

#[derive(Deserialize)]
pub struct FiringStepFixture {
    pub fire: Vec<usize>,
    pub chips: Vec<i64>,
}

#[derive(Deserialize)]
pub struct FiringSequence {
    pub graph: GraphRef,
    pub start: Vec<i64>,
    pub steps: Vec<FiringStepFixture>,
}

pub fn firing_sequence() -> FiringSequence {
    let text = std::fs::read_to_string(fixture_path("dodecahedron_firing_sequence.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Connected multigraph on `n` vertices: a spanning tree from `parents`
/// plus `extra` edges (repeats add multiplicity, loops are dropped).
pub fn build_graph(n: usize, parents: &[usize], extra: &[(usize, usize)]) -> Arc<Multigraph> {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (parents[v - 1] % v, v)).collect();
    edges.extend(extra.iter().map(|&(a, b)| (a % n, b % n)).filter(|(a, b)| a != b));
    Arc::new(Multigraph::from_edges(n, &edges).unwrap())
}

/// Small connected multigraphs with genus at most `max_extra`.
pub fn small_graph(max_n: usize, max_extra: usize) -> impl Strategy<Value = Arc<Multigraph>> {
    (2..=max_n).prop_flat_map(move |n| {
        (
            proptest::collection::vec(0..n, n - 1),
            proptest::collection::vec((0..n, 0..n), 0..=max_extra),
        )
            .prop_map(move |(parents, extra)| build_graph(n, &parents, &extra))
    })
}

pub fn graph_and_chips(lo: i64, hi: i64) -> impl Strategy<Value = (Arc<Multigraph>, Vec<i64>)> {
    small_graph(6, 4).prop_flat_map(move |g| {
        let n = g.vertex_count();
        (Just(g), proptest::collection::vec(lo..=hi, n))
    })
}

pub fn div(g: &Arc<Multigraph>, chips: Vec<i64>) -> Divisor {
    Divisor::new(g.clone(), chips).unwrap()
}

/// Firing a script one vertex at a time, in any order, lands on the same
/// divisor as applying it at once.
pub fn check_firing_order(g: &Arc<Multigraph>, chips: &[i64], script: &[i64], seed: u64) -> Result<(), TestCaseError> {
    let d = div(g, chips.to_vec());
    let all_at_once = d
        .apply_script(&FiringScript {
            fire_count: script.to_vec(),
        })
        .unwrap();
    let mut moves: Vec<(usize, i64)> = Vec::new();
    for (v, &k) in script.iter().enumerate() {
        for _ in 0..k.abs() {
            moves.push((v, k.signum()));
        }
    }
    let mut rng = seed;
    for i in (1..moves.len()).rev() {
        rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        moves.swap(i, (rng >> 33) as usize % (i + 1));
    }
    let mut step = d.clone();
    for (v, sign) in moves {
        step = if sign > 0 {
            step.fire_vertex(v).unwrap()
        } else {
            // borrowing is firing every other vertex once
            step.fire_set(&VertexSet::singleton(v).complement(g.vertex_count()))
                .unwrap()
        };
    }
    prop_assert_eq!(step.chips(), all_at_once.chips());
    Ok(())
}

pub fn check_degree_conservation(g: &Arc<Multigraph>, chips: &[i64], set: &[bool]) -> Result<(), TestCaseError> {
    let d = div(g, chips.to_vec());
    let s: VertexSet = (0..g.vertex_count()).filter(|&v| set[v % set.len()]).collect();
    prop_assert_eq!(d.fire_set(&s).unwrap().degree(), d.degree());
    Ok(())
}

/// Equivalent divisors share one q-reduced form, and that form is
/// q-reduced by direct inspection.
pub fn check_reduced_uniqueness(
    g: &Arc<Multigraph>,
    chips: &[i64],
    script: &[i64],
    q: usize,
) -> Result<(), TestCaseError> {
    let n = g.vertex_count();
    let q = q % n;
    let d = div(g, chips.to_vec());
    let moved = d
        .apply_script(&FiringScript {
            fire_count: script.to_vec(),
        })
        .unwrap();
    let a = q_reduce(&d, q).unwrap();
    let b = q_reduce(&moved, q).unwrap();
    prop_assert_eq!(a.chips(), b.chips());
    prop_assert!((0..n).filter(|&v| v != q).all(|v| a.get(v) >= 0));
    // no nonempty set avoiding q can fire without debt
    for mask in 1u32..(1 << n) {
        if mask & (1 << q) != 0 {
            continue;
        }
        let s: VertexSet = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let fired = a.fire_set(&s).unwrap();
        prop_assert!((0..n).any(|v| v != q && fired.get(v) < 0), "legal firing of {:?}", s);
    }
    Ok(())
}

/// Naive burn in a shuffled order.
fn burn_oracle(g: &Multigraph, chips: &[i64], q: usize, seed: u64) -> Vec<bool> {
    let n = g.vertex_count();
    let mut burned = vec![false; n];
    burned[q] = true;
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = seed | 1;
    loop {
        for i in (1..n).rev() {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            order.swap(i, rng as usize % (i + 1));
        }
        let next = order.iter().copied().find(|&v| {
            !burned[v]
                && g.neighbors(v)
                    .iter()
                    .filter(|(w, _)| burned[*w])
                    .map(|&(_, m)| m as i64)
                    .sum::<i64>()
                    > chips[v]
        });
        match next {
            Some(v) => burned[v] = true,
            None => return burned,
        }
    }
}

pub fn check_burn_order(g: &Arc<Multigraph>, chips: &[i64], q: usize, seed: u64) -> Result<(), TestCaseError> {
    let n = g.vertex_count();
    let q = q % n;
    let mut chips = chips.to_vec();
    chips[q] = -1;
    let out = burn(&div(g, chips.clone()), q).unwrap();
    let oracle = burn_oracle(g, &chips, q, seed);
    for (v, &burned) in oracle.iter().enumerate() {
        prop_assert_eq!(out.burned.contains(v), burned);
    }
    Ok(())
}

pub fn check_riemann_roch(g: &Arc<Multigraph>, chips: &[i64]) -> Result<(), TestCaseError> {
    let d = div(g, chips.to_vec());
    let genus = g.genus().unwrap() as i64;
    prop_assume!(d.degree() >= -2 && d.degree() <= 2 * genus);
    let rr = verify_riemann_roch(g, &d).unwrap();
    prop_assert!(rr.holds);
    prop_assert_eq!(rr.rank - rr.rank_of_complement, d.degree() + 1 - genus);
    Ok(())
}

pub fn check_genus_bound(g: &Arc<Multigraph>) -> Result<(), TestCaseError> {
    let gon = chipfire::gonality::gonality(g).unwrap().gonality;
    prop_assert!(gon <= g.genus().unwrap() + 1);
    Ok(())
}

pub fn check_pruned_matches_raw(g: &Arc<Multigraph>) -> Result<(), TestCaseError> {
    let pruned = chipfire::gonality::gonality(g).unwrap().gonality;
    let raw = gonality_with(
        g,
        &GonalityOptions {
            strategy: Search::Raw,
            use_lower_bounds: false,
            ..GonalityOptions::default()
        },
    )
    .unwrap()
    .gonality;
    prop_assert_eq!(pruned, raw);
    Ok(())
}

pub fn script_strategy() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, 6)
}

pub fn fit(script: &[i64], n: usize) -> Vec<i64> {
    script.iter().copied().cycle().take(n).collect()
}
