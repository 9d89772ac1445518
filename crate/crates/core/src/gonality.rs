//! Exact gonality by exhaustive search over divisor classes.

use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::compositions::Compositions;
use crate::dhar::{burn_raw, has_rank_at_least, has_rank_at_least_one, rank};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::generators::cartesian_product;
use crate::graph::Multigraph;
use crate::independence::maximum_independent_set;

/// Where a bound on the gonality comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Technique {
    MinDegree,
    Bramble,
    Scramble,
    Exhaustive,
    Independence,
    Product,
    GenusPlusOne,
    WitnessDivisor,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of candidate divisors tested.
    pub max_nodes: Option<u64>,
    #[serde(with = "opt_secs")]
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }
}

mod opt_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        d.map(|d| d.as_secs_f64()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.map(Duration::from_secs_f64))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// One reduced representative per class.
    Reduced,
    /// Every effective placement of the given degree.
    Raw,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GonalityOptions {
    /// Target rank; 1 is ordinary gonality.
    pub rank: u64,
    pub budget: Budget,
    pub strategy: Strategy,
    /// Start the degree ladder at the best known lower bound instead of at
    /// `rank`.
    pub use_lower_bounds: bool,
    /// Extra verified lower bounds, e.g. from certificates.
    pub extra_lower_bounds: Vec<(u64, Technique)>,
    pub exec: Exec,
}

impl Default for GonalityOptions {
    fn default() -> Self {
        GonalityOptions {
            rank: 1,
            budget: Budget::unlimited(),
            strategy: Strategy::Reduced,
            use_lower_bounds: true,
            extra_lower_bounds: Vec::new(),
            exec: Exec::default(),
        }
    }
}

/// Why no smaller degree works.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LowerBoundProof {
    /// Rank never exceeds degree.
    Trivial,
    /// Every candidate of this degree was checked and failed.
    Exhaustive { degree: u64, candidates: u64 },
    /// A verified bound from elsewhere matched the answer.
    Bound { technique: Technique, value: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct GonalityResult {
    pub gonality: u64,
    pub rank: u64,
    pub winning_divisor: Divisor,
    /// Degree `gonality - 1`, the largest degree shown to fail.
    pub refutation_degree: u64,
    pub lower_bound: LowerBoundProof,
    pub strategy: Strategy,
    pub candidates_checked: u64,
}

/// Divisor of minimum degree with rank at least one.
pub fn gonality(g: &Arc<Multigraph>) -> Result<GonalityResult> {
    gonality_with(g, &GonalityOptions::default())
}

/// Minimum degree of a divisor of rank at least `r`.
pub fn higher_gonality(g: &Arc<Multigraph>, r: u64, budget: Budget) -> Result<GonalityResult> {
    gonality_with(
        g,
        &GonalityOptions {
            rank: r,
            budget,
            ..GonalityOptions::default()
        },
    )
}

pub fn gonality_with(g: &Arc<Multigraph>, opts: &GonalityOptions) -> Result<GonalityResult> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let r = opts.rank;
    if r == 0 {
        return Err(Error::Precondition("rank must be at least 1".into()));
    }
    let genus = g.genus()?;
    // any divisor of degree g + r has rank >= r by Riemann-Roch
    let upper = genus + r;

    let mut start = (r, None);
    if opts.use_lower_bounds {
        let delta = g.simplified().min_degree();
        let mut known = vec![(delta, Technique::MinDegree)];
        known.extend(opts.extra_lower_bounds.iter().copied());
        for (value, technique) in known {
            if value > start.0 {
                start = (value, Some(technique));
            }
        }
    }
    let (start, start_technique) = start;
    if start > upper {
        return Err(Error::Precondition(format!(
            "lower bound {start} exceeds the upper bound g + r = {upper}"
        )));
    }

    let clock = Instant::now();
    let mut checked = 0u64;
    let mut last_refuted: Option<(u64, u64)> = None;
    for degree in start..=upper {
        let (found, tried) = search_degree(g, degree, r, opts, &clock, checked, start)?;
        checked += tried;
        let Some(chips) = found else {
            last_refuted = Some((degree, tried));
            continue;
        };
        let winning_divisor = Divisor::from_raw(g.clone(), chips);
        let verified = rank(&winning_divisor)?.rank;
        assert!(
            verified >= r as i64,
            "search returned {winning_divisor:?} but its rank is {verified}"
        );
        let lower_bound = match (last_refuted, start_technique) {
            (Some((d, c)), _) => LowerBoundProof::Exhaustive {
                degree: d,
                candidates: c,
            },
            (None, Some(technique)) => LowerBoundProof::Bound {
                technique,
                value: start,
            },
            (None, None) => LowerBoundProof::Trivial,
        };
        return Ok(GonalityResult {
            gonality: degree,
            rank: r,
            winning_divisor,
            refutation_degree: degree - 1,
            lower_bound,
            strategy: opts.strategy,
            candidates_checked: checked,
        });
    }
    unreachable!("degree g + r always has a divisor of rank r")
}

const CHUNK: usize = 2048;

/// Lexicographically least winner of the given degree, if any.
fn search_degree(
    g: &Multigraph,
    degree: u64,
    r: u64,
    opts: &GonalityOptions,
    clock: &Instant,
    already: u64,
    lower: u64,
) -> Result<(Option<Vec<i64>>, u64)> {
    let mut tried = 0u64;
    let check = |chips: &Vec<i64>| -> bool {
        let ok = if r == 1 {
            has_rank_at_least_one(g, chips)
        } else {
            has_rank_at_least(g, chips, r as i64)
        };
        // the only failure mode is overflow, impossible with these sizes
        ok.unwrap_or(false)
    };
    let candidates: Box<dyn Iterator<Item = Vec<i64>>> = match opts.strategy {
        Strategy::Reduced => Box::new(reduced_candidates(g, 0, degree as i64, r as i64).into_iter()),
        Strategy::Raw => Box::new(Compositions::new(degree as i64, g.vertex_count())),
    };
    let mut candidates = candidates;
    loop {
        let chunk: Vec<Vec<i64>> = candidates.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return Ok((None, tried));
        }
        if let Some(winner) = opts.exec.find_first(&chunk, check) {
            let pos = chunk.iter().position(|c| c == winner).unwrap_or(0) as u64;
            return Ok((Some(winner.clone()), tried + pos + 1));
        }
        tried += chunk.len() as u64;
        let over_nodes = opts.budget.max_nodes.is_some_and(|m| already + tried > m);
        let over_time = opts.budget.max_time.is_some_and(|t| clock.elapsed() > t);
        if over_nodes || over_time {
            return Err(Error::BudgetExhausted {
                lower: lower.max(degree),
                upper: g.genus()? + r,
            });
        }
    }
}

/// Reduced divisors of the given degree with at least `r` chips on `q`,
/// sorted lexicographically. A class of rank `>= r` always has such a
/// representative, since `D - r q` is winnable.
pub fn reduced_candidates(g: &Multigraph, q: usize, degree: i64, r: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = superstables(g, q, degree - r)
        .into_iter()
        .map(|mut c| {
            c[q] = degree - c.iter().sum::<i64>();
            c
        })
        .collect();
    out.sort();
    out
}

/// Configurations off `q` of degree at most `max_degree` under which the
/// whole graph burns. Removing chips preserves that, so the search grows
/// one vertex at a time and stops as soon as a pile is too large.
pub fn superstables(g: &Multigraph, q: usize, max_degree: i64) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    if max_degree < 0 {
        return Vec::new();
    }
    let order: Vec<usize> = (0..n).filter(|&v| v != q).collect();
    let mut chips = vec![0i64; n];
    let mut out = vec![chips.clone()];
    grow(g, q, &order, 0, max_degree, &mut chips, &mut out);
    out
}

fn grow(
    g: &Multigraph,
    q: usize,
    order: &[usize],
    from: usize,
    budget: i64,
    chips: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    for i in from..order.len() {
        let v = order[i];
        for x in 1..=budget {
            chips[v] = x;
            if !burn_raw(g, chips, q).all_burned() {
                break;
            }
            out.push(chips.clone());
            grow(g, q, order, i + 1, budget - x, chips, out);
        }
        chips[v] = 0;
    }
}

/// Every effective placement of `degree` chips with rank at least one.
pub fn enumerate_winning_divisors(g: &Arc<Multigraph>, degree: u64, exec: Exec) -> Result<Vec<Divisor>> {
    let mut out = Vec::new();
    let mut comps = Compositions::new(degree as i64, g.vertex_count());
    loop {
        let chunk: Vec<Vec<i64>> = comps.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return Ok(out);
        }
        let verdicts = exec.map(&chunk, |c| has_rank_at_least_one(g, c));
        for (c, ok) in chunk.into_iter().zip(verdicts) {
            if ok? {
                out.push(Divisor::from_raw(g.clone(), c));
            }
        }
    }
}

/// An upper bound together with a divisor attaining it.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessBound {
    pub value: u64,
    pub technique: Technique,
    pub witness: Divisor,
}

/// `|V| - alpha`: a chip on every vertex outside a maximum independent set.
pub fn upper_bound_independence(g: &Arc<Multigraph>) -> Result<WitnessBound> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let independent = maximum_independent_set(g);
    let n = g.vertex_count();
    let chips = (0..n).map(|v| (!independent.contains(v)) as i64).collect();
    Ok(WitnessBound {
        value: (n - independent.len()) as u64,
        technique: Technique::Independence,
        witness: Divisor::from_raw(g.clone(), chips),
    })
}

/// `g + 1` chips on vertex 0.
pub fn upper_bound_genus(g: &Arc<Multigraph>) -> Result<WitnessBound> {
    let value = g.genus()? + 1;
    Ok(WitnessBound {
        value,
        technique: Technique::GenusPlusOne,
        witness: Divisor::point(g.clone(), 0, value as i64)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductBound {
    pub value: u64,
    pub gonality_g: u64,
    pub gonality_h: u64,
    pub product: Arc<Multigraph>,
    /// Lives on the product graph.
    pub witness: Divisor,
}

/// `min(|V(G)| gon(H), |V(H)| gon(G))`, witnessed by copying the cheaper
/// factor's winning divisor onto every copy of that factor.
pub fn upper_bound_product(g: &Arc<Multigraph>, h: &Arc<Multigraph>, exec: Exec) -> Result<ProductBound> {
    let opts = GonalityOptions {
        exec,
        ..GonalityOptions::default()
    };
    let gon_g = gonality_with(g, &opts)?;
    let gon_h = gonality_with(h, &opts)?;
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let product = Arc::new(cartesian_product(g, h));
    let along_h = ng as u64 * gon_h.gonality;
    let along_g = nh as u64 * gon_g.gonality;
    let chips: Vec<i64> = (0..ng * nh)
        .map(|x| {
            let (i, j) = (x / nh, x % nh);
            if along_h <= along_g {
                gon_h.winning_divisor.get(j)
            } else {
                gon_g.winning_divisor.get(i)
            }
        })
        .collect();
    Ok(ProductBound {
        value: along_h.min(along_g),
        gonality_g: gon_g.gonality,
        gonality_h: gon_h.gonality,
        witness: Divisor::from_raw(product.clone(), chips),
        product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn arc(g: Multigraph) -> Arc<Multigraph> {
        Arc::new(g)
    }

    fn gon(g: Multigraph) -> u64 {
        gonality(&arc(g)).unwrap().gonality
    }

    #[test]
    fn small_families() {
        for n in 2..=5 {
            assert_eq!(gon(generators::complete(n).unwrap()), n as u64 - 1);
        }
        for n in 3..=6 {
            assert_eq!(gon(generators::cycle(n).unwrap()), 2);
        }
        assert_eq!(gon(generators::path(5).unwrap()), 1);
        assert_eq!(gon(generators::tetrahedron()), 3);
        assert_eq!(gon(generators::octahedron()), 4);
        assert_eq!(gon(generators::cube()), 4);
    }

    #[test]
    fn reduced_and_raw_agree() {
        let graphs = [
            generators::cycle(5).unwrap(),
            generators::complete(4).unwrap(),
            generators::complete_multipartite(&[2, 3]).unwrap(),
            Multigraph::from_edges(4, &[(0, 1), (0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap(),
        ];
        for g in graphs {
            let g = arc(g);
            let base = GonalityOptions {
                use_lower_bounds: false,
                ..GonalityOptions::default()
            };
            let pruned = gonality_with(&g, &base).unwrap();
            let raw = gonality_with(
                &g,
                &GonalityOptions {
                    strategy: Strategy::Raw,
                    ..base.clone()
                },
            )
            .unwrap();
            assert_eq!(pruned.gonality, raw.gonality);
        }
    }

    #[test]
    fn witness_is_lexicographically_least_reduced() {
        let g = arc(generators::cube());
        let seq = gonality_with(
            &g,
            &GonalityOptions {
                exec: Exec::Sequential,
                ..GonalityOptions::default()
            },
        )
        .unwrap();
        let par = gonality(&g).unwrap();
        assert_eq!(seq.winning_divisor, par.winning_divisor);
        assert!(rank(&par.winning_divisor).unwrap().rank >= 1);
    }

    #[test]
    fn superstables_of_a_triangle() {
        let c3 = generators::cycle(3).unwrap();
        let mut s = superstables(&c3, 0, 5);
        s.sort();
        assert_eq!(s, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
        let k4 = generators::complete(4).unwrap();
        // superstables on K_n correspond to parking functions: n^(n-2) = 16
        assert_eq!(superstables(&k4, 3, 10).len(), 16);
    }

    #[test]
    fn enumeration_examples() {
        let k4 = arc(generators::complete(4).unwrap());
        let wins = enumerate_winning_divisors(&k4, 3, Exec::default()).unwrap();
        assert_eq!(wins.len(), 8);
        assert!(wins
            .iter()
            .all(|d| d.chips().iter().all(|&c| c == 0 || c == 3) || d.chips().iter().all(|&c| c <= 1)));
        let k3 = arc(generators::complete(3).unwrap());
        assert!(enumerate_winning_divisors(&k3, 1, Exec::default()).unwrap().is_empty());
        let cube = arc(generators::cube());
        let wins = enumerate_winning_divisors(&cube, 8, Exec::default()).unwrap();
        assert!(wins.iter().any(|d| d.chips().iter().all(|&c| c == 1)));
    }

    #[test]
    fn higher_gonality_of_a_triangle() {
        let c3 = arc(generators::cycle(3).unwrap());
        let r2 = higher_gonality(&c3, 2, Budget::unlimited()).unwrap();
        assert_eq!(r2.gonality, 3);
        assert_eq!(higher_gonality(&c3, 1, Budget::unlimited()).unwrap().gonality, 2);
    }

    #[test]
    fn independence_bound() {
        let b = upper_bound_independence(&arc(generators::octahedron())).unwrap();
        assert_eq!(b.value, 4);
        assert!(rank(&b.witness).unwrap().rank >= 1);
        assert_eq!(
            upper_bound_independence(&arc(generators::icosahedron())).unwrap().value,
            9
        );
        assert_eq!(
            upper_bound_independence(&arc(generators::complete(5).unwrap()))
                .unwrap()
                .value,
            4
        );
        let banana = arc(Multigraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap());
        assert_eq!(upper_bound_independence(&banana).err(), Some(Error::NotSimple));
    }

    #[test]
    fn product_bound() {
        let c4 = arc(generators::cycle(4).unwrap());
        let k2 = arc(generators::complete(2).unwrap());
        let b = upper_bound_product(&c4, &k2, Exec::default()).unwrap();
        assert_eq!(b.value, 4);
        assert!(rank(&b.witness).unwrap().rank >= 1);
        let b = upper_bound_product(&k2, &k2, Exec::default()).unwrap();
        assert_eq!(b.value, 2);
        assert_eq!(gonality(&b.product).unwrap().gonality, 2);
    }

    #[test]
    fn budget_yields_a_bracket() {
        let g = arc(generators::icosahedron());
        let err = gonality_with(
            &g,
            &GonalityOptions {
                budget: Budget {
                    max_nodes: Some(10),
                    max_time: None,
                },
                ..GonalityOptions::default()
            },
        )
        .unwrap_err();
        match err {
            Error::BudgetExhausted { lower, upper } => {
                assert!(lower <= 9 && 9 <= upper);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
