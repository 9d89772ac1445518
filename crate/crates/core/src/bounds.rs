//! Collected lower and upper bounds on gonality.

use std::sync::Arc;

use serde::Serialize;

use crate::certificates::{bramble_order, scramble_order_with, treecut_width, Certificate};
use crate::dhar::rank;
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::generators::cartesian_product;
use crate::gonality::{upper_bound_genus, upper_bound_independence, upper_bound_product, Technique};
use crate::graph::Multigraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: u64,
    pub technique: Technique,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct BoundsInput {
    pub certificates: Vec<Certificate>,
    /// Divisors claimed to have rank at least one.
    pub witnesses: Vec<Divisor>,
    /// Factors `(G, H)` with the graph equal to `G □ H`.
    pub product: Option<(Arc<Multigraph>, Arc<Multigraph>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub lower: Vec<Bound>,
    pub upper: Vec<Bound>,
    pub best_lower: u64,
    pub best_upper: u64,
    /// Widths of supplied tree-cut decompositions. These bound the
    /// scramble number from above but are not compared with gonality.
    pub treecut_widths: Vec<u64>,
}

impl BoundsReport {
    pub fn is_consistent(&self) -> bool {
        self.best_lower <= self.best_upper
    }

    pub fn is_tight(&self) -> bool {
        self.best_lower == self.best_upper
    }
}

pub fn bounds_report(g: &Arc<Multigraph>, input: &BoundsInput, exec: Exec) -> Result<BoundsReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut lower = vec![Bound {
        value: g.simplified().min_degree().max(1),
        technique: Technique::MinDegree,
        detail: "minimum degree of the underlying simple graph".into(),
    }];
    let mut upper = Vec::new();
    let mut treecut_widths = Vec::new();

    for cert in &input.certificates {
        match cert {
            Certificate::Scramble(s) => {
                if !s.graph().as_ref().eq(g.as_ref()) {
                    return Err(Error::GraphMismatch);
                }
                let o = scramble_order_with(s, exec)?;
                lower.push(Bound {
                    value: o.order,
                    technique: Technique::Scramble,
                    detail: format!(
                        "scramble of {} eggs: hitting number {}, egg-cut {}",
                        s.eggs().len(),
                        o.hitting_number.size,
                        o.egg_cut.value
                    ),
                });
            }
            Certificate::Bramble(b) => {
                if !b.graph().as_ref().eq(g.as_ref()) {
                    return Err(Error::GraphMismatch);
                }
                let o = bramble_order(b)?.size;
                lower.push(Bound {
                    value: o.saturating_sub(1),
                    technique: Technique::Bramble,
                    detail: format!("bramble of order {o}; treewidth is at least {}", o.saturating_sub(1)),
                });
            }
            Certificate::TreeCut(t) => treecut_widths.push(treecut_width(t, g)?.width),
        }
    }

    if g.is_simple() {
        let b = upper_bound_independence(g)?;
        upper.push(Bound {
            value: b.value,
            technique: Technique::Independence,
            detail: format!("chips off a maximum independent set: {}", b.witness.pretty()),
        });
    }
    let genus = upper_bound_genus(g)?;
    upper.push(Bound {
        value: genus.value,
        technique: Technique::GenusPlusOne,
        detail: "any divisor of degree g + 1".into(),
    });
    if let Some((a, b)) = &input.product {
        if cartesian_product(a, b) != **g {
            return Err(Error::GraphMismatch);
        }
        let p = upper_bound_product(a, b, exec)?;
        upper.push(Bound {
            value: p.value,
            technique: Technique::Product,
            detail: format!("factor gonalities {} and {}", p.gonality_g, p.gonality_h),
        });
    }
    for w in &input.witnesses {
        if !w.same_graph(&Divisor::zero(g.clone())) {
            return Err(Error::GraphMismatch);
        }
        if !w.is_effective() || rank(w)?.rank < 1 {
            return Err(Error::InvalidCertificate(format!(
                "{} does not have rank at least 1",
                w.pretty()
            )));
        }
        upper.push(Bound {
            value: w.degree() as u64,
            technique: Technique::WitnessDivisor,
            detail: w.pretty(),
        });
    }

    let best_lower = lower.iter().map(|b| b.value).max().unwrap_or(1);
    let best_upper = upper.iter().map(|b| b.value).min().unwrap_or(u64::MAX);
    Ok(BoundsReport {
        lower,
        upper,
        best_lower,
        best_upper,
        treecut_widths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::uniform_scramble;
    use crate::generators;

    #[test]
    fn octahedron_is_tight_from_cheap_bounds() {
        let g = Arc::new(generators::octahedron());
        let r = bounds_report(&g, &BoundsInput::default(), Exec::default()).unwrap();
        assert_eq!(r.best_lower, 4);
        assert_eq!(r.best_upper, 4);
        assert!(r.is_tight());
    }

    #[test]
    fn icosahedron_leaves_a_gap() {
        let g = Arc::new(generators::icosahedron());
        let input = BoundsInput {
            certificates: vec![Certificate::Scramble(uniform_scramble(&g, 2).unwrap())],
            ..BoundsInput::default()
        };
        let r = bounds_report(&g, &input, Exec::default()).unwrap();
        assert_eq!((r.best_lower, r.best_upper), (8, 9));
    }

    #[test]
    fn bad_witness_is_rejected() {
        let g = Arc::new(generators::cube());
        let input = BoundsInput {
            witnesses: vec![Divisor::point(g.clone(), 0, 3).unwrap()],
            ..BoundsInput::default()
        };
        assert!(matches!(
            bounds_report(&g, &input, Exec::default()),
            Err(Error::InvalidCertificate(_))
        ));
    }

    #[test]
    fn product_factors_are_checked() {
        let g = Arc::new(generators::cube());
        let c4 = Arc::new(generators::cycle(4).unwrap());
        let k2 = Arc::new(generators::complete(2).unwrap());
        let input = BoundsInput {
            product: Some((c4.clone(), k2.clone())),
            ..BoundsInput::default()
        };
        // the generator numbering differs from the product numbering
        assert_eq!(
            bounds_report(&g, &input, Exec::default()).err(),
            Some(Error::GraphMismatch)
        );
        let p = Arc::new(generators::cartesian_product(&c4, &k2));
        let r = bounds_report(&p, &input, Exec::default()).unwrap();
        assert!(r
            .upper
            .iter()
            .any(|b| b.technique == Technique::Product && b.value == 4));
    }
}
