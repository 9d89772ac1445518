//! Unwinnable placements on complete graphs and parking functions.

use std::sync::Arc;

use serde::Serialize;

use crate::dhar::dollar_game_winnable;
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::generators::complete;

const MAX_N: usize = 8;

fn check_n(n: usize) -> Result<()> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::SizeOutOfRange {
            value: n,
            min: 2,
            max: MAX_N,
        });
    }
    Ok(())
}

/// Every tuple with entries in `0..base`, of the given length.
fn box_tuples(len: usize, base: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Sort key reproducing the customary listing: by sum, then by the
/// multiset of entries, then by where the large entries sit.
pub fn listing_key(t: &[i64]) -> (i64, Vec<i64>, Vec<usize>) {
    let mut desc = t.to_vec();
    desc.sort_unstable_by(|a, b| b.cmp(a));
    let mut positions: Vec<usize> = (0..t.len()).collect();
    positions.sort_by(|&a, &b| t[b].cmp(&t[a]));
    (t.iter().sum(), desc, positions)
}

fn placement(g: &Arc<crate::graph::Multigraph>, t: &[i64]) -> Divisor {
    let mut chips = t.to_vec();
    chips.push(-1);
    Divisor::from_raw(g.clone(), chips)
}

/// With `n - 1` chips a vertex can fire and pay the debt directly; this
/// confirms it through the engine for every coordinate. Adding chips never
/// hurts, so larger entries are winnable too.
pub fn coordinate_bound_holds(n: usize) -> Result<bool> {
    check_n(n)?;
    let g = Arc::new(complete(n)?);
    for i in 0..n - 1 {
        let mut t = vec![0; n - 1];
        t[i] = n as i64 - 1;
        if !dollar_game_winnable(&placement(&g, &t))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nonnegative `(c_1, .., c_{n-1})` such that adding one chip of debt on
/// the last vertex of `K_n` is unwinnable, in listing order.
pub fn unwinnable_placements(n: usize, exec: Exec) -> Result<Vec<Vec<i64>>> {
    check_n(n)?;
    if !coordinate_bound_holds(n)? {
        return Err(Error::Precondition(format!("coordinate bound failed for n = {n}")));
    }
    let g = Arc::new(complete(n)?);
    let candidates = box_tuples(n - 1, n as i64 - 1);
    let verdicts = exec.map(&candidates, |t| dollar_game_winnable(&placement(&g, t)));
    let mut out = Vec::new();
    for (t, w) in candidates.into_iter().zip(verdicts) {
        if !w? {
            out.push(t);
        }
    }
    out.sort_by_key(|t| listing_key(t));
    Ok(out)
}

/// Sorted entries satisfy `b_i <= i` (1-based).
pub fn is_parking_function(t: &[i64]) -> bool {
    let mut b = t.to_vec();
    b.sort_unstable();
    b.iter().enumerate().all(|(i, &x)| x >= 1 && x <= i as i64 + 1)
}

/// All parking functions of length `m`, in listing order.
pub fn parking_functions(m: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = box_tuples(m, m as i64)
        .into_iter()
        .map(|t| t.into_iter().map(|x| x + 1).collect::<Vec<_>>())
        .filter(|t| is_parking_function(t))
        .collect();
    out.sort_by_key(|t| listing_key(t));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bijection {
    pub n: usize,
    pub unwinnable: Vec<Vec<i64>>,
    pub parking: Vec<Vec<i64>>,
    pub matches: bool,
}

/// Shifting each unwinnable placement up by one gives exactly the parking
/// functions of length `n - 1`.
pub fn verify_bijection(n: usize, exec: Exec) -> Result<Bijection> {
    let unwinnable = unwinnable_placements(n, exec)?;
    let parking = parking_functions(n - 1);
    let mut shifted: Vec<Vec<i64>> = unwinnable.iter().map(|t| t.iter().map(|x| x + 1).collect()).collect();
    shifted.sort();
    let mut sorted = parking.clone();
    sorted.sort();
    Ok(Bijection {
        n,
        matches: shifted == sorted,
        unwinnable,
        parking,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_matches_the_listing() {
        let expected: Vec<Vec<i64>> = vec![
            vec![0, 0, 0],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![2, 0, 0],
            vec![0, 2, 0],
            vec![0, 0, 2],
            vec![2, 1, 0],
            vec![2, 0, 1],
            vec![1, 2, 0],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![0, 1, 2],
        ];
        assert_eq!(unwinnable_placements(4, Exec::default()).unwrap(), expected);
    }

    #[test]
    fn parking_examples() {
        assert!(is_parking_function(&[3, 2, 1]));
        assert!(is_parking_function(&[1, 1, 1]));
        assert!(!is_parking_function(&[2, 2, 2]));
        assert!(!is_parking_function(&[0, 1]));
        assert_eq!(parking_functions(1), vec![vec![1]]);
        // (m + 1)^(m - 1)
        assert_eq!(parking_functions(4).len(), 125);
    }

    #[test]
    fn bijection_small_n() {
        assert_eq!(unwinnable_placements(2, Exec::default()).unwrap(), vec![vec![0]]);
        for n in 2..=5 {
            let b = verify_bijection(n, Exec::default()).unwrap();
            assert!(b.matches, "n = {n}");
            assert_eq!(b.unwinnable.len(), n.pow(n as u32 - 2));
        }
        assert!(unwinnable_placements(9, Exec::default()).is_err());
    }

    #[test]
    fn no_unwinnable_entry_reaches_the_bound() {
        // search a wider box and confirm nothing lands outside 0..n-1
        let n = 4;
        let g = Arc::new(complete(n).unwrap());
        for t in box_tuples(n - 1, n as i64 + 1) {
            if !dollar_game_winnable(&placement(&g, &t)).unwrap() {
                assert!(t.iter().all(|&x| x < n as i64 - 1), "{t:?}");
            }
        }
        assert!(coordinate_bound_holds(6).unwrap());
    }
}
