//! Weak compositions: nonnegative vectors with a fixed sum.

/// All length-`parts` nonnegative vectors summing to `total`, in
/// lexicographic order from `(0, .., 0, total)` to `(total, 0, .., 0)`.
#[derive(Clone, Debug)]
pub struct Compositions {
    cur: Vec<i64>,
    done: bool,
}

impl Compositions {
    pub fn new(total: i64, parts: usize) -> Self {
        let mut cur = vec![0; parts];
        let done = total < 0 || (parts == 0 && total != 0);
        if let Some(last) = cur.last_mut() {
            *last = total;
        }
        Compositions { cur, done }
    }
}

impl Iterator for Compositions {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let n = self.cur.len();
        match (0..n).rev().find(|&i| self.cur[i] != 0) {
            Some(last) if last > 0 => {
                let i = last - 1;
                let suffix: i64 = self.cur[last..].iter().sum();
                self.cur[i] += 1;
                for x in &mut self.cur[i + 1..] {
                    *x = 0;
                }
                self.cur[n - 1] = suffix - 1;
            }
            _ => self.done = true,
        }
        Some(out)
    }
}

/// Number of weak compositions, saturating at `u128::MAX`.
pub fn count(total: u64, parts: u64) -> u128 {
    if parts == 0 {
        return (total == 0) as u128;
    }
    // C(total + parts - 1, parts - 1)
    let k = (parts - 1).min(total) as u128;
    let top = (total + parts - 1) as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(top - i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}
