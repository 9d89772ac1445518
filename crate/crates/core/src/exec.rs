//! Execution mode for the data-parallel search loops.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs the
//! candidate loops on the rayon pool. Without it every loop is sequential
//! and `Exec::Parallel` silently degrades to [`Exec::Sequential`].

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// First item (in slice order) satisfying `pred`.
    pub fn find_first<T, F>(self, items: &[T], pred: F) -> Option<&T>
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().find_first(|x| pred(x));
        }
        items.iter().find(|x| pred(x))
    }

    /// Maps every item, keeping slice order.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Keeps items satisfying `pred`, in slice order.
    pub fn filter<T, F>(self, items: &[T], pred: F) -> Vec<T>
    where
        T: Sync + Send + Clone,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().filter(|x| pred(x)).cloned().collect();
        }
        items.iter().filter(|x| pred(x)).cloned().collect()
    }

    /// Whether every item satisfies `pred`; stops at the first failure.
    pub fn all<T, F>(self, items: &[T], pred: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().all(pred);
        }
        items.iter().all(pred)
    }
}
