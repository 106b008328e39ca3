//! Data-parallel map over independent cases, with a sequential path.
//!
//! The parallel path needs the `parallel` feature; without it every
//! [`Exec`] runs sequentially. Results always come back in input order.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Whether this build can run the parallel path at all.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}
