//! Data-parallel helpers. Without the `parallel` feature every mode runs
//! on the calling thread.

/// How a fan-out should be scheduled. Results never depend on the choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// `Parallel` when the crate was built with rayon.
    pub fn available() -> Execution {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// `items.map(f)`, collected in input order.
pub fn map_collect<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// `sum f(i)` for `i` in `0..n`, stopping at the first error.
pub fn try_sum<E, F>(exec: Execution, n: u64, f: F) -> Result<u64, E>
where
    E: Send,
    F: Fn(u64) -> Result<u64, E> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n)
                .into_par_iter()
                .map(f)
                .try_reduce(|| 0, |a, b| Ok(a + b))
        }
        _ => (0..n).map(f).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let sq = |x: &u64| x * x;
        assert_eq!(
            map_collect(Execution::Sequential, &xs, sq),
            map_collect(Execution::Parallel, &xs, sq)
        );
        let f = |i: u64| -> Result<u64, ()> { Ok(i % 7) };
        assert_eq!(
            try_sum(Execution::Sequential, 10_000, f),
            try_sum(Execution::Parallel, 10_000, f)
        );
        let g = |i: u64| if i == 500 { Err(i) } else { Ok(1) };
        assert_eq!(try_sum(Execution::Parallel, 1000, g), Err(500));
    }
}
