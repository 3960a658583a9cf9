//! Index-range sweeps that run on rayon with the `parallel` feature and as
//! plain iterators without it. Every helper returns the same value either
//! way: `find_first` is the least index, `map_collect` keeps index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn all<F>(len: u64, f: F) -> bool
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (0..len).into_par_iter().all(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn all<F>(len: u64, f: F) -> bool
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (0..len).all(f)
}

#[cfg(feature = "parallel")]
pub(crate) fn find_first<F>(len: u64, f: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (0..len).into_par_iter().find_first(|&i| f(i))
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn find_first<F>(len: u64, f: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (0..len).find(|&i| f(i))
}

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<R, F>(len: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<R, F>(len: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    (0..len).map(f).collect()
}

/// Index-ordered `filter_map`.
pub(crate) fn filter_map_collect<R, F>(len: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    map_collect(len, f).into_iter().flatten().collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn min_of<R, F>(len: u64, f: F) -> Option<R>
where
    R: Ord + Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    (0..len).into_par_iter().filter_map(f).min()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn min_of<R, F>(len: u64, f: F) -> Option<R>
where
    R: Ord + Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    (0..len).filter_map(f).min()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers_are_order_preserving() {
        assert_eq!(find_first(1000, |i| i % 97 == 96), Some(96));
        assert_eq!(find_first(10, |_| false), None);
        assert!(all(100, |i| i < 100));
        assert_eq!(map_collect(5, |i| i * 2), vec![0, 2, 4, 6, 8]);
        assert_eq!(
            filter_map_collect(10, |i| (i % 3 == 0).then_some(i)),
            vec![0, 3, 6, 9]
        );
        assert_eq!(min_of(50, |i| (i > 7).then_some(100 - i)), Some(51));
    }
}
