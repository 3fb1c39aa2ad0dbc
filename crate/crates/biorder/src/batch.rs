//! Batch evaluation helpers. With the default `parallel` feature the mapping
//! fans out over a rayon pool; without it the same API runs sequentially.
//! Output order always matches input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over the items, in parallel when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Maps `f` over the items, in parallel when the `parallel` feature is on.
#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    map_seq(items, f)
}

/// Sequential mapping with the same contract as [`map`]; kept unconditionally
/// so benchmarks can compare the two paths.
pub fn map_seq<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Convenience: evaluates a predicate over all items and returns the indices
/// of failures.
pub fn failing_indices<T, F>(items: &[T], pred: F) -> Vec<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    map(items, |t| pred(t))
        .into_iter()
        .enumerate()
        .filter_map(|(i, ok)| (!ok).then_some(i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let doubled = map(&xs, |x| x * 2);
        assert_eq!(doubled, map_seq(&xs, |x| x * 2));
    }

    #[test]
    fn failing_indices_reports_positions() {
        let xs = [1, 2, 3, 4, 5];
        assert_eq!(failing_indices(&xs, |&x| x % 2 == 1), vec![1, 3]);
    }
}
