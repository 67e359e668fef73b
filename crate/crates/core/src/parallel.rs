//! Deterministic parallel scans over tuple spaces.
//!
//! Every scan returns the same answer for any thread count: the tuple space
//! is cut into prefix chunks, chunks are searched in parallel, and
//! `find_map_first` keeps the leftmost hit.

use rayon::prelude::*;

/// Spaces up to this size are scanned on the calling thread.
const SEQUENTIAL_MAX: u128 = 4096;

/// Number of leading coordinates used to cut a space of `vars` coordinates
/// over `s` values into parallel chunks.
fn prefix_len(s: usize, vars: usize) -> usize {
    let mut p = 0;
    let mut chunks = 1usize;
    while p < vars && chunks < 256 {
        chunks = chunks.saturating_mul(s);
        p += 1;
    }
    p
}

/// Advances `digits` as a base-`s` odometer (last digit fastest).
/// Returns false after wrapping around.
pub(crate) fn odometer(digits: &mut [usize], s: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < s {
            return true;
        }
        *d = 0;
    }
    false
}

/// Finds the lexicographically least tuple in `{0..s}^vars` for which
/// `probe` returns `Some`, together with that value.
pub(crate) fn first_tuple<R, F>(s: usize, vars: usize, probe: F) -> Option<(Vec<usize>, R)>
where
    R: Send,
    F: Fn(&[usize]) -> Option<R> + Sync,
{
    if s == 0 {
        return None;
    }
    let total = (s as u128).checked_pow(vars as u32).unwrap_or(u128::MAX);
    if total <= SEQUENTIAL_MAX {
        let mut tuple = vec![0usize; vars];
        loop {
            if let Some(r) = probe(&tuple) {
                return Some((tuple, r));
            }
            if !odometer(&mut tuple, s) {
                return None;
            }
        }
    }
    let p = prefix_len(s, vars);
    let chunks = s.pow(p as u32);
    (0..chunks).into_par_iter().find_map_first(|c| {
        let mut tuple = vec![0usize; vars];
        let mut rest = c;
        for j in (0..p).rev() {
            tuple[j] = rest % s;
            rest /= s;
        }
        loop {
            if let Some(r) = probe(&tuple) {
                return Some((tuple, r));
            }
            if !odometer(&mut tuple[p..], s) {
                return None;
            }
        }
    })
}

/// Runs `f` on a dedicated pool with `workers` threads (0 = rayon default).
pub fn with_workers<R, F>(workers: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_tuple_is_lexicographic_minimum() {
        // hits: tuples whose digit sum is 5 on base 3, 4 digits
        let hit = first_tuple(3, 4, |t| (t.iter().sum::<usize>() == 5).then_some(()));
        assert_eq!(hit.map(|(t, _)| t), Some(vec![0, 1, 2, 2]));
    }

    #[test]
    fn first_tuple_handles_zero_vars() {
        assert_eq!(first_tuple(2, 0, |_| Some(7)).map(|(_, r)| r), Some(7));
        assert!(first_tuple::<(), _>(2, 0, |_| None).is_none());
    }

    #[test]
    fn first_tuple_same_for_any_worker_count() {
        let probe = |t: &[usize]| ((t[0] * 7 + t[3] * 3 + t[5]) % 11 == 10).then_some(t[1]);
        let one = with_workers(1, || first_tuple(4, 6, probe));
        let eight = with_workers(8, || first_tuple(4, 6, probe));
        assert_eq!(one, eight);
    }
}
