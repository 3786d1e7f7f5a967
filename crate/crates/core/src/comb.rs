//! In-place lexicographic enumeration of index combinations.

/// First `k`-combination of `0..n`, or `None` when `k > n`.
pub(crate) fn first_combination(n: usize, k: usize) -> Option<Vec<usize>> {
    (k <= n).then(|| (0..k).collect())
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order. Returns `false` once the last combination has been passed.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every `k`-combination of `0..n` in lexicographic order,
/// stopping early when `f` returns `false`.
pub(crate) fn for_each_combination<F>(n: usize, k: usize, mut f: F)
where
    F: FnMut(&[usize]) -> bool,
{
    let Some(mut idx) = first_combination(n, k) else {
        return;
    };
    loop {
        if !f(&idx) {
            return;
        }
        if !next_combination(&mut idx, n) {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomials() {
        let count = |n, k| {
            let mut c = 0;
            for_each_combination(n, k, |_| {
                c += 1;
                true
            });
            c
        };
        assert_eq!(count(5, 2), 10);
        assert_eq!(count(10, 5), 252);
        assert_eq!(count(3, 0), 1);
        assert_eq!(count(2, 3), 0);
    }

    #[test]
    fn order_is_lexicographic() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            true
        });
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
        assert_eq!(seen.first().unwrap(), &vec![0, 1]);
    }
}
