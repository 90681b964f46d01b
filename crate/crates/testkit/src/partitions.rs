//! Exhaustive enumeration of set partitions.

/// Visit every set partition of `{0, .., n-1}` as a restricted growth string:
/// `labels[0] = 0` and `labels[i] <= 1 + max(labels[..i])`.
pub fn for_each_set_partition(n: usize, mut visit: impl FnMut(&[usize])) {
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut labels = vec![0usize; n];
    // max label among labels[..=i]
    let mut prefix_max = vec![0usize; n];
    loop {
        visit(&labels);
        // rightmost position that can still be incremented
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if labels[i] <= prefix_max[i - 1] {
                break;
            }
            i -= 1;
        }
        labels[i] += 1;
        prefix_max[i] = prefix_max[i - 1].max(labels[i]);
        for j in i + 1..n {
            labels[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
}

/// Block sizes of a labelling in label order.
pub fn block_sizes(labels: &[usize]) -> Vec<usize> {
    let m = labels.iter().max().map_or(0, |&k| k + 1);
    let mut sizes = vec![0; m];
    for &l in labels {
        sizes[l] += 1;
    }
    sizes
}

/// Bell numbers `B_0 ..= B_n` from the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<u64> {
    let mut out = vec![1u64];
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        out.push(next[0]);
        row = next;
    }
    out
}

/// Integer partitions of `n`, each in non-increasing order.
pub fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}
