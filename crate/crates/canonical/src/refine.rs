/// Coarsest partition of `0..n` that refines `labels` and is stable under
/// every successor function, where `succ(x, out)` fills `out` with the
/// successors of `x`. Classes are numbered by first occurrence.
pub(crate) fn refine<F>(n: usize, labels: &[usize], succ: F) -> Vec<usize>
where
    F: Fn(usize, &mut Vec<usize>),
{
    let mut class = number_by_first_occurrence(labels);
    let mut count = class.iter().copied().max().map_or(0, |m| m + 1);
    let mut buf = Vec::new();
    loop {
        let mut sig: std::collections::HashMap<Vec<usize>, usize> =
            std::collections::HashMap::new();
        let mut next = Vec::with_capacity(n);
        for x in 0..n {
            buf.clear();
            succ(x, &mut buf);
            let mut key = Vec::with_capacity(buf.len() + 1);
            key.push(class[x]);
            key.extend(buf.iter().map(|&y| class[y]));
            let k = sig.len();
            next.push(*sig.entry(key).or_insert(k));
        }
        let new_count = sig.len();
        class = next;
        if new_count == count {
            return class;
        }
        count = new_count;
    }
}

pub(crate) fn number_by_first_occurrence<T: std::hash::Hash + Eq + Clone>(
    labels: &[T],
) -> Vec<usize> {
    let mut ids = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let k = ids.len();
            *ids.entry(l.clone()).or_insert(k)
        })
        .collect()
}
