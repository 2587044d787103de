use std::collections::HashMap;
use std::hash::Hash;

/// Coarsest refinement of `class` that is stable under `succ`: two states
/// stay together iff they share a class and, letter by letter, their
/// successors share a class (`None` successors must coincide).
///
/// Class ids of the result are assigned in order of the least state in each
/// class.
pub(crate) fn refine<F>(n: usize, class: Vec<usize>, succ: F) -> Vec<usize>
where
    F: Fn(usize) -> Vec<Option<usize>>,
{
    let succs: Vec<Vec<Option<usize>>> = (0..n).map(&succ).collect();
    let mut class = renumber(&class);
    let mut count = class.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let sigs: Vec<(usize, Vec<Option<usize>>)> = (0..n)
            .map(|s| {
                let next = succs[s].iter().map(|t| t.map(|t| class[t])).collect();
                (class[s], next)
            })
            .collect();
        let next = renumber(&sigs);
        let next_count = next.iter().copied().max().map_or(0, |m| m + 1);
        class = next;
        if next_count == count {
            return class;
        }
        count = next_count;
    }
}

/// Replaces arbitrary labels by dense ids in order of first occurrence.
pub(crate) fn renumber<L: Hash + Eq + Clone>(labels: &[L]) -> Vec<usize> {
    let mut ids: HashMap<&L, usize> = HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = ids.len();
            *ids.entry(l).or_insert(next)
        })
        .collect()
}
