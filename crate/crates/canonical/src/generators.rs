//! Size-minimal generators of a quotiented algebra.

use std::collections::HashMap;

use crate::algebra::{ClosureAlgebra, Monad};
use crate::error::CanonError;

/// Bound on the number of generators, which are indexed by the bits of a
/// `u64`.
pub const GENERATOR_CAP: usize = 64;

/// The algebra in which generators recombine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// Joins: generators are combined by union.
    P,
    /// `Z2` sums: generators are combined by symmetric difference.
    R,
}

/// A generator set for a quotiented algebra.
///
/// Invariants: `elements` lists generator classes in increasing class
/// order; combining the generators selected by `decompose[c]` with the
/// target operation yields class `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    target: Target,
    elements: Vec<usize>,
    decompose: Vec<u64>,
}

impl GeneratorSet {
    pub fn target(&self) -> Target {
        self.target
    }

    /// Generator classes.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Indices of the generators that recombine to class `c`.
    pub fn decompose(&self, c: usize) -> Vec<usize> {
        mask_members(self.decompose[c])
    }

    pub(crate) fn decompose_mask(&self, c: usize) -> u64 {
        self.decompose[c]
    }
}

pub(crate) fn mask_members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Classes that generate the algebra under joins: the classes of the
/// singleton subsets for `P`, the principal up-sets for `A` and the
/// singleton families for `H`.
fn join_candidates(alg: &ClosureAlgebra) -> Vec<usize> {
    let n = alg.free().dfa().num_states();
    let codes: Vec<u32> = match alg.monad() {
        Monad::P | Monad::R => (0..n).map(|q| 1u32 << q).collect(),
        Monad::H => (0..1u32 << n).map(|phi| 1u32 << phi).collect(),
        Monad::A => (0..1u32 << n)
            .map(|phi| {
                (0..1u32 << n)
                    .filter(|&psi| psi & phi == phi)
                    .map(|psi| 1u32 << psi)
                    .sum()
            })
            .collect(),
    };
    let mut classes: Vec<usize> = codes
        .into_iter()
        .map(|c| alg.class_of(c).expect("candidate is an element"))
        .collect();
    classes.sort_unstable();
    classes.dedup();
    classes
}

fn leq(alg: &ClosureAlgebra, x: usize, y: usize) -> bool {
    alg.leq(x, y).expect("join algebra")
}

/// Join-irreducible classes: non-bottom classes that are not the join of
/// the classes strictly below them.
pub fn join_irreducibles(alg: &ClosureAlgebra) -> Vec<usize> {
    let cands = join_candidates(alg);
    cands
        .iter()
        .copied()
        .filter(|&x| x != alg.bottom())
        .filter(|&x| {
            let below = cands
                .iter()
                .copied()
                .filter(|&g| g != x && leq(alg, g, x))
                .fold(alg.bottom(), |acc, g| {
                    alg.join(acc, g).expect("join algebra")
                });
            below != x
        })
        .collect()
}

/// Atoms: minimal non-bottom classes.
pub fn atoms(alg: &ClosureAlgebra) -> Vec<usize> {
    let cands: Vec<usize> = join_candidates(alg)
        .into_iter()
        .filter(|&x| x != alg.bottom())
        .collect();
    cands
        .iter()
        .copied()
        .filter(|&x| !cands.iter().any(|&g| g != x && leq(alg, g, x)))
        .collect()
}

fn by_join(alg: &ClosureAlgebra, gens: Vec<usize>) -> Result<GeneratorSet, CanonError> {
    if gens.len() > GENERATOR_CAP {
        return Err(CanonError::Cap(format!("{} generators", gens.len())));
    }
    let decompose = (0..alg.num_classes())
        .map(|x| {
            gens.iter()
                .enumerate()
                .filter(|&(_, &g)| leq(alg, g, x))
                .map(|(i, _)| 1u64 << i)
                .sum()
        })
        .collect();
    Ok(GeneratorSet {
        target: Target::P,
        elements: gens,
        decompose,
    })
}

/// A `Z2` basis chosen greedily: classes are scanned in class order and a
/// class is kept when it is outside the span of those kept before.
pub fn xor_basis(alg: &ClosureAlgebra) -> Result<GeneratorSet, CanonError> {
    let mut span: HashMap<usize, u64> = HashMap::from([(alg.bottom(), 0)]);
    let mut basis = Vec::new();
    for x in 0..alg.num_classes() {
        if span.contains_key(&x) {
            continue;
        }
        if basis.len() == GENERATOR_CAP {
            return Err(CanonError::Cap(format!(
                "more than {GENERATOR_CAP} basis vectors"
            )));
        }
        let bit = 1u64 << basis.len();
        basis.push(x);
        let old: Vec<(usize, u64)> = span.iter().map(|(&c, &m)| (c, m)).collect();
        for (c, m) in old {
            span.insert(alg.xor(c, x).expect("xor algebra"), m | bit);
        }
    }
    let decompose = (0..alg.num_classes()).map(|x| span[&x]).collect();
    Ok(GeneratorSet {
        target: Target::R,
        elements: basis,
        decompose,
    })
}

/// Extracts size-minimal generators: join-irreducibles for `P` and `A`
/// with target `P`, atoms for `H` with target `P`, and a `Z2` basis for
/// `R` and `H` with target `R`. The recomposition identity is checked.
pub fn extract_generators(
    alg: &ClosureAlgebra,
    target: Target,
) -> Result<GeneratorSet, CanonError> {
    let gens = match (alg.monad(), target) {
        (Monad::P | Monad::A, Target::P) => by_join(alg, join_irreducibles(alg))?,
        (Monad::H, Target::P) => by_join(alg, atoms(alg))?,
        (Monad::R | Monad::H, Target::R) => xor_basis(alg)?,
        (m, t) => {
            return Err(CanonError::Malformed(format!(
                "no generator extraction for {m:?} algebras into {t:?}"
            )))
        }
    };
    for x in 0..alg.num_classes() {
        let back = recompose(alg, &gens, gens.decompose_mask(x));
        if back != x {
            return Err(CanonError::Invariant(format!(
                "class {x} recomposes to class {back}"
            )));
        }
    }
    Ok(gens)
}

/// The class obtained by combining the generators selected by `mask`.
pub fn recompose(alg: &ClosureAlgebra, gens: &GeneratorSet, mask: u64) -> usize {
    mask_members(mask)
        .into_iter()
        .map(|i| gens.elements[i])
        .fold(alg.bottom(), |acc, g| match gens.target {
            Target::P => alg.join(acc, g).expect("join algebra"),
            Target::R => alg.xor(acc, g).expect("xor algebra"),
        })
}
