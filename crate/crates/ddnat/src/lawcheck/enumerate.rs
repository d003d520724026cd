//! Deterministic enumeration of the structures the law sweeps quantify over,
//! plus seeded random generators used to supplement truncated streams.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{DiagramStore, NodeId, TotalOrder};
use crate::sentential::{Sdd, Zsdd};
use crate::setfun::{CombinationSet, FiniteMap, Universe};
use crate::vtree::Vtree;

/// Universe elements are drawn from this fixed pool so that enumerated
/// structures over different universes share labels and the relabeling maps
/// between them are themselves enumerable.
pub const LETTER_POOL: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Every subset of the first `max_size` pool letters, smallest first and
/// lexicographic within a size. Up to renaming these cover all universes of
/// size at most `max_size`, and because they overlap as sets they also give
/// every inclusion and collapse between them.
pub fn enumerate_universes(max_size: usize) -> Vec<Universe> {
    let pool = &LETTER_POOL[..max_size.min(LETTER_POOL.len())];
    let mut universes: Vec<Universe> = (0..1u32 << pool.len())
        .map(|mask| {
            Universe::new(
                pool.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, name)| *name),
            )
        })
        .collect();
    universes.sort_by_key(|u| (u.len(), u.iter().map(str::to_owned).collect::<Vec<_>>()));
    universes
}

/// All total maps from `domain` to `codomain`, in a fixed odometer order.
pub fn enumerate_maps(domain: &Universe, codomain: &Universe) -> Vec<FiniteMap> {
    FiniteMap::enumerate(domain, codomain)
}

/// All total orders on the elements of `universe`, lexicographic in the
/// underlying element order.
pub fn enumerate_orders(universe: &Universe) -> Vec<TotalOrder> {
    let elements: Vec<&str> = universe.iter().collect();
    elements
        .iter()
        .copied()
        .permutations(elements.len())
        .map(|perm| TotalOrder::new(perm).expect("universe elements are distinct"))
        .collect()
}

/// All subsets of the powerset of `universe`: every combination set over it.
/// Only feasible for universes of size at most two or so; the callers that
/// need it quantify over two-element universes.
pub fn enumerate_combination_sets(universe: &Universe) -> Vec<CombinationSet> {
    let subsets = universe.subsets();
    (0..1u64 << subsets.len())
        .map(|mask| {
            CombinationSet::new(
                universe.clone(),
                subsets
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, c)| c.clone()),
            )
            .expect("powerset members lie within the universe")
        })
        .collect()
}

/// Every diagram over `universe` of depth at most `max_depth`, terminals
/// first, then level by level; within a level the branch label varies
/// slowest. Nodes are interned in `store`, so diagrams over nested universes
/// share identifiers.
pub fn enumerate_diagrams(
    store: &mut DiagramStore,
    universe: &Universe,
    max_depth: usize,
) -> Vec<NodeId> {
    let labels: Vec<String> = universe.iter().map(str::to_owned).collect();
    let mut all: Vec<NodeId> = vec![store.terminal(false), store.terminal(true)];
    let mut level_start = 0;
    for _ in 0..max_depth {
        // New terms at this level take at least one child from the previous
        // level; older pairs were already emitted.
        let prev_start = level_start;
        level_start = all.len();
        let mut level = Vec::new();
        for label in &labels {
            for lo_idx in 0..level_start {
                for hi_idx in 0..level_start {
                    if lo_idx < prev_start && hi_idx < prev_start {
                        continue;
                    }
                    level.push(store.decision(label, all[lo_idx], all[hi_idx]));
                }
            }
        }
        if level.is_empty() {
            break;
        }
        all.extend(level);
    }
    all
}

/// Every diagram of depth at most `max_depth` that respects `order`, built
/// directly: a decision on the element of rank `r` takes both children from
/// the order-respecting diagrams over ranks above `r`.
pub fn enumerate_ordered_diagrams(
    store: &mut DiagramStore,
    order: &TotalOrder,
    max_depth: usize,
) -> Vec<NodeId> {
    ordered_from(store, order, 0, max_depth)
}

fn ordered_from(
    store: &mut DiagramStore,
    order: &TotalOrder,
    from_rank: usize,
    depth: usize,
) -> Vec<NodeId> {
    let mut out = vec![store.terminal(false), store.terminal(true)];
    if depth == 0 {
        return out;
    }
    let names: Vec<String> = order.names().to_vec();
    for (rank, name) in names.iter().enumerate().skip(from_rank) {
        let children = ordered_from(store, order, rank + 1, depth - 1);
        for &lo in &children {
            for &hi in &children {
                out.push(store.decision(name, lo, hi));
            }
        }
    }
    out
}

/// All vtrees whose leaves are exactly the elements of `universe`. Empty for
/// the empty universe. The split of leaves between the two children varies
/// slowest, in subset-mask order over the sorted elements.
pub fn enumerate_vtrees(universe: &Universe) -> Vec<Vtree> {
    let elements: Vec<String> = universe.iter().map(str::to_owned).collect();
    vtrees_over(&elements)
}

fn vtrees_over(elements: &[String]) -> Vec<Vtree> {
    match elements.len() {
        0 => vec![],
        1 => vec![Vtree::leaf(&elements[0])],
        n => {
            let mut out = Vec::new();
            for mask in 1..(1u32 << n) - 1 {
                let (left, right): (Vec<String>, Vec<String>) =
                    elements.iter().enumerate().partition_map(|(i, e)| {
                        if mask >> i & 1 == 1 {
                            itertools::Either::Left(e.clone())
                        } else {
                            itertools::Either::Right(e.clone())
                        }
                    });
                for l in vtrees_over(&left) {
                    for r in vtrees_over(&right) {
                        out.push(Vtree::node(l.clone(), r).expect("left and right leaves are disjoint"));
                    }
                }
            }
            out
        }
    }
}

/// Decomposition terms over `universe` up to `max_depth`, with at most
/// `max_width` pairs per decomposition, stopping once `max_terms` terms have
/// been produced. Atoms come first, then level by level; every term of a
/// level contains at least one component from the previous level. The stream
/// has no duplicates.
pub fn enumerate_sdds(
    universe: &Universe,
    max_depth: usize,
    max_width: usize,
    max_terms: usize,
) -> Vec<Sdd> {
    let mut atoms = vec![Sdd::bot(), Sdd::top()];
    for name in universe.iter() {
        atoms.push(Sdd::neg(name));
        atoms.push(Sdd::pos(name));
    }
    enumerate_decompositions(atoms, max_depth, max_width, max_terms, |pairs| {
        Sdd::decomposition(pairs).expect("pair list is nonempty")
    })
}

/// The zero-suppressed analog of `enumerate_sdds`.
pub fn enumerate_zsdds(
    universe: &Universe,
    max_depth: usize,
    max_width: usize,
    max_terms: usize,
) -> Vec<Zsdd> {
    let mut atoms = vec![Zsdd::bot(), Zsdd::eps()];
    for name in universe.iter() {
        atoms.push(Zsdd::var(name));
        atoms.push(Zsdd::pm_var(name));
    }
    enumerate_decompositions(atoms, max_depth, max_width, max_terms, |pairs| {
        Zsdd::decomposition(pairs).expect("pair list is nonempty")
    })
}

fn enumerate_decompositions<T: Clone>(
    atoms: Vec<T>,
    max_depth: usize,
    max_width: usize,
    max_terms: usize,
    mut build: impl FnMut(Vec<(T, T)>) -> T,
) -> Vec<T> {
    let mut all = atoms;
    all.truncate(max_terms);
    if all.len() >= max_terms {
        return all;
    }
    let mut level_start = 0;
    for _ in 0..max_depth {
        let prev_start = level_start;
        level_start = all.len();
        let pair_count = level_start * level_start;
        let mut level: Vec<T> = Vec::new();
        'widths: for width in 1..=max_width.min(pair_count) {
            // Pairs are indexed prime-major; a term is a strictly increasing
            // choice of `width` pair indices, advanced odometer style.
            let mut choice: Vec<usize> = (0..width).collect();
            loop {
                let fresh = choice.iter().any(|&i| {
                    i / level_start >= prev_start || i % level_start >= prev_start
                });
                if fresh {
                    let pairs: Vec<(T, T)> = choice
                        .iter()
                        .map(|&i| (all[i / level_start].clone(), all[i % level_start].clone()))
                        .collect();
                    level.push(build(pairs));
                    if all.len() + level.len() >= max_terms {
                        all.extend(level);
                        all.truncate(max_terms);
                        return all;
                    }
                }
                let mut pos = width;
                loop {
                    if pos == 0 {
                        continue 'widths;
                    }
                    pos -= 1;
                    choice[pos] += 1;
                    if choice[pos] <= pair_count - (width - pos) {
                        for later in pos + 1..width {
                            choice[later] = choice[later - 1] + 1;
                        }
                        break;
                    }
                }
            }
        }
        if level.is_empty() {
            break;
        }
        all.extend(level);
    }
    all
}

/// A random diagram over `universe` with depth at most `max_depth`,
/// deterministic for a given generator state.
pub fn random_diagram(
    rng: &mut impl Rng,
    store: &mut DiagramStore,
    universe: &Universe,
    max_depth: usize,
) -> NodeId {
    let labels: Vec<&str> = universe.iter().collect();
    if max_depth == 0 || labels.is_empty() || rng.gen_ratio(1, 4) {
        return store.terminal(rng.gen_bool(0.5));
    }
    let label = *labels.choose(rng).expect("labels is nonempty");
    let lo = random_diagram(rng, store, universe, max_depth - 1);
    let hi = random_diagram(rng, store, universe, max_depth - 1);
    store.decision(label, lo, hi)
}

/// A random decomposition term over `universe`, at most `max_depth` levels of
/// nesting and `max_width` pairs per decomposition.
pub fn random_sdd(
    rng: &mut impl Rng,
    universe: &Universe,
    max_depth: usize,
    max_width: usize,
) -> Sdd {
    random_decomposition(rng, universe, max_depth, max_width, &sdd_atom, &|pairs| {
        Sdd::decomposition(pairs).expect("pair list is nonempty")
    })
}

/// The zero-suppressed analog of `random_sdd`.
pub fn random_zsdd(
    rng: &mut impl Rng,
    universe: &Universe,
    max_depth: usize,
    max_width: usize,
) -> Zsdd {
    random_decomposition(rng, universe, max_depth, max_width, &zsdd_atom, &|pairs| {
        Zsdd::decomposition(pairs).expect("pair list is nonempty")
    })
}

fn sdd_atom(rng: &mut dyn rand::RngCore, universe: &Universe) -> Sdd {
    let names: Vec<&str> = universe.iter().collect();
    match if names.is_empty() { rng.gen_range(0..2) } else { rng.gen_range(0..4) } {
        0 => Sdd::bot(),
        1 => Sdd::top(),
        2 => Sdd::neg(*names.choose(rng).expect("names is nonempty")),
        _ => Sdd::pos(*names.choose(rng).expect("names is nonempty")),
    }
}

fn zsdd_atom(rng: &mut dyn rand::RngCore, universe: &Universe) -> Zsdd {
    let names: Vec<&str> = universe.iter().collect();
    match if names.is_empty() { rng.gen_range(0..2) } else { rng.gen_range(0..4) } {
        0 => Zsdd::bot(),
        1 => Zsdd::eps(),
        2 => Zsdd::var(*names.choose(rng).expect("names is nonempty")),
        _ => Zsdd::pm_var(*names.choose(rng).expect("names is nonempty")),
    }
}

fn random_decomposition<T>(
    rng: &mut impl Rng,
    universe: &Universe,
    max_depth: usize,
    max_width: usize,
    atom: &dyn Fn(&mut dyn rand::RngCore, &Universe) -> T,
    build: &dyn Fn(Vec<(T, T)>) -> T,
) -> T {
    if max_depth == 0 || max_width == 0 || rng.gen_ratio(2, 5) {
        return atom(rng, universe);
    }
    let width = rng.gen_range(1..=max_width);
    let pairs: Vec<(T, T)> = (0..width)
        .map(|_| {
            (
                random_decomposition(rng, universe, max_depth - 1, max_width, atom, build),
                random_decomposition(rng, universe, max_depth - 1, max_width, atom, build),
            )
        })
        .collect();
    build(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn universe(names: &[&str]) -> Universe {
        Universe::new(names.iter().copied())
    }

    #[test]
    fn universes_cover_all_subsets_of_the_pool_prefix() {
        let all = enumerate_universes(2);
        let shown: Vec<String> = all.iter().map(|u| u.to_string()).collect();
        assert_eq!(shown, vec!["", "a", "b", "a,b"]);
        assert_eq!(enumerate_universes(3).len(), 8);
    }

    #[test]
    fn orders_are_all_permutations() {
        let u = universe(&["a", "b", "c"]);
        let orders = enumerate_orders(&u);
        assert_eq!(orders.len(), 6);
        let distinct: BTreeSet<String> = orders.iter().map(|o| o.to_string()).collect();
        assert_eq!(distinct.len(), 6);
        assert_eq!(orders[0].to_string(), "a,b,c");
    }

    #[test]
    fn combination_set_enumeration_counts() {
        assert_eq!(enumerate_combination_sets(&universe(&[])).len(), 2);
        assert_eq!(enumerate_combination_sets(&universe(&["a"])).len(), 4);
        assert_eq!(enumerate_combination_sets(&universe(&["a", "b"])).len(), 16);
    }

    #[test]
    fn diagram_enumeration_counts() {
        let mut store = DiagramStore::new();
        assert_eq!(enumerate_diagrams(&mut store, &universe(&[]), 3).len(), 2);
        assert_eq!(enumerate_diagrams(&mut store, &universe(&["a"]), 1).len(), 6);
        // Each level adds |labels| * (|previous|^2 - |older|^2) decisions.
        assert_eq!(enumerate_diagrams(&mut store, &universe(&["a"]), 2).len(), 38);
        assert_eq!(enumerate_diagrams(&mut store, &universe(&["a", "b"]), 2).len(), 202);
        assert_eq!(enumerate_diagrams(&mut store, &universe(&["a", "b", "c"]), 2).len(), 590);
    }

    #[test]
    fn diagram_enumeration_has_no_duplicates() {
        let mut store = DiagramStore::new();
        let all = enumerate_diagrams(&mut store, &universe(&["a", "b"]), 2);
        let distinct: BTreeSet<NodeId> = all.iter().copied().collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn ordered_enumeration_respects_the_order_and_is_complete() {
        let mut store = DiagramStore::new();
        let order = TotalOrder::new(["a", "b"].map(String::from)).unwrap();
        let ordered = enumerate_ordered_diagrams(&mut store, &order, 2);
        for &d in &ordered {
            assert!(store.respects_order(d, &order).unwrap());
        }
        let all = enumerate_diagrams(&mut store, &order.universe(), 2);
        let expected: BTreeSet<NodeId> = all
            .iter()
            .copied()
            .filter(|&d| store.respects_order(d, &order).unwrap())
            .collect();
        let got: BTreeSet<NodeId> = ordered.iter().copied().collect();
        assert_eq!(got, expected);
        assert_eq!(got.len(), ordered.len());
    }

    #[test]
    fn ordered_enumeration_count_over_three_ranks() {
        let mut store = DiagramStore::new();
        let order = TotalOrder::new(["a", "b", "c"].map(String::from)).unwrap();
        assert_eq!(enumerate_ordered_diagrams(&mut store, &order, 3).len(), 1806);
    }

    #[test]
    fn vtree_enumeration_counts() {
        assert!(enumerate_vtrees(&universe(&[])).is_empty());
        assert_eq!(enumerate_vtrees(&universe(&["a"])).len(), 1);
        assert_eq!(enumerate_vtrees(&universe(&["a", "b"])).len(), 2);
        assert_eq!(enumerate_vtrees(&universe(&["a", "b", "c"])).len(), 12);
    }

    #[test]
    fn sdd_stream_starts_with_atoms_and_has_no_duplicates() {
        let u = universe(&["a"]);
        let terms = enumerate_sdds(&u, 1, 2, 200);
        let shown: Vec<String> = terms.iter().take(4).map(|t| t.to_string()).collect();
        assert_eq!(shown, vec!["F", "T", "(! a)", "a"]);
        // 4 atoms, 16 singleton decompositions, C(16, 2) pair decompositions.
        assert_eq!(terms.len(), 4 + 16 + 120);
        let distinct: BTreeSet<String> = terms.iter().map(|t| t.to_string()).collect();
        assert_eq!(distinct.len(), terms.len());
    }

    #[test]
    fn term_stream_truncates_at_the_cap() {
        let u = universe(&["a", "b"]);
        assert_eq!(enumerate_sdds(&u, 3, 2, 50).len(), 50);
        assert_eq!(enumerate_zsdds(&u, 3, 2, 50).len(), 50);
        assert!(enumerate_sdds(&u, 3, 2, 0).is_empty());
    }

    #[test]
    fn zsdd_stream_covers_depth_two() {
        let u = universe(&["a"]);
        let terms = enumerate_zsdds(&u, 2, 1, 10_000);
        // Levels: 4 atoms, 16 singletons over atoms, then singletons with at
        // least one level-one component: 20^2 - 4^2.
        assert_eq!(terms.len(), 4 + 16 + 384);
        assert!(terms.iter().any(|t| t.to_string() == "(or ((+- a) E))"));
    }

    #[test]
    fn random_generators_are_deterministic_for_a_seed() {
        let u = universe(&["a", "b"]);
        let mut store = DiagramStore::new();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let d1 = random_diagram(&mut rng, &mut store, &u, 3);
        let s1 = random_sdd(&mut rng, &u, 2, 2);
        let z1 = random_zsdd(&mut rng, &u, 2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let d2 = random_diagram(&mut rng, &mut store, &u, 3);
        let s2 = random_sdd(&mut rng, &u, 2, 2);
        let z2 = random_zsdd(&mut rng, &u, 2, 2);
        assert_eq!(d1, d2);
        assert_eq!(s1, s2);
        assert_eq!(z1, z2);
    }
}
