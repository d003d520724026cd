//! Packed evaluation for the exhaustive diagram sweeps.
//!
//! Over a universe of at most six elements a combination set fits in one
//! `u64`: bit `s` stands for the subset of the universe whose element bitmask
//! is `s`. Both diagram readings, relabeling, and both transport actions
//! then become word operations, which keeps the tens of millions of squares
//! in the default sweep within seconds. The packed path is cross-checked
//! against the public set-based operations on the first square, on a strided
//! sample, and on every failing square; any disagreement panics, and
//! witnesses are always rebuilt from the reference operations.

use super::enumerate::enumerate_universes;
use super::{diagram_sides, diagram_terms, EnumBudget, FunctorKind, SquareReport, SquareWitness, TermKind};
use crate::diagram::{DiagramStore, Node, NodeId};
use crate::error::{Error, Result};
use crate::setfun::{Combination, CombinationSet, FiniteMap, Universe};
use crate::text::format_diagram;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MAX_PACKED_ELEMENTS: usize = 6;
const AUDIT_STRIDE: u64 = 1 << 16;

struct PackedUniverse {
    elements: Vec<String>,
    subset_count: u32,
    /// Per element position `j`: the subsets containing element `j`.
    member_mask: Vec<u64>,
    full: u64,
}

impl PackedUniverse {
    fn new(universe: &Universe) -> Result<Self> {
        let elements: Vec<String> = universe.iter().map(str::to_owned).collect();
        if elements.len() > MAX_PACKED_ELEMENTS {
            return Err(Error::UniverseTooLarge {
                size: elements.len(),
                max: MAX_PACKED_ELEMENTS,
            });
        }
        let subset_count = 1u32 << elements.len();
        let full = if subset_count == 64 {
            u64::MAX
        } else {
            (1u64 << subset_count) - 1
        };
        let member_mask = (0..elements.len())
            .map(|j| {
                (0..subset_count)
                    .filter(|s| s >> j & 1 == 1)
                    .fold(0u64, |m, s| m | 1 << s)
            })
            .collect();
        Ok(PackedUniverse {
            elements,
            subset_count,
            member_mask,
            full,
        })
    }

    fn subset_index(&self, combination: &Combination) -> u32 {
        combination.iter().fold(0, |s, member| {
            let j = self
                .elements
                .iter()
                .position(|e| e == member)
                .expect("combination lies within the packed universe");
            s | 1 << j
        })
    }

    fn pack(&self, set: &CombinationSet) -> u64 {
        set.combinations()
            .fold(0, |m, c| m | 1 << self.subset_index(c))
    }

    /// Adjoin element `j` to every subset in `value`.
    fn adjoin(&self, mut value: u64, j: usize) -> u64 {
        let mut out = 0u64;
        while value != 0 {
            let s = value.trailing_zeros();
            value &= value - 1;
            out |= 1 << (s | 1 << j);
        }
        out
    }
}

struct PackedMap {
    /// Per source subset index: the index of its direct image.
    image_index: Vec<u32>,
    /// Per target subset index: the index of its preimage.
    preimage_index: Vec<u32>,
}

fn pack_map(f: &FiniteMap, from: &PackedUniverse, to: &PackedUniverse) -> PackedMap {
    let target_pos: Vec<u32> = from
        .elements
        .iter()
        .map(|e| {
            let image = f.apply(e).expect("map is total on its domain");
            to.elements
                .iter()
                .position(|t| t == image)
                .expect("image lies in the codomain") as u32
        })
        .collect();
    let mut image_index = vec![0u32; from.subset_count as usize];
    for s in 1..from.subset_count {
        let j = s.trailing_zeros() as usize;
        image_index[s as usize] = image_index[(s & (s - 1)) as usize] | 1 << target_pos[j];
    }
    let mut fiber = vec![0u32; to.elements.len()];
    for (j, &k) in target_pos.iter().enumerate() {
        fiber[k as usize] |= 1 << j;
    }
    let mut preimage_index = vec![0u32; to.subset_count as usize];
    for t in 1..to.subset_count {
        let k = t.trailing_zeros() as usize;
        preimage_index[t as usize] = preimage_index[(t & (t - 1)) as usize] | fiber[k];
    }
    PackedMap {
        image_index,
        preimage_index,
    }
}

impl PackedMap {
    /// The covariant action: direct image of every subset in `value`.
    fn direct_image(&self, mut value: u64) -> u64 {
        let mut out = 0;
        while value != 0 {
            let s = value.trailing_zeros();
            value &= value - 1;
            out |= 1u64 << self.image_index[s as usize];
        }
        out
    }

    /// The contravariant action transported through the representation
    /// bijection: keep each target subset whose preimage is in `value`.
    fn preimage_transport(&self, value: u64) -> u64 {
        let mut out = 0;
        for (t, &p) in self.preimage_index.iter().enumerate() {
            if value >> p & 1 == 1 {
                out |= 1u64 << t;
            }
        }
        out
    }
}

/// Packed interpretation values for one target universe, indexed by node id.
struct ValueCache {
    values: Vec<u64>,
    known: Vec<bool>,
    /// Label intern index to element position within the universe.
    label_bit: Vec<u32>,
}

impl ValueCache {
    fn new(store: &DiagramStore, packed: &PackedUniverse) -> Self {
        let label_bit = (0..store.label_count())
            .map(|l| {
                packed
                    .elements
                    .iter()
                    .position(|e| e == store.label_name(l))
                    .map_or(u32::MAX, |j| j as u32)
            })
            .collect();
        ValueCache {
            values: Vec::new(),
            known: Vec::new(),
            label_bit,
        }
    }
}

fn packed_value(
    kind: TermKind,
    store: &DiagramStore,
    packed: &PackedUniverse,
    cache: &mut ValueCache,
    id: NodeId,
) -> u64 {
    if id.index() >= cache.values.len() {
        cache.values.resize(store.node_count(), 0);
        cache.known.resize(store.node_count(), false);
    }
    if cache.known[id.index()] {
        return cache.values[id.index()];
    }
    let value = match store.raw(id) {
        Node::Terminal(false) => 0,
        Node::Terminal(true) => match kind {
            TermKind::Bdd => packed.full,
            TermKind::Zdd => 1,
            _ => unreachable!("the packed engine evaluates branch diagrams only"),
        },
        Node::Decision { label, lo, hi } => {
            let j = cache.label_bit[label.0 as usize];
            debug_assert_ne!(j, u32::MAX, "labels lie within the target universe");
            let j = j as usize;
            let lo_value = packed_value(kind, store, packed, cache, lo);
            let hi_value = packed_value(kind, store, packed, cache, hi);
            match kind {
                TermKind::Bdd => {
                    (lo_value & !packed.member_mask[j]) | (hi_value & packed.member_mask[j])
                }
                TermKind::Zdd => lo_value | packed.adjoin(hi_value, j),
                _ => unreachable!("the packed engine evaluates branch diagrams only"),
            }
        }
    };
    cache.values[id.index()] = value;
    cache.known[id.index()] = true;
    value
}

/// Exhaustive naturality sweep over branch diagrams: every universe up to the
/// budget size, every map between two of them, every diagram up to the depth
/// bound. Returns the first failing square in enumeration order, if any.
pub(super) fn sweep_diagrams(
    kind: TermKind,
    functor: FunctorKind,
    budget: &EnumBudget,
) -> Result<SquareReport> {
    let universes = enumerate_universes(budget.max_universe_size);
    let packed: Vec<PackedUniverse> = universes
        .iter()
        .map(PackedUniverse::new)
        .collect::<Result<Vec<_>>>()?;
    let mut store = DiagramStore::new();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.random_seed);
    let diagrams: Vec<Vec<NodeId>> = universes
        .iter()
        .map(|u| diagram_terms(&mut store, u, budget, &mut rng))
        .collect();
    let mut caches: Vec<ValueCache> = packed.iter().map(|p| ValueCache::new(&store, p)).collect();

    let mut squares = 0u64;
    for (xi, x) in universes.iter().enumerate() {
        for (yi, y) in universes.iter().enumerate() {
            for f in FiniteMap::enumerate(x, y) {
                let map = pack_map(&f, &packed[xi], &packed[yi]);
                let translation = store.label_translation(&f);
                let mut relabel_memo = vec![u32::MAX; store.node_count()];
                for &d in &diagrams[xi] {
                    let relabeled = store.relabel_translated(&translation, &mut relabel_memo, d);
                    let lhs = packed_value(kind, &store, &packed[yi], &mut caches[yi], relabeled);
                    let before = packed_value(kind, &store, &packed[xi], &mut caches[xi], d);
                    let rhs = match functor {
                        FunctorKind::Covariant => map.direct_image(before),
                        FunctorKind::Contravariant => map.preimage_transport(before),
                    };
                    squares += 1;
                    if lhs != rhs || squares == 1 || squares % AUDIT_STRIDE == 0 {
                        let (ref_lhs, ref_rhs) = diagram_sides(&mut store, kind, functor, &f, d)?;
                        assert_eq!(
                            packed[yi].pack(&ref_lhs),
                            lhs,
                            "packed interpretation disagrees with the reference operations"
                        );
                        assert_eq!(
                            packed[yi].pack(&ref_rhs),
                            rhs,
                            "packed transport disagrees with the reference operations"
                        );
                        if lhs != rhs {
                            return Ok(SquareReport {
                                kind,
                                functor,
                                squares,
                                witness: Some(SquareWitness {
                                    map: f.clone(),
                                    term: format_diagram(&store, d),
                                    lhs: ref_lhs,
                                    rhs: ref_rhs,
                                }),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(SquareReport {
        kind,
        functor,
        squares,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::super::enumerate::enumerate_diagrams;
    use super::*;

    fn u(names: &str) -> Universe {
        Universe::new(names.split(',').filter(|s| !s.is_empty()))
    }

    #[test]
    fn packing_orders_subsets_by_element_mask() {
        let packed = PackedUniverse::new(&u("a,b,c")).unwrap();
        assert_eq!(packed.subset_count, 8);
        assert_eq!(packed.full, 0xff);
        assert_eq!(packed.pack(&CombinationSet::full(u("a,b,c"))), 0xff);
        assert_eq!(packed.pack(&CombinationSet::none(u("a,b,c"))), 0);
        assert_eq!(packed.pack(&CombinationSet::unit(u("a,b,c"))), 1);
        let just_b = CombinationSet::new(u("a,b,c"), [Combination::new(["b"])]).unwrap();
        assert_eq!(packed.pack(&just_b), 1 << 2);
    }

    #[test]
    fn packed_values_match_the_reference_interpretations() {
        let mut store = DiagramStore::new();
        for universe in [u("a"), u("a,b")] {
            let packed = PackedUniverse::new(&universe).unwrap();
            let diagrams = enumerate_diagrams(&mut store, &universe, 2);
            let mut bdd_cache = ValueCache::new(&store, &packed);
            let mut zdd_cache = ValueCache::new(&store, &packed);
            for &d in &diagrams {
                let bdd = packed_value(TermKind::Bdd, &store, &packed, &mut bdd_cache, d);
                let zdd = packed_value(TermKind::Zdd, &store, &packed, &mut zdd_cache, d);
                assert_eq!(bdd, packed.pack(&store.interpret_bdd(d, &universe).unwrap()));
                assert_eq!(zdd, packed.pack(&store.interpret_zdd(d, &universe).unwrap()));
            }
        }
    }

    #[test]
    fn packed_actions_match_the_reference_actions() {
        let x = u("a,b");
        let y = u("a,c");
        let px = PackedUniverse::new(&x).unwrap();
        let py = PackedUniverse::new(&y).unwrap();
        for f in FiniteMap::enumerate(&x, &y) {
            let map = pack_map(&f, &px, &py);
            for set in super::super::enumerate::enumerate_combination_sets(&x) {
                let value = px.pack(&set);
                assert_eq!(
                    map.direct_image(value),
                    py.pack(&set.map(&f).unwrap())
                );
                let transported = set.to_boolean_function().map(&f).unwrap();
                assert_eq!(
                    map.preimage_transport(value),
                    py.pack(&transported.to_combination_set())
                );
            }
        }
    }

    #[test]
    fn universes_beyond_the_packed_width_are_rejected() {
        let wide = Universe::new(["a", "b", "c", "d", "e", "f", "g"]);
        assert!(matches!(
            PackedUniverse::new(&wide),
            Err(Error::UniverseTooLarge { size: 7, max: 6 })
        ));
    }
}
