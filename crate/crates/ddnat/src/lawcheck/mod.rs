//! Law checking by exhaustive enumeration on small universes.
//!
//! A naturality square asks whether interpreting a relabeled term equals
//! transporting the term's interpretation along the map. [`sweep`] quantifies
//! that question over every universe, map, and term within an [`EnumBudget`]
//! and reports either success or the first failing square as a re-verifiable
//! witness. The module also carries the more specialized verifiers: the
//! argument that no natural family of bijections links the two transport
//! actions, preservation and closure of the structural predicates under
//! relabeling, agreement between independent readings of the same diagram,
//! and the vtree-relative partition counterexample.

mod engine;
mod enumerate;

pub use enumerate::{
    enumerate_combination_sets, enumerate_diagrams, enumerate_maps, enumerate_orders,
    enumerate_ordered_diagrams, enumerate_sdds, enumerate_universes, enumerate_vtrees,
    enumerate_zsdds, random_diagram, random_sdd, random_zsdd, LETTER_POOL,
};

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{strictly_monotone, DiagramStore, NodeId};
use crate::error::{Error, Result};
use crate::sentential::{
    interpret_sdd, interpret_zsdd, is_partition_sdd, is_strongly_deterministic_sdd,
    is_strongly_deterministic_zsdd, Sdd, Zsdd,
};
use crate::setfun::{BooleanFunction, Combination, CombinationSet, FiniteMap, Universe};
use crate::text::{format_diagram, parse_diagram, parse_sdd, parse_zsdd};
use crate::vtree::{enumerate_embeddings, is_embedding, respects_vtree_sdd, respects_vtree_zsdd, Vtree};

/// How many seeded random terms are appended to a term stream whose
/// exhaustive enumeration was cut off by `max_terms`.
pub(crate) const RANDOM_SUPPLEMENT: usize = 256;

/// The four term families a square can be checked over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermKind {
    Bdd,
    Zdd,
    Sdd,
    Zsdd,
}

impl fmt::Display for TermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TermKind::Bdd => "bdd",
            TermKind::Zdd => "zdd",
            TermKind::Sdd => "sdd",
            TermKind::Zsdd => "zsdd",
        })
    }
}

/// Which transport action the square composes with: direct images of
/// combinations, or preimage transport through the representation bijection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctorKind {
    Covariant,
    Contravariant,
}

impl fmt::Display for FunctorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctorKind::Covariant => "covariant",
            FunctorKind::Contravariant => "contravariant",
        })
    }
}

/// Optional filter narrowing a sweep to the structured subfamilies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Restriction {
    Unrestricted,
    /// Order-respecting diagrams with strictly monotone maps.
    OrderRespecting,
    /// Vtree-respecting terms with embeddings between vtrees.
    VtreeRespecting,
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Restriction::Unrestricted => "unrestricted",
            Restriction::OrderRespecting => "order",
            Restriction::VtreeRespecting => "vtree",
        })
    }
}

/// Enumeration bounds for a sweep. `max_terms` cuts each per-universe term
/// stream off; a cut stream is topped up with seeded random terms so deeper
/// shapes still get sampled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumBudget {
    pub max_universe_size: usize,
    pub max_depth: usize,
    pub max_width: usize,
    pub max_terms: usize,
    pub random_seed: u64,
}

impl EnumBudget {
    /// Branch diagrams stay enumerable exhaustively up to three elements.
    pub fn diagram_default() -> Self {
        EnumBudget {
            max_universe_size: 3,
            max_depth: 3,
            max_width: 2,
            max_terms: usize::MAX,
            random_seed: 0,
        }
    }

    /// Decomposition term spaces grow much faster, so their default stream is
    /// capped and supplemented with random terms.
    pub fn sentential_default() -> Self {
        EnumBudget {
            max_universe_size: 2,
            max_depth: 3,
            max_width: 2,
            max_terms: 20_000,
            random_seed: 0,
        }
    }

    pub fn default_for(kind: TermKind) -> Self {
        match kind {
            TermKind::Bdd | TermKind::Zdd => EnumBudget::diagram_default(),
            TermKind::Sdd | TermKind::Zsdd => EnumBudget::sentential_default(),
        }
    }
}

/// A failing square: the map, the term it was applied to (serialized), and
/// the two sides that disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareWitness {
    pub map: FiniteMap,
    pub term: String,
    /// Interpret after relabeling.
    pub lhs: CombinationSet,
    /// Transport the interpretation along the map.
    pub rhs: CombinationSet,
}

/// Outcome of checking one square or sweeping many.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareReport {
    pub kind: TermKind,
    pub functor: FunctorKind,
    /// Squares checked up to and including the failing one.
    pub squares: u64,
    pub witness: Option<SquareWitness>,
}

impl SquareReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

fn transport(functor: FunctorKind, f: &FiniteMap, before: &CombinationSet) -> Result<CombinationSet> {
    match functor {
        FunctorKind::Covariant => before.map(f),
        FunctorKind::Contravariant => Ok(before.to_boolean_function().map(f)?.to_combination_set()),
    }
}

pub(crate) fn diagram_sides(
    store: &mut DiagramStore,
    kind: TermKind,
    functor: FunctorKind,
    f: &FiniteMap,
    root: NodeId,
) -> Result<(CombinationSet, CombinationSet)> {
    let relabeled = store.relabel(f, root)?;
    let (lhs, before) = match kind {
        TermKind::Bdd => (
            store.interpret_bdd(relabeled, f.codomain())?,
            store.interpret_bdd(root, f.domain())?,
        ),
        TermKind::Zdd => (
            store.interpret_zdd(relabeled, f.codomain())?,
            store.interpret_zdd(root, f.domain())?,
        ),
        TermKind::Sdd | TermKind::Zsdd => {
            unreachable!("diagram sides are computed for branch diagrams only")
        }
    };
    Ok((lhs, transport(functor, f, &before)?))
}

/// Check one square for a diagram under the classifier reading.
pub fn check_bdd_square(
    store: &mut DiagramStore,
    functor: FunctorKind,
    f: &FiniteMap,
    root: NodeId,
) -> Result<SquareReport> {
    diagram_square(store, TermKind::Bdd, functor, f, root)
}

/// Check one square for a diagram under the family reading.
pub fn check_zdd_square(
    store: &mut DiagramStore,
    functor: FunctorKind,
    f: &FiniteMap,
    root: NodeId,
) -> Result<SquareReport> {
    diagram_square(store, TermKind::Zdd, functor, f, root)
}

fn diagram_square(
    store: &mut DiagramStore,
    kind: TermKind,
    functor: FunctorKind,
    f: &FiniteMap,
    root: NodeId,
) -> Result<SquareReport> {
    let (lhs, rhs) = diagram_sides(store, kind, functor, f, root)?;
    let witness = (lhs != rhs).then(|| SquareWitness {
        map: f.clone(),
        term: format_diagram(store, root),
        lhs,
        rhs,
    });
    Ok(SquareReport {
        kind,
        functor,
        squares: 1,
        witness,
    })
}

/// Check one square for a decomposition term under the intersection reading.
pub fn check_sdd_square(functor: FunctorKind, f: &FiniteMap, term: &Sdd) -> Result<SquareReport> {
    sentential_square(functor, f, term)
}

/// Check one square for a decomposition term under the join reading.
pub fn check_zsdd_square(functor: FunctorKind, f: &FiniteMap, term: &Zsdd) -> Result<SquareReport> {
    sentential_square(functor, f, term)
}

fn sentential_square<T: Sentential>(
    functor: FunctorKind,
    f: &FiniteMap,
    term: &T,
) -> Result<SquareReport> {
    let (lhs, rhs) = sentential_sides(functor, f, term)?;
    let witness = (lhs != rhs).then(|| SquareWitness {
        map: f.clone(),
        term: term.text(),
        lhs,
        rhs,
    });
    Ok(SquareReport {
        kind: T::KIND,
        functor,
        squares: 1,
        witness,
    })
}

fn sentential_sides<T: Sentential>(
    functor: FunctorKind,
    f: &FiniteMap,
    term: &T,
) -> Result<(CombinationSet, CombinationSet)> {
    let lhs = term.rename(f)?.denote(f.codomain())?;
    let rhs = transport(functor, f, &term.denote(f.domain())?)?;
    Ok((lhs, rhs))
}

/// Recompute both sides of a reported witness from its stored map and term
/// text. True when the recomputation reproduces the stored sides exactly and
/// they still differ.
pub fn reverify_witness(
    kind: TermKind,
    functor: FunctorKind,
    witness: &SquareWitness,
) -> Result<bool> {
    let (lhs, rhs) = match kind {
        TermKind::Bdd | TermKind::Zdd => {
            let mut store = DiagramStore::new();
            let root = parse_diagram(&mut store, &witness.term)?;
            diagram_sides(&mut store, kind, functor, &witness.map, root)?
        }
        TermKind::Sdd => sentential_sides(functor, &witness.map, &parse_sdd(&witness.term)?)?,
        TermKind::Zsdd => sentential_sides(functor, &witness.map, &parse_zsdd(&witness.term)?)?,
    };
    Ok(lhs == witness.lhs && rhs == witness.rhs && lhs != rhs)
}

/// Quantify one square shape over everything the budget allows: every
/// universe drawn from the letter pool, every map between two of them, every
/// term over the source universe. The first failing square in enumeration
/// order becomes the witness, so reports are deterministic for a given
/// budget and seed.
pub fn sweep(
    kind: TermKind,
    functor: FunctorKind,
    restriction: Restriction,
    budget: &EnumBudget,
) -> Result<SquareReport> {
    match (kind, restriction) {
        (TermKind::Bdd | TermKind::Zdd, Restriction::Unrestricted) => {
            engine::sweep_diagrams(kind, functor, budget)
        }
        (TermKind::Bdd | TermKind::Zdd, Restriction::OrderRespecting) => {
            sweep_diagrams_ordered(kind, functor, budget)
        }
        (TermKind::Sdd, Restriction::Unrestricted) => {
            sweep_sentential_terms::<Sdd>(functor, budget)
        }
        (TermKind::Zsdd, Restriction::Unrestricted) => {
            sweep_sentential_terms::<Zsdd>(functor, budget)
        }
        (TermKind::Sdd, Restriction::VtreeRespecting) => {
            sweep_sentential_vtree::<Sdd>(functor, budget)
        }
        (TermKind::Zsdd, Restriction::VtreeRespecting) => {
            sweep_sentential_vtree::<Zsdd>(functor, budget)
        }
        (kind, restriction) => Err(Error::InvalidRestriction {
            restriction: restriction.to_string(),
            kind: kind.to_string(),
        }),
    }
}

/// The diagram stream a sweep uses for one universe: exhaustive up to the
/// budget, topped up with seeded random diagrams when the cap cut it short.
fn diagram_terms(
    store: &mut DiagramStore,
    universe: &Universe,
    budget: &EnumBudget,
    rng: &mut ChaCha8Rng,
) -> Vec<NodeId> {
    let mut list = enumerate_diagrams(store, universe, budget.max_depth);
    let truncated = budget.max_terms < list.len();
    list.truncate(budget.max_terms);
    if truncated && budget.max_terms > 0 {
        for _ in 0..RANDOM_SUPPLEMENT {
            list.push(random_diagram(rng, store, universe, budget.max_depth));
        }
    }
    list
}

/// Restricted diagram sweep: only order-respecting diagrams, only strictly
/// monotone maps between ordered universes, quantified over all orders on
/// both sides. Streams are not supplemented randomly here; the restricted
/// spaces stay exhaustively enumerable at default budgets.
fn sweep_diagrams_ordered(
    kind: TermKind,
    functor: FunctorKind,
    budget: &EnumBudget,
) -> Result<SquareReport> {
    let universes = enumerate_universes(budget.max_universe_size);
    let mut store = DiagramStore::new();
    let mut squares = 0u64;
    for x in &universes {
        for order_x in enumerate_orders(x) {
            let mut terms = enumerate_ordered_diagrams(&mut store, &order_x, budget.max_depth);
            terms.truncate(budget.max_terms);
            for y in &universes {
                for order_y in enumerate_orders(y) {
                    for f in FiniteMap::enumerate(x, y) {
                        if !strictly_monotone(&f, &order_x, &order_y)? {
                            continue;
                        }
                        for &d in &terms {
                            squares += 1;
                            let (lhs, rhs) = diagram_sides(&mut store, kind, functor, &f, d)?;
                            if lhs != rhs {
                                return Ok(SquareReport {
                                    kind,
                                    functor,
                                    squares,
                                    witness: Some(SquareWitness {
                                        map: f.clone(),
                                        term: format_diagram(&store, d),
                                        lhs,
                                        rhs,
                                    }),
                                });
                            }
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

/// The operations a sweep needs from either decomposition family, so the
/// quantification logic is written once.
trait Sentential: Clone {
    const KIND: TermKind;
    fn enumerate_terms(universe: &Universe, budget: &EnumBudget) -> Vec<Self>;
    fn random_term(rng: &mut ChaCha8Rng, universe: &Universe, budget: &EnumBudget) -> Self;
    fn rename(&self, f: &FiniteMap) -> Result<Self>;
    fn denote(&self, universe: &Universe) -> Result<CombinationSet>;
    fn respects(&self, vtree: &Vtree) -> bool;
    fn text(&self) -> String;
}

impl Sentential for Sdd {
    const KIND: TermKind = TermKind::Sdd;

    fn enumerate_terms(universe: &Universe, budget: &EnumBudget) -> Vec<Self> {
        enumerate_sdds(universe, budget.max_depth, budget.max_width, budget.max_terms)
    }

    fn random_term(rng: &mut ChaCha8Rng, universe: &Universe, budget: &EnumBudget) -> Self {
        random_sdd(rng, universe, budget.max_depth, budget.max_width)
    }

    fn rename(&self, f: &FiniteMap) -> Result<Self> {
        self.relabel(f)
    }

    fn denote(&self, universe: &Universe) -> Result<CombinationSet> {
        interpret_sdd(self, universe)
    }

    fn respects(&self, vtree: &Vtree) -> bool {
        respects_vtree_sdd(self, vtree)
    }

    fn text(&self) -> String {
        self.to_string()
    }
}

impl Sentential for Zsdd {
    const KIND: TermKind = TermKind::Zsdd;

    fn enumerate_terms(universe: &Universe, budget: &EnumBudget) -> Vec<Self> {
        enumerate_zsdds(universe, budget.max_depth, budget.max_width, budget.max_terms)
    }

    fn random_term(rng: &mut ChaCha8Rng, universe: &Universe, budget: &EnumBudget) -> Self {
        random_zsdd(rng, universe, budget.max_depth, budget.max_width)
    }

    fn rename(&self, f: &FiniteMap) -> Result<Self> {
        self.relabel(f)
    }

    fn denote(&self, universe: &Universe) -> Result<CombinationSet> {
        interpret_zsdd(self, universe)
    }

    fn respects(&self, vtree: &Vtree) -> bool {
        respects_vtree_zsdd(self, vtree)
    }

    fn text(&self) -> String {
        self.to_string()
    }
}

fn sentential_terms<T: Sentential>(
    universe: &Universe,
    budget: &EnumBudget,
    rng: &mut ChaCha8Rng,
) -> Vec<T> {
    let mut terms = T::enumerate_terms(universe, budget);
    if budget.max_terms > 0 && terms.len() >= budget.max_terms {
        for _ in 0..RANDOM_SUPPLEMENT {
            terms.push(T::random_term(rng, universe, budget));
        }
    }
    terms
}

fn sweep_sentential_terms<T: Sentential>(
    functor: FunctorKind,
    budget: &EnumBudget,
) -> Result<SquareReport> {
    let universes = enumerate_universes(budget.max_universe_size);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.random_seed);
    let mut squares = 0u64;
    for x in &universes {
        let terms: Vec<T> = sentential_terms(x, budget, &mut rng);
        let before: Vec<CombinationSet> =
            terms.iter().map(|t| t.denote(x)).collect::<Result<_>>()?;
        for y in &universes {
            for f in FiniteMap::enumerate(x, y) {
                for (t, b) in terms.iter().zip(&before) {
                    squares += 1;
                    let lhs = t.rename(&f)?.denote(y)?;
                    let rhs = transport(functor, &f, b)?;
                    if lhs != rhs {
                        return Ok(SquareReport {
                            kind: T::KIND,
                            functor,
                            squares,
                            witness: Some(SquareWitness {
                                map: f.clone(),
                                term: t.text(),
                                lhs,
                                rhs,
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(SquareReport {
        kind: T::KIND,
        functor,
        squares,
        witness: None,
    })
}

/// Restricted sentential sweep: terms filtered to those respecting a source
/// vtree, maps filtered to embeddings into a target vtree, quantified over
/// all vtrees on both sides.
fn sweep_sentential_vtree<T: Sentential>(
    functor: FunctorKind,
    budget: &EnumBudget,
) -> Result<SquareReport> {
    let universes = enumerate_universes(budget.max_universe_size);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.random_seed);
    let mut squares = 0u64;
    for x in &universes {
        let terms: Vec<T> = sentential_terms(x, budget, &mut rng);
        for v in enumerate_vtrees(x) {
            let kept: Vec<&T> = terms.iter().filter(|t| t.respects(&v)).collect();
            let before: Vec<CombinationSet> =
                kept.iter().map(|t| t.denote(x)).collect::<Result<_>>()?;
            for y in &universes {
                for w in enumerate_vtrees(y) {
                    for f in enumerate_embeddings(&v, &w) {
                        for (t, b) in kept.iter().zip(&before) {
                            squares += 1;
                            let lhs = t.rename(&f)?.denote(y)?;
                            let rhs = transport(functor, &f, b)?;
                            if lhs != rhs {
                                return Ok(SquareReport {
                                    kind: T::KIND,
                                    functor,
                                    squares,
                                    witness: Some(SquareWitness {
                                        map: f.clone(),
                                        term: t.text(),
                                        lhs,
                                        rhs,
                                    }),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(SquareReport {
        kind: T::KIND,
        functor,
        squares,
        witness: None,
    })
}

/// Record of the two-element collapse argument showing that no family of
/// bijections between combination sets and Boolean functions commutes with
/// both transport actions.
#[derive(Debug, Clone)]
pub struct NoNaturalBijectionReport {
    /// Transport of the one-subset acceptor over the empty universe along
    /// the inclusion into {x, y}; accepts every subset.
    pub inclusion_transport: BooleanFunction,
    /// Transport of the acceptor of the empty set, {x}, and {x, y} along the
    /// collapse sending both elements to x; also accepts every subset.
    pub collapse_transport: BooleanFunction,
    /// Candidate components over the empty universe (all four functions).
    pub candidates: u64,
    /// Combination sets over {x, y} satisfying the collapse-square
    /// constraint, summed over candidates; each must equal its forced value.
    pub constrained: u64,
    pub holds: bool,
}

/// Runs the collapse argument: both transported functions accept everything,
/// so any square-commuting family is forced to send two different Boolean
/// functions to the same combination set and cannot be injective at {x, y}.
pub fn no_natural_bijection_report() -> NoNaturalBijectionReport {
    let empty = Universe::empty();
    let xy = Universe::new(["x", "y"]);
    let inclusion = FiniteMap::inclusion(&empty, &xy).expect("the empty universe includes anywhere");
    let collapse = FiniteMap::new(xy.clone(), xy.clone(), [("x", "x"), ("y", "x")])
        .expect("the collapse is total over {x, y}");

    let one_point = BooleanFunction::new(empty.clone(), [Combination::empty()])
        .expect("the empty combination lies over the empty universe");
    let inclusion_transport = one_point.map(&inclusion).expect("endpoints line up");
    let three_accepts = BooleanFunction::new(
        xy.clone(),
        [
            Combination::empty(),
            Combination::new(["x"]),
            Combination::new(["x", "y"]),
        ],
    )
    .expect("accepted subsets lie over {x, y}");
    let collapse_transport = three_accepts.map(&collapse).expect("endpoints line up");

    let always = BooleanFunction::always(xy.clone());
    let mut holds = inclusion_transport == always && collapse_transport == always;

    // Whatever a candidate assigns to the one-subset acceptor over the empty
    // universe, the inclusion square forces the value at the always-true
    // function over {x, y}, and the collapse square then pins the value at
    // the three-subset acceptor to the very same set.
    let over_empty = [CombinationSet::none(empty.clone()), CombinationSet::unit(empty)];
    let mut candidates = 0u64;
    let mut constrained = 0u64;
    for _at_never in &over_empty {
        for at_one_point in &over_empty {
            candidates += 1;
            let forced = at_one_point.map(&inclusion).expect("endpoints line up");
            for q in enumerate_combination_sets(&xy) {
                if q.map(&collapse).expect("endpoints line up") == forced {
                    constrained += 1;
                    if q != forced {
                        holds = false;
                    }
                }
            }
        }
    }
    NoNaturalBijectionReport {
        inclusion_transport,
        collapse_transport,
        candidates,
        constrained,
        holds,
    }
}

/// True when the collapse argument goes through, including its two
/// intermediate transport equalities.
pub fn verify_no_natural_bijection() -> bool {
    no_natural_bijection_report().holds
}

/// A structural property lost (or expected to be kept) under relabeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyWitness {
    pub map: FiniteMap,
    pub term: String,
    pub property: String,
}

/// Outcome of a preservation or closure check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreservationReport {
    pub checked: u64,
    pub witness: Option<PropertyWitness>,
}

impl PreservationReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Relabeling keeps strong determinism and the partition property for every
/// term under every map in the budget.
pub fn check_sdd_preservation(budget: &EnumBudget) -> Result<PreservationReport> {
    let universes = enumerate_universes(budget.max_universe_size);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.random_seed);
    let mut checked = 0u64;
    for x in &universes {
        let terms: Vec<Sdd> = sentential_terms(x, budget, &mut rng);
        let flags: Vec<(bool, bool)> = terms
            .iter()
            .map(|t| Ok((is_strongly_deterministic_sdd(t, x)?, is_partition_sdd(t, x)?)))
            .collect::<Result<_>>()?;
        for y in &universes {
            for f in FiniteMap::enumerate(x, y) {
                for (t, &(deterministic, partition)) in terms.iter().zip(&flags) {
                    if !deterministic && !partition {
                        continue;
                    }
                    let renamed = t.relabel(&f)?;
                    if deterministic {
                        checked += 1;
                        if !is_strongly_deterministic_sdd(&renamed, y)? {
                            return Ok(PreservationReport {
                                checked,
                                witness: Some(PropertyWitness {
                                    map: f.clone(),
                                    term: t.to_string(),
                                    property: "strong determinism".to_string(),
                                }),
                            });
                        }
                    }
                    if partition {
                        checked += 1;
                        if !is_partition_sdd(&renamed, y)? {
                            return Ok(PreservationReport {
                                checked,
                                witness: Some(PropertyWitness {
                                    map: f.clone(),
                                    term: t.to_string(),
                                    property: "partition".to_string(),
                                }),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(PreservationReport {
        checked,
        witness: None,
    })
}

/// Relabeling keeps strong determinism for the join reading as long as the
/// map is injective; non-injective maps are skipped here because they can
/// break it (see [`noninjective_zsdd_break`]).
pub fn check_zsdd_preservation(budget: &EnumBudget) -> Result<PreservationReport> {
    let universes = enumerate_universes(budget.max_universe_size);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.random_seed);
    let mut checked = 0u64;
    for x in &universes {
        let terms: Vec<Zsdd> = sentential_terms(x, budget, &mut rng);
        let flags: Vec<bool> = terms
            .iter()
            .map(|t| is_strongly_deterministic_zsdd(t, x))
            .collect::<Result<_>>()?;
        for y in &universes {
            for f in FiniteMap::enumerate(x, y) {
                if !f.is_injective() {
                    continue;
                }
                for (t, &deterministic) in terms.iter().zip(&flags) {
                    if !deterministic {
                        continue;
                    }
                    checked += 1;
                    if !is_strongly_deterministic_zsdd(&t.relabel(&f)?, y)? {
                        return Ok(PreservationReport {
                            checked,
                            witness: Some(PropertyWitness {
                                map: f.clone(),
                                term: t.to_string(),
                                property: "strong determinism".to_string(),
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(PreservationReport {
        checked,
        witness: None,
    })
}

/// Searches the budget for a strongly deterministic term and a non-injective
/// map whose relabeling is no longer strongly deterministic. Expected to
/// find one: identifying two variables can make disjoint primes overlap.
pub fn noninjective_zsdd_break(budget: &EnumBudget) -> Result<Option<PropertyWitness>> {
    let universes = enumerate_universes(budget.max_universe_size);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.random_seed);
    for x in &universes {
        let terms: Vec<Zsdd> = sentential_terms(x, budget, &mut rng);
        let flags: Vec<bool> = terms
            .iter()
            .map(|t| is_strongly_deterministic_zsdd(t, x))
            .collect::<Result<_>>()?;
        for y in &universes {
            for f in FiniteMap::enumerate(x, y) {
                if f.is_injective() {
                    continue;
                }
                for (t, &deterministic) in terms.iter().zip(&flags) {
                    if !deterministic {
                        continue;
                    }
                    if !is_strongly_deterministic_zsdd(&t.relabel(&f)?, y)? {
                        return Ok(Some(PropertyWitness {
                            map: f.clone(),
                            term: t.to_string(),
                            property: "strong determinism".to_string(),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Relabeling an order-respecting diagram along a strictly monotone map
/// yields a diagram respecting the target order, across the whole budget.
pub fn check_order_closure(budget: &EnumBudget) -> Result<PreservationReport> {
    let universes = enumerate_universes(budget.max_universe_size);
    let mut store = DiagramStore::new();
    let mut checked = 0u64;
    for x in &universes {
        for order_x in enumerate_orders(x) {
            let mut terms = enumerate_ordered_diagrams(&mut store, &order_x, budget.max_depth);
            terms.truncate(budget.max_terms);
            for y in &universes {
                for order_y in enumerate_orders(y) {
                    for f in FiniteMap::enumerate(x, y) {
                        if !strictly_monotone(&f, &order_x, &order_y)? {
                            continue;
                        }
                        for &d in &terms {
                            checked += 1;
                            let renamed = store.relabel(&f, d)?;
                            if !store.respects_order(renamed, &order_y)? {
                                return Ok(PreservationReport {
                                    checked,
                                    witness: Some(PropertyWitness {
                                        map: f.clone(),
                                        term: format_diagram(&store, d),
                                        property: "order respect".to_string(),
                                    }),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(PreservationReport {
        checked,
        witness: None,
    })
}

/// Relabeling a vtree-respecting term along an embedding yields a term
/// respecting the target vtree, for both decomposition families.
pub fn check_vtree_closure(budget: &EnumBudget) -> Result<PreservationReport> {
    let sdd = vtree_closure_family::<Sdd>(budget)?;
    if sdd.witness.is_some() {
        return Ok(sdd);
    }
    let zsdd = vtree_closure_family::<Zsdd>(budget)?;
    Ok(PreservationReport {
        checked: sdd.checked + zsdd.checked,
        witness: zsdd.witness,
    })
}

fn vtree_closure_family<T: Sentential>(budget: &EnumBudget) -> Result<PreservationReport> {
    let universes = enumerate_universes(budget.max_universe_size);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.random_seed);
    let mut checked = 0u64;
    for x in &universes {
        let terms: Vec<T> = sentential_terms(x, budget, &mut rng);
        for v in enumerate_vtrees(x) {
            let kept: Vec<&T> = terms.iter().filter(|t| t.respects(&v)).collect();
            for y in &universes {
                for w in enumerate_vtrees(y) {
                    for f in enumerate_embeddings(&v, &w) {
                        for t in &kept {
                            checked += 1;
                            if !t.rename(&f)?.respects(&w) {
                                return Ok(PreservationReport {
                                    checked,
                                    witness: Some(PropertyWitness {
                                        map: f.clone(),
                                        term: t.text(),
                                        property: format!("{} vtree respect", T::KIND),
                                    }),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(PreservationReport {
        checked,
        witness: None,
    })
}

/// Outcome of an agreement check between two independent readings; the
/// witness is the serialized term where they diverged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementReport {
    pub checked: u64,
    pub witness: Option<String>,
}

impl AgreementReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// The hi-edge path labels of every enumerated diagram form exactly the
/// combination set of its family reading.
pub fn check_one_path_agreement(budget: &EnumBudget) -> Result<AgreementReport> {
    let mut store = DiagramStore::new();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.random_seed);
    let mut checked = 0u64;
    for x in enumerate_universes(budget.max_universe_size) {
        for &d in &diagram_terms(&mut store, &x, budget, &mut rng) {
            checked += 1;
            let family = store.interpret_zdd(d, &x)?;
            if store.one_paths(d) != *family.as_set() {
                return Ok(AgreementReport {
                    checked,
                    witness: Some(format_diagram(&store, d)),
                });
            }
        }
    }
    Ok(AgreementReport {
        checked,
        witness: None,
    })
}

/// Branch evaluation agrees with classifier membership for every enumerated
/// diagram and every subset of its universe.
pub fn check_membership_agreement(budget: &EnumBudget) -> Result<AgreementReport> {
    let mut store = DiagramStore::new();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.random_seed);
    let mut checked = 0u64;
    for x in enumerate_universes(budget.max_universe_size) {
        let subsets = x.subsets();
        for &d in &diagram_terms(&mut store, &x, budget, &mut rng) {
            let classified = store.interpret_bdd(d, &x)?;
            for c in &subsets {
                checked += 1;
                if store.eval_bdd(d, c, &x)? != classified.contains(c) {
                    return Ok(AgreementReport {
                        checked,
                        witness: Some(format_diagram(&store, d)),
                    });
                }
            }
        }
    }
    Ok(AgreementReport {
        checked,
        witness: None,
    })
}

/// Universe growth laws: adjoining a fresh element x to the universe leaves
/// the family reading untouched and makes the classifier reading indifferent
/// to x, checked on seeded random diagrams.
pub fn check_extra_element_laws(trials: u64, seed: u64) -> Result<AgreementReport> {
    use rand::seq::SliceRandom;
    use rand::Rng;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut store = DiagramStore::new();
    let mut checked = 0u64;
    for _ in 0..trials {
        let size = rng.gen_range(0..=3);
        let mut positions: Vec<usize> = (0..3).collect();
        positions.shuffle(&mut rng);
        let base = Universe::new(positions[..size].iter().map(|&i| LETTER_POOL[i]));
        let d = random_diagram(&mut rng, &mut store, &base, 3);
        let unused: Vec<&str> = LETTER_POOL
            .iter()
            .copied()
            .filter(|l| !base.contains(l))
            .collect();
        let fresh = *unused.choose(&mut rng).expect("the pool exceeds the base universe");
        let extended = base.union(&Universe::new([fresh]));

        let classified = store.interpret_bdd(d, &extended)?;
        for c in extended.subsets() {
            if c.contains(fresh) {
                continue;
            }
            checked += 1;
            if classified.contains(&c) != classified.contains(&c.with(fresh)) {
                return Ok(AgreementReport {
                    checked,
                    witness: Some(format_diagram(&store, d)),
                });
            }
        }
        let family = store.interpret_zdd(d, &extended)?;
        checked += 1;
        if family.combinations().any(|c| c.contains(fresh)) {
            return Ok(AgreementReport {
                checked,
                witness: Some(format_diagram(&store, d)),
            });
        }
    }
    Ok(AgreementReport {
        checked,
        witness: None,
    })
}

/// Record of the vtree-relative partition counterexample: the same term is a
/// partition with respect to a narrow vtree but stops being one over the
/// wider vtree its leaves embed into, because the prime interpretations no
/// longer cover the larger left-subtree power set.
#[derive(Debug, Clone)]
pub struct PartitionProbeReport {
    pub term: Zsdd,
    pub narrow_vtree: Vtree,
    pub wide_vtree: Vtree,
    pub embedding: FiniteMap,
    pub narrow_primes_union: CombinationSet,
    pub narrow_left_full: CombinationSet,
    pub wide_primes_union: CombinationSet,
    pub wide_left_full: CombinationSet,
    pub holds: bool,
}

pub fn partition_zsdd_probe() -> Result<PartitionProbeReport> {
    let term = Zsdd::decomposition([
        (Zsdd::var("a"), Zsdd::eps()),
        (Zsdd::eps(), Zsdd::var("b")),
    ])?;
    let narrow_vtree = Vtree::node(Vtree::leaf("a"), Vtree::leaf("b"))?;
    let wide_vtree = Vtree::node(
        Vtree::node(Vtree::leaf("a"), Vtree::leaf("c"))?,
        Vtree::leaf("b"),
    )?;
    let embedding = FiniteMap::inclusion(&narrow_vtree.leaves(), &wide_vtree.leaves())?;

    let primes = [Zsdd::var("a"), Zsdd::eps()];
    let union_over = |left: &Universe| -> Result<CombinationSet> {
        let mut acc = CombinationSet::none(left.clone());
        for p in &primes {
            acc = acc.union(&interpret_zsdd(p, left)?)?;
        }
        Ok(acc)
    };
    let narrow_left = Universe::new(["a"]);
    let wide_left = Universe::new(["a", "c"]);
    let narrow_primes_union = union_over(&narrow_left)?;
    let wide_primes_union = union_over(&wide_left)?;
    let narrow_left_full = CombinationSet::full(narrow_left);
    let wide_left_full = CombinationSet::full(wide_left);

    let holds = respects_vtree_zsdd(&term, &narrow_vtree)
        && respects_vtree_zsdd(&term, &wide_vtree)
        && is_embedding(&embedding, &narrow_vtree, &wide_vtree)?
        && term.relabel(&embedding)? == term
        && is_strongly_deterministic_zsdd(&term, &narrow_vtree.leaves())?
        && narrow_primes_union == narrow_left_full
        && wide_primes_union != wide_left_full;
    Ok(PartitionProbeReport {
        term,
        narrow_vtree,
        wide_vtree,
        embedding,
        narrow_primes_union,
        narrow_left_full,
        wide_primes_union,
        wide_left_full,
        holds,
    })
}
