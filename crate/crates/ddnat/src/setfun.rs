//! Finite universes, combinations, and the two set functors that act on them.
//!
//! A combination set and a Boolean function over a universe `X` carry the
//! same raw data: a set of subsets of `X`. They are kept as distinct types
//! because maps `f: X -> Y` act on them differently. [`CombinationSet::map`]
//! pushes forward along direct images, while [`BooleanFunction::map`] pulls
//! subsets of `Y` back through preimages. The conversions
//! [`CombinationSet::to_boolean_function`] and
//! [`BooleanFunction::to_combination_set`] are the identity on the raw data
//! and deliberately do not commute with `map`; the law-checking harness
//! exercises exactly that failure.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A finite set of element names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Universe {
    elements: BTreeSet<String>,
}

impl Universe {
    pub fn empty() -> Self {
        Universe::default()
    }

    pub fn new<I, S>(elements: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Universe {
            elements: elements.into_iter().map(Into::into).collect(),
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.elements.contains(name)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(String::as_str)
    }

    pub fn is_subset_of(&self, other: &Universe) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn union(&self, other: &Universe) -> Universe {
        Universe {
            elements: self.elements.union(&other.elements).cloned().collect(),
        }
    }

    /// Every subset of the universe, in canonical (size, then lexicographic)
    /// order. Exponential in the universe size by design; this module is the
    /// explicit baseline the symbolic structures are checked against.
    pub fn subsets(&self) -> Vec<Combination> {
        let names: Vec<&str> = self.iter().collect();
        let mut out: Vec<Combination> = (0u64..(1u64 << names.len()))
            .map(|mask| {
                Combination::new(
                    names
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| mask >> j & 1 == 1)
                        .map(|(_, n)| *n),
                )
            })
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for name in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            f.write_str(name)?;
            first = false;
        }
        Ok(())
    }
}

/// A subset of some universe. Combinations order by size first and then
/// lexicographically by members, which makes iteration over a
/// `BTreeSet<Combination>` match the canonical text form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Combination {
    members: BTreeSet<String>,
}

impl Combination {
    pub fn empty() -> Self {
        Combination::default()
    }

    pub fn new<I, S>(members: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Combination {
            members: members.into_iter().map(Into::into).collect(),
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.members.contains(name)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.members.iter().map(String::as_str)
    }

    pub fn is_within(&self, universe: &Universe) -> bool {
        self.iter().all(|m| universe.contains(m))
    }

    /// This combination extended with one more element.
    pub fn with(&self, name: &str) -> Combination {
        let mut members = self.members.clone();
        members.insert(name.to_string());
        Combination { members }
    }

    pub fn union(&self, other: &Combination) -> Combination {
        Combination {
            members: self.members.union(&other.members).cloned().collect(),
        }
    }
}

impl Ord for Combination {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Combination {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A set of combinations over a fixed universe. Maps act covariantly: see
/// [`CombinationSet::map`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CombinationSet {
    universe: Universe,
    combinations: BTreeSet<Combination>,
}

impl CombinationSet {
    pub fn new<I>(universe: Universe, combinations: I) -> Result<Self>
    where
        I: IntoIterator<Item = Combination>,
    {
        let combinations: BTreeSet<Combination> = combinations.into_iter().collect();
        for combination in &combinations {
            if let Some(stray) = combination.iter().find(|m| !universe.contains(m)) {
                return Err(Error::ElementOutsideUniverse {
                    element: stray.to_string(),
                    universe: universe.to_string(),
                });
            }
        }
        Ok(CombinationSet {
            universe,
            combinations,
        })
    }

    /// The empty combination set (accepts no combination).
    pub fn none(universe: Universe) -> Self {
        CombinationSet {
            universe,
            combinations: BTreeSet::new(),
        }
    }

    /// The set containing only the empty combination. This is the unit for
    /// [`CombinationSet::join`].
    pub fn unit(universe: Universe) -> Self {
        CombinationSet {
            universe,
            combinations: BTreeSet::from([Combination::empty()]),
        }
    }

    /// The full powerset of the universe.
    pub fn full(universe: Universe) -> Self {
        let combinations = universe.subsets().into_iter().collect();
        CombinationSet {
            universe,
            combinations,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn combinations(&self) -> impl Iterator<Item = &Combination> {
        self.combinations.iter()
    }

    pub fn as_set(&self) -> &BTreeSet<Combination> {
        &self.combinations
    }

    pub fn contains(&self, combination: &Combination) -> bool {
        self.combinations.contains(combination)
    }

    pub fn len(&self) -> usize {
        self.combinations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.combinations.is_empty()
    }

    fn check_same_universe(&self, other: &CombinationSet) -> Result<()> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch {
                expected: self.universe.to_string(),
                found: other.universe.to_string(),
            });
        }
        Ok(())
    }

    /// Covariant action of `f: X -> Y`: each combination is replaced by its
    /// direct image. Distinct combinations may collapse.
    pub fn map(&self, f: &FiniteMap) -> Result<CombinationSet> {
        if *f.domain() != self.universe {
            return Err(Error::UniverseMismatch {
                expected: self.universe.to_string(),
                found: f.domain().to_string(),
            });
        }
        let mut combinations = BTreeSet::new();
        for combination in &self.combinations {
            combinations.insert(f.image_of(combination)?);
        }
        Ok(CombinationSet {
            universe: f.codomain().clone(),
            combinations,
        })
    }

    /// All pairwise unions `A | B` with `A` from `self` and `B` from `other`.
    pub fn join(&self, other: &CombinationSet) -> Result<CombinationSet> {
        self.check_same_universe(other)?;
        let mut combinations = BTreeSet::new();
        for a in &self.combinations {
            for b in &other.combinations {
                combinations.insert(a.union(b));
            }
        }
        Ok(CombinationSet {
            universe: self.universe.clone(),
            combinations,
        })
    }

    pub fn union(&self, other: &CombinationSet) -> Result<CombinationSet> {
        self.check_same_universe(other)?;
        Ok(CombinationSet {
            universe: self.universe.clone(),
            combinations: self
                .combinations
                .union(&other.combinations)
                .cloned()
                .collect(),
        })
    }

    pub fn intersect(&self, other: &CombinationSet) -> Result<CombinationSet> {
        self.check_same_universe(other)?;
        Ok(CombinationSet {
            universe: self.universe.clone(),
            combinations: self
                .combinations
                .intersection(&other.combinations)
                .cloned()
                .collect(),
        })
    }

    /// Complement within the powerset of the universe.
    pub fn complement(&self) -> CombinationSet {
        let combinations = self
            .universe
            .subsets()
            .into_iter()
            .filter(|c| !self.combinations.contains(c))
            .collect();
        CombinationSet {
            universe: self.universe.clone(),
            combinations,
        }
    }

    /// Reread the same data as a Boolean function (the combinations become
    /// the accepted subsets). Identity on the underlying set.
    pub fn to_boolean_function(&self) -> BooleanFunction {
        BooleanFunction {
            universe: self.universe.clone(),
            accepted: self.combinations.clone(),
        }
    }
}

/// A Boolean function over a fixed universe, stored as its set of accepted
/// subsets. Maps act contravariantly: see [`BooleanFunction::map`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanFunction {
    universe: Universe,
    accepted: BTreeSet<Combination>,
}

impl BooleanFunction {
    pub fn new<I>(universe: Universe, accepted: I) -> Result<Self>
    where
        I: IntoIterator<Item = Combination>,
    {
        CombinationSet::new(universe, accepted).map(|cs| cs.to_boolean_function())
    }

    /// The constant-false function.
    pub fn never(universe: Universe) -> Self {
        CombinationSet::none(universe).to_boolean_function()
    }

    /// The constant-true function.
    pub fn always(universe: Universe) -> Self {
        CombinationSet::full(universe).to_boolean_function()
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn accepted(&self) -> impl Iterator<Item = &Combination> {
        self.accepted.iter()
    }

    pub fn as_set(&self) -> &BTreeSet<Combination> {
        &self.accepted
    }

    pub fn accepts(&self, combination: &Combination) -> bool {
        self.accepted.contains(combination)
    }

    pub fn len(&self) -> usize {
        self.accepted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.accepted.is_empty()
    }

    fn check_same_universe(&self, other: &BooleanFunction) -> Result<()> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch {
                expected: self.universe.to_string(),
                found: other.universe.to_string(),
            });
        }
        Ok(())
    }

    /// Contravariant action of `f: X -> Y` on a function over `X`: the result
    /// accepts `B` exactly when the preimage of `B` was accepted. This is
    /// precomposition with the preimage map, so it moves the function from
    /// `X` to `Y` while reading subsets of `Y` backwards through `f`.
    pub fn map(&self, f: &FiniteMap) -> Result<BooleanFunction> {
        if *f.domain() != self.universe {
            return Err(Error::UniverseMismatch {
                expected: self.universe.to_string(),
                found: f.domain().to_string(),
            });
        }
        let accepted = f
            .codomain()
            .subsets()
            .into_iter()
            .filter(|b| self.accepted.contains(&f.preimage_of(b)))
            .collect();
        Ok(BooleanFunction {
            universe: f.codomain().clone(),
            accepted,
        })
    }

    pub fn union(&self, other: &BooleanFunction) -> Result<BooleanFunction> {
        self.check_same_universe(other)?;
        Ok(BooleanFunction {
            universe: self.universe.clone(),
            accepted: self.accepted.union(&other.accepted).cloned().collect(),
        })
    }

    pub fn intersect(&self, other: &BooleanFunction) -> Result<BooleanFunction> {
        self.check_same_universe(other)?;
        Ok(BooleanFunction {
            universe: self.universe.clone(),
            accepted: self
                .accepted
                .intersection(&other.accepted)
                .cloned()
                .collect(),
        })
    }

    pub fn complement(&self) -> BooleanFunction {
        self.to_combination_set().complement().to_boolean_function()
    }

    /// Inverse of [`CombinationSet::to_boolean_function`]; identity on the
    /// underlying set.
    pub fn to_combination_set(&self) -> CombinationSet {
        CombinationSet {
            universe: self.universe.clone(),
            combinations: self.accepted.clone(),
        }
    }
}

/// A total map between two finite universes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteMap {
    domain: Universe,
    codomain: Universe,
    table: BTreeMap<String, String>,
}

impl FiniteMap {
    pub fn new<I, S, T>(domain: Universe, codomain: Universe, table: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let table: BTreeMap<String, String> = table
            .into_iter()
            .map(|(k, v)| (k.into(), v.into()))
            .collect();
        for (key, value) in &table {
            if !domain.contains(key) || !codomain.contains(value) {
                return Err(Error::EntryOutsideMap {
                    key: key.clone(),
                    value: value.clone(),
                });
            }
        }
        if let Some(uncovered) = domain.iter().find(|x| !table.contains_key(*x)) {
            return Err(Error::MissingImage {
                element: uncovered.to_string(),
            });
        }
        Ok(FiniteMap {
            domain,
            codomain,
            table,
        })
    }

    pub fn identity(universe: &Universe) -> FiniteMap {
        FiniteMap {
            domain: universe.clone(),
            codomain: universe.clone(),
            table: universe
                .iter()
                .map(|x| (x.to_string(), x.to_string()))
                .collect(),
        }
    }

    /// The inclusion of a universe into a larger one.
    pub fn inclusion(domain: &Universe, codomain: &Universe) -> Result<FiniteMap> {
        if let Some(stray) = domain.iter().find(|x| !codomain.contains(x)) {
            return Err(Error::ElementOutsideUniverse {
                element: stray.to_string(),
                universe: codomain.to_string(),
            });
        }
        Ok(FiniteMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table: domain
                .iter()
                .map(|x| (x.to_string(), x.to_string()))
                .collect(),
        })
    }

    /// Every map from `domain` to `codomain`, in a fixed odometer order over
    /// the sorted domain. `|codomain| ^ |domain|` entries.
    pub fn enumerate(domain: &Universe, codomain: &Universe) -> Vec<FiniteMap> {
        let sources: Vec<&str> = domain.iter().collect();
        let targets: Vec<&str> = codomain.iter().collect();
        if sources.is_empty() {
            return vec![FiniteMap {
                domain: domain.clone(),
                codomain: codomain.clone(),
                table: BTreeMap::new(),
            }];
        }
        if targets.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut choice = vec![0usize; sources.len()];
        loop {
            out.push(FiniteMap {
                domain: domain.clone(),
                codomain: codomain.clone(),
                table: sources
                    .iter()
                    .zip(&choice)
                    .map(|(x, c)| (x.to_string(), targets[*c].to_string()))
                    .collect(),
            });
            let mut pos = sources.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < targets.len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }

    pub fn domain(&self) -> &Universe {
        &self.domain
    }

    pub fn codomain(&self) -> &Universe {
        &self.codomain
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.table.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn apply(&self, name: &str) -> Result<&str> {
        self.table
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| Error::LabelOutsideDomain {
                label: name.to_string(),
            })
    }

    /// Composition `g . self` (apply `self` first).
    pub fn then(&self, g: &FiniteMap) -> Result<FiniteMap> {
        if self.codomain != g.domain {
            return Err(Error::UniverseMismatch {
                expected: self.codomain.to_string(),
                found: g.domain.to_string(),
            });
        }
        let mut table = BTreeMap::new();
        for (x, y) in &self.table {
            table.insert(x.clone(), g.apply(y)?.to_string());
        }
        Ok(FiniteMap {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            table,
        })
    }

    pub fn image_of(&self, combination: &Combination) -> Result<Combination> {
        let mut members = BTreeSet::new();
        for x in combination.iter() {
            members.insert(self.apply(x)?.to_string());
        }
        Ok(Combination { members })
    }

    /// `{x in domain | f(x) in combination}`. Total, so no error cases.
    pub fn preimage_of(&self, combination: &Combination) -> Combination {
        Combination {
            members: self
                .table
                .iter()
                .filter(|(_, y)| combination.contains(y))
                .map(|(x, _)| x.clone())
                .collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<&String> = self.table.values().collect();
        images.len() == self.table.len()
    }
}

impl fmt::Display for FiniteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (x, y) in self.pairs() {
            if !first {
                f.write_str(", ")?;
            }
            write!(f, "{x} -> {y}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(names: &str) -> Universe {
        Universe::new(names.split(',').filter(|s| !s.is_empty()))
    }

    fn c(names: &str) -> Combination {
        Combination::new(names.split(' ').filter(|s| !s.is_empty()))
    }

    fn cs(universe: &str, combos: &[&str]) -> CombinationSet {
        CombinationSet::new(u(universe), combos.iter().map(|s| c(s))).unwrap()
    }

    #[test]
    fn combinations_order_by_size_then_members() {
        let mut all = vec![c("a b"), c("b"), c(""), c("a"), c("a c"), c("c")];
        all.sort();
        let shown: Vec<String> = all.iter().map(|x| format!("{x:?}")).collect();
        assert_eq!(
            all,
            vec![c(""), c("a"), c("b"), c("c"), c("a b"), c("a c")],
            "got {shown:?}"
        );
    }

    #[test]
    fn subsets_enumerates_the_full_powerset() {
        assert_eq!(u("").subsets(), vec![c("")]);
        assert_eq!(
            u("a,b").subsets(),
            vec![c(""), c("a"), c("b"), c("a b")]
        );
        assert_eq!(u("a,b,c").subsets().len(), 8);
    }

    #[test]
    fn combination_set_rejects_foreign_elements() {
        let err = CombinationSet::new(u("a"), [c("b")]).unwrap_err();
        assert!(matches!(err, Error::ElementOutsideUniverse { .. }));
    }

    #[test]
    fn full_and_unit_and_none() {
        assert_eq!(CombinationSet::full(u("")), cs("", &[""]));
        assert_eq!(
            CombinationSet::full(u("a,b")),
            cs("a,b", &["", "a", "b", "a b"])
        );
        assert_eq!(CombinationSet::unit(u("a,b")), cs("a,b", &[""]));
        assert!(CombinationSet::none(u("a")).is_empty());
    }

    #[test]
    fn conversion_is_identity_on_raw_data() {
        let p = cs("x,y", &["", "x", "x y"]);
        let g = p.to_boolean_function();
        assert!(g.accepts(&c("")) && g.accepts(&c("x")) && g.accepts(&c("x y")));
        assert!(!g.accepts(&c("y")));
        assert_eq!(g.to_combination_set(), p);
    }

    #[test]
    fn conversion_round_trips_everywhere_small() {
        for universe in [u(""), u("a"), u("x,y")] {
            let subsets = universe.subsets();
            for mask in 0u32..(1 << subsets.len()) {
                let chosen = subsets
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .map(|(_, s)| s.clone());
                let p = CombinationSet::new(universe.clone(), chosen).unwrap();
                assert_eq!(p.to_boolean_function().to_combination_set(), p);
                let g = p.to_boolean_function();
                assert_eq!(g.to_combination_set().to_boolean_function(), g);
            }
        }
    }

    #[test]
    fn map_construction_checks_totality_and_membership() {
        assert!(matches!(
            FiniteMap::new(u("a,b"), u("c"), [("a", "c")]),
            Err(Error::MissingImage { .. })
        ));
        assert!(matches!(
            FiniteMap::new(u("a"), u("c"), [("a", "d")]),
            Err(Error::EntryOutsideMap { .. })
        ));
        assert!(matches!(
            FiniteMap::new(u("a"), u("c"), [("b", "c")]),
            Err(Error::EntryOutsideMap { .. })
        ));
        assert!(FiniteMap::new(u(""), u(""), Vec::<(String, String)>::new()).is_ok());
    }

    #[test]
    fn map_basics() {
        let f = FiniteMap::new(u("x,y"), u("x"), [("x", "x"), ("y", "x")]).unwrap();
        assert_eq!(f.apply("y").unwrap(), "x");
        assert!(!f.is_injective());
        assert!(FiniteMap::identity(&u("x,y")).is_injective());
        assert_eq!(f.image_of(&c("x y")).unwrap(), c("x"));
        assert_eq!(f.preimage_of(&c("x")), c("x y"));
        assert_eq!(f.preimage_of(&c("")), c(""));
        let inc = FiniteMap::inclusion(&u("a"), &u("a,b")).unwrap();
        assert_eq!(inc.apply("a").unwrap(), "a");
        assert!(FiniteMap::inclusion(&u("a,z"), &u("a,b")).is_err());
    }

    #[test]
    fn composition_applies_left_to_right() {
        let f = FiniteMap::new(u("a"), u("b"), [("a", "b")]).unwrap();
        let g = FiniteMap::new(u("b"), u("c"), [("b", "c")]).unwrap();
        let gf = f.then(&g).unwrap();
        assert_eq!(gf.apply("a").unwrap(), "c");
        assert!(g.then(&f).is_err());
    }

    #[test]
    fn enumerate_counts_and_edge_cases() {
        assert_eq!(FiniteMap::enumerate(&u(""), &u("")).len(), 1);
        assert_eq!(FiniteMap::enumerate(&u(""), &u("a,b")).len(), 1);
        assert_eq!(FiniteMap::enumerate(&u("a"), &u("")).len(), 0);
        assert_eq!(FiniteMap::enumerate(&u("a,b"), &u("x,y,z")).len(), 9);
        let all = FiniteMap::enumerate(&u("a,b"), &u("x,y"));
        assert_eq!(all.len(), 4);
        assert_eq!(all[0].apply("a").unwrap(), "x");
        assert_eq!(all[0].apply("b").unwrap(), "x");
        assert_eq!(all[1].apply("b").unwrap(), "y");
    }

    #[test]
    fn covariant_map_takes_direct_images_and_may_collapse() {
        let ident = FiniteMap::identity(&u("x,y"));
        let p = cs("x,y", &["", "x", "x y"]);
        assert_eq!(p.map(&ident).unwrap(), p);

        let r = FiniteMap::new(u("x,y"), u("x,y"), [("x", "x"), ("y", "x")]).unwrap();
        assert_eq!(p.map(&r).unwrap(), cs("x,y", &["", "x"]));

        let inc = FiniteMap::inclusion(&u("a,b"), &u("a,b,c")).unwrap();
        assert_eq!(
            cs("a,b", &["a", "b", "a b"]).map(&inc).unwrap(),
            cs("a,b,c", &["a", "b", "a b"])
        );
    }

    #[test]
    fn contravariant_map_pulls_back_through_preimages() {
        let ident = FiniteMap::identity(&u("x,y"));
        let g = cs("x,y", &["", "x", "x y"]).to_boolean_function();
        assert_eq!(g.map(&ident).unwrap(), g);

        // Everything in the codomain pulls back to the empty set, which is
        // accepted, so the transported function is constant true.
        let from_nothing = FiniteMap::inclusion(&u(""), &u("x,y")).unwrap();
        let truth = cs("", &[""]).to_boolean_function();
        assert_eq!(
            truth.map(&from_nothing).unwrap(),
            BooleanFunction::always(u("x,y"))
        );

        let r = FiniteMap::new(u("x,y"), u("x,y"), [("x", "x"), ("y", "x")]).unwrap();
        assert_eq!(g.map(&r).unwrap(), BooleanFunction::always(u("x,y")));
    }

    #[test]
    fn the_two_actions_differ_on_the_same_raw_data() {
        let r = FiniteMap::new(u("x,y"), u("x,y"), [("x", "x"), ("y", "x")]).unwrap();
        let p = cs("x,y", &["", "x", "x y"]);
        let pushed = p.map(&r).unwrap().to_boolean_function();
        let pulled = p.to_boolean_function().map(&r).unwrap();
        assert_ne!(pushed, pulled);
    }

    #[test]
    fn join_forms_all_pairwise_unions() {
        let left = cs("a,b", &["a"]);
        let right = cs("a,b", &["", "b"]);
        assert_eq!(left.join(&right).unwrap(), cs("a,b", &["a", "a b"]));

        let unit = CombinationSet::unit(u("a,b"));
        assert_eq!(left.join(&unit).unwrap(), left);
        assert_eq!(unit.join(&right).unwrap(), right);

        let nothing = CombinationSet::none(u("a,b"));
        assert!(left.join(&nothing).unwrap().is_empty());

        assert!(left.join(&cs("a", &["a"])).is_err());
    }

    #[test]
    fn boolean_connectives() {
        let g = cs("a,b", &["", "a"]).to_boolean_function();
        let h = cs("a,b", &["a", "a b"]).to_boolean_function();
        assert_eq!(
            g.union(&h).unwrap(),
            cs("a,b", &["", "a", "a b"]).to_boolean_function()
        );
        assert_eq!(
            g.intersect(&h).unwrap(),
            cs("a,b", &["a"]).to_boolean_function()
        );
        assert_eq!(
            g.complement(),
            cs("a,b", &["b", "a b"]).to_boolean_function()
        );
        assert_eq!(
            cs("a,b", &["", "a"]).complement(),
            cs("a,b", &["b", "a b"])
        );
    }
}
