//! SDDs and ZSDDs in unconstrained form.
//!
//! Both term languages share one shape: terminals, literal atoms, and
//! decompositions, where a decomposition is a nonempty set of
//! (prime, sub) pairs. Pair sets are kept canonically ordered and
//! deduplicated, so "the order of pairs is irrelevant" holds structurally
//! and relabeling may silently merge pairs that become equal.
//!
//! An SDD denotes a set of subsets through intersections:
//! a decomposition means the union of `prime ∩ sub` over its pairs. A ZSDD
//! builds combinations instead: its decomposition means the union of
//! `prime ⊔ sub`, where `⊔` takes all pairwise unions. Primes and subs may
//! share variables here; variable separation is imposed separately by
//! vtrees.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use crate::diagram::{DiagramStore, NodeId, NodeView};
use crate::error::{Error, Result};
use crate::setfun::{CombinationSet, FiniteMap, Universe};

/// An SDD term. Construct through the associated functions; decompositions
/// reject empty pair sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sdd(SddNode);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum SddNode {
    Bot,
    Top,
    Neg(String),
    Pos(String),
    Decomp(BTreeSet<(Sdd, Sdd)>),
}

/// Borrowed view of the top constructor of an [`Sdd`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SddView<'a> {
    Bot,
    Top,
    Neg(&'a str),
    Pos(&'a str),
    Decomp(&'a BTreeSet<(Sdd, Sdd)>),
}

impl Sdd {
    pub fn bot() -> Sdd {
        Sdd(SddNode::Bot)
    }

    pub fn top() -> Sdd {
        Sdd(SddNode::Top)
    }

    pub fn pos(name: impl Into<String>) -> Sdd {
        Sdd(SddNode::Pos(name.into()))
    }

    pub fn neg(name: impl Into<String>) -> Sdd {
        Sdd(SddNode::Neg(name.into()))
    }

    pub fn decomposition<I>(pairs: I) -> Result<Sdd>
    where
        I: IntoIterator<Item = (Sdd, Sdd)>,
    {
        let pairs: BTreeSet<(Sdd, Sdd)> = pairs.into_iter().collect();
        if pairs.is_empty() {
            return Err(Error::EmptyDecomposition);
        }
        Ok(Sdd(SddNode::Decomp(pairs)))
    }

    pub fn view(&self) -> SddView<'_> {
        match &self.0 {
            SddNode::Bot => SddView::Bot,
            SddNode::Top => SddView::Top,
            SddNode::Neg(x) => SddView::Neg(x),
            SddNode::Pos(x) => SddView::Pos(x),
            SddNode::Decomp(pairs) => SddView::Decomp(pairs),
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match &self.0 {
            SddNode::Bot | SddNode::Top => {}
            SddNode::Neg(x) | SddNode::Pos(x) => {
                out.insert(x.clone());
            }
            SddNode::Decomp(pairs) => {
                for (p, s) in pairs {
                    p.collect_variables(out);
                    s.collect_variables(out);
                }
            }
        }
    }

    /// Rename variables through `f`, re-canonicalizing every pair set.
    pub fn relabel(&self, f: &FiniteMap) -> Result<Sdd> {
        Ok(match &self.0 {
            SddNode::Bot => Sdd::bot(),
            SddNode::Top => Sdd::top(),
            SddNode::Neg(x) => Sdd::neg(f.apply(x)?),
            SddNode::Pos(x) => Sdd::pos(f.apply(x)?),
            SddNode::Decomp(pairs) => {
                let mut renamed = BTreeSet::new();
                for (p, s) in pairs {
                    renamed.insert((p.relabel(f)?, s.relabel(f)?));
                }
                Sdd(SddNode::Decomp(renamed))
            }
        })
    }
}

fn sdd_rank(node: &SddNode) -> u8 {
    match node {
        SddNode::Bot => 0,
        SddNode::Top => 1,
        SddNode::Neg(_) | SddNode::Pos(_) => 2,
        SddNode::Decomp(_) => 3,
    }
}

// Terminals, then literals by (name, negative before positive), then
// decompositions lexicographically. This is the ordering behind canonical
// pair sets and serialization.
impl Ord for Sdd {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (SddNode::Neg(a), SddNode::Neg(b)) | (SddNode::Pos(a), SddNode::Pos(b)) => a.cmp(b),
            (SddNode::Neg(a), SddNode::Pos(b)) => a.cmp(b).then(Ordering::Less),
            (SddNode::Pos(a), SddNode::Neg(b)) => a.cmp(b).then(Ordering::Greater),
            (SddNode::Decomp(a), SddNode::Decomp(b)) => a.cmp(b),
            (a, b) => sdd_rank(a).cmp(&sdd_rank(b)),
        }
    }
}

impl PartialOrd for Sdd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A ZSDD term. Same canonical-set conventions as [`Sdd`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Zsdd(ZsddNode);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum ZsddNode {
    Bot,
    Eps,
    Var(String),
    PmVar(String),
    Decomp(BTreeSet<(Zsdd, Zsdd)>),
}

/// Borrowed view of the top constructor of a [`Zsdd`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZsddView<'a> {
    Bot,
    Eps,
    Var(&'a str),
    PmVar(&'a str),
    Decomp(&'a BTreeSet<(Zsdd, Zsdd)>),
}

impl Zsdd {
    pub fn bot() -> Zsdd {
        Zsdd(ZsddNode::Bot)
    }

    /// The term denoting exactly the empty combination.
    pub fn eps() -> Zsdd {
        Zsdd(ZsddNode::Eps)
    }

    pub fn var(name: impl Into<String>) -> Zsdd {
        Zsdd(ZsddNode::Var(name.into()))
    }

    /// `±x`: the term denoting both the empty combination and `{x}`.
    pub fn pm_var(name: impl Into<String>) -> Zsdd {
        Zsdd(ZsddNode::PmVar(name.into()))
    }

    pub fn decomposition<I>(pairs: I) -> Result<Zsdd>
    where
        I: IntoIterator<Item = (Zsdd, Zsdd)>,
    {
        let pairs: BTreeSet<(Zsdd, Zsdd)> = pairs.into_iter().collect();
        if pairs.is_empty() {
            return Err(Error::EmptyDecomposition);
        }
        Ok(Zsdd(ZsddNode::Decomp(pairs)))
    }

    pub fn view(&self) -> ZsddView<'_> {
        match &self.0 {
            ZsddNode::Bot => ZsddView::Bot,
            ZsddNode::Eps => ZsddView::Eps,
            ZsddNode::Var(x) => ZsddView::Var(x),
            ZsddNode::PmVar(x) => ZsddView::PmVar(x),
            ZsddNode::Decomp(pairs) => ZsddView::Decomp(pairs),
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match &self.0 {
            ZsddNode::Bot | ZsddNode::Eps => {}
            ZsddNode::Var(x) | ZsddNode::PmVar(x) => {
                out.insert(x.clone());
            }
            ZsddNode::Decomp(pairs) => {
                for (p, s) in pairs {
                    p.collect_variables(out);
                    s.collect_variables(out);
                }
            }
        }
    }

    pub fn relabel(&self, f: &FiniteMap) -> Result<Zsdd> {
        Ok(match &self.0 {
            ZsddNode::Bot => Zsdd::bot(),
            ZsddNode::Eps => Zsdd::eps(),
            ZsddNode::Var(x) => Zsdd::var(f.apply(x)?),
            ZsddNode::PmVar(x) => Zsdd::pm_var(f.apply(x)?),
            ZsddNode::Decomp(pairs) => {
                let mut renamed = BTreeSet::new();
                for (p, s) in pairs {
                    renamed.insert((p.relabel(f)?, s.relabel(f)?));
                }
                Zsdd(ZsddNode::Decomp(renamed))
            }
        })
    }
}

fn zsdd_rank(node: &ZsddNode) -> u8 {
    match node {
        ZsddNode::Bot => 0,
        ZsddNode::Eps => 1,
        ZsddNode::Var(_) | ZsddNode::PmVar(_) => 2,
        ZsddNode::Decomp(_) => 3,
    }
}

impl Ord for Zsdd {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (ZsddNode::Var(a), ZsddNode::Var(b)) | (ZsddNode::PmVar(a), ZsddNode::PmVar(b)) => {
                a.cmp(b)
            }
            (ZsddNode::Var(a), ZsddNode::PmVar(b)) => a.cmp(b).then(Ordering::Less),
            (ZsddNode::PmVar(a), ZsddNode::Var(b)) => a.cmp(b).then(Ordering::Greater),
            (ZsddNode::Decomp(a), ZsddNode::Decomp(b)) => a.cmp(b),
            (a, b) => zsdd_rank(a).cmp(&zsdd_rank(b)),
        }
    }
}

impl PartialOrd for Zsdd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_vars_within(vars: &BTreeSet<String>, universe: &Universe) -> Result<()> {
    if let Some(stray) = vars.iter().find(|v| !universe.contains(v)) {
        return Err(Error::ElementOutsideUniverse {
            element: stray.clone(),
            universe: universe.to_string(),
        });
    }
    Ok(())
}

/// The subset-classifier reading of an SDD: literals carve the powerset of
/// `universe`, and a decomposition is the union of `prime ∩ sub`.
pub fn interpret_sdd(s: &Sdd, universe: &Universe) -> Result<CombinationSet> {
    check_vars_within(&s.variables(), universe)?;
    let mut memo = HashMap::new();
    Ok((*sigma(s, universe, &mut memo)).clone())
}

fn sigma<'a>(
    s: &'a Sdd,
    universe: &Universe,
    memo: &mut HashMap<&'a Sdd, Rc<CombinationSet>>,
) -> Rc<CombinationSet> {
    if let Some(hit) = memo.get(s) {
        return Rc::clone(hit);
    }
    let value = match &s.0 {
        SddNode::Bot => CombinationSet::none(universe.clone()),
        SddNode::Top => CombinationSet::full(universe.clone()),
        SddNode::Pos(x) => literal_set(universe, x, true),
        SddNode::Neg(x) => literal_set(universe, x, false),
        SddNode::Decomp(pairs) => {
            let mut acc = CombinationSet::none(universe.clone());
            for (p, sub) in pairs {
                let pv = sigma(p, universe, memo);
                let sv = sigma(sub, universe, memo);
                let part = pv.intersect(&sv).expect("prime and sub share the universe");
                acc = acc.union(&part).expect("parts share the universe");
            }
            acc
        }
    };
    let value = Rc::new(value);
    memo.insert(s, Rc::clone(&value));
    value
}

fn literal_set(universe: &Universe, name: &str, present: bool) -> CombinationSet {
    let combos = universe
        .subsets()
        .into_iter()
        .filter(|c| c.contains(name) == present);
    CombinationSet::new(universe.clone(), combos).expect("subsets lie in the universe")
}

/// The combination-family reading of a ZSDD: atoms denote tiny families and
/// a decomposition is the union of `prime ⊔ sub` (all pairwise unions).
pub fn interpret_zsdd(z: &Zsdd, universe: &Universe) -> Result<CombinationSet> {
    check_vars_within(&z.variables(), universe)?;
    let mut memo = HashMap::new();
    Ok((*xi(z, universe, &mut memo)).clone())
}

fn xi<'a>(
    z: &'a Zsdd,
    universe: &Universe,
    memo: &mut HashMap<&'a Zsdd, Rc<CombinationSet>>,
) -> Rc<CombinationSet> {
    if let Some(hit) = memo.get(z) {
        return Rc::clone(hit);
    }
    let value = match &z.0 {
        ZsddNode::Bot => CombinationSet::none(universe.clone()),
        ZsddNode::Eps => CombinationSet::unit(universe.clone()),
        ZsddNode::Var(x) => CombinationSet::new(
            universe.clone(),
            [crate::setfun::Combination::new([x.clone()])],
        )
        .expect("variable was checked against the universe"),
        ZsddNode::PmVar(x) => CombinationSet::new(
            universe.clone(),
            [
                crate::setfun::Combination::empty(),
                crate::setfun::Combination::new([x.clone()]),
            ],
        )
        .expect("variable was checked against the universe"),
        ZsddNode::Decomp(pairs) => {
            let mut acc = CombinationSet::none(universe.clone());
            for (p, sub) in pairs {
                let pv = xi(p, universe, memo);
                let sv = xi(sub, universe, memo);
                let part = pv.join(&sv).expect("prime and sub share the universe");
                acc = acc.union(&part).expect("parts share the universe");
            }
            acc
        }
    };
    let value = Rc::new(value);
    memo.insert(z, Rc::clone(&value));
    value
}

/// Whether every decomposition inside `s` has pairwise disjoint prime
/// interpretations over `universe`. Checked semantically, by interpreting
/// the primes, at every decomposition node including nested ones.
pub fn is_strongly_deterministic_sdd(s: &Sdd, universe: &Universe) -> Result<bool> {
    check_vars_within(&s.variables(), universe)?;
    let mut memo = HashMap::new();
    Ok(sdd_decomps(s).iter().all(|pairs| {
        let primes: Vec<Rc<CombinationSet>> = pairs
            .iter()
            .map(|(p, _)| sigma(p, universe, &mut memo))
            .collect();
        pairwise_disjoint(&primes)
    }))
}

/// Strong determinism plus: at every decomposition the primes' union is the
/// full powerset of `universe`.
pub fn is_partition_sdd(s: &Sdd, universe: &Universe) -> Result<bool> {
    if !is_strongly_deterministic_sdd(s, universe)? {
        return Ok(false);
    }
    let full = CombinationSet::full(universe.clone());
    let mut memo = HashMap::new();
    Ok(sdd_decomps(s).iter().all(|pairs| {
        let mut union = CombinationSet::none(universe.clone());
        for (p, _) in pairs.iter() {
            let pv = sigma(p, universe, &mut memo);
            union = union.union(&pv).expect("primes share the universe");
        }
        union == full
    }))
}

/// ZSDD strong determinism: pairwise disjoint prime interpretations at
/// every decomposition.
pub fn is_strongly_deterministic_zsdd(z: &Zsdd, universe: &Universe) -> Result<bool> {
    check_vars_within(&z.variables(), universe)?;
    let mut memo = HashMap::new();
    Ok(zsdd_decomps(z).iter().all(|pairs| {
        let primes: Vec<Rc<CombinationSet>> = pairs
            .iter()
            .map(|(p, _)| xi(p, universe, &mut memo))
            .collect();
        pairwise_disjoint(&primes)
    }))
}

fn pairwise_disjoint(sets: &[Rc<CombinationSet>]) -> bool {
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            let overlap = a.intersect(b).expect("primes share the universe");
            if !overlap.is_empty() {
                return false;
            }
        }
    }
    true
}

fn sdd_decomps(s: &Sdd) -> Vec<&BTreeSet<(Sdd, Sdd)>> {
    let mut out = Vec::new();
    let mut stack = vec![s];
    while let Some(t) = stack.pop() {
        if let SddNode::Decomp(pairs) = &t.0 {
            out.push(pairs);
            for (p, sub) in pairs {
                stack.push(p);
                stack.push(sub);
            }
        }
    }
    out
}

fn zsdd_decomps(z: &Zsdd) -> Vec<&BTreeSet<(Zsdd, Zsdd)>> {
    let mut out = Vec::new();
    let mut stack = vec![z];
    while let Some(t) = stack.pop() {
        if let ZsddNode::Decomp(pairs) = &t.0 {
            out.push(pairs);
            for (p, sub) in pairs {
                stack.push(p);
                stack.push(sub);
            }
        }
    }
    out
}

/// Shannon translation of a diagram: `0 ↦ ⊥`, `1 ↦ ⊤`, and a decision on
/// `a` becomes the decomposition `{(¬a, lo), (a, hi)}`. The result's
/// classifier reading agrees with the diagram's across every universe.
pub fn sdd_of_diagram(store: &DiagramStore, root: NodeId) -> Sdd {
    let mut memo: HashMap<NodeId, Sdd> = HashMap::new();
    translate(store, root, &mut memo)
}

fn translate(store: &DiagramStore, id: NodeId, memo: &mut HashMap<NodeId, Sdd>) -> Sdd {
    if let Some(hit) = memo.get(&id) {
        return hit.clone();
    }
    let out = match store.view(id) {
        NodeView::Terminal(false) => Sdd::bot(),
        NodeView::Terminal(true) => Sdd::top(),
        NodeView::Decision { label, lo, hi } => {
            let lo = translate(store, lo, memo);
            let hi = translate(store, hi, memo);
            Sdd::decomposition([(Sdd::neg(label), lo), (Sdd::pos(label), hi)])
                .expect("two pairs are never empty")
        }
    };
    memo.insert(id, out.clone());
    out
}
