//! Rooted decision diagrams with two set-theoretic readings.
//!
//! A diagram is either a terminal (`0` or `1`) or a decision node
//! `(label, lo, hi)`. Nodes live in a [`DiagramStore`] and are hash-consed:
//! structurally equal nodes always get the same [`NodeId`], so diagram
//! equality is id equality and relabeling can merge subterms silently.
//!
//! The same diagram can be read as a classifier of all subsets of a chosen
//! universe ([`DiagramStore::interpret_bdd`]) or as a direct description of
//! a family of combinations ([`DiagramStore::interpret_zdd`]). The two
//! readings transform differently along maps between universes, which is
//! what the law-checking harness probes.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::setfun::{Combination, CombinationSet, FiniteMap, Universe};

/// Index of a node inside its [`DiagramStore`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    /// Position of the node in its store. Ids are dense, so this can index
    /// side tables maintained outside the store.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct LabelId(pub(crate) u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Terminal(bool),
    Decision { label: LabelId, lo: NodeId, hi: NodeId },
}

/// A borrowed view of one node, with the label resolved to its name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeView<'a> {
    Terminal(bool),
    Decision { label: &'a str, lo: NodeId, hi: NodeId },
}

/// Arena for diagrams. All construction goes through [`DiagramStore::terminal`]
/// and [`DiagramStore::decision`], which intern nodes in a unique table.
#[derive(Debug, Default)]
pub struct DiagramStore {
    nodes: Vec<Node>,
    unique: HashMap<Node, NodeId>,
    labels: Vec<String>,
    label_ids: HashMap<String, LabelId>,
}

impl DiagramStore {
    pub fn new() -> Self {
        DiagramStore::default()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn intern_node(&mut self, node: Node) -> NodeId {
        if let Some(id) = self.unique.get(&node) {
            return *id;
        }
        let id = NodeId(u32::try_from(self.nodes.len()).expect("store size fits in u32"));
        self.nodes.push(node);
        self.unique.insert(node, id);
        id
    }

    fn intern_label(&mut self, name: &str) -> LabelId {
        if let Some(id) = self.label_ids.get(name) {
            return *id;
        }
        let id = LabelId(u32::try_from(self.labels.len()).expect("label count fits in u32"));
        self.labels.push(name.to_string());
        self.label_ids.insert(name.to_string(), id);
        id
    }

    pub fn terminal(&mut self, value: bool) -> NodeId {
        self.intern_node(Node::Terminal(value))
    }

    pub fn decision(&mut self, label: &str, lo: NodeId, hi: NodeId) -> NodeId {
        let label = self.intern_label(label);
        self.intern_node(Node::Decision { label, lo, hi })
    }

    pub fn view(&self, id: NodeId) -> NodeView<'_> {
        match self.nodes[id.0 as usize] {
            Node::Terminal(value) => NodeView::Terminal(value),
            Node::Decision { label, lo, hi } => NodeView::Decision {
                label: &self.labels[label.0 as usize],
                lo,
                hi,
            },
        }
    }

    /// Every label reachable from `root`.
    pub fn labels_of(&self, root: NodeId) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut out = BTreeSet::new();
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if !seen.insert(id) {
                continue;
            }
            if let Node::Decision { label, lo, hi } = self.nodes[id.0 as usize] {
                out.insert(self.labels[label.0 as usize].clone());
                stack.push(lo);
                stack.push(hi);
            }
        }
        out
    }

    fn check_labels_within(&self, root: NodeId, universe: &Universe) -> Result<()> {
        // Walks the subgraph directly instead of materializing the label set;
        // this sits on the hot path of the bulk coherence checks.
        let mut seen: Vec<NodeId> = Vec::new();
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if seen.contains(&id) {
                continue;
            }
            seen.push(id);
            if let Node::Decision { label, lo, hi } = self.nodes[id.0 as usize] {
                let name = &self.labels[label.0 as usize];
                if !universe.contains(name) {
                    return Err(Error::ElementOutsideUniverse {
                        element: name.clone(),
                        universe: universe.to_string(),
                    });
                }
                stack.push(lo);
                stack.push(hi);
            }
        }
        Ok(())
    }

    /// Classifier reading over `universe`: `1` denotes every subset, `0`
    /// none, and a decision on `a` routes each subset through `hi` or `lo`
    /// according to whether it contains `a`.
    pub fn interpret_bdd(&self, root: NodeId, universe: &Universe) -> Result<CombinationSet> {
        self.check_labels_within(root, universe)?;
        let mut memo: HashMap<NodeId, Rc<BTreeSet<Combination>>> = HashMap::new();
        let combos = self.bdd_set(root, universe, &mut memo);
        CombinationSet::new(universe.clone(), combos.iter().cloned())
    }

    fn bdd_set(
        &self,
        id: NodeId,
        universe: &Universe,
        memo: &mut HashMap<NodeId, Rc<BTreeSet<Combination>>>,
    ) -> Rc<BTreeSet<Combination>> {
        if let Some(hit) = memo.get(&id) {
            return Rc::clone(hit);
        }
        let combos = match self.nodes[id.0 as usize] {
            Node::Terminal(false) => BTreeSet::new(),
            Node::Terminal(true) => universe.subsets().into_iter().collect(),
            Node::Decision { label, lo, hi } => {
                let name = &self.labels[label.0 as usize];
                let lo_set = self.bdd_set(lo, universe, memo);
                let hi_set = self.bdd_set(hi, universe, memo);
                lo_set
                    .iter()
                    .filter(|c| !c.contains(name))
                    .chain(hi_set.iter().filter(|c| c.contains(name)))
                    .cloned()
                    .collect()
            }
        };
        let combos = Rc::new(combos);
        memo.insert(id, Rc::clone(&combos));
        combos
    }

    /// Family reading: `1` denotes only the empty combination, and a decision
    /// on `a` contributes `lo`'s families untouched plus `hi`'s families with
    /// `a` adjoined. Unlike the classifier reading this does not depend on
    /// the ambient universe beyond membership checking.
    pub fn interpret_zdd(&self, root: NodeId, universe: &Universe) -> Result<CombinationSet> {
        self.check_labels_within(root, universe)?;
        let mut memo: HashMap<NodeId, Rc<BTreeSet<Combination>>> = HashMap::new();
        let combos = self.zdd_set(root, &mut memo);
        CombinationSet::new(universe.clone(), combos.iter().cloned())
    }

    fn zdd_set(
        &self,
        id: NodeId,
        memo: &mut HashMap<NodeId, Rc<BTreeSet<Combination>>>,
    ) -> Rc<BTreeSet<Combination>> {
        if let Some(hit) = memo.get(&id) {
            return Rc::clone(hit);
        }
        let combos = match self.nodes[id.0 as usize] {
            Node::Terminal(false) => BTreeSet::new(),
            Node::Terminal(true) => BTreeSet::from([Combination::empty()]),
            Node::Decision { label, lo, hi } => {
                let name = &self.labels[label.0 as usize];
                let lo_set = self.zdd_set(lo, memo);
                let hi_set = self.zdd_set(hi, memo);
                lo_set
                    .iter()
                    .cloned()
                    .chain(hi_set.iter().map(|c| c.with(name)))
                    .collect()
            }
        };
        let combos = Rc::new(combos);
        memo.insert(id, Rc::clone(&combos));
        combos
    }

    /// Membership test under the classifier reading, by walking one branch.
    /// Agrees with `interpret_bdd(root).contains(combination)` pointwise.
    pub fn eval_bdd(
        &self,
        root: NodeId,
        combination: &Combination,
        universe: &Universe,
    ) -> Result<bool> {
        self.check_labels_within(root, universe)?;
        if let Some(stray) = combination.iter().find(|m| !universe.contains(m)) {
            return Err(Error::ElementOutsideUniverse {
                element: stray.to_string(),
                universe: universe.to_string(),
            });
        }
        let mut id = root;
        loop {
            match self.nodes[id.0 as usize] {
                Node::Terminal(value) => return Ok(value),
                Node::Decision { label, lo, hi } => {
                    let name = &self.labels[label.0 as usize];
                    id = if combination.contains(name) { hi } else { lo };
                }
            }
        }
    }

    /// The label sets of all root-to-`1` paths that follow `hi` edges, found
    /// by explicit path enumeration. This is an independent route to the
    /// family reading: `one_paths(d)` always equals the combination set of
    /// `interpret_zdd(d)`.
    pub fn one_paths(&self, root: NodeId) -> BTreeSet<Combination> {
        let mut out = BTreeSet::new();
        let mut taken: Vec<&str> = Vec::new();
        self.walk_paths(root, &mut taken, &mut out);
        out
    }

    fn walk_paths<'a>(
        &'a self,
        id: NodeId,
        taken: &mut Vec<&'a str>,
        out: &mut BTreeSet<Combination>,
    ) {
        match self.nodes[id.0 as usize] {
            Node::Terminal(false) => {}
            Node::Terminal(true) => {
                out.insert(Combination::new(taken.iter().copied()));
            }
            Node::Decision { label, lo, hi } => {
                self.walk_paths(lo, taken, out);
                taken.push(&self.labels[label.0 as usize]);
                self.walk_paths(hi, taken, out);
                taken.pop();
            }
        }
    }

    /// Rename every decision label through `f`, hash-consing the result into
    /// this store. Distinct nodes may merge when `f` collapses labels.
    pub fn relabel(&mut self, f: &FiniteMap, root: NodeId) -> Result<NodeId> {
        let mut memo: HashMap<NodeId, NodeId> = HashMap::new();
        self.relabel_node(f, root, &mut memo)
    }

    fn relabel_node(
        &mut self,
        f: &FiniteMap,
        id: NodeId,
        memo: &mut HashMap<NodeId, NodeId>,
    ) -> Result<NodeId> {
        if let Some(hit) = memo.get(&id) {
            return Ok(*hit);
        }
        let renamed = match self.nodes[id.0 as usize] {
            Node::Terminal(_) => id,
            Node::Decision { label, lo, hi } => {
                let target = f.apply(&self.labels[label.0 as usize])?.to_string();
                let lo = self.relabel_node(f, lo, memo)?;
                let hi = self.relabel_node(f, hi, memo)?;
                self.decision(&target, lo, hi)
            }
        };
        memo.insert(id, renamed);
        Ok(renamed)
    }

    pub(crate) fn raw(&self, id: NodeId) -> Node {
        self.nodes[id.0 as usize]
    }

    pub(crate) fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub(crate) fn label_name(&self, index: usize) -> &str {
        &self.labels[index]
    }

    /// Per-label-index image of `f`, as intern indices; `u32::MAX` where the
    /// source label has no entry. Targets are interned as a side effect.
    pub(crate) fn label_translation(&mut self, f: &FiniteMap) -> Vec<u32> {
        for (_, to) in f.pairs() {
            self.intern_label(to);
        }
        let mut table = vec![u32::MAX; self.labels.len()];
        for (from, to) in f.pairs() {
            if let Some(source) = self.label_ids.get(from) {
                table[source.0 as usize] = self.label_ids[to].0;
            }
        }
        table
    }

    /// Relabeling by a precomputed translation table, memoized in a dense
    /// side table indexed by source id (`u32::MAX` marks unvisited). Callers
    /// guarantee every reachable label has a translation entry.
    pub(crate) fn relabel_translated(
        &mut self,
        translation: &[u32],
        memo: &mut [u32],
        id: NodeId,
    ) -> NodeId {
        let hit = memo[id.0 as usize];
        if hit != u32::MAX {
            return NodeId(hit);
        }
        let renamed = match self.nodes[id.0 as usize] {
            Node::Terminal(_) => id,
            Node::Decision { label, lo, hi } => {
                let target = LabelId(translation[label.0 as usize]);
                debug_assert_ne!(target.0, u32::MAX, "label lies in the map's domain");
                let lo = self.relabel_translated(translation, memo, lo);
                let hi = self.relabel_translated(translation, memo, hi);
                self.intern_node(Node::Decision { label: target, lo, hi })
            }
        };
        memo[id.0 as usize] = renamed.0;
        renamed
    }

    /// Whether every edge goes from a lower-ranked label to a strictly
    /// higher-ranked one. Labels may repeat along a path only if ranks still
    /// increase, which they cannot, so this enforces read-once ordering.
    pub fn respects_order(&self, root: NodeId, order: &TotalOrder) -> Result<bool> {
        for label in self.labels_of(root) {
            if order.rank(&label).is_none() {
                return Err(Error::LabelOutsideOrder { label });
            }
        }
        let mut memo: HashMap<NodeId, bool> = HashMap::new();
        Ok(self.ordered_from(root, order, &mut memo))
    }

    fn ordered_from(
        &self,
        id: NodeId,
        order: &TotalOrder,
        memo: &mut HashMap<NodeId, bool>,
    ) -> bool {
        if let Some(hit) = memo.get(&id) {
            return *hit;
        }
        let ok = match self.nodes[id.0 as usize] {
            Node::Terminal(_) => true,
            Node::Decision { label, lo, hi } => {
                let rank = order
                    .rank(&self.labels[label.0 as usize])
                    .expect("labels were checked against the order");
                let child_ok = |store: &Self, child: NodeId, memo: &mut HashMap<_, _>| {
                    let edge_rises = match store.nodes[child.0 as usize] {
                        Node::Terminal(_) => true,
                        Node::Decision { label, .. } => {
                            let child_rank = order
                                .rank(&store.labels[label.0 as usize])
                                .expect("labels were checked against the order");
                            rank < child_rank
                        }
                    };
                    edge_rises && store.ordered_from(child, order, memo)
                };
                child_ok(self, lo, memo) && child_ok(self, hi, memo)
            }
        };
        memo.insert(id, ok);
        ok
    }
}

/// A sequence of distinct names, ranking its universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TotalOrder {
    names: Vec<String>,
}

impl TotalOrder {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateOrderName { name: name.clone() });
            }
        }
        Ok(TotalOrder { names })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn rank(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn universe(&self) -> Universe {
        Universe::new(self.names.iter().cloned())
    }
}

/// Whether `f` sends ranks of `from` to strictly increasing ranks of `to`.
/// Such maps are exactly the ones whose relabeling action preserves order
/// respect, and they are necessarily injective.
pub fn strictly_monotone(f: &FiniteMap, from: &TotalOrder, to: &TotalOrder) -> Result<bool> {
    if *f.domain() != from.universe() {
        return Err(Error::UniverseMismatch {
            expected: from.universe().to_string(),
            found: f.domain().to_string(),
        });
    }
    if *f.codomain() != to.universe() {
        return Err(Error::UniverseMismatch {
            expected: to.universe().to_string(),
            found: f.codomain().to_string(),
        });
    }
    let mut ranks = Vec::with_capacity(from.len());
    for name in from.names() {
        let image = f.apply(name)?;
        ranks.push(to.rank(image).expect("image lies in the target order"));
    }
    Ok(ranks.windows(2).all(|w| w[0] < w[1]))
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

    /// `(a (b 0 1) 1)`: under the classifier reading, "a or b".
    fn sample(store: &mut DiagramStore) -> NodeId {
        let zero = store.terminal(false);
        let one = store.terminal(true);
        let inner = store.decision("b", zero, one);
        store.decision("a", inner, one)
    }

    #[test]
    fn construction_is_hash_consed() {
        let mut store = DiagramStore::new();
        assert_eq!(store.terminal(true), store.terminal(true));
        let d1 = sample(&mut store);
        let d2 = sample(&mut store);
        assert_eq!(d1, d2);
        assert_eq!(store.node_count(), 4);
    }

    #[test]
    fn labels_of_collects_reachable_labels() {
        let mut store = DiagramStore::new();
        let d = sample(&mut store);
        assert_eq!(
            store.labels_of(d),
            BTreeSet::from(["a".to_string(), "b".to_string()])
        );
        let one = store.terminal(true);
        assert!(store.labels_of(one).is_empty());
    }

    #[test]
    fn classifier_reading_of_the_sample() {
        let mut store = DiagramStore::new();
        let d = sample(&mut store);
        assert_eq!(
            store.interpret_bdd(d, &u("a,b")).unwrap(),
            cs("a,b", &["a", "b", "a b"])
        );
        assert_eq!(
            store.interpret_bdd(d, &u("a,b,c")).unwrap(),
            cs("a,b,c", &["a", "b", "a b", "a c", "b c", "a b c"])
        );
        let one = store.terminal(true);
        assert_eq!(
            store.interpret_bdd(one, &u("a,b")).unwrap(),
            CombinationSet::full(u("a,b"))
        );
        assert!(store.interpret_bdd(d, &u("a")).is_err());
    }

    #[test]
    fn family_reading_of_the_sample_ignores_extra_elements() {
        let mut store = DiagramStore::new();
        let d = sample(&mut store);
        assert_eq!(store.interpret_zdd(d, &u("a,b")).unwrap(), cs("a,b", &["a", "b"]));
        assert_eq!(
            store.interpret_zdd(d, &u("a,b,c")).unwrap(),
            cs("a,b,c", &["a", "b"])
        );
        let one = store.terminal(true);
        assert_eq!(store.interpret_zdd(one, &u("a,b")).unwrap(), cs("a,b", &[""]));
    }

    #[test]
    fn eval_walks_one_branch() {
        let mut store = DiagramStore::new();
        let d = sample(&mut store);
        let universe = u("a,b");
        assert!(store.eval_bdd(d, &c("a"), &universe).unwrap());
        assert!(store.eval_bdd(d, &c("b"), &universe).unwrap());
        assert!(!store.eval_bdd(d, &c(""), &universe).unwrap());
        assert!(store.eval_bdd(d, &c("z"), &universe).is_err());
    }

    #[test]
    fn one_paths_matches_the_family_reading() {
        let mut store = DiagramStore::new();
        let d = sample(&mut store);
        assert_eq!(store.one_paths(d), BTreeSet::from([c("a"), c("b")]));

        let zero = store.terminal(false);
        let one = store.terminal(true);
        assert!(store.one_paths(zero).is_empty());
        assert_eq!(store.one_paths(one), BTreeSet::from([c("")]));

        // Repeated label along a path: the path set is still a plain set.
        let inner = store.decision("a", zero, one);
        let outer = store.decision("a", zero, inner);
        assert_eq!(store.one_paths(outer), BTreeSet::from([c("a")]));
        assert_eq!(
            store.one_paths(outer),
            store
                .interpret_zdd(outer, &u("a"))
                .unwrap()
                .as_set()
                .clone()
        );
    }

    #[test]
    fn relabel_renames_and_merges() {
        let mut store = DiagramStore::new();
        let d = sample(&mut store);
        let ident = FiniteMap::identity(&u("a,b"));
        assert_eq!(store.relabel(&ident, d).unwrap(), d);

        let collapse = FiniteMap::new(u("a,b"), u("a,b"), [("a", "a"), ("b", "a")]).unwrap();
        let rd = store.relabel(&collapse, d).unwrap();
        let zero = store.terminal(false);
        let one = store.terminal(true);
        let inner = store.decision("a", zero, one);
        assert_eq!(rd, store.decision("a", inner, one));

        let too_small = FiniteMap::identity(&u("a"));
        assert!(store.relabel(&too_small, d).is_err());

        // Children that differ only by label can become identical.
        let left = store.decision("a", zero, one);
        let right = store.decision("b", zero, one);
        let top = store.decision("a", left, right);
        let merged = store.relabel(&collapse, top).unwrap();
        assert_eq!(merged, store.decision("a", inner, inner));
    }

    #[test]
    fn order_respect_checks_strict_rank_increase() {
        let mut store = DiagramStore::new();
        let d = sample(&mut store);
        let ab = TotalOrder::new(["a", "b"]).unwrap();
        let ba = TotalOrder::new(["b", "a"]).unwrap();
        assert!(store.respects_order(d, &ab).unwrap());
        assert!(!store.respects_order(d, &ba).unwrap());
        assert!(store.respects_order(d, &TotalOrder::new(["a"]).unwrap()).is_err());

        let zero = store.terminal(false);
        let one = store.terminal(true);
        let aa = store.decision("a", zero, one);
        let repeated = store.decision("a", zero, aa);
        assert!(!store.respects_order(repeated, &ab).unwrap());
        assert!(store.respects_order(one, &TotalOrder::new(Vec::<String>::new()).unwrap()).unwrap());
    }

    #[test]
    fn monotone_maps_are_detected() {
        let ab = TotalOrder::new(["a", "b"]).unwrap();
        let abc = TotalOrder::new(["a", "b", "c"]).unwrap();
        let acb = TotalOrder::new(["a", "c", "b"]).unwrap();
        let inc = FiniteMap::inclusion(&u("a,b"), &u("a,b,c")).unwrap();
        assert!(strictly_monotone(&inc, &ab, &abc).unwrap());
        // Same map, but the target order now puts c between a and b.
        assert!(strictly_monotone(&inc, &ab, &acb).unwrap());
        let swap = FiniteMap::new(u("a,b"), u("a,b"), [("a", "b"), ("b", "a")]).unwrap();
        assert!(!strictly_monotone(&swap, &ab, &ab).unwrap());
        let collapse = FiniteMap::new(u("a,b"), u("a,b"), [("a", "a"), ("b", "a")]).unwrap();
        assert!(!strictly_monotone(&collapse, &ab, &ab).unwrap());
        assert!(strictly_monotone(&inc, &ab, &ab).is_err());
    }
}
