//! Vtrees, the respects relation, and vtree embeddings.
//!
//! A vtree is a full binary tree with pairwise distinct leaf names. It
//! constrains where variables may appear in an SDD or ZSDD through the
//! relaxed respects relation (four inductive rules, including the
//! congruence rule that lets a term respect either child of a node).
//! Embeddings between vtrees generalize strictly monotone maps between
//! total orders and need not be injective.

use crate::diagram::TotalOrder;
use crate::error::{Error, Result};
use crate::sentential::{Sdd, SddView, Zsdd, ZsddView};
use crate::setfun::{FiniteMap, Universe};

/// A vtree. Construct leaves with [`Vtree::leaf`] and internal nodes with
/// [`Vtree::node`], which rejects overlapping leaf sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vtree(VtreeShape);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum VtreeShape {
    Leaf(String),
    Node(Box<Vtree>, Box<Vtree>),
}

/// Borrowed view of the top of a [`Vtree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VtreeView<'a> {
    Leaf(&'a str),
    Node(&'a Vtree, &'a Vtree),
}

impl Vtree {
    pub fn leaf(name: impl Into<String>) -> Vtree {
        Vtree(VtreeShape::Leaf(name.into()))
    }

    pub fn node(left: Vtree, right: Vtree) -> Result<Vtree> {
        let left_leaves = left.leaves();
        if let Some(shared) = right.leaves().iter().find(|n| left_leaves.contains(n)) {
            return Err(Error::OverlappingVtreeLeaves {
                name: shared.to_string(),
            });
        }
        Ok(Vtree(VtreeShape::Node(Box::new(left), Box::new(right))))
    }

    pub fn view(&self) -> VtreeView<'_> {
        match &self.0 {
            VtreeShape::Leaf(name) => VtreeView::Leaf(name),
            VtreeShape::Node(l, r) => VtreeView::Node(l, r),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.0, VtreeShape::Leaf(_))
    }

    pub fn leaves(&self) -> Universe {
        let mut names = Vec::new();
        self.collect_leaves(&mut names);
        Universe::new(names)
    }

    fn collect_leaves(&self, out: &mut Vec<String>) {
        match &self.0 {
            VtreeShape::Leaf(name) => out.push(name.clone()),
            VtreeShape::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }
}

/// Whether an SDD respects a vtree, by the four inductive rules: terminals
/// respect everything; a literal respects the leaf of its variable; a term
/// respecting either child respects the node; a decomposition respects a
/// node when its primes respect the left child and its subs the right.
pub fn respects_vtree_sdd(s: &Sdd, v: &Vtree) -> bool {
    match (s.view(), v.view()) {
        (SddView::Bot | SddView::Top, _) => true,
        (SddView::Pos(x) | SddView::Neg(x), VtreeView::Leaf(name)) => x == name,
        (_, VtreeView::Leaf(_)) => false,
        (term, VtreeView::Node(left, right)) => {
            if respects_vtree_sdd(s, left) || respects_vtree_sdd(s, right) {
                return true;
            }
            match term {
                SddView::Decomp(pairs) => pairs.iter().all(|(p, sub)| {
                    respects_vtree_sdd(p, left) && respects_vtree_sdd(sub, right)
                }),
                _ => false,
            }
        }
    }
}

/// ZSDD version of [`respects_vtree_sdd`], with `ε` joining the terminals.
pub fn respects_vtree_zsdd(z: &Zsdd, v: &Vtree) -> bool {
    match (z.view(), v.view()) {
        (ZsddView::Bot | ZsddView::Eps, _) => true,
        (ZsddView::Var(x) | ZsddView::PmVar(x), VtreeView::Leaf(name)) => x == name,
        (_, VtreeView::Leaf(_)) => false,
        (term, VtreeView::Node(left, right)) => {
            if respects_vtree_zsdd(z, left) || respects_vtree_zsdd(z, right) {
                return true;
            }
            match term {
                ZsddView::Decomp(pairs) => pairs.iter().all(|(p, sub)| {
                    respects_vtree_zsdd(p, left) && respects_vtree_zsdd(sub, right)
                }),
                _ => false,
            }
        }
    }
}

/// Whether `f` is a vtree embedding from `v` into `w`. Three inductive
/// clauses: any map from a leaf embeds; a map whose image fits inside one
/// child of `w` embeds when its corestriction does; and a map between two
/// nodes embeds when it restricts to embeddings child by child. Embeddings
/// need not be injective.
pub fn is_embedding(f: &FiniteMap, v: &Vtree, w: &Vtree) -> Result<bool> {
    let v_leaves = v.leaves();
    if *f.domain() != v_leaves {
        return Err(Error::EmbeddingMismatch {
            detail: format!(
                "map domain {{{}}} vs source leaves {{{v_leaves}}}",
                f.domain()
            ),
        });
    }
    let w_leaves = w.leaves();
    if *f.codomain() != w_leaves {
        return Err(Error::EmbeddingMismatch {
            detail: format!(
                "map codomain {{{}}} vs target leaves {{{w_leaves}}}",
                f.codomain()
            ),
        });
    }
    Ok(embeds(f, v, w))
}

fn embeds(f: &FiniteMap, v: &Vtree, w: &Vtree) -> bool {
    if v.is_leaf() {
        return true;
    }
    let maps_into = |part: &Vtree, target: &Vtree| {
        let targets = target.leaves();
        part.leaves()
            .iter()
            .all(|x| targets.contains(f.apply(x).expect("domain covers the source leaves")))
    };
    if let VtreeView::Node(w1, w2) = w.view() {
        if (maps_into(v, w1) && embeds(f, v, w1)) || (maps_into(v, w2) && embeds(f, v, w2)) {
            return true;
        }
        if let VtreeView::Node(v1, v2) = v.view() {
            return maps_into(v1, w1)
                && maps_into(v2, w2)
                && embeds(f, v1, w1)
                && embeds(f, v2, w2);
        }
    }
    false
}

/// All maps from `v`'s leaves to `w`'s leaves that are embeddings, in the
/// enumeration order of [`FiniteMap::enumerate`].
pub fn enumerate_embeddings(v: &Vtree, w: &Vtree) -> Vec<FiniteMap> {
    FiniteMap::enumerate(&v.leaves(), &w.leaves())
        .into_iter()
        .filter(|f| is_embedding(f, v, w).expect("enumerated maps have matching endpoints"))
        .collect()
}

/// The right-linear vtree of a total order:
/// `x1 < ... < xn` becomes `(x1, (x2, ... (x_{n-1}, xn)...))`.
pub fn vtree_of_order(order: &TotalOrder) -> Result<Vtree> {
    let mut names = order.names().iter().rev();
    let last = names.next().ok_or(Error::EmptyOrder)?;
    let mut tree = Vtree::leaf(last.clone());
    for name in names {
        tree = Vtree::node(Vtree::leaf(name.clone()), tree)
            .expect("order names are pairwise distinct");
    }
    Ok(tree)
}
