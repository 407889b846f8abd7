//! Tree-pair diagrams and the group operations on them.
//!
//! An element of F(p+1) is a pair (neg, pos) of (p+1)-ary trees with equal
//! leaf counts: neg subdivides the domain, pos the range, and leaf i of neg
//! is mapped affinely onto leaf i of pos. Products compose right-to-left:
//! `xy` means `x∘y` (apply y first).
//!
//! Text format: `p=<int>;neg=<tree>;pos=<tree>`.

use crate::error::{Error, Result};
use crate::tree::{GroupParams, Tree};
use crate::words::{GeneratorLetter, GroupWord};
use std::fmt;

/// A tree-pair diagram. Not necessarily reduced; `reduce` computes the
/// unique minimal representative of the same group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreePairDiagram {
    params: GroupParams,
    neg: Tree,
    pos: Tree,
}

impl TreePairDiagram {
    pub fn new(params: GroupParams, neg: Tree, pos: Tree) -> Result<Self> {
        let arity = params.arity();
        if !neg.check_arity(arity) || !pos.check_arity(arity) {
            return Err(Error::InvalidDiagram(format!(
                "trees must have uniform arity {arity}"
            )));
        }
        if neg.leaf_count() != pos.leaf_count() {
            return Err(Error::InvalidDiagram(format!(
                "leaf counts differ: neg has {}, pos has {}",
                neg.leaf_count(),
                pos.leaf_count()
            )));
        }
        Ok(TreePairDiagram { params, neg, pos })
    }

    /// The identity element: two bare leaves.
    pub fn identity(params: GroupParams) -> Self {
        TreePairDiagram { params, neg: Tree::Leaf, pos: Tree::Leaf }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn neg(&self) -> &Tree {
        &self.neg
    }

    pub fn pos(&self) -> &Tree {
        &self.pos
    }

    pub fn is_identity(&self) -> bool {
        let r = self.reduce();
        r.neg.is_leaf() && r.pos.is_leaf()
    }

    /// Carets per tree (equal on both sides only after reduction in general;
    /// reduced diagrams of a given element all share this count).
    pub fn caret_counts(&self) -> (usize, usize) {
        (self.neg.caret_count(), self.pos.caret_count())
    }

    /// The inverse element: swap domain and range trees.
    pub fn inverse(&self) -> Self {
        TreePairDiagram {
            params: self.params,
            neg: self.pos.clone(),
            pos: self.neg.clone(),
        }
    }

    /// Group product `self ∘ other` (apply `other` first), reduced.
    pub fn multiply(&self, other: &TreePairDiagram) -> Self {
        self.multiply_unreduced(other).reduce()
    }

    /// The product before removing cancelling caret pairs: refine both
    /// factors until `other`'s range tree equals `self`'s domain tree, then
    /// glue. Exposed by the metric predicates, which inspect this diagram.
    pub fn multiply_unreduced(&self, other: &TreePairDiagram) -> Self {
        assert_eq!(self.params, other.params, "mixed group parameters");
        let common = self.neg.join(&other.pos);
        let self_growth = common.shapes_over(&self.neg);
        let other_growth = common.shapes_over(&other.pos);
        TreePairDiagram {
            params: self.params,
            neg: other.neg.graft(&other_growth),
            pos: self.pos.graft(&self_growth),
        }
    }

    /// Removable caret pairs of the current representation: leaf spans
    /// `[s, s+p]` covered by an exposed caret (all children leaves) in both
    /// trees. Returned as the span start leaf numbers, ascending.
    pub fn reducible_pairs(&self) -> Vec<usize> {
        let neg_spans = exposed_spans(&self.neg);
        let pos_spans = exposed_spans(&self.pos);
        let pos_set: std::collections::HashSet<usize> =
            pos_spans.iter().map(|(s, _)| *s).collect();
        neg_spans
            .iter()
            .map(|(s, _)| *s)
            .filter(|s| pos_set.contains(s))
            .collect()
    }

    /// Removes the single reducible pair covering leaves `[start, start+p]`.
    pub fn remove_pair(&self, start: usize) -> Result<Self> {
        let neg = remove_exposed_at(&self.neg, start).ok_or_else(|| {
            Error::Precondition(format!("no exposed caret at leaf span {start} in neg"))
        })?;
        let pos = remove_exposed_at(&self.pos, start).ok_or_else(|| {
            Error::Precondition(format!("no exposed caret at leaf span {start} in pos"))
        })?;
        Ok(TreePairDiagram { params: self.params, neg, pos })
    }

    /// The unique minimal diagram representing the same element. Pairs are
    /// removed one at a time; the removal order does not affect the result
    /// (asserted exhaustively in the acceptance suite).
    pub fn reduce(&self) -> Self {
        let mut cur = self.clone();
        loop {
            let pairs = cur.reducible_pairs();
            match pairs.first() {
                None => return cur,
                Some(&start) => {
                    cur = cur
                        .remove_pair(start)
                        .expect("pair listed as reducible must be removable");
                }
            }
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.reducible_pairs().is_empty()
    }

    /// Canonical serialization of the reduced diagram. Two diagrams denote
    /// the same group element iff their keys are equal.
    pub fn canonical_key(&self) -> String {
        self.reduce().to_string()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut p_val: Option<usize> = None;
        let mut neg_s: Option<&str> = None;
        let mut pos_s: Option<&str> = None;
        for field in s.split(';') {
            match field.split_once('=') {
                Some(("p", v)) => {
                    p_val = Some(v.parse().map_err(|_| {
                        Error::Parse(format!("bad p value {v:?}"))
                    })?)
                }
                Some(("neg", v)) => neg_s = Some(v),
                Some(("pos", v)) => pos_s = Some(v),
                _ => return Err(Error::Parse(format!("bad diagram field {field:?}"))),
            }
        }
        let (p, ns, ps) = match (p_val, neg_s, pos_s) {
            (Some(p), Some(n), Some(q)) => (p, n, q),
            _ => {
                return Err(Error::Parse(
                    "diagram needs p=, neg= and pos= fields".into(),
                ))
            }
        };
        let params = GroupParams::new(p)?;
        let neg = Tree::parse(ns, params.arity())?;
        let pos = Tree::parse(ps, params.arity())?;
        TreePairDiagram::new(params, neg, pos)
    }
}

impl fmt::Display for TreePairDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={};neg={};pos={}", self.params.p, self.neg, self.pos)
    }
}

/// Exposed carets (all children leaves) with the leaf number their span
/// starts at, in tree order.
fn exposed_spans(t: &Tree) -> Vec<(usize, Vec<usize>)> {
    fn walk(
        t: &Tree,
        next_leaf: &mut usize,
        path: &mut Vec<usize>,
        out: &mut Vec<(usize, Vec<usize>)>,
    ) {
        match t {
            Tree::Leaf => *next_leaf += 1,
            Tree::Caret(cs) => {
                let start = *next_leaf;
                if cs.iter().all(Tree::is_leaf) {
                    out.push((start, path.clone()));
                }
                for (q, c) in cs.iter().enumerate() {
                    path.push(q);
                    walk(c, next_leaf, path, out);
                    path.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(t, &mut 0, &mut vec![], &mut out);
    out
}

/// Replaces the exposed caret whose leaf span starts at `start` by a leaf.
/// Two exposed carets of one tree never share a span start, so the target
/// is unambiguous.
fn remove_exposed_at(t: &Tree, start: usize) -> Option<Tree> {
    fn walk(t: &Tree, next_leaf: &mut usize, start: usize, found: &mut bool) -> Tree {
        match t {
            Tree::Leaf => {
                *next_leaf += 1;
                Tree::Leaf
            }
            Tree::Caret(cs) => {
                if !*found && *next_leaf == start && cs.iter().all(Tree::is_leaf) {
                    *found = true;
                    *next_leaf += cs.len();
                    return Tree::Leaf;
                }
                Tree::Caret(
                    cs.iter()
                        .map(|c| walk(c, next_leaf, start, found))
                        .collect(),
                )
            }
        }
    }
    let mut next = 0;
    let mut found = false;
    let out = walk(t, &mut next, start, &mut found);
    found.then_some(out)
}

/// The standard finite generators x_0..x_p as reduced diagrams.
///
/// x_0: neg = root caret plus a caret on child 1; pos = root caret plus a
/// caret on child p+1. x_i (1 ≤ i ≤ p−1): neg = root plus a caret on child
/// i+1; pos = root plus a caret on child p+1. x_p: neg = root, a caret R'
/// on child p+1, and a caret on R'`s child 1; pos = the same with the inner
/// caret on R'`s child p+1. For p=1 these are the classical generators of F.
pub fn make_generator(params: GroupParams, i: usize) -> TreePairDiagram {
    assert!(i <= params.p, "generator index {i} out of range 0..={}", params.p);
    let n = params.arity();
    let root_with = |at: usize, sub: Tree| -> Tree {
        let mut cs = vec![Tree::Leaf; n];
        cs[at] = sub;
        Tree::Caret(cs)
    };
    let (neg, pos) = if i == 0 {
        (
            root_with(0, Tree::bare_caret(n)),
            root_with(n - 1, Tree::bare_caret(n)),
        )
    } else if i < params.p {
        (
            root_with(i, Tree::bare_caret(n)),
            root_with(n - 1, Tree::bare_caret(n)),
        )
    } else {
        (
            root_with(n - 1, root_with(0, Tree::bare_caret(n))),
            root_with(n - 1, root_with(n - 1, Tree::bare_caret(n))),
        )
    };
    TreePairDiagram { params, neg, pos }
}

/// The infinite generating family: x_n for n ≤ p is a finite generator;
/// x_n = x_0 x_{n−p} x_0^{−1} for n > p.
pub fn make_infinite_generator(params: GroupParams, n: usize) -> TreePairDiagram {
    if n <= params.p {
        return make_generator(params, n);
    }
    let x0 = make_generator(params, 0);
    let inner = make_infinite_generator(params, n - params.p);
    x0.multiply(&inner).multiply(&x0.inverse())
}

/// The reduced diagram of a letter.
pub fn letter_diagram(params: GroupParams, l: GeneratorLetter) -> TreePairDiagram {
    let g = make_infinite_generator(params, l.index);
    if l.inverse {
        g.inverse()
    } else {
        g
    }
}

/// Evaluates a word left to right (`xy` = `x∘y`), returning the reduced
/// diagram of the product.
pub fn evaluate_word(params: GroupParams, w: &GroupWord) -> TreePairDiagram {
    let mut acc = TreePairDiagram::identity(params);
    for &l in &w.letters {
        acc = acc.multiply(&letter_diagram(params, l));
    }
    acc
}
