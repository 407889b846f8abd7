//! Rooted (p+1)-ary trees: the building blocks of tree-pair diagrams.
//!
//! A tree is either a leaf or a caret with exactly p+1 ordered children.
//! Text format: `.` for a leaf, `(c_1 c_2 ... c_{p+1})` for a caret, with
//! no separators (unambiguous for fixed arity), e.g. `((..).)` at p=1.

use crate::error::{Error, Result};
use num::BigRational;
use std::fmt;

/// Group parameters. `p ≥ 1`; the group is F(p+1), trees are (p+1)-ary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupParams {
    pub p: usize,
}

impl GroupParams {
    pub fn new(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::Parse("p must be at least 1".into()));
        }
        Ok(GroupParams { p })
    }

    /// Tree arity, p + 1.
    pub fn arity(&self) -> usize {
        self.p + 1
    }

    /// Number of generators in the standard finite generating set, p + 1
    /// (indices 0..=p).
    pub fn generator_count(&self) -> usize {
        self.p + 1
    }
}

/// A rooted tree of fixed arity. Children are ordered left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Caret(Vec<Tree>),
}

impl Tree {
    /// A caret with all-leaf children.
    pub fn bare_caret(arity: usize) -> Tree {
        Tree::Caret(vec![Tree::Leaf; arity])
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn caret_count(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Caret(cs) => 1 + cs.iter().map(Tree::caret_count).sum::<usize>(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Caret(cs) => cs.iter().map(Tree::leaf_count).sum(),
        }
    }

    /// Checks that every caret has exactly `arity` children.
    pub fn check_arity(&self, arity: usize) -> bool {
        match self {
            Tree::Leaf => true,
            Tree::Caret(cs) => cs.len() == arity && cs.iter().all(|c| c.check_arity(arity)),
        }
    }

    /// True iff `other` is a rooted subtree of `self`: every caret of
    /// `other` is matched by a caret of `self` at the same position.
    pub fn contains(&self, other: &Tree) -> bool {
        match (self, other) {
            (_, Tree::Leaf) => true,
            (Tree::Leaf, Tree::Caret(_)) => false,
            (Tree::Caret(a), Tree::Caret(b)) => {
                a.iter().zip(b.iter()).all(|(x, y)| x.contains(y))
            }
        }
    }

    /// Smallest common refinement of two trees (union of carets).
    pub fn join(&self, other: &Tree) -> Tree {
        match (self, other) {
            (Tree::Leaf, t) => t.clone(),
            (t, Tree::Leaf) => t.clone(),
            (Tree::Caret(a), Tree::Caret(b)) => {
                Tree::Caret(a.iter().zip(b.iter()).map(|(x, y)| x.join(y)).collect())
            }
        }
    }

    /// Given a refinement `self` of `base`, returns, per leaf of `base` in
    /// leaf order, the subtree of `self` hanging at that leaf's position.
    ///
    /// Panics if `self` does not refine `base`; callers guarantee it.
    pub fn shapes_over(&self, base: &Tree) -> Vec<Tree> {
        fn walk(fine: &Tree, base: &Tree, out: &mut Vec<Tree>) {
            match base {
                Tree::Leaf => out.push(fine.clone()),
                Tree::Caret(bs) => match fine {
                    Tree::Caret(fs) => {
                        for (f, b) in fs.iter().zip(bs.iter()) {
                            walk(f, b, out);
                        }
                    }
                    Tree::Leaf => panic!("shapes_over: tree does not refine the base"),
                },
            }
        }
        let mut out = Vec::with_capacity(base.leaf_count());
        walk(self, base, &mut out);
        out
    }

    /// Replaces the leaves of `self`, in leaf order, by the given subtrees.
    pub fn graft(&self, shapes: &[Tree]) -> Tree {
        fn walk(t: &Tree, shapes: &[Tree], next: &mut usize) -> Tree {
            match t {
                Tree::Leaf => {
                    let s = shapes[*next].clone();
                    *next += 1;
                    s
                }
                Tree::Caret(cs) => {
                    Tree::Caret(cs.iter().map(|c| walk(c, shapes, next)).collect())
                }
            }
        }
        let mut next = 0;
        let out = walk(self, shapes, &mut next);
        assert_eq!(next, shapes.len(), "graft: shape count must equal leaf count");
        out
    }

    /// Paths (child positions, 0-based) of all leaves in left-to-right order.
    /// The index of a path in the returned list is the leaf's number.
    pub fn leaf_paths(&self) -> Vec<Vec<usize>> {
        fn walk(t: &Tree, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            match t {
                Tree::Leaf => out.push(path.clone()),
                Tree::Caret(cs) => {
                    for (q, c) in cs.iter().enumerate() {
                        path.push(q);
                        walk(c, path, out);
                        path.pop();
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(self.leaf_count());
        walk(self, &mut vec![], &mut out);
        out
    }

    /// Parses the `.`/`(...)` text format, enforcing the given arity.
    pub fn parse(s: &str, arity: usize) -> Result<Tree> {
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let t = parse_tree(bytes, &mut pos, arity)?;
        if pos != bytes.len() {
            return Err(Error::Parse(format!(
                "trailing input after tree at byte {pos} in {s:?}"
            )));
        }
        Ok(t)
    }
}

fn parse_tree(bytes: &[u8], pos: &mut usize, arity: usize) -> Result<Tree> {
    match bytes.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(Tree::Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let mut children = Vec::with_capacity(arity);
            for _ in 0..arity {
                children.push(parse_tree(bytes, pos, arity)?);
            }
            match bytes.get(*pos) {
                Some(b')') => {
                    *pos += 1;
                    Ok(Tree::Caret(children))
                }
                other => Err(Error::Parse(format!(
                    "expected ')' closing a caret of arity {arity}, found {other:?}"
                ))),
            }
        }
        other => Err(Error::Parse(format!(
            "expected '.' or '(', found {other:?} at byte {pos}"
        ))),
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "."),
            Tree::Caret(cs) => {
                write!(f, "(")?;
                for c in cs {
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A leaf's dyadic-style interval `[low, high)` within `[0,1]` (the last
/// leaf's interval is closed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafInterval {
    pub low: BigRational,
    pub high: BigRational,
}

/// Intervals of all leaves in leaf order. The root spans `[0,1]`; a caret
/// on `[a,b]` splits it into p+1 equal parts.
pub fn leaf_intervals(t: &Tree, params: GroupParams) -> Vec<LeafInterval> {
    fn walk(
        t: &Tree,
        low: BigRational,
        high: BigRational,
        n: usize,
        out: &mut Vec<LeafInterval>,
    ) {
        match t {
            Tree::Leaf => out.push(LeafInterval { low, high }),
            Tree::Caret(cs) => {
                let width = (&high - &low) / BigRational::from_integer(n.into());
                for (j, c) in cs.iter().enumerate() {
                    let a = &low + &width * BigRational::from_integer(j.into());
                    let b = &low + &width * BigRational::from_integer((j + 1).into());
                    walk(c, a, b, n, out);
                }
            }
        }
    }
    let mut out = Vec::with_capacity(t.leaf_count());
    walk(
        t,
        BigRational::from_integer(0.into()),
        BigRational::from_integer(1.into()),
        params.arity(),
        &mut out,
    );
    out
}
