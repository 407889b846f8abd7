//! Caret numbering and the seven-way refined caret type system.
//!
//! Base types: a left caret (L) has an edge on the left side of the tree
//! (the root included); a right caret (R) is a non-root caret on the right
//! edge; every other caret is a middle caret M(i), its index determined by
//! the parent's type and the child position.
//!
//! Carets are numbered by a depth-first traversal that emits, for an L or R
//! caret, the child-1 subtree, then the caret itself, then children 2..p+1;
//! and for an M(i) caret, children 1..p−i+1, then the caret, then the rest.
//! Caret k+1 is the successor of caret k. The refined type of a caret
//! depends on its base type and on the types of its successors.

use crate::error::{Error, Result};
use crate::tree::{GroupParams, Tree};
use std::collections::HashMap;
use std::fmt;

/// Base caret type. The middle index satisfies 1 ≤ i ≤ p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseCaretType {
    L,
    R,
    M(usize),
}

impl fmt::Display for BaseCaretType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseCaretType::L => write!(f, "L"),
            BaseCaretType::R => write!(f, "R"),
            BaseCaretType::M(i) => write!(f, "M({i})"),
        }
    }
}

/// Refined caret type.
///
/// - `LFirst` (printed `L_e`): the first caret, number 0.
/// - `LL`: every other left caret.
/// - `REmpty` (`R_e`): a right caret all of whose successors are right
///   carets (vacuously true for the last caret).
/// - `RR`: a right caret whose immediate successor is a right caret but
///   with some non-right successor.
/// - `RJ(j)` (`R(j)`): a right caret whose immediate successor is not a
///   right caret; j < p records the base index of its leftmost child
///   successor when that child is middle, and j = p when it is right.
/// - `MEmpty(i)` (`M_e(i)`): a middle caret with no child successors.
/// - `MIJ(i, j)` (`M(i,j)`): a middle caret whose leftmost child successor
///   has base type M(j); always j ≤ i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaretType {
    LFirst,
    LL,
    REmpty,
    RR,
    RJ(usize),
    MEmpty(usize),
    MIJ(usize, usize),
}

impl CaretType {
    pub fn is_right(&self) -> bool {
        matches!(self, CaretType::REmpty | CaretType::RR | CaretType::RJ(_))
    }

    pub fn is_left(&self) -> bool {
        matches!(self, CaretType::LFirst | CaretType::LL)
    }

    pub fn is_middle(&self) -> bool {
        matches!(self, CaretType::MEmpty(_) | CaretType::MIJ(_, _))
    }
}

impl fmt::Display for CaretType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaretType::LFirst => write!(f, "L_e"),
            CaretType::LL => write!(f, "L_L"),
            CaretType::REmpty => write!(f, "R_e"),
            CaretType::RR => write!(f, "R_R"),
            CaretType::RJ(j) => write!(f, "R({j})"),
            CaretType::MEmpty(i) => write!(f, "M_e({i})"),
            CaretType::MIJ(i, j) => write!(f, "M({i},{j})"),
        }
    }
}

/// Full classification of one tree: base and refined types plus the tree
/// position of every caret, all indexed by caret number.
#[derive(Debug, Clone)]
pub struct Classification {
    pub base: Vec<BaseCaretType>,
    pub refined: Vec<CaretType>,
    pub paths: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Classification {
    pub fn caret_count(&self) -> usize {
        self.refined.len()
    }

    /// Caret number at a tree position, if a caret was numbered there.
    pub fn number_at(&self, path: &[usize]) -> Option<usize> {
        self.index.get(path).copied()
    }

    /// Debug dump, one caret per line: `idx:type`, e.g. `3:M(2,1)`.
    pub fn dump(&self) -> String {
        self.refined
            .iter()
            .enumerate()
            .map(|(k, t)| format!("{k}:{t}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn child_base(
    parent: BaseCaretType,
    q_pos: usize,
    parent_on_right_edge: bool,
    p: usize,
) -> BaseCaretType {
    match parent {
        BaseCaretType::L => {
            if q_pos == 1 {
                BaseCaretType::L
            } else if q_pos == p + 1 && parent_on_right_edge {
                BaseCaretType::R
            } else {
                BaseCaretType::M(q_pos - 1)
            }
        }
        BaseCaretType::R => {
            if q_pos == 1 {
                BaseCaretType::M(p)
            } else if q_pos == p + 1 {
                BaseCaretType::R
            } else {
                BaseCaretType::M(q_pos - 1)
            }
        }
        BaseCaretType::M(i) => {
            if q_pos <= p - i + 1 {
                BaseCaretType::M(i + q_pos - 1)
            } else {
                BaseCaretType::M(q_pos + i - p - 1)
            }
        }
    }
}

/// Base types and caret numbers in one pass: returns (path, base) in
/// emission order, so the vector index is the caret number.
pub fn base_types(t: &Tree, params: GroupParams) -> Vec<(Vec<usize>, BaseCaretType)> {
    fn walk(
        t: &Tree,
        base: BaseCaretType,
        on_right_edge: bool,
        path: &mut Vec<usize>,
        p: usize,
        out: &mut Vec<(Vec<usize>, BaseCaretType)>,
    ) {
        let Tree::Caret(cs) = t else { return };
        let split = match base {
            BaseCaretType::L | BaseCaretType::R => 1,
            BaseCaretType::M(i) => p - i + 1,
        };
        fn emit_child(
            cs: &[Tree],
            q: usize,
            base: BaseCaretType,
            on_right_edge: bool,
            path: &mut Vec<usize>,
            p: usize,
            out: &mut Vec<(Vec<usize>, BaseCaretType)>,
        ) {
            let q_pos = q + 1;
            let cb = child_base(base, q_pos, on_right_edge, p);
            let c_edge = on_right_edge && q_pos == p + 1;
            path.push(q);
            walk(&cs[q], cb, c_edge, path, p, out);
            path.pop();
        }
        for q in 0..split {
            emit_child(cs, q, base, on_right_edge, path, p, out);
        }
        out.push((path.clone(), base));
        for q in split..=p {
            emit_child(cs, q, base, on_right_edge, path, p, out);
        }
    }
    let mut out = Vec::with_capacity(t.caret_count());
    walk(t, BaseCaretType::L, true, &mut vec![], params.p, &mut out);
    out
}

/// Caret positions by caret number (the numbering alone).
pub fn number_carets(t: &Tree, params: GroupParams) -> Vec<Vec<usize>> {
    base_types(t, params).into_iter().map(|(p, _)| p).collect()
}

/// Classifies every caret of the tree.
pub fn classify(t: &Tree, params: GroupParams) -> Result<Classification> {
    let p = params.p;
    let numbered = base_types(t, params);
    let base: Vec<BaseCaretType> = numbered.iter().map(|(_, b)| *b).collect();
    let paths: Vec<Vec<usize>> = numbered.into_iter().map(|(p, _)| p).collect();
    let index: HashMap<Vec<usize>, usize> =
        paths.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();

    let n = base.len();
    let mut refined = Vec::with_capacity(n);
    // Suffix check for R_e: all of base[k+1..] are right carets.
    let mut all_right_from = vec![true; n + 1];
    for k in (0..n).rev() {
        all_right_from[k] = all_right_from[k + 1] && base[k] == BaseCaretType::R;
    }

    for k in 0..n {
        // Smallest-numbered direct child caret emitted after this caret.
        let leftmost_child_successor = (0..=p)
            .filter_map(|q| {
                let mut cp = paths[k].clone();
                cp.push(q);
                index.get(&cp).copied()
            })
            .filter(|&c| c > k)
            .min();

        let t = match base[k] {
            BaseCaretType::L => {
                if k == 0 {
                    CaretType::LFirst
                } else {
                    CaretType::LL
                }
            }
            BaseCaretType::R => {
                if all_right_from[k + 1] {
                    CaretType::REmpty
                } else if base[k + 1] == BaseCaretType::R {
                    CaretType::RR
                } else {
                    let c = leftmost_child_successor.ok_or_else(|| {
                        Error::Classification(format!(
                            "right caret {k} has a non-right successor but no child successor"
                        ))
                    })?;
                    match base[c] {
                        BaseCaretType::R => CaretType::RJ(p),
                        BaseCaretType::M(j) => {
                            if j >= p {
                                return Err(Error::Classification(format!(
                                    "right caret {k} has leftmost child successor M({j}), expected index < p"
                                )));
                            }
                            CaretType::RJ(j)
                        }
                        BaseCaretType::L => {
                            return Err(Error::Classification(format!(
                                "right caret {k} has a left child successor"
                            )))
                        }
                    }
                }
            }
            BaseCaretType::M(i) => match leftmost_child_successor {
                None => CaretType::MEmpty(i),
                Some(c) => match base[c] {
                    BaseCaretType::M(j) if j <= i => CaretType::MIJ(i, j),
                    other => {
                        return Err(Error::Classification(format!(
                            "middle caret {k} of index {i} has leftmost child successor {other}"
                        )))
                    }
                },
            },
        };
        refined.push(t);
    }

    if n > 0 && refined[0] != CaretType::LFirst {
        return Err(Error::Classification(
            "caret 0 is not the first left caret".into(),
        ));
    }

    Ok(Classification { base, refined, paths, index })
}
