//! The caret-pair weight table and the geodesic length function.
//!
//! The length of a group element is computed from its reduced tree-pair
//! diagram alone: classify both trees, pair carets by number, and sum the
//! weight of each pair of refined caret types. The predicates below
//! (subtree condition, minimality condition) predict, without a search,
//! whether multiplying by a single generator letter increases the length,
//! decreases it by one, or changes the weight of exactly one caret pair.

use crate::classify::{classify, CaretType};
use crate::diagram::{letter_diagram, TreePairDiagram};
use crate::error::{Error, Result};
use crate::tree::GroupParams;
use crate::words::GeneratorLetter;
use std::collections::HashMap;

/// All refined caret types that can occur at the given arity.
pub fn enumerate_caret_types(params: GroupParams) -> Vec<CaretType> {
    let p = params.p;
    let mut out = vec![
        CaretType::LFirst,
        CaretType::LL,
        CaretType::REmpty,
        CaretType::RR,
    ];
    out.extend((1..=p).map(CaretType::RJ));
    out.extend((1..=p).map(CaretType::MEmpty));
    for i in 1..=p {
        for j in 1..=i {
            out.push(CaretType::MIJ(i, j));
        }
    }
    out
}

/// Weight of one legal pair of refined caret types, or None for the
/// illegal pairings of the first left caret with anything but itself.
fn pair_weight(a: CaretType, b: CaretType) -> Option<u32> {
    use CaretType::*;
    Some(match (a, b) {
        (LFirst, LFirst) => 0,
        (LFirst, _) | (_, LFirst) => return None,
        (LL, LL) => 2,
        (LL, x) | (x, LL) if x.is_right() => 1,
        (LL, x) | (x, LL) if x.is_middle() => 2,
        (REmpty, REmpty) => 0,
        // A right caret whose immediate successor is not right pairs
        // cheaply with a childless middle caret of strictly smaller index.
        (RJ(i), MEmpty(l)) | (MEmpty(l), RJ(i)) => {
            if l < i {
                1
            } else {
                3
            }
        }
        (REmpty | RR, MEmpty(_)) | (MEmpty(_), REmpty | RR) => 1,
        (x, y) if x.is_right() && y.is_right() => 2,
        (x, MIJ(_, _)) | (MIJ(_, _), x) if x.is_right() => 3,
        (MEmpty(_), MEmpty(_)) => 2,
        // A middle caret whose leftmost child successor has index u costs
        // extra against a childless middle caret of index k >= u.
        (MEmpty(k), MIJ(_, u)) | (MIJ(_, u), MEmpty(k)) => {
            if u <= k {
                4
            } else {
                2
            }
        }
        (MIJ(_, _), MIJ(_, _)) => 4,
        _ => unreachable!("caret type pair not covered: ({a}, {b})"),
    })
}

/// Materialized weight table over every refined caret type at a fixed
/// arity. Stored as data so symmetry and totality are mechanically
/// checkable.
#[derive(Debug, Clone)]
pub struct WeightTable {
    params: GroupParams,
    entries: HashMap<(CaretType, CaretType), u32>,
}

impl WeightTable {
    pub fn new(params: GroupParams) -> Self {
        let types = enumerate_caret_types(params);
        let mut entries = HashMap::new();
        for &a in &types {
            for &b in &types {
                if let Some(w) = pair_weight(a, b) {
                    entries.insert((a, b), w);
                }
            }
        }
        WeightTable { params, entries }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    /// Weight of a caret-type pair. An illegal pairing (the first left
    /// caret against anything else) signals a corrupted diagram.
    pub fn weight(&self, a: CaretType, b: CaretType) -> Result<u32> {
        self.entries
            .get(&(a, b))
            .copied()
            .ok_or_else(|| Error::IllegalPairing(a.to_string(), b.to_string()))
    }

    /// Test-only corruption hook so oracle harnesses can prove they
    /// detect a wrong table.
    #[cfg(test)]
    pub(crate) fn override_weight(&mut self, a: CaretType, b: CaretType, w: u32) {
        self.entries.insert((a, b), w);
        self.entries.insert((b, a), w);
    }

    /// Length report for a diagram: reduces it, classifies both trees,
    /// pairs carets by number, and sums the pair weights.
    pub fn length_report(&self, x: &TreePairDiagram) -> Result<LengthReport> {
        let x = x.reduce();
        let neg = classify(x.neg(), self.params)?;
        let pos = classify(x.pos(), self.params)?;
        debug_assert_eq!(neg.caret_count(), pos.caret_count());
        let mut per_caret = Vec::with_capacity(neg.caret_count());
        let mut total = 0u64;
        for k in 0..neg.caret_count() {
            let w = self.weight(neg.refined[k], pos.refined[k])?;
            total += u64::from(w);
            per_caret.push(CaretPairWeight {
                index: k,
                neg_type: neg.refined[k],
                pos_type: pos.refined[k],
                weight: w,
            });
        }
        Ok(LengthReport { total, per_caret })
    }
}

/// One caret pair's contribution to the length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaretPairWeight {
    pub index: usize,
    pub neg_type: CaretType,
    pub pos_type: CaretType,
    pub weight: u32,
}

/// Geodesic length of a group element together with the per-caret
/// breakdown that produced it.
#[derive(Debug, Clone)]
pub struct LengthReport {
    pub total: u64,
    pub per_caret: Vec<CaretPairWeight>,
}

/// Length report for a diagram (builds a fresh table; callers in hot
/// loops should reuse a [`WeightTable`]).
pub fn word_length(x: &TreePairDiagram) -> Result<LengthReport> {
    WeightTable::new(x.params()).length_report(x)
}

fn standard_letter(w: &TreePairDiagram, g: GeneratorLetter) -> Result<TreePairDiagram> {
    if g.index > w.params().p {
        return Err(Error::Precondition(format!(
            "letter x_{} is not a standard generator at p = {}",
            g.index,
            w.params().p
        )));
    }
    Ok(letter_diagram(w.params(), g))
}

/// True iff the product w·g can be formed without adding carets to w's
/// diagram, i.e. the letter's positive tree is contained in w's negative
/// tree.
pub fn subtree_condition(w: &TreePairDiagram, g: GeneratorLetter) -> Result<bool> {
    let gd = standard_letter(w, g)?;
    Ok(w.neg().contains(gd.pos()))
}

/// True iff the unreduced product diagram w·g is already reduced.
pub fn minimality_condition(w: &TreePairDiagram, g: GeneratorLetter) -> Result<bool> {
    let gd = standard_letter(w, g)?;
    Ok(w.multiply_unreduced(&gd).is_reduced())
}

/// Predicted effect of right-multiplying by one generator letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthRelation {
    /// The subtree condition fails: |wg| > |w|.
    Increases,
    /// Subtree holds but minimality fails: |wg| = |w| - 1.
    DecreasesByOne,
    /// Both conditions hold: exactly one caret pair changes weight and
    /// |wg| - |w| equals that change.
    SingleCaretChange,
}

/// Classifies the length change of w·g from the two conditions alone.
pub fn predicted_length_relation(
    w: &TreePairDiagram,
    g: GeneratorLetter,
) -> Result<LengthRelation> {
    if !subtree_condition(w, g)? {
        Ok(LengthRelation::Increases)
    } else if !minimality_condition(w, g)? {
        Ok(LengthRelation::DecreasesByOne)
    } else {
        Ok(LengthRelation::SingleCaretChange)
    }
}

/// One caret pair whose refined types differ between w and the unreduced
/// product w·g.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaretPairDiff {
    pub index: usize,
    pub old_pair: (CaretType, CaretType),
    pub new_pair: (CaretType, CaretType),
    pub weight_delta: i64,
}

/// Per-caret classification diff between w (reduced) and the unreduced
/// product w·g. Requires the subtree condition, which guarantees the
/// product has the same caret count with carets in the same pairing.
/// When the minimality condition also holds the diff has exactly one
/// entry and its delta equals |wg| - |w|.
pub fn caret_type_diff(w: &TreePairDiagram, g: GeneratorLetter) -> Result<Vec<CaretPairDiff>> {
    let w = w.reduce();
    if !subtree_condition(&w, g)? {
        return Err(Error::Precondition(format!(
            "subtree condition fails for letter {g}"
        )));
    }
    let gd = standard_letter(&w, g)?;
    let prod = w.multiply_unreduced(&gd);
    let params = w.params();
    let table = WeightTable::new(params);
    let old_neg = classify(w.neg(), params)?;
    let old_pos = classify(w.pos(), params)?;
    let new_neg = classify(prod.neg(), params)?;
    let new_pos = classify(prod.pos(), params)?;
    debug_assert_eq!(old_neg.caret_count(), new_neg.caret_count());
    let mut out = Vec::new();
    for k in 0..old_neg.caret_count() {
        let old_pair = (old_neg.refined[k], old_pos.refined[k]);
        let new_pair = (new_neg.refined[k], new_pos.refined[k]);
        if old_pair != new_pair {
            let delta = i64::from(table.weight(new_pair.0, new_pair.1)?)
                - i64::from(table.weight(old_pair.0, old_pair.1)?);
            out.push(CaretPairDiff {
                index: k,
                old_pair,
                new_pair,
                weight_delta: delta,
            });
        }
    }
    Ok(out)
}
