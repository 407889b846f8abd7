//! Generator letters and words over the standard generating set.
//!
//! Text format: whitespace-separated tokens, `<index>` for a generator and
//! `<index>^-1` for its inverse, e.g. `"0 1 12 11^-1 0^-1"`. Indices may
//! exceed p; they refer to the infinite generating family.

use crate::error::{Error, Result};
use std::fmt;

/// One letter: a generator index and an exponent sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorLetter {
    pub index: usize,
    pub inverse: bool,
}

impl GeneratorLetter {
    pub fn new(index: usize) -> Self {
        GeneratorLetter { index, inverse: false }
    }

    pub fn inv(index: usize) -> Self {
        GeneratorLetter { index, inverse: true }
    }

    pub fn inverted(self) -> Self {
        GeneratorLetter { index: self.index, inverse: !self.inverse }
    }
}

impl fmt::Display for GeneratorLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.index)
        } else {
            write!(f, "{}", self.index)
        }
    }
}

/// A word: a finite sequence of letters, composed left to right
/// (`xy` means `x∘y`: `y` is applied first).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupWord {
    pub letters: Vec<GeneratorLetter>,
}

impl GroupWord {
    pub fn new(letters: Vec<GeneratorLetter>) -> Self {
        GroupWord { letters }
    }

    pub fn empty() -> Self {
        GroupWord { letters: vec![] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The formal inverse: letters reversed, each exponent flipped.
    pub fn inverted(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Each exponent flipped in place, order kept. This is the image of
    /// the word under the isomorphism x_i -> x_i^(-1) that translates
    /// between the two opposite index conventions for these groups (the
    /// one where conjugation by x_0 raises indices and the one where
    /// conjugation by x_0^(-1) does).
    pub fn each_letter_inverted(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().map(|l| l.inverted()).collect(),
        }
    }

    /// Concatenation.
    pub fn then(&self, other: &GroupWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }

    /// `x_i^k` for signed `k` (empty for k = 0).
    pub fn power(index: usize, k: i64) -> Self {
        let letter = if k >= 0 {
            GeneratorLetter::new(index)
        } else {
            GeneratorLetter::inv(index)
        };
        GroupWord {
            letters: vec![letter; k.unsigned_abs() as usize],
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (num, inverse) = match tok.strip_suffix("^-1") {
                Some(head) => (head, true),
                None => (tok, false),
            };
            let index: usize = num.parse().map_err(|_| {
                Error::Parse(format!("bad word token {tok:?} (want <index> or <index>^-1)"))
            })?;
            letters.push(GeneratorLetter { index, inverse });
        }
        Ok(GroupWord { letters })
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// The relators of a finite presentation of F(p+1) on x_0..x_p.
///
/// Writing X_n = x_0^k x_r x_0^{-k} with n = r + kp and 1 ≤ r ≤ p, the
/// relators are r_{i,j} = x_i X_j x_i^{-1} X_{j+p}^{-1} for 1 ≤ i ≤ p and
/// i+1 ≤ j ≤ i+p+1. Conjugation by x_0 lifts the relation for (i, j) to
/// (i+p, j+p), and for j ≥ i+p+2 the relation for (i, j) follows from those
/// for (i, i+1), (i, j−p) and (i+1+p, j), so this finite family implies the
/// whole infinite family x_i x_j = x_{j+p} x_i (i < j). For p = 1 it is the
/// classical two-relator presentation of F.
pub fn finite_presentation_relators(p: usize) -> Vec<GroupWord> {
    // x_n written over the finite generating set.
    let expand = |n: usize| -> GroupWord {
        assert!(n >= 1);
        let k = (n - 1) / p;
        let r = n - k * p;
        GroupWord::power(0, k as i64)
            .then(&GroupWord::new(vec![GeneratorLetter::new(r)]))
            .then(&GroupWord::power(0, -(k as i64)))
    };
    let mut relators = Vec::new();
    for i in 1..=p {
        for j in (i + 1)..=(i + p + 1) {
            let xi = GroupWord::new(vec![GeneratorLetter::new(i)]);
            let w = xi
                .then(&expand(j))
                .then(&xi.inverted())
                .then(&expand(j + p).inverted());
            relators.push(w);
        }
    }
    relators
}
