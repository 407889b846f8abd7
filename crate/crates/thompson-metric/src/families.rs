//! Two structured element families: seesaw words and dead ends.
//!
//! Seesaw words are elements with a unique descending direction: every
//! geodesic ends in a power of one generator, so length drops step by
//! step along that power (the swing) and no other letter shortens the
//! element on the way down. Dead ends are elements no single letter can
//! lengthen. Both come with verifiers driven entirely by the metric,
//! plus a structural recognizer for dead ends that inspects the labeled
//! carets around the root of the negative tree.

use crate::cayley::standard_letters;
use crate::classify::{classify, CaretType, Classification};
use crate::diagram::{evaluate_word, letter_diagram, TreePairDiagram};
use crate::error::{Error, Result};
use crate::metric::WeightTable;
use crate::tree::{GroupParams, Tree};
use crate::words::{GeneratorLetter, GroupWord};
use serde::{Deserialize, Serialize};

/// Parameters of one seesaw word: m left carets, n active right carets,
/// and the swing k the caller intends to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeesawParams {
    pub p: usize,
    pub m: u32,
    pub n: u32,
    pub k: u32,
}

impl SeesawParams {
    /// Validates m ≥ 2 and n ≥ 1, and when a positive swing is requested,
    /// the guarantee bound 0 < k < min(m−1, n−1). k = 0 means no swing
    /// verification is planned.
    pub fn new(p: usize, m: u32, n: u32, k: u32) -> Result<Self> {
        if m < 2 || n < 1 {
            return Err(Error::Precondition(format!(
                "seesaw parameters need m >= 2 and n >= 1, got m = {m}, n = {n}"
            )));
        }
        if k > 0 && i64::from(k) >= i64::from(m.min(n)) - 1 {
            return Err(Error::Precondition(format!(
                "swing k = {k} is outside the verified range 0 < k < min(m-1, n-1) for m = {m}, n = {n}"
            )));
        }
        GroupParams::new(p)?;
        Ok(SeesawParams { p, m, n, k })
    }

    pub fn group_params(&self) -> GroupParams {
        GroupParams::new(self.p).expect("validated at construction")
    }
}

/// The seesaw word in normal form:
/// x_0^(m-1) x_p x_(np^2+(m+n)p) (prod over i = 1..pn of
/// x_(np^2+(m+n-i+1)p-i)^(-1)) x_0^(-m).
///
/// The word is written in the index convention where conjugation by
/// x_0^(-1) raises indices (x_(j+p) = x_0^(-1) x_j x_0). The diagram
/// algebra in this crate realizes the opposite convention, so
/// [`seesaw_word`] inverts each letter before evaluating; see
/// [`GroupWord::each_letter_inverted`].
pub fn seesaw_normal_form(sp: &SeesawParams) -> GroupWord {
    let p = sp.p as i64;
    let m = i64::from(sp.m);
    let n = i64::from(sp.n);
    let mut letters = Vec::new();
    letters.extend(GroupWord::power(0, m - 1).letters);
    letters.push(GeneratorLetter::new(sp.p));
    let top = n * p * p + (m + n) * p;
    debug_assert!(top > p);
    letters.push(GeneratorLetter::new(top as usize));
    for i in 1..=p * n {
        let idx = n * p * p + (m + n - i + 1) * p - i;
        debug_assert!(idx > p, "subtracted index fell into the finite range");
        letters.push(GeneratorLetter::inv(idx as usize));
    }
    letters.extend(GroupWord::power(0, -m).letters);
    GroupWord::new(letters)
}

/// Count of (left carets of the non-first kind, right carets that are
/// not of the all-right-successors kind) in one tree.
pub fn shape_counts(c: &Classification) -> (u32, u32) {
    let mut ll = 0;
    let mut active_right = 0;
    for t in &c.refined {
        match t {
            CaretType::LL => ll += 1,
            CaretType::RR | CaretType::RJ(_) => active_right += 1,
            _ => {}
        }
    }
    (ll, active_right)
}

/// Builds the seesaw element and checks the caret counts on the
/// negative tree: exactly m non-first left carets and, for p >= 2,
/// n right carets with a non-right successor. At p = 1 the evaluated
/// family carries n − 1 such right carets; the measured descent bounds
/// are m steps on the x_0^(-1) side and that right count on the x_0
/// side, both strictly inside the guaranteed swing range
/// k < min(m−1, n−1).
pub fn seesaw_word(sp: &SeesawParams) -> Result<TreePairDiagram> {
    let params = sp.group_params();
    let d = evaluate_word(params, &seesaw_normal_form(sp).each_letter_inverted());
    let neg = shape_counts(&classify(d.neg(), params)?);
    let want = (sp.m, if sp.p == 1 { sp.n - 1 } else { sp.n });
    if neg != want {
        return Err(Error::Internal(format!(
            "seesaw diagram shape check failed: wanted (left, right) counts {want:?}, negative tree has {neg:?}"
        )));
    }
    Ok(d)
}

/// One failed length equality in seesaw condition 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SwingFailure {
    pub power: i64,
    pub expected: i64,
    pub actual: u64,
}

/// One failed extension inequality in seesaw condition 2.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionFailure {
    pub power: i64,
    pub letter: String,
    pub base_length: u64,
    pub extended_length: u64,
}

/// Outcome of seesaw verification. `ok` uses the sign-aware reading of
/// condition 2 (going down with g^l, the letter undoing the last step
/// is exempt: g is excluded for l > 0 and g^{-1} for l < 0). The strict
/// reading that always exempts only g is reported alongside, since for
/// l < 0 it would demand that g itself not shorten, contradicting
/// condition 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeesawVerdict {
    pub ok: bool,
    pub strict_reading_ok: bool,
    pub condition1_failures: Vec<SwingFailure>,
    pub condition2_failures: Vec<ExtensionFailure>,
    pub strict_condition2_failures: Vec<ExtensionFailure>,
    /// (power q, |w·g^q|) for q in -k..=k, for tabular output.
    pub profile: Vec<(i64, u64)>,
}

fn seesaw_check_ranges(
    w: &TreePairDiagram,
    g: GeneratorLetter,
    cond1_max: u32,
    cond2_max: u32,
) -> Result<SeesawVerdict> {
    let params = w.params();
    let table = WeightTable::new(params);
    let base_len = table.length_report(w)?.total as i64;
    let gd = letter_diagram(params, g);
    let gd_inv = gd.inverse();
    let k_max = cond1_max.max(cond2_max);

    // Walk w·g^l for l = 0, ±1, ..., ±k_max once in each direction.
    let mut profile = vec![(0i64, base_len as u64)];
    let mut condition1_failures = Vec::new();
    let mut condition2_failures = Vec::new();
    let mut strict_condition2_failures = Vec::new();

    for sign in [1i64, -1] {
        let step = if sign > 0 { &gd } else { &gd_inv };
        let mut current = w.clone();
        for q in 1..=i64::from(k_max) {
            let l = sign * q;
            current = current.multiply(step);
            let len = table.length_report(&current)?.total;
            profile.push((l, len));
            if q <= i64::from(cond1_max) && len as i64 != base_len - q {
                condition1_failures.push(SwingFailure {
                    power: l,
                    expected: base_len - q,
                    actual: len,
                });
            }
            if q <= i64::from(cond2_max) {
                for h in standard_letters(params) {
                    let extended = current.multiply(&letter_diagram(params, h));
                    let elen = table.length_report(&extended)?.total;
                    if elen >= len {
                        continue;
                    }
                    let failure = ExtensionFailure {
                        power: l,
                        letter: h.to_string(),
                        base_length: len,
                        extended_length: elen,
                    };
                    let exempt = if sign > 0 { g } else { g.inverted() };
                    if h != exempt {
                        condition2_failures.push(failure.clone());
                    }
                    if h != g {
                        strict_condition2_failures.push(failure);
                    }
                }
            }
        }
    }
    profile.sort();
    Ok(SeesawVerdict {
        ok: condition1_failures.is_empty() && condition2_failures.is_empty(),
        strict_reading_ok: condition1_failures.is_empty()
            && strict_condition2_failures.is_empty(),
        condition1_failures,
        condition2_failures,
        strict_condition2_failures,
        profile,
    })
}

/// Verifies that w is a seesaw word with swing k on generator g:
/// condition 1, |w·g^l| = |w| − |l| for 0 < |l| ≤ k; condition 2, no
/// non-exempt letter shortens w·g^l for 0 < |l| < k.
pub fn verify_seesaw(w: &TreePairDiagram, g: GeneratorLetter, k: u32) -> Result<SeesawVerdict> {
    seesaw_check_ranges(w, g, k, k.saturating_sub(1))
}

/// Length-profile check with both conditions pushed to the same bound:
/// condition 1 for 0 < |q| ≤ qmax and condition 2 for 0 < |q| ≤ qmax.
pub fn lemma_check(w: &TreePairDiagram, g: GeneratorLetter, qmax: u32) -> Result<SeesawVerdict> {
    seesaw_check_ranges(w, g, qmax, qmax)
}

/// True iff no single letter lengthens w. Relators all have even
/// length, so a letter never leaves the length unchanged; equality is
/// reported as an internal error rather than absorbed.
pub fn is_dead_end(w: &TreePairDiagram) -> Result<bool> {
    is_dead_end_with(w, &WeightTable::new(w.params()))
}

/// [`is_dead_end`] with a caller-cached weight table for sweeps.
pub fn is_dead_end_with(w: &TreePairDiagram, table: &WeightTable) -> Result<bool> {
    let params = w.params();
    let base = table.length_report(w)?.total;
    for g in standard_letters(params) {
        let len = table.length_report(&w.multiply(&letter_diagram(params, g)))?.total;
        if len == base {
            return Err(Error::Internal(format!(
                "letter {g} left the length of {w} unchanged; parity is broken"
            )));
        }
        if len > base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One labeled caret of the dead-end template with its pair of refined
/// types.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledCaret {
    pub label: String,
    pub index: usize,
    pub neg_type: String,
    pub pos_type: String,
}

/// Structural recognizer verdict: the labeled carets found around the
/// root of the negative tree and every violated constraint.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeadEndReport {
    pub is_dead_end: bool,
    pub labeled: Vec<LabeledCaret>,
    pub violations: Vec<String>,
}

/// Positions of the template carets in the negative tree, with labels.
/// Child positions are 0-based here; the template asks for carets at the
/// root, its first and last children, each middle child, and the first
/// and last children of the last child.
fn template_positions(p: usize) -> Vec<(String, Vec<usize>)> {
    let mut out = vec![
        ("B".to_string(), vec![]),
        ("A".to_string(), vec![0]),
    ];
    for i in 1..p {
        out.push((format!("C^{i}"), vec![i]));
    }
    out.push(("E".to_string(), vec![p]));
    out.push(("D".to_string(), vec![p, 0]));
    out.push(("F".to_string(), vec![p, p]));
    out
}

fn subtree_at<'a>(t: &'a Tree, path: &[usize]) -> Option<&'a Tree> {
    let mut cur = t;
    for &q in path {
        match cur {
            Tree::Caret(cs) => cur = &cs[q],
            Tree::Leaf => return None,
        }
    }
    Some(cur)
}

fn pair_condition_holds(label: &str, neg: CaretType, pos: CaretType, p: usize) -> bool {
    use CaretType::*;
    match label {
        "B" => neg == LL && pos == LL,
        // The left witness caret: its partner must not be a right caret.
        "A" => neg.is_left() && !pos.is_right(),
        "E" => matches!(
            (neg, pos),
            (REmpty, RR) | (RR, REmpty) | (RR, RR)
        ),
        "F" => neg.is_right() && pos.is_right(),
        "D" => match neg {
            MEmpty(i) => {
                debug_assert_eq!(i, p);
                !matches!(pos, RR | REmpty)
            }
            MIJ(i, j) => {
                debug_assert_eq!(i, p);
                !matches!(pos, MEmpty(l) if j <= l && l < i)
            }
            _ => false,
        },
        c if c.starts_with("C^") => {
            let i: usize = c[2..].parse().expect("label index");
            match neg {
                MEmpty(ni) => {
                    debug_assert_eq!(ni, i);
                    match pos {
                        LL => true,
                        RJ(k) => k <= i,
                        MEmpty(l) => l <= i,
                        MIJ(r, _) => r <= i,
                        _ => false,
                    }
                }
                MIJ(ni, j) => {
                    debug_assert_eq!(ni, i);
                    !matches!(pos, MEmpty(l) if j <= l && l < i)
                }
                _ => false,
            }
        }
        _ => unreachable!("unknown template label {label}"),
    }
}

/// Checks the structural dead-end form: the negative tree must contain
/// the template carets around its root, and each labeled caret's pair
/// of refined types must be one of the admissible pairings. The
/// `is_dead_end` field is the structural verdict (no violations); it is
/// cross-checked against the definitional search in the test suites.
pub fn structural_dead_end_check(w: &TreePairDiagram) -> Result<DeadEndReport> {
    let w = w.reduce();
    let params = w.params();
    let p = params.p;
    let neg_class = classify(w.neg(), params)?;
    let pos_class = classify(w.pos(), params)?;
    let mut labeled = Vec::new();
    let mut violations = Vec::new();

    for (label, path) in template_positions(p) {
        let present = matches!(subtree_at(w.neg(), &path), Some(Tree::Caret(_)));
        if !present {
            violations.push(format!("missing caret: no {label} caret in the negative tree"));
            continue;
        }
        let index = neg_class
            .number_at(&path)
            .ok_or_else(|| Error::Internal(format!("caret at {path:?} not numbered")))?;
        let neg_type = neg_class.refined[index];
        let pos_type = pos_class.refined[index];
        labeled.push(LabeledCaret {
            label: label.clone(),
            index,
            neg_type: neg_type.to_string(),
            pos_type: pos_type.to_string(),
        });
        if !pair_condition_holds(&label, neg_type, pos_type, p) {
            violations.push(format!(
                "caret {label} (index {index}) has inadmissible pair ({neg_type}, {pos_type})"
            ));
        }
    }

    Ok(DeadEndReport {
        is_dead_end: violations.is_empty(),
        labeled,
        violations,
    })
}

/// Depth verification for a dead end.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DepthTwoReport {
    /// No two-letter extension exceeds |w|.
    pub two_letter_extensions_stay: bool,
    /// Every member of the witness family x_0^{-1} x_i x_j (i, j in
    /// 1..=p) exceeds |w|.
    pub witness_family_escapes: bool,
    /// Same family with all letters inverted (x_0 x_i^{-1} x_j^{-1}).
    pub mirrored_witness_family_escapes: bool,
    /// Some three-letter extension exceeds |w|.
    pub three_letter_escape_exists: bool,
    /// Depth is exactly two.
    pub depth_is_two: bool,
}

/// Verifies a dead end has depth exactly 2: every two-letter extension
/// keeps the length at or below |w| and some three-letter extension
/// exceeds it. Also reports whether the explicit witness family (and
/// its mirror image) escapes.
pub fn verify_depth_two(w: &TreePairDiagram) -> Result<DepthTwoReport> {
    let params = w.params();
    let table = WeightTable::new(params);
    if !is_dead_end_with(w, &table)? {
        return Err(Error::Precondition("not a dead end".into()));
    }
    let w = w.reduce();
    let base = table.length_report(&w)?.total;
    let letters = standard_letters(params);
    let letter_diags: Vec<TreePairDiagram> = letters
        .iter()
        .map(|&g| letter_diagram(params, g))
        .collect();

    let mut two_letter_extensions_stay = true;
    let mut three_letter_escape_exists = false;
    let mut level1 = Vec::new();
    for ld in &letter_diags {
        level1.push(w.multiply(ld));
    }
    let mut level2 = Vec::new();
    'outer: for x in &level1 {
        for ld in &letter_diags {
            let y = x.multiply(ld);
            if table.length_report(&y)?.total > base {
                two_letter_extensions_stay = false;
                break 'outer;
            }
            level2.push(y);
        }
    }
    if two_letter_extensions_stay {
        'outer3: for x in &level2 {
            for ld in &letter_diags {
                let y = x.multiply(ld);
                if table.length_report(&y)?.total > base {
                    three_letter_escape_exists = true;
                    break 'outer3;
                }
            }
        }
    }

    let family = |first: GeneratorLetter, invert_rest: bool| -> Result<bool> {
        let mut all_escape = true;
        'f: for i in 1..=params.p {
            for j in 1..=params.p {
                let (gi, gj) = if invert_rest {
                    (GeneratorLetter::inv(i), GeneratorLetter::inv(j))
                } else {
                    (GeneratorLetter::new(i), GeneratorLetter::new(j))
                };
                let prod = w
                    .multiply(&letter_diagram(params, first))
                    .multiply(&letter_diagram(params, gi))
                    .multiply(&letter_diagram(params, gj));
                if table.length_report(&prod)?.total <= base {
                    all_escape = false;
                    break 'f;
                }
            }
        }
        Ok(all_escape)
    };
    let witness_family_escapes = family(GeneratorLetter::inv(0), false)?;
    let mirrored_witness_family_escapes = family(GeneratorLetter::new(0), true)?;

    Ok(DepthTwoReport {
        two_letter_extensions_stay,
        witness_family_escapes,
        mirrored_witness_family_escapes,
        three_letter_escape_exists: three_letter_escape_exists
            || witness_family_escapes
            || mirrored_witness_family_escapes,
        depth_is_two: two_letter_extensions_stay
            && (three_letter_escape_exists
                || witness_family_escapes
                || mirrored_witness_family_escapes),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::make_generator;
    use crate::metric::word_length;

    fn sp(p: usize, m: u32, n: u32, k: u32) -> SeesawParams {
        SeesawParams::new(p, m, n, k).unwrap()
    }

    #[test]
    fn normal_form_small_example() {
        let w = seesaw_normal_form(&sp(1, 2, 1, 0));
        assert_eq!(w.to_string(), "0 1 4 3^-1 0^-1 0^-1");
    }

    #[test]
    fn normal_form_larger_example() {
        let w = seesaw_normal_form(&sp(1, 4, 4, 0));
        assert_eq!(
            w.to_string(),
            "0 0 0 1 12 11^-1 9^-1 7^-1 5^-1 0^-1 0^-1 0^-1 0^-1"
        );
    }

    #[test]
    fn parameter_validation() {
        assert!(SeesawParams::new(1, 1, 1, 0).is_err());
        assert!(SeesawParams::new(1, 2, 0, 0).is_err());
        assert!(SeesawParams::new(1, 5, 5, 4).is_err());
        assert!(SeesawParams::new(1, 5, 5, 3).is_ok());
        assert!(SeesawParams::new(1, 2, 1, 0).is_ok());
    }

    #[test]
    fn seesaw_diagram_carries_the_expected_counts() {
        let params1 = GroupParams::new(1).unwrap();
        let d1 = seesaw_word(&sp(1, 4, 4, 2)).unwrap();
        assert_eq!(shape_counts(&classify(d1.neg(), params1).unwrap()), (4, 3));
        let params2 = GroupParams::new(2).unwrap();
        let d2 = seesaw_word(&sp(2, 3, 2, 0)).unwrap();
        assert_eq!(shape_counts(&classify(d2.neg(), params2).unwrap()), (3, 2));
    }

    #[test]
    fn small_seesaw_verifies() {
        let s = sp(1, 4, 4, 2);
        let d = seesaw_word(&s).unwrap();
        let v = verify_seesaw(&d, GeneratorLetter::new(0), 2).unwrap();
        assert!(v.ok, "failures: {:?} {:?}", v.condition1_failures, v.condition2_failures);
        // The strict reading must fail: from w·x_0^{-1}, the letter
        // x_0^{-1} itself shortens further, and only x_0 is exempt.
        assert!(!v.strict_reading_ok);
        assert!(v
            .strict_condition2_failures
            .iter()
            .any(|f| f.power < 0 && f.letter == "0^-1"));
    }

    #[test]
    fn power_is_not_a_seesaw() {
        let params = GroupParams::new(1).unwrap();
        let x0 = make_generator(params, 0);
        let w = x0.multiply(&x0).multiply(&x0).multiply(&x0).multiply(&x0);
        let v = verify_seesaw(&w, GeneratorLetter::new(0), 2).unwrap();
        assert!(!v.ok);
        assert!(v
            .condition1_failures
            .iter()
            .any(|f| f.power == 1), "growing side must fail condition 1");
    }

    #[test]
    fn identity_is_not_a_seesaw() {
        let params = GroupParams::new(1).unwrap();
        let id = TreePairDiagram::identity(params);
        let v = verify_seesaw(&id, GeneratorLetter::new(0), 1).unwrap();
        assert!(!v.ok);
        assert!(!v.condition1_failures.is_empty());
    }

    #[test]
    fn profile_is_swing_shaped() {
        let s = sp(1, 4, 4, 2);
        let d = seesaw_word(&s).unwrap();
        let base = word_length(&d).unwrap().total as i64;
        let v = verify_seesaw(&d, GeneratorLetter::new(0), 2).unwrap();
        for (q, len) in &v.profile {
            if q.unsigned_abs() <= 2 {
                assert_eq!(*len as i64, base - q.abs(), "at power {q}");
            }
        }
    }

    #[test]
    fn identity_and_generators_are_not_dead_ends() {
        let params = GroupParams::new(1).unwrap();
        assert!(!is_dead_end(&TreePairDiagram::identity(params)).unwrap());
        assert!(!is_dead_end(&make_generator(params, 0)).unwrap());
        let sq = make_generator(params, 0).multiply(&make_generator(params, 0));
        assert!(!is_dead_end(&sq).unwrap());
    }

    #[test]
    fn identity_fails_structural_check_with_missing_carets() {
        let params = GroupParams::new(1).unwrap();
        let r = structural_dead_end_check(&TreePairDiagram::identity(params)).unwrap();
        assert!(!r.is_dead_end);
        assert!(r.violations.iter().all(|v| v.starts_with("missing caret")));
        // p = 1 template: B, A, E, D, F.
        assert_eq!(r.violations.len(), 5);
    }

    #[test]
    fn generator_fails_structural_check() {
        let params = GroupParams::new(2).unwrap();
        for i in 0..=2 {
            let r = structural_dead_end_check(&make_generator(params, i)).unwrap();
            assert!(!r.is_dead_end, "x_{i} must not look like a dead end");
        }
    }

    #[test]
    fn depth_check_rejects_non_dead_ends() {
        let params = GroupParams::new(1).unwrap();
        assert!(verify_depth_two(&make_generator(params, 0)).is_err());
    }

    #[test]
    fn report_serializes_to_json() {
        let params = GroupParams::new(1).unwrap();
        let r = structural_dead_end_check(&make_generator(params, 0)).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"is_dead_end\":false"));
    }
}
