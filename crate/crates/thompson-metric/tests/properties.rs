//! Randomized properties: group laws, metric axioms, classification
//! invariants, and agreement between the diagram algebra and the exact
//! PL-map semantics.

use num::{BigInt, BigRational, Integer, One, Zero};
use proptest::prelude::*;

use thompson_metric::classify::{classify, CaretType};
use thompson_metric::diagram::{evaluate_word, letter_diagram, TreePairDiagram};
use thompson_metric::metric::word_length;
use thompson_metric::plmap::diagram_to_map;
use thompson_metric::tree::{leaf_intervals, GroupParams, Tree};
use thompson_metric::words::{GeneratorLetter, GroupWord};

fn letter_strategy(p: usize) -> impl Strategy<Value = GeneratorLetter> {
    (0..=p, any::<bool>()).prop_map(|(i, inverse)| {
        if inverse {
            GeneratorLetter::inv(i)
        } else {
            GeneratorLetter::new(i)
        }
    })
}

fn word_strategy(p: usize, max_len: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec(letter_strategy(p), 0..=max_len).prop_map(GroupWord::new)
}

/// (p, evaluated diagram) over p in 1..=3.
fn element_strategy() -> impl Strategy<Value = (usize, TreePairDiagram)> {
    (1..=3usize).prop_flat_map(|p| {
        word_strategy(p, 10).prop_map(move |w| {
            let params = GroupParams::new(p).unwrap();
            (p, evaluate_word(params, &w))
        })
    })
}

fn len_of(d: &TreePairDiagram) -> u64 {
    word_length(d).unwrap().total
}

/// True iff the reduced denominator divides a power of n.
fn in_dyadic_ring(x: &BigRational, n: usize) -> bool {
    let n = BigInt::from(n);
    let mut d = x.denom().clone();
    loop {
        let g = d.gcd(&n);
        if g.is_one() {
            break;
        }
        while (&d % &g).is_zero() {
            d /= &g;
        }
    }
    d.is_one()
}

proptest! {
    #[test]
    fn multiplication_is_associative(
        (p, a) in element_strategy(),
        wb in word_strategy(3, 10),
        wc in word_strategy(3, 10),
    ) {
        let params = GroupParams::new(p).unwrap();
        // Indices above p are infinite-presentation generators, valid
        // at every arity.
        let b = evaluate_word(params, &wb);
        let c = evaluate_word(params, &wc);
        prop_assert_eq!(
            a.multiply(&b).multiply(&c).canonical_key(),
            a.multiply(&b.multiply(&c)).canonical_key()
        );
    }

    #[test]
    fn identity_and_inverse_laws((p, a) in element_strategy()) {
        let params = GroupParams::new(p).unwrap();
        let e = TreePairDiagram::identity(params);
        prop_assert_eq!(a.multiply(&e).canonical_key(), a.canonical_key());
        prop_assert_eq!(e.multiply(&a).canonical_key(), a.canonical_key());
        prop_assert!(a.multiply(&a.inverse()).is_identity());
        prop_assert!(a.inverse().multiply(&a).is_identity());
    }

    #[test]
    fn length_is_symmetric_under_inverse((_, a) in element_strategy()) {
        prop_assert_eq!(len_of(&a), len_of(&a.inverse()));
    }

    #[test]
    fn triangle_inequality((p, a) in element_strategy(), wb in word_strategy(3, 10)) {
        let params = GroupParams::new(p).unwrap();
        let b = evaluate_word(params, &wb);
        prop_assert!(len_of(&a.multiply(&b)) <= len_of(&a) + len_of(&b));
    }

    #[test]
    fn products_compose_as_pl_maps((p, a) in element_strategy(), wb in word_strategy(3, 8)) {
        let params = GroupParams::new(p).unwrap();
        let b = evaluate_word(params, &wb);
        let lhs = diagram_to_map(&a.multiply(&b));
        let rhs = diagram_to_map(&a).compose(&diagram_to_map(&b));
        prop_assert!(lhs.map_equals(&rhs));
    }

    #[test]
    fn inverse_diagrams_invert_maps((_, a) in element_strategy()) {
        let lhs = diagram_to_map(&a.inverse());
        let rhs = diagram_to_map(&a).invert();
        prop_assert!(lhs.map_equals(&rhs));
    }

    #[test]
    fn map_equality_is_element_equality(
        (p, a) in element_strategy(),
        wb in word_strategy(3, 10),
    ) {
        let params = GroupParams::new(p).unwrap();
        let b = evaluate_word(params, &wb);
        let keys_equal = a.canonical_key() == b.canonical_key();
        let maps_equal = diagram_to_map(&a).map_equals(&diagram_to_map(&b));
        prop_assert_eq!(keys_equal, maps_equal);
    }

    #[test]
    fn multiply_returns_reduced((p, a) in element_strategy(), wb in word_strategy(3, 8)) {
        let params = GroupParams::new(p).unwrap();
        let b = evaluate_word(params, &wb);
        let prod = a.multiply(&b);
        prop_assert!(prod.reducible_pairs().is_empty());
        prop_assert_eq!(prod.reduce().canonical_key(), prod.canonical_key());
    }

    #[test]
    fn classification_invariants((p, a) in element_strategy()) {
        let params = GroupParams::new(p).unwrap();
        for tree in [a.neg(), a.pos()] {
            let c = classify(tree, params).unwrap();
            prop_assert_eq!(c.caret_count(), tree.caret_count());
            let mut first_left = 0usize;
            for (k, t) in c.refined.iter().enumerate() {
                match *t {
                    CaretType::LFirst => {
                        first_left += 1;
                        prop_assert_eq!(k, 0);
                    }
                    CaretType::MIJ(i, j) => {
                        prop_assert!(j <= i && (1..=p).contains(&i));
                    }
                    CaretType::RJ(j) | CaretType::MEmpty(j) => {
                        prop_assert!((1..=p).contains(&j));
                    }
                    _ => {}
                }
            }
            if tree.caret_count() > 0 {
                prop_assert_eq!(first_left, 1);
            }
            // Numbering is a bijection onto 0..carets.
            let mut seen = vec![false; c.caret_count()];
            for path in &c.paths {
                let k = c.number_at(path).unwrap();
                prop_assert!(!seen[k]);
                seen[k] = true;
            }
        }
    }

    /// No single letter ever leaves the length unchanged: relators all
    /// have even length, so the Cayley graph is bipartite.
    #[test]
    fn one_letter_steps_change_length((p, a) in element_strategy()) {
        let params = GroupParams::new(p).unwrap();
        let base = len_of(&a);
        for i in 0..=p {
            for letter in [GeneratorLetter::new(i), GeneratorLetter::inv(i)] {
                let stepped = a.multiply(&letter_diagram(params, letter));
                prop_assert_ne!(len_of(&stepped), base);
            }
        }
    }

    #[test]
    fn leaf_intervals_partition_the_unit_interval((p, a) in element_strategy()) {
        let params = GroupParams::new(p).unwrap();
        for tree in [a.neg(), a.pos()] {
            let iv = leaf_intervals(tree, params);
            prop_assert_eq!(iv.len(), tree.leaf_count());
            prop_assert!(iv.first().unwrap().low.is_zero());
            prop_assert!(iv.last().unwrap().high.is_one());
            for w in iv.windows(2) {
                prop_assert_eq!(&w[0].high, &w[1].low);
            }
            for i in &iv {
                prop_assert!(i.low < i.high);
                prop_assert!(in_dyadic_ring(&i.low, p + 1));
                prop_assert!(in_dyadic_ring(&i.high, p + 1));
            }
        }
    }

    /// Words over the infinite generating set satisfy the defining
    /// relations: x_i x_j and x_{j+p} x_i agree for i < j.
    #[test]
    fn infinite_presentation_relations(p in 1..=3usize, i in 1..=6usize, extra in 1..=6usize) {
        let params = GroupParams::new(p).unwrap();
        let j = i + extra;
        let lhs = letter_diagram(params, GeneratorLetter::new(i))
            .multiply(&letter_diagram(params, GeneratorLetter::new(j)));
        let rhs = letter_diagram(params, GeneratorLetter::new(j + p))
            .multiply(&letter_diagram(params, GeneratorLetter::new(i)));
        prop_assert_eq!(lhs.canonical_key(), rhs.canonical_key());
    }
}

/// Concrete interval values for one small binary tree.
#[test]
fn interval_partition_smallest_cases() {
    let params = GroupParams::new(1).unwrap();
    let t = Tree::parse("((..).)", 2).unwrap();
    let iv = leaf_intervals(&t, params);
    let halves: Vec<(String, String)> = iv
        .iter()
        .map(|i| (i.low.to_string(), i.high.to_string()))
        .collect();
    assert_eq!(
        halves,
        vec![
            ("0".into(), "1/4".into()),
            ("1/4".into(), "1/2".into()),
            ("1/2".into(), "1".into()),
        ]
    );
}
