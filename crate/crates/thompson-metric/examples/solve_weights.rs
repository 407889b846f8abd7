//! Solves for every caret-pair weight directly from BFS distances and
//! compares the solution against the implemented table.

use std::collections::{BTreeMap, HashMap};
use thompson_metric::cayley::{bfs_ball, DEFAULT_NODE_CAP};
use thompson_metric::classify::{classify, CaretType};
use thompson_metric::diagram::TreePairDiagram;
use thompson_metric::metric::WeightTable;
use thompson_metric::tree::GroupParams;

fn main() {
    for (p, radius) in [(2usize, 5u32), (3, 4)] {
        println!("== p={p} r={radius} ==");
        let params = GroupParams::new(p).unwrap();
        let ball = bfs_ball(params, radius, DEFAULT_NODE_CAP).unwrap();
        // Each element: multiset of caret-type pairs -> distance.
        let mut equations: Vec<(BTreeMap<(CaretType, CaretType), i64>, i64)> = Vec::new();
        for (key, dist) in ball.entries() {
            let d = TreePairDiagram::parse(key).unwrap();
            let neg = classify(d.neg(), params).unwrap();
            let pos = classify(d.pos(), params).unwrap();
            let mut counts: BTreeMap<(CaretType, CaretType), i64> = BTreeMap::new();
            for (a, b) in neg.refined.iter().zip(pos.refined.iter()) {
                // Orient pairs canonically so (a,b) and (b,a) share an unknown.
                let k = if format!("{a}") <= format!("{b}") { (*a, *b) } else { (*b, *a) };
                *counts.entry(k).or_default() += 1;
            }
            equations.push((counts, dist as i64));
        }
        // Iteratively resolve equations with a single unknown pair.
        let mut known: HashMap<(CaretType, CaretType), i64> = HashMap::new();
        known.insert((CaretType::LFirst, CaretType::LFirst), 0);
        loop {
            let mut progressed = false;
            for (counts, dist) in &equations {
                let mut unknown: Option<(&(CaretType, CaretType), i64)> = None;
                let mut ambiguous = false;
                let mut known_sum = 0i64;
                for (pair, c) in counts {
                    match known.get(pair) {
                        Some(w) => known_sum += w * c,
                        None => {
                            if unknown.is_some() {
                                ambiguous = true;
                                break;
                            }
                            unknown = Some((pair, *c));
                        }
                    }
                }
                if ambiguous {
                    continue;
                }
                match unknown {
                    None => {
                        if known_sum != *dist {
                            println!("INCONSISTENT: sum {known_sum} != dist {dist} for {counts:?}");
                        }
                    }
                    Some((pair, c)) => {
                        let residual = dist - known_sum;
                        if residual % c != 0 {
                            println!("NON-INTEGRAL: {pair:?} residual {residual} count {c}");
                            continue;
                        }
                        let w = residual / c;
                        known.insert(*pair, w);
                        progressed = true;
                    }
                }
            }
            if !progressed {
                break;
            }
        }
        // Re-scan for consistency with the final assignment.
        let mut inconsistent = 0usize;
        let mut unresolved = 0usize;
        for (counts, dist) in &equations {
            let mut sum = 0i64;
            let mut all_known = true;
            for (pair, c) in counts {
                match known.get(pair) {
                    Some(w) => sum += w * c,
                    None => all_known = false,
                }
            }
            if all_known && sum != *dist {
                inconsistent += 1;
            }
            if !all_known {
                unresolved += 1;
            }
        }
        println!("equations: {}, solved pairs: {}, inconsistent: {inconsistent}, unresolved elements: {unresolved}", equations.len(), known.len());
        // Compare with the implemented table.
        let table = WeightTable::new(params);
        let mut solved: Vec<_> = known.iter().collect();
        solved.sort_by_key(|(pair, _)| format!("{},{}", pair.0, pair.1));
        for (pair, w) in solved {
            let implemented = table.weight(pair.0, pair.1).ok();
            let marker = match implemented {
                Some(t) if t as i64 == *w => "",
                Some(_) => "  <-- TABLE DIFFERS",
                None => "  <-- NO TABLE ENTRY",
            };
            println!("  ({}, {}) = {}  table {:?}{}", pair.0, pair.1, w, implemented, marker);
        }
    }
}
