//! Dead-end census over whole balls, cross-validating the definitional
//! search against the structural recognizer on every interior element.
//! The radius-12 run at p=1 (about 676k elements) finds the smallest
//! dead ends, which have length 11.

use std::time::Instant;
use thompson_metric::cayley::{bfs_ball, find_dead_ends, DEFAULT_NODE_CAP};
use thompson_metric::diagram::TreePairDiagram;
use thompson_metric::families::{is_dead_end_with, structural_dead_end_check};
use thompson_metric::metric::WeightTable;
use thompson_metric::tree::GroupParams;

fn main() {
    for (p, r) in [(1usize, 8u32), (2, 5), (1, 12)] {
        let t0 = Instant::now();
        let params = GroupParams::new(p).unwrap();
        let ball = match bfs_ball(params, r, DEFAULT_NODE_CAP) {
            Ok(b) => b,
            Err(e) => {
                println!("p={p} r={r}: {e}");
                continue;
            }
        };
        println!(
            "p={p} r={r}: ball={} spheres={:?} ({:.1}s)",
            ball.len(),
            ball.sphere_sizes(),
            t0.elapsed().as_secs_f64()
        );
        let dead = find_dead_ends(&ball).unwrap();
        println!("  dead ends: {}", dead.len());
        let table = WeightTable::new(params);
        let mut min_len = u64::MAX;
        for key in &dead {
            let d = TreePairDiagram::parse(key).unwrap();
            let len = table.length_report(&d).unwrap().total;
            min_len = min_len.min(len);
            assert!(is_dead_end_with(&d, &table).unwrap(), "definitional check disagrees for {key}");
            let rep = structural_dead_end_check(&d).unwrap();
            if !rep.is_dead_end {
                println!("  STRUCTURAL MISS: {key} violations: {:?}", rep.violations);
            }
        }
        if !dead.is_empty() {
            println!("  min dead-end length: {min_len}");
            for key in dead.iter().take(4) {
                println!("  example: {key}");
            }
        }
        // Equivalence sweep: every interior element, both recognizers.
        let t1 = Instant::now();
        let mut mismatches = 0usize;
        for (key, dist) in ball.entries() {
            if dist + 1 > ball.radius() {
                continue;
            }
            let d = TreePairDiagram::parse(key).unwrap();
            let defn = is_dead_end_with(&d, &table).unwrap();
            let structural = structural_dead_end_check(&d).unwrap().is_dead_end;
            if defn != structural {
                mismatches += 1;
                if mismatches <= 5 {
                    println!("  RECOGNIZER MISMATCH at {key}: definitional={defn} structural={structural}");
                }
            }
        }
        println!("  equivalence sweep: {mismatches} mismatches ({:.1}s)", t1.elapsed().as_secs_f64());
    }
}
