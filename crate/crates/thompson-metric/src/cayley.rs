//! Brute-force Cayley-graph ground truth.
//!
//! Breadth-first enumeration of balls around the identity gives exact
//! graph distances by definition, independent of the weight table. On
//! top of the resulting [`DistanceMap`] sit the metric verifier, the
//! definitional dead-end search, depth measurement, geodesic extraction,
//! and the synchronous-divergence probe for geodesic pairs.

use crate::diagram::{letter_diagram, TreePairDiagram};
use crate::error::{Error, Result};
use crate::metric::WeightTable;
use crate::plmap::diagram_to_map;
use crate::tree::GroupParams;
use crate::words::{GeneratorLetter, GroupWord};
use std::collections::{HashMap, HashSet, VecDeque};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

/// Default cap on enumerated ball entries.
pub const DEFAULT_NODE_CAP: usize = 5_000_000;

/// The standard generating set in the fixed expansion order: lowest
/// index first, positive letter before its inverse.
pub fn standard_letters(params: GroupParams) -> Vec<GeneratorLetter> {
    (0..=params.p)
        .flat_map(|i| [GeneratorLetter::new(i), GeneratorLetter::inv(i)])
        .collect()
}

/// Exact distances for every element within a radius of the identity.
///
/// Entries are indexed in discovery order; the identity is entry 0.
/// Every entry at distance d > 0 has a parent at distance d − 1 one
/// letter away (the first discoverer under the fixed letter order).
#[derive(Debug, Clone)]
pub struct DistanceMap {
    params: GroupParams,
    radius: u32,
    keys: Vec<String>,
    dist: Vec<u32>,
    parent: Vec<Option<u32>>,
    index: HashMap<String, u32>,
}

impl DistanceMap {
    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Exact Cayley distance of a canonical key, if within the ball.
    pub fn distance(&self, key: &str) -> Option<u32> {
        self.index.get(key).map(|&i| self.dist[i as usize])
    }

    /// Canonical key of the BFS parent; None for the identity or for
    /// keys outside the ball.
    pub fn parent_key(&self, key: &str) -> Option<&str> {
        let i = *self.index.get(key)?;
        let p = self.parent[i as usize]?;
        Some(&self.keys[p as usize])
    }

    /// (key, distance) pairs in discovery order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, u32)> + '_ {
        self.keys
            .iter()
            .map(String::as_str)
            .zip(self.dist.iter().copied())
    }

    /// Number of elements at each distance 0..=radius.
    pub fn sphere_sizes(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.radius as usize + 1];
        for &d in &self.dist {
            out[d as usize] += 1;
        }
        out
    }

    /// Writes the map as lines `key<TAB>distance<TAB>parent_key`, with
    /// `-` for the identity's missing parent.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(std::fs::File::create(path)?);
        for i in 0..self.keys.len() {
            let parent = match self.parent[i] {
                Some(p) => &self.keys[p as usize],
                None => "-",
            };
            writeln!(out, "{}\t{}\t{}", self.keys[i], self.dist[i], parent)?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads a map written by [`DistanceMap::save`]. The group parameter
    /// is recovered from the keys and the radius from the largest
    /// distance present.
    pub fn load(path: &Path) -> Result<DistanceMap> {
        let reader = BufReader::new(std::fs::File::open(path)?);
        let mut keys = Vec::new();
        let mut dist = Vec::new();
        let mut parents_by_key = Vec::new();
        for line in reader.lines() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split('\t');
            let (key, d, parent) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
                (Some(k), Some(d), Some(p), None) => (k, d, p),
                _ => {
                    return Err(Error::Parse(format!(
                        "distance map line is not key<TAB>distance<TAB>parent: {line}"
                    )))
                }
            };
            let d: u32 = d
                .parse()
                .map_err(|_| Error::Parse(format!("bad distance in line: {line}")))?;
            keys.push(key.to_string());
            dist.push(d);
            parents_by_key.push(if parent == "-" {
                None
            } else {
                Some(parent.to_string())
            });
        }
        if keys.is_empty() {
            return Err(Error::Parse("empty distance map file".into()));
        }
        let params = TreePairDiagram::parse(&keys[0])?.params();
        let index: HashMap<String, u32> = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i as u32))
            .collect();
        if index.len() != keys.len() {
            return Err(Error::Parse("duplicate key in distance map file".into()));
        }
        let mut parent = Vec::with_capacity(keys.len());
        for (i, pk) in parents_by_key.iter().enumerate() {
            match pk {
                None => parent.push(None),
                Some(pk) => {
                    let id = index.get(pk).copied().ok_or_else(|| {
                        Error::Parse(format!("parent key missing from file: {pk}"))
                    })?;
                    if dist[id as usize] + 1 != dist[i] {
                        return Err(Error::Parse(format!(
                            "parent of {} is not one level up",
                            keys[i]
                        )));
                    }
                    parent.push(Some(id));
                }
            }
        }
        let radius = dist.iter().copied().max().unwrap_or(0);
        Ok(DistanceMap { params, radius, keys, dist, parent, index })
    }

    /// Reconstructs the geodesic word from the identity to a ball
    /// element by following parent links and recovering each edge's
    /// letter.
    pub fn geodesic_from_parents(&self, key: &str) -> Result<GroupWord> {
        let params = self.params;
        let letters = standard_letters(params);
        let mut letters_rev = Vec::new();
        let mut current = key.to_string();
        while let Some(parent) = self.parent_key(&current).map(str::to_string) {
            let pd = TreePairDiagram::parse(&parent)?;
            let step = letters
                .iter()
                .copied()
                .find(|&g| {
                    pd.multiply(&letter_diagram(params, g)).canonical_key() == current
                })
                .ok_or_else(|| {
                    Error::Internal(format!("no single letter joins {parent} to {current}"))
                })?;
            letters_rev.push(step);
            current = parent;
        }
        if self.index.get(&current).map(|&i| self.dist[i as usize]) != Some(0) {
            return Err(Error::Precondition(format!("key not in ball: {key}")));
        }
        letters_rev.reverse();
        Ok(GroupWord::new(letters_rev))
    }
}

/// Enumerates the ball of the given radius by breadth-first search over
/// right multiplication, deduplicating by canonical key. One percent of
/// dedup collisions are re-checked against the exact piecewise-linear
/// oracle.
pub fn bfs_ball(params: GroupParams, radius: u32, cap: usize) -> Result<DistanceMap> {
    let letter_diags: Vec<TreePairDiagram> = standard_letters(params)
        .into_iter()
        .map(|l| letter_diagram(params, l))
        .collect();
    let identity = TreePairDiagram::identity(params);
    let mut keys = vec![identity.canonical_key()];
    let mut dist = vec![0u32];
    let mut parent: Vec<Option<u32>> = vec![None];
    let mut index = HashMap::from([(keys[0].clone(), 0u32)]);
    let mut queue = VecDeque::from([0u32]);
    let mut collisions = 0usize;

    while let Some(id) = queue.pop_front() {
        let d = dist[id as usize];
        if d == radius {
            continue;
        }
        let w = TreePairDiagram::parse(&keys[id as usize])?;
        for ld in &letter_diags {
            let unreduced = w.multiply_unreduced(ld);
            let product = unreduced.reduce();
            let key = product.to_string();
            if let Some(&existing) = index.get(&key) {
                collisions += 1;
                if collisions % 100 == 0 {
                    let stored = TreePairDiagram::parse(&keys[existing as usize])?;
                    if !diagram_to_map(&unreduced).map_equals(&diagram_to_map(&stored)) {
                        return Err(Error::Internal(format!(
                            "canonical-key dedup disagrees with the PL oracle at {key}"
                        )));
                    }
                }
                continue;
            }
            if keys.len() >= cap {
                return Err(Error::CapExceeded { cap, reached: keys.len() + 1 });
            }
            let nid = keys.len() as u32;
            index.insert(key.clone(), nid);
            keys.push(key);
            dist.push(d + 1);
            parent.push(Some(id));
            queue.push_back(nid);
        }
    }
    Ok(DistanceMap { params, radius, keys, dist, parent, index })
}

/// One element where the computed length disagrees with the BFS
/// distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricMismatch {
    pub key: String,
    pub bfs_distance: u32,
    pub computed_length: u64,
}

/// Compares the weight-table length against the BFS distance for every
/// ball element; empty means the metric is verified on this ball.
pub fn verify_metric(ball: &DistanceMap) -> Result<Vec<MetricMismatch>> {
    verify_metric_with(ball, &WeightTable::new(ball.params()))
}

/// Same as [`verify_metric`] but with a caller-supplied table, so a
/// deliberately corrupted table can prove the harness detects errors.
pub fn verify_metric_with(ball: &DistanceMap, table: &WeightTable) -> Result<Vec<MetricMismatch>> {
    let mut out = Vec::new();
    for (key, d) in ball.entries() {
        let diagram = TreePairDiagram::parse(key)?;
        let len = table.length_report(&diagram)?.total;
        if len != u64::from(d) {
            out.push(MetricMismatch {
                key: key.to_string(),
                bfs_distance: d,
                computed_length: len,
            });
        }
    }
    Ok(out)
}

/// All dead ends in the ball interior: elements w with |w| ≤ radius − 1
/// such that every one-letter extension has length ≤ |w|. Lengths of
/// extensions come from the ball, falling back to the weight table for
/// anything outside it.
pub fn find_dead_ends(ball: &DistanceMap) -> Result<Vec<String>> {
    let params = ball.params();
    let table = WeightTable::new(params);
    let letter_diags: Vec<TreePairDiagram> = standard_letters(params)
        .into_iter()
        .map(|l| letter_diagram(params, l))
        .collect();
    let mut out = Vec::new();
    for (key, d) in ball.entries() {
        if d + 1 > ball.radius {
            continue;
        }
        let w = TreePairDiagram::parse(key)?;
        let mut is_dead_end = true;
        for ld in &letter_diags {
            let prod = w.multiply(ld);
            let len = match ball.distance(&prod.to_string()) {
                Some(d2) => u64::from(d2),
                None => table.length_report(&prod)?.total,
            };
            if len > u64::from(d) {
                is_dead_end = false;
                break;
            }
        }
        if is_dead_end {
            out.push(key.to_string());
        }
    }
    Ok(out)
}

/// Result of the exhaustive depth search at a dead end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthResult {
    /// Some single letter already increases the length.
    NotADeadEnd,
    /// Shortest escaping product has depth+1 letters.
    Depth(u32),
    /// No escape found with up to max_depth+1 letters.
    ExceedsMax,
}

/// Depth of a dead end: the smallest m such that some product of m+1
/// letters increases the length, found by exhaustive level-by-level
/// search with canonical-key deduplication.
pub fn dead_end_depth(w: &TreePairDiagram, max_depth: u32) -> Result<DepthResult> {
    let params = w.params();
    let table = WeightTable::new(params);
    let letter_diags: Vec<TreePairDiagram> = standard_letters(params)
        .into_iter()
        .map(|l| letter_diagram(params, l))
        .collect();
    let w = w.reduce();
    let base = table.length_report(&w)?.total;
    let mut seen: HashSet<String> = HashSet::from([w.to_string()]);
    let mut level = vec![w];
    for l in 1..=max_depth + 1 {
        let mut next = Vec::new();
        for x in &level {
            for ld in &letter_diags {
                let prod = x.multiply(ld);
                let key = prod.to_string();
                if !seen.insert(key) {
                    continue;
                }
                if table.length_report(&prod)?.total > base {
                    return Ok(if l == 1 {
                        DepthResult::NotADeadEnd
                    } else {
                        DepthResult::Depth(l - 1)
                    });
                }
                next.push(prod);
            }
        }
        level = next;
    }
    Ok(DepthResult::ExceedsMax)
}

/// Greedy geodesic from the identity to w under the standard letter
/// order: repeatedly take the first letter that shortens w by one.
pub fn extract_geodesic(w: &TreePairDiagram) -> Result<GroupWord> {
    extract_geodesic_with_order(w, &standard_letters(w.params()))
}

/// Greedy geodesic with a caller-chosen letter preference order; used
/// to sample distinct geodesics to the same element.
pub fn extract_geodesic_with_order(
    w: &TreePairDiagram,
    order: &[GeneratorLetter],
) -> Result<GroupWord> {
    let params = w.params();
    let table = WeightTable::new(params);
    let letter_diags: Vec<(GeneratorLetter, TreePairDiagram)> = order
        .iter()
        .map(|&g| (g, letter_diagram(params, g)))
        .collect();
    let mut current = w.reduce();
    let mut len = table.length_report(&current)?.total;
    let mut descent = Vec::new();
    while len > 0 {
        let mut found = None;
        for (g, ld) in &letter_diags {
            let prod = current.multiply(ld);
            let l2 = table.length_report(&prod)?.total;
            if l2 + 1 == len {
                found = Some((*g, prod, l2));
                break;
            }
        }
        let Some((g, prod, l2)) = found else {
            return Err(Error::Internal(format!(
                "no letter shortens {current}; the metric is broken"
            )));
        };
        descent.push(g);
        current = prod;
        len = l2;
    }
    // w * d_1 * ... * d_k = identity, so w = d_k^-1 ... d_1^-1.
    Ok(GroupWord::new(
        descent.into_iter().rev().map(|g| g.inverted()).collect(),
    ))
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut items = items.to_vec();
    let n = items.len();
    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; n];
    out.push(items.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            out.push(items.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Letter preference orders used to sample geodesics: every permutation
/// when the alphabet is small (p = 1), otherwise all rotations of the
/// standard order and of its reverse.
pub fn geodesic_sampling_orders(params: GroupParams) -> Vec<Vec<GeneratorLetter>> {
    let base = standard_letters(params);
    if base.len() <= 4 {
        return permutations(&base);
    }
    let mut out = Vec::new();
    let mut rev = base.clone();
    rev.reverse();
    for src in [&base, &rev] {
        for r in 0..src.len() {
            let mut o = src.clone();
            o.rotate_left(r);
            out.push(o);
        }
    }
    out
}

fn prefix_diagrams(params: GroupParams, w: &GroupWord) -> Vec<TreePairDiagram> {
    let mut out = Vec::with_capacity(w.len() + 1);
    let mut acc = TreePairDiagram::identity(params);
    out.push(acc.clone());
    for &l in &w.letters {
        acc = acc.multiply(&letter_diagram(params, l));
        out.push(acc.clone());
    }
    out
}

/// Minimum, over sampled geodesic pairs to u and to v, of the maximum
/// synchronous distance between the two paths (the shorter path waits
/// at its endpoint). Requires 0 < d(u,v) ≤ 2, the separation of the
/// one-letter forks this probe is made for. Distances are resolved
/// inside the ball when one is supplied, otherwise by the weight table.
pub fn fellow_traveller_divergence(
    u: &TreePairDiagram,
    v: &TreePairDiagram,
    ball: Option<&DistanceMap>,
) -> Result<u64> {
    assert_eq!(u.params(), v.params(), "elements from different groups");
    let params = u.params();
    let table = WeightTable::new(params);
    let d_uv = table.length_report(&u.inverse().multiply(v))?.total;
    if d_uv == 0 || d_uv > 2 {
        return Err(Error::Precondition(format!(
            "divergence needs 0 < d(u,v) <= 2, got {d_uv}"
        )));
    }

    let mut geodesics_u = Vec::new();
    let mut geodesics_v = Vec::new();
    let mut seen_u = HashSet::new();
    let mut seen_v = HashSet::new();
    for order in geodesic_sampling_orders(params) {
        let gu = extract_geodesic_with_order(u, &order)?;
        if seen_u.insert(gu.to_string()) {
            geodesics_u.push(prefix_diagrams(params, &gu));
        }
        let gv = extract_geodesic_with_order(v, &order)?;
        if seen_v.insert(gv.to_string()) {
            geodesics_v.push(prefix_diagrams(params, &gv));
        }
    }

    let mut best: Option<u64> = None;
    for pu in &geodesics_u {
        for pv in &geodesics_v {
            let steps = pu.len().max(pv.len());
            let mut worst = 0u64;
            for t in 0..steps {
                let a = &pu[t.min(pu.len() - 1)];
                let b = &pv[t.min(pv.len() - 1)];
                let diff = a.inverse().multiply(b);
                let d = match ball.and_then(|m| m.distance(&diff.to_string())) {
                    Some(d) => u64::from(d),
                    None => table.length_report(&diff)?.total,
                };
                worst = worst.max(d);
            }
            best = Some(match best {
                Some(b) => b.min(worst),
                None => worst,
            });
        }
    }
    best.ok_or_else(|| Error::Internal("no geodesic pair sampled".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::CaretType;
    use crate::diagram::{evaluate_word, make_generator};
    use crate::words::GroupWord;

    fn params(p: usize) -> GroupParams {
        GroupParams::new(p).unwrap()
    }

    #[test]
    fn radius_zero_ball() {
        let ball = bfs_ball(params(1), 0, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(ball.len(), 1);
        assert_eq!(ball.sphere_sizes(), vec![1]);
        assert_eq!(ball.distance("p=1;neg=.;pos=."), Some(0));
    }

    #[test]
    fn radius_one_ball_p1() {
        let ball = bfs_ball(params(1), 1, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(ball.sphere_sizes(), vec![1, 4]);
        for i in 0..=1 {
            let g = make_generator(params(1), i);
            assert_eq!(ball.distance(&g.canonical_key()), Some(1));
            assert_eq!(ball.distance(&g.inverse().canonical_key()), Some(1));
        }
    }

    #[test]
    fn parent_links_are_one_letter_geodesics() {
        let ball = bfs_ball(params(1), 3, DEFAULT_NODE_CAP).unwrap();
        for (key, d) in ball.entries() {
            let geo = ball.geodesic_from_parents(key).unwrap();
            assert_eq!(geo.len() as u32, d);
            let evaluated = evaluate_word(params(1), &geo);
            assert_eq!(evaluated.canonical_key(), key);
        }
    }

    #[test]
    fn cap_is_enforced() {
        match bfs_ball(params(1), 3, 10) {
            Err(Error::CapExceeded { cap: 10, .. }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn metric_matches_bfs_on_small_balls() {
        let ball = bfs_ball(params(1), 4, DEFAULT_NODE_CAP).unwrap();
        assert!(verify_metric(&ball).unwrap().is_empty());
        let ball2 = bfs_ball(params(2), 3, DEFAULT_NODE_CAP).unwrap();
        assert!(verify_metric(&ball2).unwrap().is_empty());
    }

    #[test]
    fn corrupted_table_is_detected() {
        let ball = bfs_ball(params(1), 3, DEFAULT_NODE_CAP).unwrap();
        let mut table = WeightTable::new(params(1));
        table.override_weight(CaretType::LL, CaretType::REmpty, 2);
        assert!(!verify_metric_with(&ball, &table).unwrap().is_empty());
    }

    #[test]
    fn save_load_roundtrip() {
        let ball = bfs_ball(params(1), 3, DEFAULT_NODE_CAP).unwrap();
        let path = std::env::temp_dir().join("thompson-metric-test-ball.tsv");
        ball.save(&path).unwrap();
        let loaded = DistanceMap::load(&path).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(loaded.len(), ball.len());
        assert_eq!(loaded.radius(), ball.radius());
        assert_eq!(loaded.sphere_sizes(), ball.sphere_sizes());
        for (key, d) in ball.entries() {
            assert_eq!(loaded.distance(key), Some(d));
            assert_eq!(loaded.parent_key(key), ball.parent_key(key));
        }
    }

    #[test]
    fn no_dead_ends_in_tiny_balls() {
        let ball = bfs_ball(params(1), 4, DEFAULT_NODE_CAP).unwrap();
        assert!(find_dead_ends(&ball).unwrap().is_empty());
    }

    #[test]
    fn generator_is_not_a_dead_end() {
        let g = make_generator(params(1), 0);
        assert_eq!(dead_end_depth(&g, 3).unwrap(), DepthResult::NotADeadEnd);
    }

    #[test]
    fn geodesic_of_identity_is_empty() {
        let id = TreePairDiagram::identity(params(1));
        assert!(extract_geodesic(&id).unwrap().is_empty());
    }

    #[test]
    fn geodesic_of_power_has_matching_length() {
        let w = evaluate_word(params(1), &GroupWord::parse("0 0 0").unwrap());
        let geo = extract_geodesic(&w).unwrap();
        assert_eq!(geo.len(), 3);
        assert_eq!(
            evaluate_word(params(1), &geo).canonical_key(),
            w.canonical_key()
        );
    }

    #[test]
    fn geodesics_evaluate_back_to_their_targets() {
        let ball = bfs_ball(params(2), 2, DEFAULT_NODE_CAP).unwrap();
        for (key, d) in ball.entries() {
            let w = TreePairDiagram::parse(key).unwrap();
            let geo = extract_geodesic(&w).unwrap();
            assert_eq!(geo.len() as u32, d, "{key}");
            assert_eq!(evaluate_word(params(2), &geo).canonical_key(), key);
        }
    }

    #[test]
    fn divergence_preconditions() {
        let pr = params(1);
        let x0 = make_generator(pr, 0);
        assert!(fellow_traveller_divergence(&x0, &x0, None).is_err());
        let far = evaluate_word(pr, &GroupWord::parse("0 0 0").unwrap());
        let id = TreePairDiagram::identity(pr);
        assert!(fellow_traveller_divergence(&id, &far, None).is_err());
    }

    #[test]
    fn divergence_of_shared_prefix_fork_is_small() {
        let pr = params(1);
        let w = evaluate_word(pr, &GroupWord::parse("0 0").unwrap());
        let u = w.multiply(&make_generator(pr, 0));
        let d = fellow_traveller_divergence(&u, &w, None).unwrap();
        assert_eq!(d, 1);
    }

    #[test]
    fn divergence_of_opposite_fork() {
        let pr = params(1);
        let x0 = make_generator(pr, 0);
        let d = fellow_traveller_divergence(&x0, &x0.inverse(), None).unwrap();
        assert_eq!(d, 2);
    }
}
