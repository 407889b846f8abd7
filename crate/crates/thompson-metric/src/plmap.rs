//! Exact piecewise-linear homeomorphisms of [0,1].
//!
//! A tree-pair diagram denotes the map sending the i-th leaf interval of
//! the negative tree affinely onto the i-th leaf interval of the positive
//! tree. These maps form an independent model of the group: breakpoints
//! lie in Z[1/N], slopes are integer powers of N, multiplication is
//! function composition. Everything here is exact rational arithmetic,
//! no floating point, so map equality is a trustworthy oracle for
//! element equality.

use crate::diagram::TreePairDiagram;
use crate::error::{Error, Result};
use crate::tree::{leaf_intervals, GroupParams};
use num::{BigInt, BigRational, Integer, One, Zero};
use std::fmt;

type Point = (BigRational, BigRational);

/// A piecewise-linear homeomorphism of [0,1], stored as its normalized
/// breakpoint list: endpoints (0,0) and (1,1) always present, strictly
/// increasing in both coordinates, no collinear interior point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLHomeomorphism {
    base: usize,
    breakpoints: Vec<Point>,
}

#[cfg(test)]
fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// True iff x lies in Z[1/n]: the reduced denominator has no prime
/// factor outside n.
fn in_base_ring(x: &BigRational, n: usize) -> bool {
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

fn is_pure_power(x: &BigInt, n: &BigInt) -> bool {
    let mut x = x.clone();
    while !x.is_one() && (&x % n).is_zero() {
        x /= n;
    }
    x.is_one()
}

/// True iff the positive rational is n^k for some integer k.
fn is_power_of(slope: &BigRational, n: usize) -> bool {
    if slope <= &BigRational::zero() {
        return false;
    }
    let n = BigInt::from(n);
    if slope.denom().is_one() {
        is_pure_power(slope.numer(), &n)
    } else if slope.numer().is_one() {
        is_pure_power(slope.denom(), &n)
    } else {
        false
    }
}

/// Drops interior points collinear with their neighbours. Input must be
/// sorted with distinct x coordinates.
fn merge_collinear(pts: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts {
        while out.len() >= 2 {
            let a = &out[out.len() - 2];
            let b = &out[out.len() - 1];
            // Collinear iff (b.y-a.y)(p.x-b.x) == (p.y-b.y)(b.x-a.x).
            let lhs = (&b.1 - &a.1) * (&p.0 - &b.0);
            let rhs = (&p.1 - &b.1) * (&b.0 - &a.0);
            if lhs == rhs {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

fn validate(base: usize, pts: &[Point]) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidDiagram(msg));
    if pts.len() < 2 {
        return bad("a map needs at least the two endpoint breakpoints".into());
    }
    let zero = BigRational::zero();
    let one = BigRational::one();
    if pts[0] != (zero.clone(), zero) {
        return bad("first breakpoint must be (0,0)".into());
    }
    if pts[pts.len() - 1] != (one.clone(), one) {
        return bad("last breakpoint must be (1,1)".into());
    }
    for w in pts.windows(2) {
        if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
            return bad(format!(
                "breakpoints not strictly increasing near x = {}",
                w[1].0
            ));
        }
        let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
        if !is_power_of(&slope, base) {
            return bad(format!("slope {slope} is not a power of {base}"));
        }
    }
    for (x, y) in pts {
        if !in_base_ring(x, base) || !in_base_ring(y, base) {
            return bad(format!("breakpoint ({x},{y}) is outside Z[1/{base}]"));
        }
    }
    Ok(())
}

impl PLHomeomorphism {
    /// Builds a map from raw breakpoints, normalizing and checking every
    /// invariant.
    pub fn from_breakpoints(params: GroupParams, pts: Vec<Point>) -> Result<Self> {
        let base = params.arity();
        let pts = merge_collinear(pts);
        validate(base, &pts)?;
        Ok(PLHomeomorphism { base, breakpoints: pts })
    }

    /// Internal constructor for points produced by closed operations;
    /// the invariants are re-checked because this module is an oracle.
    fn from_exact(base: usize, pts: Vec<Point>) -> Self {
        let pts = merge_collinear(pts);
        validate(base, &pts).expect("operation broke a map invariant");
        PLHomeomorphism { base, breakpoints: pts }
    }

    pub fn identity(params: GroupParams) -> Self {
        let z = BigRational::zero();
        let o = BigRational::one();
        PLHomeomorphism {
            base: params.arity(),
            breakpoints: vec![(z.clone(), z), (o.clone(), o)],
        }
    }

    /// Slope base N; breakpoints lie in Z[1/N] and slopes in <N>.
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn breakpoints(&self) -> &[Point] {
        &self.breakpoints
    }

    pub fn is_identity(&self) -> bool {
        self.breakpoints.len() == 2
    }

    /// Evaluates the map at a point of [0,1].
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        assert!(
            *x >= BigRational::zero() && *x <= BigRational::one(),
            "evaluation outside [0,1]"
        );
        let idx = self.breakpoints.partition_point(|(bx, _)| bx <= x);
        if idx == 0 {
            return self.breakpoints[0].1.clone();
        }
        let (x0, y0) = &self.breakpoints[idx - 1];
        if x == x0 {
            return y0.clone();
        }
        let (x1, y1) = &self.breakpoints[idx];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Exact composition self ∘ other (apply `other` first), matching
    /// diagram multiplication order.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.base, other.base, "maps over different slope bases");
        let other_inv = other.invert();
        let mut xs: Vec<BigRational> = other
            .breakpoints
            .iter()
            .map(|(x, _)| x.clone())
            .collect();
        for (x, _) in &self.breakpoints {
            xs.push(other_inv.evaluate(x));
        }
        xs.sort();
        xs.dedup();
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = self.evaluate(&other.evaluate(&x));
                (x, y)
            })
            .collect();
        Self::from_exact(self.base, pts)
    }

    /// The inverse map: breakpoints with coordinates swapped.
    pub fn invert(&self) -> Self {
        let pts = self
            .breakpoints
            .iter()
            .map(|(x, y)| (y.clone(), x.clone()))
            .collect();
        Self::from_exact(self.base, pts)
    }

    /// Exact equality of normalized breakpoint lists.
    pub fn map_equals(&self, other: &Self) -> bool {
        self == other
    }
}

impl fmt::Display for PLHomeomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (x, y) in &self.breakpoints {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "({x},{y})")?;
        }
        Ok(())
    }
}

/// The piecewise-linear map denoted by a tree-pair diagram. Reduction
/// does not change the map, so reduced and unreduced diagrams of the
/// same element agree here.
pub fn diagram_to_map(x: &TreePairDiagram) -> PLHomeomorphism {
    let params = x.params();
    let neg = leaf_intervals(x.neg(), params);
    let pos = leaf_intervals(x.pos(), params);
    debug_assert_eq!(neg.len(), pos.len());
    let mut pts: Vec<Point> = neg
        .iter()
        .zip(pos.iter())
        .map(|(a, b)| (a.low.clone(), b.low.clone()))
        .collect();
    pts.push((BigRational::one(), BigRational::one()));
    PLHomeomorphism::from_exact(params.arity(), pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{evaluate_word, letter_diagram, make_generator};
    use crate::words::{finite_presentation_relators, GroupWord};

    fn params(p: usize) -> GroupParams {
        GroupParams::new(p).unwrap()
    }

    #[test]
    fn identity_map_shape() {
        let id = PLHomeomorphism::identity(params(1));
        assert_eq!(id.to_string(), "(0,0) (1,1)");
        assert!(id.is_identity());
        let d = TreePairDiagram::identity(params(1));
        assert!(diagram_to_map(&d).map_equals(&id));
    }

    #[test]
    fn x0_map_at_p1() {
        let g = make_generator(params(1), 0);
        let m = diagram_to_map(&g);
        assert_eq!(m.to_string(), "(0,0) (1/4,1/2) (1/2,3/4) (1,1)");
        // Three pieces with slopes 2, 1, 1/2.
        let slopes: Vec<BigRational> = m
            .breakpoints()
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect();
        let mut sorted = slopes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![rat(1, 2), rat(1, 1), rat(2, 1)]);
    }

    #[test]
    fn reduction_preserves_map() {
        let g = make_generator(params(1), 0);
        let unreduced = g.multiply_unreduced(&g.inverse());
        assert!(!unreduced.is_reduced());
        assert!(diagram_to_map(&unreduced).map_equals(&PLHomeomorphism::identity(params(1))));
    }

    #[test]
    fn compose_with_identity_and_inverse() {
        let g = make_generator(params(2), 1);
        let m = diagram_to_map(&g);
        let id = PLHomeomorphism::identity(params(2));
        assert!(m.compose(&id).map_equals(&m));
        assert!(id.compose(&m).map_equals(&m));
        assert!(m.compose(&m.invert()).map_equals(&id));
        assert!(m.invert().invert().map_equals(&m));
    }

    #[test]
    fn invert_matches_diagram_inverse() {
        for ws in ["0 1", "1 0^-1 1", "0 0 1"] {
            let d = evaluate_word(params(1), &GroupWord::parse(ws).unwrap());
            assert!(diagram_to_map(&d)
                .invert()
                .map_equals(&diagram_to_map(&d.inverse())));
        }
    }

    #[test]
    fn composition_matches_multiplication() {
        let pr = params(2);
        let words = ["0 1", "2 1^-1", "0^-1 2 0", "1 1"];
        for a in &words {
            for b in &words {
                let da = evaluate_word(pr, &GroupWord::parse(a).unwrap());
                let db = evaluate_word(pr, &GroupWord::parse(b).unwrap());
                let lhs = diagram_to_map(&da.multiply(&db));
                let rhs = diagram_to_map(&da).compose(&diagram_to_map(&db));
                assert!(lhs.map_equals(&rhs), "{a} * {b}");
            }
        }
    }

    #[test]
    fn relators_compose_to_identity_map() {
        for p in 1..=2 {
            let pr = params(p);
            let id = PLHomeomorphism::identity(pr);
            for rel in finite_presentation_relators(p) {
                let m = rel
                    .letters
                    .iter()
                    .map(|&l| diagram_to_map(&letter_diagram(pr, l)))
                    .fold(id.clone(), |acc, m| acc.compose(&m));
                assert!(m.map_equals(&id), "relator {rel}");
            }
        }
    }

    #[test]
    fn map_equality_matches_canonical_keys() {
        let pr = params(1);
        let words = ["0", "1", "0 1", "1 0", "0 1 0^-1", "0 0 0^-1"];
        let items: Vec<_> = words
            .iter()
            .map(|w| evaluate_word(pr, &GroupWord::parse(w).unwrap()))
            .collect();
        for a in &items {
            for b in &items {
                assert_eq!(
                    diagram_to_map(a).map_equals(&diagram_to_map(b)),
                    a.canonical_key() == b.canonical_key()
                );
            }
        }
        let x0 = diagram_to_map(&make_generator(pr, 0));
        let x1 = diagram_to_map(&make_generator(pr, 1));
        assert!(!x0.map_equals(&x1));
    }

    #[test]
    fn from_breakpoints_rejects_bad_maps() {
        let pr = params(1);
        let z = || BigRational::zero();
        let o = || BigRational::one();
        // Breakpoint outside Z[1/2].
        assert!(PLHomeomorphism::from_breakpoints(
            pr,
            vec![(z(), z()), (rat(1, 3), rat(1, 2)), (o(), o())]
        )
        .is_err());
        // Slope 3 is not a power of 2.
        assert!(PLHomeomorphism::from_breakpoints(
            pr,
            vec![(z(), z()), (rat(1, 4), rat(3, 4)), (o(), o())]
        )
        .is_err());
        // Not monotone.
        assert!(PLHomeomorphism::from_breakpoints(
            pr,
            vec![(z(), z()), (rat(1, 2), rat(3, 4)), (rat(3, 4), rat(1, 2)), (o(), o())]
        )
        .is_err());
        // Missing endpoint.
        assert!(PLHomeomorphism::from_breakpoints(pr, vec![(z(), z())]).is_err());
        // Extra collinear point is normalized away, not an error.
        let m = PLHomeomorphism::from_breakpoints(
            pr,
            vec![(z(), z()), (rat(1, 2), rat(1, 2)), (o(), o())],
        )
        .unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn evaluate_interpolates() {
        let g = make_generator(params(1), 0);
        let m = diagram_to_map(&g);
        assert_eq!(m.evaluate(&rat(1, 8)), rat(1, 4));
        assert_eq!(m.evaluate(&rat(1, 4)), rat(1, 2));
        assert_eq!(m.evaluate(&rat(3, 8)), rat(5, 8));
        assert_eq!(m.evaluate(&rat(3, 4)), rat(7, 8));
        assert_eq!(m.evaluate(&BigRational::zero()), BigRational::zero());
        assert_eq!(m.evaluate(&BigRational::one()), BigRational::one());
    }
}
