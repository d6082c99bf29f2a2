//! Finite point sets, projections and fibers.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};

/// Duplicate-free list of `dim`-coordinate points.
///
/// Input order is kept for display, but equality is set equality.
#[derive(Debug, Clone)]
pub struct PointSet<E> {
    dim: usize,
    points: Vec<Vec<E>>,
}

impl<E: Clone + Eq + Ord + Hash + Debug> PointSet<E> {
    pub fn new(dim: usize, points: Vec<Vec<E>>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if p.len() != dim {
                return Err(Error::ArityMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(format!("{p:?}")));
            }
        }
        Ok(PointSet { dim, points })
    }

    pub fn empty(dim: usize) -> Self {
        PointSet {
            dim,
            points: Vec::new(),
        }
    }

    /// Build from an iterator, silently dropping repeated points.
    pub fn from_iter_dedup<I: IntoIterator<Item = Vec<E>>>(dim: usize, points: I) -> Self {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for p in points {
            debug_assert_eq!(p.len(), dim);
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
        PointSet { dim, points: out }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<E>] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vec<E>> {
        self.points.iter()
    }

    pub fn contains(&self, p: &[E]) -> bool {
        self.points.iter().any(|q| q.as_slice() == p)
    }

    /// `pi_l(S)`: keep the first `l` coordinates and remove duplicates.
    pub fn project(&self, l: usize) -> Result<Self> {
        if l > self.dim {
            return Err(Error::OutOfRange {
                what: "projection level",
                value: l,
                lo: 0,
                hi: self.dim,
            });
        }
        Ok(self.project_unchecked(l))
    }

    pub(crate) fn project_unchecked(&self, l: usize) -> Self {
        Self::from_iter_dedup(l, self.points.iter().map(|p| p[..l].to_vec()))
    }

    /// `S[alpha]`: the points whose first `dim - 1` coordinates equal `alpha`.
    pub fn fiber(&self, alpha: &[E]) -> Result<Vec<Vec<E>>> {
        if alpha.len() + 1 != self.dim {
            return Err(Error::ArityMismatch {
                expected: self.dim.saturating_sub(1),
                found: alpha.len(),
            });
        }
        Ok(self
            .points
            .iter()
            .filter(|p| p[..alpha.len()] == *alpha)
            .cloned()
            .collect())
    }

    /// Number of points sharing the given prefix (of any length up to `dim`).
    pub fn count_prefix(&self, prefix: &[E]) -> usize {
        self.points
            .iter()
            .filter(|p| p[..prefix.len()] == *prefix)
            .count()
    }

    /// Points over `alpha`, with the first `alpha.len()` coordinates dropped.
    pub fn slice(&self, alpha: &[E]) -> Self {
        let l = alpha.len();
        PointSet {
            dim: self.dim - l,
            points: self
                .points
                .iter()
                .filter(|p| p[..l] == *alpha)
                .map(|p| p[l..].to_vec())
                .collect(),
        }
    }

    /// Fiber sizes over each prefix of length `dim - 1`.
    pub fn fiber_counts(&self) -> BTreeMap<Vec<E>, usize> {
        let mut counts = BTreeMap::new();
        for p in &self.points {
            *counts.entry(p[..self.dim - 1].to_vec()).or_insert(0) += 1;
        }
        counts
    }

    pub fn filter<P: FnMut(&[E]) -> bool>(&self, mut keep: P) -> Self {
        PointSet {
            dim: self.dim,
            points: self.points.iter().filter(|p| keep(p)).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let drop: HashSet<&[E]> = other.points.iter().map(|p| p.as_slice()).collect();
        self.filter(|p| !drop.contains(p))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_iter_dedup(
            self.dim,
            self.points.iter().chain(other.points.iter()).cloned(),
        )
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let keep: HashSet<&[E]> = other.points.iter().map(|p| p.as_slice()).collect();
        self.filter(|p| keep.contains(p))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        let big: HashSet<&Vec<E>> = other.points.iter().collect();
        self.points.iter().all(|p| big.contains(p))
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// Points in ascending coordinate order, for deterministic output.
    pub fn sorted(&self) -> Vec<Vec<E>> {
        let set: BTreeSet<&Vec<E>> = self.points.iter().collect();
        set.into_iter().cloned().collect()
    }

    pub fn render<F: Field<Elem = E>>(&self, k: &F) -> Vec<Vec<String>> {
        self.sorted()
            .iter()
            .map(|p| p.iter().map(|c| k.render(c)).collect())
            .collect()
    }
}

impl<E: Clone + Eq + Ord + Hash + Debug> PartialEq for PointSet<E> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.len() == other.len() && self.is_subset(other)
    }
}

impl<E: Clone + Eq + Ord + Hash + Debug> Eq for PointSet<E> {}

/// A scalar in a point document: either a string in scalar syntax or a
/// bare JSON integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawScalar {
    Int(i64),
    Text(String),
}

impl RawScalar {
    fn as_text(&self) -> String {
        match self {
            RawScalar::Int(v) => v.to_string(),
            RawScalar::Text(s) => s.clone(),
        }
    }
}

/// JSON document `{"field": "Q" | "Fp:<p>", "n": <int>, "points": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetDocument {
    pub field: FieldSpec,
    pub n: usize,
    pub points: Vec<Vec<RawScalar>>,
}

impl PointSetDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn from_points<F: Field>(k: &F, points: &PointSet<F::Elem>) -> Self {
        PointSetDocument {
            field: k.spec(),
            n: points.dim(),
            points: points
                .points()
                .iter()
                .map(|p| p.iter().map(|c| RawScalar::Text(k.render(c))).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Parse and validate the points over `k`, which must match `self.field`.
    pub fn load<F: Field>(&self, k: &F) -> Result<PointSet<F::Elem>> {
        if k.spec() != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: k.spec().to_string(),
            });
        }
        if self.points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let mut parsed = Vec::with_capacity(self.points.len());
        for raw in &self.points {
            if raw.len() != self.n {
                return Err(Error::ArityMismatch {
                    expected: self.n,
                    found: raw.len(),
                });
            }
            let p = raw
                .iter()
                .map(|c| k.parse(&c.as_text()))
                .collect::<Result<Vec<_>>>()?;
            parsed.push(p);
        }
        let set = PointSet::new(self.n, parsed)?;
        if let Some(q) = self.field.cardinality() {
            if q <= set.len() as u64 {
                log::warn!(
                    "field size {q} does not exceed the number of points {}",
                    set.len()
                );
            }
        }
        Ok(set)
    }
}

/// Parse a whole JSON point-set document over a known field.
pub fn load_point_set<F: Field>(text: &str, k: &F) -> Result<PointSet<F::Elem>> {
    PointSetDocument::from_json(text)?.load(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use num_rational::BigRational;

    const E1: &str = r#"{"field": "Q", "n": 2, "points": [["0","0"],["0","1"],["1","0"]]}"#;
    const E2: &str =
        r#"{"field": "Q", "n": 3, "points": [["0","0","0"],["0","0","1"],["0","1","0"],["1","0","0"]]}"#;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn pts(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn loads_fixtures() {
        assert_eq!(load_point_set(E1, &Rationals).unwrap().len(), 3);
        assert_eq!(load_point_set(E2, &Rationals).unwrap().len(), 4);
    }

    #[test]
    fn load_rejects_bad_documents() {
        let dup = r#"{"field": "Q", "n": 2, "points": [["0","0"],["0","0"]]}"#;
        assert!(matches!(
            load_point_set(dup, &Rationals),
            Err(Error::DuplicatePoint(_))
        ));
        let arity = r#"{"field": "Q", "n": 2, "points": [["0","0"],["0"]]}"#;
        assert!(matches!(
            load_point_set(arity, &Rationals),
            Err(Error::ArityMismatch { .. })
        ));
        let bad = r#"{"field": "Q", "n": 1, "points": [["x"]]}"#;
        assert!(matches!(
            load_point_set(bad, &Rationals),
            Err(Error::MalformedScalar(_))
        ));
        let empty = r#"{"field": "Q", "n": 1, "points": []}"#;
        assert_eq!(load_point_set(empty, &Rationals), Err(Error::EmptyPointSet));
        let bad_field = r#"{"field": "Fp:8", "n": 1, "points": [[1]]}"#;
        assert!(PointSetDocument::from_json(bad_field).is_err());
    }

    #[test]
    fn integer_scalars_and_reduction() {
        let doc = PointSetDocument::from_json(r#"{"field": "Fp:7", "n": 1, "points": [[-1], ["9"]]}"#)
            .unwrap();
        let k = crate::field::PrimeField::new(7).unwrap();
        let set = doc.load(&k).unwrap();
        assert_eq!(set.points(), &[vec![6u64], vec![2u64]]);
        let clash = PointSetDocument::from_json(r#"{"field": "Fp:7", "n": 1, "points": [[1], [8]]}"#)
            .unwrap();
        assert!(matches!(clash.load(&k), Err(Error::DuplicatePoint(_))));
    }

    #[test]
    fn project_examples() {
        let e2 = load_point_set(E2, &Rationals).unwrap();
        let p2 = e2.project(2).unwrap();
        assert_eq!(p2, PointSet::new(2, pts(&[&[0, 0], &[0, 1], &[1, 0]])).unwrap());
        let e1 = load_point_set(E1, &Rationals).unwrap();
        assert_eq!(e1.project(1).unwrap(), PointSet::new(1, pts(&[&[0], &[1]])).unwrap());
        assert_eq!(e2.project(3).unwrap(), e2);
        assert!(e2.project(4).is_err());
    }

    #[test]
    fn fiber_examples() {
        let e2 = load_point_set(E2, &Rationals).unwrap();
        assert_eq!(e2.fiber(&[q(0), q(0)]).unwrap(), pts(&[&[0, 0, 0], &[0, 0, 1]]));
        let e1 = load_point_set(E1, &Rationals).unwrap();
        assert_eq!(e1.fiber(&[q(0)]).unwrap(), pts(&[&[0, 0], &[0, 1]]));
        assert!(e1.fiber(&[q(5)]).unwrap().is_empty());
        assert!(e1.fiber(&[q(0), q(0)]).is_err());
    }

    #[test]
    fn document_roundtrip() {
        let e2 = load_point_set(E2, &Rationals).unwrap();
        let doc = PointSetDocument::from_points(&Rationals, &e2);
        assert_eq!(load_point_set(&doc.to_json(), &Rationals).unwrap(), e2);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_set() -> impl Strategy<Value = PointSet<u8>> {
        (1usize..5).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0u8..3, n), 1..30)
                .prop_map(move |ps| PointSet::from_iter_dedup(n, ps))
        })
    }

    proptest! {
        #[test]
        fn fiber_sizes_sum_to_projection(s in arb_set(), l in 1usize..5) {
            prop_assume!(l <= s.dim());
            let upper = s.project(l).unwrap();
            let lower = s.project(l - 1).unwrap();
            let total: usize = lower.iter().map(|a| upper.fiber(a).unwrap().len()).sum();
            prop_assert_eq!(total, upper.len());
        }

        #[test]
        fn projections_compose(s in arb_set(), a in 0usize..5, b in 0usize..5) {
            let (lo, hi) = (a.min(b), a.max(b));
            prop_assume!(hi <= s.dim());
            prop_assert_eq!(s.project(hi).unwrap().project(lo).unwrap(), s.project(lo).unwrap());
        }
    }
}
