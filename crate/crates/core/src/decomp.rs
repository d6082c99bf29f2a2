//! Fiber-count decomposition of a point set into blocks indexed by
//! multi-indices `(i_1, ..., i_n)`.
//!
//! Level `n` scores a point by the size of its fiber in `V`. Each lower
//! level `k` scores a point by the size of its fiber in the excess set
//! `S'_k` produced by the level above. A multi-index fixes one score per
//! level; the block is the set of points attaining all of them.

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::points::PointSet;
use crate::report::{ensure, CheckReport};

/// Number of points of `sprime` (dimension `j`) sharing the first `j - 1`
/// coordinates of `y`.
pub fn fiber_score<E>(sprime: &PointSet<E>, y: &[E]) -> Result<usize>
where
    E: Clone + Eq + Ord + Hash + Debug,
{
    let j = sprime.dim();
    if j == 0 || y.len() + 1 < j {
        return Err(Error::ArityMismatch {
            expected: j.saturating_sub(1),
            found: y.len(),
        });
    }
    Ok(sprime.count_prefix(&y[..j - 1]))
}

/// All sets produced at one level `k` (2 <= k <= n) of the construction for
/// a fixed multi-index.
#[derive(Debug, Clone)]
pub struct LevelState<E> {
    /// The level `k`.
    pub level: usize,
    /// The chosen index `i_k`.
    pub index: usize,
    /// Score of every point of `V`, in the order of `V`.
    pub scores: Vec<usize>,
    /// Points of the previous block attaining `i_k`.
    pub block: PointSet<E>,
    /// Points of the previous block scoring more than `i_k`.
    pub excess_block: PointSet<E>,
    /// Points of all of `V` scoring exactly `i_k`.
    pub slab: PointSet<E>,
    /// `S_{k-1}`: projection of the points of `V` scoring at most `i_k`.
    pub s: PointSet<E>,
    /// `S'_{k-1}`: projection of the points of `V` scoring more than `i_k`.
    pub s_prime: PointSet<E>,
}

/// Scores of every point of `v` at level `k`, given `S'_k` (unused at `k = n`).
fn level_scores<E>(v: &PointSet<E>, k: usize, sprime: Option<&PointSet<E>>) -> Vec<usize>
where
    E: Clone + Eq + Ord + Hash + Debug,
{
    let reference = if k == v.dim() { v } else { sprime.expect("S'_k below the top level") };
    let counts = reference.fiber_counts();
    v.iter()
        .map(|y| counts.get(&y[..k - 1]).copied().unwrap_or(0))
        .collect()
}

fn advance<E>(
    v: &PointSet<E>,
    k: usize,
    index: usize,
    scores: Vec<usize>,
    prev_block: &PointSet<E>,
) -> LevelState<E>
where
    E: Clone + Eq + Ord + Hash + Debug,
{
    let score_of = |target: &[E]| -> usize {
        // prev_block is a subset of v, so the lookup always succeeds
        let pos = v.iter().position(|p| p.as_slice() == target).expect("point of V");
        scores[pos]
    };
    let block = prev_block.filter(|p| score_of(p) == index);
    let excess_block = prev_block.filter(|p| score_of(p) > index);
    let pick = |pred: &dyn Fn(usize) -> bool| {
        PointSet::from_iter_dedup(
            v.dim(),
            v.iter()
                .zip(&scores)
                .filter(|(_, &s)| pred(s))
                .map(|(p, _)| p.clone()),
        )
    };
    let slab = pick(&|s| s == index);
    let s = pick(&|s| s <= index).project_unchecked(k - 1);
    let s_prime = pick(&|s| s > index).project_unchecked(k - 1);
    LevelState {
        level: k,
        index,
        scores,
        block,
        excess_block,
        slab,
        s,
        s_prime,
    }
}

/// The construction run for one multi-index `(i_2, ..., i_n)`, whether or
/// not its block is empty.
#[derive(Debug, Clone)]
pub struct Trace<E> {
    /// Level states from `k = n` down to `k = 2`.
    pub levels: Vec<LevelState<E>>,
}

impl<E: Clone + Eq + Ord + Hash + Debug> Trace<E> {
    pub fn level(&self, k: usize) -> &LevelState<E> {
        let n = self.levels[0].level;
        &self.levels[n - k]
    }

    pub fn block(&self) -> &PointSet<E> {
        &self.levels.last().expect("at least one level").block
    }

    /// `S'_j` for `1 <= j <= n - 1`.
    pub fn s_prime(&self, j: usize) -> &PointSet<E> {
        &self.level(j + 1).s_prime
    }

    /// `S_j` for `1 <= j <= n - 1`.
    pub fn s(&self, j: usize) -> &PointSet<E> {
        &self.level(j + 1).s
    }
}

/// Run the construction on `v` for the multi-index `tail = (i_2, ..., i_n)`.
pub fn trace<E>(v: &PointSet<E>, tail: &[usize]) -> Result<Trace<E>>
where
    E: Clone + Eq + Ord + Hash + Debug,
{
    let n = v.dim();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if tail.len() != n - 1 {
        return Err(Error::ArityMismatch {
            expected: n - 1,
            found: tail.len(),
        });
    }
    let mut levels: Vec<LevelState<E>> = Vec::with_capacity(n - 1);
    for k in (2..=n).rev() {
        let (prev_block, sprime) = match levels.last() {
            None => (v.clone(), None),
            Some(prev) => (prev.block.clone(), Some(&prev.s_prime)),
        };
        let scores = level_scores(v, k, sprime);
        levels.push(advance(v, k, tail[k - 2], scores, &prev_block));
    }
    Ok(Trace { levels })
}

/// One multi-index of the minimal basis, plus the families it induces.
/// The block may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexRecord<E: Clone + Eq + Ord + Hash + Debug> {
    /// `(i_1, i_2, ..., i_n)`.
    pub idx: Vec<usize>,
    /// `S_1, ..., S_{n-1}`; entry `j - 1` has dimension `j`.
    pub s: Vec<PointSet<E>>,
    /// `S'_1, ..., S'_{n-1}`.
    pub s_prime: Vec<PointSet<E>>,
    pub block: PointSet<E>,
}

impl<E: Clone + Eq + Ord + Hash + Debug> IndexRecord<E> {
    pub fn nvars(&self) -> usize {
        self.idx.len()
    }

    /// `(i_2, ..., i_n)`.
    pub fn tail(&self) -> &[usize] {
        &self.idx[1..]
    }

    fn from_trace(tr: &Trace<E>, tail: &[usize]) -> Self {
        let n = tail.len() + 1;
        let mut idx = Vec::with_capacity(n);
        idx.push(tr.s_prime(1).len());
        idx.extend_from_slice(tail);
        IndexRecord {
            idx,
            s: (1..n).map(|j| tr.s(j).clone()).collect(),
            s_prime: (1..n).map(|j| tr.s_prime(j).clone()).collect(),
            block: tr.block().clone(),
        }
    }

    pub fn to_json<F: Field<Elem = E>>(&self, k: &F) -> RecordJson {
        RecordJson {
            idx: self.idx.clone(),
            block: self.block.render(k),
            s: self.s.iter().map(|s| s.render(k)).collect(),
            s_prime: self.s_prime.iter().map(|s| s.render(k)).collect(),
        }
    }
}

/// Serialized form of an [`IndexRecord`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecordJson {
    pub idx: Vec<usize>,
    pub block: Vec<Vec<String>>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<Vec<String>>>,
    #[serde(rename = "Sprime")]
    pub s_prime: Vec<Vec<Vec<String>>>,
}

/// Every record of a point set, sorted by `(i_2, ..., i_n)` with `i_n`
/// most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition<E: Clone + Eq + Ord + Hash + Debug> {
    pub source: PointSet<E>,
    pub records: Vec<IndexRecord<E>>,
}

impl<E: Clone + Eq + Ord + Hash + Debug> Decomposition<E> {
    /// The records whose block is nonempty, in the same order. Their
    /// blocks partition the source set.
    pub fn block_records(&self) -> Vec<&IndexRecord<E>> {
        self.records.iter().filter(|r| !r.block.is_empty()).collect()
    }

    pub fn to_json<F: Field<Elem = E>>(&self, k: &F) -> Vec<RecordJson> {
        self.records.iter().map(|r| r.to_json(k)).collect()
    }
}

/// Lex key for multi-indices: the last entry is the most significant.
pub fn index_key(idx: &[usize]) -> Vec<usize> {
    idx.iter().rev().copied().collect()
}

/// Every multi-index `(i_1, ..., i_n)` with `x^idx` a minimal leading
/// monomial of `I(v)` involving `x_n`, together with its block.
pub fn enumerate_indices<E>(v: &PointSet<E>) -> Result<Decomposition<E>>
where
    E: Clone + Eq + Ord + Hash + Debug,
{
    let n = v.dim();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if v.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut records = Vec::new();
    let mut path: Vec<LevelState<E>> = Vec::new();
    let mut tail = vec![0; n - 1];
    descend(v, n, &mut path, &mut tail, &mut records);
    records.sort_by_key(|r: &IndexRecord<E>| index_key(&r.idx));
    Ok(Decomposition {
        source: v.clone(),
        records,
    })
}

fn descend<E>(
    v: &PointSet<E>,
    k: usize,
    path: &mut Vec<LevelState<E>>,
    tail: &mut Vec<usize>,
    out: &mut Vec<IndexRecord<E>>,
) where
    E: Clone + Eq + Ord + Hash + Debug,
{
    let n = v.dim();
    let (prev_block, sprime) = match path.last() {
        None => (v.clone(), None),
        Some(prev) => (prev.block.clone(), Some(&prev.s_prime)),
    };
    let scores = level_scores(v, k, sprime);
    // every attained score is a candidate, and below the top level so is 0;
    // the nested block alone can miss indices whose block is empty
    let mut candidates: BTreeSet<usize> = scores.iter().copied().collect();
    if k < n {
        candidates.insert(0);
    }
    for index in candidates {
        tail[k - 2] = index;
        path.push(advance(v, k, index, scores.clone(), &prev_block));
        if k == 2 {
            let rec = IndexRecord::from_trace(&Trace { levels: path.clone() }, tail);
            if is_minimal_index(v, path, &rec.idx) {
                out.push(rec);
            }
        } else {
            descend(v, k - 1, path, tail, out);
        }
        path.pop();
    }
}

/// Whether `x^e` lies outside the lex leading monomial ideal of `I(q)`,
/// where `e` has one entry per coordinate of `q`.
pub fn is_standard<E>(e: &[usize], q: &PointSet<E>) -> bool
where
    E: Clone + Eq + Ord + Hash + Debug,
{
    debug_assert_eq!(e.len(), q.dim());
    if q.is_empty() {
        return false;
    }
    let d = q.dim();
    let a = e[d - 1];
    if d == 1 {
        return a < q.len();
    }
    let wide = PointSet::from_iter_dedup(
        d - 1,
        q.fiber_counts()
            .into_iter()
            .filter(|&(_, c)| c > a)
            .map(|(prefix, _)| prefix),
    );
    is_standard(&e[..d - 1], &wide)
}

/// A full index belongs to the minimal basis when, at the top level and at
/// every lower level with a positive index, the part of the monomial below
/// that level is standard for the points scoring at least the index there.
/// `path` holds the level states from `k = n` down to `k = 2`.
fn is_minimal_index<E>(v: &PointSet<E>, path: &[LevelState<E>], idx: &[usize]) -> bool
where
    E: Clone + Eq + Ord + Hash + Debug,
{
    let n = v.dim();
    path.iter().all(|state| {
        let k = state.level;
        if k < n && state.index == 0 {
            return true;
        }
        let reach = PointSet::from_iter_dedup(
            k - 1,
            v.iter()
                .zip(&state.scores)
                .filter(|(_, &s)| s >= state.index)
                .map(|(p, _)| p[..k - 1].to_vec()),
        );
        is_standard(&idx[..k - 1], &reach)
    })
}

fn show<E: Debug>(p: &[E]) -> String {
    format!("{p:?}")
}

/// Check the basic properties of one record by recomputation:
/// the partition property of `S_j, S'_j`, the per-point membership
/// characterization of the block and the projection coincidence between the
/// nested blocks and the slabs computed over all of `V`.
pub fn check_basic_properties<E>(v: &PointSet<E>, rec: &IndexRecord<E>) -> Result<CheckReport>
where
    E: Clone + Eq + Ord + Hash + Debug,
{
    let n = v.dim();
    let tr = trace(v, rec.tail())?;
    let mut report = CheckReport::new();

    // partition of pi_j(V)
    let mut outcome = Ok(());
    for j in 1..n {
        let (s, sp) = (&rec.s[j - 1], &rec.s_prime[j - 1]);
        let pv = v.project_unchecked(j);
        if !s.is_disjoint(sp) {
            outcome = Err(format!("S_{j} and S'_{j} intersect: {:?}", s.intersection(sp).points()));
            break;
        }
        if s.union(sp) != pv {
            outcome = Err(format!("S_{j} and S'_{j} do not cover pi_{j}(V)"));
            break;
        }
    }
    report.record("partition", outcome);

    // membership: x in block iff every level score equals the index
    let mut outcome = Ok(());
    for x in v.iter() {
        let mut member = v.count_prefix(&x[..n - 1]) == rec.idx[n - 1];
        for k in 2..n {
            let sp = &rec.s_prime[k - 1];
            member &= sp.iter().filter(|q| q[..k - 1] == x[..k - 1]).count() == rec.idx[k - 1];
        }
        if member != rec.block.contains(x) {
            outcome = Err(format!(
                "point {} membership {} disagrees with block",
                show(x),
                member
            ));
            break;
        }
    }
    report.record("membership", outcome);

    // projection coincidence between nested blocks and all-V slabs
    let mut outcome = Ok(());
    for l in 1..n {
        let state = tr.level(l + 1);
        let lhs = state.block.project_unchecked(l);
        let rhs = state.slab.project_unchecked(l);
        if lhs != rhs {
            outcome = Err(format!(
                "level {l}: projection of block {:?} differs from projection of slab {:?}",
                lhs.sorted(),
                rhs.sorted()
            ));
            break;
        }
    }
    report.record("projection", outcome);

    // S'_l as the projection of the excess part of the nested block
    let mut outcome = Ok(());
    for l in 1..n {
        let excess = tr.level(l + 1).excess_block.project_unchecked(l);
        if &excess != tr.s_prime(l) {
            outcome = Err(format!(
                "level {l}: S'_{l} = {:?} differs from the excess block projection {:?}",
                tr.s_prime(l).sorted(),
                excess.sorted()
            ));
            break;
        }
    }
    report.record("excess-projection", outcome);

    // indices agree with the families
    report.record(
        "first-index",
        ensure(rec.idx[0] == rec.s_prime[0].len(), || {
            format!("i_1 = {} but |S'_1| = {}", rec.idx[0], rec.s_prime[0].len())
        }),
    );
    Ok(report)
}

/// Check the properties of the deletion of the minimal block:
/// the disjoint-union description of `Y' = pi_{n-1}(V \ W)`, the inclusion of
/// excess sets `S'_l` of `V` in those of `Y'` (for the shortened index) and
/// the equality of the first excess sets.
pub fn check_deletion_invariants<E>(v: &PointSet<E>, dec: &Decomposition<E>) -> Result<CheckReport>
where
    E: Clone + Eq + Ord + Hash + Debug,
{
    let blocks = dec.block_records();
    if blocks.len() <= 1 {
        return Err(Error::NothingToDelete);
    }
    let n = v.dim();
    let min = blocks[0];
    let w = &min.block;
    let w_prime = v.difference(w);
    let y_prime = w_prime.project_unchecked(n - 1);
    let tv = trace(v, min.tail())?;
    let mut report = CheckReport::new();

    // Y' as a disjoint union of projected excess blocks
    let pieces: Vec<&PointSet<E>> = (2..=n).rev().map(|k| &tv.level(k).excess_block).collect();
    let mut outcome = Ok(());
    let covered = pieces
        .iter()
        .fold(PointSet::empty(n), |acc, p| acc.union(p));
    if covered != w_prime {
        outcome = Err("excess blocks do not cover V minus the minimal block".to_string());
    }
    for (a, pa) in pieces.iter().enumerate() {
        for pb in &pieces[a + 1..] {
            let (qa, qb) = (pa.project_unchecked(n - 1), pb.project_unchecked(n - 1));
            if outcome.is_ok() && !qa.is_disjoint(&qb) {
                outcome = Err(format!(
                    "projected excess blocks share {:?}",
                    qa.intersection(&qb).sorted()
                ));
            }
        }
    }
    if outcome.is_ok() && covered.project_unchecked(n - 1) != y_prime {
        outcome = Err("projected excess blocks do not form Y'".to_string());
    }
    report.record("union", outcome);

    if n == 2 {
        // Y' is one-dimensional: the first excess projection is Y' itself
        report.record(
            "first-projection",
            ensure(min.s_prime[0] == y_prime, || {
                format!("S'_1 {:?} differs from Y' {:?}", min.s_prime[0].sorted(), y_prime.sorted())
            }),
        );
        return Ok(report);
    }

    let ty = trace(&y_prime, &min.tail()[..n - 2])?;
    let mut outcome = Ok(());
    for l in 1..=n - 2 {
        let (sv, sy) = (tv.s_prime(l), ty.s_prime(l));
        if !sv.is_subset(sy) {
            outcome = Err(format!(
                "level {l}: S'_{l} {:?} is not contained in {:?}",
                sv.sorted(),
                sy.sorted()
            ));
            break;
        }
    }
    report.record("inclusion", outcome);
    let (sv, sy) = (tv.s_prime(1), ty.s_prime(1));
    report.record(
        "first-projection",
        ensure(sv == sy, || format!("S'_1 {:?} differs from {:?}", sv.sorted(), sy.sorted())),
    );
    Ok(report)
}
