//! Specialization of the constructed bases and triangular decomposition of
//! a point set.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::decomp::enumerate_indices;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gblex::GroebnerBasis;
use crate::interp::build_generator;
use crate::oracle::buchberger_moller;
use crate::points::PointSet;
use crate::poly::{Monomial, Polynomial};
use crate::report::{ensure, CheckReport};

/// What happened to one basis polynomial under the substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TermSpecialization {
    /// The image of the leading term with respect to `x_{l+1}..x_n` vanishes.
    pub lt_vanishes: bool,
    /// The image of the whole polynomial vanishes.
    pub image_vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecializationReport {
    pub level: usize,
    pub alpha: Vec<String>,
    pub per_polynomial: Vec<TermSpecialization>,
    pub stable: bool,
    /// `None` when `alpha` lies outside the projection and the fiber is empty.
    pub fiber_gb_match: Option<bool>,
    /// Some image is a nonzero constant.
    pub unit_ideal: bool,
}

fn minimal_monomials(lms: impl IntoIterator<Item = Monomial>) -> BTreeSet<Monomial> {
    let all: BTreeSet<Monomial> = lms.into_iter().collect();
    all.iter()
        .filter(|m| !all.iter().any(|d| d != *m && d.divides(m)))
        .cloned()
        .collect()
}

/// Substitute `alpha` for `x_1..x_level` in every polynomial of `gb` and
/// compare with the vanishing ideal of the fiber of `v` over `alpha`.
pub fn specialize<F: Field>(
    k: &F,
    gb: &GroebnerBasis<F::Elem>,
    v: &PointSet<F::Elem>,
    alpha: &[F::Elem],
    level: usize,
) -> Result<(Vec<Polynomial<F::Elem>>, SpecializationReport)> {
    if gb.spec != k.spec() {
        return Err(Error::FieldMismatch {
            expected: k.spec().to_string(),
            found: gb.spec.to_string(),
        });
    }
    let n = gb.nvars;
    if v.dim() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: v.dim(),
        });
    }
    if n < 2 || level == 0 || level >= n {
        return Err(Error::OutOfRange {
            what: "specialization level",
            value: level,
            lo: 1,
            hi: n.saturating_sub(1),
        });
    }
    if alpha.len() != level {
        return Err(Error::ArityMismatch {
            expected: level,
            found: alpha.len(),
        });
    }
    let mut images = Vec::with_capacity(gb.polys.len());
    let mut per_polynomial = Vec::with_capacity(gb.polys.len());
    for g in &gb.polys {
        let lc = g.leading_coeff_poly(level, k)?;
        let image = g.substitute_prefix(alpha, k)?;
        per_polynomial.push(TermSpecialization {
            lt_vanishes: lc.substitute_prefix(alpha, k)?.is_zero(),
            image_vanishes: image.is_zero(),
        });
        images.push(image);
    }
    let stable = per_polynomial.iter().all(|s| s.lt_vanishes == s.image_vanishes);
    let unit_ideal = images.iter().any(|p| !p.is_zero() && p.is_constant());
    let fiber_gb_match = if v.project_unchecked(level).contains(alpha) {
        let fiber = v.slice(alpha);
        let oracle: BTreeSet<Monomial> = buchberger_moller(k, &fiber)?.leading_monomials().into_iter().collect();
        let ours = minimal_monomials(
            images
                .iter()
                .filter_map(|p| p.leading_monomial().cloned()),
        );
        Some(ours == oracle)
    } else {
        None
    };
    let report = SpecializationReport {
        level,
        alpha: alpha.iter().map(|a| k.render(a)).collect(),
        per_polynomial,
        stable,
        fiber_gb_match,
        unit_ideal,
    };
    Ok((images, report))
}

/// Pointwise splitting identities for the minimal block `W` and its
/// complement `W'`, with `f = LC_{n-1}` of the generator of the minimal
/// index:
///
/// * `vanishes-on-complement`: `f` vanishes on `pi_{n-1}(W')`;
/// * `nonzero-on-block`: `f` is nonzero on `pi_{n-1}(W)`;
/// * `minimal-leading-monomial`: `LM(f)` is a leading monomial of the
///   reduced basis of `I(pi_{n-1}(W'))`.
pub fn check_splitting<F: Field>(k: &F, v: &PointSet<F::Elem>) -> Result<CheckReport> {
    let n = v.dim();
    let dec = enumerate_indices(v)?;
    let blocks = dec.block_records();
    if blocks.len() < 2 {
        return Err(Error::NothingToDelete);
    }
    let rec = blocks[0];
    let g = build_generator(k, v, rec)?;
    let f = g
        .leading_coeff_poly(n - 1, k)?
        .restrict(n - 1)
        .ok_or_else(|| Error::Invariant("LC_{n-1} involves x_n".into()))?;
    let w = &rec.block;
    let rest = v.difference(w);
    let rest_proj = rest.project_unchecked(n - 1);

    let mut report = CheckReport::new();
    let mut outcome = Ok(());
    for y in rest_proj.sorted() {
        if !k.is_zero(&f.evaluate(&y, k)?) {
            outcome = Err(format!("f = {} is nonzero at {:?}", f.render(k), y));
            break;
        }
    }
    report.record("vanishes-on-complement", outcome);
    let mut outcome = Ok(());
    for x in w.project_unchecked(n - 1).sorted() {
        if k.is_zero(&f.evaluate(&x, k)?) {
            outcome = Err(format!("f = {} vanishes at {:?}", f.render(k), x));
            break;
        }
    }
    report.record("nonzero-on-block", outcome);
    let lms = buchberger_moller(k, &rest_proj)?.leading_monomials();
    let lm = f.leading_monomial().cloned();
    report.record(
        "minimal-leading-monomial",
        ensure(lm.as_ref().is_some_and(|m| lms.contains(m)), || {
            format!("LM(f) = {:?} is not among {:?}", lm.map(|m| m.render()), lms.iter().map(|m| m.render()).collect::<Vec<_>>())
        }),
    );
    Ok(report)
}

/// A subset of the points cut out by a triangular set.
#[derive(Debug, Clone)]
pub struct TriangularCell<E> {
    pub points: PointSet<E>,
    /// `t_j` involves `x_1..x_j` only and has leading monomial `x_j^{d_j}`;
    /// every entry is stored in `n` variables.
    pub tower: Vec<Polynomial<E>>,
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellJson {
    pub points: Vec<Vec<String>>,
    pub tower: Vec<String>,
    pub degrees: Vec<usize>,
}

impl<E: Clone + Eq + Ord + std::hash::Hash + std::fmt::Debug> TriangularCell<E> {
    pub fn to_json<F: Field<Elem = E>>(&self, k: &F) -> CellJson {
        CellJson {
            points: self.points.render(k),
            tower: self.tower.iter().map(|p| p.render(k)).collect(),
            degrees: self.degrees.clone(),
        }
    }

    fn embed(self, nvars: usize) -> Self {
        TriangularCell {
            points: self.points,
            tower: self.tower.into_iter().map(|p| p.embed(nvars)).collect(),
            degrees: self.degrees,
        }
    }
}

fn cells<F: Field>(k: &F, v: &PointSet<F::Elem>) -> Result<Vec<TriangularCell<F::Elem>>> {
    let n = v.dim();
    if n == 1 {
        let roots: Vec<F::Elem> = v.iter().map(|p| p[0].clone()).collect();
        return Ok(vec![TriangularCell {
            points: v.clone(),
            tower: vec![Polynomial::from_roots(&roots, 0, 1, k)],
            degrees: vec![v.len()],
        }]);
    }
    let dec = enumerate_indices(v)?;
    let blocks = dec.block_records();
    if blocks.len() > 1 {
        let w = &blocks[0].block;
        let mut out = cells(k, w)?;
        out.extend(cells(k, &v.difference(w))?);
        return Ok(out);
    }
    // constant fiber size over pi_{n-1}(V)
    let mut out = Vec::new();
    for lower in cells(k, &v.project_unchecked(n - 1))? {
        let points = v.filter(|p| lower.points.contains(&p[..n - 1]));
        let sub = enumerate_indices(&points)?;
        let [rec] = sub.records.as_slice() else {
            return Err(Error::Invariant("lifted cell has several indices".into()));
        };
        let t_n = build_generator(k, &points, rec)?;
        let mut cell = lower.embed(n);
        cell.points = points;
        cell.tower.push(t_n);
        cell.degrees.push(rec.idx[n - 1]);
        out.push(cell);
    }
    Ok(out)
}

/// Partition `v` into cells on which every fiber size is constant, each
/// with its triangular set. Cells are ordered by their smallest point.
pub fn triangular_decompose<F: Field>(k: &F, v: &PointSet<F::Elem>) -> Result<Vec<TriangularCell<F::Elem>>> {
    if v.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut out = cells(k, v)?;
    for c in &mut out {
        c.points = PointSet::from_iter_dedup(v.dim(), c.points.sorted());
    }
    out.sort_by_key(|a| a.points.sorted());
    Ok(out)
}

/// The cells are pairwise disjoint and cover `v`; each tower is triangular
/// with `prod d_j = |cell|` and vanishes on its cell.
pub fn check_cells<F: Field>(
    k: &F,
    v: &PointSet<F::Elem>,
    cells: &[TriangularCell<F::Elem>],
) -> Result<CheckReport> {
    let n = v.dim();
    let mut report = CheckReport::new();
    let total: usize = cells.iter().map(|c| c.points.len()).sum();
    let union = cells
        .iter()
        .fold(PointSet::empty(n), |acc, c| acc.union(&c.points));
    report.record(
        "partition",
        ensure(total == v.len() && union == *v, || {
            format!("{} cell points against {} points", total, v.len())
        }),
    );
    let mut shape = Ok(());
    let mut degree = Ok(());
    let mut vanish = Ok(());
    for (ci, c) in cells.iter().enumerate() {
        if c.tower.len() != n || c.degrees.len() != n {
            shape = Err(format!("cell {ci} has {} polynomials", c.tower.len()));
            continue;
        }
        for (j, (t, &d)) in c.tower.iter().zip(&c.degrees).enumerate() {
            let lm = Monomial::var_power(n, j, d as u32);
            if shape.is_ok()
                && (t.leading_monomial() != Some(&lm) || !t.is_monic(k) || t.support_vars() > j + 1)
            {
                shape = Err(format!("cell {ci}: t_{} = {}", j + 1, t.render(k)));
            }
            for p in c.points.iter() {
                if vanish.is_ok() && !k.is_zero(&t.evaluate(p, k)?) {
                    vanish = Err(format!("cell {ci}: t_{} is nonzero at {:?}", j + 1, p));
                }
            }
        }
        let product: usize = c.degrees.iter().product();
        if degree.is_ok() && product != c.points.len() {
            degree = Err(format!("cell {ci}: degrees {:?} for {} points", c.degrees, c.points.len()));
        }
    }
    report.record("triangular", shape);
    report.record("degrees", degree);
    report.record("vanishing", vanish);
    Ok(report)
}
