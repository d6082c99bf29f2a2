//! The JSON documents printed by the command-line tool.

use serde::Serialize;

use crate::analysis::{check_cells, specialize, triangular_decompose};
use crate::decomp::{check_deletion_invariants, enumerate_indices};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gblex::{groebner_basis, groebner_basis_par, groebner_tower, reduce_basis, standard_monomials};
use crate::interp::structure_certificate;
use crate::oracle::{buchberger_moller, is_groebner_basis};
use crate::points::PointSet;
use crate::report::{ensure, CheckReport};

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Document(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn gb_document<F: Field>(k: &F, v: &PointSet<F::Elem>, reduced: bool, parallel: bool) -> Result<String> {
    let gb = if parallel {
        groebner_basis_par(k, v)?
    } else {
        groebner_basis(k, v)?
    };
    let gb = if reduced { reduce_basis(k, &gb)? } else { gb };
    to_pretty(&gb.to_json(k))
}

pub fn stdmon_document<F: Field>(k: &F, v: &PointSet<F::Elem>) -> Result<String> {
    let gb = groebner_basis(k, v)?;
    let mons: Vec<String> = standard_monomials(&gb)?.iter().map(|m| m.render()).collect();
    to_pretty(&mons)
}

pub fn indices_document<F: Field>(k: &F, v: &PointSet<F::Elem>) -> Result<String> {
    to_pretty(&enumerate_indices(v)?.to_json(k))
}

pub fn triangular_document<F: Field>(k: &F, v: &PointSet<F::Elem>) -> Result<String> {
    let cells: Vec<_> = triangular_decompose(k, v)?.iter().map(|c| c.to_json(k)).collect();
    to_pretty(&cells)
}

#[derive(Serialize)]
struct SpecializationDocument<'a> {
    images: Vec<String>,
    #[serde(flatten)]
    report: &'a crate::analysis::SpecializationReport,
}

pub fn specialize_document<F: Field>(
    k: &F,
    v: &PointSet<F::Elem>,
    alpha: &[F::Elem],
    level: usize,
) -> Result<String> {
    let gb = groebner_basis(k, v)?;
    let (images, report) = specialize(k, &gb, v, alpha, level)?;
    to_pretty(&SpecializationDocument {
        images: images.iter().map(|p| p.render_from(level, k)).collect(),
        report: &report,
    })
}

/// Every check that applies to a point set, each reported separately:
/// oracle equality, vanishing, minimality, the S-polynomial criterion,
/// staircase size, structure certificates, specialization, deletion
/// invariants and triangular cells.
pub fn verify_point_set<F: Field>(k: &F, v: &PointSet<F::Elem>) -> Result<CheckReport> {
    let n = v.dim();
    let mut report = CheckReport::new();
    let tower = groebner_tower(k, v)?;
    let gb = tower.last().expect("nonempty tower");
    let oracle = buchberger_moller(k, v)?;
    let reduced = reduce_basis(k, gb)?;
    report.record(
        "oracle-equality",
        ensure(reduced == oracle, || "reduced basis differs from Buchberger-Moller".into()),
    );
    let mut vanish = Ok(());
    'outer: for g in &gb.polys {
        for p in v.iter() {
            if !k.is_zero(&g.evaluate(p, k)?) {
                vanish = Err(format!("{} is nonzero at {:?}", g.render(k), p));
                break 'outer;
            }
        }
    }
    report.record("vanishing", vanish);
    report.record("minimality", ensure(gb.is_minimal(), || "a leading monomial divides another".into()));
    report.record(
        "s-polynomials",
        ensure(is_groebner_basis(k, &gb.polys)?, || "an S-polynomial has a nonzero remainder".into()),
    );
    let size = standard_monomials(gb)?.len();
    report.record(
        "staircase",
        ensure(size == v.len(), || format!("{size} standard monomials for {} points", v.len())),
    );
    let mut cert = Ok(());
    for t in 2..=n {
        for g in tower[t - 1].polys.iter().filter(|g| g.support_vars() == t) {
            let rep = structure_certificate(k, g, &tower[..t - 2])?;
            let failed = rep.failures().next().map(|c| c.name.clone());
            if let (Some(name), true) = (failed, cert.is_ok()) {
                cert = Err(format!("{}: {name} failed", g.render(k)));
            }
        }
    }
    report.record("structure", cert);
    let mut stab = Ok(());
    'spec: for l in 1..n {
        for alpha in v.project_unchecked(l).sorted() {
            let (_, rep) = specialize(k, gb, v, &alpha, l)?;
            if !rep.stable || rep.fiber_gb_match != Some(true) {
                stab = Err(format!("level {l}, alpha {:?}", rep.alpha));
                break 'spec;
            }
        }
    }
    report.record("specialization", stab);
    if n >= 2 {
        let dec = enumerate_indices(v)?;
        if dec.block_records().len() > 1 {
            report.extend("deletion.", check_deletion_invariants(v, &dec)?);
        }
    }
    let cells = triangular_decompose(k, v)?;
    report.extend("cells.", check_cells(k, v, &cells)?);
    let mut towers = Ok(());
    for c in &cells {
        let gb = crate::gblex::GroebnerBasis::new(k.spec(), n, c.tower.clone(), crate::gblex::Flavor::Minimal);
        if reduce_basis(k, &gb)? != buchberger_moller(k, &c.points)? {
            towers = Err(format!("tower {:?} differs from the oracle", c.degrees));
            break;
        }
    }
    report.record("cells.oracle", towers);
    Ok(report)
}
