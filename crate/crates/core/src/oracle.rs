//! Reference algorithms kept deliberately simple: Buchberger–Möller on
//! points, Buchberger completion and the S-polynomial criterion.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gblex::{Flavor, GroebnerBasis};
use crate::points::PointSet;
use crate::poly::{Monomial, Polynomial};

struct EchelonRow<E> {
    pivot: usize,
    values: Vec<E>,
    /// Coefficients over the standard monomials found so far.
    combo: Vec<E>,
}

/// Reduced lex Gröbner basis of the vanishing ideal of `v`, together with
/// the standard monomials in ascending order.
pub fn buchberger_moller_with_staircase<F: Field>(
    k: &F,
    v: &PointSet<F::Elem>,
) -> Result<(GroebnerBasis<F::Elem>, Vec<Monomial>)> {
    if v.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let n = v.dim();
    let m = v.len();
    let mut standard: Vec<Monomial> = Vec::new();
    let mut rows: Vec<EchelonRow<F::Elem>> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut polys: Vec<Polynomial<F::Elem>> = Vec::new();
    let mut queue: BTreeMap<Monomial, Vec<F::Elem>> = BTreeMap::new();
    queue.insert(Monomial::one(n), vec![k.one(); m]);

    while let Some((mono, evals)) = queue.pop_first() {
        if leads.iter().any(|l| l.divides(&mono)) {
            continue;
        }
        let mut residual = evals.clone();
        let mut combo = vec![k.zero(); standard.len()];
        for row in &rows {
            let c = residual[row.pivot].clone();
            if k.is_zero(&c) {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(&row.values) {
                *r = k.sub(r, &k.mul(&c, x));
            }
            for (a, x) in combo.iter_mut().zip(&row.combo) {
                *a = k.sub(a, &k.mul(&c, x));
            }
        }
        match residual.iter().position(|x| !k.is_zero(x)) {
            None => {
                // mono + sum combo_s * std_s vanishes on v
                let mut p = Polynomial::monomial(mono.clone(), k);
                for (s, c) in standard.iter().zip(combo) {
                    p.add_term(s.clone(), c, k);
                }
                leads.push(mono);
                polys.push(p);
            }
            Some(pivot) => {
                let inv = k.inv(&residual[pivot])?;
                let values = residual.iter().map(|x| k.mul(x, &inv)).collect();
                let mut combo: Vec<F::Elem> = combo.iter().map(|x| k.mul(x, &inv)).collect();
                combo.push(inv);
                for row in &mut rows {
                    row.combo.push(k.zero());
                }
                rows.push(EchelonRow {
                    pivot,
                    values,
                    combo,
                });
                for j in 0..n {
                    let next = mono.mul(&Monomial::var_power(n, j, 1));
                    if queue.contains_key(&next) || leads.iter().any(|l| l.divides(&next)) {
                        continue;
                    }
                    let ev = evals
                        .iter()
                        .zip(v.iter())
                        .map(|(e, p)| k.mul(e, &p[j]))
                        .collect();
                    queue.insert(next, ev);
                }
                standard.push(mono);
            }
        }
    }
    let gb = GroebnerBasis::new(k.spec(), n, polys, Flavor::Reduced);
    Ok((gb, standard))
}

/// Reduced lex Gröbner basis of the vanishing ideal of `v` by linear algebra
/// on point evaluations.
pub fn buchberger_moller<F: Field>(k: &F, v: &PointSet<F::Elem>) -> Result<GroebnerBasis<F::Elem>> {
    buchberger_moller_with_staircase(k, v).map(|(gb, _)| gb)
}

pub fn s_polynomial<F: Field>(
    k: &F,
    f: &Polynomial<F::Elem>,
    g: &Polynomial<F::Elem>,
) -> Result<Polynomial<F::Elem>> {
    let (fm, fc) = f.leading_term().ok_or(Error::ZeroPolynomial)?;
    let (gm, gc) = g.leading_term().ok_or(Error::ZeroPolynomial)?;
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm).expect("lcm"), &k.inv(fc)?, k);
    let b = g.mul_term(&l.div(gm).expect("lcm"), &k.inv(gc)?, k);
    Ok(a.sub(&b, k))
}

/// Remove polynomials whose leading monomial is a multiple of another one,
/// then replace each by its normal form against the rest.
pub(crate) fn minimize_and_reduce<F: Field>(
    k: &F,
    mut g: Vec<Polynomial<F::Elem>>,
) -> Result<Vec<Polynomial<F::Elem>>> {
    g.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut kept: Vec<Polynomial<F::Elem>> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().expect("nonzero");
        if kept.iter().all(|q| !q.leading_monomial().expect("nonzero").divides(lm)) {
            kept.push(p);
        }
    }
    let mut out = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<_> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        out.push(kept[i].normal_form(&others, k)?.monic(k));
    }
    Ok(out)
}

/// Reduced lex Gröbner basis of the ideal generated by `f`, by Buchberger
/// completion with the normal selection strategy and both of Buchberger's
/// criteria.
pub fn buchberger<F: Field>(k: &F, f: &[Polynomial<F::Elem>]) -> Result<GroebnerBasis<F::Elem>> {
    let n = f.first().map(|p| p.nvars()).ok_or(Error::ZeroPolynomial)?;
    let mut g: Vec<Polynomial<F::Elem>> = Vec::new();
    for p in f {
        if p.nvars() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: p.nvars(),
            });
        }
        if !p.is_zero() {
            g.push(p.monic(k));
        }
    }
    if g.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = || GroebnerBasis::new(k.spec(), n, vec![Polynomial::one(n, k)], Flavor::Reduced);
    if g.iter().any(|p| p.is_constant()) {
        return Ok(unit());
    }
    let lm = |g: &[Polynomial<F::Elem>], i: usize| g[i].leading_monomial().expect("nonzero").clone();
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert((lm(&g, i).lcm(&lm(&g, j)), i, j));
        }
    }
    let pending = |pairs: &BTreeSet<(Monomial, usize, usize)>, g: &[Polynomial<F::Elem>], a: usize, b: usize| {
        let (i, j) = (a.min(b), a.max(b));
        pairs.contains(&(lm(g, i).lcm(&lm(g, j)), i, j))
    };
    while let Some((l, i, j)) = pairs.pop_first() {
        let (mi, mj) = (lm(&g, i), lm(&g, j));
        if mi.is_coprime(&mj) {
            continue;
        }
        let chain = (0..g.len()).any(|c| {
            c != i
                && c != j
                && lm(&g, c).divides(&l)
                && !pending(&pairs, &g, i, c)
                && !pending(&pairs, &g, j, c)
        });
        if chain {
            continue;
        }
        let h = s_polynomial(k, &g[i], &g[j])?.normal_form(&g, k)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit());
        }
        let h = h.monic(k);
        let new = g.len();
        let hm = h.leading_monomial().expect("nonzero").clone();
        g.push(h);
        for a in 0..new {
            pairs.insert((lm(&g, a).lcm(&hm), a, new));
        }
    }
    let polys = minimize_and_reduce(k, g)?;
    Ok(GroebnerBasis::new(k.spec(), n, polys, Flavor::Reduced))
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis<F: Field>(k: &F, g: &[Polynomial<F::Elem>]) -> Result<bool> {
    for j in 0..g.len() {
        for i in 0..j {
            if !s_polynomial(k, &g[i], &g[j])?.normal_form(g, k)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
