//! Lex Gröbner bases of vanishing ideals, assembled level by level from the
//! interpolated generators.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::enumerate_indices;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::interp::build_generator;
use crate::points::PointSet;
use crate::poly::{Monomial, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Minimal,
    Reduced,
}

/// Monic polynomials sorted by ascending leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis<E> {
    pub spec: FieldSpec,
    pub nvars: usize,
    pub polys: Vec<Polynomial<E>>,
    pub flavor: Flavor,
}

impl<E: Clone + Eq> GroebnerBasis<E> {
    pub fn new(spec: FieldSpec, nvars: usize, mut polys: Vec<Polynomial<E>>, flavor: Flavor) -> Self {
        polys.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        GroebnerBasis {
            spec,
            nvars,
            polys,
            flavor,
        }
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| p.leading_monomial().expect("basis polynomials are nonzero").clone())
            .collect()
    }

    /// No leading monomial divides another.
    pub fn is_minimal(&self) -> bool {
        let lms = self.leading_monomials();
        lms.iter().enumerate().all(|(i, a)| {
            lms.iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.divides(b))
        })
    }

    /// The same basis viewed in `nvars` variables.
    pub fn embed(&self, nvars: usize) -> Self {
        GroebnerBasis {
            spec: self.spec,
            nvars,
            polys: self.polys.iter().map(|p| p.embed(nvars)).collect(),
            flavor: self.flavor,
        }
    }

    pub fn to_json<F: Field<Elem = E>>(&self, k: &F) -> BasisJson {
        BasisJson {
            lms: self.leading_monomials().iter().map(|m| m.render()).collect(),
            polys: self.polys.iter().map(|p| p.render(k)).collect(),
            flavor: self.flavor,
        }
    }
}

/// Serialized form of a [`GroebnerBasis`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisJson {
    pub lms: Vec<String>,
    pub polys: Vec<String>,
    pub flavor: Flavor,
}

fn univariate_basis<F: Field>(k: &F, v: &PointSet<F::Elem>) -> GroebnerBasis<F::Elem> {
    let roots: Vec<F::Elem> = v.project_unchecked(1).iter().map(|p| p[0].clone()).collect();
    let p = Polynomial::from_roots(&roots, 0, 1, k);
    GroebnerBasis::new(k.spec(), 1, vec![p], Flavor::Minimal)
}

fn tower_with<F: Field>(
    k: &F,
    v: &PointSet<F::Elem>,
    parallel: bool,
) -> Result<Vec<GroebnerBasis<F::Elem>>> {
    if v.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let n = v.dim();
    let mut tower = vec![univariate_basis(k, v)];
    for t in 2..=n {
        let vt = v.project_unchecked(t);
        let dec = enumerate_indices(&vt)?;
        let generators: Vec<Polynomial<F::Elem>> = if parallel {
            dec.records
                .par_iter()
                .map(|rec| build_generator(k, &vt, rec))
                .collect::<Result<_>>()?
        } else {
            dec.records
                .iter()
                .map(|rec| build_generator(k, &vt, rec))
                .collect::<Result<_>>()?
        };
        let mut polys = tower[t - 2].embed(t).polys;
        polys.extend(generators);
        tower.push(GroebnerBasis::new(k.spec(), t, polys, Flavor::Minimal));
    }
    Ok(tower)
}

/// Minimal bases of `I(pi_1 V), ..., I(pi_n V)`; entry `t - 1` has `t`
/// variables.
pub fn groebner_tower<F: Field>(k: &F, v: &PointSet<F::Elem>) -> Result<Vec<GroebnerBasis<F::Elem>>> {
    tower_with(k, v, false)
}

/// Minimal monic lex Gröbner basis of the vanishing ideal of `v`.
pub fn groebner_basis<F: Field>(k: &F, v: &PointSet<F::Elem>) -> Result<GroebnerBasis<F::Elem>> {
    Ok(tower_with(k, v, false)?.pop().expect("nonempty tower"))
}

/// Same as [`groebner_basis`], building the generators of each level on the
/// current rayon pool. The output is identical.
pub fn groebner_basis_par<F: Field>(k: &F, v: &PointSet<F::Elem>) -> Result<GroebnerBasis<F::Elem>> {
    Ok(tower_with(k, v, true)?.pop().expect("nonempty tower"))
}

/// Monomials outside the leading monomial ideal, in ascending lex order.
pub fn standard_monomials<E: Clone + Eq>(gb: &GroebnerBasis<E>) -> Result<Vec<Monomial>> {
    let lms = gb.leading_monomials();
    for j in 0..gb.nvars {
        if !lms.iter().any(|m| m.pure_power_var() == Some(j) || m.is_one()) {
            return Err(Error::NotZeroDimensional(j + 1));
        }
    }
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier = vec![Monomial::one(gb.nvars)];
    while let Some(m) = frontier.pop() {
        if seen.contains(&m) || lms.iter().any(|l| l.divides(&m)) {
            continue;
        }
        for j in 0..gb.nvars {
            frontier.push(m.mul(&Monomial::var_power(gb.nvars, j, 1)));
        }
        seen.insert(m);
    }
    Ok(seen.into_iter().collect())
}

/// The reduced basis: every polynomial replaced by its normal form against
/// the others.
pub fn reduce_basis<F: Field>(k: &F, gb: &GroebnerBasis<F::Elem>) -> Result<GroebnerBasis<F::Elem>> {
    let mut polys = Vec::with_capacity(gb.polys.len());
    for (i, p) in gb.polys.iter().enumerate() {
        let others: Vec<_> = gb
            .polys
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        polys.push(p.normal_form(&others, k)?.monic(k));
    }
    Ok(GroebnerBasis::new(gb.spec, gb.nvars, polys, Flavor::Reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::oracle::{buchberger_moller, is_groebner_basis};
    use num_rational::BigRational;

    fn qset(n: usize, rows: &[&[i64]]) -> PointSet<BigRational> {
        PointSet::new(
            n,
            rows.iter()
                .map(|r| r.iter().map(|&v| Rationals.from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn rendered(gb: &GroebnerBasis<BigRational>) -> Vec<String> {
        gb.polys.iter().map(|p| p.render(&Rationals)).collect()
    }

    fn e1() -> PointSet<BigRational> {
        qset(2, &[&[0, 0], &[0, 1], &[1, 0]])
    }

    fn e2() -> PointSet<BigRational> {
        qset(3, &[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])
    }

    #[test]
    fn e1_basis() {
        let gb = groebner_basis(&Rationals, &e1()).unwrap();
        assert_eq!(rendered(&gb), ["x1^2 - x1", "x1*x2", "x2^2 + x1*x2 - x2"]);
        let red = reduce_basis(&Rationals, &gb).unwrap();
        assert_eq!(rendered(&red), ["x1^2 - x1", "x1*x2", "x2^2 - x2"]);
        assert_eq!(red, buchberger_moller(&Rationals, &e1()).unwrap());
    }

    #[test]
    fn e2_basis() {
        let gb = groebner_basis(&Rationals, &e2()).unwrap();
        assert_eq!(
            rendered(&gb),
            [
                "x1^2 - x1",
                "x1*x2",
                "x2^2 + x1*x2 - x2",
                "x1*x3",
                "x2*x3",
                "x3^2 - x1*x2*x3 + x2*x3 + x1*x3 - x3"
            ]
        );
        assert!(is_groebner_basis(&Rationals, &gb.polys).unwrap());
        let red = reduce_basis(&Rationals, &gb).unwrap();
        assert_eq!(
            red.polys.last().unwrap().render(&Rationals),
            "x3^2 - x3"
        );
        assert_eq!(red, buchberger_moller(&Rationals, &e2()).unwrap());
        assert_eq!(reduce_basis(&Rationals, &red).unwrap(), red);
    }

    #[test]
    fn single_point() {
        let gb = groebner_basis(&Rationals, &qset(2, &[&[3, -4]])).unwrap();
        assert_eq!(rendered(&gb), ["x1 - 3", "x2 + 4"]);
        assert_eq!(standard_monomials(&gb).unwrap(), vec![Monomial::one(2)]);
    }

    #[test]
    fn staircases() {
        let render = |gb: &GroebnerBasis<BigRational>| -> Vec<String> {
            standard_monomials(gb).unwrap().iter().map(|m| m.render()).collect()
        };
        assert_eq!(render(&groebner_basis(&Rationals, &e1()).unwrap()), ["1", "x1", "x2"]);
        assert_eq!(
            render(&groebner_basis(&Rationals, &e2()).unwrap()),
            ["1", "x1", "x2", "x3"]
        );
        let open = GroebnerBasis::new(
            Rationals.spec(),
            2,
            vec![Polynomial::var(0, 2, &Rationals)],
            Flavor::Minimal,
        );
        assert_eq!(standard_monomials(&open), Err(Error::NotZeroDimensional(2)));
    }

    #[test]
    fn parallel_matches_sequential() {
        let v = qset(3, &[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0], &[1, 0, 0], &[1, 2, 3], &[1, 2, 0]]);
        assert_eq!(
            groebner_basis(&Rationals, &v).unwrap(),
            groebner_basis_par(&Rationals, &v).unwrap()
        );
    }
}
