//! Sparse multivariate polynomials under the lexicographic order with
//! `x1 < x2 < ... < xn`, so the last variable dominates.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;

/// Exponent vector `(e_1, ..., e_n)` of `x1^e_1 * ... * xn^e_n`.
///
/// `Ord` is the lex order: exponents are compared from `xn` down to `x1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// `x_{var+1}^exp`, variables counted from zero.
    pub fn var_power(nvars: usize, var: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[var] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The single variable of a pure power `x_i^e` (e > 0).
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Exponents of the first `t` variables zeroed.
    pub fn upper_part(&self, t: usize) -> Monomial {
        let mut e = self.0.clone();
        e[..t].iter_mut().for_each(|x| *x = 0);
        Monomial(e)
    }

    /// Exponents of the variables after the first `t` zeroed.
    pub fn lower_part(&self, t: usize) -> Monomial {
        let mut e = self.0.clone();
        e[t..].iter_mut().for_each(|x| *x = 0);
        Monomial(e)
    }

    /// Pad with trailing zero exponents up to `nvars` variables.
    pub fn embed(&self, nvars: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(nvars, 0);
        Monomial(e)
    }

    pub fn render(&self) -> String {
        self.render_from(0)
    }

    /// Render with variable `i` printed as `x{i + 1 + offset}`.
    pub fn render_from(&self, offset: usize) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1 + offset)
                } else {
                    format!("x{}^{}", i + 1 + offset, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lex comparison with an arity check.
pub fn lex_compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::ArityMismatch {
            expected: a.nvars(),
            found: b.nvars(),
        });
    }
    Ok(a.cmp(b))
}

/// A polynomial in `nvars` variables with coefficients in some field.
///
/// Only nonzero coefficients are stored; terms are keyed by monomial so the
/// leading term is the last map entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<E> {
    nvars: usize,
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone + Eq> Polynomial<E> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<F: Field<Elem = E>>(c: E, nvars: usize, k: &F) -> Self {
        Self::term(Monomial::one(nvars), c, k)
    }

    pub fn one<F: Field<Elem = E>>(nvars: usize, k: &F) -> Self {
        Self::constant(k.one(), nvars, k)
    }

    pub fn term<F: Field<Elem = E>>(m: Monomial, c: E, k: &F) -> Self {
        let mut p = Self::zero(m.nvars());
        if !k.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial<F: Field<Elem = E>>(m: Monomial, k: &F) -> Self {
        Self::term(m, k.one(), k)
    }

    /// The variable `x_{var+1}` (zero-based index).
    pub fn var<F: Field<Elem = E>>(var: usize, nvars: usize, k: &F) -> Self {
        Self::monomial(Monomial::var_power(nvars, var, 1), k)
    }

    /// `x_{var+1} - c`.
    pub fn linear<F: Field<Elem = E>>(var: usize, c: &E, nvars: usize, k: &F) -> Self {
        let mut p = Self::var(var, nvars, k);
        p.add_term(Monomial::one(nvars), k.neg(c), k);
        p
    }

    /// Univariate polynomial in `x_{var+1}` from dense coefficients (low to high).
    pub fn univariate<F: Field<Elem = E>>(coeffs: &[E], var: usize, nvars: usize, k: &F) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var_power(nvars, var, e as u32), c.clone(), k);
        }
        p
    }

    /// `prod (x_{var+1} - r)` over `roots`.
    pub fn from_roots<'a, F, I>(roots: I, var: usize, nvars: usize, k: &F) -> Self
    where
        F: Field<Elem = E>,
        I: IntoIterator<Item = &'a E>,
        E: 'a,
    {
        let mut coeffs = vec![k.one()];
        for r in roots {
            // multiply by (x - r)
            let mut next = vec![k.zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = k.add(&next[i + 1], c);
                next[i] = k.sub(&next[i], &k.mul(c, r));
            }
            coeffs = next;
        }
        Self::univariate(&coeffs, var, nvars, k)
    }

    pub fn from_terms<F, I>(nvars: usize, terms: I, k: &F) -> Result<Self>
    where
        F: Field<Elem = E>,
        I: IntoIterator<Item = (Monomial, E)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            p.add_term(m, c, k);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &E)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &E)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&E> {
        self.terms.values().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Highest variable index with a positive exponent, plus one.
    pub fn support_vars(&self) -> usize {
        self.terms
            .keys()
            .map(|m| {
                m.exponents()
                    .iter()
                    .rposition(|&e| e > 0)
                    .map_or(0, |i| i + 1)
            })
            .max()
            .unwrap_or(0)
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, m: Monomial, c: E, k: &F) {
        use std::collections::btree_map::Entry;
        if k.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = k.add(o.get(), &c);
                if k.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * m * other` in place.
    pub fn add_scaled<F: Field<Elem = E>>(&mut self, c: &E, m: &Monomial, other: &Self, k: &F) {
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), k.mul(c, oc), k);
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone(), k);
        }
        r
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), k.neg(c), k);
        }
        r
    }

    pub fn neg<F: Field<Elem = E>>(&self, k: &F) -> Self {
        self.scale(&k.neg(&k.one()), k)
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, k: &F) -> Self {
        if k.is_zero(c) {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), k.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_term<F: Field<Elem = E>>(&self, m: &Monomial, c: &E, k: &F) -> Self {
        if k.is_zero(c) {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(om, a)| (om.mul(m), k.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        let mut r = Self::zero(self.nvars);
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (m, c) in &small.terms {
            r.add_scaled(c, m, large, k);
        }
        r
    }

    pub fn monic<F: Field<Elem = E>>(&self, k: &F) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&k.inv(lc).expect("nonzero leading coefficient"), k),
        }
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, k: &F) -> bool {
        self.leading_coeff().is_some_and(|c| k.is_one(c))
    }

    /// `LC_t` and `LM_t`: view `self` in `k[x1..xt][x_{t+1}..xn]`.
    ///
    /// The coefficient is returned as a polynomial in all `nvars` variables
    /// that only involves the first `t`; the monomial only involves the rest.
    pub fn leading_data<F: Field<Elem = E>>(&self, t: usize, k: &F) -> Result<(Self, Monomial)> {
        if t >= self.nvars.max(1) {
            return Err(Error::OutOfRange {
                what: "level",
                value: t,
                lo: 0,
                hi: self.nvars.saturating_sub(1),
            });
        }
        let top = self
            .terms
            .keys()
            .map(|m| m.upper_part(t))
            .max()
            .ok_or(Error::ZeroPolynomial)?;
        let mut lc = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.upper_part(t) == top {
                lc.add_term(m.lower_part(t), c.clone(), k);
            }
        }
        Ok((lc, top))
    }

    /// `LC_t(self)`, see [`Polynomial::leading_data`].
    pub fn leading_coeff_poly<F: Field<Elem = E>>(&self, t: usize, k: &F) -> Result<Self> {
        self.leading_data(t, k).map(|(c, _)| c)
    }

    pub fn evaluate<F: Field<Elem = E>>(&self, point: &[E], k: &F) -> Result<E> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = k.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v = k.mul(&v, &k.pow(x, e as u64));
                }
            }
            acc = k.add(&acc, &v);
        }
        Ok(acc)
    }

    /// Substitute the first `prefix.len()` variables; the result lives in the
    /// remaining `nvars - prefix.len()` variables.
    pub fn substitute_prefix<F: Field<Elem = E>>(&self, prefix: &[E], k: &F) -> Result<Self> {
        let l = prefix.len();
        if l > self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: l,
            });
        }
        let mut r = Self::zero(self.nvars - l);
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in prefix.iter().zip(m.exponents()) {
                if e > 0 {
                    v = k.mul(&v, &k.pow(x, e as u64));
                }
            }
            r.add_term(Monomial(m.exponents()[l..].to_vec()), v, k);
        }
        Ok(r)
    }

    /// Same polynomial viewed in `nvars >= self.nvars()` variables.
    pub fn embed(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars, "embedding must not drop variables");
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.embed(nvars), c.clone()))
                .collect(),
        }
    }

    /// Drop trailing variables that do not occur.
    pub fn restrict(&self, nvars: usize) -> Option<Self> {
        if self.support_vars() > nvars {
            return None;
        }
        Some(Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(m.exponents()[..nvars].to_vec()), c.clone()))
                .collect(),
        })
    }

    /// Drop `count` leading variables that do not occur.
    pub fn drop_leading_vars(&self, count: usize) -> Option<Self> {
        if self
            .terms
            .keys()
            .any(|m| m.exponents()[..count].iter().any(|&e| e > 0))
        {
            return None;
        }
        Some(Polynomial {
            nvars: self.nvars - count,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(m.exponents()[count..].to_vec()), c.clone()))
                .collect(),
        })
    }

    /// Remainder of multivariate division by `divisors`.
    ///
    /// Always reduces the greatest reducible monomial, using the first
    /// divisor (in list order) whose leading monomial divides it.
    pub fn normal_form<F: Field<Elem = E>>(&self, divisors: &[Self], k: &F) -> Result<Self> {
        for g in divisors {
            if g.nvars != self.nvars {
                return Err(Error::ArityMismatch {
                    expected: self.nvars,
                    found: g.nvars,
                });
            }
            if g.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
        }
        let leads: Vec<(&Monomial, E)> = divisors
            .iter()
            .map(|g| {
                let (m, c) = g.leading_term().expect("nonzero divisor");
                (m, k.inv(c).expect("nonzero leading coefficient"))
            })
            .collect();
        let mut p = self.clone();
        let mut rem = Self::zero(self.nvars);
        while let Some((m, c)) = p.terms.pop_last() {
            match leads.iter().position(|(lm, _)| lm.divides(&m)) {
                Some(i) => {
                    let q = m.div(leads[i].0).expect("divisible");
                    let factor = k.neg(&k.mul(&c, &leads[i].1));
                    // the leading term cancels by construction; add the tail only
                    for (gm, gc) in divisors[i].terms.iter().rev().skip(1) {
                        p.add_term(gm.mul(&q), k.mul(&factor, gc), k);
                    }
                }
                None => {
                    rem.terms.insert(m, c);
                }
            }
        }
        Ok(rem)
    }

    /// `q` with `self = q * g`, or `None` when `g` does not divide `self`.
    pub fn exact_divide<F: Field<Elem = E>>(&self, g: &Self, k: &F) -> Option<Self> {
        let (gm, gc) = g.leading_term()?;
        let ginv = k.inv(gc).ok()?;
        let mut p = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((m, c)) = p.leading_term() {
            let qm = m.div(gm)?;
            let qc = k.mul(c, &ginv);
            p.add_scaled(&k.neg(&qc), &qm, g, k);
            q.add_term(qm, qc, k);
        }
        Some(q)
    }

    pub fn render<F: Field<Elem = E>>(&self, k: &F) -> String {
        self.render_from(0, k)
    }

    /// Canonical text: descending lex order, variables `x{i+1+offset}`.
    pub fn render_from<F: Field<Elem = E>>(&self, offset: usize, k: &F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = k.is_negative(c);
            let abs = if negative { k.neg(c) } else { c.clone() };
            match (i == 0, negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            if m.is_one() {
                out.push_str(&k.render(&abs));
            } else if k.is_one(&abs) {
                out.push_str(&m.render_from(offset));
            } else {
                out.push_str(&k.render(&abs));
                out.push('*');
                out.push_str(&m.render_from(offset));
            }
        }
        out
    }
}

/// Parse the canonical rendering back (sums of `c*x1^a*x2^b` terms).
///
/// Only used by tests and fixtures; accepts exactly what `render` emits plus
/// arbitrary whitespace.
pub fn parse_polynomial<F: Field>(text: &str, nvars: usize, k: &F) -> Result<Polynomial<F::Elem>> {
    let bad = || Error::MalformedScalar(text.to_string());
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Polynomial::zero(nvars);
    if compact == "0" {
        return Ok(p);
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            pieces.push((negative, std::mem::take(&mut cur)));
            negative = ch == '-';
        } else if ch == '-' && i == 0 {
            negative = true;
        } else {
            cur.push(ch);
        }
    }
    pieces.push((negative, cur));
    for (neg, piece) in pieces {
        if piece.is_empty() {
            return Err(bad());
        }
        let mut coeff = k.one();
        let mut exps = vec![0u32; nvars];
        for factor in piece.split('*') {
            if let Some(var) = factor.strip_prefix('x') {
                let (idx, e) = match var.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
                    None => (var, 1),
                };
                let i: usize = idx.parse().map_err(|_| bad())?;
                if i == 0 || i > nvars {
                    return Err(bad());
                }
                exps[i - 1] += e;
            } else {
                coeff = k.mul(&coeff, &k.parse(factor)?);
            }
        }
        if neg {
            coeff = k.neg(&coeff);
        }
        p.add_term(Monomial::new(exps), coeff, k);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn qp(s: &str, n: usize) -> Polynomial<num_rational::BigRational> {
        parse_polynomial(s, n, &Rationals).unwrap()
    }

    #[test]
    fn lex_examples() {
        let a = Monomial::new(vec![1, 0]);
        let b = Monomial::new(vec![0, 1]);
        assert_eq!(lex_compare(&a, &b).unwrap(), Ordering::Less);
        let a = Monomial::new(vec![0, 2, 0]);
        let b = Monomial::new(vec![1, 1, 0]);
        assert_eq!(lex_compare(&a, &b).unwrap(), Ordering::Greater);
        assert_eq!(lex_compare(&a, &a).unwrap(), Ordering::Equal);
        assert!(lex_compare(&a, &Monomial::one(2)).is_err());
    }

    #[test]
    fn leading_data_examples() {
        let k = Rationals;
        let f = qp("x3^2 + x2*x3 - x3 - x1*x2*x3 + x1*x3", 3);
        let (lc, lm) = f.leading_data(2, &k).unwrap();
        assert_eq!(lc, Polynomial::one(3, &k));
        assert_eq!(lm, Monomial::new(vec![0, 0, 2]));

        let f = qp("x1*x2", 2);
        let (lc, lm) = f.leading_data(1, &k).unwrap();
        assert_eq!(lc, qp("x1", 2));
        assert_eq!(lm, Monomial::new(vec![0, 1]));

        let f = qp("x1^2 - x1", 3);
        let (lc, lm) = f.leading_data(0, &k).unwrap();
        assert_eq!(lc, Polynomial::one(3, &k));
        assert_eq!(lm, Monomial::new(vec![2, 0, 0]));

        assert_eq!(
            Polynomial::<num_rational::BigRational>::zero(2).leading_data(0, &k),
            Err(Error::ZeroPolynomial)
        );
        assert!(f.leading_data(3, &k).is_err());
    }

    #[test]
    fn lc_t_collects_lower_variables() {
        let k = Rationals;
        // (x1^2 - 1) x2 x3 + x1 x3 + x3: LC_2 = x1^2 - 1 with LM_2 = x2*x3
        let f = qp("x1^2*x2*x3 - x2*x3 + x1*x3 + x3", 3);
        let (lc, lm) = f.leading_data(2, &k).unwrap();
        assert_eq!(lc, qp("x1^2*x2 - x2 + x1 + 1", 3));
        assert_eq!(lm, Monomial::new(vec![0, 0, 1]));
        let (lc1, lm1) = f.leading_data(1, &k).unwrap();
        assert_eq!(lc1, qp("x1^2 - 1", 3));
        assert_eq!(lm1, Monomial::new(vec![0, 1, 1]));
    }

    #[test]
    fn normal_form_examples() {
        let k = Rationals;
        let nf = qp("x1*x2", 2).normal_form(&[qp("x1", 2)], &k).unwrap();
        assert!(nf.is_zero());
        let nf = qp("x2^2 + x1", 2).normal_form(&[qp("x2^2 - x1", 2)], &k).unwrap();
        assert_eq!(nf, qp("2*x1", 2));
        let nf = qp("x1", 2).normal_form(&[qp("x2", 2)], &k).unwrap();
        assert_eq!(nf, qp("x1", 2));
        assert!(qp("x1", 2).normal_form(&[qp("x2", 3)], &k).is_err());
    }

    #[test]
    fn exact_divide_examples() {
        let k = Rationals;
        let q = qp("x1^2*x2 - x1*x2", 2).exact_divide(&qp("x1^2 - x1", 2), &k);
        assert_eq!(q, Some(qp("x2", 2)));
        assert_eq!(qp("x1*x2 + 1", 2).exact_divide(&qp("x1", 2), &k), None);
        assert_eq!(
            Polynomial::zero(2).exact_divide(&qp("x1", 2), &k),
            Some(Polynomial::zero(2))
        );
    }

    #[test]
    fn render_canonical() {
        let k = Rationals;
        let f = qp("x3^2 + x2*x3 - x3 - x1*x2*x3 + x1*x3", 3);
        assert_eq!(f.render(&k), "x3^2 - x1*x2*x3 + x2*x3 + x1*x3 - x3");
        assert_eq!(qp("-3/2*x1 + 1", 2).render(&k), "-3/2*x1 + 1");
        assert_eq!(Polynomial::<num_rational::BigRational>::zero(2).render(&k), "0");
        let f7 = PrimeField::new(7).unwrap();
        let p = parse_polynomial("x1^3 - 3*x1^2 + 2*x1", 1, &f7).unwrap();
        assert_eq!(p.render(&f7), "x1^3 + 4*x1^2 + 2*x1");
        assert_eq!(qp("x1", 3).render_from(1, &k), "x2");
    }

    #[test]
    fn from_roots_and_evaluate() {
        let k = Rationals;
        let roots: Vec<_> = ["0", "1", "2"].iter().map(|s| k.parse(s).unwrap()).collect();
        let p = Polynomial::from_roots(&roots, 0, 1, &k);
        assert_eq!(p, qp("x1^3 - 3*x1^2 + 2*x1", 1));
        for r in &roots {
            assert!(k.is_zero(&p.evaluate(std::slice::from_ref(r), &k).unwrap()));
        }
    }

    #[test]
    fn substitute_prefix_drops_variables() {
        let k = Rationals;
        let f = qp("x1*x2*x3 + x2^2 + 3", 3);
        let g = f.substitute_prefix(&[k.from_i64(2)], &k).unwrap();
        assert_eq!(g, qp("2*x1*x2 + x1^2 + 3", 2));
    }

    fn arb_monomial(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, n).prop_map(Monomial::new)
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = Polynomial<u64>> {
        proptest::collection::vec((arb_monomial(n), 0u64..7), 0..6).prop_map(move |ts| {
            let k = PrimeField::new(7).unwrap();
            Polynomial::from_terms(n, ts, &k).unwrap()
        })
    }

    proptest! {
        #[test]
        fn lex_is_monomial_order(a in arb_monomial(3), b in arb_monomial(3), m in arb_monomial(3)) {
            if a < b {
                prop_assert!(a.mul(&m) < b.mul(&m));
            }
            prop_assert!(Monomial::one(3) <= a);
        }

        #[test]
        fn normal_form_is_idempotent(f in arb_poly(3), g1 in arb_poly(3), g2 in arb_poly(3)) {
            let k = PrimeField::new(7).unwrap();
            let gs: Vec<_> = [g1, g2].into_iter().filter(|g| !g.is_zero()).collect();
            let r = f.normal_form(&gs, &k).unwrap();
            prop_assert_eq!(r.normal_form(&gs, &k).unwrap(), r.clone());
            for (m, _) in r.terms() {
                prop_assert!(gs.iter().all(|g| !g.leading_monomial().unwrap().divides(m)));
            }
        }

        #[test]
        fn leading_data_recombines(f in arb_poly(3), t in 0usize..3) {
            let k = PrimeField::new(7).unwrap();
            prop_assume!(!f.is_zero());
            let (lc, lm) = f.leading_data(t, &k).unwrap();
            prop_assert_eq!(lc.leading_monomial().unwrap().mul(&lm), f.leading_monomial().unwrap().clone());
        }

        #[test]
        fn exact_divide_recovers_factor(f in arb_poly(2), g in arb_poly(2)) {
            let k = PrimeField::new(7).unwrap();
            prop_assume!(!g.is_zero());
            let prod = f.mul(&g, &k);
            prop_assert_eq!(prod.exact_divide(&g, &k), Some(f));
        }

        #[test]
        fn render_parse_roundtrip(f in arb_poly(3)) {
            let k = PrimeField::new(7).unwrap();
            prop_assert_eq!(parse_polynomial(&f.render(&k), 3, &k).unwrap(), f);
        }
    }
}
