//! Exact sparse multivariate polynomials with weighted variables.
//!
//! A [`Poly`] maps [`Monomial`]s to reduced rationals and carries the
//! [`VarSet`] it lives in. Variables have integer weights so that
//! w-homogeneity can be checked; plain coordinates `x_i` have weight 1.
//!
//! Terms are kept in graded-lex order, which is also the output order
//! (descending).

mod format;
pub mod linalg;
pub mod matrix;
mod numeric;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use format::{parse_rational, rational_text, PolyJson, TermJson};
pub use numeric::{DoubleDouble, NumericPoly, Precision, Real};

/// Exact coefficient type.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    pub weight: u32,
}

/// Ordered list of named, weighted variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    vars: Vec<Var>,
}

impl VarSet {
    pub fn new(vars: Vec<Var>) -> Arc<Self> {
        Arc::new(VarSet { vars })
    }

    /// Variables `{prefix}1 .. {prefix}n` with the given weights.
    pub fn named(prefix: &str, weights: &[u32]) -> Arc<Self> {
        let vars = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| Var {
                name: format!("{prefix}{}", i + 1),
                weight: w,
            })
            .collect();
        Self::new(vars)
    }

    /// Coordinates `x1 .. xn`, all of weight 1.
    pub fn x(n: usize) -> Arc<Self> {
        Self::named("x", &vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.vars[i].weight
    }

    pub fn weights(&self) -> Vec<u32> {
        self.vars.iter().map(|v| v.weight).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    fn describe(&self) -> String {
        let names: Vec<&str> = self.vars.iter().map(|v| v.name.as_str()).collect();
        format!("[{}]", names.join(","))
    }
}

fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn check_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> Result<()> {
    if same_vars(a, b) {
        Ok(())
    } else {
        Err(Error::VarsetMismatch {
            left: a.describe(),
            right: b.describe(),
        })
    }
}

/// Exponent vector with its total degree cached.
///
/// The derived ordering compares total degree first and then exponents
/// lexicographically, which is graded-lex with `x1 > x2 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Monomial { deg, exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial {
            deg: 0,
            exps: vec![0; n],
        }
    }

    /// `x_i^e` among `n` variables.
    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; n];
        exps[i] = e;
        Monomial { deg: e, exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn weighted_degree(&self, vars: &VarSet) -> u32 {
        self.exps
            .iter()
            .zip(vars.vars())
            .map(|(e, v)| e * v.weight)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + other.deg,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            deg: self.deg - other.deg,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Lexicographic comparison ignoring the degree.
    pub fn lex_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        self.exps.cmp(&other.exps)
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn integer(vars: &Arc<VarSet>, c: i64) -> Self {
        Self::constant(vars, q(c))
    }

    /// The variable with index `i`.
    pub fn var(vars: &Arc<VarSet>, i: usize) -> Self {
        assert!(i < vars.len(), "variable index {i} out of range");
        Self::monomial(vars, Monomial::var(vars.len(), i, 1), Rational::one())
    }

    pub fn monomial(vars: &Arc<VarSet>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), vars.len(), "monomial length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(vars: &Arc<VarSet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len(), "monomial length");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Coefficient of the constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars()))
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Graded-lex leading term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Common weight of all terms.
    pub fn weight_of(&self) -> Result<u32> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroWeight)?;
        let w = first.weighted_degree(&self.vars);
        for m in it {
            let w2 = m.weighted_degree(&self.vars);
            if w2 != w {
                return Err(Error::NotHomogeneous {
                    first: self.monomial_text(first),
                    first_weight: w,
                    second: self.monomial_text(m),
                    second_weight: w2,
                });
            }
        }
        Ok(w)
    }

    /// True when every term has weighted degree `w` (the zero polynomial qualifies).
    pub fn is_homogeneous_of(&self, w: u32) -> bool {
        self.terms
            .keys()
            .all(|m| m.weighted_degree(&self.vars) == w)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * shift * other` in place.
    pub fn add_scaled(&mut self, other: &Poly, c: &Rational, shift: Option<&Monomial>) {
        assert!(same_vars(&self.vars, &other.vars), "variable sets differ");
        if c.is_zero() {
            return;
        }
        for (m, k) in &other.terms {
            let m = match shift {
                Some(s) => m.mul(s),
                None => m.clone(),
            };
            self.add_term(m, k * c);
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        check_vars(&self.vars, &other.vars)?;
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        check_vars(&self.vars, &other.vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        check_vars(&self.vars, &other.vars)?;
        Ok(mul_terms(self, other))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Poly {
        self.scale(&q(c))
    }

    /// Multiplication by a single monomial.
    pub fn shift(&self, m: &Monomial) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.mul(m), k.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.vars);
        if e == 0 {
            return result;
        }
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = mul_terms(&result, &base);
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = mul_terms(&base, &base);
        }
        result
    }

    /// Formal partial derivative with respect to variable `i`.
    ///
    /// Panics if `i` is out of range.
    pub fn differentiate(&self, i: usize) -> Poly {
        assert!(i < self.nvars(), "variable index {i} out of range");
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            out.terms.insert(
                Monomial::new(exps),
                c * Rational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.differentiate(i)).collect()
    }

    /// Simultaneous substitution `x_i -> images[i]` for every variable.
    ///
    /// All images must share one variable set, which becomes the result's.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars() {
            return Err(Error::Unassigned(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        for p in images {
            check_vars(&target, &p.vars)?;
        }
        let terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        let mut sorted = terms;
        sorted.sort_by(|a, b| a.0.exps.cmp(&b.0.exps));
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(&target), p.clone()])
            .collect();
        Ok(compose_rec(&sorted, 0, &mut powers, &target))
    }

    /// Substitutes the listed variables.
    ///
    /// Unlisted variables are carried over to the target variable set by
    /// name; if the name does not exist there an error is returned.
    pub fn substitute(&self, assignments: &[(usize, Poly)]) -> Result<Poly> {
        let target = match assignments.first() {
            Some((_, p)) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        let mut images: Vec<Option<Poly>> = vec![None; self.nvars()];
        for (i, p) in assignments {
            if *i >= self.nvars() {
                return Err(Error::BadVariable(*i));
            }
            check_vars(&target, &p.vars)?;
            images[*i] = Some(p.clone());
        }
        let mut full = Vec::with_capacity(self.nvars());
        for (i, img) in images.into_iter().enumerate() {
            match img {
                Some(p) => full.push(p),
                None => {
                    let name = self.vars.name(i);
                    let j = target
                        .index_of(name)
                        .ok_or_else(|| Error::Unassigned(name.to_string()))?;
                    full.push(Poly::var(&target, j));
                }
            }
        }
        self.compose(&full)
    }

    /// Reinterprets the polynomial in another variable set of the same size.
    pub fn rename(&self, vars: &Arc<VarSet>) -> Result<Poly> {
        if vars.len() != self.nvars() {
            return Err(Error::VarsetMismatch {
                left: self.vars.describe(),
                right: vars.describe(),
            });
        }
        Ok(Poly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Embeds into a larger variable set whose first variables are ours.
    pub fn extend_vars(&self, vars: &Arc<VarSet>) -> Poly {
        assert!(vars.len() >= self.nvars());
        let extra = vars.len() - self.nvars();
        Poly {
            vars: vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exps.clone();
                    exps.extend(std::iter::repeat_n(0, extra));
                    (Monomial { deg: m.deg, exps }, c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient `self / d`.
    pub fn exact_divide(&self, d: &Poly) -> Result<Poly> {
        check_vars(&self.vars, &d.vars)?;
        let (lm, lc) = match d.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => {
                return Err(Error::NotDivisible {
                    remainder: "division by zero".into(),
                })
            }
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.vars);
        while let Some((m, c)) = rem.leading_term() {
            let t = match m.div(&lm) {
                Some(t) => t,
                None => {
                    return Err(Error::NotDivisible {
                        remainder: rem.to_string(),
                    })
                }
            };
            let k = c / &lc;
            rem.add_scaled(d, &-&k, Some(&t));
            quot.terms.insert(t, k);
        }
        Ok(quot)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars(), "point length");
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.exps) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            sum += t;
        }
        sum
    }

    pub fn evaluate_real<T: Real>(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.nvars(), "point length");
        let mut sum = T::zero();
        for (m, c) in &self.terms {
            let mut t = T::from_rational(c);
            for (x, &e) in point.iter().zip(&m.exps) {
                if e > 0 {
                    t = t * x.powi(e);
                }
            }
            sum = sum + t;
        }
        sum
    }

    pub fn to_numeric<T: Real>(&self) -> NumericPoly<T> {
        NumericPoly::from_terms(
            &self.vars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), T::from_rational(c))),
        )
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Largest absolute coefficient, zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Whether variable `i` occurs.
    pub fn contains_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exps[i] > 0)
    }

    /// Highest exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exps[i]).max().unwrap_or(0)
    }

    /// Keeps only terms accepted by `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

fn compose_rec(
    terms: &[(&Monomial, &Rational)],
    var: usize,
    powers: &mut Vec<Vec<Poly>>,
    target: &Arc<VarSet>,
) -> Poly {
    if var == powers.len() {
        let mut c = Rational::zero();
        for (_, k) in terms {
            c += *k;
        }
        return Poly::constant(target, c);
    }
    let mut out = Poly::zero(target);
    let mut start = 0;
    while start < terms.len() {
        let e = terms[start].0.exps[var];
        let mut end = start + 1;
        while end < terms.len() && terms[end].0.exps[var] == e {
            end += 1;
        }
        let inner = compose_rec(&terms[start..end], var + 1, powers, target);
        if !inner.is_zero() {
            let table = &mut powers[var];
            while table.len() <= e as usize {
                let next = mul_terms(table.last().unwrap(), &table[1]);
                table.push(next);
            }
            let prod = if e == 0 {
                inner
            } else {
                mul_terms(&inner, &powers[var][e as usize])
            };
            out = if out.terms.len() >= prod.terms.len() {
                let mut o = out;
                for (m, c) in prod.terms {
                    o.add_term(m, c);
                }
                o
            } else {
                let mut o = prod;
                for (m, c) in out.terms {
                    o.add_term(m, c);
                }
                o
            };
        }
        start = end;
    }
    out
}

/// Common denominator and integer numerators.
fn integerize(p: &Poly) -> (BigInt, Vec<(&Monomial, BigInt)>) {
    let mut l = BigInt::one();
    for c in p.terms.values() {
        if !c.denom().is_one() {
            l = l.lcm(c.denom());
        }
    }
    let nums = p
        .terms
        .iter()
        .map(|(m, c)| (m, c.numer() * (&l / c.denom())))
        .collect();
    (l, nums)
}

fn small(nums: &[(&Monomial, BigInt)]) -> Option<(Vec<i64>, u128)> {
    let mut out = Vec::with_capacity(nums.len());
    let mut max = 0u128;
    for (_, c) in nums {
        let v = c.to_i64()?;
        max = max.max(v.unsigned_abs() as u128);
        out.push(v);
    }
    Some((out, max))
}

fn mul_terms(a: &Poly, b: &Poly) -> Poly {
    let vars = &a.vars;
    if a.is_zero() || b.is_zero() {
        return Poly::zero(vars);
    }
    if a.terms.len() == 1 || b.terms.len() == 1 {
        let (single, other) = if a.terms.len() == 1 { (a, b) } else { (b, a) };
        let (m, c) = single.terms.iter().next().unwrap();
        return Poly {
            vars: vars.clone(),
            terms: other.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect(),
        };
    }
    let (da, na) = integerize(a);
    let (db, nb) = integerize(b);
    let den = da * db;
    let fast = match (small(&na), small(&nb)) {
        (Some((sa, ma)), Some((sb, mb))) => {
            let n = na.len().min(nb.len()) as u128;
            ma.checked_mul(mb)
                .and_then(|x| x.checked_mul(n))
                .filter(|&x| x < i128::MAX as u128)
                .map(|_| (sa, sb))
        }
        _ => None,
    };
    let mut terms = BTreeMap::new();
    if let Some((sa, sb)) = fast {
        let mut acc: FxHashMap<Monomial, i128> = FxHashMap::default();
        for ((ma, _), ca) in na.iter().zip(&sa) {
            for ((mb, _), cb) in nb.iter().zip(&sb) {
                *acc.entry(ma.mul(mb)).or_insert(0) += (*ca as i128) * (*cb as i128);
            }
        }
        for (m, c) in acc {
            if c != 0 {
                terms.insert(m, Rational::new(BigInt::from(c), den.clone()));
            }
        }
    } else {
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (ma, ca) in &na {
            for (mb, cb) in &nb {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        for (m, c) in acc {
            if !c.is_zero() {
                terms.insert(m, Rational::new(c, den.clone()));
            }
        }
    }
    Poly {
        vars: vars.clone(),
        terms,
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::poly_text(self))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$try(rhs)
                    .expect("polynomials over different variable sets")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests;
