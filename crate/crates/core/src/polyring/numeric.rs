//! Floating-point polynomials for the irrational-coefficient path.
//!
//! Error model: every coefficient is the exact value rounded once per
//! arithmetic step, so a product of `k` factors carries a relative error of
//! roughly `k * eps` per term (`eps` = 2^-53 for `f64`, about 2^-105 for
//! [`DoubleDouble`]). Cancellation is only controlled relative to the largest
//! coefficient, which is why comparisons scale tolerances by magnitude.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::ToPrimitive;

use super::{Monomial, Rational, VarSet};

/// Minimal real-number interface shared by `f64` and [`DoubleDouble`].
pub trait Real:
    Copy
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;

    fn powi(self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r * self;
        }
        r
    }
}

impl Real for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn powi(self, e: u32) -> Self {
        f64::powi(self, e as i32)
    }
}

/// Unevaluated sum `hi + lo` of two doubles, about 106 bits of precision.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self - o * DoubleDouble::from_f64(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * DoubleDouble::from_f64(q2);
        let q3 = r.hi / o.hi;
        DoubleDouble::new(q1, q2) + DoubleDouble::from_f64(q3)
    }
}

impl Real for DoubleDouble {
    fn zero() -> Self {
        DoubleDouble { hi: 0.0, lo: 0.0 }
    }
    fn one() -> Self {
        DoubleDouble { hi: 1.0, lo: 0.0 }
    }
    fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }
    fn from_rational(q: &Rational) -> Self {
        let hi = q.to_f64().unwrap_or(f64::NAN);
        let rest = match Rational::from_float(hi) {
            Some(h) => (q - h).to_f64().unwrap_or(0.0),
            None => 0.0,
        };
        DoubleDouble::new(hi, rest)
    }
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::zero();
        }
        let x = DoubleDouble::from_f64(self.hi.sqrt());
        let half = DoubleDouble::from_f64(0.5);
        x + (self - x * x) * half / x
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}

/// Working precision for numeric polynomials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Precision {
    #[default]
    F64,
    DoubleDouble,
}

/// Sparse polynomial with floating-point coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericPoly<T: Real = f64> {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Real> NumericPoly<T> {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        NumericPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: T) -> Self {
        Self::from_terms(vars, [(Monomial::one(vars.len()), c)])
    }

    pub fn var(vars: &Arc<VarSet>, i: usize) -> Self {
        Self::from_terms(vars, [(Monomial::var(vars.len(), i, 1), T::one())])
    }

    /// Linear form `sum_i c_i x_i`.
    pub fn linear(vars: &Arc<VarSet>, coeffs: &[T]) -> Self {
        Self::from_terms(
            vars,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (Monomial::var(vars.len(), i, 1), c)),
        )
    }

    pub fn from_terms<I>(vars: &Arc<VarSet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, T)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter().rev()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.get(m).copied().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: T) {
        if c == T::zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = *e.get() + c;
                if v == T::zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.vars, o.vars, "variable sets differ");
        let mut out = self.clone();
        for (m, &c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-T::one()))
    }

    pub fn scale(&self, c: T) -> Self {
        NumericPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, &k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.vars, o.vars, "variable sets differ");
        let mut acc: BTreeMap<Monomial, T> = BTreeMap::new();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &o.terms {
                let e = acc.entry(ma.mul(mb)).or_insert_with(T::zero);
                *e = *e + ca * cb;
            }
        }
        acc.retain(|_, v| *v != T::zero());
        NumericPoly {
            vars: self.vars.clone(),
            terms: acc,
        }
    }

    pub fn differentiate(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, &c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.terms
                .insert(Monomial::new(exps), c * T::from_f64(e as f64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.vars.len())
            .map(|i| self.differentiate(i))
            .collect()
    }

    pub fn evaluate(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.vars.len(), "point length");
        let mut sum = T::zero();
        for (m, &c) in &self.terms {
            let mut t = c;
            for (&x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = t * x.powi(e);
                }
            }
            sum = sum + t;
        }
        sum
    }

    pub fn max_abs_coeff(&self) -> T {
        let mut m = T::zero();
        for &c in self.terms.values() {
            if c.abs() > m {
                m = c.abs();
            }
        }
        m
    }

    /// Drops coefficients below `rel * max|coeff|`.
    pub fn prune(&self, rel: f64) -> Self {
        let cut = self.max_abs_coeff().to_f64() * rel;
        NumericPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.abs().to_f64() > cut)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Drops every term in which variable `i` occurs (restriction to `x_i = 0`)
    /// and removes that variable.
    pub fn restrict_zero(&self, i: usize, vars: &Arc<VarSet>) -> Self {
        assert_eq!(vars.len() + 1, self.vars.len());
        NumericPoly {
            vars: vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exps()[i] == 0)
                .map(|(m, &c)| {
                    let mut e = m.exps().to_vec();
                    e.remove(i);
                    (Monomial::new(e), c)
                })
                .collect(),
        }
    }

    pub fn to_f64(&self) -> NumericPoly<f64> {
        NumericPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.to_f64()))
                .collect(),
        }
    }

    /// Largest coefficient difference against `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.extend(other.terms.keys());
        keys.iter()
            .map(|m| (self.coeff(m) - other.coeff(m)).abs().to_f64())
            .fold(0.0, f64::max)
    }
}
