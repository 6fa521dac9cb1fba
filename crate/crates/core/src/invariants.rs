//! Reflection-group catalog: degrees, roots and basic invariant polynomials.
//!
//! Coordinates are `x1..xn`. The `A_n` invariants are produced by rotating
//! the elementary symmetric polynomials of `n+1` variables so that the
//! invariant line lands on the last axis, rescaling, and restricting to the
//! hyperplane; their coefficients are irrational and so only a numeric form
//! exists.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyring::{q, Monomial, NumericPoly, Poly, Rational, Real, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    S,
    A,
    B,
    D,
    I2,
}

/// A reflection group: family, rank and (for dihedral groups) `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    family: Family,
    rank: usize,
    m: u32,
}

impl GroupSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::S | Family::A => 1,
            Family::B | Family::D => 2,
            Family::I2 => {
                return Err(Error::InvalidGroup("use GroupSpec::dihedral for I2".into()));
            }
        };
        if rank < min {
            return Err(Error::InvalidGroup(format!(
                "{family:?}{rank}: rank must be at least {min}"
            )));
        }
        Ok(GroupSpec { family, rank, m: 0 })
    }

    pub fn dihedral(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidGroup(format!(
                "I2({m}): m must be at least 2"
            )));
        }
        Ok(GroupSpec {
            family: Family::I2,
            rank: 2,
            m,
        })
    }

    pub fn s(n: usize) -> Self {
        Self::new(Family::S, n).expect("valid S rank")
    }

    pub fn a(n: usize) -> Self {
        Self::new(Family::A, n).expect("valid A rank")
    }

    pub fn b(n: usize) -> Self {
        Self::new(Family::B, n).expect("valid B rank")
    }

    pub fn d(n: usize) -> Self {
        Self::new(Family::D, n).expect("valid D rank")
    }

    pub fn i2(m: u32) -> Self {
        Self::dihedral(m).expect("valid dihedral order")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dihedral parameter; `None` outside `I2`.
    pub fn m(&self) -> Option<u32> {
        (self.family == Family::I2).then_some(self.m)
    }

    /// Degrees `d_a` in labeling order (for `D_n` the degree-`n` invariant is last).
    pub fn degrees(&self) -> Vec<u32> {
        let n = self.rank as u32;
        match self.family {
            Family::S => (1..=n).collect(),
            Family::A => (2..=n + 1).collect(),
            Family::B => (1..=n).map(|a| 2 * a).collect(),
            Family::D => (1..n).map(|a| 2 * a).chain(std::iter::once(n)).collect(),
            Family::I2 => vec![2, self.m],
        }
    }

    /// Group order from the family's closed form.
    pub fn order(&self) -> BigInt {
        let fact = |k: usize| (1..=k).fold(BigInt::one(), |acc, i| acc * i);
        let n = self.rank;
        match self.family {
            Family::S => fact(n),
            Family::A => fact(n + 1),
            Family::B => fact(n) << n,
            Family::D => fact(n) << (n - 1),
            Family::I2 => BigInt::from(2 * self.m),
        }
    }

    /// Number of reflections, `card(R+)`.
    pub fn reflection_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::S => n * (n - 1) / 2,
            Family::A => n * (n + 1) / 2,
            Family::B => n * n,
            Family::D => n * (n - 1),
            Family::I2 => self.m as usize,
        }
    }

    /// Dimension of the space the roots live in (`n+1` for `A_n`).
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    /// Whether `p1 = |x|^2` in the paper basis (all families except `S`).
    pub fn has_quadratic_p1(&self) -> bool {
        self.family != Family::S
    }

    /// Caveats attached to inputs outside the irreducible classification range.
    pub fn notes(&self) -> Vec<String> {
        let mut out = Vec::new();
        match (self.family, self.rank) {
            (Family::S, _) => out.push("S_n is reducible (fixes the line x1 = ... = xn)".into()),
            (Family::D, 2) => out.push("D2 is reducible (isomorphic to A1 x A1)".into()),
            (Family::D, 3) => out.push("D3 is isomorphic to A3; accepted for cross-checks".into()),
            (Family::I2, _) if self.m == 2 => {
                out.push("I2(2) is reducible (isomorphic to A1 x A1)".into())
            }
            _ => {}
        }
        out
    }

    /// Variables `p1..pn` weighted by the degrees.
    pub fn p_vars(&self) -> Arc<VarSet> {
        VarSet::named("p", &self.degrees())
    }

    /// Coordinates `x1..xn`.
    pub fn x_vars(&self) -> Arc<VarSet> {
        VarSet::x(self.rank)
    }

    /// Index of the highest-weight variable (`p_{n-1}` for `D_n`).
    pub fn highest_weight_index(&self) -> usize {
        match self.family {
            Family::D if self.rank > 2 => self.rank - 2,
            _ => self.rank - 1,
        }
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::I2 => format!("I2({})", self.m),
            f => format!("{f:?}{}", self.rank),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidGroup(format!("cannot parse group `{s}`"));
        let upper = t.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("I2") {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            let m: u32 = inner.trim().parse().map_err(|_| bad())?;
            return GroupSpec::dihedral(m);
        }
        let mut chars = upper.chars();
        let family = match chars.next() {
            Some('S') => Family::S,
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('D') => Family::D,
            _ => return Err(bad()),
        };
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        GroupSpec::new(family, n)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSubset {
    All,
    Short,
    Long,
}

impl FromStr for RootSubset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(RootSubset::All),
            "short" => Ok(RootSubset::Short),
            "long" => Ok(RootSubset::Long),
            _ => Err(Error::Parse(format!("unknown root subset `{s}`"))),
        }
    }
}

/// A root vector with an exact form when its coordinates are rational.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    exact: Option<Vec<Rational>>,
    numeric: Vec<f64>,
}

impl Root {
    pub fn exact(v: Vec<Rational>) -> Self {
        let numeric = v.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        Root {
            exact: Some(v),
            numeric,
        }
    }

    fn integer(v: &[i64]) -> Self {
        Self::exact(v.iter().map(|&c| q(c)).collect())
    }

    pub fn numeric(v: Vec<f64>) -> Self {
        Root {
            exact: None,
            numeric: v,
        }
    }

    pub fn as_exact(&self) -> Option<&[Rational]> {
        self.exact.as_deref()
    }

    pub fn as_f64(&self) -> &[f64] {
        &self.numeric
    }

    pub fn dim(&self) -> usize {
        self.numeric.len()
    }

    /// The linear form `l_r(x) = r . x`, when the root is exact.
    pub fn linear_form(&self, vars: &Arc<VarSet>) -> Option<Poly> {
        let v = self.exact.as_ref()?;
        assert_eq!(v.len(), vars.len(), "root dimension");
        Some(Poly::from_terms(
            vars,
            v.iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(vars.len(), i, 1), c.clone())),
        ))
    }

    pub fn linear_form_numeric<T: Real>(&self, vars: &Arc<VarSet>) -> NumericPoly<T> {
        let c: Vec<T> = self.numeric.iter().map(|&v| T::from_f64(v)).collect();
        NumericPoly::linear(vars, &c)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub subset: RootSubset,
    pub ambient: usize,
    pub roots: Vec<Root>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Product of the linear forms, when every root is exact.
    pub fn product_of_forms(&self, vars: &Arc<VarSet>) -> Option<Poly> {
        let mut acc = Poly::one(vars);
        for r in &self.roots {
            acc = acc * r.linear_form(vars)?;
        }
        Some(acc)
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn difference_roots(n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![0; n];
            v[i] = 1;
            v[j] = -1;
            out.push(Root::integer(&v));
        }
    }
    out
}

fn sum_roots(n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![0; n];
            v[i] = 1;
            v[j] = 1;
            out.push(Root::integer(&v));
        }
    }
    out
}

/// Positive root of the dihedral group normal to the line at angle `k*pi/m`.
fn dihedral_root(m: u32, k: u32) -> Root {
    let theta = std::f64::consts::PI * k as f64 / m as f64;
    let (mut x, mut y) = (-theta.sin(), theta.cos());
    if x < -1e-15 || (x.abs() <= 1e-15 && y < 0.0) {
        x = -x;
        y = -y;
    }
    if x.abs() <= 1e-15 {
        x = 0.0;
    }
    if y.abs() <= 1e-15 {
        y = 0.0;
    }
    Root::numeric(vec![x, y])
}

/// Positive roots in the normalization of the family listings.
///
/// For `B_n` the short roots are `e_i` and the long roots `e_i +- e_j`.
/// For even `m`, the dihedral `short` subset is the orbit of the simple
/// root `(0,1)` (lines at angles `2k*pi/m`) and `long` is the other orbit.
pub fn positive_roots(g: &GroupSpec, subset: RootSubset) -> Result<RootSet> {
    let n = g.rank();
    let split_ok = match g.family() {
        Family::B => true,
        Family::I2 => g.m.is_multiple_of(2),
        _ => false,
    };
    if subset != RootSubset::All && !split_ok {
        return Err(Error::NotAllowed(format!(
            "{g} has a single root orbit; subset {subset:?} is undefined"
        )));
    }
    let roots = match g.family() {
        Family::S => difference_roots(n),
        Family::A => difference_roots(n + 1),
        Family::B => {
            let short: Vec<Root> = (0..n).map(|i| Root::integer(&unit(n, i))).collect();
            let mut long = difference_roots(n);
            long.extend(sum_roots(n));
            match subset {
                RootSubset::Short => short,
                RootSubset::Long => long,
                RootSubset::All => short.into_iter().chain(long).collect(),
            }
        }
        Family::D => {
            let mut r = difference_roots(n);
            r.extend(sum_roots(n));
            r
        }
        Family::I2 => {
            let m = g.m;
            (0..m)
                .filter(|k| match subset {
                    RootSubset::All => true,
                    RootSubset::Short => k % 2 == 0,
                    RootSubset::Long => k % 2 == 1,
                })
                .map(|k| dihedral_root(m, k))
                .collect()
        }
    };
    Ok(RootSet {
        subset,
        ambient: g.ambient_dim(),
        roots,
    })
}

/// Simple roots generating the group by reflections.
pub fn simple_roots(g: &GroupSpec) -> Vec<Root> {
    let n = g.rank();
    let chain = |dim: usize, count: usize| -> Vec<Root> {
        (0..count)
            .map(|i| {
                let mut v = vec![0; dim];
                v[i] = 1;
                v[i + 1] = -1;
                Root::integer(&v)
            })
            .collect()
    };
    match g.family() {
        Family::S => chain(n, n - 1),
        Family::A => chain(n + 1, n),
        Family::B => {
            let mut r = chain(n, n - 1);
            r.push(Root::integer(&unit(n, n - 1)));
            r
        }
        Family::D => {
            let mut r = chain(n, n - 1);
            let mut v = vec![0; n];
            v[n - 2] = 1;
            v[n - 1] = 1;
            r.push(Root::integer(&v));
            r
        }
        Family::I2 => {
            let phi = -(std::f64::consts::PI - std::f64::consts::PI / g.m as f64);
            vec![
                Root::integer(&[0, 1]),
                Root::numeric(vec![-phi.sin(), phi.cos()]),
            ]
        }
    }
}

/// A real number `rational * sqrt(radicand)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdEntry {
    pub rational: Rational,
    pub radicand: u64,
}

impl SurdEntry {
    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }

    pub fn to_real<T: Real>(&self) -> T {
        T::from_rational(&self.rational) * T::from_f64(self.radicand as f64).sqrt()
    }
}

impl fmt::Display for SurdEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rational.is_zero() {
            return f.write_str("0");
        }
        write!(f, "{}", crate::polyring::rational_text(&self.rational))?;
        if self.radicand != 1 {
            write!(f, "*sqrt({})", self.radicand)?;
        }
        Ok(())
    }
}

/// Orthogonal matrix sending `(1,..,1)/sqrt(dim)` to the last axis.
///
/// Row `k` is an integer vector divided by the square root of its squared
/// norm, which keeps every identity checkable in exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationMatrix {
    rows: Vec<Vec<i64>>,
    norms: Vec<u64>,
}

impl RotationMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn integer_rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Squared norms of the integer rows.
    pub fn row_norms(&self) -> &[u64] {
        &self.norms
    }

    pub fn entry(&self, k: usize, i: usize) -> SurdEntry {
        let nk = self.norms[k];
        let c = self.rows[k][i];
        if c == 0 {
            return SurdEntry {
                rational: Rational::zero(),
                radicand: 1,
            };
        }
        let (outside, inside) = split_square(nk);
        SurdEntry {
            rational: Rational::new(BigInt::from(c), BigInt::from(outside * inside)),
            radicand: inside,
        }
    }

    pub fn to_real<T: Real>(&self) -> Vec<Vec<T>> {
        (0..self.dim())
            .map(|k| {
                (0..self.dim())
                    .map(|i| self.entry(k, i).to_real())
                    .collect()
            })
            .collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.to_real()
    }

    /// `R R^T = I`, checked on the integer rows.
    pub fn is_orthogonal(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| {
            (0..d).all(|b| {
                let dot: i64 = self.rows[a]
                    .iter()
                    .zip(&self.rows[b])
                    .map(|(x, y)| x * y)
                    .sum();
                if a == b {
                    dot as u64 == self.norms[a]
                } else {
                    dot == 0
                }
            })
        })
    }

    /// `det(R) = det(M) / sqrt(prod norms)` for the integer matrix `M`;
    /// returns the exact sign and whether `det(M)^2 = prod norms`.
    pub fn determinant_check(&self) -> (i32, bool) {
        let m: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&c| q(c)).collect())
            .collect();
        let det = crate::polyring::linalg::determinant(&m);
        let prod = self
            .norms
            .iter()
            .fold(BigInt::one(), |acc, &v| acc * BigInt::from(v));
        let sign = if det.is_positive() {
            1
        } else if det.is_negative() {
            -1
        } else {
            0
        };
        (sign, &det * &det == Rational::from_integer(prod))
    }

    /// Exact orthogonality plus determinant `+1`.
    pub fn is_rotation(&self) -> bool {
        let (sign, unit) = self.determinant_check();
        self.is_orthogonal() && sign == 1 && unit
    }
}

/// `v = outside^2 * inside` with `inside` squarefree.
fn split_square(v: u64) -> (u64, u64) {
    let mut outside = 1;
    let mut inside = v;
    let mut f = 2;
    while f * f <= inside {
        while inside.is_multiple_of(f * f) {
            inside /= f * f;
            outside *= f;
        }
        f += 1;
    }
    (outside, inside)
}

pub fn rotation_matrix(dim: usize) -> Result<RotationMatrix> {
    if dim < 2 {
        return Err(Error::InvalidGroup(format!("rotation dimension {dim} < 2")));
    }
    let mut rows = Vec::with_capacity(dim);
    let mut norms = Vec::with_capacity(dim);
    for k in 1..dim {
        let mut r = vec![0i64; dim];
        for c in r.iter_mut().take(k) {
            *c = 1;
        }
        r[k] = -(k as i64);
        rows.push(r);
        norms.push((k * (k + 1)) as u64);
    }
    rows.push(vec![1; dim]);
    norms.push(dim as u64);
    Ok(RotationMatrix { rows, norms })
}

/// Basic invariants in the paper basis.
#[derive(Clone, Debug)]
pub enum BasicInvariants {
    Exact(Vec<Poly>),
    Numeric(Vec<NumericPoly<f64>>),
}

impl BasicInvariants {
    pub fn exact(&self) -> Option<&[Poly]> {
        match self {
            BasicInvariants::Exact(v) => Some(v),
            BasicInvariants::Numeric(_) => None,
        }
    }

    pub fn numeric(&self) -> Vec<NumericPoly<f64>> {
        match self {
            BasicInvariants::Exact(v) => v.iter().map(|p| p.to_numeric()).collect(),
            BasicInvariants::Numeric(v) => v.clone(),
        }
    }
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k);
    rec(0, n, k, &mut cur, &mut f);
}

/// `e_k(x1^power, ..., xn^power)`.
pub fn elementary_symmetric(vars: &Arc<VarSet>, k: usize, power: u32) -> Poly {
    let n = vars.len();
    let mut p = Poly::zero(vars);
    if k > n {
        return p;
    }
    combinations(n, k, |idx| {
        let mut e = vec![0; n];
        for &i in idx {
            e[i] = power;
        }
        p.add_term(Monomial::new(e), Rational::one());
    });
    p
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Real and imaginary parts of `(x1 + i x2)^m`.
pub fn complex_power(vars: &Arc<VarSet>, m: u32) -> (Poly, Poly) {
    assert_eq!(vars.len(), 2);
    let mut re = Poly::zero(vars);
    let mut im = Poly::zero(vars);
    for k in 0..=m {
        let c = binomial(m, k);
        let c = if (k / 2) % 2 == 1 { -c } else { c };
        let mono = Monomial::new(vec![m - k, k]);
        if k % 2 == 0 {
            re.add_term(mono, Rational::from_integer(c));
        } else {
            im.add_term(mono, Rational::from_integer(c));
        }
    }
    (re, im)
}

/// Basic invariants of the family in labeling order.
pub fn basic_invariants(g: &GroupSpec) -> BasicInvariants {
    match g.family() {
        Family::A => BasicInvariants::Numeric(a_invariants::<f64>(g.rank())),
        _ => BasicInvariants::Exact(exact_invariants(g).expect("exact family")),
    }
}

/// Exact invariants for every family except `A`.
pub fn exact_invariants(g: &GroupSpec) -> Option<Vec<Poly>> {
    let n = g.rank();
    let x = g.x_vars();
    Some(match g.family() {
        Family::S => (1..=n).map(|k| elementary_symmetric(&x, k, 1)).collect(),
        Family::B => (1..=n).map(|k| elementary_symmetric(&x, k, 2)).collect(),
        Family::D => (1..n)
            .map(|k| elementary_symmetric(&x, k, 2))
            .chain(std::iter::once(elementary_symmetric(&x, n, 1)))
            .collect(),
        Family::I2 => {
            let p1 = elementary_symmetric(&x, 1, 2);
            vec![p1, complex_power(&x, g.m).0]
        }
        Family::A => return None,
    })
}

/// `A_n` invariants by the rotate, rescale, restrict pipeline.
///
/// Substituting `x = R^T x'` and setting `x'_{n+1} = 0` turns each original
/// coordinate into a linear form in `x'_1..x'_n`; the elementary symmetric
/// polynomials of those forms are then scaled by `-2 (n+1)^{(a-2)/2}`.
pub fn a_invariants<T: Real>(n: usize) -> Vec<NumericPoly<T>> {
    let r = rotation_matrix(n + 1).expect("dimension at least 2");
    let rr: Vec<Vec<T>> = r.to_real();
    let vars = VarSet::x(n);
    let forms: Vec<NumericPoly<T>> = (0..=n)
        .map(|i| {
            let c: Vec<T> = (0..n).map(|k| rr[k][i]).collect();
            NumericPoly::linear(&vars, &c)
        })
        .collect();
    let mut e: Vec<NumericPoly<T>> = vec![NumericPoly::constant(&vars, T::one())];
    e.extend((0..=n).map(|_| NumericPoly::zero(&vars)));
    for (i, l) in forms.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let t = e[k - 1].mul(l);
            e[k] = e[k].add(&t);
        }
    }
    let n1 = T::from_f64((n + 1) as f64);
    (1..=n)
        .map(|a| {
            let scale = T::from_f64(-2.0) * n1.sqrt().powi(a as u32 - 1);
            e[a + 1].scale(scale).prune(1e-14)
        })
        .collect()
}

/// Rotated positive roots of `A_n` as vectors in `R^n`.
pub fn a_rotated_roots<T: Real>(n: usize) -> Vec<Vec<T>> {
    let r = rotation_matrix(n + 1).expect("dimension at least 2");
    let rr: Vec<Vec<T>> = r.to_real();
    let mut out = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            out.push((0..n).map(|k| rr[k][i] - rr[k][j]).collect());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize) -> Arc<VarSet> {
        VarSet::x(n)
    }

    #[test]
    fn parses_group_labels() {
        assert_eq!("S5".parse::<GroupSpec>().unwrap(), GroupSpec::s(5));
        assert_eq!("A3".parse::<GroupSpec>().unwrap(), GroupSpec::a(3));
        assert_eq!("b8".parse::<GroupSpec>().unwrap(), GroupSpec::b(8));
        assert_eq!("D6".parse::<GroupSpec>().unwrap(), GroupSpec::d(6));
        assert_eq!("I2(7)".parse::<GroupSpec>().unwrap(), GroupSpec::i2(7));
        assert_eq!(GroupSpec::i2(7).to_string(), "I2(7)");
        for bad in ["", "X3", "B1", "I2(1)", "I2", "S0", "A", "D1", "I2(x)"] {
            assert!(bad.parse::<GroupSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(GroupSpec::b(3).degrees(), vec![2, 4, 6]);
        assert_eq!(GroupSpec::d(4).degrees(), vec![2, 4, 6, 4]);
        assert_eq!(GroupSpec::a(3).degrees(), vec![2, 3, 4]);
        assert_eq!(GroupSpec::i2(5).degrees(), vec![2, 5]);
    }

    #[test]
    fn small_group_notes() {
        assert!(GroupSpec::d(3).notes()[0].contains("A3"));
        assert!(GroupSpec::b(4).notes().is_empty());
    }

    fn all_groups(max: usize) -> Vec<GroupSpec> {
        let mut out = Vec::new();
        for n in 1..=max {
            out.push(GroupSpec::s(n));
            out.push(GroupSpec::a(n));
            if n >= 2 {
                out.push(GroupSpec::b(n));
                out.push(GroupSpec::d(n));
                out.push(GroupSpec::i2(n as u32));
            }
        }
        out
    }

    #[test]
    fn degree_sum_and_product_laws() {
        for g in all_groups(10) {
            let d = g.degrees();
            let sum: u32 = d.iter().sum();
            assert_eq!(sum as usize, g.reflection_count() + g.rank(), "{g}");
            let prod = d.iter().fold(BigInt::one(), |acc, &v| acc * v);
            assert_eq!(prod, g.order(), "{g}");
            assert_eq!(
                positive_roots(&g, RootSubset::All).unwrap().len(),
                g.reflection_count()
            );
        }
    }

    #[test]
    fn root_examples() {
        let b2 = positive_roots(&GroupSpec::b(2), RootSubset::Short).unwrap();
        assert_eq!(
            b2.roots,
            vec![Root::integer(&[1, 0]), Root::integer(&[0, 1])]
        );
        let d3 = positive_roots(&GroupSpec::d(3), RootSubset::All).unwrap();
        assert_eq!(d3.len(), 6);
        let s3 = positive_roots(&GroupSpec::s(3), RootSubset::All).unwrap();
        assert_eq!(
            s3.roots,
            vec![
                Root::integer(&[1, -1, 0]),
                Root::integer(&[1, 0, -1]),
                Root::integer(&[0, 1, -1])
            ]
        );
        assert!(positive_roots(&GroupSpec::d(4), RootSubset::Short).is_err());
        assert!(positive_roots(&GroupSpec::i2(5), RootSubset::Long).is_err());
        let b5 = GroupSpec::b(5);
        assert_eq!(positive_roots(&b5, RootSubset::Short).unwrap().len(), 5);
        assert_eq!(positive_roots(&b5, RootSubset::Long).unwrap().len(), 20);
        let i8 = GroupSpec::i2(8);
        assert_eq!(positive_roots(&i8, RootSubset::Short).unwrap().len(), 4);
        assert_eq!(positive_roots(&i8, RootSubset::Long).unwrap().len(), 4);
    }

    #[test]
    fn dihedral_roots_are_positive_and_distinct() {
        for m in 2..=12 {
            let rs = positive_roots(&GroupSpec::i2(m), RootSubset::All).unwrap();
            for r in &rs.roots {
                let v = r.as_f64();
                assert!(v[0] > 1e-12 || (v[0] == 0.0 && v[1] > 0.0), "{v:?}");
                assert!((v[0] * v[0] + v[1] * v[1] - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn invariant_examples() {
        let s2 = exact_invariants(&GroupSpec::s(2)).unwrap();
        assert_eq!(s2[0].to_string(), "x1 + x2");
        assert_eq!(s2[1].to_string(), "x1*x2");
        let b2 = exact_invariants(&GroupSpec::b(2)).unwrap();
        assert_eq!(b2[0].to_string(), "x1^2 + x2^2");
        assert_eq!(b2[1].to_string(), "x1^2*x2^2");
        let i4 = exact_invariants(&GroupSpec::i2(4)).unwrap();
        assert_eq!(i4[1].to_string(), "x1^4 - 6*x1^2*x2^2 + x2^4");
    }

    #[test]
    fn complex_power_matches_expansion() {
        let v = x(2);
        let z = Poly::parse("x1", &v).unwrap();
        let w = Poly::parse("x2", &v).unwrap();
        let (mut re, mut im) = (Poly::one(&v), Poly::zero(&v));
        for m in 1..=9 {
            let nre = &re * &z - &im * &w;
            let nim = &re * &w + &im * &z;
            re = nre;
            im = nim;
            assert_eq!(complex_power(&v, m), (re.clone(), im.clone()));
        }
    }

    #[test]
    fn b_and_d_share_invariants() {
        for n in 2..=7 {
            let b = exact_invariants(&GroupSpec::b(n)).unwrap();
            let d = exact_invariants(&GroupSpec::d(n)).unwrap();
            assert_eq!(b[..n - 1], d[..n - 1]);
            assert_eq!(d[n - 1].pow(2), b[n - 1]);
        }
    }

    fn reflect_exact(r: &[Rational], vars: &Arc<VarSet>) -> Vec<Poly> {
        let n = r.len();
        let rr: Rational = r.iter().map(|c| c * c).sum();
        let dot = Poly::from_terms(
            vars,
            r.iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i, 1), c.clone())),
        );
        (0..n)
            .map(|i| Poly::var(vars, i) - dot.scale(&(q(2) * &r[i] / &rr)))
            .collect()
    }

    #[test]
    fn exact_invariants_are_fixed_by_simple_reflections() {
        for g in all_groups(6) {
            let Some(inv) = exact_invariants(&g) else {
                continue;
            };
            let v = g.x_vars();
            for root in simple_roots(&g) {
                let Some(r) = root.as_exact() else { continue };
                let imgs = reflect_exact(r, &v);
                for p in &inv {
                    assert_eq!(&p.compose(&imgs).unwrap(), p, "{g}");
                }
            }
        }
    }

    #[test]
    fn dihedral_invariants_fixed_numerically() {
        for m in 2..=12 {
            let g = GroupSpec::i2(m);
            let inv = exact_invariants(&g).unwrap();
            for root in simple_roots(&g) {
                let a = root.as_f64();
                for &(x1, x2) in &[(0.3, -0.7), (1.1, 0.4), (-0.9, 0.2)] {
                    let d = 2.0 * (a[0] * x1 + a[1] * x2) / (a[0] * a[0] + a[1] * a[1]);
                    let y = [x1 - d * a[0], x2 - d * a[1]];
                    for p in &inv {
                        let (u, w) = (p.evaluate_real(&[x1, x2]), p.evaluate_real(&y));
                        assert!((u - w).abs() < 1e-12, "I2({m})");
                    }
                }
            }
        }
    }

    #[test]
    fn rotation_matrix_example() {
        let r = rotation_matrix(4).unwrap();
        assert_eq!(r.entry(0, 0).to_string(), "1/2*sqrt(2)");
        assert_eq!(r.entry(0, 1).to_string(), "-1/2*sqrt(2)");
        assert_eq!(r.entry(1, 2).to_string(), "-1/3*sqrt(6)");
        assert_eq!(r.entry(2, 3).to_string(), "-1/2*sqrt(3)");
        assert_eq!(r.entry(3, 0).to_string(), "1/2");
        assert_eq!(r.entry(0, 3).to_string(), "0");
        let f = r.to_f64();
        assert!((f[2][0] - 1.0 / 12f64.sqrt()).abs() < 1e-15);
        assert!(rotation_matrix(1).is_err());
    }

    #[test]
    fn rotation_matrices_are_proper_rotations() {
        for d in 2..=8 {
            let r = rotation_matrix(d).unwrap();
            assert!(r.is_orthogonal(), "{d}");
            assert_eq!(r.determinant_check(), (1, true), "{d}");
            let f = r.to_f64();
            let u = 1.0 / (d as f64).sqrt();
            for k in 0..d - 1 {
                let s: f64 = f[k].iter().map(|c| c * u).sum();
                assert!(s.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn a3_invariants_match_example() {
        let p = a_invariants::<f64>(3);
        let v = x(3);
        let s2 = 2f64.sqrt();
        let s3 = 3f64.sqrt();
        let k = -2.0 * s3 / 9.0;
        let mono = |e: [u32; 3]| Monomial::new(e.to_vec());
        let p1 = NumericPoly::from_terms(
            &v,
            [
                (mono([2, 0, 0]), 1.0),
                (mono([0, 2, 0]), 1.0),
                (mono([0, 0, 2]), 1.0),
            ],
        );
        let p2 = NumericPoly::from_terms(
            &v,
            [
                (mono([2, 1, 0]), 3.0 * s2 * k),
                (mono([0, 3, 0]), -s2 * k),
                (mono([2, 0, 1]), 3.0 * k),
                (mono([0, 2, 1]), 3.0 * k),
                (mono([0, 0, 3]), -2.0 * k),
            ],
        );
        let p3 = NumericPoly::from_terms(
            &v,
            [
                (mono([2, 1, 1]), 2.0 * s2),
                (mono([0, 3, 1]), -4.0 * s2 / 6.0),
                (mono([2, 0, 2]), -1.0),
                (mono([0, 2, 2]), -1.0),
                (mono([0, 0, 4]), 1.0 / 6.0),
            ],
        );
        assert!(p[0].max_diff(&p1) < 1e-14);
        assert!(p[1].max_diff(&p2) < 1e-14);
        assert!(p[2].max_diff(&p3) < 1e-14);
    }

    #[test]
    fn a_invariants_have_standard_quadratic() {
        for n in 1..=8 {
            let p = a_invariants::<f64>(n);
            let v = x(n);
            let expect = NumericPoly::from_terms(&v, (0..n).map(|i| (Monomial::var(n, i, 2), 1.0)));
            assert!(p[0].max_diff(&expect) < 1e-12, "A{n}");
        }
    }

    #[test]
    fn a_invariants_fixed_by_rotated_reflections() {
        for n in 1..=5 {
            let p = a_invariants::<f64>(n);
            let roots = a_rotated_roots::<f64>(n);
            let pt: Vec<f64> = (0..n).map(|i| 0.37 * (i as f64 + 1.0) - 0.8).collect();
            for r in roots {
                let rr: f64 = r.iter().map(|c| c * c).sum();
                let d: f64 = 2.0 * r.iter().zip(&pt).map(|(a, b)| a * b).sum::<f64>() / rr;
                let y: Vec<f64> = pt.iter().zip(&r).map(|(a, b)| a - d * b).collect();
                for inv in &p {
                    let (u, w) = (inv.evaluate(&pt), inv.evaluate(&y));
                    assert!((u - w).abs() < 1e-9 * u.abs().max(1.0), "A{n}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reflection_count_matches_roots(n in 2usize..9) {
            for g in [GroupSpec::s(n), GroupSpec::a(n), GroupSpec::b(n), GroupSpec::d(n)] {
                let rs = positive_roots(&g, RootSubset::All).unwrap();
                prop_assert_eq!(rs.len(), g.reflection_count());
                prop_assert!(rs.roots.iter().all(|r| r.dim() == g.ambient_dim()));
            }
        }
    }
}
