//! Independent recomputation from the definitions.
//!
//! Nothing here reuses the generating formulas: matrices come from gradient
//! dot products, λ-vectors from sums over positive roots and discriminants
//! from products of root forms, each rewritten back into the basic
//! invariants. `A_n` has irrational invariants and is checked by sampling.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{
    a_rotated_roots, basic_invariants, complex_power, elementary_symmetric, exact_invariants,
    positive_roots, simple_roots, Family, GroupSpec, RootSubset,
};
use crate::pmatrix::{
    active_polynomial, discriminant, generate_pmatrix, generate_pmatrix_alt, lambda_first_constant,
    lambda_vector, lambda_weight_law_holds, pmatrix_from_hankel, weight_law_holds, ActiveName,
    LambdaVector, PMatrix,
};
use crate::polyring::linalg;
use crate::polyring::matrix::PolyGrid;
use crate::polyring::{q, Monomial, NumericPoly, Poly, Rational, VarSet};
use crate::transform::check_boundary;

pub const DEFAULT_SAMPLES: usize = 50;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 20_240_601;

/// The Jacobian `j_ai = dp_a/dx_i` of the exact basic invariants.
pub fn gradient_matrix(g: &GroupSpec) -> Result<PolyGrid> {
    let inv = exact_invariants(g).ok_or_else(|| no_exact(g))?;
    Ok(inv.iter().map(Poly::gradient).collect())
}

/// The Jacobian with floating coefficients, available for every family.
pub fn gradient_matrix_numeric(g: &GroupSpec) -> Vec<Vec<NumericPoly<f64>>> {
    basic_invariants(g)
        .numeric()
        .iter()
        .map(NumericPoly::gradient)
        .collect()
}

fn no_exact(g: &GroupSpec) -> Error {
    Error::Unsupported(format!(
        "{g} has irrational invariants; use the sampled path"
    ))
}

/// Memoized products `e_1^l1 ... e_n^ln` of elementary symmetric polynomials.
struct ElementaryProducts {
    e: Vec<Poly>,
    one: Rc<Poly>,
    memo: HashMap<Vec<u32>, Rc<Poly>>,
}

impl ElementaryProducts {
    fn new(vars: &Arc<VarSet>) -> Self {
        ElementaryProducts {
            e: (1..=vars.len())
                .map(|k| elementary_symmetric(vars, k, 1))
                .collect(),
            one: Rc::new(Poly::one(vars)),
            memo: HashMap::new(),
        }
    }

    fn get(&mut self, lam: &[u32]) -> Rc<Poly> {
        let Some(k) = lam.iter().rposition(|&l| l > 0) else {
            return self.one.clone();
        };
        if let Some(p) = self.memo.get(lam) {
            return p.clone();
        }
        let mut prev = lam.to_vec();
        prev[k] -= 1;
        let base = self.get(&prev);
        let p = Rc::new(&*base * &self.e[k]);
        self.memo.insert(lam.to_vec(), p.clone());
        p
    }
}

/// Leading-term reduction of a symmetric `q` against `e_1..e_n`.
///
/// The result lives in `out` with `e_k` read as the `k`-th variable.
fn rewrite_elementary(q: &Poly, out: &Arc<VarSet>, cache: &mut ElementaryProducts) -> Result<Poly> {
    let n = q.nvars();
    let mut r = q.clone();
    let mut acc = Poly::zero(out);
    while let Some((m, c)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let e = m.exps();
        if e.windows(2).any(|w| w[0] < w[1]) {
            let witness = Poly::monomial(q.vars(), m.clone(), Rational::one());
            return Err(Error::NotInvariant(format!(
                "reduction stalled at `{witness}`, which is not a sorted leading monomial"
            )));
        }
        let lam: Vec<u32> = (0..n)
            .map(|k| e[k] - e.get(k + 1).copied().unwrap_or(0))
            .collect();
        let prod = cache.get(&lam);
        r.add_scaled(&prod, &-c.clone(), None);
        acc.add_term(Monomial::new(lam), c);
    }
    Ok(acc)
}

/// Replaces every `x_i^(2k)` by `x_i^k`; fails on an odd exponent.
fn halve(q: &Poly) -> Result<Poly> {
    let mut out = Poly::zero(q.vars());
    for (m, c) in q.terms() {
        if m.exps().iter().any(|e| e % 2 == 1) {
            let witness = Poly::monomial(q.vars(), m.clone(), Rational::one());
            return Err(Error::NotInvariant(format!("odd power in `{witness}`")));
        }
        out.add_term(
            Monomial::new(m.exps().iter().map(|e| e / 2).collect()),
            c.clone(),
        );
    }
    Ok(out)
}

/// Maps `P_n -> p_n^2` and multiplies by `p_n^extra`.
fn square_last(p: &Poly, vars: &Arc<VarSet>, extra: u32) -> Poly {
    let n = vars.len();
    Poly::from_terms(
        vars,
        p.terms().map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e[n - 1] = 2 * e[n - 1] + extra;
            (Monomial::new(e), c.clone())
        }),
    )
}

/// Rewrites an invariant polynomial in `x` as a polynomial in the basic invariants.
pub fn rewrite_symmetric(q: &Poly, g: &GroupSpec) -> Result<Poly> {
    let p = g.p_vars();
    if g.family() == Family::A {
        return Err(no_exact(g));
    }
    if q.nvars() != g.rank() {
        return Err(Error::VarsetMismatch {
            left: format!("{} variables", q.nvars()),
            right: format!("{} coordinates of {g}", g.rank()),
        });
    }
    let mut cache = ElementaryProducts::new(q.vars());
    match g.family() {
        Family::S => rewrite_elementary(q, &p, &mut cache),
        Family::B => rewrite_elementary(&halve(q)?, &p, &mut cache),
        Family::D => {
            let n = g.rank() as u32;
            let mut even = Poly::zero(q.vars());
            let mut odd = Poly::zero(q.vars());
            for (m, c) in q.terms() {
                let parity = m.exps().iter().filter(|e| *e % 2 == 1).count() as u32;
                if parity == 0 {
                    even.add_term(m.clone(), c.clone());
                } else if parity == n {
                    odd.add_term(
                        Monomial::new(m.exps().iter().map(|e| e - 1).collect()),
                        c.clone(),
                    );
                } else {
                    let witness = Poly::monomial(q.vars(), m.clone(), Rational::one());
                    return Err(Error::NotInvariant(format!("mixed parity in `{witness}`")));
                }
            }
            let e = rewrite_elementary(&halve(&even)?, &p, &mut cache)?;
            let o = rewrite_elementary(&halve(&odd)?, &p, &mut cache)?;
            Ok(square_last(&e, &p, 0) + square_last(&o, &p, 1))
        }
        Family::I2 => rewrite_dihedral(q, g),
        Family::A => unreachable!(),
    }
}

/// Dihedral rewriting by matching coefficients against `p1^j p2^k`.
fn rewrite_dihedral(q: &Poly, g: &GroupSpec) -> Result<Poly> {
    let m = g.m().expect("dihedral");
    let p = g.p_vars();
    let inv = exact_invariants(g).expect("exact family");
    let mut out = Poly::zero(&p);
    let mut degrees: Vec<u32> = q.terms().map(|(mono, _)| mono.degree()).collect();
    degrees.dedup();
    for d in degrees {
        let part = q.filter_terms(|mono| mono.degree() == d);
        let cands: Vec<(u32, u32)> = (0..=d / m)
            .filter(|k| (d - k * m).is_multiple_of(2))
            .map(|k| ((d - k * m) / 2, k))
            .collect();
        let images: Vec<Poly> = cands
            .iter()
            .map(|&(j, k)| inv[0].pow(j) * inv[1].pow(k))
            .collect();
        let mut monos: Vec<Monomial> = part.terms().map(|(mono, _)| mono.clone()).collect();
        for im in &images {
            monos.extend(im.terms().map(|(mono, _)| mono.clone()));
        }
        monos.sort();
        monos.dedup();
        let a: Vec<Vec<Rational>> = monos
            .iter()
            .map(|mono| images.iter().map(|im| im.coeff(mono)).collect())
            .collect();
        let b: Vec<Rational> = monos.iter().map(|mono| part.coeff(mono)).collect();
        let c = linalg::solve(&a, &b)
            .map_err(|e| Error::NotInvariant(format!("degree {d} part: {e}")))?;
        for (&(j, k), c) in cands.iter().zip(c) {
            out.add_term(Monomial::new(vec![j, k]), c);
        }
    }
    Ok(out)
}

/// `P_ab(x) = grad p_a . grad p_b`, rewritten in the basic invariants.
pub fn pmatrix_from_definition(g: &GroupSpec) -> Result<PMatrix> {
    let j = gradient_matrix(g)?;
    let n = g.rank();
    let vars = g.p_vars();
    let mut entries = vec![vec![Poly::zero(&vars); n]; n];
    for a in 0..n {
        for b in a..n {
            let dot = dot(&j[a], &j[b]);
            let e = rewrite_symmetric(&dot, g)?;
            entries[b][a] = e.clone();
            entries[a][b] = e;
        }
    }
    Ok(PMatrix::new(*g, "paper", entries))
}

fn dot(u: &[Poly], v: &[Poly]) -> Poly {
    let mut s = Poly::zero(u[0].vars());
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            s = s + a * b;
        }
    }
    s
}

/// Knobs of the sampling oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleOptions {
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            samples: DEFAULT_SAMPLES,
            tol: DEFAULT_TOLERANCE,
            seed: DEFAULT_SEED,
        }
    }
}

/// Outcome of comparing two evaluations at random points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampledVerdict {
    pub samples: usize,
    pub tolerance: f64,
    pub max_residual: f64,
    pub scale: f64,
}

impl SampledVerdict {
    pub fn scaled_residual(&self) -> f64 {
        self.max_residual / self.scale
    }

    pub fn passed(&self) -> bool {
        self.scaled_residual() < self.tolerance
    }
}

/// Uniform points in `[-1,1]^dim` from a seeded ChaCha stream.
///
/// Point `k` comes from its own stream so any subset can be regenerated alone.
pub fn sample_points(dim: usize, opts: &SampleOptions) -> Vec<Vec<f64>> {
    (0..opts.samples)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(k as u64);
            (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect()
        })
        .collect()
}

struct Sampler {
    inv: Vec<NumericPoly<f64>>,
    grad: Vec<Vec<NumericPoly<f64>>>,
    points: Vec<Vec<f64>>,
}

impl Sampler {
    fn new(g: &GroupSpec, opts: &SampleOptions) -> Self {
        let inv = basic_invariants(g).numeric();
        let grad = inv.iter().map(NumericPoly::gradient).collect();
        let dim = inv[0].vars().len();
        Sampler {
            inv,
            grad,
            points: sample_points(dim, opts),
        }
    }

    fn p_at(&self, x: &[f64]) -> Vec<f64> {
        self.inv.iter().map(|p| p.evaluate(x)).collect()
    }

    fn grad_at(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.grad
            .iter()
            .map(|row| row.iter().map(|d| d.evaluate(x)).collect())
            .collect()
    }
}

fn verdict(opts: &SampleOptions, pairs: impl Iterator<Item = (f64, f64)>) -> SampledVerdict {
    let mut max_residual = 0.0f64;
    let mut scale = 1.0f64;
    for (lhs, rhs) in pairs {
        max_residual = max_residual.max((lhs - rhs).abs());
        scale = scale.max(lhs.abs()).max(rhs.abs());
    }
    SampledVerdict {
        samples: opts.samples,
        tolerance: opts.tol,
        max_residual,
        scale,
    }
}

/// Compares `P̂(p(x))` with `grad p_a . grad p_b` at random points.
pub fn pmatrix_sampled(g: &GroupSpec, opts: &SampleOptions) -> SampledVerdict {
    let s = Sampler::new(g, opts);
    let pm = generate_pmatrix(g);
    let n = g.rank();
    let mut pairs = Vec::new();
    for x in &s.points {
        let p = s.p_at(x);
        let j = s.grad_at(x);
        for a in 0..n {
            for b in a..n {
                let lhs = pm.entry(a + 1, b + 1).evaluate_real(&p);
                let rhs: f64 = j[a].iter().zip(&j[b]).map(|(u, v)| u * v).sum();
                pairs.push((lhs, rhs));
            }
        }
    }
    verdict(opts, pairs.into_iter())
}

/// Positive roots as float vectors in the coordinates of the invariants.
pub fn numeric_roots(g: &GroupSpec, subset: RootSubset) -> Result<Vec<Vec<f64>>> {
    if g.family() == Family::A {
        if subset != RootSubset::All {
            positive_roots(g, subset)?;
        }
        return Ok(a_rotated_roots::<f64>(g.rank()));
    }
    Ok(positive_roots(g, subset)?
        .roots
        .iter()
        .map(|r| r.as_f64().to_vec())
        .collect())
}

/// The active polynomial whose λ-vector a root subset produces.
pub fn active_for(g: &GroupSpec, subset: RootSubset) -> ActiveName {
    match (g.family(), subset) {
        (_, RootSubset::All) => ActiveName::Det,
        (Family::I2, RootSubset::Short) => ActiveName::AMinus,
        (Family::I2, RootSubset::Long) => ActiveName::APlus,
        (_, RootSubset::Short) => ActiveName::Short,
        (_, RootSubset::Long) => ActiveName::Long,
    }
}

/// Compares `λ_a(p(x))` with `2 sum_r (grad p_a . r) / l_r(x)` at random points.
pub fn lambda_sampled(
    g: &GroupSpec,
    subset: RootSubset,
    opts: &SampleOptions,
) -> Result<SampledVerdict> {
    let roots = numeric_roots(g, subset)?;
    let lam = lambda_vector(g, active_for(g, subset))?;
    let s = Sampler::new(g, opts);
    let mut pairs = Vec::new();
    for x in &s.points {
        let p = s.p_at(x);
        let j = s.grad_at(x);
        let forms: Vec<f64> = roots
            .iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        for (a, comp) in lam.components.iter().enumerate() {
            let rhs: f64 = 2.0
                * roots
                    .iter()
                    .zip(&forms)
                    .map(|(r, l)| r.iter().zip(&j[a]).map(|(u, v)| u * v).sum::<f64>() / l)
                    .sum::<f64>();
            pairs.push((comp.evaluate_real(&p), rhs));
        }
    }
    Ok(verdict(opts, pairs.into_iter()))
}

/// `prod_r l_r(x)` over a root subset, in the coordinates of the invariants.
///
/// Dihedral roots are irrational; their product is `+-2^(1-k)` times
/// `Im z^m`, `Im z^(m/2)` or `Re z^(m/2)` (`k` lines), and the sign and
/// constant are confirmed numerically before the exact form is returned.
pub fn root_product(g: &GroupSpec, subset: RootSubset) -> Result<Poly> {
    let x = g.x_vars();
    let set = positive_roots(g, subset)?;
    match g.family() {
        Family::A => Err(no_exact(g)),
        Family::I2 => {
            let m = g.m().expect("dihedral");
            let cand = match subset {
                RootSubset::All => complex_power(&x, m).1,
                RootSubset::Short => complex_power(&x, m / 2).1,
                RootSubset::Long => complex_power(&x, m / 2).0,
            };
            let k = set.len() as i32;
            let pts = sample_points(
                2,
                &SampleOptions {
                    samples: 4,
                    ..Default::default()
                },
            );
            let ratios: Vec<f64> = pts
                .iter()
                .map(|pt| {
                    let prod: f64 = set
                        .roots
                        .iter()
                        .map(|r| r.as_f64().iter().zip(pt).map(|(a, b)| a * b).sum::<f64>())
                        .product();
                    prod / cand.evaluate_real(pt)
                })
                .collect();
            let expect = 2f64.powi(1 - k);
            let sign = ratios[0].signum();
            if ratios
                .iter()
                .any(|r| (r - sign * expect).abs() > 1e-9 * expect)
            {
                return Err(Error::Solver {
                    step: format!("root product of {g}"),
                    reason: format!("ratio {ratios:?} is not +-2^(1-{k})"),
                });
            }
            let c = Rational::new(BigInt::from(sign as i64), BigInt::one() << (k - 1));
            Ok(cand.scale(&c))
        }
        _ => Ok(set.product_of_forms(&x).expect("rational roots")),
    }
}

/// λ from the root sum in common-denominator form, rewritten in the invariants.
pub fn lambda_from_roots(g: &GroupSpec, subset: RootSubset) -> Result<LambdaVector> {
    let pi = root_product(g, subset)?;
    let dpi = pi.gradient();
    let inv = exact_invariants(g).ok_or_else(|| no_exact(g))?;
    let mut components = Vec::with_capacity(g.rank());
    for p in &inv {
        let num = dot(&p.gradient(), &dpi).scale_int(2);
        let quot = num.exact_divide(&pi).map_err(|e| Error::Solver {
            step: format!("dividing the root sum of {g} by the root product"),
            reason: e.to_string(),
        })?;
        components.push(rewrite_symmetric(&quot, g)?);
    }
    Ok(LambdaVector {
        group: *g,
        active: active_for(g, subset),
        components,
    })
}

/// The discriminant recomputed from root forms.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDiscriminant {
    /// `prod_r l_r(x)^2` rewritten in the invariants.
    pub from_roots: Poly,
    /// Symbolic `det P̂`.
    pub det: Poly,
    /// The constant with `det P̂ = c2 * from_roots`.
    pub c2: Rational,
}

pub fn discriminant_from_roots(g: &GroupSpec, det_cap: usize) -> Result<RootDiscriminant> {
    if g.rank() > det_cap {
        return Err(Error::CapExceeded {
            what: "discriminant from roots".into(),
            rank: g.rank(),
            cap: det_cap,
        });
    }
    let pi = root_product(g, RootSubset::All)?;
    let from_roots = rewrite_symmetric(&pi.pow(2), g)?;
    let det = discriminant(&generate_pmatrix(g), det_cap)?;
    let (Some((m, c)), Some((_, d))) = (from_roots.leading_term(), det.leading_term()) else {
        return Err(Error::Solver {
            step: "discriminant".into(),
            reason: "vanishing discriminant".into(),
        });
    };
    let c2 = det.coeff(m) / c;
    if det != from_roots.scale(&c2) || d.is_zero() {
        return Err(Error::Solver {
            step: "discriminant".into(),
            reason: format!("det P̂ = {det} is not a multiple of {from_roots}"),
        });
    }
    Ok(RootDiscriminant {
        from_roots,
        det,
        c2,
    })
}

/// Measured `det P̂(p(x)) / prod l_r(x)^2` at random points: (mean, relative spread).
pub fn discriminant_constant_sampled(g: &GroupSpec, opts: &SampleOptions) -> Result<(f64, f64)> {
    let roots = numeric_roots(g, RootSubset::All)?;
    let pm = generate_pmatrix(g);
    let s = Sampler::new(g, opts);
    let mut ratios = Vec::with_capacity(s.points.len());
    for x in &s.points {
        let p = s.p_at(x);
        let m: Vec<Vec<f64>> = pm
            .entries()
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate_real(&p)).collect())
            .collect();
        let prod: f64 = roots
            .iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().powi(2))
            .product();
        ratios.push(det_f64(m) / prod);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let spread = ratios
        .iter()
        .map(|r| (r - mean).abs() / mean.abs())
        .fold(0.0, f64::max);
    Ok((mean, spread))
}

fn det_f64(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))
            .expect("nonempty");
        if m[piv][c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            m.swap(piv, c);
            det = -det;
        }
        det *= m[c][c];
        for i in c + 1..n {
            let f = m[i][c] / m[c][c];
            for j in c..n {
                m[i][j] -= f * m[c][j];
            }
        }
    }
    det
}

/// Residual of `p_a(y) = p_a(x) + p_{a-1}(x) x_{n+1}^k` between ranks `n` and `n+1`.
///
/// `k` is 1 for `S` and 2 for `B`; returns the first nonzero residual, or zero.
pub fn rank_recursion_residual(family: Family, n: usize) -> Result<Poly> {
    let power = match family {
        Family::S => 1,
        Family::B => 2,
        _ => {
            return Err(Error::Unsupported(format!(
                "rank recursion is checked for S and B, not {family:?}"
            )))
        }
    };
    let big = VarSet::x(n + 1);
    let small = VarSet::x(n);
    let last = Poly::monomial(&big, Monomial::var(n + 1, n, power), Rational::one());
    let lower = |a: usize| -> Poly {
        match a {
            0 => Poly::one(&big),
            a if a > n => Poly::zero(&big),
            a => elementary_symmetric(&small, a, power).extend_vars(&big),
        }
    };
    for a in 1..=n + 1 {
        let lhs = elementary_symmetric(&big, a, power);
        let rhs = lower(a) + &lower(a - 1) * &last;
        let r = lhs - rhs;
        if !r.is_zero() {
            return Ok(r);
        }
    }
    Ok(Poly::zero(&big))
}

/// Whether the first row is the Euler row of the family.
///
/// `2 d_b p_b` when `p1 = |x|^2`, and `(n-b+1) p_{b-1}` for `S_n`.
pub fn euler_row_holds(p: &PMatrix) -> bool {
    let g = &p.group;
    let vars = p.vars();
    let d = g.degrees();
    let n = g.rank();
    (0..n).all(|b| {
        let expect = if g.has_quadratic_p1() {
            Poly::var(vars, b).scale_int(2 * d[b] as i64)
        } else if b == 0 {
            Poly::integer(vars, n as i64)
        } else {
            Poly::var(vars, b - 1).scale_int((n - b) as i64)
        };
        p.entries()[0][b] == expect
    })
}

/// Images `x - 2 (r.x)/(r.r) r` of the coordinates under the reflection in `r`.
pub fn reflection_images(r: &[Rational], vars: &Arc<VarSet>) -> Vec<Poly> {
    let n = r.len();
    let rr: Rational = r.iter().map(|c| c * c).sum();
    let form = Poly::from_terms(
        vars,
        r.iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(n, i, 1), c.clone())),
    );
    (0..n)
        .map(|i| Poly::var(vars, i) - form.scale(&(q(2) * &r[i] / &rr)))
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    #[default]
    Fast,
    Full,
}

impl FromStr for Depth {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Depth::Fast),
            "full" => Ok(Depth::Full),
            _ => Err(Error::Parse(format!("unknown depth `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// One line of a report. `residual` is `0` for an exact pass, the scaled
/// maximum residual for a sampled check, and a witness otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub group: GroupSpec,
    pub depth: Depth,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mode = format!("{:?}, {:?}", self.depth, self.mode).to_lowercase();
        let mut out = format!("{} ({mode})\n", self.group);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:<7}  {}\n",
                c.name,
                c.status.to_string(),
                c.residual
            ));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub depth: Depth,
    pub sampling: SampleOptions,
    pub det_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            depth: Depth::Fast,
            sampling: SampleOptions::default(),
            det_cap: crate::pmatrix::DEFAULT_DET_CAP,
        }
    }
}

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn exact_outcome(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass("0".into())
    } else {
        Outcome::Fail(witness())
    }
}

fn sampled_outcome(v: &SampledVerdict) -> Outcome {
    let r = format!("{:.3e}", v.scaled_residual());
    if v.passed() {
        Outcome::Pass(r)
    } else {
        Outcome::Fail(r)
    }
}

fn first_difference(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> String {
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                return format!("entry ({},{}): {}", i + 1, j + 1, x - y);
            }
        }
    }
    "shape differs".into()
}

fn lambda_difference(a: &LambdaVector, b: &LambdaVector) -> String {
    first_difference(
        std::slice::from_ref(&a.components),
        std::slice::from_ref(&b.components),
    )
}

fn split_subsets(g: &GroupSpec) -> Vec<RootSubset> {
    let split = match g.family() {
        Family::B => true,
        Family::I2 => g.m().is_some_and(|m| m % 2 == 0),
        _ => false,
    };
    if split {
        vec![RootSubset::All, RootSubset::Short, RootSubset::Long]
    } else {
        vec![RootSubset::All]
    }
}

fn subset_name(s: RootSubset) -> &'static str {
    match s {
        RootSubset::All => "all",
        RootSubset::Short => "short",
        RootSubset::Long => "long",
    }
}

/// Runs every oracle check appropriate to the family.
///
/// Failures and errors are recorded in the report rather than returned.
pub fn verify_group(g: &GroupSpec, opts: &VerifyOptions) -> VerificationReport {
    let sampled = g.family() == Family::A;
    let so = &opts.sampling;
    let mut checks = Vec::new();
    let mut run = |name: String, f: &mut dyn FnMut() -> Result<Outcome>| {
        let t = Instant::now();
        let (status, residual) = match f() {
            Ok(Outcome::Pass(r)) => (Status::Pass, r),
            Ok(Outcome::Fail(r)) => (Status::Fail, r),
            Ok(Outcome::Skip(r)) => (Status::Skipped, r),
            Err(e) => (Status::Fail, e.to_string()),
        };
        checks.push(Check {
            name,
            status,
            residual,
            elapsed: t.elapsed(),
        });
    };
    let paper = generate_pmatrix(g);

    run("degrees".into(), &mut || {
        let d = g.degrees();
        let sum: u32 = d.iter().sum();
        let prod = d.iter().fold(BigInt::one(), |acc, &x| acc * x);
        Ok(exact_outcome(
            sum as usize == g.reflection_count() + g.rank() && prod == g.order(),
            || format!("sum {sum}, product {prod}, order {}", g.order()),
        ))
    });

    run("invariance".into(), &mut || invariance_check(g, so));

    run("structure".into(), &mut || {
        let lam = lambda_vector(g, ActiveName::Det)?;
        let mut bad = Vec::new();
        if !paper.is_symmetric() {
            bad.push("symmetry");
        }
        if !weight_law_holds(&paper) {
            bad.push("entry weights");
        }
        if !euler_row_holds(&paper) {
            bad.push("first row");
        }
        if !lambda_weight_law_holds(&lam) {
            bad.push("lambda weights");
        }
        if g.has_quadratic_p1() {
            let w: u32 = g.degrees().iter().map(|d| 2 * d - 2).sum();
            if lambda_first_constant(&lam) != Some(q(2 * w as i64)) {
                bad.push("lambda_1");
            }
        }
        Ok(exact_outcome(bad.is_empty(), || bad.join(", ")))
    });

    run("definition".into(), &mut || {
        if sampled {
            return Ok(sampled_outcome(&pmatrix_sampled(g, so)));
        }
        let def = pmatrix_from_definition(g)?;
        Ok(exact_outcome(def == paper, || {
            first_difference(def.entries(), paper.entries())
        }))
    });

    for subset in split_subsets(g) {
        let active = active_for(g, subset);
        run(format!("lambda:{}", subset_name(subset)), &mut || {
            if sampled {
                return Ok(sampled_outcome(&lambda_sampled(g, subset, so)?));
            }
            let from_roots = lambda_from_roots(g, subset)?;
            let closed = lambda_vector(g, active)?;
            Ok(exact_outcome(from_roots == closed, || {
                lambda_difference(&from_roots, &closed)
            }))
        });
    }

    if split_subsets(g).len() > 1 {
        run("lambda:additivity".into(), &mut || {
            let [det, short, long] = [RootSubset::All, RootSubset::Short, RootSubset::Long]
                .map(|s| lambda_vector(g, active_for(g, s)));
            let (det, short, long) = (det?, short?, long?);
            let sum: Vec<Poly> = short
                .components
                .iter()
                .zip(&long.components)
                .map(|(a, b)| a + b)
                .collect();
            Ok(exact_outcome(sum == det.components, || {
                first_difference(
                    std::slice::from_ref(&sum),
                    std::slice::from_ref(&det.components),
                )
            }))
        });
    }

    if matches!(g.family(), Family::A | Family::B | Family::D) {
        run("hankel".into(), &mut || {
            let h = pmatrix_from_hankel(g)?;
            Ok(exact_outcome(h == paper, || {
                first_difference(h.entries(), paper.entries())
            }))
        });
    }
    if g.family() != Family::I2 {
        run("alternate".into(), &mut || {
            let alt = generate_pmatrix_alt(g)?;
            Ok(exact_outcome(alt.entries() == paper.entries(), || {
                first_difference(alt.entries(), paper.entries())
            }))
        });
    }

    if opts.depth == Depth::Full {
        let capped = g.rank() > opts.det_cap;
        let cap_note = || {
            Outcome::Skip(format!(
                "rank {} above determinant cap {}",
                g.rank(),
                opts.det_cap
            ))
        };
        run("discriminant".into(), &mut || {
            if capped {
                return Ok(cap_note());
            }
            if sampled {
                let (c2, spread) = discriminant_constant_sampled(g, so)?;
                let r = format!("c2 = {c2:.6}, spread {spread:.3e}");
                return Ok(if spread < so.tol {
                    Outcome::Pass(r)
                } else {
                    Outcome::Fail(r)
                });
            }
            let d = discriminant_from_roots(g, opts.det_cap)?;
            let n = g.rank() as u32;
            let expect = match g.family() {
                Family::B => Some(q(4).pow(n as i32)),
                Family::D => Some(q(4).pow(n as i32 - 1)),
                _ => None,
            };
            let mut ok = expect.as_ref().is_none_or(|e| *e == d.c2);
            if let Some(m) = g.m() {
                let p = g.p_vars();
                let target = (Poly::var(&p, 0).pow(m) - Poly::var(&p, 1).pow(2))
                    .scale_int(4 * (m * m) as i64);
                ok &= d.det == target;
            }
            let r = format!("c2 = {}", d.c2);
            Ok(if ok {
                Outcome::Pass(r)
            } else {
                Outcome::Fail(r)
            })
        });
        for subset in split_subsets(g) {
            let active = active_for(g, subset);
            run(format!("boundary:{active}"), &mut || {
                if capped {
                    return Ok(cap_note());
                }
                let a = active_polynomial(g, active, opts.det_cap)?;
                let lam = lambda_vector(g, active)?;
                let v = check_boundary(&paper, &a, &lam);
                Ok(exact_outcome(v.holds, || {
                    v.residuals
                        .iter()
                        .find(|r| !r.is_zero())
                        .map_or_else(String::new, |r| r.to_string())
                }))
            });
        }
        if matches!(g.family(), Family::S | Family::B) {
            run("rank-recursion".into(), &mut || {
                if g.rank() > 5 {
                    return Ok(Outcome::Skip("checked up to rank 5".into()));
                }
                let r = rank_recursion_residual(g.family(), g.rank())?;
                Ok(exact_outcome(r.is_zero(), || r.to_string()))
            });
        }
    }

    VerificationReport {
        group: *g,
        depth: opts.depth,
        mode: if sampled { Mode::Sampled } else { Mode::Exact },
        samples: sampled.then_some(so.samples),
        tolerance: sampled.then_some(so.tol),
        seed: sampled.then_some(so.seed),
        notes: g.notes(),
        checks,
    }
}

fn invariance_check(g: &GroupSpec, so: &SampleOptions) -> Result<Outcome> {
    if let Some(inv) = exact_invariants(g) {
        let x = g.x_vars();
        let roots = simple_roots(g);
        if roots.iter().all(|r| r.as_exact().is_some()) {
            for r in &roots {
                let imgs = reflection_images(r.as_exact().expect("exact"), &x);
                for p in &inv {
                    let moved = p.compose(&imgs)?;
                    if &moved != p {
                        return Ok(Outcome::Fail((moved - p).to_string()));
                    }
                }
            }
            return Ok(Outcome::Pass("0".into()));
        }
    }
    let inv = basic_invariants(g).numeric();
    let roots = numeric_roots(g, RootSubset::All)?;
    let dim = inv[0].vars().len();
    let mut pairs = Vec::new();
    for x in sample_points(dim, so) {
        for r in &roots {
            let rr: f64 = r.iter().map(|c| c * c).sum();
            let d = 2.0 * r.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() / rr;
            let y: Vec<f64> = x.iter().zip(r).map(|(a, b)| a - d * b).collect();
            for p in &inv {
                pairs.push((p.evaluate(&x), p.evaluate(&y)));
            }
        }
    }
    Ok(sampled_outcome(&verdict(so, pairs.into_iter())))
}
