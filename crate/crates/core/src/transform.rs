//! Allowed basis transformations and the solvers for distinguished bases.
//!
//! A transform is a list `p'_a(p)` of w-homogeneous polynomials of weight
//! `d_a`. Its Jacobian is then block lower triangular by weight with
//! constant diagonal blocks, so invertibility reduces to those blocks and the
//! inverse is built one weight class at a time.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{exact_invariants, Family, GroupSpec};
use crate::pmatrix::{generate_pmatrix, lambda_vector, ActiveName, LambdaVector, PMatrix};
use crate::polyring::linalg::{self, SolveError};
use crate::polyring::matrix::{self, PolyGrid};
use crate::polyring::{q, Monomial, NumericPoly, Poly, PolyJson, Rational, Real, VarSet};

/// Prefix used for the variables of solver-produced bases.
pub const NEW_PREFIX: &str = "q";

#[derive(Clone, Debug, PartialEq)]
pub struct BasisTransform {
    pub group: GroupSpec,
    pub basis: String,
    old_vars: Arc<VarSet>,
    new_vars: Arc<VarSet>,
    forward: Vec<Poly>,
    inverse: Vec<Poly>,
}

fn prefix_of(vars: &VarSet) -> String {
    vars.name(0)
        .trim_end_matches(|c: char| c.is_ascii_digit())
        .to_string()
}

/// Indices grouped by degree, ascending.
fn weight_classes(weights: &[u32]) -> Vec<(u32, Vec<usize>)> {
    let mut m: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &w) in weights.iter().enumerate() {
        m.entry(w).or_default().push(i);
    }
    m.into_iter().collect()
}

fn invert_constant(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let k = m.len();
    let mut cols = Vec::with_capacity(k);
    for j in 0..k {
        let e: Vec<Rational> = (0..k).map(|i| if i == j { q(1) } else { q(0) }).collect();
        cols.push(linalg::solve(m, &e).ok()?);
    }
    Some(
        (0..k)
            .map(|i| (0..k).map(|j| cols[j][i].clone()).collect())
            .collect(),
    )
}

impl BasisTransform {
    /// Validates `forward` (polynomials in the group's `p` variables) and
    /// computes the inverse in variables named `new_prefix`.
    pub fn new(
        group: GroupSpec,
        basis: impl Into<String>,
        forward: Vec<Poly>,
        new_prefix: &str,
    ) -> Result<Self> {
        let old_vars = group.p_vars();
        let n = group.rank();
        if forward.len() != n {
            return Err(Error::NotAllowed(format!(
                "{} polynomials given for rank {n}",
                forward.len()
            )));
        }
        for f in &forward {
            if f.vars() != &old_vars {
                return Err(Error::VarsetMismatch {
                    left: format!(
                        "{:?}",
                        f.vars().vars().iter().map(|v| &v.name).collect::<Vec<_>>()
                    ),
                    right: format!(
                        "{:?}",
                        old_vars.vars().iter().map(|v| &v.name).collect::<Vec<_>>()
                    ),
                });
            }
        }
        let d = old_vars.weights();
        for (a, f) in forward.iter().enumerate() {
            match f.weight_of() {
                Ok(w) if w == d[a] => {}
                Ok(w) => {
                    return Err(Error::NotAllowed(format!(
                        "component {} has weight {w}, expected {}",
                        a + 1,
                        d[a]
                    )))
                }
                Err(e) => return Err(Error::NotAllowed(format!("component {}: {e}", a + 1))),
            }
        }
        let new_vars = VarSet::named(new_prefix, &d);
        let mut inverse: Vec<Poly> = vec![Poly::zero(&new_vars); n];
        let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(&new_vars, i)).collect();
        for (w, idx) in weight_classes(&d) {
            let block: Vec<Vec<Rational>> = idx
                .iter()
                .map(|&a| {
                    idx.iter()
                        .map(|&b| forward[a].coeff(&Monomial::var(n, b, 1)))
                        .collect()
                })
                .collect();
            let inv = invert_constant(&block).ok_or_else(|| {
                Error::NotAllowed(format!(
                    "Jacobian block of degree {w} is singular; det(J) vanishes"
                ))
            })?;
            let tails: Vec<Poly> = idx
                .iter()
                .map(|&a| {
                    let tail = forward[a].filter_terms(|m| {
                        !idx.iter().any(|&b| m.exps()[b] == 1 && m.degree() == 1)
                    });
                    tail.compose(&images)
                        .expect("tail uses lower-weight variables")
                })
                .collect();
            for (r, &a) in idx.iter().enumerate() {
                let mut acc = Poly::zero(&new_vars);
                for (s, &b) in idx.iter().enumerate() {
                    let c = &inv[r][s];
                    if !c.is_zero() {
                        acc = acc + (Poly::var(&new_vars, b) - &tails[s]).scale(c);
                    }
                }
                inverse[a] = acc;
            }
            for &a in &idx {
                images[a] = inverse[a].clone();
            }
        }
        Ok(BasisTransform {
            group,
            basis: basis.into(),
            old_vars,
            new_vars,
            forward,
            inverse,
        })
    }

    pub fn identity(group: &GroupSpec) -> Self {
        let v = group.p_vars();
        let forward = (0..group.rank()).map(|i| Poly::var(&v, i)).collect();
        Self::new(*group, "paper", forward, "p").expect("identity is allowed")
    }

    pub fn old_vars(&self) -> &Arc<VarSet> {
        &self.old_vars
    }

    pub fn new_vars(&self) -> &Arc<VarSet> {
        &self.new_vars
    }

    pub fn forward(&self) -> &[Poly] {
        &self.forward
    }

    pub fn inverse(&self) -> &[Poly] {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.forward
            .iter()
            .enumerate()
            .all(|(i, f)| *f == Poly::var(&self.old_vars, i))
    }

    /// The reverse transform, expressed in the new variables.
    pub fn invert(&self) -> Result<BasisTransform> {
        let reversed: Vec<Poly> = self
            .inverse
            .iter()
            .map(|p| p.rename(&self.group.p_vars()))
            .collect::<Result<_>>()?;
        BasisTransform::new(self.group, "inverse", reversed, &prefix_of(&self.old_vars))
    }

    /// `J_ab = d p'_a / d p_b`, in the old variables.
    pub fn jacobian(&self) -> PolyGrid {
        self.forward.iter().map(|f| f.gradient()).collect()
    }

    /// `det J` (a constant: the product of the diagonal weight blocks).
    pub fn jacobian_det(&self) -> Rational {
        let n = self.group.rank();
        let mut det = Rational::one();
        for (_, idx) in weight_classes(&self.old_vars.weights()) {
            let block: Vec<Vec<Rational>> = idx
                .iter()
                .map(|&a| {
                    idx.iter()
                        .map(|&b| self.forward[a].coeff(&Monomial::var(n, b, 1)))
                        .collect()
                })
                .collect();
            det *= linalg::determinant(&block);
        }
        det
    }

    /// Rewrites a polynomial in the old variables in terms of the new ones.
    pub fn pull(&self, a: &Poly) -> Result<Poly> {
        a.compose(&self.inverse)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (a, f) in self.forward.iter().enumerate() {
            out.push_str(&format!("{} = {}\n", self.new_vars.name(a), f));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let rows: Vec<String> = self
            .forward
            .iter()
            .enumerate()
            .map(|(a, f)| {
                format!(
                    "{}_{{{}}} &= {}",
                    prefix_of(&self.new_vars),
                    a + 1,
                    f.to_latex()
                )
            })
            .collect();
        format!(
            "\\begin{{aligned}}\n{}\n\\end{{aligned}}\n",
            rows.join(" \\\\\n")
        )
    }
}

/// Checks the weight pattern of a Jacobian: entry `(a,b)` is zero or of
/// weight `d_a - d_b`, and vanishes when `d_a < d_b`.
pub fn validate_jacobian(j: &PolyGrid, weights: &[u32]) -> Result<()> {
    for (a, row) in j.iter().enumerate() {
        for (b, e) in row.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let ok = weights[a] >= weights[b]
                && e.weight_of().is_ok_and(|w| w == weights[a] - weights[b]);
            if !ok {
                return Err(Error::NotAllowed(format!(
                    "Jacobian entry ({}, {}) = {e} violates the weight pattern",
                    a + 1,
                    b + 1
                )));
            }
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct TransformJson {
    group: GroupSpec,
    basis: String,
    new_vars: String,
    forward: Vec<PolyJson>,
    inverse: Vec<PolyJson>,
}

impl Serialize for BasisTransform {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TransformJson {
            group: self.group,
            basis: self.basis.clone(),
            new_vars: prefix_of(&self.new_vars),
            forward: self.forward.iter().map(PolyJson::from).collect(),
            inverse: self.inverse.iter().map(PolyJson::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BasisTransform {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = TransformJson::deserialize(d)?;
        let vars = j.group.p_vars();
        let forward = j
            .forward
            .into_iter()
            .map(|p| p.into_poly(Some(&vars)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let t = BasisTransform::new(j.group, j.basis, forward, &j.new_vars)
            .map_err(D::Error::custom)?;
        let inverse = j
            .inverse
            .into_iter()
            .map(|p| p.into_poly(Some(t.new_vars())))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        if inverse != t.inverse {
            return Err(D::Error::custom(
                "stored inverse disagrees with the forward map",
            ));
        }
        Ok(t)
    }
}

fn check_group(a: &GroupSpec, b: &GroupSpec) -> Result<()> {
    if a != b {
        return Err(Error::GroupMismatch(a.to_string(), b.to_string()));
    }
    Ok(())
}

/// `P'(p') = J P J^T` evaluated at `p = p(p')`.
pub fn push_pmatrix(p: &PMatrix, t: &BasisTransform) -> Result<PMatrix> {
    check_group(&p.group, &t.group)?;
    if p.vars() != t.old_vars() {
        return Err(Error::VarsetMismatch {
            left: prefix_of(p.vars()),
            right: prefix_of(t.old_vars()),
        });
    }
    let n = p.n();
    let j = t.jacobian();
    let jp = matrix::mul(&j, p.entries());
    let mut out = matrix::zeros(n, n, t.new_vars());
    for a in 0..n {
        for b in a..n {
            let mut s = Poly::zero(t.old_vars());
            for c in 0..n {
                if !j[b][c].is_zero() && !jp[a][c].is_zero() {
                    s = s + &jp[a][c] * &j[b][c];
                }
            }
            let v = t.pull(&s)?;
            out[b][a] = v.clone();
            out[a][b] = v;
        }
    }
    Ok(PMatrix::new(p.group, t.basis.clone(), out))
}

/// `lambda'_b(p') = sum_c J_bc(p) lambda_c(p)` at `p = p(p')`.
pub fn push_lambda(l: &LambdaVector, t: &BasisTransform) -> Result<LambdaVector> {
    check_group(&l.group, &t.group)?;
    let j = t.jacobian();
    let components = j
        .iter()
        .map(|row| {
            let mut s = Poly::zero(t.old_vars());
            for (jc, lc) in row.iter().zip(&l.components) {
                if !jc.is_zero() && !lc.is_zero() {
                    s = s + jc * lc;
                }
            }
            t.pull(&s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LambdaVector {
        group: l.group,
        active: l.active,
        components,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryVerdict {
    pub holds: bool,
    /// `sum_c P_bc da/dp_c - lambda_b a`, one per row.
    pub residuals: Vec<Poly>,
}

/// Checks the boundary equation `sum_c P_bc da/dp_c = lambda_b a` exactly.
pub fn check_boundary(p: &PMatrix, a: &Poly, l: &LambdaVector) -> BoundaryVerdict {
    let grad = a.gradient();
    let residuals: Vec<Poly> = p
        .entries()
        .iter()
        .zip(&l.components)
        .map(|(row, lam)| {
            let mut s = Poly::zero(a.vars());
            for (e, g) in row.iter().zip(&grad) {
                if !e.is_zero() && !g.is_zero() {
                    s = s + e * g;
                }
            }
            s - lam * a
        })
        .collect();
    BoundaryVerdict {
        holds: residuals.iter().all(Poly::is_zero),
        residuals,
    }
}

fn factorials(max: u32) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for k in 1..=max as u64 {
        let next = f.last().expect("nonempty") * k;
        f.push(next);
    }
    f
}

/// Flatto bracket `f(grad) g`: the differential operator `f(d/dx)` applied to `g`.
pub fn flatto_bracket(f: &Poly, g: &Poly) -> Poly {
    let maxe = g
        .terms()
        .flat_map(|(m, _)| m.exps().to_vec())
        .max()
        .unwrap_or(0);
    let fact = factorials(maxe);
    let mut out = Poly::zero(g.vars());
    for (mf, cf) in f.terms() {
        for (mg, cg) in g.terms() {
            let Some(rest) = mg.div(mf) else { continue };
            let mut k = BigInt::one();
            for (&eg, &er) in mg.exps().iter().zip(rest.exps()) {
                k *= &fact[eg as usize] / &fact[er as usize];
            }
            out.add_term(rest, cf * cg * Rational::from_integer(k));
        }
    }
    out
}

/// Floating-point Flatto bracket.
pub fn flatto_bracket_numeric<T: Real>(f: &NumericPoly<T>, g: &NumericPoly<T>) -> NumericPoly<T> {
    let mut out = NumericPoly::zero(g.vars());
    for (mf, &cf) in f.terms() {
        for (mg, &cg) in g.terms() {
            let Some(rest) = mg.div(mf) else { continue };
            let mut k = T::one();
            for (&eg, &er) in mg.exps().iter().zip(rest.exps()) {
                for v in er + 1..=eg {
                    k = k * T::from_f64(v as f64);
                }
            }
            out.add_term(rest, cf * cg * k);
        }
    }
    out
}

/// Fischer inner product `sum_alpha alpha! f_alpha g_alpha`.
pub fn fischer_product(f: &Poly, g: &Poly) -> Rational {
    let (small, large) = if f.term_count() <= g.term_count() {
        (f, g)
    } else {
        (g, f)
    };
    let maxe = small
        .terms()
        .flat_map(|(m, _)| m.exps().to_vec())
        .max()
        .unwrap_or(0);
    let fact = factorials(maxe);
    let mut s = Rational::zero();
    for (m, c) in small.terms() {
        let other = large.coeff(m);
        if other.is_zero() {
            continue;
        }
        let w = m
            .exps()
            .iter()
            .fold(BigInt::one(), |acc, &e| acc * &fact[e as usize]);
        s += c * other * Rational::from_integer(w);
    }
    s
}

/// Substitutes numeric polynomials for the variables of an exact polynomial.
pub fn compose_numeric<T: Real>(p: &Poly, images: &[NumericPoly<T>]) -> NumericPoly<T> {
    assert_eq!(images.len(), p.nvars());
    let target = images[0].vars().clone();
    let mut powers: Vec<Vec<NumericPoly<T>>> = images
        .iter()
        .map(|im| vec![NumericPoly::constant(&target, T::one()), im.clone()])
        .collect();
    let mut out = NumericPoly::zero(&target);
    for (m, c) in p.terms() {
        let mut t = NumericPoly::constant(&target, T::from_rational(c));
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().expect("nonempty").mul(&images[i]);
                powers[i].push(next);
            }
            t = t.mul(&powers[i][e as usize]);
        }
        out = out.add(&t);
    }
    out
}

/// Monomials of total weight `w` in the variables `allowed`, in descending order.
pub fn monomials_of_weight(vars: &Arc<VarSet>, w: u32, allowed: &[usize]) -> Vec<Monomial> {
    fn rec(
        vars: &VarSet,
        allowed: &[usize],
        k: usize,
        left: u32,
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if left == 0 {
            out.push(Monomial::new(exps.clone()));
            return;
        }
        if k == allowed.len() {
            return;
        }
        let v = allowed[k];
        let wv = vars.weight(v);
        let mut e = 0;
        while e * wv <= left {
            exps[v] = e;
            rec(vars, allowed, k + 1, left - e * wv, exps, out);
            e += 1;
        }
        exps[v] = 0;
    }
    let mut out = Vec::new();
    let mut exps = vec![0; vars.len()];
    rec(vars, allowed, 0, w, &mut exps, &mut out);
    out.sort();
    out.reverse();
    out
}

/// Indices of variables strictly lighter than variable `a`.
fn lighter(vars: &VarSet, a: usize) -> Vec<usize> {
    (0..vars.len())
        .filter(|&i| vars.weight(i) < vars.weight(a))
        .collect()
}

/// Solves `base + sum_j c_j cols[j] = 0` coefficientwise.
fn solve_identity(base: &[Poly], cols: &[Vec<Poly>], step: &str) -> Result<Vec<Rational>> {
    let k = cols.len();
    if k == 0 {
        return if base.iter().all(Poly::is_zero) {
            Ok(Vec::new())
        } else {
            Err(Error::Solver {
                step: step.into(),
                reason: "no ansatz terms available and the condition fails".into(),
            })
        };
    }
    let mut rows: BTreeMap<(usize, Monomial), (Vec<Rational>, Rational)> = BTreeMap::new();
    for (e, b) in base.iter().enumerate() {
        for (m, c) in b.terms() {
            rows.entry((e, m.clone()))
                .or_insert_with(|| (vec![Rational::zero(); k], Rational::zero()))
                .1 = -c.clone();
        }
    }
    for (j, col) in cols.iter().enumerate() {
        for (e, p) in col.iter().enumerate() {
            for (m, c) in p.terms() {
                rows.entry((e, m.clone()))
                    .or_insert_with(|| (vec![Rational::zero(); k], Rational::zero()))
                    .0[j] = c.clone();
            }
        }
    }
    let (a, b): (Vec<_>, Vec<_>) = rows.into_values().unzip();
    if a.is_empty() {
        return Err(Error::Solver {
            step: step.into(),
            reason: format!("conditions are vacuous; {k} free parameters"),
        });
    }
    linalg::solve(&a, &b).map_err(|e| Error::Solver {
        step: step.into(),
        reason: match e {
            SolveError::Inconsistent { .. } => "linear system is inconsistent".into(),
            SolveError::Underdetermined { free } => {
                format!("linear system leaves {free} free parameters")
            }
        },
    })
}

fn require_solver_family(g: &GroupSpec) -> Result<()> {
    if g.family() == Family::S {
        return Err(Error::Unsupported(format!(
            "{g}: distinguished bases need a quadratic invariant p1; use A_(n-1) instead"
        )));
    }
    Ok(())
}

fn assemble(
    g: &GroupSpec,
    basis: &str,
    ansatz: Vec<(Vec<Monomial>, Vec<Rational>)>,
) -> Result<BasisTransform> {
    let vars = g.p_vars();
    let forward = ansatz
        .into_iter()
        .enumerate()
        .map(|(a, (monos, coeffs))| {
            let mut p = Poly::var(&vars, a);
            for (m, c) in monos.into_iter().zip(coeffs) {
                p.add_term(m, c);
            }
            p
        })
        .collect();
    BasisTransform::new(*g, basis, forward, NEW_PREFIX)
}

/// Unit-diagonal flat basis: flat coordinates of `eta = dP/dp_h`.
///
/// `eta` has constant determinant, so its inverse (the covariant metric) is
/// polynomial; a function `t` is a flat coordinate exactly when
/// `d_i d_j t = Gamma^k_ij d_k t`, which is linear in the ansatz coefficients.
pub fn solve_flat(g: &GroupSpec) -> Result<BasisTransform> {
    require_solver_family(g)?;
    let p = generate_pmatrix(g);
    let vars = p.vars().clone();
    let n = g.rank();
    let h = g.highest_weight_index();
    let eta = p.differentiate(h);
    let cov = matrix::inverse_constant_det(&eta).map_err(|e| Error::Solver {
        step: "inverting dP/dp_h".into(),
        reason: e.to_string(),
    })?;
    let dcov: Vec<PolyGrid> = (0..n)
        .map(|i| {
            cov.iter()
                .map(|r| r.iter().map(|e| e.differentiate(i)).collect())
                .collect()
        })
        .collect();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    // gamma[k][i][j] = Gamma^k_ij
    let mut gamma = vec![vec![vec![Poly::zero(&vars); n]; n]; n];
    for i in 0..n {
        for j in i..n {
            let first: Vec<Poly> = (0..n)
                .map(|l| (&dcov[i][l][j] + &dcov[j][l][i] - &dcov[l][i][j]).scale(&half))
                .collect();
            for k in 0..n {
                let mut s = Poly::zero(&vars);
                for (l, f) in first.iter().enumerate() {
                    if !eta[k][l].is_zero() && !f.is_zero() {
                        s = s + &eta[k][l] * f;
                    }
                }
                gamma[k][i][j] = s.clone();
                gamma[k][j][i] = s;
            }
        }
    }
    let condition = |t: &Poly| -> Vec<Poly> {
        let grad = t.gradient();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut s = grad[i].differentiate(j);
                for (k, gk) in grad.iter().enumerate() {
                    if !gk.is_zero() && !gamma[k][i][j].is_zero() {
                        s = s - &gamma[k][i][j] * gk;
                    }
                }
                out.push(s);
            }
        }
        out
    };
    let mut ansatz = Vec::with_capacity(n);
    for a in 0..n {
        let monos = monomials_of_weight(&vars, vars.weight(a), &lighter(&vars, a));
        let base = condition(&Poly::var(&vars, a));
        let cols: Vec<Vec<Poly>> = monos
            .iter()
            .map(|m| condition(&Poly::monomial(&vars, m.clone(), q(1))))
            .collect();
        let c = solve_identity(&base, &cols, &format!("flat coordinate {}", vars.name(a)))?;
        ansatz.push((monos, c));
    }
    assemble(g, "flat", ansatz)
}

/// Basis in which the λ-vector of `det P` becomes `(2w, 0, ..., 0)`.
///
/// Each correction is restricted to monomials containing `p1`, which picks
/// one representative among the many solutions.
pub fn solve_abasis(g: &GroupSpec, which: ActiveName) -> Result<BasisTransform> {
    require_solver_family(g)?;
    if which != ActiveName::Det {
        return Err(Error::Unsupported(format!(
            "a-basis solver only handles det, not `{which}`"
        )));
    }
    let lam = lambda_vector(g, which)?;
    let vars = lam.vars().clone();
    let n = g.rank();
    let mut ansatz = Vec::with_capacity(n);
    ansatz.push((Vec::new(), Vec::new()));
    for b in 1..n {
        let monos: Vec<Monomial> = monomials_of_weight(&vars, vars.weight(b), &lighter(&vars, b))
            .into_iter()
            .filter(|m| m.exps()[0] > 0)
            .collect();
        let flow = |f: &Poly| -> Poly {
            let mut s = Poly::zero(&vars);
            for (c, l) in lam.components.iter().enumerate() {
                if !l.is_zero() {
                    s = s + f.differentiate(c) * l;
                }
            }
            s
        };
        let cols: Vec<Vec<Poly>> = monos
            .iter()
            .map(|m| vec![flow(&Poly::monomial(&vars, m.clone(), q(1)))])
            .collect();
        let base = vec![lam.components[b].clone()];
        let c = solve_identity(&base, &cols, &format!("a-basis component {}", vars.name(b)))?;
        ansatz.push((monos, c));
    }
    assemble(g, "detbasis", ansatz)
}

/// Images of the basic invariants in `x`-space, up to known scale factors.
///
/// For `A_n` the image of `p_a` is `e_{a+1}(y - mean(y))` in `n+1` variables,
/// which differs from the rotated invariant by `k_a = -2 (n+1)^((a-1)/2)`;
/// the Fischer product is orthogonally invariant, so brackets computed with
/// these images agree with the rotated ones up to the factors `k_a`.
fn bracket_images(g: &GroupSpec) -> Vec<Poly> {
    if let Some(inv) = exact_invariants(g) {
        return inv;
    }
    let n = g.rank();
    let y = VarSet::x(n + 1);
    let mean = (0..=n)
        .fold(Poly::zero(&y), |acc, i| acc + Poly::var(&y, i))
        .scale(&Rational::new(BigInt::one(), BigInt::from(n + 1)));
    let forms: Vec<Poly> = (0..=n).map(|i| Poly::var(&y, i) - &mean).collect();
    let mut e = vec![Poly::one(&y)];
    e.extend((0..=n).map(|_| Poly::zero(&y)));
    for (i, l) in forms.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let t = &e[k - 1] * l;
            e[k] = &e[k] + &t;
        }
    }
    e.drain(2..).collect()
}

/// Converts a coefficient found for the images back to the paper basis.
fn image_scale(g: &GroupSpec, m: &Monomial) -> Rational {
    if g.family() != Family::A {
        return q(1);
    }
    let k = m.degree() as i32 - 1;
    let r = Rational::new(BigInt::from(g.rank() + 1), BigInt::from(-2));
    if k >= 0 {
        num_traits::pow(r, k as usize)
    } else {
        num_traits::pow(Rational::one() / r, (-k) as usize)
    }
}

fn image_of(m: &Monomial, images: &[Poly], cache: &mut BTreeMap<Monomial, Poly>) -> Poly {
    if let Some(p) = cache.get(m) {
        return p.clone();
    }
    let mut acc = Poly::one(images[0].vars());
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            acc = acc * images[i].pow(e);
        }
    }
    cache.insert(m.clone(), acc.clone());
    acc
}

/// Canonical basis: every `q_a` is Fischer-orthogonal to the decomposable
/// invariants of its degree, which is equivalent to `<q_b, q_a> = 0` for all
/// lighter `q_b`. For equal-degree pairs the later one is also made
/// orthogonal to the earlier.
pub fn solve_canonical(g: &GroupSpec) -> Result<BasisTransform> {
    require_solver_family(g)?;
    let vars = g.p_vars();
    let n = g.rank();
    let images = bracket_images(g);
    let mut cache = BTreeMap::new();
    let mut ansatz = Vec::with_capacity(n);
    for a in 0..n {
        let w = vars.weight(a);
        let mut monos = monomials_of_weight(&vars, w, &lighter(&vars, a));
        monos.extend(
            (0..a)
                .filter(|&b| vars.weight(b) == w)
                .map(|b| Monomial::var(n, b, 1)),
        );
        if monos.is_empty() {
            ansatz.push((monos, Vec::new()));
            continue;
        }
        let basis_images: Vec<Poly> = monos
            .iter()
            .map(|m| image_of(m, &images, &mut cache))
            .collect();
        let gram: Vec<Vec<Rational>> = basis_images
            .iter()
            .map(|u| basis_images.iter().map(|v| fischer_product(u, v)).collect())
            .collect();
        let rhs: Vec<Rational> = basis_images
            .iter()
            .map(|u| -fischer_product(u, &images[a]))
            .collect();
        let gamma = linalg::solve(&gram, &rhs).map_err(|e| Error::Solver {
            step: format!("canonical component {}", vars.name(a)),
            reason: e.to_string(),
        })?;
        let coeffs = monos
            .iter()
            .zip(gamma)
            .map(|(m, c)| c * image_scale(g, m))
            .collect();
        ansatz.push((monos, coeffs));
    }
    assemble(g, "canonical", ansatz)
}

/// Whether `dP/dp_h` is a constant matrix.
pub fn is_flat(p: &PMatrix) -> bool {
    let h = p.group.highest_weight_index();
    p.differentiate(h).iter().flatten().all(Poly::is_constant)
}

/// Whether the λ-vector has the a-basis shape `(2w, 0, ..., 0)` for weight `w`.
pub fn is_abasis_lambda(l: &LambdaVector, w: u32) -> bool {
    l.components[0] == Poly::integer(l.vars(), 2 * w as i64)
        && l.components[1..].iter().all(Poly::is_zero)
}

/// Largest bracket `<q_a, q_b>` (`d_a < d_b`, plus equal-degree pairs
/// `a < b`) over the exact invariant images, zero for a canonical basis.
pub fn canonical_brackets(t: &BasisTransform) -> Vec<((usize, usize), Poly)> {
    let images = bracket_images(&t.group);
    let w = t.old_vars().weights();
    let qs: Vec<Poly> = t
        .forward()
        .iter()
        .map(|f| {
            // rescale the A-family coefficients back to the image normalization
            let mut p = Poly::zero(images[0].vars());
            for (m, c) in f.terms() {
                let inv_scale = Rational::one() / image_scale(&t.group, m);
                let mut term = Poly::constant(images[0].vars(), c * inv_scale);
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        term = term * images[i].pow(e);
                    }
                }
                p = p + term;
            }
            p
        })
        .collect();
    let mut out = Vec::new();
    for a in 0..qs.len() {
        for b in 0..qs.len() {
            if w[a] < w[b] || (w[a] == w[b] && a < b) {
                out.push(((a, b), flatto_bracket(&qs[a], &qs[b])));
            }
        }
    }
    out
}

/// Flatto bracket magnitude check in the rotated numeric basis for `A_n`.
pub fn canonical_brackets_numeric(t: &BasisTransform) -> f64 {
    let inv = crate::invariants::basic_invariants(&t.group).numeric();
    let qs: Vec<NumericPoly<f64>> = t
        .forward()
        .iter()
        .map(|f| compose_numeric(f, &inv))
        .collect();
    let w = t.old_vars().weights();
    let mut worst: f64 = 0.0;
    for a in 0..qs.len() {
        for b in 0..qs.len() {
            if w[a] < w[b] || (w[a] == w[b] && a < b) {
                let br = flatto_bracket_numeric(&qs[a], &qs[b]);
                let scale = qs[a].max_abs_coeff().max(1.0) * qs[b].max_abs_coeff().max(1.0);
                worst = worst.max(br.max_abs_coeff() / scale);
            }
        }
    }
    worst
}
